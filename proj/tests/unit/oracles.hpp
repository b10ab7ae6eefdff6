#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "uqcov/density.hpp"

namespace oracle {

// Inverse CDF by bisection on the closed-form CDF.
inline double bisect_inv_cdf(const uqcov::Density& d, double u) {
    double lo = d.domain() == uqcov::DomainKind::HalfLine ? 0.0 : -64.0 * d.scale();
    double hi = 64.0 * d.scale();
    // upper half: bisect on the tail mass, since cdf saturates near 1
    const bool upper = u > 0.5;
    const double r = 1.0 - u;
    const auto below = [&](double x) { return upper ? d.ccdf(x) > r : d.cdf(x) < u; };
    while (below(hi)) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (below(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// tanh-sinh over a finite interval (endpoint singularities allowed).
inline double integrate(const std::function<double(double)>& f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, 1e-15);
}

// exp-sinh over [0, inf).
inline double integrate_half_line(const std::function<double(double)>& f) {
    boost::math::quadrature::exp_sinh<double> es;
    return es.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-15);
}

inline double centered_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle

#pragma once

#include <functional>
#include <utility>

#include "uqcov/density.hpp"

namespace uqcov {

struct NumericResult {
    double value;   // +inf when diverged
    bool diverged;
};

using ScalarFunction = std::function<double(double)>;

// Supremum of g over the open interval B: dense grid, geometric approach to
// both endpoints, golden-section polish around the grid argmax. Blow-up toward
// an endpoint (non-decaying increments or growth by 1e6) reports +inf.
NumericResult numeric_sup(const ScalarFunction& g, Interval B);

// (int_B |g|^p)^{1/p} with dyadic panels toward both endpoints; p = inf
// delegates to numeric_sup.
NumericResult numeric_lp(const ScalarFunction& g, Interval B, double p);

// sup_x exp(log_h(x)) over the half or real line. Points are placed on a
// geometric grid scale * 2^{k/16}, 60 octaves below and 64 above `scale`.
NumericResult domain_log_sup(const ScalarFunction& log_h, DomainKind kind, double scale);

// int_D exp(log_f(x)) dx using octave panels and adaptive Gauss-Kronrod.
NumericResult domain_integral(const ScalarFunction& log_f, DomainKind kind, double scale);

// Golden-section search for a minimizer of a unimodal f on [lo, hi].
std::pair<double, double> golden_section_minimize(const ScalarFunction& f, double lo, double hi,
                                                  double x_tol = 1e-12);

}  // namespace uqcov

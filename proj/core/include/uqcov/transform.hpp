#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "uqcov/density.hpp"

namespace uqcov {

// nu(t) = a * inv_cdf(t) on [0,1), a * inv_cdf(t + 1/2) on (-1/2, 1/2).
struct ScaledInverseCdf {
    Density base;
    double a;
};

// nu(t) = (1-t)^{-b} - 1 on [0,1); only paired with PolyTail densities.
struct PolyGrowth {
    double b;
};

class Transform {
public:
    using Kind = std::variant<ScaledInverseCdf, PolyGrowth>;

    static Transform scaled_inverse_cdf(const Density& base, double a);
    static Transform standard(const Density& base) { return scaled_inverse_cdf(base, 1.0); }
    static Transform poly_growth(double b);

    const Kind& kind() const noexcept { return kind_; }
    DomainKind domain() const noexcept;
    // Typical magnitude of nu(t) in the bulk; used to place numerical grids.
    double scale() const noexcept;

    double nu(double t) const;
    double nu_prime(double t) const;

    std::string describe() const;

private:
    explicit Transform(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

// Log-space description of nu and w = rho(nu) nu' at one point.
struct Jet {
    double x;                      // nu(t)
    double log_nu_prime;           // log nu'(t)
    double log_weight;             // log w(t)
    double log_abs_weight_prime;   // log |w'(t)|, -inf when w' = 0
    int weight_prime_sign;         // -1, 0, +1
};

// A transform paired with the density it carries to the cube.
class CoordinateChange {
public:
    CoordinateChange(Transform nu, Density rho);

    const Transform& transform() const noexcept { return nu_; }
    const Density& density() const noexcept { return rho_; }
    DomainKind domain() const noexcept { return rho_.domain(); }

    double nu(double t) const { return nu_.nu(t); }
    double nu_prime(double t) const { return nu_.nu_prime(t); }
    double weight(double t) const;
    double weight_prime(double t) const;

    Jet jet_at_cube(double t) const;
    // Same quantities parametrized by the domain point x = nu(t).
    Jet jet_at_domain(double x) const;

private:
    Jet scaled_jet(const ScaledInverseCdf& s, double y) const;
    Jet growth_jet(const PolyGrowth& g, double log1mt, double x) const;

    Transform nu_;
    Density rho_;
    bool same_density_ = false;
};

double nu(const Transform& tr, double t);
double nu_prime(const Transform& tr, double t);
double weight(const Transform& tr, const Density& d, double t);
double weight_prime(const Transform& tr, const Density& d, double t);

using DomainFunction = std::function<double(std::span<const double>)>;

// g(t) = f(nu_1(t_1), ..., nu_d(t_d)) * prod_j w_j(t_j)
class TransformedIntegrand {
public:
    TransformedIntegrand(DomainFunction f, std::vector<CoordinateChange> coords);

    static TransformedIntegrand homogeneous(DomainFunction f, std::size_t dim, const Transform& tr,
                                            const Density& rho);

    std::size_t dim() const noexcept { return coords_.size(); }
    std::vector<DomainKind> domains() const;
    const std::vector<CoordinateChange>& coordinates() const noexcept { return coords_; }

    double operator()(std::span<const double> t) const;

private:
    DomainFunction f_;
    std::vector<CoordinateChange> coords_;
};

TransformedIntegrand transformed_integrand(DomainFunction f, const std::vector<Transform>& transforms,
                                           const std::vector<Density>& densities);

}  // namespace uqcov

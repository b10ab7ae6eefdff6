#include "uqcov/density.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "uqcov/error.hpp"

namespace uqcov {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoOverSqrtPi = std::numbers::inv_sqrtpi * 2.0;

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double giles_central(double w) {
    w -= 2.5;
    double p = 2.81022636e-08;
    p = 3.43273939e-07 + p * w;
    p = -3.5233877e-06 + p * w;
    p = -4.39150654e-06 + p * w;
    p = 0.00021858087 + p * w;
    p = -0.00125372503 + p * w;
    p = -0.00417768164 + p * w;
    p = 0.246640727 + p * w;
    p = 1.50140941 + p * w;
    return p;
}

double giles_tail(double w) {
    w = std::sqrt(w) - 3.0;
    double p = -0.000200214257;
    p = 0.000100950558 + p * w;
    p = 0.00134934322 + p * w;
    p = -0.00367342844 + p * w;
    p = 0.00573950773 + p * w;
    p = -0.0076224613 + p * w;
    p = 0.00943887047 + p * w;
    p = 1.00167406 + p * w;
    p = 2.83297682 + p * w;
    return p;
}

// Halley iteration for erf(x) = target, where residual(x) = erf(x) - target.
template <class Residual>
double halley(double x, Residual residual) {
    for (int k = 0; k < 8; ++k) {
        const double u = residual(x) / (kTwoOverSqrtPi * std::exp(-x * x));
        const double step = u / (1.0 + x * u);
        x -= step;
        if (k >= 1 && std::abs(step) <= 4e-16 * std::abs(x)) break;
    }
    return x;
}

// |y| <= 1/2
double erfinv_central(double y) {
    if (y == 0.0) return y;
    const double w = -std::log1p(-y * y);
    const double x0 = giles_central(w) * y;
    return halley(x0, [y](double x) { return std::erf(x) - y; });
}

// erfc(x) e^{x^2} for x >= 5 by the Laplace continued fraction.
double erfcx_large(double x) {
    double f = x;
    for (int k = 60; k >= 1; --k) f = x + 0.5 * k / f;
    return std::numbers::inv_sqrtpi / f;
}

// Newton on log erfc(x) = log r; stays finite down to subnormal r.
double erfcinv_deep(double r) {
    const double log_r = std::log(r);
    double x = std::sqrt(-log_r);
    for (int k = 0; k < 3; ++k) x = std::sqrt(-log_r - std::log(x / std::numbers::inv_sqrtpi));
    for (int k = 0; k < 20; ++k) {
        const double ex = erfcx_large(x);
        const double step = (-x * x + std::log(ex) - log_r) * ex / kTwoOverSqrtPi;
        x += step;
        if (std::abs(step) <= 2e-16 * x) break;
    }
    return x;
}

// Positive x with erfc(x) = r, r in (0, 1/2].
double erfcinv_tail(double r) {
    if (r < 1e-15) return erfcinv_deep(r);
    const double w = -std::log(r * (2.0 - r));
    const double p = w < 5.0 ? giles_central(w) : giles_tail(w);
    const double x0 = p * (1.0 - r);
    return halley(x0, [r](double x) { return r - std::erfc(x); });
}

}  // namespace

double erfinv(double y) {
    if (!(std::abs(y) < 1.0)) {
        std::ostringstream msg;
        msg << "erfinv: argument " << y << " outside (-1, 1)";
        throw DomainError(msg.str());
    }
    if (std::abs(y) <= 0.5) return erfinv_central(y);
    const double x = erfcinv_tail(1.0 - std::abs(y));
    return y < 0 ? -x : x;
}

double erfcinv(double r) {
    if (!(r > 0.0 && r < 2.0)) {
        std::ostringstream msg;
        msg << "erfcinv: argument " << r << " outside (0, 2)";
        throw DomainError(msg.str());
    }
    if (r <= 0.5) return erfcinv_tail(r);
    if (r >= 1.5) return -erfcinv_tail(2.0 - r);
    return erfinv_central(1.0 - r);
}

Interval cube_side(DomainKind kind) {
    return kind == DomainKind::HalfLine ? Interval{0.0, 1.0} : Interval{-0.5, 0.5};
}

const char* to_string(DomainKind kind) {
    return kind == DomainKind::HalfLine ? "half-line" : "real-line";
}

Density Density::exponential(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ConfigError("exponential density needs lambda > 0");
    return Density(Exponential{lambda});
}

Density Density::gaussian(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw ConfigError("gaussian density needs sigma > 0");
    return Density(Gaussian{sigma});
}

Density Density::poly_tail(double c) {
    if (!(c > 2.0) || !std::isfinite(c)) throw ConfigError("polytail density needs c > 2");
    return Density(PolyTail{c});
}

DomainKind Density::domain() const noexcept {
    return std::holds_alternative<Gaussian>(params_) ? DomainKind::RealLine : DomainKind::HalfLine;
}

double Density::scale() const noexcept {
    return std::visit(Overloaded{[](const Exponential& e) { return e.lambda; },
                                 [](const Gaussian& g) { return g.sigma; },
                                 [](const PolyTail&) { return 1.0; }},
                      params_);
}

bool Density::in_support(double x) const noexcept {
    if (std::isnan(x)) return false;
    return domain() == DomainKind::RealLine || x >= 0.0;
}

double Density::log_pdf(double x) const {
    if (!in_support(x)) {
        std::ostringstream msg;
        msg << describe() << ": x = " << x << " outside support";
        throw DomainError(msg.str());
    }
    return std::visit(
        Overloaded{[x](const Exponential& e) { return -std::log(e.lambda) - x / e.lambda; },
                   [x](const Gaussian& g) {
                       const double z = x / g.sigma;
                       return -0.5 * z * z - std::log(g.sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
                   },
                   [x](const PolyTail& p) { return std::log(p.c - 1.0) - p.c * std::log1p(x); }},
        params_);
}

double Density::pdf(double x) const {
    return std::exp(log_pdf(x));
}

double Density::dlog_pdf(double x) const {
    return std::visit(Overloaded{[](const Exponential& e) { return -1.0 / e.lambda; },
                                 [x](const Gaussian& g) { return -x / (g.sigma * g.sigma); },
                                 [x](const PolyTail& p) { return -p.c / (1.0 + x); }},
                      params_);
}

double Density::cdf(double x) const {
    if (std::isnan(x)) throw DomainError("cdf: NaN argument");
    return std::visit(
        Overloaded{[x](const Exponential& e) { return x <= 0.0 ? 0.0 : -std::expm1(-x / e.lambda); },
                   [x](const Gaussian& g) { return 0.5 * std::erfc(-x / (g.sigma * std::numbers::sqrt2)); },
                   [x](const PolyTail& p) {
                       return x <= 0.0 ? 0.0 : -std::expm1((1.0 - p.c) * std::log1p(x));
                   }},
        params_);
}

double Density::ccdf(double x) const {
    if (std::isnan(x)) throw DomainError("ccdf: NaN argument");
    return std::visit(
        Overloaded{[x](const Exponential& e) { return x <= 0.0 ? 1.0 : std::exp(-x / e.lambda); },
                   [x](const Gaussian& g) { return 0.5 * std::erfc(x / (g.sigma * std::numbers::sqrt2)); },
                   [x](const PolyTail& p) {
                       return x <= 0.0 ? 1.0 : std::exp((1.0 - p.c) * std::log1p(x));
                   }},
        params_);
}

double Density::log_cdf(double x) const {
    return std::log(cdf(x));
}

double Density::log_ccdf(double x) const {
    if (std::isnan(x)) throw DomainError("log_ccdf: NaN argument");
    return std::visit(
        Overloaded{[x](const Exponential& e) { return x <= 0.0 ? 0.0 : -x / e.lambda; },
                   [x](const Gaussian& g) {
                       return std::log(0.5 * std::erfc(x / (g.sigma * std::numbers::sqrt2)));
                   },
                   [x](const PolyTail& p) { return x <= 0.0 ? 0.0 : (1.0 - p.c) * std::log1p(x); }},
        params_);
}

double Density::inv_cdf(double u) const {
    const bool half = domain() == DomainKind::HalfLine;
    const bool ok = half ? (u >= 0.0 && u < 1.0) : (u > 0.0 && u < 1.0);
    if (!ok) {
        std::ostringstream msg;
        msg << describe() << ": inv_cdf argument " << u << " outside " << (half ? "[0, 1)" : "(0, 1)");
        throw DomainError(msg.str());
    }
    return std::visit(Overloaded{[u](const Exponential& e) { return -e.lambda * std::log1p(-u); },
                                 [u](const Gaussian& g) {
                                     const double s = g.sigma * std::numbers::sqrt2;
                                     if (u < 0.25) return -s * erfcinv_tail(2.0 * u);
                                     if (u > 0.75) return s * erfcinv_tail(2.0 * (1.0 - u));
                                     return s * erfinv_central(2.0 * u - 1.0);
                                 },
                                 [u](const PolyTail& p) {
                                     return std::expm1(-std::log1p(-u) / (p.c - 1.0));
                                 }},
                      params_);
}

double Density::inv_cdf_centered(double t) const {
    if (!(t > -0.5 && t < 0.5)) {
        std::ostringstream msg;
        msg << describe() << ": centered inv_cdf argument " << t << " outside (-1/2, 1/2)";
        throw DomainError(msg.str());
    }
    if (const auto* g = std::get_if<Gaussian>(&params_)) {
        const double s = g->sigma * std::numbers::sqrt2;
        if (t < -0.25) return -s * erfcinv_tail(2.0 * (t + 0.5));
        if (t > 0.25) return s * erfcinv_tail(2.0 * (0.5 - t));
        return s * erfinv_central(2.0 * t);
    }
    return inv_cdf(t + 0.5);
}

double Density::mean() const noexcept {
    return std::visit(Overloaded{[](const Exponential& e) { return e.lambda; },
                                 [](const Gaussian&) { return 0.0; },
                                 [](const PolyTail& p) { return 1.0 / (p.c - 2.0); }},
                      params_);
}

double Density::mean_abs() const noexcept {
    return std::visit(
        Overloaded{[](const Exponential& e) { return e.lambda; },
                   [](const Gaussian& g) { return g.sigma * std::sqrt(2.0 / std::numbers::pi); },
                   [](const PolyTail& p) { return 1.0 / (p.c - 2.0); }},
        params_);
}

std::string Density::describe() const {
    std::ostringstream out;
    out.precision(17);
    std::visit(Overloaded{[&](const Exponential& e) { out << "Exponential(lambda=" << e.lambda << ")"; },
                          [&](const Gaussian& g) { out << "Gaussian(sigma=" << g.sigma << ")"; },
                          [&](const PolyTail& p) { out << "PolyTail(c=" << p.c << ")"; }},
               params_);
    return out.str();
}

}  // namespace uqcov

#include "uqcov/transform.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "uqcov/error.hpp"

namespace uqcov {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_cube(DomainKind kind, double t) {
    const bool ok = kind == DomainKind::HalfLine ? (t >= 0.0 && t < 1.0) : (t > -0.5 && t < 0.5);
    if (!ok) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "cube point t = " << t << " outside " << (kind == DomainKind::HalfLine ? "[0, 1)" : "(-1/2, 1/2)");
        throw DomainError(msg.str());
    }
}

void check_domain(DomainKind kind, double x) {
    if (std::isnan(x) || std::isinf(x) || (kind == DomainKind::HalfLine && x < 0.0)) {
        std::ostringstream msg;
        msg << "domain point x = " << x << " outside the " << to_string(kind);
        throw DomainError(msg.str());
    }
}

double base_quantile(const ScaledInverseCdf& s, double t) {
    return s.base.domain() == DomainKind::HalfLine ? s.base.inv_cdf(t) : s.base.inv_cdf_centered(t);
}

int sign_of(double v) {
    return (v > 0.0) - (v < 0.0);
}

}  // namespace

Transform Transform::scaled_inverse_cdf(const Density& base, double a) {
    if (!(a >= 1.0) || !std::isfinite(a)) throw ConfigError("scaled inverse-CDF transform needs a >= 1");
    return Transform(ScaledInverseCdf{base, a});
}

Transform Transform::poly_growth(double b) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("poly-growth transform needs b > 0");
    return Transform(PolyGrowth{b});
}

DomainKind Transform::domain() const noexcept {
    if (const auto* s = std::get_if<ScaledInverseCdf>(&kind_)) return s->base.domain();
    return DomainKind::HalfLine;
}

double Transform::scale() const noexcept {
    if (const auto* s = std::get_if<ScaledInverseCdf>(&kind_)) return s->a * s->base.scale();
    return 1.0;
}

double Transform::nu(double t) const {
    check_cube(domain(), t);
    if (const auto* s = std::get_if<ScaledInverseCdf>(&kind_)) return s->a * base_quantile(*s, t);
    const auto& g = std::get<PolyGrowth>(kind_);
    return std::expm1(-g.b * std::log1p(-t));
}

double Transform::nu_prime(double t) const {
    check_cube(domain(), t);
    if (const auto* s = std::get_if<ScaledInverseCdf>(&kind_)) {
        const double y = base_quantile(*s, t);
        return s->a * std::exp(-s->base.log_pdf(y));
    }
    const auto& g = std::get<PolyGrowth>(kind_);
    return g.b * std::exp(-(g.b + 1.0) * std::log1p(-t));
}

std::string Transform::describe() const {
    std::ostringstream out;
    out.precision(17);
    if (const auto* s = std::get_if<ScaledInverseCdf>(&kind_))
        out << "ScaledInverseCdf(a=" << s->a << ", " << s->base.describe() << ")";
    else
        out << "PolyGrowth(b=" << std::get<PolyGrowth>(kind_).b << ")";
    return out.str();
}

CoordinateChange::CoordinateChange(Transform nu, Density rho) : nu_(std::move(nu)), rho_(std::move(rho)) {
    if (nu_.domain() != rho_.domain()) {
        throw ConfigError("transform " + nu_.describe() + " maps onto the " + to_string(nu_.domain()) +
                          " but density " + rho_.describe() + " lives on the " + to_string(rho_.domain()));
    }
    if (std::holds_alternative<PolyGrowth>(nu_.kind())) {
        if (!std::holds_alternative<PolyTail>(rho_.params()))
            throw ConfigError("poly-growth transform can only be paired with a polytail density");
        same_density_ = true;
    } else {
        same_density_ = std::get<ScaledInverseCdf>(nu_.kind()).base == rho_;
    }
}

Jet CoordinateChange::scaled_jet(const ScaledInverseCdf& s, double y) const {
    const double a = s.a;
    const double log_rho_y = s.base.log_pdf(y);
    Jet j{};
    j.x = a * y;
    j.log_nu_prime = std::log(a) - log_rho_y;

    // d/dt log w = (a * rho'/rho(ay) - rho_b'/rho_b(y)) / rho_b(y)
    double dlog = 0.0;
    if (same_density_) {
        double log_ratio = 0.0;
        std::visit(
            [&](const auto& p) {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, Exponential>) {
                    log_ratio = -(a - 1.0) * y / p.lambda;
                    dlog = -(a - 1.0) / p.lambda;
                } else if constexpr (std::is_same_v<P, Gaussian>) {
                    const double s2 = p.sigma * p.sigma;
                    log_ratio = -(a - 1.0) * (a + 1.0) * y * y / (2.0 * s2);
                    dlog = -(a - 1.0) * (a + 1.0) * y / s2;
                } else {
                    log_ratio = -p.c * (std::log1p(a * y) - std::log1p(y));
                    dlog = p.c * (1.0 - a) / ((1.0 + y) * (1.0 + a * y));
                }
            },
            rho_.params());
        j.log_weight = std::log(a) + log_ratio;
    } else {
        j.log_weight = rho_.log_pdf(j.x) + j.log_nu_prime;
        dlog = a * rho_.dlog_pdf(j.x) - s.base.dlog_pdf(y);
    }
    j.weight_prime_sign = sign_of(dlog);
    j.log_abs_weight_prime = dlog == 0.0 ? -kInf : j.log_weight + std::log(std::abs(dlog)) - log_rho_y;
    return j;
}

Jet CoordinateChange::growth_jet(const PolyGrowth& g, double log1mt, double x) const {
    const double b = g.b;
    const double c = std::get<PolyTail>(rho_.params()).c;
    Jet j{};
    j.x = x;
    j.log_nu_prime = std::log(b) - (b + 1.0) * log1mt;
    j.log_weight = std::log(b * (c - 1.0)) + (b * (c - 1.0) - 1.0) * log1mt;
    const double dlog = b + 1.0 - c * b;
    j.weight_prime_sign = sign_of(dlog);
    j.log_abs_weight_prime = dlog == 0.0 ? -kInf : j.log_weight + std::log(std::abs(dlog)) - log1mt;
    return j;
}

Jet CoordinateChange::jet_at_cube(double t) const {
    check_cube(domain(), t);
    if (const auto* s = std::get_if<ScaledInverseCdf>(&nu_.kind())) return scaled_jet(*s, base_quantile(*s, t));
    const auto& g = std::get<PolyGrowth>(nu_.kind());
    const double log1mt = std::log1p(-t);
    return growth_jet(g, log1mt, std::expm1(-g.b * log1mt));
}

Jet CoordinateChange::jet_at_domain(double x) const {
    check_domain(domain(), x);
    if (const auto* s = std::get_if<ScaledInverseCdf>(&nu_.kind())) {
        Jet j = scaled_jet(*s, x / s->a);
        j.x = x;
        return j;
    }
    const auto& g = std::get<PolyGrowth>(nu_.kind());
    return growth_jet(g, -std::log1p(x) / g.b, x);
}

double CoordinateChange::weight(double t) const {
    return std::exp(jet_at_cube(t).log_weight);
}

double CoordinateChange::weight_prime(double t) const {
    const Jet j = jet_at_cube(t);
    return j.weight_prime_sign * std::exp(j.log_abs_weight_prime);
}

double nu(const Transform& tr, double t) {
    return tr.nu(t);
}

double nu_prime(const Transform& tr, double t) {
    return tr.nu_prime(t);
}

double weight(const Transform& tr, const Density& d, double t) {
    return CoordinateChange(tr, d).weight(t);
}

double weight_prime(const Transform& tr, const Density& d, double t) {
    return CoordinateChange(tr, d).weight_prime(t);
}

TransformedIntegrand::TransformedIntegrand(DomainFunction f, std::vector<CoordinateChange> coords)
    : f_(std::move(f)), coords_(std::move(coords)) {
    if (!f_) throw ConfigError("transformed integrand needs a function");
    if (coords_.empty()) throw ConfigError("transformed integrand needs at least one coordinate");
}

TransformedIntegrand TransformedIntegrand::homogeneous(DomainFunction f, std::size_t dim, const Transform& tr,
                                                       const Density& rho) {
    return TransformedIntegrand(std::move(f), std::vector<CoordinateChange>(dim, CoordinateChange(tr, rho)));
}

std::vector<DomainKind> TransformedIntegrand::domains() const {
    std::vector<DomainKind> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(c.domain());
    return out;
}

double TransformedIntegrand::operator()(std::span<const double> t) const {
    const std::size_t d = coords_.size();
    if (t.size() != d) throw ConfigError("transformed integrand: point has wrong dimension");
    std::array<double, 16> small{};
    std::vector<double> large;
    double* x = small.data();
    if (d > small.size()) {
        large.resize(d);
        x = large.data();
    }
    double log_w = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const Jet jet = coords_[j].jet_at_cube(t[j]);
        x[j] = jet.x;
        log_w += jet.log_weight;
    }
    return f_(std::span<const double>(x, d)) * std::exp(log_w);
}

TransformedIntegrand transformed_integrand(DomainFunction f, const std::vector<Transform>& transforms,
                                           const std::vector<Density>& densities) {
    if (transforms.size() != densities.size())
        throw ConfigError("transformed integrand: " + std::to_string(transforms.size()) + " transforms but " +
                          std::to_string(densities.size()) + " densities");
    std::vector<CoordinateChange> coords;
    coords.reserve(transforms.size());
    for (std::size_t j = 0; j < transforms.size(); ++j) coords.emplace_back(transforms[j], densities[j]);
    return TransformedIntegrand(std::move(f), std::move(coords));
}

}  // namespace uqcov

#include "uqcov/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "uqcov/error.hpp"

namespace uqcov {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);
constexpr double kE = std::numbers::e;

// ((p-1)!)^{1/p}
double factorial_root(double p) {
    return std::exp(std::lgamma(p) / p);
}

// a of nu_a when tr is the scaled inverse CDF of d itself.
std::optional<double> own_scale(const Density& d, const Transform& tr) {
    const auto* s = std::get_if<ScaledInverseCdf>(&tr.kind());
    if (!s || !(s->base == d)) return std::nullopt;
    return s->a;
}

const PolyTail* growth_pair(const Density& d, const Transform& tr, double& b) {
    const auto* g = std::get_if<PolyGrowth>(&tr.kind());
    const auto* pt = std::get_if<PolyTail>(&d.params());
    if (!g || !pt) return nullptr;
    b = g->b;
    return pt;
}

double exp_h1(double a, double lambda, double s) {
    return a >= 1.0 + s ? std::pow(a, 1.0 + s) * std::pow(lambda, s) : kInf;
}

double exp_h2(double a, double lambda, PExponent p) {
    if (p.is_infinite()) return a > 2.0 ? a * a * (a - 1.0) * lambda / ((a - 2.0) * kE) : kInf;
    if (p.is_one()) return a > 1.0 ? a : 0.0;
    const double pv = p.p(), s = p.inv_p_star();
    if (!(a > 1.0 + s)) return kInf;
    return (a - 1.0) * std::pow(a, 1.0 + s) * std::pow(lambda, s) * factorial_root(pv) / (pv * (a - 2.0) + 1.0);
}

double gauss_h1(double a, double sigma, double s) {
    return a * a >= 1.0 + s ? std::pow(a, 1.0 + s) * std::pow(sigma * kSqrt2Pi, s) : kInf;
}

double gauss_h2(double a, double sigma, PExponent p) {
    const double a2m1 = (a - 1.0) * (a + 1.0);
    if (p.is_infinite()) {
        const double c2 = kSqrt2Pi * a * a * a2m1;
        return a * a > 2.0 ? c2 * 2.0 * sigma / (kE * (a * a - 2.0)) : kInf;
    }
    if (p.is_one()) return a > 1.0 ? 2.0 * a : 0.0;
    const double pv = p.p(), s = p.inv_p_star();
    const double denom = pv * (a * a - 2.0) + 1.0;
    if (!(denom > 0.0)) return kInf;
    const double c3 = kSqrt2Pi * std::pow(a, 1.0 + s) * a2m1 * std::pow(sigma, s) / denom;
    return c3 * 2.0 * factorial_root(pv) / std::pow(2.0 * std::numbers::pi, 1.0 / (2.0 * pv));
}

}  // namespace

PExponent PExponent::of(double p) {
    if (std::isinf(p) && p > 0) return infinity();
    if (!(p >= 1.0)) {
        std::ostringstream msg;
        msg << "p must lie in [1, inf], got " << p;
        throw ConfigError(msg.str());
    }
    return PExponent(p);
}

PExponent PExponent::parse(std::string_view text) {
    const std::string s(text);
    if (s == "inf" || s == "infinity" || s == "Inf" || s == "INF" || s == "oo") return infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse p from '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("cannot parse p from '" + s + "'");
    return of(v);
}

double PExponent::p() const noexcept {
    return is_infinite() ? kInf : p_;
}

double PExponent::p_star() const noexcept {
    if (is_infinite()) return 1.0;
    if (p_ == 1.0) return kInf;
    return p_ / (p_ - 1.0);
}

double PExponent::inv_p_star() const noexcept {
    if (is_infinite()) return 1.0;
    return 1.0 - 1.0 / p_;
}

bool PExponent::is_integer() const noexcept {
    return !is_infinite() && p_ == std::floor(p_) && p_ <= 170.0;
}

std::string PExponent::to_string() const {
    if (is_infinite()) return "inf";
    std::ostringstream out;
    out.precision(17);
    out << p_;
    return out.str();
}

const char* to_string(NormMethod m) {
    return m == NormMethod::ClosedForm ? "closed-form" : "numeric";
}

double h0(const CoordinateChange& cc, double t, PExponent p) {
    const Jet j = cc.jet_at_cube(t);
    const double s = p.inv_p_star();
    return std::exp(j.log_weight) * (s == 0.0 ? 1.0 : std::pow(std::abs(j.x), s));
}

double h1(const CoordinateChange& cc, double t, PExponent p) {
    const Jet j = cc.jet_at_cube(t);
    return std::exp(j.log_weight + p.inv_p_star() * j.log_nu_prime);
}

double h2(const CoordinateChange& cc, double t, PExponent p) {
    const Jet j = cc.jet_at_cube(t);
    const double s = p.inv_p_star();
    const double wp = j.weight_prime_sign * std::exp(j.log_abs_weight_prime);
    return wp * (s == 0.0 ? 1.0 : std::pow(std::abs(j.x), s));
}

std::optional<double> h0_sup_closed(const Density& d, const Transform& tr, PExponent p) {
    const auto a = own_scale(d, tr);
    if (!a) return std::nullopt;
    const double s = p.inv_p_star();
    if (p.is_one()) return *a;
    if (!(*a > 1.0)) return kInf;
    if (const auto* e = std::get_if<Exponential>(&d.params()))
        return std::pow(*a, 1.0 + s) * std::pow(e->lambda / (kE * p.p_star() * (*a - 1.0)), s);
    if (const auto* g = std::get_if<Gaussian>(&d.params())) {
        const double a2m1 = (*a - 1.0) * (*a + 1.0);
        return *a * std::pow(*a * g->sigma / std::sqrt(kE * p.p_star() * a2m1), s);
    }
    return std::nullopt;
}

std::optional<double> h1_sup_closed(const Density& d, const Transform& tr, PExponent p) {
    const double s = p.inv_p_star();
    if (const auto a = own_scale(d, tr)) {
        if (const auto* e = std::get_if<Exponential>(&d.params())) return exp_h1(*a, e->lambda, s);
        if (const auto* g = std::get_if<Gaussian>(&d.params())) return gauss_h1(*a, g->sigma, s);
        return std::nullopt;
    }
    double b = 0.0;
    if (const auto* pt = growth_pair(d, tr, b)) {
        const double expo = b * (pt->c - 1.0) - 1.0 - s * (b + 1.0);
        return expo >= 0.0 ? std::pow(b, 1.0 + s) * (pt->c - 1.0) : kInf;
    }
    return std::nullopt;
}

std::optional<double> h2_lp_closed(const Density& d, const Transform& tr, PExponent p) {
    if (const auto a = own_scale(d, tr)) {
        const bool closed_p = p.is_infinite() || p.is_integer();
        if (!closed_p) return std::nullopt;
        if (const auto* e = std::get_if<Exponential>(&d.params())) return exp_h2(*a, e->lambda, p);
        if (const auto* g = std::get_if<Gaussian>(&d.params())) return gauss_h2(*a, g->sigma, p);
        return std::nullopt;
    }
    double b = 0.0;
    if (const auto* pt = growth_pair(d, tr, b); pt && p.is_infinite()) {
        const double c = pt->c;
        const double k = b * (c - 1.0) * (b * (c - 1.0) - 1.0);
        const double alpha = b * (c - 2.0) - 2.0;
        const double beta = alpha + b;
        if (alpha < 0.0) return kInf;
        if (alpha == 0.0) return std::abs(k);
        return std::abs(k) * std::pow(alpha / beta, alpha / b) * b / beta;
    }
    return std::nullopt;
}

NumericResult h0_sup_numeric(const Density& d, const Transform& tr, PExponent p) {
    const CoordinateChange cc(tr, d);
    const double s = p.inv_p_star();
    return domain_log_sup(
        [&](double x) {
            const Jet j = cc.jet_at_domain(x);
            return j.log_weight + (s == 0.0 ? 0.0 : s * std::log(std::abs(x)));
        },
        cc.domain(), tr.scale());
}

NumericResult h1_sup_numeric(const Density& d, const Transform& tr, PExponent p) {
    const CoordinateChange cc(tr, d);
    const double s = p.inv_p_star();
    return domain_log_sup(
        [&](double x) {
            const Jet j = cc.jet_at_domain(x);
            return j.log_weight + s * j.log_nu_prime;
        },
        cc.domain(), tr.scale());
}

NumericResult h2_lp_numeric(const Density& d, const Transform& tr, PExponent p) {
    const CoordinateChange cc(tr, d);
    const double s = p.inv_p_star();
    const auto log_h2 = [&](const Jet& j) {
        return j.log_abs_weight_prime + (s == 0.0 ? 0.0 : s * std::log(std::abs(j.x)));
    };
    if (p.is_infinite())
        return domain_log_sup([&](double x) { return log_h2(cc.jet_at_domain(x)); }, cc.domain(), tr.scale());
    const double pv = p.p();
    // int_B |h2|^p dt = int_D |h2(nu^{-1}(x))|^p / nu'(nu^{-1}(x)) dx
    const NumericResult r = domain_integral(
        [&](double x) {
            const Jet j = cc.jet_at_domain(x);
            const double lh = log_h2(j);
            return lh == -kInf ? -kInf : pv * lh - j.log_nu_prime;
        },
        cc.domain(), tr.scale());
    if (r.diverged) return r;
    return {std::pow(r.value, 1.0 / pv), false};
}

double h0_sup(const Density& d, const Transform& tr, PExponent p) {
    if (const auto v = h0_sup_closed(d, tr, p)) return *v;
    return h0_sup_numeric(d, tr, p).value;
}

double h1_sup(const Density& d, const Transform& tr, PExponent p) {
    if (const auto v = h1_sup_closed(d, tr, p)) return *v;
    return h1_sup_numeric(d, tr, p).value;
}

double h2_lp(const Density& d, const Transform& tr, PExponent p) {
    if (const auto v = h2_lp_closed(d, tr, p)) return *v;
    return h2_lp_numeric(d, tr, p).value;
}

NormReport c1p_bound(const Density& d, const Transform& tr, PExponent p) {
    const CoordinateChange check(tr, d);
    (void)check;
    const auto c0 = h0_sup_closed(d, tr, p);
    const auto c1 = h1_sup_closed(d, tr, p);
    const auto c2 = h2_lp_closed(d, tr, p);
    NormReport r{p, 0.0, 0.0, 0.0, 0.0, NormMethod::ClosedForm};
    r.h0_sup = c0 ? *c0 : h0_sup_numeric(d, tr, p).value;
    r.h1_sup = c1 ? *c1 : h1_sup_numeric(d, tr, p).value;
    r.h2_lp = c2 ? *c2 : h2_lp_numeric(d, tr, p).value;
    r.method = (c0 && c1 && c2) ? NormMethod::ClosedForm : NormMethod::Numeric;
    r.c1p_bound = r.h1_sup + r.h2_lp;
    return r;
}

double cdp_bound(const NormReport& report, std::size_t dim) {
    if (dim == 0) throw ConfigError("cdp_bound: dimension must be positive");
    return std::pow(report.c1p_bound, static_cast<double>(dim));
}

double cdp_bound(std::span<const NormReport> per_coordinate) {
    if (per_coordinate.empty()) throw ConfigError("cdp_bound: no coordinates");
    double out = 1.0;
    for (const auto& r : per_coordinate) out *= r.c1p_bound;
    return out;
}

OptimalScale optimal_a(const Density& d, PExponent p) {
    if (std::holds_alternative<PolyTail>(d.params()))
        throw ConfigError("optimal_a: no optimal scale for polytail densities (the scaled inverse CDF fails there)");
    const auto bound_at = [&](double a) {
        return c1p_bound(d, Transform::scaled_inverse_cdf(d, a), p).c1p_bound;
    };
    if (p.is_one()) return {1.0, bound_at(1.0), NormMethod::ClosedForm};

    const bool is_exp = std::holds_alternative<Exponential>(d.params());
    if (is_exp && p.is_infinite()) {
        const double a = 2.0 + 4.0 / (std::sqrt(17.0 + 16.0 * kE) + 1.0);
        return {a, bound_at(a), NormMethod::ClosedForm};
    }
    if (is_exp && p.is_integer()) {
        const double pv = p.p();
        const double k = factorial_root(pv);
        const double sqrt_fact_root = std::exp(std::lgamma(pv) / (2.0 * pv));
        const double num = 2.0 * pv * (2.0 * pv - 1.0) * (2.0 * pv - 1.0) + (7.0 * pv * pv - 6.0 * pv + 1.0) * k +
                           std::sqrt(pv - 1.0) * sqrt_fact_root *
                               std::sqrt(4.0 * pv * pv * (2.0 * pv - 1.0) * (2.0 * pv - 1.0) +
                                         (17.0 * pv * pv * pv - 19.0 * pv * pv + 7.0 * pv - 1.0) * k);
        const double a = num / (2.0 * pv * (2.0 * pv - 1.0) * (pv + k));
        return {a, bound_at(a), NormMethod::ClosedForm};
    }
    if (!is_exp && p.is_infinite()) {
        const double a = std::sqrt(2.0 + 2.0 / std::sqrt(2.0 + kE));
        return {a, bound_at(a), NormMethod::ClosedForm};
    }
    if (!is_exp && p.p() == 2.0) return {1.5, bound_at(1.5), NormMethod::ClosedForm};

    const double s = p.inv_p_star();
    const double lower = is_exp ? 1.0 + s : std::sqrt(1.0 + s);
    const auto [a, v] = golden_section_minimize(bound_at, lower + 1e-9, 64.0, 1e-11);
    return {a, v, NormMethod::Numeric};
}

double operator_norm_I1(const Density& d, PExponent p) {
    const DomainKind kind = d.domain();
    if (p.is_one()) return kind == DomainKind::HalfLine ? 1.0 : std::max(d.ccdf(0.0), d.cdf(0.0));
    const double ps = p.p_star();
    if (const auto* e = std::get_if<Exponential>(&d.params())) return std::pow(e->lambda / ps, 1.0 / ps);
    // |int kappa(x,z) rho(x) dx| is the survival function for z >= 0 and the CDF for z < 0.
    const NumericResult r = domain_integral(
        [&](double z) { return ps * (z >= 0.0 ? d.log_ccdf(z) : d.log_cdf(z)); }, kind, d.scale());
    if (r.diverged) return kInf;
    return std::pow(r.value, 1.0 / ps);
}

int kappa(double x, double z) {
    if (x > z && z >= 0.0) return 1;
    if (x < z && z < 0.0) return -1;
    return 0;
}

NumericResult std_change_weighted_norm(const ScalarFunction& fprime_abs, const Density& d, PExponent p) {
    const auto log_fp = [&](double x) {
        const double v = std::abs(fprime_abs(x));
        return v == 0.0 ? -kInf : std::log(v);
    };
    if (p.is_infinite())
        return domain_log_sup([&](double x) { return log_fp(x) - d.log_pdf(x); }, d.domain(), d.scale());
    const double pv = p.p();
    const NumericResult r = domain_integral(
        [&](double x) {
            const double lf = log_fp(x);
            return lf == -kInf ? -kInf : pv * lf - (pv - 1.0) * d.log_pdf(x);
        },
        d.domain(), d.scale());
    if (r.diverged) return r;
    return {std::pow(r.value, 1.0 / pv), false};
}

double j1_norm(PExponent p, DomainKind kind) {
    const double base = p.is_one() ? 1.0 : std::pow(1.0 + p.p_star(), -1.0 / p.p_star());
    return kind == DomainKind::RealLine ? 0.5 * base : base;
}

}  // namespace uqcov

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "uqcov/density.hpp"
#include "uqcov/numeric.hpp"
#include "uqcov/transform.hpp"

namespace uqcov {

// p in [1, inf] together with its conjugate p*. Both infinities are exact states.
class PExponent {
public:
    static PExponent of(double p);
    static PExponent infinity() { return PExponent(kInfinite); }
    static PExponent parse(std::string_view text);

    double p() const noexcept;
    double p_star() const noexcept;
    // 1/p*, i.e. 1 - 1/p
    double inv_p_star() const noexcept;
    bool is_infinite() const noexcept { return p_ == kInfinite; }
    bool is_one() const noexcept { return p_ == 1.0; }
    bool is_integer() const noexcept;
    std::string to_string() const;

    bool operator==(const PExponent&) const = default;

private:
    static constexpr double kInfinite = -1.0;
    explicit PExponent(double p) : p_(p) {}
    double p_;
};

enum class NormMethod { ClosedForm, Numeric };
const char* to_string(NormMethod m);

struct NormReport {
    PExponent p;
    double h0_sup;
    double h1_sup;
    double h2_lp;
    double c1p_bound;
    NormMethod method;
};

// Pointwise h-functions on the cube side.
double h0(const CoordinateChange& cc, double t, PExponent p);
double h1(const CoordinateChange& cc, double t, PExponent p);
double h2(const CoordinateChange& cc, double t, PExponent p);

// Closed forms where they exist (nullopt otherwise; +inf for divergent regimes).
std::optional<double> h0_sup_closed(const Density& d, const Transform& tr, PExponent p);
std::optional<double> h1_sup_closed(const Density& d, const Transform& tr, PExponent p);
std::optional<double> h2_lp_closed(const Density& d, const Transform& tr, PExponent p);

NumericResult h0_sup_numeric(const Density& d, const Transform& tr, PExponent p);
NumericResult h1_sup_numeric(const Density& d, const Transform& tr, PExponent p);
NumericResult h2_lp_numeric(const Density& d, const Transform& tr, PExponent p);

// Closed form when available, numeric otherwise.
double h0_sup(const Density& d, const Transform& tr, PExponent p);
double h1_sup(const Density& d, const Transform& tr, PExponent p);
double h2_lp(const Density& d, const Transform& tr, PExponent p);

NormReport c1p_bound(const Density& d, const Transform& tr, PExponent p);

double cdp_bound(const NormReport& report, std::size_t dim);
double cdp_bound(std::span<const NormReport> per_coordinate);

struct OptimalScale {
    double a_star;
    double bound;
    NormMethod method;
};

// Minimizer of the C_{1,p} bound over the scaled inverse-CDF family.
OptimalScale optimal_a(const Density& d, PExponent p);

double operator_norm_I1(const Density& d, PExponent p);

// 1 if x > z >= 0, -1 if x < z < 0, 0 otherwise.
int kappa(double x, double z);

// (int_D |f'|^p rho^{-p/p*} dx)^{1/p}; ess-sup of |f'|/rho for p = inf.
NumericResult std_change_weighted_norm(const ScalarFunction& fprime_abs, const Density& d, PExponent p);

// (1+p*)^{-1/p*}, halved on the real line.
double j1_norm(PExponent p, DomainKind kind);

}  // namespace uqcov

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uqcov/analysis.hpp"
#include "uqcov/error.hpp"

using namespace uqcov;

namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;
const PExponent kInfP = PExponent::infinity();

Transform nu_a(const Density& d, double a) { return Transform::scaled_inverse_cdf(d, a); }

}  // namespace

TEST(PExponent, Conjugates) {
    EXPECT_TRUE(std::isinf(PExponent::of(1.0).p_star()));
    EXPECT_EQ(kInfP.p_star(), 1.0);
    EXPECT_EQ(PExponent::of(2.0).p_star(), 2.0);
    EXPECT_EQ(PExponent::of(1.0).inv_p_star(), 0.0);
    EXPECT_EQ(kInfP.inv_p_star(), 1.0);
    EXPECT_NEAR(PExponent::of(4.0).p_star(), 4.0 / 3.0, 1e-15);
    EXPECT_EQ(PExponent::parse("inf"), kInfP);
    EXPECT_EQ(PExponent::parse("3"), PExponent::of(3.0));
    EXPECT_THROW(PExponent::of(0.5), ConfigError);
    EXPECT_THROW(PExponent::parse("two"), ConfigError);
}

TEST(Kappa, Values) {
    EXPECT_EQ(kappa(2, 1), 1);
    EXPECT_EQ(kappa(-2, -1), -1);
    EXPECT_EQ(kappa(1, 2), 0);
    EXPECT_EQ(kappa(1, 0), 1);
    EXPECT_EQ(kappa(-1, 0), 0);
}

TEST(H0, ClosedFormValues) {
    const double lambda = 1.7, a = 2.2;
    for (const auto p : {PExponent::of(2.0), PExponent::of(3.0), kInfP}) {
        const double s = p.inv_p_star(), ps = p.p_star();
        const double expected = std::pow(a, 1.0 + s) * std::pow(lambda / (kE * ps * (a - 1.0)), s);
        EXPECT_NEAR(h0_sup(Density::exponential(lambda), nu_a(Density::exponential(lambda), a), p), expected,
                    1e-13 * expected);
    }
    const auto one = PExponent::of(1.0);
    EXPECT_DOUBLE_EQ(h0_sup(Density::exponential(1.0), nu_a(Density::exponential(1.0), 1.0), one), 1.0);
    EXPECT_DOUBLE_EQ(h1_sup(Density::exponential(1.0), nu_a(Density::exponential(1.0), 1.0), one), 1.0);
    EXPECT_TRUE(std::isinf(h0_sup(Density::exponential(1.0), nu_a(Density::exponential(1.0), 1.0), PExponent::of(2.0))));
    const double sigma = 0.8, b = 1.6;
    const auto p2 = PExponent::of(2.0);
    const double g_expected = b * std::pow(b * sigma / std::sqrt(kE * 2.0 * (b * b - 1.0)), 0.5);
    EXPECT_NEAR(h0_sup(Density::gaussian(sigma), nu_a(Density::gaussian(sigma), b), p2), g_expected, 1e-13 * g_expected);
}

TEST(H1, ClosedFormValues) {
    EXPECT_DOUBLE_EQ(h1_sup(Density::exponential(1.0), nu_a(Density::exponential(1.0), 2.0), kInfP), 4.0);
    EXPECT_NEAR(h1_sup_numeric(Density::exponential(1.0), nu_a(Density::exponential(1.0), 2.0), kInfP).value, 4.0, 1e-8);
    const double sigma = 1.3, a = 1.6;
    const auto p = PExponent::of(3.0);
    const double s = p.inv_p_star();
    const double expected = std::pow(a, 1.0 + s) * std::pow(sigma * std::sqrt(2.0 * kPi), s);
    EXPECT_NEAR(h1_sup(Density::gaussian(sigma), nu_a(Density::gaussian(sigma), a), p), expected, 1e-13 * expected);
    EXPECT_TRUE(std::isinf(h1_sup(Density::gaussian(1.0), nu_a(Density::gaussian(1.0), 1.0), PExponent::of(2.0))));
}

TEST(H2, ClosedFormValues) {
    EXPECT_NEAR(h2_lp(Density::exponential(1.0), nu_a(Density::exponential(1.0), 3.0), kInfP), 18.0 / kE, 1e-14);
    EXPECT_NEAR(h2_lp_numeric(Density::exponential(1.0), nu_a(Density::exponential(1.0), 3.0), kInfP).value, 18.0 / kE,
                1e-8);
    const double sigma = 1.4, a = 1.8;
    const double c2 = std::sqrt(2.0 * kPi) * a * a * (a * a - 1.0);
    EXPECT_NEAR(h2_lp(Density::gaussian(sigma), nu_a(Density::gaussian(sigma), a), kInfP),
                c2 / kE * 2.0 * sigma / (a * a - 2.0), 1e-12);
    for (double p : {2.0, 3.0, 5.0}) {
        const auto pe = PExponent::of(p);
        const double threshold = 1.0 + pe.inv_p_star();
        EXPECT_TRUE(std::isinf(h2_lp(Density::exponential(1.0), nu_a(Density::exponential(1.0), threshold), pe)));
    }
}

TEST(H2, NonIntegerPMatchesGammaForm) {
    // ||h2||_p = a(a-1)(lambda a)^{1/p*} Gamma(p)^{1/p} / (p(a-2)+1) for the exponential family.
    const double lambda = 1.3, a = 2.2;
    for (double p : {1.5, 2.5, 3.7, 7.25}) {
        const auto pe = PExponent::of(p);
        const auto rho = Density::exponential(lambda);
        const double oracle_value = a * (a - 1.0) * std::pow(lambda * a, pe.inv_p_star()) *
                                    std::exp(std::lgamma(p) / p) / (p * (a - 2.0) + 1.0);
        EXPECT_FALSE(h2_lp_closed(rho, nu_a(rho, a), pe).has_value()) << "p=" << p;
        const double got = h2_lp(rho, nu_a(rho, a), pe);
        EXPECT_NEAR(got, oracle_value, 1e-8 * oracle_value) << "p=" << p;
    }
    for (double p : {2.0, 4.0}) {
        const auto pe = PExponent::of(p);
        const auto rho = Density::exponential(lambda);
        const double oracle_value = a * (a - 1.0) * std::pow(lambda * a, pe.inv_p_star()) *
                                    std::exp(std::lgamma(p) / p) / (p * (a - 2.0) + 1.0);
        EXPECT_NEAR(*h2_lp_closed(rho, nu_a(rho, a), pe), oracle_value, 1e-13 * oracle_value);
    }
}

TEST(C1p, ClosedFormValues) {
    const double lambda = 0.7, a = 2.6;
    const auto rho = Density::exponential(lambda);
    const NormReport r = c1p_bound(rho, nu_a(rho, a), kInfP);
    EXPECT_NEAR(r.c1p_bound, a * a * lambda * (1.0 + (a - 1.0) / ((a - 2.0) * kE)), 1e-13);
    EXPECT_EQ(r.method, NormMethod::ClosedForm);
    EXPECT_EQ(r.c1p_bound, r.h1_sup + r.h2_lp);
    for (double p : {2.0, 3.0}) {
        const auto pe = PExponent::of(p);
        const double s = pe.inv_p_star();
        const double expected = std::pow(a, 1.0 + s) * std::pow(lambda, s) *
                                (1.0 + (a - 1.0) * std::pow(std::tgamma(p), 1.0 / p) / (p * (a - 2.0) + 1.0));
        EXPECT_NEAR(c1p_bound(rho, nu_a(rho, a), pe).c1p_bound, expected, 1e-13 * expected);
    }
    const auto g = Density::gaussian(1.0);
    EXPECT_NEAR(c1p_bound(g, nu_a(g, 1.5), PExponent::of(2.0)).c1p_bound, 2.0 * std::sqrt(6.0 * std::sqrt(2.0 * kPi)),
                1e-13);
}

TEST(C1p, InfinitePropagates) {
    const auto rho = Density::exponential(1.0);
    const NormReport r = c1p_bound(rho, nu_a(rho, 1.2), PExponent::of(2.0));
    EXPECT_TRUE(std::isinf(r.c1p_bound));
    EXPECT_TRUE(std::isinf(cdp_bound(r, 3)));
}

TEST(Cdp, ProductRule) {
    NormReport r{kInfP, 1.0, 1.0, 1.0, 2.0, NormMethod::ClosedForm};
    EXPECT_EQ(cdp_bound(r, 1), 2.0);
    EXPECT_EQ(cdp_bound(r, 3), 8.0);
    NormReport r2 = r;
    r2.c1p_bound = 3.0;
    const std::vector<NormReport> parts{r, r2, r};
    EXPECT_EQ(cdp_bound(parts), 12.0);
}

TEST(OptimalA, ClosedFormConstants) {
    const auto e = optimal_a(Density::exponential(1.0), kInfP);
    EXPECT_NEAR(e.a_star, 2.0 + 4.0 / (std::sqrt(17.0 + 16.0 * kE) + 1.0), 1e-15);
    EXPECT_NEAR(e.bound, 13.1172, 5e-5);
    const auto e2 = optimal_a(Density::exponential(4.0), PExponent::of(2.0));
    EXPECT_NEAR(e2.a_star, (53.0 + std::sqrt(217.0)) / 36.0, 1e-15);
    EXPECT_NEAR(e2.bound / 2.0, 5.5624, 5e-5);
    const auto g = optimal_a(Density::gaussian(3.0), kInfP);
    EXPECT_NEAR(g.a_star, std::sqrt(2.0 + 2.0 / std::sqrt(2.0 + kE)), 1e-15);
    EXPECT_NEAR(g.bound / 3.0, 18.5582, 5e-5);
    const auto g2 = optimal_a(Density::gaussian(1.0), PExponent::of(2.0));
    EXPECT_EQ(g2.a_star, 1.5);
    EXPECT_NEAR(g2.bound, 7.7562, 5e-5);
    EXPECT_THROW(optimal_a(Density::poly_tail(4.0), kInfP), ConfigError);
}

TEST(OptimalA, MinimizerCertificate) {
    const double delta = 1e-4;
    struct Case {
        Density rho;
        PExponent p;
    };
    const std::vector<Case> cases{{Density::exponential(1.0), kInfP},
                                  {Density::exponential(2.0), PExponent::of(2.0)},
                                  {Density::exponential(1.0), PExponent::of(3.0)},
                                  {Density::exponential(1.0), PExponent::of(6.0)},
                                  {Density::gaussian(1.0), kInfP},
                                  {Density::gaussian(1.0), PExponent::of(2.0)}};
    for (const auto& c : cases) {
        const auto opt = optimal_a(c.rho, c.p);
        EXPECT_EQ(opt.method, NormMethod::ClosedForm) << c.rho.describe() << " p=" << c.p.to_string();
        const double at = c1p_bound(c.rho, nu_a(c.rho, opt.a_star), c.p).c1p_bound;
        EXPECT_NEAR(at, opt.bound, 1e-12 * at);
        EXPECT_GE(c1p_bound(c.rho, nu_a(c.rho, opt.a_star - delta), c.p).c1p_bound, at);
        EXPECT_GE(c1p_bound(c.rho, nu_a(c.rho, opt.a_star + delta), c.p).c1p_bound, at);
    }
}

TEST(OptimalA, IntegerPClosedFormAgreesWithSearch) {
    const auto rho = Density::exponential(1.0);
    for (double p : {3.0, 4.0, 10.0}) {
        const auto pe = PExponent::of(p);
        const auto opt = optimal_a(rho, pe);
        const auto [a, f] = golden_section_minimize(
            [&](double v) { return c1p_bound(rho, nu_a(rho, v), pe).c1p_bound; }, 1.0 + pe.inv_p_star() + 1e-9, 64.0,
            1e-13);
        EXPECT_NEAR(opt.a_star, a, 1e-6) << "p=" << p;
        EXPECT_NEAR(opt.bound, f, 1e-12 * f) << "p=" << p;
    }
}

TEST(OptimalA, NonIntegerPUsesSearch) {
    const auto rho = Density::exponential(1.0);
    const auto opt = optimal_a(rho, PExponent::of(2.5));
    EXPECT_EQ(opt.method, NormMethod::Numeric);
    EXPECT_GT(opt.a_star, 1.0 + PExponent::of(2.5).inv_p_star());
    const double at = c1p_bound(rho, nu_a(rho, opt.a_star), PExponent::of(2.5)).c1p_bound;
    EXPECT_GE(c1p_bound(rho, nu_a(rho, opt.a_star * 1.01), PExponent::of(2.5)).c1p_bound, at);
    EXPECT_GE(c1p_bound(rho, nu_a(rho, opt.a_star * 0.99), PExponent::of(2.5)).c1p_bound, at);
}

TEST(Norms, ClosedFormMatchesNumericMatrix) {
    struct Case {
        Density rho;
        PExponent p;
    };
    const std::vector<Case> cases{{Density::exponential(1.0), PExponent::of(2.0)},
                                  {Density::exponential(1.0), kInfP},
                                  {Density::gaussian(1.0), PExponent::of(2.0)},
                                  {Density::gaussian(1.0), kInfP},
                                  {Density::exponential(2.5), PExponent::of(3.0)},
                                  {Density::gaussian(0.6), PExponent::of(4.0)}};
    for (const auto& c : cases) {
        const double a_star = optimal_a(c.rho, c.p).a_star;
        for (double a : {a_star - 0.3, a_star, a_star + 0.3}) {
            const auto tr = nu_a(c.rho, a);
            const auto c0 = h0_sup_closed(c.rho, tr, c.p);
            const auto c1 = h1_sup_closed(c.rho, tr, c.p);
            const auto c2 = h2_lp_closed(c.rho, tr, c.p);
            ASSERT_TRUE(c0 && c1 && c2);
            const auto n0 = h0_sup_numeric(c.rho, tr, c.p);
            const auto n1 = h1_sup_numeric(c.rho, tr, c.p);
            const auto n2 = h2_lp_numeric(c.rho, tr, c.p);
            const std::string tag = c.rho.describe() + " p=" + c.p.to_string() + " a=" + std::to_string(a);
            for (auto [cl, nu] : {std::pair{*c0, n0}, std::pair{*c1, n1}, std::pair{*c2, n2}}) {
                if (std::isinf(cl)) {
                    EXPECT_TRUE(nu.diverged) << tag;
                } else {
                    EXPECT_FALSE(nu.diverged) << tag;
                    EXPECT_LE(std::abs(cl - nu.value), 1e-6 * (1.0 + cl)) << tag;
                }
            }
        }
    }
}

TEST(Norms, ThresholdExactness) {
    const auto rho = Density::exponential(1.0);
    for (double p : {2.0, 3.0, 5.0}) {
        const auto pe = PExponent::of(p);
        const double threshold = 1.0 + pe.inv_p_star();
        const double at = h1_sup(rho, nu_a(rho, threshold), pe);
        EXPECT_TRUE(std::isfinite(at));
        EXPECT_NEAR(h1_sup_numeric(rho, nu_a(rho, threshold), pe).value, at, 1e-8 * at);
        const auto below = h1_sup_numeric(rho, nu_a(rho, threshold - 0.05), pe);
        EXPECT_TRUE(below.diverged) << "p=" << p;
        EXPECT_TRUE(std::isinf(h1_sup(rho, nu_a(rho, threshold - 1e-9), pe)));
        EXPECT_GT(numeric_sup([&](double t) { return h1(CoordinateChange(nu_a(rho, threshold - 0.05), rho), t, pe); },
                              {0.0, 1.0})
                      .value,
                  1e6);
    }
}

TEST(Norms, DivergenceForStandardChange) {
    for (const auto& rho : {Density::exponential(1.0), Density::gaussian(1.0)}) {
        const auto tr = Transform::standard(rho);
        const auto p = PExponent::of(2.0);
        EXPECT_TRUE(std::isinf(h0_sup(rho, tr, p)));
        EXPECT_TRUE(std::isinf(h1_sup(rho, tr, p)));
        EXPECT_TRUE(h0_sup_numeric(rho, tr, p).diverged);
        EXPECT_TRUE(h1_sup_numeric(rho, tr, p).diverged);
        EXPECT_TRUE(std::isinf(c1p_bound(rho, tr, p).c1p_bound));
    }
}

TEST(Norms, BoundDominatesIntegrandDerivative) {
    // g(t) = -a^2 ln(1-t)(1-t)^{a-1}, g'(t) = a^2 (1-t)^{a-2} (1 + (a-1) ln(1-t)).
    const double a = optimal_a(Density::exponential(1.0), kInfP).a_star;
    const double bound = c1p_bound(Density::exponential(1.0), nu_a(Density::exponential(1.0), a), kInfP).c1p_bound;
    const auto gprime = [&](double t) { return a * a * std::pow(1.0 - t, a - 2.0) * (1.0 + (a - 1.0) * std::log1p(-t)); };
    const auto sup = numeric_sup([&](double t) { return std::abs(gprime(t)); }, {0.0, 1.0});
    EXPECT_FALSE(sup.diverged);
    EXPECT_LE(sup.value, bound);
    EXPECT_NEAR(oracle::centered_difference(
                    [&](double t) { return -a * a * std::log1p(-t) * std::pow(1.0 - t, a - 1.0); }, 0.4, 1e-6),
                gprime(0.4), 1e-7);
}

TEST(Norms, PolyGrowthExample) {
    const double c = 4.0, b = 2.0;
    const auto rho = Density::poly_tail(c);
    const auto tr = Transform::poly_growth(b);
    const NormReport r = c1p_bound(rho, tr, kInfP);
    const double m = b * (c - 1.0);
    const double expected =
        b * b * (c - 1.0) * (1.0 + ((m - 1.0) / (m - 2.0)) * std::pow((b * (c - 2.0) - 2.0) / (m - 2.0), c - 2.0 - 2.0 / b));
    EXPECT_NEAR(r.c1p_bound, expected, 1e-10);
    EXPECT_NEAR(r.h1_sup, 12.0, 1e-12);
    EXPECT_NEAR(r.h2_lp, 7.5, 1e-12);
    EXPECT_NEAR(h2_lp_numeric(rho, tr, kInfP).value, 7.5, 1e-8);
    EXPECT_NEAR(h1_sup_numeric(rho, tr, kInfP).value, 12.0, 1e-8);
    // With b below 2/(c-2) the h2 supremum is infinite.
    EXPECT_TRUE(std::isinf(h2_lp(rho, Transform::poly_growth(0.8), kInfP)));
}

TEST(OperatorNorm, Values) {
    EXPECT_DOUBLE_EQ(operator_norm_I1(Density::exponential(2.0), PExponent::of(2.0)), 1.0);
    EXPECT_DOUBLE_EQ(operator_norm_I1(Density::exponential(3.0), PExponent::of(1.0)), 1.0);
    EXPECT_DOUBLE_EQ(operator_norm_I1(Density::exponential(3.0), kInfP), 3.0);
}

TEST(OperatorNorm, GaussianMatchesErfIntegral) {
    for (double sigma : {0.5, 1.0, 2.0}) {
        for (double p : {1.5, 2.0, 4.0}) {
            const auto pe = PExponent::of(p);
            const double ps = pe.p_star();
            const double inner = oracle::integrate_half_line(
                [&](double z) { return std::pow(std::erfc(z / (std::numbers::sqrt2 * sigma)), ps); });
            const double expected = std::pow(std::pow(2.0, 1.0 - ps) * inner, 1.0 / ps);
            EXPECT_NEAR(operator_norm_I1(Density::gaussian(sigma), pe), expected, 1e-10 * expected)
                << "sigma=" << sigma << " p=" << p;
        }
    }
}

TEST(OperatorNorm, GaussianAtOneIsKernelSupremum) {
    // sup_z |int kappa(x,z) rho(x) dx| is attained at z = 0 and equals 1/2.
    EXPECT_DOUBLE_EQ(operator_norm_I1(Density::gaussian(1.0), PExponent::of(1.0)), 0.5);
    double prev = 0.0;
    for (double p : {1.1, 1.01, 1.001}) {
        const double v = operator_norm_I1(Density::gaussian(1.0), PExponent::of(p));
        EXPECT_GT(v, prev);
        prev = v;
    }
    EXPECT_NEAR(prev, 0.5, 1e-2);
}

TEST(OperatorNorm, KappaFactorization) {
    const auto rho = Density::exponential(1.4);
    for (double z : {0.0, 0.3, 1.0, 4.0}) {
        const double below = oracle::integrate([&](double x) { return kappa(x, z) * rho.pdf(x); }, 0.0, z + 1e-300);
        const double above = oracle::integrate_half_line([&](double s) { return kappa(z + s + 1e-300, z) * rho.pdf(z + s); });
        EXPECT_NEAR(below + above, rho.ccdf(z), 1e-10) << "z=" << z;
    }
}

TEST(OperatorNorm, PolyTailNumeric) {
    // int_0^inf (1+z)^{(1-c) p*} dz = 1/((c-1)p* - 1)
    const double c = 4.0;
    const auto pe = PExponent::of(2.0);
    EXPECT_NEAR(operator_norm_I1(Density::poly_tail(c), pe), std::pow(1.0 / ((c - 1.0) * 2.0 - 1.0), 0.5), 1e-12);
}

TEST(StdChange, WeightedNorm) {
    const auto e = Density::exponential(1.0);
    const auto r1 = std_change_weighted_norm([](double x) { return std::exp(-x); }, e, PExponent::of(1.0));
    EXPECT_NEAR(r1.value, 1.0, 1e-12);
    const auto rinf = std_change_weighted_norm([](double) { return 1.0; }, e, kInfP);
    EXPECT_TRUE(rinf.diverged);
    EXPECT_TRUE(std::isinf(rinf.value));
    EXPECT_EQ(std_change_weighted_norm([](double) { return 0.0; }, e, PExponent::of(2.0)).value, 0.0);
    // |f'| = e^{-x}, p = 2, Exponential(1): int e^{-2x} e^{x} dx = 1.
    EXPECT_NEAR(std_change_weighted_norm([](double x) { return std::exp(-x); }, e, PExponent::of(2.0)).value, 1.0, 1e-12);
}

TEST(J1Norm, Values) {
    EXPECT_NEAR(j1_norm(PExponent::of(2.0), DomainKind::HalfLine), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(j1_norm(kInfP, DomainKind::HalfLine), 0.5, 1e-15);
    EXPECT_NEAR(j1_norm(kInfP, DomainKind::RealLine), 0.25, 1e-15);
    EXPECT_EQ(j1_norm(PExponent::of(1.0), DomainKind::HalfLine), 1.0);
}

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "uqcov/analysis.hpp"
#include "uqcov/cubature.hpp"
#include "uqcov/error.hpp"
#include "uqcov/lattice.hpp"

using namespace uqcov;

namespace {

const std::array<DomainKind, 1> kHalf{DomainKind::HalfLine};
const std::array<DomainKind, 1> kReal{DomainKind::RealLine};

double test1_g(double t, double a) { return -a * a * std::log1p(-t) * std::pow(1.0 - t, a - 1.0); }

}  // namespace

TEST(Nodes, Midpoint) {
    EXPECT_EQ(nodes(CubatureRule::midpoint(2), kHalf), (std::vector<std::vector<double>>{{0.25}, {0.75}}));
    EXPECT_EQ(nodes(CubatureRule::midpoint(2), kReal), (std::vector<std::vector<double>>{{-0.25}, {0.25}}));
    const std::array<DomainKind, 2> two{DomainKind::HalfLine, DomainKind::HalfLine};
    const auto pts = nodes(CubatureRule::midpoint(3), two);
    ASSERT_EQ(pts.size(), 9u);
    EXPECT_EQ(pts[1], (std::vector<double>{0.5 / 3.0, 1.5 / 3.0}));
}

TEST(Nodes, Lattice) {
    EXPECT_EQ(nodes(CubatureRule::lattice(4, {1}), kHalf),
              (std::vector<std::vector<double>>{{0.0}, {0.25}, {0.5}, {0.75}}));
    const std::array<DomainKind, 2> two{DomainKind::HalfLine, DomainKind::HalfLine};
    const auto pts = nodes(CubatureRule::lattice(8, {1, 3}), two);
    EXPECT_EQ(pts[3], (std::vector<double>{3.0 / 8.0, 1.0 / 8.0}));
    EXPECT_THROW(nodes(CubatureRule::lattice(8, {1}), two), ConfigError);
}

TEST(Nodes, LatticeShiftWraps) {
    const auto pts = nodes(CubatureRule::lattice(4, {1}, {0.8}), kHalf);
    EXPECT_NEAR(pts[0][0], 0.8, 1e-16);
    EXPECT_NEAR(pts[1][0], 0.05, 1e-15);
}

TEST(Apply, MidpointOfIdentity) {
    EXPECT_EQ(apply(CubatureRule::midpoint(1), [](std::span<const double> t) { return t[0]; }, kHalf), 0.5);
}

TEST(Apply, ConstantsAreExact) {
    const std::array<DomainKind, 3> three{DomainKind::HalfLine, DomainKind::RealLine, DomainKind::HalfLine};
    for (double c : {1.0, 0.375, 3.0}) {
        const auto g = [c](std::span<const double>) { return c; };
        EXPECT_EQ(apply(CubatureRule::midpoint(7), g, three), c);
        EXPECT_EQ(apply(CubatureRule::lattice(1024, {1, 27, 729}, {0.3, 0.1, 0.9}), g, three), c);
        EXPECT_EQ(apply(CubatureRule::lattice(5000, {1, 7, 49}), g, three), c);
    }
}

TEST(Apply, OneDimensionalLatticeIsRectangleRule) {
    const auto g = [](std::span<const double> t) { return std::exp(t[0]); };
    const std::size_t n = 1000;
    double rect = 0.0;
    for (std::size_t i = 0; i < n; ++i) rect += std::exp(static_cast<double>(i) / n);
    EXPECT_NEAR(apply(CubatureRule::lattice(n, {1}), g, kHalf), rect / n, 1e-15);
}

TEST(Apply, NonFiniteValueNamesNode) {
    const auto rho = Density::gaussian(1.0);
    const auto g = TransformedIntegrand::homogeneous([](std::span<const double> x) { return x[0]; }, 1,
                                                     Transform::standard(rho), rho);
    try {
        apply(CubatureRule::lattice(8, {1}), g);
        FAIL() << "expected EvaluationError";
    } catch (const EvaluationError& e) {
        EXPECT_NE(std::string(e.what()).find("node #0"), std::string::npos) << e.what();
    }
    CubatureOptions clip;
    clip.realline_epsilon_clip = true;
    EXPECT_TRUE(std::isfinite(apply(CubatureRule::lattice(8, {1}), g, clip)));
    EXPECT_THROW(apply(CubatureRule::midpoint(4), [](std::span<const double>) { return NAN; }, kHalf), EvaluationError);
}

TEST(Apply, DeterministicAcrossThreadCounts) {
    const auto rho = Density::exponential(1.0);
    const auto g = TransformedIntegrand::homogeneous(
        [](std::span<const double> x) { return x[0] * x[1] * x[2]; }, 3, Transform::scaled_inverse_cdf(rho, 2.4557), rho);
    const auto rule = CubatureRule::lattice(1 << 15, builtin_korobov_vector(1 << 15, 3).components);
    CubatureOptions o;
    o.threads = 1;
    const double ref = apply(rule, g, o);
    for (unsigned t : {2u, 3u, 4u, 8u}) {
        o.threads = t;
        EXPECT_EQ(apply(rule, g, o), ref) << t << " threads";
    }
}

TEST(Apply, NaiveMatchesPlainLoop) {
    const double a = 2.4557006009447191;
    const std::size_t n = 100000;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += test1_g((i + 0.5) / n, a);
    CubatureOptions naive;
    naive.summation = SummationPolicy::Naive;
    EXPECT_EQ(apply(CubatureRule::midpoint(n), [&](std::span<const double> t) { return test1_g(t[0], a); }, kHalf, naive),
              s / n);
}

TEST(IntegrateWeighted, PublishedTest1Cells) {
    const auto rho = Density::exponential(1.0);
    const double a = optimal_a(rho, PExponent::infinity()).a_star;
    const DomainFunction x = [](std::span<const double> v) { return v[0]; };
    const double v = integrate_weighted(x, {rho}, {Transform::scaled_inverse_cdf(rho, a)}, CubatureRule::midpoint(1000));
    EXPECT_NEAR(std::abs(v - 1.0), 2.958141e-07, 5e-4 * 2.958141e-07);
    CubatureOptions naive;
    naive.summation = SummationPolicy::Naive;
    const double big = apply(CubatureRule::midpoint(100000), [&](std::span<const double> t) { return test1_g(t[0], a); },
                             kHalf, naive);
    EXPECT_NEAR(std::abs(big - 1.0), 2.596101e-11, 5e-4 * 2.596101e-11);
}

TEST(IntegrateWeighted, PublishedTest2Cells) {
    // The printed Gaussian table uses n + 1 midpoint nodes for the row labelled n.
    const auto rho = Density::gaussian(1.0);
    const double exact = std::sqrt(2.0 / std::numbers::pi);
    const DomainFunction ax = [](std::span<const double> v) { return std::abs(v[0]); };
    const double v1 = integrate_weighted(ax, {rho}, {Transform::standard(rho)}, CubatureRule::midpoint(11));
    EXPECT_NEAR(std::abs(v1 - exact), 2.734692e-02, 5e-4 * 2.734692e-02);
    const double a = optimal_a(rho, PExponent::infinity()).a_star;
    const double v2 = integrate_weighted(ax, {rho}, {Transform::scaled_inverse_cdf(rho, a)}, CubatureRule::midpoint(10001));
    EXPECT_NEAR(std::abs(v2 - exact), 1.217389e-08, 5e-4 * 1.217389e-08);
}

TEST(IntegrateWeighted, ProductOfUnitMeans) {
    const auto rho = Density::exponential(1.0);
    const DomainFunction prod = [](std::span<const double> x) { return x[0] * x[1] * x[2]; };
    const auto tr = Transform::scaled_inverse_cdf(rho, 2.4557);
    const double v = integrate_weighted(prod, {rho, rho, rho}, {tr, tr, tr}, CubatureRule::midpoint(64));
    EXPECT_NEAR(v, 1.0, 1e-3);
    EXPECT_THROW(integrate_weighted(prod, {rho, rho}, {tr, tr, tr}, CubatureRule::midpoint(4)), ConfigError);
}

TEST(Convergence, Test1Orders) {
    const auto rho = Density::exponential(1.0);
    const DomainFunction x = [](std::span<const double> v) { return v[0]; };
    const std::vector<std::size_t> ns{100, 1000, 10000, 100000};
    for (double a : {1.0, optimal_a(rho, PExponent::infinity()).a_star}) {
        const auto tr = Transform::scaled_inverse_cdf(rho, a);
        const auto rows = convergence_table(
            [&](std::size_t n) { return integrate_weighted(x, {rho}, {tr}, CubatureRule::midpoint(n)); }, ns, 1.0);
        ASSERT_EQ(rows.size(), ns.size());
        EXPECT_TRUE(std::isnan(rows[0].observed_order));
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (a == 1.0) {
                EXPECT_GE(rows[i].observed_order, 0.9);
                EXPECT_LE(rows[i].observed_order, 1.1);
            } else {
                EXPECT_GE(rows[i].observed_order, 1.9);
            }
        }
    }
    if (auto first = convergence_table([](std::size_t) { return 1.0; }, ns, 1.0); true) {
        for (const auto& r : first) EXPECT_EQ(r.abs_error, 0.0);
    }
}

TEST(CompensatedSum, RecoversCancellation) {
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    EXPECT_EQ(s.value(), 1.0);
}

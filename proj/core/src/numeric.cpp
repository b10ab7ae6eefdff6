#include "uqcov/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace uqcov {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kPerOctave = 16;
constexpr int kLowOctaves = 60;
constexpr int kHighOctaves = 64;
constexpr int kCoreOctaves = 16;
constexpr int kTailOctaves = 56;
const double kBlowUp = std::log(1e6);

double safe(double v) {
    return std::isnan(v) ? kInf : v;
}

// Boost's error estimate is not scaled by the interval width, so short panels
// are mapped onto [-1, 1] first.
double panel(const ScalarFunction& f, double lo, double hi) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    return half * GK::integrate([&](double u) { return f(mid + half * u); }, -1.0, 1.0, 15, 1e-13);
}

// Maximize phi on [lo, hi] (phi unimodal near the bracket).
std::pair<double, double> golden_max(const ScalarFunction& phi, double lo, double hi, int iters = 90) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = phi(c), fd = phi(d);
    for (int i = 0; i < iters && b - a > 1e-15 * (std::abs(a) + std::abs(b)); ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = phi(d);
        }
    }
    return fc > fd ? std::pair{c, fc} : std::pair{d, fd};
}

struct EndTrend {
    double last;
    bool blows_up;
};

// Values approaching an endpoint, ordered toward it.
EndTrend end_trend(const std::vector<double>& v, double interior_max) {
    const std::size_t n = v.size();
    if (n == 0) return {-kInf, false};
    const double last = v.back();
    if (!std::isfinite(last)) return {last, last > 0 || std::isnan(last)};
    if (n < 12) return {last, false};
    const double d_last = v[n - 1] - v[n - 2];
    const double d_prev = v[n - 11] - v[n - 12];
    const bool growing = d_last > 0.0 && d_prev > 0.0 && d_last >= 0.5 * d_prev && last >= interior_max;
    const bool huge = last > 1e6 * std::max(std::abs(interior_max), 1e-300);
    return {last, growing || huge};
}

}  // namespace

NumericResult numeric_sup(const ScalarFunction& g, Interval B) {
    const double len = B.hi - B.lo;
    constexpr int kGrid = 4096;
    double best = -kInf, best_t = B.lo + 0.5 * len;
    int best_i = -1;
    std::vector<double> grid(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        const double t = B.lo + len * (i + 0.5) / kGrid;
        grid[i] = safe(g(t));
        if (grid[i] > best) {
            best = grid[i];
            best_t = t;
            best_i = i;
        }
    }
    if (!std::isfinite(best)) return {kInf, true};
    const double interior = best;

    std::vector<double> left, right;
    std::vector<double> left_t, right_t;
    for (int k = 1; k < 64; ++k) {
        const double step = std::ldexp(len, -k);
        const double tl = B.lo + step, tr = B.hi - step;
        if (tl == B.lo && tr == B.hi) break;
        if (tl != B.lo) {
            left.push_back(safe(g(tl)));
            left_t.push_back(tl);
        }
        if (tr != B.hi) {
            right.push_back(safe(g(tr)));
            right_t.push_back(tr);
        }
    }
    const EndTrend lt = end_trend(left, interior), rt = end_trend(right, interior);
    if (lt.blows_up || rt.blows_up) return {kInf, true};

    bool at_end = false;
    for (std::size_t k = 0; k < left.size(); ++k)
        if (left[k] > best) best = left[k], best_t = left_t[k], at_end = true;
    for (std::size_t k = 0; k < right.size(); ++k)
        if (right[k] > best) best = right[k], best_t = right_t[k], at_end = true;

    if (!at_end && best_i >= 0) {
        const double h = len / kGrid;
        const double lo = std::max(B.lo + 0.5 * h, best_t - h), hi = std::min(B.hi - 0.5 * h, best_t + h);
        const auto [t, v] = golden_max([&](double t) { return safe(g(t)); }, lo, hi);
        (void)t;
        best = std::max(best, v);
    }
    return {best, false};
}

NumericResult numeric_lp(const ScalarFunction& g, Interval B, double p) {
    if (std::isinf(p)) {
        const NumericResult s = numeric_sup([&](double t) { return std::abs(g(t)); }, B);
        return s;
    }
    const auto f = [&](double t) { return std::pow(std::abs(g(t)), p); };
    const double len = B.hi - B.lo;
    const double mid = B.lo + 0.5 * len;
    double total = 0.0;

    // One side: panels [end -/+ len 2^{-k-1}, end -/+ len 2^{-k}] ordered toward the end.
    auto side = [&](bool toward_hi, double& sum) -> bool {
        std::vector<double> parts;
        for (int k = 1; k < 64; ++k) {
            const double far = std::ldexp(len, -k), nearer = std::ldexp(len, -k - 1);
            const double a = toward_hi ? B.hi - far : B.lo + nearer;
            const double b = toward_hi ? B.hi - nearer : B.lo + far;
            if (a == b || (toward_hi ? b == B.hi : a == B.lo)) break;
            const double v = panel(f, a, b);
            if (!std::isfinite(v)) return false;
            parts.push_back(v);
        }
        double s = 0.0;
        for (double v : parts) s += v;
        const std::size_t n = parts.size();
        if (n >= 21) {
            double tail = 0.0, prev = 0.0;
            for (std::size_t i = n - 10; i < n; ++i) tail += parts[i];
            for (std::size_t i = n - 20; i < n - 10; ++i) prev += parts[i];
            if (tail > 1e-12 * s && tail >= 0.5 * prev) return false;
            const double r = parts[n - 2] > 0.0 ? parts[n - 1] / parts[n - 2] : 0.0;
            if (r > 0.0 && r < 1.0) s += parts[n - 1] * r / (1.0 - r);
        }
        sum = s;
        return true;
    };
    (void)mid;
    double lo_sum = 0.0, hi_sum = 0.0;
    if (!side(false, lo_sum) || !side(true, hi_sum)) return {kInf, true};
    total = lo_sum + hi_sum;
    return {std::pow(total, 1.0 / p), false};
}

NumericResult domain_log_sup(const ScalarFunction& log_h, DomainKind kind, double scale) {
    struct Point {
        double x;
        double v;
        int k;
    };
    const int sides = kind == DomainKind::RealLine ? 2 : 1;
    double core = safe(log_h(0.0)), tail = -kInf, best = core, best_x = 0.0;
    int best_k = std::numeric_limits<int>::min();
    int best_side = 1;
    for (int sgn = 0; sgn < sides; ++sgn) {
        const double sign = sgn == 0 ? 1.0 : -1.0;
        for (int k = -kLowOctaves * kPerOctave; k <= kHighOctaves * kPerOctave; ++k) {
            const double x = sign * scale * std::exp2(static_cast<double>(k) / kPerOctave);
            const double v = safe(log_h(x));
            if (k <= kCoreOctaves * kPerOctave) core = std::max(core, v);
            if (k >= kTailOctaves * kPerOctave) tail = std::max(tail, v);
            // log h at large |x| is a difference of terms of size ~|x|/scale
            const double noise = 8.0 * kEps * std::max(1.0, std::exp2(static_cast<double>(k) / kPerOctave));
            if (v > best + noise) {
                best = v;
                best_x = x;
                best_k = k;
                best_side = sgn == 0 ? 1 : -1;
            }
        }
    }
    if (std::isinf(tail) && tail > 0) return {kInf, true};
    if (std::isinf(best) && best > 0) return {kInf, true};
    if (tail > -kInf && (core == -kInf || tail - core > kBlowUp)) return {kInf, true};
    if (best == -kInf) return {0.0, false};

    const bool interior = best_k > -kLowOctaves * kPerOctave && best_k < kHighOctaves * kPerOctave &&
                          best_k != std::numeric_limits<int>::min();
    if (interior) {
        const double u0 = static_cast<double>(best_k - 1) / kPerOctave;
        const double u1 = static_cast<double>(best_k + 1) / kPerOctave;
        const auto phi = [&](double u) { return safe(log_h(best_side * scale * std::exp2(u))); };
        const auto [u, v] = golden_max(phi, u0, u1);
        (void)u;
        best = std::max(best, v);
    }
    (void)best_x;
    return {std::exp(best), false};
}

NumericResult domain_integral(const ScalarFunction& log_f, DomainKind kind, double scale) {
    constexpr int kFirst = -40;
    constexpr int kMaxOctave = 200;
    constexpr int kMinOctave = 8;
    const auto f_pos = [&](double x) { return std::exp(log_f(x)); };
    const auto f_neg = [&](double x) { return std::exp(log_f(-x)); };
    const int sides = kind == DomainKind::RealLine ? 2 : 1;
    double total = 0.0;
    for (int sgn = 0; sgn < sides; ++sgn) {
        const ScalarFunction f = sgn == 0 ? ScalarFunction(f_pos) : ScalarFunction(f_neg);
        double sum = panel(f, 0.0, scale * std::ldexp(1.0, kFirst));
        if (!std::isfinite(sum)) return {kInf, true};
        double prev = -1.0;
        bool converged = false;
        for (int k = kFirst; k < kMaxOctave; ++k) {
            const double v = panel(f, scale * std::ldexp(1.0, k), scale * std::ldexp(1.0, k + 1));
            if (!std::isfinite(v)) return {kInf, true};
            sum += v;
            if (k >= kMinOctave) {
                if (v == 0.0 && prev == 0.0) {
                    converged = true;
                    break;
                }
                if (prev > 0.0) {
                    const double r = v / prev;
                    if (r < 1.0) {
                        const double rest = v * r / (1.0 - r);
                        if (rest <= 1e-15 * sum) {
                            sum += rest;
                            converged = true;
                            break;
                        }
                    }
                }
            }
            prev = v;
        }
        if (!converged) return {kInf, true};
        total += sum;
    }
    return {total, false};
}

std::pair<double, double> golden_section_minimize(const ScalarFunction& f, double lo, double hi, double x_tol) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > x_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace uqcov

#pragma once

#include <string>
#include <variant>

namespace uqcov {

enum class DomainKind { HalfLine, RealLine };

struct Interval {
    double lo;
    double hi;
};

// B = [0,1) for the half line, (-1/2, 1/2) for the real line.
Interval cube_side(DomainKind kind);
const char* to_string(DomainKind kind);

struct Exponential {
    double lambda;
    bool operator==(const Exponential&) const = default;
};

struct Gaussian {
    double sigma;
    bool operator==(const Gaussian&) const = default;
};

// rho(x) = (c-1)(1+x)^{-c} on [0, inf), c > 2.
struct PolyTail {
    double c;
    bool operator==(const PolyTail&) const = default;
};

class Density {
public:
    using Params = std::variant<Exponential, Gaussian, PolyTail>;

    static Density exponential(double lambda);
    static Density gaussian(double sigma);
    static Density poly_tail(double c);

    const Params& params() const noexcept { return params_; }
    DomainKind domain() const noexcept;

    // lambda, sigma or 1.
    double scale() const noexcept;

    double pdf(double x) const;
    double log_pdf(double x) const;
    // d/dx log rho(x)
    double dlog_pdf(double x) const;

    double cdf(double x) const;
    double ccdf(double x) const;
    double log_cdf(double x) const;
    double log_ccdf(double x) const;

    double inv_cdf(double u) const;
    // inv_cdf(t + 1/2) for t in (-1/2, 1/2), evaluated without forming t + 1/2
    // in the tails.
    double inv_cdf_centered(double t) const;

    // Exact E[x] and E[|x|].
    double mean() const noexcept;
    double mean_abs() const noexcept;

    std::string describe() const;

    bool operator==(const Density&) const = default;

private:
    explicit Density(Params p) : params_(p) {}
    bool in_support(double x) const noexcept;

    Params params_;
};

// Inverse error function on (-1, 1).
double erfinv(double y);
// Inverse complementary error function on (0, 2).
double erfcinv(double r);

}  // namespace uqcov

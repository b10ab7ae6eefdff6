#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "uqcov/density.hpp"
#include "uqcov/transform.hpp"

namespace uqcov {

enum class SummationPolicy {
    Compensated,  // Neumaier-compensated, fixed block order (default)
    Naive         // plain left-to-right double accumulation, single-threaded
};

struct CubatureOptions {
    SummationPolicy summation = SummationPolicy::Compensated;
    // Move lattice coordinates that land on -1/2 of a real-line axis one ulp inward.
    bool realline_epsilon_clip = false;
    // 0 means UQCOV_THREADS or hardware concurrency.
    unsigned threads = 0;
};

class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Tensor-product midpoint rule with n points per axis: nodes (i + 1/2)/n.
struct Midpoint {
    std::size_t n;
};

// Rank-1 lattice rule {i z / n + shift} for i = 0..n-1.
struct Lattice {
    std::size_t n;
    std::vector<std::uint64_t> z;
    std::vector<double> shift;  // empty: unshifted
};

class CubatureRule {
public:
    using Kind = std::variant<Midpoint, Lattice>;

    static CubatureRule midpoint(std::size_t n);
    static CubatureRule lattice(std::size_t n, std::vector<std::uint64_t> z, std::vector<double> shift = {});

    const Kind& kind() const noexcept { return kind_; }
    std::size_t node_count(std::size_t dim) const;
    std::string describe() const;

private:
    explicit CubatureRule(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

using CubeFunction = std::function<double(std::span<const double>)>;
using NodeVisitor = std::function<void(std::size_t index, std::span<const double> t)>;

// Visits every node in deterministic order; dimension = kinds.size().
void for_each_node(const CubatureRule& rule, std::span<const DomainKind> kinds, const NodeVisitor& visit,
                   const CubatureOptions& options = {});
std::vector<std::vector<double>> nodes(const CubatureRule& rule, std::span<const DomainKind> kinds,
                                       const CubatureOptions& options = {});

// (1/N) sum g(node). Non-finite values or domain errors raise EvaluationError naming the node.
double apply(const CubatureRule& rule, const CubeFunction& g, std::span<const DomainKind> kinds,
             const CubatureOptions& options = {});
double apply(const CubatureRule& rule, const TransformedIntegrand& g, const CubatureOptions& options = {});

double integrate_weighted(DomainFunction f, const std::vector<Density>& densities,
                          const std::vector<Transform>& transforms, const CubatureRule& rule,
                          const CubatureOptions& options = {});

struct ConvergenceRow {
    std::size_t n;
    double value;
    double abs_error;
    double observed_order;  // NaN for the first row
};

// Rows for each n; order = log(e_{i-1}/e_i) / log(n_i/n_{i-1}).
std::vector<ConvergenceRow> convergence_table(const std::function<double(std::size_t)>& estimate,
                                              std::span<const std::size_t> ns, double reference);

}  // namespace uqcov

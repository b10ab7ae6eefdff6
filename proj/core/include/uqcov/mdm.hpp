#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "uqcov/analysis.hpp"
#include "uqcov/cubature.hpp"
#include "uqcov/density.hpp"
#include "uqcov/transform.hpp"

namespace uqcov {

// Sorted, 1-based coordinate indices.
using Subset = std::vector<std::size_t>;

class ProductWeights {
public:
    // gamma_j = j^{-beta}
    static ProductWeights power_law(double beta, double q = 1.0);
    // gamma must be positive and non-increasing; gamma_j = 0 beyond dim_limit.
    static ProductWeights custom(std::function<double(std::size_t)> gamma, double q = 1.0,
                                 std::optional<std::size_t> dim_limit = std::nullopt);

    double gamma(std::size_t j) const;
    double gamma_u(const Subset& u) const;
    double q() const noexcept { return q_; }
    double q_star() const noexcept;
    std::optional<double> beta() const noexcept { return beta_; }
    std::optional<std::size_t> dim_limit() const noexcept { return dim_limit_; }

    // Throws ConfigError unless sum_j gamma_j^{q*} < inf can be established.
    void check_summable() const;

private:
    ProductWeights() = default;
    std::function<double(std::size_t)> gamma_;
    std::optional<double> beta_;
    std::optional<std::size_t> dim_limit_;
    double q_ = 1.0;
};

struct ActiveEntry {
    Subset u;
    double gamma_u;
    double criterion;  // gamma_u * normI1^{|u|}
};

struct ActiveSet {
    std::vector<ActiveEntry> entries;  // ordered by (|u|, lexicographic)
    double epsilon = 0.0;
    double norm_I1 = 0.0;
    double q_star = 0.0;

    std::size_t max_order() const noexcept;
    std::size_t max_coordinate() const noexcept;
    const ActiveEntry* find(const Subset& u) const;
};

struct ActiveSetLimits {
    std::size_t max_coordinate = 1'000'000;
    std::size_t max_order = 30;
    std::size_t max_entries = 5'000'000;
};

ActiveSet active_set(const ProductWeights& w, double norm_I1, double eps, const ActiveSetLimits& limits = {});

std::size_t superposition_dimension(const ProductWeights& w, double norm_I1, double eps);
// max{k : normI1^k / (k!)^beta > eps}
std::size_t superposition_dimension_power_law(double norm_I1, double beta, double eps);

// f_u(x_u) = sum_{v subset of u} (-1)^{|u|-|v|} f(x_v; 0) for f of `dim` variables.
double anchored_component(const DomainFunction& f, std::size_t dim, const Subset& u, std::span<const double> x_u);

enum class RuleFamily {
    Lattice,        // n_u lattice points (builtin Korobov vectors)
    MidpointTensor  // n_u midpoint points per axis
};
const char* to_string(RuleFamily f);

struct MdmPlan {
    ActiveSet active;
    std::vector<std::size_t> n_u;  // parallel to active.entries
    std::size_t budget_total = 0;
    RuleFamily family = RuleFamily::Lattice;
    double c1p = 0.0;
    double alpha = 1.0;
    double target = 0.0;    // (eps / 2^{1/q*})^{q*}, or eps/2 when q* = inf
    double achieved = 0.0;  // left-hand side of the allocation inequality

    bool satisfied() const noexcept { return achieved <= target; }
};

MdmPlan allocate_samples(const ActiveSet& active, double eps, double c1p, RuleFamily family);

struct MdmOptions {
    RuleFamily family = RuleFamily::Lattice;
    CubatureOptions cubature{};
    ActiveSetLimits limits{};
    std::size_t max_points_per_subset = std::size_t{1} << 20;
};

struct MdmResult {
    double value;
    MdmPlan plan;
    std::vector<double> contributions;  // parallel to plan.active.entries
    std::size_t evaluated_subsets;
};

// f depends on the first `dim` coordinates; subsets reaching beyond contribute 0.
MdmResult mdm_integrate(const DomainFunction& f, std::size_t dim, const Density& rho, const Transform& tr,
                        PExponent p, const ProductWeights& w, double eps, const MdmOptions& options = {});

}  // namespace uqcov

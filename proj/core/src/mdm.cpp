#include "uqcov/mdm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "uqcov/error.hpp"
#include "uqcov/lattice.hpp"

namespace uqcov {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t next_pow2(double x) {
    std::size_t n = 1;
    while (static_cast<double>(n) < x) {
        if (n >= (std::size_t{1} << 62)) throw ConfigError("sample allocation overflow: n_u beyond 2^62");
        n <<= 1;
    }
    return n;
}

bool subset_less(const ActiveEntry& a, const ActiveEntry& b) {
    if (a.u.size() != b.u.size()) return a.u.size() < b.u.size();
    return a.u < b.u;
}

class Enumerator {
public:
    Enumerator(const ProductWeights& w, double norm_I1, double eps, const ActiveSetLimits& limits, ActiveSet& out)
        : w_(w), norm_(norm_I1), eps_(eps), limits_(limits), out_(out) {
        // Coordinates whose factor gamma_j * normI1 exceeds 1 can raise descendants
        // above their parent; their suffix products bound that amplification.
        std::vector<double> logs;
        for (std::size_t j = 1;; ++j) {
            if (j > limits_.max_coordinate)
                throw ConfigError("active set: gamma_j * normI1 stays above 1 beyond J_max = " +
                                  std::to_string(limits_.max_coordinate));
            const double f = w_.gamma(j) * norm_;
            if (!(f > 1.0)) break;
            logs.push_back(std::log(f));
        }
        amp_.assign(logs.size() + 2, 0.0);
        for (std::size_t j = logs.size(); j-- > 0;) amp_[j] = amp_[j + 1] + logs[j];
        // amp_[j] = sum_{i > j} log(gamma_i normI1) over amplifying i (1-based j)
    }

    void run() {
        Subset u;
        visit(u, 1.0, 1);
    }

private:
    double log_amp_after(std::size_t j) const { return j < amp_.size() ? amp_[j] : 0.0; }

    void visit(Subset& u, double crit, std::size_t first) {
        for (std::size_t j = first;; ++j) {
            const double g = w_.gamma(j);
            if (!(g > 0.0)) return;
            const double c = crit * g * norm_;
            const double bound = c * std::exp(log_amp_after(j));
            if (!(bound > eps_)) return;
            if (j > limits_.max_coordinate) {
                std::ostringstream msg;
                msg << "active set reaches coordinate " << j << " > J_max = " << limits_.max_coordinate
                    << " (eps too small for the weight decay)";
                throw ConfigError(msg.str());
            }
            u.push_back(j);
            if (u.size() > limits_.max_order)
                throw ConfigError("active set: subset order exceeds " + std::to_string(limits_.max_order));
            if (c > eps_) {
                if (out_.entries.size() >= limits_.max_entries)
                    throw ConfigError("active set exceeds " + std::to_string(limits_.max_entries) + " subsets");
                out_.entries.push_back({u, w_.gamma_u(u), c});
            }
            visit(u, c, j + 1);
            u.pop_back();
        }
    }

    const ProductWeights& w_;
    double norm_;
    double eps_;
    const ActiveSetLimits& limits_;
    ActiveSet& out_;
    std::vector<double> amp_;
};

}  // namespace

ProductWeights ProductWeights::power_law(double beta, double q) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("power-law weights need beta > 0");
    if (!(q >= 1.0)) throw ConfigError("weights need q in [1, inf]");
    ProductWeights w;
    w.gamma_ = [beta](std::size_t j) { return std::pow(static_cast<double>(j), -beta); };
    w.beta_ = beta;
    w.q_ = q;
    return w;
}

ProductWeights ProductWeights::custom(std::function<double(std::size_t)> gamma, double q,
                                      std::optional<std::size_t> dim_limit) {
    if (!gamma) throw ConfigError("custom weights need a gamma function");
    if (!(q >= 1.0)) throw ConfigError("weights need q in [1, inf]");
    ProductWeights w;
    w.gamma_ = std::move(gamma);
    w.dim_limit_ = dim_limit;
    w.q_ = q;
    const std::size_t probe = dim_limit ? std::min<std::size_t>(*dim_limit, 1000) : 1000;
    double prev = kInf;
    for (std::size_t j = 1; j <= probe; ++j) {
        const double g = w.gamma_(j);
        if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError("custom weights must be positive and finite");
        if (g > prev) throw ConfigError("custom weights must be non-increasing (gamma_" + std::to_string(j) + " > gamma_" +
                                        std::to_string(j - 1) + ")");
        prev = g;
    }
    return w;
}

double ProductWeights::gamma(std::size_t j) const {
    if (j == 0) throw ConfigError("weight index is 1-based");
    if (dim_limit_ && j > *dim_limit_) return 0.0;
    return gamma_(j);
}

double ProductWeights::gamma_u(const Subset& u) const {
    double g = 1.0;
    for (std::size_t j : u) g *= gamma(j);
    return g;
}

double ProductWeights::q_star() const noexcept {
    if (std::isinf(q_)) return 1.0;
    if (q_ == 1.0) return kInf;
    return q_ / (q_ - 1.0);
}

void ProductWeights::check_summable() const {
    if (dim_limit_) return;
    const double qs = q_star();
    if (beta_) {
        if (std::isinf(qs)) return;
        if (!(*beta_ * qs > 1.0)) {
            std::ostringstream msg;
            msg << "weights not summable: beta * q* = " << *beta_ * qs << " <= 1";
            throw ConfigError(msg.str());
        }
    }
}

std::size_t ActiveSet::max_order() const noexcept {
    std::size_t m = 0;
    for (const auto& e : entries) m = std::max(m, e.u.size());
    return m;
}

std::size_t ActiveSet::max_coordinate() const noexcept {
    std::size_t m = 0;
    for (const auto& e : entries)
        if (!e.u.empty()) m = std::max(m, e.u.back());
    return m;
}

const ActiveEntry* ActiveSet::find(const Subset& u) const {
    for (const auto& e : entries)
        if (e.u == u) return &e;
    return nullptr;
}

ActiveSet active_set(const ProductWeights& w, double norm_I1, double eps, const ActiveSetLimits& limits) {
    if (!(eps > 0.0)) throw ConfigError("active set needs eps > 0");
    if (!(norm_I1 > 0.0) || !std::isfinite(norm_I1)) throw ConfigError("active set needs a finite positive ||I_1||");
    w.check_summable();
    ActiveSet out;
    out.epsilon = eps;
    out.norm_I1 = norm_I1;
    out.q_star = w.q_star();
    out.entries.push_back({{}, 1.0, 1.0});
    Enumerator(w, norm_I1, eps, limits, out).run();
    std::sort(out.entries.begin(), out.entries.end(), subset_less);
    return out;
}

std::size_t superposition_dimension(const ProductWeights& w, double norm_I1, double eps) {
    return active_set(w, norm_I1, eps).max_order();
}

std::size_t superposition_dimension_power_law(double norm_I1, double beta, double eps) {
    if (!(eps > 0.0) || !(norm_I1 > 0.0) || !(beta > 0.0))
        throw ConfigError("superposition dimension needs positive eps, ||I_1|| and beta");
    const double log_eps = std::log(eps), log_norm = std::log(norm_I1);
    std::size_t best = 0;
    for (std::size_t k = 1; k < 100000; ++k) {
        const double kd = static_cast<double>(k);
        const double v = kd * log_norm - beta * std::lgamma(kd + 1.0);
        if (v > log_eps) best = k;
        else if (beta * std::log(kd + 1.0) > log_norm) break;
    }
    return best;
}

double anchored_component(const DomainFunction& f, std::size_t dim, const Subset& u, std::span<const double> x_u) {
    if (u.size() != x_u.size()) throw ConfigError("anchored component: subset and point sizes differ");
    if (u.size() > 30) throw ConfigError("anchored component: |u| > 30 refused (2^|u| evaluations)");
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] == 0 || u[k] > dim) throw ConfigError("anchored component: index outside 1.." + std::to_string(dim));
        if (k > 0 && u[k] <= u[k - 1]) throw ConfigError("anchored component: subset must be strictly increasing");
    }
    std::vector<double> x(dim, 0.0);
    const std::size_t m = u.size();
    CompensatedSum sum;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::size_t bits = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const bool on = (mask >> k) & 1u;
            x[u[k] - 1] = on ? x_u[k] : 0.0;
            bits += on;
        }
        const double v = f(x);
        sum.add(((m - bits) % 2 == 0) ? v : -v);
    }
    return sum.value();
}

const char* to_string(RuleFamily f) {
    return f == RuleFamily::Lattice ? "lattice" : "midpoint-tensor";
}

MdmPlan allocate_samples(const ActiveSet& active, double eps, double c1p, RuleFamily family) {
    if (!(eps > 0.0)) throw ConfigError("allocation needs eps > 0");
    if (!(c1p > 0.0) || !std::isfinite(c1p))
        throw ConfigError("allocation needs a finite C_{1,p} bound (the transform is not admissible for this p)");
    MdmPlan plan;
    plan.active = active;
    plan.family = family;
    plan.c1p = c1p;
    plan.alpha = 1.0;
    const double qs = active.q_star;
    const std::size_t n_sets = active.entries.size();
    plan.n_u.assign(n_sets, 1);

    std::vector<double> c(n_sets, 0.0);
    for (std::size_t i = 0; i < n_sets; ++i) {
        const auto& e = active.entries[i];
        if (!e.u.empty()) c[i] = e.gamma_u * std::pow(c1p, static_cast<double>(e.u.size()));
    }

    if (std::isinf(qs)) {
        plan.target = eps / 2.0;
        for (std::size_t i = 0; i < n_sets; ++i)
            if (!active.entries[i].u.empty()) plan.n_u[i] = next_pow2(c[i] / plan.target);
        double worst = 0.0;
        for (std::size_t i = 0; i < n_sets; ++i)
            if (!active.entries[i].u.empty()) worst = std::max(worst, c[i] / static_cast<double>(plan.n_u[i]));
        plan.achieved = worst;
    } else {
        const double alpha = plan.alpha;
        plan.target = std::pow(eps / std::pow(2.0, 1.0 / qs), qs);
        const double e = qs / (alpha * qs + 1.0);
        double s = 0.0;
        for (std::size_t i = 0; i < n_sets; ++i)
            if (!active.entries[i].u.empty()) s += std::pow(c[i], e);
        const double kappa = std::pow(s / plan.target, 1.0 / (alpha * qs));
        for (std::size_t i = 0; i < n_sets; ++i)
            if (!active.entries[i].u.empty()) plan.n_u[i] = next_pow2(kappa * std::pow(c[i], e));
        CompensatedSum lhs;
        for (std::size_t i = 0; i < n_sets; ++i)
            if (!active.entries[i].u.empty())
                lhs.add(std::pow(c[i] * std::pow(static_cast<double>(plan.n_u[i]), -alpha), qs));
        plan.achieved = lhs.value();
    }
    for (std::size_t n : plan.n_u) plan.budget_total += n;
    return plan;
}

MdmResult mdm_integrate(const DomainFunction& f, std::size_t dim, const Density& rho, const Transform& tr,
                        PExponent p, const ProductWeights& w, double eps, const MdmOptions& options) {
    if (dim == 0) throw ConfigError("mdm: function dimension must be positive");
    const double norm = operator_norm_I1(rho, p);
    const double c1p = c1p_bound(rho, tr, p).c1p_bound;
    const ActiveSet act = active_set(w, norm, eps, options.limits);
    MdmResult result{0.0, allocate_samples(act, eps, c1p, options.family), {}, 0};
    const auto& entries = result.plan.active.entries;
    result.contributions.assign(entries.size(), 0.0);

    CompensatedSum total;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Subset& u = entries[i].u;
        if (!u.empty() && u.back() > dim) continue;
        ++result.evaluated_subsets;
        double v = 0.0;
        if (u.empty()) {
            const std::vector<double> zero(dim, 0.0);
            v = f(zero);
        } else {
            const std::size_t k = u.size();
            const std::size_t n = result.plan.n_u[i];
            auto f_u = [&](std::span<const double> x_u) { return anchored_component(f, dim, u, x_u); };
            const auto g = TransformedIntegrand::homogeneous(f_u, k, tr, rho);
            if (options.family == RuleFamily::Lattice) {
                if (n > options.max_points_per_subset)
                    throw ConfigError("mdm: subset needs " + std::to_string(n) + " lattice points, cap is " +
                                      std::to_string(options.max_points_per_subset));
                const auto gv = builtin_korobov_vector(n, k);
                std::vector<double> shift;
                if (rho.domain() == DomainKind::RealLine) shift.assign(k, 0.5 / static_cast<double>(n));
                v = apply(CubatureRule::lattice(n, gv.components, shift), g, options.cubature);
            } else {
                const double total_nodes = std::pow(static_cast<double>(n), static_cast<double>(k));
                if (total_nodes > static_cast<double>(options.max_points_per_subset) * 64.0)
                    throw ConfigError("mdm: midpoint tensor rule for subset of order " + std::to_string(k) +
                                      " needs " + std::to_string(total_nodes) + " nodes");
                v = apply(CubatureRule::midpoint(n), g, options.cubature);
            }
        }
        result.contributions[i] = v;
        total.add(v);
    }
    result.value = total.value();
    return result;
}

}  // namespace uqcov

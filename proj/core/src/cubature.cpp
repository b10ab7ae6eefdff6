#include "uqcov/cubature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "intmath.hpp"
#include "parallel.hpp"
#include "uqcov/error.hpp"

namespace uqcov {
namespace {

constexpr std::size_t kBlock = 4096;

std::size_t checked_pow(std::size_t n, std::size_t d) {
    std::size_t out = 1;
    for (std::size_t j = 0; j < d; ++j) {
        if (out > (std::size_t{1} << 62) / n) throw ConfigError("midpoint rule: n^d overflows the node counter");
        out *= n;
    }
    return out;
}

// Writes node `index` into t; one coordinate per axis.
class NodeGenerator {
public:
    NodeGenerator(const CubatureRule& rule, std::span<const DomainKind> kinds, const CubatureOptions& options)
        : rule_(rule), kinds_(kinds), clip_(options.realline_epsilon_clip) {
        const std::size_t d = kinds.size();
        if (d == 0) throw ConfigError("cubature: dimension must be positive");
        if (const auto* l = std::get_if<Lattice>(&rule.kind())) {
            if (l->z.size() < d)
                throw ConfigError("lattice rule: generating vector has " + std::to_string(l->z.size()) +
                                  " components, dimension " + std::to_string(d) + " requested");
            if (!l->shift.empty() && l->shift.size() < d)
                throw ConfigError("lattice rule: shift shorter than the dimension");
        }
        count_ = rule.node_count(d);
    }

    std::size_t count() const noexcept { return count_; }

    void node(std::size_t index, double* t) const {
        const std::size_t d = kinds_.size();
        if (const auto* m = std::get_if<Midpoint>(&rule_.kind())) {
            std::size_t rest = index;
            for (std::size_t j = d; j-- > 0;) {
                const std::size_t i = rest % m->n;
                rest /= m->n;
                const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(m->n);
                t[j] = kinds_[j] == DomainKind::RealLine ? u - 0.5 : u;
            }
            return;
        }
        const auto& l = std::get<Lattice>(rule_.kind());
        for (std::size_t j = 0; j < d; ++j) {
            const std::uint64_t r = detail::mulmod(index, l.z[j], l.n);
            double u = static_cast<double>(r) / static_cast<double>(l.n);
            if (!l.shift.empty()) {
                u += l.shift[j];
                u -= std::floor(u);
            }
            if (kinds_[j] == DomainKind::RealLine) {
                u -= 0.5;
                if (u == -0.5 && clip_) u = std::nextafter(-0.5, 0.0);
            }
            t[j] = u;
        }
    }

private:
    const CubatureRule& rule_;
    std::span<const DomainKind> kinds_;
    bool clip_;
    std::size_t count_ = 0;
};

[[noreturn]] void node_failure(std::size_t index, std::span<const double> t, const std::string& why) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "integrand failed at node #" << index << " t = (";
    for (std::size_t j = 0; j < t.size(); ++j) msg << (j ? ", " : "") << t[j];
    msg << "): " << why;
    throw EvaluationError(msg.str());
}

double evaluate(const CubeFunction& g, std::size_t index, std::span<const double> t) {
    double v = 0.0;
    try {
        v = g(t);
    } catch (const DomainError& e) {
        node_failure(index, t, e.what());
    }
    if (!std::isfinite(v)) node_failure(index, t, "non-finite value");
    return v;
}

}  // namespace

CubatureRule CubatureRule::midpoint(std::size_t n) {
    if (n == 0) throw ConfigError("midpoint rule needs n >= 1");
    return CubatureRule(Midpoint{n});
}

CubatureRule CubatureRule::lattice(std::size_t n, std::vector<std::uint64_t> z, std::vector<double> shift) {
    if (n == 0) throw ConfigError("lattice rule needs n >= 1");
    if (z.empty()) throw ConfigError("lattice rule needs a generating vector");
    for (double s : shift)
        if (!(s >= 0.0 && s < 1.0)) throw ConfigError("lattice shift components must lie in [0, 1)");
    return CubatureRule(Lattice{n, std::move(z), std::move(shift)});
}

std::size_t CubatureRule::node_count(std::size_t dim) const {
    if (const auto* m = std::get_if<Midpoint>(&kind_)) return checked_pow(m->n, dim);
    return std::get<Lattice>(kind_).n;
}

std::string CubatureRule::describe() const {
    std::ostringstream out;
    if (const auto* m = std::get_if<Midpoint>(&kind_)) {
        out << "midpoint(n=" << m->n << " per axis)";
    } else {
        const auto& l = std::get<Lattice>(kind_);
        out << "lattice(n=" << l.n << ", z=(";
        for (std::size_t j = 0; j < l.z.size() && j < 8; ++j) out << (j ? "," : "") << l.z[j];
        if (l.z.size() > 8) out << ",...";
        out << ")" << (l.shift.empty() ? "" : ", shifted") << ")";
    }
    return out.str();
}

void for_each_node(const CubatureRule& rule, std::span<const DomainKind> kinds, const NodeVisitor& visit,
                   const CubatureOptions& options) {
    const NodeGenerator gen(rule, kinds, options);
    std::vector<double> t(kinds.size());
    for (std::size_t i = 0; i < gen.count(); ++i) {
        gen.node(i, t.data());
        visit(i, t);
    }
}

std::vector<std::vector<double>> nodes(const CubatureRule& rule, std::span<const DomainKind> kinds,
                                       const CubatureOptions& options) {
    std::vector<std::vector<double>> out;
    for_each_node(
        rule, kinds, [&](std::size_t, std::span<const double> t) { out.emplace_back(t.begin(), t.end()); },
        options);
    return out;
}

double apply(const CubatureRule& rule, const CubeFunction& g, std::span<const DomainKind> kinds,
             const CubatureOptions& options) {
    const NodeGenerator gen(rule, kinds, options);
    const std::size_t d = kinds.size();
    const std::size_t count = gen.count();

    if (options.summation == SummationPolicy::Naive) {
        std::vector<double> t(d);
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            gen.node(i, t.data());
            sum += evaluate(g, i, t);
        }
        return sum / static_cast<double>(count);
    }

    const std::size_t n_blocks = (count + kBlock - 1) / kBlock;
    std::vector<double> block_sums(n_blocks);
    detail::parallel_for_blocks(n_blocks, options.threads, [&](std::size_t b) {
        std::vector<double> t(d);
        CompensatedSum acc;
        const std::size_t end = std::min(count, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) {
            gen.node(i, t.data());
            acc.add(evaluate(g, i, t));
        }
        block_sums[b] = acc.value();
    });
    CompensatedSum total;
    for (double s : block_sums) total.add(s);
    return total.value() / static_cast<double>(count);
}

double apply(const CubatureRule& rule, const TransformedIntegrand& g, const CubatureOptions& options) {
    const auto kinds = g.domains();
    return apply(
        rule, [&g](std::span<const double> t) { return g(t); }, kinds, options);
}

double integrate_weighted(DomainFunction f, const std::vector<Density>& densities,
                          const std::vector<Transform>& transforms, const CubatureRule& rule,
                          const CubatureOptions& options) {
    return apply(rule, transformed_integrand(std::move(f), transforms, densities), options);
}

std::vector<ConvergenceRow> convergence_table(const std::function<double(std::size_t)>& estimate,
                                              std::span<const std::size_t> ns, double reference) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double v = estimate(ns[i]);
        ConvergenceRow row{ns[i], v, std::abs(v - reference), std::numeric_limits<double>::quiet_NaN()};
        if (i > 0) {
            const auto& prev = rows.back();
            row.observed_order = std::log(prev.abs_error / row.abs_error) /
                                 std::log(static_cast<double>(row.n) / static_cast<double>(prev.n));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace uqcov

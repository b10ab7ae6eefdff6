#include "experiments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "builtins.hpp"
#include "uqcov/error.hpp"

namespace uqcov::cli {
namespace {

std::string full(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

double linear_x(std::span<const double> x) {
    return x[0];
}

double abs_x(std::span<const double> x) {
    return std::abs(x[0]);
}

double prod_x(std::span<const double> x) {
    double p = 1.0;
    for (double v : x) p *= v;
    return p;
}

}  // namespace

Protocol parse_protocol(const std::string& s) {
    if (s == "published") return Protocol::Published;
    if (s == "literal") return Protocol::Literal;
    throw ConfigError("--protocol: expected 'published' or 'literal', got '" + s + "'");
}

const char* to_string(Protocol p) {
    return p == Protocol::Published ? "published" : "literal";
}

double test1_integrand(double t, double a, double lambda) {
    return -lambda * a * a * std::log(1.0 - t) * std::pow(1.0 - t, a - 1.0);
}

double test2_integrand(double t, double a, double sigma) {
    const double nu = a * sigma * std::numbers::sqrt2 * erfinv(2.0 * t);
    return a * std::abs(nu) * std::exp(-nu * nu / (2.0 * sigma * sigma) * (1.0 - 1.0 / (a * a)));
}

ErrorTable run_test1(const Test1Config& cfg) {
    const Density rho = Density::exponential(cfg.lambda);
    const double a_star = optimal_a(rho, PExponent::infinity()).a_star;
    ErrorTable t;
    t.title = "Test 1: midpoint rule, f(x) = x, Exponential(lambda=" + full(cfg.lambda) + "), exact value lambda";
    t.labels = {"a=a*", "a=1.5", "a=1"};
    t.a_values = {a_star, 1.5, 1.0};
    t.ns = cfg.ns;
    for (std::size_t n : cfg.ns) {
        std::vector<double> row;
        for (double a : t.a_values) {
            double q = 0.0;
            if (cfg.protocol == Protocol::Published) {
                double sum = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    sum += test1_integrand((static_cast<double>(i) + 0.5) / static_cast<double>(n), a, cfg.lambda);
                q = sum / static_cast<double>(n);
            } else {
                const auto g = TransformedIntegrand::homogeneous(linear_x, 1, Transform::scaled_inverse_cdf(rho, a), rho);
                q = apply(CubatureRule::midpoint(n), g);
            }
            row.push_back(std::abs(q - cfg.lambda));
        }
        t.errors.push_back(std::move(row));
    }
    t.notes.push_back("a* = " + full(a_star) + " (p = inf)");
    t.notes.push_back(std::string("protocol: ") + to_string(cfg.protocol) +
                      (cfg.protocol == Protocol::Published ? " (naive left-to-right summation)"
                                                           : " (compensated summation)"));
    return t;
}

ErrorTable run_test2(const Test2Config& cfg) {
    const Density rho = Density::gaussian(cfg.sigma);
    const double a_star = optimal_a(rho, PExponent::infinity()).a_star;
    const double exact = cfg.sigma * std::sqrt(2.0 / std::numbers::pi);
    const bool published = cfg.protocol == Protocol::Published;
    ErrorTable t;
    t.title = "Test 2: midpoint rule, f(x) = |x|, Gaussian(sigma=" + full(cfg.sigma) + "), exact value sigma*sqrt(2/pi)";
    t.labels = {"a=a*", published ? "a=2^(1/4)" : "a=sqrt(2)", "a=1"};
    t.a_values = {a_star, published ? std::pow(2.0, 0.25) : std::numbers::sqrt2, 1.0};
    t.ns = cfg.ns;
    for (std::size_t n : cfg.ns) {
        std::vector<double> row;
        for (double a : t.a_values) {
            double q = 0.0;
            if (published) {
                const std::size_t m = n + 1;
                double sum = 0.0;
                for (std::size_t i = 0; i < m; ++i)
                    sum += test2_integrand((static_cast<double>(i) + 0.5) / static_cast<double>(m) - 0.5, a, cfg.sigma);
                q = sum / static_cast<double>(m);
            } else {
                const auto g = TransformedIntegrand::homogeneous(abs_x, 1, Transform::scaled_inverse_cdf(rho, a), rho);
                q = apply(CubatureRule::midpoint(n), g);
            }
            row.push_back(std::abs(q - exact));
        }
        t.errors.push_back(std::move(row));
    }
    t.notes.push_back("a* = " + full(a_star) + " (p = inf)");
    if (published)
        t.notes.push_back("protocol: published (n+1 midpoint nodes, middle column a = 2^(1/4), naive summation)");
    else
        t.notes.push_back("protocol: literal (n midpoint nodes, a = sqrt(2), compensated summation)");
    return t;
}

std::vector<ErrorTable> run_test3(const Test3Config& cfg) {
    const Density rho = Density::exponential(1.0);
    const double a_star = optimal_a(rho, PExponent::infinity()).a_star;
    if (cfg.kmin < 0 || cfg.kmax < cfg.kmin || cfg.kmax > 20) throw ConfigError("--kmin/--kmax: need 0 <= kmin <= kmax <= 20");
    std::vector<ErrorTable> out;
    for (std::size_t d : cfg.dims) {
        if (d == 0) throw ConfigError("--dims: dimensions must be positive");
        if (cfg.vector && cfg.vector->components.size() < d)
            throw ConfigError("--gen-vector: " + cfg.vector->source + " has " +
                              std::to_string(cfg.vector->components.size()) + " components, d = " + std::to_string(d) +
                              " needs at least " + std::to_string(d));
        ErrorTable t;
        t.title = "Test 3: lattice rule, f(x) = x_1*...*x_" + std::to_string(d) + ", Exponential(1), d = " + std::to_string(d);
        t.labels = {"a=a*", "a=1.5", "a=1"};
        t.a_values = {a_star, 1.5, 1.0};
        std::vector<std::string> sources;
        for (int k = cfg.kmin; k <= cfg.kmax; ++k) {
            const std::size_t n = std::size_t{1} << k;
            t.ns.push_back(n);
            const GeneratingVector gv = cfg.vector ? *cfg.vector : builtin_korobov_vector(n, d);
            if (!cfg.vector) sources.push_back(gv.source);
            const CubatureRule rule = CubatureRule::lattice(n, gv.components);
            std::vector<double> row;
            for (double a : t.a_values) {
                const auto g = TransformedIntegrand::homogeneous(prod_x, d, Transform::scaled_inverse_cdf(rho, a), rho);
                row.push_back(std::abs(apply(rule, g) - 1.0));
            }
            t.errors.push_back(std::move(row));
        }
        t.notes.push_back("a* = " + full(a_star) + " (p = inf), unshifted rule");
        if (cfg.vector) {
            t.notes.push_back("generating vector: " + cfg.vector->source);
        } else {
            std::string s = "generating vectors:";
            for (const auto& src : sources) s += " " + src;
            t.notes.push_back(s);
        }
        out.push_back(std::move(t));
    }
    return out;
}

DofepsResult run_dofeps(double lambda, PExponent p, double eps, const std::vector<double>& betas, double q) {
    DofepsResult r;
    r.norm_I1 = operator_norm_I1(Density::exponential(lambda), p);
    for (double beta : betas) {
        const auto w = ProductWeights::power_law(beta, q);
        const ActiveSet act = active_set(w, r.norm_I1, eps);
        r.rows.push_back({beta, act.max_order(), superposition_dimension_power_law(r.norm_I1, beta, eps),
                          act.entries.size()});
    }
    return r;
}

IntegrateResult run_integrate(const IntegrateConfig& cfg) {
    const BuiltinFunction fn = builtin_function(cfg.function);
    if (cfg.dims == 0) throw ConfigError("--dims: must be positive");
    const auto g = TransformedIntegrand::homogeneous(fn.f, cfg.dims, cfg.transform, cfg.density);
    IntegrateResult r{};
    if (cfg.rule == "midpoint") {
        const auto rule = CubatureRule::midpoint(cfg.n);
        r.nodes = rule.node_count(cfg.dims);
        r.rule = rule.describe();
        r.value = apply(rule, g, cfg.cubature);
    } else if (cfg.rule == "lattice") {
        const GeneratingVector gv = cfg.vector ? *cfg.vector : builtin_korobov_vector(cfg.n, cfg.dims);
        if (gv.components.size() < cfg.dims)
            throw ConfigError("--gen-vector: vector shorter than --dims");
        const auto rule = CubatureRule::lattice(cfg.n, gv.components);
        r.nodes = cfg.n;
        r.rule = rule.describe() + " from " + gv.source;
        r.value = apply(rule, g, cfg.cubature);
    } else {
        throw ConfigError("--rule: expected 'midpoint' or 'lattice', got '" + cfg.rule + "'");
    }
    r.exact = fn.exact(cfg.density, cfg.dims);
    r.abs_error = std::abs(r.value - r.exact);
    return r;
}

std::vector<std::pair<double, double>> dump_integrand(const IntegrateConfig& cfg) {
    if (cfg.dims != 1) throw ConfigError("--dump-integrand: only univariate integrands (--dims 1)");
    const BuiltinFunction fn = builtin_function(cfg.function);
    const auto g = TransformedIntegrand::homogeneous(fn.f, 1, cfg.transform, cfg.density);
    std::vector<std::pair<double, double>> out;
    for (const auto& node : nodes(CubatureRule::midpoint(cfg.n), g.domains())) out.emplace_back(node[0], g(node));
    return out;
}

MdmReport run_mdm(const MdmConfig& cfg) {
    const BuiltinFunction fn = builtin_function(cfg.function);
    const auto w = ProductWeights::power_law(cfg.beta, cfg.q);
    MdmOptions opts;
    opts.family = cfg.family;
    return {mdm_integrate(fn.f, cfg.dims, cfg.density, cfg.transform, cfg.p, w, cfg.eps, opts),
            fn.exact(cfg.density, cfg.dims)};
}

}  // namespace uqcov::cli

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "builtins.hpp"
#include "experiments.hpp"
#include "report.hpp"
#include "uqcov/error.hpp"

using namespace uqcov;
using namespace uqcov::cli;

namespace {

struct Common {
    std::string format = "table";
    std::string out;
};

struct DensityFlags {
    std::string density = "exp";
    double lambda = 1.0;
    double sigma = 1.0;
    double c = 3.0;
    CLI::Option* lambda_opt = nullptr;
    CLI::Option* sigma_opt = nullptr;
    CLI::Option* c_opt = nullptr;
};

struct TransformFlags {
    std::string a = "auto";
    double b = 0.0;
    std::string p = "inf";
    CLI::Option* a_opt = nullptr;
    CLI::Option* b_opt = nullptr;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "csv"}));
    sub->add_option("--out", c.out, "write output to PATH instead of stdout");
}

void add_density(CLI::App* sub, DensityFlags& d) {
    sub->add_option("--density", d.density, "density kind")->check(CLI::IsMember({"exp", "gauss", "polytail"}));
    d.lambda_opt = sub->add_option("--lambda", d.lambda, "exponential scale lambda");
    d.sigma_opt = sub->add_option("--sigma", d.sigma, "gaussian standard deviation sigma");
    d.c_opt = sub->add_option("--c", d.c, "polytail exponent c > 2");
}

void add_transform(CLI::App* sub, TransformFlags& t, bool with_p) {
    t.a_opt = sub->add_option("--a", t.a, "scale a >= 1 of nu_a, or 'auto' for a*");
    t.b_opt = sub->add_option("--b", t.b, "use nu_b(t) = (1-t)^{-b} - 1 (polytail only)");
    if (with_p) sub->add_option("--p", t.p, "smoothness exponent p in [1, inf]");
}

Density make_density(const DensityFlags& d) {
    if (d.density != "exp" && d.lambda_opt->count()) throw ConfigError("--lambda: only valid with --density exp");
    if (d.density != "gauss" && d.sigma_opt->count()) throw ConfigError("--sigma: only valid with --density gauss");
    if (d.density != "polytail" && d.c_opt->count()) throw ConfigError("--c: only valid with --density polytail");
    try {
        if (d.density == "exp") return Density::exponential(d.lambda);
        if (d.density == "gauss") return Density::gaussian(d.sigma);
        return Density::poly_tail(d.c);
    } catch (const ConfigError& e) {
        const std::string flag = d.density == "exp" ? "--lambda" : d.density == "gauss" ? "--sigma" : "--c";
        throw ConfigError(flag + ": " + e.what());
    }
}

PExponent make_p(const std::string& text) {
    try {
        return PExponent::parse(text);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("--p: ") + e.what());
    }
}

double parse_real(const std::string& flag, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ConfigError(flag + ": cannot parse '" + text + "'");
    return v;
}

Transform make_transform(const Density& rho, const TransformFlags& t, PExponent p) {
    if (t.b_opt->count()) {
        if (!std::holds_alternative<PolyTail>(rho.params()))
            throw ConfigError("--b: the poly-growth transform is only defined for --density polytail");
        if (t.a_opt->count()) throw ConfigError("--a: cannot be combined with --b");
        if (!(t.b > 0.0)) throw ConfigError("--b: must be positive");
        return Transform::poly_growth(t.b);
    }
    if (t.a == "auto") {
        try {
            return Transform::scaled_inverse_cdf(rho, optimal_a(rho, p).a_star);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("--a auto: ") + e.what());
        }
    }
    const double a = parse_real("--a", t.a);
    if (!(a >= 1.0)) throw ConfigError("--a: must be >= 1");
    return Transform::scaled_inverse_cdf(rho, a);
}

OutputFormat format_of(const Common& c) {
    return c.format == "csv" ? OutputFormat::Csv : OutputFormat::Table;
}

void emit(const Common& c, const std::vector<Table>& tables) {
    if (c.out.empty()) {
        render(std::cout, tables, format_of(c));
        return;
    }
    std::ofstream file(c.out);
    if (!file) throw ConfigError("--out: cannot open '" + c.out + "' for writing");
    render(file, tables, format_of(c));
}

Table error_table(const ErrorTable& e, const std::string& key) {
    Table t;
    t.title = e.title;
    t.key = key;
    t.columns.push_back({"n", CellStyle::Integer});
    for (const auto& l : e.labels) t.columns.push_back({l, CellStyle::Scientific});
    for (std::size_t i = 0; i < e.ns.size(); ++i) {
        std::vector<Cell> row{static_cast<long long>(e.ns[i])};
        for (double v : e.errors[i]) row.emplace_back(v);
        t.rows.push_back(std::move(row));
    }
    std::string a_line = "columns:";
    for (std::size_t j = 0; j < e.labels.size(); ++j) a_line += " " + e.labels[j] + " -> a = " + format_full(e.a_values[j]) + ";";
    t.notes.push_back(a_line);
    for (const auto& n : e.notes) t.notes.push_back(n);
    return t;
}

Table key_value(const std::string& title, const std::vector<std::pair<std::string, Cell>>& items) {
    Table t;
    t.title = title;
    t.columns = {{"quantity", CellStyle::Text}, {"value", CellStyle::Fixed, 12}};
    for (const auto& [k, v] : items) t.rows.push_back({k, v});
    return t;
}

std::string scale_symbol(const Density& rho, PExponent p) {
    const std::string sym = std::holds_alternative<Exponential>(rho.params())   ? "lambda"
                            : std::holds_alternative<Gaussian>(rho.params()) ? "sigma"
                                                                             : "1";
    if (p.is_infinite()) return sym;
    if (p.p() == 2.0) return "sqrt(" + sym + ")";
    return sym + "^(1/p*)";
}

std::string subset_text(const Subset& u) {
    std::string s = "{";
    for (std::size_t k = 0; k < u.size(); ++k) s += (k ? "," : "") + std::to_string(u[k]);
    return s + "}";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uqcov: weighted integration over unbounded domains via scaled change of variables"};
    app.require_subcommand(1);

    Common common;

    // test1
    auto* t1 = app.add_subcommand("test1", "midpoint errors for f(x)=x with the exponential density");
    std::string t1_protocol = "published";
    double t1_lambda = 1.0;
    std::vector<std::size_t> t1_ns;
    t1->add_option("--protocol", t1_protocol, "published | literal");
    t1->add_option("--lambda", t1_lambda, "exponential scale");
    t1->add_option("--n", t1_ns, "node counts (default 10 100 1000 10000 100000)");
    add_common(t1, common);

    // test2
    auto* t2 = app.add_subcommand("test2", "midpoint errors for f(x)=|x| with the gaussian density");
    std::string t2_protocol = "published";
    double t2_sigma = 1.0;
    std::vector<std::size_t> t2_ns;
    t2->add_option("--protocol", t2_protocol, "published | literal");
    t2->add_option("--sigma", t2_sigma, "gaussian standard deviation");
    t2->add_option("--n", t2_ns, "node counts (default 10 100 1000 10000 100000)");
    add_common(t2, common);

    // test3
    auto* t3 = app.add_subcommand("test3", "lattice errors for f(x)=prod x_j with the exponential density");
    std::string t3_vector;
    std::vector<std::size_t> t3_dims;
    int t3_kmin = 10, t3_kmax = 15;
    t3->add_option("--gen-vector", t3_vector, "generating-vector file (builtin Korobov vectors otherwise)");
    t3->add_option("--dims", t3_dims, "dimensions (default 3 4)");
    t3->add_option("--kmin", t3_kmin, "smallest n = 2^kmin");
    t3->add_option("--kmax", t3_kmax, "largest n = 2^kmax");
    add_common(t3, common);

    // astar
    auto* as = app.add_subcommand("astar", "optimal scale a* and the C_{1,p} bound at a*");
    std::string as_p = "inf";
    DensityFlags as_d;
    add_density(as, as_d);
    as->add_option("--p", as_p, "smoothness exponent p in [1, inf]");
    add_common(as, common);

    // norms
    auto* nm = app.add_subcommand("norms", "h-function norms, C_{1,p} bound and operator norms");
    DensityFlags nm_d;
    TransformFlags nm_t;
    add_density(nm, nm_d);
    add_transform(nm, nm_t, true);
    add_common(nm, common);

    // dofeps
    auto* de = app.add_subcommand("dofeps", "superposition dimension d(eps) for power-law weights");
    double de_lambda = 2.0, de_eps = 1e-4, de_q = 1.0;
    std::string de_p = "2";
    std::vector<double> de_betas;
    de->add_option("--lambda", de_lambda, "exponential scale");
    de->add_option("--p", de_p, "smoothness exponent p");
    de->add_option("--eps", de_eps, "target accuracy eps");
    de->add_option("--beta", de_betas, "weight decay exponents (default 2 3 4 5)");
    de->add_option("--q", de_q, "weight summability exponent q in [1, inf]");
    add_common(de, common);

    // integrate
    auto* in = app.add_subcommand("integrate", "integrate a builtin function against the product density");
    std::string in_f = "builtin:prod", in_rule = "midpoint", in_vector, in_summation = "compensated";
    std::size_t in_dims = 1, in_n = 1024;
    bool in_dump = false, in_clip = false;
    DensityFlags in_d;
    TransformFlags in_t;
    add_density(in, in_d);
    add_transform(in, in_t, true);
    in->add_option("--f", in_f, "builtin:linear | builtin:abs | builtin:prod");
    in->add_option("--dims", in_dims, "dimension");
    in->add_option("--rule", in_rule, "midpoint (n per axis) | lattice (n points)");
    in->add_option("--n", in_n, "rule size");
    in->add_option("--gen-vector", in_vector, "generating-vector file for --rule lattice");
    in->add_option("--summation", in_summation, "compensated | naive");
    in->add_flag("--epsilon-clip", in_clip, "nudge lattice coordinates at -1/2 one ulp inward");
    in->add_flag("--dump-integrand", in_dump, "print (t, g(t)) at the midpoint nodes instead of integrating");
    add_common(in, common);

    // mdm
    auto* md = app.add_subcommand("mdm", "multivariate decomposition method with power-law weights");
    std::string md_f = "builtin:prod", md_rule = "lattice";
    std::size_t md_dims = 3;
    double md_beta = 2.0, md_q = 1.0, md_eps = 1e-3;
    DensityFlags md_d;
    TransformFlags md_t;
    add_density(md, md_d);
    add_transform(md, md_t, true);
    md->add_option("--f", md_f, "builtin:linear | builtin:abs | builtin:prod");
    md->add_option("--dims", md_dims, "number of variables of f");
    md->add_option("--beta", md_beta, "weights gamma_j = j^-beta");
    md->add_option("--q", md_q, "weight summability exponent q in [1, inf]");
    md->add_option("--eps", md_eps, "target accuracy eps");
    md->add_option("--rule", md_rule, "lattice | midpoint");
    add_common(md, common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (t1->parsed()) {
            Test1Config cfg;
            cfg.protocol = parse_protocol(t1_protocol);
            cfg.lambda = t1_lambda;
            if (!(t1_lambda > 0.0)) throw ConfigError("--lambda: must be positive");
            if (!t1_ns.empty()) cfg.ns = t1_ns;
            emit(common, {error_table(run_test1(cfg), "test1")});
        } else if (t2->parsed()) {
            Test2Config cfg;
            cfg.protocol = parse_protocol(t2_protocol);
            cfg.sigma = t2_sigma;
            if (!(t2_sigma > 0.0)) throw ConfigError("--sigma: must be positive");
            if (!t2_ns.empty()) cfg.ns = t2_ns;
            emit(common, {error_table(run_test2(cfg), "test2")});
        } else if (t3->parsed()) {
            Test3Config cfg;
            if (!t3_vector.empty()) cfg.vector = load_generating_vector(t3_vector);
            if (!t3_dims.empty()) cfg.dims = t3_dims;
            cfg.kmin = t3_kmin;
            cfg.kmax = t3_kmax;
            if (cfg.vector) {
                for (int k = cfg.kmin; k <= cfg.kmax; ++k) {
                    const auto bad = non_coprime_components(*cfg.vector, std::uint64_t{1} << k);
                    if (!bad.empty())
                        std::cerr << "uqcov: warning: " << bad.size() << " generating-vector component(s) share a factor with n = 2^"
                                  << k << "\n";
                }
            }
            std::vector<Table> tables;
            const auto results = run_test3(cfg);
            for (std::size_t i = 0; i < results.size(); ++i)
                tables.push_back(error_table(results[i], "d=" + std::to_string(cfg.dims[i])));
            emit(common, tables);
        } else if (as->parsed()) {
            const Density rho = make_density(as_d);
            const PExponent p = make_p(as_p);
            OptimalScale opt{};
            try {
                opt = optimal_a(rho, p);
            } catch (const ConfigError& e) {
                throw ConfigError(std::string("--density: ") + e.what());
            }
            const double scale_factor = std::pow(rho.scale(), p.inv_p_star());
            emit(common, {key_value("optimal scale for " + rho.describe() + ", p = " + p.to_string(),
                                    {{"a*", opt.a_star},
                                     {"C_1p bound at a*", opt.bound},
                                     {"C_1p / " + scale_symbol(rho, p), opt.bound / scale_factor},
                                     {"method", std::string(to_string(opt.method))}})});
        } else if (nm->parsed()) {
            const Density rho = make_density(nm_d);
            const PExponent p = make_p(nm_t.p);
            const Transform tr = make_transform(rho, nm_t, p);
            const NormReport r = c1p_bound(rho, tr, p);
            emit(common, {key_value("norms for " + tr.describe() + " with " + rho.describe() + ", p = " + p.to_string(),
                                    {{"p*", p.p_star()},
                                     {"h0 sup", r.h0_sup},
                                     {"h1 sup", r.h1_sup},
                                     {"h2 L_p", r.h2_lp},
                                     {"C_1p bound", r.c1p_bound},
                                     {"method", std::string(to_string(r.method))},
                                     {"||I_1||", operator_norm_I1(rho, p)},
                                     {"||J_1||", j1_norm(p, rho.domain())}})});
        } else if (de->parsed()) {
            if (de_betas.empty()) de_betas = {2.0, 3.0, 4.0, 5.0};
            if (!(de_lambda > 0.0)) throw ConfigError("--lambda: must be positive");
            if (!(de_eps > 0.0)) throw ConfigError("--eps: must be positive");
            if (!(de_q >= 1.0)) throw ConfigError("--q: must lie in [1, inf]");
            for (double b : de_betas)
                if (!(b > 0.0)) throw ConfigError("--beta: must be positive");
            const DofepsResult r = run_dofeps(de_lambda, make_p(de_p), de_eps, de_betas, de_q);
            Table t;
            t.title = "superposition dimension, Exponential(lambda=" + format_full(de_lambda) + "), p = " + de_p +
                      ", eps = " + format_full(de_eps);
            t.columns = {{"beta", CellStyle::Fixed, 2},
                         {"d(eps)", CellStyle::Integer},
                         {"max-k formula", CellStyle::Integer},
                         {"|Act(eps)|", CellStyle::Integer}};
            for (const auto& row : r.rows)
                t.rows.push_back({row.beta, static_cast<long long>(row.d_eps), static_cast<long long>(row.d_eps_formula),
                                  static_cast<long long>(row.active_size)});
            t.notes.push_back("||I_1|| = " + format_full(r.norm_I1));
            emit(common, {t});
        } else if (in->parsed()) {
            IntegrateConfig cfg;
            cfg.density = make_density(in_d);
            cfg.transform = make_transform(cfg.density, in_t, make_p(in_t.p));
            cfg.function = in_f;
            cfg.dims = in_dims;
            cfg.rule = in_rule;
            cfg.n = in_n;
            if (in_n == 0) throw ConfigError("--n: must be positive");
            if (in_summation == "naive") cfg.cubature.summation = SummationPolicy::Naive;
            else if (in_summation != "compensated") throw ConfigError("--summation: expected 'compensated' or 'naive'");
            cfg.cubature.realline_epsilon_clip = in_clip;
            if (!in_vector.empty()) {
                if (in_rule != "lattice") throw ConfigError("--gen-vector: only valid with --rule lattice");
                cfg.vector = load_generating_vector(in_vector);
            }
            builtin_function(in_f);
            if (in_dump) {
                Table t;
                t.title = "transformed integrand " + in_f + " with " + cfg.transform.describe();
                t.columns = {{"t", CellStyle::Fixed, 12}, {"g(t)", CellStyle::Scientific}};
                for (const auto& [tt, g] : dump_integrand(cfg)) t.rows.push_back({tt, g});
                emit(common, {t});
            } else {
                const IntegrateResult r = run_integrate(cfg);
                emit(common, {key_value("integral of " + in_f + " over " + std::to_string(in_dims) + " dimension(s), " +
                                            cfg.density.describe() + ", " + cfg.transform.describe(),
                                        {{"rule", r.rule},
                                         {"nodes", static_cast<long long>(r.nodes)},
                                         {"value", r.value},
                                         {"exact", r.exact},
                                         {"abs error", format_sci(r.abs_error)}})});
            }
        } else if (md->parsed()) {
            MdmConfig cfg;
            cfg.density = make_density(md_d);
            cfg.p = make_p(md_t.p);
            cfg.transform = make_transform(cfg.density, md_t, cfg.p);
            cfg.function = md_f;
            cfg.dims = md_dims;
            cfg.beta = md_beta;
            cfg.q = md_q;
            cfg.eps = md_eps;
            if (!(md_eps > 0.0)) throw ConfigError("--eps: must be positive");
            if (!(md_beta > 0.0)) throw ConfigError("--beta: must be positive");
            if (!(md_q >= 1.0)) throw ConfigError("--q: must lie in [1, inf]");
            if (md_rule == "lattice") cfg.family = RuleFamily::Lattice;
            else if (md_rule == "midpoint") cfg.family = RuleFamily::MidpointTensor;
            else throw ConfigError("--rule: expected 'lattice' or 'midpoint'");
            const MdmReport rep = run_mdm(cfg);
            const auto& plan = rep.result.plan;
            Table summary = key_value(
                "MDM for " + md_f + " in " + std::to_string(md_dims) + " variables, " + cfg.density.describe() + ", " +
                    cfg.transform.describe() + ", p = " + cfg.p.to_string(),
                {{"eps", md_eps},
                 {"||I_1||", plan.active.norm_I1},
                 {"C_1p bound", plan.c1p},
                 {"|Act(eps)|", static_cast<long long>(plan.active.entries.size())},
                 {"d(eps)", static_cast<long long>(plan.active.max_order())},
                 {"budget sum n_u", static_cast<long long>(plan.budget_total)},
                 {"allocation lhs", plan.achieved},
                 {"allocation target", plan.target},
                 {"value", rep.result.value},
                 {"exact (full f)", rep.exact},
                 {"abs error", format_sci(std::abs(rep.result.value - rep.exact))}});
            Table subsets;
            subsets.title = "active subsets";
            subsets.columns = {{"u", CellStyle::Text},
                               {"gamma_u", CellStyle::Scientific},
                               {"criterion", CellStyle::Scientific},
                               {"n_u", CellStyle::Integer},
                               {"contribution", CellStyle::Scientific}};
            for (std::size_t i = 0; i < plan.active.entries.size(); ++i) {
                const auto& e = plan.active.entries[i];
                subsets.rows.push_back({subset_text(e.u), e.gamma_u, e.criterion, static_cast<long long>(plan.n_u[i]),
                                        rep.result.contributions[i]});
            }
            emit(common, {summary, subsets});
        }
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (char& ch : msg)
            if (ch == '\n') ch = ' ';
        std::cerr << "uqcov: error: " << msg << "\n";
        return 2;
    }
    return 0;
}

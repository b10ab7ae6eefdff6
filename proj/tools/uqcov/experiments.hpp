#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uqcov/analysis.hpp"
#include "uqcov/cubature.hpp"
#include "uqcov/lattice.hpp"
#include "uqcov/mdm.hpp"

namespace uqcov::cli {

// Published: the conventions that regenerate the printed tables (naive
// summation; for test2 also n+1 midpoint nodes and a = 2^{1/4} in the middle
// column). Literal: the library path as stated (n nodes, a = sqrt 2,
// compensated sums).
enum class Protocol { Published, Literal };
Protocol parse_protocol(const std::string& s);
const char* to_string(Protocol p);

struct ErrorTable {
    std::string title;
    std::vector<std::string> labels;  // column labels, e.g. "a=a*"
    std::vector<double> a_values;
    std::vector<std::size_t> ns;
    std::vector<std::vector<double>> errors;  // [row n][column a]
    std::vector<std::string> notes;
};

struct Test1Config {
    Protocol protocol = Protocol::Published;
    double lambda = 1.0;
    std::vector<std::size_t> ns = {10, 100, 1000, 10000, 100000};
};

struct Test2Config {
    Protocol protocol = Protocol::Published;
    double sigma = 1.0;
    std::vector<std::size_t> ns = {10, 100, 1000, 10000, 100000};
};

struct Test3Config {
    std::optional<GeneratingVector> vector;  // builtin Korobov per n when absent
    std::vector<std::size_t> dims = {3, 4};
    int kmin = 10;
    int kmax = 15;
};

// Integrand of the first midpoint test: f(x) = x, Exponential(lambda), nu_a.
double test1_integrand(double t, double a, double lambda);
// Integrand of the second midpoint test: f(x) = |x|, Gaussian(sigma), nu_a.
double test2_integrand(double t, double a, double sigma);

ErrorTable run_test1(const Test1Config& cfg);
ErrorTable run_test2(const Test2Config& cfg);
std::vector<ErrorTable> run_test3(const Test3Config& cfg);

struct DofepsRow {
    double beta;
    std::size_t d_eps;          // from the active-set enumeration
    std::size_t d_eps_formula;  // max{k : ||I_1||^k / (k!)^beta > eps}
    std::size_t active_size;
};
struct DofepsResult {
    double norm_I1;
    std::vector<DofepsRow> rows;
};
DofepsResult run_dofeps(double lambda, PExponent p, double eps, const std::vector<double>& betas, double q = 1.0);

struct IntegrateConfig {
    Density density = Density::exponential(1.0);
    Transform transform = Transform::standard(Density::exponential(1.0));
    std::string function = "builtin:prod";
    std::size_t dims = 1;
    std::string rule = "midpoint";  // or "lattice"
    std::size_t n = 1024;
    std::optional<GeneratingVector> vector;
    CubatureOptions cubature{};
};
struct IntegrateResult {
    double value;
    double exact;
    double abs_error;
    std::size_t nodes;
    std::string rule;
};
IntegrateResult run_integrate(const IntegrateConfig& cfg);

// Samples (t, g(t)) of the univariate transformed integrand at midpoint nodes.
std::vector<std::pair<double, double>> dump_integrand(const IntegrateConfig& cfg);

struct MdmConfig {
    Density density = Density::exponential(1.0);
    Transform transform = Transform::standard(Density::exponential(1.0));
    PExponent p = PExponent::infinity();
    std::string function = "builtin:prod";
    std::size_t dims = 3;
    double beta = 2.0;
    double q = 1.0;
    double eps = 1e-3;
    RuleFamily family = RuleFamily::Lattice;
};
struct MdmReport {
    MdmResult result;
    double exact;
};
MdmReport run_mdm(const MdmConfig& cfg);

}  // namespace uqcov::cli

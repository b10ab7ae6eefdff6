#include "uqcov/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <regex>
#include <sstream>

#include "intmath.hpp"
#include "uqcov/cubature.hpp"
#include "uqcov/error.hpp"

namespace uqcov {
namespace {

std::optional<std::uint64_t> parse_uint(const std::string& tok) {
    std::uint64_t v = 0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

}  // namespace

GeneratingVector parse_generating_vector(std::istream& in, const std::string& source) {
    static const std::regex declared(R"(^#\s*n\s*=\s*(\d+)\s*$)");
    GeneratingVector gv;
    gv.source = source;
    int columns = 0;
    std::size_t lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::smatch m;
            const std::string body = line.substr(first);
            if (std::regex_match(body, m, declared)) gv.declared_n = parse_uint(m[1].str());
            continue;
        }
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        if (tokens.size() > 2)
            throw ParseError(source, lineno, "expected 'component' or 'index component', got " +
                                                 std::to_string(tokens.size()) + " fields");
        const int cols = static_cast<int>(tokens.size());
        if (columns == 0) columns = cols;
        if (cols != columns) throw ParseError(source, lineno, "mixed one- and two-column lines");

        std::vector<std::uint64_t> values;
        for (const auto& tok : tokens) {
            const auto v = parse_uint(tok);
            if (!v) throw ParseError(source, lineno, "'" + tok + "' is not a non-negative integer");
            values.push_back(*v);
        }
        if (cols == 2) {
            const std::uint64_t expected = gv.components.size() + 1;
            if (values[0] != expected)
                throw ParseError(source, lineno, "index " + std::to_string(values[0]) + " out of sequence (expected " +
                                                     std::to_string(expected) + ")");
        }
        const std::uint64_t component = values.back();
        if (component == 0) throw ParseError(source, lineno, "generating-vector components must be positive");
        gv.components.push_back(component);
    }
    if (gv.components.empty()) throw ParseError(source, lineno == 0 ? 1 : lineno, "no generating-vector components");
    return gv;
}

GeneratingVector load_generating_vector(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    return parse_generating_vector(in, path.string());
}

std::vector<std::size_t> non_coprime_components(const GeneratingVector& gv, std::uint64_t n) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < gv.components.size(); ++j)
        if (std::gcd(gv.components[j], n) != 1) out.push_back(j);
    return out;
}

bool is_power_of_two(std::uint64_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

GeneratingVector builtin_korobov_vector(std::uint64_t n, std::size_t d, std::optional<std::uint64_t> multiplier) {
    if (!is_power_of_two(n) || n > (std::uint64_t{1} << 20))
        throw ConfigError("builtin Korobov vectors need n = 2^k with k <= 20, got n = " + std::to_string(n));
    if (d == 0) throw ConfigError("builtin Korobov vector needs d >= 1");
    const std::uint64_t a = multiplier ? *multiplier : korobov_multiplier(n);
    GeneratingVector gv;
    gv.declared_n = n;
    gv.source = "builtin:korobov(n=" + std::to_string(n) + ", a=" + std::to_string(a) + ")";
    std::uint64_t z = 1 % n;
    for (std::size_t j = 0; j < d; ++j) {
        gv.components.push_back(z);
        z = detail::mulmod(z, a, n);
    }
    return gv;
}

double korobov_p2(std::uint64_t n, std::uint64_t multiplier, std::size_t d) {
    if (n == 0 || d == 0) throw ConfigError("korobov_p2 needs n >= 1 and d >= 1");
    std::vector<double> factor(n);
    const double two_pi2 = 2.0 * std::numbers::pi * std::numbers::pi;
    for (std::uint64_t k = 0; k < n; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(n);
        factor[k] = 1.0 + two_pi2 * (x * x - x + 1.0 / 6.0);
    }
    std::vector<std::uint64_t> z(d), r(d, 0);
    std::uint64_t zj = 1 % n;
    for (std::size_t j = 0; j < d; ++j) {
        z[j] = zj;
        zj = detail::mulmod(zj, multiplier, n);
    }
    CompensatedSum sum;
    for (std::uint64_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            prod *= factor[r[j]];
            r[j] += z[j];
            if (r[j] >= n) r[j] -= n;
        }
        sum.add(prod);
    }
    return sum.value() / static_cast<double>(n) - 1.0;
}

std::uint64_t search_korobov_multiplier(std::uint64_t n, std::size_t d, std::uint64_t stride) {
    if (stride == 0) stride = 1;
    const std::uint64_t hi = std::max<std::uint64_t>(2, n / 2);
    std::uint64_t best = 1;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::uint64_t a = 1; a < hi; a += 2 * stride) {
        const double v = korobov_p2(n, a, d);
        if (v < best_value) {
            best_value = v;
            best = a;
        }
    }
    return best;
}

}  // namespace uqcov

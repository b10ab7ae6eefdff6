#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uqcov {

struct GeneratingVector {
    std::vector<std::uint64_t> components;
    std::optional<std::uint64_t> declared_n;  // from a "# n = ..." header line
    std::string source;                       // file path or "builtin:korobov(...)"
};

// One integer per line, or "index component" pairs with 1-based consecutive
// indices. Blank lines and '#' comments are ignored; "# n = 1024" declares n.
GeneratingVector parse_generating_vector(std::istream& in, const std::string& source);
GeneratingVector load_generating_vector(const std::filesystem::path& path);

// Indices (0-based) of components sharing a factor with n.
std::vector<std::size_t> non_coprime_components(const GeneratingVector& gv, std::uint64_t n);

bool is_power_of_two(std::uint64_t n) noexcept;

// Embedded multiplier for n = 2^k, k = 0..20 (chosen by minimizing korobov_p2 with d = 4).
std::uint64_t korobov_multiplier(std::uint64_t n);

// z_j = multiplier^{j-1} mod n, j = 1..d.
GeneratingVector builtin_korobov_vector(std::uint64_t n, std::size_t d,
                                        std::optional<std::uint64_t> multiplier = std::nullopt);

// Squared worst-case error of the Korobov lattice in the unweighted Korobov
// space of smoothness 1 (product weights gamma_j = 1).
double korobov_p2(std::uint64_t n, std::uint64_t multiplier, std::size_t d);

// Odd multiplier in [1, n/2) minimizing korobov_p2; ties go to the smallest.
// stride > 1 scans every stride-th odd candidate only.
std::uint64_t search_korobov_multiplier(std::uint64_t n, std::size_t d, std::uint64_t stride = 1);

}  // namespace uqcov

#include <array>
#include <cstdint>
#include <string>

#include "uqcov/error.hpp"
#include "uqcov/lattice.hpp"

namespace uqcov {
namespace {

// Index k holds the multiplier for n = 2^k, minimising P_2 in d = 4 over odd
// candidates; exhaustive for k <= 15, strided to at most 8192 candidates beyond.
constexpr std::array<std::uint64_t, 21> kMultipliers = {
    1,    1,    1,    3,     3,    3,     3,      21,     39,   115,   27,
    137,  791,  2019, 3779,  1475, 24489, 4921,   36129,  210657, 288705,
};

}  // namespace

std::uint64_t korobov_multiplier(std::uint64_t n) {
    if (!is_power_of_two(n) || n > (std::uint64_t{1} << 20))
        throw ConfigError("no embedded Korobov multiplier for n = " + std::to_string(n));
    int k = 0;
    while ((std::uint64_t{1} << k) < n) ++k;
    return kMultipliers[static_cast<std::size_t>(k)];
}

}  // namespace uqcov

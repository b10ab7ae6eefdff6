#pragma once

#include <cstdint>

namespace uqcov::detail {

__extension__ typedef unsigned __int128 uint128;

// (a * b) mod n without overflow.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<uint128>(a) * b) % n);
}

}  // namespace uqcov::detail

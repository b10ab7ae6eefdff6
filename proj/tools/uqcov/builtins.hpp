#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "uqcov/density.hpp"
#include "uqcov/transform.hpp"

namespace uqcov::cli {

struct BuiltinFunction {
    std::string name;
    DomainFunction f;
    // Exact rho-weighted integral over D^dim for the product density.
    std::function<double(const Density&, std::size_t dim)> exact;
};

// builtin:linear  sum_j x_j
// builtin:abs     prod_j |x_j|
// builtin:prod    prod_j x_j
BuiltinFunction builtin_function(std::string_view name);

}  // namespace uqcov::cli

#include "builtins.hpp"

#include <cmath>

#include "uqcov/error.hpp"

namespace uqcov::cli {

BuiltinFunction builtin_function(std::string_view name) {
    std::string key(name);
    if (key.rfind("builtin:", 0) == 0) key = key.substr(8);
    if (key == "linear") {
        return {"builtin:linear",
                [](std::span<const double> x) {
                    double s = 0.0;
                    for (double v : x) s += v;
                    return s;
                },
                [](const Density& d, std::size_t dim) { return static_cast<double>(dim) * d.mean(); }};
    }
    if (key == "abs") {
        return {"builtin:abs",
                [](std::span<const double> x) {
                    double p = 1.0;
                    for (double v : x) p *= std::abs(v);
                    return p;
                },
                [](const Density& d, std::size_t dim) { return std::pow(d.mean_abs(), static_cast<double>(dim)); }};
    }
    if (key == "prod") {
        return {"builtin:prod",
                [](std::span<const double> x) {
                    double p = 1.0;
                    for (double v : x) p *= v;
                    return p;
                },
                [](const Density& d, std::size_t dim) { return std::pow(d.mean(), static_cast<double>(dim)); }};
    }
    throw ConfigError("--f: unknown function '" + std::string(name) +
                      "' (expected builtin:linear, builtin:abs or builtin:prod)");
}

}  // namespace uqcov::cli

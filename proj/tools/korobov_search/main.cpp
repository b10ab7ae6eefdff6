#include <chrono>
#include <cstdint>
#include <iostream>

#include <CLI11.hpp>

#include "uqcov/lattice.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Brute-force Korobov multipliers minimizing the P2 criterion for n = 2^k"};
    int kmin = 0, kmax = 20;
    std::size_t d = 4;
    std::uint64_t max_candidates = 8192;
    app.add_option("--kmin", kmin, "smallest exponent")->check(CLI::Range(0, 20));
    app.add_option("--kmax", kmax, "largest exponent")->check(CLI::Range(0, 20));
    app.add_option("--d", d, "dimension of the criterion")->check(CLI::PositiveNumber);
    app.add_option("--max-candidates", max_candidates, "scan every stride-th odd multiplier beyond this many");
    CLI11_PARSE(app, argc, argv);

    for (int k = kmin; k <= kmax; ++k) {
        const std::uint64_t n = std::uint64_t{1} << k;
        const std::uint64_t candidates = std::max<std::uint64_t>(1, n / 4);
        const std::uint64_t stride = candidates > max_candidates ? candidates / max_candidates : 1;
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t a = uqcov::search_korobov_multiplier(n, d, stride);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "k=" << k << " n=" << n << " stride=" << stride << " multiplier=" << a
                  << " P2=" << uqcov::korobov_p2(n, a, d) << " (" << secs << " s)" << std::endl;
    }
    return 0;
}

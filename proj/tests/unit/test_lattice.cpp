#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "uqcov/error.hpp"
#include "uqcov/lattice.hpp"

using namespace uqcov;

namespace {

GeneratingVector parse(const std::string& text) {
    std::istringstream in(text);
    return parse_generating_vector(in, "fixture");
}

int error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST(GeneratingVectorFile, OneColumn) {
    EXPECT_EQ(parse("1\n182667\n").components, (std::vector<std::uint64_t>{1, 182667}));
}

TEST(GeneratingVectorFile, TwoColumns) {
    EXPECT_EQ(parse("1 1\n2 182667\n").components, (std::vector<std::uint64_t>{1, 182667}));
    EXPECT_EQ(parse("1\t1\n2   182667").components, (std::vector<std::uint64_t>{1, 182667}));
}

TEST(GeneratingVectorFile, CommentsAndDeclaredN) {
    const auto gv = parse("# lattice for n = 1024\n# n = 1024\n\n1\n  433  \n# trailing\n");
    EXPECT_EQ(gv.components, (std::vector<std::uint64_t>{1, 433}));
    ASSERT_TRUE(gv.declared_n.has_value());
    EXPECT_EQ(*gv.declared_n, 1024u);
    EXPECT_EQ(gv.source, "fixture");
}

TEST(GeneratingVectorFile, Errors) {
    EXPECT_EQ(error_line(""), 1);
    EXPECT_EQ(error_line("# only comments\n"), 1);
    EXPECT_EQ(error_line("1\nx\n"), 2);
    EXPECT_EQ(error_line("1 1\n3 5\n"), 2);
    EXPECT_EQ(error_line("1 1\n2\n"), 2);
    EXPECT_EQ(error_line("1\n2 3\n"), 2);
    EXPECT_EQ(error_line("1 2 3\n"), 1);
    EXPECT_EQ(error_line("1\n0\n"), 2);
    EXPECT_EQ(error_line("1\n-5\n"), 2);
    EXPECT_EQ(error_line("1\n2.5\n"), 2);
}

TEST(GeneratingVectorFile, LoadFromDisk) {
    const auto path = std::filesystem::temp_directory_path() / "uqcov_gv_fixture.txt";
    {
        std::ofstream out(path);
        out << "1 1\n2 182667\n3 469891\n";
    }
    const auto gv = load_generating_vector(path);
    EXPECT_EQ(gv.components.size(), 3u);
    EXPECT_EQ(gv.source, path.string());
    std::filesystem::remove(path);
    EXPECT_THROW(load_generating_vector(path), ParseError);
}

TEST(GeneratingVectorFile, CoprimeAdvisory) {
    const auto gv = parse("1\n4\n7\n");
    EXPECT_EQ(non_coprime_components(gv, 8), (std::vector<std::size_t>{1}));
}

TEST(Korobov, Powers) {
    EXPECT_EQ(builtin_korobov_vector(8, 2, 3).components, (std::vector<std::uint64_t>{1, 3}));
    EXPECT_EQ(builtin_korobov_vector(16, 4, 3).components, (std::vector<std::uint64_t>{1, 3, 9, 11}));
    EXPECT_EQ(builtin_korobov_vector(1024, 1).components, (std::vector<std::uint64_t>{1}));
    EXPECT_THROW(builtin_korobov_vector(1000, 2), ConfigError);
    EXPECT_THROW(builtin_korobov_vector(std::uint64_t{1} << 21, 2), ConfigError);
}

TEST(Korobov, TableEntryForN1024) {
    EXPECT_EQ(korobov_multiplier(1024), 27u);
    EXPECT_EQ(search_korobov_multiplier(1024, 4), 27u);
}

TEST(Korobov, TableMatchesSearchForSmallN) {
    for (int k = 1; k <= 12; ++k) {
        const std::uint64_t n = std::uint64_t{1} << k;
        EXPECT_EQ(korobov_multiplier(n), search_korobov_multiplier(n, 4)) << "n=" << n;
    }
}

TEST(Korobov, P2IsSmallerForChosenMultiplier) {
    const std::uint64_t n = 4096;
    const double best = korobov_p2(n, korobov_multiplier(n), 4);
    EXPECT_GT(best, 0.0);
    for (std::uint64_t a : {1u, 3u, 5u, 1023u, 2047u}) EXPECT_GE(korobov_p2(n, a, 4), best);
}

TEST(Korobov, P2OneDimensionalClosedForm) {
    // d = 1: rectangle rule error for 1 + 2 pi^2 B2 is 2 pi^2 / (6 n^2) = pi^2 / (3 n^2).
    const std::uint64_t n = 64;
    EXPECT_NEAR(korobov_p2(n, 1, 1), std::numbers::pi * std::numbers::pi / (3.0 * n * n), 1e-15);
}

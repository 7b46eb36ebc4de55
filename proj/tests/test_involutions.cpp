#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "vtheta/involutions.hpp"

using namespace vtheta;

TEST_CASE("telephone numbers")
{
    CHECK(enumerate_involutions(1).size() == 1);
    CHECK(enumerate_involutions(2).size() == 2);
    CHECK(enumerate_involutions(3).size() == 4);
    CHECK(enumerate_involutions(4).size() == 10);
    CHECK(enumerate_involutions(5).size() == 26);
    CHECK(enumerate_involutions(6).size() == 76);
}

TEST_CASE("involutions are involutions")
{
    for (const Involution& s : enumerate_involutions(5)) {
        for (int i = 1; i <= 5; ++i) CHECK(s.apply(s.apply(i)) == i);
        CHECK(s.moved().size() + s.fixed().size() == 5);
    }
}

TEST_CASE("enumeration bound is enforced")
{
    CHECK_THROWS_AS(enumerate_involutions(13), std::length_error);
}

TEST_CASE("lemma C with one transposition")
{
    Involution s{2, {{1, 2}}};
    TranspositionWeights w{{{1, 2}, Complex(0.3, -0.7)}};
    auto [lhs, rhs] = lemma_c_check(s, w);
    CHECK(lhs == -Complex(0.3, -0.7));
    CHECK(rhs == -Complex(0.3, -0.7));
}

TEST_CASE("lemma C with p = 2, random weights")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-1, 1);
    Involution s{4, {{1, 2}, {3, 4}}};
    TranspositionWeights w;
    for (auto pr : s.pairs) w[pr] = Complex(d(rng), d(rng));
    auto [lhs, rhs] = lemma_c_check(s, w);
    // -E + 2E = E = (-1)^2 E
    CHECK(std::abs(lhs - rhs) <= 1e-15 * std::abs(rhs) + 1e-16);
}

TEST_CASE("lemma C with p = 3, unit weights")
{
    Involution s{6, {{1, 2}, {3, 4}, {5, 6}}};
    TranspositionWeights w;
    for (auto pr : s.pairs) w[pr] = Complex(1, 0);
    auto [lhs, rhs] = lemma_c_check(s, w);
    // -1 + 2 * 3 - 6 = -1 = (-1)^3
    CHECK(lhs == Complex(-1, 0));
    CHECK(rhs == Complex(-1, 0));
}

TEST_CASE("lemma C across all involutions of n <= 6")
{
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int n = 2; n <= 6; ++n)
        for (const Involution& s : enumerate_involutions(n)) {
            if (s.pairs.empty()) continue;
            TranspositionWeights w;
            for (auto pr : s.pairs) w[pr] = Complex(d(rng), d(rng));
            auto [lhs, rhs] = lemma_c_check(s, w);
            CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
        }
}

TEST_CASE("weights are multiplicative over disjoint involutions")
{
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> d(-1, 1);
    Involution s1{6, {{1, 3}}};
    Involution s2{6, {{2, 5}, {4, 6}}};
    Involution sum{6, {{1, 3}, {2, 5}, {4, 6}}};
    TranspositionWeights w;
    for (auto pr : sum.pairs) w[pr] = Complex(d(rng), d(rng));
    const Complex split = involution_weight(s1, w) * involution_weight(s2, w);
    const Complex whole = involution_weight(sum, w);
    CHECK(std::abs(split - whole) <= 1e-15 * std::abs(whole));
}

TEST_CASE("missing weight is an input error")
{
    Involution s{2, {{1, 2}}};
    CHECK_THROWS_AS(lemma_c_check(s, {}), std::invalid_argument);
}

TEST_CASE("counting classes for s = t = 1")
{
    const auto table = count_partition_check(1, 1);
    REQUIRE(table.size() == 2);  // identity and the crossing transposition
    for (const auto& c : table) {
        CHECK(c.enumerated == 1);
        CHECK(c.formula == 1);
    }
}

TEST_CASE("counting classes for s = t = 2 sum to |I(4)|")
{
    const auto table = count_partition_check(2, 2);
    std::uint64_t total = 0;
    for (const auto& c : table) {
        CHECK(c.enumerated == c.formula);
        total += c.enumerated;
    }
    CHECK(total == 10);
}

TEST_CASE("counting classes for s = 3, t = 2")
{
    const auto table = count_partition_check(3, 2);
    std::uint64_t total = 0;
    for (const auto& c : table) {
        CHECK(c.enumerated == c.formula);
        total += c.enumerated;
    }
    CHECK(total == 26);
}

TEST_CASE("counting formula is exact for all s + t <= 8")
{
    const std::uint64_t telephone[] = {1, 1, 2, 4, 10, 26, 76, 232, 764};
    for (int s = 0; s <= 8; ++s)
        for (int t = 0; s + t <= 8; ++t) {
            if (s + t < 1) continue;
            std::uint64_t total = 0;
            for (const auto& c : count_partition_check(s, t)) {
                CHECK(c.enumerated == c.formula);
                total += c.enumerated;
            }
            CHECK(total == telephone[s + t]);
        }
}

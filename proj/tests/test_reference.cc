// Sanity checks of the test-only reference implementations themselves.
#include "doctest.h"

#include "oracles.hh"
#include "psdi/partial_op.hh"

using namespace psdi;

TEST_CASE("majority-closed enumeration")
{
    const std::vector<std::size_t> counts{2, 4, 16, 166, 4170};
    for (int n = 0; n <= 4; ++n)
        CHECK(oracle::majority_closed_masks(n).size() == counts[n]);

    // brute-force cross-check against preservation by the majority operation
    for (int n = 1; n <= 3; ++n) {
        auto masks = oracle::majority_closed_masks(n);
        std::set<std::uint64_t> listed(masks.begin(), masks.end());
        CHECK(listed.size() == masks.size());
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << (1 << n)); ++m) {
            const bool closed = oracle::near3_preserves(Relation::from_bits(2, n, {m}));
            REQUIRE(closed == bool(listed.count(m)));
        }
    }
}

TEST_CASE("sunflower detection")
{
    CHECK_FALSE(oracle::has_3_sunflower({0b01, 0b10}));
    CHECK(oracle::has_3_sunflower({0b001, 0b010, 0b100}));     // empty kernel
    CHECK(oracle::has_3_sunflower({0b011, 0b101, 0b1001}));    // kernel {0}
    CHECK_FALSE(oracle::has_3_sunflower({0b011, 0b110, 0b101})); // pairwise different cores
}

TEST_CASE("reference column semantics")
{
    using F = oracle::Family;
    CHECK(oracle::apply_column(F::near, 3, {0, 1, 0}) == 0);
    CHECK(oracle::apply_column(F::near, 4, {0, 1, 1, 0}) == std::nullopt);
    CHECK(oracle::apply_column(F::edge, 2, {1, 1, 0}) == 0);
    CHECK(oracle::apply_column(F::edge, 2, {0, 1, 0}) == 1);
    CHECK(oracle::apply_column(F::edge, 2, {0, 1, 1}) == std::nullopt);
    CHECK(oracle::apply_column(F::edge, 3, {0, 0, 0, 1}) == 0);
    CHECK(oracle::apply_column(F::universal, 2, {1, 0, 1}) == 0);
    CHECK(oracle::apply_column(F::universal, 2, {0, 1, 1}) == 0);
    CHECK(oracle::apply_column(F::universal, 2, {1, 1, 0}) == std::nullopt);
}

TEST_CASE("reference rectangularity and decomposability")
{
    std::vector<Tuple> l{{0, 0}, {0, 1}, {1, 0}};
    CHECK_FALSE(oracle::rectangular(make_relation(2, 2, l)));
    CHECK(oracle::rectangular(Relation::full(3, 2)));
    auto clause = Relation::from_predicate(2, 3, [](std::span<const Value> t) { return t[0] || t[1] || t[2]; });
    CHECK_FALSE(oracle::k_decomposable(clause, 2));
    CHECK(oracle::block_sensitivity(clause) == 3);
}

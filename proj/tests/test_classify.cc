#include "doctest.h"

#include "oracles.hh"
#include "psdi/classify.hh"
#include "psdi/rng.hh"

using namespace psdi;

namespace {

Relation clause3()
{
    return Relation::from_predicate(2, 3, [](std::span<const Value> t) { return t[0] || t[1] || t[2]; });
}

Relation parity(int n)
{
    return Relation::from_predicate(2, n, [](std::span<const Value> t) { return hamming_weight(t) % 2 == 0; });
}

} // namespace

TEST_CASE("classify examples")
{
    auto x = classify_relation(symmetric_relation(3, std::vector<int>{1}), 4);
    CHECK(x.preserved_by(OpFamily::edge, 2));
    CHECK_FALSE(x.preserved_by(OpFamily::near, 3));
    CHECK(x.preserved_by(OpFamily::universal, 3));
    CHECK(x.find(OpFamily::near, 3)->witness);

    auto c = classify_relation(clause3(), 4);
    CHECK_FALSE(c.preserved_by(OpFamily::universal, 3));
    CHECK(c.preserved_by(OpFamily::near, 4));
    CHECK_FALSE(inclusion_violation(c));

    auto f = classify_relation(Relation::full(2, 3), 4);
    for (auto & e : f.entries)
        CHECK(e.preserved);
    CHECK(f.entries.front().op_name() == "edge2");
    CHECK(f.entries.size() == 1 + 3 * 2);
}

TEST_CASE("classification respects inclusions on random relations")
{
    Rng rng(13);
    for (int it = 0; it < 200; ++it) {
        const int n = 1 + int(rng.below(5));
        auto r = Relation::from_predicate(2, n, [&](std::span<const Value>) { return rng.unit() < 0.6; });
        auto rep = classify_relation(r, 4);
        CHECK_FALSE(inclusion_violation(rep));
        for (auto & e : rep.entries)
            if (e.witness) {
                CHECK_FALSE(e.preserved);
                CHECK_FALSE(r.contains(e.witness->result));
            }
    }
}

TEST_CASE("decomposability")
{
    CHECK(is_k_decomposable(Relation::full(2, 4), 1));
    CHECK_FALSE(is_k_decomposable(clause3(), 2));
    CHECK(is_k_decomposable(clause3(), 3));
    Rng rng(2);
    for (int it = 0; it < 150; ++it) {
        const int d = 2 + int(rng.below(2)), n = 1 + int(rng.below(4));
        auto r = Relation::from_predicate(d, n, [&](std::span<const Value>) { return rng.unit() < 0.7; });
        for (int k = 1; k <= n; ++k)
            REQUIRE(is_k_decomposable(r, k) == oracle::k_decomposable(r, k));
    }
}

TEST_CASE("block sensitivity")
{
    CHECK(block_sensitivity(Relation::full(2, 3)) == 0);
    for (int n = 1; n <= 6; ++n)
        CHECK(block_sensitivity(parity(n)) == n);
    CHECK(block_sensitivity(clause3()) == 3);
    Rng rng(8);
    for (int it = 0; it < 120; ++it) {
        const int n = 1 + int(rng.below(4));
        auto r = Relation::from_predicate(2, n, [&](std::span<const Value>) { return rng.unit() < 0.5; });
        REQUIRE(block_sensitivity(r) == oracle::block_sensitivity(r));
    }
    CHECK_THROWS(block_sensitivity(Relation::full(3, 2)));
}

TEST_CASE("block sensitivity below 3 iff relation and complement are near_3-closed, arity 3")
{
    auto m = make_near(3);
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        auto r = Relation::from_bits(2, 3, {mask});
        const bool closed = !preserves(m, r) && !preserves(m, r.complement());
        REQUIRE((block_sensitivity(r) < 3) == closed);
    }
}

TEST_CASE("rectangularity")
{
    std::vector<Tuple> eq{{0, 0}, {1, 1}}, l{{0, 0}, {0, 1}, {1, 0}};
    CHECK(is_rectangular(make_relation(2, 2, eq)));
    CHECK_FALSE(is_rectangular(make_relation(2, 2, l)));
    for (int d = 2; d <= 3; ++d)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (d * d)); ++mask) {
            auto r = Relation::from_bits(d, 2, {mask});
            REQUIRE(is_rectangular(r) == oracle::rectangular(r));
            if (!preserves(make_maltsev(d), r))
                REQUIRE(is_rectangular(r));
        }
    CHECK_THROWS(is_rectangular(Relation::full(2, 3)));
}

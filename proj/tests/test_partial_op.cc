#include "doctest.h"

#include "oracles.hh"
#include "psdi/partial_op.hh"
#include "psdi/rng.hh"

#include <numeric>

using namespace psdi;

namespace {

Relation one_in_three()
{
    return symmetric_relation(3, std::vector<int>{1});
}

Relation clause(int k)
{
    return Relation::from_predicate(2, k, [](std::span<const Value> t) {
        return std::any_of(t.begin(), t.end(), [](Value v) { return v != 0; });
    });
}

PartialOp lib_op(oracle::Family f, int k)
{
    switch (f) {
    case oracle::Family::near:
        return make_near(k);
    case oracle::Family::edge:
        return make_edge(k);
    default:
        return make_universal(k);
    }
}

void check_witness(const PartialOp & p, const Relation & r, const PreservationWitness & w)
{
    REQUIRE(int(w.tuples.size()) == p.arity());
    for (auto & t : w.tuples)
        CHECK(r.contains(t));
    auto out = apply_columnwise(p, w.tuples);
    REQUIRE(out);
    CHECK(*out == w.result);
    CHECK_FALSE(r.contains(w.result));
}

} // namespace

TEST_CASE("pattern parsing")
{
    auto p = PolymorphismPattern::parse("xxy>y;xyx>y");
    CHECK(p.arity == 3);
    CHECK(p.rows.size() == 2);
    CHECK(p.to_string() == "xxy>y;xyx>y");
    CHECK_THROWS(PolymorphismPattern::parse("xxy>z"));
    CHECK_THROWS(PolymorphismPattern::parse("xxy>y;xy>x"));
}

TEST_CASE("instantiation sizes")
{
    CHECK(make_edge(2).defined_count() == 6);
    CHECK(make_near(3).defined_count() == 8);
    CHECK(make_near(3, 3).defined_count() == 21);
    CHECK(make_universal(3).arity() == 7);
    CHECK(make_universal(3).defined_count() == 8);
    CHECK(make_near(4).defined_count() == 10);
    for (int k = 3; k <= 6; ++k) {
        CHECK(make_near(k).defined_count() == std::size_t(2 * k + 2));
        CHECK(make_edge(k).defined_count() == std::size_t(2 * k + 2));
    }
    CHECK_THROWS(instantiate_pattern(PolymorphismPattern::parse("xy>x;xy>y"), 2));
    CHECK_THROWS(make_near(2));
    CHECK_THROWS(make_edge(1));
}

TEST_CASE("Boolean ops from patterns are self-dual and idempotent")
{
    std::vector<PartialOp> ops{make_edge(2), make_edge(3), make_edge(4), make_near(3), make_near(4), make_near(5),
                               make_universal(2), make_universal(3), make_universal(4)};
    for (auto & p : ops) {
        CHECK(is_self_dual(p));
        CHECK(is_idempotent(p));
        for (std::size_t i = 0; i < p.columns().size(); ++i) {
            Tuple neg = p.columns()[i];
            for (auto & v : neg)
                v = 1 - v;
            auto f = p.apply(neg);
            REQUIRE(f);
            CHECK(*f == 1 - p.values()[i]);
        }
        for (int c = 0; c < 2; ++c)
            CHECK(p.apply(Tuple(p.arity(), c)) == c);
    }
}

TEST_CASE("operations match their written-out definitions")
{
    using F = oracle::Family;
    std::vector<std::pair<F, int>> cases{{F::edge, 2}, {F::edge, 3}, {F::edge, 5}, {F::near, 3}, {F::near, 4},
                                         {F::near, 6}, {F::universal, 2}, {F::universal, 3}, {F::universal, 4}};
    for (auto [f, k] : cases) {
        auto p = lib_op(f, k);
        const int ar = oracle::op_arity(f, k);
        REQUIRE(p.arity() == ar);
        for (Code c = 0; c < (Code{1} << ar); ++c) {
            auto col = decode(c, 2, ar);
            REQUIRE(p.apply(col) == oracle::apply_column(f, k, col));
        }
    }
}

TEST_CASE("universal_2 is edge_2 up to argument order")
{
    auto u = make_universal(2), e = make_edge(2);
    std::vector<int> perm{0, 1, 2};
    bool found = false;
    do
        found = found || u.permute_arguments(perm) == e;
    while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(found);
}

TEST_CASE("preserves examples")
{
    auto w = preserves(make_near(3), one_in_three());
    REQUIRE(w);
    CHECK(w->result == Tuple{0, 0, 0});
    check_witness(make_near(3), one_in_three(), *w);
    CHECK_FALSE(preserves(make_edge(2), one_in_three()));
    auto w2 = preserves(make_universal(2), clause(2));
    REQUIRE(w2);
    check_witness(make_universal(2), clause(2), *w2);
    CHECK_THROWS(preserves(make_edge(2), Relation::full(3, 2)));
}

TEST_CASE("preserves agrees with naive search")
{
    using F = oracle::Family;
    Rng rng(21);
    std::vector<std::pair<F, int>> cases{{F::edge, 2}, {F::edge, 3}, {F::near, 3}, {F::near, 4}, {F::universal, 3}};
    for (int it = 0; it < 150; ++it) {
        const int n = 1 + int(rng.below(4));
        auto r = Relation::from_predicate(2, n, [&](std::span<const Value>) { return rng.unit() < 0.55; });
        for (auto [f, k] : cases) {
            if (f == F::universal && r.size() > 6)
                continue; // naive search is |R|^7
            auto p = lib_op(f, k);
            auto w = preserves(p, r);
            REQUIRE(!w == oracle::preserves(f, k, r));
            if (w)
                check_witness(p, r, *w);
        }
    }
}

TEST_CASE("Maltsev operation over larger domains")
{
    Rng rng(4);
    for (int it = 0; it < 200; ++it) {
        const int d = 2 + int(rng.below(2));
        auto r = Relation::from_predicate(d, 2, [&](std::span<const Value>) { return rng.unit() < 0.5; });
        CHECK(!preserves(make_maltsev(d), r) == oracle::maltsev_preserves(r));
        CHECK(!preserves(make_near(3, d), r) == oracle::near3_preserves(r));
    }
}

TEST_CASE("preservation is invariant under argument permutation")
{
    Rng rng(9);
    auto p = make_edge(3);
    for (int it = 0; it < 40; ++it) {
        auto r = Relation::from_predicate(2, 3, [&](std::span<const Value>) { return rng.unit() < 0.5; });
        std::vector<int> perm(p.arity());
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm.begin(), perm.end());
        CHECK(!preserves(p, r) == !preserves(p.permute_arguments(perm), r));
    }
}

TEST_CASE("every (k-1)-ary relation is preserved by near_k")
{
    for (int k = 3; k <= 4; ++k) {
        auto p = make_near(k);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (1 << (k - 1))); ++mask)
            REQUIRE_FALSE(preserves(p, Relation::from_bits(2, k - 1, {mask})));
    }
}

TEST_CASE("count_defined_sequences and level")
{
    CHECK(count_defined_sequences(make_edge(2), 1) == 6);
    CHECK(count_defined_sequences(make_near(5), 0) == 1);
    CHECK(count_defined_sequences(make_universal(3), 2) == 64);
    CHECK(count_defined_sequences(make_edge(2), 30) == boost::multiprecision::pow(BigInt(6), 30));
    CHECK(level_of(make_edge(2)) == 2);
    CHECK(level_of(make_near(4)) == 4);
    CHECK(level_of(make_universal(3)) == 3);
    CHECK_THROWS(level_of(make_maltsev(3)));
}

TEST_CASE("parse_op")
{
    CHECK(parse_op("edge2") == make_edge(2));
    CHECK(parse_op("nu:4") == make_near(4));
    CHECK(parse_op("near:4") == make_near(4));
    CHECK(parse_op("universal:3") == make_universal(3));
    CHECK(parse_op("malt", 3) == make_maltsev(3));
    CHECK_THROWS(parse_op("bogus"));
}

TEST_CASE("sampled preservation never claims preservation")
{
    auto s = preserves_sampled(make_near(3), one_in_three(), 200, 1);
    CHECK(s.verdict == SampledVerdict::violated);
    REQUIRE(s.witness);
    check_witness(make_near(3), one_in_three(), *s.witness);
    auto t = preserves_sampled(make_edge(2), one_in_three(), 200, 1);
    CHECK(t.verdict == SampledVerdict::inconclusive);
}

TEST_CASE("witness text")
{
    auto w = preserves(make_near(3), one_in_three());
    REQUIRE(w);
    CHECK(to_string(*w).find("000") != std::string::npos);
}

#include "doctest.h"

#include "oracles.hh"
#include "psdi/generators.hh"
#include "psdi/padding.hh"
#include "psdi/reductions.hh"
#include "psdi/rng.hh"

#include <cmath>

using namespace psdi;

namespace {

bool any_instance_sat(SubsetSumReduction & red, std::uint64_t & count)
{
    bool sat = false;
    count = 0;
    while (auto g = red.next()) {
        ++count;
        sat = sat || oracle::solve(g->instance).has_value();
    }
    return sat;
}

std::uint64_t sum_of(const std::vector<std::uint64_t> & w, const std::vector<int> & sel)
{
    std::uint64_t s = 0;
    for (int i : sel)
        s += w[i];
    return s;
}

} // namespace

TEST_CASE("subset-sum reduction examples")
{
    SubsetSumReduction red({3, 5, 7}, 8, 2);
    CHECK(red.blocks() == 2);
    std::uint64_t count = 0;
    CHECK(any_instance_sat(red, count));
    CHECK(oracle::subset_sum({3, 5, 7}, 8));

    SubsetSumReduction over({3, 5, 7}, 16, 2);
    CHECK_FALSE(any_instance_sat(over, count));

    SubsetSumReduction one({3, 5, 7}, 10, 1);
    auto g = one.next();
    REQUIRE(g);
    CHECK(g->instance.constraints.size() == 1);
    CHECK(g->carries == std::vector<std::uint64_t>{0, 0});
    CHECK_FALSE(one.next());

    CHECK_THROWS(SubsetSumReduction({3, 5}, 8, -1));
    CHECK_THROWS(SubsetSumReduction({1, std::uint64_t{1} << 40}, 8));
}

TEST_CASE("subset-sum reduction is exact and small")
{
    Rng rng(9);
    for (int it = 0; it < 60; ++it) {
        const int n = 4 + int(rng.below(7));
        auto p = gen_subset_sum(n, 12, rng.bits());
        SubsetSumReduction red(p.weights, p.target);
        std::uint64_t count = 0;
        REQUIRE(any_instance_sat(red, count) == oracle::subset_sum(p.weights, p.target));
        const double cap = std::pow(double(n + 1), 2.0 * red.blocks());
        CHECK(double(count) <= cap);
        CHECK(red.max_carries().front() == 0);
        CHECK(red.max_carries().back() == 0);
        for (auto c : red.max_carries())
            CHECK(c <= std::uint64_t(n));

        auto out = solve_subset_sum_2edge(p.weights, p.target);
        REQUIRE(out.selection.has_value() == oracle::subset_sum(p.weights, p.target));
        if (out.selection)
            CHECK(sum_of(p.weights, *out.selection) == p.target);
    }
}

TEST_CASE("k-clause definitions from universal_k violations")
{
    auto c2 = Relation::from_predicate(2, 2, [](std::span<const Value> t) { return t[0] || t[1]; });
    auto w = preserves(make_universal(2), c2);
    REQUIRE(w);
    auto def = extract_kclause_definition(c2, *w);
    CHECK(def.new_arity == 2);
    CHECK(materialize_definition(c2, def).size() == 3);

    // clause on the first two positions with two dummy columns
    auto padded = Relation::from_predicate(2, 4, [](std::span<const Value> t) { return (t[0] || t[1]) && t[2] == t[0]; });
    auto w4 = preserves(make_universal(2), padded);
    REQUIRE(w4);
    CHECK(materialize_definition(padded, extract_kclause_definition(padded, *w4)).size() == 3);

    CHECK_FALSE(preserves(make_universal(2), gen_poly_relation(4, 1, 3)));

    for (int n = 1; n <= 4; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (1 << n)); ++mask) {
            auto r = Relation::from_bits(2, n, {mask});
            auto v = preserves(make_universal(2), r);
            if (!v)
                continue;
            auto d = extract_kclause_definition(r, *v);
            auto m = materialize_definition(r, d);
            REQUIRE(m.arity() == 2);
            REQUIRE(m.size() == 3);
        }

    Rng rng(4);
    int tried = 0;
    while (tried < 40) {
        auto r = Relation::from_predicate(2, 4, [&](std::span<const Value>) { return rng.unit() < 0.6; });
        auto v = preserves(make_universal(3), r);
        if (!v)
            continue;
        ++tried;
        auto m = materialize_definition(r, extract_kclause_definition(r, *v));
        REQUIRE(m.arity() == 3);
        REQUIRE(m.size() == 7);
    }

    PreservationWitness bogus{{{0, 1}, {1, 0}, {1, 1}}, {0, 0}};
    CHECK_THROWS(extract_kclause_definition(Relation::full(2, 2), bogus));
}

TEST_CASE("symmetric relations from near_k violations")
{
    auto x = symmetric_relation(3, std::vector<int>{1});
    auto w = preserves(make_near(3), x);
    REQUIRE(w);
    auto s = symmetric_weights(extract_symmetric_relation(x, *w));
    REQUIRE(s);
    CHECK(s->contains(1));
    CHECK_FALSE(s->contains(0));

    Rng rng(6);
    int tried = 0;
    while (tried < 60) {
        const int k = 3 + int(rng.below(3));
        const int n = 1 + int(rng.below(4));
        auto r = Relation::from_predicate(2, n, [&](std::span<const Value>) { return rng.unit() < 0.5; });
        auto v = preserves(make_near(k), r);
        if (!v)
            continue;
        ++tried;
        auto out = extract_symmetric_relation(r, *v);
        REQUIRE(out.arity() == k);
        auto ws = symmetric_weights(out);
        REQUIRE(ws);
        CHECK(ws->contains(1));
        CHECK_FALSE(ws->contains(0));
    }
}

TEST_CASE("progression analysis examples")
{
    auto one = analyze_symmetric_progressions({3, {1}});
    CHECK_FALSE(one.trivial);
    REQUIRE_FALSE(one.derivations.empty());
    bool found = false;
    for (auto & d : one.derivations) {
        auto got = symmetric_weights(run_symmetric_script(symmetric_relation(one.input), d.script));
        REQUIRE(got);
        CHECK(*got == d.expected);
        found = found || d.expected.weights == std::vector<int>{1};
    }
    CHECK(found);

    auto even = analyze_symmetric_progressions({4, {0, 2, 4}});
    bool complete = false;
    for (auto & p : even.progressions)
        complete = complete || (p.step == 2 && p.complete && p.start == 0 && p.length == 3);
    CHECK(complete);
    bool modular = false;
    for (auto & d : even.derivations)
        modular = modular || (d.script.empty() && d.expected == SymmetricWeightSet{4, {0, 2, 4}});
    CHECK(modular);

    CHECK(analyze_symmetric_progressions({5, {0, 1, 2, 3, 4, 5}}).trivial);
    CHECK(analyze_symmetric_progressions({5, {}}).trivial);
    CHECK_THROWS(analyze_symmetric_progressions({3, {4}}));
}

TEST_CASE("every derivation script produces its claimed relation")
{
    for (int n = 1; n <= 8; ++n)
        for (std::uint32_t mask = 0; mask < (1u << (n + 1)); ++mask) {
            SymmetricWeightSet s{n, {}};
            for (int w = 0; w <= n; ++w)
                if (mask >> w & 1)
                    s.weights.push_back(w);
            auto a = analyze_symmetric_progressions(s);
            for (auto & d : a.derivations) {
                auto got = symmetric_weights(run_symmetric_script(symmetric_relation(s), d.script));
                REQUIRE(got);
                REQUIRE(*got == d.expected);
            }
            for (auto & p : a.progressions)
                for (int i = 0; i < p.length; ++i)
                    REQUIRE(s.contains(p.start + i * p.step));
        }
}

TEST_CASE("padded CNF reduction")
{
    Cnf empty{3, {}};
    auto e = seth_forward_reduction(empty, "edge2", 0.25, 1);
    CHECK(e.instance.constraints.empty());
    CHECK(e.instance.n_vars == 3 + recommended_padding_size("edge2", 3, 0.25));

    Cnf units{2, {{1}, {-1}}};
    auto u = seth_forward_reduction(units, "edge3", 0.5, 1);
    CHECK(u.instance.constraints.size() == 2);
    // the two clauses exclude both values of x1
    for (Code x = 0; x < 4; ++x)
        CHECK_FALSE(check_assignment(u.instance, u.pad.extend(decode(x, 2, 2))));

    CHECK_THROWS(seth_forward_reduction(Cnf{2, {{}}}, "edge2", 0.25, 1));
    auto taut = seth_forward_reduction(Cnf{2, {{1, -1}, {2}}}, "edge2", 0.25, 1);
    CHECK(taut.instance.constraints.size() == 1);
    CHECK(taut.instance.relations[0].name == "P1");
}

TEST_CASE("padded CNF instances are equisatisfiable")
{
    Rng rng(12);
    for (int it = 0; it < 10; ++it) {
        const int n = 3 + int(rng.below(3));
        auto cnf = gen_ksat_cnf(n, 2 + int(rng.below(10)), 3, rng.bits());
        auto red = seth_forward_reduction(cnf, "edge2", 0.25, rng.bits());
        bool any = false;
        for (Code x = 0; x < (Code{1} << n); ++x) {
            auto a = decode(x, 2, n);
            auto full = red.pad.extend(a);
            REQUIRE(check_assignment(red.instance, full) == cnf_satisfied(cnf, a));
            any = any || cnf_satisfied(cnf, a);
            if (red.pad.m() > 0 && !red.instance.constraints.empty()) {
                auto wrong = full;
                wrong[n + rng.below(red.pad.m())] ^= 1;
                CHECK_FALSE(check_assignment(red.instance, wrong));
            }
        }
        // with a pad verified universal, the padded relations are 2-edge and MITM applies
        if (n == 3 && verify_universal_padding(make_edge(2), red.pad).verdict == PaddingVerdict::yes)
            CHECK(solve_2edge_mitm(red.instance).sat() == any);
    }
}

#pragma once

#include "psdi/instance.hh"
#include "psdi/relation.hh"

#include <cstdint>
#include <vector>

namespace psdi {

Cnf gen_ksat_cnf(int n, int m, int k, std::uint64_t seed);

/// Random k-CNF on distinct variables per clause, as explicit clause relations.
Instance gen_ksat(int n, int m, int k, std::uint64_t seed);

/// Random 1-in-k constraints (exact satisfiability), tagged edge2.
Instance gen_exact_sat(int n, int m, int k, std::uint64_t seed);

/// Random equations a_1 x_1 + ... + a_r x_r = b over Z_p with domain p,
/// tagged edge2. r = `arity` distinct variables per equation.
Instance gen_linear_mod(int n, int m, int p, std::uint64_t seed, int arity = 3);

/// Roots over GF(2) of a random polynomial of degree at most `degree` on
/// `vars` variables (a random subset of the monomials, plus a random constant).
Relation gen_poly_relation(int vars, int degree, std::uint64_t seed);

/// Greedy Sidon set inside {0..n}, starting from 0.
std::vector<int> greedy_sidon_set(int n);
bool is_sidon_set(const std::vector<int> & s);

/// Symmetric relation of arity n whose weights form the greedy Sidon set.
Relation gen_sidon_relation(int n);

struct SubsetSumProblem {
    std::vector<std::uint64_t> weights;
    std::uint64_t target = 0;
};

/// Weights uniform in [1, 2^bits); the target is a random subset sum with
/// probability 1/2 and a uniform value in [0, sum] otherwise.
SubsetSumProblem gen_subset_sum(int n, int bits, std::uint64_t seed);

bool subset_sum_dp(const SubsetSumProblem & p);

/// Random binary constraints over domain d, each relation containing each
/// pair with probability `density`. Every binary relation is preserved by
/// near_3, so these are tagged nu3.
Instance gen_binary_csp(int n, int m, int d, double density, std::uint64_t seed);

/// Graph colouring with `colors` colours on a random graph with `edges` edges.
Instance gen_coloring(int vertices, int edges, int colors, std::uint64_t seed);

/// Random Boolean relations of arity k-1 on random scopes (preserved by near_k).
Instance gen_near_instance(int n, int m, int k, double density, std::uint64_t seed);

/// All weight sets S of arity r whose symmetric relation is preserved by
/// edge_3 but not by edge_2.
std::vector<SymmetricWeightSet> symmetric_edge3_weight_sets(int r);

/// Mixed instance for the symmetric 3-edge solver: tagged edge2, nu3 and
/// sym-edge3 constraints.
Instance gen_sym3e_instance(int n, int m, std::uint64_t seed);

} // namespace psdi

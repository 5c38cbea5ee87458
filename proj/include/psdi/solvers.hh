#pragma once

#include "psdi/instance.hh"
#include "psdi/oracle.hh"
#include "psdi/relation.hh"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psdi {

struct SolveReport {
    std::string algorithm;
    std::optional<Assignment> assignment;
    std::uint64_t oracle_queries = 0;
    std::uint64_t enumerated_nodes = 0;
    double wall_ms = 0;
    /// Variable order used to split the instance (empty if not applicable).
    std::vector<int> variable_order;
    /// False when UNSAT is only probable (local search without full radius).
    bool complete = true;

    bool sat() const noexcept { return assignment.has_value(); }
};

struct SolveOptions {
    /// Skip the polymorphism precondition checks on explicit relations.
    bool skip_precheck = false;
    /// Variable order override; empty means the degree heuristic.
    std::vector<int> variable_order;
};

inline constexpr std::uint64_t kMaxBruteForceAssignments = std::uint64_t{1} << 26;

/// Lexicographically smallest satisfying assignment by exhaustive search.
SolveReport solve_bruteforce(const Instance & inst);

struct BicliqueLabel {
    Tuple s0; // values on the first index set
    Tuple t0; // values on the second index set

    friend bool operator==(const BicliqueLabel &, const BicliqueLabel &) = default;
};

/// Lex-min representative pair of the biclique containing `side` (an
/// assignment to positions `first`) in the bipartite graph of the relation
/// between positions `first` and `second`. The other side is completed greedily
/// coordinate by coordinate, then the first side is re-completed the same way.
/// `queries`, if given, is incremented per oracle call.
BicliqueLabel biclique_label(const ExtensionOracle & oracle, std::span<const int> first, std::span<const int> second,
                             std::span<const Value> side, std::uint64_t * queries = nullptr);

/// Variables sorted by decreasing number of constraint occurrences (stable).
std::vector<int> degree_order(const Instance & inst);

SolveReport solve_2edge_mitm(const Instance & inst, const SolveOptions & options = {});
SolveReport solve_3nu_triangle(const Instance & inst, const SolveOptions & options = {});
SolveReport solve_sym3edge(const Instance & inst, const SolveOptions & options = {});

/// Minimal tuples of R (no proper subset of the support is in R) of weight
/// at most max_weight, by increasing weight and then lexicographically.
std::vector<Tuple> enumerate_minimal_tuples(const Relation & r, int max_weight);

struct LocalSearchOptions {
    int k = 3;
    int radius = -1;  // negative: n
    int restarts = 1; // random start tuples
    std::uint64_t seed = 1;
    bool skip_precheck = false;
    /// Start from this tuple on the first restart, if set.
    std::optional<Assignment> first_start;
};

SolveReport solve_knu_localsearch(const Instance & inst, const LocalSearchOptions & options);

/// (2c)^radius restarts, the shape of the branching recurrence.
double schoening_restart_budget(double c, int radius);

/// 2-edge embedding of a symmetric 3-edge weight set: the smallest complete
/// progression containing S when S = {a, a+b} or its dual, S itself otherwise.
/// Throws PreconditionError when S is of neither form.
SymmetricWeightSet two_edge_embedding(const SymmetricWeightSet & s);

} // namespace psdi

#pragma once

// Independent reference implementations used only by the tests. They are
// written from the definitions, trade speed for obviousness, and share no
// code with the library beyond the Relation/Instance containers.

#include "psdi/instance.hh"
#include "psdi/relation.hh"
#include "psdi/triangle.hh"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using psdi::Relation;
using psdi::Tuple;

enum class Family { near, edge, universal };

/// Value of the Boolean k-ary family member on one column, or nothing.
std::optional<int> apply_column(Family f, int k, const Tuple & column);
int op_arity(Family f, int k);

/// Tries every sequence of member tuples; exponential in the op arity.
bool preserves(Family f, int k, const Relation & r);

/// Same for the Maltsev-style 3-ary operation over any domain:
/// (x,x,y) -> y and (y,x,x) -> y.
bool maltsev_preserves(const Relation & r);

/// Majority-style partial op over any domain: columns with at most one
/// deviating entry map to the repeated value.
bool near3_preserves(const Relation & r);

/// Lex-min satisfying assignment by plain enumeration.
std::optional<Tuple> solve(const psdi::Instance & inst);

/// Connected components of the bipartite graph of R between position sets
/// `first` and `second`; returns, for a vertex on the first side, the
/// lex-min first-side and second-side members of its component.
std::pair<Tuple, Tuple> biclique_representatives(const Relation & r, const std::vector<int> & first,
                                                 const std::vector<int> & second, const Tuple & side);

/// Bipartite graph of a binary relation is a disjoint union of bicliques.
bool rectangular(const Relation & r);

/// Members with no other member below them, by weight then lex.
std::vector<Tuple> minimal_tuples(const Relation & r);

/// Maximum number of disjoint sensitive blocks over all inputs.
int block_sensitivity(const Relation & r);

/// R equals the conjunction of its projections onto all k-subsets.
bool k_decomposable(const Relation & r, int k);

/// Three distinct sets whose pairwise intersections coincide.
bool has_3_sunflower(const std::vector<std::uint64_t> & sets);

/// All triangles of a 3-partite graph, lex order.
std::vector<psdi::Triangle> triangles(const psdi::LabeledTriGraph & g, bool single_label);

/// Subset-sum by enumerating all 2^n selections.
bool subset_sum(const std::vector<std::uint64_t> & weights, std::uint64_t target);

/// Every Boolean relation of arity n closed under majority, as membership
/// masks over the 2^n codes (n <= 6). Built arity by arity: such a relation
/// is the solution set of a 2-CNF, so fixing the last variable to x leaves
/// its projection intersected with a cube, and every such pair of cubes
/// gives a 2-CNF again.
std::vector<std::uint64_t> majority_closed_masks(int n);

} // namespace oracle

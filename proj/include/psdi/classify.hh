#pragma once

#include "psdi/partial_op.hh"
#include "psdi/relation.hh"

#include <optional>
#include <string>
#include <vector>

namespace psdi {

enum class OpFamily { edge, near, universal };

std::string to_string(OpFamily f);

struct ClassificationEntry {
    OpFamily family;
    int k = 0;
    bool preserved = false;
    std::optional<PreservationWitness> witness;

    std::string op_name() const { return to_string(family) + std::to_string(k); }
};

struct ClassificationReport {
    int max_level = 0;
    std::vector<ClassificationEntry> entries; // edge2, then near_k, edge_k, universal_k for k = 3..max_level

    const ClassificationEntry * find(OpFamily family, int k) const;
    bool preserved_by(OpFamily family, int k) const;
};

/// Runs preserves() for edge_2 and every near_k, edge_k, universal_k with
/// 3 <= k <= max_level. The result is checked against the known inclusions;
/// an inconsistent report is a bug and raises std::logic_error.
ClassificationReport classify_relation(const Relation & r, int max_level);

/// Returns a description of the first inclusion the report violates.
std::optional<std::string> inclusion_violation(const ClassificationReport & report);

/// Every excluded tuple is excluded by a projection onto at most k positions.
bool is_k_decomposable(const Relation & r, int k);

/// Block sensitivity of the indicator function of a Boolean relation.
int block_sensitivity(const Relation & r);

/// Binary relation whose bipartite graph is a disjoint union of bicliques.
bool is_rectangular(const Relation & r);

} // namespace psdi

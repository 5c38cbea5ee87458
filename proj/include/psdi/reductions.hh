#pragma once

#include "psdi/instance.hh"
#include "psdi/oracle.hh"
#include "psdi/partial_op.hh"
#include "psdi/solvers.hh"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psdi {

// --- Subset-Sum ----------------------------------------------------------------

struct CarryGuess {
    /// c_0 .. c_K with c_0 = c_K = 0; block j reads carry c_j and emits c_{j+1}.
    std::vector<std::uint64_t> carries;
    Instance instance;
};

/// Splits the binary expansion into blocks and yields one 2-edge instance per
/// carry vector, lexicographically. Carry vectors for which some block is
/// unsatisfiable on its own are skipped.
class SubsetSumReduction {
public:
    /// blocks == 0 selects ceil(sqrt(n)).
    SubsetSumReduction(std::vector<std::uint64_t> weights, std::uint64_t target, int blocks = 0);

    std::optional<CarryGuess> next();

    int blocks() const noexcept { return int(bounds_.size()) - 1; }
    /// Bit boundaries lo_0 = 0 < lo_1 < ... < lo_K.
    const std::vector<int> & bounds() const noexcept { return bounds_; }
    /// Largest carry that can enter block j (index 0 .. K).
    const std::vector<std::uint64_t> & max_carries() const noexcept { return max_carry_; }
    std::uint64_t generated() const noexcept { return generated_; }

private:
    std::vector<std::uint64_t> weights_;
    std::uint64_t target_;
    std::vector<int> bounds_;
    std::vector<std::uint64_t> max_carry_;
    std::vector<std::uint64_t> carries_;
    bool started_ = false, done_ = false;
    std::uint64_t generated_ = 0;

    std::shared_ptr<SubsetSumBlockOracle> block(int j, std::uint64_t cin, std::uint64_t cout) const;
    bool block_feasible(int j) const;
    bool advance(int & i);
};

struct SubsetSumOutcome {
    std::optional<std::vector<int>> selection; // indices of chosen weights
    std::vector<std::uint64_t> carries;        // carry vector of the SAT instance
    std::uint64_t instances = 0;
    std::uint64_t enumerated_nodes = 0;
    std::uint64_t oracle_queries = 0;
};

/// Runs the reduction and solves each instance with the 2-edge solver until
/// one is satisfiable.
SubsetSumOutcome solve_subset_sum_2edge(const std::vector<std::uint64_t> & weights, std::uint64_t target,
                                        int blocks = 0);

// --- definitions extracted from witnesses -------------------------------------

/// Derived relation R'(z) = R(x) with x_i = constant_of_position[i] when
/// var_of_position[i] < 0 and x_i = z[var_of_position[i]] xor signs[i] otherwise.
struct QfppDefinition {
    int new_arity = 0;
    std::vector<int> var_of_position;
    std::vector<Value> constant_of_position;
    SignPattern signs;
};

Relation materialize_definition(const Relation & r, const QfppDefinition & def);

/// From a universal_k violation, a definition of the k-clause
/// {0,1}^k minus 0^k. k is read off the witness size (2^k - 1 tuples).
QfppDefinition extract_kclause_definition(const Relation & r, const PreservationWitness & w);

/// From a near_k violation, a symmetric k-ary relation that contains every
/// weight-1 tuple and not 0^k (conjunction over all argument orders, k <= 6).
Relation extract_symmetric_relation(const Relation & r, const PreservationWitness & w);

// --- symmetric weight sets ----------------------------------------------------

struct Progression {
    int start = 0, step = 1, length = 0;
    bool complete = false;
};

struct Derivation {
    std::string description;
    std::vector<SymmetricStep> script;
    SymmetricWeightSet expected;
};

struct ProgressionAnalysis {
    SymmetricWeightSet input;
    bool trivial = false; // empty or full weight set
    std::vector<Progression> progressions;
    std::vector<Derivation> derivations;
};

ProgressionAnalysis analyze_symmetric_progressions(const SymmetricWeightSet & s);

// --- CNF to padded instance ---------------------------------------------------

struct SethReduction {
    ParityPadSpec pad;
    Instance instance;
};

/// One padded-clause oracle per clause over all n + m variables, all sharing
/// one pad with m = recommended_padding_size(op_kind, n, eps).
SethReduction seth_forward_reduction(const Cnf & cnf, std::string_view op_kind, double eps, std::uint64_t seed);

} // namespace psdi

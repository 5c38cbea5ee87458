#pragma once

#include "psdi/oracle.hh"
#include "psdi/partial_op.hh"

#include <cstdint>
#include <string>
#include <string_view>

namespace psdi {

/// m parity sets over [n], each element included with probability 1/2.
ParityPadSpec random_parity_padding(int n, int m, std::uint64_t seed);

/// {(t, y(t)) : t in R} for a Boolean R of arity spec.n.
Relation pad_relation(const Relation & r, const ParityPadSpec & spec);

inline constexpr std::uint64_t kMaxPaddingEnumeration = std::uint64_t{1} << 26;

/// Applications of a Boolean op to n-ary base tuples (one defined column per
/// base coordinate) whose padded extension is still defined everywhere and
/// whose full result is none of the padded arguments.
BigInt count_nonprojective_remaining(const PartialOp & op, const ParityPadSpec & spec);

enum class PaddingVerdict { yes, no, probably_yes };

std::string to_string(PaddingVerdict v);

struct PaddingReport {
    ParityPadSpec spec;
    std::string op;
    /// Exact count in exact mode; number of hits among the samples otherwise.
    BigInt nonprojective_remaining;
    PaddingVerdict verdict = PaddingVerdict::no;
    bool exact = true;
    std::uint64_t trials = 0;
};

/// trials == 0 selects exact enumeration.
PaddingReport verify_universal_padding(const PartialOp & op, const ParityPadSpec & spec, std::uint64_t trials = 0,
                                       std::uint64_t seed = 1);

/// Probability that the XOR of a uniformly random subset of the op's defined
/// columns is again defined: |dom(op) ∩ span| / |span|.
double survival_probability(const PartialOp & op);

struct SurvivalEstimate {
    std::uint64_t trials = 0;
    std::uint64_t survived = 0;
    double rate() const { return trials ? double(survived) / double(trials) : 0.0; }
};

/// Monte Carlo: draw non-projective applications on n base coordinates, add one
/// random parity column and record whether the op is still defined on it.
SurvivalEstimate estimate_survival(const PartialOp & op, int n, std::uint64_t trials, std::uint64_t seed);

/// log2 |dom(op)| / -log2 q with q the survival probability.
double padding_constant(const PartialOp & op);

/// ceil(c * n + log2(1 / eps)).
int recommended_padding_size(const PartialOp & op, int n, double eps);
int recommended_padding_size(std::string_view op_kind, int n, double eps);

} // namespace psdi

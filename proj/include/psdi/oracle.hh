#pragma once

#include "psdi/relation.hh"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace psdi {

/// Membership test for projections of an implicitly given relation:
/// query(I, t) answers whether t is in pr_I(R). Indices must be distinct.
class ExtensionOracle {
public:
    virtual ~ExtensionOracle() = default;

    virtual int arity() const = 0;
    virtual int domain_size() const = 0;
    virtual bool query(std::span<const int> indices, std::span<const Value> values) const = 0;

    /// Text after "ORACLE " in an instance file; empty if not serialisable.
    virtual std::string spec() const { return {}; }

    bool contains(std::span<const Value> t) const;

protected:
    void check_query(std::span<const int> indices, std::span<const Value> values) const;
};

using OraclePtr = std::shared_ptr<const ExtensionOracle>;

/// Oracle over a materialised relation. Projections are built on first use
/// per index set and cached.
class ExplicitOracle final : public ExtensionOracle {
public:
    explicit ExplicitOracle(Relation r);

    int arity() const override { return relation_.arity(); }
    int domain_size() const override { return relation_.domain_size(); }
    bool query(std::span<const int> indices, std::span<const Value> values) const override;

    const Relation & relation() const noexcept { return relation_; }

private:
    Relation relation_;
    mutable std::mutex mutex_;
    mutable std::map<std::uint64_t, std::shared_ptr<const Relation>> cache_;
};

/// sum coeffs[i] * x_i == target (mod modulus) over Boolean x.
class LinearEquationOracle final : public ExtensionOracle {
public:
    LinearEquationOracle(std::vector<long long> coeffs, long long target, long long modulus);

    int arity() const override { return int(coeffs_.size()); }
    int domain_size() const override { return 2; }
    bool query(std::span<const int> indices, std::span<const Value> values) const override;
    std::string spec() const override;

    const std::vector<long long> & coeffs() const noexcept { return coeffs_; }
    long long target() const noexcept { return target_; }
    long long modulus() const noexcept { return modulus_; }

private:
    std::vector<long long> coeffs_;
    long long target_;
    long long modulus_;
};

/// Pads y_i = XOR of x_s over s in parity_sets[i], for n base variables.
struct ParityPadSpec {
    int n = 0;
    std::vector<std::vector<int>> parity_sets;
    std::uint64_t seed = 0;

    int m() const noexcept { return int(parity_sets.size()); }
    /// Base tuple followed by its m parity bits.
    Tuple extend(std::span<const Value> base) const;

    friend bool operator==(const ParityPadSpec &, const ParityPadSpec &) = default;
};

/// "0|1,2;1|0,2": pad index, '|', comma separated parity set.
std::string format_pads(const ParityPadSpec & spec);
ParityPadSpec parse_pads(std::string_view text, int n);

/// Oracle for the clause {0,1}^k \ {excluded} on base variables `vars`,
/// conjoined with the parity padding. The relation has arity n + m: base
/// variables first, then the pads. Queries reduce to GF(2) rank checks.
class ParityPaddedClauseOracle final : public ExtensionOracle {
public:
    ParityPaddedClauseOracle(Tuple excluded, std::vector<int> vars, ParityPadSpec pad);

    /// `clause` must be {0,1}^k minus exactly one tuple.
    static std::shared_ptr<ParityPaddedClauseOracle> from_relation(const Relation & clause, std::vector<int> vars,
                                                                  ParityPadSpec pad);

    int arity() const override { return pad_.n + pad_.m(); }
    int domain_size() const override { return 2; }
    bool query(std::span<const int> indices, std::span<const Value> values) const override;
    std::string spec() const override;

    const Tuple & excluded() const noexcept { return excluded_; }
    const std::vector<int> & vars() const noexcept { return vars_; }
    const ParityPadSpec & pad() const noexcept { return pad_; }

private:
    Tuple excluded_;
    std::vector<int> vars_;
    ParityPadSpec pad_;
};

/// One block of a Subset-Sum equation: the selected weights' bits in
/// [bit_lo, bit_hi), plus carry_in, must equal block_target plus
/// carry_out * 2^(bit_hi - bit_lo). Selector variables are Boolean.
class SubsetSumBlockOracle final : public ExtensionOracle {
public:
    SubsetSumBlockOracle(std::vector<std::uint64_t> weights, std::uint64_t block_target, int bit_lo, int bit_hi,
                         std::uint64_t carry_in, std::uint64_t carry_out);

    int arity() const override { return int(block_values_.size()); }
    int domain_size() const override { return 2; }
    bool query(std::span<const int> indices, std::span<const Value> values) const override;
    std::string spec() const override;

    const std::vector<std::uint64_t> & weights() const noexcept { return weights_; }

private:
    std::vector<std::uint64_t> weights_;
    std::vector<std::uint64_t> block_values_;
    std::uint64_t block_target_;
    int bit_lo_, bit_hi_;
    std::uint64_t carry_in_, carry_out_;
    std::uint64_t needed_; // block_target + carry_out * 2^width - carry_in, if non-negative
    bool feasible_ = true;

    // reachable subset sums of the unassigned selectors, keyed by the mask of
    // unassigned variables; the sums are tabulated once per mask
    mutable std::mutex mutex_;
    mutable std::map<std::vector<std::uint64_t>, std::shared_ptr<const std::vector<std::uint64_t>>> sums_;

    std::shared_ptr<const std::vector<std::uint64_t>> reachable(const std::vector<std::uint64_t> & free_mask) const;
};

/// Symmetric Boolean relation given by its accepted weights.
class SymmetricWeightOracle final : public ExtensionOracle {
public:
    explicit SymmetricWeightOracle(SymmetricWeightSet s);

    int arity() const override { return s_.arity; }
    int domain_size() const override { return 2; }
    bool query(std::span<const int> indices, std::span<const Value> values) const override;
    std::string spec() const override;

    const SymmetricWeightSet & weights() const noexcept { return s_; }

private:
    SymmetricWeightSet s_;
};

/// Materialises an oracle by full-arity queries (d^arity of them).
Relation materialize(const ExtensionOracle & oracle);

/// Builds an oracle from the text after "ORACLE " in an instance file.
OraclePtr parse_oracle_spec(std::string_view text, int domain_size);

} // namespace psdi

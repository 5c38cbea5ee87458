#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psdi {

using Value = int;
using Tuple = std::vector<Value>;

/// Base-d encoding of a tuple, position 0 most significant. Ascending codes
/// are exactly the lexicographic order on tuples.
using Code = std::uint64_t;

/// Dense membership tables are capped at this many entries.
inline constexpr Code kMaxTableEntries = Code{1} << 28;

/// d^r, throwing InfeasibleError beyond kMaxTableEntries.
Code table_size(int domain_size, int arity);

/// d^r without the dense-table cap; throws if it overflows 64 bits.
Code checked_power(int base, int exponent);

Code encode(std::span<const Value> t, int domain_size);
Tuple decode(Code code, int domain_size, int arity);

/// Digit-string form used in instance files: "001" for (0,0,1), "()" for the
/// empty tuple.
std::string format_tuple(std::span<const Value> t);
Tuple parse_tuple(std::string_view text, int domain_size, int arity);

int hamming_weight(std::span<const Value> t);

/// A finite relation over {0..d-1}, stored as a dense membership bitmap over
/// all d^r tuples. Immutable once built.
class Relation {
public:
    Relation(int domain_size, int arity);

    static Relation full(int domain_size, int arity);
    static Relation from_codes(int domain_size, int arity, std::span<const Code> codes);
    static Relation from_predicate(int domain_size, int arity, const std::function<bool(std::span<const Value>)> & pred);
    static Relation from_bits(int domain_size, int arity, std::vector<std::uint64_t> bits);

    int domain_size() const noexcept { return domain_size_; }
    int arity() const noexcept { return arity_; }
    Code table_size() const noexcept { return entries_; }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains(Code code) const noexcept { return (bits_[code >> 6] >> (code & 63)) & 1u; }
    bool contains(std::span<const Value> t) const;

    std::vector<Code> codes() const;
    std::vector<Tuple> tuples() const;

    bool subset_of(const Relation & other) const;
    Relation complement() const;
    Relation intersect(const Relation & other) const;

    const std::vector<std::uint64_t> & bits() const noexcept { return bits_; }

    friend bool operator==(const Relation & a, const Relation & b);

private:
    int domain_size_;
    int arity_;
    Code entries_;
    std::vector<std::uint64_t> bits_;
    std::size_t count_ = 0;

    void recount();
};

Relation make_relation(int domain_size, int arity, std::span<const Tuple> tuples);

/// pr_indices(R). Indices may repeat.
Relation project(const Relation & r, std::span<const int> indices);

/// `true` marks a '-' position (negated), `false` a '+'.
using SignPattern = std::vector<bool>;

SignPattern parse_sign_pattern(std::string_view text);
Tuple apply_signs(std::span<const Value> t, const SignPattern & s);
Relation apply_sign_pattern(const Relation & r, const SignPattern & s);

/// R_{i=c}. With `drop`, position i is removed from the result.
Relation fix_argument(const Relation & r, int index, Value c, bool drop = false);

/// One constraint application inside a quantifier-free conjunction.
struct ScopedRelation {
    Relation relation;
    std::vector<int> scope;
};

/// The n_vars-ary relation defined by a conjunction of applications. Repeating
/// a variable in a scope expresses equality.
Relation conjoin(std::span<const ScopedRelation> defs, int n_vars, int domain_size = 2);

Relation equality_relation(int domain_size);

struct SymmetricWeightSet {
    int arity = 0;
    std::vector<int> weights; // sorted, subset of {0..arity}

    bool contains(int w) const;
    friend bool operator==(const SymmetricWeightSet &, const SymmetricWeightSet &) = default;
};

/// Boolean relation accepting exactly the tuples whose weight is in `s`.
Relation symmetric_relation(const SymmetricWeightSet & s);
Relation symmetric_relation(int arity, std::span<const int> weights);

std::optional<SymmetricWeightSet> symmetric_weights(const Relation & r);

enum class SymmetricMode { shift_down, truncate, group };

struct SymmetricStep {
    SymmetricMode mode;
    int p = 0; // group size, used by SymmetricMode::group only

    friend bool operator==(const SymmetricStep &, const SymmetricStep &) = default;
};

std::string to_string(const SymmetricStep & step);

/// Shift down fixes the last argument to 1, truncate fixes it to 0, and
/// group(p) truncates to a multiple of p and then identifies consecutive
/// blocks of p arguments. Every step is carried out with fix_argument and
/// conjoin, so the result is qfpp-definable from the input.
Relation symmetric_transform(const Relation & r, SymmetricStep step);

Relation run_symmetric_script(const Relation & r, std::span<const SymmetricStep> script);

} // namespace psdi

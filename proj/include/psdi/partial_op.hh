#pragma once

#include "psdi/relation.hh"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psdi {

using BigInt = boost::multiprecision::cpp_int;

/// One row of a polymorphism pattern: variable symbols for each argument and
/// the symbol the operation must return.
struct PatternRow {
    std::string args;
    char result = 'x';
};

struct PolymorphismPattern {
    int arity = 0;
    std::vector<PatternRow> rows;

    /// "xxy>y;xyx>y". Symbols are lowercase letters.
    static PolymorphismPattern parse(std::string_view text);
    std::string to_string() const;
};

/// A partial operation over {0..d-1}: the defined argument columns (as codes
/// over d^arity, sorted) and the value at each.
class PartialOp {
public:
    PartialOp() = default;
    PartialOp(std::string name, int domain_size, int arity, std::vector<Code> codes, std::vector<Value> values);

    const std::string & name() const noexcept { return name_; }
    int domain_size() const noexcept { return domain_size_; }
    int arity() const noexcept { return arity_; }

    /// Number of defined argument tuples, |domain(f)|.
    std::size_t defined_count() const noexcept { return codes_.size(); }

    const std::vector<Code> & codes() const noexcept { return codes_; }
    const std::vector<Value> & values() const noexcept { return values_; }
    /// Defined argument tuples, same order as codes().
    const std::vector<Tuple> & columns() const noexcept { return columns_; }

    std::optional<Value> apply(std::span<const Value> column) const;
    std::optional<Value> apply_code(Code column) const;

    /// Same operation with its arguments reordered: g(x_0..x_{r-1}) =
    /// f(x_{perm[0]}, ..., x_{perm[r-1]}).
    PartialOp permute_arguments(std::span<const int> perm) const;

    friend bool operator==(const PartialOp & a, const PartialOp & b)
    {
        return a.domain_size_ == b.domain_size_ && a.arity_ == b.arity_ && a.codes_ == b.codes_ &&
               a.values_ == b.values_;
    }

private:
    std::string name_;
    int domain_size_ = 2;
    int arity_ = 0;
    std::vector<Code> codes_;
    std::vector<Value> values_;
    std::vector<Tuple> columns_;
};

PartialOp instantiate_pattern(const PolymorphismPattern & p, int domain_size, std::string name = {});

PolymorphismPattern near_pattern(int k);
PolymorphismPattern edge_pattern(int k);
PolymorphismPattern universal_pattern(int k);
PolymorphismPattern maltsev_pattern();

PartialOp make_near(int k, int domain_size = 2);
PartialOp make_edge(int k, int domain_size = 2);
PartialOp make_universal(int k);
PartialOp make_maltsev(int domain_size);

/// "edge2", "edge3", "nu:4", "near:4", "universal:3", "malt".
PartialOp parse_op(std::string_view text, int domain_size = 2);

/// Column-wise application. Returns nothing when some column is undefined.
std::optional<Tuple> apply_columnwise(const PartialOp & p, std::span<const Tuple> args);

struct PreservationWitness {
    std::vector<Tuple> tuples;
    Tuple result;
};

std::string to_string(const PreservationWitness & w);

/// Applications are enumerated coordinate by coordinate, choosing the column
/// type at each position in ascending code order and pruning any choice whose
/// argument prefixes leave pr_{0..i}(R). The first violating application is
/// returned.
std::optional<PreservationWitness> preserves(const PartialOp & p, const Relation & r);

inline constexpr std::uint64_t kMaxPreservationSearch = std::uint64_t{1} << 30;

enum class SampledVerdict { violated, inconclusive };

struct SampledPreservation {
    SampledVerdict verdict = SampledVerdict::inconclusive;
    std::optional<PreservationWitness> witness;
};

/// Randomised fallback for the cases preserves() refuses: randomised depth
/// first probes with a node budget. Never claims preservation.
SampledPreservation preserves_sampled(const PartialOp & p, const Relation & r, int probes, std::uint64_t seed);

/// |domain(p)|^n.
BigInt count_defined_sequences(const PartialOp & p, int n);

/// (|domain(p)| - 2) / 2 for Boolean operations.
int level_of(const PartialOp & p);

bool is_self_dual(const PartialOp & p);
bool is_idempotent(const PartialOp & p);

} // namespace psdi

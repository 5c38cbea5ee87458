#include "psdi/padding.hh"

#include "psdi/errors.hh"
#include "psdi/rng.hh"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace psdi {

ParityPadSpec random_parity_padding(int n, int m, std::uint64_t seed)
{
    if (n < 1 || m < 0)
        throw std::invalid_argument("random_parity_padding: need n >= 1 and m >= 0");
    Rng rng(seed);
    ParityPadSpec spec;
    spec.n = n;
    spec.seed = seed;
    for (int j = 0; j < m; ++j) {
        std::vector<int> set;
        for (int s = 0; s < n; ++s)
            if (rng.coin())
                set.push_back(s);
        spec.parity_sets.push_back(std::move(set));
    }
    return spec;
}

Relation pad_relation(const Relation & r, const ParityPadSpec & spec)
{
    if (r.domain_size() != 2 || r.arity() != spec.n)
        throw std::invalid_argument("pad_relation: need a Boolean relation of arity n");
    std::vector<Code> codes;
    for (const auto & t : r.tuples())
        codes.push_back(encode(spec.extend(t), 2));
    return Relation::from_codes(2, spec.n + spec.m(), codes);
}

std::string to_string(PaddingVerdict v)
{
    switch (v) {
    case PaddingVerdict::yes:
        return "yes";
    case PaddingVerdict::no:
        return "no";
    case PaddingVerdict::probably_yes:
        return "probably-yes";
    }
    return "?";
}

namespace {

/// Boolean op with its columns as bit masks (bit arity-1-j is argument j).
struct ColumnTable {
    std::vector<Code> codes;
    std::vector<Code> agree; // arguments equal to the result on that column
    std::unordered_map<Code, Code> agree_of;
    Code full = 0;

    explicit ColumnTable(const PartialOp & op)
    {
        if (op.domain_size() != 2)
            throw std::invalid_argument("parity padding is defined for Boolean operations only");
        if (op.arity() > 63)
            throw std::invalid_argument("operation arity too large");
        full = (Code{1} << op.arity()) - 1;
        codes = op.codes();
        for (std::size_t i = 0; i < codes.size(); ++i) {
            Code a = op.values()[i] ? codes[i] : (~codes[i] & full);
            agree.push_back(a);
            agree_of.emplace(codes[i], a);
        }
    }

    /// Agreement mask of a column, or nothing when the op is undefined there.
    std::optional<Code> lookup(Code c) const
    {
        auto it = agree_of.find(c);
        if (it == agree_of.end())
            return std::nullopt;
        return it->second;
    }
};

std::vector<std::vector<int>> pads_containing(const ParityPadSpec & spec)
{
    std::vector<std::vector<int>> out(spec.n);
    for (int j = 0; j < spec.m(); ++j)
        for (int s : spec.parity_sets[j]) {
            if (s < 0 || s >= spec.n)
                throw std::invalid_argument("parity set refers to a variable outside the base");
            out[s].push_back(j);
        }
    return out;
}

/// True when the application with these base columns is defined on every
/// pad and non-projective.
bool nonprojective_survivor(const ColumnTable & table, const ParityPadSpec & spec,
                            const std::vector<std::vector<int>> & containing, const std::vector<int> & choice)
{
    std::vector<Code> pads(spec.m(), 0);
    Code agree = table.full;
    for (int s = 0; s < spec.n; ++s) {
        const Code c = table.codes[choice[s]];
        agree &= table.agree[choice[s]];
        for (int j : containing[s])
            pads[j] ^= c;
    }
    for (Code p : pads) {
        auto a = table.lookup(p);
        if (!a)
            return false;
        agree &= *a;
    }
    return agree == 0;
}

} // namespace

BigInt count_nonprojective_remaining(const PartialOp & op, const ParityPadSpec & spec)
{
    ColumnTable table(op);
    const auto containing = pads_containing(spec);
    const int n = spec.n, m = spec.m();
    if (count_defined_sequences(op, n) > BigInt(kMaxPaddingEnumeration))
        throw InfeasibleError("exact padding count over |dom|^" + std::to_string(n) + " sequences exceeds the guard");
    const int cols = int(table.codes.size());
    // pad accumulators per depth
    std::vector<std::vector<Code>> pads(n + 1, std::vector<Code>(m, 0));
    std::vector<Code> agree(n + 1, table.full);
    std::uint64_t count = 0;
    auto dfs = [&](auto && self, int i) -> void {
        if (i == n) {
            Code a = agree[n];
            for (Code p : pads[n]) {
                auto pa = table.lookup(p);
                if (!pa)
                    return;
                a &= *pa;
            }
            if (a == 0)
                ++count;
            return;
        }
        for (int c = 0; c < cols; ++c) {
            pads[i + 1] = pads[i];
            for (int j : containing[i])
                pads[i + 1][j] ^= table.codes[c];
            agree[i + 1] = agree[i] & table.agree[c];
            self(self, i + 1);
        }
    };
    dfs(dfs, 0);
    return BigInt(count);
}

PaddingReport verify_universal_padding(const PartialOp & op, const ParityPadSpec & spec, std::uint64_t trials,
                                       std::uint64_t seed)
{
    PaddingReport rep;
    rep.spec = spec;
    rep.op = op.name();
    if (trials == 0) {
        rep.nonprojective_remaining = count_nonprojective_remaining(op, spec);
        rep.verdict = rep.nonprojective_remaining == 0 ? PaddingVerdict::yes : PaddingVerdict::no;
        return rep;
    }
    ColumnTable table(op);
    const auto containing = pads_containing(spec);
    Rng rng(seed);
    rep.exact = false;
    rep.trials = trials;
    std::vector<int> choice(spec.n);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (auto & c : choice)
            c = int(rng.below(table.codes.size()));
        hits += nonprojective_survivor(table, spec, containing, choice);
    }
    rep.nonprojective_remaining = hits;
    rep.verdict = hits ? PaddingVerdict::no : PaddingVerdict::probably_yes;
    return rep;
}

double survival_probability(const PartialOp & op)
{
    ColumnTable table(op);
    // GF(2) basis of the span of the defined columns
    std::vector<Code> basis;
    for (Code c : table.codes) {
        for (Code b : basis)
            c = std::min(c, c ^ b);
        if (c) {
            basis.push_back(c);
            std::sort(basis.rbegin(), basis.rend());
        }
    }
    if (basis.size() > 26)
        throw InfeasibleError("span of the defined columns is too large to enumerate");
    const std::uint64_t size = std::uint64_t{1} << basis.size();
    std::uint64_t inside = 0;
    for (std::uint64_t mask = 0; mask < size; ++mask) {
        Code v = 0;
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (mask >> b & 1)
                v ^= basis[b];
        inside += table.agree_of.count(v);
    }
    return double(inside) / double(size);
}

SurvivalEstimate estimate_survival(const PartialOp & op, int n, std::uint64_t trials, std::uint64_t seed)
{
    if (n < 1)
        throw std::invalid_argument("estimate_survival: need n >= 1");
    ColumnTable table(op);
    Rng rng(seed);
    SurvivalEstimate est;
    std::vector<Code> cols(n);
    constexpr std::uint64_t kMaxRejections = 1'000'000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t attempts = 0;
        for (;;) {
            Code agree = table.full;
            for (auto & c : cols) {
                auto idx = rng.below(table.codes.size());
                c = table.codes[idx];
                agree &= table.agree[idx];
            }
            if (agree == 0)
                break;
            if (++attempts > kMaxRejections)
                throw std::invalid_argument("estimate_survival: no non-projective application found at this n");
        }
        Code parity = 0;
        for (Code c : cols)
            if (rng.coin())
                parity ^= c;
        ++est.trials;
        est.survived += table.agree_of.count(parity);
    }
    return est;
}

double padding_constant(const PartialOp & op)
{
    const double q = survival_probability(op);
    if (q >= 1.0)
        throw std::invalid_argument("operation " + op.name() +
                                    " is total on the span of its columns; parity padding cannot make it projective");
    return std::log2(double(op.defined_count())) / -std::log2(q);
}

int recommended_padding_size(const PartialOp & op, int n, double eps)
{
    if (n < 0)
        throw std::invalid_argument("recommended_padding_size: n must be non-negative");
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("recommended_padding_size: eps must lie in (0, 1]");
    const double m = padding_constant(op) * n + std::log2(1.0 / eps);
    return int(std::ceil(m - 1e-9));
}

int recommended_padding_size(std::string_view op_kind, int n, double eps)
{
    return recommended_padding_size(parse_op(op_kind, 2), n, eps);
}

} // namespace psdi

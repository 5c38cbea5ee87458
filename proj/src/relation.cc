#include "psdi/relation.hh"

#include "psdi/errors.hh"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace psdi {

Code checked_power(int base, int exponent)
{
    if (base < 1 || exponent < 0)
        throw std::invalid_argument("checked_power: bad arguments");
    Code result = 1;
    for (int i = 0; i < exponent; ++i) {
        if (result > std::numeric_limits<Code>::max() / Code(base))
            throw InfeasibleError("integer power overflows 64 bits");
        result *= Code(base);
    }
    return result;
}

Code table_size(int domain_size, int arity)
{
    if (domain_size < 1)
        throw std::invalid_argument("domain size must be positive");
    if (arity < 0)
        throw std::invalid_argument("arity must be non-negative");
    Code result = 1;
    for (int i = 0; i < arity; ++i) {
        result *= Code(domain_size);
        if (result > kMaxTableEntries)
            throw InfeasibleError("relation table of " + std::to_string(domain_size) + "^" + std::to_string(arity) +
                                  " entries exceeds the dense-table cap");
    }
    return result;
}

Code encode(std::span<const Value> t, int domain_size)
{
    Code c = 0;
    for (Value v : t)
        c = c * Code(domain_size) + Code(v);
    return c;
}

Tuple decode(Code code, int domain_size, int arity)
{
    Tuple t(arity);
    for (int i = arity - 1; i >= 0; --i) {
        t[i] = Value(code % Code(domain_size));
        code /= Code(domain_size);
    }
    return t;
}

std::string format_tuple(std::span<const Value> t)
{
    if (t.empty())
        return "()";
    std::string s;
    for (Value v : t) {
        if (v < 10)
            s += char('0' + v);
        else
            s += char('a' + v - 10);
    }
    return s;
}

Tuple parse_tuple(std::string_view text, int domain_size, int arity)
{
    if (text == "()")
        text = {};
    if (int(text.size()) != arity)
        throw std::invalid_argument("tuple '" + std::string(text) + "' does not have arity " + std::to_string(arity));
    Tuple t;
    t.reserve(arity);
    for (char ch : text) {
        int v;
        if (ch >= '0' && ch <= '9')
            v = ch - '0';
        else if (ch >= 'a' && ch <= 'z')
            v = ch - 'a' + 10;
        else
            throw std::invalid_argument(std::string("bad digit '") + ch + "' in tuple");
        if (v >= domain_size)
            throw std::invalid_argument("tuple value out of domain range");
        t.push_back(v);
    }
    return t;
}

int hamming_weight(std::span<const Value> t)
{
    int w = 0;
    for (Value v : t)
        w += (v != 0);
    return w;
}

// --- Relation ---------------------------------------------------------------

Relation::Relation(int domain_size, int arity) :
    domain_size_(domain_size), arity_(arity), entries_(psdi::table_size(domain_size, arity)),
    bits_((entries_ + 63) / 64, 0)
{
    if (domain_size < 2)
        throw std::invalid_argument("relation domain size must be at least 2");
}

void Relation::recount()
{
    std::size_t c = 0;
    for (auto w : bits_)
        c += std::popcount(w);
    count_ = c;
}

Relation Relation::full(int domain_size, int arity)
{
    Relation r(domain_size, arity);
    for (Code c = 0; c < r.entries_; ++c)
        r.bits_[c >> 6] |= std::uint64_t{1} << (c & 63);
    r.count_ = r.entries_;
    return r;
}

Relation Relation::from_codes(int domain_size, int arity, std::span<const Code> codes)
{
    Relation r(domain_size, arity);
    for (Code c : codes) {
        if (c >= r.entries_)
            throw std::out_of_range("tuple code out of range");
        r.bits_[c >> 6] |= std::uint64_t{1} << (c & 63);
    }
    r.recount();
    return r;
}

Relation Relation::from_predicate(int domain_size, int arity, const std::function<bool(std::span<const Value>)> & pred)
{
    Relation r(domain_size, arity);
    Tuple t(arity, 0);
    for (Code c = 0; c < r.entries_; ++c) {
        if (pred(t))
            r.bits_[c >> 6] |= std::uint64_t{1} << (c & 63);
        // odometer increment, last position fastest
        for (int i = arity - 1; i >= 0; --i) {
            if (++t[i] < domain_size)
                break;
            t[i] = 0;
        }
    }
    r.recount();
    return r;
}

Relation Relation::from_bits(int domain_size, int arity, std::vector<std::uint64_t> bits)
{
    Relation r(domain_size, arity);
    if (bits.size() != r.bits_.size())
        throw std::invalid_argument("bitmap size mismatch");
    if (r.entries_ % 64)
        bits.back() &= (std::uint64_t{1} << (r.entries_ % 64)) - 1;
    r.bits_ = std::move(bits);
    r.recount();
    return r;
}

bool Relation::contains(std::span<const Value> t) const
{
    if (int(t.size()) != arity_)
        throw std::invalid_argument("tuple arity mismatch");
    for (Value v : t)
        if (v < 0 || v >= domain_size_)
            return false;
    return contains(encode(t, domain_size_));
}

std::vector<Code> Relation::codes() const
{
    std::vector<Code> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        auto word = bits_[w];
        while (word) {
            out.push_back(Code(w) * 64 + std::countr_zero(word));
            word &= word - 1;
        }
    }
    return out;
}

std::vector<Tuple> Relation::tuples() const
{
    std::vector<Tuple> out;
    out.reserve(count_);
    for (Code c : codes())
        out.push_back(decode(c, domain_size_, arity_));
    return out;
}

bool Relation::subset_of(const Relation & other) const
{
    if (domain_size_ != other.domain_size_ || arity_ != other.arity_)
        throw std::invalid_argument("subset_of: shape mismatch");
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & ~other.bits_[w])
            return false;
    return true;
}

Relation Relation::complement() const
{
    auto bits = bits_;
    for (auto & w : bits)
        w = ~w;
    return from_bits(domain_size_, arity_, std::move(bits));
}

Relation Relation::intersect(const Relation & other) const
{
    if (domain_size_ != other.domain_size_ || arity_ != other.arity_)
        throw std::invalid_argument("intersect: shape mismatch");
    auto bits = bits_;
    for (std::size_t w = 0; w < bits.size(); ++w)
        bits[w] &= other.bits_[w];
    return from_bits(domain_size_, arity_, std::move(bits));
}

bool operator==(const Relation & a, const Relation & b)
{
    return a.domain_size_ == b.domain_size_ && a.arity_ == b.arity_ && a.bits_ == b.bits_;
}

Relation make_relation(int domain_size, int arity, std::span<const Tuple> tuples)
{
    Relation r(domain_size, arity);
    std::vector<Code> codes;
    codes.reserve(tuples.size());
    for (auto & t : tuples) {
        if (int(t.size()) != arity)
            throw std::invalid_argument("make_relation: tuple arity mismatch");
        for (Value v : t)
            if (v < 0 || v >= domain_size)
                throw std::invalid_argument("make_relation: value out of range");
        codes.push_back(encode(t, domain_size));
    }
    return Relation::from_codes(domain_size, arity, codes);
}

Relation project(const Relation & r, std::span<const int> indices)
{
    for (int i : indices)
        if (i < 0 || i >= r.arity())
            throw std::out_of_range("project: index out of range");
    const int d = r.domain_size();
    Relation out(d, int(indices.size()));
    std::vector<Code> codes;
    for (Code c : r.codes()) {
        Tuple t = decode(c, d, r.arity());
        Code p = 0;
        for (int i : indices)
            p = p * Code(d) + Code(t[i]);
        codes.push_back(p);
    }
    return Relation::from_codes(d, int(indices.size()), codes);
}

SignPattern parse_sign_pattern(std::string_view text)
{
    SignPattern s;
    for (char ch : text) {
        if (ch == '+')
            s.push_back(false);
        else if (ch == '-')
            s.push_back(true);
        else
            throw std::invalid_argument("sign pattern characters must be '+' or '-'");
    }
    return s;
}

Tuple apply_signs(std::span<const Value> t, const SignPattern & s)
{
    if (t.size() != s.size())
        throw std::invalid_argument("sign pattern length mismatch");
    Tuple out(t.begin(), t.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i])
            out[i] = 1 - out[i];
    return out;
}

Relation apply_sign_pattern(const Relation & r, const SignPattern & s)
{
    if (r.domain_size() != 2)
        throw std::invalid_argument("sign patterns need a Boolean relation");
    if (int(s.size()) != r.arity())
        throw std::invalid_argument("sign pattern length mismatch");
    // flipping positions is XOR with a fixed mask on the binary code
    Code mask = 0;
    for (int i = 0; i < r.arity(); ++i)
        if (s[i])
            mask |= Code{1} << (r.arity() - 1 - i);
    std::vector<Code> codes = r.codes();
    for (auto & c : codes)
        c ^= mask;
    return Relation::from_codes(2, r.arity(), codes);
}

Relation fix_argument(const Relation & r, int index, Value c, bool drop)
{
    if (index < 0 || index >= r.arity())
        throw std::out_of_range("fix_argument: index out of range");
    if (c < 0 || c >= r.domain_size())
        throw std::out_of_range("fix_argument: value out of range");
    const int d = r.domain_size();
    std::vector<Code> codes;
    for (Code code : r.codes()) {
        Tuple t = decode(code, d, r.arity());
        if (t[index] != c)
            continue;
        if (drop)
            t.erase(t.begin() + index);
        codes.push_back(encode(t, d));
    }
    return Relation::from_codes(d, drop ? r.arity() - 1 : r.arity(), codes);
}

Relation conjoin(std::span<const ScopedRelation> defs, int n_vars, int domain_size)
{
    if (!defs.empty())
        domain_size = defs.front().relation.domain_size();
    for (auto & def : defs) {
        if (def.relation.domain_size() != domain_size)
            throw std::invalid_argument("conjoin: mixed domain sizes");
        if (int(def.scope.size()) != def.relation.arity())
            throw std::invalid_argument("conjoin: scope length differs from arity");
        for (int v : def.scope)
            if (v < 0 || v >= n_vars)
                throw std::out_of_range("conjoin: scope variable out of range");
    }
    return Relation::from_predicate(domain_size, n_vars, [&](std::span<const Value> a) {
        Tuple sub;
        for (auto & def : defs) {
            sub.resize(def.scope.size());
            for (std::size_t j = 0; j < def.scope.size(); ++j)
                sub[j] = a[def.scope[j]];
            if (!def.relation.contains(encode(sub, domain_size)))
                return false;
        }
        return true;
    });
}

Relation equality_relation(int domain_size)
{
    return Relation::from_predicate(domain_size, 2, [](std::span<const Value> t) { return t[0] == t[1]; });
}

bool SymmetricWeightSet::contains(int w) const
{
    return std::binary_search(weights.begin(), weights.end(), w);
}

Relation symmetric_relation(const SymmetricWeightSet & s)
{
    std::vector<bool> ok(s.arity + 1, false);
    for (int w : s.weights) {
        if (w < 0 || w > s.arity)
            throw std::invalid_argument("weight outside {0..arity}");
        ok[w] = true;
    }
    Relation r(2, s.arity);
    std::vector<std::uint64_t> bits(r.bits().size(), 0);
    for (Code c = 0; c < r.table_size(); ++c)
        if (ok[std::popcount(c)])
            bits[c >> 6] |= std::uint64_t{1} << (c & 63);
    return Relation::from_bits(2, s.arity, std::move(bits));
}

Relation symmetric_relation(int arity, std::span<const int> weights)
{
    SymmetricWeightSet s{arity, {weights.begin(), weights.end()}};
    std::sort(s.weights.begin(), s.weights.end());
    s.weights.erase(std::unique(s.weights.begin(), s.weights.end()), s.weights.end());
    return symmetric_relation(s);
}

std::optional<SymmetricWeightSet> symmetric_weights(const Relation & r)
{
    if (r.domain_size() != 2)
        throw std::invalid_argument("symmetric_weights needs a Boolean relation");
    const int n = r.arity();
    std::vector<int> seen(n + 1, -1); // -1 unknown, 0 absent, 1 present
    for (Code c = 0; c < r.table_size(); ++c) {
        int w = std::popcount(c);
        int in = r.contains(c) ? 1 : 0;
        if (seen[w] == -1)
            seen[w] = in;
        else if (seen[w] != in)
            return std::nullopt;
    }
    SymmetricWeightSet s{n, {}};
    for (int w = 0; w <= n; ++w)
        if (seen[w] == 1)
            s.weights.push_back(w);
    return s;
}

std::string to_string(const SymmetricStep & step)
{
    switch (step.mode) {
    case SymmetricMode::shift_down:
        return "shift";
    case SymmetricMode::truncate:
        return "truncate";
    case SymmetricMode::group:
        return "group(" + std::to_string(step.p) + ")";
    }
    return "?";
}

Relation symmetric_transform(const Relation & r, SymmetricStep step)
{
    if (!symmetric_weights(r))
        throw std::invalid_argument("symmetric_transform needs a totally symmetric relation");
    const int n = r.arity();
    switch (step.mode) {
    case SymmetricMode::shift_down:
        if (n == 0)
            throw std::invalid_argument("cannot shift a nullary relation");
        return fix_argument(r, n - 1, 1, true);
    case SymmetricMode::truncate:
        if (n == 0)
            throw std::invalid_argument("cannot truncate a nullary relation");
        return fix_argument(r, n - 1, 0, true);
    case SymmetricMode::group: {
        const int p = step.p;
        if (p < 2)
            throw std::invalid_argument("group size must be at least 2");
        Relation cur = r;
        while (cur.arity() % p)
            cur = fix_argument(cur, cur.arity() - 1, 0, true);
        const int m = cur.arity() / p;
        std::vector<int> scope(cur.arity());
        for (int i = 0; i < cur.arity(); ++i)
            scope[i] = i / p;
        std::vector<ScopedRelation> defs{{cur, scope}};
        return conjoin(defs, m, 2);
    }
    }
    throw std::logic_error("unknown symmetric step");
}

Relation run_symmetric_script(const Relation & r, std::span<const SymmetricStep> script)
{
    Relation cur = r;
    for (auto & step : script)
        cur = symmetric_transform(cur, step);
    return cur;
}

} // namespace psdi

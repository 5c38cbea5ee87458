#include "psdi/oracle.hh"

#include "psdi/errors.hh"
#include "psdi/gf2.hh"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace psdi {

void ExtensionOracle::check_query(std::span<const int> indices, std::span<const Value> values) const
{
    if (indices.size() != values.size())
        throw std::invalid_argument("oracle query: index and value lists differ in length");
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] < 0 || indices[j] >= arity())
            throw std::out_of_range("oracle query: index out of range");
        if (values[j] < 0 || values[j] >= domain_size())
            throw std::out_of_range("oracle query: value out of range");
    }
}

bool ExtensionOracle::contains(std::span<const Value> t) const
{
    if (int(t.size()) != arity())
        throw std::invalid_argument("oracle membership: arity mismatch");
    std::vector<int> all(arity());
    for (int i = 0; i < arity(); ++i)
        all[i] = i;
    return query(all, t);
}

// --- explicit ----------------------------------------------------------------

ExplicitOracle::ExplicitOracle(Relation r) : relation_(std::move(r))
{
    if (relation_.arity() > 63)
        throw InfeasibleError("explicit oracle arity too large");
}

bool ExplicitOracle::query(std::span<const int> indices, std::span<const Value> values) const
{
    check_query(indices, values);
    const int d = relation_.domain_size();
    std::vector<std::pair<int, Value>> assigned;
    for (std::size_t j = 0; j < indices.size(); ++j)
        assigned.emplace_back(indices[j], values[j]);
    std::sort(assigned.begin(), assigned.end());
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < assigned.size(); ++j) {
        if (j && assigned[j].first == assigned[j - 1].first)
            throw std::invalid_argument("oracle query: repeated index");
        mask |= std::uint64_t{1} << assigned[j].first;
    }
    if (int(assigned.size()) == relation_.arity()) {
        Code c = 0;
        for (auto & [i, v] : assigned)
            c = c * Code(d) + Code(v);
        return relation_.contains(c);
    }
    std::shared_ptr<const Relation> proj;
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(mask);
        if (it != cache_.end())
            proj = it->second;
    }
    if (!proj) {
        std::vector<int> idx;
        for (auto & [i, v] : assigned)
            idx.push_back(i);
        auto built = std::make_shared<const Relation>(project(relation_, idx));
        std::lock_guard lock(mutex_);
        proj = cache_.emplace(mask, std::move(built)).first->second;
    }
    Code c = 0;
    for (auto & [i, v] : assigned)
        c = c * Code(d) + Code(v);
    return proj->contains(c);
}

// --- linear ------------------------------------------------------------------

namespace {

long long mod_floor(long long a, long long m)
{
    long long r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<bool> assigned_flags(int arity, std::span<const int> indices)
{
    std::vector<bool> flags(arity, false);
    for (int i : indices) {
        if (flags[i])
            throw std::invalid_argument("oracle query: repeated index");
        flags[i] = true;
    }
    return flags;
}

template <class T>
std::string join(const std::vector<T> & xs, char sep = ',')
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            s += sep;
        s += std::to_string(xs[i]);
    }
    return s;
}

} // namespace

LinearEquationOracle::LinearEquationOracle(std::vector<long long> coeffs, long long target, long long modulus) :
    coeffs_(std::move(coeffs)), target_(target), modulus_(modulus)
{
    if (modulus_ < 2)
        throw std::invalid_argument("linear oracle: modulus must be at least 2");
    if (modulus_ > (1 << 24))
        throw InfeasibleError("linear oracle: modulus too large for residue tabulation");
}

bool LinearEquationOracle::query(std::span<const int> indices, std::span<const Value> values) const
{
    check_query(indices, values);
    auto flags = assigned_flags(arity(), indices);
    long long sum = 0;
    for (std::size_t j = 0; j < indices.size(); ++j)
        if (values[j])
            sum = mod_floor(sum + coeffs_[indices[j]], modulus_);
    // residues reachable by the unassigned coefficients
    std::vector<char> reach(modulus_, 0), next;
    reach[0] = 1;
    for (int i = 0; i < arity(); ++i) {
        if (flags[i])
            continue;
        const long long c = mod_floor(coeffs_[i], modulus_);
        if (c == 0)
            continue;
        next = reach;
        for (long long r = 0; r < modulus_; ++r)
            if (reach[r])
                next[(r + c) % modulus_] = 1;
        reach.swap(next);
    }
    return reach[mod_floor(target_ - sum, modulus_)];
}

std::string LinearEquationOracle::spec() const
{
    return "linear coeffs=" + join(coeffs_) + " target=" + std::to_string(target_) + " mod=" + std::to_string(modulus_);
}

// --- parity padding ----------------------------------------------------------

Tuple ParityPadSpec::extend(std::span<const Value> base) const
{
    if (int(base.size()) != n)
        throw std::invalid_argument("pad extension: base tuple has wrong length");
    Tuple t(base.begin(), base.end());
    for (auto & set : parity_sets) {
        Value y = 0;
        for (int s : set)
            y ^= base[s];
        t.push_back(y);
    }
    return t;
}

std::string format_pads(const ParityPadSpec & spec)
{
    std::string s;
    for (int j = 0; j < spec.m(); ++j) {
        if (j)
            s += ';';
        s += std::to_string(j) + '|' + join(spec.parity_sets[j]);
    }
    return s;
}

namespace {

long long to_ll(std::string_view s)
{
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
    return v;
}

std::uint64_t to_u64(std::string_view s)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("expected an unsigned integer, got '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    if (s.empty())
        return out;
    std::size_t pos = 0;
    for (;;) {
        auto end = s.find(sep, pos);
        out.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
        if (end == std::string_view::npos)
            break;
        pos = end + 1;
    }
    return out;
}

template <class T, class F>
std::vector<T> parse_list(std::string_view s, F convert)
{
    std::vector<T> out;
    for (auto part : split(s, ','))
        out.push_back(T(convert(part)));
    return out;
}

} // namespace

ParityPadSpec parse_pads(std::string_view text, int n)
{
    ParityPadSpec spec;
    spec.n = n;
    for (auto entry : split(text, ';')) {
        auto bar = entry.find('|');
        if (bar == std::string_view::npos)
            throw std::invalid_argument("pad entry must look like 'index|i,j,...'");
        auto index = to_ll(entry.substr(0, bar));
        if (index != spec.m())
            throw std::invalid_argument("pad entries must be listed in index order");
        auto set = parse_list<int>(entry.substr(bar + 1), to_ll);
        for (int s : set)
            if (s < 0 || s >= n)
                throw std::invalid_argument("parity set refers to a variable outside the base");
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        spec.parity_sets.push_back(std::move(set));
    }
    return spec;
}

ParityPaddedClauseOracle::ParityPaddedClauseOracle(Tuple excluded, std::vector<int> vars, ParityPadSpec pad) :
    excluded_(std::move(excluded)), vars_(std::move(vars)), pad_(std::move(pad))
{
    if (excluded_.size() != vars_.size())
        throw std::invalid_argument("padded clause: excluded tuple and variable list differ in length");
    if (vars_.empty())
        throw std::invalid_argument("padded clause: empty clause");
    auto sorted = vars_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("padded clause: repeated clause variable");
    for (int v : vars_)
        if (v < 0 || v >= pad_.n)
            throw std::invalid_argument("padded clause: clause variable outside the base");
    for (Value v : excluded_)
        if (v != 0 && v != 1)
            throw std::invalid_argument("padded clause: excluded tuple must be Boolean");
}

std::shared_ptr<ParityPaddedClauseOracle> ParityPaddedClauseOracle::from_relation(const Relation & clause,
                                                                                  std::vector<int> vars,
                                                                                  ParityPadSpec pad)
{
    if (clause.domain_size() != 2 || clause.size() + 1 != clause.table_size())
        throw std::invalid_argument("padded clause: relation must exclude exactly one Boolean tuple");
    auto missing = clause.complement().tuples().front();
    return std::make_shared<ParityPaddedClauseOracle>(std::move(missing), std::move(vars), std::move(pad));
}

bool ParityPaddedClauseOracle::query(std::span<const int> indices, std::span<const Value> values) const
{
    check_query(indices, values);
    assigned_flags(arity(), indices);
    const int n = pad_.n;
    Gf2System sys(n);
    for (std::size_t j = 0; j < indices.size(); ++j) {
        Gf2Row row(n);
        if (indices[j] < n) {
            row.flip(indices[j]);
        } else {
            for (int s : pad_.parity_sets[indices[j] - n])
                row.flip(s);
        }
        row.set_rhs(values[j] != 0);
        if (sys.add(std::move(row)) == Gf2System::AddResult::inconsistent)
            return false;
    }
    // every solution hits the excluded tuple iff forcing it is consistent
    // and adds no rank
    Gf2System forced = sys;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        Gf2Row row(n);
        row.flip(vars_[i]);
        row.set_rhs(excluded_[i] != 0);
        if (forced.add(std::move(row)) == Gf2System::AddResult::inconsistent)
            return true;
    }
    return forced.rank() > sys.rank();
}

std::string ParityPaddedClauseOracle::spec() const
{
    return "padded_clause excluded=" + format_tuple(excluded_) + " vars=" + join(vars_) + " n=" +
           std::to_string(pad_.n) + " seed=" + std::to_string(pad_.seed) + " pads=" + format_pads(pad_);
}

// --- subset sum block --------------------------------------------------------

SubsetSumBlockOracle::SubsetSumBlockOracle(std::vector<std::uint64_t> weights, std::uint64_t block_target, int bit_lo,
                                           int bit_hi, std::uint64_t carry_in, std::uint64_t carry_out) :
    weights_(std::move(weights)), block_target_(block_target), bit_lo_(bit_lo), bit_hi_(bit_hi),
    carry_in_(carry_in), carry_out_(carry_out)
{
    const int width = bit_hi - bit_lo;
    if (bit_lo < 0 || width < 1 || width > 40 || bit_hi > 63)
        throw std::invalid_argument("subset-sum block: bit range must satisfy 0 <= lo < hi <= 63, width <= 40");
    const std::uint64_t n = weights_.size();
    if (carry_in > n || carry_out > n)
        throw std::invalid_argument("subset-sum block: carries must lie in [0, n]");
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
    if (block_target > mask)
        throw std::invalid_argument("subset-sum block: target does not fit the block");
    for (auto w : weights_)
        block_values_.push_back((w >> bit_lo) & mask);
    const std::uint64_t high = block_target + (carry_out << width);
    feasible_ = high >= carry_in;
    needed_ = feasible_ ? high - carry_in : 0;
    if (needed_ > (std::uint64_t{1} << 26))
        throw InfeasibleError("subset-sum block: block sums too large to tabulate");
}

std::shared_ptr<const std::vector<std::uint64_t>>
SubsetSumBlockOracle::reachable(const std::vector<std::uint64_t> & free_mask) const
{
    {
        std::lock_guard lock(mutex_);
        auto it = sums_.find(free_mask);
        if (it != sums_.end())
            return it->second;
    }
    // bitset over sums 0..needed_
    const std::size_t bits = needed_ + 1;
    std::vector<std::uint64_t> reach((bits + 63) / 64, 0);
    reach[0] = 1;
    for (std::size_t i = 0; i < block_values_.size(); ++i) {
        if (!(free_mask[i >> 6] >> (i & 63) & 1))
            continue;
        const std::uint64_t v = block_values_[i];
        if (v == 0 || v >= bits)
            continue;
        // reach |= reach << v
        const std::size_t word_shift = v >> 6, bit_shift = v & 63;
        for (std::size_t w = reach.size(); w-- > word_shift;) {
            std::uint64_t x = reach[w - word_shift] << bit_shift;
            if (bit_shift && w > word_shift)
                x |= reach[w - word_shift - 1] >> (64 - bit_shift);
            reach[w] |= x;
        }
    }
    if (bits % 64)
        reach.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
    auto shared = std::make_shared<const std::vector<std::uint64_t>>(std::move(reach));
    std::lock_guard lock(mutex_);
    return sums_.emplace(free_mask, std::move(shared)).first->second;
}

bool SubsetSumBlockOracle::query(std::span<const int> indices, std::span<const Value> values) const
{
    check_query(indices, values);
    if (!feasible_)
        return false;
    auto flags = assigned_flags(arity(), indices);
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < indices.size(); ++j)
        if (values[j])
            sum += block_values_[indices[j]];
    if (sum > needed_)
        return false;
    const std::uint64_t rest = needed_ - sum;
    std::vector<std::uint64_t> free_mask((arity() + 63) / 64, 0);
    for (int i = 0; i < arity(); ++i)
        if (!flags[i])
            free_mask[i >> 6] |= std::uint64_t{1} << (i & 63);
    auto reach = reachable(free_mask);
    return (*reach)[rest >> 6] >> (rest & 63) & 1;
}

std::string SubsetSumBlockOracle::spec() const
{
    return "ssblock weights=" + join(weights_) + " target=" + std::to_string(block_target_) +
           " lo=" + std::to_string(bit_lo_) + " hi=" + std::to_string(bit_hi_) + " cin=" + std::to_string(carry_in_) +
           " cout=" + std::to_string(carry_out_);
}

// --- symmetric ---------------------------------------------------------------

SymmetricWeightOracle::SymmetricWeightOracle(SymmetricWeightSet s) : s_(std::move(s))
{
    std::sort(s_.weights.begin(), s_.weights.end());
    s_.weights.erase(std::unique(s_.weights.begin(), s_.weights.end()), s_.weights.end());
    for (int w : s_.weights)
        if (w < 0 || w > s_.arity)
            throw std::invalid_argument("symmetric oracle: weight outside {0..arity}");
}

bool SymmetricWeightOracle::query(std::span<const int> indices, std::span<const Value> values) const
{
    check_query(indices, values);
    assigned_flags(arity(), indices);
    int ones = 0;
    for (Value v : values)
        ones += v;
    const int free = arity() - int(indices.size());
    auto it = std::lower_bound(s_.weights.begin(), s_.weights.end(), ones);
    return it != s_.weights.end() && *it <= ones + free;
}

std::string SymmetricWeightOracle::spec() const
{
    return "symmetric arity=" + std::to_string(s_.arity) + " weights=" + join(s_.weights);
}

// --- helpers -----------------------------------------------------------------

Relation materialize(const ExtensionOracle & oracle)
{
    const int r = oracle.arity();
    std::vector<int> all(r);
    for (int i = 0; i < r; ++i)
        all[i] = i;
    return Relation::from_predicate(oracle.domain_size(), r,
                                    [&](std::span<const Value> t) { return oracle.query(all, t); });
}

OraclePtr parse_oracle_spec(std::string_view text, int domain_size)
{
    std::istringstream in{std::string(text)};
    std::string kind;
    in >> kind;
    std::map<std::string, std::string> kv;
    std::string token;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("oracle parameter '" + token + "' must be key=value");
        kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
    auto need = [&](const std::string & key) -> const std::string & {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("oracle '" + kind + "' is missing parameter '" + key + "'");
        return it->second;
    };
    if (kind != "linear" && kind != "padded_clause" && kind != "ssblock" && kind != "symmetric")
        throw std::invalid_argument("unknown oracle kind '" + kind + "'");
    if (domain_size != 2)
        throw std::invalid_argument("oracle '" + kind + "' is Boolean; instance domain must be 2");
    if (kind == "linear")
        return std::make_shared<LinearEquationOracle>(parse_list<long long>(need("coeffs"), to_ll),
                                                      to_ll(need("target")), to_ll(need("mod")));
    if (kind == "padded_clause") {
        const int n = int(to_ll(need("n")));
        auto pad = parse_pads(kv.count("pads") ? kv["pads"] : std::string(), n);
        if (kv.count("seed"))
            pad.seed = to_u64(kv["seed"]);
        auto vars = parse_list<int>(need("vars"), to_ll);
        auto excluded = parse_tuple(need("excluded"), 2, int(vars.size()));
        return std::make_shared<ParityPaddedClauseOracle>(std::move(excluded), std::move(vars), std::move(pad));
    }
    if (kind == "ssblock")
        return std::make_shared<SubsetSumBlockOracle>(parse_list<std::uint64_t>(need("weights"), to_u64),
                                                      to_u64(need("target")), int(to_ll(need("lo"))),
                                                      int(to_ll(need("hi"))), to_u64(need("cin")),
                                                      to_u64(need("cout")));
    SymmetricWeightSet s{int(to_ll(need("arity"))), parse_list<int>(kv.count("weights") ? kv["weights"] : "", to_ll)};
    return std::make_shared<SymmetricWeightOracle>(std::move(s));
}

} // namespace psdi

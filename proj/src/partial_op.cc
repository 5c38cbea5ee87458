#include "psdi/partial_op.hh"

#include "psdi/errors.hh"
#include "psdi/rng.hh"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace psdi {

PolymorphismPattern PolymorphismPattern::parse(std::string_view text)
{
    PolymorphismPattern p;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(';', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto row = text.substr(pos, end - pos);
        pos = end + 1;
        if (row.empty())
            continue;
        auto gt = row.find('>');
        if (gt == std::string_view::npos || gt + 2 != row.size())
            throw std::invalid_argument("pattern row must look like 'xxy>y'");
        PatternRow pr{std::string(row.substr(0, gt)), row[gt + 1]};
        for (char c : pr.args)
            if (c < 'a' || c > 'z')
                throw std::invalid_argument("pattern symbols must be lowercase letters");
        if (pr.args.find(pr.result) == std::string::npos)
            throw std::invalid_argument("result symbol must occur in its row");
        if (p.rows.empty())
            p.arity = int(pr.args.size());
        else if (int(pr.args.size()) != p.arity)
            throw std::invalid_argument("pattern rows differ in arity");
        p.rows.push_back(std::move(pr));
    }
    if (p.rows.empty())
        throw std::invalid_argument("empty pattern");
    return p;
}

std::string PolymorphismPattern::to_string() const
{
    std::string s;
    for (auto & row : rows) {
        if (!s.empty())
            s += ';';
        s += row.args;
        s += '>';
        s += row.result;
    }
    return s;
}

PartialOp::PartialOp(std::string name, int domain_size, int arity, std::vector<Code> codes, std::vector<Value> values) :
    name_(std::move(name)), domain_size_(domain_size), arity_(arity)
{
    if (codes.size() != values.size())
        throw std::invalid_argument("PartialOp: codes/values size mismatch");
    std::vector<std::size_t> order(codes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return codes[a] < codes[b]; });
    for (auto i : order) {
        if (!codes_.empty() && codes_.back() == codes[i])
            throw std::invalid_argument("PartialOp: duplicate argument tuple");
        codes_.push_back(codes[i]);
        values_.push_back(values[i]);
        columns_.push_back(decode(codes[i], domain_size, arity));
    }
}

std::optional<Value> PartialOp::apply_code(Code column) const
{
    auto it = std::lower_bound(codes_.begin(), codes_.end(), column);
    if (it == codes_.end() || *it != column)
        return std::nullopt;
    return values_[it - codes_.begin()];
}

std::optional<Value> PartialOp::apply(std::span<const Value> column) const
{
    if (int(column.size()) != arity_)
        throw std::invalid_argument("PartialOp::apply: arity mismatch");
    return apply_code(encode(column, domain_size_));
}

PartialOp PartialOp::permute_arguments(std::span<const int> perm) const
{
    if (int(perm.size()) != arity_)
        throw std::invalid_argument("permutation length mismatch");
    std::vector<Code> codes;
    for (auto & c : columns_) {
        Tuple x(arity_);
        for (int i = 0; i < arity_; ++i)
            x[perm[i]] = c[i];
        codes.push_back(encode(x, domain_size_));
    }
    return PartialOp(name_, domain_size_, arity_, std::move(codes), values_);
}

PartialOp instantiate_pattern(const PolymorphismPattern & p, int domain_size, std::string name)
{
    if (domain_size < 2)
        throw std::invalid_argument("domain size must be at least 2");
    std::string symbols;
    for (auto & row : p.rows)
        for (char c : row.args)
            if (symbols.find(c) == std::string::npos)
                symbols += c;
    const Code assignments = checked_power(domain_size, int(symbols.size()));
    std::map<Code, Value> table;
    std::vector<Value> tau(symbols.size());
    std::vector<int> slot(128, -1);
    for (std::size_t i = 0; i < symbols.size(); ++i)
        slot[std::size_t(symbols[i])] = int(i);
    for (Code a = 0; a < assignments; ++a) {
        Code rest = a;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            tau[i] = Value(rest % Code(domain_size));
            rest /= Code(domain_size);
        }
        for (auto & row : p.rows) {
            Code c = 0;
            for (char s : row.args)
                c = c * Code(domain_size) + Code(tau[slot[std::size_t(s)]]);
            Value v = tau[slot[std::size_t(row.result)]];
            auto [it, inserted] = table.emplace(c, v);
            if (!inserted && it->second != v)
                throw std::invalid_argument("inconsistent pattern: tuple " +
                                            format_tuple(decode(c, domain_size, p.arity)) +
                                            " is forced to two different values");
        }
    }
    std::vector<Code> codes;
    std::vector<Value> values;
    for (auto & [c, v] : table) {
        codes.push_back(c);
        values.push_back(v);
    }
    if (name.empty())
        name = p.to_string();
    return PartialOp(std::move(name), domain_size, p.arity, std::move(codes), std::move(values));
}

PolymorphismPattern near_pattern(int k)
{
    if (k < 3)
        throw std::invalid_argument("near_k needs k >= 3");
    PolymorphismPattern p{k, {}};
    for (int i = 0; i < k; ++i) {
        std::string args(k, 'x');
        args[i] = 'y';
        p.rows.push_back({args, 'x'});
    }
    return p;
}

PolymorphismPattern edge_pattern(int k)
{
    if (k < 2)
        throw std::invalid_argument("edge_k needs k >= 2");
    const int r = k + 1;
    PolymorphismPattern p{r, {}};
    std::string first(r, 'y'), second(r, 'y');
    first[0] = first[1] = 'x';
    second[0] = second[2] = 'x';
    p.rows.push_back({first, 'y'});
    p.rows.push_back({second, 'y'});
    for (int i = 3; i < r; ++i) {
        std::string args(r, 'y');
        args[i] = 'x';
        p.rows.push_back({args, 'y'});
    }
    return p;
}

PolymorphismPattern universal_pattern(int k)
{
    if (k < 2 || k > 6)
        throw std::invalid_argument("universal_k supported for 2 <= k <= 6");
    const int r = (1 << k) - 1;
    PolymorphismPattern p{r, {}};
    // column j carries the k-bit integer j+1, row a reads bit k-1-a
    for (int a = 0; a < k; ++a) {
        std::string args(r, 'x');
        for (int j = 0; j < r; ++j)
            if (((j + 1) >> (k - 1 - a)) & 1)
                args[j] = 'y';
        p.rows.push_back({args, 'x'});
    }
    return p;
}

PolymorphismPattern maltsev_pattern()
{
    return PolymorphismPattern::parse("xxy>y;yxx>y");
}

PartialOp make_near(int k, int domain_size)
{
    return instantiate_pattern(near_pattern(k), domain_size, "near" + std::to_string(k));
}

PartialOp make_edge(int k, int domain_size)
{
    return instantiate_pattern(edge_pattern(k), domain_size, "edge" + std::to_string(k));
}

PartialOp make_universal(int k)
{
    return instantiate_pattern(universal_pattern(k), 2, "universal" + std::to_string(k));
}

PartialOp make_maltsev(int domain_size)
{
    return instantiate_pattern(maltsev_pattern(), domain_size, "malt");
}

namespace {

int parse_int(std::string_view s)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
    return v;
}

std::optional<int> suffix_number(std::string_view text, std::string_view prefix)
{
    if (text.substr(0, prefix.size()) != prefix)
        return std::nullopt;
    auto rest = text.substr(prefix.size());
    if (!rest.empty() && rest.front() == ':')
        rest.remove_prefix(1);
    if (rest.empty())
        return std::nullopt;
    return parse_int(rest);
}

} // namespace

PartialOp parse_op(std::string_view text, int domain_size)
{
    if (text.find('>') != std::string_view::npos)
        return instantiate_pattern(PolymorphismPattern::parse(text), domain_size);
    if (text == "malt" || text == "maltsev")
        return make_maltsev(domain_size);
    if (auto k = suffix_number(text, "universal"))
        return make_universal(*k);
    if (auto k = suffix_number(text, "univ"))
        return make_universal(*k);
    if (auto k = suffix_number(text, "edge"))
        return make_edge(*k, domain_size);
    if (auto k = suffix_number(text, "near"))
        return make_near(*k, domain_size);
    if (auto k = suffix_number(text, "nu"))
        return make_near(*k, domain_size);
    throw std::invalid_argument("unknown operation '" + std::string(text) + "'");
}

std::optional<Tuple> apply_columnwise(const PartialOp & p, std::span<const Tuple> args)
{
    if (int(args.size()) != p.arity())
        throw std::invalid_argument("apply_columnwise: wrong number of arguments");
    if (args.empty())
        return Tuple{};
    const std::size_t m = args.front().size();
    Tuple out(m);
    Tuple column(p.arity());
    for (std::size_t i = 0; i < m; ++i) {
        for (int j = 0; j < p.arity(); ++j) {
            if (args[j].size() != m)
                throw std::invalid_argument("apply_columnwise: argument arity mismatch");
            column[j] = args[j][i];
        }
        auto v = p.apply(column);
        if (!v)
            return std::nullopt;
        out[i] = *v;
    }
    return out;
}

std::string to_string(const PreservationWitness & w)
{
    std::ostringstream os;
    os << "f(";
    for (std::size_t j = 0; j < w.tuples.size(); ++j)
        os << (j ? "," : "") << format_tuple(w.tuples[j]);
    os << ") = " << format_tuple(w.result);
    return os.str();
}

namespace {

/// Membership tables for every prefix projection pr_{0..i-1}(R).
struct PrefixTables {
    std::vector<std::vector<bool>> member; // member[i][code of length-i prefix]

    explicit PrefixTables(const Relation & r)
    {
        const int m = r.arity();
        const Code d = Code(r.domain_size());
        member.resize(m + 1);
        Code size = r.table_size();
        for (int i = m; i >= 0; --i) {
            member[i].assign(size, false);
            size /= (i > 0 ? d : 1);
        }
        for (Code c : r.codes()) {
            Code x = c;
            for (int i = m; i >= 0; --i) {
                member[i][x] = true;
                x /= d;
            }
        }
    }
};

class WitnessSearch {
public:
    WitnessSearch(const PartialOp & p, const Relation & r) :
        p_(p), r_(r), prefix_(r), args_(r.arity() + 1, std::vector<Code>(p.arity(), 0)),
        result_(r.arity() + 1, 0), chosen_(r.arity(), 0), order_(p.defined_count())
    {
        std::iota(order_.begin(), order_.end(), 0);
    }

    std::optional<PreservationWitness> run()
    {
        rng_ = nullptr;
        if (dfs(0))
            return build_witness();
        return std::nullopt;
    }

    /// Randomised probe: shuffled column order at each depth, node budget.
    std::optional<PreservationWitness> probe(Rng & rng, std::uint64_t budget)
    {
        rng_ = &rng;
        budget_ = budget;
        if (dfs(0))
            return build_witness();
        return std::nullopt;
    }

private:
    const PartialOp & p_;
    const Relation & r_;
    PrefixTables prefix_;
    // args_[i][j]: code of the length-i prefix of argument j
    std::vector<std::vector<Code>> args_;
    std::vector<Code> result_;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> order_;
    Rng * rng_ = nullptr;
    std::uint64_t budget_ = 0;

    bool dfs(int depth)
    {
        const int m = r_.arity();
        if (depth == m)
            return !r_.contains(result_[m]);
        std::vector<std::size_t> shuffled;
        const std::vector<std::size_t> * order = &order_;
        if (rng_) {
            if (budget_ == 0)
                return false;
            --budget_;
            shuffled = order_;
            rng_->shuffle(shuffled.begin(), shuffled.end());
            order = &shuffled;
        }
        const Code d = Code(r_.domain_size());
        const auto & member = prefix_.member[depth + 1];
        const auto & cur = args_[depth];
        auto & next = args_[depth + 1];
        for (std::size_t idx : *order) {
            const Tuple & col = p_.columns()[idx];
            bool ok = true;
            for (int j = 0; j < p_.arity(); ++j) {
                Code c = cur[j] * d + Code(col[j]);
                if (!member[c]) {
                    ok = false;
                    break;
                }
                next[j] = c;
            }
            if (!ok)
                continue;
            result_[depth + 1] = result_[depth] * d + Code(p_.values()[idx]);
            chosen_[depth] = idx;
            if (dfs(depth + 1))
                return true;
        }
        return false;
    }

    PreservationWitness build_witness() const
    {
        PreservationWitness w;
        const int m = r_.arity();
        w.tuples.assign(p_.arity(), Tuple(m));
        w.result.resize(m);
        for (int i = 0; i < m; ++i) {
            const Tuple & col = p_.columns()[chosen_[i]];
            for (int j = 0; j < p_.arity(); ++j)
                w.tuples[j][i] = col[j];
            w.result[i] = p_.values()[chosen_[i]];
        }
        return w;
    }
};

void check_same_domain(const PartialOp & p, const Relation & r)
{
    if (p.domain_size() != r.domain_size())
        throw std::invalid_argument("operation and relation have different domains");
}

} // namespace

std::optional<PreservationWitness> preserves(const PartialOp & p, const Relation & r)
{
    check_same_domain(p, r);
    if (r.empty())
        return std::nullopt;
    // worst-case number of leaves |domain(p)|^ar(R)
    double leaves = 1;
    for (int i = 0; i < r.arity(); ++i)
        leaves *= double(p.defined_count());
    if (leaves > double(kMaxPreservationSearch))
        throw InfeasibleError("preservation search over " + std::to_string(p.defined_count()) + "^" +
                              std::to_string(r.arity()) + " column sequences exceeds the guard");
    return WitnessSearch(p, r).run();
}

SampledPreservation preserves_sampled(const PartialOp & p, const Relation & r, int probes, std::uint64_t seed)
{
    check_same_domain(p, r);
    SampledPreservation out;
    if (r.empty())
        return out;
    Rng rng(seed);
    WitnessSearch search(p, r);
    const std::uint64_t budget = std::uint64_t(64) * std::uint64_t(r.arity() + 1) * p.defined_count();
    for (int i = 0; i < probes; ++i) {
        if (auto w = search.probe(rng, budget)) {
            out.verdict = SampledVerdict::violated;
            out.witness = std::move(w);
            break;
        }
    }
    return out;
}

BigInt count_defined_sequences(const PartialOp & p, int n)
{
    if (n < 0)
        throw std::invalid_argument("sequence length must be non-negative");
    BigInt result = 1;
    for (int i = 0; i < n; ++i)
        result *= p.defined_count();
    return result;
}

int level_of(const PartialOp & p)
{
    if (p.domain_size() != 2)
        throw std::invalid_argument("level is defined for Boolean operations only");
    return (int(p.defined_count()) - 2) / 2;
}

bool is_self_dual(const PartialOp & p)
{
    if (p.domain_size() != 2)
        return false;
    const Code all = (Code{1} << p.arity()) - 1;
    for (std::size_t i = 0; i < p.defined_count(); ++i) {
        auto v = p.apply_code(p.codes()[i] ^ all);
        if (!v || *v != 1 - p.values()[i])
            return false;
    }
    return true;
}

bool is_idempotent(const PartialOp & p)
{
    for (Value c = 0; c < p.domain_size(); ++c) {
        Tuple t(p.arity(), c);
        auto v = p.apply(t);
        if (!v || *v != c)
            return false;
    }
    return true;
}

} // namespace psdi

#include "psdi/classify.hh"

#include "psdi/errors.hh"

#include <bit>
#include <stdexcept>

namespace psdi {

std::string to_string(OpFamily f)
{
    switch (f) {
    case OpFamily::edge:
        return "edge";
    case OpFamily::near:
        return "near";
    case OpFamily::universal:
        return "universal";
    }
    return "?";
}

const ClassificationEntry * ClassificationReport::find(OpFamily family, int k) const
{
    for (auto & e : entries)
        if (e.family == family && e.k == k)
            return &e;
    return nullptr;
}

bool ClassificationReport::preserved_by(OpFamily family, int k) const
{
    auto * e = find(family, k);
    if (!e)
        throw std::out_of_range("operation " + to_string(family) + std::to_string(k) + " not in report");
    return e->preserved;
}

std::optional<std::string> inclusion_violation(const ClassificationReport & report)
{
    // (stronger, weaker): preserved by the stronger operation implies
    // preserved by the weaker one
    std::vector<std::pair<const ClassificationEntry *, const ClassificationEntry *>> implications;
    auto at = [&](OpFamily f, int k) { return report.find(f, k); };
    for (int k = 3; k <= report.max_level; ++k) {
        implications.push_back({at(OpFamily::near, k), at(OpFamily::edge, k)});
        implications.push_back({at(OpFamily::edge, k), at(OpFamily::universal, k)});
        if (k == 3)
            implications.push_back({at(OpFamily::edge, 2), at(OpFamily::edge, 3)});
        if (k > 3) {
            implications.push_back({at(OpFamily::near, k - 1), at(OpFamily::near, k)});
            implications.push_back({at(OpFamily::edge, k - 1), at(OpFamily::edge, k)});
            implications.push_back({at(OpFamily::universal, k - 1), at(OpFamily::universal, k)});
        }
    }
    for (auto [strong, weak] : implications) {
        if (!strong || !weak)
            continue;
        if (strong->preserved && !weak->preserved)
            return "preserved by " + strong->op_name() + " but not by " + weak->op_name();
    }
    return std::nullopt;
}

ClassificationReport classify_relation(const Relation & r, int max_level)
{
    if (r.domain_size() != 2)
        throw std::invalid_argument("classification is defined for Boolean relations");
    if (max_level < 2)
        throw std::invalid_argument("max_level must be at least 2");
    if (max_level > 6)
        throw InfeasibleError("universal_k with k > 6 is out of range");
    ClassificationReport report;
    report.max_level = max_level;
    auto run = [&](OpFamily family, int k, const PartialOp & op) {
        ClassificationEntry e{family, k, false, preserves(op, r)};
        e.preserved = !e.witness;
        report.entries.push_back(std::move(e));
    };
    run(OpFamily::edge, 2, make_edge(2));
    for (int k = 3; k <= max_level; ++k) {
        run(OpFamily::near, k, make_near(k));
        run(OpFamily::edge, k, make_edge(k));
        run(OpFamily::universal, k, make_universal(k));
    }
    if (auto v = inclusion_violation(report))
        throw std::logic_error("classification violates the hierarchy: " + *v);
    return report;
}

bool is_k_decomposable(const Relation & r, int k)
{
    const int n = r.arity();
    if (k >= n)
        return true;
    if (n > 24)
        throw InfeasibleError("decomposability check limited to arity 24");
    const int size = k < 0 ? 0 : k;
    const int d = r.domain_size();
    // all index sets of exactly `size` positions suffice: if a smaller set
    // separates t, so does every superset
    std::vector<std::vector<int>> subsets;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != size)
            continue;
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1)
                idx.push_back(i);
        subsets.push_back(std::move(idx));
    }
    std::vector<Relation> projections;
    for (auto & idx : subsets)
        projections.push_back(project(r, idx));
    Tuple sub;
    for (Code c = 0; c < r.table_size(); ++c) {
        if (r.contains(c))
            continue;
        Tuple t = decode(c, d, n);
        bool separated = false;
        for (std::size_t s = 0; s < subsets.size() && !separated; ++s) {
            sub.resize(subsets[s].size());
            for (std::size_t j = 0; j < sub.size(); ++j)
                sub[j] = t[subsets[s][j]];
            separated = !projections[s].contains(encode(sub, d));
        }
        if (!separated)
            return false;
    }
    return true;
}

int block_sensitivity(const Relation & r)
{
    if (r.domain_size() != 2)
        throw std::invalid_argument("block sensitivity needs a Boolean relation");
    const int n = r.arity();
    if (n > 12)
        throw InfeasibleError("block sensitivity limited to arity 12");
    const std::uint32_t full = (1u << n) - 1;
    const std::size_t states = std::size_t(1) << n;
    std::vector<char> sensitive(states), has(states);
    std::vector<std::vector<std::uint32_t>> by_low(n);
    std::vector<signed char> memo(states);
    int best_overall = 0;

    for (std::uint32_t t = 0; t <= full; ++t) {
        const bool ft = r.contains(Code(t));
        for (std::uint32_t b = 0; b <= full; ++b)
            sensitive[b] = r.contains(Code(t ^ b)) != ft;
        for (auto & v : by_low)
            v.clear();
        for (std::uint32_t b = 0; b <= full; ++b) {
            bool sub = false;
            for (std::uint32_t rest = b; rest; rest &= rest - 1)
                sub = sub || has[b & ~(rest & -rest)];
            has[b] = sensitive[b] || sub;
            if (sensitive[b] && !sub && b)
                by_low[std::countr_zero(b)].push_back(b);
        }
        std::fill(memo.begin(), memo.end(), -1);
        // best(avail): largest packing of minimal sensitive blocks inside avail
        auto best = [&](auto && self, std::uint32_t avail) -> int {
            if (!avail)
                return 0;
            if (memo[avail] >= 0)
                return memo[avail];
            const int low = std::countr_zero(avail);
            int result = self(self, avail & (avail - 1));
            for (auto block : by_low[low])
                if ((block & avail) == block)
                    result = std::max(result, 1 + self(self, avail & ~block));
            memo[avail] = static_cast<signed char>(result);
            return result;
        };
        best_overall = std::max(best_overall, best(best, full));
        if (best_overall == n)
            break;
    }
    return best_overall;
}

bool is_rectangular(const Relation & r)
{
    if (r.arity() != 2)
        throw std::invalid_argument("rectangularity is defined for binary relations");
    const int d = r.domain_size();
    auto in = [&](int a, int b) { return r.contains(Code(a) * Code(d) + Code(b)); };
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            if (!in(a, b))
                continue;
            for (int a2 = 0; a2 < d; ++a2) {
                if (!in(a2, b))
                    continue;
                for (int b2 = 0; b2 < d; ++b2)
                    if (in(a2, b2) && !in(a, b2))
                        return false;
            }
        }
    return true;
}

} // namespace psdi

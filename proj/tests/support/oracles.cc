#include "oracles.hh"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

int op_arity(Family f, int k)
{
    switch (f) {
    case Family::near:
        return k;
    case Family::edge:
        return k + 1;
    case Family::universal:
        return (1 << k) - 1;
    }
    return 0;
}

namespace {

bool constant(const Tuple & c)
{
    return std::all_of(c.begin(), c.end(), [&](int v) { return v == c[0]; });
}

// the edge rows written out: x x y y .. y, x y x y .. y, then a single x at
// position 3, 4, ..., k (0-based)
std::vector<std::vector<bool>> edge_rows(int k)
{
    std::vector<std::vector<bool>> rows; // true = x
    std::vector<bool> r(k + 1, false);
    r[0] = r[1] = true;
    rows.push_back(r);
    r.assign(k + 1, false);
    r[0] = r[2] = true;
    rows.push_back(r);
    for (int i = 3; i <= k; ++i) {
        r.assign(k + 1, false);
        r[i] = true;
        rows.push_back(r);
    }
    return rows;
}

} // namespace

std::optional<int> apply_column(Family f, int k, const Tuple & c)
{
    if (int(c.size()) != op_arity(f, k))
        throw std::invalid_argument("column length");
    if (constant(c))
        return c[0];
    switch (f) {
    case Family::near: {
        for (int v = 0; v < 2; ++v)
            if (std::count(c.begin(), c.end(), v) == k - 1)
                return v;
        return std::nullopt;
    }
    case Family::edge:
        for (auto & row : edge_rows(k))
            for (int x = 0; x < 2; ++x) {
                bool match = true;
                for (int j = 0; j <= k && match; ++j)
                    match = c[j] == (row[j] ? x : 1 - x);
                if (match)
                    return 1 - x;
            }
        return std::nullopt;
    case Family::universal:
        for (int a = 0; a < k; ++a)
            for (int x = 0; x < 2; ++x) {
                bool match = true;
                for (int j = 0; j < int(c.size()) && match; ++j)
                    match = c[j] == (((j + 1) >> a & 1) ? 1 - x : x);
                if (match)
                    return x;
            }
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

/// Calls visit on every sequence of `len` member tuples.
bool all_sequences(const Relation & r, int len, const std::function<bool(const std::vector<const Tuple *> &)> & visit)
{
    auto members = r.tuples();
    if (members.empty())
        return true;
    std::vector<std::size_t> idx(len, 0);
    std::vector<const Tuple *> seq(len);
    for (;;) {
        for (int i = 0; i < len; ++i)
            seq[i] = &members[idx[i]];
        if (!visit(seq))
            return false;
        int i = len - 1;
        while (i >= 0 && ++idx[i] == members.size())
            idx[i--] = 0;
        if (i < 0)
            return true;
    }
}

bool preserves_with(const Relation & r, int len, const std::function<std::optional<int>(const Tuple &)> & op)
{
    Tuple col(len), out(r.arity());
    return all_sequences(r, len, [&](const std::vector<const Tuple *> & seq) {
        for (int i = 0; i < r.arity(); ++i) {
            for (int j = 0; j < len; ++j)
                col[j] = (*seq[j])[i];
            auto v = op(col);
            if (!v)
                return true; // undefined somewhere: nothing to check
            out[i] = *v;
        }
        return r.contains(out);
    });
}

} // namespace

bool preserves(Family f, int k, const Relation & r)
{
    if (r.domain_size() != 2)
        throw std::invalid_argument("Boolean only");
    return preserves_with(r, op_arity(f, k), [&](const Tuple & c) { return apply_column(f, k, c); });
}

bool maltsev_preserves(const Relation & r)
{
    return preserves_with(r, 3, [](const Tuple & c) -> std::optional<int> {
        if (c[0] == c[1])
            return c[2];
        if (c[1] == c[2])
            return c[0];
        return std::nullopt;
    });
}

bool near3_preserves(const Relation & r)
{
    return preserves_with(r, 3, [](const Tuple & c) -> std::optional<int> {
        if (c[0] == c[1] || c[0] == c[2])
            return c[0];
        if (c[1] == c[2])
            return c[1];
        return std::nullopt;
    });
}

std::optional<Tuple> solve(const psdi::Instance & inst)
{
    const int n = inst.n_vars, d = inst.domain_size;
    Tuple a(n, 0);
    for (;;) {
        bool ok = true;
        for (auto & c : inst.constraints) {
            Tuple sub;
            for (int v : c.scope)
                sub.push_back(a[v]);
            const auto & e = inst.relations[c.relation];
            ok = e.relation ? e.relation->contains(sub) : e.oracle->contains(sub);
            if (!ok)
                break;
        }
        if (ok)
            return a;
        int i = n - 1;
        while (i >= 0 && ++a[i] == d)
            a[i--] = 0;
        if (i < 0)
            return std::nullopt;
    }
}

std::pair<Tuple, Tuple> biclique_representatives(const Relation & r, const std::vector<int> & first,
                                                 const std::vector<int> & second, const Tuple & side)
{
    // vertices: ("L", tuple) and ("R", tuple); union-find over a map
    std::map<std::pair<int, Tuple>, std::pair<int, Tuple>> parent;
    std::function<std::pair<int, Tuple>(const std::pair<int, Tuple> &)> find = [&](const std::pair<int, Tuple> & v) {
        auto it = parent.find(v);
        if (it == parent.end()) {
            parent[v] = v;
            return v;
        }
        if (it->second == v)
            return v;
        auto root = find(it->second);
        parent[v] = root;
        return root;
    };
    for (auto & t : r.tuples()) {
        Tuple l, rr;
        for (int i : first)
            l.push_back(t[i]);
        for (int i : second)
            rr.push_back(t[i]);
        auto a = find({0, l}), b = find({1, rr});
        if (a != b)
            parent[a] = b;
    }
    auto root = find({0, side});
    std::optional<Tuple> best_l, best_r;
    for (auto & [v, _] : std::map(parent)) {
        if (find(v) != root)
            continue;
        auto & best = v.first == 0 ? best_l : best_r;
        if (!best || v.second < *best)
            best = v.second;
    }
    if (!best_l || !best_r)
        throw std::invalid_argument("side assignment not in the projection");
    return {*best_l, *best_r};
}

bool rectangular(const Relation & r)
{
    if (r.arity() != 2)
        throw std::invalid_argument("binary only");
    auto members = r.tuples();
    std::map<int, std::pair<Tuple, Tuple>> comp; // left value -> component
    for (auto & t : members)
        if (!comp.count(t[0]))
            comp[t[0]] = biclique_representatives(r, {0}, {1}, {t[0]});
    // each component must contain every left x right pair
    for (auto & t : members)
        for (auto & u : members)
            if (comp[t[0]] == comp[u[0]] && !r.contains(Tuple{t[0], u[1]}))
                return false;
    return true;
}

std::vector<Tuple> minimal_tuples(const Relation & r)
{
    auto members = r.tuples();
    std::vector<Tuple> out;
    for (auto & t : members) {
        bool minimal = true;
        for (auto & u : members) {
            if (u == t)
                continue;
            bool below = true;
            for (std::size_t i = 0; i < t.size() && below; ++i)
                below = u[i] <= t[i];
            if (below) {
                minimal = false;
                break;
            }
        }
        if (minimal)
            out.push_back(t);
    }
    std::stable_sort(out.begin(), out.end(), [](const Tuple & a, const Tuple & b) {
        return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
    });
    return out;
}

int block_sensitivity(const Relation & r)
{
    const int n = r.arity();
    int best = 0;
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        const bool fx = r.contains(psdi::Code{x});
        std::vector<std::uint32_t> blocks;
        for (std::uint32_t b = 1; b < (1u << n); ++b)
            if (r.contains(psdi::Code{x ^ b}) != fx)
                blocks.push_back(b);
        std::function<int(std::size_t, std::uint32_t)> pack = [&](std::size_t from, std::uint32_t used) {
            int m = 0;
            for (std::size_t i = from; i < blocks.size(); ++i)
                if (!(blocks[i] & used))
                    m = std::max(m, 1 + pack(i + 1, used | blocks[i]));
            return m;
        };
        best = std::max(best, pack(0, 0));
    }
    return best;
}

bool k_decomposable(const Relation & r, int k)
{
    const int n = r.arity();
    if (k >= n)
        return true;
    std::vector<int> pick(n, 0);
    std::fill(pick.end() - k, pick.end(), 1);
    std::vector<Relation> projections;
    std::vector<std::vector<int>> subsets;
    do {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (pick[i])
                idx.push_back(i);
        projections.push_back(psdi::project(r, idx));
        subsets.push_back(idx);
    } while (std::next_permutation(pick.begin(), pick.end()));
    for (psdi::Code c = 0; c < r.table_size(); ++c) {
        auto t = psdi::decode(c, r.domain_size(), n);
        bool all = true;
        for (std::size_t s = 0; s < subsets.size() && all; ++s) {
            Tuple sub;
            for (int i : subsets[s])
                sub.push_back(t[i]);
            all = projections[s].contains(sub);
        }
        if (all != r.contains(c))
            return false;
    }
    return true;
}

bool has_3_sunflower(const std::vector<std::uint64_t> & sets)
{
    const std::size_t m = sets.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c) {
                const auto ab = sets[a] & sets[b];
                if (ab == (sets[a] & sets[c]) && ab == (sets[b] & sets[c]))
                    return true;
            }
    return false;
}

std::vector<psdi::Triangle> triangles(const psdi::LabeledTriGraph & g, bool single_label)
{
    std::vector<psdi::Triangle> out;
    for (int u = 0; u < g.size(0); ++u)
        for (int v = 0; v < g.size(1); ++v)
            for (int w = 0; w < g.size(2); ++w) {
                if (!g.has_edge(0, u, 1, v) || !g.has_edge(0, u, 2, w) || !g.has_edge(1, v, 2, w))
                    continue;
                if (single_label &&
                    (g.colour(0, u, 1, v) != g.colour(0, u, 2, w) || g.colour(0, u, 1, v) != g.colour(1, v, 2, w)))
                    continue;
                out.push_back({u, v, w});
            }
    return out;
}

bool subset_sum(const std::vector<std::uint64_t> & weights, std::uint64_t target)
{
    const std::size_t n = weights.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                s += weights[i];
        if (s == target)
            return true;
    }
    return false;
}

std::vector<std::uint64_t> majority_closed_masks(int n)
{
    if (n < 0 || n > 6)
        throw std::invalid_argument("arity 0..6");
    std::vector<std::uint64_t> cur{0, 1}; // arity 0: empty and {()}
    for (int a = 1; a <= n; ++a) {
        const int prev = a - 1, points = 1 << prev;
        // cubes over the previous arity: each variable free, 0 or 1; plus the empty set
        std::vector<std::uint64_t> cubes{0};
        int count = 1;
        for (int i = 0; i < prev; ++i)
            count *= 3;
        for (int c = 0; c < count; ++c) {
            std::uint64_t m = 0;
            for (int u = 0; u < points; ++u) {
                int cc = c;
                bool ok = true;
                for (int i = prev - 1; i >= 0; --i) {
                    const int lit = cc % 3, bit = (u >> (prev - 1 - i)) & 1;
                    cc /= 3;
                    ok = ok && (lit == 0 || (lit == 1 && bit == 0) || (lit == 2 && bit == 1));
                }
                if (ok)
                    m |= std::uint64_t{1} << u;
            }
            cubes.push_back(m);
        }
        std::vector<std::uint64_t> next, opts;
        for (auto r : cur) {
            opts.clear();
            for (auto c : cubes)
                opts.push_back(r & c);
            std::sort(opts.begin(), opts.end());
            opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
            for (auto a0 : opts)
                for (auto a1 : opts) {
                    if ((a0 | a1) != r)
                        continue;
                    // new code = 2u + x, the new variable last
                    std::uint64_t m = 0;
                    for (int u = 0; u < points; ++u) {
                        if (a0 >> u & 1)
                            m |= std::uint64_t{1} << (2 * u);
                        if (a1 >> u & 1)
                            m |= std::uint64_t{1} << (2 * u + 1);
                    }
                    next.push_back(m);
                }
        }
        cur.swap(next);
    }
    return cur;
}

} // namespace oracle

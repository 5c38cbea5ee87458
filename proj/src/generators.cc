#include "psdi/generators.hh"

#include "psdi/partial_op.hh"
#include "psdi/rng.hh"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace psdi {

namespace {

std::vector<int> distinct_vars(Rng & rng, int n, int k)
{
    if (k > n)
        throw std::invalid_argument("scope larger than the variable count");
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    // partial Fisher-Yates
    for (int i = 0; i < k; ++i) {
        int j = i + int(rng.below(std::uint64_t(n - i)));
        std::swap(all[i], all[j]);
    }
    all.resize(k);
    return all;
}

Relation random_relation(Rng & rng, int d, int arity, double density)
{
    return Relation::from_predicate(d, arity, [&](std::span<const Value>) { return rng.unit() < density; });
}

} // namespace

Cnf gen_ksat_cnf(int n, int m, int k, std::uint64_t seed)
{
    if (n < 1 || m < 0 || k < 1 || k > n)
        throw std::invalid_argument("gen_ksat: need n >= 1, m >= 0, 1 <= k <= n");
    Rng rng(seed);
    Cnf cnf;
    cnf.n_vars = n;
    for (int c = 0; c < m; ++c) {
        std::vector<int> clause;
        for (int v : distinct_vars(rng, n, k))
            clause.push_back(rng.coin() ? v + 1 : -(v + 1));
        cnf.clauses.push_back(std::move(clause));
    }
    return cnf;
}

Instance gen_ksat(int n, int m, int k, std::uint64_t seed)
{
    return cnf_to_instance(gen_ksat_cnf(n, m, k, seed));
}

Instance gen_exact_sat(int n, int m, int k, std::uint64_t seed)
{
    if (n < 1 || m < 0 || k < 1 || k > n)
        throw std::invalid_argument("gen_exact_sat: need n >= 1, m >= 0, 1 <= k <= n");
    Rng rng(seed);
    Instance inst;
    inst.n_vars = n;
    std::vector<int> one{1};
    int rel = inst.add_relation("X" + std::to_string(k), symmetric_relation(k, one), TypeTag::edge2);
    for (int c = 0; c < m; ++c)
        inst.add_constraint(rel, distinct_vars(rng, n, k));
    return inst;
}

Instance gen_linear_mod(int n, int m, int p, std::uint64_t seed, int arity)
{
    if (p < 2 || p > 36)
        throw std::invalid_argument("gen_linear_mod: modulus must be in [2, 36]");
    if (n < arity || arity < 1 || m < 0)
        throw std::invalid_argument("gen_linear_mod: bad sizes");
    Rng rng(seed);
    Instance inst;
    inst.domain_size = p;
    inst.n_vars = n;
    for (int c = 0; c < m; ++c) {
        std::vector<int> a(arity);
        for (auto & x : a)
            x = 1 + int(rng.below(std::uint64_t(p - 1)));
        int b = int(rng.below(std::uint64_t(p)));
        auto r = Relation::from_predicate(p, arity, [&](std::span<const Value> t) {
            long s = 0;
            for (int i = 0; i < arity; ++i)
                s += long(a[i]) * t[i];
            return s % p == b;
        });
        int idx = inst.add_relation("L" + std::to_string(c), std::move(r), TypeTag::edge2);
        inst.add_constraint(idx, distinct_vars(rng, n, arity));
    }
    return inst;
}

Relation gen_poly_relation(int vars, int degree, std::uint64_t seed)
{
    if (vars < 1 || degree < 0)
        throw std::invalid_argument("gen_poly_relation: bad parameters");
    Rng rng(seed);
    std::vector<std::uint32_t> monomials;
    for (std::uint32_t mask = 1; mask < (1u << vars); ++mask)
        if (std::popcount(mask) <= degree && rng.coin())
            monomials.push_back(mask);
    const int constant = rng.coin();
    // bit i of the mask is variable i, i.e. code bit vars-1-i
    return Relation::from_predicate(2, vars, [&](std::span<const Value> t) {
        std::uint32_t x = 0;
        for (int i = 0; i < vars; ++i)
            if (t[i])
                x |= 1u << i;
        int v = constant;
        for (auto mono : monomials)
            v ^= (x & mono) == mono;
        return v == 0;
    });
}

std::vector<int> greedy_sidon_set(int n)
{
    std::vector<int> s;
    std::vector<char> sums(2 * n + 2, 0);
    for (int c = 0; c <= n; ++c) {
        bool ok = !sums[2 * c];
        for (int x : s)
            ok = ok && !sums[x + c];
        if (!ok)
            continue;
        for (int x : s)
            sums[x + c] = 1;
        sums[2 * c] = 1;
        s.push_back(c);
    }
    return s;
}

bool is_sidon_set(const std::vector<int> & s)
{
    std::map<int, int> seen;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i; j < s.size(); ++j)
            if (seen[s[i] + s[j]]++)
                return false;
    return true;
}

Relation gen_sidon_relation(int n)
{
    return symmetric_relation(n, greedy_sidon_set(n));
}

SubsetSumProblem gen_subset_sum(int n, int bits, std::uint64_t seed)
{
    if (n < 1 || bits < 1 || bits > 40)
        throw std::invalid_argument("gen_subset_sum: bad parameters");
    Rng rng(seed);
    SubsetSumProblem p;
    std::uint64_t total = 0;
    for (int i = 0; i < n; ++i) {
        p.weights.push_back(1 + rng.below((std::uint64_t{1} << bits) - 1));
        total += p.weights.back();
    }
    if (rng.coin()) {
        for (auto w : p.weights)
            if (rng.coin())
                p.target += w;
    } else {
        p.target = rng.below(total + 1);
    }
    return p;
}

bool subset_sum_dp(const SubsetSumProblem & p)
{
    std::uint64_t total = std::accumulate(p.weights.begin(), p.weights.end(), std::uint64_t{0});
    if (p.target > total)
        return false;
    if (total > (std::uint64_t{1} << 30))
        throw std::invalid_argument("subset_sum_dp: sums too large");
    std::vector<char> reach(p.target + 1, 0);
    reach[0] = 1;
    for (auto w : p.weights)
        for (std::uint64_t s = p.target + 1; s-- > w;)
            reach[s] = reach[s] || reach[s - w];
    return reach[p.target];
}

Instance gen_binary_csp(int n, int m, int d, double density, std::uint64_t seed)
{
    if (n < 2)
        throw std::invalid_argument("gen_binary_csp: need at least two variables");
    Rng rng(seed);
    Instance inst;
    inst.domain_size = d;
    inst.n_vars = n;
    for (int c = 0; c < m; ++c) {
        int idx = inst.add_relation("B" + std::to_string(c), random_relation(rng, d, 2, density), TypeTag::nu3);
        inst.add_constraint(idx, distinct_vars(rng, n, 2));
    }
    return inst;
}

Instance gen_coloring(int vertices, int edges, int colors, std::uint64_t seed)
{
    if (vertices < 2)
        throw std::invalid_argument("gen_coloring: need at least two vertices");
    Rng rng(seed);
    Instance inst;
    inst.domain_size = colors;
    inst.n_vars = vertices;
    int neq = inst.add_relation("NEQ", equality_relation(colors).complement(), TypeTag::nu3);
    for (int e = 0; e < edges; ++e)
        inst.add_constraint(neq, distinct_vars(rng, vertices, 2));
    return inst;
}

Instance gen_near_instance(int n, int m, int k, double density, std::uint64_t seed)
{
    if (k < 3 || k - 1 > n)
        throw std::invalid_argument("gen_near_instance: need 3 <= k <= n + 1");
    Rng rng(seed);
    Instance inst;
    inst.n_vars = n;
    for (int c = 0; c < m; ++c) {
        int idx = inst.add_relation("N" + std::to_string(c), random_relation(rng, 2, k - 1, density));
        inst.add_constraint(idx, distinct_vars(rng, n, k - 1));
    }
    return inst;
}

std::vector<SymmetricWeightSet> symmetric_edge3_weight_sets(int r)
{
    if (r < 0 || r > 10)
        throw std::invalid_argument("symmetric_edge3_weight_sets: arity out of range");
    static const PartialOp e2 = make_edge(2), e3 = make_edge(3);
    std::vector<SymmetricWeightSet> out;
    for (std::uint32_t mask = 0; mask < (1u << (r + 1)); ++mask) {
        SymmetricWeightSet s{r, {}};
        for (int w = 0; w <= r; ++w)
            if (mask >> w & 1)
                s.weights.push_back(w);
        auto rel = symmetric_relation(s);
        // keep: preserved by edge_3, not by edge_2
        if (preserves(e3, rel) || !preserves(e2, rel))
            continue;
        out.push_back(std::move(s));
    }
    return out;
}

Instance gen_sym3e_instance(int n, int m, std::uint64_t seed)
{
    if (n < 3)
        throw std::invalid_argument("gen_sym3e_instance: need at least three variables");
    Rng rng(seed);
    Instance inst;
    inst.n_vars = n;
    for (int c = 0; c < m; ++c) {
        const std::string name = "R" + std::to_string(c);
        int kind = int(rng.below(3));
        if (kind == 0) {
            // 1-in-k or parity: 2-edge
            int k = rng.range(2, 3);
            std::vector<int> w;
            if (rng.coin()) {
                w = {1};
            } else {
                int parity = int(rng.below(2));
                for (int x = parity; x <= k; x += 2)
                    w.push_back(x);
            }
            inst.add_constraint(inst.add_relation(name, symmetric_relation(k, w), TypeTag::edge2),
                                distinct_vars(rng, n, k));
        } else if (kind == 1) {
            inst.add_constraint(inst.add_relation(name, random_relation(rng, 2, 2, 0.75), TypeTag::nu3),
                                distinct_vars(rng, n, 2));
        } else {
            int r = rng.range(3, std::min(n, 6));
            auto sets = symmetric_edge3_weight_sets(r);
            if (sets.empty())
                throw std::logic_error("no symmetric 3-edge weight set of this arity");
            auto & s = sets[rng.below(sets.size())];
            inst.add_constraint(inst.add_relation(name, symmetric_relation(s), TypeTag::sym_edge3),
                                distinct_vars(rng, n, r));
        }
    }
    return inst;
}

} // namespace psdi

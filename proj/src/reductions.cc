#include "psdi/reductions.hh"

#include "psdi/errors.hh"
#include "psdi/padding.hh"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace psdi {

// --- Subset-Sum ----------------------------------------------------------------

SubsetSumReduction::SubsetSumReduction(std::vector<std::uint64_t> weights, std::uint64_t target, int blocks) :
    weights_(std::move(weights)), target_(target)
{
    const int n = int(weights_.size());
    if (n < 1)
        throw std::invalid_argument("subset-sum reduction: need at least one weight");
    if (blocks < 0)
        throw std::invalid_argument("subset-sum reduction: invalid block count");
    if (blocks == 0)
        blocks = int(std::ceil(std::sqrt(double(n))));
    std::uint64_t largest = 0;
    for (auto w : weights_)
        largest = std::max(largest, w);
    if (int(std::bit_width(largest)) > 3 * n)
        throw std::invalid_argument("subset-sum reduction: weight bit length exceeds 3n");
    std::uint64_t total = 0;
    for (auto w : weights_) {
        if (total + w < total)
            throw std::invalid_argument("subset-sum reduction: weights overflow");
        total += w;
    }
    const int bits = std::max(1, int(std::bit_width(std::max(total, target_))));
    if (bits > 62)
        throw std::invalid_argument("subset-sum reduction: sums exceed 62 bits");
    blocks = std::min(blocks, bits);
    const int width = (bits + blocks - 1) / blocks;
    for (int lo = 0; lo < bits; lo += width)
        bounds_.push_back(lo);
    bounds_.push_back(bits);

    // a block can push at most (its column sum + incoming carry) >> width upward
    const int k = this->blocks();
    max_carry_.assign(k + 1, 0);
    for (int j = 0; j < k; ++j) {
        const int w = bounds_[j + 1] - bounds_[j];
        std::uint64_t sum = max_carry_[j];
        for (auto x : weights_)
            sum += (x >> bounds_[j]) & ((std::uint64_t{1} << w) - 1);
        max_carry_[j + 1] = std::min<std::uint64_t>(std::uint64_t(n), sum >> w);
    }
    max_carry_[k] = 0;
    carries_.assign(k + 1, 0);
}

std::shared_ptr<SubsetSumBlockOracle> SubsetSumReduction::block(int j, std::uint64_t cin, std::uint64_t cout) const
{
    const int lo = bounds_[j], hi = bounds_[j + 1];
    const std::uint64_t target = (target_ >> lo) & ((std::uint64_t{1} << (hi - lo)) - 1);
    return std::make_shared<SubsetSumBlockOracle>(weights_, target, lo, hi, cin, cout);
}

bool SubsetSumReduction::block_feasible(int j) const
{
    return block(j, carries_[j], carries_[j + 1])->query({}, {});
}

bool SubsetSumReduction::advance(int & i)
{
    // odometer step at position i or, on overflow, further left; i ends at
    // the position that was incremented
    for (; i >= 1; --i) {
        if (carries_[i] < max_carry_[i]) {
            ++carries_[i];
            return true;
        }
        carries_[i] = 0;
    }
    return false;
}

std::optional<CarryGuess> SubsetSumReduction::next()
{
    if (done_)
        return std::nullopt;
    const int k = blocks();
    int i = 1;
    auto step_back = [&](int from) {
        i = from;
        return advance(i);
    };
    if (started_) {
        if (!step_back(k - 1)) {
            done_ = true;
            return std::nullopt;
        }
    }
    started_ = true;
    // invariant: blocks 0 .. i-2 accept their carries, c_i is set
    for (;;) {
        if (i == k) {
            if (block_feasible(k - 1))
                break;
            if (!step_back(k - 1)) {
                done_ = true;
                return std::nullopt;
            }
            continue;
        }
        if (block_feasible(i - 1)) {
            ++i;
            if (i < k)
                carries_[i] = 0;
            continue;
        }
        if (!step_back(i)) {
            done_ = true;
            return std::nullopt;
        }
    }
    ++generated_;
    CarryGuess g;
    g.carries = carries_;
    g.instance.n_vars = int(weights_.size());
    std::vector<int> scope(weights_.size());
    std::iota(scope.begin(), scope.end(), 0);
    for (int j = 0; j < k; ++j) {
        int idx = g.instance.add_oracle("B" + std::to_string(j), block(j, carries_[j], carries_[j + 1]),
                                        TypeTag::edge2);
        g.instance.add_constraint(idx, scope);
    }
    return g;
}

SubsetSumOutcome solve_subset_sum_2edge(const std::vector<std::uint64_t> & weights, std::uint64_t target, int blocks)
{
    SubsetSumReduction red(weights, target, blocks);
    SubsetSumOutcome out;
    SolveOptions options;
    options.skip_precheck = true;
    while (auto guess = red.next()) {
        ++out.instances;
        auto rep = solve_2edge_mitm(guess->instance, options);
        out.enumerated_nodes += rep.enumerated_nodes;
        out.oracle_queries += rep.oracle_queries;
        if (!rep.sat())
            continue;
        std::vector<int> chosen;
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            if ((*rep.assignment)[i]) {
                chosen.push_back(int(i));
                sum += weights[i];
            }
        if (sum != target)
            throw std::logic_error("subset-sum reduction produced a selection with the wrong sum");
        out.selection = std::move(chosen);
        out.carries = guess->carries;
        break;
    }
    return out;
}

// --- definitions extracted from witnesses -------------------------------------

Relation materialize_definition(const Relation & r, const QfppDefinition & def)
{
    if (r.domain_size() != 2)
        throw std::invalid_argument("definitions with sign patterns need a Boolean relation");
    const int n = r.arity();
    if (int(def.var_of_position.size()) != n || int(def.constant_of_position.size()) != n ||
        int(def.signs.size()) != n)
        throw std::invalid_argument("definition does not match the relation's arity");
    Tuple x(n);
    return Relation::from_predicate(2, def.new_arity, [&](std::span<const Value> z) {
        for (int i = 0; i < n; ++i) {
            const int v = def.var_of_position[i];
            x[i] = v < 0 ? def.constant_of_position[i] : Value(z[v] ^ Value(def.signs[i]));
        }
        return r.contains(x);
    });
}

namespace {

void check_witness(const Relation & r, const PreservationWitness & w, const PartialOp & op)
{
    for (auto & t : w.tuples)
        if (int(t.size()) != r.arity() || !r.contains(t))
            throw std::invalid_argument("witness invalid: argument tuple not in the relation");
    auto res = apply_columnwise(op, w.tuples);
    if (!res || *res != w.result || r.contains(w.result))
        throw std::invalid_argument("witness invalid: not a violating application of " + op.name());
}

/// Each non-constant column follows one pattern row; the row index becomes
/// the new variable and the result value the sign.
QfppDefinition definition_from_witness(const Relation & r, const PreservationWitness & w,
                                       const PolymorphismPattern & pattern)
{
    const int n = r.arity();
    const int a = int(w.tuples.size());
    QfppDefinition def;
    def.new_arity = int(pattern.rows.size());
    def.var_of_position.assign(n, -1);
    def.constant_of_position.assign(n, 0);
    def.signs.assign(n, false);
    for (int i = 0; i < n; ++i) {
        const Value u = w.result[i];
        std::vector<bool> deviates(a);
        bool constant = true;
        for (int j = 0; j < a; ++j) {
            deviates[j] = w.tuples[j][i] != u;
            constant = constant && !deviates[j];
        }
        if (constant) {
            def.constant_of_position[i] = u;
            continue;
        }
        for (int row = 0; row < int(pattern.rows.size()); ++row) {
            const auto & pr = pattern.rows[row];
            bool match = true;
            for (int j = 0; j < a && match; ++j)
                match = (pr.args[j] != pr.result) == deviates[j];
            if (match) {
                def.var_of_position[i] = row;
                def.signs[i] = u != 0;
                break;
            }
        }
        if (def.var_of_position[i] < 0)
            throw std::invalid_argument("witness invalid: column matches no pattern row");
    }
    return def;
}

int log2_exact(std::size_t x)
{
    if (!std::has_single_bit(x))
        return -1;
    return std::countr_zero(x);
}

} // namespace

QfppDefinition extract_kclause_definition(const Relation & r, const PreservationWitness & w)
{
    if (r.domain_size() != 2)
        throw std::invalid_argument("k-clause extraction needs a Boolean relation");
    const int k = log2_exact(w.tuples.size() + 1);
    if (k < 2 || k > 6)
        throw std::invalid_argument("witness invalid: expected 2^k - 1 tuples with 2 <= k <= 6");
    check_witness(r, w, make_universal(k));
    auto def = definition_from_witness(r, w, universal_pattern(k));
    auto derived = materialize_definition(r, def);
    if (derived.size() + 1 != derived.table_size() || derived.contains(Code{0}))
        throw std::logic_error("extracted definition is not a k-clause");
    return def;
}

Relation extract_symmetric_relation(const Relation & r, const PreservationWitness & w)
{
    if (r.domain_size() != 2)
        throw std::invalid_argument("symmetric extraction needs a Boolean relation");
    const int k = int(w.tuples.size());
    if (k < 3)
        throw std::invalid_argument("witness invalid: near_k needs k >= 3");
    if (k > 6)
        throw std::invalid_argument("symmetric extraction: k! conjunction refused for k > 6");
    check_witness(r, w, make_near(k));
    auto derived = materialize_definition(r, definition_from_witness(r, w, near_pattern(k)));
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<ScopedRelation> defs;
    do {
        defs.push_back({derived, perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto sym = conjoin(defs, k, 2);
    if (!symmetric_weights(sym))
        throw std::logic_error("permutation closure is not symmetric");
    return sym;
}

// --- symmetric weight sets ----------------------------------------------------

namespace {

void shifts(std::vector<SymmetricStep> & script, int count)
{
    for (int i = 0; i < count; ++i)
        script.push_back({SymmetricMode::shift_down, 0});
}

void truncations(std::vector<SymmetricStep> & script, int count)
{
    for (int i = 0; i < count; ++i)
        script.push_back({SymmetricMode::truncate, 0});
}

SymmetricWeightSet range_set(int arity, int lo, int hi)
{
    SymmetricWeightSet s{arity, {}};
    for (int w = lo; w <= hi; ++w)
        s.weights.push_back(w);
    return s;
}

} // namespace

ProgressionAnalysis analyze_symmetric_progressions(const SymmetricWeightSet & s)
{
    ProgressionAnalysis out;
    out.input = s;
    const int n = s.arity;
    std::vector<bool> in(n + 1, false);
    for (int w : s.weights) {
        if (w < 0 || w > n)
            throw std::invalid_argument("weight outside {0..arity}");
        in[w] = true;
    }
    const int count = int(std::count(in.begin(), in.end(), true));
    if (count == 0 || count == n + 1) {
        out.trivial = true;
        return out;
    }
    auto member = [&](int w) { return w >= 0 && w <= n && in[w]; };

    for (int p = 1; p <= n; ++p) {
        for (int a = 0; a <= n; ++a) {
            if (!in[a] || member(a - p))
                continue;
            int len = 0;
            while (member(a + len * p))
                ++len;
            if (len < 2)
                continue;
            Progression prog{a, p, len, a < p && a + len * p > n};
            out.progressions.push_back(prog);
            if (prog.complete)
                continue;
            Derivation d;
            if (a - p >= 0) {
                // a - p is missing: after shifting it becomes weight 0
                shifts(d.script, a - p);
                truncations(d.script, (n - (a - p)) - len * p);
                d.expected = range_set(len, 1, len);
                d.description = "step " + std::to_string(p) + " from " + std::to_string(a) + ": sum >= 1 on " +
                                std::to_string(len) + " variables";
            } else {
                // a + len * p <= n is missing: after shifting it becomes the top
                shifts(d.script, a);
                truncations(d.script, (n - a) - len * p);
                d.expected = range_set(len, 0, len - 1);
                d.description = "step " + std::to_string(p) + " from " + std::to_string(a) + ": sum < " +
                                std::to_string(len) + " on " + std::to_string(len) + " variables";
            }
            if (p > 1)
                d.script.push_back({SymmetricMode::group, p});
            out.derivations.push_back(std::move(d));
        }
    }

    for (int w = 1; w <= n; ++w) {
        if (!in[w] || in[w - 1])
            continue;
        int next = INT_MAX;
        for (int x = w + 1; x <= n; ++x)
            if (in[x]) {
                next = x;
                break;
            }
        const int arity_after = n - w + 1;
        const int k = next == INT_MAX ? arity_after : std::min(next - w, arity_after);
        if (k < 2)
            continue;
        Derivation d;
        shifts(d.script, w - 1);
        truncations(d.script, arity_after - k);
        d.expected = SymmetricWeightSet{k, {1}};
        d.description = "isolated weight " + std::to_string(w) + ": 1-in-" + std::to_string(k);
        out.derivations.push_back(std::move(d));
    }

    // a single complete residue class
    for (int p = 2; p <= n; ++p) {
        const int a = s.weights.front();
        if (a >= p)
            break;
        bool match = true;
        for (int x = 0; x <= n && match; ++x)
            match = in[x] == (x % p == a);
        if (!match)
            continue;
        Derivation d;
        d.expected = SymmetricWeightSet{n, {}};
        for (int x = a; x <= n; x += p)
            d.expected.weights.push_back(x);
        d.description = "sum = " + std::to_string(a) + " (mod " + std::to_string(p) + ")";
        out.derivations.push_back(std::move(d));
    }
    return out;
}

// --- CNF to padded instance ---------------------------------------------------

SethReduction seth_forward_reduction(const Cnf & cnf, std::string_view op_kind, double eps, std::uint64_t seed)
{
    const int n = cnf.n_vars;
    if (n < 1)
        throw std::invalid_argument("seth reduction: need at least one variable");
    SethReduction out;
    const int m = recommended_padding_size(op_kind, n, eps);
    out.pad = random_parity_padding(n, m, seed);
    out.instance.n_vars = n + m;
    std::vector<int> scope(n + m);
    std::iota(scope.begin(), scope.end(), 0);
    for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
        const auto & clause = cnf.clauses[c];
        if (clause.empty())
            throw std::invalid_argument("seth reduction: clause of arity 0");
        std::map<int, Value> excluded_of; // variable -> value falsifying its literal
        bool tautology = false;
        for (int lit : clause) {
            const int v = std::abs(lit) - 1;
            if (lit == 0 || v >= n)
                throw std::invalid_argument("seth reduction: literal out of range");
            const Value bad = lit > 0 ? 0 : 1;
            auto [it, fresh] = excluded_of.emplace(v, bad);
            if (!fresh && it->second != bad)
                tautology = true;
        }
        if (tautology)
            continue;
        Tuple excluded;
        std::vector<int> vars;
        for (auto [v, bad] : excluded_of) {
            vars.push_back(v);
            excluded.push_back(bad);
        }
        auto oracle = std::make_shared<ParityPaddedClauseOracle>(std::move(excluded), std::move(vars), out.pad);
        int idx = out.instance.add_oracle("P" + std::to_string(c), oracle);
        out.instance.add_constraint(idx, scope);
    }
    return out;
}

} // namespace psdi

#include "psdi/solvers.hh"

#include "psdi/errors.hh"
#include "psdi/partial_op.hh"
#include "psdi/rng.hh"
#include "psdi/triangle.hh"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace psdi {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// A constraint restricted to its distinct variables. Repeated scope
/// variables are folded into the relation (a qfpp-definition), so every
/// oracle below sees one position per variable.
struct View {
    int constraint = 0;
    int relation = 0;
    std::vector<int> vars;
    OraclePtr oracle;
    std::optional<Relation> rel;
};

std::vector<View> build_views(const Instance & inst)
{
    inst.validate();
    std::vector<View> views;
    for (std::size_t ci = 0; ci < inst.constraints.size(); ++ci) {
        const auto & c = inst.constraints[ci];
        const auto & entry = inst.relations[c.relation];
        View v;
        v.constraint = int(ci);
        v.relation = c.relation;
        std::vector<int> position_var;
        for (int x : c.scope) {
            auto it = std::find(v.vars.begin(), v.vars.end(), x);
            if (it == v.vars.end()) {
                position_var.push_back(int(v.vars.size()));
                v.vars.push_back(x);
            } else {
                position_var.push_back(int(it - v.vars.begin()));
            }
        }
        if (v.vars.size() == c.scope.size()) {
            v.oracle = entry.oracle;
            v.rel = entry.relation;
        } else {
            Relation base = entry.is_explicit() ? *entry.relation : materialize(*entry.oracle);
            std::vector<ScopedRelation> defs{{base, position_var}};
            v.rel = conjoin(defs, int(v.vars.size()), inst.domain_size);
            v.oracle = std::make_shared<ExplicitOracle>(*v.rel);
        }
        views.push_back(std::move(v));
    }
    return views;
}

class Counter {
public:
    bool ask(const ExtensionOracle & o, std::span<const int> idx, std::span<const Value> vals)
    {
        ++queries;
        return o.query(idx, vals);
    }

    std::uint64_t queries = 0;
};

void require_preserved(const Instance & inst, const std::vector<View> & views, const PartialOp & op,
                       const std::vector<bool> * only = nullptr)
{
    for (std::size_t i = 0; i < views.size(); ++i) {
        if (only && !(*only)[i])
            continue;
        const auto & v = views[i];
        if (!v.rel)
            continue; // oracle-backed: trusted
        if (auto w = preserves(op, *v.rel))
            throw PreconditionError("relation '" + inst.relations[v.relation].name + "' (constraint " +
                                        std::to_string(v.constraint) + ") is not preserved by " + op.name(),
                                    to_string(*w));
    }
}

bool nullary_ok(const std::vector<View> & views, Counter & counter)
{
    for (auto & v : views)
        if (v.vars.empty() && !counter.ask(*v.oracle, {}, {}))
            return false;
    return true;
}

/// Odometer over d^k value vectors, last position fastest (lex order).
bool next_values(Tuple & t, int d)
{
    for (int i = int(t.size()) - 1; i >= 0; --i) {
        if (++t[i] < d)
            return true;
        t[i] = 0;
    }
    return false;
}

void verify_or_throw(const Instance & inst, const SolveReport & r)
{
    if (r.assignment && !check_assignment(inst, *r.assignment))
        throw std::logic_error(r.algorithm + " produced an assignment that does not satisfy the instance");
}

std::vector<int> resolve_order(const Instance & inst, const SolveOptions & options)
{
    if (options.variable_order.empty())
        return degree_order(inst);
    auto order = options.variable_order;
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < inst.n_vars; ++i)
        if (int(sorted.size()) != inst.n_vars || sorted[i] != i)
            throw std::invalid_argument("variable order must be a permutation of all variables");
    return order;
}

} // namespace

std::vector<int> degree_order(const Instance & inst)
{
    std::vector<int> degree(inst.n_vars, 0);
    for (auto & c : inst.constraints) {
        std::vector<int> seen;
        for (int v : c.scope)
            if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
                seen.push_back(v);
                ++degree[v];
            }
    }
    std::vector<int> order(inst.n_vars);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return degree[a] > degree[b]; });
    return order;
}

// --- brute force ---------------------------------------------------------------

SolveReport solve_bruteforce(const Instance & inst)
{
    auto start = Clock::now();
    SolveReport rep;
    rep.algorithm = "brute";
    auto views = build_views(inst);
    const int n = inst.n_vars, d = inst.domain_size;
    double space = std::pow(double(d), double(n));
    if (space > double(kMaxBruteForceAssignments))
        throw InfeasibleError("brute force over " + std::to_string(d) + "^" + std::to_string(n) +
                              " assignments exceeds the guard");
    Counter counter;
    // constraints become checkable once their largest variable is fixed
    std::vector<std::vector<const View *>> ready(n);
    for (auto & v : views)
        if (!v.vars.empty())
            ready[*std::max_element(v.vars.begin(), v.vars.end())].push_back(&v);
    if (!nullary_ok(views, counter)) {
        rep.oracle_queries = counter.queries;
        rep.wall_ms = elapsed_ms(start);
        return rep;
    }
    Assignment a(n, 0);
    Tuple sub;
    std::vector<int> all;
    auto check = [&](const View & v) {
        sub.resize(v.vars.size());
        for (std::size_t j = 0; j < v.vars.size(); ++j)
            sub[j] = a[v.vars[j]];
        ++counter.queries;
        return v.rel ? v.rel->contains(sub) : v.oracle->contains(sub);
    };
    auto dfs = [&](auto && self, int i) -> bool {
        ++rep.enumerated_nodes;
        if (i == n)
            return true;
        for (Value x = 0; x < d; ++x) {
            a[i] = x;
            bool ok = true;
            for (auto * v : ready[i])
                if (!check(*v)) {
                    ok = false;
                    break;
                }
            if (ok && self(self, i + 1))
                return true;
        }
        return false;
    };
    if (dfs(dfs, 0))
        rep.assignment = a;
    rep.oracle_queries = counter.queries;
    rep.wall_ms = elapsed_ms(start);
    verify_or_throw(inst, rep);
    return rep;
}

// --- biclique labels -----------------------------------------------------------

BicliqueLabel biclique_label(const ExtensionOracle & oracle, std::span<const int> first, std::span<const int> second,
                             std::span<const Value> side, std::uint64_t * queries)
{
    if (side.size() != first.size())
        throw std::invalid_argument("biclique_label: side assignment has the wrong length");
    const int d = oracle.domain_size();
    auto ask = [&](const std::vector<int> & idx, const std::vector<Value> & vals) {
        if (queries)
            ++*queries;
        return oracle.query(idx, vals);
    };
    std::vector<int> idx(first.begin(), first.end());
    std::vector<Value> vals(side.begin(), side.end());
    BicliqueLabel label;
    // lex-min neighbour on the second side
    for (int pos : second) {
        idx.push_back(pos);
        vals.push_back(0);
        bool found = false;
        for (Value x = 0; x < d && !found; ++x) {
            vals.back() = x;
            found = ask(idx, vals);
        }
        if (!found)
            throw std::invalid_argument("biclique_label: side assignment does not extend into the relation");
        label.t0.push_back(vals.back());
    }
    // lex-min re-completion of the first side against t0
    idx.assign(second.begin(), second.end());
    vals = label.t0;
    for (int pos : first) {
        idx.push_back(pos);
        vals.push_back(0);
        bool found = false;
        for (Value x = 0; x < d && !found; ++x) {
            vals.back() = x;
            found = ask(idx, vals);
        }
        if (!found)
            throw std::logic_error("biclique_label: no first-side completion for a realised neighbour");
        label.s0.push_back(vals.back());
    }
    return label;
}

namespace {

void append_values(std::string & key, const Tuple & t)
{
    for (Value v : t)
        key.push_back(char(v));
}

/// Positions of a view split by which part each variable belongs to.
std::vector<std::vector<int>> positions_by_part(const View & v, const std::vector<int> & part_of, int parts)
{
    std::vector<std::vector<int>> out(parts);
    for (std::size_t p = 0; p < v.vars.size(); ++p)
        out[part_of[v.vars[p]]].push_back(int(p));
    return out;
}

Tuple values_at(const View & v, const std::vector<int> & positions, const Assignment & a)
{
    Tuple t;
    for (int p : positions)
        t.push_back(a[v.vars[p]]);
    return t;
}

} // namespace

// --- 2-edge meet in the middle -------------------------------------------------

SolveReport solve_2edge_mitm(const Instance & inst, const SolveOptions & options)
{
    auto start = Clock::now();
    SolveReport rep;
    rep.algorithm = "mitm2e";
    auto views = build_views(inst);
    const int n = inst.n_vars, d = inst.domain_size;
    if (!options.skip_precheck)
        require_preserved(inst, views, make_edge(2, d));
    auto order = resolve_order(inst, options);
    rep.variable_order = order;
    const int half = (n + 1) / 2;
    std::vector<std::vector<int>> halves(2);
    std::vector<int> part_of(n);
    for (int i = 0; i < n; ++i) {
        part_of[order[i]] = i < half ? 0 : 1;
        halves[part_of[order[i]]].push_back(order[i]);
    }
    for (int h = 0; h < 2; ++h)
        if (std::pow(double(d), double(halves[h].size())) > double(kMaxBruteForceAssignments))
            throw InfeasibleError("half enumeration exceeds the guard");
    Counter counter;
    if (!nullary_ok(views, counter)) {
        rep.oracle_queries = counter.queries;
        rep.wall_ms = elapsed_ms(start);
        return rep;
    }
    std::vector<std::vector<std::vector<int>>> pos(views.size());
    for (std::size_t c = 0; c < views.size(); ++c)
        pos[c] = positions_by_part(views[c], part_of, 2);

    Assignment a(n, 0);
    // computes the join key of the current half assignment, or nothing if a
    // constraint already rejects it
    auto key_of = [&](int h) -> std::optional<std::string> {
        for (std::size_t c = 0; c < views.size(); ++c) {
            if (pos[c][h].empty())
                continue;
            if (!counter.ask(*views[c].oracle, pos[c][h], values_at(views[c], pos[c][h], a)))
                return std::nullopt;
        }
        std::string key;
        for (std::size_t c = 0; c < views.size(); ++c) {
            const bool straddles = !pos[c][0].empty() && !pos[c][1].empty();
            if (!straddles) {
                key.push_back(1); // constraints inside one half carry a fixed token
                continue;
            }
            key.push_back(2);
            const int other = 1 - h;
            auto label = biclique_label(*views[c].oracle, pos[c][h], pos[c][other], values_at(views[c], pos[c][h], a),
                                        &counter.queries);
            if (h == 1)
                std::swap(label.s0, label.t0);
            append_values(key, label.s0);
            append_values(key, label.t0);
        }
        return key;
    };

    std::unordered_map<std::string, Tuple> right;
    {
        Tuple vals(halves[1].size(), 0);
        do {
            ++rep.enumerated_nodes;
            for (std::size_t i = 0; i < vals.size(); ++i)
                a[halves[1][i]] = vals[i];
            if (auto key = key_of(1))
                right.emplace(std::move(*key), vals); // keeps the lex-first
        } while (next_values(vals, d));
    }
    {
        Tuple vals(halves[0].size(), 0);
        do {
            ++rep.enumerated_nodes;
            for (std::size_t i = 0; i < vals.size(); ++i)
                a[halves[0][i]] = vals[i];
            auto key = key_of(0);
            if (!key)
                continue;
            auto it = right.find(*key);
            if (it == right.end())
                continue;
            for (std::size_t i = 0; i < it->second.size(); ++i)
                a[halves[1][i]] = it->second[i];
            rep.assignment = a;
            break;
        } while (next_values(vals, d));
    }
    rep.oracle_queries = counter.queries;
    rep.wall_ms = elapsed_ms(start);
    verify_or_throw(inst, rep);
    return rep;
}

// --- triangle based solvers ----------------------------------------------------

namespace {

struct TriSetup {
    std::array<std::vector<int>, 3> parts; // variables of each part
    std::vector<int> part_of;
    std::array<std::vector<Tuple>, 3> vertices; // surviving partial assignments
};

TriSetup split_thirds(const std::vector<int> & order, int n)
{
    TriSetup s;
    s.part_of.assign(n, 0);
    const int p0 = (n + 2) / 3;
    const int p1 = (n - p0 + 1) / 2;
    for (int i = 0; i < n; ++i) {
        int p = i < p0 ? 0 : (i < p0 + p1 ? 1 : 2);
        s.part_of[order[i]] = p;
        s.parts[p].push_back(order[i]);
    }
    return s;
}

/// Enumerates each part and keeps the assignments every constraint accepts
/// on its projection.
void filter_vertices(TriSetup & s, const std::vector<View> & views, const std::vector<std::vector<std::vector<int>>> & pos,
                     int d, int n, Counter & counter, SolveReport & rep)
{
    Assignment a(n, 0);
    for (int p = 0; p < 3; ++p) {
        if (std::pow(double(d), double(s.parts[p].size())) > double(kMaxBruteForceAssignments))
            throw InfeasibleError("part enumeration exceeds the guard");
        Tuple vals(s.parts[p].size(), 0);
        do {
            ++rep.enumerated_nodes;
            for (std::size_t i = 0; i < vals.size(); ++i)
                a[s.parts[p][i]] = vals[i];
            bool ok = true;
            for (std::size_t c = 0; c < views.size() && ok; ++c)
                if (!pos[c][p].empty())
                    ok = counter.ask(*views[c].oracle, pos[c][p], values_at(views[c], pos[c][p], a));
            if (ok)
                s.vertices[p].push_back(vals);
        } while (next_values(vals, d));
    }
}

void place(const TriSetup & s, int part, int vertex, Assignment & a)
{
    const auto & vals = s.vertices[part][vertex];
    for (std::size_t i = 0; i < vals.size(); ++i)
        a[s.parts[part][i]] = vals[i];
}

/// Pairwise consistency of two vertices over every constraint touching both parts.
bool edge_consistent(const TriSetup & s, const std::vector<View> & views,
                     const std::vector<std::vector<std::vector<int>>> & pos, int pa, int pb, Assignment & a,
                     Counter & counter)
{
    for (std::size_t c = 0; c < views.size(); ++c) {
        if (pos[c][pa].empty() || pos[c][pb].empty())
            continue;
        std::vector<int> idx = pos[c][pa];
        idx.insert(idx.end(), pos[c][pb].begin(), pos[c][pb].end());
        if (!counter.ask(*views[c].oracle, idx, values_at(views[c], idx, a)))
            return false;
    }
    (void)s;
    return true;
}

} // namespace

SolveReport solve_3nu_triangle(const Instance & inst, const SolveOptions & options)
{
    auto start = Clock::now();
    SolveReport rep;
    rep.algorithm = "tri3nu";
    auto views = build_views(inst);
    const int n = inst.n_vars, d = inst.domain_size;
    if (!options.skip_precheck)
        require_preserved(inst, views, make_near(3, d));
    auto order = resolve_order(inst, options);
    rep.variable_order = order;
    Counter counter;
    if (!nullary_ok(views, counter)) {
        rep.oracle_queries = counter.queries;
        rep.wall_ms = elapsed_ms(start);
        return rep;
    }
    auto s = split_thirds(order, n);
    std::vector<std::vector<std::vector<int>>> pos(views.size());
    for (std::size_t c = 0; c < views.size(); ++c)
        pos[c] = positions_by_part(views[c], s.part_of, 3);
    filter_vertices(s, views, pos, d, n, counter, rep);

    LabeledTriGraph g({int(s.vertices[0].size()), int(s.vertices[1].size()), int(s.vertices[2].size())});
    Assignment a(n, 0);
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto & pr : pairs) {
        const int pa = pr[0], pb = pr[1];
        for (int u = 0; u < g.size(pa); ++u) {
            place(s, pa, u, a);
            for (int v = 0; v < g.size(pb); ++v) {
                place(s, pb, v, a);
                if (edge_consistent(s, views, pos, pa, pb, a, counter))
                    g.add_edge(pa, u, pb, v);
            }
        }
    }
    if (auto t = find_triangle(g, TriangleMode::any)) {
        for (int p = 0; p < 3; ++p)
            place(s, p, (*t)[p], a);
        rep.assignment = a;
    }
    rep.oracle_queries = counter.queries;
    rep.wall_ms = elapsed_ms(start);
    verify_or_throw(inst, rep);
    return rep;
}

SymmetricWeightSet two_edge_embedding(const SymmetricWeightSet & s)
{
    const auto & w = s.weights;
    const int n = s.arity;
    if (w.size() <= 1)
        return s;
    const int a = w[0], b = w[1] - w[0];
    SymmetricWeightSet cls{n, {}};
    for (int x = a % b; x <= n; x += b)
        cls.weights.push_back(x);
    if (cls.weights == w)
        return s; // already a complete progression
    if (w.size() == 2 && (a < b || n - w[1] < b))
        return cls;
    throw PreconditionError("weight set is neither a complete progression nor {a, a+b} with a < b (or its dual)");
}

namespace {

SymmetricWeightSet inspect_weights(const ExtensionOracle & o, Counter & counter)
{
    SymmetricWeightSet s{o.arity(), {}};
    std::vector<int> all(o.arity());
    std::iota(all.begin(), all.end(), 0);
    for (int w = 0; w <= o.arity(); ++w) {
        Tuple t(o.arity(), 0);
        std::fill(t.begin(), t.begin() + w, 1);
        if (counter.ask(o, all, t))
            s.weights.push_back(w);
    }
    return s;
}

} // namespace

SolveReport solve_sym3edge(const Instance & inst, const SolveOptions & options)
{
    auto start = Clock::now();
    SolveReport rep;
    rep.algorithm = "sym3e";
    auto views = build_views(inst);
    const int n = inst.n_vars, d = inst.domain_size;
    auto order = resolve_order(inst, options);
    rep.variable_order = order;
    Counter counter;

    // per view: the oracle whose 2-edge labels colour the edges, or null for nu3
    std::vector<OraclePtr> label_oracle(views.size());
    const PartialOp e2 = make_edge(2, d), n3 = make_near(3, d);
    for (std::size_t c = 0; c < views.size(); ++c) {
        const auto & v = views[c];
        const auto & entry = inst.relations[v.relation];
        TypeTag tag = entry.tag;
        const std::string where = "relation '" + entry.name + "' (constraint " + std::to_string(v.constraint) + ")";
        if (tag == TypeTag::none) {
            if (!v.rel)
                throw PreconditionError(where + " is oracle-backed and carries no type tag");
            if (!preserves(e2, *v.rel))
                tag = TypeTag::edge2;
            else if (!preserves(n3, *v.rel))
                tag = TypeTag::nu3;
            else if (d == 2 && symmetric_weights(*v.rel) && !preserves(make_edge(3), *v.rel))
                tag = TypeTag::sym_edge3;
            else
                throw PreconditionError(where + " is in none of the admitted classes");
        } else if (v.rel && !options.skip_precheck) {
            std::optional<PreservationWitness> w;
            if (tag == TypeTag::edge2)
                w = preserves(e2, *v.rel);
            else if (tag == TypeTag::nu3)
                w = preserves(n3, *v.rel);
            else {
                if (d != 2 || !symmetric_weights(*v.rel))
                    throw PreconditionError(where + " is tagged sym-edge3 but is not Boolean symmetric");
                w = preserves(make_edge(3), *v.rel);
            }
            if (w)
                throw PreconditionError(where + " does not match its type tag " + to_string(tag), to_string(*w));
        }
        if (tag == TypeTag::edge2) {
            label_oracle[c] = v.oracle;
        } else if (tag == TypeTag::sym_edge3) {
            if (d != 2)
                throw PreconditionError(where + ": sym-edge3 needs a Boolean domain");
            auto s = v.rel ? *symmetric_weights(*v.rel) : inspect_weights(*v.oracle, counter);
            auto hat = two_edge_embedding(s);
            label_oracle[c] = std::make_shared<SymmetricWeightOracle>(hat);
        }
    }
    if (!nullary_ok(views, counter)) {
        rep.oracle_queries = counter.queries;
        rep.wall_ms = elapsed_ms(start);
        return rep;
    }
    auto s = split_thirds(order, n);
    std::vector<std::vector<std::vector<int>>> pos(views.size());
    for (std::size_t c = 0; c < views.size(); ++c)
        pos[c] = positions_by_part(views[c], s.part_of, 3);
    filter_vertices(s, views, pos, d, n, counter, rep);

    std::map<std::string, int> colour_ids;
    auto intern = [&](std::string key) {
        return colour_ids.emplace(std::move(key), int(colour_ids.size())).first->second;
    };
    // colour of a vertex of part 0 (partition X | Y u Z) or of a pair from
    // parts 1 and 2 (partition Y u Z | X)
    Assignment a(n, 0);
    auto colour_of = [&](bool from_x) {
        std::string key;
        for (std::size_t c = 0; c < views.size(); ++c) {
            if (!label_oracle[c])
                continue;
            std::vector<int> x = pos[c][0], yz = pos[c][1];
            yz.insert(yz.end(), pos[c][2].begin(), pos[c][2].end());
            BicliqueLabel label;
            if (from_x) {
                label = biclique_label(*label_oracle[c], x, yz, values_at(views[c], x, a), &counter.queries);
            } else {
                label = biclique_label(*label_oracle[c], yz, x, values_at(views[c], yz, a), &counter.queries);
                std::swap(label.s0, label.t0);
            }
            key.push_back(char(c & 0xff));
            append_values(key, label.s0);
            append_values(key, label.t0);
        }
        return intern(std::move(key));
    };

    LabeledTriGraph g({int(s.vertices[0].size()), int(s.vertices[1].size()), int(s.vertices[2].size())});
    std::vector<int> x_colour(g.size(0));
    for (int u = 0; u < g.size(0); ++u) {
        place(s, 0, u, a);
        x_colour[u] = colour_of(true);
    }
    for (int pb = 1; pb <= 2; ++pb)
        for (int u = 0; u < g.size(0); ++u) {
            place(s, 0, u, a);
            for (int v = 0; v < g.size(pb); ++v) {
                place(s, pb, v, a);
                if (edge_consistent(s, views, pos, 0, pb, a, counter))
                    g.add_edge(0, u, pb, v, x_colour[u]);
            }
        }
    for (int u = 0; u < g.size(1); ++u) {
        place(s, 1, u, a);
        for (int v = 0; v < g.size(2); ++v) {
            place(s, 2, v, a);
            if (edge_consistent(s, views, pos, 1, 2, a, counter))
                g.add_edge(1, u, 2, v, colour_of(false));
        }
    }
    if (auto t = find_triangle(g, TriangleMode::single_label)) {
        for (int p = 0; p < 3; ++p)
            place(s, p, (*t)[p], a);
        rep.assignment = a;
    }
    rep.oracle_queries = counter.queries;
    rep.wall_ms = elapsed_ms(start);
    verify_or_throw(inst, rep);
    return rep;
}

// --- local search ------------------------------------------------------------

namespace {

/// Minimal members of R as codes (bit r-1-i is position i), by weight then code.
std::vector<Code> minimal_codes(const Relation & r)
{
    if (r.domain_size() != 2)
        throw std::invalid_argument("minimal tuples need a Boolean relation");
    if (r.contains(Code{0}))
        throw std::invalid_argument("minimal tuples: the all-zero tuple is in the relation");
    const Code size = r.table_size();
    // below[x]: some member is a proper-or-equal subset of x
    std::vector<char> below(size, 0);
    std::vector<Code> out;
    for (Code x = 0; x < size; ++x) {
        bool sub = false;
        for (Code rest = x; rest && !sub; rest &= rest - 1)
            sub = below[x & ~(rest & (~rest + 1))];
        const bool in = r.contains(x);
        below[x] = sub || in;
        if (in && !sub)
            out.push_back(x);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](Code a, Code b) { return std::popcount(a) < std::popcount(b); });
    return out;
}

} // namespace

std::vector<Tuple> enumerate_minimal_tuples(const Relation & r, int max_weight)
{
    std::vector<Tuple> out;
    for (Code c : minimal_codes(r))
        if (std::popcount(c) <= max_weight)
            out.push_back(decode(c, 2, r.arity()));
    return out;
}

double schoening_restart_budget(double c, int radius)
{
    if (c <= 0 || radius < 0)
        throw std::invalid_argument("schoening_restart_budget: need c > 0 and radius >= 0");
    return std::pow(2 * c, radius);
}

SolveReport solve_knu_localsearch(const Instance & inst, const LocalSearchOptions & options)
{
    auto start = Clock::now();
    SolveReport rep;
    rep.algorithm = "ls-knu";
    if (inst.domain_size != 2)
        throw PreconditionError("local search needs a Boolean instance");
    auto views = build_views(inst);
    for (auto & v : views)
        if (!v.rel)
            throw PreconditionError("local search needs explicit relations; relation '" +
                                    inst.relations[v.relation].name + "' is oracle-backed");
    if (!options.skip_precheck)
        require_preserved(inst, views, make_near(options.k, 2));
    const int n = inst.n_vars;
    const int radius = options.radius < 0 ? n : options.radius;
    Counter counter;
    if (!nullary_ok(views, counter)) {
        rep.oracle_queries = counter.queries;
        rep.wall_ms = elapsed_ms(start);
        return rep;
    }
    // minimal tuples of R^s, keyed by (view, sign mask)
    std::map<std::pair<std::size_t, Code>, std::vector<Code>> cache;
    Assignment t(n, 0);
    auto code_of = [&](const View & v) {
        Code c = 0;
        for (int x : v.vars)
            c = (c << 1) | Code(t[x]);
        return c;
    };
    auto search = [&](auto && self, int budget) -> bool {
        ++rep.enumerated_nodes;
        const View * bad = nullptr;
        std::size_t bad_index = 0;
        for (std::size_t i = 0; i < views.size(); ++i) {
            if (views[i].vars.empty())
                continue;
            ++counter.queries;
            if (!views[i].rel->contains(code_of(views[i]))) {
                bad = &views[i];
                bad_index = i;
                break;
            }
        }
        if (!bad)
            return true;
        if (budget == 0)
            return false;
        // sign pattern sending the current projection to 0
        const Code s = code_of(*bad);
        auto key = std::make_pair(bad_index, s);
        auto it = cache.find(key);
        if (it == cache.end()) {
            SignPattern sp(bad->vars.size());
            for (std::size_t j = 0; j < sp.size(); ++j)
                sp[j] = (s >> (sp.size() - 1 - j)) & 1;
            it = cache.emplace(key, minimal_codes(apply_sign_pattern(*bad->rel, sp))).first;
        }
        const int r = int(bad->vars.size());
        for (Code m : it->second) {
            const int w = std::popcount(m);
            if (w > budget)
                break;
            for (int j = 0; j < r; ++j)
                if (m >> (r - 1 - j) & 1)
                    t[bad->vars[j]] ^= 1;
            bool found = self(self, budget - w);
            if (found)
                return true;
            for (int j = 0; j < r; ++j)
                if (m >> (r - 1 - j) & 1)
                    t[bad->vars[j]] ^= 1;
        }
        return false;
    };
    Rng rng(options.seed);
    for (int attempt = 0; attempt < std::max(1, options.restarts); ++attempt) {
        if (attempt == 0 && options.first_start) {
            if (int(options.first_start->size()) != n)
                throw std::invalid_argument("start tuple has the wrong length");
            t = *options.first_start;
        } else {
            for (auto & x : t)
                x = rng.coin();
        }
        if (search(search, radius)) {
            rep.assignment = t;
            break;
        }
    }
    // with radius >= n every solution is in reach of a single run
    rep.complete = rep.assignment.has_value() || radius >= n;
    rep.oracle_queries = counter.queries;
    rep.wall_ms = elapsed_ms(start);
    verify_or_throw(inst, rep);
    return rep;
}

} // namespace psdi

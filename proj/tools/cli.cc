#include "cli.hh"

#include "psdi/classify.hh"
#include "psdi/errors.hh"
#include "psdi/generators.hh"
#include "psdi/instance.hh"
#include "psdi/padding.hh"
#include "psdi/reductions.hh"
#include "psdi/solvers.hh"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace psdi::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string join_values(const Tuple & t)
{
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(t[i]);
    }
    return s;
}

// --- classify ------------------------------------------------------------------

struct ClassifyArgs {
    std::string in;
    std::string tuples;
    int arity = -1;
    int domain = 2;
    int max_level = 4;
    bool json = false;
};

json witness_json(const PreservationWitness & w)
{
    json j;
    j["tuples"] = json::array();
    for (auto & t : w.tuples)
        j["tuples"].push_back(format_tuple(t));
    j["result"] = format_tuple(w.result);
    return j;
}

int cmd_classify(const ClassifyArgs & a, std::ostream & out)
{
    std::vector<std::pair<std::string, Relation>> rels;
    if (!a.tuples.empty()) {
        if (a.arity < 0)
            throw std::invalid_argument("--arity is required with --tuples");
        std::vector<Tuple> ts;
        std::istringstream ss(a.tuples);
        for (std::string tok; ss >> tok;)
            ts.push_back(parse_tuple(tok, a.domain, a.arity));
        rels.emplace_back("R", make_relation(a.domain, a.arity, ts));
    } else {
        auto inst = parse_instance(read_file(a.in));
        for (auto & e : inst.relations)
            if (e.is_explicit())
                rels.emplace_back(e.name, *e.relation);
    }
    json report = json::array();
    for (auto & [name, r] : rels) {
        json jr;
        jr["name"] = name;
        jr["arity"] = r.arity();
        jr["domain"] = r.domain_size();
        jr["size"] = r.size();
        json ops = json::array();
        auto add = [&](const std::string & op, const std::optional<PreservationWitness> & w) {
            json jo;
            jo["op"] = op;
            jo["preserved"] = !w;
            if (w)
                jo["witness"] = witness_json(*w);
            ops.push_back(jo);
        };
        if (r.domain_size() == 2) {
            auto rep = classify_relation(r, a.max_level);
            for (auto & e : rep.entries)
                add(e.op_name(), e.witness);
            if (r.arity() <= 12)
                jr["block_sensitivity"] = block_sensitivity(r);
        } else {
            add("edge2", preserves(make_edge(2, r.domain_size()), r));
            add("near3", preserves(make_near(3, r.domain_size()), r));
        }
        jr["ops"] = ops;
        report.push_back(jr);
    }
    if (a.json) {
        out << report.dump(2) << "\n";
        return kExitOk;
    }
    for (auto & jr : report) {
        out << "relation " << jr["name"].get<std::string>() << " (arity " << jr["arity"] << ", domain "
            << jr["domain"] << ", " << jr["size"] << " tuples)\n";
        for (auto & jo : jr["ops"]) {
            out << "  " << jo["op"].get<std::string>() << ": " << (jo["preserved"].get<bool>() ? "yes" : "no");
            if (jo.contains("witness")) {
                out << "  f(";
                bool first = true;
                for (auto & t : jo["witness"]["tuples"]) {
                    out << (first ? "" : ",") << t.get<std::string>();
                    first = false;
                }
                out << ") = " << jo["witness"]["result"].get<std::string>();
            }
            out << "\n";
        }
        if (jr.contains("block_sensitivity"))
            out << "  block sensitivity: " << jr["block_sensitivity"] << "\n";
    }
    return kExitOk;
}

// --- solve ---------------------------------------------------------------------

struct SolveArgs {
    std::string in;
    std::string algo = "brute";
    int radius = -1;
    int restarts = 1;
    int k = 3;
    std::uint64_t seed = 1;
    bool skip_precheck = false;
    bool json = false;
};

SolveReport dispatch(const Instance & inst, const SolveArgs & a)
{
    SolveOptions options;
    options.skip_precheck = a.skip_precheck;
    if (a.algo == "brute")
        return solve_bruteforce(inst);
    if (a.algo == "mitm2e")
        return solve_2edge_mitm(inst, options);
    if (a.algo == "tri3nu")
        return solve_3nu_triangle(inst, options);
    if (a.algo == "sym3e")
        return solve_sym3edge(inst, options);
    if (a.algo == "ls-knu") {
        LocalSearchOptions ls;
        ls.k = a.k;
        ls.radius = a.radius;
        ls.restarts = a.restarts;
        ls.seed = a.seed;
        ls.skip_precheck = a.skip_precheck;
        return solve_knu_localsearch(inst, ls);
    }
    throw std::invalid_argument("unknown algorithm '" + a.algo + "'");
}

int cmd_solve(const SolveArgs & a, std::ostream & out)
{
    auto inst = read_instance_file(a.in);
    auto rep = dispatch(inst, a);
    const char * verdict = rep.sat() ? "SAT" : (rep.complete ? "UNSAT" : "UNKNOWN");
    if (a.json) {
        json j;
        j["algorithm"] = rep.algorithm;
        j["verdict"] = verdict;
        if (rep.assignment)
            j["assignment"] = *rep.assignment;
        j["oracle_queries"] = rep.oracle_queries;
        j["enumerated_nodes"] = rep.enumerated_nodes;
        j["variable_order"] = rep.variable_order;
        out << j.dump(2) << "\n";
    } else {
        out << verdict;
        if (rep.assignment && !rep.assignment->empty())
            out << ' ' << join_values(*rep.assignment);
        out << "\n";
        out << "QUERIES " << rep.oracle_queries << "\n";
        out << "NODES " << rep.enumerated_nodes << "\n";
    }
    if (rep.sat())
        return kExitSat;
    return rep.complete ? kExitUnsat : kExitOk;
}

// --- pad -------------------------------------------------------------------------

struct PadArgs {
    std::string op = "edge2";
    int n = 0;
    double eps = 0.25;
    int m = -1;
    std::uint64_t seed = 1;
    std::string verify;
    bool json = false;
};

int cmd_pad(const PadArgs & a, std::ostream & out)
{
    auto op = parse_op(a.op, 2);
    const int m = a.m >= 0 ? a.m : recommended_padding_size(op, a.n, a.eps);
    auto spec = random_parity_padding(a.n, m, a.seed);
    std::optional<PaddingReport> report;
    if (a.verify == "exact") {
        report = verify_universal_padding(op, spec);
    } else if (a.verify.rfind("sample:", 0) == 0) {
        report = verify_universal_padding(op, spec, std::stoull(a.verify.substr(7)), a.seed);
    } else if (!a.verify.empty()) {
        throw std::invalid_argument("--verify must be 'exact' or 'sample:N'");
    }
    if (a.json) {
        json j;
        j["op"] = op.name();
        j["n"] = a.n;
        j["m"] = m;
        j["seed"] = a.seed;
        j["survival"] = survival_probability(op);
        j["constant"] = padding_constant(op);
        j["parity_sets"] = spec.parity_sets;
        if (report) {
            j["verdict"] = to_string(report->verdict);
            j["nonprojective_remaining"] = report->nonprojective_remaining.str();
        }
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "op " << op.name() << " n " << a.n << " m " << m << " seed " << a.seed << "\n";
    out << "constant " << padding_constant(op) << " survival " << survival_probability(op) << "\n";
    for (auto & set : spec.parity_sets) {
        for (std::size_t i = 0; i < set.size(); ++i)
            out << (i ? "," : "") << set[i];
        out << "\n";
    }
    if (report)
        out << "universal " << to_string(report->verdict) << " (non-projective remaining "
            << report->nonprojective_remaining << (report->exact ? "" : " in samples") << ")\n";
    return kExitOk;
}

// --- reduce ----------------------------------------------------------------------

struct SubsetSumArgs {
    std::string weights;
    std::uint64_t target = 0;
    int blocks = 0;
    bool solve = false;
};

int cmd_reduce_subsetsum(const SubsetSumArgs & a, std::ostream & out)
{
    std::vector<std::uint64_t> weights;
    std::istringstream ss(read_file(a.weights));
    for (std::uint64_t w; ss >> w;)
        weights.push_back(w);
    if (!ss.eof())
        throw std::invalid_argument("weights file must contain non-negative integers");
    if (a.solve) {
        auto res = solve_subset_sum_2edge(weights, a.target, a.blocks);
        out << (res.selection ? "SAT" : "UNSAT") << "\n";
        if (res.selection) {
            out << "selection";
            for (int i : *res.selection)
                out << ' ' << i;
            out << "\ncarries";
            for (auto c : res.carries)
                out << ' ' << c;
            out << "\n";
        }
        out << "INSTANCES " << res.instances << "\nQUERIES " << res.oracle_queries << "\nNODES "
            << res.enumerated_nodes << "\n";
        return res.selection ? kExitSat : kExitUnsat;
    }
    SubsetSumReduction red(weights, a.target, a.blocks);
    out << "blocks " << red.blocks() << " bounds";
    for (int b : red.bounds())
        out << ' ' << b;
    out << "\n";
    while (auto g = red.next()) {
        out << "# carries";
        for (auto c : g->carries)
            out << ' ' << c;
        out << "\n" << serialize_instance(g->instance);
    }
    return kExitOk;
}

struct SethArgs {
    std::string cnf;
    std::string op = "edge2";
    double eps = 0.25;
    std::uint64_t seed = 1;
};

int cmd_reduce_seth(const SethArgs & a, std::ostream & out)
{
    auto red = seth_forward_reduction(parse_dimacs(read_file(a.cnf)), a.op, a.eps, a.seed);
    out << serialize_instance(red.instance);
    return kExitOk;
}

// --- gen ---------------------------------------------------------------------------

struct GenArgs {
    std::string family;
    int n = 10, m = 20, k = 3, d = 3, bits = 12;
    double density = 0.5;
    std::uint64_t seed = 1;
    std::string from_dimacs;
};

Instance generate(const std::string & family, int n, int m, int k, int d, double density, std::uint64_t seed)
{
    if (family == "ksat")
        return gen_ksat(n, m, k, seed);
    if (family == "xsat")
        return gen_exact_sat(n, m, k, seed);
    if (family == "linear")
        return gen_linear_mod(n, m, d, seed, k);
    if (family == "binary")
        return gen_binary_csp(n, m, d, density, seed);
    if (family == "coloring")
        return gen_coloring(n, m, d, seed);
    if (family == "near")
        return gen_near_instance(n, m, k, density, seed);
    if (family == "sym3e")
        return gen_sym3e_instance(n, m, seed);
    throw std::invalid_argument("unknown family '" + family + "'");
}

int cmd_gen(const GenArgs & a, std::ostream & out)
{
    if (!a.from_dimacs.empty()) {
        out << serialize_instance(cnf_to_instance(parse_dimacs(read_file(a.from_dimacs))));
        return kExitOk;
    }
    if (a.family == "subsetsum") {
        auto p = gen_subset_sum(a.n, a.bits, a.seed);
        for (std::size_t i = 0; i < p.weights.size(); ++i)
            out << (i ? " " : "") << p.weights[i];
        out << "\ntarget " << p.target << "\n";
        return kExitOk;
    }
    if (a.family == "cnf") {
        out << format_dimacs(gen_ksat_cnf(a.n, a.m, a.k, a.seed));
        return kExitOk;
    }
    out << serialize_instance(generate(a.family, a.n, a.m, a.k, a.d, a.density, a.seed));
    return kExitOk;
}

// --- bench -------------------------------------------------------------------------

struct BenchArgs {
    std::string algo = "mitm2e";
    std::string family;
    int n_min = 8, n_max = 16, seeds = 3, d = 3, k = 3;
    double ratio = 1.0, density = 0.5;
    std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs & a, std::ostream & out)
{
    std::string family = a.family;
    if (family.empty()) {
        if (a.algo == "mitm2e")
            family = "xsat";
        else if (a.algo == "tri3nu")
            family = "binary";
        else if (a.algo == "sym3e")
            family = "sym3e";
        else
            family = "ksat";
    }
    out << "n,algo,nodes,queries,millis\n";
    for (int n = a.n_min; n <= a.n_max; ++n)
        for (int s = 0; s < a.seeds; ++s) {
            const int m = std::max(1, int(a.ratio * n));
            auto inst = generate(family, n, m, a.k, a.d, a.density, a.seed + std::uint64_t(s) * 7919 + n);
            SolveArgs sa;
            sa.algo = a.algo;
            sa.k = a.k + 1;
            sa.seed = a.seed + s;
            auto rep = dispatch(inst, sa);
            out << n << ',' << rep.algorithm << ',' << rep.enumerated_nodes << ',' << rep.oracle_queries << ','
                << rep.wall_ms << "\n";
        }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"psdi-sat: partial self-dual polymorphisms, classification and exponential-time CSP solvers"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads (commands currently run single-threaded)")
        ->check(CLI::PositiveNumber);

    std::function<int()> action;

    ClassifyArgs ca;
    auto * classify = app.add_subcommand("classify", "check a relation against edge_2 and near/edge/universal_k");
    auto * in_opt = classify->add_option("--in", ca.in, "instance file; every explicit relation is classified");
    auto * tup_opt = classify->add_option("--tuples", ca.tuples, "inline tuples, e.g. \"001 010 100\"");
    in_opt->excludes(tup_opt);
    classify->add_option("--arity", ca.arity, "arity of the inline relation");
    classify->add_option("--domain", ca.domain, "domain size of the inline relation")->check(CLI::Range(2, 36));
    classify->add_option("--max-level", ca.max_level, "largest k checked")->check(CLI::Range(2, 6));
    classify->add_flag("--json", ca.json, "JSON report");
    classify->callback([&] {
        if (ca.in.empty() && ca.tuples.empty())
            throw CLI::ValidationError("classify", "one of --in or --tuples is required");
        action = [&] { return cmd_classify(ca, out); };
    });

    SolveArgs sa;
    auto * solve = app.add_subcommand("solve", "solve a CSP instance");
    solve->add_option("--in", sa.in, "instance file")->required();
    solve->add_option("--algo", sa.algo, "brute | mitm2e | tri3nu | sym3e | ls-knu")
        ->check(CLI::IsMember({"brute", "mitm2e", "tri3nu", "sym3e", "ls-knu"}));
    solve->add_option("--radius", sa.radius, "local search radius (default n)");
    solve->add_option("--restarts", sa.restarts, "local search restarts")->check(CLI::PositiveNumber);
    solve->add_option("--k", sa.k, "local search: near_k class")->check(CLI::Range(3, 8));
    solve->add_option("--seed", sa.seed, "random seed");
    solve->add_flag("--skip-precheck", sa.skip_precheck, "do not check polymorphism preconditions");
    solve->add_flag("--json", sa.json, "JSON report");
    solve->callback([&] { action = [&] { return cmd_solve(sa, out); }; });

    PadArgs pa;
    auto * pad = app.add_subcommand("pad", "random parity padding for an operation");
    pad->add_option("--op", pa.op, "edge2 | edge3 | nu:k | universal:k");
    pad->add_option("--n", pa.n, "base variable count")->required()->check(CLI::PositiveNumber);
    pad->add_option("--eps", pa.eps, "failure probability target");
    pad->add_option("--m", pa.m, "override the number of pads");
    pad->add_option("--seed", pa.seed, "random seed");
    pad->add_option("--verify", pa.verify, "exact | sample:N");
    pad->add_flag("--json", pa.json, "JSON report");
    pad->callback([&] { action = [&] { return cmd_pad(pa, out); }; });

    auto * reduce = app.add_subcommand("reduce", "run a reduction");
    reduce->require_subcommand(1);
    SubsetSumArgs ssa;
    auto * ss = reduce->add_subcommand("subsetsum", "Subset-Sum to 2-edge instances, one per carry vector");
    ss->add_option("--weights", ssa.weights, "file of whitespace separated weights")->required();
    ss->add_option("--target", ssa.target, "target sum")->required();
    ss->add_option("--blocks", ssa.blocks, "number of bit blocks (default ceil(sqrt(n)))");
    ss->add_flag("--solve", ssa.solve, "solve the instances with the 2-edge solver");
    ss->callback([&] { action = [&] { return cmd_reduce_subsetsum(ssa, out); }; });
    SethArgs sea;
    auto * seth = reduce->add_subcommand("seth", "CNF to a parity-padded instance");
    seth->add_option("--cnf", sea.cnf, "DIMACS file")->required();
    seth->add_option("--op", sea.op, "operation whose padding size is used");
    seth->add_option("--eps", sea.eps, "failure probability target");
    seth->add_option("--seed", sea.seed, "random seed");
    seth->callback([&] { action = [&] { return cmd_reduce_seth(sea, out); }; });

    GenArgs ga;
    auto * gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("family", ga.family, "ksat | xsat | linear | binary | coloring | near | sym3e | subsetsum | cnf");
    gen->add_option("--n", ga.n, "variables (or weights)");
    gen->add_option("--m", ga.m, "constraints");
    gen->add_option("--k", ga.k, "clause / relation arity");
    gen->add_option("--d", ga.d, "domain size or modulus");
    gen->add_option("--bits", ga.bits, "subsetsum weight bits");
    gen->add_option("--density", ga.density, "relation density");
    gen->add_option("--seed", ga.seed, "random seed");
    gen->add_option("--from-dimacs", ga.from_dimacs, "convert a DIMACS CNF file instead");
    gen->callback([&] {
        if (ga.family.empty() && ga.from_dimacs.empty())
            throw CLI::ValidationError("gen", "a family or --from-dimacs is required");
        action = [&] { return cmd_gen(ga, out); };
    });

    BenchArgs ba;
    auto * bench = app.add_subcommand("bench", "run a seeded family and print CSV");
    bench->add_option("--algo", ba.algo, "solver")->check(CLI::IsMember({"brute", "mitm2e", "tri3nu", "sym3e", "ls-knu"}));
    bench->add_option("--family", ba.family, "instance family (default per solver)");
    bench->add_option("--n-min", ba.n_min, "smallest n");
    bench->add_option("--n-max", ba.n_max, "largest n");
    bench->add_option("--seeds", ba.seeds, "instances per n");
    bench->add_option("--ratio", ba.ratio, "constraints per variable");
    bench->add_option("--d", ba.d, "domain size");
    bench->add_option("--k", ba.k, "relation arity");
    bench->add_option("--density", ba.density, "relation density");
    bench->add_option("--seed", ba.seed, "base seed");
    bench->callback([&] { action = [&] { return cmd_bench(ba, out); }; });

    std::vector<const char *> argv;
    for (auto & a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError & e) {
        return app.exit(e, out, err);
    }
    try {
        return action();
    } catch (const PreconditionError & e) {
        err << "precondition failed: " << e.what() << "\n";
        if (!e.witness().empty())
            err << "witness: " << e.witness() << "\n";
        return kExitPrecondition;
    } catch (const std::exception & e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace psdi::cli

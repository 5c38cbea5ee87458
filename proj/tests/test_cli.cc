#include "doctest.h"

#include "cli.hh"
#include "json.hpp"
#include "oracles.hh"
#include "psdi/instance.hh"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace psdi;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "psdi-sat");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string & name, const std::string & body)
{
    auto p = fs::temp_directory_path() / ("psdi_cli_" + name);
    std::ofstream(p) << body;
    return p.string();
}

const char * kOneInThree = "DOMAIN 2\nVARS 3\nREL one ARITY 3 TUPLES 001 010 100\nCON one 0 1 2\n";
const char * kContradiction =
    "DOMAIN 2\nVARS 2\nREL eq ARITY 2 TUPLES 00 11\nREL ne ARITY 2 TUPLES 01 10\nCON eq 0 1\nCON ne 0 1\n";
const char * kClause = "DOMAIN 2\nVARS 3\nREL cl ARITY 3 TUPLES 001 010 011 100 101 110 111\nCON cl 0 1 2\n";

} // namespace

TEST_CASE("cli classify")
{
    auto r = run({"classify", "--tuples", "001 010 100", "--arity", "3"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("edge2: yes") != std::string::npos);
    CHECK(r.out.find("near3: no  f(001,010,100) = 000") != std::string::npos);

    auto c = run({"classify", "--tuples", "001 010 011 100 101 110 111", "--arity", "3", "--max-level", "4"});
    REQUIRE(c.code == cli::kExitOk);
    CHECK(c.out.find("universal3: no") != std::string::npos);
    CHECK(c.out.find("near4: yes") != std::string::npos);

    auto j = run({"classify", "--tuples", "000 001 010 011 100 101 110 111", "--arity", "3", "--json"});
    REQUIRE(j.code == cli::kExitOk);
    auto doc = nlohmann::json::parse(j.out);
    REQUIRE(doc.size() == 1);
    for (auto & op : doc[0]["ops"])
        CHECK(op["preserved"].get<bool>());

    auto f = run({"classify", "--in", temp_file("cls.csp", kOneInThree), "--json"});
    REQUIRE(f.code == cli::kExitOk);
    CHECK(nlohmann::json::parse(f.out)[0]["name"] == "one");

    CHECK(run({"classify", "--tuples", "001", "--arity", "2"}).code == cli::kExitError);
}

TEST_CASE("cli solve")
{
    auto s = run({"solve", "--in", temp_file("sat.csp", kOneInThree), "--algo", "mitm2e"});
    CHECK(s.code == cli::kExitSat);
    CHECK(s.out.rfind("SAT 0 0 1\n", 0) == 0);
    CHECK(s.out.find("QUERIES ") != std::string::npos);
    CHECK(s.out.find("NODES ") != std::string::npos);

    auto u = run({"solve", "--in", temp_file("unsat.csp", kContradiction), "--algo", "brute"});
    CHECK(u.code == cli::kExitUnsat);
    CHECK(u.out.rfind("UNSAT", 0) == 0);

    auto p = run({"solve", "--in", temp_file("clause.csp", kClause), "--algo", "mitm2e"});
    CHECK(p.code == cli::kExitPrecondition);
    CHECK((p.out + p.err).find("witness: f(") != std::string::npos);

    auto j = run({"solve", "--in", temp_file("sat2.csp", kOneInThree), "--algo", "brute", "--json"});
    REQUIRE(j.code == cli::kExitSat);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["verdict"] == "SAT");
    CHECK(doc["assignment"] == nlohmann::json::array({0, 0, 1}));

    CHECK(run({"solve", "--in", "/nonexistent/file.csp"}).code == cli::kExitError);
}

TEST_CASE("cli pad")
{
    auto r = run({"pad", "--op", "edge2", "--n", "3", "--eps", "0.25", "--verify", "exact"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("m 21") != std::string::npos);
    CHECK(r.out.find("universal ") != std::string::npos);
}

TEST_CASE("cli gen is deterministic and parseable")
{
    auto a = run({"gen", "ksat", "--n", "10", "--m", "30", "--k", "3", "--seed", "1"});
    auto b = run({"gen", "ksat", "--n", "10", "--m", "30", "--k", "3", "--seed", "1"});
    REQUIRE(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
    auto inst = parse_instance(a.out);
    CHECK(inst.n_vars == 10);
    CHECK(inst.constraints.size() == 30);
    CHECK(run({"gen", "ksat", "--n", "10", "--m", "30", "--k", "3", "--seed", "2"}).out != a.out);
    CHECK(run({"gen", "nosuchfamily", "--n", "3"}).code == cli::kExitError);
}

TEST_CASE("cli reduce")
{
    auto w = temp_file("w.txt", "3\n5\n7\n");
    auto s = run({"reduce", "subsetsum", "--weights", w, "--target", "8", "--solve"});
    CHECK(s.code == cli::kExitSat);
    CHECK(s.out.find("selection 0 1") != std::string::npos);
    auto u = run({"reduce", "subsetsum", "--weights", w, "--target", "11", "--solve"});
    CHECK(u.code == cli::kExitUnsat);
    CHECK_FALSE(oracle::subset_sum({3, 5, 7}, 11));

    auto cnf = temp_file("f.cnf", "p cnf 3 2\n1 2 0\n-1 3 0\n");
    auto r = run({"reduce", "seth", "--cnf", cnf, "--op", "edge2", "--eps", "0.25", "--seed", "1"});
    REQUIRE(r.code == cli::kExitOk);
    auto inst = parse_instance(r.out);
    CHECK(inst.n_vars == 24);
    CHECK(inst.constraints.size() == 2);
}

TEST_CASE("cli bench mitm2e scales as the square root")
{
    auto r = run({"bench", "--algo", "mitm2e", "--n-min", "8", "--n-max", "16", "--seeds", "3"});
    REQUIRE(r.code == cli::kExitOk);
    std::istringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "n,algo,nodes,queries,millis");
    std::map<int, std::vector<double>> by_n;
    while (std::getline(ss, line)) {
        std::istringstream ls(line);
        std::string n, algo, nodes;
        std::getline(ls, n, ',');
        std::getline(ls, algo, ',');
        std::getline(ls, nodes, ',');
        by_n[std::stoi(n)].push_back(std::log2(std::stod(nodes)));
    }
    REQUIRE(by_n.size() == 9);
    // least-squares fit of mean log2(nodes) against n
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto & [n, v] : by_n) {
        double y = 0;
        for (double x : v)
            y += x;
        y /= double(v.size());
        sx += n;
        sy += y;
        sxx += double(n) * n;
        sxy += n * y;
    }
    const double k = double(by_n.size());
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    CHECK(slope >= 0.45);
    CHECK(slope <= 0.55);
}

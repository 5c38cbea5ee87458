#include "psdi/instance.hh"

#include "psdi/errors.hh"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace psdi {

std::string to_string(TypeTag t)
{
    switch (t) {
    case TypeTag::none:
        return "none";
    case TypeTag::edge2:
        return "edge2";
    case TypeTag::nu3:
        return "nu3";
    case TypeTag::sym_edge3:
        return "sym-edge3";
    }
    return "none";
}

TypeTag parse_type_tag(std::string_view text)
{
    if (text == "none")
        return TypeTag::none;
    if (text == "edge2")
        return TypeTag::edge2;
    if (text == "nu3" || text == "near3")
        return TypeTag::nu3;
    if (text == "sym-edge3" || text == "sym_edge3" || text == "edge3")
        return TypeTag::sym_edge3;
    throw std::invalid_argument("unknown type tag '" + std::string(text) + "'");
}

int Instance::add_relation(std::string name, Relation r, TypeTag tag)
{
    if (r.domain_size() != domain_size)
        throw std::invalid_argument("relation '" + name + "' has a different domain size than the instance");
    if (find_relation(name) >= 0)
        throw std::invalid_argument("duplicate relation name '" + name + "'");
    RelationEntry e;
    e.name = std::move(name);
    e.tag = tag;
    e.arity = r.arity();
    e.oracle = std::make_shared<ExplicitOracle>(r);
    e.relation = std::move(r);
    relations.push_back(std::move(e));
    return int(relations.size()) - 1;
}

int Instance::add_oracle(std::string name, OraclePtr oracle, TypeTag tag)
{
    if (!oracle)
        throw std::invalid_argument("null oracle");
    if (oracle->domain_size() != domain_size)
        throw std::invalid_argument("oracle '" + name + "' has a different domain size than the instance");
    if (find_relation(name) >= 0)
        throw std::invalid_argument("duplicate relation name '" + name + "'");
    RelationEntry e;
    e.name = std::move(name);
    e.tag = tag;
    e.arity = oracle->arity();
    e.oracle = std::move(oracle);
    relations.push_back(std::move(e));
    return int(relations.size()) - 1;
}

void Instance::add_constraint(int relation, std::vector<int> scope)
{
    if (relation < 0 || relation >= int(relations.size()))
        throw std::out_of_range("constraint refers to an unknown relation");
    if (int(scope.size()) != relations[relation].arity)
        throw std::invalid_argument("scope length " + std::to_string(scope.size()) + " differs from arity of '" +
                                    relations[relation].name + "'");
    for (int v : scope)
        if (v < 0 || v >= n_vars)
            throw std::out_of_range("scope variable " + std::to_string(v) + " out of range");
    constraints.push_back({relation, std::move(scope)});
}

void Instance::add_constraint(std::string_view relation_name, std::vector<int> scope)
{
    int r = find_relation(relation_name);
    if (r < 0)
        throw std::invalid_argument("unknown relation '" + std::string(relation_name) + "'");
    add_constraint(r, std::move(scope));
}

int Instance::find_relation(std::string_view name) const
{
    for (std::size_t i = 0; i < relations.size(); ++i)
        if (relations[i].name == name)
            return int(i);
    return -1;
}

void Instance::validate() const
{
    if (domain_size < 2)
        throw std::invalid_argument("domain size must be at least 2");
    if (n_vars < 0)
        throw std::invalid_argument("negative variable count");
    for (auto & c : constraints) {
        if (c.relation < 0 || c.relation >= int(relations.size()))
            throw std::invalid_argument("constraint refers to an unknown relation");
        if (int(c.scope.size()) != relations[c.relation].arity)
            throw std::invalid_argument("scope length differs from relation arity");
        for (int v : c.scope)
            if (v < 0 || v >= n_vars)
                throw std::invalid_argument("scope variable out of range");
    }
}

namespace {

int to_int(std::string_view s, int line)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(line, "expected an integer, got '" + std::string(s) + "'");
    return v;
}

std::vector<std::string> tokens_of(std::string_view line)
{
    std::istringstream in{std::string(line)};
    std::vector<std::string> out;
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

} // namespace

Instance parse_instance(std::string_view text)
{
    Instance inst;
    bool seen_vars = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        auto tok = tokens_of(line);
        if (tok.empty())
            continue;
        const std::string & kw = tok[0];
        try {
            if (kw == "DOMAIN") {
                if (tok.size() != 2)
                    throw ParseError(line_no, "DOMAIN takes one argument");
                if (!inst.relations.empty())
                    throw ParseError(line_no, "DOMAIN must precede REL lines");
                inst.domain_size = to_int(tok[1], line_no);
                if (inst.domain_size < 2 || inst.domain_size > 36)
                    throw ParseError(line_no, "domain size must be in [2, 36]");
            } else if (kw == "VARS") {
                if (tok.size() != 2)
                    throw ParseError(line_no, "VARS takes one argument");
                inst.n_vars = to_int(tok[1], line_no);
                if (inst.n_vars < 0)
                    throw ParseError(line_no, "negative variable count");
                seen_vars = true;
            } else if (kw == "REL") {
                if (tok.size() < 3)
                    throw ParseError(line_no, "REL needs a name and a body");
                std::string name = tok[1];
                std::size_t i = 2;
                TypeTag tag = TypeTag::none;
                if (tok[i] == "TYPE") {
                    if (tok.size() < i + 2)
                        throw ParseError(line_no, "TYPE needs a tag");
                    tag = parse_type_tag(tok[i + 1]);
                    i += 2;
                }
                if (i < tok.size() && tok[i] == "ARITY") {
                    if (tok.size() < i + 3 || tok[i + 2] != "TUPLES")
                        throw ParseError(line_no, "expected 'ARITY r TUPLES ...'");
                    int arity = to_int(tok[i + 1], line_no);
                    if (arity < 0)
                        throw ParseError(line_no, "negative arity");
                    std::vector<Tuple> tuples;
                    for (std::size_t j = i + 3; j < tok.size(); ++j)
                        tuples.push_back(parse_tuple(tok[j], inst.domain_size, arity));
                    inst.add_relation(name, make_relation(inst.domain_size, arity, tuples), tag);
                } else if (i < tok.size() && tok[i] == "ORACLE") {
                    // the oracle spec is the remainder of the line
                    auto at = line.find("ORACLE");
                    auto spec = line.substr(at + 6);
                    inst.add_oracle(name, parse_oracle_spec(spec, inst.domain_size), tag);
                } else {
                    throw ParseError(line_no, "expected ARITY or ORACLE after relation name");
                }
            } else if (kw == "CON") {
                if (tok.size() < 2)
                    throw ParseError(line_no, "CON needs a relation name");
                if (!seen_vars)
                    throw ParseError(line_no, "VARS must precede CON lines");
                std::vector<int> scope;
                for (std::size_t j = 2; j < tok.size(); ++j)
                    scope.push_back(to_int(tok[j], line_no));
                inst.add_constraint(tok[1], std::move(scope));
            } else {
                throw ParseError(line_no, "unknown keyword '" + kw + "'");
            }
        } catch (const ParseError &) {
            throw;
        } catch (const std::exception & e) {
            throw ParseError(line_no, e.what());
        }
    }
    return inst;
}

std::string serialize_instance(const Instance & inst)
{
    std::ostringstream os;
    os << "DOMAIN " << inst.domain_size << "\n";
    os << "VARS " << inst.n_vars << "\n";
    for (auto & r : inst.relations) {
        os << "REL " << r.name;
        if (r.tag != TypeTag::none)
            os << " TYPE " << to_string(r.tag);
        if (r.is_explicit()) {
            os << " ARITY " << r.arity << " TUPLES";
            for (auto & t : r.relation->tuples())
                os << ' ' << format_tuple(t);
        } else {
            auto spec = r.oracle->spec();
            if (spec.empty())
                throw std::invalid_argument("relation '" + r.name + "' has no textual form");
            os << " ORACLE " << spec;
        }
        os << "\n";
    }
    for (auto & c : inst.constraints) {
        os << "CON " << inst.relations[c.relation].name;
        for (int v : c.scope)
            os << ' ' << v;
        os << "\n";
    }
    return os.str();
}

Instance read_instance_file(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

bool check_assignment(const Instance & inst, std::span<const Value> a)
{
    if (int(a.size()) != inst.n_vars)
        throw std::invalid_argument("assignment length differs from the variable count");
    for (Value v : a)
        if (v < 0 || v >= inst.domain_size)
            return false;
    Tuple sub;
    for (auto & c : inst.constraints) {
        sub.resize(c.scope.size());
        for (std::size_t j = 0; j < c.scope.size(); ++j)
            sub[j] = a[c.scope[j]];
        auto & rel = inst.relations[c.relation];
        bool ok = rel.is_explicit() ? rel.relation->contains(sub) : rel.oracle->contains(sub);
        if (!ok)
            return false;
    }
    return true;
}

Cnf parse_dimacs(std::string_view text)
{
    Cnf cnf;
    bool header = false;
    int declared_clauses = 0;
    std::vector<int> current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        auto tok = tokens_of(line);
        if (tok.empty() || tok[0] == "c" || tok[0][0] == 'c' || tok[0] == "%")
            continue;
        if (tok[0] == "p") {
            if (tok.size() != 4 || tok[1] != "cnf")
                throw ParseError(line_no, "expected 'p cnf <vars> <clauses>'");
            cnf.n_vars = to_int(tok[2], line_no);
            declared_clauses = to_int(tok[3], line_no);
            header = true;
            continue;
        }
        if (!header)
            throw ParseError(line_no, "clause before the 'p cnf' header");
        for (auto & t : tok) {
            int lit = to_int(t, line_no);
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
                continue;
            }
            if (std::abs(lit) > cnf.n_vars)
                throw ParseError(line_no, "literal " + t + " exceeds the declared variable count");
            current.push_back(lit);
        }
    }
    if (!current.empty())
        cnf.clauses.push_back(current);
    if (!header)
        throw ParseError(line_no, "missing 'p cnf' header");
    (void)declared_clauses;
    return cnf;
}

std::string format_dimacs(const Cnf & cnf)
{
    std::ostringstream os;
    os << "p cnf " << cnf.n_vars << ' ' << cnf.clauses.size() << "\n";
    for (auto & c : cnf.clauses) {
        for (int lit : c)
            os << lit << ' ';
        os << "0\n";
    }
    return os.str();
}

Relation clause_relation(std::span<const int> literals)
{
    const int k = int(literals.size());
    Tuple falsifying(k);
    for (int i = 0; i < k; ++i) {
        if (literals[i] == 0)
            throw std::invalid_argument("zero literal");
        falsifying[i] = literals[i] > 0 ? 0 : 1;
    }
    const Code bad = encode(falsifying, 2);
    return Relation::from_predicate(2, k, [&](std::span<const Value> t) { return encode(t, 2) != bad; });
}

Instance cnf_to_instance(const Cnf & cnf)
{
    Instance inst;
    inst.domain_size = 2;
    inst.n_vars = cnf.n_vars;
    std::map<std::vector<int>, int> by_shape; // sign vector -> relation index
    for (auto & clause : cnf.clauses) {
        std::vector<int> signs, scope;
        for (int lit : clause) {
            signs.push_back(lit > 0 ? 1 : -1);
            scope.push_back(std::abs(lit) - 1);
        }
        auto it = by_shape.find(signs);
        if (it == by_shape.end()) {
            std::string name = "C";
            for (int s : signs)
                name += s > 0 ? 'p' : 'n';
            if (signs.empty())
                name = "FALSE";
            it = by_shape.emplace(signs, inst.add_relation(name, clause_relation(signs))).first;
        }
        inst.add_constraint(it->second, std::move(scope));
    }
    return inst;
}

bool cnf_satisfied(const Cnf & cnf, std::span<const Value> a)
{
    for (auto & clause : cnf.clauses) {
        bool sat = false;
        for (int lit : clause) {
            Value v = a[std::abs(lit) - 1];
            if ((lit > 0 && v == 1) || (lit < 0 && v == 0)) {
                sat = true;
                break;
            }
        }
        if (!sat)
            return false;
    }
    return true;
}

} // namespace psdi

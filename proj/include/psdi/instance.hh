#pragma once

#include "psdi/oracle.hh"
#include "psdi/relation.hh"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psdi {

/// Declared language class of a relation, used by the symmetric 3-edge solver.
enum class TypeTag { none, edge2, nu3, sym_edge3 };

std::string to_string(TypeTag t);
TypeTag parse_type_tag(std::string_view text);

struct RelationEntry {
    std::string name;
    TypeTag tag = TypeTag::none;
    int arity = 0;
    std::optional<Relation> relation; // set for explicit relations
    OraclePtr oracle;                 // always set

    bool is_explicit() const noexcept { return relation.has_value(); }
};

struct Constraint {
    int relation = 0; // index into Instance::relations
    std::vector<int> scope;
};

struct Instance {
    int domain_size = 2;
    int n_vars = 0;
    std::vector<RelationEntry> relations;
    std::vector<Constraint> constraints;

    int add_relation(std::string name, Relation r, TypeTag tag = TypeTag::none);
    int add_oracle(std::string name, OraclePtr oracle, TypeTag tag = TypeTag::none);
    void add_constraint(int relation, std::vector<int> scope);
    void add_constraint(std::string_view relation_name, std::vector<int> scope);

    /// Index of the relation called `name`, or -1.
    int find_relation(std::string_view name) const;

    /// Throws std::invalid_argument if a scope is out of range or has the wrong length.
    void validate() const;
};

using Assignment = Tuple;

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance & inst);

Instance read_instance_file(const std::string & path);

bool check_assignment(const Instance & inst, std::span<const Value> a);

/// Clauses as in DIMACS: non-zero literals, negative for negation,
/// variables numbered from 1.
struct Cnf {
    int n_vars = 0;
    std::vector<std::vector<int>> clauses;
};

Cnf parse_dimacs(std::string_view text);
std::string format_dimacs(const Cnf & cnf);

/// The k-clause relation {0,1}^k minus the tuple falsifying the literals.
Relation clause_relation(std::span<const int> literals);

/// One explicit clause relation per distinct clause shape.
Instance cnf_to_instance(const Cnf & cnf);

bool cnf_satisfied(const Cnf & cnf, std::span<const Value> a);

} // namespace psdi

#pragma once

// SPJRU query terms: positional select / project / join / union over named
// base relations, with a small text grammar.
//
//   query := NAME | "bot" | "$" INT
//          | "sel[" pred "](" query ")" | "proj[" cols "](" query ")"
//          | "join(" query "," query ")" | "union(" query "," query ")"
//   pred  := INT "=" INT | INT "='" NAME "'"
//   cols  := INT { "," INT }
//
// Columns are 1-based. "$N" is a substitution slot whose arity is looked up
// in the schema under the key "$N".

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dbcat/relation.hpp"

namespace dbcat {

using Schema = std::map<std::string, std::optional<int>, std::less<>>;

/// Names and static arities of an instance's labels.
Schema schema_of(const Instance& instance);

struct Predicate {
  enum class Kind { ColEqCol, ColEqConst };
  Kind kind = Kind::ColEqCol;
  int left = 1;
  int right = 1;           // ColEqCol
  ConstId constant = 0;    // ColEqConst
  std::string symbol;      // ColEqConst, for printing

  static Predicate col_eq_col(int i, int j) { return {Kind::ColEqCol, i, j, 0, {}}; }
  static Predicate col_eq_const(int i, ConstId c, std::string symbol) {
    return {Kind::ColEqConst, i, 0, c, std::move(symbol)};
  }
  bool operator==(const Predicate&) const = default;
};

// Relational operators on extensions. Binary operators require equal origins
// (bottom excepted); union requires equal arities.
Relation rel_select(const Relation& r, const Predicate& p);
Relation rel_project(const Relation& r, const std::vector<int>& cols);
Relation rel_join(const Relation& a, const Relation& b);
Relation rel_union(const Relation& a, const Relation& b);

/// Immutable, cheaply copyable query AST node.
class QueryTerm {
 public:
  enum class Kind { Base, Slot, Bot, Select, Project, Join, Union };

  static QueryTerm base(std::string name, std::optional<int> arity);
  static QueryTerm slot(int index, std::optional<int> arity);
  static QueryTerm bot();
  /// Throws ArityError when a column exceeds the operand arity.
  static QueryTerm select(Predicate p, QueryTerm q);
  static QueryTerm project(std::vector<int> cols, QueryTerm q);
  static QueryTerm join(QueryTerm a, QueryTerm b);
  /// Throws ArityError on mismatched operand arities.
  static QueryTerm union_of(QueryTerm a, QueryTerm b);

  Kind kind() const { return node_->kind; }
  /// nullopt when erased (the term always denotes bottom).
  std::optional<int> arity() const { return node_->arity; }
  const std::string& name() const { return node_->name; }
  int slot_index() const { return node_->slot; }
  const Predicate& predicate() const { return node_->pred; }
  const std::vector<int>& columns() const { return node_->cols; }
  const QueryTerm& left() const { return node_->children.at(0); }
  const QueryTerm& right() const { return node_->children.at(1); }
  const QueryTerm& operand() const { return node_->children.at(0); }
  std::size_t size() const;

  bool operator==(const QueryTerm& other) const;

 private:
  struct Node {
    Kind kind = Kind::Bot;
    std::optional<int> arity;
    std::string name;
    int slot = 0;
    Predicate pred;
    std::vector<int> cols;
    std::vector<QueryTerm> children;
  };
  explicit QueryTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const QueryTerm& q);

/// Errors: SyntaxError (with offset), UnknownRelation, UnknownConstant,
/// ArityError.
QueryTerm parse(std::string_view text, const Schema& schema, const Domain& domain);

/// Base relation names occurring in q.
std::set<std::string> base_names(const QueryTerm& q);

/// Evaluates q over the labels of A; slot i is bound to slots[i-1].
/// Errors: UnknownRelation, InvalidArgument (unbound slot), ArityError.
Relation eval(const QueryTerm& q, const Instance& a,
              const std::vector<Relation>& slots = {});

bool query_equiv(const QueryTerm& q1, const QueryTerm& q2, const Instance& a);

/// Replaces slot i by subs[i-1]. Throws ArityError when a slot's arity
/// differs from the static arity of its substitute (an erased substitute fits
/// any slot), InvalidArgument when a slot has no substitute.
QueryTerm flatten_term(const QueryTerm& t, const std::vector<QueryTerm>& subs);

/// Replaces base names found in `subs`; other bases are kept.
QueryTerm substitute_bases(const QueryTerm& t,
                           const std::map<std::string, QueryTerm>& subs);

}  // namespace dbcat

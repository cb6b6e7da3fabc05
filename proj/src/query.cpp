#include "dbcat/query.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace dbcat {

Schema schema_of(const Instance& instance) {
  Schema s;
  for (const auto& l : instance.labels()) s[l.name] = l.declared_arity;
  return s;
}

namespace {

void require_same_origin(const Relation& a, const Relation& b, const char* op) {
  if (a.origin() != b.origin())
    fail(ErrorCode::DomainMismatch, std::string(op) + " across coproduct components");
  if (a.radix() != b.radix())
    fail(ErrorCode::DomainMismatch, std::string(op) + " across different domains");
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

Relation rel_select(const Relation& r, const Predicate& p) {
  if (r.is_bottom()) return r;
  auto check = [&](int col) {
    if (col < 1 || col > r.arity())
      fail(ErrorCode::ArityError, "select column " + std::to_string(col) +
                                      " outside arity " + std::to_string(r.arity()));
  };
  check(p.left);
  if (p.kind == Predicate::Kind::ColEqCol) check(p.right);
  std::vector<std::uint64_t> kept;
  for (auto code : r.codes()) {
    Tuple t = decode_tuple(r.radix(), r.arity(), code);
    const ConstId lhs = t[static_cast<std::size_t>(p.left - 1)];
    const ConstId rhs = p.kind == Predicate::Kind::ColEqCol
                            ? t[static_cast<std::size_t>(p.right - 1)]
                            : p.constant;
    if (lhs == rhs) kept.push_back(code);
  }
  return Relation::from_codes(r.radix(), r.arity(), std::move(kept), r.origin());
}

Relation rel_project(const Relation& r, const std::vector<int>& cols) {
  if (cols.empty()) fail(ErrorCode::ArityError, "projection needs at least one column");
  if (r.is_bottom()) return r;
  for (int c : cols)
    if (c < 1 || c > r.arity())
      fail(ErrorCode::ArityError, "projection column " + std::to_string(c) +
                                      " outside arity " + std::to_string(r.arity()));
  std::vector<std::uint64_t> out;
  out.reserve(r.size());
  for (auto code : r.codes()) {
    Tuple t = decode_tuple(r.radix(), r.arity(), code);
    Tuple p;
    p.reserve(cols.size());
    for (int c : cols) p.push_back(t[static_cast<std::size_t>(c - 1)]);
    out.push_back(encode_tuple(r.radix(), p));
  }
  return Relation::from_codes(r.radix(), static_cast<int>(cols.size()), std::move(out),
                              r.origin());
}

Relation rel_join(const Relation& a, const Relation& b) {
  if (a.is_bottom()) return a;
  if (b.is_bottom()) return b;
  require_same_origin(a, b, "join");
  const std::uint64_t shift = ipow(b.radix(), b.arity());
  std::vector<std::uint64_t> out;
  out.reserve(a.size() * b.size());
  for (auto x : a.codes())
    for (auto y : b.codes()) out.push_back(x * shift + y);
  return Relation::from_codes(a.radix(), a.arity() + b.arity(), std::move(out), a.origin());
}

Relation rel_union(const Relation& a, const Relation& b) {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  require_same_origin(a, b, "union");
  if (a.arity() != b.arity())
    fail(ErrorCode::ArityError, "union of arities " + std::to_string(a.arity()) +
                                    " and " + std::to_string(b.arity()));
  std::vector<std::uint64_t> out;
  std::set_union(a.codes().begin(), a.codes().end(), b.codes().begin(), b.codes().end(),
                 std::back_inserter(out));
  return Relation::from_codes(a.radix(), a.arity(), std::move(out), a.origin());
}

QueryTerm QueryTerm::base(std::string name, std::optional<int> arity) {
  Node n;
  n.kind = Kind::Base;
  n.name = std::move(name);
  n.arity = arity;
  return QueryTerm(std::make_shared<const Node>(std::move(n)));
}

QueryTerm QueryTerm::slot(int index, std::optional<int> arity) {
  if (index < 1) fail(ErrorCode::InvalidArgument, "slot indices start at 1");
  Node n;
  n.kind = Kind::Slot;
  n.slot = index;
  n.arity = arity;
  return QueryTerm(std::make_shared<const Node>(std::move(n)));
}

QueryTerm QueryTerm::bot() {
  Node n;
  n.kind = Kind::Bot;
  return QueryTerm(std::make_shared<const Node>(std::move(n)));
}

QueryTerm QueryTerm::select(Predicate p, QueryTerm q) {
  if (auto a = q.arity()) {
    auto check = [&](int col) {
      if (col < 1 || col > *a)
        fail(ErrorCode::ArityError, "select column " + std::to_string(col) +
                                        " outside arity " + std::to_string(*a));
    };
    check(p.left);
    if (p.kind == Predicate::Kind::ColEqCol) check(p.right);
  } else if (p.left < 1 || (p.kind == Predicate::Kind::ColEqCol && p.right < 1)) {
    fail(ErrorCode::ArityError, "columns start at 1");
  }
  Node n;
  n.kind = Kind::Select;
  n.arity = q.arity();
  n.pred = std::move(p);
  n.children = {std::move(q)};
  return QueryTerm(std::make_shared<const Node>(std::move(n)));
}

QueryTerm QueryTerm::project(std::vector<int> cols, QueryTerm q) {
  if (cols.empty()) fail(ErrorCode::ArityError, "projection needs at least one column");
  for (int c : cols)
    if (c < 1 || (q.arity() && c > *q.arity()))
      fail(ErrorCode::ArityError,
           "projection column " + std::to_string(c) + " outside arity " +
               (q.arity() ? std::to_string(*q.arity()) : std::string("bot")));
  Node n;
  n.kind = Kind::Project;
  n.arity = static_cast<int>(cols.size());
  n.cols = std::move(cols);
  n.children = {std::move(q)};
  return QueryTerm(std::make_shared<const Node>(std::move(n)));
}

QueryTerm QueryTerm::join(QueryTerm a, QueryTerm b) {
  Node n;
  n.kind = Kind::Join;
  if (a.arity() && b.arity()) n.arity = *a.arity() + *b.arity();
  n.children = {std::move(a), std::move(b)};
  return QueryTerm(std::make_shared<const Node>(std::move(n)));
}

QueryTerm QueryTerm::union_of(QueryTerm a, QueryTerm b) {
  if (a.arity() && b.arity() && *a.arity() != *b.arity())
    fail(ErrorCode::ArityError, "union of arities " + std::to_string(*a.arity()) +
                                    " and " + std::to_string(*b.arity()));
  Node n;
  n.kind = Kind::Union;
  n.arity = a.arity() ? a.arity() : b.arity();
  n.children = {std::move(a), std::move(b)};
  return QueryTerm(std::make_shared<const Node>(std::move(n)));
}

std::size_t QueryTerm::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

bool QueryTerm::operator==(const QueryTerm& other) const {
  if (node_ == other.node_) return true;
  const Node& x = *node_;
  const Node& y = *other.node_;
  return x.kind == y.kind && x.arity == y.arity && x.name == y.name && x.slot == y.slot &&
         x.pred == y.pred && x.cols == y.cols && x.children == y.children;
}

std::string to_string(const QueryTerm& q) {
  switch (q.kind()) {
    case QueryTerm::Kind::Base: return q.name();
    case QueryTerm::Kind::Slot: return "$" + std::to_string(q.slot_index());
    case QueryTerm::Kind::Bot: return "bot";
    case QueryTerm::Kind::Select: {
      const auto& p = q.predicate();
      std::string pred = std::to_string(p.left) + "=";
      pred += p.kind == Predicate::Kind::ColEqCol ? std::to_string(p.right)
                                                  : "'" + p.symbol + "'";
      return "sel[" + pred + "](" + to_string(q.operand()) + ")";
    }
    case QueryTerm::Kind::Project: {
      std::string cols;
      for (std::size_t i = 0; i < q.columns().size(); ++i) {
        if (i) cols += ",";
        cols += std::to_string(q.columns()[i]);
      }
      return "proj[" + cols + "](" + to_string(q.operand()) + ")";
    }
    case QueryTerm::Kind::Join:
      return "join(" + to_string(q.left()) + "," + to_string(q.right()) + ")";
    case QueryTerm::Kind::Union:
      return "union(" + to_string(q.left()) + "," + to_string(q.right()) + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Schema& schema, const Domain& domain)
      : text_(text), schema_(schema), domain_(domain) {}

  QueryTerm parse_all() {
    QueryTerm q = query();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "trailing input");
    return q;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    return text_.substr(pos_, w.size()) == w;
  }

  void expect(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok)
      throw SyntaxError(pos_, "expected '" + std::string(tok) + "'");
    pos_ += tok.size();
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !ident_start(text_[pos_]))
      throw SyntaxError(pos_, "expected a name");
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError(pos_, "expected a column number");
    if (pos_ - start > 6) throw SyntaxError(start, "column number too large");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  // Keyword followed by '[' or '(' so that relation names like "selected"
  // are not mistaken for operators.
  bool keyword(std::string_view kw, char next) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t p = pos_ + kw.size();
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    if (p >= text_.size() || text_[p] != next) return false;
    pos_ += kw.size();
    return true;
  }

  QueryTerm query() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of query");
    if (keyword("sel", '[')) {
      expect("[");
      Predicate p = predicate();
      expect("]");
      expect("(");
      QueryTerm q = query();
      expect(")");
      return QueryTerm::select(std::move(p), std::move(q));
    }
    if (keyword("proj", '[')) {
      expect("[");
      std::vector<int> cols{integer()};
      while (peek_word(",")) {
        expect(",");
        cols.push_back(integer());
      }
      expect("]");
      expect("(");
      QueryTerm q = query();
      expect(")");
      return QueryTerm::project(std::move(cols), std::move(q));
    }
    const bool is_join = keyword("join", '(');
    if (is_join || keyword("union", '(')) {
      expect("(");
      QueryTerm a = query();
      expect(",");
      QueryTerm b = query();
      expect(")");
      return is_join ? QueryTerm::join(std::move(a), std::move(b))
                     : QueryTerm::union_of(std::move(a), std::move(b));
    }
    if (text_[pos_] == '$') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw SyntaxError(pos_, "malformed slot");
      const std::size_t digits = pos_;
      int index = integer();
      if (index < 1) throw SyntaxError(digits, "slot indices start at 1");
      std::string key = "$" + std::to_string(index);
      auto it = schema_.find(key);
      if (it == schema_.end()) fail(ErrorCode::UnknownRelation, "unbound slot " + key);
      return QueryTerm::slot(index, it->second);
    }
    std::string name = identifier();
    if (name == "bot") return QueryTerm::bot();
    auto it = schema_.find(name);
    if (it == schema_.end())
      fail(ErrorCode::UnknownRelation, "unknown relation '" + name + "'");
    return QueryTerm::base(std::move(name), it->second);
  }

  Predicate predicate() {
    int left = integer();
    expect("=");
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      if (start == pos_) throw SyntaxError(pos_, "expected a constant");
      std::string symbol(text_.substr(start, pos_ - start));
      if (pos_ >= text_.size() || text_[pos_] != '\'')
        throw SyntaxError(pos_, "unterminated constant");
      ++pos_;
      ConstId id = domain_.id(symbol);
      return Predicate::col_eq_const(left, id, std::move(symbol));
    }
    return Predicate::col_eq_col(left, integer());
  }

  std::string_view text_;
  const Schema& schema_;
  const Domain& domain_;
  std::size_t pos_ = 0;
};

}  // namespace

QueryTerm parse(std::string_view text, const Schema& schema, const Domain& domain) {
  return Parser(text, schema, domain).parse_all();
}

std::set<std::string> base_names(const QueryTerm& q) {
  std::set<std::string> out;
  std::function<void(const QueryTerm&)> walk = [&](const QueryTerm& t) {
    switch (t.kind()) {
      case QueryTerm::Kind::Base: out.insert(t.name()); break;
      case QueryTerm::Kind::Slot:
      case QueryTerm::Kind::Bot: break;
      case QueryTerm::Kind::Select:
      case QueryTerm::Kind::Project: walk(t.operand()); break;
      case QueryTerm::Kind::Join:
      case QueryTerm::Kind::Union:
        walk(t.left());
        walk(t.right());
        break;
    }
  };
  walk(q);
  return out;
}

Relation eval(const QueryTerm& q, const Instance& a, const std::vector<Relation>& slots) {
  switch (q.kind()) {
    case QueryTerm::Kind::Base: {
      const Label* l = a.find_label(q.name());
      if (!l) fail(ErrorCode::UnknownRelation, "unknown relation '" + q.name() + "'");
      return l->relation;
    }
    case QueryTerm::Kind::Slot: {
      auto i = static_cast<std::size_t>(q.slot_index());
      if (i > slots.size())
        fail(ErrorCode::InvalidArgument, "slot $" + std::to_string(i) + " is unbound");
      return slots[i - 1];
    }
    case QueryTerm::Kind::Bot: return Relation::bottom();
    case QueryTerm::Kind::Select: return rel_select(eval(q.operand(), a, slots), q.predicate());
    case QueryTerm::Kind::Project: return rel_project(eval(q.operand(), a, slots), q.columns());
    case QueryTerm::Kind::Join:
      return rel_join(eval(q.left(), a, slots), eval(q.right(), a, slots));
    case QueryTerm::Kind::Union:
      return rel_union(eval(q.left(), a, slots), eval(q.right(), a, slots));
  }
  return Relation::bottom();
}

bool query_equiv(const QueryTerm& q1, const QueryTerm& q2, const Instance& a) {
  return eval(q1, a) == eval(q2, a);
}

namespace {

QueryTerm rebuild(const QueryTerm& t, const std::function<std::optional<QueryTerm>(const QueryTerm&)>& leaf) {
  switch (t.kind()) {
    case QueryTerm::Kind::Base:
    case QueryTerm::Kind::Slot:
    case QueryTerm::Kind::Bot: {
      auto r = leaf(t);
      return r ? *r : t;
    }
    case QueryTerm::Kind::Select: return QueryTerm::select(t.predicate(), rebuild(t.operand(), leaf));
    case QueryTerm::Kind::Project: return QueryTerm::project(t.columns(), rebuild(t.operand(), leaf));
    case QueryTerm::Kind::Join: return QueryTerm::join(rebuild(t.left(), leaf), rebuild(t.right(), leaf));
    case QueryTerm::Kind::Union:
      return QueryTerm::union_of(rebuild(t.left(), leaf), rebuild(t.right(), leaf));
  }
  return t;
}

void check_fit(const QueryTerm& hole, const QueryTerm& sub, const std::string& what) {
  if (hole.arity() && sub.arity() && *hole.arity() != *sub.arity())
    fail(ErrorCode::ArityError, what + " has arity " + std::to_string(*hole.arity()) +
                                    " but its substitute has arity " +
                                    std::to_string(*sub.arity()));
}

}  // namespace

QueryTerm flatten_term(const QueryTerm& t, const std::vector<QueryTerm>& subs) {
  return rebuild(t, [&](const QueryTerm& leaf) -> std::optional<QueryTerm> {
    if (leaf.kind() != QueryTerm::Kind::Slot) return std::nullopt;
    auto i = static_cast<std::size_t>(leaf.slot_index());
    if (i > subs.size())
      fail(ErrorCode::InvalidArgument, "no substitute for slot $" + std::to_string(i));
    check_fit(leaf, subs[i - 1], "slot $" + std::to_string(i));
    return subs[i - 1];
  });
}

QueryTerm substitute_bases(const QueryTerm& t, const std::map<std::string, QueryTerm>& subs) {
  return rebuild(t, [&](const QueryTerm& leaf) -> std::optional<QueryTerm> {
    if (leaf.kind() != QueryTerm::Kind::Base) return std::nullopt;
    auto it = subs.find(leaf.name());
    if (it == subs.end()) return std::nullopt;
    check_fit(leaf, it->second, "relation " + leaf.name());
    return it->second;
  });
}

}  // namespace dbcat

#include <gtest/gtest.h>

#include "dbcat/query.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace dbcat;
using fx::bot;
using fx::code_of;
using fx::un;

namespace {

const Domain& ab() { return fx::cfg0().domain(); }

QueryTerm q(std::string_view text, const Instance& a) { return parse(text, schema_of(a), ab()); }

Schema schema(std::initializer_list<std::pair<const std::string, std::optional<int>>> xs) {
  return Schema(xs);
}

// Evaluates t with the naive set-of-rows model.
oracle::Rel naive_eval(const QueryTerm& t, const Instance& a, const Domain& d,
                       const std::vector<Relation>& slots = {}) {
  switch (t.kind()) {
    case QueryTerm::Kind::Base: return oracle::from(a.find_label(t.name())->relation, d);
    case QueryTerm::Kind::Slot: return oracle::from(slots.at(t.slot_index() - 1), d);
    case QueryTerm::Kind::Bot: return {};
    case QueryTerm::Kind::Select: {
      const auto& p = t.predicate();
      auto r = naive_eval(t.operand(), a, d, slots);
      if (p.kind == Predicate::Kind::ColEqCol) return oracle::select_eq(r, p.left - 1, p.right - 1);
      return oracle::select_const(r, p.left - 1, p.symbol);
    }
    case QueryTerm::Kind::Project: {
      std::vector<int> cols;
      for (int c : t.columns()) cols.push_back(c - 1);
      return oracle::project(naive_eval(t.operand(), a, d, slots), cols);
    }
    case QueryTerm::Kind::Join:
      return oracle::product(naive_eval(t.left(), a, d, slots), naive_eval(t.right(), a, d, slots));
    case QueryTerm::Kind::Union:
      return oracle::unite(naive_eval(t.left(), a, d, slots), naive_eval(t.right(), a, d, slots));
  }
  return {};
}

// Every well-arity-checked term with at most max_size nodes over `leaves`.
// Projections use column lists of length 1..2; joins are skipped when
// `with_join` is false.
std::vector<QueryTerm> all_terms(const std::vector<QueryTerm>& leaves, const Domain& d,
                                 std::size_t max_size, bool with_join = true) {
  std::vector<std::vector<QueryTerm>> by_size(max_size + 1);
  by_size[1] = leaves;
  auto keep = [](std::vector<QueryTerm>& out, auto make) {
    try {
      out.push_back(make());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ArityError) throw;
    }
  };
  for (std::size_t n = 2; n <= max_size; ++n) {
    auto& out = by_size[n];
    for (const auto& x : by_size[n - 1]) {
      const int ar = x.arity().value_or(1);
      for (int i = 1; i <= ar; ++i) {
        for (ConstId c = 0; c < d.size(); ++c)
          keep(out, [&] { return QueryTerm::select(Predicate::col_eq_const(i, c, d.symbol(c)), x); });
        for (int j = i + 1; j <= ar; ++j)
          keep(out, [&] { return QueryTerm::select(Predicate::col_eq_col(i, j), x); });
      }
      for (const auto& cols : oracle::column_lists(ar, 2)) {
        std::vector<int> one_based;
        for (int c : cols) one_based.push_back(c + 1);
        keep(out, [&] { return QueryTerm::project(one_based, x); });
      }
    }
    for (std::size_t l = 1; l + 1 < n; ++l)
      for (const auto& x : by_size[l])
        for (const auto& y : by_size[n - 1 - l]) {
          if (with_join) keep(out, [&] { return QueryTerm::join(x, y); });
          keep(out, [&] { return QueryTerm::union_of(x, y); });
        }
  }
  std::vector<QueryTerm> all;
  for (auto& v : by_size) all.insert(all.end(), v.begin(), v.end());
  return all;
}

std::vector<Relation> unary_values() { return universe_relations(fx::cfg({"a", "b"}, 1)); }

}  // namespace

TEST(Parse, SelectOfBase) {
  Instance a = fx::labeled({{"r1", un({"a"})}});
  QueryTerm t = q("sel[1='a'](r1)", a);
  ASSERT_EQ(t.kind(), QueryTerm::Kind::Select);
  EXPECT_EQ(t.predicate(), Predicate::col_eq_const(1, 0, "a"));
  EXPECT_EQ(t.operand(), QueryTerm::base("r1", 1));
  EXPECT_EQ(t.arity(), 1);
}

TEST(Parse, NestedUnionHasArityOne) {
  Instance a = fx::labeled({{"r1", un({"a"})}});
  QueryTerm t = q("union(r1, proj[1](join(r1,r1)))", a);
  EXPECT_EQ(t.kind(), QueryTerm::Kind::Union);
  EXPECT_EQ(t.arity(), 1);
  EXPECT_EQ(t.size(), 6u);
  EXPECT_EQ(to_string(t), "union(r1,proj[1](join(r1,r1)))");
}

TEST(Parse, PrintedFormParsesBack) {
  const Schema s = schema({{"r1", 1}, {"r2", 2}, {"z", std::nullopt}});
  for (const char* text : {"r1", "bot", "z", "sel[1=2](r2)", "proj[2,1,1](r2)",
                           "union(proj[1](r2),sel[1='b'](r1))", "join(bot,r2)",
                           "union(z,r1)"}) {
    QueryTerm t = parse(text, s, ab());
    EXPECT_EQ(to_string(t), text);
    EXPECT_EQ(parse(to_string(t), s, ab()), t);
  }
  EXPECT_EQ(parse(" sel [ 1 = 'a' ] ( r1 ) ", s, ab()), parse("sel[1='a'](r1)", s, ab()));
}

TEST(Parse, NamesThatLookLikeKeywords) {
  const Schema s = schema({{"sel", 1}, {"join", 1}, {"selected", 1}});
  EXPECT_EQ(parse("union(sel,join)", s, ab()).arity(), 1);
  EXPECT_EQ(parse("sel[1='a'](selected)", s, ab()).operand().name(), "selected");
}

TEST(Parse, Errors) {
  const Schema s = schema({{"r1", 1}, {"r2", 2}});
  auto code = [&](const char* text) { return code_of([&] { parse(text, s, ab()); }); };
  EXPECT_EQ(code("union(r1, r2)"), ErrorCode::ArityError);
  EXPECT_EQ(code("sel[2='a'](r1)"), ErrorCode::ArityError);
  EXPECT_EQ(code("proj[3](r2)"), ErrorCode::ArityError);
  EXPECT_EQ(code("proj[0](r2)"), ErrorCode::ArityError);
  EXPECT_EQ(code("r3"), ErrorCode::UnknownRelation);
  EXPECT_EQ(code("$1"), ErrorCode::UnknownRelation);
  EXPECT_EQ(code("sel[1='c'](r1)"), ErrorCode::UnknownConstant);
  EXPECT_EQ(code(""), ErrorCode::SyntaxError);
  EXPECT_EQ(code("r1 r1"), ErrorCode::SyntaxError);
  EXPECT_EQ(code("proj[](r1)"), ErrorCode::SyntaxError);
  EXPECT_EQ(code("sel[1='a](r1)"), ErrorCode::SyntaxError);
}

TEST(Parse, SyntaxErrorReportsOffset) {
  const Schema s = schema({{"r1", 1}});
  try {
    parse("sel[1='a'](r1", s, ab());
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 13u);
  }
  try {
    parse("join(r1 r1)", s, ab());
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 8u);
  }
}

TEST(Eval, Examples) {
  Instance a = fx::labeled({{"r1", un({"a"})}});
  EXPECT_EQ(eval(q("sel[1='b'](r1)", a), a), bot);

  Instance b = fx::labeled({{"r1", un({"a"})}, {"r2", un({"b"})}});
  EXPECT_EQ(eval(q("union(r1,r2)", b), b), un({"a", "b"}));

  Instance c = fx::labeled({{"r1", un({"a", "b"})}});
  EXPECT_EQ(eval(q("proj[1](join(r1,r1))", c), c), un({"a", "b"}));
  EXPECT_EQ(eval(q("proj[2,1](sel[1='a'](join(r1,r1)))", c), c),
            fx::rel(ab(), 2, {{"a", "a"}, {"b", "a"}}));
  EXPECT_EQ(eval(q("sel[1=2](join(r1,r1))", c), c), fx::rel(ab(), 2, {{"a", "a"}, {"b", "b"}}));
}

TEST(Eval, BottomIsArityFree) {
  Instance a = fx::labeled({{"r1", un({"a"})}, {"r2", fx::rel(ab(), 2, {{"a", "b"}})}});
  EXPECT_EQ(eval(q("join(bot,r2)", a), a), bot);
  EXPECT_EQ(eval(q("sel[1='b'](r1)", a), a), eval(q("sel[1='b'](r2)", a), a));
  EXPECT_EQ(eval(q("union(sel[1='b'](r1),r1)", a), a), un({"a"}));
  EXPECT_EQ(eval(q("proj[2,2](sel[1='b'](r2))", a), a), bot);
}

TEST(Eval, UnboundNames) {
  Instance a = fx::labeled({{"r1", un({"a"})}});
  EXPECT_EQ(code_of([&] { eval(QueryTerm::base("r9", 1), a); }), ErrorCode::UnknownRelation);
  EXPECT_EQ(code_of([&] { eval(QueryTerm::slot(2, 1), a, {un({"a"})}); }),
            ErrorCode::InvalidArgument);
}

TEST(Eval, AgreesWithNaiveModelOnAllSmallTerms) {
  const Domain& d = ab();
  std::vector<Instance> instances;
  for (const auto& x : unary_values())
    for (const auto& y : {bot, fx::rel(d, 2, {{"a", "b"}}), fx::rel(d, 2, {{"a", "a"}, {"b", "a"}}),
                          fx::rel(d, 2, {{"a", "a"}, {"a", "b"}, {"b", "b"}})})
      instances.push_back(fx::labeled({{"r1", x}, {"r2", y}}));
  const std::vector<QueryTerm> leaves{QueryTerm::base("r1", 1), QueryTerm::base("r2", 2),
                                      QueryTerm::bot()};
  const auto terms = all_terms(leaves, d, 3);
  ASSERT_GT(terms.size(), 100u);
  std::size_t checked = 0;
  for (const auto& t : terms)
    for (const auto& a : instances) {
      // Labels of bottom-valued relations keep their static arity here.
      Instance typed{a.relations(), {{"r1", 1, a.find_label("r1")->relation},
                                     {"r2", 2, a.find_label("r2")->relation}}};
      ASSERT_EQ(oracle::from(eval(t, typed), d), naive_eval(t, typed, d)) << to_string(t);
      ++checked;
    }
  EXPECT_EQ(checked, terms.size() * instances.size());
}

TEST(Eval, JoinFreeTermsAreMonotone) {
  const Domain& d = ab();
  const auto values = unary_values();
  const std::vector<QueryTerm> leaves{QueryTerm::base("r1", 1), QueryTerm::base("r2", 1),
                                      QueryTerm::bot()};
  const auto terms = all_terms(leaves, d, 4, false);
  auto sub = [](const Relation& x, const Relation& y) {
    if (x.is_bottom()) return true;
    if (y.is_bottom() || x.arity() != y.arity()) return false;
    return std::includes(y.codes().begin(), y.codes().end(), x.codes().begin(), x.codes().end());
  };
  for (const auto& x1 : values)
    for (const auto& x2 : values)
      for (const auto& y1 : values)
        for (const auto& y2 : values) {
          if (!sub(x1, y1) || !sub(x2, y2)) continue;
          Instance small{{}, {{"r1", 1, x1}, {"r2", 1, x2}}};
          Instance big{{}, {{"r1", 1, y1}, {"r2", 1, y2}}};
          for (const auto& t : terms)
            ASSERT_TRUE(sub(eval(t, small), eval(t, big))) << to_string(t);
        }
}

TEST(QueryEquiv, Examples) {
  for (const auto& v : unary_values()) {
    Instance a{{}, {{"r1", 1, v}}};
    EXPECT_TRUE(query_equiv(q("r1", a), q("union(r1,r1)", a), a));
  }
  Instance a = fx::labeled({{"r1", un({"a"})}});
  EXPECT_TRUE(query_equiv(q("sel[1='a'](r1)", a), q("r1", a), a));
  Instance b = fx::labeled({{"r1", un({"a", "b"})}});
  EXPECT_FALSE(query_equiv(q("sel[1='a'](r1)", b), q("r1", b), b));
}

TEST(Flatten, Examples) {
  const Schema s = schema({{"r1", 1}, {"r2", 1}, {"$1", 1}});
  QueryTerm ctx = parse("sel[1='a']($1)", s, ab());
  QueryTerm sub = parse("union(r1,r2)", s, ab());
  EXPECT_EQ(to_string(flatten_term(ctx, {sub})), "sel[1='a'](union(r1,r2))");
  EXPECT_EQ(flatten_term(parse("$1", s, ab()), {sub}), sub);

  Instance a = fx::labeled({{"r1", un({"a"})}, {"r2", un({"b"})}});
  const Relation via_flat = eval(flatten_term(ctx, {sub}), a);
  const Relation via_slots = eval(ctx, a, {eval(sub, a)});
  EXPECT_EQ(via_flat, un({"a"}));
  EXPECT_EQ(via_slots, un({"a"}));
}

TEST(Flatten, Errors) {
  const Schema s = schema({{"r2", 2}, {"$1", 1}});
  QueryTerm ctx = parse("$1", s, ab());
  EXPECT_EQ(code_of([&] { flatten_term(ctx, {parse("r2", s, ab())}); }), ErrorCode::ArityError);
  EXPECT_EQ(code_of([&] { flatten_term(ctx, {}); }), ErrorCode::InvalidArgument);
  // An erased substitute fits any slot.
  EXPECT_EQ(flatten_term(ctx, {QueryTerm::bot()}), QueryTerm::bot());
}

TEST(Flatten, CommutesWithEvaluation) {
  const Domain& d = ab();
  const auto values = unary_values();
  const auto contexts = all_terms({QueryTerm::slot(1, 1), QueryTerm::base("r1", 1)}, d, 4);
  const auto subs = all_terms({QueryTerm::base("r1", 1), QueryTerm::base("r2", 1)}, d, 3);
  for (const auto& x : values)
    for (const auto& y : values) {
      Instance a{{}, {{"r1", 1, x}, {"r2", 1, y}}};
      for (const auto& c : contexts)
        for (const auto& s : subs) {
          if (s.arity() != 1) continue;
          ASSERT_EQ(eval(flatten_term(c, {s}), a), eval(c, a, {eval(s, a)}))
              << to_string(c) << " / " << to_string(s);
        }
    }
}

TEST(Flatten, SubstitutionIsAssociative) {
  const Domain& d = ab();
  // Single-slot unary contexts, nested three deep.
  std::vector<QueryTerm> contexts;
  for (const auto& t : all_terms({QueryTerm::slot(1, 1), QueryTerm::base("r1", 1)}, d, 4))
    if (t.arity() == 1) contexts.push_back(t);
  ASSERT_GT(contexts.size(), 50u);
  const QueryTerm leaf = QueryTerm::base("r2", 1);
  std::size_t step = contexts.size() / 40 + 1;
  for (std::size_t i = 0; i < contexts.size(); ++i)
    for (std::size_t j = 0; j < contexts.size(); j += step)
      for (std::size_t k = 0; k < contexts.size(); k += step) {
        const auto& t = contexts[i];
        const auto& u = contexts[j];
        const auto& v = contexts[k];
        QueryTerm left = flatten_term(flatten_term(t, {u}), {flatten_term(v, {leaf})});
        QueryTerm right = flatten_term(t, {flatten_term(u, {flatten_term(v, {leaf})})});
        ASSERT_EQ(left, right) << to_string(t) << " " << to_string(u) << " " << to_string(v);
      }
}

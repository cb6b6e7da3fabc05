#include <gtest/gtest.h>

#include "dbcat/morphism.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace dbcat;
using fx::bot;
using fx::code_of;
using fx::un;

namespace {

const Universe& u0() { return fx::cfg0(); }

std::vector<Instance> all_instances() {
  const auto& rels = u0().relations();
  std::vector<Instance> out;
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<Relation> rs;
    for (unsigned i = 0; i < 4; ++i)
      if (mask >> i & 1) rs.push_back(rels[i]);
    out.emplace_back(rs);
  }
  return out;
}

oracle::RelSet naive(const ClosedInstance& x) { return oracle::from(x.relations(), u0().domain()); }

Instance ab_labeled() { return fx::labeled({{"r1", un({"a"})}, {"r2", un({"b"})}}); }

}  // namespace

TEST(Atomic, Examples) {
  Morphism f = atomic_morphism(ab_labeled(), fx::pa(), std::vector<std::string>{"r1"}, u0());
  EXPECT_EQ(f.flux(), fx::closed({bot, un({"a"})}));
  EXPECT_EQ(f.kind(), Morphism::Kind::Atomic);
  EXPECT_EQ(f.trees().size(), 1u);

  Morphism e = atomic_morphism(ab_labeled(), fx::pa(), std::vector<std::string>{}, u0());
  EXPECT_EQ(e.flux(), ClosedInstance{});
  EXPECT_TRUE(e.trees().empty());

  Instance a = fx::labeled({{"r1", un({"a"})}});
  EXPECT_EQ(code_of([&] { atomic_morphism(a, fx::pb(), std::vector<std::string>{"r1"}, u0()); }),
            ErrorCode::ResultNotInTarget);
  EXPECT_EQ(code_of([&] { atomic_morphism(a, fx::pb(), std::vector<std::string>{"r7"}, u0()); }),
            ErrorCode::UnknownRelation);
}

TEST(Atomic, BottomResultsNeedNoTarget) {
  Instance a = fx::labeled({{"r1", un({"a"})}});
  Morphism f = atomic_morphism(a, fx::pb(), std::vector<std::string>{"sel[1='b'](r1)"}, u0());
  EXPECT_EQ(f.flux(), ClosedInstance{});
  EXPECT_EQ(f.results(), std::vector<Relation>{bot});
}

TEST(Atomic, ViewMapBoundaries) {
  Morphism f = atomic_morphism(ab_labeled(), fx::inst({un({"a"}), un({"b"}), un({"a", "b"})}),
                               std::vector<std::string>{"union(r1,r2)", "r2"}, u0());
  ASSERT_EQ(f.trees().size(), 2u);
  const ViewMap& vm = f.trees()[0]->node;
  EXPECT_EQ(vm.arg_names, (std::vector<std::string>{"r1", "r2"}));
  EXPECT_EQ(vm.args, (std::vector<Relation>{un({"a"}), un({"b"})}));
  EXPECT_EQ(vm.result, un({"a", "b"}));
  EXPECT_TRUE(power_view(f.source(), u0()).contains(vm.result));
  EXPECT_EQ(f.flux(), fx::upsilon0());
}

TEST(Compose, FluxExample) {
  // flux(f) = {bot,{a},{b}} is not closed at cfg0, so build it one level up:
  // f: Pab -> Pab with results {a},{b} has flux Upsilon; g keeps {a}.
  Morphism f = atomic_morphism(fx::pab(), fx::pab(), std::vector<std::string>{"v1", "v2"}, u0());
  Morphism g = atomic_morphism(fx::pab(), fx::pa(), std::vector<std::string>{"v1"}, u0());
  EXPECT_EQ(compose(g, f).flux(), fx::closed({bot, un({"a"})}));
  EXPECT_EQ(naive(compose(g, f).flux()), oracle::meet(naive(g.flux()), naive(f.flux())));
}

TEST(Compose, GraftsMatchingTrees) {
  Instance b = fx::pab().with_labels("s");
  Morphism f = atomic_morphism(ab_labeled(), b, std::vector<std::string>{"r1", "r2"}, u0());
  Morphism g = atomic_morphism(b, fx::pa(),
                               std::vector<std::string>{"sel[1='a'](union(s1,s2))"}, u0());
  Morphism gf = compose(g, f);
  EXPECT_EQ(gf.kind(), Morphism::Kind::Composite);
  ASSERT_EQ(gf.trees().size(), 1u);
  const ViewTree& t = *gf.trees()[0];
  ASSERT_TRUE(t.below.has_value());
  ASSERT_EQ(t.below->size(), 2u);
  EXPECT_EQ(tree_arguments(t), (std::vector<Relation>{un({"a"}), un({"b"})}));
  EXPECT_EQ(to_string(flatten_tree(t)), "sel[1='a'](union(r1,r2))");
  EXPECT_EQ(eval(flatten_tree(t), f.source()), t.node.result);
  EXPECT_EQ(describe_trees(gf, u0().domain()),
            std::vector<std::string>{"sel[1='a'](union(r1,r2)) -> {a}"});
}

TEST(Compose, DropsTreesThatMissTheFirstArrow) {
  Instance b = fx::pab().with_labels("s");
  Morphism f = atomic_morphism(ab_labeled(), b, std::vector<std::string>{"r1"}, u0());
  Morphism g = atomic_morphism(b, fx::pab(), std::vector<std::string>{"s1", "s2"}, u0());
  Morphism gf = compose(g, f);
  ASSERT_EQ(gf.trees().size(), 1u);
  EXPECT_EQ(gf.trees()[0]->node.result, un({"a"}));
  EXPECT_EQ(gf.flux(), fx::closed({bot, un({"a"})}));
}

TEST(Compose, Errors) {
  Morphism f = identity(fx::pa(), u0());
  Morphism g = identity(fx::pb(), u0());
  EXPECT_EQ(code_of([&] { compose(g, f); }), ErrorCode::DomainMismatch);
}

TEST(Compose, FluxIsIntersectionForAllEnumeratedArrows) {
  const auto objs = all_instances();
  std::size_t pairs = 0;
  for (const auto& a : objs)
    for (const auto& b : {objs[0], objs[3], objs[6], objs[15]})
      for (const auto& c : objs)
        for (const auto& f : homset_arrows(a, b, u0()))
          for (const auto& g : homset_arrows(b, c, u0())) {
            const auto gf = compose(g, f);
            ASSERT_EQ(naive(gf.flux()), oracle::meet(naive(g.flux()), naive(f.flux())));
            ASSERT_EQ(gf.source(), a);
            ASSERT_EQ(gf.target(), c);
            ++pairs;
          }
  EXPECT_GT(pairs, 1000u);
}

TEST(Compose, CategoryLaws) {
  std::vector<Instance> objs;
  for (const auto& x : all_instances())
    if (x.size() <= 1) objs.push_back(x);
  for (const auto& a : objs)
    for (const auto& b : objs)
      for (const auto& f : homset_arrows(a, b, u0())) {
        EXPECT_TRUE(equivalent(compose(identity(b, u0()), f), f));
        EXPECT_TRUE(equivalent(compose(f, identity(a, u0())), f));
        EXPECT_TRUE(equivalent(compose(empty_arrow(b, b, u0()), f), empty_arrow(a, b, u0())));
        for (const auto& c : objs)
          for (const auto& g : homset_arrows(b, c, u0()))
            for (const auto& d : objs)
              for (const auto& h : homset_arrows(c, d, u0()))
                ASSERT_TRUE(equivalent(compose(h, compose(g, f)), compose(compose(h, g), f)));
      }
}

TEST(Compose, GraftedTreesEvaluateOverTheSource) {
  Instance a = fx::labeled({{"r1", un({"a"})}, {"r2", un({"b"})}});
  const std::vector<std::string> lower{"r1", "r2", "union(r1,r2)", "sel[1='a'](union(r1,r2))"};
  const std::vector<std::string> upper{"s1", "union(s1,s2)", "sel[1='b'](s2)",
                                       "proj[1](join(s1,s2))"};
  Instance full = fx::inst({un({"a"}), un({"b"}), un({"a", "b"})}).with_labels("s");
  for (const auto& x : lower)
    for (const auto& y : upper) {
      Morphism f = atomic_morphism(a, full, std::vector<std::string>{x}, u0());
      Morphism g = atomic_morphism(full, full, std::vector<std::string>{y}, u0());
      Morphism gf = compose(g, f);
      for (const auto& t : gf.trees()) {
        bool complete = true;
        for (const auto& gr : *t->below) complete = complete && !gr.subtrees.empty();
        if (complete) {
          EXPECT_EQ(eval(flatten_tree(*t), f.source()), t->node.result) << x << " " << y;
        }
      }
    }
}

TEST(Identity, Examples) {
  EXPECT_EQ(identity(fx::zero(), u0()).flux(), ClosedInstance{});
  EXPECT_EQ(identity(fx::pa(), u0()).flux(), fx::closed({bot, un({"a"})}));
  for (const auto& a : all_instances()) {
    Morphism id = identity(a, u0());
    EXPECT_TRUE(is_iso(id));
    // One witness per member of TA, each evaluating to its member.
    ASSERT_EQ(id.trees().size(), power_view(a, u0()).size());
    for (const auto& t : id.trees()) EXPECT_EQ(eval(t->node.query, id.source()), t->node.result);
  }
}

TEST(Classify, Examples) {
  Morphism f = atomic_morphism(fx::pa(), fx::pab(), std::vector<std::string>{"v1"}, u0());
  EXPECT_TRUE(is_mono(f));
  EXPECT_FALSE(is_epi(f));
  EXPECT_FALSE(is_iso(f));
  Morphism e = empty_arrow(fx::zero(), fx::zero(), u0());
  EXPECT_TRUE(is_iso(e));
  Morphism h = semantic_morphism(fx::pab(), fx::inst({un({"a", "b"})}), fx::upsilon0(), u0());
  EXPECT_TRUE(is_iso(h));
  EXPECT_TRUE(iso(h.source(), h.target(), u0()));
}

TEST(Classify, MonoAndEpiIffIsoForAllArrows) {
  for (const auto& a : all_instances())
    for (const auto& b : all_instances())
      for (const auto& f : homset_arrows(a, b, u0())) {
        EXPECT_EQ(is_iso(f), is_mono(f) && is_epi(f));
        EXPECT_EQ(is_mono(f), naive(f.flux()) == naive(power_view(a, u0())));
        EXPECT_EQ(is_epi(f), naive(f.flux()) == naive(power_view(b, u0())));
        if (is_iso(f)) {
          EXPECT_TRUE(iso(a, b, u0()));
        }
      }
}

TEST(LiftT, PreservesFluxAndProperties) {
  EXPECT_EQ(lift_T(empty_arrow(fx::pa(), fx::pb(), u0()), u0()).flux(), ClosedInstance{});
  for (const auto& a : all_instances())
    for (const auto& b : all_instances())
      for (const auto& f : homset_arrows(a, b, u0())) {
        Morphism tf = lift_T(f, u0());
        EXPECT_EQ(tf.flux(), f.flux());
        EXPECT_EQ(tf.source(), power_view(a, u0()).as_instance());
        EXPECT_EQ(is_mono(tf), is_mono(f));
        EXPECT_EQ(is_epi(tf), is_epi(f));
        EXPECT_EQ(is_iso(tf), is_iso(f));
      }
}

TEST(Invert, Duality) {
  for (const auto& a : all_instances())
    for (const auto& b : all_instances())
      for (const auto& f : homset_arrows(a, b, u0())) {
        Morphism g = invert(f, u0());
        EXPECT_EQ(g.source(), b);
        EXPECT_EQ(g.target(), a);
        EXPECT_EQ(g.flux(), f.flux());
        EXPECT_TRUE(equivalent(invert(g, u0()), f));
        EXPECT_EQ(is_epi(g), is_mono(f));
        EXPECT_EQ(is_mono(g), is_epi(f));
      }
}

TEST(Totalize, Examples) {
  const Instance t = fx::upsilon0().as_instance();
  Morphism f = semantic_morphism(t, t, fx::closed({bot, un({"a"})}), u0());
  const auto table = totalize(f, u0());
  const std::vector<std::pair<Relation, Relation>> expected{
      {bot, bot}, {un({"a"}), un({"a"})}, {un({"b"}), bot}, {un({"a", "b"}), bot}};
  EXPECT_EQ(table, expected);
  for (const auto& [v, w] : totalize(empty_arrow(t, t, u0()), u0())) EXPECT_EQ(w, bot);
  for (const auto& [v, w] : totalize(identity(t, u0()), u0())) EXPECT_EQ(w, v);
  EXPECT_EQ(code_of([&] { totalize(identity(fx::pa(), u0()), u0()); }),
            ErrorCode::NotClosedDomain);
}

TEST(Totalize, IsFaithful) {
  const Instance t = fx::upsilon0().as_instance();
  const auto arrows = homset_arrows(t, t, u0());
  for (const auto& f : arrows)
    for (const auto& g : arrows)
      EXPECT_EQ(totalize(f, u0()) == totalize(g, u0()), equivalent(f, g));
}

TEST(TwoCells, Order) {
  for (const auto& a : all_instances())
    for (const auto& b : all_instances()) {
      const auto arrows = homset_arrows(a, b, u0());
      for (const auto& f : arrows) {
        EXPECT_TRUE(arrow_po_leq(empty_arrow(a, b, u0()), f));
        EXPECT_TRUE(arrow_po_leq(f, f));
        for (const auto& g : arrows)
          if (arrow_po_leq(f, g) && arrow_po_leq(g, f)) {
            EXPECT_TRUE(equivalent(f, g));
          }
      }
    }
  EXPECT_EQ(code_of([] {
              arrow_po_leq(identity(fx::pa(), u0()), empty_arrow(fx::pa(), fx::pb(), u0()));
            }),
            ErrorCode::NotParallel);
}

TEST(SemanticHomset, Examples) {
  EXPECT_EQ(semantic_homset(fx::pa(), fx::pb(), u0()), std::vector<ClosedInstance>{ClosedInstance{}});
  EXPECT_EQ(semantic_homset(fx::pab(), fx::pab(), u0()).size(), 4u);
  for (const auto& a : all_instances())
    EXPECT_EQ(semantic_homset(a, fx::zero(), u0()), std::vector<ClosedInstance>{ClosedInstance{}});
}

TEST(SemanticHomset, MatchesBruteForce) {
  const auto& d = u0().domain();
  for (const auto& a : all_instances())
    for (const auto& b : all_instances()) {
      std::set<oracle::RelSet> got;
      for (const auto& x : semantic_homset(a, b, u0())) got.insert(naive(x));
      const auto meet = oracle::meet(naive(power_view(a, u0())), naive(power_view(b, u0())));
      EXPECT_EQ(got, oracle::closed_subsets(meet, d.symbols(), 1));
    }
  EXPECT_EQ(code_of([] {
              semantic_morphism(fx::pa(), fx::pb(), fx::closed({bot, un({"a"})}), u0());
            }),
            ErrorCode::FluxOutOfRange);
}

TEST(HomCache, ReturnsSameArrows) {
  HomCache homs(u0());
  const auto& first = homs(fx::pa(), fx::pab());
  const auto& again = homs(fx::pa(), fx::pab());
  EXPECT_EQ(&first, &again);
  ASSERT_EQ(first.size(), 2u);
  EXPECT_TRUE(equivalent(first[1], identity(fx::pa(), u0())));
}

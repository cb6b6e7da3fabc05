#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "dbcat/closure.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace dbcat;
using fx::bot;
using fx::code_of;
using fx::un;

namespace {

// All instances over the universe with at most max_rel relations.
std::vector<Instance> instances(const Universe& u, std::size_t max_rel) {
  const auto& rels = u.relations();
  std::vector<Instance> out{Instance{}};
  std::vector<std::vector<std::size_t>> layer{{}};
  for (std::size_t n = 1; n <= max_rel; ++n) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : layer)
      for (std::size_t i = p.empty() ? 0 : p.back() + 1; i < rels.size(); ++i) {
        auto q = p;
        q.push_back(i);
        std::vector<Relation> rs;
        for (auto j : q) rs.push_back(rels[j]);
        out.emplace_back(rs);
        next.push_back(std::move(q));
      }
    layer = std::move(next);
  }
  return out;
}

void expect_matches_oracles(const Universe& u, std::size_t max_rel) {
  const Domain& d = u.domain();
  const int k = u.config().k_max;
  for (const auto& a : instances(u, max_rel)) {
    const auto naive = oracle::from(a.relations(), d);
    const auto t = oracle::from(power_view(a, u).relations(), d);
    ASSERT_EQ(t, oracle::saturate(naive, d.symbols(), k)) << to_string(a.relations(), d);
    ASSERT_EQ(t, oracle::adom_closure(naive, k)) << to_string(a.relations(), d);
  }
}

}  // namespace

TEST(PowerView, Examples) {
  const Universe& u = fx::cfg0();
  EXPECT_EQ(power_view(fx::pa(), u), fx::closed({bot, un({"a"})}));
  EXPECT_EQ(power_view(fx::zero(), u), ClosedInstance{});
  EXPECT_EQ(power_view(Instance{}, u), ClosedInstance{});
  EXPECT_EQ(power_view(fx::pab(), u), fx::upsilon0());
  EXPECT_EQ(power_view(fx::pab(), u), total_object(u));
  EXPECT_EQ(power_view(fx::inst({un({"a", "b"})}), u), fx::upsilon0());
}

TEST(PowerView, BinaryExamples) {
  const Universe u(fx::cfg({"a", "b"}, 2));
  const Domain& d = u.domain();
  // {(a b)} yields both columns and every relation over {a,b}.
  EXPECT_EQ(power_view(fx::inst({fx::rel(d, 2, {{"a", "b"}})}), u).size(), 19u);
  // {a} yields {a} and {(a a)}.
  EXPECT_EQ(power_view(fx::pa(), u),
            fx::closed({bot, un({"a"}), fx::rel(d, 2, {{"a", "a"}})}));
}

TEST(PowerView, AgreesWithNaiveSaturationAtCfg0) { expect_matches_oracles(fx::cfg0(), 4); }

TEST(PowerView, AgreesWithNaiveSaturationAtArityTwo) {
  expect_matches_oracles(Universe(fx::cfg({"a", "b"}, 2)), 2);
}

TEST(PowerView, AgreesWithNaiveSaturationOverThreeConstants) {
  expect_matches_oracles(Universe(fx::cfg({"a", "b", "c"}, 1)), 8);
}

TEST(PowerView, ClosureAxiomsAtCfg0) {
  const Universe& u = fx::cfg0();
  const auto all = instances(u, 4);
  ASSERT_EQ(all.size(), 16u);
  for (const auto& a : all) {
    const auto ta = power_view(a, u);
    for (const auto& r : a.relations()) EXPECT_TRUE(ta.contains(r));
    EXPECT_EQ(power_view(ta, u), ta);
    EXPECT_TRUE(is_closed(ta.as_instance(), u));
    EXPECT_TRUE(iso(a, ta.as_instance(), u));
    for (const auto& b : all)
      if (a.is_subset_of(b)) {
        EXPECT_TRUE(ta.is_subset_of(power_view(b, u)));
      }
  }
}

TEST(PowerView, IsUnionOverFiniteSubsets) {
  const Universe& u = fx::cfg0();
  for (const auto& a : instances(u, 4)) {
    std::vector<Relation> joined;
    for (const auto& sub : instances(u, 4))
      if (sub.is_subset_of(a)) joined = set_union(joined, power_view(sub, u).relations());
    EXPECT_EQ(joined, power_view(a, u).relations());
  }
}

TEST(PowerView, GeneratorsEvaluateToTheirRelations) {
  const Universe u(fx::cfg({"a", "b"}, 2));
  for (const auto& a : instances(u, 2)) {
    auto sat = u.saturate(a);
    const Instance labeled = a.with_auto_labels();
    ASSERT_EQ(sat->generators.size(), sat->closed.size());
    for (std::size_t i = 0; i < sat->closed.size(); ++i)
      ASSERT_EQ(eval(sat->generators[i], labeled), sat->closed.relations()[i]);
  }
}

TEST(PowerView, Errors) {
  const Universe& u = fx::cfg0();
  const Domain d2({"a", "b"});
  EXPECT_EQ(code_of([&] { power_view(fx::inst({fx::rel(d2, 2, {{"a", "b"}})}), u); }),
            ErrorCode::ArityOutOfRange);
  const Domain d3({"a", "b", "c"});
  EXPECT_EQ(code_of([&] { power_view(fx::inst({un({"c"}, d3)}), u); }),
            ErrorCode::ArityOutOfRange);
}

TEST(PowerView, ConcurrentSaturationIsDeterministic) {
  const UniverseConfig c = fx::cfg({"a", "b"}, 2);
  const Universe reference(c);
  const auto all = instances(reference, 2);
  std::vector<ClosedInstance> expected;
  for (const auto& a : all) expected.push_back(power_view(a, reference));

  const Universe shared(c);
  std::vector<std::thread> threads;
  std::vector<std::vector<ClosedInstance>> got(4, std::vector<ClosedInstance>(all.size()));
  for (unsigned t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      std::vector<std::size_t> order(all.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), std::mt19937(t));
      for (auto i : order) got[t][i] = power_view(all[i], shared);
    });
  for (auto& th : threads) th.join();
  for (const auto& g : got) EXPECT_EQ(g, expected);
}

TEST(TotalObject, Examples) {
  EXPECT_EQ(total_object(fx::cfg0()), fx::upsilon0());
  EXPECT_EQ(power_view(total_object(fx::cfg0()), fx::cfg0()), total_object(fx::cfg0()));
  const Universe one(fx::cfg({"a"}, 1));
  EXPECT_EQ(total_object(one), fx::closed({bot, un({"a"}, one.domain())}));
  const Universe two(fx::cfg({"a", "b"}, 2));
  EXPECT_EQ(total_object(two).relations(), universe_relations(two.config()));
}

TEST(Order, Examples) {
  const Universe& u = fx::cfg0();
  EXPECT_TRUE(po_leq(fx::pa(), fx::pab(), u));
  EXPECT_FALSE(po_leq(fx::pa(), fx::pb(), u));
  EXPECT_FALSE(po_leq(fx::pab(), fx::pa(), u));
  EXPECT_TRUE(iso(fx::pab(), fx::inst({un({"a", "b"})}), u));
  EXPECT_TRUE(iso(Instance{}, fx::zero(), u));
  EXPECT_FALSE(iso(fx::pa(), fx::pb(), u));
}

TEST(ClosedSubsets, Examples) {
  const Universe& u = fx::cfg0();
  EXPECT_EQ(closed_subsets(fx::upsilon0(), u),
            (std::vector<ClosedInstance>{ClosedInstance{}, fx::closed({bot, un({"a"})}),
                                         fx::closed({bot, un({"b"})}), fx::upsilon0()}));
  EXPECT_EQ(closed_subsets(ClosedInstance{}, u), std::vector<ClosedInstance>{ClosedInstance{}});
  EXPECT_EQ(closed_subsets(fx::closed({bot, un({"a"})}), u),
            (std::vector<ClosedInstance>{ClosedInstance{}, fx::closed({bot, un({"a"})})}));
}

TEST(ClosedSubsets, AgreeWithBruteForce) {
  for (const auto& c : {fx::cfg({"a", "b"}, 1), fx::cfg({"a", "b", "c"}, 1), fx::cfg({"a"}, 2),
                        fx::cfg({"a", "b"}, 2)}) {
    const Universe u(c);
    const auto& d = u.domain();
    // Brute force is only run on closed sets of at most 8 relations.
    for (const auto& a : instances(u, 1)) {
      const auto x = power_view(a, u);
      if (x.size() > 8) continue;
      std::set<oracle::RelSet> got;
      for (const auto& s : closed_subsets(x, u)) got.insert(oracle::from(s.relations(), d));
      EXPECT_EQ(got, oracle::closed_subsets(oracle::from(x.relations(), d), d.symbols(), c.k_max));
    }
  }
}

TEST(ClosedSubsets, OfTheTotalObjectFormABooleanLattice) {
  // One closed set per subset of the domain.
  const Universe u(fx::cfg({"a", "b"}, 2));
  EXPECT_EQ(closed_subsets(total_object(u), u).size(), 4u);
  const Universe v(fx::cfg({"a", "b", "c"}, 1));
  const auto subs = closed_subsets(total_object(v), v);
  EXPECT_EQ(subs.size(), 8u);
  for (const auto& x : subs)
    for (const auto& y : subs) {
      const auto m = closed_intersection(x, y);
      EXPECT_TRUE(std::find(subs.begin(), subs.end(), m) != subs.end());
    }
}

TEST(ClosedSubsets, Errors) {
  auto c = fx::cfg({"a", "b"}, 1);
  c.max_enumeration = 4;
  const Universe small(c);
  EXPECT_EQ(code_of([&] { closed_subsets(fx::upsilon0(), small); }),
            ErrorCode::EnumerationTooLarge);
  EXPECT_EQ(code_of([&] { closed_subsets(fx::closed({bot, un({"a", "b"})}), fx::cfg0()); }),
            ErrorCode::NotClosed);
}

TEST(Closedness, Checks) {
  const Universe& u = fx::cfg0();
  EXPECT_FALSE(is_closed(fx::pa(), u));
  EXPECT_TRUE(is_closed(fx::inst({bot, un({"a"})}), u));
  EXPECT_FALSE(is_closed(fx::inst({bot, un({"a", "b"})}), u));
  EXPECT_EQ(code_of([&] { verify_closed(fx::pab(), u); }), ErrorCode::NotClosed);
  EXPECT_EQ(verify_closed(fx::inst({bot, un({"b"})}), u), fx::closed({bot, un({"b"})}));
}

TEST(Closedness, IntersectionsOfClosedSetsAreClosed) {
  const Universe& u = fx::cfg0();
  const auto subs = closed_subsets(fx::upsilon0(), u);
  for (const auto& x : subs)
    for (const auto& y : subs) {
      const auto m = closed_intersection(x, y);
      EXPECT_TRUE(is_closed(m.as_instance(), u));
      EXPECT_EQ(oracle::from(m.relations(), u.domain()),
                oracle::meet(oracle::from(x.relations(), u.domain()),
                             oracle::from(y.relations(), u.domain())));
    }
}

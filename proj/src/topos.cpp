#include "dbcat/topos.hpp"

#include <algorithm>
#include <map>

namespace dbcat {

namespace {

Instance zero_object() { return Instance{std::vector<Relation>{Relation::bottom()}}; }

std::string show(const ClosedInstance& x, const Universe& u) {
  return to_string(x.relations(), u.domain());
}
std::string show(const Instance& x, const Universe& u) {
  return to_string(x.relations(), u.domain());
}

std::vector<Relation> classifier_generators(const ClosedInstance& ta, const ClosedInstance& tb) {
  std::vector<Relation> gens{Relation::bottom()};
  auto diff = set_difference(tb.relations(), ta.relations());
  gens.insert(gens.end(), diff.begin(), diff.end());
  return gens;
}

bool meet_is_zero(const std::vector<Relation>& gens, const ClosedInstance& flux) {
  return set_intersection(gens, flux.relations()).size() == 1;
}

}  // namespace

ClosedInstance distance(const Instance& a, const Instance& b, const Universe& u) {
  if (iso(a, b, u)) return total_object(u);
  return matching(a, b, u);
}

Pullback pullback(const Morphism& f, const Morphism& g, const Universe& u) {
  if (!(f.target() == g.target()))
    fail(ErrorCode::DomainMismatch, "pullback needs arrows with a common codomain");
  ClosedInstance d = closed_intersection(f.flux(), g.flux());
  Instance object = d.as_instance();
  return {object, semantic_morphism(object, f.source(), d, u),
          semantic_morphism(object, g.source(), d, u)};
}

ConeCheck pullback_universal_check(const Morphism& f, const Morphism& g,
                                   const std::vector<Instance>& objects, HomCache& homs) {
  const Universe& u = homs.universe();
  ConeCheck out;
  Pullback pb = pullback(f, g, u);
  for (const auto& e : objects) {
    const auto& to_d = homs(e, pb.object);
    const auto& ps = homs(e, f.source());
    const auto& qs = homs(e, g.source());
    std::vector<Morphism> fp, gq, am, bm;
    for (const auto& p : ps) fp.push_back(compose(f, p));
    for (const auto& q : qs) gq.push_back(compose(g, q));
    for (const auto& m : to_d) {
      am.push_back(compose(pb.to_a, m));
      bm.push_back(compose(pb.to_b, m));
    }
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = 0; j < qs.size(); ++j) {
        const Morphism& p = ps[i];
        const Morphism& q = qs[j];
        if (!equivalent(fp[i], gq[j])) continue;
        ++out.cones;
        std::size_t mediators = 0;
        for (std::size_t k = 0; k < to_d.size(); ++k)
          if (equivalent(am[k], p) && equivalent(bm[k], q)) ++mediators;
        if (mediators != 1 && out.failures++ == 0)
          out.witness = "E=" + show(e, u) + " p=" + show(p.flux(), u) + " q=" +
                        show(q.flux(), u) + " mediators=" + std::to_string(mediators);
      }
  }
  return out;
}

Classification classifier(const Morphism& in_a, const std::vector<Instance>& objects,
                          HomCache& homs) {
  const Universe& u = homs.universe();
  if (!is_mono(in_a)) fail(ErrorCode::NotMonic, "classifier needs a monic arrow");
  const Instance& a = in_a.source();
  const Instance& b = in_a.target();
  const ClosedInstance& ta = in_a.t_source();
  const ClosedInstance& tb = in_a.t_target();
  const Instance omega = total_object(u).as_instance();

  Classification c{empty_arrow(b, omega, u), classifier_generators(ta, tb), false, 0, 0, {}, {}, false, 0};
  auto sat = u.saturate(b);
  std::vector<QueryTerm> queries{QueryTerm::bot()};
  for (std::size_t i = 1; i < c.generators.size(); ++i)
    queries.push_back(sat->generator_of(c.generators[i]));
  c.characteristic = atomic_morphism(b, omega, queries, u);

  // Generator level: the char composite meets TA only in bottom, matching
  // true after the terminal arrow.
  const Instance zero = zero_object();
  Morphism t_a = empty_arrow(a, zero, u);
  Morphism truth = empty_arrow(zero, omega, u);
  const bool disjoint = meet_is_zero(c.generators, ta);
  c.generator_commutes = disjoint && compose(truth, t_a).flux().is_zero();

  for (const auto& obj : objects)
    for (const auto& h : homs(obj, b)) {
      if (!meet_is_zero(c.generators, h.flux())) continue;
      ++c.factorization_tested;
      std::size_t through = 0;
      for (const auto& k : homs(obj, a))
        if (equivalent(compose(in_a, k), h)) ++through;
      const bool ok = h.flux().is_subset_of(ta) && through == 1;
      if (!ok && c.factorization_failures++ == 0)
        c.factorization_witness = "C=" + show(obj, u) + " h=" + show(h.flux(), u) +
                                  " factorizations=" + std::to_string(through);
    }

  std::vector<Relation> outside(c.generators.begin() + 1, c.generators.end());
  c.closure_meet = closed_intersection(power_view(Instance{outside}, u), ta);
  c.closure_divergent = !c.closure_meet.is_zero();

  for (const auto& x : homs(b, omega)) {
    if (!closed_intersection(x.flux(), ta).is_zero()) continue;
    bool classifies = true;
    for (const auto& obj : objects) {
      for (const auto& h : homs(obj, b))
        if (compose(x, h).flux().is_zero() && !h.flux().is_subset_of(ta)) {
          classifies = false;
          break;
        }
      if (!classifies) break;
    }
    if (classifies) ++c.multiplicity;
  }
  return c;
}

bool equalizer_check(const Morphism& f, const std::vector<Instance>& objects, HomCache& homs) {
  if (!is_mono(f)) fail(ErrorCode::NotMonic, "equalizer_check needs a monic arrow");
  const auto gens = classifier_generators(f.t_source(), f.t_target());
  if (!meet_is_zero(gens, f.flux())) return false;
  for (const auto& obj : objects)
    for (const auto& h : homs(obj, f.target())) {
      const bool equalizes = meet_is_zero(gens, h.flux());
      std::size_t through = 0;
      for (const auto& k : homs(obj, f.source()))
        if (equivalent(compose(f, k), h)) ++through;
      if (equalizes != (through > 0) || through > 1) return false;
    }
  return true;
}

Factorization epi_mono_factorize(const Morphism& f, const Universe& u) {
  Instance middle = f.flux().as_instance();
  return {middle, semantic_morphism(f.source(), middle, f.flux(), u),
          semantic_morphism(middle, f.target(), f.flux(), u)};
}

bool factorization_minimal(const Morphism& f, const std::vector<Instance>& objects,
                           HomCache& homs) {
  const Universe& u = homs.universe();
  Factorization fac = epi_mono_factorize(f, u);
  if (!is_epi(fac.tau) || !is_mono(fac.tau_inv) || !equivalent(compose(fac.tau_inv, fac.tau), f))
    return false;
  for (const auto& l_src : objects) {
    const ClosedInstance tl = power_view(l_src, u);
    if (!tl.is_subset_of(f.t_target())) continue;
    Morphism l = semantic_morphism(l_src, f.target(), tl, u);
    for (const auto& h : homs(f.source(), l_src)) {
      if (!equivalent(compose(l, h), f)) continue;
      if (!fac.tau_inv.flux().is_subset_of(l.flux())) return false;
      std::size_t mediators = 0;
      for (const auto& k : homs(fac.middle, l_src))
        if (equivalent(compose(l, k), fac.tau_inv)) ++mediators;
      if (mediators != 1) return false;
    }
  }
  return true;
}

bool is_flux_pullback(const Square& s, const Universe&) {
  if (!(s.left.source() == s.top.source()) || !(s.top.target() == s.right.source()) ||
      !(s.left.target() == s.bottom.source()) || !(s.right.target() == s.bottom.target()))
    return false;
  return s.top.t_source() == closed_intersection(s.right.flux(), s.bottom.flux()) &&
         is_mono(s.top) && is_mono(s.left) &&
         equivalent(compose(s.right, s.top), compose(s.bottom, s.left));
}

bool coproduct_pullback_check(const Square& s, const Square& s1, const Universe& u) {
  if (!is_flux_pullback(s, u) || !is_flux_pullback(s1, u))
    fail(ErrorCode::NotAPullback, "input square is not a pullback");
  if (!(s.right.source() == s1.right.source()) || !(s.right.target() == s1.right.target()) ||
      !equivalent(s.right, s1.right))
    fail(ErrorCode::NotAPullback, "squares do not share their right arrow");
  Morphism top = copair(s.top, s1.top, u);
  Morphism left = coproduct_arrow(s.left, s1.left, u);
  Morphism bottom = copair(s.bottom, s1.bottom, u);
  const Morphism& right = s.right;
  const bool object = top.t_source() == closed_intersection(right.flux(), bottom.flux());
  const bool legs = is_mono(top) && is_mono(left);
  const bool commutes = equivalent(compose(right, top), compose_erased(bottom, left, u));
  return object && legs && commutes;
}

std::vector<LawEntry> metric_suite(const std::vector<Instance>& objects, HomCache& homs) {
  const Universe& u = homs.universe();
  const std::size_t n = objects.size();
  const ClosedInstance total = total_object(u);
  std::vector<ClosedInstance> closures;
  for (const auto& o : objects) closures.push_back(power_view(o, u));
  std::vector<std::vector<ClosedInstance>> d(n, std::vector<ClosedInstance>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = distance(objects[i], objects[j], u);
  auto isos = [&](std::size_t i, std::size_t j) { return closures[i] == closures[j]; };
  auto name = [&](std::size_t i) { return show(objects[i], u); };

  LawCheck triangle("metric.triangle", "d(A,B) meet d(B,C) within d(A,C)");
  LawCheck symmetry("metric.symmetry", "d(A,B) = d(B,A)");
  LawCheck self("metric.self", "d(A,A) = total");
  LawCheck total_iso("metric.total_iso", "d(A,B) = total implies A iso B");
  LawCheck bottom("metric.bottom", "bottom in every distance");
  LawCheck order("metric.order", "A below B iff d(A,C) within d(B,C) for all C not iso A");
  LawCheck local("metric.local_count", "distances from A embed into endomorphism fluxes of A");
  LawCheck bijection("metric.local_bijection", "distances from A biject with endomorphisms of A");

  for (std::size_t i = 0; i < n; ++i) {
    self.check(d[i][i] == total, [&] { return name(i); });
    std::vector<ClosedInstance> from_a;
    for (std::size_t j = 0; j < n; ++j) {
      symmetry.check(d[i][j] == d[j][i], [&] { return name(i) + " " + name(j); });
      total_iso.check(!(d[i][j] == total) || isos(i, j), [&] { return name(i) + " " + name(j); });
      bottom.check(d[i][j].contains(Relation::bottom()), [&] { return name(i) + " " + name(j); });
      for (std::size_t k = 0; k < n; ++k)
        triangle.check(closed_intersection(d[i][j], d[j][k]).is_subset_of(d[i][k]), [&] {
          std::string branch = isos(i, k) ? "A~C" : isos(i, j) ? "A~B" : isos(j, k) ? "B~C" : "none";
          return name(i) + " " + name(j) + " " + name(k) + " case " + branch;
        });
      bool dominated = true;
      for (std::size_t k = 0; k < n && dominated; ++k)
        if (!isos(k, i) && !d[i][k].is_subset_of(d[j][k])) dominated = false;
      order.check(closures[i].is_subset_of(closures[j]) == dominated,
                  [&] { return name(i) + " " + name(j); });
      if (!isos(i, j)) from_a.push_back(d[i][j]);
    }
    std::sort(from_a.begin(), from_a.end());
    from_a.erase(std::unique(from_a.begin(), from_a.end()), from_a.end());
    const auto& ends = homs(objects[i], objects[i]);
    bool members = from_a.size() <= ends.size();
    for (const auto& x : from_a)
      if (std::none_of(ends.begin(), ends.end(), [&](const Morphism& e) { return e.flux() == x; }))
        members = false;
    local.check(members, [&] { return name(i); });
    bijection.check(from_a.size() == ends.size(), [&] {
      return name(i) + " distances=" + std::to_string(from_a.size()) +
             " endomorphisms=" + std::to_string(ends.size());
    });
  }
  return {triangle.finish(), symmetry.finish(),  self.finish(),  total_iso.finish(),
          bottom.finish(),   order.finish(),     local.finish(), bijection.finish_audit()};
}

std::vector<LawEntry> negative_probes(const std::vector<Instance>& objects, HomCache& homs) {
  const Universe& u = homs.universe();
  const Instance zero = zero_object();

  // Pullback of an epi whose second leg is not epi.
  LawEntry epi{"negative.pullback_epi", "pullback of an epi need not be epi", 0, 0, {}, Status::Pass};
  auto search_epi = [&]() -> std::string {
    for (const auto& c : objects)
      for (const auto& a : objects)
        for (const auto& f : homs(a, c)) {
          if (!is_epi(f)) continue;
          for (const auto& b : objects)
            for (const auto& g : homs(b, c)) {
              ++epi.checked;
              Pullback pb = pullback(f, g, u);
              if (!is_epi(pb.to_b))
                return "f:" + show(a, u) + "->" + show(c, u) + " g=" + show(g.flux(), u) +
                       " from " + show(b, u) + " D=" + show(pb.object, u);
            }
        }
    return {};
  };
  epi.witness = search_epi();
  if (epi.witness.empty()) {
    epi.failures = 1;
    epi.status = Status::Fail;
    epi.witness = "no counterexample found";
  }

  // No candidate object P represents Sub(- x A) for A not iso to zero.
  LawCheck power("negative.no_power_object", "no P with |DB(B,P)| = |Sub(B+A)| for all B");
  const auto candidates = closed_subsets(total_object(u), u);
  std::vector<std::size_t> sub_b;
  for (const auto& b : objects) sub_b.push_back(closed_subsets(power_view(b, u), u).size());
  for (const auto& a : objects) {
    if (power_view(a, u).is_zero()) continue;
    std::vector<std::size_t> sub_ba;
    const std::size_t sub_a = closed_subsets(power_view(a, u), u).size();
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const ClosedInstance sum = power_view(coproduct(objects[i], a), u);
      // Saturation never mixes origins, so closed subsets of a coproduct
      // split into one closed subset per side.
      if (sum.size() > 1 && (sum.size() - 1 > 63 || (std::uint64_t{1} << (sum.size() - 1)) >
                                                        u.config().max_enumeration))
        sub_ba.push_back(sub_b[i] * sub_a);
      else
        sub_ba.push_back(closed_subsets(sum, u).size());
    }
    for (const auto& p : candidates) {
      bool refuted = false;
      for (std::size_t i = 0; i < objects.size() && !refuted; ++i)
        if (semantic_homset(objects[i], p.as_instance(), u).size() != sub_ba[i]) refuted = true;
      power.check(refuted, [&] { return "A=" + show(a, u) + " P=" + show(p, u); });
    }
  }

  // Distinct parallel arrows that agree on every point.
  LawEntry pointed{"negative.not_well_pointed", "distinct parallel arrows agree on all points", 0, 0, {}, Status::Pass};
  for (const auto& a : objects) {
    const auto& points = homs(zero, a);
    for (const auto& b : objects) {
      const auto& arrows = homs(a, b);
      for (std::size_t i = 0; i < arrows.size() && pointed.witness.empty(); ++i)
        for (std::size_t j = i + 1; j < arrows.size() && pointed.witness.empty(); ++j) {
          ++pointed.checked;
          bool agree = true;
          for (const auto& x : points)
            if (!equivalent(compose(arrows[i], x), compose(arrows[j], x))) agree = false;
          if (agree)
            pointed.witness = "A=" + show(a, u) + " B=" + show(b, u) + " f=" +
                              show(arrows[i].flux(), u) + " g=" + show(arrows[j].flux(), u) +
                              " points=" + std::to_string(points.size());
        }
      if (!pointed.witness.empty()) break;
    }
    if (!pointed.witness.empty()) break;
  }
  if (pointed.witness.empty()) {
    pointed.failures = 1;
    pointed.status = Status::Fail;
    pointed.witness = "no witness found";
  }
  return {epi, power.finish(), pointed};
}

}  // namespace dbcat

#include "dbcat/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "dbcat/catops.hpp"
#include "dbcat/topos.hpp"

namespace dbcat {

std::vector<Instance> enumerate_instances(const UniverseConfig& cfg, std::size_t max_relations) {
  const std::vector<Relation> rels = universe_relations(cfg);
  const std::size_t n = rels.size();
  const std::size_t top = std::min(max_relations, n);

  // Count first so oversized requests fail before allocating.
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (std::size_t k = 0; k <= top; ++k) {
    if (k > 0) binom = binom * (n - k + 1) / k;
    total += binom;
    if (total > cfg.max_enumeration)
      fail(ErrorCode::EnumerationTooLarge,
           "more than " + std::to_string(cfg.max_enumeration) + " instances");
  }

  std::vector<Instance> out;
  out.reserve(total);
  for (std::size_t k = 0; k <= top; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<Label> labels;
      for (std::size_t i = 0; i < k; ++i) {
        const Relation& r = rels[idx[i]];
        std::optional<int> arity;
        if (!r.is_bottom()) arity = r.arity();
        labels.push_back({"r" + std::to_string(i + 1), arity, r});
      }
      out.emplace_back(std::move(labels));
      // Next combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

SuiteBounds default_bounds(const UniverseConfig& cfg) {
  return SuiteBounds{cfg.k_max <= 1 ? std::size_t{4} : std::size_t{1}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"closure", "category", "monoidal", "lattice",
                                              "metric",  "topos",    "negative", "all"};
  return names;
}

namespace {

struct Ctx {
  const Universe& u;
  std::vector<Instance> objs;
  std::vector<ClosedInstance> t;
  std::vector<std::size_t> reps;  // first instance of each isomorphism class
  HomCache homs;

  Ctx(const Universe& uni, std::vector<Instance> objects)
      : u(uni), objs(std::move(objects)), homs(uni) {
    for (const auto& o : objs) t.push_back(power_view(o, u));
    for (std::size_t i = 0; i < objs.size(); ++i) {
      bool seen = false;
      for (std::size_t r : reps) seen = seen || t[r] == t[i];
      if (!seen) reps.push_back(i);
    }
  }

  std::size_t size() const { return objs.size(); }
  const std::vector<Morphism>& hom(std::size_t i, std::size_t j) { return homs(objs[i], objs[j]); }
  std::string name(std::size_t i) const { return to_string(objs[i].relations(), u.domain()); }
  std::string show(const ClosedInstance& x) const { return to_string(x.relations(), u.domain()); }
  std::string show(const Morphism& f) const {
    return to_string(f.source().relations(), u.domain()) + "->" +
           to_string(f.target().relations(), u.domain()) + " flux " + show(f.flux());
  }
};

bool is_closed_object(const Ctx& c, std::size_t i) {
  return c.objs[i].relations() == c.t[i].relations();
}

// ({a,b}, 1), where the fixed reference counts live.
Universe reference_universe() { return Universe(UniverseConfig{Domain({"a", "b"}), 1}); }

Instance unary(const Universe& u, std::vector<std::vector<std::string>> sets) {
  std::vector<Relation> rels;
  for (auto& s : sets) {
    std::vector<std::vector<std::string>> tuples;
    for (auto& x : s) tuples.push_back({x});
    rels.push_back(make_relation(u.domain(), 1, tuples));
  }
  return Instance{rels};
}

std::vector<LawEntry> closure_suite(Ctx& c) {
  const std::size_t n = c.size();
  LawCheck extensive("closure.extensive", "A within TA");
  LawCheck monotone("closure.monotone", "A within B implies TA within TB");
  LawCheck idempotent("closure.idempotent", "TTA = TA");
  LawCheck zero("closure.zero", "T(zero) = {bot}");
  LawCheck total("closure.total", "total object is a fixed point of T");
  LawCheck closed("closure.result_closed", "TA closed under every single operator");
  LawCheck meet("closure.intersection", "TA meet TB is closed");
  LawCheck subsets("closure.subsets", "closed subsets of TA are closed and include {bot} and TA");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& ta = c.t[i];
    extensive.check(set_includes(ta.relations(), c.objs[i].relations()), [&] { return c.name(i); });
    idempotent.check(power_view(ta.as_instance(), c.u) == ta, [&] { return c.name(i); });
    closed.check(is_closed(ta.as_instance(), c.u), [&] { return c.name(i); });
    const auto subs = closed_subsets(ta, c.u);
    bool ok = !subs.empty() && subs.front().is_zero() && subs.back() == ta;
    for (const auto& x : subs) ok = ok && is_closed(x.as_instance(), c.u) && x.is_subset_of(ta);
    subsets.check(ok, [&] { return c.name(i); });
    for (std::size_t j = 0; j < n; ++j) {
      const bool inside = set_includes(c.objs[j].relations(), c.objs[i].relations());
      monotone.check(!inside || ta.is_subset_of(c.t[j]),
                     [&] { return c.name(i) + " " + c.name(j); });
      meet.check(is_closed(closed_intersection(ta, c.t[j]).as_instance(), c.u),
                 [&] { return c.name(i) + " " + c.name(j); });
    }
  }
  const Instance bot{std::vector<Relation>{Relation::bottom()}};
  zero.check(power_view(bot, c.u).is_zero() && power_view(Instance{}, c.u).is_zero(), "{bot}");
  const ClosedInstance up = total_object(c.u);
  total.check(power_view(up.as_instance(), c.u) == up &&
                  up.relations() == universe_relations(c.u.config()),
              [&] { return c.show(up); });
  return {extensive.finish(), monotone.finish(), idempotent.finish(), zero.finish(),
          total.finish(),     closed.finish(),   meet.finish(),      subsets.finish()};
}

std::vector<LawEntry> category_suite(Ctx& c) {
  const std::size_t n = c.size();
  LawCheck flux("category.flux_composition", "flux(g.f) = flux(g) meet flux(f)");
  LawCheck assoc("category.associativity", "h.(g.f) ~ (h.g).f");
  LawCheck ident("category.identity", "id.f ~ f ~ f.id");
  LawCheck mono("category.mono", "flux(f) = TA iff f is left-cancellable");
  LawCheck epi("category.epi", "flux(f) = TB iff f is right-cancellable");
  LawCheck iso_law("category.iso", "mono and epi iff an inverse exists");
  LawCheck cells("category.two_cells", "f <= g and g <= f iff f ~ g");
  LawCheck lift("functor.lift_T", "lift_T keeps flux and reflects mono, epi, iso");
  LawCheck inv("duality.invert", "flux(f^inv) = flux(f) and f^inv^inv ~ f");
  LawCheck faithful("duality.totalize", "totalize(f) = totalize(g) iff f ~ g on closed objects");

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& fs = c.hom(a, b);
      const Morphism id_a = identity(c.objs[a], c.u);
      const Morphism id_b = identity(c.objs[b], c.u);
      for (std::size_t x = 0; x < fs.size(); ++x) {
        const Morphism& f = fs[x];
        auto wf = [&] { return c.show(f); };
        ident.check(equivalent(compose(id_b, f), f) && equivalent(compose(f, id_a), f), wf);

        bool left_cancel = true;
        bool right_cancel = true;
        for (std::size_t k = 0; k < n; ++k) {
          const auto& gs = c.hom(k, a);
          for (std::size_t i = 0; i < gs.size() && left_cancel; ++i)
            for (std::size_t j = i + 1; j < gs.size() && left_cancel; ++j)
              if (equivalent(compose(f, gs[i]), compose(f, gs[j]))) left_cancel = false;
          const auto& hs = c.hom(b, k);
          for (std::size_t i = 0; i < hs.size() && right_cancel; ++i)
            for (std::size_t j = i + 1; j < hs.size() && right_cancel; ++j)
              if (equivalent(compose(hs[i], f), compose(hs[j], f))) right_cancel = false;
        }
        mono.check(is_mono(f) == left_cancel && is_mono(f) == (f.flux() == c.t[a]), wf);
        epi.check(is_epi(f) == right_cancel && is_epi(f) == (f.flux() == c.t[b]), wf);
        bool inverse = false;
        for (const auto& g : c.hom(b, a))
          inverse = inverse || (equivalent(compose(g, f), id_a) && equivalent(compose(f, g), id_b));
        iso_law.check(is_iso(f) == (is_mono(f) && is_epi(f)) && is_iso(f) == inverse, wf);

        for (std::size_t y = 0; y < fs.size(); ++y) {
          const bool both = arrow_po_leq(f, fs[y]) && arrow_po_leq(fs[y], f);
          cells.check(both == equivalent(f, fs[y]) && both == (x == y),
                      [&] { return c.show(f) + " vs " + c.show(fs[y]); });
        }

        const Morphism lt = lift_T(f, c.u);
        lift.check(lt.flux() == f.flux() && is_mono(lt) == is_mono(f) &&
                       is_epi(lt) == is_epi(f) && is_iso(lt) == is_iso(f),
                   wf);
        const Morphism fi = invert(f, c.u);
        inv.check(fi.flux() == f.flux() && fi.source() == f.target() && fi.target() == f.source() &&
                      equivalent(invert(fi, c.u), f) && is_mono(fi) == (f.flux() == c.t[b]),
                  wf);

        for (std::size_t d = 0; d < n; ++d)
          for (const auto& g : c.hom(b, d)) {
            const Morphism gf = compose(g, f);
            flux.check(gf.flux().relations() ==
                           set_intersection(f.flux().relations(), g.flux().relations()),
                       [&] { return c.show(f) + " then " + c.show(g); });
            for (std::size_t e = 0; e < n; ++e)
              for (const auto& h : c.hom(d, e))
                assoc.check(equivalent(compose(h, gf), compose(compose(h, g), f)),
                            [&] { return c.show(f) + " then " + c.show(g) + " then " + c.show(h); });
          }
      }
      if (is_closed_object(c, a) && is_closed_object(c, b))
        for (const auto& f : fs)
          for (const auto& g : fs)
            faithful.check((totalize(f, c.u) == totalize(g, c.u)) == equivalent(f, g),
                           [&] { return c.show(f) + " vs " + c.show(g); });
    }
  return {flux.finish(),    assoc.finish(), ident.finish(), mono.finish(),
          epi.finish(),     iso_law.finish(), cells.finish(), lift.finish(),
          inv.finish(),     faithful.finish()};
}

std::vector<LawEntry> monoidal_suite(Ctx& c) {
  const std::size_t n = c.size();
  const ClosedInstance up = total_object(c.u);
  const Instance up_i = up.as_instance();
  const Instance bot{std::vector<Relation>{Relation::bottom()}};
  std::vector<std::vector<ClosedInstance>> m(n, std::vector<ClosedInstance>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = matching(c.objs[i], c.objs[j], c.u);

  LawCheck comm("monoidal.commutative", "A(x)B = B(x)A");
  LawCheck assoc("monoidal.associative", "(A(x)B)(x)C = A(x)(B(x)C)");
  LawCheck idem("monoidal.idempotent", "A(x)A = TA");
  LawCheck unit("monoidal.unit", "A(x)total = TA");
  LawCheck zero("monoidal.zero", "A(x)zero = {bot}");
  LawCheck bounds("monoidal.flux_bounds", "{bot} within flux(f) within A(x)B");
  LawCheck tensor("monoidal.tensor_arrows", "flux(f(x)g) = flux(f) meet flux(g)");
  LawCheck monoid_unit("monoidal.monoid_unit", "mu.(eta(x)id) ~ left unitor, mu.(id(x)eta) ~ right unitor");
  LawCheck monoid_assoc("monoidal.monoid_assoc", "mu.(mu(x)id) ~ mu.(id(x)mu).alpha");
  LawCheck coherence("monoidal.coherence", "associator and unitors are isos");
  LawCheck hom("closed.hom_object", "C^B = B(x)C = merge of arrow fluxes B -> C");
  LawCheck counting("closed.counting", "|DB(A(x)B,C)| = |DB(A,C^B)|");
  LawCheck exponent("closed.exponent", "eval.(lambda f (x) id) ~ f");
  LawCheck eval_law("closed.eval", "eval is monic with flux B(x)C");
  LawCheck reference("closed.reference_counts", "|DB(Pa,Pb)| = 1 and |DB(Pab,Pab)| = 4 at ({a,b},1)");
  LawCheck enrich("enrichment.arrows", "flux(m) = TA meet TB meet TC, flux(j) = TA");
  LawCheck principal("principal.factor", "f ~ h.g with h principal and flux(f) within flux(h)");
  LawCheck retract("retraction.monic", "f^inv.f ~ id for monic f");
  LawCheck ret("retraction.category", "|DB(f,g)| = |{k : k ~ g.k.f}|");
  LawCheck coprod("coproduct.closure", "|T(A+B)| = |TA| + |TB| - 1 and erasure gives A(+)B");
  LawCheck merge_functor("merge.functor", "A(+)id ~ id and A(+)(g.f) ~ (A(+)g).(A(+)f)");

  std::vector<Morphism> all_arrows;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& f : c.hom(a, b)) all_arrows.push_back(f);
  std::vector<Morphism> rep_arrows;
  for (std::size_t a : c.reps)
    for (std::size_t b : c.reps)
      for (const auto& f : c.hom(a, b)) rep_arrows.push_back(f);

  for (std::size_t a = 0; a < n; ++a) {
    const Instance& A = c.objs[a];
    auto wa = [&] { return c.name(a); };
    idem.check(m[a][a] == c.t[a], wa);
    unit.check(matching(A, up_i, c.u) == c.t[a] && matching(up_i, A, c.u) == c.t[a], wa);
    zero.check(matching(A, bot, c.u).is_zero(), wa);

    const MonoidStructure ms = monoid_structure(A, c.u);
    const Morphism id = identity(A, c.u);
    monoid_unit.check(
        equivalent(compose(ms.mu, tensor_arrows(ms.eta, id, c.u)), left_unitor(A, c.u)) &&
            equivalent(compose(ms.mu, tensor_arrows(id, ms.eta, c.u)), right_unitor(A, c.u)),
        wa);
    monoid_assoc.check(
        equivalent(compose(ms.mu, tensor_arrows(ms.mu, id, c.u)),
                   compose(compose(ms.mu, tensor_arrows(id, ms.mu, c.u)),
                           associator(A, A, A, c.u))),
        wa);
    enrich.check(enrichment_identity(A, c.u).flux() == c.t[a], wa);
    const RetProbe probe = ret_category_probe(A, c.u);
    ret.check(probe.mismatches == 0, [&] { return c.name(a) + " " + probe.witness; });
    coherence.check(is_iso(left_unitor(A, c.u)) && is_iso(right_unitor(A, c.u)), wa);

    for (std::size_t b = 0; b < n; ++b) {
      const Instance& B = c.objs[b];
      auto wab = [&] { return c.name(a) + " " + c.name(b); };
      comm.check(m[a][b] == m[b][a], wab);
      hom.check(hom_object(A, B, c.u) == m[a][b] && hom_object_by_merge(A, B, c.u) == m[a][b], wab);
      const Morphism ev = eval_arrow(A, B, c.u);
      eval_law.check(is_mono(ev) && ev.flux() == m[a][b], wab);
      const ClosedInstance sum = power_view(coproduct(A, B), c.u);
      coprod.check(sum.size() + 1 == c.t[a].size() + c.t[b].size() &&
                       erase_origins(sum, c.u) == merging(A, B, c.u),
                   wab);
      for (const auto& f : c.hom(a, b)) {
        bounds.check(f.flux().contains(Relation::bottom()) && f.flux().is_subset_of(m[a][b]),
                     [&] { return c.show(f); });
        const Morphism h = principal_morphism(A, B, c.u);
        principal.check(f.flux().is_subset_of(h.flux()) &&
                            equivalent(f, compose(h, factor_through_principal(f, c.u))),
                        [&] { return c.show(f); });
        if (is_mono(f)) retract.check(retraction_check(f, c.u), [&] { return c.show(f); });
      }
      for (std::size_t k = 0; k < n; ++k) {
        const Instance& C = c.objs[k];
        auto wabc = [&] { return c.name(a) + " " + c.name(b) + " " + c.name(k); };
        assoc.check(matching(m[a][b].as_instance(), C, c.u) ==
                        matching(A, m[b][k].as_instance(), c.u),
                    wabc);
        coherence.check(is_iso(associator(A, B, C, c.u)), wabc);
        enrich.check(enrichment_composition(A, B, C, c.u).flux() ==
                         closed_intersection(m[a][b], c.t[k]),
                     wabc);
        const Instance ab = m[a][b].as_instance();
        const Instance cb = m[b][k].as_instance();  // C^B
        const auto& fs = c.homs(ab, C);
        counting.check(fs.size() == c.homs(A, cb).size(), wabc);
        const Morphism ev = eval_arrow(B, C, c.u);
        const Morphism id_b = identity(B, c.u);
        for (const auto& f : fs)
          exponent.check(
              equivalent(compose(ev, tensor_arrows(lambda(A, B, f, c.u), id_b, c.u)), f),
              [&] { return wabc() + " f=" + c.show(f.flux()); });
      }
    }
  }
  // The merge functor, for one object A per isomorphism class.
  for (std::size_t a : c.reps) {
    const Instance& A = c.objs[a];
    std::map<const Morphism*, Morphism> memo;  // homset entries have stable addresses
    auto merged = [&](const Morphism& f) -> const Morphism& {
      auto it = memo.find(&f);
      if (it == memo.end()) it = memo.emplace(&f, merge_arrow(A, f, c.u)).first;
      return it->second;
    };
    for (std::size_t b = 0; b < n; ++b) {
      const Morphism id_b = identity(c.objs[b], c.u);
      const Morphism lifted = merge_arrow(A, id_b, c.u);
      merge_functor.check(equivalent(lifted, identity(lifted.source(), c.u)),
                          [&] { return c.name(a) + " id " + c.name(b); });
      for (std::size_t k = 0; k < n; ++k)
        for (const auto& f : c.hom(b, k)) {
          const Morphism& af = merged(f);
          for (std::size_t d = 0; d < n; ++d)
            for (const auto& g : c.hom(k, d))
              merge_functor.check(
                  equivalent(merge_arrow(A, compose(g, f), c.u), compose(merged(g), af)),
                  [&] { return c.name(a) + " " + c.show(f) + " then " + c.show(g); });
        }
    }
  }

  for (const auto& f : all_arrows)
    for (const auto& g : rep_arrows)
      tensor.check(tensor_arrows(f, g, c.u).flux() == closed_intersection(f.flux(), g.flux()),
                   [&] { return c.show(f) + " (x) " + c.show(g); });

  const Universe ref = reference_universe();
  const Instance pa = unary(ref, {{"a"}});
  const Instance pb = unary(ref, {{"b"}});
  const Instance pab = unary(ref, {{"a"}, {"b"}});
  const std::size_t n_ab = semantic_homset(pa, pb, ref).size();
  const std::size_t n_ee = semantic_homset(pab, pab, ref).size();
  reference.check(n_ab == 1 && n_ee == 4, [&] {
    return "|DB(Pa,Pb)|=" + std::to_string(n_ab) + " |DB(Pab,Pab)|=" + std::to_string(n_ee);
  });

  return {comm.finish(),      assoc.finish(),    idem.finish(),         unit.finish(),
          zero.finish(),      bounds.finish(),   tensor.finish(),       monoid_unit.finish(),
          monoid_assoc.finish(), coherence.finish(), hom.finish(),      counting.finish(),
          exponent.finish(),  eval_law.finish(), reference.finish(),    enrich.finish(),
          principal.finish(), retract.finish(),  ret.finish(),          coprod.finish(),
          merge_functor.finish()};
}

std::vector<LawEntry> lattice_suite(Ctx& c) {
  const std::size_t n = c.size();
  const ClosedInstance up = total_object(c.u);
  const auto closed_sets = closed_subsets(up, c.u);
  std::vector<std::vector<ClosedInstance>> inf(n, std::vector<ClosedInstance>(n));
  std::vector<std::vector<ClosedInstance>> sup(n, std::vector<ClosedInstance>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      inf[i][j] = lattice_inf(c.objs[i], c.objs[j], c.u);
      sup[i][j] = lattice_sup(c.objs[i], c.objs[j], c.u);
    }

  LawCheck glb("lattice.inf", "A(x)B is the greatest closed set below TA and TB");
  LawCheck lub("lattice.sup", "A(+)B is the least closed set above TA and TB");
  LawCheck absorb("lattice.absorption", "A(+)(A(x)B) = TA = A(x)(A(+)B)");
  LawCheck merge("lattice.merge_laws", "(+) commutative, associative, idempotent, zero and total laws");
  LawCheck dist("lattice.distributive", "(A(+)B)(x)C = T((A(x)C) u (B(x)C))");
  LawCheck raw("lattice.distributive_raw", "(A(+)B)(x)C = (A(x)C) u (B(x)C) without closure");
  LawCheck count("lattice.closed_count", "4 closed subsets of the total object at ({a,b},1)");
  LawCheck chain("chain.stabilizes", "omega chain is bot, TA, TA, TA");

  const Instance bot{std::vector<Relation>{Relation::bottom()}};
  for (std::size_t a = 0; a < n; ++a) {
    const Instance& A = c.objs[a];
    auto wa = [&] { return c.name(a); };
    merge.check(sup[a][a] == c.t[a] && merging(A, bot, c.u) == c.t[a] &&
                    merging(A, up.as_instance(), c.u) == up,
                wa);
    const auto ch = omega_chain(A, c.u, 3);
    bool stable = ch.size() == 4 && ch[0].is_zero();
    for (std::size_t s = 1; s < ch.size(); ++s) stable = stable && ch[s] == c.t[a];
    chain.check(stable, wa);
    for (std::size_t b = 0; b < n; ++b) {
      auto wab = [&] { return c.name(a) + " " + c.name(b); };
      bool g_ok = inf[a][b].is_subset_of(c.t[a]) && inf[a][b].is_subset_of(c.t[b]);
      bool l_ok = c.t[a].is_subset_of(sup[a][b]) && c.t[b].is_subset_of(sup[a][b]);
      for (const auto& x : closed_sets) {
        if (x.is_subset_of(c.t[a]) && x.is_subset_of(c.t[b])) g_ok = g_ok && x.is_subset_of(inf[a][b]);
        if (c.t[a].is_subset_of(x) && c.t[b].is_subset_of(x)) l_ok = l_ok && sup[a][b].is_subset_of(x);
      }
      glb.check(g_ok, wab);
      lub.check(l_ok, wab);
      absorb.check(merging(A, inf[a][b].as_instance(), c.u) == c.t[a] &&
                       matching(A, sup[a][b].as_instance(), c.u) == c.t[a],
                   wab);
      merge.check(sup[a][b] == sup[b][a], wab);
      for (std::size_t k = 0; k < n; ++k) {
        auto wabc = [&] { return c.name(a) + " " + c.name(b) + " " + c.name(k); };
        merge.check(merging(sup[a][b].as_instance(), c.objs[k], c.u) ==
                        merging(A, sup[b][k].as_instance(), c.u),
                    wabc);
        const ClosedInstance lhs = matching(sup[a][b].as_instance(), c.objs[k], c.u);
        const auto joined = set_union(inf[a][k].relations(), inf[b][k].relations());
        dist.check(lhs == power_view(Instance{joined}, c.u), wabc);
        raw.check(lhs.relations() == joined, [&] {
          return wabc() + ": " + c.show(lhs) + " vs " + to_string(joined, c.u.domain());
        });
      }
    }
  }
  const Universe ref = reference_universe();
  const std::size_t closed_count = closed_subsets(total_object(ref), ref).size();
  count.check(closed_count == 4, [&] { return std::to_string(closed_count); });

  return {glb.finish(),  lub.finish(), absorb.finish(),     merge.finish(),
          dist.finish(), raw.finish_audit(), count.finish(), chain.finish()};
}

std::vector<LawEntry> topos_suite(Ctx& c) {
  const std::size_t n = c.size();
  LawCheck object("topos.pullback_object", "pullback object is flux(f) meet flux(g), closed, legs monic, square commutes");
  LawCheck universal("topos.pullback_universal", "every cone factors uniquely through the pullback");
  LawCheck classify("topos.classifier", "generator-level square commutes and is a pullback for every monic");
  LawCheck unique("topos.classifier_unique", "one characteristic arrow satisfies the square");
  LawCheck closure_level("topos.classifier_closure", "T(TB - TA) meet TA = {bot}");
  LawCheck equal("topos.equalizer", "every monic equalizes its characteristic arrow and true");
  LawCheck factor("topos.factorization", "epi-mono factorization through flux(f) is minimal");
  LawCheck copb("topos.coproduct_pullback", "coproducts of pullback squares are pullbacks");

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (const auto& f : c.hom(a, b))
        factor.check(factorization_minimal(f, c.objs, c.homs), [&] { return c.show(f); });
      if (!c.t[a].is_subset_of(c.t[b])) continue;
      const Morphism in_a = semantic_morphism(c.objs[a], c.objs[b], c.t[a], c.u);
      const Classification cl = classifier(in_a, c.objs, c.homs);
      auto wm = [&] { return c.name(a) + " into " + c.name(b); };
      classify.check(cl.generator_commutes && cl.factorization_failures == 0, [&] {
        return wm() + (cl.factorization_witness.empty() ? "" : " " + cl.factorization_witness);
      });
      unique.check(cl.multiplicity == 1,
                   [&] { return wm() + " multiplicity=" + std::to_string(cl.multiplicity); });
      closure_level.check(!cl.closure_divergent, [&] {
        return wm() + ": T(TB-TA) meet TA = " + c.show(cl.closure_meet);
      });
      equal.check(equalizer_check(in_a, c.objs, c.homs), wm);
    }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k)
        for (const auto& f : c.hom(a, k))
          for (const auto& g : c.hom(b, k)) {
            auto wc = [&] { return c.show(f) + " , " + c.show(g); };
            const Pullback pb = pullback(f, g, c.u);
            object.check(pb.object.relations() ==
                                 set_intersection(f.flux().relations(), g.flux().relations()) &&
                             is_closed(pb.object, c.u) && is_mono(pb.to_a) && is_mono(pb.to_b) &&
                             equivalent(compose(f, pb.to_a), compose(g, pb.to_b)),
                         wc);
            const ConeCheck cone = pullback_universal_check(f, g, c.objs, c.homs);
            universal.check(cone.failures == 0, [&] { return wc() + ": " + cone.witness; });
          }

  // Squares over one object per isomorphism class; flux laws are invariant
  // under isomorphism.
  for (std::size_t d : c.reps)
    for (std::size_t e : c.reps)
      for (const auto& right : c.hom(d, e)) {
        std::vector<Square> squares;
        for (std::size_t b : c.reps)
          for (const auto& bottom : c.hom(b, e)) {
            const Pullback pb = pullback(right, bottom, c.u);
            squares.push_back({pb.to_a, pb.to_b, bottom, right});
          }
        for (const auto& s : squares)
          for (const auto& s1 : squares)
            copb.check(coproduct_pullback_check(s, s1, c.u), [&] {
              return "right " + c.show(right) + " bottoms " + c.show(s.bottom) + " , " +
                     c.show(s1.bottom);
            });
      }

  return {object.finish(), universal.finish(), classify.finish(),
          unique.finish(), closure_level.finish_audit(), equal.finish(),
          factor.finish(), copb.finish()};
}

using SuiteFn = std::function<std::vector<LawEntry>(Ctx&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"closure", closure_suite},
      {"category", category_suite},
      {"monoidal", monoidal_suite},
      {"lattice", lattice_suite},
      {"metric", [](Ctx& c) { return metric_suite(c.objs, c.homs); }},
      {"topos", topos_suite},
      {"negative", [](Ctx& c) { return negative_probes(c.objs, c.homs); }},
  };
  return table;
}

}  // namespace

SuiteReport run_suite(std::string_view name, const Universe& u, const SuiteBounds& bounds) {
  const auto& table = suites();
  const bool all = name == "all";
  if (!all && std::none_of(table.begin(), table.end(),
                           [&](const auto& s) { return s.first == name; }))
    fail(ErrorCode::UnknownSuite, "unknown suite '" + std::string(name) + "'");

  const auto start = std::chrono::steady_clock::now();
  Ctx ctx(u, enumerate_instances(u.config(), bounds.max_relations));
  SuiteReport report{std::string(name), {}, 0};
  for (const auto& [suite, fn] : table) {
    if (!all && suite != name) continue;
    auto entries = fn(ctx);
    report.entries.insert(report.entries.end(), entries.begin(), entries.end());
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SuiteReport classify_subobject(const Instance& a, const Instance& b, const Universe& u,
                               const SuiteBounds& bounds) {
  const auto start = std::chrono::steady_clock::now();
  const ClosedInstance ta = power_view(a, u);
  const ClosedInstance tb = power_view(b, u);
  if (!ta.is_subset_of(tb)) fail(ErrorCode::NotMonic, "TA is not contained in TB");
  std::vector<Instance> objects = enumerate_instances(u.config(), bounds.max_relations);
  objects.push_back(a);
  objects.push_back(b);
  HomCache homs(u);
  const Morphism in_a = semantic_morphism(a, b, ta, u);
  const Classification cl = classifier(in_a, objects, homs);
  const Domain& dom = u.domain();

  LawCheck gen("subobject.classifier", "generator-level square commutes and is a pullback");
  gen.check(cl.generator_commutes && cl.factorization_failures == 0, [&] {
    return "generators " + to_string(cl.generators, dom) + " " + cl.factorization_witness;
  });
  LawCheck unique("subobject.unique", "one characteristic arrow satisfies the square");
  unique.check(cl.multiplicity == 1, [&] { return "multiplicity=" + std::to_string(cl.multiplicity); });
  LawCheck closure("subobject.closure", "T(TB - TA) meet TA = {bot}");
  closure.check(!cl.closure_divergent, [&] { return "meet " + to_string(cl.closure_meet.relations(), dom); });
  LawCheck equal("subobject.equalizer", "A equalizes the characteristic arrow and true");
  equal.check(equalizer_check(in_a, objects, homs), "equalizer property fails");

  LawEntry chars{"subobject.characteristic", "characteristic arrow " + to_string(cl.characteristic.flux().relations(), dom),
                 1, 0, "generators " + to_string(cl.generators, dom), Status::Pass};
  SuiteReport report{"classify-subobject",
                     {chars, gen.finish(), unique.finish(), closure.finish_audit(), equal.finish()},
                     0};
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace dbcat

#include "dbcat/catops.hpp"

namespace dbcat {

ClosedInstance matching(const Instance& a, const Instance& b, const Universe& u) {
  return closed_intersection(power_view(a, u), power_view(b, u));
}

ClosedInstance merging(const Instance& a, const Instance& b, const Universe& u) {
  return power_view(Instance{set_union(a.relations(), b.relations())}, u);
}

ClosedInstance hom_object(const Instance& b, const Instance& c, const Universe& u) {
  return matching(b, c, u);
}

ClosedInstance hom_object_by_merge(const Instance& b, const Instance& c, const Universe& u) {
  std::vector<Relation> all;
  for (const auto& x : semantic_homset(b, c, u)) all = set_union(all, x.relations());
  return power_view(Instance{std::move(all)}, u);
}

std::vector<ClosedInstance> omega_chain(const Instance& a, const Universe& u, int steps) {
  if (steps < 1) fail(ErrorCode::InvalidArgument, "omega_chain needs at least one step");
  std::vector<ClosedInstance> chain{ClosedInstance{}};
  for (int i = 0; i < steps; ++i)
    chain.push_back(merging(a, Instance{chain.back().relations()}, u));
  return chain;
}

Morphism merge_arrow(const Instance& a, const Morphism& f, const Universe& u) {
  Instance src = merging(a, f.source(), u).as_instance();
  Instance tgt = merging(a, f.target(), u).as_instance();
  return semantic_morphism(src, tgt, merging(a, Instance{f.flux().relations()}, u), u);
}

Morphism tensor_arrows(const Morphism& f, const Morphism& g, const Universe& u) {
  Instance src = matching(f.source(), g.source(), u).as_instance();
  Instance tgt = matching(f.target(), g.target(), u).as_instance();
  return semantic_morphism(src, tgt, closed_intersection(f.flux(), g.flux()), u);
}

Morphism lambda(const Instance& a, const Instance& b, const Morphism& f, const Universe& u) {
  const ClosedInstance ab = matching(a, b, u);
  if (!f.flux().is_subset_of(ab) || !f.flux().is_subset_of(f.t_target()))
    fail(ErrorCode::FluxOutOfRange, "flux of f is not within T(A(x)B) and TC");
  Instance exponent = hom_object(b, f.target(), u).as_instance();
  return semantic_morphism(a, exponent, f.flux(), u);
}

Morphism eval_arrow(const Instance& b, const Instance& c, const Universe& u) {
  const ClosedInstance bc = hom_object(b, c, u);
  Instance src = matching(bc.as_instance(), b, u).as_instance();
  return semantic_morphism(src, c, bc, u);
}

namespace {

std::vector<Label> tagged_labels(const Instance& a, bool left) {
  std::vector<Label> out;
  for (const auto& l : a.labels()) {
    const Origin o = l.relation.origin();
    out.push_back({(left ? "l_" : "r_") + l.name, l.declared_arity,
                   l.relation.with_origin(left ? tag_left(o) : tag_right(o))});
  }
  return out;
}

std::vector<Relation> tagged(const std::vector<Relation>& rels, bool left) {
  std::vector<Relation> out;
  for (const auto& r : rels)
    out.push_back(r.with_origin(left ? tag_left(r.origin()) : tag_right(r.origin())));
  return out;
}

}  // namespace

Instance coproduct(const Instance& a, const Instance& b) {
  std::vector<Relation> rels = tagged(a.relations(), true);
  auto right = tagged(b.relations(), false);
  rels.insert(rels.end(), right.begin(), right.end());
  std::vector<Label> labels = tagged_labels(a, true);
  auto rl = tagged_labels(b, false);
  labels.insert(labels.end(), rl.begin(), rl.end());
  return Instance{std::move(rels), std::move(labels)};
}

Instance erase_origins(const Instance& a) {
  std::vector<Relation> rels;
  for (const auto& r : a.relations())
    rels.push_back(r.origin() > kUntagged ? r.with_origin(r.origin() >> 1) : r);
  return Instance{std::move(rels)};
}

ClosedInstance erase_origins(const ClosedInstance& x, const Universe& u) {
  return power_view(erase_origins(Instance{x.relations()}), u);
}

Morphism coproduct_arrow(const Morphism& f, const Morphism& g, const Universe& u) {
  Instance src = coproduct(f.source(), g.source());
  Instance tgt = coproduct(f.target(), g.target());
  auto rels = tagged(f.flux().relations(), true);
  auto right = tagged(g.flux().relations(), false);
  rels.insert(rels.end(), right.begin(), right.end());
  return semantic_morphism(src, tgt, power_view(Instance{std::move(rels)}, u), u);
}

Morphism codiagonal(const Instance& a, const Universe& u) {
  Instance src = erase_origins(coproduct(a, a));
  return semantic_morphism(src, a, power_view(a, u), u);
}

Morphism compose_erased(const Morphism& g, const Morphism& f, const Universe& u) {
  if (!(erase_origins(f.target()) == erase_origins(g.source())))
    fail(ErrorCode::DomainMismatch, "codomain of the first arrow differs from the domain of "
                                    "the second after erasing tags");
  Instance src = erase_origins(f.source());
  ClosedInstance flux = closed_intersection(g.flux(), erase_origins(f.flux(), u));
  return semantic_morphism(src, g.target(), flux, u);
}

Morphism copair(const Morphism& f, const Morphism& f1, const Universe& u) {
  if (!(f.target() == f1.target()))
    fail(ErrorCode::DomainMismatch, "copairing needs arrows with a common target");
  return compose_erased(codiagonal(f.target(), u), coproduct_arrow(f, f1, u), u);
}

MonoidStructure monoid_structure(const Instance& a, const Universe& u) {
  const ClosedInstance ta = power_view(a, u);
  Instance aa = matching(a, a, u).as_instance();
  Instance total = total_object(u).as_instance();
  return {semantic_morphism(aa, a, ta, u), semantic_morphism(total, a, ta, u)};
}

Morphism associator(const Instance& a, const Instance& b, const Instance& c, const Universe& u) {
  Instance left = matching(matching(a, b, u).as_instance(), c, u).as_instance();
  Instance right = matching(a, matching(b, c, u).as_instance(), u).as_instance();
  return semantic_morphism(left, right, power_view(left, u), u);
}

Morphism left_unitor(const Instance& a, const Universe& u) {
  Instance src = matching(total_object(u).as_instance(), a, u).as_instance();
  return semantic_morphism(src, a, power_view(a, u), u);
}

Morphism right_unitor(const Instance& a, const Universe& u) {
  Instance src = matching(a, total_object(u).as_instance(), u).as_instance();
  return semantic_morphism(src, a, power_view(a, u), u);
}

Morphism enrichment_composition(const Instance& a, const Instance& b, const Instance& c,
                                const Universe& u) {
  Instance cb = hom_object(b, c, u).as_instance();
  Instance ba = hom_object(a, b, u).as_instance();
  Instance src = matching(cb, ba, u).as_instance();
  Instance tgt = hom_object(a, c, u).as_instance();
  return semantic_morphism(src, tgt, matching(src, tgt, u), u);
}

Morphism enrichment_identity(const Instance& a, const Universe& u) {
  Instance tgt = hom_object(a, a, u).as_instance();
  return semantic_morphism(total_object(u).as_instance(), tgt, power_view(a, u), u);
}

Morphism principal_morphism(const Instance& a, const Instance& b, const Universe& u) {
  return semantic_morphism(a, b, matching(a, b, u), u);
}

Morphism factor_through_principal(const Morphism& f, const Universe& u) {
  return semantic_morphism(f.source(), f.source(), f.flux(), u);
}

bool retraction_check(const Morphism& f, const Universe& u) {
  if (!is_mono(f)) fail(ErrorCode::NotMonic, "retraction_check needs a monic arrow");
  return equivalent(compose(invert(f, u), f), identity(f.source(), u));
}

RetProbe ret_category_probe(const Instance& a, const Universe& u) {
  RetProbe probe;
  const auto ends = homset_arrows(a, a, u);
  for (const auto& f : ends)
    for (const auto& g : ends) {
      ++probe.pairs;
      const std::size_t between =
          semantic_homset(f.flux().as_instance(), g.flux().as_instance(), u).size();
      std::size_t fixed = 0;
      for (const auto& k : ends)
        if (equivalent(k, compose(g, compose(k, f)))) ++fixed;
      if (between != fixed && probe.mismatches++ == 0)
        probe.witness = "|f|=" + std::to_string(f.flux().size()) + " |g|=" +
                        std::to_string(g.flux().size()) + ": " + std::to_string(between) +
                        " vs " + std::to_string(fixed);
    }
  return probe;
}

}  // namespace dbcat

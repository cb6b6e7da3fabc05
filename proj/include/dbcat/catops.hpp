#pragma once

// Matching, merging, coproducts and the arrows built from them: tensor of
// arrows, exponent transposition, monoid structure, coherence arrows,
// principal morphisms and retractions.

#include <string>
#include <vector>

#include "dbcat/closure.hpp"
#include "dbcat/morphism.hpp"

namespace dbcat {

/// TA intersected with TB.
ClosedInstance matching(const Instance& a, const Instance& b, const Universe& u);
/// T(A union B).
ClosedInstance merging(const Instance& a, const Instance& b, const Universe& u);

inline ClosedInstance lattice_inf(const Instance& a, const Instance& b, const Universe& u) {
  return matching(a, b, u);
}
inline ClosedInstance lattice_sup(const Instance& a, const Instance& b, const Universe& u) {
  return merging(a, b, u);
}

/// Internal hom C^B, equal to the matching of B and C.
ClosedInstance hom_object(const Instance& b, const Instance& c, const Universe& u);
/// The same object computed as the merge of every arrow flux B -> C.
ClosedInstance hom_object_by_merge(const Instance& b, const Instance& c, const Universe& u);

/// bottom, S(bottom), S(S(bottom)), ... with S(X) = T(A union X); steps + 1
/// entries. Errors: InvalidArgument when steps < 1.
std::vector<ClosedInstance> omega_chain(const Instance& a, const Universe& u, int steps);

/// A(+)f : A(+)B -> A(+)C with flux T(A union flux f).
Morphism merge_arrow(const Instance& a, const Morphism& f, const Universe& u);

/// f(x)g : A(x)C -> B(x)D with flux flux(f) intersected with flux(g).
Morphism tensor_arrows(const Morphism& f, const Morphism& g, const Universe& u);

/// Transpose of f : A(x)B -> C as A -> C^B, same flux.
/// Errors: FluxOutOfRange unless flux(f) lies in TA, TB and TC.
Morphism lambda(const Instance& a, const Instance& b, const Morphism& f, const Universe& u);
/// eval : C^B (x) B -> C, flux B(x)C.
Morphism eval_arrow(const Instance& b, const Instance& c, const Universe& u);

/// Disjoint union: relations of A tagged left, of B tagged right. Bottom is
/// shared. Labels are prefixed l_ and r_.
Instance coproduct(const Instance& a, const Instance& b);
/// Strips origin tags (one level) and merges the components.
Instance erase_origins(const Instance& a);
/// T of the erased relations.
ClosedInstance erase_origins(const ClosedInstance& x, const Universe& u);

/// f+g : A+B -> C+D.
Morphism coproduct_arrow(const Morphism& f, const Morphism& g, const Universe& u);
/// ep_A : A+A -> A, read after erasing origin tags; flux TA.
Morphism codiagonal(const Instance& a, const Universe& u);
/// g after f where the target of f is compared to the source of g after
/// erasing tags; the flux of f is erased before intersecting.
Morphism compose_erased(const Morphism& g, const Morphism& f, const Universe& u);
/// [f,f1] = ep_C after (f + f1). Errors: DomainMismatch unless f and f1
/// share a target.
Morphism copair(const Morphism& f, const Morphism& f1, const Universe& u);

struct MonoidStructure {
  Morphism mu;   // A(x)A -> A
  Morphism eta;  // total object -> A
};
MonoidStructure monoid_structure(const Instance& a, const Universe& u);

/// (A(x)B)(x)C -> A(x)(B(x)C).
Morphism associator(const Instance& a, const Instance& b, const Instance& c, const Universe& u);
/// total (x) A -> A.
Morphism left_unitor(const Instance& a, const Universe& u);
/// A (x) total -> A.
Morphism right_unitor(const Instance& a, const Universe& u);
/// m : C^B (x) B^A -> C^A.
Morphism enrichment_composition(const Instance& a, const Instance& b, const Instance& c,
                                const Universe& u);
/// j : total -> A^A.
Morphism enrichment_identity(const Instance& a, const Universe& u);

/// A -> B with flux A(x)B.
Morphism principal_morphism(const Instance& a, const Instance& b, const Universe& u);
/// An endomorphism g of the source of f with f equivalent to h after g, h
/// principal.
Morphism factor_through_principal(const Morphism& f, const Universe& u);

/// invert(f) after f is equivalent to the identity. Errors: NotMonic.
bool retraction_check(const Morphism& f, const Universe& u);

struct RetProbe {
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::string witness;
};
/// For every pair of endomorphism classes f, g of A compares the number of
/// arrows between their fluxes with the number of endomorphisms k satisfying
/// k ~ g.k.f.
RetProbe ret_category_probe(const Instance& a, const Universe& u);

}  // namespace dbcat

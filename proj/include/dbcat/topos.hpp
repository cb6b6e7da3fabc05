#pragma once

// Distance, pullbacks, the subobject classifier, equalizers, epi-mono
// factorization, and probes for the topos properties that fail.
//
// Functions taking `objects` quantify over that list (test arrows, cones,
// factorizations); the harness passes the enumerated instance space.

#include <string>
#include <vector>

#include "dbcat/catops.hpp"
#include "dbcat/report.hpp"

namespace dbcat {

/// The total object when A and B are isomorphic, their matching otherwise.
ClosedInstance distance(const Instance& a, const Instance& b, const Universe& u);

struct Pullback {
  Instance object;  // flux(f) intersected with flux(g)
  Morphism to_a;
  Morphism to_b;
};
/// Errors: DomainMismatch unless f and g share a codomain.
Pullback pullback(const Morphism& f, const Morphism& g, const Universe& u);

struct ConeCheck {
  std::size_t cones = 0;
  std::size_t failures = 0;
  std::string witness;
};
/// For every cone E -> A, E -> B over f, g with E in `objects`, looks for a
/// unique mediating arrow into the pullback object (unique up to flux).
ConeCheck pullback_universal_check(const Morphism& f, const Morphism& g,
                                   const std::vector<Instance>& objects, HomCache& homs);

/// Result of classifying a monic in_A : A -> B.
struct Classification {
  Morphism characteristic;               // B -> total object
  std::vector<Relation> generators;      // bottom plus TB - TA
  bool generator_commutes = false;       // (gens - bottom) disjoint from TA, true.t_A trivial
  std::size_t factorization_tested = 0;  // test arrows h : C -> B
  std::size_t factorization_failures = 0;
  std::string factorization_witness;
  ClosedInstance closure_meet;           // T(TB - TA) intersected with TA
  bool closure_divergent = false;        // closure_meet differs from {bottom}
  std::size_t multiplicity = 0;          // semantic arrows B -> total satisfying the square
};
/// Errors: NotMonic.
Classification classifier(const Morphism& in_a, const std::vector<Instance>& objects,
                          HomCache& homs);

/// The equalizer property of a monic f against its characteristic arrow and
/// true.t_B, over test arrows from `objects`. Errors: NotMonic.
bool equalizer_check(const Morphism& f, const std::vector<Instance>& objects, HomCache& homs);

struct Factorization {
  Instance middle;   // flux(f) as an object
  Morphism tau;      // A -> middle, epi
  Morphism tau_inv;  // middle -> B, monic
};
Factorization epi_mono_factorize(const Morphism& f, const Universe& u);
/// For every factorization f ~ l.h with l monic and source of l in
/// `objects`: flux(tau_inv) lies in flux(l) and the mediating arrow middle
/// -> source(l) is unique up to flux.
bool factorization_minimal(const Morphism& f, const std::vector<Instance>& objects,
                           HomCache& homs);

/// A commuting square  top: A -> D, left: A -> B, bottom: B -> E, right: D -> E.
struct Square {
  Morphism top;
  Morphism left;
  Morphism bottom;
  Morphism right;
};
/// A is isomorphic to flux(right) intersected with flux(bottom), both legs
/// from A are monic and the square commutes.
bool is_flux_pullback(const Square& s, const Universe& u);
/// Combines two pullback squares sharing `right` into
/// [top,top1], left+left1, [bottom,bottom1], right, and checks it is a
/// pullback after erasing origin tags. Errors: NotAPullback for bad input.
bool coproduct_pullback_check(const Square& s, const Square& s1, const Universe& u);

/// Metric laws over all triples of `objects`.
std::vector<LawEntry> metric_suite(const std::vector<Instance>& objects, HomCache& homs);

/// Pullbacks not preserving epis, absence of power objects, and failure of
/// well-pointedness, each searched over `objects`.
std::vector<LawEntry> negative_probes(const std::vector<Instance>& objects, HomCache& homs);

}  // namespace dbcat

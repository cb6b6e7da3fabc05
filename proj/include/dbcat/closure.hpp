#pragma once

// The power-view operator T: saturation of an instance under SPJRU operators
// whose results stay within the arity cap, closed instances, and closed
// subset enumeration.

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "dbcat/query.hpp"
#include "dbcat/relation.hpp"

namespace dbcat {

/// A relation set containing bottom that is its own T-image. Sorted in
/// canonical order.
class ClosedInstance {
 public:
  /// The zero object {bottom}.
  ClosedInstance() : relations_{Relation::bottom()} {}

  /// Caller guarantees closure (intersections of closed sets, saturation
  /// output). No check is made.
  static ClosedInstance trusted(std::vector<Relation> relations);

  const std::vector<Relation>& relations() const noexcept { return relations_; }
  std::size_t size() const noexcept { return relations_.size(); }
  bool contains(const Relation& r) const;
  bool is_subset_of(const ClosedInstance& other) const;
  bool is_zero() const noexcept { return relations_.size() == 1; }

  /// Instance view with labels v1..vn in canonical order.
  Instance as_instance() const;

  bool operator==(const ClosedInstance&) const = default;
  /// Orders by size, then canonical relation order.
  bool operator<(const ClosedInstance& other) const;

 private:
  std::vector<Relation> relations_;
};

ClosedInstance closed_intersection(const ClosedInstance& x, const ClosedInstance& y);

/// Saturation result: the closed set plus one generating query per member,
/// written over the labels of the saturated instance.
struct Saturation {
  ClosedInstance closed;
  std::vector<QueryTerm> generators;  // aligned with closed.relations()

  const QueryTerm& generator_of(const Relation& r) const;
};

/// Evaluation context: a configuration plus a memo of saturations. Safe to
/// share between threads; memoization never changes results.
class Universe {
 public:
  explicit Universe(UniverseConfig cfg);

  const UniverseConfig& config() const noexcept { return cfg_; }
  const Domain& domain() const noexcept { return cfg_.domain; }

  /// Throws ArityOutOfRange for relations over another domain or above k_max.
  void validate(const Instance& a) const;
  void validate(const Relation& r) const;

  /// Errors: ArityOutOfRange, UniverseTooLarge.
  std::shared_ptr<const Saturation> saturate(const Instance& a) const;

  /// universe_relations(config()), computed once.
  const std::vector<Relation>& relations() const;

 private:
  Saturation compute(const Instance& labeled) const;

  UniverseConfig cfg_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const Saturation>> cache_;
  mutable std::shared_ptr<const std::vector<Relation>> relations_;
};

ClosedInstance power_view(const Instance& a, const Universe& u);
/// Union of the two relation sets, closed.
ClosedInstance power_view(const ClosedInstance& a, const Universe& u);

/// The local total object; verified to be a fixed point of power_view.
ClosedInstance total_object(const Universe& u);

bool po_leq(const Instance& a, const Instance& b, const Universe& u);
bool iso(const Instance& a, const Instance& b, const Universe& u);

/// Bottom present and every single operator application on members lands
/// in the set.
bool is_closed(const Instance& a, const Universe& u);

/// Throws NotClosed unless is_closed.
ClosedInstance verify_closed(const Instance& a, const Universe& u);

/// All closed subsets of x, sorted. Errors: EnumerationTooLarge when
/// 2^(|x|-1) exceeds the configured bound.
std::vector<ClosedInstance> closed_subsets(const ClosedInstance& x, const Universe& u);

}  // namespace dbcat

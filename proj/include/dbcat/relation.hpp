#pragma once

// Finite relations over a finite constant domain, database instances, and the
// enumerable local universe of all relations up to an arity cap.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dbcat/error.hpp"

namespace dbcat {

using ConstId = std::uint16_t;
using Tuple = std::vector<ConstId>;

/// Ordered, duplicate-free set of constant symbols. The declaration order is
/// the canonical order of constants.
class Domain {
 public:
  Domain() = default;
  explicit Domain(std::vector<std::string> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& symbol(ConstId id) const { return symbols_.at(id); }

  std::optional<ConstId> find(std::string_view symbol) const;
  /// Throws UnknownConstant.
  ConstId id(std::string_view symbol) const;

  bool operator==(const Domain&) const = default;

 private:
  std::vector<std::string> symbols_;
};

/// Origin tag separating the components of a coproduct. Untagged relations
/// carry kUntagged; each coproduct level appends one bit to the path.
using Origin = std::uint32_t;
inline constexpr Origin kUntagged = 1;

inline Origin tag_left(Origin o) { return o << 1; }
inline Origin tag_right(Origin o) { return (o << 1) | 1U; }

/// A finite set of equal-length tuples. Tuples are stored as mixed-radix
/// codes (radix = domain size), so code order is lexicographic tuple order.
/// Every empty relation is the single bottom relation: arity, radix and
/// origin are erased.
class Relation {
 public:
  Relation() = default;

  static Relation bottom() { return Relation{}; }
  /// `codes` need not be sorted; duplicates are removed.
  static Relation from_codes(std::size_t radix, int arity,
                             std::vector<std::uint64_t> codes,
                             Origin origin = kUntagged);
  static Relation from_tuples(std::size_t radix, int arity,
                              std::span<const Tuple> tuples,
                              Origin origin = kUntagged);

  bool is_bottom() const noexcept { return codes_.empty(); }
  int arity() const noexcept { return arity_; }
  std::size_t radix() const noexcept { return radix_; }
  Origin origin() const noexcept { return origin_; }
  std::size_t size() const noexcept { return codes_.size(); }
  const std::vector<std::uint64_t>& codes() const noexcept { return codes_; }

  Tuple tuple(std::size_t index) const;
  std::vector<Tuple> tuples() const;
  bool contains(const Tuple& t) const;

  Relation with_origin(Origin origin) const;

  bool operator==(const Relation&) const = default;
  std::strong_ordering operator<=>(const Relation& other) const;

 private:
  Origin origin_ = kUntagged;
  std::uint16_t arity_ = 0;
  std::uint16_t radix_ = 0;
  std::vector<std::uint64_t> codes_;
};

std::uint64_t encode_tuple(std::size_t radix, const Tuple& t);
Tuple decode_tuple(std::size_t radix, int arity, std::uint64_t code);

/// Builds a relation from symbolic tuples. Errors: ArityMismatch when a tuple
/// has the wrong length, UnknownConstant, ArityOutOfRange for a non-empty
/// nullary relation.
Relation make_relation(const Domain& domain, int arity,
                       const std::vector<std::vector<std::string>>& tuples);

std::string to_string(const Relation& r, const Domain& domain);
/// "{bot,{a},{a,b}}".
std::string to_string(std::span<const Relation> rels, const Domain& domain);

/// A named base relation. `declared_arity` is the arity used for static
/// checking of queries; it differs from the extension's arity only for
/// bottom-valued relations (nullopt means erased).
struct Label {
  std::string name;
  std::optional<int> declared_arity;
  Relation relation;

  bool operator==(const Label&) const = default;
};

/// A database object: a finite set of relations, compared by extension.
/// Labels are naming metadata and do not take part in equality.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<Relation> relations);
  explicit Instance(std::vector<Label> labels);
  /// Relations named by `labels` are added to `relations` if missing.
  Instance(std::vector<Relation> relations, std::vector<Label> labels);

  const std::vector<Relation>& relations() const noexcept { return relations_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return relations_.size(); }
  bool empty() const noexcept { return relations_.empty(); }

  bool contains(const Relation& r) const;
  bool contains_bottom() const { return contains(Relation::bottom()); }
  bool is_subset_of(const Instance& other) const;
  bool has_origins() const;

  const Label* find_label(std::string_view name) const;
  /// First label naming `r`, if any.
  const Label* label_of(const Relation& r) const;

  /// Every relation without a label gets `v<k>`, k being its 1-based
  /// position in canonical order (suffixed with '_' on collision).
  Instance with_auto_labels() const;
  Instance with_labels(std::string_view prefix) const;

  bool operator==(const Instance& other) const {
    return relations_ == other.relations_;
  }

 private:
  std::vector<Relation> relations_;
  std::vector<Label> labels_;
};

/// Set union of relation sets. Labels of `b` that clash with a differently
/// valued label of `a` are qualified as `l_<name>` / `r_<name>`.
Instance instance_union(const Instance& a, const Instance& b);

/// Sorted, duplicate-free union/intersection/difference of relation vectors.
std::vector<Relation> set_union(std::span<const Relation> a, std::span<const Relation> b);
std::vector<Relation> set_intersection(std::span<const Relation> a, std::span<const Relation> b);
std::vector<Relation> set_difference(std::span<const Relation> a, std::span<const Relation> b);
bool set_includes(std::span<const Relation> outer, std::span<const Relation> inner);
void canonicalize(std::vector<Relation>& relations);

struct UniverseConfig {
  Domain domain;
  int k_max = 1;
  /// Upper bound on sum over n <= k_max of 2^(|D|^n).
  std::uint64_t max_universe = 4096;
  /// Upper bound on any exhaustive enumeration (closed subsets, instances).
  std::uint64_t max_enumeration = std::uint64_t{1} << 20;

  /// Throws InvalidArgument when the domain is empty or k_max < 1.
  void validate() const;
};

/// sum over 1 <= n <= k_max of 2^(|D|^n), saturating at UINT64_MAX.
std::uint64_t universe_size(const UniverseConfig& cfg);

/// All relations over the domain with arity in [1, k_max], plus bottom, in
/// canonical order. Errors: UniverseTooLarge.
std::vector<Relation> universe_relations(const UniverseConfig& cfg);

}  // namespace dbcat

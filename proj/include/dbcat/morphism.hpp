#pragma once

// Morphisms between instances. Each morphism carries a syntactic layer (trees
// of view-maps) and a semantic layer (its information flux, a closed set).
// All laws are stated on fluxes; f and g are equivalent iff their fluxes are
// equal.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dbcat/closure.hpp"
#include "dbcat/query.hpp"

namespace dbcat {

/// Elementary view-map q: A -> TA.
struct ViewMap {
  QueryTerm query;
  std::vector<std::string> arg_names;  // base names in query
  std::vector<Relation> args;          // their extensions, aligned with arg_names
  Relation result;
};

struct ViewTree;
using TreePtr = std::shared_ptr<const ViewTree>;

/// Subtrees feeding one argument of a view-map.
struct Graft {
  std::string name;
  Relation arg;
  std::vector<TreePtr> subtrees;
};

/// A view-map whose arguments are either relations of the morphism source
/// (bottom level, `below` empty) or results of grafted subtrees.
struct ViewTree {
  ViewMap node;
  std::optional<std::vector<Graft>> below;
};

/// Argument relations at the bottom level of the tree.
std::vector<Relation> tree_arguments(const ViewTree& tree);
/// The tree read as one query over the bottom source. Arguments without a
/// grafted subtree read as bot; of several subtrees the first is used.
QueryTerm flatten_tree(const ViewTree& tree);

class Morphism {
 public:
  enum class Kind { Atomic, Composite, Semantic };

  const Instance& source() const { return *d_->source; }
  const Instance& target() const { return *d_->target; }
  const ClosedInstance& t_source() const { return *d_->t_source; }
  const ClosedInstance& t_target() const { return *d_->t_target; }
  const ClosedInstance& flux() const { return d_->flux; }
  Kind kind() const { return d_->kind; }
  /// Built on first use.
  const std::vector<TreePtr>& trees() const;
  /// Results of the top-level view-maps.
  std::vector<Relation> results() const;

 private:
  struct Data {
    // Endpoints are shared with the arrows a composite was built from.
    std::shared_ptr<const Instance> source;
    std::shared_ptr<const Instance> target;
    std::shared_ptr<const ClosedInstance> t_source;
    std::shared_ptr<const ClosedInstance> t_target;
    ClosedInstance flux;
    Kind kind = Kind::Atomic;
    std::function<std::vector<TreePtr>()> build;
    mutable std::once_flag once;
    mutable std::vector<TreePtr> trees;
  };
  explicit Morphism(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static Morphism make(Instance source, Instance target, ClosedInstance t_source,
                       ClosedInstance t_target, ClosedInstance flux, Kind kind,
                       std::function<std::vector<TreePtr>()> build);

  friend Morphism atomic_morphism(const Instance&, const Instance&,
                                  const std::vector<QueryTerm>&, const Universe&);
  friend Morphism semantic_morphism(const Instance&, const Instance&, const ClosedInstance&,
                                    const Universe&);
  friend Morphism compose(const Morphism&, const Morphism&);

  std::shared_ptr<const Data> d_;
};

/// One depth-1 tree per query, evaluated over the source's labels.
/// Errors: UnknownRelation, ResultNotInTarget (a non-bottom result missing
/// from the target).
Morphism atomic_morphism(const Instance& a, const Instance& b,
                         const std::vector<QueryTerm>& queries, const Universe& u);
/// Parses each query against the source schema first.
Morphism atomic_morphism(const Instance& a, const Instance& b,
                         const std::vector<std::string>& queries, const Universe& u);

/// Morphism with prescribed flux; witness trees hold one generating query per
/// flux member. Errors: FluxOutOfRange unless flux lies in TA and TB.
Morphism semantic_morphism(const Instance& a, const Instance& b, const ClosedInstance& flux,
                           const Universe& u);

/// The arrow with flux {bottom}.
Morphism empty_arrow(const Instance& a, const Instance& b, const Universe& u);
Morphism identity(const Instance& a, const Universe& u);

/// g after f. Keeps each tree of g whose bottom arguments meet the results
/// of f and grafts the matching trees of f under it. Flux is the
/// intersection. Errors: DomainMismatch.
Morphism compose(const Morphism& g, const Morphism& f);

bool equivalent(const Morphism& f, const Morphism& g);
bool is_mono(const Morphism& f);
bool is_epi(const Morphism& f);
bool is_iso(const Morphism& f);

/// TA -> TB with one base view-map per flux member.
Morphism lift_T(const Morphism& f, const Universe& u);
/// B -> A with the same flux.
Morphism invert(const Morphism& f, const Universe& u);

/// v -> v for flux members, v -> bottom otherwise, over all v in the source.
/// Errors: NotClosedDomain unless source and target are closed.
std::vector<std::pair<Relation, Relation>> totalize(const Morphism& f, const Universe& u);

/// flux(f) contained in flux(g). Errors: NotParallel.
bool arrow_po_leq(const Morphism& f, const Morphism& g);

/// Closed subsets of TA and TB intersected; one per equivalence class of
/// arrows A -> B.
std::vector<ClosedInstance> semantic_homset(const Instance& a, const Instance& b,
                                            const Universe& u);
/// One semantic morphism per element of semantic_homset.
std::vector<Morphism> homset_arrows(const Instance& a, const Instance& b, const Universe& u);

/// homset_arrows memoized per (source, target) extension pair. Not
/// thread-safe; use one per thread.
class HomCache {
 public:
  explicit HomCache(const Universe& u) : u_(u) {}
  const Universe& universe() const noexcept { return u_; }
  const std::vector<Morphism>& operator()(const Instance& a, const Instance& b);

 private:
  using Key = std::pair<std::vector<Relation>, std::vector<Relation>>;
  using KeyRef = std::pair<const std::vector<Relation>&, const std::vector<Relation>&>;
  struct Less {
    using is_transparent = void;
    template <class X, class Y>
    bool operator()(const X& x, const Y& y) const {
      if (x.first != y.first) return x.first < y.first;
      return x.second < y.second;
    }
  };
  const Universe& u_;
  std::map<Key, std::vector<Morphism>, Less> cache_;
};

/// Each tree as "query -> result" over the source domain.
std::vector<std::string> describe_trees(const Morphism& f, const Domain& domain);

}  // namespace dbcat

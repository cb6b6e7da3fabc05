#include "dbcat/closure.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <mutex>
#include <set>

namespace dbcat {

ClosedInstance ClosedInstance::trusted(std::vector<Relation> relations) {
  canonicalize(relations);
  ClosedInstance c;
  c.relations_ = std::move(relations);
  return c;
}

bool ClosedInstance::contains(const Relation& r) const {
  return std::binary_search(relations_.begin(), relations_.end(), r);
}

bool ClosedInstance::is_subset_of(const ClosedInstance& other) const {
  return set_includes(other.relations_, relations_);
}

Instance ClosedInstance::as_instance() const {
  return Instance{relations_}.with_labels("v");
}

bool ClosedInstance::operator<(const ClosedInstance& other) const {
  if (relations_.size() != other.relations_.size())
    return relations_.size() < other.relations_.size();
  return relations_ < other.relations_;
}

ClosedInstance closed_intersection(const ClosedInstance& x, const ClosedInstance& y) {
  return ClosedInstance::trusted(set_intersection(x.relations(), y.relations()));
}

const QueryTerm& Saturation::generator_of(const Relation& r) const {
  const auto& rels = closed.relations();
  auto it = std::lower_bound(rels.begin(), rels.end(), r);
  if (it == rels.end() || !(*it == r))
    fail(ErrorCode::InvalidArgument, "relation is not in the closure");
  return generators[static_cast<std::size_t>(it - rels.begin())];
}

namespace {

// One operator application. Terms are only built for new results.
struct Op {
  enum Kind { Select, Project, Union, Join, JoinSwapped } kind;
  Predicate pred;
  const std::vector<int>* cols = nullptr;
};

std::vector<std::vector<int>> column_lists(int arity, int k_max) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int len) {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int c = 1; c <= arity; ++c) {
      cur.push_back(c);
      rec(len);
      cur.pop_back();
    }
  };
  for (int len = 1; len <= k_max; ++len) rec(len);
  return out;
}

class Operators {
 public:
  explicit Operators(const UniverseConfig& cfg) : cfg_(cfg) {
    for (int a = 0; a <= cfg.k_max; ++a) cols_.push_back(column_lists(a, cfg.k_max));
  }

  template <class F>
  void unary(const Relation& x, F&& emit) const {
    if (x.is_bottom()) return;
    const int n = x.arity();
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        Op op{Op::Select, Predicate::col_eq_col(i, j)};
        emit(rel_select(x, op.pred), op);
      }
    for (int i = 1; i <= n; ++i)
      for (std::size_t c = 0; c < cfg_.domain.size(); ++c) {
        Op op{Op::Select,
              Predicate::col_eq_const(i, static_cast<ConstId>(c),
                                      cfg_.domain.symbol(static_cast<ConstId>(c)))};
        emit(rel_select(x, op.pred), op);
      }
    for (const auto& cols : cols_[static_cast<std::size_t>(n)]) {
      Op op{Op::Project, {}, &cols};
      emit(rel_project(x, cols), op);
    }
  }

  template <class F>
  void binary(const Relation& x, const Relation& y, F&& emit) const {
    if (x.is_bottom() || y.is_bottom() || x.origin() != y.origin()) return;
    if (x.arity() == y.arity()) emit(rel_union(x, y), Op{Op::Union, {}});
    if (x.arity() + y.arity() <= cfg_.k_max) {
      emit(rel_join(x, y), Op{Op::Join, {}});
      emit(rel_join(y, x), Op{Op::JoinSwapped, {}});
    }
  }

 private:
  const UniverseConfig& cfg_;
  std::vector<std::vector<std::vector<int>>> cols_;
};

QueryTerm build(const Op& op, const QueryTerm& x, const QueryTerm* y) {
  switch (op.kind) {
    case Op::Select: return QueryTerm::select(op.pred, x);
    case Op::Project: return QueryTerm::project(*op.cols, x);
    case Op::Union: return QueryTerm::union_of(x, *y);
    case Op::Join: return QueryTerm::join(x, *y);
    case Op::JoinSwapped: return QueryTerm::join(*y, x);
  }
  return x;
}

void append_key(std::string& key, const Relation& r) {
  key += std::to_string(r.origin()) + ":" + std::to_string(r.arity()) + ":";
  for (auto c : r.codes()) key += std::to_string(c) + ",";
  key += ";";
}

std::string cache_key(const Instance& labeled) {
  std::string key;
  for (const auto& r : labeled.relations()) append_key(key, r);
  key += "|";
  for (const auto& l : labeled.labels()) {
    key += l.name + "/" + (l.declared_arity ? std::to_string(*l.declared_arity) : "-") + "=";
    append_key(key, l.relation);
  }
  return key;
}

}  // namespace

Universe::Universe(UniverseConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

void Universe::validate(const Relation& r) const {
  if (r.is_bottom()) return;
  if (r.radix() != cfg_.domain.size())
    fail(ErrorCode::ArityOutOfRange, "relation is over a different domain");
  if (r.arity() > cfg_.k_max)
    fail(ErrorCode::ArityOutOfRange, "relation of arity " + std::to_string(r.arity()) +
                                         " exceeds k_max " + std::to_string(cfg_.k_max));
}

void Universe::validate(const Instance& a) const {
  for (const auto& r : a.relations()) validate(r);
}

const std::vector<Relation>& Universe::relations() const {
  {
    std::shared_lock lock(mutex_);
    if (relations_) return *relations_;
  }
  auto rels = std::make_shared<const std::vector<Relation>>(universe_relations(cfg_));
  std::unique_lock lock(mutex_);
  if (!relations_) relations_ = std::move(rels);
  return *relations_;
}

std::shared_ptr<const Saturation> Universe::saturate(const Instance& a) const {
  validate(a);
  Instance labeled = a.with_auto_labels();
  std::string key = cache_key(labeled);
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  auto result = std::make_shared<const Saturation>(compute(labeled));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = cache_.emplace(std::move(key), std::move(result));
  return it->second;
}

Saturation Universe::compute(const Instance& labeled) const {
  std::vector<Relation> items;
  std::vector<QueryTerm> terms;
  std::set<Relation> seen;
  std::set<Origin> origins{kUntagged};

  auto add = [&](const Relation& r, QueryTerm t) {
    if (seen.insert(r).second) {
      items.push_back(r);
      terms.push_back(std::move(t));
      origins.insert(r.origin());
    }
  };
  auto term_for = [&](const Relation& r) {
    const Label* l = labeled.label_of(r);
    return QueryTerm::base(l->name, l->declared_arity);
  };
  const Relation bot = Relation::bottom();
  add(bot, labeled.contains(bot) ? term_for(bot) : QueryTerm::bot());
  for (const auto& r : labeled.relations()) add(r, term_for(r));

  const std::uint64_t cap = cfg_.max_universe;
  auto check_cap = [&] {
    if (items.size() > cap * origins.size())
      fail(ErrorCode::UniverseTooLarge,
           "saturation exceeded " + std::to_string(cap) + " relations per component");
  };

  Operators ops(cfg_);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Relation x = items[i];
    const QueryTerm tx = terms[i];
    ops.unary(x, [&](const Relation& r, const Op& op) {
      if (!seen.count(r)) add(r, build(op, tx, nullptr));
    });
    for (std::size_t j = 0; j <= i; ++j) {
      const Relation y = items[j];
      const QueryTerm ty = terms[j];
      ops.binary(x, y, [&](const Relation& r, const Op& op) {
        if (!seen.count(r)) add(r, build(op, tx, &ty));
      });
    }
    check_cap();
  }

  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t p, std::size_t q) { return items[p] < items[q]; });
  std::vector<Relation> sorted;
  std::vector<QueryTerm> gens;
  for (auto i : order) {
    sorted.push_back(items[i]);
    gens.push_back(terms[i]);
  }
  return Saturation{ClosedInstance::trusted(std::move(sorted)), std::move(gens)};
}

ClosedInstance power_view(const Instance& a, const Universe& u) {
  return u.saturate(a)->closed;
}

ClosedInstance power_view(const ClosedInstance& a, const Universe& u) {
  return power_view(Instance{a.relations()}, u);
}

ClosedInstance total_object(const Universe& u) {
  Instance all{u.relations()};
  ClosedInstance t = power_view(all, u);
  if (t.relations() != all.relations())
    fail(ErrorCode::NotClosed, "the universe is not closed under the operators");
  return t;
}

bool po_leq(const Instance& a, const Instance& b, const Universe& u) {
  return power_view(a, u).is_subset_of(power_view(b, u));
}

bool iso(const Instance& a, const Instance& b, const Universe& u) {
  return power_view(a, u) == power_view(b, u);
}

bool is_closed(const Instance& a, const Universe& u) {
  u.validate(a);
  if (!a.contains_bottom()) return false;
  Operators ops(u.config());
  bool closed = true;
  auto check = [&](const Relation& r, const Op&) {
    if (closed && !a.contains(r)) closed = false;
  };
  const auto& rels = a.relations();
  for (std::size_t i = 0; i < rels.size() && closed; ++i) {
    ops.unary(rels[i], check);
    for (std::size_t j = 0; j <= i && closed; ++j) ops.binary(rels[i], rels[j], check);
  }
  return closed;
}

ClosedInstance verify_closed(const Instance& a, const Universe& u) {
  if (!is_closed(a, u)) fail(ErrorCode::NotClosed, "instance is not closed under T");
  return ClosedInstance::trusted(a.relations());
}

std::vector<ClosedInstance> closed_subsets(const ClosedInstance& x, const Universe& u) {
  const auto& rels = x.relations();
  const std::size_t n = rels.size();
  const std::uint64_t bound = u.config().max_enumeration;
  if (n > 64 || (n - 1 < 64 && (std::uint64_t{1} << (n - 1)) > bound))
    fail(ErrorCode::EnumerationTooLarge,
         "closed-subset enumeration over " + std::to_string(n) + " relations exceeds bound");
  using Mask = std::uint64_t;
  auto index_of = [&](const Relation& r) -> std::optional<std::size_t> {
    auto it = std::lower_bound(rels.begin(), rels.end(), r);
    if (it == rels.end() || !(*it == r)) return std::nullopt;
    return static_cast<std::size_t>(it - rels.begin());
  };
  auto bit = [&](const Relation& r) -> Mask {
    auto i = index_of(r);
    if (!i) fail(ErrorCode::NotClosed, "closed_subsets argument is not closed");
    return Mask{1} << *i;
  };

  Operators ops(u.config());
  std::vector<Mask> un(n, 0);
  std::vector<std::vector<Mask>> bin(n, std::vector<Mask>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    ops.unary(rels[i], [&](const Relation& r, const Op&) { un[i] |= bit(r); });
    for (std::size_t j = 0; j <= i; ++j) {
      Mask m = 0;
      ops.binary(rels[i], rels[j], [&](const Relation& r, const Op&) { m |= bit(r); });
      bin[i][j] = bin[j][i] = m;
    }
  }
  const Mask bottom_bit = bit(Relation::bottom());
  auto closure = [&](Mask s) {
    s |= bottom_bit;
    for (;;) {
      Mask next = s;
      for (Mask a = s; a; a &= a - 1) {
        auto i = static_cast<std::size_t>(std::countr_zero(a));
        next |= un[i];
        for (Mask b = s; b; b &= b - 1) next |= bin[i][static_cast<std::size_t>(std::countr_zero(b))];
      }
      if (next == s) return s;
      s = next;
    }
  };

  const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<Mask> found;
  Mask cur = closure(0);
  found.push_back(cur);
  // Ganter's NextClosure in lectic order.
  while (cur != full) {
    bool advanced = false;
    for (std::size_t k = n; k-- > 0;) {
      const Mask bk = Mask{1} << k;
      const Mask below = bk - 1;
      if (cur & bk) continue;
      Mask next = closure((cur & below) | bk);
      if ((next & below) == (cur & below)) {
        cur = next;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
    found.push_back(cur);
    if (found.size() > bound)
      fail(ErrorCode::EnumerationTooLarge, "too many closed subsets");
  }

  std::vector<ClosedInstance> out;
  out.reserve(found.size());
  for (Mask m : found) {
    std::vector<Relation> subset;
    for (Mask a = m; a; a &= a - 1) subset.push_back(rels[static_cast<std::size_t>(std::countr_zero(a))]);
    out.push_back(ClosedInstance::trusted(std::move(subset)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dbcat

#include "dbcat/relation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace dbcat {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ArityOutOfRange: return "ArityOutOfRange";
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::ResultNotInTarget: return "ResultNotInTarget";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotClosedDomain: return "NotClosedDomain";
    case ErrorCode::NotParallel: return "NotParallel";
    case ErrorCode::FluxOutOfRange: return "FluxOutOfRange";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::NotAPullback: return "NotAPullback";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Domain::Domain(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) fail(ErrorCode::InvalidArgument, "empty constant symbol");
    if (!seen.insert(s).second)
      fail(ErrorCode::InvalidArgument, "duplicate constant '" + s + "'");
  }
  if (symbols_.size() > std::numeric_limits<ConstId>::max())
    fail(ErrorCode::InvalidArgument, "domain too large");
}

std::optional<ConstId> Domain::find(std::string_view symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<ConstId>(it - symbols_.begin());
}

ConstId Domain::id(std::string_view symbol) const {
  if (auto found = find(symbol)) return *found;
  fail(ErrorCode::UnknownConstant,
       "constant '" + std::string(symbol) + "' is not in the domain");
}

namespace {

// radix^arity, or nullopt on overflow.
std::optional<std::uint64_t> code_space(std::size_t radix, int arity) {
  std::uint64_t n = 1;
  for (int i = 0; i < arity; ++i) {
    if (radix != 0 && n > std::numeric_limits<std::uint64_t>::max() / radix)
      return std::nullopt;
    n *= radix;
  }
  return n;
}

}  // namespace

std::uint64_t encode_tuple(std::size_t radix, const Tuple& t) {
  std::uint64_t code = 0;
  for (ConstId c : t) code = code * radix + c;
  return code;
}

Tuple decode_tuple(std::size_t radix, int arity, std::uint64_t code) {
  Tuple t(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<ConstId>(code % radix);
    code /= radix;
  }
  return t;
}

Relation Relation::from_codes(std::size_t radix, int arity,
                              std::vector<std::uint64_t> codes, Origin origin) {
  if (codes.empty()) return bottom();
  if (arity <= 0)
    fail(ErrorCode::ArityOutOfRange, "a non-empty relation needs arity >= 1");
  if (radix == 0 || radix > std::numeric_limits<std::uint16_t>::max() ||
      arity > std::numeric_limits<std::uint16_t>::max())
    fail(ErrorCode::ArityOutOfRange, "relation shape out of range");
  auto space = code_space(radix, arity);
  if (!space) fail(ErrorCode::ArityOutOfRange, "arity too large for tuple encoding");
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  if (codes.back() >= *space) fail(ErrorCode::InvalidArgument, "tuple code out of range");
  Relation r;
  r.origin_ = origin;
  r.arity_ = static_cast<std::uint16_t>(arity);
  r.radix_ = static_cast<std::uint16_t>(radix);
  r.codes_ = std::move(codes);
  return r;
}

Relation Relation::from_tuples(std::size_t radix, int arity,
                               std::span<const Tuple> tuples, Origin origin) {
  if (tuples.empty()) return bottom();
  if (arity <= 0)
    fail(ErrorCode::ArityOutOfRange, "a non-empty relation needs arity >= 1");
  if (!code_space(radix, arity))
    fail(ErrorCode::ArityOutOfRange, "arity too large for tuple encoding");
  std::vector<std::uint64_t> codes;
  codes.reserve(tuples.size());
  for (const auto& t : tuples) {
    if (t.size() != static_cast<std::size_t>(arity))
      fail(ErrorCode::ArityMismatch, "tuple of length " + std::to_string(t.size()) +
                                         " in relation of arity " + std::to_string(arity));
    for (ConstId c : t)
      if (c >= radix) fail(ErrorCode::UnknownConstant, "constant id out of range");
    codes.push_back(encode_tuple(radix, t));
  }
  return from_codes(radix, arity, std::move(codes), origin);
}

Tuple Relation::tuple(std::size_t index) const {
  return decode_tuple(radix_, arity_, codes_.at(index));
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  out.reserve(codes_.size());
  for (auto code : codes_) out.push_back(decode_tuple(radix_, arity_, code));
  return out;
}

bool Relation::contains(const Tuple& t) const {
  if (is_bottom() || t.size() != arity_) return false;
  for (ConstId c : t)
    if (c >= radix_) return false;
  return std::binary_search(codes_.begin(), codes_.end(), encode_tuple(radix_, t));
}

Relation Relation::with_origin(Origin origin) const {
  if (is_bottom()) return *this;
  Relation r = *this;
  r.origin_ = origin;
  return r;
}

std::strong_ordering Relation::operator<=>(const Relation& other) const {
  if (auto c = origin_ <=> other.origin_; c != 0) return c;
  if (auto c = arity_ <=> other.arity_; c != 0) return c;
  if (auto c = codes_.size() <=> other.codes_.size(); c != 0) return c;
  if (auto c = codes_ <=> other.codes_; c != 0) return c;
  return radix_ <=> other.radix_;
}

Relation make_relation(const Domain& domain, int arity,
                       const std::vector<std::vector<std::string>>& tuples) {
  if (arity < 0) fail(ErrorCode::ArityOutOfRange, "negative arity");
  std::vector<Tuple> ids;
  ids.reserve(tuples.size());
  for (const auto& t : tuples) {
    if (t.size() != static_cast<std::size_t>(arity))
      fail(ErrorCode::ArityMismatch, "tuple of length " + std::to_string(t.size()) +
                                         " in relation of arity " + std::to_string(arity));
    Tuple row;
    row.reserve(t.size());
    for (const auto& s : t) row.push_back(domain.id(s));
    ids.push_back(std::move(row));
  }
  return Relation::from_tuples(domain.size(), arity, ids);
}

std::string to_string(const Relation& r, const Domain& domain) {
  if (r.is_bottom()) return "bot";
  std::string out = "{";
  bool first = true;
  for (const auto& t : r.tuples()) {
    if (!first) out += ",";
    first = false;
    if (r.arity() > 1) out += "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += " ";
      out += domain.symbol(t[i]);
    }
    if (r.arity() > 1) out += ")";
  }
  out += "}";
  if (r.origin() != kUntagged) out += "@" + std::to_string(r.origin());
  return out;
}

std::string to_string(std::span<const Relation> rels, const Domain& domain) {
  std::string out = "{";
  for (std::size_t i = 0; i < rels.size(); ++i) {
    if (i) out += ",";
    out += to_string(rels[i], domain);
  }
  return out + "}";
}

void canonicalize(std::vector<Relation>& relations) {
  std::sort(relations.begin(), relations.end());
  relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
}

Instance::Instance(std::vector<Relation> relations) : relations_(std::move(relations)) {
  canonicalize(relations_);
}

Instance::Instance(std::vector<Label> labels) : Instance({}, std::move(labels)) {}

Instance::Instance(std::vector<Relation> relations, std::vector<Label> labels)
    : relations_(std::move(relations)), labels_(std::move(labels)) {
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l.name).second)
      fail(ErrorCode::InvalidArgument, "duplicate relation name '" + l.name + "'");
    relations_.push_back(l.relation);
  }
  canonicalize(relations_);
}

bool Instance::contains(const Relation& r) const {
  return std::binary_search(relations_.begin(), relations_.end(), r);
}

bool Instance::is_subset_of(const Instance& other) const {
  return set_includes(other.relations_, relations_);
}

bool Instance::has_origins() const {
  return std::any_of(relations_.begin(), relations_.end(),
                     [](const Relation& r) { return r.origin() != kUntagged; });
}

const Label* Instance::find_label(std::string_view name) const {
  for (const auto& l : labels_)
    if (l.name == name) return &l;
  return nullptr;
}

const Label* Instance::label_of(const Relation& r) const {
  for (const auto& l : labels_)
    if (l.relation == r) return &l;
  return nullptr;
}

Instance Instance::with_auto_labels() const {
  std::vector<Label> labels = labels_;
  std::set<std::string> names;
  for (const auto& l : labels) names.insert(l.name);
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (label_of(relations_[i])) continue;
    std::string name = "v" + std::to_string(i + 1);
    while (names.count(name)) name += "_";
    names.insert(name);
    const auto& r = relations_[i];
    labels.push_back({name, r.is_bottom() ? std::optional<int>{} : r.arity(), r});
  }
  Instance out = *this;
  out.labels_ = std::move(labels);
  return out;
}

Instance Instance::with_labels(std::string_view prefix) const {
  std::vector<Label> labels;
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    const auto& r = relations_[i];
    labels.push_back({std::string(prefix) + std::to_string(i + 1),
                      r.is_bottom() ? std::optional<int>{} : r.arity(), r});
  }
  Instance out = *this;
  out.labels_ = std::move(labels);
  return out;
}

Instance instance_union(const Instance& a, const Instance& b) {
  std::map<std::string, const Label*> left;
  for (const auto& l : a.labels()) left[l.name] = &l;
  std::map<std::string, const Label*> right;
  for (const auto& l : b.labels()) right[l.name] = &l;

  std::vector<Label> labels;
  std::set<std::string> used;
  auto push = [&](Label l) {
    while (used.count(l.name)) l.name += "_";
    used.insert(l.name);
    labels.push_back(std::move(l));
  };
  for (const auto& l : a.labels()) {
    auto it = right.find(l.name);
    if (it != right.end() && !(*it->second == l)) {
      Label q = l;
      q.name = "l_" + l.name;
      push(std::move(q));
    } else {
      push(l);
    }
  }
  for (const auto& l : b.labels()) {
    auto it = left.find(l.name);
    if (it == left.end()) {
      push(l);
    } else if (!(*it->second == l)) {
      Label q = l;
      q.name = "r_" + l.name;
      push(std::move(q));
    }
  }
  return Instance{set_union(a.relations(), b.relations()), std::move(labels)};
}

std::vector<Relation> set_union(std::span<const Relation> a, std::span<const Relation> b) {
  std::vector<Relation> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Relation> set_intersection(std::span<const Relation> a, std::span<const Relation> b) {
  std::vector<Relation> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Relation> set_difference(std::span<const Relation> a, std::span<const Relation> b) {
  std::vector<Relation> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_includes(std::span<const Relation> outer, std::span<const Relation> inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

void UniverseConfig::validate() const {
  if (domain.empty()) fail(ErrorCode::InvalidArgument, "domain must be non-empty");
  if (k_max < 1) fail(ErrorCode::InvalidArgument, "k_max must be >= 1");
}

std::uint64_t universe_size(const UniverseConfig& cfg) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (int n = 1; n <= cfg.k_max; ++n) {
    auto cells = code_space(cfg.domain.size(), n);
    if (!cells || *cells >= 64) return kMax;
    std::uint64_t count = std::uint64_t{1} << *cells;
    if (total > kMax - count) return kMax;
    total += count;
  }
  return total;
}

std::vector<Relation> universe_relations(const UniverseConfig& cfg) {
  cfg.validate();
  auto size = universe_size(cfg);
  if (size > cfg.max_universe)
    fail(ErrorCode::UniverseTooLarge,
         "universe of " + (size == std::numeric_limits<std::uint64_t>::max()
                               ? std::string("overflowing size")
                               : std::to_string(size) + " relations") +
             " exceeds bound " + std::to_string(cfg.max_universe));
  const std::size_t radix = cfg.domain.size();
  std::vector<Relation> out{Relation::bottom()};
  for (int n = 1; n <= cfg.k_max; ++n) {
    const std::uint64_t cells = *code_space(radix, n);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
      std::vector<std::uint64_t> codes;
      for (std::uint64_t c = 0; c < cells; ++c)
        if (mask >> c & 1U) codes.push_back(c);
      out.push_back(Relation::from_codes(radix, n, std::move(codes)));
    }
  }
  canonicalize(out);
  return out;
}

}  // namespace dbcat

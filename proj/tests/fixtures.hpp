#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dbcat/closure.hpp"

namespace fx {

inline dbcat::UniverseConfig cfg(std::vector<std::string> domain, int k_max) {
  return dbcat::UniverseConfig{dbcat::Domain(std::move(domain)), k_max};
}

// ({a,b}, 1)
inline const dbcat::Universe& cfg0() {
  static const dbcat::Universe u(cfg({"a", "b"}, 1));
  return u;
}

inline dbcat::Relation rel(const dbcat::Domain& d, int arity,
                           const std::vector<std::vector<std::string>>& rows) {
  return dbcat::make_relation(d, arity, rows);
}

// Unary relation over cfg0's domain, e.g. un({"a","b"}) = {a,b}.
inline dbcat::Relation un(const std::vector<std::string>& xs,
                          const dbcat::Domain& d = cfg0().domain()) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& x : xs) rows.push_back({x});
  return rel(d, 1, rows);
}

inline dbcat::Instance inst(std::vector<dbcat::Relation> rs) {
  return dbcat::Instance{std::move(rs)};
}

inline dbcat::Instance labeled(std::vector<std::pair<std::string, dbcat::Relation>> rs) {
  std::vector<dbcat::Label> labels;
  for (auto& [name, r] : rs) {
    std::optional<int> arity;
    if (!r.is_bottom()) arity = r.arity();
    labels.push_back({name, arity, r});
  }
  return dbcat::Instance{std::move(labels)};
}

inline const dbcat::Relation bot = dbcat::Relation::bottom();

inline dbcat::Instance zero() { return inst({bot}); }
inline dbcat::Instance pa() { return inst({un({"a"})}); }
inline dbcat::Instance pb() { return inst({un({"b"})}); }
inline dbcat::Instance pab() { return inst({un({"a"}), un({"b"})}); }

inline dbcat::ClosedInstance closed(std::vector<dbcat::Relation> rs) {
  dbcat::canonicalize(rs);
  return dbcat::ClosedInstance::trusted(std::move(rs));
}

inline dbcat::ClosedInstance upsilon0() {
  return closed({bot, un({"a"}), un({"b"}), un({"a", "b"})});
}

// Code of the Error thrown by f; ErrorCode{-1} when nothing is thrown.
inline dbcat::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const dbcat::Error& e) {
    return e.code();
  }
  return static_cast<dbcat::ErrorCode>(-1);
}

}  // namespace fx

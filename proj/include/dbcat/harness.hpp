#pragma once

// Exhaustive law checking over every small instance of a configuration.

#include <string>
#include <string_view>
#include <vector>

#include "dbcat/closure.hpp"
#include "dbcat/report.hpp"

namespace dbcat {

struct SuiteBounds {
  std::size_t max_relations = 4;
};

/// 4 relations per instance when k_max is 1, one above that.
SuiteBounds default_bounds(const UniverseConfig& cfg);

/// All subsets of universe_relations(cfg) with at most `max_relations`
/// members, ordered by size then by index, labeled r1..rn.
/// Errors: EnumerationTooLarge when the count exceeds cfg.max_enumeration.
std::vector<Instance> enumerate_instances(const UniverseConfig& cfg, std::size_t max_relations);

/// closure, category, monoidal, lattice, metric, topos, negative, all.
const std::vector<std::string>& suite_names();

/// Errors: UnknownSuite, EnumerationTooLarge.
SuiteReport run_suite(std::string_view name, const Universe& u, const SuiteBounds& bounds = {});

/// Classifier, uniqueness, closure-level audit and equalizer entries for the
/// monic A -> B with flux TA. Test arrows come from the enumerated instances
/// plus A and B. Errors: NotMonic unless TA lies in TB.
SuiteReport classify_subobject(const Instance& a, const Instance& b, const Universe& u,
                               const SuiteBounds& bounds = {});

}  // namespace dbcat

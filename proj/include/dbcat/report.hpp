#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace dbcat {

enum class Status { Pass, Fail, Flagged };

std::string_view status_name(Status s);

/// One checked law. FLAGGED marks a documented divergence and never counts
/// as a failure.
struct LawEntry {
  std::string id;
  std::string law;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string witness;  // first failing case in enumeration order
  Status status = Status::Pass;
};

struct SuiteReport {
  std::string name;
  std::vector<LawEntry> entries;
  double seconds = 0;

  bool passed() const;
  std::size_t count(Status s) const;
  const LawEntry* find(std::string_view id) const;
};

/// One line per entry: "<id> checked=<n> failures=<n> <STATUS> [witness]",
/// then a summary line. Timing only when asked, so reports stay
/// byte-identical between runs.
std::string format_report(const SuiteReport& report, bool with_timing = false);

/// Accumulates cases for one law.
class LawCheck {
 public:
  LawCheck(std::string id, std::string law) : entry_{std::move(id), std::move(law), 0, 0, {}, Status::Pass} {}

  /// Records one case; `witness` is only evaluated for the first failure.
  void check(bool ok, const std::function<std::string()>& witness) {
    ++entry_.checked;
    if (ok) return;
    if (entry_.failures++ == 0) entry_.witness = witness();
  }
  void check(bool ok, const std::string& witness) {
    check(ok, [&] { return witness; });
  }

  /// PASS or FAIL by failure count.
  LawEntry finish() const {
    LawEntry e = entry_;
    e.status = e.failures == 0 ? Status::Pass : Status::Fail;
    return e;
  }
  /// FLAGGED when any case diverged, PASS otherwise.
  LawEntry finish_audit() const {
    LawEntry e = entry_;
    e.status = e.failures == 0 ? Status::Pass : Status::Flagged;
    return e;
  }

 private:
  LawEntry entry_;
};

}  // namespace dbcat

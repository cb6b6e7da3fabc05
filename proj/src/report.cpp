#include "dbcat/report.hpp"

#include <algorithm>
#include <cstdio>

namespace dbcat {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Flagged: return "FLAGGED";
  }
  return "?";
}

bool SuiteReport::passed() const { return count(Status::Fail) == 0; }

std::size_t SuiteReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [s](const LawEntry& e) { return e.status == s; }));
}

const LawEntry* SuiteReport::find(std::string_view id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

std::string format_report(const SuiteReport& report, bool with_timing) {
  std::string out;
  for (const auto& e : report.entries) {
    out += e.id + " checked=" + std::to_string(e.checked) +
           " failures=" + std::to_string(e.failures) + " " + std::string(status_name(e.status));
    if (!e.witness.empty()) out += " [" + e.witness + "]";
    out += "\n";
  }
  out += "suite " + report.name + ": " + std::to_string(report.entries.size()) + " laws, " +
         std::to_string(report.count(Status::Fail)) + " FAIL, " +
         std::to_string(report.count(Status::Flagged)) + " FLAGGED => " +
         (report.passed() ? "PASS" : "FAIL");
  if (with_timing) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.2fs)", report.seconds);
    out += buf;
  }
  out += "\n";
  return out;
}

}  // namespace dbcat

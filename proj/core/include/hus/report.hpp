#ifndef HUS_REPORT_HPP
#define HUS_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hus/stability.hpp"

namespace hus {

struct TheoremOutcome {
  std::string theorem_id;
  std::uint64_t seed = 0;
  long long draws = 0;
  bool passed = false;
  long long violations = 0;
  std::string counterexample;  // first failing instance, empty when none
  std::vector<std::pair<std::string, std::string>> details;
};

struct Report {
  std::string subject_kind;
  std::string subject_name;
  ToleranceConfig tolerances;
  std::optional<StabilityReport> stability;
  std::optional<std::vector<std::pair<long long, double>>> convergence;
  std::optional<WitnessResult> witness;
  std::optional<TheoremOutcome> theorem;
};

enum class ReportFormat { Human, KeyValue };

/// Human: aligned text. KeyValue: one dotted `key = value` per line, stable
/// ordering, 17-significant-digit numbers, `inf` for infinities.
std::string render_report(const Report& r, ReportFormat format);

}  // namespace hus

#endif  // HUS_REPORT_HPP

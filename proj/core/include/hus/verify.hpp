#ifndef HUS_VERIFY_HPP
#define HUS_VERIFY_HPP

#include "hus/report.hpp"
#include "hus/spec_file.hpp"

namespace hus {

/// Known theorem suite identifiers, in CLI listing order.
const std::vector<std::string>& theorem_ids();

long long default_draws(const std::string& theorem_id);

/// Runs a seeded property suite for the named theorem and reports pass/fail
/// with the first counterexample. Supplied specs replace the random draws
/// where the suite supports explicit instances (szasz_witness parameters,
/// schur/quad block instances, sum operand pairs).
TheoremOutcome run_theorem(const std::string& theorem_id, const std::vector<ResolvedSpec>& specs,
                           std::uint64_t seed, long long draws, const ToleranceConfig& tol);

}  // namespace hus

#endif  // HUS_VERIFY_HPP

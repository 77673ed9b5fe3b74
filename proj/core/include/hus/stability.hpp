#ifndef HUS_STABILITY_HPP
#define HUS_STABILITY_HPP

#include <utility>
#include <vector>

#include "hus/operator_model.hpp"

namespace hus {

/// Central output record: the reduced minimum modulus and everything the
/// closed-range characterization derives from it.
struct StabilityReport {
  double gamma = 0.0;
  bool gamma_attained = false;
  double hus_constant = 0.0;  // 1/gamma, +inf when gamma == 0
  bool stable = false;        // gamma > 0
  double spectral_floor = 0.0;  // gamma^2
  bool kernel_infinite = false;
  long long kernel_dim = 0;  // valid when !kernel_infinite
};

struct WitnessResult {
  std::vector<Scalar> x0;  // nearest kernel element (orthogonal projection)
  double distance = 0.0;   // ||x - x0||
  double bound = 0.0;      // hus_constant * ||Tx||
};

/// Reduced minimum modulus. Exact for diagonal models; smallest singular
/// value above the relative rank cutoff for matrices; per-index 2x2 cell
/// analysis for diagonal-regime blocks, dense assembly otherwise.
ExtValue gamma(const OperatorModel& op, const ToleranceConfig& tol);

StabilityReport stability_report(const OperatorModel& op, const ToleranceConfig& tol);

/// Nearest-kernel witness for the defining inequality ||x - x0|| <= M ||Tx||.
WitnessResult hus_witness(const OperatorModel& op, std::span<const Scalar> x,
                          const ToleranceConfig& tol);

/// Whether the spectrum of T*T off its kernel sits inside [r, inf).
bool spectral_floor_check(const OperatorModel& op, double r, const ToleranceConfig& tol);

/// N x N diagonal matrix materialized from the first N entries.
MatrixOperator truncate(const DiagonalOperator& d, long long n);

/// gamma of the truncations at the given dimensions (strictly increasing).
std::vector<std::pair<long long, double>> gamma_convergence_table(
    const DiagonalOperator& d, const std::vector<long long>& dims, const ToleranceConfig& tol);

}  // namespace hus

#endif  // HUS_STABILITY_HPP

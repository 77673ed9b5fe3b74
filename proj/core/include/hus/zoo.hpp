#ifndef HUS_ZOO_HPP
#define HUS_ZOO_HPP

#include <functional>
#include <string>
#include <vector>

#include "hus/operator_model.hpp"

namespace hus {

struct BernsteinSpec {
  int n = 1;  // polynomial degree, >= 1
};

struct SzaszSpec {
  int n = 1;            // operator index, >= 1
  double cap = 1.0;     // the N of the no-finite-constant construction, > 0
};

/// binomial(n,k) x^k (1-x)^{n-k}; log-gamma evaluation for n > 50.
double bernstein_basis(int n, int k, double x);

/// Row j, column k holds the k-th basis polynomial at nodes[j]. At the
/// canonical nodes {k/n} this is the finite-rank surrogate whose smallest
/// singular value realizes a stability constant for the nodal problem.
MatrixOperator bernstein_nodal_matrix(int n, const std::vector<double>& nodes);

std::vector<double> bernstein_uniform_nodes(int n);

/// Truncated exponential series sum f(k/n) e^{-nx} (nx)^k / k!; stops when
/// the remaining Poisson mass drops below series_tol, so the truncation
/// error is bounded by series_tol * sup|f|.
double szasz_apply(const SzaszSpec& spec, const std::function<double(double)>& f, double x,
                   double series_tol);

/// Piecewise-linear hat with peak `peak_value` at `peak_x`, support
/// [left, right], zero outside.
struct HatFunction {
  double left = 0.0;
  double peak_x = 0.0;
  double right = 0.0;
  double peak_value = 0.0;
  double operator()(double x) const;
};

/// The constructive refutation of any stability constant <= cap: the
/// smallest peak position j with (cap+1) j^j/(j! e^j) <= 1, the hat input of
/// height cap+1 whose image stays below 1 in sup norm, and the forced
/// distance cap+1 from the hat to any kernel candidate at the peak node.
struct SzaszWitness {
  long long j = 0;
  HatFunction hat;
  double sup_norm = 0.0;
  double kernel_gap = 0.0;
};
SzaszWitness szasz_instability_witness(const SzaszSpec& spec);

/// Sampled multiplication operator phi(x_i), x_i = i/(N+1).
struct PhiSpec {
  enum class Kind { Identity01, Shifted, Grid } kind = Kind::Identity01;
  double shift = 0.0;                // for Shifted: phi(x) = x + shift
  std::vector<double> grid_values;   // for Grid: explicit diagonal samples
};
MatrixOperator multiplication_sampled(const PhiSpec& phi, long long n);

enum class PaperDiagonal {
  StableN,            // entries n
  InverseOfStableN,   // entries 1/n
  ShiftedWeighted,    // entries 0,1,0,2,0,3,... (diagonalized form)
  MixedUnstable,      // entries 1, 2, 1/3, 4, 1/5, ...
  KernelPlusN,        // entries 0, 2, 3, 4, ...
};
DiagonalOperator paper_diagonal(PaperDiagonal name);

struct ZooEntry {
  std::string name;
  std::string summary;
};
const std::vector<ZooEntry>& zoo_catalog();

}  // namespace hus

#endif  // HUS_ZOO_HPP

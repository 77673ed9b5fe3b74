#include "hus/zoo.hpp"

#include <cmath>

#include "hus/errors.hpp"

namespace hus {

namespace {

double binomial_small(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

}  // namespace

double bernstein_basis(int n, int k, double x) {
  if (n < 1 || k < 0 || k > n) throw DomainViolation("basis index out of range");
  if (x < 0.0 || x > 1.0) throw DomainViolation("basis argument outside [0, 1]");
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  if (x == 1.0) return k == n ? 1.0 : 0.0;
  if (n > 50) {
    const double log_value = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(n - k + 1.0) + k * std::log(x) +
                             (n - k) * std::log1p(-x);
    return std::exp(log_value);
  }
  return binomial_small(n, k) * std::pow(x, k) * std::pow(1.0 - x, n - k);
}

MatrixOperator bernstein_nodal_matrix(int n, const std::vector<double>& nodes) {
  if (n < 1) throw DomainViolation("degree must be >= 1");
  if (nodes.empty()) throw DomainViolation("node list must be nonempty");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(nodes.size()), n + 1);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (int k = 0; k <= n; ++k) {
      m(static_cast<Eigen::Index>(j), k) = Scalar(bernstein_basis(n, k, nodes[j]), 0.0);
    }
  }
  return MatrixOperator::create(std::move(m));
}

std::vector<double> bernstein_uniform_nodes(int n) {
  std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) nodes[static_cast<std::size_t>(k)] = static_cast<double>(k) / n;
  return nodes;
}

double szasz_apply(const SzaszSpec& spec, const std::function<double(double)>& f, double x,
                   double series_tol) {
  if (spec.n < 1) throw DomainViolation("operator index must be >= 1");
  if (x < 0.0) throw DomainViolation("argument must be >= 0");
  if (!(series_tol > 0.0)) throw PreconditionError("series tolerance must be positive");
  const double lambda = spec.n * x;
  double term = std::exp(-lambda);  // Poisson weight at k = 0
  if (lambda > 0.0 && term == 0.0) {
    throw NonConvergent("series weights underflow at this argument");
  }
  double mass = 0.0;
  double acc = 0.0;
  constexpr long long kCap = 1'000'000;
  for (long long k = 0; k < kCap; ++k) {
    acc += f(static_cast<double>(k) / spec.n) * term;
    mass += term;
    if (1.0 - mass < series_tol) return acc;
    term *= lambda / static_cast<double>(k + 1);
  }
  throw NonConvergent("Poisson tail mass did not reach the tolerance");
}

double HatFunction::operator()(double x) const {
  if (x <= left || x >= right) return 0.0;
  if (x <= peak_x) return peak_value * (x - left) / (peak_x - left);
  return peak_value * (right - x) / (right - peak_x);
}

SzaszWitness szasz_instability_witness(const SzaszSpec& spec) {
  if (spec.n < 1 || !(spec.cap > 0.0)) throw DomainViolation("invalid witness parameters");
  // The ratio behaves like 1/sqrt(2 pi j), so the peak index grows like
  // (cap+1)^2/(2 pi); refuse scans that cannot finish at desk scale.
  if ((spec.cap + 1.0) * (spec.cap + 1.0) / (2.0 * 3.141592653589793) > 2e8) {
    throw NonConvergent("witness peak index out of tractable range for this cap");
  }
  const double log_target = -std::log(spec.cap + 1.0);
  long long j = 1;
  // Smallest j with log(j^j/(j! e^j)) <= log target; the ratio decays like
  // 1/sqrt(2 pi j), so the scan terminates quickly.
  while (true) {
    const double log_ratio = j * std::log(static_cast<double>(j)) -
                             std::lgamma(static_cast<double>(j) + 1.0) - static_cast<double>(j);
    if (log_ratio <= log_target) break;
    ++j;
    if (j > 1'000'000'000LL) throw NonConvergent("witness peak search did not terminate");
  }
  SzaszWitness w;
  w.j = j;
  w.hat.left = static_cast<double>(j - 1) / spec.n;
  w.hat.peak_x = static_cast<double>(j) / spec.n;
  w.hat.right = static_cast<double>(j + 1) / spec.n;
  w.hat.peak_value = spec.cap + 1.0;
  w.kernel_gap = spec.cap + 1.0;

  const HatFunction hat = w.hat;
  const double upper = 3.0 * static_cast<double>(j) / spec.n;
  const int points = 10001;
  double sup = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = upper * static_cast<double>(i) / (points - 1);
    sup = std::max(sup, std::abs(szasz_apply(spec, hat, x, 1e-12)));
  }
  w.sup_norm = sup;
  return w;
}

MatrixOperator multiplication_sampled(const PhiSpec& phi, long long n) {
  if (n < 1) throw DomainViolation("sample count must be >= 1");
  std::vector<Scalar> entries(static_cast<std::size_t>(n));
  for (long long i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n + 1);
    double value = 0.0;
    switch (phi.kind) {
      case PhiSpec::Kind::Identity01:
        value = x;
        break;
      case PhiSpec::Kind::Shifted:
        value = x + phi.shift;
        break;
      case PhiSpec::Kind::Grid:
        if (static_cast<long long>(phi.grid_values.size()) != n) {
          throw DomainViolation("grid length does not match the sample count");
        }
        value = phi.grid_values[static_cast<std::size_t>(i - 1)];
        break;
    }
    entries[static_cast<std::size_t>(i - 1)] = Scalar(value, 0.0);
  }
  return MatrixOperator::diagonal(entries);
}

DiagonalOperator paper_diagonal(PaperDiagonal name) {
  const Scalar one(1.0, 0.0);
  switch (name) {
    case PaperDiagonal::StableN:
      return DiagonalOperator::create({}, {TailAtom::power(one, 1.0)});
    case PaperDiagonal::InverseOfStableN:
      return DiagonalOperator::create({}, {TailAtom::power(one, -1.0)});
    case PaperDiagonal::ShiftedWeighted:
      // Diagonalized form of the shift-composed weights; zero on the odd
      // classes, k on the 2k-th coordinate.
      return DiagonalOperator::create({}, {TailAtom::zero(), TailAtom::power(Scalar(0.5, 0.0), 1.0)});
    case PaperDiagonal::MixedUnstable:
      return DiagonalOperator::create({one},
                                      {TailAtom::power(one, -1.0), TailAtom::power(one, 1.0)});
    case PaperDiagonal::KernelPlusN:
      return DiagonalOperator::create({Scalar(0.0, 0.0), Scalar(2.0, 0.0), Scalar(3.0, 0.0)},
                                      {TailAtom::power(one, 1.0)});
  }
  throw PreconditionError("unknown named diagonal");
}

const std::vector<ZooEntry>& zoo_catalog() {
  static const std::vector<ZooEntry> catalog = {
      {"stable_n", "diagonal entries n; stable with gamma = 1"},
      {"inverse_of_stable_n", "diagonal entries 1/n; range dense but not closed"},
      {"shifted_weighted", "diagonalized weighted shift 0,1,0,2,...; stable, infinite kernel"},
      {"mixed_unstable", "entries 1, 2, 1/3, 4, 1/5, ...; gamma = 0"},
      {"kernel_plus_n", "entries 0, 2, 3, 4, ...; stable with spectral floor 4"},
      {"bernstein", "nodal matrix of the degree-n polynomial operator (params: n, nodes)"},
      {"szasz", "exponential-series operator witness data (params: n, N)"},
      {"multiplication", "sampled multiplication operator (params: phi, dim)"},
  };
  return catalog;
}

}  // namespace hus

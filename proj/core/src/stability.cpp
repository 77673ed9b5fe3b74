#include "hus/stability.hpp"

#include <cmath>
#include <limits>

#include "dense_util.hpp"
#include "hus/block_matrix.hpp"
#include "hus/errors.hpp"

namespace hus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ExtValue gamma_matrix(const MatrixOperator& m, const ToleranceConfig& tol) {
  return {detail::smallest_nonzero_sv(m.matrix(), tol.rank_tol), true};
}

ExtValue gamma_diagonal(const DiagonalOperator& d) {
  if (d.is_zero_operator()) throw NumericallyZero("operator is identically zero");
  return d.inf_nonzero_modulus();
}

double vec_norm(std::span<const Scalar> x) {
  double s = 0.0;
  for (Scalar v : x) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

ExtValue gamma(const OperatorModel& op, const ToleranceConfig& tol) {
  tol.validate();
  if (is_diagonal(op)) return gamma_diagonal(as_diagonal(op));
  if (is_matrix(op)) return gamma_matrix(as_matrix(op), tol);
  const BlockMatrix& blk = as_block(op);
  if (blk.diagonal_blocks()) {
    const BlockSpectralData data = block_cell_analysis(blk);
    if (data.identically_zero) throw NumericallyZero("operator is identically zero");
    return data.gamma;
  }
  return {detail::smallest_nonzero_sv(assemble_dense(blk), tol.rank_tol), true};
}

StabilityReport stability_report(const OperatorModel& op, const ToleranceConfig& tol) {
  StabilityReport r;
  const ExtValue g = gamma(op, tol);
  r.gamma = g.value;
  r.gamma_attained = g.attained;
  r.stable = g.value > 0.0;
  r.hus_constant = r.stable ? 1.0 / g.value : kInf;
  r.spectral_floor = g.value * g.value;
  if (is_diagonal(op)) {
    const KernelSupport ks = as_diagonal(op).kernel_support();
    r.kernel_infinite = ks.infinite();
    r.kernel_dim = ks.infinite() ? -1 : ks.finite_dim();
  } else if (is_matrix(op)) {
    const Eigen::VectorXd sv = detail::singular_values(as_matrix(op).matrix());
    r.kernel_infinite = false;
    r.kernel_dim = as_matrix(op).cols() - detail::numerical_rank(sv, tol.rank_tol);
  } else {
    const BlockMatrix& blk = as_block(op);
    if (blk.diagonal_blocks()) {
      const BlockSpectralData data = block_cell_analysis(blk);
      r.kernel_infinite = data.kernel_infinite;
      r.kernel_dim = data.kernel_infinite ? -1 : data.kernel_dim;
    } else {
      const Eigen::MatrixXcd whole = assemble_dense(blk);
      const Eigen::VectorXd sv = detail::singular_values(whole);
      r.kernel_infinite = false;
      r.kernel_dim = whole.cols() - detail::numerical_rank(sv, tol.rank_tol);
    }
  }
  return r;
}

namespace {

WitnessResult witness_from_projection(std::span<const Scalar> x, std::vector<Scalar> x0,
                                      double hus_constant, double image_norm) {
  WitnessResult w;
  w.x0 = std::move(x0);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - w.x0[i]);
  w.distance = std::sqrt(s);
  w.bound = hus_constant * image_norm;
  return w;
}

WitnessResult witness_matrix(const Eigen::MatrixXcd& m, std::span<const Scalar> x,
                             double hus_constant, const ToleranceConfig& tol) {
  if (static_cast<Eigen::Index>(x.size()) != m.cols()) {
    throw PreconditionError("vector length does not match the operator domain");
  }
  Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::MatrixXcd kernel = detail::kernel_basis(m, tol.rank_tol);
  Eigen::VectorXcd proj = kernel * (kernel.adjoint() * xv);
  std::vector<Scalar> x0(proj.data(), proj.data() + proj.size());
  return witness_from_projection(x, std::move(x0), hus_constant, (m * xv).norm());
}

}  // namespace

WitnessResult hus_witness(const OperatorModel& op, std::span<const Scalar> x,
                          const ToleranceConfig& tol) {
  const ExtValue g = gamma(op, tol);
  if (!(g.value > 0.0)) throw NotStable("operator is not Hyers-Ulam stable");
  const double hus_constant = 1.0 / g.value;

  if (is_diagonal(op)) {
    const DiagonalOperator& d = as_diagonal(op);
    const KernelSupport ks = d.kernel_support();
    std::vector<Scalar> x0(x.size(), Scalar(0.0, 0.0));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (ks.contains(static_cast<long long>(i) + 1)) x0[i] = x[i];
    }
    return witness_from_projection(x, std::move(x0), hus_constant, vec_norm(d.apply(x)));
  }
  if (is_matrix(op)) {
    return witness_matrix(as_matrix(op).matrix(), x, hus_constant, tol);
  }
  const BlockMatrix& blk = as_block(op);
  if (!blk.diagonal_blocks()) {
    return witness_matrix(assemble_dense(blk), x, hus_constant, tol);
  }
  // Diagonal regime: project per 2x2 index cell.
  if (x.size() % 2 != 0) {
    throw PreconditionError("block witness expects two stacked halves of equal length");
  }
  const std::size_t m = x.size() / 2;
  std::vector<Scalar> x0(x.size(), Scalar(0.0, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const long long n = static_cast<long long>(i) + 1;
    Eigen::Matrix2cd cell;
    cell << as_diagonal(blk.a()).entry(n), as_diagonal(blk.b()).entry(n),
        as_diagonal(blk.c()).entry(n), as_diagonal(blk.e()).entry(n);
    Eigen::Vector2cd xi(x[i], x[m + i]);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(cell, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = tol.rank_tol * (sv(0) > 0 ? sv(0) : 1.0);
    Eigen::Vector2cd proj = Eigen::Vector2cd::Zero();
    for (int j = 0; j < 2; ++j) {
      if (sv(j) <= cutoff) {
        const Eigen::Vector2cd v = svd.matrixV().col(j);
        proj += v * (v.adjoint() * xi);
      }
    }
    x0[i] = proj(0);
    x0[m + i] = proj(1);
  }
  return witness_from_projection(x, std::move(x0), hus_constant, vec_norm(apply_model(op, x)));
}

bool spectral_floor_check(const OperatorModel& op, double r, const ToleranceConfig& tol) {
  if (!(r > 0.0)) throw PreconditionError("spectral floor threshold must be positive");
  if (is_diagonal(op)) {
    const ExtValue g = gamma_diagonal(as_diagonal(op));
    return g.value * g.value >= r;
  }
  if (is_matrix(op)) {
    const Eigen::VectorXd sv = detail::singular_values(as_matrix(op).matrix());
    if (sv(0) <= 0.0) throw NumericallyZero("matrix is numerically zero");
    const double cutoff = detail::rank_cutoff(sv, tol.rank_tol);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cutoff && sv(i) * sv(i) < r - tol.psd_tol) return false;
    }
    return true;
  }
  const ExtValue g = gamma(op, tol);
  return g.value * g.value >= r - tol.psd_tol;
}

MatrixOperator truncate(const DiagonalOperator& d, long long n) {
  if (n < 1) throw PreconditionError("truncation dimension must be >= 1");
  std::vector<Scalar> entries(static_cast<std::size_t>(n));
  for (long long i = 1; i <= n; ++i) entries[static_cast<std::size_t>(i - 1)] = d.entry(i);
  return MatrixOperator::diagonal(entries);
}

std::vector<std::pair<long long, double>> gamma_convergence_table(
    const DiagonalOperator& d, const std::vector<long long>& dims, const ToleranceConfig& tol) {
  if (dims.empty()) throw PreconditionError("dimension list must be nonempty");
  for (std::size_t i = 1; i < dims.size(); ++i) {
    if (dims[i] <= dims[i - 1]) throw PreconditionError("dimension list must be increasing");
  }
  std::vector<std::pair<long long, double>> table;
  table.reserve(dims.size());
  for (long long n : dims) {
    table.emplace_back(n, gamma_matrix(truncate(d, n), tol).value);
  }
  return table;
}

}  // namespace hus

#ifndef HUS_DENSE_UTIL_HPP
#define HUS_DENSE_UTIL_HPP

#include <Eigen/Dense>

#include "hus/errors.hpp"

namespace hus::detail {

inline bool is_exactly_diagonal(const Eigen::MatrixXcd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r != c && m(r, c) != std::complex<double>(0.0, 0.0)) return false;
    }
  }
  return true;
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  // Diagonal input: the singular values are the entry moduli. Taking them
  // directly keeps truncation tables bit-deterministic across sizes.
  if (is_exactly_diagonal(m)) {
    const Eigen::Index k = std::min(m.rows(), m.cols());
    Eigen::VectorXd sv(k);
    for (Eigen::Index i = 0; i < k; ++i) sv(i) = std::abs(m(i, i));
    std::sort(sv.data(), sv.data() + k, std::greater<double>());
    return sv;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

/// Cutoff below which singular values count as numerical rank deficiency.
inline double rank_cutoff(const Eigen::VectorXd& sv, double rank_tol) {
  return sv.size() ? rank_tol * sv(0) : 0.0;
}

inline Eigen::Index numerical_rank(const Eigen::VectorXd& sv, double rank_tol) {
  const double cutoff = rank_cutoff(sv, rank_tol);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++r;
  }
  return r;
}

/// Smallest singular value above the relative cutoff; throws when the matrix
/// is numerically zero.
inline double smallest_nonzero_sv(const Eigen::MatrixXcd& m, double rank_tol) {
  const Eigen::VectorXd sv = singular_values(m);
  if (sv(0) <= 0.0) throw NumericallyZero("matrix is numerically zero");
  const double cutoff = rank_cutoff(sv, rank_tol);
  double smallest = sv(0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) smallest = sv(i);
  }
  return smallest;
}

/// Orthonormal basis of the numerical nullspace (columns).
inline Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& m, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = rank_cutoff(sv, rank_tol);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(m.cols() - rank);
}

/// Full-rank inverse with an explicit bounded-invertibility gate.
inline Eigen::MatrixXcd checked_inverse(const Eigen::MatrixXcd& m, double rank_tol,
                                        const char* what) {
  if (m.rows() != m.cols()) throw NotInvertible(std::string(what) + " is not square");
  const Eigen::VectorXd sv = singular_values(m);
  if (sv(0) <= 0.0 || sv(sv.size() - 1) <= rank_cutoff(sv, rank_tol)) {
    throw NotInvertible(std::string(what) + " is not boundedly invertible");
  }
  return m.inverse();
}

}  // namespace hus::detail

#endif  // HUS_DENSE_UTIL_HPP

#ifndef HUS_MATRIX_OPERATOR_HPP
#define HUS_MATRIX_OPERATOR_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hus/scalar.hpp"

namespace hus {

/// Dense finite-dimensional operator.
class MatrixOperator {
 public:
  static MatrixOperator create(Eigen::MatrixXcd m);
  static MatrixOperator create_allow_zero(Eigen::MatrixXcd m);
  static MatrixOperator identity(Eigen::Index n);
  static MatrixOperator diagonal(const std::vector<Scalar>& entries);

  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Scalar entry(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  bool is_zero_operator() const { return m_.isZero(0.0); }

  std::vector<Scalar> apply(std::span<const Scalar> x) const;

 private:
  explicit MatrixOperator(Eigen::MatrixXcd m) : m_(std::move(m)) {}
  Eigen::MatrixXcd m_;
};

}  // namespace hus

#endif  // HUS_MATRIX_OPERATOR_HPP

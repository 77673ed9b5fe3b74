#include "hus/matrix_operator.hpp"

#include "hus/errors.hpp"

namespace hus {

MatrixOperator MatrixOperator::create(Eigen::MatrixXcd m) {
  MatrixOperator op = create_allow_zero(std::move(m));
  if (op.is_zero_operator()) throw InvalidOperator("the zero operator is not admitted");
  return op;
}

MatrixOperator MatrixOperator::create_allow_zero(Eigen::MatrixXcd m) {
  if (m.rows() < 1 || m.cols() < 1) throw InvalidOperator("matrix dimensions must be positive");
  if (!m.allFinite()) throw InvalidOperator("non-finite matrix entry");
  return MatrixOperator(std::move(m));
}

MatrixOperator MatrixOperator::identity(Eigen::Index n) {
  return MatrixOperator(Eigen::MatrixXcd::Identity(n, n));
}

MatrixOperator MatrixOperator::diagonal(const std::vector<Scalar>& entries) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(entries.size()),
                                              static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = entries[i];
  }
  return create_allow_zero(std::move(m));
}

std::vector<Scalar> MatrixOperator::apply(std::span<const Scalar> x) const {
  if (static_cast<Eigen::Index>(x.size()) != cols()) {
    throw PreconditionError("vector length does not match matrix columns");
  }
  Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXcd y = m_ * xv;
  return std::vector<Scalar>(y.data(), y.data() + y.size());
}

}  // namespace hus

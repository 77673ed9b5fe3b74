#ifndef HUS_OPERATOR_MODEL_HPP
#define HUS_OPERATOR_MODEL_HPP

#include <memory>
#include <variant>

#include "hus/diagonal_operator.hpp"
#include "hus/matrix_operator.hpp"

namespace hus {

struct OperatorModel;

/// 2x2 block operator matrix [[a, b], [c, e]] with a stored complement shift.
/// Either all four blocks are diagonal models over the same index space, or
/// all four are dense matrices with conformable shapes.
class BlockMatrix {
 public:
  BlockMatrix(OperatorModel a, OperatorModel b, OperatorModel c, OperatorModel e,
              Scalar mu = Scalar(0.0, 0.0));

  const OperatorModel& a() const { return *a_; }
  const OperatorModel& b() const { return *b_; }
  const OperatorModel& c() const { return *c_; }
  const OperatorModel& e() const { return *e_; }
  Scalar mu() const { return mu_; }

  bool diagonal_blocks() const { return diagonal_; }
  /// Dense regime row/column split (a is rows_h x rows_h is not required;
  /// a: h x h', see ctor checks). For diagonal regime these are meaningless.
  Eigen::Index dim_h() const { return dim_h_; }
  Eigen::Index dim_k() const { return dim_k_; }

 private:
  std::shared_ptr<const OperatorModel> a_, b_, c_, e_;
  Scalar mu_;
  bool diagonal_ = false;
  Eigen::Index dim_h_ = 0, dim_k_ = 0;
};

struct OperatorModel : std::variant<DiagonalOperator, MatrixOperator, BlockMatrix> {
  using variant::variant;
};

inline bool is_diagonal(const OperatorModel& op) {
  return std::holds_alternative<DiagonalOperator>(op);
}
inline bool is_matrix(const OperatorModel& op) {
  return std::holds_alternative<MatrixOperator>(op);
}
inline bool is_block(const OperatorModel& op) {
  return std::holds_alternative<BlockMatrix>(op);
}

inline const DiagonalOperator& as_diagonal(const OperatorModel& op) {
  return std::get<DiagonalOperator>(op);
}
inline const MatrixOperator& as_matrix(const OperatorModel& op) {
  return std::get<MatrixOperator>(op);
}
inline const BlockMatrix& as_block(const OperatorModel& op) {
  return std::get<BlockMatrix>(op);
}

bool is_zero_model(const OperatorModel& op);
std::string model_class_name(const OperatorModel& op);
std::string describe_model(const OperatorModel& op);

/// Tx for a finitely supported coefficient vector. Diagonal models read x as
/// the first len(x) coordinates; block models read it as two stacked halves.
std::vector<Scalar> apply_model(const OperatorModel& op, std::span<const Scalar> x);

/// Numerical policy for every rank/PSD/grid decision.
struct ToleranceConfig {
  double rank_tol = 1e-10;   // relative singular-value cutoff
  double psd_tol = 1e-10;    // eigenvalue negativity slack
  int grid_points = 10001;   // sup-norm evaluation grid
  double match_tol = 1e-10;  // factorization equality tolerance

  void validate() const;
};

}  // namespace hus

#endif  // HUS_OPERATOR_MODEL_HPP

#include "hus/operator_model.hpp"

#include "hus/errors.hpp"

namespace hus {

BlockMatrix::BlockMatrix(OperatorModel a, OperatorModel b, OperatorModel c, OperatorModel e,
                         Scalar mu)
    : a_(std::make_shared<OperatorModel>(std::move(a))),
      b_(std::make_shared<OperatorModel>(std::move(b))),
      c_(std::make_shared<OperatorModel>(std::move(c))),
      e_(std::make_shared<OperatorModel>(std::move(e))),
      mu_(mu) {
  if (!scalar_is_finite(mu_)) throw InvalidOperator("non-finite block shift");
  const bool all_diag = is_diagonal(*a_) && is_diagonal(*b_) && is_diagonal(*c_) && is_diagonal(*e_);
  const bool all_mat = is_matrix(*a_) && is_matrix(*b_) && is_matrix(*c_) && is_matrix(*e_);
  if (all_diag) {
    diagonal_ = true;
    return;
  }
  if (!all_mat) {
    throw UnsupportedModel("block matrix requires four diagonal or four dense blocks");
  }
  const auto& ma = as_matrix(*a_);
  const auto& mb = as_matrix(*b_);
  const auto& mc = as_matrix(*c_);
  const auto& me = as_matrix(*e_);
  // a: H->H, b: K->H, c: H->K, e: K->K.
  if (ma.rows() != ma.cols() || me.rows() != me.cols() || mb.rows() != ma.rows() ||
      mb.cols() != me.cols() || mc.rows() != me.rows() || mc.cols() != ma.cols()) {
    throw InvalidOperator("block shapes are not conformable");
  }
  dim_h_ = ma.rows();
  dim_k_ = me.rows();
}

bool is_zero_model(const OperatorModel& op) {
  if (is_diagonal(op)) return as_diagonal(op).is_zero_operator();
  if (is_matrix(op)) return as_matrix(op).is_zero_operator();
  const BlockMatrix& blk = as_block(op);
  return is_zero_model(blk.a()) && is_zero_model(blk.b()) && is_zero_model(blk.c()) &&
         is_zero_model(blk.e());
}

std::string model_class_name(const OperatorModel& op) {
  if (is_diagonal(op)) return "diagonal";
  if (is_matrix(op)) return "matrix";
  return "block";
}

std::string describe_model(const OperatorModel& op) {
  if (is_diagonal(op)) return as_diagonal(op).describe();
  if (is_matrix(op)) {
    const auto& m = as_matrix(op);
    return "matrix " + std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  }
  const BlockMatrix& blk = as_block(op);
  return "block [[" + describe_model(blk.a()) + "], [" + describe_model(blk.b()) + "], [" +
         describe_model(blk.c()) + "], [" + describe_model(blk.e()) + "]]";
}

std::vector<Scalar> apply_model(const OperatorModel& op, std::span<const Scalar> x) {
  if (is_diagonal(op)) return as_diagonal(op).apply(x);
  if (is_matrix(op)) return as_matrix(op).apply(x);
  const BlockMatrix& blk = as_block(op);
  if (x.size() % 2 != 0) {
    throw PreconditionError("block apply expects two stacked halves of equal length");
  }
  const std::size_t m = x.size() / 2;
  std::span<const Scalar> u = x.subspan(0, m);
  std::span<const Scalar> v = x.subspan(m, m);
  const auto au = apply_model(blk.a(), u);
  const auto bv = apply_model(blk.b(), v);
  const auto cu = apply_model(blk.c(), u);
  const auto ev = apply_model(blk.e(), v);
  std::vector<Scalar> y(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = au[i] + bv[i];
    y[m + i] = cu[i] + ev[i];
  }
  return y;
}

void ToleranceConfig::validate() const {
  if (!(rank_tol > 0.0) || !(psd_tol > 0.0) || !(match_tol > 0.0) || grid_points < 1) {
    throw PreconditionError("tolerances must be positive");
  }
}

}  // namespace hus

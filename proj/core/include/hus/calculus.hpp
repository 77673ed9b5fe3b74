#ifndef HUS_CALCULUS_HPP
#define HUS_CALCULUS_HPP

#include "hus/operator_model.hpp"

namespace hus {

/// Smallest b with ||Sx|| <= b ||Tx|| on the domain of T.
struct RelativeBoundCertificate {
  double b = 0.0;
  bool exact = false;  // true for diagonal pairs (rule-algebra supremum)
};

OperatorModel adjoint(const OperatorModel& op);

/// Generalized inverse: exact entrywise reciprocal off the kernel for
/// diagonal models, SVD Moore-Penrose with the rank cutoff for matrices.
OperatorModel pseudo_inverse(const OperatorModel& op, const ToleranceConfig& tol);

bool is_bounded(const OperatorModel& op);

/// (I + T*T)^{-1}; entries 1/(1 + |d_n|^2).
DiagonalOperator defect_transform(const DiagonalOperator& d);

/// T (I + T*T)^{-1/2}; entries d_n / sqrt(1 + |d_n|^2), norm <= 1.
DiagonalOperator bounded_transform(const DiagonalOperator& d);

/// Square root of a positive self-adjoint model.
OperatorModel sqrt_op(const OperatorModel& op, const ToleranceConfig& tol);

OperatorModel power_op(const OperatorModel& op, int n);

RelativeBoundCertificate relative_bound(const OperatorModel& s, const OperatorModel& t,
                                        const ToleranceConfig& tol);

/// S + T together with the certificate b < 1 that guarantees
/// gamma(S + T) >= (1 - b) gamma(T).
std::pair<OperatorModel, RelativeBoundCertificate> add_with_bound(const OperatorModel& s,
                                                                  const OperatorModel& t,
                                                                  const ToleranceConfig& tol);

/// Entrywise sum of diagonal models with exactly disjoint supports.
DiagonalOperator add_orthogonal_ranges(const DiagonalOperator& s, const DiagonalOperator& t);

/// Entrywise sum under the coercivity certificate |t_n| - |s_n| >= a with
/// nonnegative real entries and bounded t.
DiagonalOperator add_coercive(const DiagonalOperator& s, const DiagonalOperator& t, double a);

/// T∘S: entrywise product for diagonal models, matrix product otherwise.
OperatorModel compose(const OperatorModel& t, const OperatorModel& s);

/// T x S: interleaved diagonal model or block-diagonal matrix.
OperatorModel direct_sum(const OperatorModel& t, const OperatorModel& s);

OperatorModel scale(Scalar c, const OperatorModel& op);

/// sqrt(||x||^2 + ||Tx||^2).
double graph_norm(const OperatorModel& op, std::span<const Scalar> x);

}  // namespace hus

#endif  // HUS_CALCULUS_HPP

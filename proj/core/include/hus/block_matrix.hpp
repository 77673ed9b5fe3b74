#ifndef HUS_BLOCK_MATRIX_HPP
#define HUS_BLOCK_MATRIX_HPP

#include "hus/operator_model.hpp"

namespace hus {

enum class Complement { Schur2, Schur1, Quad2, Quad1 };

const char* complement_name(Complement which);

/// S2(mu) = E - mu - C (A - mu)^{-1} B.
OperatorModel schur2(const BlockMatrix& m, Scalar mu, const ToleranceConfig& tol);
/// S1(mu) = A - mu - B (E - mu)^{-1} C.
OperatorModel schur1(const BlockMatrix& m, Scalar mu, const ToleranceConfig& tol);
/// T2(mu) = B - (A - mu) C^{-1} (E - mu).
OperatorModel quad2(const BlockMatrix& m, Scalar mu, const ToleranceConfig& tol);
/// T1(mu) = C - (E - mu) B^{-1} (A - mu).
OperatorModel quad1(const BlockMatrix& m, Scalar mu, const ToleranceConfig& tol);

OperatorModel complement(const BlockMatrix& m, Complement which, Scalar mu,
                         const ToleranceConfig& tol);

/// Rebuilds the block matrix from the three-factor closure decomposition of
/// the requested complement and compares it entrywise with the direct
/// assembly. Diagonal blocks are checked per 2x2 index cell up to trunc_dim;
/// dense blocks are checked on the full assembly.
bool factorization_check(const BlockMatrix& m, Scalar mu, Complement which,
                         const ToleranceConfig& tol, long long trunc_dim = 16);

struct EquivalenceVerdict {
  bool complement_stable = false;
  bool whole_stable = false;
  bool consistent = false;
};

/// Checks the dominance hypothesis for the requested complement, then
/// decides closed-range stability of the complement at mu = 0 and of the
/// whole block matrix independently. The two verdicts must agree.
EquivalenceVerdict closed_range_equivalence(const BlockMatrix& m, Complement which,
                                            const ToleranceConfig& tol);

/// Exact spectral data of a diagonal-regime block matrix from its
/// per-index 2x2 cells.
struct BlockSpectralData {
  ExtValue gamma;
  bool kernel_infinite = false;
  long long kernel_dim = 0;
  bool identically_zero = false;
};
BlockSpectralData block_cell_analysis(const BlockMatrix& m);

/// Dense assembly [[A, B], [C, E]] of a matrix-regime block.
Eigen::MatrixXcd assemble_dense(const BlockMatrix& m);

}  // namespace hus

#endif  // HUS_BLOCK_MATRIX_HPP

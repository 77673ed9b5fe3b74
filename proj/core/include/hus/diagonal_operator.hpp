#ifndef HUS_DIAGONAL_OPERATOR_HPP
#define HUS_DIAGONAL_OPERATOR_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hus/tail_atom.hpp"

namespace hus {

/// An arithmetic progression of indices {first, first + step, ...}.
struct IndexClass {
  long long first;
  long long step;
};

/// Exact description of {n : d_n = 0} for a diagonal model: finitely many
/// isolated indices plus whole residue classes (these make the kernel
/// infinite-dimensional).
struct KernelSupport {
  std::vector<long long> indices;
  std::vector<IndexClass> classes;

  bool infinite() const { return !classes.empty(); }
  long long finite_dim() const { return static_cast<long long>(indices.size()); }
  bool contains(long long n) const;
  bool empty() const { return indices.empty() && classes.empty(); }
  std::string describe() const;
};

/// Densely defined diagonal operator on l2: an explicit finite head
/// d_1..d_m followed by cyclic symbolic entry laws. Law k of an L-cycle
/// covers the indices n >= m+1 with n ≡ k+1 (mod L), so the cycle is
/// phase-locked to the global index and unaffected by the head length.
///
/// Values are immutable after construction; all operations are pure.
class DiagonalOperator {
 public:
  /// Validating factory: rejects the identically-zero operator.
  static DiagonalOperator create(std::vector<Scalar> head, std::vector<TailAtom> atoms);
  /// Permissive factory for internally produced models (complements may
  /// legitimately collapse to zero).
  static DiagonalOperator create_allow_zero(std::vector<Scalar> head,
                                            std::vector<TailAtom> atoms);

  long long head_size() const { return static_cast<long long>(head_.size()); }
  long long start() const { return head_size() + 1; }
  int cycle_length() const { return static_cast<int>(atoms_.size()); }
  const std::vector<Scalar>& head() const { return head_; }
  const std::vector<TailAtom>& atoms() const { return atoms_; }

  /// First index >= start() in phase class `phase`.
  long long class_first(int phase) const;

  Scalar entry(long long n) const;
  bool is_zero_operator() const;

  ExtValue inf_nonzero_modulus() const;
  double sup_modulus() const;
  KernelSupport kernel_support() const;

  std::vector<Scalar> apply(std::span<const Scalar> x) const;

  /// Entrywise unary image (adjoint, reciprocal-off-kernel, transforms, ...).
  DiagonalOperator map(const std::function<Scalar(Scalar)>& head_fn,
                       const std::function<TailAtom(const TailAtom&)>& atom_fn,
                       bool allow_zero_result = false) const;

  /// Entrywise binary combination over the aligned cycle (lcm of lengths,
  /// max of head sizes).
  static DiagonalOperator combine(const DiagonalOperator& a, const DiagonalOperator& b,
                                  const std::function<Scalar(Scalar, Scalar)>& head_fn,
                                  const std::function<TailAtom(const TailAtom&, const TailAtom&)>& atom_fn,
                                  bool allow_zero_result = false);

  /// Interleaving d_{2k-1} = t_k, d_{2k} = s_k; the exact model of T x S.
  static DiagonalOperator interleave(const DiagonalOperator& t, const DiagonalOperator& s);

  bool structurally_equal(const DiagonalOperator& other) const;
  std::string describe() const;

 private:
  DiagonalOperator(std::vector<Scalar> head, std::vector<TailAtom> atoms);
  std::vector<Scalar> head_;
  std::vector<TailAtom> atoms_;
};

}  // namespace hus

#endif  // HUS_DIAGONAL_OPERATOR_HPP

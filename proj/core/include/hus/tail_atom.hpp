#ifndef HUS_TAIL_ATOM_HPP
#define HUS_TAIL_ATOM_HPP

#include <vector>

#include "hus/power_sum.hpp"

namespace hus {

/// Extended value of an exact infimum/supremum: `attained` records whether
/// some actual entry realizes it (as opposed to a limit along the tail).
struct ExtValue {
  double value = 0.0;
  bool attained = false;
};

/// One entry law on an arithmetic progression of indices:
///
///   f(n) = R(x) · H(x)^w,   x = (n - shift)/dil,
///
/// with R = num/den a ratio of complex power sums and H = wrap_num/wrap_den a
/// positive real power-sum ratio. The plain rules are the w = 0 cases
/// (constant, c·n^p, rational sums such as Schur complement entries); the
/// defect and norm-limiting transforms use w = -1 and w = -1/2. The affine
/// index map keeps interleaved direct sums inside the algebra; canonical
/// atoms have dil = 1, shift = 0.
///
/// Invariants maintained by the factories and operations: den, wrap_num and
/// wrap_den never vanish on the atom's index progression, H > 0 there, and a
/// vanishing numerator collapses the atom to the explicit zero rule.
class TailAtom {
 public:
  enum class Kind { Zero, Constant, Power, Extended };

  TailAtom() : zero_(true) {}

  static TailAtom zero() { return TailAtom(); }
  static TailAtom constant(Scalar c);
  static TailAtom power(Scalar c, double exponent);
  static TailAtom ratio(PowerSum num, PowerSum den);

  bool is_zero() const { return zero_; }
  Kind kind() const;
  /// Constant/Power accessors; only meaningful for those kinds.
  Scalar coefficient() const;
  double exponent() const;

  bool is_constant_function() const;
  bool has_canonical_affine() const { return dil_ == 1 && shift_ == 0; }
  long long dil() const { return dil_; }
  long long shift() const { return shift_; }
  /// Composes an outer reindexing n = a·m + b (entry at new index m equals
  /// the old entry at index a·m + b is wrong way; see direct_sum: the new
  /// atom evaluates the old law at x = (m - shift')/dil' with
  /// dil' = dil·a, shift' = shift·a + b where m_old = (m_new - b)/a).
  TailAtom reindexed(long long a, long long b) const;

  Scalar eval_index(double n) const;

  TailAtom conjugated() const;
  TailAtom scaled(Scalar c) const;
  /// 1/f with zeros untouched; caller guarantees f nonvanishing on the class.
  TailAtom reciprocal() const;
  TailAtom int_power(int k) const;  // k >= 1
  /// Entrywise square root; requires a monomial rational part with a
  /// nonnegative real value law. Throws UnsupportedModel otherwise.
  TailAtom square_root() const;
  /// 1/(1 + |f|^2). Requires w == 0.
  TailAtom defect() const;
  /// f/sqrt(1 + |f|^2). Requires w == 0.
  TailAtom norm_limited() const;

  static TailAtom sum(const TailAtom& a, const TailAtom& b);
  static TailAtom product(const TailAtom& a, const TailAtom& b);
  /// a/b with the coefficient division deferred to the final fold; exact
  /// whenever the true ratio is representable. b must be nonvanishing on
  /// the class.
  static TailAtom quotient(const TailAtom& a, const TailAtom& b);

  bool is_real_valued() const;
  bool structurally_equal(const TailAtom& other) const;

  /// Rational form (num, den); requires w == 0 (throws UnsupportedModel for
  /// wrapped rules). The zero rule reports (0, 1).
  std::pair<PowerSum, PowerSum> rational_parts() const;

  /// Exact analysis of |f| over the global-index progression
  /// {first, first+step, ...}.
  struct ClassAnalysis {
    ExtValue inf_nonzero;            // over points with f(n) != 0
    double sup = 0.0;                // +inf allowed
    bool sup_attained = false;
    std::vector<long long> zeros;    // isolated zero indices (global)
    bool identically_zero = false;
  };
  ClassAnalysis analyze(long long first, long long step) const;

  /// Signed minimum of f over the progression; requires is_real_valued().
  /// value may be -inf (attained = false).
  ExtValue real_min(long long first, long long step) const;

  std::string describe() const;

 private:
  bool zero_ = false;
  PowerSum num_, den_;             // den defaults to 1 in factories
  PowerSum wrap_num_, wrap_den_;   // H; ignored when wrap_exp_ == 0
  double wrap_exp_ = 0.0;
  long long dil_ = 1;
  long long shift_ = 0;

  void fold();  // canonicalize: constant/monomial denominators folded away
  double x_of(double n) const { return (n - static_cast<double>(shift_)) / static_cast<double>(dil_); }
  double wrap_value(double x) const;
  double modulus_at(double x) const;
  static void require_compatible(const TailAtom& a, const TailAtom& b);
};

}  // namespace hus

#endif  // HUS_TAIL_ATOM_HPP

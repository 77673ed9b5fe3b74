#ifndef HUS_POWER_SUM_HPP
#define HUS_POWER_SUM_HPP

#include <vector>

#include "hus/scalar.hpp"

namespace hus {

/// Finite sum  f(x) = Σ c_i · x^{p_i}  with complex coefficients and real
/// exponents, kept canonical: exponents strictly decreasing, no zero
/// coefficients. The empty sum is the zero function.
///
/// On [1, ∞) such sums have a computable dominance threshold past which the
/// leading term outweighs the rest in modulus; this is the workhorse behind
/// every exact infimum/supremum/sign decision in the tail algebra.
class PowerSum {
 public:
  struct Term {
    Scalar coeff;
    double exponent;
  };

  PowerSum() = default;
  static PowerSum constant(Scalar c);
  static PowerSum monomial(Scalar c, double exponent);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;  // zero or a single exponent-0 term
  bool is_monomial() const { return terms_.size() <= 1; }
  bool is_real() const;      // all coefficients have zero imaginary part

  const std::vector<Term>& terms() const { return terms_; }
  double leading_exponent() const;  // requires !is_zero()
  Scalar leading_coeff() const;     // requires !is_zero()

  Scalar eval(double x) const;
  double eval_real(double x) const;  // requires is_real()

  PowerSum conjugate() const;
  PowerSum derivative() const;
  /// f · conj(f); a real power sum.
  PowerSum abs_squared() const;

  PowerSum scaled(Scalar c) const;
  /// Per-term division (one rounding per coefficient, unlike scaling by 1/c).
  PowerSum divided_by(Scalar c) const;
  PowerSum pow_int(int k) const;  // k >= 0

  friend PowerSum operator+(const PowerSum& a, const PowerSum& b);
  friend PowerSum operator-(const PowerSum& a, const PowerSum& b);
  friend PowerSum operator*(const PowerSum& a, const PowerSum& b);

  /// Exact structural equality (same terms, bitwise-equal doubles).
  bool operator==(const PowerSum& other) const;

  /// Smallest X >= 1 such that for every real x >= X the leading term
  /// strictly dominates the sum of the moduli of all other terms. For real
  /// sums the sign of f on [X, ∞) is then the sign of the leading
  /// coefficient; for any sum f has no zeros there.
  double dominance_threshold() const;

  /// For n -> ∞: limit of |f(n)| is 0 / finite / ∞ according to the sign of
  /// the leading exponent. Returns {exponent, |leading coeff|}; the zero sum
  /// reports {0, 0}.
  struct Asym {
    double exponent;
    double coeff_abs;
  };
  Asym asymptotics() const;

  std::string describe() const;  // debug text "c1*n^p1 + ..."

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Locations where a real power sum changes sign on [x_lo, ∞), each refined
/// to an interval of width at most `width`. Works by recursive derivative
/// isolation: f is strictly monotone between sign changes of f', so every
/// sign change of f is bracketed by consecutive critical points (or the
/// dominance bound, past which the sign is the leading coefficient's).
std::vector<double> sign_change_roots(const PowerSum& f, double x_lo, double width);

/// Points bracketing every zero of f on [x_lo, ∞) regardless of
/// multiplicity: the union of sign changes of f and of all its derivative
/// levels (a zero of multiplicity m is a sign change of level m-1).
std::vector<double> zero_bracket_points(const PowerSum& f, double x_lo, double width);

}  // namespace hus

#endif  // HUS_POWER_SUM_HPP

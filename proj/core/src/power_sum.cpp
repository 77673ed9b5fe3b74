#include "hus/power_sum.hpp"

#include <algorithm>
#include <cmath>

#include "hus/errors.hpp"

namespace hus {

PowerSum PowerSum::constant(Scalar c) { return monomial(c, 0.0); }

PowerSum PowerSum::monomial(Scalar c, double exponent) {
  PowerSum p;
  if (c != Scalar(0.0, 0.0)) p.terms_.push_back({c, exponent});
  return p;
}

void PowerSum::normalize() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const Term& a, const Term& b) { return a.exponent > b.exponent; });
  std::vector<Term> merged;
  std::vector<double> merged_mass;  // sum of |coeff| folded into each slot
  for (const Term& t : terms_) {
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coeff += t.coeff;
      merged_mass.back() += std::abs(t.coeff);
    } else {
      merged.push_back(t);
      merged_mass.push_back(std::abs(t.coeff));
    }
  }
  terms_.clear();
  for (std::size_t i = 0; i < merged.size(); ++i) {
    // A coefficient this far below the mass that cancelled into it is
    // rounding dust from a cancellation that is exact in real arithmetic;
    // keeping it would poison the dominance analysis.
    if (merged[i].coeff == Scalar(0.0, 0.0)) continue;
    if (std::abs(merged[i].coeff) <= 1e-12 * merged_mass[i] && merged_mass[i] > 0.0) continue;
    terms_.push_back(merged[i]);
  }
}

bool PowerSum::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0.0);
}

bool PowerSum::is_real() const {
  for (const Term& t : terms_) {
    if (t.coeff.imag() != 0.0) return false;
  }
  return true;
}

double PowerSum::leading_exponent() const { return terms_.front().exponent; }

Scalar PowerSum::leading_coeff() const { return terms_.front().coeff; }

Scalar PowerSum::eval(double x) const {
  Scalar acc(0.0, 0.0);
  for (const Term& t : terms_) acc += t.coeff * real_pow(x, t.exponent);
  return acc;
}

double PowerSum::eval_real(double x) const {
  double acc = 0.0;
  for (const Term& t : terms_) acc += t.coeff.real() * real_pow(x, t.exponent);
  return acc;
}

PowerSum PowerSum::conjugate() const {
  PowerSum p = *this;
  for (Term& t : p.terms_) t.coeff = std::conj(t.coeff);
  return p;
}

PowerSum PowerSum::derivative() const {
  PowerSum p;
  for (const Term& t : terms_) {
    if (t.exponent != 0.0) p.terms_.push_back({t.coeff * t.exponent, t.exponent - 1.0});
  }
  p.normalize();
  return p;
}

PowerSum PowerSum::abs_squared() const { return (*this) * conjugate(); }

PowerSum PowerSum::scaled(Scalar c) const {
  PowerSum p;
  if (c == Scalar(0.0, 0.0)) return p;
  p.terms_ = terms_;
  for (Term& t : p.terms_) t.coeff *= c;
  return p;
}

PowerSum PowerSum::divided_by(Scalar c) const {
  PowerSum p = *this;
  for (Term& t : p.terms_) t.coeff = scalar_div(t.coeff, c);
  return p;
}

PowerSum PowerSum::pow_int(int k) const {
  PowerSum acc = constant(Scalar(1.0, 0.0));
  for (int i = 0; i < k; ++i) acc = acc * (*this);
  return acc;
}

PowerSum operator+(const PowerSum& a, const PowerSum& b) {
  PowerSum p;
  p.terms_ = a.terms_;
  p.terms_.insert(p.terms_.end(), b.terms_.begin(), b.terms_.end());
  p.normalize();
  return p;
}

PowerSum operator-(const PowerSum& a, const PowerSum& b) {
  return a + b.scaled(Scalar(-1.0, 0.0));
}

PowerSum operator*(const PowerSum& a, const PowerSum& b) {
  PowerSum p;
  for (const PowerSum::Term& ta : a.terms_) {
    for (const PowerSum::Term& tb : b.terms_) {
      p.terms_.push_back({ta.coeff * tb.coeff, ta.exponent + tb.exponent});
    }
  }
  p.normalize();
  return p;
}

bool PowerSum::operator==(const PowerSum& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exponent != other.terms_[i].exponent) return false;
    if (terms_[i].coeff != other.terms_[i].coeff) return false;
  }
  return true;
}

double PowerSum::dominance_threshold() const {
  if (terms_.size() <= 1) return 1.0;
  const double lead_abs = std::abs(terms_[0].coeff);
  double rest = 0.0;
  for (std::size_t i = 1; i < terms_.size(); ++i) rest += std::abs(terms_[i].coeff);
  const double gap = terms_[0].exponent - terms_[1].exponent;
  // |c0| x^p0 > rest * x^p1  for x > (rest/|c0|)^(1/gap); pad one unit.
  const double x_star = std::pow(rest / lead_abs, 1.0 / gap);
  if (!std::isfinite(x_star)) {
    throw NumericError("power-sum dominance threshold overflow: " + describe());
  }
  return std::max(1.0, x_star * (1.0 + 1e-12) + 1.0);
}

PowerSum::Asym PowerSum::asymptotics() const {
  if (terms_.empty()) return {0.0, 0.0};
  return {terms_[0].exponent, std::abs(terms_[0].coeff)};
}

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

/// Geometric-then-arithmetic bisection of a bracketed sign change.
double refine_root(const PowerSum& f, double a, double b, int sign_a, double width) {
  for (int it = 0; it < 200 && b - a > width; ++it) {
    const double mid = (b > 4.0 * a && a > 0.0) ? std::sqrt(a * b) : 0.5 * (a + b);
    const int sm = sign_of(f.eval_real(mid));
    if (sm == 0) return mid;
    if (sm == sign_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> sign_change_roots(const PowerSum& f, double x_lo, double width) {
  if (f.terms().size() <= 1) return {};
  // Dividing by x^{p_min} leaves signs on (0, ∞) unchanged and guarantees
  // the derivative loses a term, so the recursion terminates.
  PowerSum g;
  {
    const double p_min = f.terms().back().exponent;
    g = PowerSum();
    for (const auto& t : f.terms()) {
      g = g + PowerSum::monomial(t.coeff, t.exponent - p_min);
    }
  }
  const std::vector<double> crit = sign_change_roots(g.derivative(), x_lo, width);
  double hi = std::max(g.dominance_threshold(), x_lo + 1.0);
  if (!crit.empty()) hi = std::max(hi, crit.back() + 1.0);

  std::vector<double> points;
  points.push_back(x_lo);
  for (double c : crit) {
    if (c > x_lo && c < hi) points.push_back(c);
  }
  points.push_back(hi);

  std::vector<double> roots;
  double prev_x = points[0];
  int prev_sign = sign_of(g.eval_real(prev_x));
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double x = points[i];
    const int s = sign_of(g.eval_real(x));
    if (s != 0 && prev_sign != 0 && s != prev_sign) {
      roots.push_back(refine_root(g, prev_x, x, prev_sign, width));
    }
    if (s == 0) {
      roots.push_back(x);
    } else {
      prev_sign = s;
    }
    prev_x = x;
  }
  return roots;
}

std::vector<double> zero_bracket_points(const PowerSum& f, double x_lo, double width) {
  std::vector<double> out;
  PowerSum g = f;
  while (g.terms().size() > 1) {
    const std::vector<double> roots = sign_change_roots(g, x_lo, width);
    out.insert(out.end(), roots.begin(), roots.end());
    PowerSum shifted;
    const double p_min = g.terms().back().exponent;
    for (const auto& t : g.terms()) {
      shifted = shifted + PowerSum::monomial(t.coeff, t.exponent - p_min);
    }
    g = shifted.derivative();
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string PowerSum::describe() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += " + ";
    s += "(" + format_scalar(terms_[i].coeff) + ")";
    if (terms_[i].exponent != 0.0) s += "*n^" + format_real(terms_[i].exponent);
  }
  return s;
}

}  // namespace hus

#include "hus/tail_atom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hus/errors.hpp"

namespace hus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow_special(double h, double w) {
  if (w == 0.0) return 1.0;
  if (w == 1.0) return h;
  if (w == -1.0) return 1.0 / h;
  if (w == 0.5) return std::sqrt(h);
  if (w == -0.5) return 1.0 / std::sqrt(h);
  const double rw = std::nearbyint(w);
  if (rw == w && std::abs(rw) <= 64.0) return int_pow(h, static_cast<long long>(rw));
  return std::pow(h, w);
}

void merge_min(ExtValue& acc, double value, bool attained, bool& any) {
  if (!any || value < acc.value) {
    acc = {value, attained};
    any = true;
  } else if (value == acc.value) {
    acc.attained = acc.attained || attained;
  }
}

void merge_max(double& acc_value, bool& acc_attained, double value, bool attained, bool& any) {
  if (!any || value > acc_value) {
    acc_value = value;
    acc_attained = attained;
    any = true;
  } else if (value == acc_value) {
    acc_attained = acc_attained || attained;
  }
}

}  // namespace

TailAtom TailAtom::constant(Scalar c) {
  return ratio(PowerSum::constant(c), PowerSum::constant(Scalar(1.0, 0.0)));
}

TailAtom TailAtom::power(Scalar c, double exponent) {
  return ratio(PowerSum::monomial(c, exponent), PowerSum::constant(Scalar(1.0, 0.0)));
}

TailAtom TailAtom::ratio(PowerSum num, PowerSum den) {
  if (den.is_zero()) throw InvalidOperator("tail rule with zero denominator");
  TailAtom a;
  a.zero_ = false;
  a.num_ = std::move(num);
  a.den_ = std::move(den);
  a.wrap_num_ = PowerSum::constant(Scalar(1.0, 0.0));
  a.wrap_den_ = PowerSum::constant(Scalar(1.0, 0.0));
  a.fold();
  return a;
}

void TailAtom::fold() {
  if (zero_) return;
  if (num_.is_zero()) {
    *this = TailAtom();
    return;
  }
  const PowerSum one = PowerSum::constant(Scalar(1.0, 0.0));
  if (wrap_exp_ == 0.0 || wrap_num_ == wrap_den_) {
    wrap_exp_ = 0.0;
    wrap_num_ = one;
    wrap_den_ = one;
  }
  // Constant wrapper folds into the rational coefficient.
  if (wrap_exp_ != 0.0 && wrap_num_.is_constant() && wrap_den_.is_constant()) {
    const double h = wrap_num_.leading_coeff().real() / wrap_den_.leading_coeff().real();
    num_ = num_.scaled(Scalar(pow_special(h, wrap_exp_), 0.0));
    wrap_exp_ = 0.0;
    wrap_num_ = one;
    wrap_den_ = one;
  }
  // Monomial/monomial and anything/constant denominators fold away (by a
  // single coefficient division each).
  if (!den_.is_zero() && den_.is_monomial()) {
    const auto& t = den_.terms().front();
    if (t.exponent == 0.0) {
      num_ = num_.divided_by(t.coeff);
      den_ = one;
    } else if (num_.is_monomial()) {
      const auto& s = num_.terms().front();
      num_ = PowerSum::monomial(scalar_div(s.coeff, t.coeff), s.exponent - t.exponent);
      den_ = one;
    }
  }
  // A pure power with shift 0 absorbs the dilation into its coefficient.
  if (shift_ == 0 && dil_ != 1 && wrap_exp_ == 0.0 && num_.is_monomial() && den_.is_constant()) {
    const auto& s = num_.terms().front();
    num_ = PowerSum::monomial(s.coeff * real_pow(static_cast<double>(dil_), -s.exponent),
                              s.exponent);
    dil_ = 1;
  }
}

TailAtom::Kind TailAtom::kind() const {
  if (zero_) return Kind::Zero;
  if (is_constant_function()) return Kind::Constant;
  if (wrap_exp_ == 0.0 && den_.is_constant() && num_.is_monomial() && has_canonical_affine()) {
    return Kind::Power;
  }
  return Kind::Extended;
}

Scalar TailAtom::coefficient() const { return num_.leading_coeff(); }

double TailAtom::exponent() const { return num_.leading_exponent(); }

bool TailAtom::is_constant_function() const {
  if (zero_) return false;
  return wrap_exp_ == 0.0 && num_.is_constant() && den_.is_constant();
}

TailAtom TailAtom::reindexed(long long a, long long b) const {
  if (zero_) return *this;
  TailAtom r = *this;
  r.dil_ = dil_ * a;
  r.shift_ = shift_ * a + b;
  r.fold();
  return r;
}

double TailAtom::wrap_value(double x) const {
  return wrap_num_.eval_real(x) / wrap_den_.eval_real(x);
}

Scalar TailAtom::eval_index(double n) const {
  if (zero_) return Scalar(0.0, 0.0);
  const double x = x_of(n);
  Scalar v = num_.eval(x) / den_.eval(x);
  if (wrap_exp_ != 0.0) v *= pow_special(wrap_value(x), wrap_exp_);
  return v;
}

double TailAtom::modulus_at(double x) const {
  double v = std::abs(num_.eval(x)) / std::abs(den_.eval(x));
  if (wrap_exp_ != 0.0) {
    const double h = wrap_value(x);
    if (!(h > 0.0)) throw NumericError("tail wrapper lost positivity");
    v *= pow_special(h, wrap_exp_);
  }
  return v;
}

TailAtom TailAtom::conjugated() const {
  if (zero_) return *this;
  TailAtom r = *this;
  r.num_ = num_.conjugate();
  r.den_ = den_.conjugate();
  r.fold();
  return r;
}

TailAtom TailAtom::scaled(Scalar c) const {
  if (zero_ || c == Scalar(0.0, 0.0)) return TailAtom();
  TailAtom r = *this;
  r.num_ = num_.scaled(c);
  r.fold();
  return r;
}

TailAtom TailAtom::reciprocal() const {
  if (zero_) throw UnsupportedModel("reciprocal of a zero tail rule");
  TailAtom r = *this;
  std::swap(r.num_, r.den_);
  r.wrap_exp_ = -wrap_exp_;
  r.fold();
  return r;
}

TailAtom TailAtom::int_power(int k) const {
  if (k < 1) throw PreconditionError("tail power exponent must be >= 1");
  if (zero_) return *this;
  TailAtom r = *this;
  r.num_ = num_.pow_int(k);
  r.den_ = den_.pow_int(k);
  r.wrap_exp_ = wrap_exp_ * k;
  r.fold();
  return r;
}

TailAtom TailAtom::square_root() const {
  if (zero_) return *this;
  if (!(num_.is_monomial() && den_.is_constant())) {
    throw UnsupportedModel("tail rule not representable under entrywise square root");
  }
  const auto& t = num_.terms().front();
  if (t.coeff.imag() != 0.0 || t.coeff.real() < 0.0) {
    throw NotPositiveSelfAdjoint("negative or complex entry law under square root");
  }
  TailAtom r = *this;
  r.num_ = PowerSum::monomial(Scalar(std::sqrt(t.coeff.real()), 0.0), t.exponent / 2.0);
  r.wrap_exp_ = wrap_exp_ / 2.0;
  r.fold();
  return r;
}

TailAtom TailAtom::defect() const {
  if (zero_) return constant(Scalar(1.0, 0.0));
  if (wrap_exp_ != 0.0) {
    throw UnsupportedModel("defect transform of an already-transformed tail rule");
  }
  const PowerSum a = num_.abs_squared();
  const PowerSum b = den_.abs_squared();
  TailAtom r;
  r.zero_ = false;
  r.num_ = PowerSum::constant(Scalar(1.0, 0.0));
  r.den_ = PowerSum::constant(Scalar(1.0, 0.0));
  r.wrap_num_ = a + b;
  r.wrap_den_ = b;
  r.wrap_exp_ = -1.0;
  r.dil_ = dil_;
  r.shift_ = shift_;
  r.fold();
  return r;
}

TailAtom TailAtom::norm_limited() const {
  if (zero_) return *this;
  if (wrap_exp_ != 0.0) {
    throw UnsupportedModel("norm-limiting transform of an already-transformed tail rule");
  }
  const PowerSum a = num_.abs_squared();
  const PowerSum b = den_.abs_squared();
  TailAtom r = *this;
  r.wrap_num_ = a + b;
  r.wrap_den_ = b;
  r.wrap_exp_ = -0.5;
  r.fold();
  return r;
}

void TailAtom::require_compatible(const TailAtom& a, const TailAtom& b) {
  if (a.zero_ || b.zero_) return;
  if (a.is_constant_function() || b.is_constant_function()) return;
  if (a.dil_ == b.dil_ && a.shift_ == b.shift_) return;
  throw UnsupportedModel("tail rules live on incompatible index reparametrizations");
}

TailAtom TailAtom::sum(const TailAtom& a, const TailAtom& b) {
  if (a.zero_) return b;
  if (b.zero_) return a;
  require_compatible(a, b);
  const bool same_wrap = a.wrap_exp_ == b.wrap_exp_ && a.wrap_num_ == b.wrap_num_ &&
                         a.wrap_den_ == b.wrap_den_;
  if (!same_wrap) {
    throw UnsupportedModel("tail sum leaves the rule algebra (mismatched wrappers)");
  }
  TailAtom r = a.is_constant_function() ? b : a;
  r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
  r.den_ = a.den_ * b.den_;
  r.fold();
  return r;
}

TailAtom TailAtom::quotient(const TailAtom& a, const TailAtom& b) {
  if (b.zero_) throw UnsupportedModel("quotient by a zero tail rule");
  // Deferred reciprocal: folding happens once after the numerators and
  // denominators combine, so exact coefficient ratios survive as a single
  // division instead of a multiply by a rounded reciprocal.
  TailAtom binv = b;
  std::swap(binv.num_, binv.den_);
  binv.wrap_exp_ = -b.wrap_exp_;
  return product(a, binv);
}

TailAtom TailAtom::product(const TailAtom& a, const TailAtom& b) {
  if (a.zero_ || b.zero_) return TailAtom();
  require_compatible(a, b);
  TailAtom r = a.is_constant_function() ? b : a;
  r.num_ = a.num_ * b.num_;
  r.den_ = a.den_ * b.den_;
  if (a.wrap_exp_ == 0.0) {
    r.wrap_num_ = b.wrap_num_;
    r.wrap_den_ = b.wrap_den_;
    r.wrap_exp_ = b.wrap_exp_;
  } else if (b.wrap_exp_ == 0.0) {
    r.wrap_num_ = a.wrap_num_;
    r.wrap_den_ = a.wrap_den_;
    r.wrap_exp_ = a.wrap_exp_;
  } else if (a.wrap_num_ == b.wrap_num_ && a.wrap_den_ == b.wrap_den_) {
    r.wrap_num_ = a.wrap_num_;
    r.wrap_den_ = a.wrap_den_;
    r.wrap_exp_ = a.wrap_exp_ + b.wrap_exp_;
  } else if (a.wrap_exp_ == b.wrap_exp_) {
    r.wrap_num_ = a.wrap_num_ * b.wrap_num_;
    r.wrap_den_ = a.wrap_den_ * b.wrap_den_;
    r.wrap_exp_ = a.wrap_exp_;
  } else {
    throw UnsupportedModel("tail product leaves the rule algebra (mismatched wrappers)");
  }
  r.fold();
  return r;
}

bool TailAtom::is_real_valued() const {
  if (zero_) return true;
  return num_.is_real() && den_.is_real();
}

std::pair<PowerSum, PowerSum> TailAtom::rational_parts() const {
  if (zero_) return {PowerSum(), PowerSum::constant(Scalar(1.0, 0.0))};
  if (wrap_exp_ != 0.0) {
    throw UnsupportedModel("wrapped tail rule has no rational form");
  }
  return {num_, den_};
}

bool TailAtom::structurally_equal(const TailAtom& other) const {
  if (zero_ != other.zero_) return false;
  if (zero_) return true;
  return num_ == other.num_ && den_ == other.den_ && wrap_num_ == other.wrap_num_ &&
         wrap_den_ == other.wrap_den_ && wrap_exp_ == other.wrap_exp_ && dil_ == other.dil_ &&
         shift_ == other.shift_;
}

namespace {

struct TailShape {
  bool constant = false;  // derivative driver vanishes identically
  double limit = 0.0;     // lim |f|, may be +inf
  PowerSum driver;        // E: sign decides where |f| grows
  PowerSum value_sq_num;  // A = |num|^2 (zeros of f are zeros of A)
};

}  // namespace

// |f|^2 = (A/B)(C/D)^{2w} with A = |num|^2, B = |den|^2, H = C/D. The driver
// E = (A'B - AB')CD + 2w(C'D - CD')AB carries the sign of (|f|^2)', so |f|
// is strictly monotone between consecutive sign changes of E; zeros of f are
// interior minima of A and therefore sit at sign changes of E as well.
static TailShape tail_shape(const PowerSum& num, const PowerSum& den, const PowerSum& wn,
                            const PowerSum& wd, double w) {
  const PowerSum a = num.abs_squared();
  const PowerSum b = den.abs_squared();
  const PowerSum c = wn;
  const PowerSum d = wd;
  const PowerSum cd = c * d;
  TailShape shape;
  shape.value_sq_num = a;
  shape.driver = (a.derivative() * b - a * b.derivative()) * cd +
                 ((c.derivative() * d - c * d.derivative()) * (a * b)).scaled(Scalar(2.0 * w, 0.0));
  shape.constant = shape.driver.is_zero();
  const auto aa = a.asymptotics();
  const auto ba = b.asymptotics();
  const auto ca = c.asymptotics();
  const auto da = d.asymptotics();
  const double alpha = (aa.exponent - ba.exponent) + 2.0 * w * (ca.exponent - da.exponent);
  if (alpha > 0.0) {
    shape.limit = kInf;
  } else if (alpha < 0.0) {
    shape.limit = 0.0;
  } else {
    shape.limit =
        std::sqrt((aa.coeff_abs / ba.coeff_abs) * pow_special(ca.coeff_abs / da.coeff_abs, 2.0 * w));
  }
  return shape;
}

namespace {

/// Class ordinals worth evaluating: the first few points plus both integer
/// neighbors of every breakpoint. Between consecutive breakpoints the value
/// law is strictly monotone, so extrema over the class are attained at these
/// ordinals or in the limit.
std::vector<long long> candidate_ordinals(const std::vector<double>& breakpoints, double x0,
                                          double xstep) {
  std::vector<long long> ks = {0, 1, 2, 3};
  for (double r : breakpoints) {
    const long long k = static_cast<long long>(std::floor((r - x0) / xstep));
    for (long long d = -2; d <= 2; ++d) {
      if (k + d >= 0) ks.push_back(k + d);
    }
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

}  // namespace

TailAtom::ClassAnalysis TailAtom::analyze(long long first, long long step) const {
  ClassAnalysis out;
  if (zero_) {
    out.identically_zero = true;
    out.inf_nonzero = {kInf, false};
    out.sup = 0.0;
    out.sup_attained = true;
    return out;
  }
  const TailShape shape = tail_shape(num_, den_, wrap_num_, wrap_den_, wrap_exp_);
  const double x0 = x_of(static_cast<double>(first));
  const double xstep = static_cast<double>(step) / static_cast<double>(dil_);

  bool any_min = false, any_max = false;
  if (shape.constant) {
    const double v = modulus_at(x0);
    if (!std::isfinite(v)) throw NumericError("tail analysis overflow");
    out.inf_nonzero = {v, true};
    out.sup = v;
    out.sup_attained = true;
    return out;
  }
  const double x_lo = std::max(0.5 * xstep, x0 - 2.0 * xstep);
  const std::vector<double> breaks = sign_change_roots(shape.driver, x_lo, 0.25 * xstep);
  for (long long k : candidate_ordinals(breaks, x0, xstep)) {
    const double x = x0 + static_cast<double>(k) * xstep;
    if (std::abs(num_.eval(x)) == 0.0) {
      out.zeros.push_back(first + k * step);
      merge_max(out.sup, out.sup_attained, 0.0, true, any_max);
      continue;
    }
    const double v = modulus_at(x);
    if (!std::isfinite(v)) throw NumericError("tail analysis overflow");
    merge_min(out.inf_nonzero, v, true, any_min);
    merge_max(out.sup, out.sup_attained, v, true, any_max);
  }
  merge_min(out.inf_nonzero, shape.limit, false, any_min);
  merge_max(out.sup, out.sup_attained, shape.limit, false, any_max);
  return out;
}

ExtValue TailAtom::real_min(long long first, long long step) const {
  if (zero_) return {0.0, true};
  if (!is_real_valued()) throw PreconditionError("signed minimum of a non-real tail rule");
  const TailShape shape = tail_shape(num_, den_, wrap_num_, wrap_den_, wrap_exp_);
  const double x0 = x_of(static_cast<double>(first));
  const double xstep = static_cast<double>(step) / static_cast<double>(dil_);

  auto value_at = [&](double x) {
    double v = num_.eval_real(x) / den_.eval_real(x);
    if (wrap_exp_ != 0.0) v *= pow_special(wrap_value(x), wrap_exp_);
    if (!std::isfinite(v)) throw NumericError("tail analysis overflow");
    return v;
  };
  ExtValue acc;
  bool any = false;
  if (shape.constant) {
    return {value_at(x0), true};
  }
  const double x_lo = std::max(0.5 * xstep, x0 - 2.0 * xstep);
  // Breakpoints of |f| plus sign changes of the (real) value law itself:
  // between consecutive points of either family the signed value is
  // monotone.
  std::vector<double> breaks = sign_change_roots(shape.driver, x_lo, 0.25 * xstep);
  const std::vector<double> flips = sign_change_roots(num_ * den_, x_lo, 0.25 * xstep);
  breaks.insert(breaks.end(), flips.begin(), flips.end());
  for (long long k : candidate_ordinals(breaks, x0, xstep)) {
    merge_min(acc, value_at(x0 + static_cast<double>(k) * xstep), true, any);
  }
  // Tail limit with the sign the values eventually carry.
  const double eventual =
      (num_ * den_).is_zero() ? 0.0 : (num_ * den_).leading_coeff().real();
  merge_min(acc, eventual < 0.0 ? -shape.limit : shape.limit, false, any);
  return acc;
}

std::string TailAtom::describe() const {
  if (zero_) return "zero";
  std::string s;
  switch (kind()) {
    case Kind::Constant:
      return "constant " + format_scalar(coefficient());
    case Kind::Power:
      return "power coeff=" + format_scalar(coefficient()) +
             " exponent=" + format_real(exponent());
    default:
      break;
  }
  s = "[" + num_.describe() + "] / [" + den_.describe() + "]";
  if (wrap_exp_ != 0.0) {
    s += " * ([" + wrap_num_.describe() + "] / [" + wrap_den_.describe() + "])^" +
         format_real(wrap_exp_);
  }
  if (dil_ != 1 || shift_ != 0) {
    s += " at x=(n-" + std::to_string(shift_) + ")/" + std::to_string(dil_);
  }
  return s;
}

}  // namespace hus

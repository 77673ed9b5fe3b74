#include "hus/calculus.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "dense_util.hpp"
#include "hus/errors.hpp"

namespace hus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Scalar cpow_int(Scalar z, int k) {
  Scalar r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

/// Aligned cycle of two diagonal models: shared start and lcm cycle length.
struct Alignment {
  long long start;
  long long length;

  Alignment(const DiagonalOperator& a, const DiagonalOperator& b)
      : start(std::max(a.start(), b.start())),
        length(std::lcm<long long>(a.cycle_length(), b.cycle_length())) {}

  long long class_first(long long phase) const {
    const long long r = (start - 1) % length;
    return start + ((phase - r) % length + length) % length;
  }
};

}  // namespace

OperatorModel adjoint(const OperatorModel& op) {
  if (is_diagonal(op)) {
    return as_diagonal(op).map([](Scalar d) { return std::conj(d); },
                               [](const TailAtom& a) { return a.conjugated(); });
  }
  if (is_matrix(op)) {
    return MatrixOperator::create(as_matrix(op).matrix().adjoint());
  }
  throw UnsupportedModel("adjoint of a block model");
}

OperatorModel pseudo_inverse(const OperatorModel& op, const ToleranceConfig& tol) {
  tol.validate();
  if (is_diagonal(op)) {
    const DiagonalOperator& d = as_diagonal(op);
    // Reject rules whose nonzero law still vanishes at isolated indices;
    // their reciprocal would leave the rule algebra.
    for (int p = 0; p < d.cycle_length(); ++p) {
      const TailAtom& a = d.atoms()[static_cast<std::size_t>(p)];
      if (a.is_zero()) continue;
      if (!a.analyze(d.class_first(p), d.cycle_length()).zeros.empty()) {
        throw UnsupportedModel("generalized inverse across isolated tail zeros");
      }
    }
    return d.map(
        [](Scalar v) { return v == Scalar(0.0, 0.0) ? v : Scalar(1.0, 0.0) / v; },
        [](const TailAtom& a) { return a.is_zero() ? a : a.reciprocal(); });
  }
  if (is_matrix(op)) {
    const Eigen::MatrixXcd& m = as_matrix(op).matrix();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = detail::rank_cutoff(sv, tol.rank_tol);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
    }
    Eigen::MatrixXcd pinv =
        svd.matrixV() * inv.asDiagonal().toDenseMatrix().cast<Scalar>() * svd.matrixU().adjoint();
    return MatrixOperator::create_allow_zero(std::move(pinv));
  }
  throw UnsupportedModel("generalized inverse of a block model");
}

bool is_bounded(const OperatorModel& op) {
  if (is_diagonal(op)) return std::isfinite(as_diagonal(op).sup_modulus());
  if (is_matrix(op)) return true;
  throw UnsupportedModel("boundedness test of a block model");
}

DiagonalOperator defect_transform(const DiagonalOperator& d) {
  return d.map([](Scalar v) { return Scalar(1.0 / (1.0 + std::norm(v)), 0.0); },
               [](const TailAtom& a) { return a.defect(); });
}

DiagonalOperator bounded_transform(const DiagonalOperator& d) {
  return d.map([](Scalar v) { return v / std::sqrt(1.0 + std::norm(v)); },
               [](const TailAtom& a) { return a.norm_limited(); });
}

namespace {

void require_positive_diagonal(const DiagonalOperator& d) {
  for (Scalar v : d.head()) {
    if (v.imag() != 0.0 || v.real() < 0.0) {
      throw NotPositiveSelfAdjoint("head entry is not a nonnegative real");
    }
  }
  for (int p = 0; p < d.cycle_length(); ++p) {
    const TailAtom& a = d.atoms()[static_cast<std::size_t>(p)];
    if (a.is_zero()) continue;
    if (!a.is_real_valued()) {
      throw NotPositiveSelfAdjoint("tail rule takes non-real values");
    }
    if (a.real_min(d.class_first(p), d.cycle_length()).value < 0.0) {
      throw NotPositiveSelfAdjoint("tail rule takes negative values");
    }
  }
}

}  // namespace

OperatorModel sqrt_op(const OperatorModel& op, const ToleranceConfig& tol) {
  tol.validate();
  if (is_diagonal(op)) {
    const DiagonalOperator& d = as_diagonal(op);
    require_positive_diagonal(d);
    return d.map([](Scalar v) { return Scalar(std::sqrt(v.real()), 0.0); },
                 [](const TailAtom& a) { return a.square_root(); });
  }
  if (is_matrix(op)) {
    const Eigen::MatrixXcd& m = as_matrix(op).matrix();
    if (m.rows() != m.cols()) throw NotPositiveSelfAdjoint("matrix is not square");
    const double scale = std::max(1.0, m.norm());
    if ((m - m.adjoint()).norm() > tol.psd_tol * scale) {
      throw NotPositiveSelfAdjoint("matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXd lam = es.eigenvalues();
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      if (lam(i) < -tol.psd_tol * scale) {
        throw NotPositiveSelfAdjoint("matrix has a negative eigenvalue");
      }
      lam(i) = std::sqrt(std::max(0.0, lam(i)));
    }
    Eigen::MatrixXcd root = es.eigenvectors() *
                            lam.asDiagonal().toDenseMatrix().cast<Scalar>() *
                            es.eigenvectors().adjoint();
    return MatrixOperator::create_allow_zero(std::move(root));
  }
  throw UnsupportedModel("square root of a block model");
}

OperatorModel power_op(const OperatorModel& op, int n) {
  if (n < 1) throw PreconditionError("power exponent must be >= 1");
  if (is_diagonal(op)) {
    return as_diagonal(op).map([n](Scalar v) { return cpow_int(v, n); },
                               [n](const TailAtom& a) {
                                 return a.is_zero() ? a : a.int_power(n);
                               },
                               /*allow_zero_result=*/false);
  }
  if (is_matrix(op)) {
    const Eigen::MatrixXcd& m = as_matrix(op).matrix();
    if (m.rows() != m.cols()) throw UnsupportedModel("power of a non-square matrix");
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    for (int i = 0; i < n; ++i) acc = acc * m;
    return MatrixOperator::create_allow_zero(std::move(acc));
  }
  throw UnsupportedModel("power of a block model");
}

namespace {

RelativeBoundCertificate relative_bound_diag(const DiagonalOperator& s,
                                             const DiagonalOperator& t) {
  const Alignment al(s, t);
  double b = 0.0;
  for (long long n = 1; n < al.start; ++n) {
    const Scalar sv = s.entry(n);
    const Scalar tv = t.entry(n);
    if (tv == Scalar(0.0, 0.0)) {
      if (sv != Scalar(0.0, 0.0)) {
        throw Incomparable("S is nonzero where T vanishes (index " + std::to_string(n) + ")");
      }
      continue;
    }
    b = std::max(b, std::abs(sv) / std::abs(tv));
  }
  for (long long c = 0; c < al.length; ++c) {
    const TailAtom& sa = s.atoms()[static_cast<std::size_t>(c % s.cycle_length())];
    const TailAtom& ta = t.atoms()[static_cast<std::size_t>(c % t.cycle_length())];
    if (ta.is_zero()) {
      if (!sa.is_zero()) {
        throw Incomparable("S is nonzero on a class where T vanishes");
      }
      continue;
    }
    if (sa.is_zero()) continue;
    if (!ta.analyze(al.class_first(c), al.length).zeros.empty()) {
      throw UnsupportedModel("relative bound across isolated tail zeros");
    }
    const TailAtom ratio = TailAtom::quotient(sa, ta);
    const double sup = ratio.analyze(al.class_first(c), al.length).sup;
    if (std::isinf(sup)) throw Incomparable("no finite relative bound exists");
    b = std::max(b, sup);
  }
  return {b, true};
}

RelativeBoundCertificate relative_bound_matrix(const MatrixOperator& s, const MatrixOperator& t,
                                               const ToleranceConfig& tol) {
  // The pencil b^2 T^H T - S^H S needs a common domain only.
  if (s.cols() != t.cols()) throw PreconditionError("operators must share a domain");
  const Eigen::MatrixXcd tt = t.matrix().adjoint() * t.matrix();
  const Eigen::MatrixXcd ss = s.matrix().adjoint() * s.matrix();
  const double scale = std::max(1.0, tt.norm() + ss.norm());

  const Eigen::MatrixXcd kernel = detail::kernel_basis(t.matrix(), tol.rank_tol);
  if (kernel.cols() > 0 && (s.matrix() * kernel).norm() > tol.psd_tol * std::max(1.0, s.matrix().norm())) {
    throw Incomparable("S is nonzero on the nullspace of T");
  }

  auto psd_at = [&](double b) {
    const Eigen::MatrixXcd pencil = b * b * tt - ss;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pencil, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol.psd_tol * scale;
  };

  double hi = 1.0;
  int doubling = 0;
  while (!psd_at(hi)) {
    hi *= 2.0;
    if (++doubling > 200) throw Incomparable("no finite relative bound exists");
  }
  double lo = 0.0;
  // Bisection on the PSD predicate; fixed relative width 1e-10.
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (psd_at(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, false};
}

}  // namespace

RelativeBoundCertificate relative_bound(const OperatorModel& s, const OperatorModel& t,
                                        const ToleranceConfig& tol) {
  tol.validate();
  if (is_diagonal(s) && is_diagonal(t)) return relative_bound_diag(as_diagonal(s), as_diagonal(t));
  if (is_matrix(s) && is_matrix(t)) return relative_bound_matrix(as_matrix(s), as_matrix(t), tol);
  throw UnsupportedModel("relative bound requires two models of the same class");
}

std::pair<OperatorModel, RelativeBoundCertificate> add_with_bound(const OperatorModel& s,
                                                                  const OperatorModel& t,
                                                                  const ToleranceConfig& tol) {
  const RelativeBoundCertificate cert = relative_bound(s, t, tol);
  if (!(cert.b < 1.0)) {
    throw BoundNotLessThanOne("relative bound " + format_real(cert.b) + " is not < 1");
  }
  if (is_diagonal(s)) {
    DiagonalOperator sum = DiagonalOperator::combine(
        as_diagonal(s), as_diagonal(t), [](Scalar a, Scalar b) { return a + b; },
        [](const TailAtom& a, const TailAtom& b) { return TailAtom::sum(a, b); });
    return {OperatorModel(std::move(sum)), cert};
  }
  const MatrixOperator sum = MatrixOperator::create(as_matrix(s).matrix() + as_matrix(t).matrix());
  return {OperatorModel(sum), cert};
}

DiagonalOperator add_orthogonal_ranges(const DiagonalOperator& s, const DiagonalOperator& t) {
  const Alignment al(s, t);
  for (long long n = 1; n < al.start; ++n) {
    if (s.entry(n) != Scalar(0.0, 0.0) && t.entry(n) != Scalar(0.0, 0.0)) {
      throw SupportsOverlap("supports overlap at index " + std::to_string(n));
    }
  }
  for (long long c = 0; c < al.length; ++c) {
    const TailAtom& sa = s.atoms()[static_cast<std::size_t>(c % s.cycle_length())];
    const TailAtom& ta = t.atoms()[static_cast<std::size_t>(c % t.cycle_length())];
    if (!sa.is_zero() && !ta.is_zero()) {
      throw SupportsOverlap("supports overlap on a shared tail class");
    }
  }
  return DiagonalOperator::combine(
      s, t, [](Scalar a, Scalar b) { return a + b; },
      [](const TailAtom& a, const TailAtom& b) { return TailAtom::sum(a, b); });
}

DiagonalOperator add_coercive(const DiagonalOperator& s, const DiagonalOperator& t, double a) {
  if (!(a > 0.0)) throw PreconditionError("coercivity constant must be positive");
  if (!std::isfinite(t.sup_modulus())) throw Unbounded("t must be bounded");
  for (const DiagonalOperator* op : {&s, &t}) {
    for (Scalar v : op->head()) {
      if (v.imag() != 0.0 || v.real() < 0.0) {
        throw CoercivityFails("coercive sums require nonnegative real entries");
      }
    }
    for (int p = 0; p < op->cycle_length(); ++p) {
      const TailAtom& atom = op->atoms()[static_cast<std::size_t>(p)];
      if (atom.is_zero()) continue;
      if (!atom.is_real_valued() ||
          atom.real_min(op->class_first(p), op->cycle_length()).value < 0.0) {
        throw CoercivityFails("coercive sums require nonnegative real entries");
      }
    }
  }
  const Alignment al(s, t);
  for (long long n = 1; n < al.start; ++n) {
    if (!(t.entry(n).real() - s.entry(n).real() >= a)) {
      throw CoercivityFails("|t_n| - |s_n| < a at index " + std::to_string(n));
    }
  }
  for (long long c = 0; c < al.length; ++c) {
    const TailAtom& sa = s.atoms()[static_cast<std::size_t>(c % s.cycle_length())];
    const TailAtom& ta = t.atoms()[static_cast<std::size_t>(c % t.cycle_length())];
    const TailAtom diff = TailAtom::sum(ta, sa.scaled(Scalar(-1.0, 0.0)));
    if (diff.real_min(al.class_first(c), al.length).value < a) {
      throw CoercivityFails("|t_n| - |s_n| < a on a tail class");
    }
  }
  return DiagonalOperator::combine(
      s, t, [](Scalar x, Scalar y) { return x + y; },
      [](const TailAtom& x, const TailAtom& y) { return TailAtom::sum(x, y); });
}

OperatorModel compose(const OperatorModel& t, const OperatorModel& s) {
  if (is_diagonal(t) && is_diagonal(s)) {
    return DiagonalOperator::combine(
        as_diagonal(t), as_diagonal(s), [](Scalar a, Scalar b) { return a * b; },
        [](const TailAtom& a, const TailAtom& b) { return TailAtom::product(a, b); },
        /*allow_zero_result=*/true);
  }
  if (is_matrix(t) && is_matrix(s)) {
    const auto& mt = as_matrix(t).matrix();
    const auto& ms = as_matrix(s).matrix();
    if (mt.cols() != ms.rows()) throw PreconditionError("composition shapes do not conform");
    return MatrixOperator::create_allow_zero(mt * ms);
  }
  throw UnsupportedModel("composition requires two models of the same class");
}

OperatorModel direct_sum(const OperatorModel& t, const OperatorModel& s) {
  if (is_diagonal(t) && is_diagonal(s)) {
    return DiagonalOperator::interleave(as_diagonal(t), as_diagonal(s));
  }
  if (is_matrix(t) && is_matrix(s)) {
    const auto& mt = as_matrix(t).matrix();
    const auto& ms = as_matrix(s).matrix();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(mt.rows() + ms.rows(), mt.cols() + ms.cols());
    out.topLeftCorner(mt.rows(), mt.cols()) = mt;
    out.bottomRightCorner(ms.rows(), ms.cols()) = ms;
    return MatrixOperator::create(std::move(out));
  }
  throw UnsupportedModel("direct sum requires two models of the same class");
}

OperatorModel scale(Scalar c, const OperatorModel& op) {
  if (c == Scalar(0.0, 0.0)) throw ZeroScalar("scaling by zero is not admitted");
  if (is_diagonal(op)) {
    return as_diagonal(op).map([c](Scalar v) { return c * v; },
                               [c](const TailAtom& a) { return a.scaled(c); });
  }
  if (is_matrix(op)) {
    return MatrixOperator::create(as_matrix(op).matrix() * c);
  }
  const BlockMatrix& blk = as_block(op);
  return BlockMatrix(scale(c, blk.a()), scale(c, blk.b()), scale(c, blk.c()), scale(c, blk.e()),
                     blk.mu());
}

double graph_norm(const OperatorModel& op, std::span<const Scalar> x) {
  double s = 0.0;
  for (Scalar v : x) s += std::norm(v);
  for (Scalar v : apply_model(op, x)) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace hus

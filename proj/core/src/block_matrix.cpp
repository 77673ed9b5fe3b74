#include "hus/block_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dense_util.hpp"
#include "hus/calculus.hpp"
#include "hus/errors.hpp"
#include "hus/stability.hpp"

namespace hus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* kComplementNames[] = {"schur2", "schur1", "quad2", "quad1"};

struct DiagonalBlocks {
  const DiagonalOperator* a;
  const DiagonalOperator* b;
  const DiagonalOperator* c;
  const DiagonalOperator* e;
  long long start;
  long long length;

  explicit DiagonalBlocks(const BlockMatrix& m)
      : a(&as_diagonal(m.a())),
        b(&as_diagonal(m.b())),
        c(&as_diagonal(m.c())),
        e(&as_diagonal(m.e())) {
    start = std::max({a->start(), b->start(), c->start(), e->start()});
    length = std::lcm<long long>(std::lcm<long long>(a->cycle_length(), b->cycle_length()),
                                 std::lcm<long long>(c->cycle_length(), e->cycle_length()));
  }

  long long class_first(long long phase) const {
    const long long r = (start - 1) % length;
    return start + ((phase - r) % length + length) % length;
  }

  const TailAtom& atom_a(long long phase) const {
    return a->atoms()[static_cast<std::size_t>(phase % a->cycle_length())];
  }
  const TailAtom& atom_b(long long phase) const {
    return b->atoms()[static_cast<std::size_t>(phase % b->cycle_length())];
  }
  const TailAtom& atom_c(long long phase) const {
    return c->atoms()[static_cast<std::size_t>(phase % c->cycle_length())];
  }
  const TailAtom& atom_e(long long phase) const {
    return e->atoms()[static_cast<std::size_t>(phase % e->cycle_length())];
  }
};

bool boundedly_invertible(const DiagonalOperator& d) {
  if (!d.kernel_support().empty()) return false;
  return d.inf_nonzero_modulus().value > 0.0;
}

bool boundedly_invertible_matrix(const MatrixOperator& m, const ToleranceConfig& tol) {
  if (m.rows() != m.cols()) return false;
  const Eigen::VectorXd sv = detail::singular_values(m.matrix());
  return sv(sv.size() - 1) > detail::rank_cutoff(sv, tol.rank_tol) && sv(0) > 0.0;
}

/// Rejects any entry of d - mu vanishing (the pointwise invertibility the
/// diagonal Schur formula needs).
void require_entries_off(const DiagonalOperator& d, Scalar mu, const char* which) {
  for (long long n = 1; n < d.start(); ++n) {
    if (d.entry(n) == mu) {
      throw NotInvertible(std::string(which) + " - mu vanishes at index " + std::to_string(n));
    }
  }
  for (int p = 0; p < d.cycle_length(); ++p) {
    const TailAtom shifted =
        TailAtom::sum(d.atoms()[static_cast<std::size_t>(p)], TailAtom::constant(-mu));
    if (shifted.is_zero()) {
      throw NotInvertible(std::string(which) + " - mu vanishes on a whole tail class");
    }
    if (!shifted.analyze(d.class_first(p), d.cycle_length()).zeros.empty()) {
      throw NotInvertible(std::string(which) + " - mu vanishes at an isolated tail index");
    }
  }
}

using HeadFour = Scalar (*)(Scalar, Scalar, Scalar, Scalar, Scalar);
using AtomFour = TailAtom (*)(const TailAtom&, const TailAtom&, const TailAtom&, const TailAtom&,
                              Scalar);

DiagonalOperator map_blocks(const DiagonalBlocks& blk, Scalar mu, HeadFour head_fn,
                            AtomFour atom_fn) {
  std::vector<Scalar> head(static_cast<std::size_t>(blk.start - 1));
  for (long long n = 1; n < blk.start; ++n) {
    head[static_cast<std::size_t>(n - 1)] =
        head_fn(blk.a->entry(n), blk.b->entry(n), blk.c->entry(n), blk.e->entry(n), mu);
  }
  std::vector<TailAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(blk.length));
  for (long long p = 0; p < blk.length; ++p) {
    atoms.push_back(atom_fn(blk.atom_a(p), blk.atom_b(p), blk.atom_c(p), blk.atom_e(p), mu));
  }
  return DiagonalOperator::create_allow_zero(std::move(head), std::move(atoms));
}

Scalar schur2_head(Scalar a, Scalar b, Scalar c, Scalar e, Scalar mu) {
  return e - mu - c * b / (a - mu);
}

TailAtom schur2_atom(const TailAtom& a, const TailAtom& b, const TailAtom& c, const TailAtom& e,
                     Scalar mu) {
  const TailAtom emu = TailAtom::sum(e, TailAtom::constant(-mu));
  const TailAtom cb = TailAtom::product(c, b);
  if (cb.is_zero()) return emu;
  const TailAtom amu = TailAtom::sum(a, TailAtom::constant(-mu));
  return TailAtom::sum(emu, TailAtom::quotient(cb, amu).scaled(Scalar(-1.0, 0.0)));
}

Scalar quad2_head(Scalar a, Scalar b, Scalar c, Scalar e, Scalar mu) {
  return b - (a - mu) * (e - mu) / c;
}

TailAtom quad2_atom(const TailAtom& a, const TailAtom& b, const TailAtom& c, const TailAtom& e,
                    Scalar mu) {
  const TailAtom amu = TailAtom::sum(a, TailAtom::constant(-mu));
  const TailAtom emu = TailAtom::sum(e, TailAtom::constant(-mu));
  const TailAtom ae = TailAtom::product(amu, emu);
  if (ae.is_zero()) return b;
  return TailAtom::sum(b, TailAtom::quotient(ae, c).scaled(Scalar(-1.0, 0.0)));
}

BlockMatrix swapped(const BlockMatrix& m) {
  return BlockMatrix(m.e(), m.c(), m.b(), m.a(), m.mu());
}

Eigen::MatrixXcd dense_inverse_gate(const Eigen::MatrixXcd& m, double rank_tol,
                                    const char* what) {
  return detail::checked_inverse(m, rank_tol, what);
}

}  // namespace

const char* complement_name(Complement which) {
  return kComplementNames[static_cast<int>(which)];
}

Eigen::MatrixXcd assemble_dense(const BlockMatrix& m) {
  if (m.diagonal_blocks()) {
    throw UnsupportedModel("dense assembly of a diagonal-regime block matrix");
  }
  const Eigen::Index h = m.dim_h();
  const Eigen::Index k = m.dim_k();
  Eigen::MatrixXcd out(h + k, h + k);
  out.topLeftCorner(h, h) = as_matrix(m.a()).matrix();
  out.topRightCorner(h, k) = as_matrix(m.b()).matrix();
  out.bottomLeftCorner(k, h) = as_matrix(m.c()).matrix();
  out.bottomRightCorner(k, k) = as_matrix(m.e()).matrix();
  return out;
}

OperatorModel schur2(const BlockMatrix& m, Scalar mu, const ToleranceConfig& tol) {
  tol.validate();
  if (m.diagonal_blocks()) {
    const DiagonalBlocks blk(m);
    require_entries_off(*blk.a, mu, "A");
    return map_blocks(blk, mu, schur2_head, schur2_atom);
  }
  const Eigen::MatrixXcd amu =
      as_matrix(m.a()).matrix() - mu * Eigen::MatrixXcd::Identity(m.dim_h(), m.dim_h());
  const Eigen::MatrixXcd inv = dense_inverse_gate(amu, tol.rank_tol, "A - mu");
  Eigen::MatrixXcd s = as_matrix(m.e()).matrix() -
                       mu * Eigen::MatrixXcd::Identity(m.dim_k(), m.dim_k()) -
                       as_matrix(m.c()).matrix() * inv * as_matrix(m.b()).matrix();
  return MatrixOperator::create_allow_zero(std::move(s));
}

OperatorModel schur1(const BlockMatrix& m, Scalar mu, const ToleranceConfig& tol) {
  return schur2(swapped(m), mu, tol);
}

OperatorModel quad2(const BlockMatrix& m, Scalar mu, const ToleranceConfig& tol) {
  tol.validate();
  if (m.diagonal_blocks()) {
    const DiagonalBlocks blk(m);
    if (!boundedly_invertible(*blk.c)) throw NotInvertible("C is not boundedly invertible");
    return map_blocks(blk, mu, quad2_head, quad2_atom);
  }
  if (m.dim_h() != m.dim_k()) throw NotInvertible("C is not square");
  const Eigen::MatrixXcd inv =
      dense_inverse_gate(as_matrix(m.c()).matrix(), tol.rank_tol, "C");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.dim_h(), m.dim_h());
  Eigen::MatrixXcd t = as_matrix(m.b()).matrix() -
                       (as_matrix(m.a()).matrix() - mu * id) * inv *
                           (as_matrix(m.e()).matrix() - mu * id);
  return MatrixOperator::create_allow_zero(std::move(t));
}

OperatorModel quad1(const BlockMatrix& m, Scalar mu, const ToleranceConfig& tol) {
  return quad2(swapped(m), mu, tol);
}

OperatorModel complement(const BlockMatrix& m, Complement which, Scalar mu,
                         const ToleranceConfig& tol) {
  switch (which) {
    case Complement::Schur2:
      return schur2(m, mu, tol);
    case Complement::Schur1:
      return schur1(m, mu, tol);
    case Complement::Quad2:
      return quad2(m, mu, tol);
    case Complement::Quad1:
      return quad1(m, mu, tol);
  }
  throw PreconditionError("unknown complement");
}

namespace {

/// Entrywise comparison scaled by the reconstruction's own magnitude
/// profile |L||M||U| (the backward-error scale of a three-factor product).
bool close_scaled(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want,
                  const Eigen::MatrixXd& scale, double match_tol) {
  for (Eigen::Index i = 0; i < got.rows(); ++i) {
    for (Eigen::Index j = 0; j < got.cols(); ++j) {
      const double s = 1.0 + std::abs(want(i, j)) + scale(i, j);
      if (std::abs(got(i, j) - want(i, j)) > match_tol * s) return false;
    }
  }
  return true;
}

Eigen::Matrix2cd cell_at(const DiagonalBlocks& blk, long long n) {
  Eigen::Matrix2cd cell;
  cell << blk.a->entry(n), blk.b->entry(n), blk.c->entry(n), blk.e->entry(n);
  return cell;
}

bool factorization_check_diag(const BlockMatrix& m, Scalar mu, Complement which,
                              const ToleranceConfig& tol, long long trunc_dim) {
  const OperatorModel comp = complement(m, which, mu, tol);
  const DiagonalOperator& s = as_diagonal(comp);
  const DiagonalBlocks blk(m);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  for (long long n = 1; n <= trunc_dim; ++n) {
    const Scalar a = blk.a->entry(n);
    const Scalar b = blk.b->entry(n);
    const Scalar c = blk.c->entry(n);
    const Scalar e = blk.e->entry(n);
    const Scalar comp_n = s.entry(n);
    Eigen::Matrix2cd lower, middle, upper;
    switch (which) {
      case Complement::Schur2:
        lower << 1, 0, c / (a - mu), 1;
        middle << a - mu, 0, 0, comp_n;
        upper << 1, b / (a - mu), 0, 1;
        break;
      case Complement::Schur1:
        lower << 1, b / (e - mu), 0, 1;
        middle << comp_n, 0, 0, e - mu;
        upper << 1, 0, c / (e - mu), 1;
        break;
      case Complement::Quad2:
        lower << 1, (a - mu) / c, 0, 1;
        middle << 0, comp_n, c, 0;
        upper << 1, (e - mu) / c, 0, 1;
        break;
      case Complement::Quad1:
        lower << 1, 0, (e - mu) / b, 1;
        middle << 0, b, comp_n, 0;
        upper << 1, 0, (a - mu) / b, 1;
        break;
    }
    const Eigen::Matrix2cd rebuilt = mu * id + lower * middle * upper;
    const Eigen::Matrix2d profile =
        lower.cwiseAbs() * middle.cwiseAbs() * upper.cwiseAbs() + std::abs(mu) * Eigen::Matrix2d::Identity();
    if (!close_scaled(rebuilt, cell_at(blk, n), profile, tol.match_tol)) return false;
  }
  return true;
}

bool factorization_check_dense(const BlockMatrix& m, Scalar mu, Complement which,
                               const ToleranceConfig& tol) {
  const Eigen::Index h = m.dim_h();
  const Eigen::Index k = m.dim_k();
  const Eigen::MatrixXcd ih = Eigen::MatrixXcd::Identity(h, h);
  const Eigen::MatrixXcd ik = Eigen::MatrixXcd::Identity(k, k);
  const Eigen::MatrixXcd amu = as_matrix(m.a()).matrix() - mu * ih;
  const Eigen::MatrixXcd emu = as_matrix(m.e()).matrix() - mu * ik;
  const Eigen::MatrixXcd& bm = as_matrix(m.b()).matrix();
  const Eigen::MatrixXcd& cm = as_matrix(m.c()).matrix();
  const Eigen::MatrixXcd comp = as_matrix(complement(m, which, mu, tol)).matrix();

  Eigen::MatrixXcd lower = Eigen::MatrixXcd::Identity(h + k, h + k);
  Eigen::MatrixXcd middle = Eigen::MatrixXcd::Zero(h + k, h + k);
  Eigen::MatrixXcd upper = Eigen::MatrixXcd::Identity(h + k, h + k);
  switch (which) {
    case Complement::Schur2: {
      const Eigen::MatrixXcd inv = dense_inverse_gate(amu, tol.rank_tol, "A - mu");
      lower.bottomLeftCorner(k, h) = cm * inv;
      middle.topLeftCorner(h, h) = amu;
      middle.bottomRightCorner(k, k) = comp;
      upper.topRightCorner(h, k) = inv * bm;
      break;
    }
    case Complement::Schur1: {
      const Eigen::MatrixXcd inv = dense_inverse_gate(emu, tol.rank_tol, "E - mu");
      lower.topRightCorner(h, k) = bm * inv;
      middle.topLeftCorner(h, h) = comp;
      middle.bottomRightCorner(k, k) = emu;
      upper.bottomLeftCorner(k, h) = inv * cm;
      break;
    }
    case Complement::Quad2: {
      const Eigen::MatrixXcd inv = dense_inverse_gate(cm, tol.rank_tol, "C");
      lower.topRightCorner(h, k) = amu * inv;
      middle.topRightCorner(h, k) = comp;
      middle.bottomLeftCorner(k, h) = cm;
      upper.topRightCorner(h, k) = inv * emu;
      break;
    }
    case Complement::Quad1: {
      const Eigen::MatrixXcd inv = dense_inverse_gate(bm, tol.rank_tol, "B");
      lower.bottomLeftCorner(k, h) = emu * inv;
      middle.topRightCorner(h, k) = bm;
      middle.bottomLeftCorner(k, h) = comp;
      upper.bottomLeftCorner(k, h) = inv * amu;
      break;
    }
  }
  const Eigen::MatrixXcd rebuilt =
      mu * Eigen::MatrixXcd::Identity(h + k, h + k) + lower * middle * upper;
  const Eigen::MatrixXd profile =
      lower.cwiseAbs() * middle.cwiseAbs() * upper.cwiseAbs() +
      std::abs(mu) * Eigen::MatrixXd::Identity(h + k, h + k);
  return close_scaled(rebuilt, assemble_dense(m), profile, tol.match_tol);
}

}  // namespace

bool factorization_check(const BlockMatrix& m, Scalar mu, Complement which,
                         const ToleranceConfig& tol, long long trunc_dim) {
  tol.validate();
  if (trunc_dim < 1) throw PreconditionError("truncation dimension must be >= 1");
  if (m.diagonal_blocks()) return factorization_check_diag(m, mu, which, tol, trunc_dim);
  return factorization_check_dense(m, mu, which, tol);
}

namespace {

struct CellMinAccumulator {
  ExtValue best{kInf, false};
  bool any = false;

  void feed(double value, bool attained) {
    if (!any || value < best.value) {
      best = {value, attained};
      any = true;
    } else if (value == best.value) {
      best.attained = best.attained || attained;
    }
  }
};

double lambda_minus(double g, double delta) {
  const double disc = std::sqrt(std::max(0.0, g * g - 4.0 * delta));
  return 2.0 * delta / (g + disc);
}

/// Limit of the smaller eigenvalue of the per-index cell Gram matrix from
/// the power asymptotics of G (Frobenius norm squared) and Delta (|det|^2).
double lambda_limit(const PowerSum& gn, const PowerSum& gd, const PowerSum& un,
                    const PowerSum& ud) {
  const auto agn = gn.asymptotics();
  const auto agd = gd.asymptotics();
  const auto aun = un.asymptotics();
  const auto aud = ud.asymptotics();
  const double alpha_g = agn.exponent - agd.exponent;
  const double kappa_g = agn.coeff_abs / agd.coeff_abs;
  const double alpha_d = aun.exponent - aud.exponent;
  const double kappa_d = aun.coeff_abs / aud.coeff_abs;
  double exp_star, coeff_star;
  if (alpha_d < 2.0 * alpha_g) {
    exp_star = alpha_d - alpha_g;
    coeff_star = kappa_d / kappa_g;
  } else {
    // Discriminant-degenerate regime; theta <= 1/4 analytically.
    const double theta = std::min(0.25, kappa_d / (kappa_g * kappa_g));
    exp_star = alpha_g;
    coeff_star = kappa_g * (1.0 - std::sqrt(1.0 - 4.0 * theta)) / 2.0;
  }
  if (exp_star > 0.0) return kInf;
  if (exp_star < 0.0) return 0.0;
  return coeff_star;
}

}  // namespace

BlockSpectralData block_cell_analysis(const BlockMatrix& m) {
  if (!m.diagonal_blocks()) {
    throw UnsupportedModel("cell analysis requires diagonal blocks");
  }
  const DiagonalBlocks blk(m);
  for (const DiagonalOperator* d : {blk.a, blk.b, blk.c, blk.e}) {
    for (const TailAtom& atom : d->atoms()) {
      if (!atom.is_zero() && !atom.has_canonical_affine()) {
        throw UnsupportedModel("cell analysis requires canonically indexed blocks");
      }
    }
  }

  BlockSpectralData data;
  CellMinAccumulator acc;
  bool saw_nonzero = false;

  // Explicit-head region: one 2x2 cell per index.
  for (long long n = 1; n < blk.start; ++n) {
    Eigen::Matrix2cd cell;
    cell << blk.a->entry(n), blk.b->entry(n), blk.c->entry(n), blk.e->entry(n);
    if (cell.isZero(0.0)) {
      data.kernel_dim += 2;
      continue;
    }
    saw_nonzero = true;
    const double delta = std::abs(cell.determinant());
    if (delta == 0.0) {
      data.kernel_dim += 1;
      acc.feed(cell.norm(), true);
      continue;
    }
    const double g = cell.squaredNorm();
    if (4.0 * delta * delta < 0.5 * g * g) {
      acc.feed(std::sqrt(lambda_minus(g, delta * delta)), true);
    } else {
      Eigen::JacobiSVD<Eigen::Matrix2cd> svd(cell);
      acc.feed(svd.singularValues()(1), true);
    }
  }

  const PowerSum one = PowerSum::constant(Scalar(1.0, 0.0));
  for (long long p = 0; p < blk.length; ++p) {
    const TailAtom& aa = blk.atom_a(p);
    const TailAtom& bb = blk.atom_b(p);
    const TailAtom& cc = blk.atom_c(p);
    const TailAtom& ee = blk.atom_e(p);
    if (aa.is_zero() && bb.is_zero() && cc.is_zero() && ee.is_zero()) {
      data.kernel_infinite = true;
      continue;
    }
    saw_nonzero = true;
    const long long first = blk.class_first(p);
    const long long step = blk.length;

    // G = sum |entry|^2 as a ratio gn/gd of real power sums.
    std::pair<PowerSum, PowerSum> parts[4] = {aa.rational_parts(), bb.rational_parts(),
                                              cc.rational_parts(), ee.rational_parts()};
    PowerSum gd = one;
    for (const auto& pr : parts) gd = gd * pr.second.abs_squared();
    PowerSum gn;
    for (int i = 0; i < 4; ++i) {
      PowerSum term = parts[i].first.abs_squared();
      for (int j = 0; j < 4; ++j) {
        if (j != i) term = term * parts[j].second.abs_squared();
      }
      gn = gn + term;
    }

    const TailAtom det_atom =
        TailAtom::sum(TailAtom::product(aa, ee), TailAtom::product(bb, cc).scaled(Scalar(-1.0, 0.0)));

    if (det_atom.is_zero()) {
      // Rank <= 1 on the whole class: infinite kernel; the only nonzero
      // singular value is sqrt(G).
      data.kernel_infinite = true;
      const TailAtom g_atom = TailAtom::ratio(gn, gd);
      const auto an = g_atom.analyze(first, step);
      if (!an.identically_zero) {
        acc.feed(std::sqrt(an.inf_nonzero.value), an.inf_nonzero.attained);
      }
      continue;
    }

    const auto det_parts = det_atom.rational_parts();
    const PowerSum un = det_parts.first.abs_squared();
    const PowerSum ud = det_parts.second.abs_squared();

    // lambda^2 P2 - lambda P1 + P0 = 0 with positive multiplier gd*ud. The
    // smaller branch is strictly monotone between sign changes of the
    // critical-point resultant and kinks only where the discriminant
    // touches zero, so those locations (plus zeros of the determinant and
    // of G, which sit at interior minima of un and gn) supply all candidate
    // ordinals for the class infimum.
    const PowerSum p2 = gd * ud;
    const PowerSum p1 = gn * ud;
    const PowerSum p0 = un * gd;
    const PowerSum p2d = p2.derivative();
    const PowerSum p1d = p1.derivative();
    const PowerSum p0d = p0.derivative();
    const PowerSum res = (p2 * p0d - p2d * p0) * (p2 * p0d - p2d * p0) -
                         (p2 * p1d - p2d * p1) * (p1 * p0d - p1d * p0);
    const PowerSum disc = p1 * p1 - (p2 * p0).scaled(Scalar(4.0, 0.0));

    const double x0 = static_cast<double>(first);
    const double xstep = static_cast<double>(step);
    const double x_lo = std::max(0.5, x0 - 2.0 * xstep);
    const double width = 0.25 * xstep;
    std::vector<double> breaks;
    const PowerSum* sources[] = {&res, &disc, &un, &gn};
    for (const PowerSum* src : sources) {
      const std::vector<double> more = zero_bracket_points(*src, x_lo, width);
      breaks.insert(breaks.end(), more.begin(), more.end());
    }
    std::vector<long long> ordinals = {0, 1, 2, 3};
    for (double r : breaks) {
      const long long k = static_cast<long long>(std::floor((r - x0) / xstep));
      for (long long d = -2; d <= 2; ++d) {
        if (k + d >= 0) ordinals.push_back(k + d);
      }
    }
    std::sort(ordinals.begin(), ordinals.end());
    ordinals.erase(std::unique(ordinals.begin(), ordinals.end()), ordinals.end());

    for (long long k : ordinals) {
      const long long n = first + k * step;
      Eigen::Matrix2cd cell;
      cell << aa.eval_index(static_cast<double>(n)), bb.eval_index(static_cast<double>(n)),
          cc.eval_index(static_cast<double>(n)), ee.eval_index(static_cast<double>(n));
      if (cell.isZero(0.0)) {
        data.kernel_dim += 2;
        continue;
      }
      // The rank decision is exact: the determinant rule either cancels or
      // it does not.
      if (std::abs(det_atom.eval_index(static_cast<double>(n))) == 0.0) {
        data.kernel_dim += 1;
        acc.feed(cell.norm(), true);
        continue;
      }
      const double g = cell.squaredNorm();
      const double delta = std::abs(cell.determinant());
      // The algebraic branch value is relatively accurate for separated
      // singular values; the SVD is better when they nearly coincide.
      if (4.0 * delta * delta < 0.5 * g * g) {
        acc.feed(std::sqrt(lambda_minus(g, delta * delta)), true);
      } else {
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(cell);
        acc.feed(svd.singularValues()(1), true);
      }
    }
    acc.feed(std::sqrt(lambda_limit(gn, gd, un, ud)), false);
  }

  if (!saw_nonzero) {
    data.identically_zero = true;
    data.gamma = {0.0, false};
    return data;
  }
  data.gamma = acc.best;
  return data;
}

namespace {

void check_hypothesis(const BlockMatrix& m, Complement which, const ToleranceConfig& tol) {
  const OperatorModel& a = m.a();
  const OperatorModel& b = m.b();
  const OperatorModel& c = m.c();
  const OperatorModel& e = m.e();
  auto invertible = [&](const OperatorModel& op) {
    return is_diagonal(op) ? boundedly_invertible(as_diagonal(op))
                           : boundedly_invertible_matrix(as_matrix(op), tol);
  };
  auto dominated = [&](const OperatorModel& top, const OperatorModel& bottom,
                       const char* inequality) {
    try {
      relative_bound(top, bottom, tol);
    } catch (const Incomparable&) {
      throw HypothesisFails(std::string("dominance inequality fails: ") + inequality);
    }
  };
  switch (which) {
    case Complement::Schur2:
      if (!invertible(a)) throw HypothesisFails("0 is not in the resolvent set of A");
      dominated(c, a, "||Cx|| <= a ||Ax||");
      break;
    case Complement::Schur1:
      if (!invertible(e)) throw HypothesisFails("0 is not in the resolvent set of E");
      dominated(b, e, "||Bx|| <= b ||Ex||");
      break;
    case Complement::Quad2:
      if (!invertible(c)) throw HypothesisFails("C is not boundedly invertible");
      dominated(a, c, "||Ax|| <= a ||Cx||");
      break;
    case Complement::Quad1:
      if (!invertible(b)) throw HypothesisFails("B is not boundedly invertible");
      dominated(e, b, "||Ex|| <= b ||Bx||");
      break;
  }
}

}  // namespace

EquivalenceVerdict closed_range_equivalence(const BlockMatrix& m, Complement which,
                                            const ToleranceConfig& tol) {
  tol.validate();
  check_hypothesis(m, which, tol);

  EquivalenceVerdict v;
  const OperatorModel comp = complement(m, which, Scalar(0.0, 0.0), tol);
  if (is_zero_model(comp)) {
    v.complement_stable = true;  // range {0} is closed
  } else {
    v.complement_stable = gamma(comp, tol).value > 0.0;
  }
  if (m.diagonal_blocks()) {
    const BlockSpectralData data = block_cell_analysis(m);
    v.whole_stable = data.identically_zero || data.gamma.value > 0.0;
  } else {
    v.whole_stable = detail::smallest_nonzero_sv(assemble_dense(m), tol.rank_tol) > 0.0;
  }
  v.consistent = v.complement_stable == v.whole_stable;
  return v;
}

}  // namespace hus

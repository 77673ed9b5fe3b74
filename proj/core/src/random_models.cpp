#include "hus/random_models.hpp"

#include <cmath>

#include "hus/errors.hpp"

namespace hus {

namespace {

Scalar draw_coefficient(DrawSource& rng, const DiagonalDrawOptions& opt) {
  if (opt.power_of_two_coeffs) {
    const double v = rng.power_of_two(-4, 4);
    if (opt.positive_real) return Scalar(v, 0.0);
    return Scalar(rng.chance(0.5) ? v : -v, 0.0);
  }
  if (opt.positive_real) return Scalar(rng.positive_dyadic(4.0), 0.0);
  if (opt.allow_complex && rng.chance(0.4)) {
    return Scalar(rng.dyadic(4.0), rng.dyadic(4.0));
  }
  return Scalar(rng.dyadic(4.0), 0.0);
}

double draw_exponent(DrawSource& rng, const DiagonalDrawOptions& opt) {
  if (opt.constants_only) return 0.0;
  long long lo = -2, hi = 2;
  if (opt.bounded_only) hi = 0;
  if (opt.stable_only) lo = 0;
  return static_cast<double>(rng.range(lo, hi));
}

TailAtom draw_atom(DrawSource& rng, const DiagonalDrawOptions& opt) {
  if (opt.allow_kernel && !opt.kernel_free && rng.chance(0.25)) return TailAtom::zero();
  const Scalar c = draw_coefficient(rng, opt);
  const double p = draw_exponent(rng, opt);
  return p == 0.0 ? TailAtom::constant(c) : TailAtom::power(c, p);
}

}  // namespace

DiagonalOperator random_diagonal(DrawSource& rng, const DiagonalDrawOptions& opt) {
  const long long cycle = rng.range(1, opt.max_cycle);
  const long long head_len = rng.range(0, opt.max_head);
  std::vector<Scalar> head(static_cast<std::size_t>(head_len));
  for (auto& h : head) {
    if (opt.allow_kernel && !opt.kernel_free && rng.chance(0.2)) {
      h = Scalar(0.0, 0.0);
    } else {
      h = draw_coefficient(rng, opt);
    }
  }
  std::vector<TailAtom> atoms;
  for (long long i = 0; i < cycle; ++i) atoms.push_back(draw_atom(rng, opt));
  bool nonzero = false;
  for (const auto& a : atoms) nonzero = nonzero || !a.is_zero();
  for (const auto& h : head) nonzero = nonzero || h != Scalar(0.0, 0.0);
  if (!nonzero) atoms[0] = TailAtom::constant(draw_coefficient(rng, opt));
  return DiagonalOperator::create(std::move(head), std::move(atoms));
}

std::pair<DiagonalOperator, DiagonalOperator> random_bounded_pair(DrawSource& rng) {
  DiagonalDrawOptions opt;
  opt.stable_only = true;
  opt.allow_complex = false;  // dyadic reals keep every comparison exact
  DiagonalOperator t = random_diagonal(rng, opt);

  // Ratio grid k/256 with |k| <= 255 keeps |rho| < 1 and products exact.
  auto draw_ratio = [&rng]() {
    const long long k = rng.range(-255, 255);
    return static_cast<double>(k) * 0x1.0p-8;
  };
  std::vector<Scalar> s_head(t.head().size());
  for (std::size_t i = 0; i < t.head().size(); ++i) {
    s_head[i] = t.head()[i] * draw_ratio();
  }
  std::vector<TailAtom> s_atoms;
  bool nonzero = false;
  for (const TailAtom& a : t.atoms()) {
    if (a.is_zero() || rng.chance(0.2)) {
      s_atoms.push_back(TailAtom::zero());
      continue;
    }
    const double rho = draw_ratio();
    s_atoms.push_back(a.scaled(Scalar(rho, 0.0)));
    nonzero = nonzero || rho != 0.0;
  }
  for (const Scalar& v : s_head) nonzero = nonzero || v != Scalar(0.0, 0.0);
  if (!nonzero) {
    // Force a nonzero perturbation somewhere t is nonzero.
    bool placed = false;
    for (std::size_t i = 0; i < s_atoms.size() && !placed; ++i) {
      if (!t.atoms()[i].is_zero()) {
        s_atoms[i] = t.atoms()[i].scaled(Scalar(0x1.0p-3, 0.0));
        placed = true;
      }
    }
    for (std::size_t i = 0; i < s_head.size() && !placed; ++i) {
      if (t.head()[i] != Scalar(0.0, 0.0)) {
        s_head[i] = t.head()[i] * 0x1.0p-3;
        placed = true;
      }
    }
  }
  DiagonalOperator s = DiagonalOperator::create(std::move(s_head), std::move(s_atoms));
  return {std::move(s), std::move(t)};
}

std::pair<DiagonalOperator, DiagonalOperator> random_orthogonal_pair(DrawSource& rng) {
  const long long cycle = rng.range(2, 4);
  DiagonalDrawOptions opt;
  opt.allow_complex = true;
  std::vector<TailAtom> s_atoms, t_atoms;
  for (long long i = 0; i < cycle; ++i) {
    const Scalar c = draw_coefficient(rng, opt);
    const double p = rng.chance(0.5) ? 0.0 : static_cast<double>(rng.range(0, 2));
    const TailAtom atom = p == 0.0 ? TailAtom::constant(c) : TailAtom::power(c, p);
    if (i % 2 == 0) {
      s_atoms.push_back(atom);
      t_atoms.push_back(TailAtom::zero());
    } else {
      s_atoms.push_back(TailAtom::zero());
      t_atoms.push_back(atom);
    }
  }
  return {DiagonalOperator::create({}, std::move(s_atoms)),
          DiagonalOperator::create({}, std::move(t_atoms))};
}

CoercivePair random_coercive_pair(DrawSource& rng) {
  const long long cycle = rng.range(1, 3);
  const long long head_len = rng.range(0, 2);
  const double t_floor = 2.0 + rng.positive_dyadic(4.0);
  const double a = std::max(0x1.0p-8, static_cast<double>(rng.range(1, 255)) * 0x1.0p-8);

  auto draw_t_value = [&]() { return t_floor + rng.positive_dyadic(2.0); };
  auto draw_s_value = [&](double t_value) {
    const double room = t_value - a;
    const long long m = rng.range(0, 255);
    return room * (static_cast<double>(m) * 0x1.0p-8);
  };

  std::vector<Scalar> t_head(static_cast<std::size_t>(head_len));
  std::vector<Scalar> s_head(static_cast<std::size_t>(head_len));
  for (long long i = 0; i < head_len; ++i) {
    const double tv = draw_t_value();
    t_head[static_cast<std::size_t>(i)] = Scalar(tv, 0.0);
    s_head[static_cast<std::size_t>(i)] = Scalar(draw_s_value(tv), 0.0);
  }
  std::vector<TailAtom> t_atoms, s_atoms;
  for (long long i = 0; i < cycle; ++i) {
    const double tv = draw_t_value();
    t_atoms.push_back(TailAtom::constant(Scalar(tv, 0.0)));
    const double sv = rng.chance(0.3) ? 0.0 : draw_s_value(tv);
    s_atoms.push_back(sv == 0.0 ? TailAtom::zero() : TailAtom::constant(Scalar(sv, 0.0)));
  }
  bool s_nonzero = false;
  for (const auto& atom : s_atoms) s_nonzero = s_nonzero || !atom.is_zero();
  for (const auto& v : s_head) s_nonzero = s_nonzero || v != Scalar(0.0, 0.0);
  if (!s_nonzero) s_atoms[0] = TailAtom::constant(Scalar(a * 0.5, 0.0));
  return {DiagonalOperator::create(std::move(s_head), std::move(s_atoms)),
          DiagonalOperator::create(std::move(t_head), std::move(t_atoms)), a};
}

MatrixOperator random_matrix(DrawSource& rng, Eigen::Index rows, Eigen::Index cols,
                             bool complex_entries) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = rng.uniform(-1.0, 1.0);
      const double im = complex_entries ? rng.uniform(-1.0, 1.0) : 0.0;
      m(r, c) = Scalar(re, im);
    }
  }
  return MatrixOperator::create(std::move(m));
}

std::vector<Scalar> random_vector(DrawSource& rng, std::size_t size, bool complex_entries) {
  std::vector<Scalar> x(size);
  for (auto& v : x) {
    v = Scalar(rng.uniform(-1.0, 1.0), complex_entries ? rng.uniform(-1.0, 1.0) : 0.0);
  }
  return x;
}

namespace {

struct PivotDraw {
  std::vector<Scalar> head;
  std::vector<TailAtom> atoms;
};

/// Kernel-free positive pivot with dyadic coefficients.
PivotDraw draw_pivot(DrawSource& rng, long long cycle, long long head_len) {
  PivotDraw p;
  p.head.resize(static_cast<std::size_t>(head_len));
  for (auto& h : p.head) h = Scalar(1.0 + rng.positive_dyadic(3.0), 0.0);
  for (long long i = 0; i < cycle; ++i) {
    const Scalar c(1.0 + rng.positive_dyadic(3.0), 0.0);
    const double e = static_cast<double>(rng.range(0, 2));
    p.atoms.push_back(e == 0.0 ? TailAtom::constant(c) : TailAtom::power(c, e));
  }
  return p;
}

double draw_multiplier(DrawSource& rng) {
  return static_cast<double>(rng.range(-511, 511)) * 0x1.0p-8;
}

TailAtom target_atom(DrawSource& rng, BlockFamily family) {
  switch (family) {
    case BlockFamily::Generic: {
      if (rng.chance(0.2)) return TailAtom::zero();
      const Scalar g(rng.dyadic(4.0), 0.0);
      return rng.chance(0.5) ? TailAtom::constant(g)
                             : TailAtom::power(g, static_cast<double>(rng.range(0, 2)));
    }
    case BlockFamily::ExactCancel:
      return TailAtom::zero();
    case BlockFamily::VanishingTail:
      return TailAtom::power(Scalar(rng.positive_dyadic(2.0), 0.0),
                             static_cast<double>(rng.range(-2, -1)));
  }
  return TailAtom::zero();
}

}  // namespace

BlockMatrix random_schur_block(DrawSource& rng, BlockFamily family, bool lower_pivot) {
  const long long cycle = rng.range(1, 3);
  const long long head_len = rng.range(0, 2);
  const PivotDraw pivot = draw_pivot(rng, cycle, head_len);
  const bool force_nonzero = family == BlockFamily::ExactCancel;

  std::vector<TailAtom> row_atoms, col_atoms, target_atoms;
  std::vector<double> rho(static_cast<std::size_t>(cycle)), sigma(static_cast<std::size_t>(cycle));
  for (long long i = 0; i < cycle; ++i) {
    double r = draw_multiplier(rng);
    double s = draw_multiplier(rng);
    if (force_nonzero) {
      if (r == 0.0) r = 0x1.0p-3;
      if (s == 0.0) s = -0x1.0p-3;
    }
    rho[static_cast<std::size_t>(i)] = r;
    sigma[static_cast<std::size_t>(i)] = s;
    const TailAtom& p = pivot.atoms[static_cast<std::size_t>(i)];
    row_atoms.push_back(r == 0.0 ? TailAtom::zero() : p.scaled(Scalar(r, 0.0)));
    col_atoms.push_back(s == 0.0 ? TailAtom::zero() : p.scaled(Scalar(s, 0.0)));
    target_atoms.push_back(target_atom(rng, family));
  }
  // Combination law: target block entries = rho*sigma*pivot + g, so the
  // complement at mu = 0 is exactly the target rule.
  std::vector<TailAtom> comb_atoms;
  for (long long i = 0; i < cycle; ++i) {
    const TailAtom prod =
        pivot.atoms[static_cast<std::size_t>(i)].scaled(Scalar(
            rho[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(i)], 0.0));
    comb_atoms.push_back(TailAtom::sum(prod, target_atoms[static_cast<std::size_t>(i)]));
  }
  std::vector<Scalar> row_head(pivot.head.size()), col_head(pivot.head.size()),
      comb_head(pivot.head.size());
  for (std::size_t i = 0; i < pivot.head.size(); ++i) {
    double r = draw_multiplier(rng);
    double s = draw_multiplier(rng);
    if (force_nonzero) {
      if (r == 0.0) r = 0x1.0p-2;
      if (s == 0.0) s = 0x1.0p-2;
    }
    const double g = family == BlockFamily::ExactCancel
                         ? 0.0
                         : (family == BlockFamily::VanishingTail ? rng.positive_dyadic(2.0)
                                                                 : rng.dyadic(4.0));
    row_head[i] = pivot.head[i] * r;
    col_head[i] = pivot.head[i] * s;
    comb_head[i] = pivot.head[i] * (r * s) + g;
  }

  DiagonalOperator p_op = DiagonalOperator::create(pivot.head, pivot.atoms);
  DiagonalOperator row = DiagonalOperator::create_allow_zero(row_head, row_atoms);
  DiagonalOperator col = DiagonalOperator::create_allow_zero(col_head, col_atoms);
  DiagonalOperator comb = DiagonalOperator::create_allow_zero(comb_head, comb_atoms);
  if (row.is_zero_operator()) row = p_op.map([](Scalar v) { return v * 0.25; },
                                             [](const TailAtom& a) { return a.scaled(Scalar(0.25, 0.0)); });
  if (col.is_zero_operator()) col = p_op.map([](Scalar v) { return v * 0.25; },
                                             [](const TailAtom& a) { return a.scaled(Scalar(0.25, 0.0)); });
  if (comb.is_zero_operator()) {
    comb = DiagonalOperator::create(comb_head, {TailAtom::constant(Scalar(0x1.0p-4, 0.0))});
  }

  if (lower_pivot) {
    // Pivot in the E corner: hypothesis reads ||Bx|| <= b ||Ex||.
    return BlockMatrix(comb, row, col, p_op);
  }
  return BlockMatrix(p_op, col, row, comb);
}

BlockMatrix random_quad_block(DrawSource& rng, BlockFamily family, bool upper_pivot) {
  const long long cycle = rng.range(1, 3);
  const long long head_len = rng.range(0, 2);
  const PivotDraw pivot = draw_pivot(rng, cycle, head_len);

  std::vector<TailAtom> a_atoms, e_atoms, b_atoms;
  std::vector<Scalar> a_head(pivot.head.size()), e_head(pivot.head.size()),
      b_head(pivot.head.size());
  std::vector<double> rho(static_cast<std::size_t>(cycle)), tau(static_cast<std::size_t>(cycle));
  for (long long i = 0; i < cycle; ++i) {
    const double r = draw_multiplier(rng);
    const double t = draw_multiplier(rng);
    rho[static_cast<std::size_t>(i)] = r;
    tau[static_cast<std::size_t>(i)] = t;
    const TailAtom& p = pivot.atoms[static_cast<std::size_t>(i)];
    a_atoms.push_back(r == 0.0 ? TailAtom::zero() : p.scaled(Scalar(r, 0.0)));
    e_atoms.push_back(t == 0.0 ? TailAtom::zero() : p.scaled(Scalar(t, 0.0)));
    const TailAtom g = target_atom(rng, family);
    // B = A C^{-1} E + G = rho*tau*pivot + g (pivot plays C).
    b_atoms.push_back(TailAtom::sum(p.scaled(Scalar(r * t, 0.0)), g));
  }
  for (std::size_t i = 0; i < pivot.head.size(); ++i) {
    const double r = draw_multiplier(rng);
    const double t = draw_multiplier(rng);
    const double g = family == BlockFamily::ExactCancel ? 0.0 : rng.dyadic(2.0);
    a_head[i] = pivot.head[i] * r;
    e_head[i] = pivot.head[i] * t;
    b_head[i] = pivot.head[i] * (r * t) + g;
  }
  DiagonalOperator p_op = DiagonalOperator::create(pivot.head, pivot.atoms);
  DiagonalOperator a_op = DiagonalOperator::create_allow_zero(a_head, a_atoms);
  DiagonalOperator e_op = DiagonalOperator::create_allow_zero(e_head, e_atoms);
  DiagonalOperator b_op = DiagonalOperator::create_allow_zero(b_head, b_atoms);
  auto quarter = [](const DiagonalOperator& d) {
    return d.map([](Scalar v) { return v * 0.25; },
                 [](const TailAtom& a) { return a.scaled(Scalar(0.25, 0.0)); });
  };
  if (a_op.is_zero_operator()) a_op = quarter(p_op);
  if (e_op.is_zero_operator()) e_op = quarter(p_op);
  if (b_op.is_zero_operator()) {
    b_op = DiagonalOperator::create(b_head, {TailAtom::constant(Scalar(0x1.0p-4, 0.0))});
  }

  if (upper_pivot) {
    // Pivot in the B corner: T1(0) = C - E B^{-1} A; here C = rho*tau*pivot + g.
    return BlockMatrix(a_op, p_op, b_op, e_op);
  }
  return BlockMatrix(a_op, b_op, p_op, e_op);
}

BlockMatrix random_factorization_block(DrawSource& rng, int which) {
  const long long cycle = rng.range(1, 3);
  const long long head_len = rng.range(0, 2);
  const PivotDraw pivot = draw_pivot(rng, cycle, head_len);
  DiagonalOperator p_op = DiagonalOperator::create(pivot.head, pivot.atoms);

  DiagonalDrawOptions opt;
  opt.allow_complex = true;
  opt.max_cycle = static_cast<int>(cycle);
  opt.max_head = 0;
  auto other = [&]() {
    std::vector<TailAtom> atoms;
    for (long long i = 0; i < cycle; ++i) atoms.push_back(draw_atom(rng, opt));
    bool nonzero = false;
    for (const auto& a : atoms) nonzero = nonzero || !a.is_zero();
    if (!nonzero) atoms[0] = TailAtom::constant(Scalar(1.0, 0.0));
    std::vector<Scalar> head(pivot.head.size());
    for (auto& h : head) h = draw_coefficient(rng, opt);
    return DiagonalOperator::create(std::move(head), std::move(atoms));
  };

  // Shift mu stays off the positive real entries of the pivot.
  const Scalar mu = rng.chance(0.5) ? Scalar(0.0, 0.0) : Scalar(-rng.positive_dyadic(2.0), 0.0);
  switch (which) {
    case 0:  // upper-left pivot
      return BlockMatrix(p_op, other(), other(), other(), mu);
    case 1:  // lower-right pivot
      return BlockMatrix(other(), other(), other(), p_op, mu);
    case 2:  // lower-left pivot
      return BlockMatrix(other(), other(), p_op, other(), mu);
    default:  // upper-right pivot
      return BlockMatrix(other(), p_op, other(), other(), mu);
  }
}

}  // namespace hus

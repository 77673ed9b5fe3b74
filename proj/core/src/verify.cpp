#include "hus/verify.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include "hus/block_matrix.hpp"
#include "hus/calculus.hpp"
#include "hus/errors.hpp"
#include "hus/random_models.hpp"
#include "hus/zoo.hpp"

namespace hus {

namespace {

std::string inline_text(std::string text) {
  for (char& ch : text) {
    if (ch == '\n') ch = ';';
  }
  while (!text.empty() && text.back() == ';') text.pop_back();
  return text;
}

std::string diag_text(const DiagonalOperator& d) {
  if (auto text = spec_text_for_diagonal(d)) return inline_text(*text);
  return d.describe();
}

struct SuiteState {
  TheoremOutcome outcome;
  double min_margin = std::numeric_limits<double>::infinity();
  bool track_margin = false;

  void fail(long long draw, const std::string& what) {
    ++outcome.violations;
    if (outcome.counterexample.empty()) {
      outcome.counterexample = "draw " + std::to_string(draw) + ": " + what;
    }
  }
};

// ---- sum theorems ---------------------------------------------------------

void check_sum_bound(SuiteState& st, long long draw, const DiagonalOperator& s,
                     const DiagonalOperator& t, const ToleranceConfig& tol) {
  const auto [sum, cert] = add_with_bound(OperatorModel(s), OperatorModel(t), tol);
  const double gamma_t = gamma(OperatorModel(t), tol).value;
  const double gamma_sum = gamma(sum, tol).value;
  const double floor = (1.0 - cert.b) * gamma_t;
  st.min_margin = std::min(st.min_margin, gamma_sum - floor);
  if (!(cert.b < 1.0) || gamma_sum < floor) {
    st.fail(draw, "gamma(S+T)=" + format_real(gamma_sum) + " < (1-b)*gamma(T)=" +
                      format_real(floor) + " with b=" + format_real(cert.b) +
                      " for s={" + diag_text(s) + "} t={" + diag_text(t) + "}");
  }
}

void run_sum_bound(SuiteState& st, const std::vector<ResolvedSpec>& specs, DrawSource& rng,
                   long long draws, const ToleranceConfig& tol) {
  st.track_margin = true;
  if (specs.size() == 2 && specs[0].model && specs[1].model) {
    check_sum_bound(st, 0, as_diagonal(*specs[0].model), as_diagonal(*specs[1].model), tol);
    st.outcome.draws = 1;
    return;
  }
  for (long long i = 0; i < draws; ++i) {
    auto [s, t] = random_bounded_pair(rng);
    check_sum_bound(st, i, s, t, tol);
    // Exercise the orthogonal-range and coercive variants on a subset.
    if (i % 5 == 0) {
      auto [os, ot] = random_orthogonal_pair(rng);
      const DiagonalOperator osum = add_orthogonal_ranges(os, ot);
      const double g = gamma(OperatorModel(osum), tol).value;
      const double expect =
          std::min(gamma(OperatorModel(os), tol).value, gamma(OperatorModel(ot), tol).value);
      if (g != expect) {
        st.fail(i, "orthogonal sum gamma " + format_real(g) + " != " + format_real(expect));
      }
      const CoercivePair cp = random_coercive_pair(rng);
      const DiagonalOperator csum = add_coercive(cp.s, cp.t, cp.a);
      if (gamma(OperatorModel(csum), tol).value < cp.a) {
        st.fail(i, "coercive sum gamma below " + format_real(cp.a));
      }
    }
  }
}

// ---- direct sums -----------------------------------------------------------

void run_direct_sum(SuiteState& st, const std::vector<ResolvedSpec>& specs, DrawSource& rng,
                    long long draws, const ToleranceConfig& tol) {
  auto check = [&](long long i, const DiagonalOperator& t, const DiagonalOperator& s) {
    const OperatorModel d = direct_sum(OperatorModel(t), OperatorModel(s));
    const double gt = gamma(OperatorModel(t), tol).value;
    const double gs = gamma(OperatorModel(s), tol).value;
    const double gd = gamma(d, tol).value;
    if (gd != std::min(gt, gs)) {
      st.fail(i, "gamma(TxS)=" + format_real(gd) + " != min(" + format_real(gt) + ", " +
                     format_real(gs) + ") for t={" + diag_text(t) + "} s={" + diag_text(s) + "}");
      return;
    }
    const KernelSupport kt = t.kernel_support();
    const KernelSupport ks = s.kernel_support();
    const KernelSupport kd = as_diagonal(d).kernel_support();
    if (kd.infinite() != (kt.infinite() || ks.infinite())) {
      st.fail(i, "interleaved kernel infinitude mismatch");
    } else if (!kd.infinite() && kd.finite_dim() != kt.finite_dim() + ks.finite_dim()) {
      st.fail(i, "interleaved kernel dimension mismatch");
    }
  };
  if (specs.size() == 2 && specs[0].model && specs[1].model) {
    check(0, as_diagonal(*specs[0].model), as_diagonal(*specs[1].model));
    st.outcome.draws = 1;
    return;
  }
  DiagonalDrawOptions opt;
  for (long long i = 0; i < draws; ++i) {
    check(i, random_diagonal(rng, opt), random_diagonal(rng, opt));
  }
}

// ---- generalized inverse ---------------------------------------------------

void run_pinv_duality(SuiteState& st, DrawSource& rng, long long draws,
                      const ToleranceConfig& tol) {
  for (long long i = 0; i < draws; ++i) {
    // Penrose identities on a random dense matrix.
    const Eigen::Index rows = rng.range(1, 8);
    const Eigen::Index cols = rng.range(1, 8);
    const MatrixOperator a = random_matrix(rng, rows, cols, rng.chance(0.5));
    const Eigen::MatrixXcd& am = a.matrix();
    const Eigen::MatrixXcd pm = as_matrix(pseudo_inverse(OperatorModel(a), tol)).matrix();
    const double scale = 1.0 + am.norm();
    const bool penrose = (am * pm * am - am).norm() <= 1e-8 * scale &&
                         (pm * am * pm - pm).norm() <= 1e-8 * scale &&
                         ((am * pm).adjoint() - am * pm).norm() <= 1e-8 * scale &&
                         ((pm * am).adjoint() - pm * am).norm() <= 1e-8 * scale;
    if (!penrose) {
      st.fail(i, "a Penrose identity fails beyond 1e-8");
      continue;
    }
    // Stability of the inverse detects boundedness, exactly.
    DiagonalDrawOptions opt;
    const DiagonalOperator d = random_diagonal(rng, opt);
    const OperatorModel dinv = pseudo_inverse(OperatorModel(d), tol);
    const bool inv_stable = gamma(dinv, tol).value > 0.0;
    if (inv_stable != is_bounded(OperatorModel(d))) {
      st.fail(i, "stable(T+) != bounded(T) for {" + diag_text(d) + "}");
      continue;
    }
    // Exact norm duality on bounded kernel-free power-of-two models.
    DiagonalDrawOptions exact;
    exact.kernel_free = true;
    exact.allow_kernel = false;
    exact.constants_only = true;
    exact.power_of_two_coeffs = true;
    exact.allow_complex = false;
    const DiagonalOperator b = random_diagonal(rng, exact);
    const double product =
        gamma(pseudo_inverse(OperatorModel(b), tol), tol).value * b.sup_modulus();
    if (product != 1.0) {
      st.fail(i, "gamma(T+)*sup(T)=" + format_real(product) + " != 1 for {" + diag_text(b) + "}");
    }
  }
}

// ---- defect / norm-limiting transforms -------------------------------------

void run_defect(SuiteState& st, DrawSource& rng, long long draws, const ToleranceConfig& tol) {
  DiagonalDrawOptions opt;
  for (long long i = 0; i < draws; ++i) {
    const DiagonalOperator d = random_diagonal(rng, opt);
    const DiagonalOperator c = defect_transform(d);
    const bool c_stable = gamma(OperatorModel(c), tol).value > 0.0;
    if (c_stable != is_bounded(OperatorModel(d))) {
      st.fail(i, "stable(C_T) != bounded(T) for {" + diag_text(d) + "}");
      continue;
    }
    if (c.sup_modulus() > 1.0) {
      st.fail(i, "defect transform exceeds norm one");
    }
  }
}

void run_bounded_transform(SuiteState& st, DrawSource& rng, long long draws,
                           const ToleranceConfig& tol) {
  DiagonalDrawOptions opt;
  for (long long i = 0; i < draws; ++i) {
    const DiagonalOperator d = random_diagonal(rng, opt);
    const DiagonalOperator z = bounded_transform(d);
    if (z.sup_modulus() > 1.0) {
      st.fail(i, "norm-limited transform exceeds norm one for {" + diag_text(d) + "}");
      continue;
    }
    const bool d_stable = gamma(OperatorModel(d), tol).value > 0.0;
    const bool z_stable = gamma(OperatorModel(z), tol).value > 0.0;
    if (d_stable != z_stable) {
      st.fail(i, "stable(Z_T) != stable(T) for {" + diag_text(d) + "}");
    }
  }
}

// ---- square-root ladder and powers -----------------------------------------

void run_sqrt_ladder(SuiteState& st, DrawSource& rng, long long draws,
                     const ToleranceConfig& tol) {
  DiagonalDrawOptions opt;
  opt.positive_real = true;
  opt.constants_only = true;
  for (long long i = 0; i < draws; ++i) {
    const DiagonalOperator d = random_diagonal(rng, opt);
    const double g = gamma(OperatorModel(d), tol).value;
    OperatorModel ladder{d};
    double expected = g;
    for (int k = 1; k <= 6; ++k) {
      ladder = sqrt_op(ladder, tol);
      expected = std::sqrt(expected);
      const double gk = gamma(ladder, tol).value;
      if (gk != expected) {
        st.fail(i, "gamma(sqrt^" + std::to_string(k) + ") = " + format_real(gk) + " != " +
                       format_real(expected) + " for {" + diag_text(d) + "}");
        break;
      }
      if ((gk > 0.0) != (g > 0.0)) {
        st.fail(i, "square-root ladder changes stability");
        break;
      }
    }
  }
}

void run_power(SuiteState& st, DrawSource& rng, long long draws, const ToleranceConfig& tol) {
  DiagonalDrawOptions stable_opt;
  stable_opt.stable_only = true;
  stable_opt.kernel_free = true;
  stable_opt.allow_kernel = false;
  DiagonalDrawOptions general_opt;
  for (long long i = 0; i < draws; ++i) {
    const DiagonalOperator d = random_diagonal(rng, stable_opt);
    const double g = gamma(OperatorModel(d), tol).value;
    for (int n = 2; n <= 6; ++n) {
      const OperatorModel p = power_op(OperatorModel(d), n);
      const double gn = gamma(p, tol).value;
      if (!(gn > 0.0)) {
        st.fail(i, "power " + std::to_string(n) + " lost stability for {" + diag_text(d) + "}");
        break;
      }
      const double expected = std::pow(g, n);
      if (std::abs(gn - expected) > 1e-12 * std::max(gn, expected)) {
        st.fail(i, "gamma(T^" + std::to_string(n) + ")=" + format_real(gn) +
                       " far from gamma(T)^n=" + format_real(expected));
        break;
      }
    }
    // Kernel preservation on a model that actually has one.
    const DiagonalOperator k = random_diagonal(rng, general_opt);
    const int n = static_cast<int>(rng.range(2, 5));
    const KernelSupport before = k.kernel_support();
    const KernelSupport after = as_diagonal(power_op(OperatorModel(k), n)).kernel_support();
    if (before.describe() != after.describe()) {
      st.fail(i, "kernel changed under power " + std::to_string(n));
    }
  }
}

// ---- block complements ------------------------------------------------------

void run_block_equiv(SuiteState& st, const std::vector<ResolvedSpec>& specs, DrawSource& rng,
                     long long draws, const ToleranceConfig& tol, bool quadratic) {
  if (!specs.empty()) {
    long long i = 0;
    for (const ResolvedSpec& spec : specs) {
      if (!spec.model || !is_block(*spec.model)) {
        throw PreconditionError("block theorem suites need block specs");
      }
      const BlockMatrix& m = as_block(*spec.model);
      const Complement which = quadratic ? Complement::Quad2 : Complement::Schur2;
      const EquivalenceVerdict v = closed_range_equivalence(m, which, tol);
      if (!v.consistent) st.fail(i, "equivalence verdicts disagree on " + spec.name);
      ++i;
    }
    st.outcome.draws = i;
    return;
  }
  for (long long i = 0; i < draws; ++i) {
    const BlockFamily family = static_cast<BlockFamily>(i % 3);
    const bool alt = rng.chance(0.5);
    const BlockMatrix m = quadratic ? random_quad_block(rng, family, alt)
                                    : random_schur_block(rng, family, alt);
    const Complement which = quadratic ? (alt ? Complement::Quad1 : Complement::Quad2)
                                       : (alt ? Complement::Schur1 : Complement::Schur2);
    const EquivalenceVerdict v = closed_range_equivalence(m, which, tol);
    if (!v.consistent) {
      st.fail(i, std::string("equivalence verdicts disagree (family ") +
                     std::to_string(static_cast<int>(family)) + ", " + complement_name(which) +
                     "): complement " + (v.complement_stable ? "stable" : "unstable") +
                     ", whole " + (v.whole_stable ? "stable" : "unstable"));
      continue;
    }
    if (!factorization_check(m, Scalar(0.0, 0.0), which, tol, 16)) {
      st.fail(i, std::string("closure factorization mismatch (") + complement_name(which) + ")");
    }
  }
}

// ---- the series operator witness -------------------------------------------

void run_szasz_witness(SuiteState& st, const std::vector<ResolvedSpec>& specs) {
  SzaszSpec spec;
  spec.n = 1;
  spec.cap = 10.0;
  for (const ResolvedSpec& s : specs) {
    if (s.szasz) spec = *s.szasz;
  }
  const SzaszWitness w = szasz_instability_witness(spec);
  auto log_ratio = [](long long j) {
    return j * std::log(static_cast<double>(j)) - std::lgamma(static_cast<double>(j) + 1.0) -
           static_cast<double>(j);
  };
  const double log_target = -std::log(spec.cap + 1.0);
  if (log_ratio(w.j) > log_target) {
    st.fail(0, "reported peak index does not satisfy the threshold");
  }
  if (w.j > 1 && log_ratio(w.j - 1) <= log_target) {
    st.fail(0, "reported peak index is not minimal");
  }
  if (w.sup_norm > 1.0 + 1e-9) {
    st.fail(0, "witness image exceeds sup norm one: " + format_real(w.sup_norm));
  }
  if (w.kernel_gap != spec.cap + 1.0) {
    st.fail(0, "kernel gap is not cap + 1");
  }
  st.outcome.draws = 1;
  st.outcome.details.emplace_back("peak_index", std::to_string(w.j));
  st.outcome.details.emplace_back("sup_norm", format_real(w.sup_norm));
  st.outcome.details.emplace_back("kernel_gap", format_real(w.kernel_gap));
  st.outcome.details.emplace_back(
      "peak_mass", format_real((spec.cap + 1.0) * std::exp(log_ratio(w.j))));
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {
      "sum_bound",      "direct_sum", "pinv_duality", "defect",      "bounded_transform",
      "sqrt_ladder",    "power",      "schur_equiv",  "quad_equiv",  "szasz_witness",
  };
  return ids;
}

long long default_draws(const std::string& theorem_id) {
  if (theorem_id == "sum_bound") return 1000;
  if (theorem_id == "schur_equiv" || theorem_id == "quad_equiv") return 300;
  if (theorem_id == "szasz_witness") return 1;
  return 200;
}

TheoremOutcome run_theorem(const std::string& theorem_id, const std::vector<ResolvedSpec>& specs,
                           std::uint64_t seed, long long draws, const ToleranceConfig& tol) {
  tol.validate();
  if (draws < 1) throw PreconditionError("draw count must be >= 1");
  SuiteState st;
  st.outcome.theorem_id = theorem_id;
  st.outcome.seed = seed;
  st.outcome.draws = draws;
  DrawSource rng(seed);

  if (theorem_id == "sum_bound") {
    run_sum_bound(st, specs, rng, draws, tol);
  } else if (theorem_id == "direct_sum") {
    run_direct_sum(st, specs, rng, draws, tol);
  } else if (theorem_id == "pinv_duality") {
    run_pinv_duality(st, rng, draws, tol);
  } else if (theorem_id == "defect") {
    run_defect(st, rng, draws, tol);
  } else if (theorem_id == "bounded_transform") {
    run_bounded_transform(st, rng, draws, tol);
  } else if (theorem_id == "sqrt_ladder") {
    run_sqrt_ladder(st, rng, draws, tol);
  } else if (theorem_id == "power") {
    run_power(st, rng, draws, tol);
  } else if (theorem_id == "schur_equiv") {
    run_block_equiv(st, specs, rng, draws, tol, /*quadratic=*/false);
  } else if (theorem_id == "quad_equiv") {
    run_block_equiv(st, specs, rng, draws, tol, /*quadratic=*/true);
  } else if (theorem_id == "szasz_witness") {
    run_szasz_witness(st, specs);
  } else {
    std::string known;
    for (const auto& id : theorem_ids()) known += " " + id;
    throw PreconditionError("unknown theorem id '" + theorem_id + "'; known:" + known);
  }

  st.outcome.passed = st.outcome.violations == 0;
  if (st.track_margin && std::isfinite(st.min_margin)) {
    st.outcome.details.emplace_back("min_margin", format_real(st.min_margin));
  }
  return st.outcome;
}

}  // namespace hus

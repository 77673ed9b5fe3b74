// Acceptance suite: every release gate runs here, one pass/fail line each.
// Usage: acceptance_tests <path-to-cli-binary>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hus/block_matrix.hpp"
#include "hus/calculus.hpp"
#include "hus/errors.hpp"
#include "hus/random_models.hpp"
#include "hus/report.hpp"
#include "hus/spec_file.hpp"
#include "hus/stability.hpp"
#include "hus/verify.hpp"
#include "hus/zoo.hpp"

using namespace hus;

namespace {

int g_failures = 0;
const ToleranceConfig kTol;
const Scalar kOne(1.0, 0.0);

void report(int number, const char* label, bool ok, const std::string& detail = "") {
  std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, label,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

struct CliRun {
  int exit_code = -1;
  std::string output;
};

std::string g_cli;
std::filesystem::path g_dir;

CliRun run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = (g_dir / ("out" + std::to_string(counter++) + ".txt")).string();
  const std::string cmd = g_cli + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  run.output = ss.str();
  return run;
}

std::string write_spec(const std::string& name, const std::string& text) {
  const std::string path = (g_dir / name).string();
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

// 1. The kernel-plus-n model reports gamma 2 and spectral floor 4 exactly.
void criterion1() {
  const std::string path = write_spec(
      "kernel_plus_n.spec", "kind: diagonal\nentries: 0, 2, 3\ntail: power coeff=1 exponent=1\n");
  const CliRun run = run_cli("analyze " + path + " --format keyvalue");
  const bool cli_ok = run.exit_code == 0 &&
                      run.output.find("stability.gamma = 2\n") != std::string::npos &&
                      run.output.find("stability.spectral_floor = 4\n") != std::string::npos;
  const StabilityReport r =
      stability_report(OperatorModel(paper_diagonal(PaperDiagonal::KernelPlusN)), kTol);
  report(1, "spectral floor of the kernel-plus-n model",
         cli_ok && r.gamma == 2.0 && r.spectral_floor == 4.0);
}

// 2. Zoo dichotomy: the named models split exactly as recorded.
void criterion2() {
  bool ok = true;
  std::string detail;
  auto verdict = [&](PaperDiagonal name, bool expect_stable) {
    const bool stable = stability_report(OperatorModel(paper_diagonal(name)), kTol).stable;
    if (stable != expect_stable) {
      ok = false;
      detail += " named-model verdict mismatch;";
    }
  };
  verdict(PaperDiagonal::StableN, true);
  verdict(PaperDiagonal::InverseOfStableN, false);
  verdict(PaperDiagonal::ShiftedWeighted, true);
  verdict(PaperDiagonal::MixedUnstable, false);
  for (long long n : {9LL, 99LL, 999LL}) {
    const MatrixOperator ident = multiplication_sampled({PhiSpec::Kind::Identity01, 0.0, {}}, n);
    if (gamma(OperatorModel(ident), kTol).value != 1.0 / static_cast<double>(n + 1)) {
      ok = false;
      detail += " identity-sample gamma not 1/(N+1);";
    }
    const MatrixOperator shifted = multiplication_sampled({PhiSpec::Kind::Shifted, 1.0, {}}, n);
    if (gamma(OperatorModel(shifted), kTol).value < 1.0) {
      ok = false;
      detail += " shifted-sample gamma below 1;";
    }
  }
  report(2, "zoo stability dichotomy", ok, detail);
}

// 3. Series-operator witness: minimal peak index, grid sup, kernel gap.
void criterion3() {
  const SzaszSpec spec{1, 10.0};
  const SzaszWitness w = szasz_instability_witness(spec);
  auto log_ratio = [](long long j) {
    return j * std::log(static_cast<double>(j)) - std::lgamma(static_cast<double>(j) + 1.0) -
           static_cast<double>(j);
  };
  const bool minimal = 11.0 * std::exp(log_ratio(w.j)) <= 1.0 &&
                       11.0 * std::exp(log_ratio(w.j - 1)) > 1.0;
  double grid_sup = 0.0;
  const int points = 100000;
  for (int i = 0; i < points; ++i) {
    const double x = 3.0 * static_cast<double>(w.j) * i / (points - 1);
    grid_sup = std::max(grid_sup, std::abs(szasz_apply(spec, w.hat, x, 1e-12)));
  }
  const double expected = 11.0 * std::exp(log_ratio(w.j));
  report(3, "series-operator witness construction",
         minimal && std::abs(grid_sup - expected) <= 1e-6 && w.kernel_gap == 11.0,
         "peak index " + std::to_string(w.j));
}

// 4. Stability constant is the reciprocal of gamma; witnesses obey it.
void criterion4() {
  DrawSource rng(42);
  bool ok = true;
  for (int i = 0; i < 1000 && ok; ++i) {
    const Eigen::Index rows = rng.range(1, 32);
    const Eigen::Index cols = rng.range(1, 32);
    const MatrixOperator a = random_matrix(rng, rows, cols, rng.chance(0.5));
    const StabilityReport r = stability_report(OperatorModel(a), kTol);
    if (std::abs(r.hus_constant * r.gamma - 1.0) > 1e-12) {
      ok = false;
      break;
    }
    for (int t = 0; t < 10; ++t) {
      const auto x = random_vector(rng, static_cast<std::size_t>(cols), true);
      const WitnessResult w = hus_witness(OperatorModel(a), x, kTol);
      if (w.distance > w.bound + 1e-12 * (1.0 + w.bound)) {
        ok = false;
        break;
      }
    }
  }
  report(4, "reciprocal law and witness bound over 1000 random matrices", ok);
}

// 5. Sum theorems: certified relative bounds keep the stability floor.
void criterion5() {
  const TheoremOutcome sums = run_theorem("sum_bound", {}, 42, 1000, kTol);
  DrawSource rng(43);
  bool orth_ok = true;
  for (int i = 0; i < 200 && orth_ok; ++i) {
    auto [s, t] = random_orthogonal_pair(rng);
    const DiagonalOperator sum = add_orthogonal_ranges(s, t);
    orth_ok = gamma(OperatorModel(sum), kTol).value ==
              std::min(gamma(OperatorModel(s), kTol).value, gamma(OperatorModel(t), kTol).value);
  }
  bool coercive_ok = true;
  for (int i = 0; i < 200 && coercive_ok; ++i) {
    const CoercivePair cp = random_coercive_pair(rng);
    coercive_ok = gamma(OperatorModel(add_coercive(cp.s, cp.t, cp.a)), kTol).value >= cp.a;
  }
  report(5, "sum stability floors (1000 bounded + 200 orthogonal + 200 coercive draws)",
         sums.passed && sums.violations == 0 && orth_ok && coercive_ok, sums.counterexample);
}

// 6. Generalized-inverse dualities.
void criterion6() {
  DrawSource rng(44);
  bool penrose_ok = true;
  for (int i = 0; i < 500 && penrose_ok; ++i) {
    const MatrixOperator a =
        random_matrix(rng, rng.range(1, 12), rng.range(1, 12), rng.chance(0.5));
    const Eigen::MatrixXcd& am = a.matrix();
    const Eigen::MatrixXcd pm = as_matrix(pseudo_inverse(OperatorModel(a), kTol)).matrix();
    const double scale = 1.0 + am.norm();
    penrose_ok = (am * pm * am - am).norm() <= 1e-8 * scale &&
                 (pm * am * pm - pm).norm() <= 1e-8 * scale &&
                 ((am * pm).adjoint() - am * pm).norm() <= 1e-8 * scale &&
                 ((pm * am).adjoint() - pm * am).norm() <= 1e-8 * scale;
  }
  bool duality_ok = true;
  DiagonalDrawOptions opt;
  for (int i = 0; i < 200 && duality_ok; ++i) {
    const DiagonalOperator d = random_diagonal(rng, opt);
    duality_ok = (gamma(pseudo_inverse(OperatorModel(d), kTol), kTol).value > 0.0) ==
                 is_bounded(OperatorModel(d));
  }
  bool exact_ok = true;
  DiagonalDrawOptions exact;
  exact.kernel_free = true;
  exact.allow_kernel = false;
  exact.constants_only = true;
  exact.power_of_two_coeffs = true;
  exact.allow_complex = false;
  for (int i = 0; i < 200 && exact_ok; ++i) {
    const DiagonalOperator d = random_diagonal(rng, exact);
    exact_ok =
        gamma(pseudo_inverse(OperatorModel(d), kTol), kTol).value * d.sup_modulus() == 1.0;
  }
  report(6, "generalized-inverse dualities (500 Penrose + 200 symbolic + exact norm law)",
         penrose_ok && duality_ok && exact_ok);
}

// 7. Transform theorems.
void criterion7() {
  const TheoremOutcome defect = run_theorem("defect", {}, 42, 200, kTol);
  const TheoremOutcome bounded = run_theorem("bounded_transform", {}, 42, 200, kTol);
  const TheoremOutcome ladder = run_theorem("sqrt_ladder", {}, 42, 200, kTol);
  report(7, "defect / norm-limit / square-root ladder transforms",
         defect.passed && bounded.passed && ladder.passed,
         defect.counterexample + bounded.counterexample + ladder.counterexample);
}

// 8. Block-matrix suite: closure factorizations and equivalence verdicts.
void criterion8() {
  DrawSource rng(45);
  DiagonalDrawOptions strong;
  strong.kernel_free = true;
  strong.allow_kernel = false;
  strong.stable_only = true;
  strong.positive_real = true;
  bool fact_ok = true;
  std::string fact_detail;
  for (int i = 0; i < 500 && fact_ok; ++i) {
    const BlockMatrix m(OperatorModel(random_diagonal(rng, strong)),
                        OperatorModel(random_diagonal(rng, strong)),
                        OperatorModel(random_diagonal(rng, strong)),
                        OperatorModel(random_diagonal(rng, strong)),
                        rng.chance(0.5) ? Scalar(0.0, 0.0) : Scalar(-rng.positive_dyadic(2.0), 0.0));
    for (Complement which : {Complement::Schur2, Complement::Schur1, Complement::Quad2,
                             Complement::Quad1}) {
      for (long long n : {4LL, 16LL, 64LL}) {
        if (!factorization_check(m, m.mu(), which, kTol, n)) {
          fact_ok = false;
          fact_detail = std::string("factorization failed for ") + complement_name(which);
        }
      }
    }
  }
  const TheoremOutcome schur = run_theorem("schur_equiv", {}, 42, 150, kTol);
  const TheoremOutcome quad = run_theorem("quad_equiv", {}, 42, 150, kTol);
  report(8, "block complements: 500 factorization draws and 300 equivalence draws",
         fact_ok && schur.passed && quad.passed,
         fact_detail + schur.counterexample + quad.counterexample);
}

// 9. Convergence tables.
void criterion9() {
  const auto table =
      gamma_convergence_table(paper_diagonal(PaperDiagonal::MixedUnstable), {4, 16, 64, 256}, kTol);
  bool ok = table.size() == 4 && table[0].second == 1.0 / 3.0 && table[1].second == 1.0 / 15.0 &&
            table[2].second == 1.0 / 63.0 && table[3].second == 1.0 / 255.0;
  DrawSource rng(46);
  DiagonalDrawOptions opt;
  for (int i = 0; i < 100 && ok; ++i) {
    const DiagonalOperator d = random_diagonal(rng, opt);
    const double g = gamma(OperatorModel(d), kTol).value;
    std::vector<std::pair<long long, double>> t;
    try {
      t = gamma_convergence_table(d, {4, 16, 64}, kTol);
    } catch (const NumericallyZero&) {
      continue;
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k > 0 && t[k].second > t[k - 1].second) ok = false;
      if (t[k].second < g - 1e-12 * (1.0 + g)) ok = false;
    }
  }
  report(9, "truncation tables are exact, monotone, and bounded below by gamma", ok);
}

// 10. CLI contract: round trip, determinism, exit codes.
void criterion10() {
  bool ok = true;
  std::string detail;

  // Round trip through the file grammar.
  DrawSource rng(47);
  DiagonalDrawOptions opt;
  for (int i = 0; i < 50 && ok; ++i) {
    const DiagonalOperator d = random_diagonal(rng, opt);
    const auto text = spec_text_for_diagonal(d);
    if (!text) continue;
    const ResolvedSpec back = resolve_spec(parse_spec(*text), "", kTol);
    if (!back.model || !as_diagonal(*back.model).structurally_equal(d)) {
      ok = false;
      detail += " grammar round trip failed;";
    }
  }
  const std::string rt = write_spec("roundtrip.spec",
                                    *spec_text_for_diagonal(paper_diagonal(PaperDiagonal::MixedUnstable)));
  if (run_cli("analyze " + rt + " --format keyvalue").exit_code != 0) {
    ok = false;
    detail += " analyze of rendered spec failed;";
  }

  // Deterministic seeding: byte-identical across two runs.
  const CliRun v1 = run_cli("verify sum_bound --seed 42 --draws 200 --format keyvalue");
  const CliRun v2 = run_cli("verify sum_bound --seed 42 --draws 200 --format keyvalue");
  if (v1.exit_code != 0 || v1.output != v2.output || v1.output.empty()) {
    ok = false;
    detail += " verify output not byte-identical;";
  }

  // Exit codes: 0 success, 1 parse, 2 hypothesis/precondition, 3 numeric.
  const std::string bad = write_spec("bad.spec", "kind: diagonal\nentries: zebra\n");
  if (run_cli("analyze " + bad).exit_code != 1) {
    ok = false;
    detail += " parse error exit;";
  }
  const std::string a = write_spec("ha.spec", "kind: diagonal\ntail: constant 1\n");
  const std::string c = write_spec("hc.spec", "kind: diagonal\ntail: power coeff=1 exponent=1\n");
  const std::string blk = write_spec(
      "hblock.spec",
      "kind: block\na.file: ha.spec\nb.file: ha.spec\nc.file: hc.spec\ne.file: ha.spec\n");
  if (run_cli("verify schur_equiv --spec " + blk).exit_code != 2) {
    ok = false;
    detail += " hypothesis exit;";
  }
  const std::string huge = write_spec("huge.spec", "kind: zoo\nname: szasz\nn: 1\nN: 1000000\n");
  if (run_cli("verify szasz_witness --spec " + huge).exit_code != 3) {
    ok = false;
    detail += " numeric exit;";
  }
  const std::string sz = write_spec("sz.spec", "kind: zoo\nname: szasz\nn: 1\nN: 10\n");
  const CliRun szrun = run_cli("verify szasz_witness --spec " + sz + " --format keyvalue");
  if (szrun.exit_code != 0 || szrun.output.find("verify.passed = true") == std::string::npos) {
    ok = false;
    detail += " witness verify exit;";
  }
  if (run_cli("zoo list").exit_code != 0) {
    ok = false;
    detail += " zoo list exit;";
  }
  const CliRun wit = run_cli("witness " + rt + " --x \"1,1,1,1\" --format keyvalue");
  if (wit.exit_code != 2) {  // unstable model: witness precondition fails
    ok = false;
    detail += " witness precondition exit;";
  }
  report(10, "CLI contract: round trip, determinism, exit codes", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance_tests <cli-binary>\n");
    return 2;
  }
  g_cli = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "hus_acceptance";
  std::filesystem::create_directories(g_dir);

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();

  std::filesystem::remove_all(g_dir);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

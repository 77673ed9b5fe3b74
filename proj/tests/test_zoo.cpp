#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hus/errors.hpp"
#include "hus/random_models.hpp"
#include "hus/stability.hpp"
#include "hus/zoo.hpp"

using namespace hus;

namespace {
const ToleranceConfig kTol;
}

TEST_CASE("basis polynomial values") {
  CHECK(bernstein_basis(1, 0, 0.25) == 0.75);
  CHECK(bernstein_basis(2, 1, 0.5) == 0.5);
  CHECK(bernstein_basis(3, 0, 0.0) == 1.0);
  CHECK(bernstein_basis(3, 2, 1.0) == 0.0);
  CHECK_THROWS_AS(bernstein_basis(3, 4, 0.5), DomainViolation);
  CHECK_THROWS_AS(bernstein_basis(3, 1, 1.5), DomainViolation);
}

TEST_CASE("partition of unity on a 1001-point grid") {
  for (int n : {1, 2, 5, 12, 20}) {
    for (int i = 0; i <= 1000; ++i) {
      const double x = static_cast<double>(i) / 1000.0;
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) sum += bernstein_basis(n, k, x);
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("log-gamma evaluation stays accurate for high degrees") {
  // Compare the two evaluation regimes across the switch at n = 50.
  for (int k : {0, 10, 25, 51}) {
    const double x = 0.37;
    const double direct = bernstein_basis(51, k, x);
    double sum = 0.0;
    for (int j = 0; j <= 51; ++j) sum += bernstein_basis(51, j, x);
    CHECK(std::abs(sum - 1.0) <= 1e-11);
    CHECK(direct >= 0.0);
  }
}

TEST_CASE("nodal matrices") {
  SUBCASE("degree one at the endpoints is the identity") {
    const MatrixOperator m = bernstein_nodal_matrix(1, {0.0, 1.0});
    CHECK(m.entry(0, 0) == Scalar(1.0, 0.0));
    CHECK(m.entry(1, 1) == Scalar(1.0, 0.0));
    CHECK(m.entry(0, 1) == Scalar(0.0, 0.0));
    CHECK(gamma(OperatorModel(m), kTol).value == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("degree two rows and frozen smallest singular value") {
    const MatrixOperator m = bernstein_nodal_matrix(2, {0.0, 0.5, 1.0});
    CHECK(m.entry(0, 0) == Scalar(1.0, 0.0));
    CHECK(m.entry(1, 0) == Scalar(0.25, 0.0));
    CHECK(m.entry(1, 1) == Scalar(0.5, 0.0));
    CHECK(m.entry(1, 2) == Scalar(0.25, 0.0));
    CHECK(m.entry(2, 2) == Scalar(1.0, 0.0));
    CHECK(gamma(OperatorModel(m), kTol).value ==
          doctest::Approx(0.46436553252322466).epsilon(1e-12));
  }
  SUBCASE("stable at the canonical nodes for every degree up to 20") {
    for (int n = 1; n <= 20; ++n) {
      const MatrixOperator m = bernstein_nodal_matrix(n, bernstein_uniform_nodes(n));
      CHECK(stability_report(OperatorModel(m), kTol).stable);
    }
  }
  SUBCASE("positivity: nodal rows are a convex combination") {
    DrawSource rng(61);
    for (int n : {1, 3, 7, 15}) {
      const MatrixOperator m = bernstein_nodal_matrix(n, bernstein_uniform_nodes(n));
      for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_vector(rng, static_cast<std::size_t>(n) + 1, false);
        double sup_f = 0.0;
        for (Scalar v : f) sup_f = std::max(sup_f, std::abs(v));
        double sup_mf = 0.0;
        for (Scalar v : m.apply(f)) sup_mf = std::max(sup_mf, std::abs(v));
        CHECK(sup_mf <= sup_f * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("series operator normalization") {
  const SzaszSpec spec{1, 10.0};
  for (double x : {0.0, 0.5, 1.0, 4.0, 10.0}) {
    CHECK(std::abs(szasz_apply(spec, [](double) { return 1.0; }, x, 1e-9) - 1.0) <= 1e-8);
    CHECK(szasz_apply(spec, [](double) { return 0.0; }, x, 1e-9) == 0.0);
  }
  const SzaszSpec spec3{3, 5.0};
  for (double x : {0.3, 2.0, 7.5}) {
    CHECK(std::abs(szasz_apply(spec3, [](double) { return 1.0; }, x, 1e-10) - 1.0) <= 1e-9);
  }
}

TEST_CASE("hat inputs concentrate at one node") {
  // With the hat vanishing at every grid node but j, the image is the single
  // Poisson term and its sup norm has a closed form.
  const SzaszSpec spec{1, 10.0};
  const SzaszWitness w = szasz_instability_witness(spec);
  const double lr = w.j * std::log(static_cast<double>(w.j)) -
                    std::lgamma(static_cast<double>(w.j) + 1.0) - static_cast<double>(w.j);
  const double expected = 11.0 * std::exp(lr);
  double grid_sup = 0.0;
  for (int i = 0; i < 20001; ++i) {
    const double x = 3.0 * static_cast<double>(w.j) * i / 20000.0;
    grid_sup = std::max(grid_sup, std::abs(szasz_apply(spec, w.hat, x, 1e-12)));
  }
  CHECK(std::abs(grid_sup - expected) <= 1e-6);
}

TEST_CASE("witness construction") {
  const SzaszWitness w = szasz_instability_witness({1, 10.0});
  CHECK(w.j == 20);  // smallest j with 11 j^j/(j! e^j) <= 1
  CHECK(w.sup_norm <= 1.0 + 1e-9);
  CHECK(w.kernel_gap == 11.0);
  CHECK(w.hat.peak_value == 11.0);
  CHECK(w.hat(w.hat.peak_x) == 11.0);
  CHECK(w.hat(w.hat.left) == 0.0);
  CHECK(w.hat((w.hat.left + w.hat.peak_x) / 2.0) == doctest::Approx(5.5));

  for (double cap : {1.0, 5.0, 10.0, 20.0}) {
    const SzaszWitness wc = szasz_instability_witness({1, cap});
    CHECK(wc.sup_norm <= 1.0 + 1e-9);
    CHECK(wc.kernel_gap == cap + 1.0);
    const double lr = wc.j * std::log(static_cast<double>(wc.j)) -
                      std::lgamma(static_cast<double>(wc.j) + 1.0) - static_cast<double>(wc.j);
    CHECK((cap + 1.0) * std::exp(lr) <= 1.0);
    if (wc.j > 1) {
      const double prev = (wc.j - 1) * std::log(static_cast<double>(wc.j - 1)) -
                          std::lgamma(static_cast<double>(wc.j)) -
                          static_cast<double>(wc.j - 1);
      CHECK((cap + 1.0) * std::exp(prev) > 1.0);
    }
  }
  CHECK_THROWS_AS(szasz_instability_witness({1, 1e6}), NonConvergent);
}

TEST_CASE("sampled multiplication dichotomy") {
  const MatrixOperator m9 = multiplication_sampled({PhiSpec::Kind::Identity01, 0.0, {}}, 9);
  CHECK(gamma(OperatorModel(m9), kTol).value == 0.1);
  for (long long n : {9, 99, 999}) {
    const MatrixOperator mn = multiplication_sampled({PhiSpec::Kind::Identity01, 0.0, {}}, n);
    CHECK(gamma(OperatorModel(mn), kTol).value == 1.0 / static_cast<double>(n + 1));
    const MatrixOperator sh = multiplication_sampled({PhiSpec::Kind::Shifted, 1.0, {}}, n);
    CHECK(gamma(OperatorModel(sh), kTol).value >= 1.0);
  }
  const MatrixOperator grid =
      multiplication_sampled({PhiSpec::Kind::Grid, 0.0, {2.0, 3.0, 5.0}}, 3);
  CHECK(gamma(OperatorModel(grid), kTol).value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(multiplication_sampled({PhiSpec::Kind::Grid, 0.0, {1.0}}, 3), DomainViolation);
}

TEST_CASE("named diagonal verdicts") {
  const StabilityReport stable_n =
      stability_report(OperatorModel(paper_diagonal(PaperDiagonal::StableN)), kTol);
  CHECK(stable_n.stable);
  CHECK(stable_n.gamma == 1.0);

  CHECK_FALSE(
      stability_report(OperatorModel(paper_diagonal(PaperDiagonal::InverseOfStableN)), kTol)
          .stable);

  const StabilityReport shifted =
      stability_report(OperatorModel(paper_diagonal(PaperDiagonal::ShiftedWeighted)), kTol);
  CHECK(shifted.stable);
  CHECK(shifted.gamma == 1.0);
  CHECK(shifted.kernel_infinite);

  CHECK_FALSE(stability_report(OperatorModel(paper_diagonal(PaperDiagonal::MixedUnstable)), kTol)
                  .stable);

  const StabilityReport kp =
      stability_report(OperatorModel(paper_diagonal(PaperDiagonal::KernelPlusN)), kTol);
  CHECK(kp.stable);
  CHECK(kp.spectral_floor == 4.0);

  CHECK(zoo_catalog().size() == 8);
}

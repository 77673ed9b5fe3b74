#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hus/power_sum.hpp"
#include "hus/stability.hpp"
#include "hus/tail_atom.hpp"

using namespace hus;

namespace {
const Scalar kOne(1.0, 0.0);

PowerSum sum_of(std::initializer_list<std::pair<double, double>> terms) {
  PowerSum p;
  for (const auto& [c, e] : terms) p = p + PowerSum::monomial(Scalar(c, 0.0), e);
  return p;
}

TailAtom rational(const PowerSum& num) {
  return TailAtom::ratio(num, PowerSum::constant(kOne));
}
}  // namespace

TEST_CASE("sign changes of crafted power sums") {
  // (n-2)(n-3): simple roots at 2 and 3.
  const PowerSum f = sum_of({{1, 2}, {-5, 1}, {6, 0}});
  const auto roots = sign_change_roots(f, 0.5, 0.05);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - 2.0) <= 0.05);
  CHECK(std::abs(roots[1] - 3.0) <= 0.05);

  // Fractional exponents: sqrt(n) - 3 vanishes at 9.
  const PowerSum g = sum_of({{1, 0.5}, {-3, 0}});
  const auto groots = sign_change_roots(g, 0.5, 0.05);
  REQUIRE(groots.size() == 1);
  CHECK(std::abs(groots[0] - 9.0) <= 0.05);

  CHECK(sign_change_roots(PowerSum::monomial(kOne, 2.0), 0.5, 0.05).empty());
}

TEST_CASE("zero brackets catch tangent zeros") {
  // (n-3)^2 (n-7): the tangent zero at 3 never changes sign.
  const PowerSum f = sum_of({{1, 3}, {-13, 2}, {51, 1}, {-63, 0}});
  CHECK(sign_change_roots(f, 0.5, 0.05).size() == 1);
  const auto brackets = zero_bracket_points(f, 0.5, 0.05);
  bool near3 = false, near7 = false;
  for (double b : brackets) {
    near3 = near3 || std::abs(b - 3.0) <= 0.25;
    near7 = near7 || std::abs(b - 7.0) <= 0.25;
  }
  CHECK(near3);
  CHECK(near7);
}

TEST_CASE("interior minima of entry laws") {
  SUBCASE("minimum at an integer index") {
    // (n-10)^2 + 1/4
    const TailAtom a = rational(sum_of({{1, 2}, {-20, 1}, {100.25, 0}}));
    const auto an = a.analyze(1, 1);
    CHECK(an.inf_nonzero.value == 0.25);
    CHECK(an.inf_nonzero.attained);
    CHECK(std::isinf(an.sup));
    CHECK(an.zeros.empty());
  }
  SUBCASE("minimum between integers") {
    // (n-10.5)^2 + 1/4: closest indices 10 and 11 both give 1/2.
    const TailAtom a = rational(sum_of({{1, 2}, {-21, 1}, {110.5, 0}}));
    const auto an = a.analyze(1, 1);
    CHECK(an.inf_nonzero.value == 0.5);
    CHECK(an.inf_nonzero.attained);
  }
  SUBCASE("minimum respects the class stride") {
    // |n - 20 + 5i| over odd indices: attained at 19 or 21.
    PowerSum p = PowerSum::monomial(kOne, 1.0) + PowerSum::constant(Scalar(-20.0, 5.0));
    const TailAtom a = rational(p);
    const auto odd = a.analyze(1, 2);
    CHECK(odd.inf_nonzero.value == doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));
    const auto all = a.analyze(1, 1);
    CHECK(all.inf_nonzero.value == 5.0);
    CHECK(all.inf_nonzero.attained);
  }
  SUBCASE("late minimum far past the first indices") {
    // (n-1000)^2 + 9 dips at n = 1000 only.
    const TailAtom a = rational(sum_of({{1, 2}, {-2000, 1}, {1000009, 0}}));
    const auto an = a.analyze(1, 1);
    CHECK(an.inf_nonzero.value == 9.0);
    CHECK(an.inf_nonzero.attained);
  }
}

TEST_CASE("entry laws crossing zero") {
  // (n-4)(n-12)+1: negative between the roots, |values| dip to 1 at 4 and 12.
  const TailAtom a = rational(sum_of({{1, 2}, {-16, 1}, {49, 0}}));
  const auto an = a.analyze(1, 1);
  CHECK(an.inf_nonzero.value == 1.0);
  CHECK(an.inf_nonzero.attained);
  CHECK(an.zeros.empty());

  // (n-5)^2 vanishes exactly at 5; neighbors give 1.
  const TailAtom b = rational(sum_of({{1, 2}, {-10, 1}, {25, 0}}));
  const auto bn = b.analyze(1, 1);
  REQUIRE(bn.zeros.size() == 1);
  CHECK(bn.zeros[0] == 5);
  CHECK(bn.inf_nonzero.value == 1.0);
  CHECK(bn.inf_nonzero.attained);
}

TEST_CASE("signed minima") {
  // n - 7.5 is increasing: the signed minimum sits at the first index.
  const TailAtom a = rational(sum_of({{1, 1}, {-7.5, 0}}));
  const auto am = a.real_min(1, 1);
  CHECK(am.value == -6.5);
  CHECK(am.attained);

  // -(n-3)^2 + 4 peaks at 3 and falls to -inf.
  const TailAtom b = rational(sum_of({{-1, 2}, {6, 1}, {-5, 0}}));
  const auto bm = b.real_min(1, 1);
  CHECK(std::isinf(bm.value));
  CHECK(bm.value < 0.0);
  CHECK_FALSE(bm.attained);

  // (n-6)^2 touches zero at 6.
  const TailAtom c = rational(sum_of({{1, 2}, {-12, 1}, {36, 0}}));
  const auto cm = c.real_min(1, 1);
  CHECK(cm.value == 0.0);
  CHECK(cm.attained);

  // 2 - 8/n climbs through zero toward 2: infimum is the first value.
  const TailAtom d = rational(sum_of({{2, 0}, {-8, -1}}));
  const auto dm = d.real_min(1, 1);
  CHECK(dm.value == -6.0);
  CHECK(dm.attained);
}

TEST_CASE("rational laws with genuine denominators") {
  // (n^2+1)/n = n + 1/n: minimum 2 at n = 1, unbounded above.
  const TailAtom a = TailAtom::ratio(sum_of({{1, 2}, {1, 0}}), PowerSum::monomial(kOne, 1.0));
  const auto an = a.analyze(1, 1);
  CHECK(an.inf_nonzero.value == 2.0);
  CHECK(an.inf_nonzero.attained);
  CHECK(std::isinf(an.sup));

  // n/(n+1) climbs to 1; the supremum is a limit, not a value.
  const TailAtom b = TailAtom::ratio(PowerSum::monomial(kOne, 1.0), sum_of({{1, 1}, {1, 0}}));
  const auto bn = b.analyze(1, 1);
  CHECK(bn.inf_nonzero.value == 0.5);
  CHECK(bn.inf_nonzero.attained);
  CHECK(bn.sup == 1.0);
  CHECK_FALSE(bn.sup_attained);
}

TEST_CASE("fractional exponents") {
  const TailAtom a = TailAtom::power(kOne, -0.5);
  const auto an = a.analyze(1, 1);
  CHECK(an.inf_nonzero.value == 0.0);
  CHECK_FALSE(an.inf_nonzero.attained);
  CHECK(an.sup == 1.0);
  CHECK(an.sup_attained);

  const DiagonalOperator d = DiagonalOperator::create({}, {TailAtom::power(kOne, 0.5)});
  CHECK(gamma(OperatorModel(d), ToleranceConfig{}).value == 1.0);
}

TEST_CASE("stability reports see interior dips") {
  // Entries (n-10)^2 + 1/4 give gamma exactly 1/4.
  const DiagonalOperator d =
      DiagonalOperator::create({}, {rational(sum_of({{1, 2}, {-20, 1}, {100.25, 0}}))});
  const StabilityReport r = stability_report(OperatorModel(d), ToleranceConfig{});
  CHECK(r.gamma == 0.25);
  CHECK(r.stable);
  CHECK(r.kernel_dim == 0);

  // Entries (n-5)^2 have a one-dimensional kernel at index 5.
  const DiagonalOperator k =
      DiagonalOperator::create({}, {rational(sum_of({{1, 2}, {-10, 1}, {25, 0}}))});
  const StabilityReport rk = stability_report(OperatorModel(k), ToleranceConfig{});
  CHECK(rk.gamma == 1.0);
  CHECK(rk.kernel_dim == 1);
}

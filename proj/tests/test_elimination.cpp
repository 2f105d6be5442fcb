#include <doctest.h>

#include <cmath>
#include <random>

#include "hotelling/elimination.hpp"

using namespace hotelling;

namespace {

const ModelParams kOneThree = ModelParams::two_firm(1.0, 3.0);

void check_set(const ChoiceSet& s, std::vector<Interval> expected, double tol = 1e-12) {
  REQUIRE(s.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(std::fabs(s.intervals()[k].lo - expected[k].lo) <= tol);
    CHECK(std::fabs(s.intervals()[k].hi - expected[k].hi) <= tol);
  }
}

}  // namespace

TEST_CASE("two-firm rounds reproduce the large-gap example") {
  TwoFirmRoundState s0 = TwoFirmRoundState::initial();
  TwoFirmRoundState s1 = round_two_firm(s0, kOneThree);
  check_set(s1.p1, {{0.2, 0.8}});
  check_set(s1.p2, {{0.3, 0.4}, {0.6, 0.7}});

  TwoFirmRoundState s2 = round_two_firm(s1, kOneThree);
  CHECK(s2.p1 == s1.p2);  // copy rule
  check_set(s2.p2, {{0.30, 0.36}, {0.64, 0.70}});

  TwoFirmRoundState s3 = round_two_firm(s2, kOneThree);
  CHECK(s3.p1 == s2.p2);
  check_set(s3.p2, {{0.32, 0.34}, {0.66, 0.68}});
}

TEST_CASE("round_two_firm validates its state") {
  TwoFirmRoundState bad = TwoFirmRoundState::initial();
  bad.p1 = ChoiceSet(0.2, 0.7);  // not symmetric about 1/2
  CHECK_THROWS_AS(round_two_firm(bad, kOneThree), std::invalid_argument);
  CHECK_THROWS_AS(round_two_firm(TwoFirmRoundState::initial(), ModelParams::two_firm(3.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("two-firm iteration reaches the two-point limit") {
  EliminationTrace trace = iterate_two_firm(kOneThree, 1e-9, 200);
  CHECK(trace.converged);
  ChoiceSet expected = closed_form_limit_two(kOneThree);
  CHECK(hausdorff(trace.limit[0], expected) <= 1e-6);
  CHECK(hausdorff(trace.limit[1], expected) <= 1e-6);

  EliminationTrace mid = iterate_two_firm(ModelParams::two_firm(1.0, 2.0));
  CHECK(hausdorff(mid.limit[0], closed_form_limit_two(ModelParams::two_firm(1.0, 2.0))) <= 1e-6);

  // small-gap regime passes through the pinned-interval case
  EliminationTrace small = iterate_two_firm(ModelParams::two_firm(0.5, 0.6));
  ChoiceSet small_expected = closed_form_limit_two(ModelParams::two_firm(0.5, 0.6));
  CHECK(hausdorff(small.limit[0], small_expected) <= 1e-6);
  CHECK(small_expected.min() == doctest::Approx(1.5 / 3.1).epsilon(1e-12));
  CHECK(small_expected.max() == doctest::Approx(1.6 / 3.1).epsilon(1e-12));
}

TEST_CASE("swapped orientation relabels the firms") {
  EliminationTrace direct = iterate_two_firm(kOneThree);
  EliminationTrace swapped = iterate_two_firm(ModelParams::two_firm(3.0, 1.0));
  REQUIRE(direct.rounds.size() == swapped.rounds.size());
  CHECK(swapped.rounds[1][0] == direct.rounds[1][1]);
  CHECK(swapped.rounds[1][1] == direct.rounds[1][0]);
}

TEST_CASE("two-firm iteration rejects equal coefficients") {
  CHECK_THROWS_AS(iterate_two_firm(ModelParams::two_firm(1.0, 1.0)), std::invalid_argument);
}

TEST_CASE("monotone shrinkage and symmetry hold along random traces") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> log_a(std::log(0.1), std::log(10.0));
  for (int t = 0; t < 25; ++t) {
    double a1 = std::exp(log_a(rng));
    double a2 = std::exp(log_a(rng));
    if (a1 == a2) continue;
    EliminationTrace trace = iterate_two_firm(ModelParams::two_firm(a1, a2));
    REQUIRE(trace.converged);
    for (std::size_t k = 1; k < trace.rounds.size(); ++k) {
      for (int f = 0; f < 2; ++f) {
        const ChoiceSet& prev = trace.rounds[k - 1][static_cast<std::size_t>(f)];
        const ChoiceSet& cur = trace.rounds[k][static_cast<std::size_t>(f)];
        CHECK(prev.contains(cur, 1e-12));
        CHECK(hausdorff(cur, mirror(cur)) <= 1e-9);
        CHECK(trace.limit[static_cast<std::size_t>(f)].min() >= cur.min() - 1e-9);
      }
    }
  }
}

TEST_CASE("copy rule activates exactly") {
  EliminationTrace trace = iterate_two_firm(kOneThree);
  bool seen = false;
  for (std::size_t k = 1; k < trace.rounds.size(); ++k) {
    if (trace.rounds[k - 1][1].min() >= 1.0 / 4.0) {
      CHECK(trace.rounds[k][0] == trace.rounds[k - 1][1]);
      seen = true;
    }
  }
  CHECK(seen);
}

TEST_CASE("split-regime gaps contract by 1/gamma^2 every four rounds") {
  EliminationTrace trace = iterate_two_firm(kOneThree, 1e-12, 200);
  const double factor = 1.0 / (kOneThree.gamma() * kOneThree.gamma());
  // find the first split round
  std::size_t split = 0;
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    if (trace.rounds[k][1].size() == 2) {
      split = k;
      break;
    }
  }
  REQUIRE(split > 0);
  const auto& gaps = trace.hausdorff_gaps;
  for (std::size_t k = split; k + 4 < gaps.size(); ++k) {
    if (gaps[k + 4] <= 1e-13) break;  // below measurement noise
    CHECK(gaps[k + 4] <= gaps[k] * factor * (1.0 + 1e-6) + 1e-15);
  }
}

TEST_CASE("symmetric two-firm iteration contracts to the center") {
  EliminationTrace trace = iterate_symmetric_two(1.0, 1e-9, 10'000);
  CHECK(trace.converged);
  check_set(trace.rounds[1][0], {{1.0 / 3.0, 2.0 / 3.0}});
  REQUIRE(trace.limit[0].size() == 1);
  CHECK(trace.limit[0].intervals()[0].is_point(1e-9));
  CHECK(trace.limit[0].min() == doctest::Approx(0.5).epsilon(1e-9));

  EliminationTrace two = iterate_symmetric_two(2.0);
  check_set(two.rounds[1][0], {{0.4, 0.6}});
  CHECK(hausdorff(two.limit[0], ChoiceSet::point(0.5)) <= 1e-8);
}

TEST_CASE("three-firm recurrence rounds") {
  ThreeFirmRoundState s0 = ThreeFirmRoundState::initial();
  ThreeFirmRoundState s1 = round_three_symmetric(s0, 1.0);
  CHECK(s1.u == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  check_set(s1.set(), {{1.0 / 6.0, 5.0 / 6.0}});

  ThreeFirmRoundState s2 = round_three_symmetric(s1, 1.0);
  CHECK(s2.u == doctest::Approx(55.0 / 72.0).epsilon(1e-15));
  check_set(s2.set(), {{17.0 / 72.0, 55.0 / 72.0}});

  // the fixed point maps to itself
  ThreeFirmRoundState fp{5.0 / 7.0, 0};
  CHECK(round_three_symmetric(fp, 1.0).u == doctest::Approx(5.0 / 7.0).epsilon(1e-15));

  ThreeFirmRoundState below{0.5, 0};
  CHECK_THROWS_AS(round_three_symmetric(below, 1.0), std::invalid_argument);
}

TEST_CASE("three-firm iteration hits the closed-form interval") {
  EliminationTrace trace = iterate_three_symmetric(1.0, 1e-12, 10'000);
  CHECK(trace.converged);
  CHECK(hausdorff(trace.limit[0], closed_form_limit_three(1.0)) <= 1e-9);
  CHECK(trace.limit[0].min() == doctest::Approx(2.0 / 7.0).epsilon(1e-9));
  CHECK(trace.limit[0].max() == doctest::Approx(5.0 / 7.0).epsilon(1e-9));

  // the gap to the fixed point decays by exactly the affine slope each round
  double a = 1.0;
  double slope = (3.0 + 2.0 * a) / (3.0 * (1.0 + a) * (1.0 + a));
  double p = (3.0 + 2.0 * a) / (4.0 + 3.0 * a);
  double u = 1.0;
  for (int k = 0; k < 30; ++k) {
    double next = round_three_symmetric({u, k}, a).u;
    CHECK(std::fabs((next - p) - slope * (u - p)) <= 1e-12);
    CHECK(next > p);
    u = next;
  }
}

TEST_CASE("three-firm closed forms at the ends of the inefficiency range") {
  ChoiceSet tiny = closed_form_limit_three(1e-9);
  CHECK(tiny.min() == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(tiny.max() == doctest::Approx(0.75).epsilon(1e-8));

  ChoiceSet big = closed_form_limit_three(100.0);
  CHECK(big.min() == doctest::Approx(101.0 / 304.0).epsilon(1e-12));
  CHECK(big.max() == doctest::Approx(203.0 / 304.0).epsilon(1e-12));

  ChoiceSet two = closed_form_limit_three(2.0);
  CHECK(two.min() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(two.max() == doctest::Approx(0.7).epsilon(1e-12));

  EliminationTrace iterated = iterate_three_symmetric(2.0, 1e-12);
  CHECK(hausdorff(iterated.limit[0], two) <= 1e-9);
}

TEST_CASE("closed-form two-firm limits") {
  ChoiceSet s = closed_form_limit_two(kOneThree);
  REQUIRE(s.size() == 2);
  CHECK(s.min() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(s.max() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  CHECK(closed_form_limit_two(ModelParams::two_firm(1.0, 1.0)) == ChoiceSet::point(0.5));

  ChoiceSet mid = closed_form_limit_two(ModelParams::two_firm(1.0, 2.0));
  CHECK(mid.min() == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(mid.max() == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("non-convergence reports a partial trace") {
  EliminationTrace trace = iterate_two_firm(kOneThree, 1e-9, 2);
  CHECK_FALSE(trace.converged);
  CHECK(trace.converged_at == -1);
  CHECK(trace.rounds.size() == 3);  // initial plus two rounds
}

TEST_CASE("pure Nash scan") {
  NashScan sym = pure_nash_two(ModelParams::two_firm(1.0, 1.0), 101);
  REQUIRE(sym.equilibrium.has_value());
  CHECK(sym.equilibrium->first == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sym.equilibrium->second == doctest::Approx(0.5).epsilon(1e-12));

  NashScan asym = pure_nash_two(kOneThree, 1000);
  CHECK_FALSE(asym.equilibrium.has_value());
  CHECK(asym.min_gap > 0.0);

  NashScan close = pure_nash_two(ModelParams::two_firm(1.0, 1.0001), 1000);
  CHECK_FALSE(close.equilibrium.has_value());
  CHECK(close.min_gap > 0.0);
  CHECK(close.min_gap < 1e-3);  // the gap shrinks with the inefficiency difference

  CHECK_THROWS_AS(pure_nash_two(kOneThree, 1), std::invalid_argument);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hotelling/market.hpp"

using namespace hotelling;

namespace {

MarketOutcome solve(std::vector<double> c, std::vector<double> a, double tol = 1e-12) {
  return solve_cuts(LocationProfile(std::move(c)), ModelParams(std::move(a)), tol);
}

}  // namespace

TEST_CASE("coincident symmetric firms split the market evenly") {
  MarketOutcome out = solve({0.4, 0.4}, {1.0, 1.0});
  CHECK(out.shares[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(out.shares[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(out.residual <= 1e-12);
}

TEST_CASE("coincident asymmetric firms split by waiting costs") {
  // s_1 = a_2 / (a_1 + a_2)
  MarketOutcome out = solve({0.2, 0.2}, {1.0, 3.0});
  CHECK(out.shares[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(out.shares[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("the efficient firm sitting at its own cut") {
  // c_1 = (c_2 + a_2) / (1 + a_1 + a_2) with c_2 = 0.9 puts the cut at c_1
  MarketOutcome out = solve({0.78, 0.9}, {1.0, 3.0});
  CHECK(out.cuts[1] == doctest::Approx(0.78).epsilon(1e-12));
  CHECK(out.shares[0] == doctest::Approx(0.78).epsilon(1e-12));
  CHECK(out.shares[1] == doctest::Approx(0.22).epsilon(1e-12));
}

TEST_CASE("three symmetric firms at the center get thirds") {
  MarketOutcome out = solve({0.5, 0.5, 0.5}, {1.0, 1.0, 1.0});
  for (double s : out.shares) CHECK(s == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("cuts are strictly increasing for distinct locations") {
  MarketOutcome out = solve({0.1, 0.45, 0.8}, {0.7, 2.0, 1.1});
  for (std::size_t k = 0; k + 1 < out.cuts.size(); ++k) CHECK(out.cuts[k] < out.cuts[k + 1]);
}

TEST_CASE("solver rejects bad inputs") {
  CHECK_THROWS_AS(solve({0.2, 0.4, 0.6}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams({1.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(LocationProfile({0.2, 1.4}), std::invalid_argument);
  CHECK_THROWS_AS(solve({0.2, 0.4}, {1.0, 2.0}, 0.0), std::invalid_argument);
}

TEST_CASE("consumer cost") {
  MarketOutcome out = solve({0.4, 0.4}, {1.0, 1.0});
  LocationProfile profile({0.4, 0.4});
  ModelParams params({1.0, 1.0});
  // zero travel: just the waiting term
  CHECK(consumer_cost(0.4, 0, profile, out, params) == doctest::Approx(0.5).epsilon(1e-12));

  MarketOutcome out2 = solve({0.78, 0.9}, {1.0, 3.0});
  LocationProfile profile2({0.78, 0.9});
  ModelParams params2({1.0, 3.0});
  CHECK(consumer_cost(0.0, 0, profile2, out2, params2) == doctest::Approx(1.56).epsilon(1e-12));
  // indifference at the cut
  double cut = out2.cuts[1];
  CHECK(consumer_cost(cut, 0, profile2, out2, params2) ==
        doctest::Approx(consumer_cost(cut, 1, profile2, out2, params2)).epsilon(1e-10));
  CHECK_THROWS_AS(consumer_cost(0.5, 2, profile2, out2, params2), std::invalid_argument);
  CHECK_THROWS_AS(consumer_cost(1.5, 0, profile2, out2, params2), std::invalid_argument);
}

TEST_CASE("assignment stability") {
  LocationProfile profile({0.2, 0.2});
  ModelParams params({1.0, 3.0});
  MarketOutcome out = solve_cuts(profile, params);
  CHECK(check_assignment_stability(profile, out, params, 1000) <= 1e-9);

  // corrupting the cut hands some consumers a strictly better deviation
  MarketOutcome bad = out;
  bad.cuts[1] += 0.1;
  bad.shares[0] = bad.cuts[1];
  bad.shares[1] = 1.0 - bad.cuts[1];
  CHECK(check_assignment_stability(profile, bad, params, 1000) > 0.01);

  LocationProfile center({0.5, 0.5});
  ModelParams ones({1.0, 1.0});
  MarketOutcome symmetric = solve_cuts(center, ones);
  CHECK(check_assignment_stability(center, symmetric, ones, 101) <= 1e-12);

  CHECK_THROWS_AS(check_assignment_stability(profile, out, params, 1), std::invalid_argument);
}

TEST_CASE("random instances: shares, residual, stability, symmetries") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_a(std::log(0.1), std::log(10.0));

  for (int t = 0; t < 300; ++t) {
    int n = 2 + t % 4;
    std::vector<double> c(static_cast<std::size_t>(n));
    std::vector<double> a(static_cast<std::size_t>(n));
    for (auto& v : c) v = unit(rng);
    for (auto& v : a) v = std::exp(log_a(rng));

    LocationProfile profile(c);
    ModelParams params(a);
    MarketOutcome out = solve_cuts(profile, params, 1e-10);

    double sum = 0.0;
    for (double s : out.shares) {
      CHECK(s >= 0.0);
      sum += s;
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-10);
    CHECK(out.residual <= 1e-10);
    for (std::size_t k = 0; k + 1 < out.cuts.size(); ++k) CHECK(out.cuts[k] <= out.cuts[k + 1]);
    CHECK(check_assignment_stability(profile, out, params, 64) <= 1e-9);

    // mirror: reflected locations with reversed coefficients reverse the shares
    std::vector<double> cm(c.rbegin(), c.rend());
    for (auto& v : cm) v = 1.0 - v;
    std::vector<double> am(a.rbegin(), a.rend());
    MarketOutcome mirrored = solve_cuts(LocationProfile(cm), ModelParams(am), 1e-10);
    for (int f = 0; f < n; ++f) {
      CHECK(std::fabs(out.shares[static_cast<std::size_t>(f)] -
                      mirrored.shares[static_cast<std::size_t>(n - 1 - f)]) <= 1e-9);
    }

    // permutation: shuffled input maps back to the same per-firm shares
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int f = 0; f < n; ++f) order[static_cast<std::size_t>(f)] = f;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> c2(static_cast<std::size_t>(n));
    std::vector<double> a2(static_cast<std::size_t>(n));
    for (int f = 0; f < n; ++f) {
      c2[static_cast<std::size_t>(f)] = c[static_cast<std::size_t>(order[static_cast<std::size_t>(f)])];
      a2[static_cast<std::size_t>(f)] = a[static_cast<std::size_t>(order[static_cast<std::size_t>(f)])];
    }
    MarketOutcome permuted = solve_cuts(LocationProfile(c2), ModelParams(a2), 1e-10);
    for (int f = 0; f < n; ++f) {
      CHECK(std::fabs(permuted.shares[static_cast<std::size_t>(f)] -
                      out.shares[static_cast<std::size_t>(order[static_cast<std::size_t>(f)])]) <=
            1e-12);
    }
  }
}

TEST_CASE("shares are Lipschitz in single-location perturbations") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_a(std::log(0.1), std::log(10.0));
  const double delta = 1e-6;

  for (int t = 0; t < 120; ++t) {
    int n = 2 + t % 4;
    std::vector<double> c(static_cast<std::size_t>(n));
    std::vector<double> a(static_cast<std::size_t>(n));
    for (auto& v : c) v = 0.01 + 0.98 * unit(rng);
    for (auto& v : a) v = std::exp(log_a(rng));

    MarketOutcome base = solve_cuts(LocationProfile(c), ModelParams(a), 1e-12);
    int moved = static_cast<int>(rng() % static_cast<unsigned>(n));
    std::vector<double> cp = c;
    cp[static_cast<std::size_t>(moved)] += delta;
    MarketOutcome bumped = solve_cuts(LocationProfile(cp), ModelParams(a), 1e-12);
    for (int f = 0; f < n; ++f) {
      CHECK(std::fabs(bumped.shares[static_cast<std::size_t>(f)] -
                      base.shares[static_cast<std::size_t>(f)]) <= 10.0 * delta);
    }
  }
}

TEST_CASE("permutation bookkeeping") {
  LocationProfile profile({0.9, 0.1, 0.5});
  CHECK(profile.permutation() == std::vector<int>{2, 0, 1});
  CHECK(profile.sorted() == std::vector<double>{0.1, 0.5, 0.9});

  // ties keep input order
  LocationProfile tied({0.5, 0.5});
  CHECK(tied.permutation() == std::vector<int>{0, 1});
}

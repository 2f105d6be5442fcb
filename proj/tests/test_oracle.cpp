#include <doctest.h>

#include <cmath>

#include "hotelling/oracle.hpp"
#include "hotelling/serialize.hpp"

using namespace hotelling;

namespace {

ChoiceSet points_as_set(const std::vector<double>& pts) {
  std::vector<Interval> ivs;
  for (double p : pts) ivs.push_back({p, p});
  return ChoiceSet::from_intervals(std::move(ivs));
}

}  // namespace

TEST_CASE("grid best response pins the two-firm optimum") {
  Grid grid(10'000);
  std::vector<double> pts =
      grid_best_response(0, {0.9}, ModelParams::two_firm(1.0, 3.0), grid);
  REQUIRE(!pts.empty());
  double nearest = 1.0;
  for (double p : pts) nearest = std::min(nearest, std::fabs(p - 0.78));
  CHECK(nearest <= grid.step() + 1e-12);
  CHECK(hausdorff(points_as_set(pts), ChoiceSet::point(0.78)) <= 2.0 * grid.step());
}

TEST_CASE("grid best response recovers the three-firm plateau") {
  Grid grid(2'000);
  std::vector<double> pts =
      grid_best_response(0, {1.0 / 3.0, 1.0}, ModelParams::symmetric(3, 1.0), grid);
  CHECK(hausdorff(points_as_set(pts), ChoiceSet(1.0 / 3.0, 5.0 / 6.0)) <= 2.0 * grid.step());
}

TEST_CASE("grid best response at the symmetric fixed point") {
  Grid grid(2'000);
  std::vector<double> pts =
      grid_best_response(0, {0.5}, ModelParams::two_firm(1.0, 1.0), grid);
  CHECK(hausdorff(points_as_set(pts), ChoiceSet::point(0.5)) <= 2.0 * grid.step());
}

TEST_CASE("grid best response honors restriction") {
  Grid grid(1'000);
  ChoiceSet window(0.0, 0.4);
  std::vector<double> pts =
      grid_best_response(0, {0.9}, ModelParams::two_firm(1.0, 3.0), grid, &window);
  for (double p : pts) CHECK(p <= 0.4 + 1e-12);
  // optimum 0.78 is cut off, so the restricted argmax hugs the window edge
  CHECK(pts.back() == doctest::Approx(0.4).epsilon(1e-12));

  CHECK_THROWS_AS(grid_best_response(0, {0.9, 0.1}, ModelParams::two_firm(1.0, 3.0), grid),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_best_response(2, {0.9}, ModelParams::two_firm(1.0, 3.0), grid),
                  std::invalid_argument);
}

TEST_CASE("grid elimination approaches the analytic rounds and limit (two firms)") {
  ModelParams params = ModelParams::two_firm(1.0, 3.0);
  Grid grid(500);
  GridEliminationResult res = grid_eliminate(params, 2, grid);
  CHECK(res.trace.converged);
  CHECK(res.share_evaluations > 0);

  // round 1 of firm 1 is close to [0.2, 0.8]
  CHECK(hausdorff(res.trace.rounds[1][0], ChoiceSet(0.2, 0.8)) <= 2.0 * grid.step());

  EliminationTrace analytic = iterate_two_firm(params);
  TraceComparison cmp = compare_traces(analytic, res.trace, grid);
  CHECK(cmp.limit_gap <= cmp.flag_threshold);
  CHECK(cmp.flagged_rounds.empty());
}

TEST_CASE("grid elimination matches analytic rounds at coarse resolution") {
  ModelParams params = ModelParams::two_firm(1.0, 3.0);
  Grid grid(100);
  GridEliminationResult res = grid_eliminate(params, 2, grid);
  EliminationTrace analytic = iterate_two_firm(params);
  TraceComparison cmp = compare_traces(analytic, res.trace, grid);
  for (double gap : cmp.round_gaps) CHECK(gap <= 2.0 / 100.0 + grid.eps_opt);
  CHECK(cmp.limit_gap <= 2.0 / 100.0 + grid.eps_opt);
}

TEST_CASE("grid elimination (symmetric two firms) collapses to the center") {
  ModelParams params = ModelParams::two_firm(1.0, 1.0);
  Grid grid(400);
  GridEliminationResult res = grid_eliminate(params, 2, grid);
  CHECK(hausdorff(res.trace.limit[0], ChoiceSet::point(0.5)) <= 2.0 * grid.step());
}

TEST_CASE("grid elimination (three symmetric firms)") {
  ModelParams params = ModelParams::symmetric(3, 1.0);
  Grid grid(150);
  GridEliminationResult res = grid_eliminate(params, 3, grid);
  CHECK(res.trace.converged);
  CHECK(hausdorff(res.trace.limit[0], closed_form_limit_three(1.0)) <= 2.0 * grid.step());

  // the surviving sets stay mirror-symmetric round by round
  for (const auto& row : res.trace.rounds) {
    CHECK(hausdorff(row[0], mirror(row[0])) <= 1e-12);
  }
}

TEST_CASE("grid elimination is deterministic") {
  ModelParams params = ModelParams::two_firm(1.0, 1.4);
  Grid grid(200);
  GridEliminationResult a = grid_eliminate(params, 2, grid);
  GridEliminationResult b = grid_eliminate(params, 2, grid);
  CHECK(serialize_trace(a.trace, OutputFormat::kJson) ==
        serialize_trace(b.trace, OutputFormat::kJson));
}

TEST_CASE("halving eps_opt while doubling the grid keeps the limit") {
  ModelParams params = ModelParams::two_firm(1.0, 3.0);
  Grid coarse(150, kDefaultEpsOpt);
  Grid fine(300, kDefaultEpsOpt / 2.0);
  GridEliminationResult rc = grid_eliminate(params, 2, coarse);
  GridEliminationResult rf = grid_eliminate(params, 2, fine);
  for (int f = 0; f < 2; ++f) {
    CHECK(hausdorff(rc.trace.limit[static_cast<std::size_t>(f)],
                    rf.trace.limit[static_cast<std::size_t>(f)]) <= 2.0 * coarse.step());
  }
}

TEST_CASE("unrestricted best responses stay inside the surviving sets") {
  GridEliminationResult two =
      grid_eliminate(ModelParams::two_firm(1.0, 3.0), 2, Grid(150), 200, true);
  CHECK(two.unrestricted_escapes == 0);
  GridEliminationResult three =
      grid_eliminate(ModelParams::symmetric(3, 1.0), 3, Grid(120), 200, true);
  CHECK(three.unrestricted_escapes == 0);
}

TEST_CASE("grid elimination preconditions") {
  CHECK_THROWS_AS(grid_eliminate(ModelParams::two_firm(1.0, 3.0), 3, Grid(200)),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_eliminate(ModelParams::two_firm(1.0, 3.0), 2, Grid(50)),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_eliminate(ModelParams({1.0, 1.0, 2.0}), 3, Grid(200)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Grid(1), std::invalid_argument);
  CHECK_THROWS_AS(Grid(100, -1.0), std::invalid_argument);
}

TEST_CASE("compare_traces") {
  EliminationTrace analytic = iterate_three_symmetric(1.0);
  Grid grid(120);
  GridEliminationResult res = grid_eliminate(ModelParams::symmetric(3, 1.0), 3, grid);
  TraceComparison cmp = compare_traces(analytic, res.trace, grid);
  CHECK(cmp.limit_gap <= cmp.flag_threshold);

  TraceComparison self = compare_traces(analytic, analytic, grid);
  CHECK(self.limit_gap == 0.0);
  for (double g : self.round_gaps) CHECK(g == 0.0);

  EliminationTrace two_firm = iterate_two_firm(ModelParams::two_firm(1.0, 3.0));
  CHECK_THROWS_AS(compare_traces(two_firm, analytic, grid), std::invalid_argument);
}

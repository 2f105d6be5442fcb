#pragma once

#include <cstdint>
#include <vector>

#include "hotelling/choice_set.hpp"
#include "hotelling/elimination.hpp"
#include "hotelling/market.hpp"

namespace hotelling {

/// Share slack for grid argmax sets. Absolute, well above the cut solver's
/// noise floor and far below any share difference the grid can resolve, so
/// exact plateaus survive whole while everything else keeps only the grid
/// optimum.
inline constexpr double kDefaultEpsOpt = 1e-7;

/// Uniform discretization of [0,1] into m+1 points j/m.
struct Grid {
  int m = 1000;
  double eps_opt = kDefaultEpsOpt;

  Grid() = default;
  Grid(int m_, double eps = kDefaultEpsOpt);

  double step() const { return 1.0 / m; }
  double point(int j) const { return static_cast<double>(j) / m; }
};

/// Brute-force best response: evaluates the share of `firm` (input index) at
/// every grid point (intersected with restrict_to when given) against the
/// fixed opponent locations, and returns every point within eps_opt of the
/// maximum.
std::vector<double> grid_best_response(int firm, const std::vector<double>& opponents,
                                       const ModelParams& params, const Grid& grid,
                                       const ChoiceSet* restrict_to = nullptr);

struct GridEliminationResult {
  EliminationTrace trace;
  std::int64_t share_evaluations = 0;
  /// Rounds in which some unrestricted grid best response escaped the
  /// surviving set (only counted when the check is enabled). The analytic
  /// engine relies on this never happening.
  int unrestricted_escapes = 0;
};

/// Literal grid form of the iterative elimination: each round keeps exactly
/// the surviving grid points that are eps_opt-optimal within the surviving set
/// against at least one combination of surviving opponent locations. The
/// three-firm case enumerates only the reduced belief domain and mirrors the
/// survivors. Terminates when a round removes nothing.
GridEliminationResult grid_eliminate(const ModelParams& params, int n_firms, const Grid& grid,
                                     int max_rounds = 200, bool check_unrestricted = false);

struct TraceComparison {
  std::vector<double> round_gaps;   // max over firms, per compared round
  double limit_gap = 0.0;
  double flag_threshold = 0.0;      // 2 * grid step + eps_opt
  std::vector<int> flagged_rounds;  // rounds whose gap exceeds the threshold

  bool ok() const { return flagged_rounds.empty() && limit_gap <= flag_threshold; }
};

/// Per-round and limit Hausdorff distances between an analytic trace and a
/// grid trace computed for the same parameters.
TraceComparison compare_traces(const EliminationTrace& analytic, const EliminationTrace& grid_trace,
                               const Grid& grid);

}  // namespace hotelling

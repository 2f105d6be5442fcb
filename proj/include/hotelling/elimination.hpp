#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hotelling/choice_set.hpp"
#include "hotelling/market.hpp"

namespace hotelling {

inline constexpr double kDefaultEliminationTol = 1e-9;
inline constexpr int kDefaultMaxRounds = 10'000;

/// Surviving sets of both firms after round k (asymmetric two-firm case,
/// internal orientation a_1 < a_2). Both sets stay symmetric about 1/2.
struct TwoFirmRoundState {
  ChoiceSet p1;
  ChoiceSet p2;
  int round = 0;

  static TwoFirmRoundState initial() { return {ChoiceSet::full(), ChoiceSet::full(), 0}; }

  double l1() const { return p1.min(); }
  double l2() const { return p2.min(); }
  bool split() const { return p2.size() == 2; }
};

/// One elimination round. Firm 1 either copies the opponent set (once
/// min P_2 >= a1/(a1+a2)) or applies the interval image [(l2+a1)/g, (u2+a2)/g];
/// firm 2 applies the three-case interval update keyed on l1, or the two-piece
/// image map once its set has split.
TwoFirmRoundState round_two_firm(const TwoFirmRoundState& state, const ModelParams& params);

/// Symmetric-around-1/2 interval [1-U^k, U^k] for the three-firm case.
struct ThreeFirmRoundState {
  double u = 1.0;
  int round = 0;

  static ThreeFirmRoundState initial() { return {1.0, 0}; }
  ChoiceSet set() const { return ChoiceSet(1.0 - u, u); }
};

/// U^k = (3+2a)(a + U^{k-1}) / (3(1+a)^2). Requires U^{k-1} above the fixed
/// point (3+2a)/(4+3a); anything below signals a corrupted state.
ThreeFirmRoundState round_three_symmetric(const ThreeFirmRoundState& state, double a);

/// Full elimination history: per-round per-firm surviving sets, the reported
/// limit, and convergence metadata. rounds[0] holds the initial full sets.
struct EliminationTrace {
  int n_firms = 0;
  std::vector<std::vector<ChoiceSet>> rounds;
  std::vector<ChoiceSet> limit;
  std::vector<double> hausdorff_gaps;  // gap between rounds k and k+1
  int converged_at = -1;
  bool converged = false;
};

/// Iterates the two-firm rounds until the Hausdorff gap between successive
/// rounds is <= tol. Accepts either orientation of (a_1, a_2) and relabels the
/// output; equal coefficients belong to iterate_symmetric_two. Intervals of
/// width <= tol collapse to points in the reported limit. Hitting max_rounds
/// returns a partial trace with converged = false.
EliminationTrace iterate_two_firm(const ModelParams& params, double tol = kDefaultEliminationTol,
                                  int max_rounds = kDefaultMaxRounds);

/// Equal-inefficiency two-firm iteration: the interval contraction
/// [l,u] -> [(l+a)/(1+2a), (u+a)/(1+2a)], limit {1/2}.
EliminationTrace iterate_symmetric_two(double a, double tol = kDefaultEliminationTol,
                                       int max_rounds = kDefaultMaxRounds);

/// Three-firm symmetric iteration of the U^k recurrence, limit
/// [(1+a)/(4+3a), (3+2a)/(4+3a)].
EliminationTrace iterate_three_symmetric(double a, double tol = kDefaultEliminationTol,
                                         int max_rounds = kDefaultMaxRounds);

/// {(a1+1)/(a1+a2+2), (a2+1)/(a1+a2+2)} for a_1 != a_2, {1/2} otherwise.
ChoiceSet closed_form_limit_two(const ModelParams& params);

/// [(1+a)/(4+3a), (3+2a)/(4+3a)].
ChoiceSet closed_form_limit_three(double a);

/// Result of the best-response intersection scan. `min_gap` is the smallest
/// distance found between firm 2's response to c_1 and the set of locations
/// whose firm-1 response is c_1; an equilibrium needs gap zero.
struct NashScan {
  std::optional<std::pair<double, double>> equilibrium;
  double min_gap = 0.0;
  double c1_at_min = 0.0;
};

NashScan pure_nash_two(const ModelParams& params, int scan_n);

}  // namespace hotelling

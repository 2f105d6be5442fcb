#pragma once

#include <vector>

#include "hotelling/choice_set.hpp"
#include "hotelling/market.hpp"

namespace hotelling {

/// Set of optimal locations: either finitely many points or one closed
/// interval (the between-the-opponents plateau of the three-firm case).
struct ResponseSet {
  enum class Kind { kPoints, kInterval };

  Kind kind = Kind::kPoints;
  std::vector<double> points;  // sorted, deduplicated
  Interval interval{};

  static ResponseSet single(double x) { return {Kind::kPoints, {x}, {}}; }
  static ResponseSet two(double x, double y);
  static ResponseSet range(double lo, double hi) { return {Kind::kInterval, {}, {lo, hi}}; }

  double min() const;
  double max() const;
  bool is_singleton(double tol = 0.0) const;
  ChoiceSet as_choice_set() const;
};

ResponseSet mirror(const ResponseSet& r);

/// Belief about the two opponents in the reduced domain
/// c_l <= c_r and c_l >= 1 - c_r.
struct BeliefRegion {
  double c_l = 0.0;
  double c_r = 0.0;

  BeliefRegion(double l, double r);
};

struct NormalizedBelief {
  BeliefRegion region;
  bool mirrored = false;
};

/// Sorts the pair and reflects it into the reduced domain when needed. A
/// reflected query must have its response mirrored back by the caller.
NormalizedBelief normalize_belief(double c_l, double c_r);

/// Firm 1's best response to c2 (two firms, a_1 < a_2): piecewise
/// (c2+a1)/gamma, c2, (c2+a2)/gamma. Continuous; always a single point.
ResponseSet reaction_firm1_two(double c2, const ModelParams& params);

/// Firm 2's best response to c1 (two firms, a_1 < a_2). Single point except
/// exactly at c1 = 1/2 where both (1/2+a1)/gamma and (1/2+a2)/gamma are
/// optimal; inputs within 1e-12 of 1/2 are snapped there.
ResponseSet reaction_firm2_two(double c1, const ModelParams& params);

/// Equal-inefficiency two-firm response (c_j + a) / (1 + 2a).
ResponseSet reaction_symmetric_two(double cj, double a);

/// Case-boundary constants of the three-firm reaction correspondence.
struct ThreeFirmBoundaries {
  double cr_far_pair_min;        // (1+2a)/(1+3a): both opponents far right
  double cr_straddle_min;        // (3+2a)/(4+3a): between-the-pair region opens
  double cr_near_pair_max;       // (1+4a+2a^2)/(2+7a+3a^2)
  double cl_far_pair_min_at_one;   // (1+3a+2a^2)/(1+3a+3a^2): c_l bound at c_r=1
  double cl_straddle_max_at_one;   // (a+1)/(3+3a) = 1/3
  double cl_smallest_response;     // (1+a)/(4+3a)
  double cl_near_pair_companion;   // (1+3a+a^2)/(2+7a+3a^2) = 1 - cr_near_pair_max
};

ThreeFirmBoundaries region_boundaries_three(double a);

/// Best response of a firm facing two equally inefficient opponents at
/// (c_l, c_r) in the reduced belief domain. Returns a single point when it is
/// optimal to sit left of c_l, or the flat interval [c*, c**] when locating
/// between the opponents is optimal. On case boundaries the adjacent branches
/// agree; their union is returned after deduplication at 1e-9.
ResponseSet reaction_three_symmetric(const BeliefRegion& belief, double a);

/// Indices (1..7) of the correspondence branches whose region contains the
/// belief. Exposed for the exhaustiveness checks.
std::vector<int> three_firm_accepting_cases(const BeliefRegion& belief, double a);

}  // namespace hotelling

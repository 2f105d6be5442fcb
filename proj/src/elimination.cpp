#include "hotelling/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hotelling/reaction.hpp"

namespace hotelling {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kContainTol = 1e-12;
constexpr double kEquilibriumTol = 1e-12;

void require_symmetric_about_half(const ChoiceSet& s, const char* label) {
  const auto& ivs = s.intervals();
  const std::size_t n = ivs.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Interval& iv = ivs[k];
    const Interval& opp = ivs[n - 1 - k];
    if (std::fabs(iv.lo - (1.0 - opp.hi)) > kSymmetryTol ||
        std::fabs(iv.hi - (1.0 - opp.lo)) > kSymmetryTol)
      throw std::invalid_argument(std::string(label) + " set lost its symmetry about 1/2");
  }
}

ChoiceSet step_firm1(const ChoiceSet& p2, const ModelParams& params) {
  const double a1 = params.a(0);
  const double a2 = params.a(1);
  const double g = params.gamma();
  if (p2.min() >= a1 / (a1 + a2)) return p2;  // copy rule
  if (p2.size() != 1)
    throw std::logic_error("split opponent set with min below a1/(a1+a2) cannot occur");
  const Interval iv = p2.intervals().front();
  return ChoiceSet((iv.lo + a1) / g, (iv.hi + a2) / g);
}

ChoiceSet step_firm2(const ChoiceSet& p1, const ModelParams& params) {
  const double a1 = params.a(0);
  const double a2 = params.a(1);
  const double g = params.gamma();
  if (p1.size() == 2) {
    const Interval lower = p1.intervals()[0];
    const Interval upper = p1.intervals()[1];
    if (!(lower.hi < 0.5 && upper.lo > 0.5))
      throw std::invalid_argument("split set must straddle 1/2");
    return ChoiceSet::from_intervals({{(upper.lo + a1) / g, (upper.hi + a1) / g},
                                      {(lower.lo + a2) / g, (lower.hi + a2) / g}});
  }
  const Interval iv = p1.intervals().front();
  const double l1 = iv.lo;
  const double u1 = iv.hi;
  const double span_all = 0.5 - (a2 - a1);
  const double span_half = 0.5 - 0.5 * (a2 - a1);
  if (l1 < span_all) return ChoiceSet((l1 + a2) / g, (u1 + a1) / g);
  if (l1 <= span_half) return ChoiceSet((0.5 + a1) / g, (0.5 + a2) / g);
  return ChoiceSet::from_intervals(
      {{(0.5 + a1) / g, (u1 + a1) / g}, {(l1 + a2) / g, (0.5 + a2) / g}});
}

}  // namespace

TwoFirmRoundState round_two_firm(const TwoFirmRoundState& state, const ModelParams& params) {
  if (params.n() != 2) throw std::invalid_argument("two-firm round needs exactly two firms");
  if (!(params.a(0) < params.a(1)))
    throw std::invalid_argument("round_two_firm requires a_1 < a_2");
  if (state.p1.empty() || state.p2.empty()) throw std::invalid_argument("empty surviving set");
  require_symmetric_about_half(state.p1, "firm 1");
  require_symmetric_about_half(state.p2, "firm 2");

  TwoFirmRoundState next;
  next.p1 = step_firm1(state.p2, params);
  next.p2 = step_firm2(state.p1, params);
  next.round = state.round + 1;
  return next;
}

ThreeFirmRoundState round_three_symmetric(const ThreeFirmRoundState& state, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("inefficiency must be positive");
  const double fixed_point = (3.0 + 2.0 * a) / (4.0 + 3.0 * a);
  if (state.u < fixed_point - kSymmetryTol || state.u > 1.0 + kSymmetryTol)
    throw std::invalid_argument("upper endpoint left (fixed point, 1]; state is corrupted");
  ThreeFirmRoundState next;
  next.u = (3.0 + 2.0 * a) * (a + state.u) / (3.0 * (1.0 + a) * (1.0 + a));
  next.round = state.round + 1;
  return next;
}

namespace {

void check_shrinkage(const std::vector<ChoiceSet>& prev, const std::vector<ChoiceSet>& next) {
  for (std::size_t f = 0; f < prev.size(); ++f) {
    if (!prev[f].contains(next[f], kContainTol))
      throw std::logic_error("round escaped the previous surviving set");
  }
}

double round_gap(const std::vector<ChoiceSet>& prev, const std::vector<ChoiceSet>& next) {
  double gap = 0.0;
  for (std::size_t f = 0; f < prev.size(); ++f) gap = std::max(gap, hausdorff(prev[f], next[f]));
  return gap;
}

void finalize(EliminationTrace& trace, double tol) {
  trace.limit.clear();
  for (const auto& s : trace.rounds.back()) trace.limit.push_back(collapse_narrow(s, tol));
  if (trace.converged) trace.converged_at = static_cast<int>(trace.rounds.size()) - 1;
}

}  // namespace

EliminationTrace iterate_two_firm(const ModelParams& params, double tol, int max_rounds) {
  if (params.n() != 2) throw std::invalid_argument("two-firm iteration needs exactly two firms");
  if (params.a(0) == params.a(1))
    throw std::invalid_argument("equal coefficients: use iterate_symmetric_two");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be positive");

  const bool swapped = params.a(0) > params.a(1);
  const ModelParams oriented =
      swapped ? ModelParams::two_firm(params.a(1), params.a(0)) : params;

  EliminationTrace trace;
  trace.n_firms = 2;
  TwoFirmRoundState state = TwoFirmRoundState::initial();
  trace.rounds.push_back({state.p1, state.p2});
  for (int k = 1; k <= max_rounds; ++k) {
    TwoFirmRoundState next = round_two_firm(state, oriented);
    std::vector<ChoiceSet> row{next.p1, next.p2};
    check_shrinkage(trace.rounds.back(), row);
    double gap = round_gap(trace.rounds.back(), row);
    trace.rounds.push_back(std::move(row));
    trace.hausdorff_gaps.push_back(gap);
    state = next;
    if (gap <= tol) {
      trace.converged = true;
      break;
    }
  }
  finalize(trace, tol);
  if (swapped) {
    for (auto& row : trace.rounds) std::swap(row[0], row[1]);
    std::swap(trace.limit[0], trace.limit[1]);
  }
  return trace;
}

EliminationTrace iterate_symmetric_two(double a, double tol, int max_rounds) {
  if (!(a > 0.0)) throw std::invalid_argument("inefficiency must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be positive");

  EliminationTrace trace;
  trace.n_firms = 2;
  double lo = 0.0;
  double hi = 1.0;
  trace.rounds.push_back({ChoiceSet(lo, hi), ChoiceSet(lo, hi)});
  const double den = 1.0 + 2.0 * a;
  for (int k = 1; k <= max_rounds; ++k) {
    double nlo = (lo + a) / den;
    double nhi = (hi + a) / den;
    double gap = std::max(std::fabs(nlo - lo), std::fabs(nhi - hi));
    lo = nlo;
    hi = nhi;
    trace.rounds.push_back({ChoiceSet(lo, hi), ChoiceSet(lo, hi)});
    trace.hausdorff_gaps.push_back(gap);
    if (gap <= tol) {
      trace.converged = true;
      break;
    }
  }
  finalize(trace, tol);
  return trace;
}

EliminationTrace iterate_three_symmetric(double a, double tol, int max_rounds) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be positive");

  EliminationTrace trace;
  trace.n_firms = 3;
  ThreeFirmRoundState state = ThreeFirmRoundState::initial();
  auto row_of = [](const ThreeFirmRoundState& s) {
    return std::vector<ChoiceSet>(3, s.set());
  };
  trace.rounds.push_back(row_of(state));
  for (int k = 1; k <= max_rounds; ++k) {
    ThreeFirmRoundState next = round_three_symmetric(state, a);
    double gap = std::fabs(next.u - state.u);
    state = next;
    trace.rounds.push_back(row_of(state));
    trace.hausdorff_gaps.push_back(gap);
    if (gap <= tol) {
      trace.converged = true;
      break;
    }
  }
  finalize(trace, tol);
  return trace;
}

ChoiceSet closed_form_limit_two(const ModelParams& params) {
  if (params.n() != 2) throw std::invalid_argument("closed form needs exactly two firms");
  const double a1 = params.a(0);
  const double a2 = params.a(1);
  if (a1 == a2) return ChoiceSet::point(0.5);
  const double den = a1 + a2 + 2.0;
  return ChoiceSet::from_intervals(
      {{(std::min(a1, a2) + 1.0) / den, (std::min(a1, a2) + 1.0) / den},
       {(std::max(a1, a2) + 1.0) / den, (std::max(a1, a2) + 1.0) / den}});
}

ChoiceSet closed_form_limit_three(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("inefficiency must be positive");
  return ChoiceSet((1.0 + a) / (4.0 + 3.0 * a), (3.0 + 2.0 * a) / (4.0 + 3.0 * a));
}

NashScan pure_nash_two(const ModelParams& params, int scan_n) {
  if (params.n() != 2) throw std::invalid_argument("pure Nash scan needs exactly two firms");
  if (scan_n < 2) throw std::invalid_argument("scan_n must be at least 2");

  const bool swapped = params.a(0) > params.a(1);
  const double a1 = std::min(params.a(0), params.a(1));
  const double a2 = std::max(params.a(0), params.a(1));
  const bool symmetric = a1 == a2;
  const double g = 1.0 + a1 + a2;

  std::vector<double> scan(static_cast<std::size_t>(scan_n));
  for (int i = 0; i < scan_n; ++i)
    scan[static_cast<std::size_t>(i)] = static_cast<double>(i) / (scan_n - 1);
  scan.push_back(0.5);  // the two-valued point must be probed exactly

  NashScan result;
  result.min_gap = std::numeric_limits<double>::infinity();
  for (double c1 : scan) {
    std::vector<double> responses;
    if (symmetric) {
      responses = {(c1 + a1) / (1.0 + 2.0 * a1)};
    } else {
      const ModelParams oriented = ModelParams::two_firm(a1, a2);
      responses = reaction_firm2_two(c1, oriented).points;
    }

    // Locations c2 whose firm-1 best response is exactly c1, by inverting the
    // reaction branches on their validity windows.
    std::vector<double> preimages;
    if (symmetric) {
      double b = (1.0 + 2.0 * a1) * c1 - a1;
      if (b >= 0.0 && b <= 1.0) preimages.push_back(b);
    } else {
      const double lo_break = a1 / (a1 + a2);
      const double hi_break = a2 / (a1 + a2);
      double b1 = g * c1 - a1;
      if (b1 >= 0.0 && b1 < lo_break) preimages.push_back(b1);
      if (c1 >= lo_break && c1 <= hi_break) preimages.push_back(c1);
      double b3 = g * c1 - a2;
      if (b3 > hi_break && b3 <= 1.0) preimages.push_back(b3);
    }
    if (preimages.empty()) continue;

    for (double r : responses) {
      for (double b : preimages) {
        double gap = std::fabs(r - b);
        if (gap < result.min_gap) {
          result.min_gap = gap;
          result.c1_at_min = c1;
          if (gap <= kEquilibriumTol) {
            result.equilibrium = swapped ? std::make_pair(r, c1) : std::make_pair(c1, r);
          }
        }
      }
    }
  }
  return result;
}

}  // namespace hotelling

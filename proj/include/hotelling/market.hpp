#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace hotelling {

/// Raised when an iterative routine exhausts its step budget. The cut solver
/// always has a unique solution, so seeing this from solve_cuts means a bug,
/// not a hard input.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-firm waiting-cost coefficients a_i > 0.
class ModelParams {
 public:
  explicit ModelParams(std::vector<double> inefficiencies);

  static ModelParams two_firm(double a1, double a2) { return ModelParams({a1, a2}); }
  static ModelParams symmetric(int n, double a);

  int n() const { return static_cast<int>(a_.size()); }
  const std::vector<double>& inefficiencies() const { return a_; }
  double a(int firm) const;

  /// 1 + a_1 + a_2. Only defined for two firms.
  double gamma() const;

 private:
  std::vector<double> a_;
};

/// Firm positions on [0,1] in caller order, plus the stable-sort permutation.
/// permutation()[i] is the rank of input firm i in the sorted view; ties keep
/// input order.
class LocationProfile {
 public:
  explicit LocationProfile(std::vector<double> locations);

  int n() const { return static_cast<int>(locs_.size()); }
  const std::vector<double>& locations() const { return locs_; }
  const std::vector<double>& sorted() const { return sorted_; }
  const std::vector<int>& permutation() const { return perm_; }

 private:
  std::vector<double> locs_;
  std::vector<double> sorted_;
  std::vector<int> perm_;
};

/// Indifference cuts x_0=0 <= x_1 <= ... <= x_n=1 (sorted-firm order) and the
/// per-firm shares mapped back to input order.
struct MarketOutcome {
  std::vector<double> cuts;
  std::vector<double> shares;
  double residual = 0.0;
};

inline constexpr double kDefaultCutTol = 1e-12;
inline constexpr int kMaxBisectionSteps = 200;

/// Solves the consumer-indifference system for the cut points and shares.
/// Shooting on x_1 with bisection; the forward propagation is linear row by
/// row, and the terminal value x_n is strictly increasing in x_1, so the
/// bracket [0,1] always contains the unique root.
MarketOutcome solve_cuts(const LocationProfile& profile, const ModelParams& params,
                         double tol = kDefaultCutTol);

/// Total cost |c_firm - x| + a_firm * s_firm for a consumer at x buying from
/// `firm` (input index).
double consumer_cost(double x, int firm, const LocationProfile& profile,
                     const MarketOutcome& outcome, const ModelParams& params);

/// Max over grid_n uniformly spaced consumers of (cost at assigned firm minus
/// cheapest cost over all firms). Non-positive up to solver noise for a valid
/// outcome.
double check_assignment_stability(const LocationProfile& profile, const MarketOutcome& outcome,
                                  const ModelParams& params, int grid_n);

namespace detail {

/// Allocation-free kernel on pre-sorted inputs. `cuts` must have n+1 slots;
/// on return cuts[0]=0, cuts[n]=1 and the interior cuts satisfy the system
/// within `tol` (max row violation, cost units).
void solve_cuts_sorted(std::span<const double> c, std::span<const double> a, double tol,
                       std::span<double> cuts);

/// Max absolute violation of the indifference system at the given cuts.
double eq_residual(std::span<const double> c, std::span<const double> a,
                   std::span<const double> cuts);

}  // namespace detail

}  // namespace hotelling

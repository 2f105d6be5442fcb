#include "hotelling/market.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hotelling {

ModelParams::ModelParams(std::vector<double> inefficiencies) : a_(std::move(inefficiencies)) {
  if (a_.size() < 2) throw std::invalid_argument("need at least two firms");
  for (double ai : a_) {
    if (!(ai > 0.0) || !std::isfinite(ai))
      throw std::invalid_argument("inefficiency coefficients must be positive");
  }
}

ModelParams ModelParams::symmetric(int n, double a) {
  if (n < 2) throw std::invalid_argument("need at least two firms");
  return ModelParams(std::vector<double>(static_cast<std::size_t>(n), a));
}

double ModelParams::a(int firm) const {
  if (firm < 0 || firm >= n()) throw std::invalid_argument("firm index out of range");
  return a_[static_cast<std::size_t>(firm)];
}

double ModelParams::gamma() const {
  if (n() != 2) throw std::invalid_argument("gamma is a two-firm constant");
  return 1.0 + a_[0] + a_[1];
}

LocationProfile::LocationProfile(std::vector<double> locations) : locs_(std::move(locations)) {
  if (locs_.size() < 2) throw std::invalid_argument("need at least two locations");
  for (double c : locs_) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("locations must lie in [0,1]");
  }
  std::vector<int> order(locs_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return locs_[static_cast<std::size_t>(i)] < locs_[static_cast<std::size_t>(j)];
  });
  perm_.resize(locs_.size());
  sorted_.resize(locs_.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    perm_[static_cast<std::size_t>(order[rank])] = static_cast<int>(rank);
    sorted_[rank] = locs_[static_cast<std::size_t>(order[rank])];
  }
}

namespace detail {

namespace {

// Forward pass of the indifference system: row k is linear in cuts[k+1] given
// cuts[k-1], cuts[k]. Returns the unclamped terminal value; the stored cuts
// are only meaningful once x1 is the root.
double propagate(std::span<const double> c, std::span<const double> a, double x1,
                 std::span<double> cuts) {
  const std::size_t n = c.size();
  cuts[0] = 0.0;
  cuts[1] = x1;
  double prev = 0.0;
  double cur = x1;
  for (std::size_t k = 1; k < n; ++k) {
    double next = cur + (std::fabs(c[k - 1] - cur) + a[k - 1] * (cur - prev) -
                         std::fabs(c[k] - cur)) /
                            a[k];
    cuts[k + 1] = next;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double eq_residual(std::span<const double> c, std::span<const double> a,
                   std::span<const double> cuts) {
  const std::size_t n = c.size();
  double worst = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    double lhs = std::fabs(c[k - 1] - cuts[k]) + a[k - 1] * (cuts[k] - cuts[k - 1]);
    double rhs = std::fabs(c[k] - cuts[k]) + a[k] * (cuts[k + 1] - cuts[k]);
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

void solve_cuts_sorted(std::span<const double> c, std::span<const double> a, double tol,
                       std::span<double> cuts) {
  const std::size_t n = c.size();
  if (a.size() != n || cuts.size() != n + 1) throw std::invalid_argument("dimension mismatch");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  const double a_last = a[n - 1];
  double lo = 0.0;
  double hi = 1.0;
  double best_x1 = 0.5;
  double best_err = std::numeric_limits<double>::infinity();
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    double mid = 0.5 * (lo + hi);
    double g = propagate(c, a, mid, cuts) - 1.0;
    double err = a_last * std::fabs(g);
    if (err < best_err) {
      best_err = err;
      best_x1 = mid;
    }
    if (err <= 0.5 * tol) break;
    if (g < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= std::numeric_limits<double>::epsilon() * 0.25) break;
  }

  propagate(c, a, best_x1, cuts);
  cuts[n] = 1.0;
  for (std::size_t k = 1; k < n; ++k) cuts[k] = std::clamp(cuts[k], 0.0, 1.0);
  if (eq_residual(c, a, cuts) > tol)
    throw NonConvergenceError("cut solver missed tolerance; the system always has a solution");
}

}  // namespace detail

MarketOutcome solve_cuts(const LocationProfile& profile, const ModelParams& params, double tol) {
  if (profile.n() != params.n()) throw std::invalid_argument("profile/params dimension mismatch");
  const std::size_t n = static_cast<std::size_t>(profile.n());

  std::vector<double> a_sorted(n);
  for (std::size_t i = 0; i < n; ++i)
    a_sorted[static_cast<std::size_t>(profile.permutation()[i])] = params.a(static_cast<int>(i));

  MarketOutcome out;
  out.cuts.resize(n + 1);
  detail::solve_cuts_sorted(profile.sorted(), a_sorted, tol, out.cuts);
  out.residual = detail::eq_residual(profile.sorted(), a_sorted, out.cuts);

  out.shares.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int rank = profile.permutation()[i];
    out.shares[i] = out.cuts[static_cast<std::size_t>(rank) + 1] -
                    out.cuts[static_cast<std::size_t>(rank)];
  }
  return out;
}

double consumer_cost(double x, int firm, const LocationProfile& profile,
                     const MarketOutcome& outcome, const ModelParams& params) {
  if (firm < 0 || firm >= profile.n()) throw std::invalid_argument("firm index out of range");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("consumer position outside [0,1]");
  return std::fabs(profile.locations()[static_cast<std::size_t>(firm)] - x) +
         params.a(firm) * outcome.shares[static_cast<std::size_t>(firm)];
}

double check_assignment_stability(const LocationProfile& profile, const MarketOutcome& outcome,
                                  const ModelParams& params, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
  const int n = profile.n();
  std::vector<int> input_of_rank(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    input_of_rank[static_cast<std::size_t>(profile.permutation()[static_cast<std::size_t>(i)])] = i;

  double worst = 0.0;
  for (int t = 0; t < grid_n; ++t) {
    double x = static_cast<double>(t) / (grid_n - 1);
    int rank = 0;
    while (rank + 1 < n && x > outcome.cuts[static_cast<std::size_t>(rank) + 1]) ++rank;
    double assigned = consumer_cost(x, input_of_rank[static_cast<std::size_t>(rank)], profile,
                                    outcome, params);
    double cheapest = assigned;
    for (int f = 0; f < n; ++f)
      cheapest = std::min(cheapest, consumer_cost(x, f, profile, outcome, params));
    worst = std::max(worst, assigned - cheapest);
  }
  return worst;
}

}  // namespace hotelling

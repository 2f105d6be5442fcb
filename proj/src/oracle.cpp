#include "hotelling/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace hotelling {

namespace {

// Bisection depth for the batched shooting kernels. The terminal bracket is
// ~1e-12, far below the eps_opt slack even after slope amplification.
constexpr int kShootIters = 40;
constexpr double kOracleSolveTol = 1e-11;
constexpr double kRestrictTol = 1e-12;

// Two-firm share sweep: lockstep bisection over a block of own-location
// candidates against one opponent location. kOwnLeft fixes the sorted order
// so the inner loop is branch-free and the lanes run SIMD-parallel.
template <bool kOwnLeft>
void batch_share2(const double* __restrict own, int count, double opp, double a_own, double a_opp,
                  double* __restrict share) {
  constexpr int kBlock = 16;
  const double a_left = kOwnLeft ? a_own : a_opp;
  const double inv = 1.0 / (kOwnLeft ? a_opp : a_own);

  int i = 0;
  for (; i + kBlock <= count; i += kBlock) {
    double lo[kBlock];
    double hi[kBlock];
    double x[kBlock];
    for (int w = 0; w < kBlock; ++w) {
      lo[w] = 0.0;
      hi[w] = 1.0;
      x[w] = own[i + w];
    }
    for (int it = 0; it < kShootIters; ++it) {
#pragma omp simd
      for (int w = 0; w < kBlock; ++w) {
        const double q1 = kOwnLeft ? x[w] : opp;
        const double q2 = kOwnLeft ? opp : x[w];
        double t = 0.5 * (lo[w] + hi[w]);
        double g = t + (std::fabs(q1 - t) + a_left * t - std::fabs(q2 - t)) * inv - 1.0;
        double nlo = g < 0.0 ? t : lo[w];
        double nhi = g < 0.0 ? hi[w] : t;
        lo[w] = nlo;
        hi[w] = nhi;
      }
    }
    for (int w = 0; w < kBlock; ++w) {
      double cut = 0.5 * (lo[w] + hi[w]);
      share[i + w] = kOwnLeft ? cut : 1.0 - cut;
    }
  }
  for (; i < count; ++i) {
    const double q1 = kOwnLeft ? own[i] : opp;
    const double q2 = kOwnLeft ? opp : own[i];
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < kShootIters; ++it) {
      double t = 0.5 * (lo + hi);
      double g = t + (std::fabs(q1 - t) + a_left * t - std::fabs(q2 - t)) * inv - 1.0;
      lo = g < 0.0 ? t : lo;
      hi = g < 0.0 ? hi : t;
    }
    double cut = 0.5 * (lo + hi);
    share[i] = kOwnLeft ? cut : 1.0 - cut;
  }
}

// Three-firm symmetric share sweep. kOwnPos is the sorted slot of the varying
// own location among (c_l, c_r).
template <int kOwnPos>
void batch_share3(const double* __restrict own, int count, double cl, double cr, double a,
                  double* __restrict share) {
  constexpr int kBlock = 16;
  const double inv = 1.0 / a;

  int i = 0;
  for (; i + kBlock <= count; i += kBlock) {
    double lo[kBlock];
    double hi[kBlock];
    double x[kBlock];
    for (int w = 0; w < kBlock; ++w) {
      lo[w] = 0.0;
      hi[w] = 1.0;
      x[w] = own[i + w];
    }
    for (int it = 0; it < kShootIters; ++it) {
#pragma omp simd
      for (int w = 0; w < kBlock; ++w) {
        const double q0 = kOwnPos == 0 ? x[w] : cl;
        const double q1 = kOwnPos == 1 ? x[w] : (kOwnPos == 0 ? cl : cr);
        const double q2 = kOwnPos == 2 ? x[w] : cr;
        double t = 0.5 * (lo[w] + hi[w]);
        double y2 = t + (std::fabs(q0 - t) + a * t - std::fabs(q1 - t)) * inv;
        double y3 = y2 + (std::fabs(q1 - y2) + a * (y2 - t) - std::fabs(q2 - y2)) * inv;
        double nlo = y3 < 1.0 ? t : lo[w];
        double nhi = y3 < 1.0 ? hi[w] : t;
        lo[w] = nlo;
        hi[w] = nhi;
      }
    }
    for (int w = 0; w < kBlock; ++w) {
      const double q0 = kOwnPos == 0 ? x[w] : cl;
      const double q1 = kOwnPos == 1 ? x[w] : (kOwnPos == 0 ? cl : cr);
      double t = 0.5 * (lo[w] + hi[w]);
      double y2 = t + (std::fabs(q0 - t) + a * t - std::fabs(q1 - t)) * inv;
      share[i + w] = kOwnPos == 0 ? t : (kOwnPos == 1 ? y2 - t : 1.0 - y2);
    }
  }
  for (; i < count; ++i) {
    const double q0 = kOwnPos == 0 ? own[i] : cl;
    const double q1 = kOwnPos == 1 ? own[i] : (kOwnPos == 0 ? cl : cr);
    const double q2 = kOwnPos == 2 ? own[i] : cr;
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < kShootIters; ++it) {
      double t = 0.5 * (lo + hi);
      double y2 = t + (std::fabs(q0 - t) + a * t - std::fabs(q1 - t)) * inv;
      double y3 = y2 + (std::fabs(q1 - y2) + a * (y2 - t) - std::fabs(q2 - y2)) * inv;
      lo = y3 < 1.0 ? t : lo;
      hi = y3 < 1.0 ? hi : t;
    }
    double t = 0.5 * (lo + hi);
    double y2 = t + (std::fabs(q0 - t) + a * t - std::fabs(q1 - t)) * inv;
    share[i] = kOwnPos == 0 ? t : (kOwnPos == 1 ? y2 - t : 1.0 - y2);
  }
}

// Shares of the own firm over all candidate locations for one two-firm
// belief; candidates must be ascending.
void shares_two(const std::vector<double>& own, double opp, double a_own, double a_opp,
                std::vector<double>& out) {
  out.resize(own.size());
  auto split = std::upper_bound(own.begin(), own.end(), opp);
  int left = static_cast<int>(split - own.begin());
  batch_share2<true>(own.data(), left, opp, a_own, a_opp, out.data());
  batch_share2<false>(own.data() + left, static_cast<int>(own.size()) - left, opp, a_own, a_opp,
                      out.data() + left);
}

// Same for one three-firm symmetric belief (c_l <= c_r).
void shares_three(const std::vector<double>& own, double cl, double cr, double a,
                  std::vector<double>& out) {
  out.resize(own.size());
  int first = static_cast<int>(std::upper_bound(own.begin(), own.end(), cl) - own.begin());
  int second = static_cast<int>(std::upper_bound(own.begin(), own.end(), cr) - own.begin());
  batch_share3<0>(own.data(), first, cl, cr, a, out.data());
  batch_share3<1>(own.data() + first, second - first, cl, cr, a, out.data() + first);
  batch_share3<2>(own.data() + second, static_cast<int>(own.size()) - second, cl, cr, a,
                  out.data() + second);
}

ChoiceSet alive_to_set(const std::vector<std::uint8_t>& alive, const Grid& grid) {
  std::vector<Interval> ivs;
  const int m = grid.m;
  int j = 0;
  while (j <= m) {
    if (!alive[static_cast<std::size_t>(j)]) {
      ++j;
      continue;
    }
    int start = j;
    while (j + 1 <= m && alive[static_cast<std::size_t>(j + 1)]) ++j;
    ivs.push_back({grid.point(start), grid.point(j)});
    ++j;
  }
  return ChoiceSet::from_intervals(std::move(ivs));
}

std::vector<double> alive_points(const std::vector<std::uint8_t>& alive, const Grid& grid,
                                 std::vector<int>* idx = nullptr) {
  std::vector<double> pts;
  if (idx) idx->clear();
  for (int j = 0; j <= grid.m; ++j) {
    if (alive[static_cast<std::size_t>(j)]) {
      pts.push_back(grid.point(j));
      if (idx) idx->push_back(j);
    }
  }
  return pts;
}

void mark_survivors(const std::vector<double>& shares, const std::vector<int>& idx, double eps,
                    std::vector<std::uint8_t>& marks) {
  double mx = *std::max_element(shares.begin(), shares.end());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (shares[i] >= mx - eps) marks[static_cast<std::size_t>(idx[i])] = 1;
  }
}

int count_escapes(const std::vector<double>& shares, const std::vector<int>& idx, double eps,
                  const std::vector<std::uint8_t>& alive) {
  double mx = *std::max_element(shares.begin(), shares.end());
  int escapes = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (shares[i] >= mx - eps && !alive[static_cast<std::size_t>(idx[i])]) ++escapes;
  }
  return escapes;
}

}  // namespace

Grid::Grid(int m_, double eps) : m(m_), eps_opt(eps) {
  if (m < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (!(eps_opt >= 0.0)) throw std::invalid_argument("eps_opt must be non-negative");
}

std::vector<double> grid_best_response(int firm, const std::vector<double>& opponents,
                                       const ModelParams& params, const Grid& grid,
                                       const ChoiceSet* restrict_to) {
  const int n = params.n();
  if (static_cast<int>(opponents.size()) != n - 1)
    throw std::invalid_argument("opponent count must be n-1");
  if (firm < 0 || firm >= n) throw std::invalid_argument("firm index out of range");
  if (n > 16) throw std::invalid_argument("grid oracle supports up to 16 firms");
  for (double c : opponents) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("opponent location outside [0,1]");
  }

  std::vector<int> cand;
  for (int j = 0; j <= grid.m; ++j) {
    double p = grid.point(j);
    if (!restrict_to || restrict_to->contains_point(p, kRestrictTol)) cand.push_back(j);
  }
  if (cand.empty()) throw std::invalid_argument("restriction excludes every grid point");

  // Input-order template with the own slot left open.
  std::vector<double> locs(static_cast<std::size_t>(n));
  {
    std::size_t k = 0;
    for (int f = 0; f < n; ++f) {
      if (f != firm) locs[static_cast<std::size_t>(f)] = opponents[k++];
    }
  }

  std::array<double, 16> c_sorted;
  std::array<double, 16> a_sorted;
  std::array<double, 17> cuts;
  std::array<int, 16> order;

  std::vector<double> shares(cand.size());
  for (std::size_t ci = 0; ci < cand.size(); ++ci) {
    locs[static_cast<std::size_t>(firm)] = grid.point(cand[ci]);
    std::iota(order.begin(), order.begin() + n, 0);
    std::stable_sort(order.begin(), order.begin() + n, [&](int x, int y) {
      return locs[static_cast<std::size_t>(x)] < locs[static_cast<std::size_t>(y)];
    });
    int own_rank = 0;
    for (int r = 0; r < n; ++r) {
      int f = order[static_cast<std::size_t>(r)];
      c_sorted[static_cast<std::size_t>(r)] = locs[static_cast<std::size_t>(f)];
      a_sorted[static_cast<std::size_t>(r)] = params.a(f);
      if (f == firm) own_rank = r;
    }
    detail::solve_cuts_sorted({c_sorted.data(), static_cast<std::size_t>(n)},
                              {a_sorted.data(), static_cast<std::size_t>(n)}, kOracleSolveTol,
                              {cuts.data(), static_cast<std::size_t>(n) + 1});
    shares[ci] = cuts[static_cast<std::size_t>(own_rank) + 1] -
                 cuts[static_cast<std::size_t>(own_rank)];
  }

  double mx = *std::max_element(shares.begin(), shares.end());
  std::vector<double> best;
  for (std::size_t ci = 0; ci < cand.size(); ++ci) {
    if (shares[ci] >= mx - grid.eps_opt) best.push_back(grid.point(cand[ci]));
  }
  return best;
}

namespace {

GridEliminationResult eliminate_two(const ModelParams& params, const Grid& grid, int max_rounds,
                                    bool check_unrestricted) {
  const double a1 = params.a(0);
  const double a2 = params.a(1);
  const std::size_t count = static_cast<std::size_t>(grid.m) + 1;

  std::array<std::vector<std::uint8_t>, 2> alive{std::vector<std::uint8_t>(count, 1),
                                                 std::vector<std::uint8_t>(count, 1)};
  GridEliminationResult result;
  result.trace.n_firms = 2;
  result.trace.rounds.push_back({alive_to_set(alive[0], grid), alive_to_set(alive[1], grid)});

  std::vector<double> all_pts;
  std::vector<int> all_idx;
  for (int j = 0; j <= grid.m; ++j) {
    all_pts.push_back(grid.point(j));
    all_idx.push_back(j);
  }

  std::vector<double> shares;
  for (int round = 1; round <= max_rounds; ++round) {
    std::array<std::vector<std::uint8_t>, 2> next{std::vector<std::uint8_t>(count, 0),
                                                  std::vector<std::uint8_t>(count, 0)};
    for (int own = 0; own < 2; ++own) {
      const int opp = 1 - own;
      const double a_own = own == 0 ? a1 : a2;
      const double a_opp = own == 0 ? a2 : a1;
      std::vector<int> idx;
      std::vector<double> pts = alive_points(alive[static_cast<std::size_t>(own)], grid, &idx);
      for (int jb = 0; jb <= grid.m; ++jb) {
        if (!alive[static_cast<std::size_t>(opp)][static_cast<std::size_t>(jb)]) continue;
        double cb = grid.point(jb);
        shares_two(pts, cb, a_own, a_opp, shares);
        result.share_evaluations += static_cast<std::int64_t>(pts.size());
        mark_survivors(shares, idx, grid.eps_opt,
                       next[static_cast<std::size_t>(own)]);
        if (check_unrestricted) {
          shares_two(all_pts, cb, a_own, a_opp, shares);
          result.unrestricted_escapes += count_escapes(shares, all_idx, grid.eps_opt,
                                                       alive[static_cast<std::size_t>(own)]);
        }
      }
    }
    if (next == alive) {
      result.trace.converged = true;
      break;
    }
    alive = std::move(next);
    result.trace.rounds.push_back({alive_to_set(alive[0], grid), alive_to_set(alive[1], grid)});
  }
  return result;
}

GridEliminationResult eliminate_three(const ModelParams& params, const Grid& grid, int max_rounds,
                                      bool check_unrestricted) {
  const double a = params.a(0);
  const int m = grid.m;
  const std::size_t count = static_cast<std::size_t>(m) + 1;

  std::vector<std::uint8_t> alive(count, 1);
  GridEliminationResult result;
  result.trace.n_firms = 3;
  result.trace.rounds.push_back(std::vector<ChoiceSet>(3, alive_to_set(alive, grid)));

  std::vector<double> all_pts;
  std::vector<int> all_idx;
  for (int j = 0; j <= m; ++j) {
    all_pts.push_back(grid.point(j));
    all_idx.push_back(j);
  }

  std::vector<double> shares;
  for (int round = 1; round <= max_rounds; ++round) {
    std::vector<std::uint8_t> marks(count, 0);
    std::vector<int> idx;
    std::vector<double> pts = alive_points(alive, grid, &idx);

    // Reduced belief domain in exact index arithmetic:
    // c_r >= 1/2, 1 - c_r <= c_l <= c_r.
    for (std::size_t ri = 0; ri < idx.size(); ++ri) {
      int jr = idx[ri];
      if (2 * jr < m) continue;
      double cr = grid.point(jr);
      std::size_t li = static_cast<std::size_t>(
          std::lower_bound(idx.begin(), idx.end(), m - jr) - idx.begin());
      for (; li < idx.size() && idx[li] <= jr; ++li) {
        double cl = grid.point(idx[li]);
        shares_three(pts, cl, cr, a, shares);
        result.share_evaluations += static_cast<std::int64_t>(pts.size());
        mark_survivors(shares, idx, grid.eps_opt, marks);
        if (check_unrestricted) {
          shares_three(all_pts, cl, cr, a, shares);
          result.unrestricted_escapes +=
              count_escapes(shares, all_idx, grid.eps_opt, alive);
        }
      }
    }

    // Mirrored beliefs contribute the mirrored survivors.
    std::vector<std::uint8_t> next(count, 0);
    for (int j = 0; j <= m; ++j) {
      next[static_cast<std::size_t>(j)] =
          marks[static_cast<std::size_t>(j)] | marks[static_cast<std::size_t>(m - j)];
    }
    if (next == alive) {
      result.trace.converged = true;
      break;
    }
    alive = std::move(next);
    result.trace.rounds.push_back(std::vector<ChoiceSet>(3, alive_to_set(alive, grid)));
  }
  return result;
}

}  // namespace

GridEliminationResult grid_eliminate(const ModelParams& params, int n_firms, const Grid& grid,
                                     int max_rounds, bool check_unrestricted) {
  if (n_firms != params.n()) throw std::invalid_argument("n_firms must match params");
  if (grid.m < 100) throw std::invalid_argument("elimination grid needs resolution >= 100");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be positive");

  GridEliminationResult result;
  if (n_firms == 2) {
    result = eliminate_two(params, grid, max_rounds, check_unrestricted);
  } else if (n_firms == 3) {
    if (params.a(0) != params.a(1) || params.a(1) != params.a(2))
      throw std::invalid_argument("three-firm elimination covers the symmetric case only");
    result = eliminate_three(params, grid, max_rounds, check_unrestricted);
  } else {
    throw std::invalid_argument("grid elimination supports 2 or 3 firms");
  }

  auto& trace = result.trace;
  trace.limit = trace.rounds.back();
  for (std::size_t k = 0; k + 1 < trace.rounds.size(); ++k) {
    double gap = 0.0;
    for (int f = 0; f < trace.n_firms; ++f) {
      gap = std::max(gap, hausdorff(trace.rounds[k][static_cast<std::size_t>(f)],
                                    trace.rounds[k + 1][static_cast<std::size_t>(f)]));
    }
    trace.hausdorff_gaps.push_back(gap);
  }
  if (trace.converged) trace.converged_at = static_cast<int>(trace.rounds.size()) - 1;
  return result;
}

TraceComparison compare_traces(const EliminationTrace& analytic, const EliminationTrace& grid_trace,
                               const Grid& grid) {
  if (analytic.n_firms != grid_trace.n_firms)
    throw std::invalid_argument("traces were computed for different firm counts");

  TraceComparison cmp;
  cmp.flag_threshold = 2.0 * grid.step() + grid.eps_opt;
  const std::size_t rounds = std::min(analytic.rounds.size(), grid_trace.rounds.size());
  for (std::size_t k = 0; k < rounds; ++k) {
    double gap = 0.0;
    for (int f = 0; f < analytic.n_firms; ++f) {
      gap = std::max(gap, hausdorff(analytic.rounds[k][static_cast<std::size_t>(f)],
                                    grid_trace.rounds[k][static_cast<std::size_t>(f)]));
    }
    cmp.round_gaps.push_back(gap);
    if (gap > cmp.flag_threshold) cmp.flagged_rounds.push_back(static_cast<int>(k));
  }
  for (int f = 0; f < analytic.n_firms; ++f) {
    cmp.limit_gap = std::max(
        cmp.limit_gap, hausdorff(analytic.limit[static_cast<std::size_t>(f)],
                                 grid_trace.limit[static_cast<std::size_t>(f)]));
  }
  return cmp;
}

}  // namespace hotelling

#include "hotelling/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hotelling {

namespace {

constexpr double kBoundarySlack = 1e-12;
constexpr double kDedupTol = 1e-9;
constexpr double kHalfSnapTol = 1e-12;

void require_two_asymmetric(const ModelParams& params) {
  if (params.n() != 2) throw std::invalid_argument("two-firm reaction needs exactly two firms");
  if (!(params.a(0) < params.a(1)))
    throw std::invalid_argument("reaction routines require a_1 < a_2; relabel the firms, "
                                "or use reaction_symmetric_two for equal coefficients");
}

void require_location(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("location outside [0,1]");
}

}  // namespace

ResponseSet ResponseSet::two(double x, double y) {
  ResponseSet r;
  r.kind = Kind::kPoints;
  r.points = {std::min(x, y), std::max(x, y)};
  return r;
}

double ResponseSet::min() const {
  return kind == Kind::kInterval ? interval.lo : points.front();
}

double ResponseSet::max() const {
  return kind == Kind::kInterval ? interval.hi : points.back();
}

bool ResponseSet::is_singleton(double tol) const {
  if (kind == Kind::kInterval) return interval.width() <= tol;
  return points.size() == 1;
}

ChoiceSet ResponseSet::as_choice_set() const {
  std::vector<Interval> ivs;
  if (kind == Kind::kInterval) {
    ivs.push_back(interval);
  } else {
    for (double p : points) ivs.push_back({p, p});
  }
  return ChoiceSet::from_intervals(std::move(ivs));
}

ResponseSet mirror(const ResponseSet& r) {
  ResponseSet out;
  out.kind = r.kind;
  if (r.kind == ResponseSet::Kind::kInterval) {
    out.interval = {1.0 - r.interval.hi, 1.0 - r.interval.lo};
  } else {
    out.points.reserve(r.points.size());
    for (auto it = r.points.rbegin(); it != r.points.rend(); ++it) out.points.push_back(1.0 - *it);
  }
  return out;
}

BeliefRegion::BeliefRegion(double l, double r) : c_l(l), c_r(r) {
  require_location(l);
  require_location(r);
  if (c_l > c_r + kBoundarySlack || c_l < 1.0 - c_r - kBoundarySlack)
    throw std::invalid_argument("belief outside the reduced domain");
}

NormalizedBelief normalize_belief(double c_l, double c_r) {
  require_location(c_l);
  require_location(c_r);
  if (c_l > c_r) std::swap(c_l, c_r);
  bool mirrored = false;
  if (c_l < 1.0 - c_r) {
    double nl = 1.0 - c_r;
    double nr = 1.0 - c_l;
    c_l = nl;
    c_r = nr;
    mirrored = true;
  }
  return {BeliefRegion(c_l, c_r), mirrored};
}

ResponseSet reaction_firm1_two(double c2, const ModelParams& params) {
  require_two_asymmetric(params);
  require_location(c2);
  const double a1 = params.a(0);
  const double a2 = params.a(1);
  const double g = params.gamma();
  const double lo_break = a1 / (a1 + a2);
  const double hi_break = a2 / (a1 + a2);
  if (c2 < lo_break) return ResponseSet::single((c2 + a1) / g);
  if (c2 > hi_break) return ResponseSet::single((c2 + a2) / g);
  return ResponseSet::single(c2);
}

ResponseSet reaction_firm2_two(double c1, const ModelParams& params) {
  require_two_asymmetric(params);
  require_location(c1);
  const double a1 = params.a(0);
  const double a2 = params.a(1);
  const double g = params.gamma();
  if (std::fabs(c1 - 0.5) <= kHalfSnapTol)
    return ResponseSet::two((0.5 + a1) / g, (0.5 + a2) / g);
  if (c1 < 0.5) return ResponseSet::single((c1 + a2) / g);
  return ResponseSet::single((c1 + a1) / g);
}

ResponseSet reaction_symmetric_two(double cj, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("inefficiency must be positive");
  require_location(cj);
  return ResponseSet::single((cj + a) / (1.0 + 2.0 * a));
}

ThreeFirmBoundaries region_boundaries_three(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("inefficiency must be positive");
  ThreeFirmBoundaries b;
  b.cr_far_pair_min = (1.0 + 2.0 * a) / (1.0 + 3.0 * a);
  b.cr_straddle_min = (3.0 + 2.0 * a) / (4.0 + 3.0 * a);
  b.cr_near_pair_max = (1.0 + 4.0 * a + 2.0 * a * a) / (2.0 + 7.0 * a + 3.0 * a * a);
  b.cl_far_pair_min_at_one = (1.0 + 3.0 * a + 2.0 * a * a) / (1.0 + 3.0 * a + 3.0 * a * a);
  b.cl_straddle_max_at_one = (a + 1.0) / (3.0 + 3.0 * a);
  b.cl_smallest_response = (1.0 + a) / (4.0 + 3.0 * a);
  b.cl_near_pair_companion = (1.0 + 3.0 * a + a * a) / (2.0 + 7.0 * a + 3.0 * a * a);
  return b;
}

namespace {

// c_l bounds of the correspondence regions as functions of c_r.
double cl_far_pair_min(double cr, double a) {
  return (2.0 * a * cr + cr + a + 2.0 * a * a) / (1.0 + 3.0 * a + 3.0 * a * a);
}

double cl_left_upper(double cr, double a) {
  return (4.0 * a * cr + 3.0 * a * a * cr + cr - a - 2.0 * a * a) / (1.0 + 3.0 * a);
}

double cl_straddle_max(double cr, double a) { return (a + cr) / (3.0 + 3.0 * a); }

double respond_far_pair(double cl, double cr, double a) {
  return (a + cl + cr) / (2.0 + 3.0 * a);
}

double respond_mid_pair(double cl, double cr, double a) {
  return (3.0 * a * cl + 2.0 * cl + a * cr + a * a) / (2.0 + 6.0 * a + 3.0 * a * a);
}

double respond_near_pair(double cl, double cr, double a) {
  return (a + 3.0 * cl - cr) / (2.0 + 3.0 * a);
}

Interval respond_straddle(double cl, double cr, double a) {
  double den = 2.0 + 5.0 * a + 3.0 * a * a;
  double lo = (2.0 * cl + 2.0 * a * cl + a * cr + a * a) / den;
  double hi = (a * cl + 2.0 * a * cr + 2.0 * cr + 2.0 * a + 2.0 * a * a) / den;
  return {lo, hi};
}

}  // namespace

std::vector<int> three_firm_accepting_cases(const BeliefRegion& belief, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("inefficiency must be positive");
  const double cl = belief.c_l;
  const double cr = belief.c_r;
  const double s = kBoundarySlack;
  const ThreeFirmBoundaries b = region_boundaries_three(a);

  std::vector<int> cases;
  if (cr >= b.cr_far_pair_min - s && cl >= cl_far_pair_min(cr, a) - s) cases.push_back(1);
  if (cr >= b.cr_near_pair_max - s && cr <= b.cr_straddle_min + s &&
      cl <= cl_left_upper(cr, a) + s)
    cases.push_back(2);
  if (cr >= b.cr_straddle_min - s && cr <= b.cr_far_pair_min + s &&
      cl >= cl_straddle_max(cr, a) - s && cl <= cl_left_upper(cr, a) + s)
    cases.push_back(3);
  if (cr >= b.cr_far_pair_min - s && cl >= cl_straddle_max(cr, a) - s &&
      cl <= cl_far_pair_min(cr, a) + s)
    cases.push_back(4);
  if (cr <= b.cr_near_pair_max + s) cases.push_back(5);
  if (cr >= b.cr_near_pair_max - s && cr <= b.cr_far_pair_min + s &&
      cl >= cl_left_upper(cr, a) - s)
    cases.push_back(6);
  if (cr >= b.cr_straddle_min - s && cl <= cl_straddle_max(cr, a) + s) cases.push_back(7);
  return cases;
}

ResponseSet reaction_three_symmetric(const BeliefRegion& belief, double a) {
  const double cl = belief.c_l;
  const double cr = belief.c_r;
  const std::vector<int> cases = three_firm_accepting_cases(belief, a);
  if (cases.empty()) throw std::logic_error("belief not covered by any correspondence branch");

  bool has_interval = false;
  Interval iv{};
  std::vector<double> pts;
  for (int id : cases) {
    switch (id) {
      case 1:
        pts.push_back(respond_far_pair(cl, cr, a));
        break;
      case 2:
      case 3:
      case 4:
        pts.push_back(respond_mid_pair(cl, cr, a));
        break;
      case 5:
      case 6:
        pts.push_back(respond_near_pair(cl, cr, a));
        break;
      case 7:
        has_interval = true;
        iv = respond_straddle(cl, cr, a);
        break;
    }
  }

  if (has_interval) {
    for (double p : pts) {
      if (p < iv.lo - kDedupTol || p > iv.hi + kDedupTol)
        throw std::logic_error("boundary branches disagree beyond tolerance");
    }
    return ResponseSet::range(iv.lo, iv.hi);
  }

  std::sort(pts.begin(), pts.end());
  ResponseSet out;
  out.kind = ResponseSet::Kind::kPoints;
  for (double p : pts) {
    if (out.points.empty() || p - out.points.back() > kDedupTol) out.points.push_back(p);
  }
  if (out.points.size() > 1)
    throw std::logic_error("boundary branches disagree beyond tolerance");
  return out;
}

}  // namespace hotelling

#include "hotelling/choice_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hotelling {

double Interval::distance_to(double x) const {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

ChoiceSet::ChoiceSet(double lo, double hi) {
  *this = from_intervals({{lo, hi}});
}

ChoiceSet ChoiceSet::from_intervals(std::vector<Interval> ivs) {
  constexpr double kDomainSlack = 1e-9;
  for (auto& iv : ivs) {
    if (!(iv.lo <= iv.hi)) throw std::invalid_argument("interval with lo > hi");
    if (iv.lo < -kDomainSlack || iv.hi > 1.0 + kDomainSlack)
      throw std::invalid_argument("interval outside [0,1]");
    iv.lo = std::clamp(iv.lo, 0.0, 1.0);
    iv.hi = std::clamp(iv.hi, 0.0, 1.0);
  }
  std::sort(ivs.begin(), ivs.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  ChoiceSet out;
  for (const auto& iv : ivs) {
    if (!out.ivs_.empty() && iv.lo - out.ivs_.back().hi <= kMergeTol) {
      out.ivs_.back().hi = std::max(out.ivs_.back().hi, iv.hi);
    } else {
      out.ivs_.push_back(iv);
    }
  }
  return out;
}

double ChoiceSet::min() const {
  if (empty()) throw std::logic_error("min of empty ChoiceSet");
  return ivs_.front().lo;
}

double ChoiceSet::max() const {
  if (empty()) throw std::logic_error("max of empty ChoiceSet");
  return ivs_.back().hi;
}

double ChoiceSet::measure() const {
  double total = 0.0;
  for (const auto& iv : ivs_) total += iv.width();
  return total;
}

double ChoiceSet::distance_to(double x) const {
  if (empty()) throw std::logic_error("distance to empty ChoiceSet");
  double best = ivs_.front().distance_to(x);
  for (const auto& iv : ivs_) best = std::min(best, iv.distance_to(x));
  return best;
}

bool ChoiceSet::contains_point(double x, double tol) const {
  for (const auto& iv : ivs_) {
    if (x >= iv.lo - tol && x <= iv.hi + tol) return true;
  }
  return false;
}

bool ChoiceSet::contains(const ChoiceSet& other, double tol) const {
  for (const auto& iv : other.ivs_) {
    bool covered = false;
    for (const auto& mine : ivs_) {
      if (iv.lo >= mine.lo - tol && iv.hi <= mine.hi + tol) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

ChoiceSet set_union(const ChoiceSet& a, const ChoiceSet& b) {
  std::vector<Interval> ivs = a.intervals();
  ivs.insert(ivs.end(), b.intervals().begin(), b.intervals().end());
  return ChoiceSet::from_intervals(std::move(ivs));
}

ChoiceSet set_intersection(const ChoiceSet& a, const ChoiceSet& b) {
  std::vector<Interval> out;
  for (const auto& x : a.intervals()) {
    for (const auto& y : b.intervals()) {
      double lo = std::max(x.lo, y.lo);
      double hi = std::min(x.hi, y.hi);
      if (lo <= hi) out.push_back({lo, hi});
    }
  }
  return ChoiceSet::from_intervals(std::move(out));
}

ChoiceSet mirror(const ChoiceSet& a) {
  std::vector<Interval> out;
  out.reserve(a.size());
  for (const auto& iv : a.intervals()) out.push_back({1.0 - iv.hi, 1.0 - iv.lo});
  return ChoiceSet::from_intervals(std::move(out));
}

namespace {

// sup over x in `from` of d(x, to). The distance function is piecewise linear
// with local maxima only at interval endpoints of `from` and at midpoints of
// the gaps of `to`.
double directed_hausdorff(const ChoiceSet& from, const ChoiceSet& to) {
  double best = 0.0;
  for (const auto& iv : from.intervals()) {
    best = std::max(best, to.distance_to(iv.lo));
    best = std::max(best, to.distance_to(iv.hi));
  }
  const auto& tivs = to.intervals();
  for (std::size_t k = 0; k + 1 < tivs.size(); ++k) {
    double gap_mid = 0.5 * (tivs[k].hi + tivs[k + 1].lo);
    if (from.contains_point(gap_mid)) best = std::max(best, to.distance_to(gap_mid));
  }
  return best;
}

}  // namespace

double hausdorff(const ChoiceSet& a, const ChoiceSet& b) {
  if (a.empty() || b.empty()) throw std::logic_error("hausdorff with empty ChoiceSet");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

ChoiceSet collapse_narrow(const ChoiceSet& a, double tol) {
  std::vector<Interval> out;
  out.reserve(a.size());
  for (const auto& iv : a.intervals()) {
    if (iv.width() <= tol) {
      double p = iv.mid();
      out.push_back({p, p});
    } else {
      out.push_back(iv);
    }
  }
  return ChoiceSet::from_intervals(std::move(out));
}

}  // namespace hotelling

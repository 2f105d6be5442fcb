#pragma once

#include <cstddef>
#include <vector>

namespace hotelling {

/// Closed interval on the line segment [0,1]. A point is a zero-width interval.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool is_point(double tol = 0.0) const { return width() <= tol; }
  double distance_to(double x) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint closed intervals in [0,1], kept sorted.
/// Intervals closer than kMergeTol are merged on construction.
class ChoiceSet {
 public:
  static constexpr double kMergeTol = 1e-12;

  ChoiceSet() = default;
  ChoiceSet(double lo, double hi);

  static ChoiceSet point(double x) { return ChoiceSet(x, x); }
  static ChoiceSet full() { return ChoiceSet(0.0, 1.0); }
  static ChoiceSet from_intervals(std::vector<Interval> ivs);

  bool empty() const { return ivs_.empty(); }
  std::size_t size() const { return ivs_.size(); }
  const std::vector<Interval>& intervals() const { return ivs_; }

  double min() const;  // throws on empty set
  double max() const;
  double measure() const;
  double distance_to(double x) const;
  bool contains_point(double x, double tol = 0.0) const;
  bool contains(const ChoiceSet& other, double tol = 0.0) const;

  friend bool operator==(const ChoiceSet&, const ChoiceSet&) = default;

 private:
  std::vector<Interval> ivs_;
};

ChoiceSet set_union(const ChoiceSet& a, const ChoiceSet& b);
ChoiceSet set_intersection(const ChoiceSet& a, const ChoiceSet& b);

/// Reflection x -> 1-x.
ChoiceSet mirror(const ChoiceSet& a);

/// Symmetric Hausdorff distance. Throws on empty operands.
double hausdorff(const ChoiceSet& a, const ChoiceSet& b);

/// Replaces every interval of width <= tol by its midpoint.
ChoiceSet collapse_narrow(const ChoiceSet& a, double tol);

}  // namespace hotelling

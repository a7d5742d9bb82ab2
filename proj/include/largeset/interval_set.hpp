#pragma once

#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "largeset/rational.hpp"

namespace largeset {

// Half-open [lo, hi). Only non-empty intervals are ever stored in a set.
struct Interval {
  Rat lo;
  Rat hi;

  Rat length() const { return hi - lo; }
  bool contains(const Rat& x) const { return lo <= x && x < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Window [lo, hi) with hi - lo >= 1, the domain of largeness queries.
struct Window {
  Rat lo;
  Rat hi;

  Window(Rat lo, Rat hi);
  Rat width() const { return hi - lo; }
  friend bool operator==(const Window&, const Window&) = default;
};

// Finite union of half-open intervals in canonical form: parts sorted,
// pairwise disjoint and non-adjacent.
class IntervalSet {
 public:
  IntervalSet() = default;

  std::span<const Interval> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rat& x) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  friend IntervalSet normalize(std::vector<Interval> raw);
  friend IntervalSet from_canonical(std::vector<Interval> parts);
  std::vector<Interval> parts_;
};

// Canonical representation of the union of `raw`. Intervals with lo >= hi
// are dropped. Idempotent.
IntervalSet normalize(std::vector<Interval> raw);

enum class SetOp { unite, intersect, subtract };

IntervalSet boolean_combine(const IntervalSet& a, const IntervalSet& b, SetOp op);
inline IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  return boolean_combine(a, b, SetOp::unite);
}
inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  return boolean_combine(a, b, SetOp::intersect);
}
inline IntervalSet subtract(const IntervalSet& a, const IntervalSet& b) {
  return boolean_combine(a, b, SetOp::subtract);
}

// {scale * x + shift : x in s}, each image part stored as [min, max).
// Throws std::invalid_argument for scale == 0.
IntervalSet affine_image(const IntervalSet& s, const Rat& scale, const Rat& shift);

Rat measure(const IntervalSet& s);

// Measure of s ∩ [lo, hi).
Rat measure_in(const IntervalSet& s, const Rat& lo, const Rat& hi);

// The set period * Z + pattern.
class PeriodicSet {
 public:
  PeriodicSet(Rat period, IntervalSet pattern);
  // period * Z + [lo, hi) with 0 <= lo < hi <= period.
  static PeriodicSet strip(Rat period, Rat lo, Rat hi);

  const Rat& period() const { return period_; }
  const IntervalSet& pattern() const { return pattern_; }

 private:
  Rat period_;
  IntervalSet pattern_;
};

// (p tiled over R) ∩ [w.lo, w.hi).
IntervalSet materialize_periodic(const PeriodicSet& p, const Window& w);

struct UnitWindowMinimum {
  Rat value;
  Rat argmin;
};

// Exact min over a in [w.lo, w.hi - 1] of |s ∩ [a, a + 1]|. The function is
// piecewise linear with breakpoints at endpoints e and e - 1, so only those
// (and the two ends) are evaluated.
UnitWindowMinimum min_unit_window_measure(const IntervalSet& s, const Window& w);

// JSON form: array of [lo_num, lo_den, hi_num, hi_den]. Integers that fit in
// 64 bits are emitted as numbers, larger ones as decimal strings.
nlohmann::json to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const nlohmann::json& j);

nlohmann::json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const nlohmann::json& j);

}  // namespace largeset

#include "largeset/interval_set.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace largeset {

Window::Window(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (hi - lo < 1) {
    throw std::invalid_argument("window [" + lo.str() + ", " + hi.str() + ") is shorter than 1");
  }
}

IntervalSet from_canonical(std::vector<Interval> parts) {
  IntervalSet s;
  s.parts_ = std::move(parts);
  return s;
}

IntervalSet normalize(std::vector<Interval> raw) {
  std::erase_if(raw, [](const Interval& iv) { return !(iv.lo < iv.hi); });
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  out.reserve(raw.size());
  for (auto& iv : raw) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (out.back().hi < iv.hi) out.back().hi = std::move(iv.hi);
    } else {
      out.push_back(std::move(iv));
    }
  }
  return from_canonical(std::move(out));
}

bool IntervalSet::contains(const Rat& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rat& v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  return x < std::prev(it)->hi;
}

IntervalSet boolean_combine(const IntervalSet& a, const IntervalSet& b, SetOp op) {
  const auto pa = a.parts();
  const auto pb = b.parts();
  std::vector<const Rat*> cuts;
  cuts.reserve(2 * (pa.size() + pb.size()));
  {
    // Both endpoint lists are already sorted; merge them.
    std::vector<const Rat*> ea, eb;
    ea.reserve(2 * pa.size());
    eb.reserve(2 * pb.size());
    for (const auto& iv : pa) { ea.push_back(&iv.lo); ea.push_back(&iv.hi); }
    for (const auto& iv : pb) { eb.push_back(&iv.lo); eb.push_back(&iv.hi); }
    std::merge(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(cuts),
               [](const Rat* x, const Rat* y) { return *x < *y; });
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](const Rat* x, const Rat* y) { return *x == *y; }),
               cuts.end());
  }
  std::vector<Interval> out;
  std::size_t ia = 0, ib = 0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Rat& x = *cuts[c];
    while (ia < pa.size() && pa[ia].hi <= x) ++ia;
    while (ib < pb.size() && pb[ib].hi <= x) ++ib;
    const bool in_a = ia < pa.size() && pa[ia].lo <= x;
    const bool in_b = ib < pb.size() && pb[ib].lo <= x;
    bool keep = false;
    switch (op) {
      case SetOp::unite: keep = in_a || in_b; break;
      case SetOp::intersect: keep = in_a && in_b; break;
      case SetOp::subtract: keep = in_a && !in_b; break;
    }
    if (!keep) continue;
    if (!out.empty() && out.back().hi == x) {
      out.back().hi = *cuts[c + 1];
    } else {
      out.push_back(Interval{x, *cuts[c + 1]});
    }
  }
  return from_canonical(std::move(out));
}

IntervalSet affine_image(const IntervalSet& s, const Rat& scale, const Rat& shift) {
  if (scale.sign() == 0) throw std::invalid_argument("affine_image: scale must be nonzero");
  std::vector<Interval> out;
  out.reserve(s.size());
  if (scale.sign() > 0) {
    for (const auto& iv : s.parts()) out.push_back({scale * iv.lo + shift, scale * iv.hi + shift});
  } else {
    const auto parts = s.parts();
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      out.push_back({scale * it->hi + shift, scale * it->lo + shift});
    }
  }
  return from_canonical(std::move(out));
}

Rat measure(const IntervalSet& s) {
  Rat total;
  for (const auto& iv : s.parts()) total += iv.length();
  return total;
}

Rat measure_in(const IntervalSet& s, const Rat& lo, const Rat& hi) {
  Rat total;
  const auto parts = s.parts();
  auto it = std::upper_bound(parts.begin(), parts.end(), lo,
                             [](const Rat& v, const Interval& iv) { return v < iv.hi; });
  for (; it != parts.end() && it->lo < hi; ++it) {
    const Rat& a = max(it->lo, lo);
    const Rat& b = min(it->hi, hi);
    if (a < b) total += b - a;
  }
  return total;
}

PeriodicSet::PeriodicSet(Rat period, IntervalSet pattern)
    : period_(std::move(period)), pattern_(std::move(pattern)) {
  if (period_.sign() <= 0) throw std::invalid_argument("periodic set: period must be positive");
  if (!pattern_.empty() &&
      (pattern_.parts().front().lo.sign() < 0 || pattern_.parts().back().hi > period_)) {
    throw std::invalid_argument("periodic set: pattern must lie in [0, period)");
  }
}

PeriodicSet PeriodicSet::strip(Rat period, Rat lo, Rat hi) {
  return PeriodicSet(period, normalize({Interval{std::move(lo), std::move(hi)}}));
}

IntervalSet materialize_periodic(const PeriodicSet& p, const Window& w) {
  const Rat& period = p.period();
  const BigInt k_first = floor(w.lo / period);
  const BigInt k_last = ceil(w.hi / period);  // exclusive
  std::vector<Interval> out;
  for (BigInt k = k_first; k < k_last; ++k) {
    const Rat base = Rat(k) * period;
    for (const auto& iv : p.pattern().parts()) {
      Rat lo = base + iv.lo;
      Rat hi = base + iv.hi;
      if (lo < w.lo) lo = w.lo;
      if (hi > w.hi) hi = w.hi;
      if (!(lo < hi)) continue;
      if (!out.empty() && out.back().hi == lo) {
        out.back().hi = std::move(hi);
      } else {
        out.push_back({std::move(lo), std::move(hi)});
      }
    }
  }
  return from_canonical(std::move(out));
}

namespace {

// Cumulative measure F(x) = |s ∩ (-inf, x)| with O(log n) queries.
class CumulativeMeasure {
 public:
  explicit CumulativeMeasure(std::span<const Interval> parts) : parts_(parts) {
    prefix_.reserve(parts.size() + 1);
    prefix_.emplace_back();
    for (const auto& iv : parts) prefix_.push_back(prefix_.back() + iv.length());
  }

  Rat operator()(const Rat& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rat& v, const Interval& iv) { return v < iv.lo; });
    const auto idx = static_cast<std::size_t>(it - parts_.begin());
    if (idx == 0) return Rat();
    const Interval& last = parts_[idx - 1];
    if (x < last.hi) return prefix_[idx] - (last.hi - x);
    return prefix_[idx];
  }

 private:
  std::span<const Interval> parts_;
  std::vector<Rat> prefix_;
};

}  // namespace

UnitWindowMinimum min_unit_window_measure(const IntervalSet& s, const Window& w) {
  const Rat a_lo = w.lo;
  const Rat a_hi = w.hi - 1;
  std::vector<Rat> candidates{a_lo, a_hi};
  auto consider = [&](const Rat& v) {
    if (a_lo <= v && v <= a_hi) candidates.push_back(v);
  };
  for (const auto& iv : s.parts()) {
    if (iv.hi < a_lo || iv.lo > w.hi) continue;
    consider(iv.lo);
    consider(iv.hi);
    consider(iv.lo - 1);
    consider(iv.hi - 1);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const CumulativeMeasure cumulative(s.parts());
  UnitWindowMinimum best{Rat(2), a_lo};
  for (const auto& a : candidates) {
    Rat value = cumulative(a + 1) - cumulative(a);
    if (value < best.value) best = {std::move(value), a};
  }
  return best;
}

nlohmann::json bigint_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  throw std::invalid_argument("expected an integer (number or decimal string), got " + j.dump());
}

nlohmann::json to_json(const IntervalSet& s) {
  auto out = nlohmann::json::array();
  for (const auto& iv : s.parts()) {
    out.push_back({bigint_to_json(iv.lo.num()), bigint_to_json(iv.lo.den()), bigint_to_json(iv.hi.num()),
                   bigint_to_json(iv.hi.den())});
  }
  return out;
}

IntervalSet interval_set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("interval set JSON must be an array");
  std::vector<Interval> raw;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& q = j[k];
    if (!q.is_array() || q.size() != 4) {
      throw std::invalid_argument("interval set JSON [" + std::to_string(k) +
                                  "]: expected [lo_num, lo_den, hi_num, hi_den]");
    }
    raw.push_back({Rat(bigint_from_json(q[0]), bigint_from_json(q[1])),
                   Rat(bigint_from_json(q[2]), bigint_from_json(q[3]))});
  }
  return normalize(std::move(raw));
}

}  // namespace largeset

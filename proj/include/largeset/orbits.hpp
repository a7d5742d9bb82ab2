#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "largeset/interval_set.hpp"
#include "largeset/sequence.hpp"

namespace largeset {

// <x a_n + t> for n = 1..N in index order (not sorted). Integer-valued
// sequences with a rational dilation are reduced modulo the common
// denominator, so the terms themselves are never formed.
std::vector<Rat> orbit_points(const SequenceSpec& s, const Rat& x, const Rat& t, std::uint64_t N);

// orbit_points, sorted ascending.
std::vector<Rat> fractional_orbit(const SequenceSpec& s, const Rat& x, const Rat& t, std::uint64_t N);

// Largest empty circular arc of [0, 1), wrap-around arc included.
Rat max_gap(std::span<const Rat> sorted);

// max_i max(i/N - p_i, p_i - (i-1)/N) over sorted points p_1 <= ... <= p_N.
Rat star_discrepancy(std::span<const Rat> sorted);

struct OrbitStats {
  Rat x;
  std::uint64_t N = 0;
  Rat max_gap;
  Rat star_discrepancy;
  std::vector<std::uint64_t> histogram;
  bool approximate = false;  // sequence terms carry evaluation error
};

OrbitStats orbit_stats(const SequenceSpec& s, const Rat& x, const Rat& t, std::uint64_t N, unsigned bins = 10);

struct Grid {
  Rat start;
  Rat step;
  std::uint64_t count = 0;

  Rat at(std::uint64_t i) const { return start + step * Rat(i); }
};

struct ProbeRow {
  Rat x;
  Rat max_gap;
  Rat discrepancy;
  bool hit = false;
};

struct ExceptionalProbe {
  Rat delta;
  std::uint64_t N = 0;
  Grid grid;
  std::vector<ProbeRow> rows;  // one per grid point, in grid order

  std::vector<Rat> hits() const;
};

// Grid points whose orbit after N terms leaves an empty arc of length >= delta.
ExceptionalProbe exceptional_probe(const SequenceSpec& s, const Rat& delta, std::uint64_t N, const Grid& grid);

// Finite-N proxy for the upper box dimension of the probe's hit set. It is
// evidence about the data, not an estimate of any limiting dimension.
struct DimensionEstimate {
  std::vector<Rat> scales;
  std::vector<std::uint64_t> counts;
  double slope = 0;      // clamped to [0, 1]
  double raw_slope = 0;  // least-squares slope before clamping
  double r2 = 0;
};

// Scales must be descending multiples of the grid step, each dividing the
// previous one, so that boxes are nested and counts are monotone.
DimensionEstimate box_dimension_estimate(const ExceptionalProbe& p, std::span<const Rat> scales);

struct CongruenceCase {
  Rat alpha;
  Rat beta;
  Rat epsilon;
  Window window;
};

struct Lemma41Result {
  Rat exact;
  Rat asymptotic;
  Rat relative_error;
};

// Exact |(alpha Z + [0, eps)) ∩ (beta Z + [0, eps)) ∩ window| against
// eps^2 * width / (alpha beta). Requires 0 < eps < min(alpha, beta).
Lemma41Result lemma41_exact_measure(const CongruenceCase& c);

struct ChungErdosResult {
  Rat lhs;  // P(union of events)
  Rat rhs;  // (sum P(B_i))^2 / sum_ij P(B_i ∩ B_j)
  bool holds = false;
};

// Probabilities are measures on the window divided by its width.
ChungErdosResult chung_erdos_check(std::span<const PeriodicSet> events, const Window& w);

// First n <= N with <a_n x> in deltas[(n - 1) mod size]. Each delta is an arc
// of the torus given as [lo, hi) with 0 <= lo < 1 and lo < hi <= lo + 1;
// hi > 1 wraps around. All arcs must have the same length.
std::optional<std::uint64_t> delta_escape_probe(const SequenceSpec& s, std::span<const Interval> deltas,
                                                const Rat& x, std::uint64_t N);

}  // namespace largeset

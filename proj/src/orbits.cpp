#include "largeset/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "largeset/parallel.hpp"

namespace largeset {

namespace {

using i128 = __int128;

BigInt from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt out(static_cast<unsigned long>(u >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(u & 0xffffffffffffffffULL);
  return neg ? BigInt(-out) : out;
}

// Orbit points c_n / L with integer numerators, for integer-valued sequences
// and dilations whose common denominator fits comfortably in 64 bits.
struct IntegerOrbit {
  std::vector<std::uint64_t> c;
  std::uint64_t L = 1;
};

std::optional<IntegerOrbit> integer_orbit(const SequenceSpec& s, const Rat& x, const Rat& t, std::uint64_t N) {
  if (!s.integer_valued()) return std::nullopt;
  BigInt L;
  mpz_lcm(L.get_mpz_t(), x.den().get_mpz_t(), t.den().get_mpz_t());
  if (bit_length(L) > 62) return std::nullopt;
  IntegerOrbit out;
  out.L = L.get_ui();
  const std::uint64_t X = mod_u64((x * Rat(L)).num(), out.L);
  const std::uint64_t T = mod_u64((t * Rat(L)).num(), out.L);
  const auto r = s.residues(N, out.L);
  out.c.reserve(N);
  for (const auto v : r) {
    out.c.push_back(static_cast<std::uint64_t>((static_cast<unsigned __int128>(X) * v + T) % out.L));
  }
  return out;
}

Rat integer_max_gap(const std::vector<std::uint64_t>& sorted, std::uint64_t L) {
  std::uint64_t gap = L - sorted.back() + sorted.front();
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gap = std::max(gap, sorted[i + 1] - sorted[i]);
  return Rat(BigInt(static_cast<unsigned long>(gap)), BigInt(static_cast<unsigned long>(L)));
}

Rat integer_discrepancy(const std::vector<std::uint64_t>& sorted, std::uint64_t L) {
  const i128 N = static_cast<i128>(sorted.size());
  i128 best = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const i128 i = static_cast<i128>(k) + 1;
    const i128 p = static_cast<i128>(sorted[k]) * N;  // p_i scaled by N L
    best = std::max({best, i * static_cast<i128>(L) - p, p - (i - 1) * static_cast<i128>(L)});
  }
  return Rat(from_i128(best), from_i128(N * static_cast<i128>(L)));
}

bool in_arc(const Rat& p, const Interval& arc) {
  if (arc.hi <= 1) return arc.lo <= p && p < arc.hi;
  return arc.lo <= p || p < arc.hi - 1;
}

}  // namespace

std::vector<Rat> orbit_points(const SequenceSpec& s, const Rat& x, const Rat& t, std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("orbit length N must be >= 1");
  std::vector<Rat> out;
  out.reserve(N);
  if (auto io = integer_orbit(s, x, t, N)) {
    const BigInt L(static_cast<unsigned long>(io->L));
    for (const auto c : io->c) out.emplace_back(BigInt(static_cast<unsigned long>(c)), L);
    return out;
  }
  for (const auto& a : s.terms(N)) out.push_back(frac(x * a + t));
  return out;
}

std::vector<Rat> fractional_orbit(const SequenceSpec& s, const Rat& x, const Rat& t, std::uint64_t N) {
  auto out = orbit_points(s, x, t, N);
  std::sort(out.begin(), out.end());
  return out;
}

Rat max_gap(std::span<const Rat> sorted) {
  if (sorted.empty()) throw std::invalid_argument("max_gap needs at least one point");
  Rat gap = 1 - sorted.back() + sorted.front();
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gap = max(gap, sorted[i + 1] - sorted[i]);
  return gap;
}

Rat star_discrepancy(std::span<const Rat> sorted) {
  if (sorted.empty()) throw std::invalid_argument("star discrepancy needs at least one point");
  const Rat n(static_cast<unsigned long>(sorted.size()));
  Rat best;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const Rat i(static_cast<unsigned long>(k + 1));
    best = max(best, max(i / n - sorted[k], sorted[k] - (i - 1) / n));
  }
  return best;
}

OrbitStats orbit_stats(const SequenceSpec& s, const Rat& x, const Rat& t, std::uint64_t N, unsigned bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  const auto pts = fractional_orbit(s, x, t, N);
  OrbitStats out;
  out.x = x;
  out.N = N;
  out.max_gap = max_gap(pts);
  out.star_discrepancy = star_discrepancy(pts);
  out.histogram.assign(bins, 0);
  for (const auto& p : pts) ++out.histogram[floor(p * Rat(static_cast<long>(bins))).get_ui()];
  out.approximate = !s.exact();
  return out;
}

std::vector<Rat> ExceptionalProbe::hits() const {
  std::vector<Rat> out;
  for (const auto& r : rows) {
    if (r.hit) out.push_back(r.x);
  }
  return out;
}

ExceptionalProbe exceptional_probe(const SequenceSpec& s, const Rat& delta, std::uint64_t N, const Grid& grid) {
  if (grid.step.sign() <= 0) throw std::invalid_argument("probe grid step must be positive");
  if (delta.sign() <= 0 || delta > 1) throw std::invalid_argument("probe delta must lie in (0, 1]");
  if (N == 0) throw std::invalid_argument("orbit length N must be >= 1");
  ExceptionalProbe out{delta, N, grid, std::vector<ProbeRow>(grid.count)};
  parallel_for(grid.count, [&](std::size_t i) {
    ProbeRow row;
    row.x = grid.at(i);
    if (auto io = integer_orbit(s, row.x, Rat(), N)) {
      std::sort(io->c.begin(), io->c.end());
      row.max_gap = integer_max_gap(io->c, io->L);
      row.discrepancy = integer_discrepancy(io->c, io->L);
    } else {
      const auto pts = fractional_orbit(s, row.x, Rat(), N);
      row.max_gap = max_gap(pts);
      row.discrepancy = star_discrepancy(pts);
    }
    row.hit = row.max_gap >= delta;
    out.rows[i] = std::move(row);
  });
  return out;
}

DimensionEstimate box_dimension_estimate(const ExceptionalProbe& p, std::span<const Rat> scales) {
  if (scales.size() < 2) throw std::invalid_argument("dimension estimate needs at least two scales");
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const Rat& r = scales[k];
    if (r.sign() <= 0) throw std::invalid_argument("scales must be positive");
    if (!(r / p.grid.step).is_integer()) {
      throw std::invalid_argument("scale " + r.str() + " is not a multiple of the grid step " + p.grid.step.str());
    }
    if (k > 0 && !(scales[k - 1] > r && (scales[k - 1] / r).is_integer())) {
      throw std::invalid_argument("scales must be descending with each dividing the previous (" +
                                  scales[k - 1].str() + " then " + r.str() + ")");
    }
  }
  DimensionEstimate out;
  out.scales.assign(scales.begin(), scales.end());
  const auto hits = p.hits();
  for (const auto& r : scales) {
    std::set<BigInt> boxes;
    for (const auto& x : hits) boxes.insert(floor((x - p.grid.start) / r));
    out.counts.push_back(boxes.size());
  }
  if (hits.empty()) return out;

  const auto n = static_cast<double>(scales.size());
  std::vector<double> X, Y;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    X.push_back(-std::log(scales[k].to_double()));
    Y.push_back(std::log(static_cast<double>(out.counts[k])));
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < X.size(); ++k) {
    mx += X[k] / n;
    my += Y[k] / n;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < X.size(); ++k) {
    sxx += (X[k] - mx) * (X[k] - mx);
    sxy += (X[k] - mx) * (Y[k] - my);
    syy += (Y[k] - my) * (Y[k] - my);
  }
  out.raw_slope = sxy / sxx;
  out.slope = std::clamp(out.raw_slope, 0.0, 1.0);
  if (syy == 0) {
    out.r2 = 1;
  } else {
    double ss_res = 0;
    for (std::size_t k = 0; k < X.size(); ++k) {
      const double fit = my + out.raw_slope * (X[k] - mx);
      ss_res += (Y[k] - fit) * (Y[k] - fit);
    }
    out.r2 = 1 - ss_res / syy;
  }
  return out;
}

Lemma41Result lemma41_exact_measure(const CongruenceCase& c) {
  if (c.alpha.sign() <= 0 || c.beta.sign() <= 0 || c.epsilon.sign() <= 0) {
    throw std::invalid_argument("alpha, beta and epsilon must be positive");
  }
  if (c.epsilon >= min(c.alpha, c.beta)) {
    throw std::invalid_argument("epsilon must be smaller than min(alpha, beta)");
  }
  const auto a = materialize_periodic(PeriodicSet::strip(c.alpha, 0, c.epsilon), c.window);
  const auto b = materialize_periodic(PeriodicSet::strip(c.beta, 0, c.epsilon), c.window);
  Lemma41Result out;
  out.exact = measure(intersect(a, b));
  out.asymptotic = c.epsilon * c.epsilon * c.window.width() / (c.alpha * c.beta);
  out.relative_error = abs(out.exact - out.asymptotic) / out.asymptotic;
  return out;
}

ChungErdosResult chung_erdos_check(std::span<const PeriodicSet> events, const Window& w) {
  if (events.empty()) throw std::invalid_argument("Chung-Erdos check needs at least one event");
  std::vector<IntervalSet> sets;
  sets.reserve(events.size());
  for (const auto& e : events) sets.push_back(materialize_periodic(e, w));
  const Rat width = w.width();
  IntervalSet all;
  Rat sum;
  for (const auto& s : sets) {
    all = unite(all, s);
    sum += measure(s);
  }
  Rat pair_sum;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    pair_sum += measure(sets[i]);
    for (std::size_t j = i + 1; j < sets.size(); ++j) pair_sum += 2 * measure(intersect(sets[i], sets[j]));
  }
  ChungErdosResult out;
  out.lhs = measure(all) / width;
  // with probabilities P = measure / width the bound is (sum)^2 / (pair_sum * width)
  out.rhs = pair_sum.sign() == 0 ? Rat() : sum * sum / (pair_sum * width);
  out.holds = out.lhs >= out.rhs;
  return out;
}

std::optional<std::uint64_t> delta_escape_probe(const SequenceSpec& s, std::span<const Interval> deltas,
                                                const Rat& x, std::uint64_t N) {
  if (deltas.empty()) throw std::invalid_argument("delta_escape_probe needs at least one arc");
  const Rat len = deltas.front().length();
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const auto& d = deltas[i];
    if (d.lo.sign() < 0 || d.lo >= 1 || !(d.lo < d.hi) || d.hi > d.lo + 1) {
      throw std::invalid_argument("delta arc " + std::to_string(i) + " must satisfy 0 <= lo < 1 and lo < hi <= lo + 1");
    }
    if (d.length() != len) throw std::invalid_argument("all delta arcs must have the same length");
  }
  const auto pts = orbit_points(s, x, Rat(), N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (in_arc(pts[n - 1], deltas[(n - 1) % deltas.size()])) return n;
  }
  return std::nullopt;
}

}  // namespace largeset

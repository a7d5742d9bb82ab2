#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "largeset/approximant.hpp"
#include "largeset/interval_set.hpp"
#include "largeset/sequence.hpp"

namespace largeset {

// Enumeration of D = {m >= 1} x {n >= 0}: f(m, n) = (m+n)(m+n-1)/2 + m.
std::uint64_t pair(std::uint64_t m, std::uint64_t n);
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t k);

// The first `count` positive rationals in Calkin-Wilf order: 1, 1/2, 2, 1/3, 3/2, ...
std::vector<Rat> calkin_wilf_rationals(std::size_t count);

// For b = p/q > 1 in lowest terms the reduced length is max(p, q) = p.
BigInt reduced_length_rational(const Rat& b);

// S = T ∩ yT with T = {<x> <= 1 - alpha}.
struct Lemma2Params {
  Rat epsilon;
  Approx y;
  Rat beta;   // 1 - (1 - eps + y) / (1 + y)
  Rat alpha;  // beta / 2
};

// S = {0 <= <x> <= 1/l(b) - eps}.
struct PowerStripParams {
  Rat b;
  Rat epsilon;
  BigInt ell;
  Rat width;
};

// S = T ∩ ((R+ \ U) ∪ -(R+ \ U)) with T = {0 < <x> < 1/b - eps/2} and U the
// union over blocks J_j = {m : 2^(2^j) <= m < 2^(2^(j+1))} of the bins
// m + [i/N, (i+1)/N), i = j mod N.
struct IntegerPowerParams {
  BigInt b;
  Rat epsilon;
  std::uint64_t N = 0;
};

// One removed stripe of the enumeration construction: the closed interval
// [v + i/N, v + (i+1)/N] with v = b * a_sigma + shift.
struct Stripe {
  int family = 0;  // 1..4: (b > 0, t >= 0), (b > 0, t < 0), (b < 0, t >= 0), (b < 0, t < 0)
  std::uint64_t k = 0;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t i = 0;
  Rat b;
  Rat shift;                  // n or -(n + 1)
  std::uint64_t abstract_index = 0;  // kN + i
  std::uint64_t sigma = 0;           // index into the original sequence
  Rat base;                   // b * a_sigma + shift
  Interval closed;            // [base + i/N, base + (i+1)/N]
};

struct EnumerationParams {
  SequenceSpec seq;
  std::vector<Rat> B;
  Rat epsilon;
  std::uint64_t N = 0;
  std::uint64_t depth = 0;
  std::array<std::vector<Stripe>, 4> families;  // stripes in construction order
  std::array<bool, 4> active{};                 // family has dilations of its sign
  // Region on which the depth-limited set agrees with the full construction.
  std::optional<Rat> covered_lo;  // nullopt = unbounded
  std::optional<Rat> covered_hi;
};

// A point guaranteed to lie in a removed stripe: b * a_sigma + t for the
// representative translation t = shift + i/N (any t with the same integer
// part and fractional bin works).
struct CoverageCell {
  int family;
  std::uint64_t m, n, i;
  Rat b;
  Rat t;
  std::uint64_t sigma;
  Rat point;
};

enum class AvoiderKind { lemma2, power_strip, integer_power, enumeration };

class AvoiderSet {
 public:
  using Params = std::variant<Lemma2Params, PowerStripParams, IntegerPowerParams,
                              std::shared_ptr<const EnumerationParams>>;

  explicit AvoiderSet(Params p) : params_(std::move(p)) {}

  AvoiderKind kind() const { return static_cast<AvoiderKind>(params_.index()); }
  std::string kind_name() const;
  const Params& params() const { return params_; }

  // Largeness the construction guarantees: 1 - eps, or 1/l(b) - eps.
  Rat target() const;
  // True when a parameter is an approximant of an irrational value.
  bool approximate() const;
  // Membership depends only on <x> (so the set is invariant under x -> x + 1).
  bool period_one() const { return kind() == AvoiderKind::power_strip; }

  // Exact membership with the closed/open conventions of each construction.
  bool contains(const Rat& x) const;
  // S ∩ [w.lo, w.hi) as half-open parts. Differs from `contains` only on
  // part endpoints. Throws std::out_of_range for windows the construction
  // has not determined (enumeration beyond its depth, integer_power windows
  // with too many unit cells).
  IntervalSet materialize(const Window& w) const;
  // True when the closed interval [lo, hi] misses S entirely.
  bool excludes(const Rat& lo, const Rat& hi) const;

  nlohmann::json to_json() const;

 private:
  Params params_;
};

AvoiderSet build_lemma_avoider(const Rat& epsilon, const Approx& y);
AvoiderSet build_power_strip(const Rat& b, const Rat& epsilon);
// N defaults to the least integer with 1/N <= eps/2; an explicit N must satisfy it.
AvoiderSet build_integer_power(const BigInt& b, const Rat& epsilon, std::optional<std::uint64_t> N = {});
// N = ceil(4/eps). Stripes are built for pairing indices k = 1..depth.
AvoiderSet build_enumeration_avoider(const SequenceSpec& seq, std::vector<Rat> B, const Rat& epsilon,
                                     std::uint64_t depth);

// Membership in the integer-power set without building it; runs in time
// polylogarithmic in |x|.
bool integer_power_membership(const IntegerPowerParams& p, const Rat& x);
bool integer_power_membership(const BigInt& b, const Rat& epsilon, const Rat& x);

// Largest materializable integer_power window, in unit cells.
inline constexpr std::uint64_t kMaxIntegerPowerCells = 1'000'000;

std::vector<CoverageCell> coverage_cells(const EnumerationParams& p);
// Recomputes both growth inequalities from fresh sequence terms; returns a
// description of the first violation, or nullopt.
std::optional<std::string> growth_violation(const EnumerationParams& p);

}  // namespace largeset

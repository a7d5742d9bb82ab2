#include "largeset/avoider.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace largeset {

std::uint64_t pair(std::uint64_t m, std::uint64_t n) {
  if (m == 0) throw std::invalid_argument("pair: m must be >= 1");
  const std::uint64_t s = m + n;
  if (s < m || s > (1ULL << 31)) throw std::overflow_error("pair: arguments too large");
  return s * (s - 1) / 2 + m;
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("unpair: k must be >= 1");
  // s = m + n is the least s with s(s+1)/2 >= k
  auto s = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0);
  while (s * (s + 1) / 2 < k) ++s;
  while (s > 1 && (s - 1) * s / 2 >= k) --s;
  const std::uint64_t m = k - s * (s - 1) / 2;
  return {m, s - m};
}

std::vector<Rat> calkin_wilf_rationals(std::size_t count) {
  std::vector<Rat> out;
  out.reserve(count);
  Rat q = 1;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(q);
    q = 1 / (2 * Rat(floor(q)) - q + 1);
  }
  return out;
}

BigInt reduced_length_rational(const Rat& b) {
  if (b <= 1) throw std::invalid_argument("reduced length needs b > 1, got " + b.str());
  return b.num();
}

namespace {

// Index i of the fractional bin removed from cell M >= 2, i.e. j mod N for
// the block 2^(2^j) <= M < 2^(2^(j+1)).
std::uint64_t bin_for(const BigInt& M, std::uint64_t N) {
  const std::uint64_t L = bit_length(M) - 1;  // 2^L <= M < 2^(L+1)
  const std::uint64_t j = static_cast<std::uint64_t>(std::bit_width(L)) - 1;
  return j % N;
}

Rat ip_kept_width(const IntegerPowerParams& p) { return Rat(BigInt(1), p.b) - p.epsilon / 2; }

IntervalSet materialize_integer_power(const IntegerPowerParams& p, const Window& w) {
  const BigInt first = floor(w.lo);
  const BigInt last = ceil(w.hi);  // exclusive
  if (last - first > kMaxIntegerPowerCells) {
    throw std::out_of_range("integer_power window spans " + to_string(BigInt(last - first)) +
                            " unit cells; the limit is " + std::to_string(kMaxIntegerPowerCells));
  }
  const Rat c = ip_kept_width(p);
  const Rat invN(BigInt(1), BigInt(static_cast<unsigned long>(p.N)));
  std::vector<Interval> raw;
  for (BigInt m = first; m < last; ++m) {
    const Rat lo(m);
    Interval kept{lo, lo + c};
    std::optional<Interval> bin;
    if (m >= 2) {
      const Rat i(static_cast<unsigned long>(bin_for(m, p.N)));
      bin = Interval{lo + i * invN, lo + (i + 1) * invN};
    } else if (m <= -3) {
      const Rat i(static_cast<unsigned long>(bin_for(BigInt(-m - 1), p.N)));
      bin = Interval{lo + 1 - (i + 1) * invN, lo + 1 - i * invN};
    }
    if (bin && bin->lo < kept.hi && kept.lo < bin->hi) {
      raw.push_back({kept.lo, max(kept.lo, min(kept.hi, bin->lo))});
      raw.push_back({max(kept.lo, bin->hi), kept.hi});
    } else {
      raw.push_back(std::move(kept));
    }
  }
  return intersect(normalize(std::move(raw)), normalize({Interval{w.lo, w.hi}}));
}

IntervalSet materialize_enumeration(const EnumerationParams& p, const Window& w) {
  if ((p.covered_lo && w.lo < *p.covered_lo) || (p.covered_hi && w.hi > *p.covered_hi)) {
    throw std::out_of_range("window [" + w.lo.str() + ", " + w.hi.str() + ") leaves the region [" +
                            (p.covered_lo ? p.covered_lo->str() : "-inf") + ", " +
                            (p.covered_hi ? p.covered_hi->str() : "inf") + "] determined at depth " +
                            std::to_string(p.depth) + "; increase depth");
  }
  std::vector<Interval> removed;
  for (const auto& fam : p.families) {
    for (const auto& st : fam) {
      if (st.closed.lo < w.hi && w.lo < st.closed.hi) removed.push_back(st.closed);
    }
  }
  return subtract(normalize({Interval{w.lo, w.hi}}), normalize(std::move(removed)));
}

bool closed_contains(const Interval& iv, const Rat& x) { return iv.lo <= x && x <= iv.hi; }

}  // namespace

bool integer_power_membership(const IntegerPowerParams& p, const Rat& x) {
  const Rat fr = frac(x);
  if (!(fr.sign() > 0 && fr < ip_kept_width(p))) return false;
  const Rat ax = abs(x);
  const BigInt M = floor(ax);
  if (M < 2) return true;
  const Rat i(static_cast<unsigned long>(bin_for(M, p.N)));
  const Rat N(static_cast<unsigned long>(p.N));
  const Rat fa = ax - Rat(M);
  return !(i / N <= fa && fa < (i + 1) / N);
}

bool integer_power_membership(const BigInt& b, const Rat& epsilon, const Rat& x) {
  const auto set = build_integer_power(b, epsilon);
  return integer_power_membership(std::get<IntegerPowerParams>(set.params()), x);
}

std::string AvoiderSet::kind_name() const {
  static constexpr const char* names[] = {"lemma2", "power_strip", "integer_power", "enumeration"};
  return names[params_.index()];
}

Rat AvoiderSet::target() const {
  switch (kind()) {
    case AvoiderKind::lemma2: return 1 - std::get<Lemma2Params>(params_).epsilon;
    case AvoiderKind::power_strip: return std::get<PowerStripParams>(params_).width;
    case AvoiderKind::integer_power: {
      const auto& p = std::get<IntegerPowerParams>(params_);
      return Rat(BigInt(1), p.b) - p.epsilon;
    }
    case AvoiderKind::enumeration:
      return 1 - std::get<std::shared_ptr<const EnumerationParams>>(params_)->epsilon;
  }
  return Rat();
}

bool AvoiderSet::approximate() const {
  if (const auto* p = std::get_if<Lemma2Params>(&params_)) return !p->y.exact();
  return false;
}

bool AvoiderSet::contains(const Rat& x) const {
  return std::visit(
      [&x](const auto& p) -> bool {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Lemma2Params>) {
          const Rat keep = 1 - p.alpha;
          return frac(x) <= keep && frac(x / p.y.value) <= keep;
        } else if constexpr (std::is_same_v<P, PowerStripParams>) {
          return frac(x) <= p.width;
        } else if constexpr (std::is_same_v<P, IntegerPowerParams>) {
          return integer_power_membership(p, x);
        } else {
          for (const auto& fam : p->families) {
            for (const auto& st : fam) {
              if (closed_contains(st.closed, x)) return false;
            }
          }
          return true;
        }
      },
      params_);
}

IntervalSet AvoiderSet::materialize(const Window& w) const {
  return std::visit(
      [&w](const auto& p) -> IntervalSet {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Lemma2Params>) {
          const Rat keep = 1 - p.alpha;
          const auto t = materialize_periodic(PeriodicSet::strip(1, 0, keep), w);
          const auto yt = materialize_periodic(PeriodicSet::strip(p.y.value, 0, p.y.value * keep), w);
          return intersect(t, yt);
        } else if constexpr (std::is_same_v<P, PowerStripParams>) {
          return materialize_periodic(PeriodicSet::strip(1, 0, p.width), w);
        } else if constexpr (std::is_same_v<P, IntegerPowerParams>) {
          return materialize_integer_power(p, w);
        } else {
          return materialize_enumeration(*p, w);
        }
      },
      params_);
}

bool AvoiderSet::excludes(const Rat& lo, const Rat& hi) const {
  if (hi < lo) throw std::invalid_argument("excludes: empty interval");
  const Window w(Rat(floor(lo)) - 1, Rat(floor(hi)) + 2);
  const auto s = materialize(w);
  for (const auto& part : s.parts()) {
    if (part.lo <= hi && lo <= part.hi) return false;
  }
  return true;
}

AvoiderSet build_lemma_avoider(const Rat& epsilon, const Approx& y) {
  if (epsilon.sign() <= 0 || epsilon > 1) throw std::invalid_argument("lemma2 needs epsilon in (0, 1]");
  if (y.value <= 1) throw std::invalid_argument("lemma2 needs y > 1");
  Lemma2Params p;
  p.epsilon = epsilon;
  p.y = y;
  p.beta = 1 - (1 - epsilon + y.value) / (1 + y.value);
  p.alpha = p.beta / 2;
  return AvoiderSet(std::move(p));
}

AvoiderSet build_power_strip(const Rat& b, const Rat& epsilon) {
  PowerStripParams p;
  p.b = b;
  p.ell = reduced_length_rational(b);
  p.epsilon = epsilon;
  p.width = Rat(BigInt(1), p.ell) - epsilon;
  if (epsilon.sign() <= 0 || p.width.sign() <= 0) {
    throw std::invalid_argument("power_strip needs epsilon in (0, 1/" + to_string(p.ell) + ")");
  }
  return AvoiderSet(std::move(p));
}

AvoiderSet build_integer_power(const BigInt& b, const Rat& epsilon, std::optional<std::uint64_t> N) {
  if (b < 2) throw std::invalid_argument("integer_power needs integer b >= 2");
  if (epsilon.sign() <= 0 || epsilon >= Rat(BigInt(1), b)) {
    throw std::invalid_argument("integer_power needs epsilon in (0, 1/" + to_string(b) + ")");
  }
  IntegerPowerParams p{b, epsilon, 0};
  const BigInt least = ceil(2 / epsilon);
  if (!N) {
    p.N = least.get_ui();
  } else {
    if (*N == 0 || Rat(BigInt(1), BigInt(static_cast<unsigned long>(*N))) > epsilon / 2) {
      throw std::invalid_argument("integer_power needs 1/N <= epsilon/2, i.e. N >= " + to_string(least));
    }
    p.N = *N;
  }
  return AvoiderSet(std::move(p));
}

namespace {

// Memoized terms of the sequence used by the greedy subsequence search.
class TermCache {
 public:
  explicit TermCache(const SequenceSpec& s) : s_(s), len_(s.length()) {}

  bool available(std::uint64_t n) const { return !len_ || n <= *len_; }
  const Rat& operator[](std::uint64_t n) {
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, s_.term(n)).first;
    return it->second;
  }

 private:
  const SequenceSpec& s_;
  std::optional<std::uint64_t> len_;
  std::map<std::uint64_t, Rat> cache_;
};

constexpr std::uint64_t kMaxSearchIndex = 1ULL << 62;

// Least n > after with pred(n), where pred is monotone (false ... false true ...).
template <class Pred>
std::uint64_t least_index_after(std::uint64_t after, TermCache& terms, Pred pred, const std::string& what) {
  std::uint64_t lo = after;  // pred known false (or unconstrained) here
  std::uint64_t step = 1;
  std::uint64_t hi = after + 1;
  for (;;) {
    if (!terms.available(hi)) {
      throw std::out_of_range(what + " needs a sequence term beyond the available range (index " +
                              std::to_string(hi) + " or later)");
    }
    if (pred(hi)) break;
    lo = hi;
    if (step > kMaxSearchIndex / 2 || hi > kMaxSearchIndex - step) {
      throw std::out_of_range(what + " found no admissible term below index 2^62");
    }
    step *= 2;
    hi = lo + step;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

AvoiderSet build_enumeration_avoider(const SequenceSpec& seq, std::vector<Rat> B, const Rat& epsilon,
                                     std::uint64_t depth) {
  if (epsilon.sign() <= 0 || epsilon > 1) throw std::invalid_argument("enumeration needs epsilon in (0, 1]");
  if (!seq.exact()) throw std::invalid_argument("enumeration needs an exactly evaluated sequence");
  if (B.empty()) throw std::invalid_argument("enumeration needs at least one dilation");
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (B[i].sign() == 0) throw std::invalid_argument("dilation list B[" + std::to_string(i) + "] is zero");
  }
  auto p = std::make_shared<EnumerationParams>(EnumerationParams{seq, std::move(B), epsilon, 0, depth, {}, {}, {}, {}});
  p->N = ceil(4 / epsilon).get_ui();
  const Rat N(static_cast<unsigned long>(p->N));
  TermCache terms(seq);

  for (int fam = 1; fam <= 4; ++fam) {
    const bool positive = fam <= 2;
    const bool negative_shift = fam % 2 == 0;
    std::vector<Rat> dil;
    for (const auto& b : p->B) {
      if ((b.sign() > 0) == positive) dil.push_back(b);
    }
    p->active[fam - 1] = !dil.empty();
    if (dil.empty()) continue;
    auto shift_of = [&](std::uint64_t n) {
      return negative_shift ? -Rat(static_cast<unsigned long>(n + 1)) : Rat(static_cast<unsigned long>(n));
    };
    auto& stripes = p->families[fam - 1];
    for (std::uint64_t k = 1; k <= depth; ++k) {
      const auto [m, n] = unpair(k);
      if (m > dil.size()) continue;
      const Rat& b = dil[m - 1];
      const Rat shift = shift_of(n);
      for (std::uint64_t i = 0; i < p->N; ++i) {
        const std::uint64_t j = k * p->N + i;
        std::uint64_t sigma;
        if (stripes.empty()) {
          sigma = j;
          if (!terms.available(sigma)) {
            throw std::out_of_range("enumeration depth " + std::to_string(depth) + " needs at least " +
                                    std::to_string(sigma) + " sequence terms");
          }
        } else {
          const Stripe& prev = stripes.back();
          auto pred = [&](std::uint64_t idx) {
            const Rat v = b * terms[idx] + shift;
            return positive ? v > prev.base + 2 : v < prev.base - 2;
          };
          sigma = least_index_after(prev.sigma, terms, pred,
                                    "enumeration stripe (k=" + std::to_string(k) + ", i=" + std::to_string(i) + ")");
        }
        Stripe st;
        st.family = fam;
        st.k = k;
        st.m = m;
        st.n = n;
        st.i = i;
        st.b = b;
        st.shift = shift;
        st.abstract_index = j;
        st.sigma = sigma;
        st.base = b * terms[sigma] + shift;
        const Rat off(static_cast<unsigned long>(i));
        st.closed = {st.base + off / N, st.base + (off + 1) / N};
        stripes.push_back(std::move(st));
      }
    }
    // Stripes for pairing indices beyond depth start past this bound.
    std::optional<Rat> bound;
    if (!stripes.empty()) {
      bound = positive ? stripes.back().closed.hi + 1 : stripes.back().closed.lo - 1;
    } else {
      std::uint64_t k = depth + 1;
      while (unpair(k).first > dil.size()) ++k;
      const auto [m, n] = unpair(k);
      if (!terms.available(k * p->N)) {
        throw std::out_of_range("enumeration needs at least " + std::to_string(k * p->N) + " sequence terms");
      }
      const Rat v = dil[m - 1] * terms[k * p->N] + shift_of(n);
      bound = positive ? v : v + 1 / N;
    }
    if (positive) {
      p->covered_hi = p->covered_hi ? min(*p->covered_hi, *bound) : *bound;
    } else {
      p->covered_lo = p->covered_lo ? max(*p->covered_lo, *bound) : *bound;
    }
  }
  return AvoiderSet(std::shared_ptr<const EnumerationParams>(std::move(p)));
}

std::vector<CoverageCell> coverage_cells(const EnumerationParams& p) {
  std::vector<CoverageCell> out;
  const Rat N(static_cast<unsigned long>(p.N));
  for (const auto& fam : p.families) {
    for (const auto& st : fam) {
      const Rat t = st.shift + Rat(static_cast<unsigned long>(st.i)) / N;
      out.push_back({st.family, st.m, st.n, st.i, st.b, t, st.sigma, st.b * p.seq.term(st.sigma) + t});
    }
  }
  return out;
}

std::optional<std::string> growth_violation(const EnumerationParams& p) {
  for (const auto& fam : p.families) {
    for (std::size_t s = 1; s < fam.size(); ++s) {
      const Stripe& a = fam[s - 1];
      const Stripe& c = fam[s];
      const Rat va = a.b * p.seq.term(a.sigma) + a.shift;
      const Rat vc = c.b * p.seq.term(c.sigma) + c.shift;
      const bool increasing = c.b.sign() > 0;
      const bool ok = increasing ? vc > va + 2 : vc < va - 2;
      const bool same_k = a.k == c.k;
      if (!ok || !(a.sigma < c.sigma)) {
        return std::string(same_k ? "within-block" : "cross-block") + " growth fails in family " +
               std::to_string(c.family) + " at k=" + std::to_string(c.k) + ", i=" + std::to_string(c.i);
      }
    }
  }
  return std::nullopt;
}

nlohmann::json AvoiderSet::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name();
  j["target"] = target().str();
  j["approximate"] = approximate();
  std::visit(
      [&j](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Lemma2Params>) {
          j["epsilon"] = p.epsilon.str();
          j["y"] = p.y.value.str();
          j["y_error"] = p.y.error.str();
          j["y_provenance"] = p.y.provenance;
          j["alpha"] = p.alpha.str();
          j["beta"] = p.beta.str();
        } else if constexpr (std::is_same_v<P, PowerStripParams>) {
          j["b"] = p.b.str();
          j["epsilon"] = p.epsilon.str();
          j["reduced_length"] = to_string(p.ell);
          j["strip_width"] = p.width.str();
        } else if constexpr (std::is_same_v<P, IntegerPowerParams>) {
          j["b"] = to_string(p.b);
          j["epsilon"] = p.epsilon.str();
          j["N"] = p.N;
        } else {
          j["sequence"] = p->seq.to_json();
          auto B = nlohmann::json::array();
          for (const auto& b : p->B) B.push_back(b.str());
          j["B"] = B;
          j["epsilon"] = p->epsilon.str();
          j["N"] = p->N;
          j["depth"] = p->depth;
          j["covered_lo"] = p->covered_lo ? nlohmann::json(p->covered_lo->str()) : nlohmann::json(nullptr);
          j["covered_hi"] = p->covered_hi ? nlohmann::json(p->covered_hi->str()) : nlohmann::json(nullptr);
          auto map = nlohmann::json::array();
          for (const auto& fam : p->families) {
            for (const auto& st : fam) {
              map.push_back({{"family", st.family}, {"k", st.k}, {"i", st.i},
                             {"abstract_index", st.abstract_index}, {"sigma", st.sigma}});
            }
          }
          j["subsequence_map"] = map;
        }
      },
      params_);
  return j;
}

}  // namespace largeset

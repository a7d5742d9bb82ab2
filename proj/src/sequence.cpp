#include "largeset/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace largeset {

namespace {

constexpr long kMonotoneCheckLimit = 1'000'000;

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Rat eval_poly(const std::vector<Rat>& c, const Rat& x) {
  Rat acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void trim_zeros(std::vector<Rat>& c) {
  while (!c.empty() && c.back().sign() == 0) c.pop_back();
}

// Proves P(n+1) > P(n) for every integer n >= 1, or throws.
void check_polynomial_increasing(std::vector<Rat> c) {
  trim_zeros(c);
  if (c.size() < 2) throw std::invalid_argument("polynomial sequence must be nonconstant");
  const std::size_t d = c.size() - 1;
  // delta(n) = P(n+1) - P(n) = sum_k c_k sum_{j<k} C(k,j) n^j
  std::vector<Rat> delta(d);
  for (std::size_t k = 1; k <= d; ++k) {
    for (std::size_t j = 0; j < k; ++j) delta[j] += c[k] * Rat(binomial(k, j));
  }
  const Rat& lead = delta.back();
  if (lead.sign() <= 0) throw std::invalid_argument("polynomial sequence must have positive leading coefficient");
  // Cauchy bound on the real roots of delta; beyond it delta has the sign of its lead.
  Rat bound = 1;
  for (std::size_t j = 0; j + 1 < delta.size(); ++j) bound = max(bound, 1 + abs(delta[j] / lead));
  const BigInt last = floor(bound);
  if (last > kMonotoneCheckLimit) {
    throw std::invalid_argument("polynomial monotonicity cannot be certified: root bound " + bound.str() +
                                " exceeds the check limit");
  }
  for (long n = 1; n <= last.get_si(); ++n) {
    if (eval_poly(delta, Rat(n)).sign() <= 0) {
      throw std::invalid_argument("polynomial sequence is not strictly increasing at n = " + std::to_string(n));
    }
  }
}

bool all_integers(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& r) { return r.is_integer(); });
}

BigInt pow10(unsigned digits) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, digits);
  return out;
}

// floor(p^(a/b) * 10^digits) computed with integer roots, plus whether exact.
BigInt scaled_root_power(std::uint64_t p, const Rat& theta, unsigned digits) {
  const unsigned long a = theta.num().get_ui();
  const unsigned long b = theta.den().get_ui();
  BigInt radicand;
  mpz_ui_pow_ui(radicand.get_mpz_t(), p, a);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits) * b);
  radicand *= scale;
  BigInt root;
  mpz_root(root.get_mpz_t(), radicand.get_mpz_t(), b);
  return root;
}

}  // namespace

SequenceSpec::SequenceSpec(Kind kind, std::string name) : kind_(std::move(kind)), name_(std::move(name)) {
  std::visit(
      [this](auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, seq::Polynomial>) {
          trim_zeros(k.coeffs);
          check_polynomial_increasing(k.coeffs);
        } else if constexpr (std::is_same_v<K, seq::Geometric>) {
          if (k.base <= 1) throw std::invalid_argument("geometric sequence needs base > 1");
        } else if constexpr (std::is_same_v<K, seq::IntegerPower>) {
          if (k.base < 2) throw std::invalid_argument("integer power sequence needs integer base >= 2");
        } else if constexpr (std::is_same_v<K, seq::Block>) {
          for (std::size_t i = 0; i + 1 < k.schedule.size(); ++i) {
            // f(i+1) > f(i) + i with 1-based i
            if (!(k.schedule[i + 1] > k.schedule[i] + Rat(static_cast<long>(i + 1)))) {
              throw std::invalid_argument("block schedule must satisfy f(i+1) > f(i) + i (fails at i = " +
                                          std::to_string(i + 1) + ")");
            }
          }
        } else if constexpr (std::is_same_v<K, seq::PrimePower>) {
          if (k.exponents.empty() || k.exponents.size() != k.coeffs.size()) {
            throw std::invalid_argument("prime_power needs matching, non-empty exponents and coeffs");
          }
          for (std::size_t j = 0; j < k.exponents.size(); ++j) {
            if (k.exponents[j].sign() <= 0) throw std::invalid_argument("prime_power exponents must be positive");
            if (k.exponents[j].den() > 64) throw std::invalid_argument("prime_power exponent denominators must be <= 64");
            if (k.coeffs[j].value.sign() == 0) throw std::invalid_argument("prime_power coefficients must be nonzero");
          }
          if (k.sieve_bound < 2) throw std::invalid_argument("prime_power sieve bound must be >= 2");
          monotone_verified_ = std::all_of(k.coeffs.begin(), k.coeffs.end(),
                                           [](const Approx& a) { return a.value - a.error > 0; });
          primes_ = prime_table(k.sieve_bound);
        } else if constexpr (std::is_same_v<K, seq::Explicit>) {
          for (std::size_t i = 0; i + 1 < k.terms.size(); ++i) {
            if (!(k.terms[i] < k.terms[i + 1])) {
              throw std::invalid_argument("explicit sequence is not strictly increasing at index " +
                                          std::to_string(i + 1));
            }
          }
        }
      },
      kind_);
  if (name_.empty()) name_ = kind_name();
}

SequenceSpec SequenceSpec::polynomial(std::vector<Rat> coeffs) {
  return SequenceSpec(seq::Polynomial{std::move(coeffs)});
}
SequenceSpec SequenceSpec::geometric(Rat base) { return SequenceSpec(seq::Geometric{std::move(base)}); }
SequenceSpec SequenceSpec::integer_power(BigInt base) {
  return SequenceSpec(seq::IntegerPower{std::move(base)});
}
SequenceSpec SequenceSpec::block(std::vector<Rat> schedule) {
  return SequenceSpec(seq::Block{std::move(schedule)});
}
SequenceSpec SequenceSpec::prime_power(std::vector<Rat> exponents, std::vector<Approx> coeffs,
                                       std::uint64_t sieve_bound) {
  return SequenceSpec(seq::PrimePower{std::move(exponents), std::move(coeffs), sieve_bound});
}
SequenceSpec SequenceSpec::explicit_terms(std::vector<Rat> terms) {
  return SequenceSpec(seq::Explicit{std::move(terms)});
}

std::string SequenceSpec::kind_name() const {
  static constexpr const char* names[] = {"polynomial", "geometric", "integer_power",
                                          "block",      "prime_power", "explicit"};
  return names[kind_.index()];
}

bool SequenceSpec::exact() const {
  if (const auto* k = std::get_if<seq::PrimePower>(&kind_)) {
    return std::all_of(k->exponents.begin(), k->exponents.end(), [](const Rat& t) { return t.is_integer(); }) &&
           std::all_of(k->coeffs.begin(), k->coeffs.end(), [](const Approx& a) { return a.exact(); });
  }
  return true;
}

bool SequenceSpec::integer_valued() const {
  return std::visit(
      [this](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, seq::Polynomial>) {
          // Integer coefficients suffice; integer-valued polynomials like n(n+1)/2
          // take the general rational path.
          return all_integers(k.coeffs);
        } else if constexpr (std::is_same_v<K, seq::Geometric>) {
          return k.base.is_integer();
        } else if constexpr (std::is_same_v<K, seq::IntegerPower>) {
          return true;
        } else if constexpr (std::is_same_v<K, seq::Block>) {
          return all_integers(k.schedule);
        } else if constexpr (std::is_same_v<K, seq::PrimePower>) {
          return exact() && std::all_of(k.coeffs.begin(), k.coeffs.end(),
                                        [](const Approx& a) { return a.value.is_integer(); });
        } else {
          return all_integers(k.terms);
        }
      },
      kind_);
}

std::optional<std::uint64_t> SequenceSpec::length() const {
  if (const auto* k = std::get_if<seq::Explicit>(&kind_)) return k->terms.size();
  if (const auto* k = std::get_if<seq::Block>(&kind_)) {
    if (k->schedule.empty()) return std::nullopt;
    const std::uint64_t L = k->schedule.size();
    return L * (L + 1) / 2;
  }
  return std::nullopt;
}

BlockPosition block_position(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sequence indices start at 1");
  // smallest i with i(i+1)/2 >= n
  auto i = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  while (i * (i + 1) / 2 < n) ++i;
  while (i > 1 && (i - 1) * i / 2 >= n) --i;
  return {i, n - (i - 1) * i / 2};
}

BigInt doubly_exponential(std::uint64_t i) {
  if (i >= 40) throw std::invalid_argument("2^(2^" + std::to_string(i) + ") is too large to materialize");
  BigInt out = 1;
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 1UL << i);
  return out;
}

Rat SequenceSpec::term(std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("sequence indices start at 1");
  return std::visit(
      [this, n](const auto& k) -> Rat {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, seq::Polynomial>) {
          return eval_poly(k.coeffs, Rat(n));
        } else if constexpr (std::is_same_v<K, seq::Geometric>) {
          return pow(k.base, n);
        } else if constexpr (std::is_same_v<K, seq::IntegerPower>) {
          BigInt out;
          mpz_pow_ui(out.get_mpz_t(), k.base.get_mpz_t(), n);
          return Rat(out);
        } else if constexpr (std::is_same_v<K, seq::Block>) {
          const auto pos = block_position(n);
          if (k.schedule.empty()) return Rat(BigInt(doubly_exponential(pos.block) + pos.offset));
          if (pos.block > k.schedule.size()) {
            throw std::out_of_range("block schedule has " + std::to_string(k.schedule.size()) +
                                    " entries; term " + std::to_string(n) + " needs f(" +
                                    std::to_string(pos.block) + ")");
          }
          return k.schedule[pos.block - 1] + Rat(pos.offset);
        } else if constexpr (std::is_same_v<K, seq::PrimePower>) {
          if (n > primes_->size()) {
            throw PrecisionShortfall("prime_power term " + std::to_string(n) + " needs sieve bound >= " +
                                     std::to_string(sieve_bound_for(n)) + " (current " +
                                     std::to_string(k.sieve_bound) + ")");
          }
          const std::uint64_t p = (*primes_)[n - 1];
          const BigInt scale = pow10(k.digits);
          Rat sum;
          for (std::size_t j = 0; j < k.exponents.size(); ++j) {
            Rat power;
            if (k.exponents[j].is_integer()) {
              power = pow(Rat(p), k.exponents[j].num().get_ui());
            } else {
              power = Rat(scaled_root_power(p, k.exponents[j], k.digits), scale);
            }
            sum += k.coeffs[j].value * power;
          }
          return sum;
        } else {
          if (n > k.terms.size()) {
            throw std::out_of_range("explicit sequence has " + std::to_string(k.terms.size()) + " terms; requested " +
                                    std::to_string(n));
          }
          return k.terms[n - 1];
        }
      },
      kind_);
}

Rat SequenceSpec::term_error(std::uint64_t n) const {
  const auto* k = std::get_if<seq::PrimePower>(&kind_);
  if (k == nullptr || exact()) return Rat();
  if (n == 0 || n > primes_->size()) return term(n);  // raises the appropriate error
  const std::uint64_t p = (*primes_)[n - 1];
  const BigInt scale = pow10(k->digits);
  const Rat ulp(BigInt(1), scale);
  Rat err;
  for (std::size_t j = 0; j < k->exponents.size(); ++j) {
    Rat power_hi;
    if (k->exponents[j].is_integer()) {
      power_hi = pow(Rat(p), k->exponents[j].num().get_ui());
    } else {
      power_hi = Rat(scaled_root_power(p, k->exponents[j], k->digits), scale) + ulp;
      err += abs(k->coeffs[j].value) * ulp;
    }
    err += k->coeffs[j].error * power_hi;
  }
  return err;
}

std::vector<Rat> SequenceSpec::terms(std::uint64_t count) const {
  std::vector<Rat> out;
  out.reserve(count);
  for (std::uint64_t n = 1; n <= count; ++n) {
    out.push_back(term(n));
    if (!monotone_verified_ && n > 1 && !(out[n - 2] < out[n - 1])) {
      throw std::invalid_argument(name_ + " is not strictly increasing at n = " + std::to_string(n - 1));
    }
  }
  return out;
}

std::vector<std::uint64_t> SequenceSpec::residues(std::uint64_t count, std::uint64_t modulus) const {
  if (!integer_valued()) throw std::logic_error("residues requested for a non-integer sequence " + name_);
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (const auto len = length(); len && count > *len) {
    throw std::out_of_range(name_ + " has only " + std::to_string(*len) + " terms; requested " +
                            std::to_string(count));
  }
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, seq::Polynomial>) {
          std::vector<std::uint64_t> c;
          for (const auto& v : k.coeffs) c.push_back(mod_u64(v.num(), modulus));
          for (std::uint64_t n = 1; n <= count; ++n) {
            const std::uint64_t x = n % modulus;
            std::uint64_t acc = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (mulmod(acc, x, modulus) + *it) % modulus;
            out.push_back(acc);
          }
        } else if constexpr (std::is_same_v<K, seq::Geometric> || std::is_same_v<K, seq::IntegerPower>) {
          BigInt b;
          if constexpr (std::is_same_v<K, seq::Geometric>) {
            b = k.base.num();
          } else {
            b = k.base;
          }
          const std::uint64_t br = mod_u64(b, modulus);
          std::uint64_t r = 1 % modulus;
          for (std::uint64_t n = 1; n <= count; ++n) {
            r = mulmod(r, br, modulus);
            out.push_back(r);
          }
        } else if constexpr (std::is_same_v<K, seq::Block>) {
          std::uint64_t block = 0, f = 0;
          for (std::uint64_t n = 1; n <= count; ++n) {
            const auto pos = block_position(n);
            if (pos.block != block) {
              block = pos.block;
              if (!k.schedule.empty()) {
                f = mod_u64(k.schedule[block - 1].num(), modulus);
              } else if (block == 1) {
                f = 4 % modulus;
              } else {
                // f(i) = f(i-1)^2 for f(i) = 2^(2^i); blocks are visited in order
                f = mulmod(f, f, modulus);
              }
            }
            out.push_back((f + pos.offset % modulus) % modulus);
          }
        } else {
          for (std::uint64_t n = 1; n <= count; ++n) out.push_back(mod_u64(term(n).num(), modulus));
        }
      },
      kind_);
  return out;
}

std::shared_ptr<const std::vector<std::uint64_t>> prime_table(std::uint64_t bound) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const std::vector<std::uint64_t>>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(bound); it != cache.end()) return it->second;
  std::vector<bool> composite(bound + 1, false);
  auto primes = std::make_shared<std::vector<std::uint64_t>>();
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes->push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  cache.emplace(bound, primes);
  return primes;
}

std::uint64_t sieve_bound_for(std::uint64_t n) {
  if (n < 6) return 13;
  // Rosser: p_n < n (ln n + ln ln n) for n >= 6
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::ceil(x * (std::log(x) + std::log(std::log(x))))) + 1;
}

DensityEstimate banach_density_estimate(const SequenceSpec& s, std::int64_t window_length, const BigInt& h_lo,
                                        const BigInt& h_hi, std::uint64_t max_terms) {
  if (window_length <= 0) throw std::invalid_argument("density window length must be positive");
  if (h_hi < h_lo) throw std::invalid_argument("density offset range is empty");
  if (const auto len = s.length()) max_terms = std::min(max_terms, *len);
  std::vector<BigInt> parts;
  parts.reserve(max_terms);
  for (const auto& t : s.terms(max_terms)) {
    BigInt v = floor(t);
    if (parts.empty() || parts.back() != v) parts.push_back(std::move(v));
  }
  // At the smallest maximizer h > h_lo, stepping left must lose h + n, so
  // h + n is an element: the candidates h = e - n (e in A) and h_lo suffice.
  auto count_at = [&](const BigInt& h) {
    const BigInt first = h + 1;
    const BigInt last = h + window_length;
    auto lo = std::lower_bound(parts.begin(), parts.end(), first);
    auto hi = std::upper_bound(parts.begin(), parts.end(), last);
    return static_cast<std::int64_t>(hi - lo);
  };
  DensityEstimate best{window_length, h_lo, -1, Rat()};
  auto consider = [&](const BigInt& h) {
    const std::int64_t c = count_at(h);
    if (c > best.count || (c == best.count && h < best.best_offset)) {
      best.count = c;
      best.best_offset = h;
    }
  };
  consider(h_lo);
  for (const auto& e : parts) {
    const BigInt h = e - window_length;
    if (h_lo <= h && h <= h_hi) consider(h);
  }
  best.ratio = Rat(BigInt(best.count), BigInt(window_length));
  return best;
}

GrowthProfile growth_profile(const SequenceSpec& s, std::uint64_t count) {
  if (count < 2) throw std::invalid_argument("growth profile needs at least two terms");
  const auto t = s.terms(count);
  GrowthProfile out;
  out.ratios.reserve(count - 1);
  for (std::size_t n = 0; n + 1 < t.size(); ++n) {
    if (t[n].sign() <= 0) throw std::invalid_argument("growth ratios need positive terms (a_" + std::to_string(n + 1) + " <= 0)");
    out.ratios.push_back(t[n + 1] / t[n]);
    if (t[n + 1] - t[n] < 1) out.one_separated = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Rat rat_from_json(const nlohmann::json& j, const std::string& path) {
  try {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  throw std::invalid_argument(path + ": expected a rational as string or integer, got " + j.dump());
}

std::vector<Rat> rats_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw std::invalid_argument(path + ": expected an array");
  std::vector<Rat> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rat_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// Named approximants keep their source text ("sqrt2@1e-12"); other inexact
// coefficients become {value, error}.
nlohmann::json approx_to_json(const Approx& a) {
  const auto arrow = a.provenance.find(" -> ");
  if (arrow != std::string::npos) return a.provenance.substr(0, arrow);
  if (a.exact()) return a.value.str();
  return {{"value", a.value.str()}, {"error", a.error.str()}};
}

nlohmann::json rats_to_json(const std::vector<Rat>& v) {
  auto out = nlohmann::json::array();
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw std::invalid_argument(path + "." + key + ": required field missing");
  return j.at(key);
}

}  // namespace

nlohmann::json SequenceSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name();
  j["name"] = name_;
  std::visit(
      [&j](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, seq::Polynomial>) {
          j["coeffs"] = rats_to_json(k.coeffs);
        } else if constexpr (std::is_same_v<K, seq::Geometric>) {
          j["b"] = k.base.str();
        } else if constexpr (std::is_same_v<K, seq::IntegerPower>) {
          j["b"] = k.base.get_str();
        } else if constexpr (std::is_same_v<K, seq::Block>) {
          if (k.schedule.empty()) {
            j["f"] = "doubly_exponential";
          } else {
            j["f"] = rats_to_json(k.schedule);
          }
        } else if constexpr (std::is_same_v<K, seq::PrimePower>) {
          j["exponents"] = rats_to_json(k.exponents);
          auto coeffs = nlohmann::json::array();
          for (const auto& a : k.coeffs) coeffs.push_back(approx_to_json(a));
          j["coeffs"] = coeffs;
          j["sieve_bound"] = k.sieve_bound;
          j["digits"] = k.digits;
        } else {
          j["terms"] = rats_to_json(k.terms);
        }
      },
      kind_);
  return j;
}

SequenceSpec SequenceSpec::from_json(const nlohmann::json& j) {
  const std::string path = "sequence";
  if (!j.is_object()) throw std::invalid_argument(path + ": expected a JSON object");
  const auto kind = require(j, "kind", path).get<std::string>();
  std::string name = j.value("name", std::string());
  if (kind == "polynomial") {
    return SequenceSpec(seq::Polynomial{rats_from_json(require(j, "coeffs", path), path + ".coeffs")}, name);
  }
  if (kind == "geometric") {
    return SequenceSpec(seq::Geometric{rat_from_json(require(j, "b", path), path + ".b")}, name);
  }
  if (kind == "integer_power") {
    const Rat b = rat_from_json(require(j, "b", path), path + ".b");
    if (!b.is_integer()) throw std::invalid_argument(path + ".b: integer_power needs an integer base");
    return SequenceSpec(seq::IntegerPower{b.num()}, name);
  }
  if (kind == "block") {
    if (!j.contains("f") || (j["f"].is_string() && j["f"] == "doubly_exponential")) {
      return SequenceSpec(seq::Block{}, name);
    }
    return SequenceSpec(seq::Block{rats_from_json(j["f"], path + ".f")}, name);
  }
  if (kind == "prime_power") {
    seq::PrimePower pp;
    pp.exponents = rats_from_json(require(j, "exponents", path), path + ".exponents");
    const auto& coeffs = require(j, "coeffs", path);
    if (!coeffs.is_array()) throw std::invalid_argument(path + ".coeffs: expected an array");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const std::string p = path + ".coeffs[" + std::to_string(i) + "]";
      if (coeffs[i].is_string()) {
        try {
          pp.coeffs.push_back(parse_approx(coeffs[i].get<std::string>()));
        } catch (const std::invalid_argument& e) {
          throw std::invalid_argument(p + ": " + e.what());
        }
      } else if (coeffs[i].is_object()) {
        const Rat v = rat_from_json(require(coeffs[i], "value", p), p + ".value");
        const Rat e = rat_from_json(require(coeffs[i], "error", p), p + ".error");
        if (e.sign() < 0) throw std::invalid_argument(p + ".error: must be >= 0");
        pp.coeffs.push_back(Approx{v, e, v.str()});
      } else {
        const Rat v = rat_from_json(coeffs[i], p);
        pp.coeffs.push_back(Approx{v, Rat(), v.str()});
      }
    }
    pp.sieve_bound = j.value("sieve_bound", pp.sieve_bound);
    pp.digits = j.value("digits", pp.digits);
    return SequenceSpec(std::move(pp), name);
  }
  if (kind == "explicit") {
    return SequenceSpec(seq::Explicit{rats_from_json(require(j, "terms", path), path + ".terms")}, name);
  }
  throw std::invalid_argument(path + ".kind: unknown sequence kind '" + kind + "'");
}

SequenceSpec SequenceSpec::parse(const std::string& text) {
  if (!text.empty() && text.front() == '{') return from_json(nlohmann::json::parse(text));
  if (text == "n") return identity();
  if (text == "block") return block();
  if (text.size() > 2 && text.substr(0, 2) == "n^") {
    const long k = std::stol(text.substr(2));
    if (k < 1 || k > 64) throw std::invalid_argument("sequence shorthand n^k needs 1 <= k <= 64");
    std::vector<Rat> c(static_cast<std::size_t>(k) + 1);
    c.back() = 1;
    return polynomial(std::move(c));
  }
  if (text.size() > 2 && text.substr(text.size() - 2) == "^n") {
    const Rat b = Rat::parse(text.substr(0, text.size() - 2));
    if (b.is_integer() && b >= 2) return integer_power(b.num());
    return geometric(b);
  }
  throw std::invalid_argument("unrecognized sequence '" + text + "' (use JSON, n, n^k, b^n, or block)");
}

}  // namespace largeset

#include "largeset/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "largeset/parallel.hpp"

namespace largeset {

namespace {

constexpr std::uint64_t kMaxCycleSteps = 1ULL << 32;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::optional<BigInt> integer_base(const SequenceSpec& s) {
  if (const auto* k = std::get_if<seq::IntegerPower>(&s.kind())) return k->base;
  if (const auto* k = std::get_if<seq::Geometric>(&s.kind())) {
    if (k->base.is_integer()) return k->base.num();
  }
  return std::nullopt;
}

nlohmann::json opt_index(const std::optional<std::uint64_t>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

LargenessReport verify_largeness(const AvoiderSet& a, const Window& w) {
  const auto s = a.materialize(w);
  const auto m = min_unit_window_measure(s, w);
  LargenessReport r{a.target(), m.value, m.argmin, w, false, a.approximate()};
  r.pass = r.min_measure >= r.target;
  return r;
}

EscapeWitness find_escape_witness(const AvoiderSet& a, const SequenceSpec& s, const Rat& x, const Rat& t,
                                  std::uint64_t depth, const WitnessOptions& opt) {
  if (x.sign() == 0) throw std::invalid_argument("escape witness needs a nonzero dilation x");
  if (opt.x_error.sign() < 0 || opt.t_error.sign() < 0) throw std::invalid_argument("error bounds must be >= 0");
  EscapeWitness out{x, t, std::nullopt, depth, 0, std::nullopt};
  if (const auto len = s.length(); len && depth > *len) {
    throw std::out_of_range(s.name() + " has only " + std::to_string(*len) + " terms; depth " +
                            std::to_string(depth) + " requested");
  }
  const bool exact_terms = s.exact();
  const bool exact_inputs = exact_terms && opt.x_error.sign() == 0 && opt.t_error.sign() == 0;
  for (std::uint64_t n = 1; n <= depth; ++n) {
    const Rat an = s.term(n);
    const Rat v = x * an + t;
    if (a.contains(v)) continue;
    if (exact_inputs) {
      out.witness_index = n;
      return out;
    }
    const Rat err_a = exact_terms ? Rat() : s.term_error(n);
    const Rat e = abs(x) * err_a + opt.x_error * (abs(an) + err_a) + opt.t_error;
    if (a.excludes(v - e, v + e)) {
      out.witness_index = n;
      return out;
    }
    if (!out.first_uncertified) out.first_uncertified = n;
    ++out.uncertified_hits;
  }
  return out;
}

ScanResult grid_escape_scan(const AvoiderSet& a, const SequenceSpec& s, std::span<const Rat> x_grid,
                            std::span<const Rat> t_grid, std::uint64_t depth, const WitnessOptions& opt) {
  ScanResult out;
  const std::size_t cols = t_grid.size();
  const std::size_t n = x_grid.size() * cols;
  out.cells.resize(n);
  parallel_for(n, [&](std::size_t c) {
    out.cells[c] = find_escape_witness(a, s, x_grid[c / cols], t_grid[c % cols], depth, opt);
  });
  out.summary.cells = n;
  for (const auto& w : out.cells) {
    if (w.witness_index) {
      ++out.summary.found;
      out.summary.max_witness_index = std::max(out.summary.max_witness_index, *w.witness_index);
    } else {
      ++out.summary.inconclusive;
    }
  }
  return out;
}

PeriodCertificate eventual_period(const BigInt& b, std::uint64_t modulus) {
  if (b < 2) throw std::invalid_argument("eventual_period needs b >= 2");
  if (modulus == 0) throw std::invalid_argument("eventual_period needs modulus >= 1");
  const std::uint64_t bm = mod_u64(b, modulus);
  auto f = [&](std::uint64_t v) { return mulmod(v, bm, modulus); };
  const std::uint64_t x0 = 1 % modulus;

  std::uint64_t power = 1, lambda = 1, steps = 0;
  std::uint64_t tortoise = x0, hare = f(x0);
  while (tortoise != hare) {
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = f(hare);
    ++lambda;
    if (++steps > kMaxCycleSteps) {
      throw std::out_of_range("period of " + b.get_str() + "^n mod " + std::to_string(modulus) +
                              " exceeds the cycle-detection limit");
    }
  }
  std::uint64_t mu = 0;
  tortoise = hare = x0;
  for (std::uint64_t i = 0; i < lambda; ++i) hare = f(hare);
  while (tortoise != hare) {
    tortoise = f(tortoise);
    hare = f(hare);
    ++mu;
  }
  return {b, modulus, mu, lambda};
}

std::optional<PeriodicityUpgrade> periodicity_upgrade(const AvoiderSet& a, const SequenceSpec& s, const Rat& x,
                                                      const Rat& t) {
  if (!a.period_one()) return std::nullopt;
  const auto b = integer_base(s);
  if (!b) return std::nullopt;
  BigInt L;
  mpz_lcm(L.get_mpz_t(), x.den().get_mpz_t(), t.den().get_mpz_t());
  if (bit_length(L) > 62) return std::nullopt;
  const std::uint64_t l = L.get_ui();

  PeriodicityUpgrade out;
  out.certificate = eventual_period(*b, l);
  const std::uint64_t start = std::max<std::uint64_t>(out.certificate.preperiod, 1);
  out.scanned = start + out.certificate.period - 1;

  const std::uint64_t X = mod_u64((x * Rat(L)).num(), l);
  const std::uint64_t T = mod_u64((t * Rat(L)).num(), l);
  const std::uint64_t bm = mod_u64(*b, l);
  std::uint64_t r = 1 % l;
  bool periodic_escape = false;
  for (std::uint64_t n = 1; n <= out.scanned; ++n) {
    r = mulmod(r, bm, l);
    const std::uint64_t c = static_cast<std::uint64_t>((static_cast<unsigned __int128>(X) * r + T) % l);
    if (a.contains(Rat(BigInt(static_cast<unsigned long>(c)), L))) continue;
    if (!out.first_escape) out.first_escape = n;
    if (n >= out.certificate.preperiod) {
      periodic_escape = true;
      break;
    }
  }
  if (periodic_escape) {
    out.verdict = PeriodicVerdict::escapes_infinitely_often;
  } else if (out.first_escape) {
    out.verdict = PeriodicVerdict::escapes_only_in_preperiod;
  } else {
    out.verdict = PeriodicVerdict::never_escapes;
  }
  return out;
}

std::string to_string(PeriodicVerdict v) {
  switch (v) {
    case PeriodicVerdict::escapes_infinitely_often: return "escapes_infinitely_often";
    case PeriodicVerdict::escapes_only_in_preperiod: return "escapes_only_in_preperiod";
    case PeriodicVerdict::never_escapes: return "never_escapes";
  }
  return "unknown";
}

nlohmann::json to_json(const LargenessReport& r) {
  return {{"target", r.target.str()},
          {"min_measure", r.min_measure.str()},
          {"argmin_window", r.argmin_window.str()},
          {"window", {r.window.lo.str(), r.window.hi.str()}},
          {"pass", r.pass},
          {"approximate", r.approximate}};
}

nlohmann::json to_json(const EscapeWitness& w) {
  return {{"x", w.x.str()},
          {"t", w.t.str()},
          {"witness_index", opt_index(w.witness_index)},
          {"depth", w.depth},
          {"status", w.witness_index ? "found" : "finite-depth inconclusive"},
          {"uncertified_hits", w.uncertified_hits},
          {"first_uncertified", opt_index(w.first_uncertified)}};
}

nlohmann::json to_json(const ScanResult& r) {
  auto cells = nlohmann::json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  return {{"cells", cells},
          {"summary",
           {{"cells", r.summary.cells},
            {"found", r.summary.found},
            {"inconclusive", r.summary.inconclusive},
            {"max_witness_index", r.summary.max_witness_index}}}};
}

nlohmann::json to_json(const PeriodCertificate& c) {
  return {{"b", c.b.get_str()}, {"modulus", c.modulus}, {"preperiod", c.preperiod}, {"period", c.period}};
}

nlohmann::json to_json(const PeriodicityUpgrade& u) {
  return {{"certificate", to_json(u.certificate)},
          {"verdict", to_string(u.verdict)},
          {"first_escape", opt_index(u.first_escape)},
          {"scanned", u.scanned}};
}

}  // namespace largeset

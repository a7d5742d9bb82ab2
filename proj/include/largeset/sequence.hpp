#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "largeset/approximant.hpp"
#include "largeset/rational.hpp"

namespace largeset {

// Kinds of strictly increasing sequences a_1 < a_2 < ... (indices start at 1).
namespace seq {

// a_n = sum_k coeffs[k] * n^k.
struct Polynomial {
  std::vector<Rat> coeffs;
};

// a_n = base^n with rational base > 1.
struct Geometric {
  Rat base;
};

// a_n = base^n with integer base >= 2.
struct IntegerPower {
  BigInt base;
};

// Elements {f(i) + j : 1 <= j <= i} in increasing order. An empty schedule
// selects the built-in f(i) = 2^(2^i).
struct Block {
  std::vector<Rat> schedule;  // f(1), f(2), ...
};

// a_n = sum_j coeffs[j] * p_n^exponents[j] over the primes p_1 = 2, p_2 = 3, ...
struct PrimePower {
  std::vector<Rat> exponents;
  std::vector<Approx> coeffs;
  std::uint64_t sieve_bound = 1'000'000;
  unsigned digits = 30;  // fixed-point precision of non-integer powers
};

struct Explicit {
  std::vector<Rat> terms;
};

}  // namespace seq

class SequenceSpec {
 public:
  using Kind = std::variant<seq::Polynomial, seq::Geometric, seq::IntegerPower, seq::Block,
                            seq::PrimePower, seq::Explicit>;

  // Validates the kind (strict monotonicity where it can be decided) and
  // throws std::invalid_argument on violation.
  explicit SequenceSpec(Kind kind, std::string name = {});

  static SequenceSpec polynomial(std::vector<Rat> coeffs);
  static SequenceSpec identity() { return polynomial({0, 1}); }
  static SequenceSpec geometric(Rat base);
  static SequenceSpec integer_power(BigInt base);
  static SequenceSpec block(std::vector<Rat> schedule = {});
  static SequenceSpec prime_power(std::vector<Rat> exponents, std::vector<Approx> coeffs,
                                  std::uint64_t sieve_bound = 1'000'000);
  static SequenceSpec explicit_terms(std::vector<Rat> terms);

  const Kind& kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::string kind_name() const;

  // True when every term is computed exactly (all kinds except prime_power).
  bool exact() const;
  // True when every term is an integer, enabling residue arithmetic.
  bool integer_valued() const;
  // True when monotonicity was proven at construction; otherwise terms are
  // checked as they are generated.
  bool strictly_increasing_verified() const { return monotone_verified_; }
  // Number of available terms, or nullopt when unbounded.
  std::optional<std::uint64_t> length() const;

  // a_n for n >= 1. Throws std::out_of_range past the end of a finite
  // sequence and PrecisionShortfall past the prime sieve.
  Rat term(std::uint64_t n) const;
  // Rigorous bound on |a_n - term(n)|; zero for exact kinds.
  Rat term_error(std::uint64_t n) const;
  BigInt integer_part(std::uint64_t n) const { return floor(term(n)); }

  // a_1 .. a_count, checking strict monotonicity of what is produced.
  std::vector<Rat> terms(std::uint64_t count) const;
  // a_1 mod m .. a_count mod m for integer-valued kinds, computed without
  // forming the full terms.
  std::vector<std::uint64_t> residues(std::uint64_t count, std::uint64_t modulus) const;

  nlohmann::json to_json() const;
  static SequenceSpec from_json(const nlohmann::json& j);
  // Accepts a JSON object or a shorthand: "n", "n^k", "<b>^n", "block".
  static SequenceSpec parse(const std::string& text);

 private:
  Kind kind_;
  std::string name_;
  bool monotone_verified_ = true;
  std::shared_ptr<const std::vector<std::uint64_t>> primes_;
};

// Block bookkeeping: term n lies in block i at offset j (1 <= j <= i).
struct BlockPosition {
  std::uint64_t block;
  std::uint64_t offset;
};
BlockPosition block_position(std::uint64_t n);
BigInt doubly_exponential(std::uint64_t i);  // 2^(2^i)

struct DensityEstimate {
  std::int64_t window_length = 0;
  BigInt best_offset;
  std::int64_t count = 0;
  Rat ratio;
};

// max over h in [h_lo, h_hi] of #(A ∩ {h+1, ..., h+n}) / n, where A is the
// set of integer parts of the first `max_terms` terms.
DensityEstimate banach_density_estimate(const SequenceSpec& s, std::int64_t window_length,
                                        const BigInt& h_lo, const BigInt& h_hi,
                                        std::uint64_t max_terms);

struct GrowthProfile {
  std::vector<Rat> ratios;  // a_{n+1} / a_n for n = 1 .. N-1
  bool one_separated = true;  // a_{n+1} - a_n >= 1 throughout
};

GrowthProfile growth_profile(const SequenceSpec& s, std::uint64_t count);

// Primes up to `bound`, computed once per bound and shared read-only.
std::shared_ptr<const std::vector<std::uint64_t>> prime_table(std::uint64_t bound);
// Sieve bound guaranteed to contain the n-th prime.
std::uint64_t sieve_bound_for(std::uint64_t n);

}  // namespace largeset

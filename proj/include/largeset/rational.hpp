#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace largeset {

using BigInt = mpz_class;

// Raised when a requested computation needs more precision (or a larger
// table) than the inputs provide. The message names what would be required.
class PrecisionShortfall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact rational number. Always stored in lowest terms with a positive
// denominator.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : q_(static_cast<long>(v)) {}
  Rat(long v) : q_(v) {}
  Rat(long long v) : q_(static_cast<long>(v)) {}
  Rat(unsigned long v) : q_(v) {}
  Rat(unsigned long long v) : q_(static_cast<unsigned long>(v)) {}
  Rat(const BigInt& v) : q_(v) {}
  Rat(const BigInt& num, const BigInt& den);
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "p/q", integers, decimals ("0.25", "-1.5e-3").
  static Rat parse(std::string_view text);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

Rat abs(const Rat& r);
BigInt floor(const Rat& r);
BigInt ceil(const Rat& r);
// Fractional part <r> = r - floor(r), in [0, 1).
Rat frac(const Rat& r);
Rat pow(const Rat& base, unsigned long exponent);
const Rat& min(const Rat& a, const Rat& b);
const Rat& max(const Rat& a, const Rat& b);

// Arbitrary-precision integer helpers.
std::string to_string(const BigInt& v);
BigInt parse_bigint(std::string_view text);
std::size_t bit_length(const BigInt& v);  // 0 for v == 0
std::uint64_t mod_u64(const BigInt& v, std::uint64_t modulus);  // least nonnegative residue

}  // namespace largeset

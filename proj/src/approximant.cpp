#include "largeset/approximant.hpp"

#include <functional>

namespace largeset {

namespace {

constexpr long kMaxContinuedFractionTerms = 100000;

// Partial quotients a_0, a_1, ... of a named constant.
std::function<BigInt()> partial_quotients(std::string_view name) {
  if (name == "golden" || name == "phi") {
    return [] { return BigInt(1); };
  }
  if (name == "e") {
    return [k = 0L]() mutable {
      const long i = k++;
      if (i == 0) return BigInt(2);
      return (i % 3 == 2) ? BigInt(2 * (i + 1) / 3) : BigInt(1);
    };
  }
  if (name.substr(0, 4) == "sqrt") {
    const BigInt n = parse_bigint(name.substr(4));
    if (n <= 0) throw std::invalid_argument("sqrt argument must be positive: '" + std::string(name) + "'");
    BigInt root = sqrt(n);
    if (root * root == n) {
      throw std::invalid_argument("'" + std::string(name) + "' is rational; pass it as an exact value");
    }
    // Standard periodic expansion of sqrt(n).
    return [n, a0 = root, m = BigInt(0), d = BigInt(1), a = root, first = true]() mutable {
      if (first) {
        first = false;
        return a;
      }
      m = d * a - m;
      d = (n - m * m) / d;
      a = (a0 + m) / d;
      return a;
    };
  }
  throw std::invalid_argument("unknown named constant '" + std::string(name) +
                              "' (expected golden, e, or sqrtN)");
}

}  // namespace

Approx named_approximant(std::string_view name, const Rat& precision) {
  if (precision.sign() <= 0) throw std::invalid_argument("approximant precision must be positive");
  auto next = partial_quotients(name);
  BigInt p = next(), q = 1;
  BigInt p_prev = 1, q_prev = 0;
  for (long k = 0; k < kMaxContinuedFractionTerms; ++k) {
    const BigInt a_next = next();
    const BigInt q_next = a_next * q + q_prev;
    // |x - p/q| < 1 / (q * q_next)
    const Rat bound(BigInt(1), BigInt(q * q_next));
    if (bound <= precision) {
      Rat value(p, q);
      return Approx{value, bound,
                    std::string(name) + "@" + precision.str() + " -> " + value.str()};
    }
    const BigInt p_next = a_next * p + p_prev;
    p_prev = p;
    p = p_next;
    q_prev = q;
    q = q_next;
  }
  throw PrecisionShortfall("approximant " + std::string(name) + "@" + precision.str() +
                           " needs more than " + std::to_string(kMaxContinuedFractionTerms) +
                           " continued-fraction terms");
}

Approx parse_approx(std::string_view text) {
  if (auto at = text.find('@'); at != std::string_view::npos) {
    Approx a = named_approximant(text.substr(0, at), Rat::parse(text.substr(at + 1)));
    a.provenance = std::string(text) + " -> " + a.value.str();
    return a;
  }
  Rat value = Rat::parse(text);
  return Approx{value, Rat(), std::string(text)};
}

}  // namespace largeset

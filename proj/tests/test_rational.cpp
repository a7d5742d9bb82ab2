#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "largeset/approximant.hpp"
#include "largeset/rational.hpp"

using namespace largeset;

TEST_CASE("parse and normalize") {
  CHECK(Rat::parse("6/8") == Rat(3, 4));
  CHECK(Rat::parse("-6/8") == Rat(-3, 4));
  CHECK(Rat::parse("0.25") == Rat(1, 4));
  CHECK(Rat::parse("-1.5e-3") == Rat(-3, 2000));
  CHECK(Rat::parse("1e-12") == Rat(BigInt(1), BigInt("1000000000000")));
  CHECK(Rat::parse("42") == Rat(42));
  CHECK(Rat(6, -4).den() == 2);
  CHECK(Rat(6, -4).num() == -3);
  CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("floor, ceil, frac") {
  CHECK(floor(Rat(-1, 3)) == -1);
  CHECK(ceil(Rat(-1, 3)) == 0);
  CHECK(frac(Rat(-1, 3)) == Rat(2, 3));
  CHECK(frac(Rat(7, 2)) == Rat(1, 2));
  CHECK(frac(Rat(5)) == 0);
}

TEST_CASE("integer helpers") {
  CHECK(bit_length(BigInt(0)) == 0);
  CHECK(bit_length(BigInt(1)) == 1);
  CHECK(bit_length(BigInt(255)) == 8);
  CHECK(bit_length(BigInt(256)) == 9);
  CHECK(mod_u64(BigInt(-7), 5) == 3);
  BigInt big = BigInt(1) << 200;
  CHECK(mod_u64(big + 3, 1000003) == (mod_u64(big, 1000003) + 3) % 1000003);
  CHECK(parse_bigint("-123456789012345678901234567890") < 0);
}

// f(lo) and f(hi) of opposite sign bracket the root.
template <class F>
bool brackets(F f, const Approx& a) {
  return f(a.value - a.error).sign() * f(a.value + a.error).sign() <= 0;
}

TEST_CASE("named approximants carry valid error bounds") {
  const Rat prec = Rat::parse("1e-12");
  const auto g = named_approximant("golden", prec);
  CHECK(g.value == Rat(1346269, 832040));
  CHECK(g.error <= prec);
  CHECK(brackets([](const Rat& z) { return z * z - z - 1; }, g));

  const auto s2 = named_approximant("sqrt2", prec);
  CHECK(s2.value == Rat(1607521, 1136689));
  CHECK(s2.error <= prec);
  CHECK(brackets([](const Rat& z) { return z * z - 2; }, s2));
  // the next-smaller convergent is not accurate enough at this precision
  const Rat prev(665857, 470832);
  CHECK(abs(prev * prev - 2) / (prev + Rat(3, 2)) > prec);

  const auto s7 = named_approximant("sqrt7", Rat::parse("1e-9"));
  CHECK(brackets([](const Rat& z) { return z * z - 7; }, s7));

  // e bracketed by partial sums of sum 1/k!
  const auto e = named_approximant("e", Rat::parse("1e-10"));
  Rat lo = 0, fact = 1;
  for (int k = 0; k <= 20; ++k) {
    if (k > 0) fact *= k;
    lo += Rat(1) / fact;
  }
  const Rat hi = lo + Rat(1) / (fact * 20);
  CHECK(e.value - e.error <= hi);
  CHECK(e.value + e.error >= lo);
  CHECK(e.error <= Rat::parse("1e-10"));
}

TEST_CASE("parse_approx") {
  const auto exact = parse_approx("3/2");
  CHECK(exact.exact());
  CHECK(exact.value == Rat(3, 2));
  const auto g = parse_approx("phi@1e-6");
  CHECK_FALSE(g.exact());
  CHECK(g.provenance.rfind("phi@1e-6 -> ", 0) == 0);
  CHECK_THROWS_AS(parse_approx("sqrt4@1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_approx("pi@1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_approx("golden@0"), std::invalid_argument);
}

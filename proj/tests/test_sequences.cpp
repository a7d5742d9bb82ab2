#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "largeset/sequence.hpp"
#include "oracles.hpp"

using namespace largeset;

namespace {

std::vector<SequenceSpec> integer_kinds() {
  return {SequenceSpec::identity(),
          SequenceSpec::polynomial({3, -1, 2}),
          SequenceSpec::integer_power(3),
          SequenceSpec::geometric(5),
          SequenceSpec::block(),
          SequenceSpec::block({10, 20, 40, 80, 160}),
          SequenceSpec::explicit_terms({-4, 0, 7, 100, 101})};
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("term examples") {
  CHECK(SequenceSpec::geometric(2).term(10) == 1024);
  CHECK(SequenceSpec::integer_power(2).term(10) == 1024);
  CHECK(SequenceSpec::polynomial({0, 0, 1}).term(7) == 49);
  CHECK(SequenceSpec::geometric(Rat(3, 2)).term(3) == Rat(27, 8));
  const auto b = SequenceSpec::block();
  const std::vector<Rat> head{5, 17, 18, 257, 258, 259};
  CHECK(b.terms(6) == head);
  CHECK_THROWS_AS(b.term(0), std::invalid_argument);
}

TEST_CASE("block terms equal the sorted set {f(i) + j}") {
  std::set<BigInt> brute;
  for (std::uint64_t i = 1; i <= 20; ++i) {
    BigInt f = 1;
    f <<= (1UL << i);
    for (std::uint64_t j = 1; j <= i; ++j) brute.insert(f + j);
  }
  const auto t = SequenceSpec::block().terms(brute.size());
  std::size_t k = 0;
  for (const auto& v : brute) CHECK(t[k++] == Rat(v));

  const auto custom = SequenceSpec::block({Rat(1, 2), 3, 6});
  const std::vector<Rat> expect{Rat(3, 2), 4, 5, 7, 8, 9};
  CHECK(custom.terms(6) == expect);
  CHECK(custom.length() == 6);
  CHECK_THROWS_AS(custom.term(7), std::out_of_range);
  CHECK_THROWS_AS(SequenceSpec::block({1, 2, 5}), std::invalid_argument);  // f(2) = 2 <= f(1) + 1
}

TEST_CASE("block_position") {
  std::uint64_t n = 1;
  for (std::uint64_t i = 1; i <= 200; ++i) {
    for (std::uint64_t j = 1; j <= i; ++j, ++n) {
      const auto p = block_position(n);
      CHECK(p.block == i);
      CHECK(p.offset == j);
    }
  }
}

TEST_CASE("polynomial validation") {
  CHECK_THROWS_AS(SequenceSpec::polynomial({5}), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::polynomial({0, -1}), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::polynomial({0, -10, 1}), std::invalid_argument);  // dips until n = 5
  CHECK_NOTHROW(SequenceSpec::polynomial({0, -2, 1}));  // n^2 - 2n: -1, 0, 3, ...
  CHECK_NOTHROW(SequenceSpec::polynomial({1, 3, -3, 1}));  // (n-1)^3 + 2
  CHECK_THROWS_AS(SequenceSpec::polynomial({0, -2000000, 1}), std::invalid_argument);  // bound too large
  const auto p = SequenceSpec::polynomial({Rat(1, 2), Rat(1, 3), 0, 0});
  CHECK(p.term(3) == Rat(3, 2));
}

TEST_CASE("explicit and geometric validation") {
  CHECK_THROWS_AS(SequenceSpec::explicit_terms({1, 3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::geometric(1), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::integer_power(1), std::invalid_argument);
  const auto e = SequenceSpec::explicit_terms({1, 2});
  CHECK_THROWS_AS(e.term(3), std::out_of_range);
}

TEST_CASE("polynomial with a suspicious coefficient pattern stays increasing") {
  // spot check of the proof: P(n) = 2 - 3n + 3n^2 - n^3 = 1 - (n-1)^3 is decreasing
  CHECK_THROWS_AS(SequenceSpec::polynomial({2, -3, 3, -1}), std::invalid_argument);
}

TEST_CASE("residues agree with exact terms") {
  for (const auto& s : integer_kinds()) {
    CAPTURE(s.name());
    REQUIRE(s.integer_valued());
    const std::uint64_t count = s.length() ? std::min<std::uint64_t>(*s.length(), 25) : 25;
    for (std::uint64_t m : {1ULL, 2ULL, 7ULL, 4096ULL, 1000003ULL, 999999999989ULL}) {
      const auto r = s.residues(count, m);
      for (std::uint64_t n = 1; n <= count; ++n) CHECK(r[n - 1] == mod_u64(s.term(n).num(), m));
    }
  }
  CHECK_FALSE(SequenceSpec::geometric(Rat(3, 2)).integer_valued());
  CHECK_THROWS_AS(SequenceSpec::geometric(Rat(3, 2)).residues(3, 5), std::logic_error);
}

TEST_CASE("prime_power terms") {
  const auto primes = SequenceSpec::prime_power({1}, {parse_approx("1")}, 1000);
  CHECK(primes.exact());
  CHECK(primes.integer_valued());
  std::uint64_t p = 1;
  for (std::uint64_t n = 1; n <= 168; ++n) {
    do ++p; while (!is_prime(p));
    CHECK(primes.term(n) == Rat(p));
  }
  CHECK_THROWS_AS(primes.term(169), PrecisionShortfall);
  CHECK(sieve_bound_for(169) >= 1009);

  const auto roots = SequenceSpec::prime_power({Rat(1, 2)}, {parse_approx("golden@1e-20")}, 1000);
  CHECK_FALSE(roots.exact());
  CHECK_FALSE(roots.integer_valued());
  const Rat phi_lo = Rat(161, 100), phi_hi = Rat(162, 100);
  for (std::uint64_t n : {1ULL, 2ULL, 10ULL, 100ULL}) {
    const Rat v = roots.term(n), e = roots.term_error(n);
    CHECK(e < Rat::parse("1e-18"));
    // v/phi approximates sqrt(p_n); sanity bracket with loose phi bounds
    const Rat pn = primes.term(n);
    CHECK((v - e) * (v - e) <= phi_hi * phi_hi * pn);
    CHECK((v + e) * (v + e) >= phi_lo * phi_lo * pn);
  }
  // exact sqrt bracket with coefficient 1
  const auto sq = SequenceSpec::prime_power({Rat(1, 2)}, {parse_approx("1")}, 1000);
  for (std::uint64_t n = 1; n <= 50; ++n) {
    const Rat v = sq.term(n), e = sq.term_error(n), pn = primes.term(n);
    CHECK((v - e) * (v - e) <= pn);
    CHECK(pn <= (v + e) * (v + e));
  }
  CHECK_THROWS_AS(SequenceSpec::prime_power({0}, {parse_approx("1")}), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::prime_power({1, 2}, {parse_approx("1")}), std::invalid_argument);
  // negative coefficient: monotonicity is checked as terms are produced
  const auto mixed = SequenceSpec::prime_power({1, 2}, {parse_approx("-100"), parse_approx("1")}, 1000);
  CHECK_FALSE(mixed.strictly_increasing_verified());
  CHECK_THROWS_AS(mixed.terms(60), std::invalid_argument);
}

TEST_CASE("banach density examples") {
  const auto id = SequenceSpec::identity();
  for (std::int64_t n : {1, 7, 100}) CHECK(banach_density_estimate(id, n, 0, 50, 1000).ratio == 1);

  const auto pow2 = SequenceSpec::integer_power(2);
  const auto d = banach_density_estimate(pow2, 100, 0, 1000000, 64);
  CHECK(d.ratio <= Rat(20, 100));
  CHECK(d.ratio == Rat(6, 100));  // {2, 4, ..., 64} fits in {1..100}

  const auto block = SequenceSpec::block();
  for (std::uint64_t i = 1; i <= 4; ++i) {
    const BigInt f = doubly_exponential(i);
    const auto e = banach_density_estimate(block, static_cast<std::int64_t>(i), f, f, 10);
    CHECK(e.ratio == 1);
    CHECK(e.count == static_cast<std::int64_t>(i));
  }
  CHECK_THROWS_AS(banach_density_estimate(id, 0, 0, 1, 10), std::invalid_argument);
}

TEST_CASE("property: banach density matches brute force and is monotone in the range") {
  oracle::Rng rng(31337);
  const auto seqs = integer_kinds();
  for (int trial = 0; trial < 40; ++trial) {
    const auto& s = seqs[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(seqs.size()) - 1))];
    const std::uint64_t terms = 12;
    const auto n = rng.uniform(1, 20);
    const long lo = rng.uniform(-10, 40), hi = lo + rng.uniform(0, 60);
    const auto got = banach_density_estimate(s, n, lo, hi, terms);
    std::set<BigInt> A;
    const std::uint64_t count = s.length() ? std::min<std::uint64_t>(*s.length(), terms) : terms;
    for (std::uint64_t k = 1; k <= count; ++k) A.insert(floor(s.term(k)));
    std::int64_t best = -1;
    long best_h = lo;
    for (long h = lo; h <= hi; ++h) {
      std::int64_t c = 0;
      for (const auto& a : A) c += (a >= h + 1 && a <= h + n) ? 1 : 0;
      if (c > best) best = c, best_h = h;
    }
    CHECK(got.count == best);
    CHECK(got.best_offset == best_h);
    const auto wider = banach_density_estimate(s, n, lo - 5, hi + 5, terms);
    CHECK(wider.ratio >= got.ratio);
  }
}

TEST_CASE("growth profiles") {
  const auto sq = growth_profile(SequenceSpec::polynomial({0, 0, 1}), 50);
  for (std::size_t k = 1; k < sq.ratios.size(); ++k) CHECK(sq.ratios[k] < sq.ratios[k - 1]);
  CHECK(sq.ratios.back() - 1 < Rat(1, 20));
  CHECK(sq.one_separated);
  const auto p2 = growth_profile(SequenceSpec::integer_power(2), 30);
  for (const auto& r : p2.ratios) CHECK(r == 2);
  const auto bl = growth_profile(SequenceSpec::block(), 15);
  // jumps between blocks keep growing while within-block ratios approach 1
  CHECK(bl.ratios[0] > 3);       // 17 / 5
  CHECK(bl.ratios[2] > 14);      // 257 / 18
  CHECK(bl.ratios[5] > 250);     // 65537 / 259
  CHECK(bl.ratios[13] - 1 < Rat(1, 1000));
  const auto frac_steps = growth_profile(SequenceSpec::polynomial({0, Rat(1, 2)}), 5);
  CHECK_FALSE(frac_steps.one_separated);
  CHECK_THROWS_AS(growth_profile(SequenceSpec::identity(), 1), std::invalid_argument);
}

TEST_CASE("json and shorthand round trips") {
  std::vector<SequenceSpec> all = integer_kinds();
  all.push_back(SequenceSpec::geometric(Rat(3, 2)));
  all.push_back(SequenceSpec::prime_power({1, Rat(1, 2)}, {parse_approx("2"), parse_approx("sqrt2@1e-9")}, 5000));
  for (const auto& s : all) {
    const auto back = SequenceSpec::from_json(s.to_json());
    CHECK(back.to_json() == s.to_json());
    const std::uint64_t count = s.length() ? *s.length() : 8;
    CHECK(back.terms(std::min<std::uint64_t>(count, 8)) == s.terms(std::min<std::uint64_t>(count, 8)));
  }
  CHECK(SequenceSpec::parse("n^2").term(9) == 81);
  CHECK(SequenceSpec::parse("n").term(9) == 9);
  CHECK(SequenceSpec::parse("2^n").kind_name() == "integer_power");
  CHECK(SequenceSpec::parse("3/2^n").kind_name() == "geometric");
  CHECK(SequenceSpec::parse("block").term(2) == 17);
  CHECK(SequenceSpec::parse(R"({"kind":"geometric","b":"2"})").term(3) == 8);
  CHECK_THROWS_AS(SequenceSpec::parse("fib"), std::invalid_argument);
  try {
    SequenceSpec::parse(R"({"kind":"polynomial","coeffs":["0","x"]})");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("sequence.coeffs[1]") != std::string::npos);
  }
}

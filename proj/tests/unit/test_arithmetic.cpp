#include <cstdint>
#include <set>
#include <tuple>

#include "arlink/arithmetic.hpp"
#include "arlink/error.hpp"
#include "arlink/linking.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace arlink;

namespace {

bool redei_admissible(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
  return p1 != p2 && p3 != p1 && p3 != p2 && p1 % 4 == 1 && p2 % 4 == 1 &&
         oracle::legendre_by_squares(static_cast<std::int64_t>(p1), p2) == 1 &&
         oracle::legendre_by_squares(static_cast<std::int64_t>(p2), p1) == 1 &&
         oracle::legendre_by_squares(static_cast<std::int64_t>(p1), p3) == 1 &&
         oracle::legendre_by_squares(static_cast<std::int64_t>(p2), p3) == 1;
}

/// Number of distinct roots mod p of (X^2 - x)^2 - p1 y^2, the minimal
/// polynomial of sqrt(x + y sqrt p1). Four roots means p splits completely in
/// its splitting field.
int quartic_roots(const ConicSolution& s, std::uint64_t p) {
  const auto P = static_cast<std::int64_t>(p);
  const std::int64_t x = ((s.x % P) + P) % P;
  const std::int64_t c = static_cast<std::int64_t>((s.p1 % p) * static_cast<std::uint64_t>(((s.y % P) * (s.y % P)) % P) % p);
  int roots = 0;
  for (std::int64_t t = 0; t < P; ++t) {
    const std::int64_t u = ((t * t - x) % P + P) % P;
    if ((u * u - c) % P == 0) ++roots;
  }
  return roots;
}

}  // namespace

TEST_CASE("legendre examples") {
  for (std::uint64_t p : {3u, 5u, 7u, 61u, 997u}) CHECK(legendre(1, p) == 1);
  CHECK(legendre(5, 41) == 1);
  CHECK(legendre(41, 5) == 1);
  CHECK(legendre(5, 61) == 1);
  CHECK(legendre(41, 61) == 1);
  CHECK(legendre(2, 3) == -1);
  CHECK(legendre(0, 7) == 0);
  CHECK(legendre(14, 7) == 0);
  CHECK(legendre(-1, 5) == 1);
  CHECK(legendre(-1, 7) == -1);
  CHECK(legendre(INT64_MIN, 3) == legendre_euler(INT64_MIN, 3));
  CHECK_THROWS_AS(legendre(1, 2), InputError);
  CHECK_THROWS_AS(legendre(1, 9), InputError);
  CHECK_THROWS_AS(legendre(1, 1), InputError);
}

TEST_CASE("legendre against the list of squares") {
  for (std::uint64_t p : oracle::odd_primes_below(300)) {
    for (std::int64_t a = -3; a < static_cast<std::int64_t>(p) + 3; ++a) {
      CHECK(legendre(a, p) == oracle::legendre_by_squares(a, p));
    }
  }
  // Near the top of the 64-bit range.
  const std::uint64_t big = 18446744073709551557ull;
  for (std::int64_t a : {std::int64_t{2}, std::int64_t{3}, std::int64_t{5}, std::int64_t{-1}, std::int64_t{1234567891011}}) CHECK(legendre(a, big) == legendre_euler(a, big));
}

TEST_CASE("quadratic reciprocity, p, r < 200") {
  const auto primes = oracle::odd_primes_below(200);
  for (auto p : primes) {
    for (auto r : primes) {
      if (p == r) continue;
      const int sign = ((p - 1) / 2 * ((r - 1) / 2)) % 2 == 0 ? 1 : -1;
      CHECK(legendre(static_cast<std::int64_t>(p), r) * legendre(static_cast<std::int64_t>(r), p) == sign);
    }
  }
}

TEST_CASE("mu_linking_number") {
  CHECK(mu_linking_number(5, 41) == 0);
  CHECK(mu_linking_number(3, 7) == 1);
  CHECK_THROWS_AS(mu_linking_number(5, 5), InputError);
  CHECK_THROWS_AS(mu_linking_number(4, 5), InputError);
  for (auto pi : oracle::odd_primes_below(60)) {
    for (auto pj : oracle::odd_primes_below(60)) {
      if (pi == pj) continue;
      CHECK(mu_linking_number(pi, pj) == (oracle::x2_minus_a_factors(pi, pj) ? 0 : 1));
    }
  }
}

TEST_CASE("mu matches the degree-1 sigma word of a one-slot presentation") {
  ResidueRing r2(2);
  for (auto p1 : oracle::odd_primes_below(100)) {
    if (p1 % 4 != 1) continue;
    for (auto pj : oracle::odd_primes_below(100)) {
      if (pj == p1) continue;
      const int mu = mu_linking_number(p1, pj);
      auto pres = parse_presentation("params n=1 q=2\nslot 1 tau=t1 sigma=s\nsigma s = t1^" +
                                     std::to_string(mu) + "\nrel t1^2\n");
      auto out = build_globalization(pres);
      REQUIRE(out.ok());
      CHECK(linking_invariant(*out.globalization, GroupWord::generator("s")) ==
            static_cast<std::uint64_t>(linking_invariant_n1(p1, pj)));
    }
  }
}

TEST_CASE("ramification and orderings") {
  CHECK(ramifies_in_quadratic(5, 5));
  CHECK(ramifies_in_quadratic(2, 3));
  CHECK_FALSE(ramifies_in_quadratic(3, 5));
  CHECK_FALSE(ramifies_in_quadratic(2, 5));
  CHECK(ramifies_in_quadratic(2, -1));
  CHECK_FALSE(ramifies_in_quadratic(2, -3));
  CHECK(ramifies_in_quadratic(3, -3));
  CHECK_THROWS_AS(ramifies_in_quadratic(3, 12), InputError);
  CHECK_THROWS_AS(ramifies_in_quadratic(3, 1), InputError);
  CHECK_THROWS_AS(ramifies_in_quadratic(3, 0), InputError);
  CHECK_THROWS_AS(ramifies_in_quadratic(9, 5), InputError);

  CHECK(ordering_extends_to_quadratic(5));
  CHECK_FALSE(ordering_extends_to_quadratic(-1));
  CHECK_FALSE(ordering_extends_to_quadratic(-7));

  CHECK(single_globalization_exists(5));
  CHECK_FALSE(single_globalization_exists(3));
  CHECK(single_globalization_exists(13));
}

TEST_CASE("linking_invariant_n1") {
  CHECK(linking_invariant_n1(5, 61) == 0);
  CHECK(linking_invariant_n1(13, 7) == 1);
  CHECK_THROWS_AS(linking_invariant_n1(5, 5), InputError);
  CHECK_THROWS_AS(linking_invariant_n1(7, 5), InputError);
  for (auto p1 : oracle::odd_primes_below(100)) {
    if (p1 % 4 != 1) continue;
    for (auto pj : oracle::odd_primes_below(100)) {
      if (pj == p1) continue;
      CHECK((linking_invariant_n1(p1, pj) == 0) == oracle::x2_minus_a_factors(p1, pj));
    }
  }
}

TEST_CASE("conic solutions") {
  auto s = redei_solve_conic(5, 41);
  CHECK(s.x * s.x == 5 * s.y * s.y + 41 * s.z * s.z);
  CHECK(s.primitive());
  CHECK(s.normalized());
  CHECK(s.y >= 0);
  CHECK(std::make_tuple(s.x, s.y, s.z) == std::make_tuple(-11, 4, 1));
  CHECK(redei_solve_conic(5, 41) .x == s.x);

  CHECK(legendre(13, 17) == 1);
  CHECK(legendre(17, 13) == 1);
  auto t = redei_solve_conic(13, 17);
  CHECK(t.satisfies_equation());

  auto many = redei_conic_solutions(5, 41, 6);
  REQUIRE(many.size() == 6);
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> distinct;
  for (const auto& m : many) {
    CHECK(m.satisfies_equation());
    CHECK(m.primitive());
    CHECK(m.normalized());
    distinct.insert({m.x, m.y, m.z});
  }
  CHECK(distinct.size() == 6);

  CHECK_THROWS_AS(redei_solve_conic(5, 13), InputError);
  CHECK_THROWS_AS(redei_solve_conic(3, 41), InputError);
  CHECK_THROWS_AS(redei_solve_conic(5, 5), InputError);
  CHECK_THROWS_AS(redei_conic_solutions(5, 41, 1000, 16), ResourceError);

  ConicSolution bad{5, 41, 11, 4, 1};
  CHECK(bad.satisfies_equation());
  CHECK_FALSE(bad.normalized());
}

TEST_CASE("redei golden value") {
  auto r = redei_symbol(5, 41, 61);
  CHECK(r.value == -1);
  CHECK(r.z2() == 1);
  CHECK(linking_invariant_n2(5, 41, 61) == 1);
  CHECK(class_number_gate());
  CHECK(class_number_gate() == class_number_gate());
  CHECK(r.to_text().rfind("value: -1\n", 0) == 0);
  // The chosen solution's quartic does not split mod 61.
  CHECK(quartic_roots(redei_solve_conic(5, 41), 61) != 4);
}

TEST_CASE("redei preconditions") {
  CHECK_THROWS_AS(redei_symbol(5, 41, 7), InputError);   // (5/7) = -1
  CHECK_THROWS_AS(redei_symbol(5, 13, 61), InputError);  // (5/13) = -1
  CHECK_THROWS_AS(redei_symbol(5, 41, 41), InputError);
  CHECK_THROWS_AS(redei_symbol(5, 41, 2), InputError);
  CHECK_THROWS_AS(linking_invariant_n2(5, 41, 79), InputError);  // 79 = 3 mod 4
  auto s = redei_solve_conic(5, 41);
  ConicSolution not_normalized = s;
  not_normalized.x = -s.x;
  CHECK_THROWS_AS(redei_symbol_with(not_normalized, 61), InputError);
  ConicSolution not_solution = s;
  not_solution.z = 3;
  CHECK_THROWS_AS(redei_symbol_with(not_solution, 61), InputError);
}

TEST_CASE("redei value against splitting of the quartic") {
  const auto primes = oracle::odd_primes_below(300);
  int split_found = 0;
  int triples = 0;
  for (auto p1 : primes) {
    for (auto p2 : primes) {
      if (p2 <= p1) continue;
      for (auto p3 : primes) {
        if (!redei_admissible(p1, p2, p3)) continue;
        if (++triples > 60) break;
        auto r = redei_symbol(p1, p2, p3);
        auto sols = redei_conic_solutions(p1, p2, 8);
        for (const auto& s : sols) {
          if (s.z % static_cast<std::int64_t>(p3) == 0) continue;
          const int roots = quartic_roots(s, p3);
          // p3 does not divide the discriminant here, so the root count is 0 or 4.
          if (roots == 0 || roots == 4) CHECK((roots == 4) == (r.value == 1));
          CHECK(redei_symbol_with(s, p3).value == r.value);
        }
      }
    }
  }
  CHECK(triples > 10);

  // Smallest admissible prime for (5, 41) with symbol +1, confirmed on a second solution.
  for (auto p3 : primes) {
    if (!redei_admissible(5, 41, p3)) continue;
    if (redei_symbol(5, 41, p3).value != 1) continue;
    auto sols = redei_conic_solutions(5, 41, 4);
    for (const auto& s : sols) {
      if (s.z % static_cast<std::int64_t>(p3) != 0) CHECK(redei_symbol_with(s, p3).value == 1);
    }
    if (p3 % 4 == 1) CHECK(linking_invariant_n2(5, 41, p3) == 0);
    ++split_found;
    break;
  }
  CHECK(split_found == 1);
}

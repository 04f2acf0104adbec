#pragma once

// Arithmetic over Q at q = 2: Legendre symbols, mod-2 linking numbers,
// quadratic ramification and the Redei triple symbol.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace arlink {

/// Legendre symbol (a/p) by the reciprocity chain. Throws InputError unless p
/// is an odd prime. Debug builds cross-check against Euler's criterion.
int legendre(std::int64_t a, std::uint64_t p);

/// Euler's criterion a^((p-1)/2) mod p, as -1, 0 or +1.
int legendre_euler(std::int64_t a, std::uint64_t p);

/// 0 if (p_i/p_j) = +1, else 1. Throws InputError for equal or non-odd-prime inputs.
int mu_linking_number(std::uint64_t p_i, std::uint64_t p_j);

/// True iff p ramifies in Q(sqrt d): p | d, or p = 2 and d != 1 mod 4.
/// Throws InputError unless p is prime and d is square-free, d != 0, 1.
bool ramifies_in_quadratic(std::uint64_t p, std::int64_t d);

/// True iff the ordering of Q extends to Q(sqrt d), i.e. d > 0.
bool ordering_extends_to_quadratic(std::int64_t d);

/// True iff p = 1 mod 4; the extension is then Q(sqrt p).
bool single_globalization_exists(std::uint64_t p);

/// 0 iff (p1/pj) = +1. Requires p1 = 1 mod 4 and pj != p1, both odd primes.
int linking_invariant_n1(std::uint64_t p1, std::uint64_t pj);

/// A primitive solution of x^2 = p1 y^2 + p2 z^2 with z odd (so y even),
/// y >= 0 and x + y = 1 mod 4.
struct ConicSolution {
  std::uint64_t p1 = 0;
  std::uint64_t p2 = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  bool satisfies_equation() const;
  bool primitive() const;
  bool z_odd() const { return z % 2 != 0; }
  bool x_plus_y_one_mod_4() const;
  bool normalized() const { return z_odd() && x_plus_y_one_mod_4(); }
};

/// Checks the preconditions shared by the conic search and the symbol:
/// odd primes, p1 = p2 = 1 mod 4, (p1/p2) = (p2/p1) = +1. Throws InputError.
void require_redei_pair(std::uint64_t p1, std::uint64_t p2);

/// The first `count` normalized solutions in order of (max(y, z), z, y).
/// The search radius starts at 8 and doubles up to `max_bound`; throws
/// ResourceError if fewer than `count` solutions exist inside it.
std::vector<ConicSolution> redei_conic_solutions(std::uint64_t p1, std::uint64_t p2,
                                                 std::size_t count,
                                                 std::int64_t max_bound = 4096);

/// The first normalized solution.
ConicSolution redei_solve_conic(std::uint64_t p1, std::uint64_t p2,
                                std::int64_t max_bound = 4096);

struct SymbolResult {
  int value = 1;
  std::vector<std::pair<std::string, std::string>> witnesses;

  /// 0 for +1, 1 for -1.
  int z2() const { return value == 1 ? 0 : 1; }
  /// "key: value" lines, starting with the value.
  std::string to_text() const;
};

/// [p1, p2, p3] from the first normalized conic solution with p3 not dividing z.
/// Throws InputError on violated preconditions and ConsistencyError if the
/// two square roots of p1 mod p3 disagree.
SymbolResult redei_symbol(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3,
                          std::int64_t max_bound = 4096);

/// The same computation for a caller-chosen normalized solution.
SymbolResult redei_symbol_with(const ConicSolution& solution, std::uint64_t p3);

/// 0 iff redei_symbol(p1, p2, pj) = +1. Additionally requires pj = 1 mod 4.
int linking_invariant_n2(std::uint64_t p1, std::uint64_t p2, std::uint64_t pj);

/// Cl(Q) is trivial, so the class-number assumption holds over Q.
constexpr bool class_number_gate() { return true; }

}  // namespace arlink

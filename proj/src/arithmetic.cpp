#include "arlink/arithmetic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "arlink/error.hpp"
#include "arlink/modular.hpp"

namespace arlink {

namespace {

void require_odd_prime(std::uint64_t p, const char* what) {
  if (p % 2 == 0 || !is_prime(p)) {
    throw InputError(std::string(what) + ": " + std::to_string(p) + " is not an odd prime");
  }
}

// Jacobi symbol (a/n) for odd n > 0.
int jacobi(std::uint64_t a, std::uint64_t n) {
  a %= n;
  int sign = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::uint64_t r = n % 8;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) sign = -sign;
    a %= n;
  }
  return n == 1 ? sign : 0;
}

}  // namespace

int legendre_euler(std::int64_t a, std::uint64_t p) {
  require_odd_prime(p, "legendre_euler");
  const std::uint64_t r = pow_mod(floor_mod(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

int legendre(std::int64_t a, std::uint64_t p) {
  require_odd_prime(p, "legendre");
  const int value = jacobi(floor_mod(a, p), p);
#ifndef NDEBUG
  if (value != legendre_euler(a, p)) {
    throw ConsistencyError("legendre: reciprocity chain disagrees with Euler's criterion");
  }
#endif
  return value;
}

int mu_linking_number(std::uint64_t p_i, std::uint64_t p_j) {
  require_odd_prime(p_i, "mu_linking_number");
  require_odd_prime(p_j, "mu_linking_number");
  if (p_i == p_j) throw InputError("mu_linking_number: primes must differ");
  return legendre(static_cast<std::int64_t>(p_i % p_j), p_j) == 1 ? 0 : 1;
}

bool ramifies_in_quadratic(std::uint64_t p, std::int64_t d) {
  if (!is_prime(p)) throw InputError("ramifies_in_quadratic: " + std::to_string(p) + " is not prime");
  if (d == 0 || d == 1) throw InputError("ramifies_in_quadratic: d must not be 0 or 1");
  const std::uint64_t m = d < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(d)
                                : static_cast<std::uint64_t>(d);
  for (std::uint64_t f = 2; f <= m / f; ++f) {
    if (m % (f * f) == 0) {
      throw InputError("ramifies_in_quadratic: " + std::to_string(d) + " is not square-free");
    }
  }
  if (m % p == 0) return true;
  return p == 2 && floor_mod(d, 4) != 1;
}

bool ordering_extends_to_quadratic(std::int64_t d) { return d > 0; }

bool single_globalization_exists(std::uint64_t p) { return p % 4 == 1; }

int linking_invariant_n1(std::uint64_t p1, std::uint64_t pj) {
  require_odd_prime(p1, "linking_invariant_n1");
  require_odd_prime(pj, "linking_invariant_n1");
  if (p1 % 4 != 1) throw InputError("linking_invariant_n1: p1 must be 1 mod 4");
  if (p1 == pj) throw InputError("linking_invariant_n1: primes must differ");
  return legendre(static_cast<std::int64_t>(p1 % pj), pj) == 1 ? 0 : 1;
}

// ---------------------------------------------------------------- the conic

bool ConicSolution::satisfies_equation() const {
  using boost::multiprecision::cpp_int;
  cpp_int lhs = cpp_int(x) * x;
  cpp_int rhs = cpp_int(p1) * y * y + cpp_int(p2) * z * z;
  return lhs == rhs;
}

bool ConicSolution::primitive() const {
  return std::gcd(std::gcd(x, y), z) == 1;
}

bool ConicSolution::x_plus_y_one_mod_4() const {
  return ((x % 4 + y % 4) % 4 + 4) % 4 == 1;
}

void require_redei_pair(std::uint64_t p1, std::uint64_t p2) {
  require_odd_prime(p1, "redei");
  require_odd_prime(p2, "redei");
  if (p1 == p2) throw InputError("redei: p1 and p2 must differ");
  if (p1 % 4 != 1 || p2 % 4 != 1) throw InputError("redei: p1 and p2 must be 1 mod 4");
  if (legendre(static_cast<std::int64_t>(p1 % p2), p2) != 1 ||
      legendre(static_cast<std::int64_t>(p2 % p1), p1) != 1) {
    throw InputError("redei: (p1/p2) and (p2/p1) must both be +1");
  }
}

std::vector<ConicSolution> redei_conic_solutions(std::uint64_t p1, std::uint64_t p2,
                                                 std::size_t count, std::int64_t max_bound) {
  using boost::multiprecision::cpp_int;
  require_redei_pair(p1, p2);
  std::vector<ConicSolution> out;
  if (count == 0) return out;
  std::int64_t previous = 0;
  for (std::int64_t bound = 8; previous < max_bound; bound *= 2) {
    bound = std::min(bound, max_bound);
    std::vector<ConicSolution> shell;
    for (std::int64_t z = 1; z <= bound; z += 2) {
      const cpp_int p2zz = cpp_int(p2) * z * z;
      for (std::int64_t y = 0; y <= bound; y += 2) {
        if (std::max(y, z) <= previous) continue;
        const cpp_int rhs = cpp_int(p1) * y * y + p2zz;
        const cpp_int root = boost::multiprecision::sqrt(rhs);
        if (root * root != rhs) continue;
        if (root > cpp_int(INT64_MAX)) throw ResourceError("conic solution exceeds 64 bits");
        ConicSolution s{p1, p2, static_cast<std::int64_t>(root), y, z};
        if (!s.primitive()) continue;
        if (!s.x_plus_y_one_mod_4()) s.x = -s.x;
        shell.push_back(s);
      }
    }
    std::sort(shell.begin(), shell.end(), [](const ConicSolution& a, const ConicSolution& b) {
      return std::make_tuple(std::max(a.y, a.z), a.z, a.y) <
             std::make_tuple(std::max(b.y, b.z), b.z, b.y);
    });
    for (const auto& s : shell) {
      out.push_back(s);
      if (out.size() == count) return out;
    }
    previous = bound;
  }
  throw ResourceError("redei conic: only " + std::to_string(out.size()) + " of " +
                      std::to_string(count) + " solutions within |y|, |z| <= " +
                      std::to_string(max_bound));
}

ConicSolution redei_solve_conic(std::uint64_t p1, std::uint64_t p2, std::int64_t max_bound) {
  return redei_conic_solutions(p1, p2, 1, max_bound).front();
}

std::string SymbolResult::to_text() const {
  std::ostringstream out;
  out << "value: " << (value == 1 ? "+1" : "-1") << "\n";
  for (const auto& [k, v] : witnesses) out << k << ": " << v << "\n";
  return out.str();
}

namespace {

void require_redei_triple(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
  require_redei_pair(p1, p2);
  require_odd_prime(p3, "redei");
  if (p3 == p1 || p3 == p2) throw InputError("redei: p3 must differ from p1 and p2");
  if (legendre(static_cast<std::int64_t>(p1 % p3), p3) != 1 ||
      legendre(static_cast<std::int64_t>(p2 % p3), p3) != 1) {
    throw InputError("redei: (p1/p3) and (p2/p3) must both be +1");
  }
}

SymbolResult evaluate_symbol(const ConicSolution& s, std::uint64_t p3) {
  const std::uint64_t root = *sqrt_mod(s.p1 % p3, p3);
  const std::uint64_t x = floor_mod(s.x, p3);
  const std::uint64_t ys = mul_mod(floor_mod(s.y, p3), root, p3);
  const std::uint64_t plus = (x + ys) % p3;
  const std::uint64_t minus = (x + p3 - ys) % p3;
  const int v_plus = legendre(static_cast<std::int64_t>(plus), p3);
  const int v_minus = legendre(static_cast<std::int64_t>(minus), p3);
  if (v_plus == 0 || v_plus != v_minus) {
    throw ConsistencyError("redei: square roots of p1 mod p3 give conflicting values");
  }
  SymbolResult r;
  r.value = v_plus;
  r.witnesses = {
      {"symbol", "[" + std::to_string(s.p1) + "," + std::to_string(s.p2) + "," +
                     std::to_string(p3) + "]"},
      {"conic", "x=" + std::to_string(s.x) + " y=" + std::to_string(s.y) +
                    " z=" + std::to_string(s.z)},
      {"normalization", "z odd, x+y = 1 mod 4"},
      {"sqrt_p1_mod_p3", std::to_string(root)},
      {"alpha_mod_p3", std::to_string(plus)},
      {"alpha_conjugate_mod_p3", std::to_string(minus)},
      {"class_number_gate", class_number_gate() ? "true" : "false"},
  };
  return r;
}

}  // namespace

SymbolResult redei_symbol_with(const ConicSolution& solution, std::uint64_t p3) {
  require_redei_triple(solution.p1, solution.p2, p3);
  if (!solution.satisfies_equation()) throw InputError("redei: not a solution of the conic");
  if (!solution.primitive()) throw InputError("redei: solution is not primitive");
  if (!solution.normalized()) throw InputError("redei: solution is not normalized");
  if (solution.z % static_cast<std::int64_t>(p3) == 0) {
    throw InputError("redei: p3 divides z");
  }
  return evaluate_symbol(solution, p3);
}

SymbolResult redei_symbol(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3,
                          std::int64_t max_bound) {
  require_redei_triple(p1, p2, p3);
  for (std::size_t count = 1;; count *= 2) {
    auto solutions = redei_conic_solutions(p1, p2, count, max_bound);
    for (const auto& s : solutions) {
      if (static_cast<std::uint64_t>(s.z) % p3 != 0) return evaluate_symbol(s, p3);
    }
  }
}

int linking_invariant_n2(std::uint64_t p1, std::uint64_t p2, std::uint64_t pj) {
  require_odd_prime(pj, "linking_invariant_n2");
  if (pj % 4 != 1) throw InputError("linking_invariant_n2: pj must be 1 mod 4");
  return redei_symbol(p1, p2, pj).z2();
}

}  // namespace arlink

#pragma once

// Cross-module invariant suites and the random generators they share with
// the tests.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "arlink/group_word.hpp"
#include "arlink/linking.hpp"

namespace arlink {

struct CheckCount {
  CheckCount() = default;
  CheckCount(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  /// First failure, for the report.
  std::string first_failure;

  void record(bool ok, const std::string& detail = {});
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckCount> checks;

  bool ok() const;
};

/// Labels t1..tn.
std::vector<std::string> slot_labels(int n);

/// A random word of at most `max_length` syllables with exponents in
/// [-max_exponent, max_exponent].
GroupWord random_word(std::mt19937_64& rng, const std::vector<std::string>& labels,
                      int max_length, int max_exponent = 2);

/// The normalized assignment t_l -> Id + E_{l,l+1} over U_n.
Globalization standard_globalization(int n, const ResidueRing& ring);

/// A link-type presentation on t1..tn with sigma words s_l in the commutator
/// subgroup whose images lie in V_n, and relators t_l^(q alpha) [t_l^-1, s_l^-1].
LinkPresentation synthetic_link_presentation(std::mt19937_64& rng, int n, std::uint64_t q);

/// Legendre against Euler's criterion and the reciprocity law for odd primes below max.
SuiteReport verify_reciprocity(std::uint64_t max);

/// Surjectivity of (p', p'') onto the fiber product of U_n by enumeration, and fiber_lift coherence
/// on synthetic presentations.
SuiteReport verify_fiber(int n, std::uint64_t q, int fixtures = 20, std::uint64_t seed = 1);

/// The pairing identity and linking_invariant / eps agreement on random
/// link-type relators over U_{n+1}.
SuiteReport verify_pairing(int n, std::uint64_t q, int samples, std::uint64_t seed = 1);

}  // namespace arlink

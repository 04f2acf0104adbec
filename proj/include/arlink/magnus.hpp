#pragma once

// Truncated Magnus algebra over Z/q.
//
// The free generator with label L maps to 1 + x_L. Series are non-commutative
// polynomials whose monomials x_I are indexed by letter words I; everything
// above the degree bound is discarded.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "arlink/group_word.hpp"
#include "arlink/unitriangular.hpp"

namespace arlink {

/// Multi-index I = (i_1 ... i_n) of a monomial x_I.
using LetterWord = std::vector<std::string>;

/// Degree first, then natural label order letter by letter.
struct DegLexLess {
  bool operator()(const LetterWord& a, const LetterWord& b) const;
};

class TruncatedSeries {
 public:
  TruncatedSeries(const ResidueRing& ring, int degree_bound);

  static TruncatedSeries one(const ResidueRing& ring, int degree_bound);
  /// 1 + x_label.
  static TruncatedSeries generator_image(const std::string& label, const ResidueRing& ring,
                                         int degree_bound);

  const ResidueRing& ring() const noexcept { return ring_; }
  int degree_bound() const noexcept { return degree_bound_; }

  std::uint64_t coefficient(const LetterWord& word) const;
  /// Sets a coefficient (reduced mod q); words longer than the bound are ignored.
  void set_coefficient(const LetterWord& word, std::int64_t value);
  /// As set_coefficient for a value already in [0, q).
  void set_residue(const LetterWord& word, std::uint64_t value);
  /// Non-zero terms in (degree, lexicographic) order.
  const std::map<LetterWord, std::uint64_t, DegLexLess>& terms() const noexcept { return terms_; }

  /// Terms printed as "c * x1.x2", joined by " + ".
  std::string to_string() const;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  ResidueRing ring_;
  int degree_bound_;
  std::map<LetterWord, std::uint64_t, DegLexLess> terms_;
};

TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g);
/// Inverse of a 1-unit by the geometric series in (f - 1).
TruncatedSeries series_inverse_unit(const TruncatedSeries& f);
/// Binary powering; negative exponents go through series_inverse_unit.
TruncatedSeries series_pow(const TruncatedSeries& f, std::int64_t exponent);

/// Magnus image of w truncated at `degree_bound`. When `alphabet` is given,
/// generators outside it are sent to 1 (the ring map x_j -> 0), which leaves
/// every coefficient indexed by a word over the alphabet unchanged.
TruncatedSeries magnus_eval(const GroupWord& w, int degree_bound, const ResidueRing& ring,
                            const std::optional<std::set<std::string>>& alphabet = std::nullopt);

/// Coefficient of x_I in the Magnus image of w.
std::uint64_t eps(const GroupWord& w, const LetterWord& index, const ResidueRing& ring);

/// The element of U_n, n = |I|, whose (l, k) entry is eps_{(i_l ... i_{k-1})}(w).
PartialMatrix magnus_matrix(const GroupWord& w, const LetterWord& index, const ResidueRing& ring);

}  // namespace arlink

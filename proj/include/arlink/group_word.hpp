#pragma once

// Words in named free generators.
//
// Text grammar (whitespace-insensitive):
//   word   := factor*
//   factor := atom ('^' integer)?
//   atom   := label | '[' word ',' word ']' | '(' word ')' | '1'
//   label  := letter+ digit* '\''*
// so "t1t2^-1" reads as t1 * t2^-1 and "[t1,t2]" as t1 t2 t1^-1 t2^-1.

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arlink {

struct Syllable {
  std::string label;
  std::int64_t exponent = 1;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Natural order on labels: alphabetic prefix, then numeric suffix, so t2 < t10.
bool label_less(std::string_view a, std::string_view b);

/// A freely reduced word: adjacent syllables carry different labels and
/// every exponent is non-zero.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Syllable> syllables);

  static GroupWord generator(std::string label, std::int64_t exponent = 1);

  std::span<const Syllable> syllables() const noexcept { return syllables_; }
  bool empty() const noexcept { return syllables_.empty(); }
  /// Sum of |exponent| over syllables.
  std::uint64_t length() const noexcept;
  std::set<std::string> labels() const;

  GroupWord inverse() const;
  GroupWord pow(std::int64_t k) const;
  /// Replaces each label present in `images` by its image; other labels stay.
  GroupWord substitute(const std::map<std::string, GroupWord>& images) const;
  /// Deletes every syllable whose label is in `labels` (maps them to 1).
  GroupWord erase(const std::set<std::string>& labels) const;

  std::string to_string() const;

  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Syllable> syllables_;
};

/// [a, b] = a b a^-1 b^-1.
GroupWord commutator(const GroupWord& a, const GroupWord& b);

/// Throws ParseError with a 1-based column (line is always 1).
GroupWord parse_group_word(std::string_view text);

}  // namespace arlink

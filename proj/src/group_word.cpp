#include "arlink/group_word.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

#include "arlink/error.hpp"

namespace arlink {

namespace {

std::pair<std::string_view, long long> split_label(std::string_view s) {
  std::size_t end = s.size();
  while (end > 0 && s[end - 1] == '\'') --end;
  std::size_t digits = end;
  while (digits > 0 && std::isdigit(static_cast<unsigned char>(s[digits - 1]))) --digits;
  long long number = -1;
  if (digits < end && end - digits < 18) {
    std::from_chars(s.data() + digits, s.data() + end, number);
  }
  return {s.substr(0, digits), number};
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw InputError("exponent overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InputError("exponent overflow");
  return out;
}

// Appends with free reduction against the tail.
void push_reduced(std::vector<Syllable>& out, const Syllable& s) {
  if (s.exponent == 0) return;
  if (!out.empty() && out.back().label == s.label) {
    out.back().exponent = checked_add(out.back().exponent, s.exponent);
    if (out.back().exponent == 0) out.pop_back();
    return;
  }
  out.push_back(s);
}

}  // namespace

bool label_less(std::string_view a, std::string_view b) {
  auto [pa, na] = split_label(a);
  auto [pb, nb] = split_label(b);
  if (pa != pb) return pa < pb;
  if (na != nb) return na < nb;
  return a < b;
}

GroupWord::GroupWord(std::vector<Syllable> syllables) {
  for (const auto& s : syllables) {
    if (s.label.empty()) throw InputError("empty generator label");
    push_reduced(syllables_, s);
  }
}

GroupWord GroupWord::generator(std::string label, std::int64_t exponent) {
  return GroupWord({Syllable{std::move(label), exponent}});
}

std::uint64_t GroupWord::length() const noexcept {
  std::uint64_t total = 0;
  for (const auto& s : syllables_) {
    total += s.exponent < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(s.exponent)
                            : static_cast<std::uint64_t>(s.exponent);
  }
  return total;
}

std::set<std::string> GroupWord::labels() const {
  std::set<std::string> out;
  for (const auto& s : syllables_) out.insert(s.label);
  return out;
}

GroupWord GroupWord::inverse() const {
  GroupWord out;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
    out.syllables_.push_back({it->label, checked_mul(it->exponent, -1)});
  }
  return out;
}

GroupWord GroupWord::pow(std::int64_t k) const {
  if (k == 0 || empty()) return {};
  if (syllables_.size() == 1) {
    return generator(syllables_[0].label, checked_mul(syllables_[0].exponent, k));
  }
  GroupWord base = k < 0 ? inverse() : *this;
  std::uint64_t count = k < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(k)
                              : static_cast<std::uint64_t>(k);
  if (count * base.syllables_.size() > (std::uint64_t{1} << 24)) {
    throw InputError("word power too long to expand");
  }
  GroupWord out;
  for (std::uint64_t i = 0; i < count; ++i) out = out * base;
  return out;
}

GroupWord GroupWord::substitute(const std::map<std::string, GroupWord>& images) const {
  GroupWord out;
  for (const auto& s : syllables_) {
    auto it = images.find(s.label);
    if (it == images.end()) {
      out = out * generator(s.label, s.exponent);
    } else {
      out = out * it->second.pow(s.exponent);
    }
  }
  return out;
}

GroupWord GroupWord::erase(const std::set<std::string>& labels) const {
  std::vector<Syllable> kept;
  for (const auto& s : syllables_) {
    if (!labels.contains(s.label)) kept.push_back(s);
  }
  return GroupWord(std::move(kept));
}

std::string GroupWord::to_string() const {
  if (syllables_.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < syllables_.size(); ++i) {
    if (i > 0) out << ' ';
    out << syllables_[i].label;
    if (syllables_[i].exponent != 1) out << '^' << syllables_[i].exponent;
  }
  return out.str();
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  GroupWord out = a;
  for (const auto& s : b.syllables_) push_reduced(out.syllables_, s);
  return out;
}

GroupWord commutator(const GroupWord& a, const GroupWord& b) {
  return a * b * a.inverse() * b.inverse();
}

// ---------------------------------------------------------------- parser

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  GroupWord parse_all() {
    GroupWord w = parse_word();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, 1, static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  GroupWord parse_word() {
    GroupWord w;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) return w;
      char c = text_[pos_];
      if (c == ',' || c == ']' || c == ')') return w;
      w = w * parse_factor();
    }
  }

  GroupWord parse_factor() {
    GroupWord base = parse_atom();
    if (at('^')) {
      ++pos_;
      base = base.pow(parse_integer());
    }
    return base;
  }

  std::int64_t parse_integer() {
    skip_space();
    std::size_t start = pos_;
    bool parens = false;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      parens = true;
      ++pos_;
      skip_space();
    }
    std::size_t digits_start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::int64_t value = 0;
    std::string_view digits = text_.substr(digits_start, pos_ - digits_start);
    if (!digits.empty() && digits[0] == '+') digits.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      pos_ = start;
      fail("expected an integer exponent");
    }
    if (parens) {
      if (!at(')')) fail("expected ')'");
      ++pos_;
    }
    return value;
  }

  GroupWord parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of word");
    char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      GroupWord a = parse_word();
      if (!at(',')) fail("expected ',' in commutator");
      ++pos_;
      GroupWord b = parse_word();
      if (!at(']')) fail("expected ']'");
      ++pos_;
      return commutator(a, b);
    }
    if (c == '(') {
      ++pos_;
      GroupWord a = parse_word();
      if (!at(')')) fail("expected ')'");
      ++pos_;
      return a;
    }
    if (c == '1' && (pos_ + 1 >= text_.size() ||
                     !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return {};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
      return GroupWord::generator(std::string(text_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

GroupWord parse_group_word(std::string_view text) { return WordParser(text).parse_all(); }

}  // namespace arlink

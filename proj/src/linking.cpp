#include "arlink/linking.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <cctype>
#include <span>
#include <sstream>
#include <tuple>
#include <variant>

#include "arlink/error.hpp"

namespace arlink {

namespace {

bool is_single_power(const GroupWord& w) { return w.syllables().size() <= 1; }

std::string entry_name(int k, int l) {
  return "(" + std::to_string(k) + "," + std::to_string(l) + ")";
}

// First non-zero off-diagonal entry other than (1, n+1), if any.
std::optional<std::pair<Index, std::uint64_t>> outside_center(const PartialMatrix& m) {
  const int n = m.n();
  const auto entries = m.shape().entries();
  const auto values = m.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& [k, l] = entries[i];
    if (k == l || (k == 1 && l == n + 1)) continue;
    if (values[i] != 0) return std::make_pair(entries[i], values[i]);
  }
  return std::nullopt;
}

void require_center(const PartialMatrix& m, const std::string& what) {
  if (!m.shape().contains(1, m.n() + 1)) {
    throw PreconditionError(what + ": shape does not contain " + entry_name(1, m.n() + 1));
  }
  if (auto bad = outside_center(m)) {
    throw PreconditionError(what + ": image is not in V_" + std::to_string(m.n()) + ", entry " +
                            entry_name(bad->first.first, bad->first.second) + " = " +
                            std::to_string(bad->second));
  }
}

}  // namespace

// ------------------------------------------------------------------ relators

Relator Relator::free_form(GroupWord word) {
  Relator r;
  r.word_ = std::move(word);
  return r;
}

Relator Relator::link_type(LinkTypeParts parts, std::uint64_t q) {
  if (!is_single_power(parts.tau_prime)) {
    throw InputError("link-type relator: tau' must be a power of one generator");
  }
  if (!is_single_power(parts.tau)) {
    throw InputError("link-type relator: tau must be a power of one generator");
  }
  if (q < 2 || q > static_cast<std::uint64_t>(INT64_MAX)) throw InputError("modulus out of range");
  const auto qs = static_cast<std::int64_t>(q);
  parts.alpha = ((parts.alpha % qs) + qs) % qs;
  std::int64_t exponent = 0;
  if (__builtin_mul_overflow(qs, parts.alpha, &exponent)) {
    throw InputError("link-type relator: q * alpha overflows");
  }
  Relator r;
  r.word_ = parts.tau_prime.pow(exponent) * commutator(parts.tau, parts.sigma_hat);
  r.parts_ = std::move(parts);
  return r;
}

std::string Relator::to_string() const {
  if (!parts_) return word_.to_string();
  std::ostringstream out;
  out << "linktype tau'=" << parts_->tau_prime.to_string() << " alpha=" << parts_->alpha
      << " tau=" << parts_->tau.to_string() << " sigma=" << parts_->sigma_hat.to_string();
  return out.str();
}

// -------------------------------------------------------------- presentation

LinkPresentation::LinkPresentation(ResidueRing ring, int n, std::vector<Slot> slots,
                                   std::map<std::string, GroupWord> sigma_words,
                                   std::vector<Relator> relators)
    : ring_(ring),
      n_(n),
      slots_(std::move(slots)),
      sigma_words_(std::move(sigma_words)),
      relators_(std::move(relators)) {
  if (n_ < 1) throw InputError("presentation size must be at least 1");
  if (static_cast<int>(slots_.size()) != n_) {
    throw InputError("presentation needs exactly " + std::to_string(n_) + " slots");
  }
  std::sort(slots_.begin(), slots_.end(),
            [](const Slot& a, const Slot& b) { return a.index < b.index; });
  std::set<std::string> taus;
  for (int l = 1; l <= n_; ++l) {
    const Slot& s = slots_[static_cast<std::size_t>(l - 1)];
    if (s.index != l) throw InputError("slots must be numbered 1.." + std::to_string(n_));
    if (s.tau.empty()) throw InputError("slot " + std::to_string(l) + " has no tau label");
    if (!taus.insert(s.tau).second) throw InputError("duplicate tau label " + s.tau);
  }
  for (const auto& [label, word] : sigma_words_) {
    if (taus.contains(label)) throw InputError("label " + label + " is both tau and sigma");
    for (const auto& used : word.labels()) {
      if (!taus.contains(used)) {
        throw InputError("sigma word for " + label + " uses non-tau label " + used);
      }
    }
  }
  std::set<std::string> slot_sigmas;
  for (const auto& s : slots_) {
    if (!s.sigma) continue;
    if (!sigma_words_.contains(*s.sigma)) {
      throw InputError("slot " + std::to_string(s.index) + " names undeclared sigma " + *s.sigma);
    }
    if (!slot_sigmas.insert(*s.sigma).second) throw InputError("duplicate sigma label " + *s.sigma);
  }
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    for (const auto& used : relators_[i].word().labels()) {
      if (!taus.contains(used) && !sigma_words_.contains(used)) {
        throw InputError("relator " + std::to_string(i + 1) + " uses undeclared label " + used);
      }
    }
  }
}

const Slot& LinkPresentation::slot(int l) const {
  if (l < 1 || l > n_) throw InputError("slot index out of range");
  return slots_[static_cast<std::size_t>(l - 1)];
}

std::vector<std::string> LinkPresentation::tau_labels() const {
  std::vector<std::string> out;
  out.reserve(slots_.size());
  for (const auto& s : slots_) out.push_back(s.tau);
  return out;
}

bool LinkPresentation::is_tau(const std::string& label) const {
  return std::any_of(slots_.begin(), slots_.end(),
                     [&](const Slot& s) { return s.tau == label; });
}

bool LinkPresentation::is_sigma(const std::string& label) const {
  return sigma_words_.contains(label);
}

GroupWord LinkPresentation::expand(const GroupWord& w) const { return w.substitute(sigma_words_); }

// ------------------------------------------------------------------- parsing

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::string_view line, int line_no) : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& message, int column) const {
    throw ParseError(message, line_no_, column);
  }

  GroupWord word_at(std::string_view text, int column) const {
    try {
      return parse_group_word(text);
    } catch (const ParseError& e) {
      fail(std::string(strip_position(e.what())), column + e.column() - 1);
    } catch (const InputError& e) {
      fail(e.what(), column);
    }
  }

  std::int64_t integer_at(std::string_view text, int column) const {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) fail("expected an integer", column);
    return value;
  }

  std::string_view line() const { return line_; }
  int line_no() const { return line_no_; }

 private:
  static std::string_view strip_position(std::string_view what) {
    // ParseError messages start with "line:col: ".
    auto pos = what.find(": ");
    return pos == std::string_view::npos ? what : what.substr(pos + 2);
  }

  std::string_view line_;
  int line_no_;
};

// Splits "key=value ..." tokens into keyed values. A value runs until the next
// token that starts a known key, so words with spaces survive.
std::map<std::string, Token> keyed_values(const LineParser& p, std::span<const Token> tokens,
                                          const std::set<std::string>& keys) {
  std::map<std::string, Token> out;
  std::string current;
  int value_start = 0;
  std::size_t value_begin = 0;
  std::size_t value_end = 0;
  auto flush = [&] {
    if (current.empty()) return;
    std::string_view whole = p.line();
    out[current] = Token{whole.substr(value_begin, value_end - value_begin), value_start};
  };
  for (const auto& tok : tokens) {
    auto eq = tok.text.find('=');
    std::string key = eq == std::string_view::npos ? "" : std::string(tok.text.substr(0, eq));
    if (eq != std::string_view::npos && keys.contains(key)) {
      flush();
      if (out.contains(key)) p.fail("duplicate key " + key, tok.column);
      current = key;
      value_start = tok.column + static_cast<int>(eq) + 1;
      value_begin = static_cast<std::size_t>(value_start - 1);
      value_end = static_cast<std::size_t>(tok.column - 1) + tok.text.size();
      continue;
    }
    if (current.empty()) p.fail("unexpected token '" + std::string(tok.text) + "'", tok.column);
    value_end = static_cast<std::size_t>(tok.column - 1) + tok.text.size();
  }
  flush();
  return out;
}

struct PendingRelator {
  Relator relator;
  int line;
  int column;
};

}  // namespace

LinkPresentation parse_presentation(std::string_view text) {
  std::optional<int> n;
  std::optional<ResidueRing> ring;
  int params_line = 0;
  std::map<int, std::pair<Slot, int>> slots;  // index -> (slot, line)
  std::map<std::string, std::pair<GroupWord, int>> sigmas;
  std::vector<std::tuple<GroupWord, int, int>> free_relators;
  struct LinkTypeLine {
    std::map<std::string, Token> values;
    int line;
  };
  std::vector<std::variant<std::size_t, LinkTypeLine>> relator_order;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineParser p(line, line_no);
    auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto& head = tokens[0];
    std::span<const Token> rest(tokens.data() + 1, tokens.size() - 1);

    if (head.text == "params") {
      if (n) p.fail("duplicate params line", head.column);
      auto kv = keyed_values(p, rest, {"n", "q"});
      if (!kv.contains("n") || !kv.contains("q")) p.fail("params needs n= and q=", head.column);
      auto nv = p.integer_at(kv["n"].text, kv["n"].column);
      if (nv < 1 || nv > 64) p.fail("n must be between 1 and 64", kv["n"].column);
      auto qv = p.integer_at(kv["q"].text, kv["q"].column);
      try {
        if (qv < 2) throw InputError("q must be a prime power");
        ring.emplace(static_cast<std::uint64_t>(qv));
      } catch (const InputError& e) {
        p.fail(e.what(), kv["q"].column);
      }
      n = static_cast<int>(nv);
      params_line = line_no;
    } else if (head.text == "slot") {
      if (rest.empty()) p.fail("slot needs an index", head.column + 5);
      auto index = p.integer_at(rest[0].text, rest[0].column);
      if (index < 1 || index > 64) p.fail("slot index out of range", rest[0].column);
      auto kv = keyed_values(p, rest.subspan(1), {"tau", "sigma"});
      if (!kv.contains("tau")) p.fail("slot needs tau=", rest[0].column);
      Slot s;
      s.index = static_cast<int>(index);
      auto check_label = [&](const Token& t) {
        GroupWord w = p.word_at(t.text, t.column);
        if (w.syllables().size() != 1 || w.syllables()[0].exponent != 1) {
          p.fail("expected a generator label", t.column);
        }
        return w.syllables()[0].label;
      };
      s.tau = check_label(kv["tau"]);
      if (kv.contains("sigma")) s.sigma = check_label(kv["sigma"]);
      if (slots.contains(s.index)) p.fail("duplicate slot " + std::to_string(index), rest[0].column);
      slots.emplace(s.index, std::make_pair(std::move(s), line_no));
    } else if (head.text == "sigma") {
      auto eq = line.find('=', static_cast<std::size_t>(head.column - 1) + head.text.size());
      if (eq == std::string_view::npos) p.fail("sigma line needs '='", head.column);
      auto label_text = line.substr(static_cast<std::size_t>(head.column - 1) + head.text.size(),
                                    eq - (static_cast<std::size_t>(head.column - 1) + head.text.size()));
      auto label_tokens = tokenize(label_text);
      const int label_col = head.column + static_cast<int>(head.text.size());
      if (label_tokens.size() != 1) p.fail("sigma line needs exactly one label", label_col);
      const int col = label_col + label_tokens[0].column - 1;
      GroupWord lw = p.word_at(label_tokens[0].text, col);
      if (lw.syllables().size() != 1 || lw.syllables()[0].exponent != 1) {
        p.fail("expected a generator label", col);
      }
      const std::string label = lw.syllables()[0].label;
      if (sigmas.contains(label)) p.fail("duplicate sigma " + label, col);
      GroupWord w = p.word_at(line.substr(eq + 1), static_cast<int>(eq) + 2);
      sigmas.emplace(label, std::make_pair(std::move(w), line_no));
    } else if (head.text == "rel") {
      if (!rest.empty() && rest[0].text == "linktype") {
        auto kv = keyed_values(p, rest.subspan(1), {"tau'", "alpha", "tau", "sigma"});
        for (const char* key : {"tau'", "alpha", "tau", "sigma"}) {
          if (!kv.contains(key)) p.fail(std::string("linktype relator needs ") + key + "=", rest[0].column);
        }
        relator_order.emplace_back(LinkTypeLine{std::move(kv), line_no});
      } else {
        const int col = rest.empty() ? head.column + 3 : rest[0].column;
        GroupWord w = rest.empty() ? GroupWord{}
                                   : p.word_at(line.substr(static_cast<std::size_t>(col - 1)), col);
        relator_order.emplace_back(free_relators.size());
        free_relators.emplace_back(std::move(w), line_no, col);
      }
    } else {
      p.fail("unknown directive '" + std::string(head.text) + "'", head.column);
    }
    if (end == text.size()) break;
  }

  if (!n) throw ParseError("missing params line", 1, 1);

  std::vector<Slot> slot_list;
  std::set<std::string> taus;
  for (const auto& [index, entry] : slots) {
    const auto& [s, ln] = entry;
    if (index > *n) {
      throw ParseError("slot " + std::to_string(index) + " exceeds n = " + std::to_string(*n), ln, 1);
    }
    if (!taus.insert(s.tau).second) throw ParseError("duplicate tau label " + s.tau, ln, 1);
    slot_list.push_back(s);
  }
  for (int l = 1; l <= *n; ++l) {
    if (!slots.contains(l)) throw ParseError("missing slot " + std::to_string(l), params_line, 1);
  }
  std::map<std::string, GroupWord> sigma_words;
  for (const auto& [label, entry] : sigmas) {
    const auto& [w, ln] = entry;
    if (taus.contains(label)) throw ParseError("label " + label + " is already a tau label", ln, 1);
    for (const auto& used : w.labels()) {
      if (!taus.contains(used)) throw ParseError("sigma word uses non-tau label " + used, ln, 1);
    }
    sigma_words.emplace(label, w);
  }
  for (const auto& [index, entry] : slots) {
    const auto& [s, ln] = entry;
    if (s.sigma && !sigma_words.contains(*s.sigma)) {
      throw ParseError("sigma " + *s.sigma + " has no sigma line", ln, 1);
    }
  }
  auto check_declared = [&](const GroupWord& w, int ln, int col) {
    for (const auto& used : w.labels()) {
      if (!taus.contains(used) && !sigma_words.contains(used)) {
        throw ParseError("undeclared generator " + used, ln, col);
      }
    }
  };
  std::vector<Relator> relators;
  for (auto& item : relator_order) {
    if (std::holds_alternative<std::size_t>(item)) {
      auto& [w, ln, col] = free_relators[std::get<std::size_t>(item)];
      check_declared(w, ln, col);
      relators.push_back(Relator::free_form(w));
      continue;
    }
    auto& lt = std::get<LinkTypeLine>(item);
    LineParser p(std::string_view{}, lt.line);
    LinkTypeParts parts;
    auto word_of = [&](const char* key) {
      const Token& t = lt.values.at(key);
      GroupWord w = p.word_at(t.text, t.column);
      check_declared(w, lt.line, t.column);
      return w;
    };
    parts.tau_prime = word_of("tau'");
    parts.tau = word_of("tau");
    parts.sigma_hat = word_of("sigma");
    const Token& a = lt.values.at("alpha");
    parts.alpha = p.integer_at(a.text, a.column);
    try {
      relators.push_back(Relator::link_type(std::move(parts), ring->modulus()));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), lt.line, lt.values.at("tau").column);
    }
  }
  return LinkPresentation(*ring, *n, std::move(slot_list), std::move(sigma_words),
                          std::move(relators));
}

std::string to_text(const LinkPresentation& pres) {
  std::ostringstream out;
  out << "params n=" << pres.n() << " q=" << pres.ring().modulus() << "\n";
  for (const auto& s : pres.slots()) {
    out << "slot " << s.index << " tau=" << s.tau;
    if (s.sigma) out << " sigma=" << *s.sigma;
    out << "\n";
  }
  for (const auto& [label, word] : pres.sigma_words()) {
    out << "sigma " << label << " = " << word.to_string() << "\n";
  }
  for (const auto& r : pres.relators()) out << "rel " << r.to_string() << "\n";
  return out.str();
}

LinkPresentation restrict_presentation(const LinkPresentation& pres, int first, int count) {
  if (count < 1 || first < 1 || first + count - 1 > pres.n()) {
    throw InputError("restrict_presentation: slot window out of range");
  }
  std::set<std::string> dropped;
  std::vector<Slot> slots;
  for (const auto& s : pres.slots()) {
    if (s.index >= first && s.index < first + count) {
      Slot t = s;
      t.index = s.index - first + 1;
      slots.push_back(std::move(t));
    } else {
      dropped.insert(s.tau);
    }
  }
  std::map<std::string, GroupWord> sigma_words;
  for (const auto& [label, word] : pres.sigma_words()) sigma_words.emplace(label, word.erase(dropped));
  std::vector<Relator> relators;
  for (const auto& r : pres.relators()) {
    if (r.is_link_type()) {
      LinkTypeParts parts = *r.parts();
      parts.tau_prime = parts.tau_prime.erase(dropped);
      parts.tau = parts.tau.erase(dropped);
      parts.sigma_hat = parts.sigma_hat.erase(dropped);
      relators.push_back(Relator::link_type(std::move(parts), pres.ring().modulus()));
    } else {
      relators.push_back(Relator::free_form(r.word().erase(dropped)));
    }
  }
  return LinkPresentation(pres.ring(), count, std::move(slots), std::move(sigma_words),
                          std::move(relators));
}

// ------------------------------------------------------------ globalization

Globalization::Globalization(ConvexShape shape, ResidueRing ring,
                             std::vector<std::string> slot_labels,
                             std::map<std::string, PartialMatrix> images)
    : shape_(std::move(shape)),
      ring_(ring),
      slot_labels_(std::move(slot_labels)),
      images_(std::move(images)) {
  std::set<std::string> seen;
  for (const auto& label : slot_labels_) {
    if (!seen.insert(label).second) throw InputError("duplicate slot label " + label);
    if (!images_.contains(label)) throw InputError("slot label " + label + " is not assigned");
  }
  for (const auto& [label, m] : images_) {
    if (!(m.shape() == shape_)) throw InputError("image of " + label + " has the wrong shape");
    if (!(m.ring() == ring_)) throw InputError("image of " + label + " has the wrong ring");
  }
}

const PartialMatrix& Globalization::image(const std::string& label) const {
  auto it = images_.find(label);
  if (it == images_.end()) throw InputError("generator " + label + " is not assigned");
  return it->second;
}

PartialMatrix eval_word(const Globalization& g, const GroupWord& w) {
  PartialMatrix result = PartialMatrix::identity(g.shape(), g.ring());
  for (const auto& s : w.syllables()) result = result * power(g.image(s.label), s.exponent);
  return result;
}

Globalization project_globalization(const Globalization& g, const ConvexShape& sub) {
  std::map<std::string, PartialMatrix> images;
  for (const auto& [label, m] : g.images()) images.emplace(label, project(m, sub));
  return Globalization(sub, g.ring(), g.slot_labels(), std::move(images));
}

namespace {

template <class Block>
Globalization restrict_block(const Globalization& g, int m, bool keep_first, Block block) {
  if (m < 1 || m > g.n()) throw InputError("restriction size out of range");
  if (!g.shape().is_full()) throw InputError("block restriction needs a full shape");
  if (static_cast<int>(g.slot_labels().size()) != g.n()) {
    throw InputError("block restriction needs one slot label per slot");
  }
  std::map<std::string, PartialMatrix> images;
  for (const auto& [label, a] : g.images()) images.emplace(label, block(a, m));
  const auto& labels = g.slot_labels();
  std::vector<std::string> kept =
      keep_first ? std::vector<std::string>(labels.begin(), labels.begin() + m)
                 : std::vector<std::string>(labels.end() - m, labels.end());
  return Globalization(ConvexShape::full(m), g.ring(), std::move(kept), std::move(images));
}

}  // namespace

Globalization restrict_upper_left(const Globalization& g, int m) {
  return restrict_block(g, m, true, [](const PartialMatrix& a, int k) { return upper_left(a, k); });
}

Globalization restrict_lower_right(const Globalization& g, int m) {
  return restrict_block(g, m, false,
                        [](const PartialMatrix& a, int k) { return lower_right(a, k); });
}

namespace {

// Adds sigma images and checks every relator of pres against the tau images.
GlobalizationOutcome complete_and_check(const LinkPresentation& pres, const ConvexShape& shape,
                                        std::map<std::string, PartialMatrix> tau_images) {
  Globalization taus_only(shape, pres.ring(), pres.tau_labels(), tau_images);
  for (const auto& [label, word] : pres.sigma_words()) {
    tau_images.insert_or_assign(label, eval_word(taus_only, word));
  }
  Globalization candidate(shape, pres.ring(), pres.tau_labels(), std::move(tau_images));
  GlobalizationOutcome outcome;
  for (std::size_t i = 0; i < pres.relators().size(); ++i) {
    const auto& r = pres.relators()[i];
    PartialMatrix image = eval_word(candidate, r.word());
    if (!image.is_identity()) {
      int depth = filtration_depth(image);
      outcome.obstructions.push_back({i, r.to_string(), std::move(image), depth});
    }
  }
  if (outcome.obstructions.empty()) outcome.globalization = std::move(candidate);
  return outcome;
}

}  // namespace

GlobalizationOutcome build_globalization(const LinkPresentation& pres) {
  const int n = pres.n();
  auto shape = ConvexShape::full(n);
  std::map<std::string, PartialMatrix> images;
  for (const auto& s : pres.slots()) {
    images.emplace(s.tau, elementary(shape, s.index, s.index + 1, 1, pres.ring()));
  }
  auto outcome = complete_and_check(pres, shape, std::move(images));
  if (outcome.ok()) {
    std::uint64_t order = group_order(shape, pres.ring());
    if (order != 0 && order <= (std::uint64_t{1} << 16)) {
      std::vector<PartialMatrix> gens;
      for (const auto& label : pres.tau_labels()) gens.push_back(outcome.globalization->image(label));
      if (closure_size(gens) != order) {
        throw ConsistencyError("globalization image is a proper subgroup");
      }
      outcome.surjectivity_checked = true;
    }
  }
  return outcome;
}

bool check_link_type_vanishing(const LinkPresentation& pres) {
  for (std::size_t i = 0; i < pres.relators().size(); ++i) {
    if (!pres.relators()[i].is_link_type()) {
      throw InputError("relator " + std::to_string(i + 1) + " is not of link type");
    }
  }
  const int n = pres.n();
  auto shape = ConvexShape::full(n);
  std::map<std::string, PartialMatrix> images;
  for (const auto& s : pres.slots()) {
    images.emplace(s.tau, elementary(shape, s.index, s.index + 1, 1, pres.ring()));
  }
  Globalization g(shape, pres.ring(), pres.tau_labels(), std::move(images));
  auto in_center = [&](const GroupWord& w) {
    return filtration_depth(eval_word(g, pres.expand(w))) >= n;
  };
  for (const auto& [label, word] : pres.sigma_words()) {
    if (!in_center(word)) return false;
  }
  for (const auto& r : pres.relators()) {
    if (!in_center(r.parts()->sigma_hat)) return false;
  }
  return true;
}

std::uint64_t linking_invariant(const Globalization& g, const GroupWord& z_word) {
  PartialMatrix image = eval_word(g, z_word);
  require_center(image, "linking_invariant");
  return image.at(1, g.n() + 1);
}

GlobalizationOutcome fiber_lift(const Globalization& g1, const Globalization& g2,
                                const LinkPresentation& pres) {
  const int n = pres.n();
  const int m1 = g1.n();
  const int m2 = g2.n();
  if (m1 < std::max(1, n - 1) || m1 > n || m2 < std::max(1, n - 1) || m2 > n) {
    throw InputError("fiber_lift: factors must have size n-1 or n");
  }
  if (n == 1 && (m1 != 1 || m2 != 1)) throw InputError("fiber_lift: factors must have size 1");
  const auto taus = pres.tau_labels();
  const std::vector<std::string> first(taus.begin(), taus.begin() + m1);
  const std::vector<std::string> last(taus.end() - m2, taus.end());
  if (g1.slot_labels() != first) throw InputError("fiber_lift: g1 slots do not match the first window");
  if (g2.slot_labels() != last) throw InputError("fiber_lift: g2 slots do not match the last window");
  if (!g1.shape().is_full() || !g2.shape().is_full()) {
    throw InputError("fiber_lift: factors must be over full shapes");
  }
  if (!(g1.ring() == pres.ring()) || !(g2.ring() == pres.ring())) {
    throw InputError("fiber_lift: ring mismatch");
  }

  // Sigma-words restricted to each window must die under the factor.
  auto require_trivial_sigmas = [&](const Globalization& g, const std::vector<std::string>& window,
                                    const char* name) {
    std::set<std::string> dropped;
    for (const auto& t : taus) {
      if (std::find(window.begin(), window.end(), t) == window.end()) dropped.insert(t);
    }
    for (const auto& [label, word] : pres.sigma_words()) {
      PartialMatrix image = eval_word(g, word.erase(dropped));
      if (!image.is_identity()) {
        throw PreconditionError(std::string("fiber_lift: ") + name + " does not kill sigma " + label);
      }
    }
  };
  require_trivial_sigmas(g1, first, "g1");
  require_trivial_sigmas(g2, last, "g2");

  auto shape = ConvexShape::full(n);
  std::map<std::string, PartialMatrix> images;
  for (const auto& label : taus) {
    PartialMatrix a = g1.assigns(label) ? g1.image(label)
                                        : PartialMatrix::identity(g1.shape(), g1.ring());
    PartialMatrix b = g2.assigns(label) ? g2.image(label)
                                        : PartialMatrix::identity(g2.shape(), g2.ring());
    if (m1 == n && m2 == n) {
      if (!(a == b)) throw CompatibilityError("fiber_lift: g1 and g2 disagree on " + label);
      images.emplace(label, a);
      continue;
    }
    try {
      images.emplace(label, fiber_glue(a, b, n));
    } catch (const CompatibilityError& e) {
      throw CompatibilityError("fiber_lift: overlap mismatch on " + label + ": " + e.what());
    }
  }
  auto outcome = complete_and_check(pres, shape, std::move(images));
  if (!outcome.ok()) return outcome;

  const Globalization& g = *outcome.globalization;
  for (const auto& label : taus) {
    const auto& img = g.image(label);
    if (g1.assigns(label) && !(upper_left(img, m1) == g1.image(label))) {
      throw ConsistencyError("fiber_lift: lift does not project onto g1");
    }
    if (g2.assigns(label) && !(lower_right(img, m2) == g2.image(label))) {
      throw ConsistencyError("fiber_lift: lift does not project onto g2");
    }
  }
  for (const auto& [label, word] : pres.sigma_words()) {
    if (filtration_depth(g.image(label)) < n) {
      throw ConsistencyError("fiber_lift: sigma image of " + label + " is not central");
    }
  }
  return outcome;
}

std::uint64_t hoechsmann_pairing(const Globalization& g_star, const Relator& r) {
  if (!r.is_link_type()) throw InputError("hoechsmann_pairing: relator is not of link type");
  const int n1 = g_star.n();
  if (n1 < 2) throw InputError("hoechsmann_pairing: needs a globalization over U_{n+1}, n >= 1");
  if (!g_star.shape().is_full()) throw InputError("hoechsmann_pairing: shape must be full");
  const auto& parts = *r.parts();
  const auto& last = g_star.slot_labels().back();
  if (!parts.tau.empty() && parts.tau.syllables()[0].label != last) {
    throw PreconditionError("hoechsmann_pairing: tau must be a power of the last slot generator " +
                            last);
  }
  Globalization lower = restrict_upper_left(g_star, n1 - 1);
  require_center(eval_word(lower, parts.sigma_hat), "hoechsmann_pairing");
  return eval_word(g_star, r.word()).at(1, n1 + 1);
}

std::uint64_t MasseyCoordinate::operator()(const GroupWord& w) const {
  return eval_word(*g_, w).at(l_, l_ + 1);
}

std::vector<MasseyCoordinate> massey_coordinates(const Globalization& g_bar,
                                                 const LinkPresentation& pres) {
  const int m = pres.n();
  if (!(g_bar.shape() == ConvexShape::filtration(m, m))) {
    throw InputError("massey_coordinates: assignment must be over U_{I(m,m)}");
  }
  if (g_bar.slot_labels() != pres.tau_labels()) {
    throw InputError("massey_coordinates: slot labels do not match the presentation");
  }
  std::map<std::string, PartialMatrix> images = g_bar.images();
  for (const auto& [label, word] : pres.sigma_words()) {
    if (!images.contains(label)) images.emplace(label, eval_word(g_bar, word));
  }
  auto g = std::make_shared<const Globalization>(g_bar.shape(), g_bar.ring(), g_bar.slot_labels(),
                                                 std::move(images));
  for (std::size_t i = 0; i < pres.relators().size(); ++i) {
    if (!eval_word(*g, pres.relators()[i].word()).is_identity()) {
      throw InputError("massey_coordinates: relator " + std::to_string(i + 1) +
                       " does not vanish");
    }
  }

  std::vector<MasseyCoordinate> coords;
  for (int l = 1; l <= m; ++l) coords.emplace_back(g, l);

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  const auto labels = pres.tau_labels();
  auto random_word = [&] {
    std::vector<Syllable> s;
    int len = static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      s.push_back({labels[rng() % labels.size()], static_cast<std::int64_t>(rng() % 5) - 2});
    }
    return GroupWord(std::move(s));
  };
  const auto& ring = g->ring();
  for (int trial = 0; trial < 16; ++trial) {
    GroupWord a = random_word();
    GroupWord b = random_word();
    for (const auto& phi : coords) {
      if (phi(a * b) != ring.add(phi(a), phi(b))) {
        throw ConsistencyError("massey_coordinates: coordinate " + std::to_string(phi.index()) +
                               " is not additive");
      }
    }
  }
  return coords;
}

namespace {

GroupWord scaled_elementary_word(const std::vector<std::string>& labels, int k, int l,
                                 std::int64_t c) {
  GroupWord head = GroupWord::generator(labels[static_cast<std::size_t>(k - 1)], c);
  if (l == k + 1) return head;
  return commutator(head, elementary_word(labels, k + 1, l));
}

}  // namespace

GroupWord elementary_word(const std::vector<std::string>& slot_labels, int k, int l) {
  if (k < 1 || l <= k || l > static_cast<int>(slot_labels.size()) + 1) {
    throw InputError("elementary_word: index out of range");
  }
  return scaled_elementary_word(slot_labels, k, l, 1);
}

GroupWord complete_to_center(const Globalization& g, const GroupWord& w) {
  const int n = g.n();
  if (!g.shape().is_full()) throw InputError("complete_to_center: shape must be full");
  if (static_cast<int>(g.slot_labels().size()) != n) {
    throw InputError("complete_to_center: needs one slot label per slot");
  }
  const std::uint64_t q = g.ring().modulus();
  if (q > (std::uint64_t{1} << 62)) throw InputError("complete_to_center: modulus too large");
  GroupWord out = w;
  for (int level = 1; level < n; ++level) {
    PartialMatrix image = eval_word(g, out);
    for (int k = 1; k + level <= n + 1; ++k) {
      const int l = k + level;
      if (k == 1 && l == n + 1) continue;
      std::uint64_t c = image.at(k, l);
      if (c == 0) continue;
      out = out * scaled_elementary_word(g.slot_labels(), k, l, static_cast<std::int64_t>(q - c));
    }
  }
  PartialMatrix image = eval_word(g, out);
  if (auto bad = outside_center(image)) {
    throw PreconditionError("complete_to_center: globalization is not normalized, entry " +
                            entry_name(bad->first.first, bad->first.second) + " survives");
  }
  return out;
}

}  // namespace arlink

#include "arlink/magnus.hpp"

#include <algorithm>
#include <sstream>

#include "arlink/error.hpp"

namespace arlink {

bool DegLexLess::operator()(const LetterWord& a, const LetterWord& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return label_less(a[i], b[i]);
  }
  return false;
}

TruncatedSeries::TruncatedSeries(const ResidueRing& ring, int degree_bound)
    : ring_(ring), degree_bound_(degree_bound) {
  if (degree_bound < 0) throw InputError("degree bound must be non-negative");
}

TruncatedSeries TruncatedSeries::one(const ResidueRing& ring, int degree_bound) {
  TruncatedSeries s(ring, degree_bound);
  s.set_coefficient({}, 1);
  return s;
}

TruncatedSeries TruncatedSeries::generator_image(const std::string& label,
                                                 const ResidueRing& ring, int degree_bound) {
  TruncatedSeries s = one(ring, degree_bound);
  s.set_coefficient({label}, 1);
  return s;
}

std::uint64_t TruncatedSeries::coefficient(const LetterWord& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? 0 : it->second;
}

void TruncatedSeries::set_coefficient(const LetterWord& word, std::int64_t value) {
  if (static_cast<int>(word.size()) > degree_bound_) return;
  set_residue(word, ring_.reduce(value));
}

void TruncatedSeries::set_residue(const LetterWord& word, std::uint64_t value) {
  if (static_cast<int>(word.size()) > degree_bound_) return;
  std::uint64_t v = value % ring_.modulus();
  if (v == 0) {
    terms_.erase(word);
  } else {
    terms_[word] = v;
  }
}

namespace {

std::string variable_name(const std::string& label) {
  if (label.size() > 1 && label[0] == 't' &&
      std::all_of(label.begin() + 1, label.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return "x" + label.substr(1);
  }
  return "x_" + label;
}

void require_compatible(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (!(f.ring() == g.ring())) throw InputError("series ring mismatch");
  if (f.degree_bound() != g.degree_bound()) throw InputError("series degree bound mismatch");
}

}  // namespace

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [word, c] : terms_) {
    out << (first ? "" : " + ") << c;
    first = false;
    if (word.empty()) continue;
    out << " * ";
    for (std::size_t i = 0; i < word.size(); ++i) out << (i ? "." : "") << variable_name(word[i]);
  }
  return out.str();
}

TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_compatible(f, g);
  const auto& ring = f.ring();
  const std::size_t bound = static_cast<std::size_t>(f.degree_bound());
  std::map<LetterWord, std::uint64_t, DegLexLess> acc;
  for (const auto& [u, a] : f.terms()) {
    for (const auto& [v, b] : g.terms()) {
      if (u.size() + v.size() > bound) break;  // g's terms ascend in degree
      LetterWord uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      auto& slot = acc[uv];
      slot = ring.add(slot, ring.mul(a, b));
    }
  }
  TruncatedSeries out(ring, f.degree_bound());
  for (const auto& [w, c] : acc) {
    if (c != 0) out.set_residue(w, c);
  }
  return out;
}

TruncatedSeries series_inverse_unit(const TruncatedSeries& f) {
  if (f.coefficient({}) != 1) throw InputError("series_inverse_unit: constant term must be 1");
  const auto& ring = f.ring();
  // h = 1 - f, so f^-1 = sum_k h^k; h has no constant term and h^k vanishes for k > d.
  TruncatedSeries h(ring, f.degree_bound());
  for (const auto& [w, c] : f.terms()) {
    if (!w.empty()) h.set_residue(w, ring.neg(c));
  }
  TruncatedSeries result = TruncatedSeries::one(ring, f.degree_bound());
  TruncatedSeries term = result;
  for (int k = 1; k <= f.degree_bound(); ++k) {
    term = series_mul(term, h);
    if (term.terms().empty()) break;
    for (const auto& [w, c] : term.terms()) {
      result.set_residue(w, ring.add(result.coefficient(w), c));
    }
  }
  return result;
}

TruncatedSeries series_pow(const TruncatedSeries& f, std::int64_t exponent) {
  TruncatedSeries base = exponent < 0 ? series_inverse_unit(f) : f;
  std::uint64_t e = exponent < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(exponent)
                                 : static_cast<std::uint64_t>(exponent);
  TruncatedSeries result = TruncatedSeries::one(f.ring(), f.degree_bound());
  while (e > 0) {
    if (e & 1) result = series_mul(result, base);
    e >>= 1;
    if (e > 0) base = series_mul(base, base);
  }
  return result;
}

TruncatedSeries magnus_eval(const GroupWord& w, int degree_bound, const ResidueRing& ring,
                            const std::optional<std::set<std::string>>& alphabet) {
  TruncatedSeries result = TruncatedSeries::one(ring, degree_bound);
  for (const auto& s : w.syllables()) {
    if (alphabet && !alphabet->contains(s.label)) continue;
    auto g = TruncatedSeries::generator_image(s.label, ring, degree_bound);
    result = series_mul(result, series_pow(g, s.exponent));
  }
  return result;
}

std::uint64_t eps(const GroupWord& w, const LetterWord& index, const ResidueRing& ring) {
  std::set<std::string> alphabet(index.begin(), index.end());
  return magnus_eval(w, static_cast<int>(index.size()), ring, alphabet).coefficient(index);
}

PartialMatrix magnus_matrix(const GroupWord& w, const LetterWord& index,
                            const ResidueRing& ring) {
  const int n = static_cast<int>(index.size());
  std::set<std::string> alphabet(index.begin(), index.end());
  auto series = magnus_eval(w, n, ring, alphabet);
  auto shape = ConvexShape::full(n);
  std::vector<std::pair<Index, std::uint64_t>> entries;
  for (int l = 1; l <= n + 1; ++l) {
    for (int k = l + 1; k <= n + 1; ++k) {
      LetterWord sub(index.begin() + (l - 1), index.begin() + (k - 1));
      entries.push_back({{l, k}, series.coefficient(sub)});
    }
  }
  return PartialMatrix::from_residues(shape, ring, entries);
}

}  // namespace arlink

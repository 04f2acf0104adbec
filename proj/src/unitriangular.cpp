#include "arlink/unitriangular.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "arlink/error.hpp"
#include "arlink/modular.hpp"

namespace arlink {

// ---------------------------------------------------------------- ResidueRing

ResidueRing::ResidueRing(std::uint64_t modulus) : modulus_(modulus), prime_(0) {
  auto base = prime_power_base(modulus);
  if (!base) {
    throw InputError("modulus " + std::to_string(modulus) + " is not a prime power >= 2");
  }
  prime_ = *base;
}

std::uint64_t ResidueRing::reduce(std::int64_t a) const { return floor_mod(a, modulus_); }

std::uint64_t ResidueRing::add(std::uint64_t a, std::uint64_t b) const {
  return a >= modulus_ - b ? a - (modulus_ - b) : a + b;
}

std::uint64_t ResidueRing::sub(std::uint64_t a, std::uint64_t b) const {
  return a >= b ? a - b : modulus_ - (b - a);
}

std::uint64_t ResidueRing::neg(std::uint64_t a) const { return a == 0 ? 0 : modulus_ - a; }

std::uint64_t ResidueRing::mul(std::uint64_t a, std::uint64_t b) const {
  return mul_mod(a, b, modulus_);
}

// ---------------------------------------------------------------- ConvexShape

struct ConvexShape::Layout {
  int n = 0;
  std::vector<Index> entries;
  std::vector<int> table;  // (n+1)^2, row-major over 0-based (k-1, l-1)

  int position(int k, int l) const noexcept {
    if (k < 1 || l < 1 || k > n + 1 || l > n + 1) return -1;
    return table[static_cast<std::size_t>((k - 1) * (n + 1) + (l - 1))];
  }
};

namespace {

bool level_less(const Index& a, const Index& b) {
  int da = a.second - a.first;
  int db = b.second - b.first;
  return da != db ? da < db : a.first < b.first;
}

void check_range(int n, const Index& e) {
  if (e.first < 1 || e.first > e.second || e.second > n + 1) {
    throw InputError("index (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                     ") is outside I_" + std::to_string(n));
  }
}

}  // namespace

bool is_convex(int n, std::span<const Index> entries) {
  if (n < 0) throw InputError("shape size must be non-negative");
  std::vector<char> present(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  auto cell = [n](int k, int l) { return static_cast<std::size_t>((k - 1) * (n + 1) + (l - 1)); };
  for (const auto& e : entries) {
    check_range(n, e);
    present[cell(e.first, e.second)] = 1;
  }
  for (int k = 1; k <= n + 1; ++k) {
    if (!present[cell(k, k)]) return false;
  }
  // Closure under one step towards the diagonal implies condition (ii) by induction.
  for (const auto& [k, l] : entries) {
    if (k < l && !present[cell(k + 1, l)]) return false;
    if (k < l && !present[cell(k, l - 1)]) return false;
  }
  return true;
}

ConvexShape ConvexShape::make(int n, std::vector<Index> entries) {
  if (!is_convex(n, entries)) {
    throw InputError("index set is not convex in I_" + std::to_string(n));
  }
  std::sort(entries.begin(), entries.end(), level_less);
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  auto layout = std::make_shared<Layout>();
  layout->n = n;
  layout->table.assign(static_cast<std::size_t>((n + 1) * (n + 1)), -1);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& [k, l] = entries[i];
    layout->table[static_cast<std::size_t>((k - 1) * (n + 1) + (l - 1))] = static_cast<int>(i);
  }
  layout->entries = std::move(entries);
  return ConvexShape(std::move(layout));
}

ConvexShape ConvexShape::full(int n) { return filtration(n, n + 1); }

ConvexShape ConvexShape::diagonal(int n) { return filtration(n, 1); }

ConvexShape ConvexShape::filtration(int n, int r) {
  if (r < 1) throw InputError("filtration index must be positive");
  std::vector<Index> entries;
  for (int k = 1; k <= n + 1; ++k) {
    for (int l = k; l <= n + 1 && l - k < r; ++l) entries.emplace_back(k, l);
  }
  return make(n, std::move(entries));
}

int ConvexShape::n() const noexcept { return layout_->n; }

std::span<const Index> ConvexShape::entries() const noexcept { return layout_->entries; }

bool ConvexShape::contains(int k, int l) const noexcept { return layout_->position(k, l) >= 0; }

int ConvexShape::position(int k, int l) const noexcept { return layout_->position(k, l); }

bool ConvexShape::is_full() const noexcept {
  int n = layout_->n;
  return entry_count() == static_cast<std::size_t>((n + 1) * (n + 2) / 2);
}

bool ConvexShape::is_subset_of(const ConvexShape& other) const noexcept {
  if (n() != other.n()) return false;
  return std::all_of(entries().begin(), entries().end(),
                     [&](const Index& e) { return other.contains(e.first, e.second); });
}

std::string ConvexShape::to_string() const {
  std::ostringstream out;
  out << "S(n=" << n() << "){";
  bool first = true;
  for (const auto& [k, l] : entries()) {
    if (k == l) continue;
    out << (first ? "" : ",") << "(" << k << "," << l << ")";
    first = false;
  }
  out << "}";
  return out.str();
}

bool operator==(const ConvexShape& a, const ConvexShape& b) noexcept {
  if (a.layout_ == b.layout_) return true;
  return a.n() == b.n() && std::equal(a.entries().begin(), a.entries().end(),
                                      b.entries().begin(), b.entries().end());
}

// ---------------------------------------------------------------- PartialMatrix

class MatrixAccess {
 public:
  static PartialMatrix make(ConvexShape shape, ResidueRing ring, std::vector<std::uint64_t> v) {
    return PartialMatrix(std::move(shape), ring, std::move(v));
  }
  static std::vector<std::uint64_t>& values(PartialMatrix& m) { return m.values_; }
};

namespace {

std::vector<std::uint64_t> identity_values(const ConvexShape& shape) {
  std::vector<std::uint64_t> v(shape.entry_count(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (shape.entries()[i].first == shape.entries()[i].second) v[i] = 1;
  }
  return v;
}

void require_same_group(const PartialMatrix& a, const PartialMatrix& b, const char* op) {
  if (!(a.shape() == b.shape())) {
    throw InputError(std::string(op) + ": shape mismatch " + a.shape().to_string() + " vs " +
                     b.shape().to_string());
  }
  if (!(a.ring() == b.ring())) {
    throw InputError(std::string(op) + ": ring mismatch Z/" + std::to_string(a.ring().modulus()) +
                     " vs Z/" + std::to_string(b.ring().modulus()));
  }
}

}  // namespace

PartialMatrix PartialMatrix::identity(const ConvexShape& shape, const ResidueRing& ring) {
  return PartialMatrix(shape, ring, identity_values(shape));
}

PartialMatrix PartialMatrix::from_entries(
    const ConvexShape& shape, const ResidueRing& ring,
    std::span<const std::pair<Index, std::int64_t>> entries) {
  auto values = identity_values(shape);
  for (const auto& [index, value] : entries) {
    const auto& [k, l] = index;
    int pos = shape.position(k, l);
    if (pos < 0 || k == l) {
      throw InputError("entry (" + std::to_string(k) + "," + std::to_string(l) +
                       ") is not an off-diagonal index of " + shape.to_string());
    }
    values[static_cast<std::size_t>(pos)] = ring.reduce(value);
  }
  return PartialMatrix(shape, ring, std::move(values));
}

PartialMatrix PartialMatrix::from_residues(
    const ConvexShape& shape, const ResidueRing& ring,
    std::span<const std::pair<Index, std::uint64_t>> entries) {
  auto values = identity_values(shape);
  for (const auto& [index, value] : entries) {
    const auto& [k, l] = index;
    int pos = shape.position(k, l);
    if (pos < 0 || k == l) {
      throw InputError("entry (" + std::to_string(k) + "," + std::to_string(l) +
                       ") is not an off-diagonal index of " + shape.to_string());
    }
    values[static_cast<std::size_t>(pos)] = value % ring.modulus();
  }
  return PartialMatrix(shape, ring, std::move(values));
}

std::uint64_t PartialMatrix::at(int k, int l) const {
  int pos = shape_.position(k, l);
  if (pos < 0) {
    throw std::out_of_range("entry (" + std::to_string(k) + "," + std::to_string(l) +
                            ") is not in " + shape_.to_string());
  }
  return values_[static_cast<std::size_t>(pos)];
}

PartialMatrix PartialMatrix::with_entry(int k, int l, std::int64_t value) const {
  int pos = shape_.position(k, l);
  if (pos < 0 || k == l) {
    throw InputError("entry (" + std::to_string(k) + "," + std::to_string(l) +
                     ") is not an off-diagonal index of " + shape_.to_string());
  }
  auto copy = *this;
  copy.values_[static_cast<std::size_t>(pos)] = ring_.reduce(value);
  return copy;
}

bool PartialMatrix::is_identity() const noexcept {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto& [k, l] = shape_.entries()[i];
    if (k != l && values_[i] != 0) return false;
  }
  return true;
}

bool operator==(const PartialMatrix& a, const PartialMatrix& b) noexcept {
  return a.ring_ == b.ring_ && a.shape_ == b.shape_ && a.values_ == b.values_;
}

std::size_t PartialMatrixHash::operator()(const PartialMatrix& m) const noexcept {
  std::size_t h = static_cast<std::size_t>(m.n()) * 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t v : m.values()) {
    h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------- group law

PartialMatrix mul(const PartialMatrix& a, const PartialMatrix& b) {
  require_same_group(a, b, "mul");
  const auto& shape = a.shape();
  const auto& ring = a.ring();
  auto av = a.values();
  auto bv = b.values();
  std::vector<std::uint64_t> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& [k, l] = shape.entries()[i];
    std::uint64_t sum = 0;
    // Convexity guarantees (k, r) and (r, l) lie in the shape.
    for (int r = k; r <= l; ++r) {
      sum = ring.add(sum, ring.mul(av[static_cast<std::size_t>(shape.position(k, r))],
                                   bv[static_cast<std::size_t>(shape.position(r, l))]));
    }
    out[i] = sum;
  }
  return MatrixAccess::make(shape, ring, std::move(out));
}

PartialMatrix inverse(const PartialMatrix& a) {
  // Solve A B = Id level by level: b_kl = -sum_{k<r<=l} a_kr b_rl.
  const auto& shape = a.shape();
  const auto& ring = a.ring();
  auto av = a.values();
  std::vector<std::uint64_t> out(av.size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& [k, l] = shape.entries()[i];
    if (k == l) {
      out[i] = 1;
      continue;
    }
    std::uint64_t sum = 0;
    for (int r = k + 1; r <= l; ++r) {
      sum = ring.add(sum, ring.mul(av[static_cast<std::size_t>(shape.position(k, r))],
                                   out[static_cast<std::size_t>(shape.position(r, l))]));
    }
    out[i] = ring.neg(sum);
  }
  return MatrixAccess::make(shape, ring, std::move(out));
}

PartialMatrix power(const PartialMatrix& a, std::int64_t exponent) {
  PartialMatrix base = exponent < 0 ? inverse(a) : a;
  // Negate as unsigned so INT64_MIN is handled.
  std::uint64_t e = exponent < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(exponent)
                                 : static_cast<std::uint64_t>(exponent);
  PartialMatrix result = PartialMatrix::identity(a.shape(), a.ring());
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

PartialMatrix commutator(const PartialMatrix& a, const PartialMatrix& b) {
  return mul(mul(a, b), mul(inverse(a), inverse(b)));
}

PartialMatrix elementary(const ConvexShape& shape, int k, int l, std::int64_t r,
                         const ResidueRing& ring) {
  if (k == l || !shape.contains(k, l)) {
    throw InputError("elementary: (" + std::to_string(k) + "," + std::to_string(l) +
                     ") is not an off-diagonal index of " + shape.to_string());
  }
  std::pair<Index, std::int64_t> entry{{k, l}, r};
  return PartialMatrix::from_entries(shape, ring, std::span(&entry, 1));
}

// ---------------------------------------------------------------- projections

PartialMatrix project(const PartialMatrix& a, const ConvexShape& sub) {
  if (!sub.is_subset_of(a.shape())) {
    throw InputError("project: " + sub.to_string() + " is not contained in " +
                     a.shape().to_string());
  }
  std::vector<std::uint64_t> out(sub.entry_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& [k, l] = sub.entries()[i];
    out[i] = a.at(k, l);
  }
  return MatrixAccess::make(sub, a.ring(), std::move(out));
}

PartialMatrix project_window(const PartialMatrix& a, std::span<const int> window,
                             const ConvexShape& sub) {
  const int n = a.n();
  if (window.empty()) throw InputError("project_window: empty index map");
  const int m = static_cast<int>(window.size()) - 1;
  if (m > n) throw InputError("project_window: window larger than the matrix");
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (window[i] < 1 || window[i] > n + 1) {
      throw InputError("project_window: index map value out of range");
    }
    if (i > 0 && window[i] <= window[i - 1]) {
      throw InputError("project_window: index map is not strictly increasing");
    }
  }
  if (!sub.is_subset_of(a.shape())) {
    throw InputError("project_window: " + sub.to_string() + " is not contained in " +
                     a.shape().to_string());
  }
  for (int r = 1; r <= n; ++r) {
    if (sub.contains(r, r + 1) && std::find(window.begin(), window.end(), r) == window.end()) {
      throw InputError("project_window: (" + std::to_string(r) + "," + std::to_string(r + 1) +
                       ") lies in the sub-shape but " + std::to_string(r) +
                       " is not in the image of the index map");
    }
  }
  std::vector<Index> pulled;
  for (int k = 1; k <= m + 1; ++k) {
    for (int l = k; l <= m + 1; ++l) {
      if (sub.contains(window[static_cast<std::size_t>(k - 1)],
                       window[static_cast<std::size_t>(l - 1)])) {
        pulled.emplace_back(k, l);
      }
    }
  }
  auto bar = ConvexShape::make(m, std::move(pulled));
  std::vector<std::uint64_t> out(bar.entry_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& [k, l] = bar.entries()[i];
    out[i] = a.at(window[static_cast<std::size_t>(k - 1)], window[static_cast<std::size_t>(l - 1)]);
  }
  return MatrixAccess::make(bar, a.ring(), std::move(out));
}

namespace {

PartialMatrix block(const PartialMatrix& a, int m, int offset) {
  if (!a.shape().is_full()) throw InputError("block projections need an element of U_n");
  if (m < 0 || m > a.n()) throw InputError("block size out of range");
  auto target = ConvexShape::full(m);
  std::vector<std::uint64_t> out(target.entry_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& [k, l] = target.entries()[i];
    out[i] = a.at(k + offset, l + offset);
  }
  return MatrixAccess::make(target, a.ring(), std::move(out));
}

}  // namespace

PartialMatrix upper_left(const PartialMatrix& a, int m) { return block(a, m, 0); }

PartialMatrix lower_right(const PartialMatrix& a, int m) { return block(a, m, a.n() - m); }

std::pair<PartialMatrix, PartialMatrix> fiber_decompose(const PartialMatrix& a, int m1, int m2) {
  const int n = a.n();
  if (m1 < 1 || m2 < 1 || m1 > n || m2 > n || m1 + m2 < n) {
    throw InputError("fiber_decompose: need 1 <= m1, m2 <= n and m1 + m2 >= n");
  }
  return {upper_left(a, m1), lower_right(a, m2)};
}

PartialMatrix fiber_glue(const PartialMatrix& m1, const PartialMatrix& m2, int n) {
  if (!(m1.ring() == m2.ring())) throw InputError("fiber_glue: ring mismatch");
  if (!m1.shape().is_full() || !m2.shape().is_full()) {
    throw InputError("fiber_glue: blocks must be full unitriangular matrices");
  }
  const int s1 = m1.n();
  const int s2 = m2.n();
  if (s1 < 1 || s2 < 1 || s1 > n || s2 > n || s1 + s2 < n) {
    throw InputError("fiber_glue: need 1 <= m1, m2 <= n and m1 + m2 >= n");
  }
  const int t = s1 + s2 - n;
  if (!(lower_right(m1, t) == upper_left(m2, t))) {
    throw CompatibilityError("fiber_glue: blocks disagree on their overlap of size " +
                             std::to_string(t));
  }
  auto shape = ConvexShape::full(n);
  const int offset = n - s2;
  std::vector<std::uint64_t> out(shape.entry_count(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& [k, l] = shape.entries()[i];
    if (l <= s1 + 1) {
      out[i] = m1.at(k, l);
    } else if (k > offset) {
      out[i] = m2.at(k - offset, l - offset);
    }
  }
  return MatrixAccess::make(shape, m1.ring(), std::move(out));
}

int filtration_depth(const PartialMatrix& a) {
  int depth = a.n() + 1;
  const auto entries = a.shape().entries();
  auto values = a.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& [k, l] = entries[i];
    if (k != l && values[i] != 0) depth = std::min(depth, l - k);
  }
  return depth;
}

// ---------------------------------------------------------------- enumeration

std::uint64_t group_order(const ConvexShape& shape, const ResidueRing& ring) {
  std::size_t free = shape.entry_count() - static_cast<std::size_t>(shape.dimension());
  unsigned __int128 order = 1;
  for (std::size_t i = 0; i < free; ++i) {
    order *= ring.modulus();
    if (order > UINT64_MAX) return 0;
  }
  return static_cast<std::uint64_t>(order);
}

void for_each_element(const ConvexShape& shape, const ResidueRing& ring,
                      const std::function<void(const PartialMatrix&)>& visit,
                      std::uint64_t limit) {
  std::uint64_t order = group_order(shape, ring);
  if (order == 0 || order > limit) {
    throw InputError("for_each_element: group too large to enumerate");
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < shape.entry_count(); ++i) {
    if (shape.entries()[i].first != shape.entries()[i].second) free.push_back(i);
  }
  PartialMatrix current = PartialMatrix::identity(shape, ring);
  auto& values = MatrixAccess::values(current);
  const std::uint64_t q = ring.modulus();
  for (std::uint64_t count = 0; count < order; ++count) {
    visit(current);
    // Odometer increment over the free entries.
    for (std::size_t pos : free) {
      if (++values[pos] < q) break;
      values[pos] = 0;
    }
  }
}

std::uint64_t closure_size(std::span<const PartialMatrix> generators, std::uint64_t limit) {
  if (generators.empty()) return 1;
  std::unordered_set<PartialMatrix, PartialMatrixHash> seen;
  std::deque<PartialMatrix> frontier;
  auto id = PartialMatrix::identity(generators[0].shape(), generators[0].ring());
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    PartialMatrix current = std::move(frontier.front());
    frontier.pop_front();
    // Finite group: closure under right multiplication by generators suffices.
    for (const auto& g : generators) {
      auto next = mul(current, g);
      if (seen.insert(next).second) {
        if (seen.size() > limit) throw ResourceError("closure_size: limit exceeded");
        frontier.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

// ---------------------------------------------------------------- text form

std::string to_text(const PartialMatrix& a) {
  if (!a.shape().is_full()) throw InputError("to_text: only elements of U_n have a text form");
  std::ostringstream out;
  out << "U " << a.n() << " " << a.ring().modulus() << "\n";
  for (int k = 1; k <= a.n() + 1; ++k) {
    for (int l = k + 1; l <= a.n() + 1; ++l) {
      if (auto v = a.at(k, l); v != 0) out << k << " " << l << " " << v << "\n";
    }
  }
  return out.str();
}

namespace {

struct Field {
  std::string text;
  int column;
};

std::vector<Field> split_fields(const std::string& line) {
  std::vector<Field> out;
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

template <class T>
T field_value(const Field& f, int line_no, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), value);
  if (ec != std::errc() || ptr != f.text.data() + f.text.size()) {
    throw ParseError(std::string("expected ") + what, line_no, f.column);
  }
  return value;
}

}  // namespace

PartialMatrix parse_matrix_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<ConvexShape> shape;
  std::optional<ResidueRing> ring;
  std::vector<std::pair<Index, std::int64_t>> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (!shape) {
      if (fields[0].text != "U" || fields.size() != 3) {
        throw ParseError("expected header 'U n q'", line_no, fields[0].column);
      }
      auto n = field_value<int>(fields[1], line_no, "a size n");
      if (n < 0 || n > 64) throw ParseError("size out of range", line_no, fields[1].column);
      auto q = field_value<std::uint64_t>(fields[2], line_no, "a modulus q");
      try {
        ring.emplace(q);
      } catch (const InputError& e) {
        throw ParseError(e.what(), line_no, fields[2].column);
      }
      shape = ConvexShape::full(n);
      continue;
    }
    if (fields.size() != 3) throw ParseError("expected 'k l value'", line_no, fields[0].column);
    auto k = field_value<int>(fields[0], line_no, "a row index");
    auto l = field_value<int>(fields[1], line_no, "a column index");
    auto v = field_value<std::int64_t>(fields[2], line_no, "an integer value");
    if (k < 1 || k > shape->n() + 1) throw ParseError("row index out of range", line_no, fields[0].column);
    if (l <= k || l > shape->n() + 1) {
      throw ParseError("column index out of range", line_no, fields[1].column);
    }
    entries.push_back({{k, l}, v});
  }
  if (!shape) throw ParseError("missing header 'U n q'", line_no + 1, 1);
  return PartialMatrix::from_entries(*shape, *ring, entries);
}

std::string render_grid(const PartialMatrix& a) {
  const int dim = a.n() + 1;
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (int k = 1; k <= dim; ++k) {
    for (int l = 1; l <= dim; ++l) {
      std::string cell = l < k ? "0" : (a.shape().contains(k, l) ? std::to_string(a.at(k, l)) : ".");
      width = std::max(width, cell.size());
      cells.push_back(std::move(cell));
    }
  }
  std::ostringstream out;
  for (int k = 0; k < dim; ++k) {
    for (int l = 0; l < dim; ++l) {
      const auto& cell = cells[static_cast<std::size_t>(k * dim + l)];
      out << (l == 0 ? "" : " ") << std::string(width - cell.size(), ' ') << cell;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace arlink

#pragma once

// Partial unitriangular matrices over Z/q.
//
// Indices are 1-based pairs (k, l) with 1 <= k <= l <= n+1, so a shape of
// size n describes (n+1) x (n+1) matrices. A convex shape S contains the
// diagonal and has no holes towards it; U_S is the group of unipotent
// partial matrices supported on S.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arlink {

/// Z/q for a prime power q >= 2. Elements are stored as integers in [0, q).
class ResidueRing {
 public:
  explicit ResidueRing(std::uint64_t modulus);

  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t prime() const noexcept { return prime_; }

  std::uint64_t reduce(std::int64_t a) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;

  friend bool operator==(const ResidueRing&, const ResidueRing&) = default;

 private:
  std::uint64_t modulus_;
  std::uint64_t prime_;
};

using Index = std::pair<int, int>;

/// True iff S contains the diagonal of I_n and is closed towards it.
/// Throws InputError if some pair is outside 1 <= k <= l <= n+1.
bool is_convex(int n, std::span<const Index> entries);

/// A convex subset of I_n in canonical order: by level l-k, then by row.
/// Copies share the underlying layout.
class ConvexShape {
 public:
  /// Validates convexity; duplicates are merged. Throws InputError.
  static ConvexShape make(int n, std::vector<Index> entries);

  static ConvexShape full(int n);
  static ConvexShape diagonal(int n);
  /// I(n, r) = {(i, j) : j - i < r}.
  static ConvexShape filtration(int n, int r);

  int n() const noexcept;
  int dimension() const noexcept { return n() + 1; }
  std::span<const Index> entries() const noexcept;
  std::size_t entry_count() const noexcept { return entries().size(); }

  bool contains(int k, int l) const noexcept;
  /// Position of (k, l) in entries(), or -1.
  int position(int k, int l) const noexcept;
  bool is_full() const noexcept;
  bool is_subset_of(const ConvexShape& other) const noexcept;

  std::string to_string() const;

  friend bool operator==(const ConvexShape& a, const ConvexShape& b) noexcept;

 private:
  struct Layout;
  explicit ConvexShape(std::shared_ptr<const Layout> layout) : layout_(std::move(layout)) {}
  std::shared_ptr<const Layout> layout_;
};

/// An element of U_S: a unipotent partial matrix on a convex shape.
/// Entries are dense over the shape; reading an index outside the shape
/// throws std::out_of_range.
class PartialMatrix {
 public:
  static PartialMatrix identity(const ConvexShape& shape, const ResidueRing& ring);
  /// Off-diagonal entries from (k, l, value) triples; unspecified entries are 0.
  /// Values are reduced mod q. Throws InputError for diagonal or out-of-shape indices.
  static PartialMatrix from_entries(const ConvexShape& shape, const ResidueRing& ring,
                                    std::span<const std::pair<Index, std::int64_t>> entries);
  /// As from_entries for values already in [0, q).
  static PartialMatrix from_residues(const ConvexShape& shape, const ResidueRing& ring,
                                     std::span<const std::pair<Index, std::uint64_t>> entries);

  const ConvexShape& shape() const noexcept { return shape_; }
  const ResidueRing& ring() const noexcept { return ring_; }
  int n() const noexcept { return shape_.n(); }

  std::uint64_t at(int k, int l) const;
  /// Copy with entry (k, l) replaced; (k, l) must be off-diagonal and in shape.
  PartialMatrix with_entry(int k, int l, std::int64_t value) const;

  bool is_identity() const noexcept;
  /// Values aligned with shape().entries().
  std::span<const std::uint64_t> values() const noexcept { return values_; }

  friend bool operator==(const PartialMatrix& a, const PartialMatrix& b) noexcept;

 private:
  PartialMatrix(ConvexShape shape, ResidueRing ring, std::vector<std::uint64_t> values)
      : shape_(std::move(shape)), ring_(ring), values_(std::move(values)) {}

  ConvexShape shape_;
  ResidueRing ring_;
  std::vector<std::uint64_t> values_;

  friend class MatrixAccess;
};

struct PartialMatrixHash {
  std::size_t operator()(const PartialMatrix& m) const noexcept;
};

PartialMatrix mul(const PartialMatrix& a, const PartialMatrix& b);
PartialMatrix inverse(const PartialMatrix& a);
PartialMatrix power(const PartialMatrix& a, std::int64_t exponent);
/// [a, b] = a b a^-1 b^-1.
PartialMatrix commutator(const PartialMatrix& a, const PartialMatrix& b);

inline PartialMatrix operator*(const PartialMatrix& a, const PartialMatrix& b) { return mul(a, b); }

/// Id_S + r E_kl. Throws InputError if k == l or (k, l) is not in the shape.
PartialMatrix elementary(const ConvexShape& shape, int k, int l, std::int64_t r,
                         const ResidueRing& ring);

/// Restriction to a convex sub-shape of A's shape.
PartialMatrix project(const PartialMatrix& a, const ConvexShape& sub);

/// Pulls A back along a strictly increasing map {1..m+1} -> {1..n+1}
/// (given as the list of its m+1 values) after restricting to `sub`.
/// Every r with (r, r+1) in `sub` must lie in the image of the map.
PartialMatrix project_window(const PartialMatrix& a, std::span<const int> window,
                             const ConvexShape& sub);

/// p'_{n,m}: upper-left (m+1) x (m+1) block of an element of U_n.
PartialMatrix upper_left(const PartialMatrix& a, int m);
/// p''_{n,m}: lower-right (m+1) x (m+1) block of an element of U_n.
PartialMatrix lower_right(const PartialMatrix& a, int m);

/// (p'_{n,m1}(A), p''_{n,m2}(A)) for 1 <= m1, m2 <= n, m1 + m2 >= n.
std::pair<PartialMatrix, PartialMatrix> fiber_decompose(const PartialMatrix& a, int m1, int m2);

/// Canonical preimage of (M1, M2) in U_n: M1 on the upper-left block, M2 on
/// the lower-right block, 0 elsewhere. Throws CompatibilityError if the
/// blocks disagree on their overlap.
PartialMatrix fiber_glue(const PartialMatrix& m1, const PartialMatrix& m2, int n);

/// Largest r with A in V_{I(n,r)}; n+1 exactly for the identity.
int filtration_depth(const PartialMatrix& a);

/// Calls `visit` on every element of U_S. The group has q^(|S| - n - 1)
/// elements; throws InputError if that exceeds `limit`.
void for_each_element(const ConvexShape& shape, const ResidueRing& ring,
                      const std::function<void(const PartialMatrix&)>& visit,
                      std::uint64_t limit = std::uint64_t{1} << 22);

/// Order of the subgroup generated by `generators`, by breadth-first
/// closure. Throws ResourceError once more than `limit` elements are found.
std::uint64_t closure_size(std::span<const PartialMatrix> generators,
                           std::uint64_t limit = std::uint64_t{1} << 20);

/// Order of U_S as a count, or 0 if it does not fit in 64 bits.
std::uint64_t group_order(const ConvexShape& shape, const ResidueRing& ring);

/// "U n q" header followed by "k l value" lines for non-zero off-diagonal
/// entries. Only full shapes have a text form.
std::string to_text(const PartialMatrix& a);
PartialMatrix parse_matrix_text(std::string_view text);

/// Row-major grid, '.' for indices outside the shape.
std::string render_grid(const PartialMatrix& a);

}  // namespace arlink

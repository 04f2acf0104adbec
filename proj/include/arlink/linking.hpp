#pragma once

// Finite-level linking structures.
//
// A presentation names one tau-generator per slot l = 1..n, optional sigma
// labels bound to words in the tau-generators, and relators. A globalization
// sends the slot-l tau-generator to Id + E_{l,l+1} in U_n(Z/q) and must kill
// every relator; since the tau-generators generate, it is unique when it
// exists.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arlink/group_word.hpp"
#include "arlink/unitriangular.hpp"

namespace arlink {

struct Slot {
  int index = 0;
  std::string tau;
  std::optional<std::string> sigma;
};

/// The pieces of a relator tau'^(q alpha) [tau, sigma_hat]. tau' and tau are
/// powers of single generators (or empty); sigma_hat may use sigma labels.
struct LinkTypeParts {
  GroupWord tau_prime;
  std::int64_t alpha = 0;
  GroupWord tau;
  GroupWord sigma_hat;
};

class Relator {
 public:
  static Relator free_form(GroupWord word);
  /// Throws InputError if tau' or tau is not a power of a single generator.
  static Relator link_type(LinkTypeParts parts, std::uint64_t q);

  const GroupWord& word() const noexcept { return word_; }
  bool is_link_type() const noexcept { return parts_.has_value(); }
  const std::optional<LinkTypeParts>& parts() const noexcept { return parts_; }
  /// The presentation-file form, without the leading "rel ".
  std::string to_string() const;

 private:
  GroupWord word_;
  std::optional<LinkTypeParts> parts_;
};

class LinkPresentation {
 public:
  /// Validates: slots numbered 1..n with distinct labels, sigma words over
  /// tau labels only, every relator label declared.
  LinkPresentation(ResidueRing ring, int n, std::vector<Slot> slots,
                   std::map<std::string, GroupWord> sigma_words, std::vector<Relator> relators);

  const ResidueRing& ring() const noexcept { return ring_; }
  int n() const noexcept { return n_; }
  const std::vector<Slot>& slots() const noexcept { return slots_; }
  const Slot& slot(int l) const;
  const std::map<std::string, GroupWord>& sigma_words() const noexcept { return sigma_words_; }
  const std::vector<Relator>& relators() const noexcept { return relators_; }

  /// Tau labels in slot order.
  std::vector<std::string> tau_labels() const;
  bool is_tau(const std::string& label) const;
  bool is_sigma(const std::string& label) const;
  /// Replaces sigma labels by their words.
  GroupWord expand(const GroupWord& w) const;

 private:
  ResidueRing ring_;
  int n_;
  std::vector<Slot> slots_;
  std::map<std::string, GroupWord> sigma_words_;
  std::vector<Relator> relators_;
};

/// Line-oriented presentation format:
///   params n=<n> q=<q>
///   slot <l> tau=<label> [sigma=<label>]
///   sigma <label> = <group-word>
///   rel <group-word>
///   rel linktype tau'=<word> alpha=<int> tau=<word> sigma=<word>
/// '#' starts a comment. Throws ParseError with line and column.
LinkPresentation parse_presentation(std::string_view text);
std::string to_text(const LinkPresentation& pres);

/// The quotient presentation on slots first..first+count-1 (renumbered from 1):
/// tau-generators of the other slots are sent to 1 in every word.
LinkPresentation restrict_presentation(const LinkPresentation& pres, int first, int count);

/// An assignment of partial matrices to generator labels, with the tau
/// labels of its slots in order.
class Globalization {
 public:
  Globalization(ConvexShape shape, ResidueRing ring, std::vector<std::string> slot_labels,
                std::map<std::string, PartialMatrix> images);

  const ConvexShape& shape() const noexcept { return shape_; }
  const ResidueRing& ring() const noexcept { return ring_; }
  int n() const noexcept { return shape_.n(); }
  const std::vector<std::string>& slot_labels() const noexcept { return slot_labels_; }
  const std::map<std::string, PartialMatrix>& images() const noexcept { return images_; }

  bool assigns(const std::string& label) const { return images_.contains(label); }
  /// Throws InputError for an unassigned label.
  const PartialMatrix& image(const std::string& label) const;

  friend bool operator==(const Globalization&, const Globalization&) = default;

 private:
  ConvexShape shape_;
  ResidueRing ring_;
  std::vector<std::string> slot_labels_;
  std::map<std::string, PartialMatrix> images_;
};

/// Image of w under the homomorphism determined by g.
PartialMatrix eval_word(const Globalization& g, const GroupWord& w);

/// Applies `project` to every image.
Globalization project_globalization(const Globalization& g, const ConvexShape& sub);
/// p'_{n,m} on every image; keeps the first m slot labels.
Globalization restrict_upper_left(const Globalization& g, int m);
/// p''_{n,m} on every image; keeps the last m slot labels.
Globalization restrict_lower_right(const Globalization& g, int m);

struct Obstruction {
  std::size_t relator_index = 0;
  std::string relator;
  PartialMatrix image;
  int depth = 0;
};

struct GlobalizationOutcome {
  std::optional<Globalization> globalization;
  std::vector<Obstruction> obstructions;
  /// True when surjectivity was confirmed by closure generation (small groups only).
  bool surjectivity_checked = false;

  bool ok() const noexcept { return globalization.has_value(); }
};

/// The unique candidate: slot-l tau to Id + E_{l,l+1}, sigma labels to the
/// images of their words. Relators that do not vanish are reported, not thrown.
GlobalizationOutcome build_globalization(const LinkPresentation& pres);

/// True iff every sigma word and every link-type sigma_hat maps into V_n.
/// Throws InputError if some relator is not link-type.
bool check_link_type_vanishing(const LinkPresentation& pres);

/// pr_{1,n+1} of eval_word(g, z_word). Throws PreconditionError naming the
/// first non-zero entry outside (1, n+1) when the image is not in V_n.
std::uint64_t linking_invariant(const Globalization& g, const GroupWord& z_word);

/// Glues g1 (first m1 slots) and g2 (last m2 slots) into a candidate on all
/// n slots and validates it against pres. g1 and g2 must kill their sigma
/// labels. Throws CompatibilityError when g1 and g2 disagree on the overlap.
GlobalizationOutcome fiber_lift(const Globalization& g1, const Globalization& g2,
                                const LinkPresentation& pres);

/// pr_{1,n+2} of eval_word(g_star, r) for g_star over U_{n+1} and a link-type
/// relator whose tau is a power of the last slot's generator. The upper-left
/// U_n restriction must send sigma_hat into V_n.
std::uint64_t hoechsmann_pairing(const Globalization& g_star, const Relator& r);

/// phi_l = pr_{l,l+1} composed with an assignment into U_{I(m,m)}.
class MasseyCoordinate {
 public:
  MasseyCoordinate(std::shared_ptr<const Globalization> g, int l) : g_(std::move(g)), l_(l) {}

  int index() const noexcept { return l_; }
  std::uint64_t operator()(const GroupWord& w) const;

 private:
  std::shared_ptr<const Globalization> g_;
  int l_;
};

/// The defining-system coordinates phi_1..phi_m of an assignment g_bar into
/// U_{I(m,m)}, m = pres.n(). Throws InputError if g_bar does not kill the
/// relators. Each phi_l is checked to be additive on sampled word pairs.
std::vector<MasseyCoordinate> massey_coordinates(const Globalization& g_bar,
                                                 const LinkPresentation& pres);

/// Iterated commutator [t_k, [t_{k+1}, ... t_{l-1}]] over the given slot
/// labels; its image under a globalization is Id + E_{k,l} modulo deeper levels.
GroupWord elementary_word(const std::vector<std::string>& slot_labels, int k, int l);

/// Appends elementary words to w until its image under g lies in V_n. Level-1
/// corrections are single generators, deeper ones commutators.
GroupWord complete_to_center(const Globalization& g, const GroupWord& w);

}  // namespace arlink

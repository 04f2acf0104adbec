#include "arlink/verify.hpp"

#include <algorithm>
#include <set>

#include "arlink/arithmetic.hpp"
#include "arlink/error.hpp"
#include "arlink/magnus.hpp"
#include "arlink/modular.hpp"

namespace arlink {

void CheckCount::record(bool ok, const std::string& detail) {
  if (ok) {
    ++passed;
    return;
  }
  if (failed == 0) first_failure = detail;
  ++failed;
}

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckCount& c) { return c.failed == 0; });
}

std::vector<std::string> slot_labels(int n) {
  std::vector<std::string> out;
  for (int l = 1; l <= n; ++l) out.push_back("t" + std::to_string(l));
  return out;
}

GroupWord random_word(std::mt19937_64& rng, const std::vector<std::string>& labels, int max_length,
                      int max_exponent) {
  std::uniform_int_distribution<int> length(0, max_length);
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  std::uniform_int_distribution<int> exponent(-max_exponent, max_exponent);
  std::vector<Syllable> s;
  const int len = length(rng);
  for (int i = 0; i < len; ++i) s.push_back({labels[pick(rng)], exponent(rng)});
  return GroupWord(std::move(s));
}

Globalization standard_globalization(int n, const ResidueRing& ring) {
  auto shape = ConvexShape::full(n);
  auto labels = slot_labels(n);
  std::map<std::string, PartialMatrix> images;
  for (int l = 1; l <= n; ++l) {
    images.emplace(labels[static_cast<std::size_t>(l - 1)], elementary(shape, l, l + 1, 1, ring));
  }
  return Globalization(shape, ring, labels, std::move(images));
}

LinkPresentation synthetic_link_presentation(std::mt19937_64& rng, int n, std::uint64_t q) {
  ResidueRing ring(q);
  auto g = standard_globalization(n, ring);
  auto labels = slot_labels(n);
  std::vector<Slot> slots;
  std::map<std::string, GroupWord> sigma_words;
  std::vector<Relator> relators;
  std::uniform_int_distribution<std::int64_t> alpha(0, static_cast<std::int64_t>(q) - 1);
  for (int l = 1; l <= n; ++l) {
    const std::string tau = labels[static_cast<std::size_t>(l - 1)];
    const std::string sigma = "s" + std::to_string(l);
    GroupWord c = commutator(random_word(rng, labels, 4), random_word(rng, labels, 4));
    sigma_words.emplace(sigma, complete_to_center(g, c));
    slots.push_back({l, tau, sigma});
    LinkTypeParts parts{GroupWord::generator(tau), alpha(rng), GroupWord::generator(tau, -1),
                        GroupWord::generator(sigma, -1)};
    relators.push_back(Relator::link_type(std::move(parts), q));
  }
  return LinkPresentation(ring, n, std::move(slots), std::move(sigma_words), std::move(relators));
}

// --------------------------------------------------------------- reciprocity

SuiteReport verify_reciprocity(std::uint64_t max) {
  SuiteReport report{"reciprocity", {{"legendre_vs_euler"}, {"quadratic_reciprocity"}}};
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 3; p < max; p += 2) {
    if (is_prime(p)) primes.push_back(p);
  }
  for (auto p : primes) {
    for (std::uint64_t a = 0; a < p; ++a) {
      const auto ai = static_cast<std::int64_t>(a);
      report.checks[0].record(legendre(ai, p) == legendre_euler(ai, p),
                              "(" + std::to_string(a) + "/" + std::to_string(p) + ")");
    }
  }
  for (auto p : primes) {
    for (auto r : primes) {
      if (p == r) continue;
      const int lhs = legendre(static_cast<std::int64_t>(p), r) * legendre(static_cast<std::int64_t>(r), p);
      const int rhs = (((p - 1) / 2) * ((r - 1) / 2)) % 2 == 0 ? 1 : -1;
      report.checks[1].record(lhs == rhs, std::to_string(p) + ", " + std::to_string(r));
    }
  }
  return report;
}

// --------------------------------------------------------------------- fiber

namespace {

std::vector<std::uint64_t> key_of(const PartialMatrix& a, const PartialMatrix& b) {
  std::vector<std::uint64_t> key(a.values().begin(), a.values().end());
  key.insert(key.end(), b.values().begin(), b.values().end());
  return key;
}

bool overlap_agrees(const PartialMatrix& m1, const PartialMatrix& m2, int t) {
  return t < 1 || lower_right(m1, t) == upper_left(m2, t);
}

std::vector<PartialMatrix> all_elements(int n, const ResidueRing& ring) {
  std::vector<PartialMatrix> out;
  for_each_element(ConvexShape::full(n), ring, [&](const PartialMatrix& m) { out.push_back(m); });
  return out;
}

}  // namespace

SuiteReport verify_fiber(int n, std::uint64_t q, int fixtures, std::uint64_t seed) {
  if (n < 2) throw InputError("verify fiber: n must be at least 2");
  ResidueRing ring(q);
  SuiteReport report{"fiber",
                     {{"image_in_fiber_product"},
                      {"surjective_onto_fiber_product"},
                      {"kernel_is_intersection"},
                      {"lift_projects_to_factors"}}};
  auto& image_check = report.checks[0];
  auto& onto_check = report.checks[1];
  auto& kernel_check = report.checks[2];
  auto& lift_check = report.checks[3];

  const auto group = all_elements(n, ring);
  for (int m1 = 1; m1 < n; ++m1) {
    for (int m2 = 1; m2 < n; ++m2) {
      if (m1 + m2 < n) continue;
      const int t = m1 + m2 - n;
      const std::string tag = "m1=" + std::to_string(m1) + " m2=" + std::to_string(m2);
      std::set<std::vector<std::uint64_t>> images;
      std::uint64_t kernel = 0;
      for (const auto& a : group) {
        auto [p1, p2] = fiber_decompose(a, m1, m2);
        image_check.record(overlap_agrees(p1, p2, t), tag);
        images.insert(key_of(p1, p2));
        if (p1.is_identity() && p2.is_identity()) {
          ++kernel;
          bool outside = true;
          for (const auto& [k, l] : a.shape().entries()) {
            const bool in_first = l <= m1 + 1;
            const bool in_second = k >= n - m2 + 1;
            if (k != l && (in_first || in_second) && a.at(k, l) != 0) outside = false;
          }
          kernel_check.record(outside, tag + ": kernel element inside a block");
        }
      }
      const auto first = all_elements(m1, ring);
      const auto second = all_elements(m2, ring);
      std::uint64_t fiber = 0;
      for (const auto& b1 : first) {
        for (const auto& b2 : second) {
          if (!overlap_agrees(b1, b2, t)) continue;
          ++fiber;
          auto glued = fiber_glue(b1, b2, n);
          auto [r1, r2] = fiber_decompose(glued, m1, m2);
          onto_check.record(r1 == b1 && r2 == b2 && images.contains(key_of(b1, b2)), tag);
        }
      }
      onto_check.record(images.size() == fiber, tag + ": image size differs from fiber product");
      // Entries outside both blocks: rows k <= n - m2, columns l >= m1 + 2.
      std::uint64_t free_entries = 0;
      for (int k = 1; k <= n - m2; ++k) {
        for (int l = std::max(k + 1, m1 + 2); l <= n + 1; ++l) ++free_entries;
      }
      std::uint64_t expected = 1;
      for (std::uint64_t i = 0; i < free_entries; ++i) expected *= q;
      kernel_check.record(kernel == expected, tag + ": kernel size");
    }
  }

  std::mt19937_64 rng(seed);
  for (int i = 0; i < fixtures; ++i) {
    auto pres = synthetic_link_presentation(rng, n, q);
    auto g1 = build_globalization(restrict_presentation(pres, 1, n - 1));
    auto g2 = build_globalization(restrict_presentation(pres, 2, n - 1));
    auto full = build_globalization(pres);
    if (!g1.ok() || !g2.ok() || !full.ok()) {
      lift_check.record(false, "fixture " + std::to_string(i) + " has no globalization");
      continue;
    }
    auto lifted = fiber_lift(*g1.globalization, *g2.globalization, pres);
    bool ok = lifted.ok();
    if (ok) {
      const auto& g = *lifted.globalization;
      for (const auto& label : g1.globalization->slot_labels()) {
        ok = ok && upper_left(g.image(label), n - 1) == g1.globalization->image(label);
      }
      for (const auto& label : g2.globalization->slot_labels()) {
        ok = ok && lower_right(g.image(label), n - 1) == g2.globalization->image(label);
      }
      ok = ok && g == *full.globalization;
    }
    lift_check.record(ok, "fixture " + std::to_string(i) + ": " + to_text(pres));
  }
  return report;
}

// ------------------------------------------------------------------- pairing

SuiteReport verify_pairing(int n, std::uint64_t q, int samples, std::uint64_t seed) {
  if (n < 1) throw InputError("verify pairing: n must be at least 1");
  if (samples < 1) throw InputError("verify pairing: samples must be positive");
  ResidueRing ring(q);
  SuiteReport report{"pairing", {{"pairing_identity"}, {"invariant_matches_eps"}}};
  auto g_star = standard_globalization(n + 1, ring);
  auto lower = restrict_upper_left(g_star, n);
  const auto labels = slot_labels(n + 1);
  const std::vector<std::string> window(labels.begin(), labels.begin() + n);
  const std::string last = labels.back();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> exponent(-static_cast<std::int64_t>(q),
                                                       static_cast<std::int64_t>(q));
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  for (int i = 0; i < samples; ++i) {
    GroupWord sigma_hat = complete_to_center(lower, random_word(rng, labels, 6));
    const std::int64_t a = exponent(rng);
    LinkTypeParts parts{GroupWord::generator(labels[pick(rng)]), exponent(rng),
                        GroupWord::generator(last, a), sigma_hat};
    Relator r = Relator::link_type(parts, q);
    const std::uint64_t c = linking_invariant(lower, sigma_hat);
    const std::uint64_t expected = ring.neg(ring.mul(ring.reduce(a), c));
    const std::uint64_t got = hoechsmann_pairing(g_star, r);
    report.checks[0].record(got == expected, "relator " + r.to_string());

    std::set<std::string> drop{last};
    const std::uint64_t e = eps(sigma_hat.erase(drop), window, ring);
    report.checks[1].record(e == c, "sigma " + sigma_hat.to_string());
  }
  return report;
}

}  // namespace arlink

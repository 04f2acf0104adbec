// One line per acceptance criterion: "PASS [k] ..." or "FAIL [k] ...".
// Every expected value here comes from a reference computation in this file
// or in support/oracles.hpp, never from the library routine being checked.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arlink/arithmetic.hpp"
#include "arlink/cli.hpp"
#include "arlink/linking.hpp"
#include "arlink/magnus.hpp"
#include "arlink/unitriangular.hpp"
#include "arlink/verify.hpp"
#include "support/oracles.hpp"

using namespace arlink;

namespace {

struct Outcome {
  bool pass = true;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  std::string note;

  void check(bool ok, const std::string& what = {}) {
    ++cases;
    if (ok) return;
    ++failures;
    pass = false;
    if (first_failure.empty()) first_failure = what.empty() ? "case " + std::to_string(cases) : what;
  }
};

int failed_criteria = 0;

void run(int number, const std::string& title, double limit_seconds,
         const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.first_failure = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = out.pass;
  std::ostringstream line;
  line << "[" << number << "] " << title << ": " << out.cases << " cases, " << out.failures
       << " failures";
  if (limit_seconds > 0) {
    line << ", " << seconds << " s (limit " << limit_seconds << " s)";
    ok = ok && seconds < limit_seconds;
  }
  if (!out.note.empty()) line << ", " << out.note;
  if (!out.first_failure.empty()) line << ", first failure: " << out.first_failure;
  std::printf("%s %s\n", ok ? "PASS" : "FAIL", line.str().c_str());
  std::fflush(stdout);
  if (!ok) ++failed_criteria;
}

// Dense helpers ---------------------------------------------------------------

oracle::Dense dense_identity(int n) {
  oracle::Dense d(static_cast<std::size_t>(n + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(n + 1), 0));
  for (int i = 0; i <= n; ++i) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return d;
}

oracle::Dense dense_full_mul(const oracle::Dense& a, const oracle::Dense& b, std::uint64_t q) {
  const std::size_t d = a.size();
  oracle::Dense out(d, std::vector<std::uint64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t r = i; r <= j; ++r) acc = (acc + a[i][r] * b[r][j]) % q;
      out[i][j] = acc;
    }
  }
  return out;
}

/// Square block of d on rows/columns first..first+size-1 (1-based).
oracle::Dense block(const oracle::Dense& d, int first, int size) {
  oracle::Dense out(static_cast<std::size_t>(size), std::vector<std::uint64_t>(static_cast<std::size_t>(size)));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          d[static_cast<std::size_t>(first - 1 + i)][static_cast<std::size_t>(first - 1 + j)];
    }
  }
  return out;
}

std::vector<PartialMatrix> elements(const ConvexShape& shape, const ResidueRing& ring) {
  std::vector<PartialMatrix> out;
  for_each_element(shape, ring, [&](const PartialMatrix& m) { out.push_back(m); });
  return out;
}

/// Evaluates a word on dense matrices by repeated multiplication.
oracle::Dense dense_eval(const GroupWord& w, const std::map<std::string, oracle::Dense>& images,
                         const std::map<std::string, oracle::Dense>& inverses, int n, std::uint64_t q) {
  auto acc = dense_identity(n);
  for (const auto& s : w.syllables()) {
    const auto& m = s.exponent > 0 ? images.at(s.label) : inverses.at(s.label);
    const std::int64_t count = s.exponent > 0 ? s.exponent : -s.exponent;
    for (std::int64_t i = 0; i < count; ++i) {
      acc = dense_full_mul(acc, m, q);
    }
  }
  return acc;
}

/// Inverse of a unipotent upper-triangular dense matrix by back substitution.
oracle::Dense dense_inverse(const oracle::Dense& a, std::uint64_t q) {
  const std::size_t d = a.size();
  auto x = dense_identity(static_cast<int>(d) - 1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      std::uint64_t acc = 0;
      for (std::size_t r = i + 1; r <= j; ++r) acc = (acc + a[i][r] * x[r][j]) % q;
      x[i][j] = (q - acc) % q;
    }
  }
  return x;
}

bool dense_is_identity(const oracle::Dense& d) { return d == dense_identity(static_cast<int>(d.size()) - 1); }

oracle::Dense dense_elementary(int n, int k, int l) {
  auto d = dense_identity(n);
  d[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)] = 1;
  return d;
}

// Criteria --------------------------------------------------------------------

void criterion1(Outcome& out) {
  auto report = cmd_symbol("redei", {"5", "41", "61"});
  out.check(report.exit_code() == 0, "exit code");
  out.check(report.payload.value("value", 0) == -1, "value " + report.payload["value"].dump());
  const std::uint64_t p[] = {5, 41, 61};
  for (auto a : p) {
    for (auto b : p) {
      if (a != b) out.check(oracle::legendre_by_squares(static_cast<std::int64_t>(a), b) == 1,
                            "(" + std::to_string(a) + "/" + std::to_string(b) + ")");
    }
  }
  int reported = 0;
  for (const auto& [key, value] : report.payload["legendre_preconditions"].items()) {
    out.check(value == 1, "reported " + key);
    ++reported;
  }
  out.check(reported == 6, "six reported preconditions");
}

void criterion2(Outcome& out) {
  for (auto p : oracle::odd_primes_below(500)) {
    for (std::uint64_t a = 1; a < p; ++a) {
      std::uint64_t power = 1;
      for (std::uint64_t e = 0; e < (p - 1) / 2; ++e) power = power * a % p;
      const int euler = power == 1 ? 1 : -1;
      out.check(legendre(static_cast<std::int64_t>(a), p) == euler,
                "(" + std::to_string(a) + "/" + std::to_string(p) + ")");
    }
  }
}

void group_law_case(Outcome& out, const PartialMatrix& a, const PartialMatrix& b, const PartialMatrix& c,
                    const ConvexShape& sub) {
  const auto& shape = a.shape();
  const std::uint64_t q = a.ring().modulus();
  const auto ab = a * b;
  out.check(oracle::dense(ab) == oracle::dense_mul(oracle::dense(a), oracle::dense(b), q, shape),
            "product vs dense");
  out.check((ab * c) == (a * (b * c)), "associativity");
  out.check(a * PartialMatrix::identity(shape, a.ring()) == a, "right identity");
  out.check(inverse(a) * a == PartialMatrix::identity(shape, a.ring()), "inverse");
  out.check(project(ab, sub) == project(a, sub) * project(b, sub), "projection homomorphism");
  for (const auto& [k, l] : sub.entries()) {
    if (project(a, sub).at(k, l) != a.at(k, l)) {
      out.check(false, "projection keeps entries");
      break;
    }
  }
}

void criterion3(Outcome& out) {
  ResidueRing r2(2);
  for (int n = 1; n <= 3; ++n) {
    const auto shapes = oracle::all_convex_shapes(n);
    for (const auto& shape : shapes) {
      const auto elems = elements(shape, r2);
      std::vector<ConvexShape> subs;
      for (const auto& s : shapes) {
        if (s.is_subset_of(shape)) subs.push_back(s);
      }
      for (const auto& a : elems) {
        for (const auto& b : elems) {
          const auto ab = a * b;
          out.check(oracle::dense(ab) == oracle::dense_mul(oracle::dense(a), oracle::dense(b), 2, shape),
                    "product vs dense " + shape.to_string());
          for (const auto& sub : subs) {
            out.check(project(ab, sub) == project(a, sub) * project(b, sub), "projection " + sub.to_string());
          }
          for (const auto& c : elems) out.check(ab * c == a * (b * c), "associativity");
        }
        out.check(a * PartialMatrix::identity(shape, r2) == a, "identity");
        out.check(inverse(a) * a == PartialMatrix::identity(shape, r2), "inverse");
      }
    }
    // V_n = Id + R E_{1,n+1} is central in U_n.
    const auto full = ConvexShape::full(n);
    const auto elems = elements(full, r2);
    const auto v = elementary(full, 1, n + 1, 1, r2);
    for (const auto& g : elems) out.check(v * g == g * v, "centrality");
  }

  std::mt19937_64 rng(2024);
  std::uint64_t samples = 0;
  for (std::uint64_t q : {4u, 8u}) {
    ResidueRing ring(q);
    for (int n = 1; n <= 4; ++n) {
      const auto shapes = oracle::all_convex_shapes(n);
      for (int i = 0; i < 1500; ++i) {
        const auto& shape = shapes[rng() % shapes.size()];
        std::vector<ConvexShape> subs;
        for (const auto& s : shapes) {
          if (s.is_subset_of(shape)) subs.push_back(s);
        }
        auto a = oracle::random_element(rng, shape, ring);
        auto b = oracle::random_element(rng, shape, ring);
        auto c = oracle::random_element(rng, shape, ring);
        group_law_case(out, a, b, c, subs[rng() % subs.size()]);
        ++samples;
      }
      const auto full = ConvexShape::full(n);
      for (int i = 0; i < 500; ++i) {
        const auto g = oracle::random_element(rng, full, ring);
        const auto v = elementary(full, 1, n + 1, static_cast<std::int64_t>(rng() % q), ring);
        out.check(v * g == g * v, "sampled centrality");
        ++samples;
      }
    }
  }
  out.note = std::to_string(samples) + " random samples";
}

void criterion4(Outcome& out) {
  ResidueRing r2(2);
  for (int n = 2; n <= 3; ++n) {
    const auto full = elements(ConvexShape::full(n), r2);
    for (int m1 = 1; m1 <= n; ++m1) {
      for (int m2 = 1; m2 <= n; ++m2) {
        const int t = m1 + m2 - n;
        if (t < 0) continue;
        // Fiber product: pairs agreeing on the overlap block of rows n-m2+1..m1+1.
        std::set<std::pair<oracle::Dense, oracle::Dense>> fiber;
        const auto left = elements(ConvexShape::full(m1), r2);
        const auto right = elements(ConvexShape::full(m2), r2);
        for (const auto& a : left) {
          const auto da = oracle::dense(a);
          for (const auto& b : right) {
            const auto db = oracle::dense(b);
            if (block(da, n - m2 + 1, t + 1) == block(db, 1, t + 1)) fiber.insert({da, db});
          }
        }
        std::set<std::pair<oracle::Dense, oracle::Dense>> image;
        std::uint64_t kernel = 0;
        for (const auto& g : full) {
          const auto dg = oracle::dense(g);
          const auto p1 = oracle::dense(upper_left(g, m1));
          const auto p2 = oracle::dense(lower_right(g, m2));
          out.check(p1 == block(dg, 1, m1 + 1), "p' is the upper-left block");
          out.check(p2 == block(dg, n - m2 + 1, m2 + 1), "p'' is the lower-right block");
          out.check(fiber.contains({p1, p2}), "image lies in the fiber product");
          image.insert({p1, p2});
          const bool in_kernel = dense_is_identity(p1) && dense_is_identity(p2);
          // Explicit description: support only on (k, l) with k <= n-m2 and l >= m1+2.
          bool outside_windows = true;
          for (int k = 1; k <= n + 1; ++k) {
            for (int l = k + 1; l <= n + 1; ++l) {
              const bool in_window = l <= m1 + 1 || k >= n - m2 + 1;
              if (in_window && g.at(k, l) != 0) outside_windows = false;
            }
          }
          out.check(in_kernel == outside_windows, "kernel description");
          if (in_kernel) ++kernel;
        }
        out.check(image.size() == fiber.size(), "surjective onto the fiber product");
        out.check(kernel * image.size() == full.size(), "kernel order");
      }
    }
  }
}

void criterion5(Outcome& out) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const std::uint64_t q = (rng() & 1) ? 2 : 4;
    ResidueRing ring(q);
    auto labels = oracle::labels(n);
    auto w1 = oracle::random_word(rng, labels, 8);
    auto w2 = oracle::random_word(rng, labels, 8);
    LetterWord index;
    for (int j = 0; j < n; ++j) index.push_back(labels[rng() % labels.size()]);
    const auto m1 = magnus_matrix(w1, index, ring);
    const auto m2 = magnus_matrix(w2, index, ring);
    out.check(magnus_matrix(w1 * w2, index, ring) == m1 * m2, "homomorphism");
    out.check(m1.at(1, n + 1) == oracle::eps_dp(w1, index, q), "corner equals eps");
    out.check(m1.at(1, n + 1) == eps(w1, index, ring), "corner equals library eps");
    for (int k = 1; k <= n; ++k) {
      for (int l = k + 1; l <= n + 1; ++l) {
        LetterWord sub(index.begin() + (k - 1), index.begin() + (l - 1));
        out.check(m1.at(k, l) == oracle::eps_dp(w1, sub, q), "entry equals eps of the sub-index");
      }
    }
  }
}

std::vector<LinkPresentation> small_presentations() {
  std::vector<LinkPresentation> out;
  out.push_back(parse_presentation("params n=1 q=2\nslot 1 tau=t1\nrel t1^2\n"));
  out.push_back(parse_presentation("params n=1 q=2\nslot 1 tau=t1\nrel t1^3\n"));
  out.push_back(parse_presentation(
      "params n=2 q=2\nslot 1 tau=t1 sigma=s1\nslot 2 tau=t2 sigma=s2\nsigma s1 = 1\nsigma s2 = 1\n"
      "rel linktype tau'=t1 alpha=1 tau=t1^-1 sigma=s1^-1\n"
      "rel linktype tau'=t2 alpha=1 tau=t2^-1 sigma=s2^-1\n"));
  out.push_back(parse_presentation(
      "params n=2 q=2\nslot 1 tau=t1 sigma=s1\nslot 2 tau=t2\nsigma s1 = t2\nrel [t1^-1, s1^-1]\n"));
  out.push_back(parse_presentation("params n=2 q=2\nslot 1 tau=t1\nslot 2 tau=t2\nrel [t1,t2]\n"));
  out.push_back(parse_presentation("params n=2 q=2\nslot 1 tau=t1\nslot 2 tau=t2\nrel (t1 t2)^4\n"));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10; ++i) out.push_back(synthetic_link_presentation(rng, 1 + i % 2, 2));
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + i % 2;
    auto labels = oracle::labels(n);
    std::string text = "params n=" + std::to_string(n) + " q=2\n";
    for (int l = 1; l <= n; ++l) text += "slot " + std::to_string(l) + " tau=t" + std::to_string(l) + "\n";
    text += "rel " + oracle::random_word(rng, labels, 5, 3).to_string() + "\n";
    out.push_back(parse_presentation(text));
  }
  return out;
}

void criterion6(Outcome& out) {
  const std::uint64_t q = 2;
  ResidueRing r2(q);
  int solvable = 0;
  for (const auto& pres : small_presentations()) {
    const int n = pres.n();
    const auto taus = pres.tau_labels();
    const auto candidates = elements(ConvexShape::full(n), r2);
    const auto built = build_globalization(pres);
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= candidates.size();
    int satisfying = 0;
    for (std::size_t code = 0; code < total; ++code) {
      std::map<std::string, oracle::Dense> images;
      std::size_t c = code;
      bool slots_ok = true;
      for (int l = 1; l <= n; ++l) {
        const auto d = oracle::dense(candidates[c % candidates.size()]);
        c /= candidates.size();
        slots_ok = slots_ok && d == dense_elementary(n, l, l + 1);
        images.emplace(taus[static_cast<std::size_t>(l - 1)], d);
      }
      std::map<std::string, oracle::Dense> inverses;
      for (const auto& [label, d] : images) inverses.emplace(label, dense_inverse(d, q));
      for (const auto& [label, word] : pres.sigma_words()) {
        const auto d = dense_eval(word, images, inverses, n, q);
        images.emplace(label, d);
        inverses.emplace(label, dense_inverse(d, q));
      }
      bool relators_ok = true;
      for (const auto& rel : pres.relators()) {
        relators_ok = relators_ok && dense_is_identity(dense_eval(rel.word(), images, inverses, n, q));
      }
      if (!(slots_ok && relators_ok)) continue;
      ++satisfying;
      out.check(built.ok(), "build reported an obstruction for a solvable presentation");
      if (!built.ok()) continue;
      for (const auto& [label, d] : images) {
        out.check(oracle::dense(built.globalization->image(label)) == d, "image of " + label);
      }
    }
    out.check(satisfying == (built.ok() ? 1 : 0),
              "satisfying assignments " + std::to_string(satisfying) + " for\n" + to_text(pres));
    if (!built.ok()) continue;
    ++solvable;
    // Surjectivity: breadth-first closure of the tau images with dense products.
    std::set<oracle::Dense> seen{dense_identity(n)};
    std::vector<oracle::Dense> frontier{dense_identity(n)};
    while (!frontier.empty()) {
      std::vector<oracle::Dense> next;
      for (const auto& g : frontier) {
        for (const auto& label : taus) {
          auto h = dense_full_mul(g, oracle::dense(built.globalization->image(label)), q);
          if (seen.insert(h).second) next.push_back(std::move(h));
        }
      }
      frontier = std::move(next);
    }
    out.check(seen.size() == candidates.size(), "image generates U_n");
  }
  out.note = std::to_string(solvable) + " solvable presentations";
}

void criterion7(Outcome& out) {
  std::mt19937_64 rng(7);
  int fixtures = 0;
  for (int n = 2; n <= 3; ++n) {
    for (int i = 0; i < 60; ++i) {
      auto pres = synthetic_link_presentation(rng, n, 2);
      auto g1 = build_globalization(restrict_presentation(pres, 1, n - 1));
      auto g2 = build_globalization(restrict_presentation(pres, 2, n - 1));
      out.check(g1.ok() && g2.ok(), "window globalizations exist");
      if (!g1.ok() || !g2.ok()) continue;
      auto lifted = fiber_lift(*g1.globalization, *g2.globalization, pres);
      out.check(lifted.ok(), "lift exists");
      if (!lifted.ok()) continue;
      ++fixtures;
      const auto& g = *lifted.globalization;
      for (const auto& label : g1.globalization->slot_labels()) {
        out.check(block(oracle::dense(g.image(label)), 1, n) == oracle::dense(g1.globalization->image(label)),
                  "first window of " + label);
      }
      for (const auto& label : g2.globalization->slot_labels()) {
        out.check(block(oracle::dense(g.image(label)), 2, n) == oracle::dense(g2.globalization->image(label)),
                  "second window of " + label);
      }
      std::map<std::string, oracle::Dense> images;
      std::map<std::string, oracle::Dense> inverses;
      for (const auto& [label, m] : g.images()) {
        images.emplace(label, oracle::dense(m));
        inverses.emplace(label, dense_inverse(oracle::dense(m), 2));
      }
      for (const auto& rel : pres.relators()) {
        out.check(dense_is_identity(dense_eval(rel.word(), images, inverses, n, 2)), "relator vanishes");
      }
    }
  }
  out.check(fixtures >= 100, "at least 100 fixtures");
  out.note = std::to_string(fixtures) + " fixtures";
}

void criterion8(Outcome& out) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const std::uint64_t q = (rng() & 1) ? 2 : 4;
    ResidueRing ring(q);
    auto labels = oracle::labels(n + 1);
    std::vector<std::string> lower(labels.begin(), labels.begin() + n);
    auto g_star = standard_globalization(n + 1, ring);
    // sigma_hat: a random word in t1..tn pushed into V_n by commutator corrections.
    auto sigma = complete_to_center(restrict_upper_left(g_star, n), oracle::random_word(rng, lower, 6));
    const std::int64_t a = static_cast<std::int64_t>(rng() % 7) - 3;
    LinkTypeParts parts{GroupWord::generator(labels[rng() % labels.size()]),
                        static_cast<std::int64_t>(rng() % 4), GroupWord::generator(labels.back(), a), sigma};
    const auto relator = Relator::link_type(parts, q);
    const std::uint64_t invariant = oracle::eps_dp(sigma, lower, q);
    const std::uint64_t tau_value = ((a % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q)) %
                                    static_cast<std::int64_t>(q);
    const std::uint64_t expected = (q - tau_value * invariant % q) % q;
    out.check(hoechsmann_pairing(g_star, relator) == expected, relator.to_string());
    out.check(linking_invariant(restrict_upper_left(g_star, n), sigma) == invariant, "invariant vs eps");
  }
}

void criterion9(Outcome& out) {
  const auto primes = oracle::odd_primes_below(100);
  for (auto p1 : primes) {
    if (p1 % 4 != 1) continue;
    for (auto pj : primes) {
      if (pj == p1) continue;
      out.check((linking_invariant_n1(p1, pj) == 0) == oracle::x2_minus_a_factors(p1, pj),
                std::to_string(p1) + ", " + std::to_string(pj));
    }
  }
  out.note = "pj = 2 excluded (the symbol needs an odd prime)";
}

void criterion10(Outcome& out) {
  const auto primes = oracle::odd_primes_below(200);
  auto admissible = [&](std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
    return p1 % 4 == 1 && p2 % 4 == 1 && p1 != p2 && p3 != p1 && p3 != p2 &&
           oracle::legendre_by_squares(static_cast<std::int64_t>(p1), p2) == 1 &&
           oracle::legendre_by_squares(static_cast<std::int64_t>(p2), p1) == 1 &&
           oracle::legendre_by_squares(static_cast<std::int64_t>(p1), p3) == 1 &&
           oracle::legendre_by_squares(static_cast<std::int64_t>(p2), p3) == 1;
  };
  int triples = 0;
  int plus = 0;
  for (auto p1 : primes) {
    for (auto p2 : primes) {
      if (p2 <= p1) continue;
      for (auto p3 : primes) {
        if (triples >= 25 || !admissible(p1, p2, p3)) continue;
        ++triples;
        const int value = redei_symbol(p1, p2, p3).value;
        if (value == 1) ++plus;
        int used = 0;
        for (const auto& s : redei_conic_solutions(p1, p2, 12)) {
          const auto P = static_cast<std::int64_t>(p3);
          if (s.z % P == 0) continue;
          ++used;
          out.check(s.x * s.x == static_cast<std::int64_t>(p1) * s.y * s.y + static_cast<std::int64_t>(p2) * s.z * s.z,
                    "conic equation");
          for (std::uint64_t root = 1; root < p3; ++root) {
            if (root * root % p3 != p1 % p3) continue;
            const std::int64_t alpha = ((s.x + s.y % P * static_cast<std::int64_t>(root)) % P + P) % P;
            out.check(oracle::legendre_by_squares(alpha, p3) == value,
                      "[" + std::to_string(p1) + "," + std::to_string(p2) + "," + std::to_string(p3) +
                          "] root " + std::to_string(root));
          }
          out.check(redei_symbol_with(s, p3).value == value, "library value on another solution");
        }
        out.check(used >= 3, "three usable solutions");
      }
    }
  }
  out.check(triples >= 10, "ten triples");
  out.note = std::to_string(triples) + " triples, " + std::to_string(plus) + " with value +1";
}

}  // namespace

int main() {
  run(1, "Redei golden value [5,41,61] = -1", 5.0, criterion1);
  run(2, "legendre equals Euler's criterion for odd p < 500", 10.0, criterion2);
  run(3, "group laws, projections and centrality", 0, criterion3);
  run(4, "fiber product surjectivity and kernel, n = 2, 3", 30.0, criterion4);
  run(5, "Magnus matrix homomorphism and corner entry", 0, criterion5);
  run(6, "globalization uniqueness and surjectivity, n <= 2", 0, criterion6);
  run(7, "fiber_lift window projections", 0, criterion7);
  run(8, "pairing identity", 0, criterion8);
  run(9, "n = 1 invariant against X^2 - p1 mod pj", 0, criterion9);
  run(10, "Redei value independent of solution and root", 0, criterion10);
  return failed_criteria == 0 ? 0 : 1;
}

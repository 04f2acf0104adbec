#include "arlink/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "arlink/arithmetic.hpp"
#include "arlink/error.hpp"
#include "arlink/linking.hpp"
#include "arlink/magnus.hpp"
#include "arlink/unitriangular.hpp"
#include "arlink/verify.hpp"

namespace arlink {

using Json = nlohmann::ordered_json;

const char* to_string(Status status) {
  switch (status) {
    case Status::ok: return "ok";
    case Status::obstruction: return "obstruction";
    case Status::error: return "error";
  }
  return "error";
}

int Report::exit_code() const {
  switch (status) {
    case Status::ok: return 0;
    case Status::obstruction: return 1;
    case Status::error: return 2;
  }
  return 2;
}

std::string Report::render_json() const {
  Json out = Json::object();
  out["command"] = command;
  out["status"] = to_string(status);
  for (const auto& [key, value] : payload.items()) out[key] = value;
  return out.dump(2) + "\n";
}

namespace {

bool is_matrix(const Json& j) { return j.is_object() && j.contains("rows") && j.contains("q"); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

bool all_scalars(const Json& j) {
  for (const auto& item : j) {
    if (item.is_object() || item.is_array()) return false;
  }
  return true;
}

void render_matrix(std::ostringstream& out, const Json& m, int indent) {
  std::size_t width = 1;
  for (const auto& row : m["rows"]) {
    for (const auto& v : row) width = std::max(width, scalar_text(v).size());
  }
  for (const auto& row : m["rows"]) {
    out << std::string(static_cast<std::size_t>(indent), ' ');
    bool first = true;
    for (const auto& v : row) {
      std::string s = v.is_null() ? "." : scalar_text(v);
      out << (first ? "" : " ") << std::string(width - s.size(), ' ') << s;
      first = false;
    }
    out << "\n";
  }
}

void render_object(std::ostringstream& out, const Json& obj, int indent);

void render_value(std::ostringstream& out, const std::string& key, const Json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_matrix(value)) {
    out << pad << key << ": U_" << value["n"].get<int>() << " over Z/" << scalar_text(value["q"])
        << "\n";
    render_matrix(out, value, indent + 2);
  } else if (value.is_object()) {
    out << pad << key << ":\n";
    render_object(out, value, indent + 2);
  } else if (value.is_array() && all_scalars(value)) {
    out << pad << key << ":";
    for (const auto& item : value) out << " " << scalar_text(item);
    out << "\n";
  } else if (value.is_array()) {
    out << pad << key << ":\n";
    std::size_t i = 0;
    for (const auto& item : value) {
      render_value(out, "[" + std::to_string(++i) + "]", item, indent + 2);
    }
  } else {
    out << pad << key << ": " << scalar_text(value) << "\n";
  }
}

void render_object(std::ostringstream& out, const Json& obj, int indent) {
  for (const auto& [key, value] : obj.items()) render_value(out, key, value, indent);
}

}  // namespace

std::string Report::render_text() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  out << "status: " << to_string(status) << "\n";
  render_object(out, payload, 0);
  return out.str();
}

Json matrix_json(const PartialMatrix& m) {
  Json rows = Json::array();
  for (int k = 1; k <= m.n() + 1; ++k) {
    Json row = Json::array();
    for (int l = 1; l <= m.n() + 1; ++l) {
      if (l < k || !m.shape().contains(k, l)) {
        row.push_back(l < k ? Json(0) : Json(nullptr));
      } else {
        row.push_back(m.at(k, l));
      }
    }
    rows.push_back(std::move(row));
  }
  Json out = Json::object();
  out["n"] = m.n();
  out["q"] = m.ring().modulus();
  out["rows"] = std::move(rows);
  return out;
}

Report error_report(const std::string& command, const std::string& message) {
  Report r{command, Status::error, Json::object()};
  r.payload["error"] = message;
  return r;
}

namespace {

std::int64_t parse_integer(const std::string& text, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(std::string(what) + " '" + text + "' is not an integer");
  }
  return value;
}

std::uint64_t parse_prime(const std::string& text) {
  const std::int64_t v = parse_integer(text, "prime");
  if (v < 2) throw InputError("'" + text + "' is not a prime");
  return static_cast<std::uint64_t>(v);
}

template <class F>
Report guarded(const std::string& command, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    return error_report(command, e.what());
  } catch (const ResourceError& e) {
    return error_report(command, std::string("resource limit: ") + e.what());
  } catch (const ConsistencyError& e) {
    return error_report(command, std::string("internal consistency failure: ") + e.what());
  }
}

Json sign_and_z2(int value) {
  Json out = Json::object();
  out["value"] = value;
  out["z2"] = value == 1 ? Json(0) : value == -1 ? Json(1) : Json(nullptr);
  return out;
}

}  // namespace

Report cmd_symbol(const std::string& kind, const std::vector<std::string>& arguments) {
  return guarded("symbol", [&]() -> Report {
    const std::size_t arity = kind == "redei" ? 3 : 2;
    if (kind != "legendre" && kind != "mu" && kind != "redei") {
      throw InputError("unknown symbol kind '" + kind + "' (legendre, mu, redei)");
    }
    if (arguments.size() != arity) {
      throw InputError(kind + " takes " + std::to_string(arity) + " arguments");
    }
    Report r{"symbol", Status::ok, Json::object()};
    r.payload["kind"] = kind;
    if (kind == "legendre") {
      const std::int64_t a = parse_integer(arguments[0], "argument");
      const std::uint64_t p = parse_prime(arguments[1]);
      r.payload["arguments"] = {a, p};
      const int v = legendre(a, p);
      r.payload.update(sign_and_z2(v));
      r.payload["witnesses"] = {{"euler_criterion", legendre_euler(a, p)}};
      return r;
    }
    if (kind == "mu") {
      const std::uint64_t pi = parse_prime(arguments[0]);
      const std::uint64_t pj = parse_prime(arguments[1]);
      r.payload["arguments"] = {pi, pj};
      const int mu = mu_linking_number(pi, pj);
      r.payload["value"] = mu;
      r.payload["legendre"] = legendre(static_cast<std::int64_t>(pi), pj);
      return r;
    }
    const std::uint64_t p1 = parse_prime(arguments[0]);
    const std::uint64_t p2 = parse_prime(arguments[1]);
    const std::uint64_t p3 = parse_prime(arguments[2]);
    r.payload["arguments"] = {p1, p2, p3};
    r.payload["class_number_gate"] = class_number_gate();
    auto result = redei_symbol(p1, p2, p3);
    r.payload.update(sign_and_z2(result.value));
    Json pre = Json::object();
    const std::uint64_t ps[3] = {p1, p2, p3};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        pre["(" + std::to_string(ps[i]) + "/" + std::to_string(ps[j]) + ")"] =
            legendre(static_cast<std::int64_t>(ps[i] % ps[j]), ps[j]);
      }
    }
    r.payload["legendre_preconditions"] = std::move(pre);
    Json w = Json::object();
    for (const auto& [k, v] : result.witnesses) w[k] = v;
    r.payload["witnesses"] = std::move(w);
    return r;
  });
}

namespace {

Json presentation_json(const LinkPresentation& pres) {
  Json out = Json::object();
  out["n"] = pres.n();
  out["q"] = pres.ring().modulus();
  out["relators"] = pres.relators().size();
  return out;
}

Json lift_json(const LinkPresentation& pres, const GlobalizationOutcome& direct) {
  Json out = Json::object();
  const int n = pres.n();
  if (n < 2) {
    out["status"] = "not_applicable";
    out["reason"] = "needs at least two slots";
    return out;
  }
  auto g1 = build_globalization(restrict_presentation(pres, 1, n - 1));
  auto g2 = build_globalization(restrict_presentation(pres, 2, n - 1));
  if (!g1.ok() || !g2.ok()) {
    out["status"] = "not_applicable";
    out["reason"] = std::string("window ") + (g1.ok() ? "2..n" : "1..n-1") +
                    " has no globalization";
    return out;
  }
  try {
    auto lifted = fiber_lift(*g1.globalization, *g2.globalization, pres);
    out["status"] = lifted.ok() ? "ok" : "obstruction";
    if (lifted.ok()) {
      out["matches_direct"] = direct.ok() && *lifted.globalization == *direct.globalization;
    } else {
      out["obstructions"] = lifted.obstructions.size();
    }
  } catch (const PreconditionError& e) {
    out["status"] = "precondition_failed";
    out["reason"] = e.what();
  }
  return out;
}

}  // namespace

Report cmd_solve_text(std::string_view text, bool lift) {
  return guarded("solve", [&]() -> Report {
    auto pres = parse_presentation(text);
    auto outcome = build_globalization(pres);
    Report r{"solve", outcome.ok() ? Status::ok : Status::obstruction, Json::object()};
    r.payload["presentation"] = presentation_json(pres);
    if (!outcome.ok()) {
      Json list = Json::array();
      for (const auto& ob : outcome.obstructions) {
        Json item = Json::object();
        item["relator_index"] = ob.relator_index + 1;
        item["relator"] = ob.relator;
        item["depth"] = ob.depth;
        item["image"] = matrix_json(ob.image);
        list.push_back(std::move(item));
      }
      r.payload["obstructions"] = std::move(list);
    } else {
      const auto& g = *outcome.globalization;
      Json gens = Json::object();
      for (const auto& label : pres.tau_labels()) gens[label] = matrix_json(g.image(label));
      r.payload["generators"] = std::move(gens);
      Json sigmas = Json::array();
      for (const auto& [label, word] : pres.sigma_words()) {
        const auto& image = g.image(label);
        Json item = Json::object();
        item["label"] = label;
        item["word"] = word.to_string();
        item["depth"] = filtration_depth(image);
        const bool central = filtration_depth(image) >= pres.n();
        item["central"] = central;
        item["linking_invariant"] = central ? Json(image.at(1, pres.n() + 1)) : Json(nullptr);
        item["image"] = matrix_json(image);
        sigmas.push_back(std::move(item));
      }
      r.payload["sigma_images"] = std::move(sigmas);
      r.payload["surjectivity_checked"] = outcome.surjectivity_checked;
    }
    if (lift) r.payload["lift"] = lift_json(pres, outcome);
    return r;
  });
}

Report cmd_solve(const std::string& path, bool lift) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return error_report("solve", "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return cmd_solve_text(buffer.str(), lift);
}

Report cmd_magnus(const std::string& word, const std::string& index, std::uint64_t q) {
  return guarded("magnus", [&]() -> Report {
    ResidueRing ring(q);
    GroupWord w = parse_group_word(word);
    LetterWord letters;
    std::size_t start = 0;
    while (start <= index.size()) {
      std::size_t comma = index.find(',', start);
      if (comma == std::string::npos) comma = index.size();
      std::string item = index.substr(start, comma - start);
      item.erase(0, item.find_first_not_of(' '));
      item.erase(item.find_last_not_of(' ') + 1);
      if (item.empty()) throw InputError("--idx has an empty entry");
      if (std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        letters.push_back("t" + item);
      } else {
        GroupWord label = parse_group_word(item);
        if (label.syllables().size() != 1 || label.syllables()[0].exponent != 1) {
          throw InputError("--idx entry '" + item + "' is not a generator label");
        }
        letters.push_back(label.syllables()[0].label);
      }
      start = comma + 1;
    }
    Report r{"magnus", Status::ok, Json::object()};
    r.payload["word"] = w.to_string();
    r.payload["index"] = letters;
    r.payload["q"] = q;
    auto m = magnus_matrix(w, letters, ring);
    r.payload["matrix"] = matrix_json(m);
    r.payload["eps"] = eps(w, letters, ring);
    return r;
  });
}

Report cmd_verify(const std::string& suite, const VerifyOptions& options) {
  return guarded("verify", [&]() -> Report {
    SuiteReport result;
    Json params = Json::object();
    if (suite == "reciprocity") {
      if (options.max < 3) throw InputError("--max must be at least 3");
      params["max"] = options.max;
      result = verify_reciprocity(options.max);
    } else if (suite == "fiber") {
      if (options.n < 2 || options.n > 4) throw InputError("--n must be between 2 and 4");
      if (options.fixtures < 0) throw InputError("--fixtures must be non-negative");
      params["n"] = options.n;
      params["q"] = options.q;
      params["fixtures"] = options.fixtures;
      params["seed"] = options.seed;
      result = verify_fiber(options.n, options.q, options.fixtures, options.seed);
    } else if (suite == "pairing") {
      if (options.n < 1 || options.n > 8) throw InputError("--n must be between 1 and 8");
      if (options.samples < 1) throw InputError("--samples must be positive");
      params["n"] = options.n;
      params["q"] = options.q;
      params["samples"] = options.samples;
      params["seed"] = options.seed;
      result = verify_pairing(options.n, options.q, options.samples, options.seed);
    } else {
      throw InputError("unknown suite '" + suite + "' (reciprocity, fiber, pairing)");
    }
    Report r{"verify", result.ok() ? Status::ok : Status::obstruction, Json::object()};
    r.payload["suite"] = suite;
    r.payload["parameters"] = std::move(params);
    Json checks = Json::array();
    for (const auto& c : result.checks) {
      Json item = Json::object();
      item["name"] = c.name;
      item["passed"] = c.passed;
      item["failed"] = c.failed;
      if (c.failed > 0) item["first_failure"] = c.first_failure;
      checks.push_back(std::move(item));
    }
    r.payload["checks"] = std::move(checks);
    r.payload["result"] = result.ok() ? "pass" : "fail";
    return r;
  });
}

}  // namespace arlink

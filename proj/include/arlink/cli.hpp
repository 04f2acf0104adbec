#pragma once

// Command implementations behind the arlink executable. Each command builds
// one JSON payload; the human rendering is generated from that payload so the
// two never disagree.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace arlink {

class PartialMatrix;

enum class Status { ok, obstruction, error };

struct Report {
  std::string command;
  Status status = Status::ok;
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();

  /// 0 ok, 1 obstruction or failed verification, 2 usage or parse error.
  int exit_code() const;
  std::string render_json() const;
  std::string render_text() const;
  std::string render(bool json) const { return json ? render_json() : render_text(); }
};

const char* to_string(Status status);

/// {"n", "q", "rows"} with every entry in [0, q); absent entries are null.
nlohmann::ordered_json matrix_json(const PartialMatrix& m);

/// Usage and input errors become error reports rather than exceptions.
Report error_report(const std::string& command, const std::string& message);

/// kind is "legendre" (a p), "mu" (p_i p_j) or "redei" (p1 p2 p3).
Report cmd_symbol(const std::string& kind, const std::vector<std::string>& arguments);

/// Reads and solves a presentation file. With `lift`, also rebuilds the
/// answer by fiber_lift from the two (n-1)-slot windows.
Report cmd_solve(const std::string& path, bool lift = false);
Report cmd_solve_text(std::string_view text, bool lift = false);

/// `index` is a comma-separated list of labels; a bare integer k means t<k>.
Report cmd_magnus(const std::string& word, const std::string& index, std::uint64_t q);

struct VerifyOptions {
  std::uint64_t max = 200;
  int n = 2;
  std::uint64_t q = 2;
  int samples = 100;
  int fixtures = 20;
  std::uint64_t seed = 1;
};

/// suite is "reciprocity", "fiber" or "pairing".
Report cmd_verify(const std::string& suite, const VerifyOptions& options);

}  // namespace arlink

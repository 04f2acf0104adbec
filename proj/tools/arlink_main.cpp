#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arlink/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Unitriangular linking invariants and arithmetic symbols"};
  app.require_subcommand(1, 1);
  bool json = false;
  app.add_flag("--json", json, "Emit the report as JSON");

  auto* symbol = app.add_subcommand("symbol", "Legendre, mod-2 linking number or Redei symbol");
  std::string kind;
  std::vector<std::string> symbol_args;
  symbol->add_option("kind", kind, "legendre | mu | redei")->required();
  symbol->add_option("arguments", symbol_args, "Integers (2 for legendre/mu, 3 for redei)")
      ->required();
  symbol->fallthrough();

  auto* solve = app.add_subcommand("solve", "Build the globalization of a presentation file");
  std::string path;
  bool lift = false;
  solve->add_option("presentation", path, "Presentation file")->required();
  solve->add_flag("--lift", lift, "Also rebuild the answer by fiber lifting");
  solve->fallthrough();

  auto* magnus = app.add_subcommand("magnus", "Magnus matrix and eps coefficient of a word");
  std::string word;
  std::string idx;
  std::uint64_t magnus_q = 2;
  magnus->add_option("word", word, "Group word, e.g. \"[t1,t2]\"")->required();
  magnus->add_option("--idx", idx, "Comma-separated index labels; k means t<k>")->required();
  magnus->add_option("--q", magnus_q, "Ring modulus (prime power)");
  magnus->fallthrough();

  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  std::string suite;
  arlink::VerifyOptions options;
  verify->add_option("suite", suite, "reciprocity | fiber | pairing")->required();
  verify->add_option("--max", options.max, "Prime bound for reciprocity");
  verify->add_option("--n", options.n, "Matrix size n");
  verify->add_option("--q", options.q, "Ring modulus");
  verify->add_option("--samples", options.samples, "Random samples for pairing");
  verify->add_option("--fixtures", options.fixtures, "Generated presentations for fiber");
  verify->add_option("--seed", options.seed, "Random seed");
  verify->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  arlink::Report report;
  if (*symbol) {
    report = arlink::cmd_symbol(kind, symbol_args);
  } else if (*solve) {
    report = arlink::cmd_solve(path, lift);
  } else if (*magnus) {
    report = arlink::cmd_magnus(word, idx, magnus_q);
  } else {
    report = arlink::cmd_verify(suite, options);
  }
  (report.status == arlink::Status::error && !json ? std::cerr : std::cout) << report.render(json);
  return report.exit_code();
}

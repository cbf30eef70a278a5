#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "gqtk/commands.hpp"

using namespace gqtk;

int main(int argc, char** argv) {
  CLI::App app{"gqtk: finite quantales, groupoids and selection bases"};
  app.require_subcommand(1);

  std::string format = "json";
  RunOptions opts;
  bool timings = false;
  app.add_option("--report", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--verify-oracles", opts.verify_oracles, "Cross-check fast predicates against brute-force oracles");
  app.add_option("--threads", opts.threads, "Worker threads for search")->check(CLI::Range(1u, 256u));
  app.add_option("--size-budget", opts.budget, "Element budget for union closures");
  app.add_flag("--timings", timings, "Add wall-clock timings to the report");

  std::string path, kind;
  auto* check = app.add_subcommand("check", "Validate a space, groupoid, quantale or base");
  check->add_option("file", path, "Input JSON")->required();
  check->add_option("--kind", kind, "Input kind")
      ->required()
      ->check(CLI::IsMember({"space", "groupoid", "quantale", "base"}));

  auto* build = app.add_subcommand("build-gq", "Build Q(G,S) from a groupoid and a selection base");
  build->add_option("file", path, "Input JSON")->required();
  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct G(Q) from a quantale or a base");
  reconstruct->add_option("file", path, "Input JSON")->required();
  auto* roundtrip = app.add_subcommand("roundtrip", "Run both round trips and report isomorphism certificates");
  roundtrip->add_option("file", path, "Input JSON")->required();

  std::string which = "all";
  auto* fixtures = app.add_subcommand("fixtures", "Re-derive the golden facts of the built-in fixtures");
  fixtures->add_option("name", which, "Fixture name or alias, or all");

  SearchOptions search;
  auto* srch = app.add_subcommand("search", "Enumerate small unital involutive quantales up to isomorphism");
  srch->add_option("--max-size", search.max_size, "Largest carrier size");
  srch->add_option("--budget", search.budget, "Candidate product tables to try");
  srch->add_option("--cap", search.cap, "Refuse sizes above this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInputError;
  }
  search.threads = opts.threads;

  const auto start = std::chrono::steady_clock::now();
  auto with_file = [&](const std::string& name, auto&& fn) {
    return run_guarded(name, [&] { return fn(load_json_file(path)); });
  };
  Report report;
  if (*check)
    report = with_file("check", [&](const Json& doc) { return cmd_check(doc, kind, opts); });
  else if (*build)
    report = with_file("build-gq", [&](const Json& doc) { return cmd_build_gq(doc, opts); });
  else if (*reconstruct)
    report = with_file("reconstruct", [&](const Json& doc) { return cmd_reconstruct(doc, opts); });
  else if (*roundtrip)
    report = with_file("roundtrip", [&](const Json& doc) { return cmd_roundtrip(doc, opts); });
  else if (*fixtures)
    report = run_guarded("fixtures", [&] { return cmd_fixtures(which, opts); });
  else
    report = run_guarded("search", [&] { return cmd_search(search, opts); });

  if (timings)
    report.body["timings_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (format == "json")
    std::cout << report.body.dump(2) << "\n";
  else
    std::cout << render_text(report);
  return report.exit_code;
}

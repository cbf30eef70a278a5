#pragma once

#include <functional>
#include <string>

#include "gqtk/fixtures.hpp"
#include "gqtk/io.hpp"
#include "gqtk/search.hpp"
#include "gqtk/selection_base.hpp"

namespace gqtk {

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitInputError = 2, kExitBudget = 3 };

struct RunOptions {
  bool verify_oracles = false;
  std::size_t budget = kDefaultSizeBudget;
  unsigned threads = 1;
};

struct Report {
  Json body;
  int exit_code = kExitPass;
};

/// kind: "space" | "groupoid" | "quantale" | "base".
Report cmd_check(const Json& doc, const std::string& kind, const RunOptions& opts);
/// Groupoid plus base (or action plus "canonical") -> Q(G,S) summary.
Report cmd_build_gq(const Json& doc, const RunOptions& opts);
/// A quantale document or a base document (built first) -> G(Q).
Report cmd_reconstruct(const Json& doc, const RunOptions& opts);
/// Both isomorphism verdicts with certificates.
Report cmd_roundtrip(const Json& doc, const RunOptions& opts);
/// "all" or a fixture name/alias; re-derives every golden fact.
Report cmd_fixtures(const std::string& which, const RunOptions& opts);
Report cmd_search(const SearchOptions& search, const RunOptions& opts);

/// Runs `fn`, mapping InputError to exit 2, BudgetExceeded to exit 3 and any
/// other library error to exit 1, each with an error report.
Report run_guarded(const std::string& command, const std::function<Report()>& fn);

std::string render_text(const Report& report);

/// 64-bit FNV-1a of the canonical dump, as 16 hex digits.
std::string digest(const Json& doc);

/// The facts a fixture's "golden" block is compared against.
Json fixture_facts(const Fixture& fixture, const RunOptions& opts);

/// Classification table of a search result (the golden-file format).
Json search_table(const SearchResult& result);

}  // namespace gqtk

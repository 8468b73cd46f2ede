#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "macdecay/code.hpp"
#include "macdecay/decay.hpp"

namespace macdecay::cli {

enum ExitCode { kOk = 0, kCriteriaViolated = 1, kUsage = 2, kBudget = 3 };

/// Task parameters after merging defaults, config file, environment and flags.
struct RunOptions {
  nlohmann::json config = nlohmann::json::object();
  std::string out_dir;
  int workers = 0;
  std::uint64_t seed = 0;
  double budget = 1e8;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t samples = 100000;
  Pattern pattern = Pattern::FirstUser;
  int nmax = 8;
  double tolerance = 0.6;
  int max_degree = 7;
  long norm_bound = 50;
  bool timing = false;
};

/// The "code" section: either shorthand {m, K, U, n_t, p, k, H?} or
/// {tower: {...}, p, k}. Returns the spec and its fully resolved JSON.
std::pair<CodeSpec, nlohmann::json> resolve_code(const nlohmann::json& code);

int cmd_catalog(const RunOptions& o, std::ostream& out);
int cmd_inert_search(const RunOptions& o, std::ostream& out);
int cmd_build(const RunOptions& o, std::ostream& out);
int cmd_rank_check(const RunOptions& o, std::ostream& out);
int cmd_decay(const RunOptions& o, std::ostream& out);
int cmd_witness2(const RunOptions& o, std::ostream& out);

/// Parses argv, dispatches, and maps errors to exit codes.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace macdecay::cli

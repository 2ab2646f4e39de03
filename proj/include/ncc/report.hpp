#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ncc/quotient_groups.hpp"

namespace ncc {

inline constexpr const char* kToolVersion = "ncctool 1.0.0";

enum class Invariant { ncc, nac, peo, meo, d, classes };
std::string to_string(Invariant inv);
Invariant parse_invariant(const std::string& s);
/// Comma-separated list, returned deduplicated in canonical order.
std::vector<Invariant> parse_invariant_list(const std::string& s);

struct RunOptions {
  std::vector<Invariant> compute{Invariant::ncc};
  bool oracle = false;           ///< cross-check ncc against ncc_oracle
  bool timings = false;          ///< add per-invariant wall time to each report
  bool use_cache = true;
  std::filesystem::path cache_dir = ".ncc-cache";
  unsigned workers = 0;          ///< 0: hardware concurrency
};

struct Target {
  std::string name;
  std::string text;  ///< file contents
};

struct TargetResult {
  std::string name;
  std::string report;             ///< one JSON object, no trailing newline
  bool semantic_error = false;
  bool invariant_failure = false;
  bool cache_hit = false;         ///< every requested invariant came from the cache
  std::vector<std::string> diagnostics;
};

std::string sha256_hex(const std::string& data);

/// Reads a file, or every regular file of a directory (sorted by name).
std::vector<Target> load_targets(const std::filesystem::path& path);

/// Computes the requested invariants for every target on a worker pool.
/// Results come back in target order.
std::vector<TargetResult> run(const std::vector<Target>& targets, const RunOptions& options);

/// Reports as one text block per target.
std::string report_to_text(const std::string& json_line);

std::string tower_to_json(const TowerReport& report);
std::string tower_to_text(const TowerReport& report);

}  // namespace ncc

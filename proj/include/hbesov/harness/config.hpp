#pragma once

// Experiment configuration (YAML, config_version: 1).
//
//   config_version: 1
//   space:     {dim: 1, max_degree: 64, spacing: 0.0625, half_width: 18}
//   partition: {n0: 2}
//   corpus:
//     seed: 42
//     random: 200          # seeded uniform members
//     band: 32             # per-axis degree cap for random members (N/2)
//     families:
//       - {family: hermite, n: [0, 5, 40]}
//       - {family: gaussian, a: [0.5, 1], x0: [0, 1]}
//       - {family: hermite_gaussian, k: [2], a: [0.75]}
//       - {family: power_law, gamma: [3], count: 2}
//   checks:                # omitted = every registered check with defaults
//     - check: besov.embedding
//       grid: {s: [0, 0.5], r: [1], p: [2], q: [2]}
//       limit: 50          # first 50 corpus members only
//   budgets: {besov.embedding: 2.0, stability_growth: 0.1}
//   output:  {csv: report.csv, json: report.json}
//
// Scalar list entries may be given bare (n: 5). Exponents accept "inf".

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hbesov::harness {

using ParamAxis = std::pair<std::string, std::vector<std::string>>;

struct FamilySpec {
  std::string family;
  /// Parameter lists in file order; members are their cartesian product.
  std::vector<std::pair<std::string, std::vector<double>>> params;
  int line = 0;
};

struct CorpusSpec {
  std::uint64_t seed = 42;
  std::vector<FamilySpec> families;
  int random = 0;
  /// Per-axis degree cap of random members; default N/2.
  std::optional<int> band;
};

struct CheckRequest {
  std::string name;
  std::vector<ParamAxis> grid;
  std::optional<std::size_t> limit;
  int line = 0;
};

struct ExperimentConfig {
  int dim = 1;
  int max_degree = 64;
  std::optional<double> spacing;
  std::optional<double> half_width;
  int n0 = 2;
  CorpusSpec corpus;
  /// Empty means the whole registry.
  std::vector<CheckRequest> checks;
  std::map<std::string, double> budgets;
  double stability_growth = 0.10;
  std::string csv_path;
  std::string json_path;
  std::uint64_t hash = 0;
};

/// Throws ConfigError with the offending line.
ExperimentConfig parse_config(const std::string& text);
/// Throws IoError when the file cannot be read.
ExperimentConfig load_config(const std::string& path);
/// Replaces the corpus seed and folds it into the hash.
void override_seed(ExperimentConfig& cfg, std::uint64_t seed);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hex(std::uint64_t v);

}  // namespace hbesov::harness

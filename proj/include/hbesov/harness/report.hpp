#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hbesov::harness {

struct ReportRow {
  std::string check;
  std::string group;
  std::string params;
  std::string f_id;
  std::string g_id;
  double value = 0.0;
  double budget = 0.0;
  /// ';'-separated: budget, error:..., zero_input, aliased, lossy, narrowband.
  std::string flags;
  /// Row belongs to the half-size corpus.
  bool in_half = true;
  bool violated = false;
};

struct CheckSummary {
  std::string check;
  std::string group;
  std::size_t rows = 0;
  double max_value = 0.0;
  double max_half = 0.0;
  /// (max - max_half) / max_half for empirical-constant checks, else NaN.
  double stability = 0.0;
  double budget = 0.0;
  std::size_t violations = 0;
  bool unstable = false;
  bool pass = true;
};

struct ExperimentReport {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> corpus_ids;
  std::vector<ReportRow> rows;
  std::vector<CheckSummary> summary;
  bool pass() const;
  std::size_t group_count() const;
};

void write_rows_csv(std::ostream& os, const ExperimentReport& r);
void write_summary_csv(std::ostream& os, const ExperimentReport& r);
/// Stable key order; the full report including rows.
void write_json(std::ostream& os, const ExperimentReport& r, bool include_rows = true);

}  // namespace hbesov::harness

#include <cmath>
#include <ostream>
#include <set>

#include <json.hpp>

#include "hbesov/harness/config.hpp"
#include "hbesov/harness/report.hpp"
#include "hbesov/io.hpp"

namespace hbesov::harness {
namespace {

// Non-finite values keep their spelling; JSON has no literal for them.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

bool ExperimentReport::pass() const {
  for (const auto& s : summary)
    if (!s.pass) return false;
  return true;
}

std::size_t ExperimentReport::group_count() const {
  std::set<std::string> g;
  for (const auto& s : summary) g.insert(s.group);
  return g.size();
}

void write_rows_csv(std::ostream& os, const ExperimentReport& r) {
  const std::string hash = hex(r.config_hash);
  os << "check,group,params,f_id,g_id,value,budget,flags,config_hash\r\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.check) << ',' << csv_field(row.group) << ',' << csv_field(row.params) << ','
       << csv_field(row.f_id) << ',' << csv_field(row.g_id) << ',' << format_double(row.value) << ','
       << format_double(row.budget) << ',' << csv_field(row.flags) << ',' << hash << "\r\n";
  }
}

void write_summary_csv(std::ostream& os, const ExperimentReport& r) {
  const std::string hash = hex(r.config_hash);
  os << "check,group,rows,max,max_half,stability,budget,violations,unstable,pass,config_hash\r\n";
  for (const auto& s : r.summary) {
    os << csv_field(s.check) << ',' << csv_field(s.group) << ',' << s.rows << ',' << format_double(s.max_value)
       << ',' << format_double(s.max_half) << ',' << format_double(s.stability) << ',' << format_double(s.budget)
       << ',' << s.violations << ',' << (s.unstable ? "true" : "false") << ',' << (s.pass ? "true" : "false")
       << ',' << hash << "\r\n";
  }
}

void write_json(std::ostream& os, const ExperimentReport& r, bool include_rows) {
  nlohmann::ordered_json j;
  j["config_hash"] = hex(r.config_hash);
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  j["groups"] = r.group_count();
  j["corpus"] = r.corpus_ids;
  auto& summary = j["summary"] = nlohmann::ordered_json::array();
  for (const auto& s : r.summary) {
    nlohmann::ordered_json e;
    e["check"] = s.check;
    e["group"] = s.group;
    e["rows"] = s.rows;
    e["max"] = number(s.max_value);
    e["max_half"] = number(s.max_half);
    e["stability"] = number(s.stability);
    e["budget"] = number(s.budget);
    e["violations"] = s.violations;
    e["unstable"] = s.unstable;
    e["pass"] = s.pass;
    summary.push_back(std::move(e));
  }
  if (include_rows) {
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
      nlohmann::ordered_json e;
      e["check"] = row.check;
      e["params"] = row.params;
      e["f_id"] = row.f_id;
      e["g_id"] = row.g_id;
      e["value"] = number(row.value);
      e["budget"] = number(row.budget);
      e["flags"] = row.flags;
      e["config_hash"] = hex(r.config_hash);
      rows.push_back(std::move(e));
    }
  }
  os << j.dump(2) << '\n';
}

}  // namespace hbesov::harness

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "hbesov/errors.hpp"
#include "hbesov/harness/config.hpp"
#include "hbesov/harness/suite.hpp"

namespace hbesov::harness {
namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

[[noreturn]] void fail(const YAML::Node& n, const std::string& what) { throw ConfigError(what, line_of(n)); }

template <class T>
T as(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) fail(n, what + ": expected a scalar");
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    fail(n, what + ": cannot read '" + n.Scalar() + "'");
  }
}

void expect_map(const YAML::Node& n, const std::string& what, const std::set<std::string>& keys) {
  if (!n.IsMap()) fail(n, what + ": expected a mapping");
  for (const auto& kv : n) {
    const std::string k = kv.first.Scalar();
    if (!keys.count(k)) fail(kv.first, what + ": unknown key '" + k + "'");
  }
}

// Scalar or list of scalars.
std::vector<YAML::Node> items(const YAML::Node& n) {
  std::vector<YAML::Node> out;
  if (n.IsSequence()) {
    for (const auto& e : n) out.push_back(e);
  } else {
    out.push_back(n);
  }
  return out;
}

void parse_space(const YAML::Node& n, ExperimentConfig& c) {
  expect_map(n, "space", {"dim", "max_degree", "spacing", "half_width"});
  if (n["dim"]) {
    c.dim = as<int>(n["dim"], "space.dim");
    if (c.dim != 1 && c.dim != 2) fail(n["dim"], "space.dim must be 1 or 2");
  }
  if (n["max_degree"]) {
    c.max_degree = as<int>(n["max_degree"], "space.max_degree");
    if (c.max_degree < 1) fail(n["max_degree"], "space.max_degree must be >= 1");
  }
  if (n["spacing"]) {
    c.spacing = as<double>(n["spacing"], "space.spacing");
    if (!(*c.spacing > 0.0)) fail(n["spacing"], "space.spacing must be positive");
  }
  if (n["half_width"]) {
    c.half_width = as<double>(n["half_width"], "space.half_width");
    if (!(*c.half_width > 0.0)) fail(n["half_width"], "space.half_width must be positive");
  }
}

void parse_corpus(const YAML::Node& n, ExperimentConfig& c) {
  expect_map(n, "corpus", {"seed", "random", "band", "families"});
  if (n["seed"]) c.corpus.seed = as<std::uint64_t>(n["seed"], "corpus.seed");
  if (n["random"]) {
    c.corpus.random = as<int>(n["random"], "corpus.random");
    if (c.corpus.random < 0) fail(n["random"], "corpus.random must be >= 0");
  }
  if (n["band"]) {
    c.corpus.band = as<int>(n["band"], "corpus.band");
    if (*c.corpus.band < 0) fail(n["band"], "corpus.band must be >= 0");
  }
  if (const auto fams = n["families"]) {
    if (!fams.IsSequence()) fail(fams, "corpus.families: expected a list");
    for (const auto& f : fams) {
      if (!f.IsMap() || !f["family"]) fail(f, "corpus.families: each entry needs 'family'");
      FamilySpec fs;
      fs.line = line_of(f);
      for (const auto& kv : f) {
        const std::string key = kv.first.Scalar();
        if (key == "family") {
          fs.family = as<std::string>(kv.second, "family");
          continue;
        }
        std::vector<double> vals;
        for (const auto& e : items(kv.second)) vals.push_back(as<double>(e, "corpus family '" + key + "'"));
        if (vals.empty()) fail(kv.second, "corpus family '" + key + "': empty list");
        fs.params.emplace_back(key, std::move(vals));
      }
      c.corpus.families.push_back(std::move(fs));
    }
  }
}

void parse_checks(const YAML::Node& n, ExperimentConfig& c) {
  if (!n.IsSequence()) fail(n, "checks: expected a list");
  std::set<std::string> seen;
  for (const auto& e : n) {
    CheckRequest req;
    req.line = line_of(e);
    if (e.IsScalar()) {
      req.name = e.Scalar();
    } else {
      expect_map(e, "checks entry", {"check", "grid", "limit"});
      if (!e["check"]) fail(e, "checks entry needs 'check'");
      req.name = as<std::string>(e["check"], "check");
      if (e["limit"]) {
        const int lim = as<int>(e["limit"], "limit");
        if (lim < 1) fail(e["limit"], "limit must be >= 1");
        req.limit = std::size_t(lim);
      }
      if (const auto g = e["grid"]) {
        if (!g.IsMap()) fail(g, "grid: expected a mapping");
        const CheckInfo* info = find_check(req.name);
        for (const auto& kv : g) {
          const std::string key = kv.first.Scalar();
          if (info) {
            bool known = false;
            for (const auto& ax : info->grid) known = known || ax.first == key;
            if (!known) fail(kv.first, "check '" + req.name + "' has no parameter '" + key + "'");
          }
          std::vector<std::string> vals;
          for (const auto& v : items(kv.second)) vals.push_back(as<std::string>(v, key));
          if (vals.empty()) fail(kv.second, "parameter '" + key + "': empty list");
          req.grid.emplace_back(key, std::move(vals));
        }
      }
    }
    if (!find_check(req.name)) throw ConfigError("unknown check '" + req.name + "'", req.line);
    if (!seen.insert(req.name).second) throw ConfigError("check '" + req.name + "' listed twice", req.line);
    c.checks.push_back(std::move(req));
  }
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping", 1);
  expect_map(root, "config", {"config_version", "space", "partition", "corpus", "checks", "budgets", "output"});
  if (!root["config_version"]) throw ConfigError("missing config_version", 1);
  if (as<int>(root["config_version"], "config_version") != 1)
    fail(root["config_version"], "unsupported config_version (expected 1)");

  ExperimentConfig c;
  if (root["space"]) parse_space(root["space"], c);
  if (const auto p = root["partition"]) {
    expect_map(p, "partition", {"n0"});
    if (p["n0"]) {
      c.n0 = as<int>(p["n0"], "partition.n0");
      if (c.n0 < 1) fail(p["n0"], "partition.n0 must be >= 1");
    }
  }
  if (root["corpus"]) parse_corpus(root["corpus"], c);
  if (root["checks"]) parse_checks(root["checks"], c);
  if (const auto b = root["budgets"]) {
    if (!b.IsMap()) fail(b, "budgets: expected a mapping");
    for (const auto& kv : b) {
      const std::string key = kv.first.Scalar();
      const double v = as<double>(kv.second, "budget '" + key + "'");
      if (key == "stability_growth") {
        c.stability_growth = v;
      } else {
        if (!find_check(key)) fail(kv.first, "budget for unknown check '" + key + "'");
        c.budgets[key] = v;
      }
    }
  }
  if (const auto o = root["output"]) {
    expect_map(o, "output", {"csv", "json"});
    if (o["csv"]) c.csv_path = as<std::string>(o["csv"], "output.csv");
    if (o["json"]) c.json_path = as<std::string>(o["json"], "output.json");
  }
  c.hash = fnv1a(text);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what(), 0);
  }
}

void override_seed(ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.corpus.seed = seed;
  cfg.hash = fnv1a("seed=" + std::to_string(seed), cfg.hash);
}

}  // namespace hbesov::harness

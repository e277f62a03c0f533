#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <map>
#include <set>

#include "hbesov/besov.hpp"
#include "hbesov/errors.hpp"
#include "hbesov/harness/suite.hpp"
#include "hbesov/paraproduct.hpp"

namespace hbesov::harness {
namespace {

HermiteBasis basis_of(const ExperimentConfig& cfg) { return HermiteBasis(cfg.dim, cfg.max_degree); }

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ";") + s;
  return out;
}

// Named members first, so a prefix of length `count` halves as: every named
// member plus the first half (rounded up) of the random ones.
std::size_t half_of(const Corpus& c, std::size_t count) {
  std::size_t named = 0;
  for (std::size_t i = 0; i < count; ++i) named += c.members[i].random ? 0 : 1;
  return named + (count - named + 1) / 2;
}

}  // namespace

const std::string& ParamSet::raw(std::string_view key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  throw ParameterError("missing check parameter '" + std::string(key) + "'");
}

double ParamSet::num(std::string_view key) const {
  const std::string& s = raw(key);
  if (s == "inf") return INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ParameterError("parameter '" + std::string(key) + "' is not a number: " + s);
  return v;
}

int ParamSet::integer(std::string_view key) const {
  const double v = num(key);
  if (v != std::floor(v)) throw ParameterError("parameter '" + std::string(key) + "' must be an integer");
  return int(v);
}

Exponent ParamSet::exponent(std::string_view key) const { return Exponent::parse(raw(key)); }

std::string ParamSet::str() const {
  std::string out;
  for (const auto& [k, v] : values) out += (out.empty() ? "" : ";") + k + "=" + v;
  return out;
}

SuiteContext::SuiteContext(const ExperimentConfig& cfg, Corpus corpus) : cfg_(cfg), corpus_(std::move(corpus)) {}
SuiteContext::~SuiteContext() = default;

const Space& SuiteContext::space() const {
  if (!space_) {
    const HermiteBasis b = basis_of(cfg_);
    space_ = std::make_unique<Space>(b, Grid::for_basis(b, cfg_.spacing, cfg_.half_width));
  }
  return *space_;
}

const BilinearContext& SuiteContext::bilinear() const {
  if (!bilinear_) bilinear_ = std::make_unique<BilinearContext>(basis_of(cfg_));
  return *bilinear_;
}

const CheckInfo* find_check(std::string_view name) {
  for (const auto& c : check_registry())
    if (c.name == name) return &c;
  return nullptr;
}

const std::vector<std::string>& checker_operations() {
  static const std::vector<std::string> ops = {
      "build_partition", "apply_multiplier", "lp_block", "widened_block", "low_block", "apply_H_power",
      "multiplier_kernel", "operator_norm",
      "lp_norm", "besov_norm", "duality_pairing", "embedding_ratio", "sandwich_check", "interpolation_check",
      "product", "bony_decompose", "lowhigh_estimate_ratio", "negative_s_lowhigh_ratio",
      "resonant_estimate_ratio", "product_estimate_ratio", "negative_positive_product_ratio",
      "heat_apply", "mehler_kernel", "smoothing_ratio", "smoothing_rate_fit", "continuity_deficit",
      "weak_continuity_pairing", "semigroup_norm", "duhamel_solve", "max_reg_ratio"};
  return ops;
}

std::vector<std::string> uncovered_operations() {
  std::set<std::string> covered;
  for (const auto& c : check_registry()) covered.insert(c.covers.begin(), c.covers.end());
  std::vector<std::string> out;
  for (const auto& op : checker_operations())
    if (!covered.count(op)) out.push_back(op);
  return out;
}

std::vector<ParamSet> expand_grid(const std::vector<ParamAxis>& grid) {
  std::vector<ParamSet> out(1);
  for (const auto& [key, vals] : grid) {
    std::vector<ParamSet> next;
    for (const auto& partial : out)
      for (const auto& v : vals) {
        ParamSet p = partial;
        p.values.emplace_back(key, v);
        next.push_back(std::move(p));
      }
    out = std::move(next);
  }
  return out;
}

ExperimentReport run_suite(const ExperimentConfig& cfg) {
  return run_suite(cfg, generate_corpus(cfg.corpus, basis_of(cfg)));
}

ExperimentReport run_suite(const ExperimentConfig& cfg, const Corpus& corpus) {
  const SuiteContext ctx(cfg, corpus);
  ExperimentReport report;
  report.config_hash = cfg.hash;
  report.seed = cfg.corpus.seed;
  for (const auto& m : corpus.members) report.corpus_ids.push_back(m.id);

  std::map<std::string, const CheckRequest*> requested;
  for (const auto& r : cfg.checks) requested[r.name] = &r;

  // HBESOV_TIMING=1 prints per-check wall time to stderr; reports are unaffected
  const bool timing = std::getenv("HBESOV_TIMING") != nullptr;
  for (const CheckInfo& info : check_registry()) {
    const auto started = std::chrono::steady_clock::now();
    const CheckRequest* req = nullptr;
    if (!cfg.checks.empty()) {
      const auto it = requested.find(info.name);
      if (it == requested.end()) continue;
      req = it->second;
    }
    std::vector<ParamAxis> grid = info.grid;
    if (req)
      for (const auto& [key, vals] : req->grid)
        for (auto& axis : grid)
          if (axis.first == key) axis.second = vals;
    const auto bit = cfg.budgets.find(info.name);
    const double budget = bit != cfg.budgets.end() ? bit->second : info.budget;

    std::size_t count = corpus.members.size();
    if (req && req->limit) count = std::min(count, *req->limit);
    const std::size_t half = half_of(corpus, count);

    CheckSummary sum;
    sum.check = info.name;
    sum.group = info.group;
    sum.budget = budget;
    sum.max_value = -INFINITY;
    sum.max_half = -INFINITY;
    bool any_nan = false;
    // doubling growth is taken per parameter set, worst case reported
    double set_max = -INFINITY, set_half = -INFINITY, worst_growth = -INFINITY;

    auto emit = [&](const ParamSet& ps, const CorpusMember* f, const CorpusMember* g, bool in_half) {
      ReportRow row;
      row.check = info.name;
      row.group = info.group;
      row.params = ps.str();
      row.f_id = f ? f->id : "";
      row.g_id = g ? g->id : "";
      row.budget = budget;
      row.in_half = in_half;
      std::vector<std::string> flags;
      try {
        Outcome o = info.run(ctx, ps, f, g);
        row.value = o.value;
        flags = std::move(o.flags);
      } catch (const std::exception& e) {
        row.value = NAN;
        flags.push_back(std::string("error: ") + e.what());
      }
      row.violated = !(row.value <= budget);
      if (row.violated) flags.insert(flags.begin(), "budget");
      row.flags = join(flags);
      if (std::isnan(row.value)) {
        any_nan = true;
      } else {
        sum.max_value = std::max(sum.max_value, row.value);
        set_max = std::max(set_max, row.value);
        if (in_half) {
          sum.max_half = std::max(sum.max_half, row.value);
          set_half = std::max(set_half, row.value);
        }
      }
      sum.violations += row.violated ? 1 : 0;
      ++sum.rows;
      report.rows.push_back(std::move(row));
    };

    for (const ParamSet& ps : expand_grid(grid)) {
      set_max = set_half = -INFINITY;
      switch (info.pairing) {
        case Pairing::none:
          emit(ps, nullptr, nullptr, true);
          break;
        case Pairing::single:
          for (std::size_t i = 0; i < count; ++i) emit(ps, &corpus.members[i], nullptr, i < half);
          break;
        case Pairing::pair:
          // consecutive pairs closing into a cycle; a pair counts toward the
          // half corpus when both members do
          for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = (i + 1) % count;
            emit(ps, &corpus.members[i], &corpus.members[j], i < half && j < half);
          }
          break;
      }
      if (set_half > 0.0) worst_growth = std::max(worst_growth, (set_max - set_half) / set_half);
      else if (set_max > 0.0) worst_growth = INFINITY;
      else worst_growth = std::max(worst_growth, 0.0);
    }
    if (sum.rows == 0 || sum.max_value == -INFINITY) sum.max_value = NAN;
    if (sum.max_half == -INFINITY) sum.max_half = sum.max_value;
    sum.stability = NAN;
    if (info.kind == CheckKind::constant && info.pairing != Pairing::none && half < count) {
      sum.stability = worst_growth;
      sum.unstable = !(sum.stability <= cfg.stability_growth);
    }
    sum.pass = sum.violations == 0 && !sum.unstable && !any_nan;
    if (timing)
      std::fprintf(stderr, "%-28s %8.2f s\n", info.name.c_str(),
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
    report.summary.push_back(sum);
  }
  return report;
}

}  // namespace hbesov::harness

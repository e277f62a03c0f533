#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbesov/besov.hpp"
#include "hbesov/errors.hpp"
#include "hbesov/harness/checks.hpp"
#include "hbesov/harness/config.hpp"
#include "hbesov/harness/corpus.hpp"
#include "hbesov/harness/report.hpp"
#include "hbesov/harness/suite.hpp"
#include "hbesov/io.hpp"
#include "hbesov/paraproduct.hpp"
#include "hbesov/semigroup.hpp"

using namespace hbesov;
using namespace hbesov::harness;
using ojson = nlohmann::ordered_json;

namespace {

enum ExitCode { kPass = 0, kViolation = 1, kUsage = 2 };

struct Options {
  std::string config;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
};

// One flat table per command; cells are strings or numbers.
struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<ojson>> rows;

  void add(std::vector<ojson> r) { rows.push_back(std::move(r)); }

  void print(std::ostream& os, const std::string& format) const {
    auto cell = [](const ojson& v) {
      if (v.is_number()) return format_double(v.get<double>());
      if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
      return csv_field(v.get<std::string>());
    };
    if (format == "json") {
      ojson arr = ojson::array();
      for (const auto& r : rows) {
        ojson o;
        for (std::size_t i = 0; i < cols.size(); ++i) {
          const ojson& v = r[i];
          o[cols[i]] = v.is_number() && !std::isfinite(v.get<double>()) ? ojson(format_double(v.get<double>())) : v;
        }
        arr.push_back(std::move(o));
      }
      os << arr.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_field(cols[i]);
    os << "\r\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell(r[i]);
      os << "\r\n";
    }
  }
};

ExperimentConfig load(const Options& o) {
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) override_seed(cfg, *o.seed);
  return cfg;
}

HermiteBasis basis_of(const ExperimentConfig& cfg) { return HermiteBasis(cfg.dim, cfg.max_degree); }

Space space_of(const ExperimentConfig& cfg) {
  const HermiteBasis b = basis_of(cfg);
  return Space(b, Grid::for_basis(b, cfg.spacing, cfg.half_width));
}

const CorpusMember& member(const Corpus& c, const std::string& id) {
  const CorpusMember* m = c.find(id);
  if (!m) throw ConfigError("no corpus member '" + id + "'", 0);
  return *m;
}

std::string hash_of(const ExperimentConfig& cfg) { return hex(cfg.hash); }

// Suite restricted to `names`, keeping any grid overrides from the config.
int run_subset(const ExperimentConfig& base, const std::vector<std::string>& names, const Options& o) {
  ExperimentConfig cfg = base;
  cfg.checks.clear();
  for (const auto& n : names) {
    CheckRequest req{n, {}, {}, 0};
    for (const auto& r : base.checks)
      if (r.name == n) req = r;
    cfg.checks.push_back(req);
  }
  const ExperimentReport rep = run_suite(cfg);
  if (o.format == "json") write_json(std::cout, rep, true);
  else write_rows_csv(std::cout, rep);
  return rep.pass() ? kPass : kViolation;
}

int cmd_transform(const Options& o, const std::string& input, const std::string& out) {
  const ExperimentConfig cfg = load(o);
  std::ifstream in(input, std::ios::binary);
  if (!in) throw IoError("cannot open input", input);
  char magic[5] = {};
  in.read(magic, 5);
  in.clear();
  in.seekg(0);
  const bool binary = std::string(magic, 5) == "HBSV1";
  const SpectralCoefficients c = binary ? read_coefficients_binary(in) : read_coefficients_csv(in);
  const Grid grid = Grid::for_basis(c.basis(), cfg.spacing, cfg.half_width);
  const GridFunction f = synthesize(c, grid);
  const SpectralCoefficients back = analyze(f, c.basis());
  std::ofstream os(out, std::ios::binary);
  if (!os) throw IoError("cannot open output", out);
  if (binary) write_coefficients_binary(os, back);
  else write_coefficients_csv(os, back);
  if (!os) throw IoError("write failed", out);

  const double n = c.l2_norm();
  const double err = n > 0.0 ? (back - c).l2_norm() / n : (back - c).l2_norm();
  Table t{{"input", "dim", "max_degree", "grid_points", "roundtrip_error", "config_hash"}, {}};
  t.add({input, c.basis().dim(), c.basis().max_degree(), double(grid.size()), err, hash_of(cfg)});
  t.print(std::cout, o.format);
  return err <= 1e-10 ? kPass : kViolation;
}

int cmd_norm(const Options& o, const std::string& id, double s, const std::string& p, const std::string& q) {
  const ExperimentConfig cfg = load(o);
  const Corpus corpus = generate_corpus(cfg.corpus, basis_of(cfg));
  const Space sp = space_of(cfg);
  const BlockProfile bp = besov_norm(sp, member(corpus, id).c, {s, Exponent::parse(p), Exponent::parse(q), {}, {}});
  Table t{{"f_id", "j", "weighted_block", "norm", "tail_unresolved", "config_hash"}, {}};
  for (std::size_t k = 0; k < bp.weighted.size(); ++k)
    t.add({id, bp.j_min + int(k), bp.weighted[k], bp.value, bp.tail_unresolved, hash_of(cfg)});
  t.print(std::cout, o.format);
  return kPass;
}

int cmd_blocks(const Options& o, const std::string& id) {
  const ExperimentConfig cfg = load(o);
  const Corpus corpus = generate_corpus(cfg.corpus, basis_of(cfg));
  const Space sp = space_of(cfg);
  const auto& c = member(corpus, id).c;
  const auto b1 = sp.block_lp_norms(c, Exponent::finite(1.0));
  const auto b2 = sp.block_lp_norms(c, Exponent::finite(2.0));
  const auto bi = sp.block_lp_norms(c, Exponent::infinity());
  Table t{{"f_id", "j", "L1", "L2", "Linf", "config_hash"}, {}};
  for (std::size_t k = 0; k < b1.size(); ++k)
    t.add({id, sp.partition().j0() + int(k), b1[k], b2[k], bi[k], hash_of(cfg)});
  t.print(std::cout, o.format);
  return kPass;
}

int cmd_paraproduct(const Options& o, const std::string& fid, const std::string& gid) {
  const ExperimentConfig cfg = load(o);
  const HermiteBasis b = basis_of(cfg);
  const Corpus corpus = generate_corpus(cfg.corpus, b);
  const auto& f = member(corpus, fid).c;
  const auto& g = member(corpus, gid).c;
  const ProductEngine eng(b);
  const Product fg = eng.product(f, g);
  const BonyPieces pieces = eng.bony(f, g, DyadicPartition(b), cfg.n0);
  const double scale = f.l2_norm() * g.l2_norm();
  const double resid = (pieces.low_high + pieces.high_low + pieces.resonant - fg.value).l2_norm() / scale;
  Table t{{"f_id", "g_id", "piece", "l2_norm", "completeness_residual", "lost_fraction", "config_hash"}, {}};
  const std::pair<const char*, const SpectralCoefficients*> rows[] = {
      {"low_high", &pieces.low_high}, {"high_low", &pieces.high_low}, {"resonant", &pieces.resonant},
      {"product", &fg.value}};
  for (const auto& [name, c] : rows) t.add({fid, gid, name, c->l2_norm(), resid, fg.lost_fraction, hash_of(cfg)});
  t.print(std::cout, o.format);
  return resid <= 1e-8 ? kPass : kViolation;
}

int cmd_heat(const Options& o, const std::string& id, double time) {
  const ExperimentConfig cfg = load(o);
  const Corpus corpus = generate_corpus(cfg.corpus, basis_of(cfg));
  const Space sp = space_of(cfg);
  const auto& f = member(corpus, id).c;
  const auto u = heat_apply(time, f);
  Table t{{"f_id", "t", "norm", "s", "p", "q", "before", "after", "config_hash"}, {}};
  for (const char* p : {"1", "2", "inf"}) {
    const Exponent e = Exponent::parse(p);
    t.add({id, time, "L^p", 0.0, p, "", sp.lp_norm(f, e), sp.lp_norm(u, e), hash_of(cfg)});
  }
  for (double s : {0.0, 1.0, 2.0})
    for (const char* p : {"2", "inf"}) {
      const BesovParams bp{s, Exponent::parse(p), Exponent::finite(2.0), {}, {}};
      t.add({id, time, "besov", s, p, "2", besov_norm(sp, f, bp).value, besov_norm(sp, u, bp).value, hash_of(cfg)});
    }
  t.print(std::cout, o.format);
  return kPass;
}

int cmd_kernels(const Options& o, int j, const std::string& out) {
  const ExperimentConfig cfg = load(o);
  const KernelPlan plan = kernel_plan(j);
  const KernelNorms k = block_kernel_norms(j);
  if (!out.empty()) {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw IoError("cannot open output", out);
    write_kernel_binary(os, multiplier_kernel(SymbolFn::block(j), plan.grid, plan.max_degree), plan.grid,
                        plan.max_degree);
  }
  Table t{{"j", "max_degree", "half_width", "spacing", "stride", "L1_to_L1", "Linf_to_Linf", "resolved",
           "config_hash"},
          {}};
  t.add({j, plan.max_degree, plan.grid.half_width(), plan.grid.spacing(), double(plan.stride), k.l1, k.linf,
         k.resolved, hash_of(cfg)});
  t.print(std::cout, o.format);
  return kPass;
}

int cmd_verify(const Options& o) {
  const ExperimentConfig cfg = load(o);
  const ExperimentReport rep = run_suite(cfg);
  if (!cfg.csv_path.empty()) {
    std::ofstream os(cfg.csv_path, std::ios::binary);
    if (!os) throw IoError("cannot open report", cfg.csv_path);
    write_rows_csv(os, rep);
  }
  if (!cfg.json_path.empty()) {
    std::ofstream os(cfg.json_path, std::ios::binary);
    if (!os) throw IoError("cannot open report", cfg.json_path);
    write_json(os, rep, true);
  }
  if (o.format == "json") write_json(std::cout, rep, false);
  else write_summary_csv(std::cout, rep);
  return rep.pass() ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite–Besov spaces: transforms, norms, paraproducts, heat flow and the verification suite"};
  app.require_subcommand(1);
  Options opt;
  auto common = [&opt](CLI::App* sc) {
    sc->add_option("--config", opt.config, "YAML experiment config")->required()->check(CLI::ExistingFile);
    sc->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--seed", opt.seed, "override the corpus seed");
  };

  std::string input, out, f_id, g_id, p = "2", q = "2";
  double s = 0.0, t = 0.1;
  int j = 0;
  std::function<int()> action;

  auto* transform = app.add_subcommand("transform", "analyze/synthesize round trip of a coefficient file");
  common(transform);
  transform->add_option("--input", input)->required();
  transform->add_option("--out", out)->required();
  transform->callback([&] { action = [&] { return cmd_transform(opt, input, out); }; });

  auto* norm = app.add_subcommand("norm", "Besov norm and block profile of a corpus member");
  common(norm);
  norm->add_option("--f", f_id)->required();
  norm->add_option("--s", s);
  norm->add_option("--p", p);
  norm->add_option("--q", q);
  norm->callback([&] { action = [&] { return cmd_norm(opt, f_id, s, p, q); }; });

  auto* blocks = app.add_subcommand("blocks", "per-block L^p table");
  common(blocks);
  blocks->add_option("--f", f_id)->required();
  blocks->callback([&] { action = [&] { return cmd_blocks(opt, f_id); }; });

  auto* para = app.add_subcommand("paraproduct", "Bony pieces and completeness residual");
  common(para);
  para->add_option("--f", f_id)->required();
  para->add_option("--g", g_id)->required();
  para->callback([&] { action = [&] { return cmd_paraproduct(opt, f_id, g_id); }; });

  auto* heat = app.add_subcommand("heat", "norms before and after e^{-tH}");
  common(heat);
  heat->add_option("--f", f_id)->required();
  heat->add_option("--t", t)->check(CLI::NonNegativeNumber);
  heat->callback([&] { action = [&] { return cmd_heat(opt, f_id, t); }; });

  auto* rates = app.add_subcommand("rates", "smoothing-rate fits");
  common(rates);
  rates->callback([&] {
    action = [&] { return run_subset(load(opt), {"smoothing.rates", "smoothing.rate_gap"}, opt); };
  });

  auto* equiv = app.add_subcommand("equiv", "semigroup characterization: two-sided ratios");
  common(equiv);
  equiv->callback([&] { action = [&] { return run_subset(load(opt), {"equivalence.two_sided"}, opt); }; });

  auto* maxreg = app.add_subcommand("maxreg", "maximal regularity ratios");
  common(maxreg);
  maxreg->callback([&] {
    action = [&] { return run_subset(load(opt), {"maxreg.manufactured", "maxreg.residual", "maxreg.ratio"}, opt); };
  });

  auto* kernels = app.add_subcommand("kernels", "block multiplier kernel and its L¹/L^∞ operator norms");
  common(kernels);
  kernels->add_option("--j", j)->required()->check(CLI::Range(0, 8));
  kernels->add_option("--out", out, "write the dense kernel (binary container)");
  kernels->callback([&] { action = [&] { return cmd_kernels(opt, j, out); }; });

  auto* verify = app.add_subcommand("verify", "full suite with machine-readable summary");
  common(verify);
  verify->callback([&] { action = [&] { return cmd_verify(opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }
  try {
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
  }
  return kUsage;
}

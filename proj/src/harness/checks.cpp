#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "hbesov/besov.hpp"
#include "hbesov/errors.hpp"
#include "hbesov/harness/checks.hpp"
#include "hbesov/harness/suite.hpp"
#include "hbesov/paraproduct.hpp"
#include "hbesov/semigroup.hpp"

namespace hbesov::harness {
namespace {

const Exponent kOne = Exponent::finite(1.0);
const Exponent kTwo = Exponent::finite(2.0);
const Exponent kInf = Exponent::infinity();

double besov(const Space& sp, const SpectralCoefficients& c, double s, Exponent p, Exponent q) {
  return besov_norm(sp, c, {s, p, q, {}, {}}).value;
}

Outcome from(const Ratio& r) {
  Outcome o{r.value, {}};
  if (r.zero_input) o.flags.push_back("zero_input");
  return o;
}

double rel_diff(const SpectralCoefficients& a, const SpectralCoefficients& b, double scale) {
  return scale > 0.0 ? (a - b).l2_norm() / scale : (a - b).l2_norm();
}

std::vector<double> log_times(double lo, double hi, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) t[std::size_t(k)] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (n - 1));
  return t;
}

std::pair<int, int> ladder_pair(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ParameterError("expected 'alpha:beta', got " + s);
  return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
}

// Memo for the expensive fixed experiments; keyed by a small integer.
template <class V>
class Memo {
 public:
  template <class F>
  const V& get(int key, F make) {
    std::lock_guard lock(mu_);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, make()).first;
    return it->second;
  }

 private:
  std::mutex mu_;
  std::map<int, V> cache_;
};

Memo<KernelNorms>& block_memo() {
  static Memo<KernelNorms> m;
  return m;
}
Memo<RateFit>& rate_memo() {
  static Memo<RateFit> m;
  return m;
}

const RateFit& cached_rate(const std::string& name) {
  const auto& tuples = rate_tuples();
  for (std::size_t i = 0; i < tuples.size(); ++i)
    if (tuples[i].name == name) return rate_memo().get(int(i), [&] { return run_rate_tuple(tuples[i]); });
  throw ParameterError("unknown rate tuple '" + name + "'");
}

std::vector<std::string> list(std::initializer_list<const char*> v) { return {v.begin(), v.end()}; }

// Default parameter tuples of the bilinear estimates, reused by the
// homogeneity check.
Ratio bilinear(const BilinearContext& ctx, const std::string& which, const SpectralCoefficients& f,
               const SpectralCoefficients& g) {
  if (which == "lowhigh") return lowhigh_estimate_ratio(ctx, f, g, 1.0, kTwo, kInf, kTwo, kTwo);
  if (which == "negative_lowhigh") return negative_s_lowhigh_ratio(ctx, f, g, -0.5, 1.0, kTwo, kInf, kTwo, kTwo);
  if (which == "resonant") return resonant_estimate_ratio(ctx, f, g, 0.5, 0.5, kOne, kTwo, kTwo, kOne, kTwo, kTwo);
  if (which == "product") return product_estimate_ratio(ctx, f, g, 1.0, kTwo, kTwo, kInf, kInf, kTwo, kTwo);
  if (which == "negative_positive")
    return negative_positive_product_ratio(ctx, f, g, -0.5, 1.0, kTwo, kTwo, kInf, kTwo);
  throw ParameterError("unknown estimate '" + which + "'");
}

std::vector<CheckInfo> build_registry() {
  std::vector<CheckInfo> r;
  auto add = [&r](CheckInfo c) { r.push_back(std::move(c)); };

  // ---- partition
  add({"partition.completeness", "partition", list({"build_partition"}), Pairing::none, CheckKind::tolerance, 1e-12,
       {{"points", {"10000"}}}, "max |Σ_j φ_j(λ) - 1| on log-spaced λ in [d, 2^{j_max}]; 1 if more than two consecutive blocks overlap",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember*, const CorpusMember*) {
         const DyadicPartition& P = ctx.space().partition();
         const int n = ps.integer("points");
         const double lo = P.dim(), hi = std::ldexp(1.0, P.j_max());
         double worst = 0.0;
         for (int k = 0; k < n; ++k) {
           const double lam = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (n - 1));
           double sum = 0.0;
           int first = 0, count = 0;
           for (int j = P.j0() - 2; j <= P.j_max() + 2; ++j) {
             const double v = DyadicPartition::phi(j, lam);
             if (v < 0.0) return Outcome{1.0, {"negative"}};
             if (v > 0.0) {
               if (count == 0) first = j;
               if (j - first >= 2) return Outcome{1.0, {"overlap"}};
               ++count;
             }
             sum += v;
           }
           worst = std::max(worst, std::abs(sum - 1.0));
         }
         return Outcome{worst, {}};
       }});
  add({"partition.blocks", "partition", list({"lp_block", "apply_multiplier"}), Pairing::single, CheckKind::tolerance,
       1e-10, {}, "∥Σ_{j0}^{j_max} f_j - f∥ / ∥f∥, and any mass below j0",
       [](const SuiteContext& ctx, const ParamSet&, const CorpusMember* f, const CorpusMember*) {
         const DyadicPartition& P = ctx.space().partition();
         SpectralCoefficients acc(f->c.basis());
         for (int j = P.j0(); j <= P.j_max(); ++j) acc += lp_block(P, j, f->c);
         double v = rel_diff(acc, f->c, f->c.l2_norm());
         for (int j = P.j0() - 3; j < P.j0(); ++j) v = std::max(v, lp_block(P, j, f->c).l2_norm());
         const auto id = apply_multiplier(SymbolFn::one(), f->c);
         v = std::max(v, rel_diff(id, f->c, f->c.l2_norm()));
         return Outcome{v, {}};
       }});
  add({"partition.widened", "partition", list({"widened_block", "low_block"}), Pairing::single, CheckKind::tolerance,
       1e-12, {}, "max_j ∥Φ_j φ_j f - φ_j f∥ and ∥ψf + Σ_{j>=1} f_j - f∥, relative to ∥f∥",
       [](const SuiteContext& ctx, const ParamSet&, const CorpusMember* f, const CorpusMember*) {
         const DyadicPartition& P = ctx.space().partition();
         const double n = f->c.l2_norm();
         double v = 0.0;
         SpectralCoefficients acc = low_block(P, f->c);
         for (int j = P.j0(); j <= P.j_max(); ++j) {
           const auto fj = lp_block(P, j, f->c);
           v = std::max(v, rel_diff(widened_block(P, j, fj), fj, n));
           if (j >= 1) acc += fj;
         }
         v = std::max(v, rel_diff(acc, f->c, n));
         return Outcome{v, {}};
       }});
  add({"partition.h_power", "partition", list({"apply_H_power"}), Pairing::single, CheckKind::tolerance, 1e-12,
       {{"alpha", {"1", "2", "3.5"}}}, "∥H^{-α/2} H^{α/2} f - f∥ / ∥f∥",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const double a = ps.num("alpha");
         return Outcome{rel_diff(apply_H_power(-a, apply_H_power(a, f->c)), f->c, f->c.l2_norm()), {}};
       }});

  // ---- kernels (d = 1, own bases)
  add({"kernels.uniform", "kernels", list({"multiplier_kernel", "operator_norm"}), Pairing::none,
       CheckKind::tolerance, 0.5, {{"p", {"1", "inf"}}, {"j_min", {"0"}}, {"j_max", {"5"}}},
       "max_j |∥φ_j(√H)∥_{p→p} - median| / median",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember*, const CorpusMember*) {
         const bool one = !ps.exponent("p").is_infinite();
         if (ps.exponent("p").value() != 1.0 && one) throw ParameterError("kernel norms need p in {1, inf}");
         std::vector<double> v;
         Outcome o;
         for (int j = ps.integer("j_min"); j <= ps.integer("j_max"); ++j) {
           const KernelNorms& k = block_memo().get(j, [j] { return block_kernel_norms(j); });
           v.push_back(one ? k.l1 : k.linf);
           if (!k.resolved) o.flags.push_back("unresolved_j" + std::to_string(j));
         }
         std::vector<double> s = v;
         std::sort(s.begin(), s.end());
         const double med = s.size() % 2 ? s[s.size() / 2] : 0.5 * (s[s.size() / 2 - 1] + s[s.size() / 2]);
         for (double x : v) o.value = std::max(o.value, std::abs(x - med) / med);
         return o;
       }});
  add({"kernels.scaling", "kernels", list({"multiplier_kernel", "operator_norm"}), Pairing::none,
       CheckKind::tolerance, 3.0,
       {{"pair", {"1:0", "0:1", "1:1", "2:0", "0:2"}}, {"j_min", {"1"}}, {"j_max", {"5"}}},
       "max/min over j of ∥x^α ∂^β φ_j(√H)∥_{1→1} / 2^{(α+β)j}",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember*, const CorpusMember*) {
         const auto [a, b] = ladder_pair(ps.raw("pair"));
         double lo = INFINITY, hi = 0.0;
         Outcome o;
         for (int j = ps.integer("j_min"); j <= ps.integer("j_max"); ++j) {
           const KernelNorms k = poly_diff_kernel_norm(j, a, b);
           const double v = k.l1 / std::ldexp(1.0, (a + b) * j);
           lo = std::min(lo, v);
           hi = std::max(hi, v);
           if (!k.resolved) o.flags.push_back("unresolved_j" + std::to_string(j));
         }
         o.value = hi / lo;
         return o;
       }});

  // ---- ladder (p = 2)
  add({"ladder.poly_diff", "ladder", list({"apply_H_power"}), Pairing::single, CheckKind::constant, 1.35,
       {{"pair", {"1:0", "0:1", "1:1", "2:0", "0:2"}}}, "∥x^α ∇^β f∥_{L²} / ∥H^{(|α|+|β|)/2} f∥_{L²} (first axis)",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const auto [a, b] = ladder_pair(ps.raw("pair"));
         const int al[2] = {a, 0}, be[2] = {b, 0};
         const std::size_t d = std::size_t(f->c.basis().dim());
         return Outcome{poly_diff_ratio(std::span(al, d), std::span(be, d), f->c), {}};
       }});
  add({"ladder.oscillator_split", "ladder", {}, Pairing::single, CheckKind::constant, 2.2,
       {{"side", {"upper", "lower"}}}, "∥Hf∥ / (∥Δf∥ + ∥|x|²f∥) (upper) and its inverse (lower)",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const auto [a, b] = oscillator_split_ratios(f->c);
         return Outcome{ps.raw("side") == "upper" ? a : b, {}};
       }});

  // ---- Besov norms
  add({"besov.q_monotone", "besov", list({"besov_norm", "lp_norm"}), Pairing::single, CheckKind::tolerance, 0.0,
       {{"s", {"0", "1"}}, {"p", {"1", "2", "inf"}}}, "largest relative increase of ∥f∥_{B^s_{p,q}} along q = 1, 2, 4, ∞",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const double s = ps.num("s");
         const Exponent p = ps.exponent("p");
         const auto blocks = ctx.space().block_lp_norms(f->c, p);
         const int j0 = ctx.space().partition().j0();
         double prev = INFINITY, worst = 0.0;
         Outcome o;
         for (Exponent q : {kOne, kTwo, Exponent::finite(4.0), kInf}) {
           const BlockProfile bp = besov_from_blocks(blocks, j0, s, q);
           if (bp.tail_unresolved) o.flags.push_back("tail");
           if (std::isfinite(prev) && prev > 0.0) worst = std::max(worst, (bp.value - prev) / prev);
           prev = bp.value;
         }
         o.value = worst;
         return o;
       }});
  add({"besov.lifting", "besov", list({"apply_H_power", "besov_norm"}), Pairing::single, CheckKind::constant, 1.65,
       {{"alpha", {"-2", "-1", "1", "2"}}, {"s", {"0.5"}}, {"p", {"2", "inf"}}, {"q", {"2"}}},
       "∥H^{α/2} f∥_{B^s_{p,q}} / ∥f∥_{B^{s+α}_{p,q}}",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         return from(lifting_ratio(ctx.space(), f->c, ps.num("alpha"), ps.num("s"), ps.exponent("p"),
                                   ps.exponent("q")));
       }});
  add({"besov.pairing", "duality", list({"duality_pairing"}), Pairing::pair, CheckKind::tolerance, 1e-10, {},
       "|Σ_j <φ_j f, Φ_j g> - <f, g>| / (∥f∥ ∥g∥)",
       [](const SuiteContext& ctx, const ParamSet&, const CorpusMember* f, const CorpusMember* g) {
         const complex v = duality_pairing(ctx.space(), f->c, g->c);
         return Outcome{std::abs(v - inner(f->c, g->c)) / (f->c.l2_norm() * g->c.l2_norm()), {}};
       }});
  add({"besov.embedding", "embedding", list({"embedding_ratio"}), Pairing::single, CheckKind::constant, 0.7,
       {{"s", {"0", "0.5"}}, {"r", {"1"}}, {"p", {"2", "inf"}}, {"q", {"2"}}},
       "∥f∥_{B^s_{p,q}} / ∥f∥_{B^{s+d(1/r-1/p)}_{r,q}}",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         return from(embedding_ratio(ctx.space(), f->c, ps.num("s"), ps.exponent("r"), ps.exponent("p"),
                                     ps.exponent("q")));
       }});
  add({"besov.sandwich", "sandwich", list({"sandwich_check", "lp_norm"}), Pairing::single, CheckKind::constant, 1.45,
       {{"p", {"1", "2", "inf"}}, {"side", {"lower", "upper"}}},
       "∥f∥_{B^0_{p,∞}} / ∥f∥_{L^p} (lower) and ∥f∥_{L^p} / ∥f∥_{B^0_{p,1}} (upper)",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const auto [lo, up] = sandwich_check(ctx.space(), f->c, ps.exponent("p"));
         return from(ps.raw("side") == "lower" ? lo : up);
       }});
  add({"besov.interpolation", "interpolation", list({"interpolation_check"}), Pairing::single, CheckKind::constant,
       2.85,
       {{"s", {"0.5"}}, {"s0", {"1"}}, {"p", {"2"}}, {"r", {"2"}}, {"r0", {"2"}}, {"theta", {"0.5"}}},
       "∥f∥_{B^s_{p,1}} / (∥f∥_{B^0_{r,∞}}^θ ∥f∥_{B^{s0}_{r0,∞}}^{1-θ})",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         InterpolationParams ip;
         ip.s = ps.num("s");
         ip.s0 = ps.num("s0");
         ip.p = ps.exponent("p");
         ip.r = ps.exponent("r");
         ip.r0 = ps.exponent("r0");
         ip.theta = ps.num("theta");
         return from(interpolation_check(ctx.space(), f->c, ip));
       }});

  // ---- Bony decomposition
  add({"bony.completeness", "bony", list({"product", "bony_decompose"}), Pairing::pair, CheckKind::tolerance, 1e-8,
       {}, "∥P(fg) - (f≺g + f≻g + f⊙g)∥_{L²} / (∥f∥ ∥g∥)",
       [](const SuiteContext& ctx, const ParamSet&, const CorpusMember* f, const CorpusMember* g) {
         const auto& eng = ctx.bilinear().engine();
         const Product fg = eng.product(f->c, g->c);
         const BonyPieces b = eng.bony(f->c, g->c, ctx.space().partition(), ctx.config().n0);
         Outcome o{rel_diff(b.low_high + b.high_low + b.resonant, fg.value, f->c.l2_norm() * g->c.l2_norm()), {}};
         if (fg.aliased || b.aliased) o.flags.push_back("aliased");
         return o;
       }});
  add({"bony.regrouping", "bony", list({"bony_decompose"}), Pairing::pair, CheckKind::tolerance, 1e-10,
       {{"n0", {"1", "3"}}}, "∥Σ pieces(N0) - Σ pieces(config N0)∥_{L²} / (∥f∥ ∥g∥)",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember* g) {
         const auto& eng = ctx.bilinear().engine();
         const auto& P = ctx.space().partition();
         const BonyPieces a = eng.bony(f->c, g->c, P, ctx.config().n0);
         const BonyPieces b = eng.bony(f->c, g->c, P, ps.integer("n0"));
         return Outcome{rel_diff(a.low_high + a.high_low + a.resonant, b.low_high + b.high_low + b.resonant,
                                 f->c.l2_norm() * g->c.l2_norm()),
                        {}};
       }});
  add({"bony.symmetry", "bony", list({"bony_decompose"}), Pairing::pair, CheckKind::tolerance, 0.0, {},
       "max |f≺g of (f, g) - f≻g of (g, f)| over coefficients (must be exactly 0)",
       [](const SuiteContext& ctx, const ParamSet&, const CorpusMember* f, const CorpusMember* g) {
         const auto& eng = ctx.bilinear().engine();
         const auto& P = ctx.space().partition();
         const BonyPieces a = eng.bony(f->c, g->c, P, ctx.config().n0);
         const BonyPieces b = eng.bony(g->c, f->c, P, ctx.config().n0);
         double v = 0.0;
         for (std::size_t i = 0; i < a.low_high.size(); ++i) {
           v = std::max(v, std::abs(a.low_high[i] - b.high_low[i]));
           v = std::max(v, std::abs(a.high_low[i] - b.low_high[i]));
         }
         return Outcome{v, {}};
       }});

  // ---- paraproduct estimates
  add({"para.lowhigh", "paraproduct", list({"lowhigh_estimate_ratio"}), Pairing::pair, CheckKind::constant, 0.35,
       {{"s", {"0.5", "1", "2"}}, {"p", {"2"}}, {"p1", {"inf"}}, {"p2", {"2"}}, {"q", {"2"}}},
       "∥f≺g∥_{B^s_{p,q}} / (∥f∥_{L^{p1}} ∥g∥_{B^s_{p2,q}})",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember* g) {
         return from(lowhigh_estimate_ratio(ctx.bilinear(), f->c, g->c, ps.num("s"), ps.exponent("p"),
                                            ps.exponent("p1"), ps.exponent("p2"), ps.exponent("q")));
       }});
  add({"para.negative_lowhigh", "paraproduct", list({"negative_s_lowhigh_ratio"}), Pairing::pair,
       CheckKind::constant, 0.26,
       {{"s", {"-0.5"}}, {"r", {"1"}}, {"p", {"2"}}, {"p1", {"inf"}}, {"p2", {"2"}}, {"q", {"2"}}},
       "∥f≺g∥_{B^{s+r}_{p,q}} / (∥f∥_{B^s_{p1,∞}} ∥g∥_{B^r_{p2,q}}), s < 0",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember* g) {
         return from(negative_s_lowhigh_ratio(ctx.bilinear(), f->c, g->c, ps.num("s"), ps.num("r"), ps.exponent("p"),
                                              ps.exponent("p1"), ps.exponent("p2"), ps.exponent("q")));
       }});
  add({"para.resonant", "paraproduct", list({"resonant_estimate_ratio"}), Pairing::pair, CheckKind::constant, 3.05,
       {{"s1", {"0.5"}}, {"s2", {"0.5"}}, {"p", {"1"}}, {"p1", {"2"}}, {"p2", {"2"}}, {"q", {"1"}}, {"q1", {"2"}},
        {"q2", {"2"}}},
       "∥f⊙g∥_{B^{s1+s2}_{p,q}} / (∥f∥_{B^{s1}_{p1,q1}} ∥g∥_{B^{s2}_{p2,q2}})",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember* g) {
         return from(resonant_estimate_ratio(ctx.bilinear(), f->c, g->c, ps.num("s1"), ps.num("s2"),
                                             ps.exponent("p"), ps.exponent("p1"), ps.exponent("p2"),
                                             ps.exponent("q"), ps.exponent("q1"), ps.exponent("q2")));
       }});
  add({"product.estimate", "product", list({"product_estimate_ratio", "product"}), Pairing::pair,
       CheckKind::constant, 0.6,
       {{"s", {"1"}}, {"p", {"2"}}, {"p1", {"2"}}, {"p2", {"inf"}}, {"p3", {"inf"}}, {"p4", {"2"}}, {"q", {"2"}}},
       "∥fg∥_{B^s_{p,q}} / (∥f∥_{B^s_{p1,q}} ∥g∥_{L^{p2}} + ∥f∥_{L^{p3}} ∥g∥_{B^s_{p4,q}})",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember* g) {
         return from(product_estimate_ratio(ctx.bilinear(), f->c, g->c, ps.num("s"), ps.exponent("p"),
                                            ps.exponent("p1"), ps.exponent("p2"), ps.exponent("p3"),
                                            ps.exponent("p4"), ps.exponent("q")));
       }});
  add({"product.negative_positive", "product", list({"negative_positive_product_ratio"}), Pairing::pair,
       CheckKind::constant, 1.05,
       {{"s", {"-0.5"}}, {"r", {"1"}}, {"p", {"2"}}, {"p1", {"2"}}, {"p2", {"inf"}}, {"q", {"2"}}},
       "∥fg∥_{B^s_{p,q}} / (∥f∥_{B^s_{p1,q}} ∥g∥_{B^r_{p2,q}}), s < 0 < r",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember* g) {
         return from(negative_positive_product_ratio(ctx.bilinear(), f->c, g->c, ps.num("s"), ps.num("r"),
                                                     ps.exponent("p"), ps.exponent("p1"), ps.exponent("p2"),
                                                     ps.exponent("q")));
       }});
  add({"product.homogeneity", "product", {}, Pairing::pair, CheckKind::tolerance, 1e-12,
       {{"estimate", {"lowhigh", "negative_lowhigh", "resonant", "product", "negative_positive"}}},
       "|ratio(10 f, g/4) - ratio(f, g)| / ratio(f, g)",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember* g) {
         const std::string& e = ps.raw("estimate");
         const Ratio a = bilinear(ctx.bilinear(), e, f->c, g->c);
         const Ratio b = bilinear(ctx.bilinear(), e, complex(10.0) * f->c, complex(0.25) * g->c);
         Outcome o{a.value > 0.0 ? std::abs(b.value - a.value) / a.value : std::abs(b.value), {}};
         if (a.zero_input) o.flags.push_back("zero_input");
         return o;
       }});

  // ---- heat flow and kernels
  add({"heat.law", "heat", list({"heat_apply"}), Pairing::single, CheckKind::tolerance, 1e-12,
       {{"t1", {"0.05"}}, {"t2", {"0.2"}}}, "∥e^{-t1 H} e^{-t2 H} f - e^{-(t1+t2)H} f∥ / ∥f∥",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const double a = ps.num("t1"), b = ps.num("t2");
         return Outcome{rel_diff(heat_apply(a, heat_apply(b, f->c)), heat_apply(a + b, f->c), f->c.l2_norm()), {}};
       }});
  add({"heat.mehler", "heat", list({"mehler_kernel", "multiplier_kernel"}), Pairing::none, CheckKind::tolerance,
       1e-8, {{"t", {"0.1", "0.5", "1"}}, {"N", {"128"}}, {"half_width", {"8"}}, {"spacing", {"0.125"}}},
       "max |Mehler - spectral kernel| on the grid; inf if any Mehler entry is not positive",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember*, const CorpusMember*) {
         const Grid g(1, ps.num("half_width"), ps.num("spacing"));
         const double t = ps.num("t");
         const KernelMatrix closed = mehler_kernel(t, g);
         const KernelMatrix spec = multiplier_kernel(SymbolFn::heat(t), g, ps.integer("N"));
         Outcome o;
         for (std::size_t i = 0; i < closed.values.size(); ++i) {
           if (!(closed.values[i] > 0.0)) return Outcome{INFINITY, {"nonpositive"}};
           o.value = std::max(o.value, std::abs(closed.values[i] - spec.values[i]));
         }
         if (!spec.resolved) o.flags.push_back("unresolved");
         return o;
       }});
  add({"heat.gaussian_bound", "heat", list({"mehler_kernel"}), Pairing::none, CheckKind::tolerance, 1.0,
       {{"t", {"0.1", "0.5", "1"}}, {"C", {"8"}}, {"half_width", {"12"}}, {"spacing", {"0.0625"}}},
       "max K_t(x,y) t^{1/2} e^{|x-y|²/(Ct)}",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember*, const CorpusMember*) {
         return Outcome{gaussian_bound_ratio(ps.num("t"), Grid(1, ps.num("half_width"), ps.num("spacing")),
                                             ps.num("C")),
                        {}};
       }});
  add({"heat.contraction", "heat", list({"smoothing_ratio"}), Pairing::single, CheckKind::constant, 1.25,
       {{"s", {"0", "1"}}, {"p", {"2", "inf"}}, {"q", {"2"}}},
       "max over t in {1e-3, 1e-2, 0.1, 1} of ∥e^{-tH} f∥_{B^s_{p,q}} / ∥f∥_{B^s_{p,q}}",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const double s = ps.num("s");
         const Exponent p = ps.exponent("p"), q = ps.exponent("q");
         Outcome o;
         for (double t : {1e-3, 1e-2, 0.1, 1.0}) {
           const Ratio r = smoothing_ratio(ctx.space(), f->c, t, {s, s, p, p, q, q});
           o.value = std::max(o.value, r.value);
         }
         return o;
       }});

  // ---- smoothing
  add({"smoothing.ratio", "smoothing", list({"smoothing_ratio"}), Pairing::single, CheckKind::constant, 0.52,
       {{"s1", {"0"}}, {"s2", {"1"}}, {"p1", {"2"}}, {"p2", {"2", "inf"}}, {"q1", {"2"}}, {"q2", {"2"}}},
       "max over 7 log-spaced t in [1e-3, 1] of ∥e^{-tH} f∥_{B^{s2}_{p2,q2}} t^κ / ∥f∥_{B^{s1}_{p1,q1}}",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const SmoothingParams sp{ps.num("s1"), ps.num("s2"), ps.exponent("p1"), ps.exponent("p2"),
                                  ps.exponent("q1"), ps.exponent("q2")};
         Outcome o;
         for (double t : log_times(1e-3, 1.0, 7)) {
           const Ratio r = smoothing_ratio(ctx.space(), f->c, t, sp);
           o.value = std::max(o.value, r.value);
           if (r.zero_input && o.flags.empty()) o.flags.push_back("zero_input");
         }
         return o;
       }});
  add({"smoothing.rates", "smoothing", list({"smoothing_rate_fit"}), Pairing::none, CheckKind::tolerance, 0.15,
       {{"tuple", {"A", "B", "C", "D"}}}, "|fitted slope - predicted| / |predicted| on a broadband input",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember*, const CorpusMember*) {
         const RateFit& fit = cached_rate(ps.raw("tuple"));
         Outcome o{fit.relative_error, {}};
         char buf[96];
         std::snprintf(buf, sizeof buf, "slope=%.6f;predicted=%.6f", fit.slope, fit.predicted);
         o.flags.push_back(buf);
         if (fit.narrowband) {
           o.flags.push_back("narrowband");
           o.value = INFINITY;
         }
         return o;
       }});
  add({"smoothing.rate_gap", "smoothing", list({"smoothing_rate_fit"}), Pairing::none, CheckKind::tolerance, 0.20,
       {{"low", {"C"}}, {"high", {"D"}}},
       "dimension dependence: |(slope_low - slope_high) - predicted gap| / |predicted gap|",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember*, const CorpusMember*) {
         const RateFit& a = cached_rate(ps.raw("low"));
         const RateFit& b = cached_rate(ps.raw("high"));
         const double gap = a.slope - b.slope, want = a.predicted - b.predicted;
         if (want == 0.0) throw ParameterError("rate tuples predict no gap");
         Outcome o{std::abs(gap - want) / std::abs(want), {}};
         char buf[96];
         std::snprintf(buf, sizeof buf, "gap=%.6f;predicted=%.6f", gap, want);
         o.flags.push_back(buf);
         return o;
       }});

  // ---- continuity
  add({"continuity.deficit", "continuity", list({"continuity_deficit"}), Pairing::single, CheckKind::constant, 1.75,
       {{"s", {"0", "1"}}, {"p", {"2", "inf"}}, {"q", {"1", "2"}}},
       "max over t = 1e-2 .. 1e-6 of ∥e^{-tH}f - f∥_{B^s_{p,q}} / (t ∥f∥_{B^{s+2}_{p,q}})",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const double s = ps.num("s");
         const Exponent p = ps.exponent("p"), q = ps.exponent("q");
         const double ts[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
         const auto d = continuity_deficit(ctx.space(), f->c, s, p, q, ts);
         const double top = besov(ctx.space(), f->c, s + 2.0, p, q);
         Outcome o;
         if (top == 0.0) return Outcome{0.0, {"zero_input"}};
         for (std::size_t k = 0; k < d.size(); ++k) {
           o.value = std::max(o.value, d[k] / (ts[k] * top));
           if (k > 0 && !(d[k] < d[k - 1])) o.flags.push_back("nonmonotone");
         }
         return o;
       }});
  add({"continuity.weak", "continuity", list({"weak_continuity_pairing"}), Pairing::pair, CheckKind::tolerance,
       1.0, {}, "max over t = 1e-2 .. 1e-6 of |Σ_j <φ_j(e^{-tH}f - f), φ_j g>| / (t ∥Hf∥ ∥g∥); inf unless |pairing| decreases as t -> 0",
       [](const SuiteContext& ctx, const ParamSet&, const CorpusMember* f, const CorpusMember* g) {
         const double scale = apply_H_power(2.0, f->c).l2_norm() * g->c.l2_norm();
         if (scale == 0.0) return Outcome{0.0, {"zero_input"}};
         Outcome o;
         double prev = INFINITY;
         for (double t : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
           const double v = std::abs(weak_continuity_pairing(ctx.space(), f->c, g->c, t));
           o.value = std::max(o.value, v / (t * scale));
           if (v > prev) return Outcome{INFINITY, {"nonmonotone"}};
           prev = v;
         }
         return o;
       }});

  // ---- semigroup characterization
  add({"equivalence.two_sided", "equivalence", list({"semigroup_norm"}), Pairing::single, CheckKind::constant, 3.8,
       {{"spq", {"1:2:2", "0.5:2:1", "0:inf:inf"}}, {"X", {"lp", "besov:1", "besov:2", "besov:inf"}}, {"s0", {"1"}}},
       "max(R, 1/R), R = semigroup norm / ∥f∥_{B^s_{p,q}}",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const std::string& t = ps.raw("spq");
         const auto c1 = t.find(':'), c2 = t.find(':', c1 + 1);
         if (c1 == std::string::npos || c2 == std::string::npos) throw ParameterError("spq must be 's:p:q'");
         SemigroupNormParams sp;
         sp.s = std::stod(t.substr(0, c1));
         sp.p = Exponent::parse(t.substr(c1 + 1, c2 - c1 - 1));
         sp.q = Exponent::parse(t.substr(c2 + 1));
         sp.s0 = ps.num("s0");
         const std::string& x = ps.raw("X");
         if (x == "lp") {
           sp.kind = SemigroupNormParams::Kind::lebesgue;
         } else if (x.rfind("besov:", 0) == 0) {
           sp.kind = SemigroupNormParams::Kind::besov;
           sp.r = Exponent::parse(x.substr(6));
         } else {
           throw ParameterError("X must be 'lp' or 'besov:r'");
         }
         const SemigroupNorm v = semigroup_norm(ctx.space(), f->c, sp);
         const Ratio r = safe_ratio(v.value, besov(ctx.space(), f->c, sp.s, sp.p, sp.q));
         if (r.zero_input) return Outcome{0.0, {"zero_input"}};
         Outcome o{std::max(r.value, 1.0 / r.value), {}};
         if (v.cutoff_error > 1e-6 * v.value) o.flags.push_back("cutoff");
         return o;
       }});

  // ---- maximal regularity
  add({"maxreg.manufactured", "maxreg", list({"duhamel_solve"}), Pairing::none, CheckKind::tolerance, 1e-8,
       {{"steps", {"10000"}}}, "max |u_k - e^{-t_k}| for u = e^{-t} h_3 recovered from its forcing",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember*, const CorpusMember*) {
         return Outcome{manufactured_error(ps.integer("steps")), {}};
       }});
  add({"maxreg.residual", "maxreg", list({"duhamel_solve"}), Pairing::single, CheckKind::tolerance, 1e-12,
       {{"T", {"2"}}, {"steps", {"60"}}}, "per-mode Duhamel residual, u0 = f, forcing cos(t) f",
       [](const SuiteContext&, const ParamSet& ps, const CorpusMember* f, const CorpusMember*) {
         const auto t = max_reg_time_grid(ps.num("T"), ps.integer("steps"));
         std::vector<SpectralCoefficients> force;
         for (double tk : t) force.push_back(complex(std::cos(tk)) * f->c);
         return Outcome{duhamel_residual(duhamel_solve(f->c, force, t)), {}};
       }});
  add({"maxreg.ratio", "maxreg", list({"max_reg_ratio", "duhamel_solve"}), Pairing::pair, CheckKind::constant, 3.15,
       {{"q", {"1", "2", "inf"}}, {"s", {"0"}}, {"p", {"2"}}, {"T", {"10"}}, {"steps", {"200"}}},
       "(∥u'∥ + ∥Hu∥) / (∥u0∥_{B^{s+2-2/q}} + ∥f∥), u0 = f, forcing e^{-t} g",
       [](const SuiteContext& ctx, const ParamSet& ps, const CorpusMember* f, const CorpusMember* g) {
         const auto t = max_reg_time_grid(ps.num("T"), ps.integer("steps"));
         std::vector<SpectralCoefficients> force;
         for (double tk : t) force.push_back(complex(std::exp(-tk)) * g->c);
         const MaxRegResult m = max_reg_ratio(ctx.space(), duhamel_solve(f->c, force, t), ps.num("s"),
                                              ps.exponent("p"), ps.exponent("q"));
         Outcome o{m.ratio, {}};
         if (m.zero_input) o.flags.push_back("zero_input");
         if (m.tail_bound > 1e-6 * (m.du_norm + m.hu_norm)) o.flags.push_back("tail");
         return o;
       }});
  return r;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> r = build_registry();
  return r;
}

KernelPlan kernel_plan(int j) {
  if (j < 0) throw ParameterError("kernel plan needs j >= 0");
  const int n = (int(std::ldexp(4.0, 2 * j)) - 1) / 2 + 1;
  const double h = std::min(1.0 / 16, std::ldexp(1.0, -(j + 1)));
  const auto stride = std::size_t(std::max(1.0, std::round((1.0 / 16) / h)));
  return {n, Grid(1, std::ldexp(2.0, j) + 6.0, h), stride};
}

KernelNorms block_kernel_norms(int j) {
  const KernelPlan plan = kernel_plan(j);
  const KernelFactors f = multiplier_factors(SymbolFn::block(j), plan.grid, plan.max_degree);
  return {operator_norm(f, kOne, plan.stride), operator_norm(f, kInf, plan.stride), f.resolved};
}

KernelNorms poly_diff_kernel_norm(int j, int alpha, int beta) {
  const KernelPlan plan = kernel_plan(j);
  const KernelFactors f = poly_diff_factors(alpha, beta, SymbolFn::block(j), plan.grid, plan.max_degree);
  return {operator_norm(f, kOne, plan.stride), NAN, f.resolved};
}

const std::vector<RateTuple>& rate_tuples() {
  static const std::vector<RateTuple> t = {
      {"A", 1, 4096, {0.0, 1.0, kTwo, kTwo, kInf, kTwo}, 1e-3, 1e-1, 12},
      {"B", 1, 4096, {0.0, 2.0, kTwo, kTwo, kInf, kTwo}, 1e-3, 1e-1, 12},
      {"C", 1, 4096, {0.0, 0.0, kOne, kTwo, kInf, kTwo}, 1e-3, 3e-2, 12},
      {"D", 2, 1500, {0.0, 0.0, kOne, kTwo, kInf, kTwo}, 5e-3, 5e-2, 12},
  };
  return t;
}

RateFit run_rate_tuple(const RateTuple& tuple) {
  const HermiteBasis b(tuple.dim, tuple.max_degree);
  const Space sp(b);
  SpectralCoefficients f(b);
  if (tuple.params.p1 == kTwo) {
    // c_n = (2|n|+d)^{-1/2}: B^0_{2,∞} is the natural home
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(b.eigenvalue(b.total_degree(i)), -0.5);
  } else {
    // point mass at the origin projected onto the span
    std::vector<double> h0(b.axis_size());
    for (std::size_t n = 0; n < h0.size(); n += 2) h0[n] = eval_hermite(int(n), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto n = b.multi_index(i);
      f[i] = b.dim() == 1 ? h0[std::size_t(n[0])] : h0[std::size_t(n[0])] * h0[std::size_t(n[1])];
    }
  }
  return smoothing_rate_fit(sp, f, tuple.params, tuple.t_min, tuple.t_max, tuple.samples);
}

double manufactured_error(int steps) {
  if (steps < 1) throw ParameterError("manufactured solution needs steps >= 1");
  const HermiteBasis b(1, 8);
  const auto h3 = SpectralCoefficients::unit(b, {3, 0});
  std::vector<double> t(std::size_t(steps) + 1);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = double(k) / steps;
  std::vector<SpectralCoefficients> force;
  for (double tk : t) force.push_back(complex(6.0 * std::exp(-tk)) * h3);
  const Trajectory tr = duhamel_solve(h3, force, t);
  double err = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) err = std::max(err, std::abs(tr.u[k][3] - std::exp(-t[k])));
  return err;
}

}  // namespace hbesov::harness

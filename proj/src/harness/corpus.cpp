#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>

#include "hbesov/besov.hpp"
#include "hbesov/errors.hpp"
#include "hbesov/harness/corpus.hpp"

namespace hbesov::harness {
namespace {

// splitmix64 as a stream: state advances by the golden gamma per draw.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t state) : state_(state) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64(state_ - 0x9e3779b97f4a7c15ULL);
  }
  double unit() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void normalize(SpectralCoefficients& c) {
  const double n = c.l2_norm();
  if (n > 0.0) c *= complex(1.0 / n);
}

using Values = std::map<std::string, double>;

std::vector<std::vector<std::pair<std::string, double>>> combos(const FamilySpec& f) {
  std::vector<std::vector<std::pair<std::string, double>>> out(1);
  for (const auto& [key, vals] : f.params) {
    std::vector<std::vector<std::pair<std::string, double>>> next;
    for (const auto& partial : out)
      for (double v : vals) {
        auto p = partial;
        p.emplace_back(key, v);
        next.push_back(std::move(p));
      }
    out = std::move(next);
  }
  return out;
}

double take(const Values& v, const std::string& key, const FamilySpec& f, std::optional<double> fallback = {}) {
  const auto it = v.find(key);
  if (it != v.end()) return it->second;
  if (fallback) return *fallback;
  throw ConfigError("family '" + f.family + "' needs parameter '" + key + "'", f.line);
}

int take_int(const Values& v, const std::string& key, const FamilySpec& f, std::optional<double> fallback = {}) {
  const double x = take(v, key, f, fallback);
  if (x < 0 || x != std::floor(x)) throw ConfigError("parameter '" + key + "' must be a non-negative integer", f.line);
  return int(x);
}

void check_keys(const FamilySpec& f, std::set<std::string> allowed) {
  for (const auto& p : f.params)
    if (!allowed.count(p.first))
      throw ConfigError("family '" + f.family + "' has no parameter '" + p.first + "'", f.line);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t Corpus::half_size() const {
  std::size_t named = 0, random = 0;
  for (const auto& m : members) (m.random ? random : named)++;
  return named + (random + 1) / 2;
}

const CorpusMember* Corpus::find(const std::string& id) const {
  for (const auto& m : members)
    if (m.id == id) return &m;
  return nullptr;
}

SpectralCoefficients random_member(const HermiteBasis& basis, std::uint64_t seed, int band) {
  SpectralCoefficients c(basis);
  SplitMix rng(seed);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto n = basis.multi_index(i);
    const double re = 2.0 * rng.unit() - 1.0, im = 2.0 * rng.unit() - 1.0;
    if (n[0] <= band && n[1] <= band) c[i] = {re, im};
  }
  normalize(c);
  return c;
}

SpectralCoefficients power_law(const HermiteBasis& basis, double gamma, std::uint64_t seed) {
  SpectralCoefficients c(basis);
  SplitMix rng(seed);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double theta = 2.0 * std::numbers::pi * rng.unit();
    c[i] = std::polar(std::pow(basis.eigenvalue(basis.total_degree(i)), -gamma), theta);
  }
  return c;
}

SpectralCoefficients gaussian_member(const HermiteBasis& basis, double a, double x0) {
  auto c = analyze(
      [a, x0](std::span<const double> x) {
        double r2 = (x[0] - x0) * (x[0] - x0);
        for (std::size_t i = 1; i < x.size(); ++i) r2 += x[i] * x[i];
        return complex(std::exp(-a * r2));
      },
      basis);
  normalize(c);
  return c;
}

SpectralCoefficients hermite_gaussian_member(const HermiteBasis& basis, int k, int k2, double a) {
  const auto H = [](int n, double x) {
    double h0 = 1.0, h1 = 2.0 * x;
    if (n == 0) return h0;
    for (int m = 1; m < n; ++m) {
      const double h2 = 2.0 * x * h1 - 2.0 * m * h0;
      h0 = h1;
      h1 = h2;
    }
    return h1;
  };
  auto c = analyze(
      [=](std::span<const double> x) {
        double v = H(k, x[0]) * std::exp(-a * x[0] * x[0]);
        if (x.size() > 1) v *= H(k2, x[1]) * std::exp(-a * x[1] * x[1]);
        return complex(v);
      },
      basis);
  normalize(c);
  return c;
}

Corpus generate_corpus(const CorpusSpec& spec, const HermiteBasis& basis) {
  Corpus out;
  std::set<std::string> ids;
  const int N = basis.max_degree();
  const bool two = basis.dim() == 2;
  auto add = [&](const FamilySpec& f, std::string id, SpectralCoefficients c, bool random) {
    if (!ids.insert(id).second) throw ConfigError("duplicate corpus member '" + id + "'", f.line);
    const double total = c.l2_norm();
    const int width = 2;
    const double tail = total > 0.0 ? std::sqrt(c.tail_energy(width)) / total : 0.0;
    if (tail_unresolved(c)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "corpus member '%s' is unresolved at N=%d: relative tail norm %.3g > %.0e on the top %d degrees",
                    id.c_str(), N, tail, kTailTolerance, width);
      throw ConfigError(buf, f.line);
    }
    out.members.push_back({std::move(id), f.family, std::move(c), random});
  };

  for (std::size_t fi = 0; fi < spec.families.size(); ++fi) {
    const FamilySpec& f = spec.families[fi];
    for (const auto& combo : combos(f)) {
      const Values v(combo.begin(), combo.end());
      if (f.family == "hermite") {
        check_keys(f, {"n", "n2"});
        const int n = take_int(v, "n", f), n2 = take_int(v, "n2", f, 0.0);
        if (n > N || n2 > N) throw ConfigError("hermite degree exceeds max_degree", f.line);
        if (n2 != 0 && !two) throw ConfigError("n2 needs dim 2", f.line);
        add(f, two ? "h_" + std::to_string(n) + "_" + std::to_string(n2) : "h_" + std::to_string(n),
            SpectralCoefficients::unit(basis, {n, n2}), false);
      } else if (f.family == "gaussian") {
        check_keys(f, {"a", "x0"});
        const double a = take(v, "a", f), x0 = take(v, "x0", f, 0.0);
        if (!(a > 0.0)) throw ConfigError("gaussian needs a > 0", f.line);
        add(f, "gauss_a" + short_num(a) + "_x" + short_num(x0), gaussian_member(basis, a, x0), false);
      } else if (f.family == "hermite_gaussian") {
        check_keys(f, {"k", "k2", "a"});
        const int k = take_int(v, "k", f), k2 = take_int(v, "k2", f, 0.0);
        const double a = take(v, "a", f);
        if (!(a > 0.0)) throw ConfigError("hermite_gaussian needs a > 0", f.line);
        std::string id = "hgauss_k" + std::to_string(k);
        if (two) id += "_" + std::to_string(k2);
        add(f, id + "_a" + short_num(a), hermite_gaussian_member(basis, k, k2, a), false);
      } else if (f.family == "power_law") {
        check_keys(f, {"gamma", "count"});
        const double g = take(v, "gamma", f);
        const int count = take_int(v, "count", f, 1.0);
        for (int k = 0; k < count; ++k) {
          const std::uint64_t seed = splitmix64(spec.seed ^ (0x100000000ULL * (fi + 1) + std::uint64_t(k)));
          auto c = power_law(basis, g, seed);
          normalize(c);
          add(f, "power_g" + short_num(g) + "_" + std::to_string(k), std::move(c), false);
        }
      } else {
        throw ConfigError("unknown corpus family '" + f.family + "'", f.line);
      }
    }
  }
  const int band = spec.band.value_or(N / 2);
  const FamilySpec random_family{"random", {}, 0};
  for (int i = 0; i < spec.random; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "rand_%04d", i);
    add(random_family, id, random_member(basis, spec.seed ^ std::uint64_t(i), std::min(band, N)), true);
  }
  return out;
}

}  // namespace hbesov::harness

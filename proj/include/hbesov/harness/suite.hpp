#pragma once

// Check registry and the suite runner. Each registered check names the
// library operations it exercises; `verify` must cover all of them.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hbesov/exponent.hpp"
#include "hbesov/harness/config.hpp"
#include "hbesov/harness/corpus.hpp"
#include "hbesov/harness/report.hpp"

namespace hbesov {
class Space;
class BilinearContext;
}

namespace hbesov::harness {

class ParamSet {
 public:
  std::vector<std::pair<std::string, std::string>> values;

  const std::string& raw(std::string_view key) const;
  double num(std::string_view key) const;
  int integer(std::string_view key) const;
  Exponent exponent(std::string_view key) const;
  /// "k=v;k=v" in grid order.
  std::string str() const;
};

/// Shared state for one suite run. Expensive contexts are built on demand.
class SuiteContext {
 public:
  SuiteContext(const ExperimentConfig& cfg, Corpus corpus);
  ~SuiteContext();

  const ExperimentConfig& config() const { return cfg_; }
  const Corpus& corpus() const { return corpus_; }
  const Space& space() const;
  const BilinearContext& bilinear() const;

 private:
  const ExperimentConfig& cfg_;
  Corpus corpus_;
  mutable std::unique_ptr<Space> space_;
  mutable std::unique_ptr<BilinearContext> bilinear_;
};

enum class Pairing { none, single, pair };
/// tolerance: value is an error against an exact identity.
/// constant: value is an empirical constant; doubling stability applies.
enum class CheckKind { tolerance, constant };

struct Outcome {
  double value = 0.0;
  std::vector<std::string> flags;
};

using CheckFn = std::function<Outcome(const SuiteContext&, const ParamSet&, const CorpusMember*,
                                      const CorpusMember*)>;

struct CheckInfo {
  std::string name;
  std::string group;
  std::vector<std::string> covers;
  Pairing pairing = Pairing::single;
  CheckKind kind = CheckKind::constant;
  double budget = 0.0;
  std::vector<ParamAxis> grid;
  std::string summary;
  CheckFn run;
};

/// Registry order fixes report order.
const std::vector<CheckInfo>& check_registry();
const CheckInfo* find_check(std::string_view name);
/// Operations of the spectral, Besov, paraproduct and semigroup layers that
/// the suite has to exercise.
const std::vector<std::string>& checker_operations();
std::vector<std::string> uncovered_operations();

/// Cartesian product of a parameter grid, last axis fastest.
std::vector<ParamSet> expand_grid(const std::vector<ParamAxis>& grid);

ExperimentReport run_suite(const ExperimentConfig& cfg);
/// Same, on an already generated corpus.
ExperimentReport run_suite(const ExperimentConfig& cfg, const Corpus& corpus);

}  // namespace hbesov::harness

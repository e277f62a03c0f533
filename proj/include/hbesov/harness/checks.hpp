#pragma once

// Fixed experiment setups shared by the registry, the CLI and the
// acceptance run.

#include <string>
#include <vector>

#include "hbesov/semigroup.hpp"
#include "hbesov/spectral.hpp"

namespace hbesov::harness {

/// Per-j basis and grid for the block-kernel sweeps: N_j just past
/// supp φ_j, L_j = 2^{j+1} + 6, h_j = min(1/16, 2^{-(j+1)}), and a column
/// stride that keeps the sampled y-spacing near 1/16.
struct KernelPlan {
  int max_degree;
  Grid grid;
  std::size_t stride;
};
KernelPlan kernel_plan(int j);

struct KernelNorms {
  double l1 = 0.0;
  double linf = 0.0;
  bool resolved = true;
};
/// ∥φ_j(√H)∥ on L¹ and L^∞, d = 1.
KernelNorms block_kernel_norms(int j);
/// ∥x^α ∂^β φ_j(√H)∥_{L¹→L¹}, d = 1.
KernelNorms poly_diff_kernel_norm(int j, int alpha, int beta);

/// Smoothing-rate experiments with broadband inputs:
///   A  d=1, c_n = (2n+1)^{-1/2}, N=4096, s: 0 -> 1, p = 2, t in [1e-3, 1e-1]
///   B  same input, s: 0 -> 2
///   C  d=1, c_n = h_n(0) (projected point mass), N=4096, p: 1 -> 2, t in [1e-3, 3e-2]
///   D  d=2, c_n = h_n1(0) h_n2(0), N=1500, p: 1 -> 2, t in [5e-3, 5e-2]
struct RateTuple {
  std::string name;
  int dim;
  int max_degree;
  SmoothingParams params;
  double t_min;
  double t_max;
  int samples;
};
const std::vector<RateTuple>& rate_tuples();
RateFit run_rate_tuple(const RateTuple& tuple);

/// Manufactured solution u = e^{-t} h_3, f = ∂_t u + Hu = 6 e^{-t} h_3,
/// d = 1, on `steps` uniform cells of [0, 1]; largest error in u.
double manufactured_error(int steps);

}  // namespace hbesov::harness

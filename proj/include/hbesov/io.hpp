#pragma once

// Flat-file formats. CSV: a header row, then one row per coefficient or
// grid node: index columns (n or n1,n2 / x or x1,x2), real, imag. Doubles
// are printed with 17 significant digits so files round-trip exactly.
//
// Binary container, all little-endian:
//   char[5] "HBSV1", u8 kind, u16 flags (bit 0: lossy coefficients or
//   unresolved kernel),
//   u32 d, u32 N, f64 L, f64 h, u64 P, u64 count, payload.
// Payloads by kind:
//   coefficients: count = basis size; count × (f64 re, f64 im)
//   grid:         count = node count, P = nodes per axis; count × (re, im)
//   kernel:       P = nodes per axis, count = P²; P nodes, P weights,
//                 then count values column-major
//   trajectory:   count = time samples; per sample f64 t followed by the
//                 basis-size (re, im) pairs of u(t)

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hbesov/hermite.hpp"
#include "hbesov/semigroup.hpp"
#include "hbesov/spectral.hpp"

namespace hbesov {

/// "%.17g"; infinities and NaN as "inf", "-inf", "nan".
std::string format_double(double v);
/// Quotes a field when it holds a comma, quote, CR or LF (RFC 4180).
std::string csv_field(const std::string& s);

void write_coefficients_csv(std::ostream& os, const SpectralCoefficients& c);
SpectralCoefficients read_coefficients_csv(std::istream& is);
void write_grid_csv(std::ostream& os, const GridFunction& f);

enum class ContainerKind : std::uint8_t { coefficients = 1, grid = 2, kernel = 3, trajectory = 4 };

struct ContainerHeader {
  ContainerKind kind = ContainerKind::coefficients;
  std::uint16_t flags = 0;
  std::uint32_t dim = 1;
  std::uint32_t max_degree = 0;
  double half_width = 0.0;
  double spacing = 0.0;
  std::uint64_t axis_points = 0;
  std::uint64_t count = 0;
};

ContainerHeader read_container_header(std::istream& is);

void write_coefficients_binary(std::ostream& os, const SpectralCoefficients& c);
SpectralCoefficients read_coefficients_binary(std::istream& is);

/// The basis degree is recorded for provenance only.
void write_grid_binary(std::ostream& os, const GridFunction& f, int max_degree);
GridFunction read_grid_binary(std::istream& is);

void write_kernel_binary(std::ostream& os, const KernelMatrix& k, const Grid& grid, int max_degree);
KernelMatrix read_kernel_binary(std::istream& is);

void write_trajectory_binary(std::ostream& os, const Trajectory& traj);
/// Time samples and states; forcing is not stored.
Trajectory read_trajectory_binary(std::istream& is);

}  // namespace hbesov

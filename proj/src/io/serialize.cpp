#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "hbesov/errors.hpp"
#include "hbesov/io.hpp"

namespace hbesov {
namespace {

constexpr char kMagic[5] = {'H', 'B', 'S', 'V', '1'};

template <class U>
void put(std::ostream& os, U v) {
  unsigned char b[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), sizeof(U));
}

void put_f64(std::ostream& os, double v) { put(os, std::bit_cast<std::uint64_t>(v)); }

template <class U>
U get(std::istream& is) {
  unsigned char b[sizeof(U)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(U))) throw FormatError("container truncated");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= U(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get<std::uint64_t>(is)); }

void write_header(std::ostream& os, const ContainerHeader& h) {
  os.write(kMagic, 5);
  put(os, static_cast<std::uint8_t>(h.kind));
  put(os, h.flags);
  put(os, h.dim);
  put(os, h.max_degree);
  put_f64(os, h.half_width);
  put_f64(os, h.spacing);
  put(os, h.axis_points);
  put(os, h.count);
}

void expect_kind(const ContainerHeader& h, ContainerKind k) {
  if (h.kind != k) throw FormatError("container holds a different payload kind");
}

void put_values(std::ostream& os, const SpectralCoefficients& c) {
  for (const complex& v : c.values()) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
}

void get_values(std::istream& is, SpectralCoefficients& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double re = get_f64(is);
    c[i] = {re, get_f64(is)};
  }
}

HermiteBasis basis_of(const ContainerHeader& h) {
  if (h.dim != 1 && h.dim != 2) throw FormatError("container dimension must be 1 or 2");
  return HermiteBasis(int(h.dim), int(h.max_degree));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else if (ch != '\r') {
      out.back() += ch;
    }
  }
  return out;
}

double parse_double(const std::string& s, int line) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw FormatError("line " + std::to_string(line) + ": not a number: '" + s + "'");
  return v;
}

int parse_index(const std::string& s, int line) {
  int v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || v < 0)
    throw FormatError("line " + std::to_string(line) + ": not a degree: '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void write_coefficients_csv(std::ostream& os, const SpectralCoefficients& c) {
  const HermiteBasis& b = c.basis();
  os << (b.dim() == 1 ? "n,re,im\n" : "n1,n2,re,im\n");
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto n = b.multi_index(i);
    os << n[0] << ',';
    if (b.dim() == 2) os << n[1] << ',';
    os << format_double(c[i].real()) << ',' << format_double(c[i].imag()) << '\n';
  }
}

SpectralCoefficients read_coefficients_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty coefficient file");
  const auto head = split_csv(line);
  int dim = 0;
  if (head == std::vector<std::string>{"n", "re", "im"}) dim = 1;
  else if (head == std::vector<std::string>{"n1", "n2", "re", "im"}) dim = 2;
  else throw FormatError("line 1: expected header 'n,re,im' or 'n1,n2,re,im'");
  struct Row {
    std::array<int, 2> n;
    complex v;
  };
  std::vector<Row> rows;
  int top = 0, lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (int(f.size()) != dim + 2) throw FormatError("line " + std::to_string(lineno) + ": wrong column count");
    Row r{{parse_index(f[0], lineno), dim == 2 ? parse_index(f[1], lineno) : 0},
          {parse_double(f[std::size_t(dim)], lineno), parse_double(f[std::size_t(dim) + 1], lineno)}};
    top = std::max({top, r.n[0], r.n[1]});
    rows.push_back(r);
  }
  SpectralCoefficients c(HermiteBasis(dim, top));
  for (const Row& r : rows) c[c.basis().flat_index(r.n)] = r.v;
  return c;
}

void write_grid_csv(std::ostream& os, const GridFunction& f) {
  const auto& x = f.grid.axis().nodes;
  const std::size_t p = x.size();
  os << (f.grid.dim() == 1 ? "x,re,im\n" : "x1,x2,re,im\n");
  for (std::size_t i = 0; i < f.re.size(); ++i) {
    if (f.grid.dim() == 1) os << format_double(x[i]) << ',';
    else os << format_double(x[i / p]) << ',' << format_double(x[i % p]) << ',';
    os << format_double(f.re[i]) << ',' << format_double(f.im[i]) << '\n';
  }
}

ContainerHeader read_container_header(std::istream& is) {
  char magic[5];
  if (!is.read(magic, 5) || std::memcmp(magic, kMagic, 5) != 0) throw FormatError("not an HBSV1 container");
  ContainerHeader h;
  const auto kind = get<std::uint8_t>(is);
  if (kind < 1 || kind > 4) throw FormatError("unknown container kind " + std::to_string(kind));
  h.kind = static_cast<ContainerKind>(kind);
  h.flags = get<std::uint16_t>(is);
  h.dim = get<std::uint32_t>(is);
  h.max_degree = get<std::uint32_t>(is);
  h.half_width = get_f64(is);
  h.spacing = get_f64(is);
  h.axis_points = get<std::uint64_t>(is);
  h.count = get<std::uint64_t>(is);
  return h;
}

void write_coefficients_binary(std::ostream& os, const SpectralCoefficients& c) {
  ContainerHeader h;
  h.kind = ContainerKind::coefficients;
  h.flags = c.lossy() ? 1 : 0;
  h.dim = std::uint32_t(c.basis().dim());
  h.max_degree = std::uint32_t(c.basis().max_degree());
  h.count = c.size();
  write_header(os, h);
  put_values(os, c);
}

SpectralCoefficients read_coefficients_binary(std::istream& is) {
  const ContainerHeader h = read_container_header(is);
  expect_kind(h, ContainerKind::coefficients);
  SpectralCoefficients c(basis_of(h));
  if (h.count != c.size()) throw FormatError("coefficient count does not match the basis");
  get_values(is, c);
  if (h.flags & 1) c.mark_lossy();
  return c;
}

void write_grid_binary(std::ostream& os, const GridFunction& f, int max_degree) {
  ContainerHeader h;
  h.kind = ContainerKind::grid;
  h.dim = std::uint32_t(f.grid.dim());
  h.max_degree = std::uint32_t(max_degree);
  h.half_width = f.grid.half_width();
  h.spacing = f.grid.spacing();
  h.axis_points = f.grid.axis_size();
  h.count = f.re.size();
  write_header(os, h);
  for (std::size_t i = 0; i < f.re.size(); ++i) {
    put_f64(os, f.re[i]);
    put_f64(os, f.im[i]);
  }
}

GridFunction read_grid_binary(std::istream& is) {
  const ContainerHeader h = read_container_header(is);
  expect_kind(h, ContainerKind::grid);
  GridFunction f(Grid(int(h.dim), h.half_width, h.spacing));
  if (f.grid.axis_size() != h.axis_points || f.re.size() != h.count)
    throw FormatError("grid parameters do not reproduce the stored node count");
  for (std::size_t i = 0; i < f.re.size(); ++i) {
    f.re[i] = get_f64(is);
    f.im[i] = get_f64(is);
  }
  return f;
}

void write_kernel_binary(std::ostream& os, const KernelMatrix& k, const Grid& grid, int max_degree) {
  if (k.x.size() != k.y.size()) throw ParameterError("only square kernels are stored");
  ContainerHeader h;
  h.kind = ContainerKind::kernel;
  h.flags = k.resolved ? 0 : 1;
  h.dim = 1;
  h.max_degree = std::uint32_t(max_degree);
  h.half_width = grid.half_width();
  h.spacing = grid.spacing();
  h.axis_points = k.x.size();
  h.count = k.values.size();
  write_header(os, h);
  for (double v : k.x) put_f64(os, v);
  for (double v : k.x_weights) put_f64(os, v);
  for (double v : k.values) put_f64(os, v);
}

KernelMatrix read_kernel_binary(std::istream& is) {
  const ContainerHeader h = read_container_header(is);
  expect_kind(h, ContainerKind::kernel);
  if (h.count != h.axis_points * h.axis_points) throw FormatError("kernel payload is not square");
  KernelMatrix k;
  k.x.resize(h.axis_points);
  k.x_weights.resize(h.axis_points);
  k.values.resize(h.count);
  for (double& v : k.x) v = get_f64(is);
  for (double& v : k.x_weights) v = get_f64(is);
  for (double& v : k.values) v = get_f64(is);
  k.y = k.x;
  k.y_weights = k.x_weights;
  k.resolved = !(h.flags & 1);
  return k;
}

void write_trajectory_binary(std::ostream& os, const Trajectory& traj) {
  if (traj.u.empty()) throw ParameterError("empty trajectory");
  const HermiteBasis& b = traj.u.front().basis();
  ContainerHeader h;
  h.kind = ContainerKind::trajectory;
  h.dim = std::uint32_t(b.dim());
  h.max_degree = std::uint32_t(b.max_degree());
  h.count = traj.t.size();
  write_header(os, h);
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    put_f64(os, traj.t[k]);
    put_values(os, traj.u[k]);
  }
}

Trajectory read_trajectory_binary(std::istream& is) {
  const ContainerHeader h = read_container_header(is);
  expect_kind(h, ContainerKind::trajectory);
  const HermiteBasis b = basis_of(h);
  Trajectory traj;
  for (std::uint64_t k = 0; k < h.count; ++k) {
    traj.t.push_back(get_f64(is));
    SpectralCoefficients u(b);
    get_values(is, u);
    traj.u.push_back(std::move(u));
  }
  return traj;
}

}  // namespace hbesov

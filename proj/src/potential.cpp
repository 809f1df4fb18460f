#include "nek/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nek/error.hpp"
#include "nek/quadrature.hpp"

namespace nek {

namespace {

double grid_interpolate(const PotentialGrid& g, Vec3 p) {
  auto cell = [](double v, double lo, double hi, int n) {
    double u = (v - lo) / (hi - lo) * (n - 1);
    return std::clamp(u, 0.0, static_cast<double>(n - 1));
  };
  const double fx = cell(p.x, g.lo.x, g.hi.x, g.nx);
  const double fy = cell(p.y, g.lo.y, g.hi.y, g.ny);
  const double fz = cell(p.z, g.lo.z, g.hi.z, g.nz);
  const int i0 = std::min(static_cast<int>(fx), g.nx - 2);
  const int j0 = std::min(static_cast<int>(fy), g.ny - 2);
  const int k0 = std::min(static_cast<int>(fz), g.nz - 2);
  const double ax = fx - i0, ay = fy - j0, az = fz - k0;
  auto at = [&](int i, int j, int k) { return g.values[(static_cast<std::size_t>(k) * g.ny + j) * g.nx + i]; };
  double v = 0.0;
  for (int dk = 0; dk < 2; ++dk)
    for (int dj = 0; dj < 2; ++dj)
      for (int di = 0; di < 2; ++di) {
        const double wx = di ? ax : 1.0 - ax;
        const double wy = dj ? ay : 1.0 - ay;
        const double wz = dk ? az : 1.0 - az;
        v += wx * wy * wz * at(i0 + di, j0 + dj, k0 + dk);
      }
  return v;
}

}  // namespace

PotentialGrid load_potential_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_potential_grid: cannot open " + path);
  PotentialGrid g;
  std::string line;
  // Header lines may be preceded by '#' comments.
  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') {
        out = line;
        return true;
      }
    }
    return false;
  };
  std::string header;
  if (!next_data_line(header)) throw std::runtime_error("load_potential_grid: missing size header");
  {
    std::istringstream ss(header);
    if (!(ss >> g.nx >> g.ny >> g.nz)) throw std::runtime_error("load_potential_grid: bad size header");
  }
  if (g.nx < 2 || g.ny < 2 || g.nz < 2) throw std::runtime_error("load_potential_grid: grid must be at least 2^3");
  if (!next_data_line(header)) throw std::runtime_error("load_potential_grid: missing bounding box");
  {
    std::istringstream ss(header);
    if (!(ss >> g.lo.x >> g.lo.y >> g.lo.z >> g.hi.x >> g.hi.y >> g.hi.z))
      throw std::runtime_error("load_potential_grid: bad bounding box");
  }
  const std::size_t n = static_cast<std::size_t>(g.nx) * g.ny * g.nz;
  g.values.reserve(n);
  double v;
  while (g.values.size() < n && in >> v) g.values.push_back(v);
  if (g.values.size() != n) throw std::runtime_error("load_potential_grid: value count mismatch");
  return g;
}

void save_potential_grid(const PotentialGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_potential_grid: cannot open " + path);
  out << "# tabulated potential: nx ny nz, then bounding box, then row-major values (x fastest)\n";
  out << grid.nx << " " << grid.ny << " " << grid.nz << "\n";
  out.precision(17);
  out << grid.lo.x << " " << grid.lo.y << " " << grid.lo.z << " "
      << grid.hi.x << " " << grid.hi.y << " " << grid.hi.z << "\n";
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    out << grid.values[i] << ((i + 1) % 8 == 0 ? "\n" : " ");
  }
  out << "\n";
}

PotentialField PotentialField::zero() { return PotentialField{}; }

PotentialField PotentialField::constant_value(double c) {
  PotentialField p;
  p.kind = Kind::Constant;
  p.constant = c;
  return p;
}

PotentialField PotentialField::linear_axis(double beta, Vec3 axis) {
  const double n = norm(axis);
  if (n == 0.0) throw std::invalid_argument("linear_axis: axis must be nonzero");
  PotentialField p;
  p.kind = Kind::LinearAxis;
  p.beta = beta;
  p.axis = axis / n;
  return p;
}

PotentialField PotentialField::tabulated(PotentialGrid grid) {
  PotentialField p;
  p.kind = Kind::UserTabulated;
  p.grid = std::move(grid);
  return p;
}

double PotentialField::value(Vec3 x) const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return constant;
    case Kind::LinearAxis: return beta * dot(x, axis);
    case Kind::UserTabulated: return grid_interpolate(grid, x);
  }
  return 0.0;
}

Vec3 force(const PotentialField& phi, const DomainModel& domain, Vec3 x) {
  if (norm(x) > domain.radius * (1.0 + 1e-10))
    throw std::domain_error("force: point outside the closed domain");
  switch (phi.kind) {
    case PotentialField::Kind::Zero:
    case PotentialField::Kind::Constant:
      return Vec3{0.0, 0.0, 0.0};
    case PotentialField::Kind::LinearAxis:
      return phi.beta * phi.axis;
    case PotentialField::Kind::UserTabulated: {
      const double h = 1e-5 * domain.radius;
      auto d = [&](Vec3 e) {
        return (phi.value(x + h * e) - phi.value(x - h * e)) / (2.0 * h);
      };
      return Vec3{d(Vec3{1, 0, 0}), d(Vec3{0, 1, 0}), d(Vec3{0, 0, 1})};
    }
  }
  return Vec3{0.0, 0.0, 0.0};
}

WeightedVolume weighted_volume(const DomainModel& domain, const PotentialField& phi, Vec3 x,
                               double rel_tol) {
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-2))
    throw std::invalid_argument("weighted_volume: rel_tol must be in [1e-12, 1e-2]");
  const double phix = phi.value(x);
  const double R = domain.radius;

  auto estimate = [&](int nr, int nmu, int nphi) {
    const GaussLegendre& gr = gauss_legendre(nr);
    const GaussLegendre& gm = gauss_legendre(nmu);
    KahanSum total;
    for (int i = 0; i < nr; ++i) {
      const double r = 0.5 * R * (gr.nodes[i] + 1.0);
      const double wr = 0.5 * R * gr.weights[i] * r * r;
      for (int j = 0; j < nmu; ++j) {
        const double mu = gm.nodes[j];
        const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        KahanSum ring;
        for (int k = 0; k < nphi; ++k) {
          const double az = 2.0 * std::numbers::pi * (k + 0.5) / nphi;
          const Vec3 z{r * s * std::cos(az), r * s * std::sin(az), r * mu};
          ring.add(std::exp(phi.value(z) - phix));
        }
        total.add(wr * gm.weights[j] * (2.0 * std::numbers::pi / nphi) * ring.value());
      }
    }
    return total.value();
  };

  int nr = 8, nmu = 8, nphi = 16;
  double prev = estimate(nr, nmu, nphi);
  double diff = std::abs(prev);
  for (int round = 0; round < 6; ++round) {
    nr *= 2;
    nmu *= 2;
    nphi *= 2;
    const double cur = estimate(nr, nmu, nphi);
    diff = std::abs(cur - prev);
    if (diff <= rel_tol * std::abs(cur)) {
      WeightedVolume wv;
      wv.value = cur;
      wv.base_point = x;
      wv.quadrature_error_estimate = diff;
      return wv;
    }
    prev = cur;
  }
  throw QuadratureFailure("weighted_volume: order budget exhausted", prev, diff);
}

}  // namespace nek

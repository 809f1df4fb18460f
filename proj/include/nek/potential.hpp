#pragma once

#include <string>
#include <vector>

#include "nek/geometry.hpp"
#include "nek/vec3.hpp"

namespace nek {

// Tabulated potential on a regular grid, trilinear interpolation between
// samples. File format is documented in the README (plain-text header
// "nx ny nz" and bounding box, then row-major values, x fastest).
struct PotentialGrid {
  int nx = 0, ny = 0, nz = 0;
  Vec3 lo, hi;
  std::vector<double> values;  // size nx*ny*nz, index = (k*ny + j)*nx + i
};

PotentialGrid load_potential_grid(const std::string& path);
void save_potential_grid(const PotentialGrid& grid, const std::string& path);

// Smooth potential phi with gradient force F = grad(phi), evaluable on the
// closed domain. Zero/Constant have identically zero force; LinearAxis is
// phi(z) = beta * <z, axis>.
struct PotentialField {
  enum class Kind { Zero, Constant, LinearAxis, UserTabulated };
  Kind kind = Kind::Zero;
  double constant = 0.0;
  double beta = 0.0;
  Vec3 axis{0.0, 0.0, 1.0};
  PotentialGrid grid;

  static PotentialField zero();
  static PotentialField constant_value(double c);
  static PotentialField linear_axis(double beta, Vec3 axis);
  static PotentialField tabulated(PotentialGrid grid);

  double value(Vec3 x) const;
  bool has_constant_force() const { return kind == Kind::Zero || kind == Kind::Constant || kind == Kind::LinearAxis; }
};

// F = grad(phi)(x). Tabulated potentials use centered differences with
// step 1e-5 * R (the domain radius is needed only for that step size).
Vec3 force(const PotentialField& phi, const DomainModel& domain, Vec3 x);

// Weighted volume Phi(x) = integral over M of exp(phi(z) - phi(x)) dz.
struct WeightedVolume {
  double value = 0.0;
  Vec3 base_point;
  double quadrature_error_estimate = 0.0;
};

// Adaptive spherical product quadrature (Gauss-Legendre in radius and
// polar angle, trapezoid in azimuth); orders double until two successive
// estimates agree to the relative tolerance. Throws QuadratureFailure with
// the partial estimate when the budget is exhausted.
WeightedVolume weighted_volume(const DomainModel& domain, const PotentialField& phi, Vec3 x,
                               double rel_tol);

}  // namespace nek

#pragma once

#include <cstddef>
#include <vector>

#include "eqdiv/instance.hpp"

namespace eqdiv {

/// Point e of the unit sphere in R^n.
class SpherePoint {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Throws NotOnSphere unless |sum e_i^2 - 1| <= 1e-12.
  explicit SpherePoint(std::vector<double> coords);
  /// Rescales `coords` onto the sphere. Throws NotOnSphere for the zero vector.
  static SpherePoint normalized(std::vector<double> coords);

  std::size_t dimension() const noexcept { return coords_.size(); }
  const std::vector<double>& coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }

  SpherePoint antipode() const;

 private:
  std::vector<double> coords_;
};

/// x_i = x_{i-1} + e_i^2 for i = 1..n-1. The last coordinate only fixes the
/// length of the final piece.
CutVector sphere_to_cuts(const SpherePoint& e);

/// e_i = +sqrt(x_i - x_{i-1}), the all-nonnegative preimage of `cuts`.
SpherePoint cuts_to_sphere(const CutVector& cuts);

/// The antipodal map F: S^{n-1} -> R^{n-1},
///
///   F_i(e) = sgn(e_{i+1}) mu_{sigma(i+1)}([s_i, s_i + e_{i+1}^2])
///          - sgn(e_1)     mu_{sigma(1)}([0, e_1^2]),    s_i = e_1^2 + ... + e_i^2
///
/// with sgn(0) = 0. F(-e) = -F(e) holds bit for bit because the integrals
/// only see squares. Throws DimensionMismatch when e does not have one
/// coordinate per player.
std::vector<double> residual_map(const Instance& inst, const SpherePoint& e);

double residual_norm(const Instance& inst, const SpherePoint& e);

/// Projected coordinate pattern search on ||F||^2 over the sphere.
///
/// Each accepted step lowers ||F||_2 and does not raise ||F||_inf, so the
/// result is never worse than `start`. Stops when ||F||_inf <= tol/2, the
/// step size underflows, or after `max_iter` sweeps.
SpherePoint descent_refine(const Instance& inst, const SpherePoint& start, double tol,
                           std::size_t max_iter);

}  // namespace eqdiv

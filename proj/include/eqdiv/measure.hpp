#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace eqdiv {

enum class DensityKind { PiecewiseConstant, PiecewiseLinear };

/// Unvalidated density description as it arrives from a file or a caller.
///
/// Piecewise-constant: `values[k]` is the height on [breakpoints[k],
/// breakpoints[k+1]), so there is one value per piece. Piecewise-linear:
/// `values[k]` is the knot value at `breakpoints[k]`, one per breakpoint.
struct RawDensity {
  DensityKind kind = DensityKind::PiecewiseConstant;
  std::vector<double> breakpoints;
  std::vector<double> values;
};

/// Nonnegative valuation density on [0,1] normalized to unit mass.
///
/// Immutable after construction. Every measure query is answered from a
/// closed-form piecewise antiderivative; nothing here integrates
/// numerically. A single point always has measure zero, so the half-open
/// piece convention never changes an integral.
class Density {
 public:
  /// Validates `raw` and divides every value by the total mass. The
  /// divisor is kept in `scale()`.
  ///
  /// Throws Error with MalformedBreakpoints (not strictly increasing,
  /// endpoints not exactly 0 and 1, wrong value count), NegativeValue
  /// (negative or non-finite value) or ZeroMass.
  static Density validate_and_normalize(const RawDensity& raw);

  static Density uniform();

  DensityKind kind() const noexcept { return kind_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double scale() const noexcept { return scale_; }
  std::size_t piece_count() const noexcept { return breakpoints_.size() - 1; }

  /// Largest density value after normalization.
  double max_height() const noexcept;

  /// Density value at x (right-continuous for piecewise-constant).
  double value_at(double x) const;

  /// mu([0, x]) for x in [0,1]; callers must range-check.
  double cdf(double x) const noexcept;

  /// mu([a, b]). Throws OutOfRange or ReversedInterval.
  double integral_on(double a, double b) const;

  /// Smallest x in [a,1] with mu([a,x]) >= t, or nullopt when
  /// mu([a,1]) < t - 1e-15. Lands on the left end of a zero-density plateau.
  /// Throws NegativeTarget or OutOfRange.
  std::optional<double> generalized_inverse(double a, double t) const;

  /// Smallest x with cdf(x) >= level; level is clamped into [0,1].
  double lower_quantile(double level) const noexcept;
  /// Largest x with cdf(x) <= level; level is clamped into [0,1].
  double upper_quantile(double level) const noexcept;

 private:
  Density() = default;

  double piece_mass_to(std::size_t k, double s) const noexcept;
  double solve_in_piece(std::size_t k, double need) const noexcept;

  DensityKind kind_ = DensityKind::PiecewiseConstant;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  // cumulative_[k] = mu([0, breakpoints_[k]]), cumulative_.back() == 1.
  std::vector<double> cumulative_;
  double scale_ = 1.0;
};

}  // namespace eqdiv

#include "eqdiv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqdiv/error.hpp"

namespace eqdiv {

namespace {

constexpr double kInfeasibleSlack = 1e-15;

void check_breakpoints(const std::vector<double>& b) {
  if (b.size() < 2) {
    throw Error(ErrorCode::MalformedBreakpoints, "need at least two breakpoints");
  }
  if (b.front() != 0.0 || b.back() != 1.0) {
    throw Error(ErrorCode::MalformedBreakpoints, "breakpoints must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < b.size(); ++k) {
    if (!(b[k] > b[k - 1])) {
      throw Error(ErrorCode::MalformedBreakpoints,
                  "breakpoints not strictly increasing at index " + std::to_string(k));
    }
  }
}

}  // namespace

Density Density::validate_and_normalize(const RawDensity& raw) {
  check_breakpoints(raw.breakpoints);
  const std::size_t pieces = raw.breakpoints.size() - 1;
  const std::size_t expected =
      raw.kind == DensityKind::PiecewiseConstant ? pieces : pieces + 1;
  if (raw.values.size() != expected) {
    throw Error(ErrorCode::MalformedBreakpoints,
                "expected " + std::to_string(expected) + " values, got " +
                    std::to_string(raw.values.size()));
  }
  for (std::size_t k = 0; k < raw.values.size(); ++k) {
    if (!std::isfinite(raw.values[k]) || raw.values[k] < 0.0) {
      throw Error(ErrorCode::NegativeValue,
                  "value at index " + std::to_string(k) + " must be finite and nonnegative");
    }
  }

  Density d;
  d.kind_ = raw.kind;
  d.breakpoints_ = raw.breakpoints;
  d.values_ = raw.values;

  double mass = 0.0;
  for (std::size_t k = 0; k < pieces; ++k) {
    const double w = raw.breakpoints[k + 1] - raw.breakpoints[k];
    mass += raw.kind == DensityKind::PiecewiseConstant
                ? raw.values[k] * w
                : 0.5 * (raw.values[k] + raw.values[k + 1]) * w;
  }
  if (!(mass > 0.0)) {
    throw Error(ErrorCode::ZeroMass, "density integrates to zero");
  }
  d.scale_ = mass;
  if (mass != 1.0) {
    for (double& v : d.values_) v /= mass;
  }

  d.cumulative_.assign(pieces + 1, 0.0);
  for (std::size_t k = 0; k < pieces; ++k) {
    d.cumulative_[k + 1] =
        d.cumulative_[k] + d.piece_mass_to(k, d.breakpoints_[k + 1] - d.breakpoints_[k]);
  }
  // Pin the total to exactly one; the accumulated sum is off by a few ulps.
  d.cumulative_.back() = 1.0;
  for (std::size_t k = pieces; k-- > 0;) {
    d.cumulative_[k] = std::min(d.cumulative_[k], d.cumulative_[k + 1]);
  }
  return d;
}

Density Density::uniform() {
  return validate_and_normalize({DensityKind::PiecewiseConstant, {0.0, 1.0}, {1.0}});
}

double Density::max_height() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

double Density::value_at(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "x must lie in [0,1]");
  }
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin());
  k = std::min(k == 0 ? 0 : k - 1, piece_count() - 1);
  if (kind_ == DensityKind::PiecewiseConstant) return values_[k];
  const double w = breakpoints_[k + 1] - breakpoints_[k];
  const double s = x - breakpoints_[k];
  return values_[k] + (values_[k + 1] - values_[k]) * (s / w);
}

// Mass of piece k over [b_k, b_k + s].
double Density::piece_mass_to(std::size_t k, double s) const noexcept {
  if (kind_ == DensityKind::PiecewiseConstant) return values_[k] * s;
  const double w = breakpoints_[k + 1] - breakpoints_[k];
  const double y0 = values_[k];
  const double y1 = values_[k + 1];
  return y0 * s + (y1 - y0) * s * s / (2.0 * w);
}

// Offset s in [0, w_k] with piece_mass_to(k, s) == need, for a piece with
// positive mass. The antiderivative is strictly increasing there.
double Density::solve_in_piece(std::size_t k, double need) const noexcept {
  const double w = breakpoints_[k + 1] - breakpoints_[k];
  if (need <= 0.0) return 0.0;
  double s;
  if (kind_ == DensityKind::PiecewiseConstant) {
    s = need / values_[k];
  } else {
    const double y0 = values_[k];
    const double a = (values_[k + 1] - y0) / (2.0 * w);
    const double disc = std::max(0.0, y0 * y0 + 4.0 * a * need);
    const double denom = y0 + std::sqrt(disc);
    s = denom > 0.0 ? 2.0 * need / denom : w;
  }
  return std::clamp(s, 0.0, w);
}

double Density::cdf(double x) const noexcept {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  const double partial = piece_mass_to(k, x - breakpoints_[k]);
  return std::clamp(cumulative_[k] + partial, cumulative_[k], cumulative_[k + 1]);
}

double Density::integral_on(double a, double b) const {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "interval endpoints must lie in [0,1]");
  }
  if (a > b) {
    throw Error(ErrorCode::ReversedInterval, "a > b");
  }
  return std::max(0.0, cdf(b) - cdf(a));
}

double Density::lower_quantile(double level) const noexcept {
  if (level <= 0.0) return 0.0;
  if (level > 1.0) level = 1.0;
  // First piece whose right-end cumulative reaches the level.
  const auto it = std::lower_bound(cumulative_.begin() + 1, cumulative_.end(), level);
  const std::size_t k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  return breakpoints_[k] + solve_in_piece(k, level - cumulative_[k]);
}

double Density::upper_quantile(double level) const noexcept {
  if (level >= 1.0) return 1.0;
  if (level < 0.0) level = 0.0;
  // First piece whose right-end cumulative strictly exceeds the level.
  const auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), level);
  const std::size_t k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  return breakpoints_[k] + solve_in_piece(k, level - cumulative_[k]);
}

std::optional<double> Density::generalized_inverse(double a, double t) const {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "start point must lie in [0,1]");
  }
  if (!(t >= 0.0)) {
    throw Error(ErrorCode::NegativeTarget, "target mass must be nonnegative");
  }
  if (t == 0.0) return a;
  const double base = cdf(a);
  const double remaining = 1.0 - base;
  if (remaining < t - kInfeasibleSlack) return std::nullopt;
  const double x = lower_quantile(base + std::min(t, remaining));
  return std::clamp(x, a, 1.0);
}

}  // namespace eqdiv

#include "eqdiv/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqdiv/error.hpp"

namespace eqdiv {

namespace {

double sum_of_squares(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x * x;
  return s;
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorCode::NotOnSphere, "sphere point needs at least one coordinate");
  }
  const double s = sum_of_squares(coords_);
  if (!(std::abs(s - 1.0) <= kTolerance)) {
    throw Error(ErrorCode::NotOnSphere, "sum of squares is " + std::to_string(s));
  }
}

SpherePoint SpherePoint::normalized(std::vector<double> coords) {
  const double norm = std::sqrt(sum_of_squares(coords));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::NotOnSphere, "cannot normalize a zero or non-finite vector");
  }
  for (double& x : coords) x /= norm;
  return SpherePoint(std::move(coords));
}

SpherePoint SpherePoint::antipode() const {
  std::vector<double> neg(coords_.size());
  std::transform(coords_.begin(), coords_.end(), neg.begin(), [](double x) { return -x; });
  return SpherePoint(std::move(neg));
}

CutVector sphere_to_cuts(const SpherePoint& e) {
  std::vector<double> cuts(e.dimension() - 1);
  double x = 0.0;
  for (std::size_t i = 0; i + 1 < e.dimension(); ++i) {
    x = std::min(1.0, x + e[i] * e[i]);
    cuts[i] = x;
  }
  return CutVector(std::move(cuts));
}

SpherePoint cuts_to_sphere(const CutVector& cuts) {
  std::vector<double> e(cuts.piece_count());
  for (std::size_t piece = 0; piece < e.size(); ++piece) {
    e[piece] = std::sqrt(cuts.right(piece) - cuts.left(piece));
  }
  return SpherePoint(std::move(e));
}

std::vector<double> residual_map(const Instance& inst, const SpherePoint& e) {
  const std::size_t n = inst.player_count();
  if (e.dimension() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "sphere point of dimension " + std::to_string(e.dimension()) + " for " +
                    std::to_string(n) + " players");
  }
  const double first_len = std::min(1.0, e[0] * e[0]);
  const double first = sgn(e[0]) * inst.owner_density(0).integral_on(0.0, first_len);

  std::vector<double> out(n - 1);
  double start = first_len;
  for (std::size_t i = 1; i < n; ++i) {
    const double end = std::min(1.0, start + e[i] * e[i]);
    out[i - 1] = sgn(e[i]) * inst.owner_density(i).integral_on(start, end) - first;
    start = end;
  }
  return out;
}

double residual_norm(const Instance& inst, const SpherePoint& e) {
  return inf_norm(residual_map(inst, e));
}

SpherePoint descent_refine(const Instance& inst, const SpherePoint& start, double tol,
                           std::size_t max_iter) {
  struct Eval {
    double l2sq;
    double linf;
  };
  const auto evaluate = [&inst](const SpherePoint& p) {
    const auto f = residual_map(inst, p);
    return Eval{sum_of_squares(f), inf_norm(f)};
  };

  SpherePoint best = start;
  Eval best_eval = evaluate(best);
  double step = 0.125;

  for (std::size_t sweep = 0; sweep < max_iter; ++sweep) {
    if (best_eval.linf <= 0.5 * tol || step < 1e-16) break;
    bool improved = false;
    for (std::size_t j = 0; j < best.dimension(); ++j) {
      for (const double dir : {1.0, -1.0}) {
        std::vector<double> trial = best.coords();
        trial[j] += dir * step;
        if (sum_of_squares(trial) == 0.0) continue;
        const SpherePoint candidate = SpherePoint::normalized(std::move(trial));
        const Eval ev = evaluate(candidate);
        if (ev.l2sq < best_eval.l2sq && ev.linf <= best_eval.linf) {
          best = candidate;
          best_eval = ev;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace eqdiv

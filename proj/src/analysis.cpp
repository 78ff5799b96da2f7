#include "eqdiv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqdiv/error.hpp"

namespace eqdiv {

ValuationMatrix valuation_matrix(std::span<const Density> densities, const CutVector& cuts,
                                 const Permutation& sigma) {
  const std::size_t n = densities.size();
  if (cuts.piece_count() != n || sigma.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(n) + " players, " + std::to_string(cuts.piece_count()) +
                    " pieces, sigma of size " + std::to_string(sigma.size()));
  }
  ValuationMatrix vm(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      vm(i, j) = densities[i].integral_on(cuts.left(j), cuts.right(j));
    }
  }
  return vm;
}

FairnessReport fairness_report(const ValuationMatrix& vm, const Permutation& sigma, double tol) {
  const std::size_t n = vm.size();
  if (sigma.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "sigma size differs from matrix size");
  }
  const double share = 1.0 / static_cast<double>(n);
  const auto held = sigma.inverse();

  FairnessReport rep;
  rep.own_values.resize(n);
  rep.proportional_margins.resize(n);
  rep.envy.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double own = vm(i, held[i]);
    rep.own_values[i] = own;
    rep.proportional_margins[i] = own - share;
    double envy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      envy = std::max(envy, vm(i, j) - own);
      rep.exact_gap = std::max(rep.exact_gap, std::abs(vm(i, j) - share));
    }
    rep.envy[i] = envy;
  }

  const auto [lo, hi] = std::minmax_element(rep.own_values.begin(), rep.own_values.end());
  rep.equitable_gap = *hi - *lo;
  rep.proportional_margin =
      *std::min_element(rep.proportional_margins.begin(), rep.proportional_margins.end());
  rep.worst_envy = *std::max_element(rep.envy.begin(), rep.envy.end());

  rep.equitable_ok = rep.equitable_gap <= tol;
  rep.proportional_ok = rep.proportional_margin >= -tol;
  rep.envy_free_ok = rep.worst_envy <= tol;
  rep.exact_ok = rep.exact_gap <= tol;
  return rep;
}

}  // namespace eqdiv

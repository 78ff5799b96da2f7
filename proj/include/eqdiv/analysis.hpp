#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eqdiv/instance.hpp"

namespace eqdiv {

/// m(i, j) = value player i assigns to piece j (pieces in positional order).
class ValuationMatrix {
 public:
  explicit ValuationMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t player, std::size_t piece) noexcept {
    return data_[player * n_ + piece];
  }
  double operator()(std::size_t player, std::size_t piece) const noexcept {
    return data_[player * n_ + piece];
  }
  std::span<const double> row(std::size_t player) const noexcept {
    return {data_.data() + player * n_, n_};
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Throws DimensionMismatch when the number of pieces or the permutation
/// size differs from the number of densities.
ValuationMatrix valuation_matrix(std::span<const Density> densities, const CutVector& cuts,
                                 const Permutation& sigma);

/// Where a division stands on each fairness notion. Player-indexed vectors
/// refer to players, not pieces; a player's own piece is piece sigma^-1(i).
struct FairnessReport {
  std::vector<double> own_values;

  double equitable_gap = 0.0;  // max_{i,j} |own_i - own_j|
  bool equitable_ok = false;

  std::vector<double> proportional_margins;  // own_i - 1/n
  double proportional_margin = 0.0;          // worst (smallest) of the above
  bool proportional_ok = false;

  std::vector<double> envy;  // max_j m(i,j) - own_i, per player
  double worst_envy = 0.0;
  bool envy_free_ok = false;

  double exact_gap = 0.0;  // max_{i,j} |m(i,j) - 1/n|
  bool exact_ok = false;
};

FairnessReport fairness_report(const ValuationMatrix& vm, const Permutation& sigma,
                               double tol = 1e-9);

}  // namespace eqdiv

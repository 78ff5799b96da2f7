#include "eqdiv/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eqdiv/error.hpp"

namespace eqdiv {

Permutation::Permutation(std::vector<std::size_t> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (const std::size_t p : order_) {
    if (p >= order_.size() || seen[p]) {
      throw Error(ErrorCode::InvalidInstance, "sigma is not a permutation of 0.." +
                                                  std::to_string(order_.size()) + "-1");
    }
    seen[p] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return Permutation(std::move(order));
}

std::vector<std::size_t> Permutation::inverse() const {
  std::vector<std::size_t> inv(order_.size());
  for (std::size_t piece = 0; piece < order_.size(); ++piece) inv[order_[piece]] = piece;
  return inv;
}

CutVector::CutVector(std::vector<double> cuts) : cuts_(std::move(cuts)) {
  double prev = 0.0;
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (!(cuts_[i] >= prev && cuts_[i] <= 1.0)) {
      throw Error(ErrorCode::InvalidCuts,
                  "cut " + std::to_string(i + 1) + " breaks 0 <= x_1 <= ... <= 1");
    }
    prev = cuts_[i];
  }
}

Instance::Instance(std::vector<Density> densities, Permutation sigma)
    : densities_(std::move(densities)), sigma_(std::move(sigma)) {
  if (densities_.empty()) {
    throw Error(ErrorCode::InvalidInstance, "an instance needs at least one player");
  }
  if (sigma_.size() != densities_.size()) {
    throw Error(ErrorCode::InvalidInstance,
                "sigma has " + std::to_string(sigma_.size()) + " entries for " +
                    std::to_string(densities_.size()) + " players");
  }
}

Instance::Instance(std::vector<Density> densities)
    : Instance(densities, Permutation::identity(densities.size())) {}

std::vector<double> owner_values(const Instance& inst, const CutVector& cuts) {
  if (cuts.piece_count() != inst.player_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(cuts.size()) + " cuts for " +
                    std::to_string(inst.player_count()) + " players");
  }
  std::vector<double> own(inst.player_count());
  for (std::size_t piece = 0; piece < own.size(); ++piece) {
    own[piece] = inst.owner_density(piece).integral_on(cuts.left(piece), cuts.right(piece));
  }
  return own;
}

double equitability_gap(const Instance& inst, const CutVector& cuts) {
  const auto own = owner_values(inst, cuts);
  const auto [lo, hi] = std::minmax_element(own.begin(), own.end());
  return *hi - *lo;
}

}  // namespace eqdiv

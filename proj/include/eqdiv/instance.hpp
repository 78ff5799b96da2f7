#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eqdiv/measure.hpp"

namespace eqdiv {

/// Player order: `at(i)` is the player who receives piece i (0-indexed,
/// pieces counted left to right).
class Permutation {
 public:
  /// Throws InvalidInstance unless `order` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<std::size_t> order);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return order_.size(); }
  std::size_t at(std::size_t piece) const { return order_.at(piece); }
  std::size_t operator[](std::size_t piece) const noexcept { return order_[piece]; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }

  /// Piece index held by each player.
  std::vector<std::size_t> inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.order_ <=> b.order_;
  }

 private:
  std::vector<std::size_t> order_;
};

/// Interior cut points x_1..x_{n-1}; x_0 = 0 and x_n = 1 are implicit.
class CutVector {
 public:
  CutVector() = default;
  /// Throws InvalidCuts unless 0 <= x_1 <= ... <= x_{n-1} <= 1.
  explicit CutVector(std::vector<double> cuts);

  std::size_t size() const noexcept { return cuts_.size(); }
  std::size_t piece_count() const noexcept { return cuts_.size() + 1; }
  const std::vector<double>& values() const noexcept { return cuts_; }
  double operator[](std::size_t i) const noexcept { return cuts_[i]; }

  /// Left and right end of piece `piece` (0-indexed).
  double left(std::size_t piece) const noexcept { return piece == 0 ? 0.0 : cuts_[piece - 1]; }
  double right(std::size_t piece) const noexcept {
    return piece == cuts_.size() ? 1.0 : cuts_[piece];
  }

 private:
  std::vector<double> cuts_;
};

/// Densities of n players together with the order in which they receive
/// pieces.
class Instance {
 public:
  /// Throws InvalidInstance when there are no densities or the permutation
  /// size differs from the density count.
  Instance(std::vector<Density> densities, Permutation sigma);
  /// Identity order.
  explicit Instance(std::vector<Density> densities);

  std::size_t player_count() const noexcept { return densities_.size(); }
  std::span<const Density> densities() const noexcept { return densities_; }
  const Density& density(std::size_t player) const { return densities_.at(player); }
  const Permutation& sigma() const noexcept { return sigma_; }
  /// Density of the player who owns piece `piece`.
  const Density& owner_density(std::size_t piece) const { return densities_[sigma_.at(piece)]; }

  Instance with_sigma(Permutation sigma) const { return Instance(densities_, std::move(sigma)); }

 private:
  std::vector<Density> densities_;
  Permutation sigma_;
};

/// Value of each piece to the player who owns it.
std::vector<double> owner_values(const Instance& inst, const CutVector& cuts);

/// max - min of owner_values.
double equitability_gap(const Instance& inst, const CutVector& cuts);

}  // namespace eqdiv

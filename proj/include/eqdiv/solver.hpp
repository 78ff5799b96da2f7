#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eqdiv/instance.hpp"

namespace eqdiv {

enum class SolveStatus { Converged, RefinedConverged, BestEffort };

std::string_view to_string(SolveStatus status) noexcept;

struct EquitableSolution {
  CutVector cuts;
  /// Common value of the pieces to their owners (mean of the owner values).
  double value = 0.0;
  /// max - min of the owner values.
  double gap = 0.0;
  SolveStatus status = SolveStatus::BestEffort;
  /// ||residual_map(cuts_to_sphere(cuts))||_inf.
  double residual_norm = 0.0;
  std::size_t iterations = 0;
};

/// Outcome of walking the chain at a fixed common value v. `cuts` is empty
/// when some piece cannot reach v; `residual` is then -v.
struct ChainResult {
  std::optional<CutVector> cuts;
  double residual = 0.0;
};

/// x_0 = 0, x_i = generalized_inverse(owner of piece i-1, x_{i-1}, v); the
/// residual is the last owner's value of [x_{n-1}, 1] minus v. Nonincreasing
/// in v. Throws InvalidV for v outside [0,1].
ChainResult chain_cuts(const Instance& inst, double v);

struct SolveOptions {
  double tol = 1e-9;
  std::size_t max_iter = 200;
};

/// Solves for cuts at which every piece is worth the same to its owner.
///
/// Bisection on the common value keeps r(lo) >= 0 > r(hi) and narrows the
/// bracket to min(tol, 4 eps), so smooth instances come out accurate to a
/// few ulps rather than to tol. The feasible end's chain is returned when
/// its gap is within tol. Discontinuities of r caused by zero-density
/// plateaus are repaired by plateau_refine, and descent_refine is the last
/// resort before reporting BestEffort.
EquitableSolution solve_equitable(const Instance& inst, const SolveOptions& options = {});

/// Backward repair pass for chains that straddle a plateau.
///
/// For each cut from the last to the first, the admissible window is the
/// set of positions reachable by some chain whose pieces are all worth
/// within `tol` of v to their owners (bounded by a lower-inverse chain at
/// v - tol and an upper-inverse chain at v + tol). Inside it the cut is
/// placed where the piece to its right is worth closest to v; a range of
/// equally good positions resolves to its midpoint. A cut that is already
/// optimal stays put, so the pass is idempotent on plateau-free instances.
CutVector plateau_refine(const Instance& inst, const CutVector& cuts, double v, double tol);

struct SweepOptions {
  double tol = 1e-9;
  std::size_t max_players = 8;
  bool parallel = false;
};

struct SweepEntry {
  Permutation sigma;
  EquitableSolution solution;
};

/// One solve per permutation of the players, sorted by value descending and
/// then by sigma lexicographically. Throws TooManyPlayers above the cap.
std::vector<SweepEntry> sweep_permutations(std::span<const Density> densities,
                                           const SweepOptions& options = {});

}  // namespace eqdiv

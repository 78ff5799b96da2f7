#include "eqdiv/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "eqdiv/error.hpp"

namespace eqdiv {

GridSearchResult grid_search_equitable(const Instance& inst, double resolution) {
  const std::size_t n = inst.player_count();
  if (n > 4) {
    throw Error(ErrorCode::TooManyPlayers, "grid search supports at most 4 players");
  }
  if (!(resolution >= 1e-4 && resolution <= 1.0)) {
    throw Error(ErrorCode::ResolutionTooFine, "resolution must lie in [1e-4, 1]");
  }

  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double x = static_cast<double>(k) * resolution;
    if (x >= 1.0 - 1e-12) break;
    grid.push_back(x);
  }
  grid.push_back(1.0);
  const std::size_t points = grid.size();

  // cdf tables of each piece owner on the grid.
  std::vector<std::vector<double>> owner_cdf(n, std::vector<double>(points));
  for (std::size_t piece = 0; piece < n; ++piece) {
    const Density& d = inst.owner_density(piece);
    for (std::size_t k = 0; k < points; ++k) owner_cdf[piece][k] = d.cdf(grid[k]);
  }

  std::vector<std::size_t> idx(n + 1, 0);
  idx[n] = points - 1;
  std::vector<std::size_t> best_idx;
  double best_gap = std::numeric_limits<double>::infinity();

  const auto score = [&] {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t piece = 0; piece < n; ++piece) {
      const double v = owner_cdf[piece][idx[piece + 1]] - owner_cdf[piece][idx[piece]];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  };

  // Odometer over idx[1] <= idx[2] <= ... <= idx[n-1], lexicographic order.
  const auto recurse = [&](auto&& self, std::size_t level) -> void {
    if (level == n) {
      const double gap = score();
      if (gap < best_gap) {
        best_gap = gap;
        best_idx.assign(idx.begin() + 1, idx.begin() + static_cast<std::ptrdiff_t>(n));
      }
      return;
    }
    for (std::size_t k = idx[level - 1]; k < points; ++k) {
      idx[level] = k;
      self(self, level + 1);
    }
  };
  recurse(recurse, 1);

  std::vector<double> cuts;
  cuts.reserve(best_idx.size());
  for (const std::size_t k : best_idx) cuts.push_back(grid[k]);
  return {CutVector(std::move(cuts)), best_gap};
}

}  // namespace eqdiv

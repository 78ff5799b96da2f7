#pragma once

#include "eqdiv/instance.hpp"

namespace eqdiv {

struct GridSearchResult {
  CutVector cuts;
  double gap = 0.0;
};

/// Exhaustive search over nondecreasing cut vectors on the grid
/// {0, res, 2 res, ..., 1}, minimizing the equitability gap. Ties go to the
/// lexicographically smallest cuts.
///
/// Deliberately naive: it is the reference the solver is checked against.
/// Cost is about (1/res)^(n-1) / (n-1)!. Throws TooManyPlayers for n > 4 and
/// ResolutionTooFine for res < 1e-4 (or a resolution outside (0,1]).
GridSearchResult grid_search_equitable(const Instance& inst, double resolution);

}  // namespace eqdiv

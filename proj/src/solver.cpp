#include "eqdiv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "eqdiv/error.hpp"
#include "eqdiv/topology.hpp"

namespace eqdiv {

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::RefinedConverged: return "RefinedConverged";
    case SolveStatus::BestEffort: return "BestEffort";
  }
  return "Unknown";
}

ChainResult chain_cuts(const Instance& inst, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::InvalidV, "common value must lie in [0,1]");
  }
  const std::size_t n = inst.player_count();
  std::vector<double> cuts;
  cuts.reserve(n - 1);
  double x = 0.0;
  for (std::size_t piece = 0; piece + 1 < n; ++piece) {
    const auto next = inst.owner_density(piece).generalized_inverse(x, v);
    if (!next) return {std::nullopt, -v};
    x = *next;
    cuts.push_back(x);
  }
  const double last = inst.owner_density(n - 1).integral_on(x, 1.0);
  return {CutVector(std::move(cuts)), last - v};
}

namespace {

struct Candidate {
  CutVector cuts;
  double gap;
};

EquitableSolution finish(const Instance& inst, Candidate best, SolveStatus status,
                         std::size_t iterations) {
  EquitableSolution sol;
  const auto own = owner_values(inst, best.cuts);
  sol.value = std::accumulate(own.begin(), own.end(), 0.0) / static_cast<double>(own.size());
  sol.value = std::clamp(sol.value, 0.0, 1.0);
  sol.gap = best.gap;
  sol.status = status;
  sol.residual_norm = residual_norm(inst, cuts_to_sphere(best.cuts));
  sol.iterations = iterations;
  sol.cuts = std::move(best.cuts);
  return sol;
}

}  // namespace

EquitableSolution solve_equitable(const Instance& inst, const SolveOptions& options) {
  if (!(options.tol > 0.0)) {
    throw Error(ErrorCode::InvalidInstance, "tolerance must be positive");
  }
  if (inst.player_count() == 1) {
    return finish(inst, {CutVector{}, 0.0}, SolveStatus::Converged, 0);
  }

  const double bracket = std::min(options.tol, 4.0 * std::numeric_limits<double>::epsilon());
  std::size_t iterations = 0;
  double lo = 0.0;
  double hi = 1.0;
  bool exact = false;

  // r(1) <= 0 always; a feasible zero there means every piece is worth 1.
  if (const auto top = chain_cuts(inst, 1.0); top.cuts && top.residual >= 0.0) {
    lo = 1.0;
    exact = true;
  }
  while (!exact && hi - lo >= bracket && iterations < options.max_iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    ++iterations;
    const auto r = chain_cuts(inst, mid);
    if (r.cuts && r.residual >= 0.0) {
      lo = mid;
      exact = r.residual == 0.0;
    } else {
      hi = mid;
    }
  }

  // r(lo) >= 0 guarantees a complete chain at lo.
  CutVector chain = *chain_cuts(inst, lo).cuts;
  Candidate best{chain, equitability_gap(inst, chain)};
  if (best.gap <= options.tol) {
    return finish(inst, std::move(best), SolveStatus::Converged, iterations);
  }

  const double width = exact ? 0.0 : hi - lo;
  for (const double window : {width, 0.5 * options.tol}) {
    CutVector refined = plateau_refine(inst, chain, lo, window);
    const double gap = equitability_gap(inst, refined);
    if (gap < best.gap) best = {std::move(refined), gap};
  }
  if (best.gap <= options.tol) {
    return finish(inst, std::move(best), SolveStatus::RefinedConverged, iterations);
  }

  const SpherePoint start = cuts_to_sphere(best.cuts);
  CutVector descended =
      sphere_to_cuts(descent_refine(inst, start, options.tol, options.max_iter));
  const double gap = equitability_gap(inst, descended);
  if (gap < best.gap) best = {std::move(descended), gap};
  return finish(inst, std::move(best), SolveStatus::BestEffort, iterations);
}

CutVector plateau_refine(const Instance& inst, const CutVector& cuts, double v, double tol) {
  const std::size_t n = inst.player_count();
  if (cuts.piece_count() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(cuts.size()) + " cuts for " + std::to_string(n) + " players");
  }
  if (n == 1) return cuts;
  tol = std::max(tol, 0.0);

  // Envelopes of every chain whose pieces are worth within `slack` of v:
  // one exact, one widened by tol.
  struct Envelope {
    std::vector<double> lower;
    std::vector<double> upper;
  };
  const auto envelope = [&](double slack) {
    Envelope env{std::vector<double>(n - 1), std::vector<double>(n - 1)};
    double lo_prev = 0.0;
    double up_prev = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const Density& d = inst.owner_density(j);
      env.lower[j] =
          std::max(lo_prev, d.lower_quantile(d.cdf(lo_prev) + std::max(v - slack, 0.0)));
      env.upper[j] = std::max(up_prev, d.upper_quantile(d.cdf(up_prev) + v + slack));
      env.upper[j] = std::max(env.upper[j], env.lower[j]);
      lo_prev = env.lower[j];
      up_prev = env.upper[j];
    }
    return env;
  };
  const Envelope exact = envelope(0.0);
  const Envelope wide = envelope(tol);

  std::vector<double> out(n - 1);
  double next = 1.0;
  for (std::size_t j = n - 1; j-- > 0;) {
    const Density& d = inst.owner_density(j + 1);
    const auto error_at = [&](double x) { return std::abs(d.integral_on(x, next) - v); };

    // Positions where piece j+1 is worth exactly v, or as much as possible
    // when v is out of reach.
    const double level = d.cdf(next) - v;
    const double best_lo = level <= 0.0 ? 0.0 : d.lower_quantile(level);
    const double best_hi = d.upper_quantile(std::max(level, 0.0));

    // Prefer the exact envelope; widen only when it cannot reach the best set.
    double window_lo = 0.0;
    double window_hi = 0.0;
    for (const Envelope* env : {&exact, &wide}) {
      window_lo = std::min(env->lower[j], next);
      window_hi = std::max(window_lo, std::min(env->upper[j], next));
      if (best_hi >= window_lo && best_lo <= window_hi) break;
    }

    double pick;
    double spread = 0.0;
    if (best_hi < window_lo) {
      pick = window_lo;
    } else if (best_lo > window_hi) {
      pick = window_hi;
    } else {
      const double a = std::max(best_lo, window_lo);
      const double b = std::min(best_hi, window_hi);
      pick = 0.5 * (a + b);
      spread = b - a;
    }

    const double current = cuts[j];
    if (current >= window_lo && current <= window_hi && spread <= 1e-12 &&
        error_at(current) <= error_at(pick)) {
      pick = current;
    }
    out[j] = pick;
    next = pick;
  }
  return CutVector(std::move(out));
}

std::vector<SweepEntry> sweep_permutations(std::span<const Density> densities,
                                           const SweepOptions& options) {
  const std::size_t n = densities.size();
  if (n == 0) {
    throw Error(ErrorCode::InvalidInstance, "an instance needs at least one player");
  }
  if (n > options.max_players) {
    throw Error(ErrorCode::TooManyPlayers,
                std::to_string(n) + " players exceeds the sweep cap of " +
                    std::to_string(options.max_players));
  }

  std::vector<std::vector<std::size_t>> orders;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    orders.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));

  const std::vector<Density> owned(densities.begin(), densities.end());
  const SolveOptions solve_opts{options.tol, SolveOptions{}.max_iter};
  std::vector<std::optional<SweepEntry>> slots(orders.size());
  const auto solve_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Permutation sigma(orders[k]);
      const Instance inst(owned, sigma);
      slots[k] = SweepEntry{std::move(sigma), solve_equitable(inst, solve_opts)};
    }
  };

  const std::size_t workers =
      options.parallel ? std::max<std::size_t>(1, std::thread::hardware_concurrency()) : 1;
  if (workers == 1 || orders.size() < 2) {
    solve_range(0, orders.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (orders.size() + workers - 1) / workers;
    for (std::size_t begin = 0; begin < orders.size(); begin += chunk) {
      pool.emplace_back(solve_range, begin, std::min(orders.size(), begin + chunk));
    }
  }

  std::vector<SweepEntry> entries;
  entries.reserve(slots.size());
  for (auto& slot : slots) entries.push_back(std::move(*slot));
  // Entries are generated in lexicographic sigma order, so a stable sort
  // settles ties by sigma.
  std::stable_sort(entries.begin(), entries.end(), [](const SweepEntry& a, const SweepEntry& b) {
    return a.solution.value > b.solution.value;
  });
  return entries;
}

}  // namespace eqdiv

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eqdiv/error.hpp"
#include "eqdiv/solver.hpp"
#include "eqdiv/topology.hpp"
#include "test_support.hpp"

using namespace eqdiv;
using namespace eqdiv::testing;

namespace {

SpherePoint random_sphere_point(std::size_t n, std::mt19937_64& rng) {
  std::vector<double> e(n);
  for (auto& x : e) x = 2.0 * uniform01(rng) - 1.0;
  // Exercise sgn(0) too.
  if (rng() % 5 == 0) e[rng() % n] = 0.0;
  if (std::all_of(e.begin(), e.end(), [](double x) { return x == 0.0; })) e[0] = 1.0;
  return SpherePoint::normalized(std::move(e));
}

}  // namespace

TEST(SpherePoint, RejectsOffSphere) {
  EXPECT_THROW(SpherePoint({1.0, 1.0}), Error);
  EXPECT_THROW(SpherePoint({}), Error);
  EXPECT_THROW(SpherePoint::normalized({0.0, 0.0}), Error);
  EXPECT_NO_THROW(SpherePoint({0.6, 0.8}));
}

TEST(SphereToCuts, Examples) {
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(sphere_to_cuts(SpherePoint({h, -h}))[0], 0.5, 1e-15);

  const auto c3 = sphere_to_cuts(SpherePoint({0.5, std::sqrt(0.5), 0.5}));
  EXPECT_NEAR(c3[0], 0.25, 1e-15);
  EXPECT_NEAR(c3[1], 0.75, 1e-15);

  EXPECT_EQ(sphere_to_cuts(SpherePoint({1.0, 0.0}))[0], 1.0);
}

TEST(CutsToSphere, Examples) {
  const auto e2 = cuts_to_sphere(CutVector({0.5}));
  EXPECT_NEAR(e2[0], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(e2[1], std::sqrt(0.5), 1e-15);

  const auto e3 = cuts_to_sphere(CutVector({1.0 / 3.0, 2.0 / 3.0}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(e3[i], 1.0 / std::sqrt(3.0), 1e-15);

  const auto e1 = cuts_to_sphere(CutVector{});
  ASSERT_EQ(e1.dimension(), 1u);
  EXPECT_EQ(e1[0], 1.0);
}

TEST(CutsToSphere, InvalidCuts) {
  EXPECT_THROW(CutVector({0.6, 0.4}), Error);
  EXPECT_THROW(CutVector({-0.1}), Error);
  EXPECT_THROW(CutVector({1.2}), Error);
}

TEST(ResidualMap, Examples) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const Instance inst(uniform_players(n));
    const auto f = residual_map(inst, SpherePoint::normalized(std::vector<double>(n, 1.0)));
    ASSERT_EQ(f.size(), n - 1);
    for (const double x : f) EXPECT_NEAR(x, 0.0, 1e-15);
  }
  const Instance two(uniform_players(2));
  EXPECT_EQ(residual_map(two, SpherePoint({1.0, 0.0})), std::vector<double>{-1.0});
  EXPECT_EQ(residual_map(two, SpherePoint({0.0, 1.0})), std::vector<double>{1.0});
  EXPECT_THROW(residual_map(two, SpherePoint({1.0})), Error);
}

TEST(ResidualMap, SignedPiecesFollowTheFormula) {
  // e = (-0.6, 0.8): F_1 = +mu_2([0.36, 1]) - (-1) mu_1([0, 0.36]).
  const Instance inst({ramp(), Density::uniform()});
  const auto f = residual_map(inst, SpherePoint({-0.6, 0.8}));
  EXPECT_NEAR(f[0], 0.64 + 0.36 * 0.36, 1e-15);
}

TEST(TopologyProperties, Antipodality) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto kind = trial % 2 ? DensityKind::PiecewiseLinear : DensityKind::PiecewiseConstant;
    const Instance inst = random_instance(static_cast<std::uint64_t>(trial), n, kind);
    const SpherePoint e = random_sphere_point(n, rng);
    const auto f = residual_map(inst, e);
    const auto g = residual_map(inst, e.antipode());
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LE(std::abs(f[i] + g[i]), 1e-12);
  }
}

TEST(TopologyProperties, Roundtrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> cuts(rng() % 7);
    for (auto& x : cuts) x = uniform01(rng);
    std::sort(cuts.begin(), cuts.end());
    const CutVector c(cuts);
    const auto back = sphere_to_cuts(cuts_to_sphere(c));
    for (std::size_t i = 0; i < cuts.size(); ++i) EXPECT_NEAR(back[i], cuts[i], 1e-14);
  }
}

TEST(TopologyProperties, Continuity) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const Instance inst = random_instance(static_cast<std::uint64_t>(trial) + 5000, n);
    const SpherePoint e = random_sphere_point(n, rng);
    std::vector<double> delta(n);
    double norm = 0.0;
    for (auto& d : delta) {
      d = 2.0 * uniform01(rng) - 1.0;
      norm += d * d;
    }
    norm = std::sqrt(norm);
    std::vector<double> moved = e.coords();
    for (std::size_t i = 0; i < n; ++i) moved[i] += 1e-7 * delta[i] / norm;
    const SpherePoint e2 = SpherePoint::normalized(moved);

    double max_h = 0.0;
    for (const auto& d : inst.densities()) max_h = std::max(max_h, d.max_height());
    const double lipschitz = 2.0 * max_h + 1.0;
    const auto f1 = residual_map(inst, e);
    const auto f2 = residual_map(inst, e2);
    double diff = 0.0;
    for (std::size_t i = 0; i < f1.size(); ++i) diff = std::max(diff, std::abs(f1[i] - f2[i]));

    // sgn jumps where a coordinate crosses zero; skip those points.
    bool crosses = false;
    for (std::size_t i = 0; i < n; ++i) crosses |= std::abs(e[i]) < 1e-6;
    if (!crosses) EXPECT_LE(diff, lipschitz * 1e-7) << "trial " << trial;
  }
}

TEST(TopologyProperties, ZeroCertificateOfSolverOutput) {
  for (std::uint64_t seed = 300; seed < 400; ++seed) {
    const Instance inst = random_instance(seed, 2 + seed % 5);
    const auto sol = solve_equitable(inst);
    EXPECT_LE(residual_norm(inst, cuts_to_sphere(sol.cuts)), 2.0 * sol.gap + 1e-12);
  }
}

TEST(DescentRefine, FixedAtZero) {
  const Instance inst(uniform_players(3));
  const SpherePoint start = cuts_to_sphere(CutVector({1.0 / 3.0, 2.0 / 3.0}));
  const auto out = descent_refine(inst, start, 1e-9, 100);
  EXPECT_EQ(out.coords(), start.coords());
}

TEST(DescentRefine, FindsGoldenCut) {
  const Instance inst({ramp(), Density::uniform()});
  const auto out = descent_refine(inst, cuts_to_sphere(CutVector({0.5})), 1e-9, 200);
  EXPECT_NEAR(sphere_to_cuts(out)[0], golden_cut(), 1e-6);
}

TEST(DescentRefine, NeverWorse) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const Instance inst = random_instance(seed + 900, n);
    const SpherePoint start = random_sphere_point(n, rng);
    const auto out = descent_refine(inst, start, 1e-9, 30);
    EXPECT_LE(residual_norm(inst, out), residual_norm(inst, start));
  }
}

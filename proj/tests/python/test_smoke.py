import math
import os
from pathlib import Path

import pytest

import eqdiv

DATA = Path(os.environ.get("EQDIV_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_uniform_three():
    inst = eqdiv.Instance([eqdiv.Density.uniform()] * 3)
    sol = eqdiv.solve_equitable(inst)
    assert sol.status == eqdiv.SolveStatus.Converged
    assert sol.cuts.values == pytest.approx([1 / 3, 2 / 3], abs=1e-12)
    assert sol.value == pytest.approx(1 / 3, abs=1e-12)


def test_golden_ratio():
    inst = eqdiv.Instance([eqdiv.Density.linear([0, 1], [0, 2]), eqdiv.Density.uniform()])
    sol = eqdiv.solve_equitable(inst, tol=1e-9)
    x = (math.sqrt(5) - 1) / 2
    assert sol.cuts[0] == pytest.approx(x, abs=1e-9)
    assert sol.value == pytest.approx(1 - x, abs=1e-9)


def test_density_queries():
    d = eqdiv.Density.constant([0, 0.5, 1], [3, 1])
    assert d.scale == pytest.approx(2.0)
    assert d.cdf(0.5) == pytest.approx(0.75)
    assert d.integral_on(0.25, 0.75) == pytest.approx(0.5)
    assert d.generalized_inverse(0.0, 0.75) == pytest.approx(0.5)
    assert d.generalized_inverse(0.9, 0.5) is None


def test_errors_carry_code():
    with pytest.raises(eqdiv.Error) as info:
        eqdiv.Density.constant([0, 0.5, 0.4, 1], [1, 1, 1])
    assert info.value.code == "MalformedBreakpoints"
    with pytest.raises(ValueError):
        eqdiv.Density.constant([0, 1], [0])


def test_sweep_disjoint():
    dens = [eqdiv.Density.constant([0, 0.5, 1], [2, 0]), eqdiv.Density.constant([0, 0.5, 1], [0, 2])]
    rows = eqdiv.sweep_permutations(dens, parallel=True)
    assert [r.sigma.order for r in rows] == [[0, 1], [1, 0]]
    assert rows[0].solution.value == pytest.approx(1.0, abs=1e-12)
    assert rows[1].solution.value == pytest.approx(0.0, abs=1e-12)


def test_topology_and_analysis():
    inst = eqdiv.Instance([eqdiv.Density.uniform()] * 2)
    e = eqdiv.cuts_to_sphere([0.5])
    assert eqdiv.sphere_to_cuts(e).values == pytest.approx([0.5])
    f = eqdiv.residual_map(inst, eqdiv.SpherePoint([0.6, 0.8]))
    g = eqdiv.residual_map(inst, eqdiv.SpherePoint([-0.6, -0.8]))
    assert f[0] == pytest.approx(-g[0], abs=1e-15)

    m = eqdiv.valuation_matrix(inst.densities, [0.25], [0, 1])
    report = eqdiv.fairness_report(m, [0, 1])
    assert report.equitable_gap == pytest.approx(0.5)
    assert not report.proportional_ok


def test_oracle_and_parse():
    f = eqdiv.parse_instance(DATA / "golden2.json")
    assert f.tol == pytest.approx(1e-9)
    grid = eqdiv.grid_search_equitable(f.instance, 1e-3)
    sol = eqdiv.solve_equitable(f.instance)
    assert sol.gap <= grid.gap + 2e-3 * max(d.max_height for d in f.instance.densities)

import numpy as np
import pytest

from spinring.errors import NoCrossingError
from spinring.hamiltonian import CouplingParams
from spinring.mg_analytics import n6_exact
from spinring.sweep import (
    REFERENCE_JUMPS,
    epsilon_drift,
    grid_from_spec,
    locate_crossing,
    locate_point_b,
    momentum_switches,
    scan,
)


def test_grid_spec():
    assert len(grid_from_spec("0:2:0.01")) == 201
    assert grid_from_spec("0.5:0.5:0.1").tolist() == [0.5]
    with pytest.raises(ValueError):
        grid_from_spec("1:0:0.1")


def test_six_site_scan_momenta():
    pts = scan(CouplingParams.uniform(6, 0.0), grid_from_spec("0:2:0.05"), with_concurrence=False)
    for p in pts:
        assert p.e_first_excited >= p.e_ground
        if p.j_over_j0 < 0.49:
            assert p.ground_momentum == 3
        elif p.j_over_j0 > 0.51:
            assert p.ground_momentum == 0


def test_eight_site_scan_has_two_switches():
    pts = scan(CouplingParams.uniform(8, 0.0), grid_from_spec("0:3:0.02"), with_concurrence=False)
    moms = [p.ground_momentum for p in pts]
    assert sum(a != b for a, b in zip(moms, moms[1:])) == 2


def test_scan_slopes_near_mg_point():
    step = 1e-3
    pts = scan(CouplingParams.uniform(6, 0.0), [0.5 - step, 0.5 + step], with_concurrence=False)
    left = n6_exact(CouplingParams.uniform(6, 0.5 - step))
    right = n6_exact(CouplingParams.uniform(6, 0.5 + step))
    assert pts[0].e_ground == pytest.approx(left.e2, abs=1e-12)
    assert pts[1].e_ground == pytest.approx(right.e1, abs=1e-12)


def test_scan_rejects_unsorted_grid():
    with pytest.raises(ValueError):
        scan(CouplingParams.uniform(6, 0.0), [0.3, 0.1])


def test_scan_threads_deterministic():
    grid = grid_from_spec("0:1:0.1")
    a = scan(CouplingParams.uniform(8, 0.0), grid, threads=1)
    b = scan(CouplingParams.uniform(8, 0.0), grid, threads=3)
    assert [p.e_ground for p in a] == [p.e_ground for p in b]
    assert all(np.array_equal(x.concurrences.per_alpha, y.concurrences.per_alpha) for x, y in zip(a, b))


@pytest.mark.parametrize("n", [6, 12])
def test_point_a(n):
    c = locate_crossing(CouplingParams.uniform(n, 0.0), (0.3, 0.55), with_jump=False)
    assert abs(c.j_c - 0.5) < 1e-9
    assert c.label == "A"
    assert c.iterations <= 60


def test_point_a_six_site_wide_bracket():
    c = locate_crossing(CouplingParams.uniform(6, 0.0), (0.3, 0.7))
    assert abs(c.j_c - 0.5) < 1e-9
    assert {c.left_sector.momentum_index, c.right_sector.momentum_index} == {0, 3}


def test_no_crossing():
    with pytest.raises(NoCrossingError):
        locate_crossing(CouplingParams.uniform(8, 0.0), (0.1, 0.3))


def test_point_b_eight_sites():
    t = CouplingParams.uniform(8, 0.0)
    c = locate_crossing(t, (0.6, 3.0))
    assert c.label == "B"
    assert c.j_c == pytest.approx(0.7481769108, abs=1e-8)
    assert (c.jump.left_momentum, c.jump.right_momentum) == (4, 0)
    assert epsilon_drift(t, c) < 1e-3


def test_twelve_sites_switch_twice_above_a():
    t = CouplingParams.uniform(12, 0.0)
    sw = momentum_switches(t, 0.55, 3.0, 0.01)
    assert len(sw) == 2
    with pytest.raises(NoCrossingError):
        locate_crossing(t, (0.55, 3.0))
    b = locate_point_b(t, with_jump=False)
    assert b.label == "B" and b.j_c == pytest.approx(0.57149015, abs=1e-7)
    later = locate_crossing(t, sw[1], with_jump=False)
    assert later.label == "other"


def test_reference_table_entries():
    assert REFERENCE_JUMPS[8] == {1: 0.7660, 2: 1.8228, "total": 1.0568}

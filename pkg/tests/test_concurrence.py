import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinring.basis import SymmetrySector
from spinring.concurrence import (
    CONVENTIONS,
    alpha_concurrences,
    concurrence_from_correlator,
    concurrence_jump,
    convention_weights,
    jump_between_sectors,
    pair_concurrences,
    pairwise_concurrence,
    report_from_pairs,
)
from spinring.errors import NoCrossingError
from spinring.hamiltonian import CouplingParams
from spinring.mg_analytics import dimer_pair, n6_exact
from spinring.observables import TwoSiteRDM
from spinring.spectra import lowest_levels


def _rdm(v, w, z):
    return TwoSiteRDM(v, w, z, (0, 1), np.eye(4))


def test_pairwise_examples():
    assert pairwise_concurrence(_rdm(0, 0.5, -0.5)) == pytest.approx(1)
    assert pairwise_concurrence(_rdm(1, 0, 0)) == 0


@pytest.mark.parametrize("x, c", [(-3, 1), (-1, 0), (1, 0)])
def test_correlator_route_examples(x, c):
    assert concurrence_from_correlator(x) == pytest.approx(c)


def test_dimer_pairs_are_singlets():
    phi1, _ = dimer_pair(8)
    pairs = pair_concurrences(phi1)
    assert np.allclose(pairs[0, ::2], 1.0)
    assert np.allclose(pairs[0, 1::2], 0.0)
    assert np.allclose(pairs[1:], 0.0)
    assert alpha_concurrences(phi1, "ring").per_alpha[0] == pytest.approx(4.0)


def test_convention_weights():
    n = 8
    ring = convention_weights(n, "ring")
    assert ring.sum() == n * n / 2
    assert convention_weights(n, "paper-literal")[:, -1].sum() == 0
    assert convention_weights(n, "unique-pairs")[-1].sum() == n / 2
    assert np.allclose(convention_weights(n, "site-average"), ring / n)
    with pytest.raises(ValueError):
        convention_weights(n, "bogus")


@pytest.mark.parametrize("j", [0.0, 0.3, 0.7, 1.4])
def test_six_site_concurrences(j):
    p = CouplingParams.uniform(6, j)
    g = lowest_levels(p, 1).ground
    rep = alpha_concurrences(g.vector, "site-average")
    assert rep.per_alpha[0] == pytest.approx(n6_exact(p).c1_pair, abs=1e-10)
    assert np.allclose(rep.per_alpha[1:], 0.0, atol=1e-12)
    assert rep.total == pytest.approx(rep.per_alpha.sum())


@pytest.mark.parametrize("n, j", [(6, 0.2), (8, 0.9), (10, 0.4)])
def test_routes_agree_on_singlets(n, j):
    g = lowest_levels(CouplingParams.uniform(n, j), 1).ground
    assert np.allclose(pair_concurrences(g.vector, "rdm"), pair_concurrences(g.vector, "correlator"), atol=1e-10)


def test_translation_invariance_of_pairs():
    g = lowest_levels(CouplingParams.uniform(10, 0.3), 1).ground
    pairs = pair_concurrences(g.vector)
    assert np.abs(pairs - pairs[:, :1]).max() < 1e-10
    n = 10
    for conv, terms in (("ring", n), ("paper-literal", n - 1)):
        rep = report_from_pairs(pairs, conv)
        assert np.allclose(rep.per_alpha, terms * pairs[:, 0])


def test_jump_requires_momentum_change():
    p = CouplingParams.uniform(8, 0.2)
    with pytest.raises(NoCrossingError):
        concurrence_jump(p, p.with_j(0.3))


def test_jump_across_six_site_transition():
    rep = concurrence_jump(CouplingParams.uniform(6, 0.49), CouplingParams.uniform(6, 0.51), "site-average")
    assert {rep.left_momentum, rep.right_momentum} == {0, 3}
    assert rep.delta_total == pytest.approx(abs(rep.left.total - rep.right.total))


def test_same_coupling_sector_pair():
    p = CouplingParams.uniform(6, 0.5)
    rep = jump_between_sectors(p, SymmetrySector(0, 3), SymmetrySector(0, 0), "site-average")
    assert rep.left_momentum == 3 and rep.right_momentum == 0
    assert rep.j_left == rep.j_right == 0.5


@given(st.floats(0.0, 2.0), st.sampled_from(CONVENTIONS))
def test_concurrence_bounds(j, conv):
    g = lowest_levels(CouplingParams.uniform(8, j), 1).ground
    pairs = pair_concurrences(g.vector)
    assert pairs.min() >= 0 and pairs.max() <= 1 + 1e-12
    rep = report_from_pairs(pairs, conv)
    assert rep.total == pytest.approx(rep.per_alpha.sum())

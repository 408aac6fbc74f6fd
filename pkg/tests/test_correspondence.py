import pytest

from pfk3 import correspondence as corr
from pfk3.construction import PfaffianInstance
from pfk3.exactmath import wedge
from pfk3.rng import stream

P = 32003
E = [tuple(int(i == j) for j in range(6)) for i in range(6)]


def _forms_vanishing_on_e01(seed):
    """phi_0 = e2^e3 + e4^e5 (radical <e0, e1>); every form kills e0 ^ e1."""
    g = stream(seed, 7)
    first = [0] * 15
    first[9] = 1   # (2, 3)
    first[14] = 1  # (4, 5)
    rest = [[0] + [g.randrange(P) for _ in range(14)] for _ in range(5)]
    return [first] + rest


def test_radical_on_X_is_rejected():
    inst = PfaffianInstance(_forms_vanishing_on_e01(3), P, seed=3)
    y = (1, 0, 0, 0, 0, 0)
    assert inst.on_Y(y)
    assert inst.on_X(wedge(E[0], E[1], inst.field))
    with pytest.raises(corr.InstanceRejected):
        corr.radical_not_on_X(inst, y)


def test_rank_two_point_has_no_plane_radical():
    inst = PfaffianInstance([[1] + [0] * 14] + [[0] * 15] * 5, P)
    with pytest.raises(corr.RadicalError):
        corr.radical_basis(inst, (1, 0, 0, 0, 0, 0))


def test_schubert_cycle(inst):
    y = corr.sample_Y_points(inst, 1, seed=4)[0]
    sc = corr.schubert_cycle(inst, y)
    hd = sc.hilbert(inst)
    assert (sc.rank, hd.dim, hd.degree) == (6, 5, 4)
    r1, r2 = sc.radical
    # any plane through r1 lies on the cycle
    w = wedge(r1, E[0], inst.field)
    assert not any(f.evaluate(list(w)) for f in sc.forms)


def test_fiber_over_y(inst):
    y = corr.sample_Y_points(inst, 1, seed=5)[0]
    f = corr.fiber_over_Y(inst, y, seed=1)
    assert f.generic and sum(f.factor_degrees) == 4
    d = f.to_dict()
    assert d["status"] == "generic" and "seconds" not in d
    for w, _ in f.split:
        assert inst.on_X(w)
    pts = corr.xi_points(inst, y, fiber=f)
    assert sum(p.residue_degree for p in pts) == 4


def test_fiber_over_x(inst):
    pt = corr.sample_X_points(inst, 1, seed=6)[0]
    fx = corr.fiber_over_X(inst, pt)
    assert fx.p_columns_vanish
    assert fx.hilbert.poly_str() == "2n^2 + 3n + 1"


def test_identical_pair_is_skipped(inst):
    pts = corr.sample_X_points(inst, 2, seed=8)
    recs = corr.distinctness_checks(inst, [(pts[0], pts[0]), (pts[0], pts[1])])
    assert recs[0].skipped and not recs[0].passed
    assert recs[1].passed and recs[1].transversal_rank == 4


def test_flatness(inst):
    rep = corr.flatness_evidence(inst, corr.sample_X_points(inst, 3, seed=9))
    assert rep.constant and not rep.offending

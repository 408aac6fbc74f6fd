import json

import pytest

from pfk3.construction import (InstanceFormatError, PfaffianInstance, certify_instance, dumps_instance,
                               jacobian_corank, loads_instance, point_on_X, point_on_Y, sample_instance)
from pfk3.exactmath import pfaffian, plucker_residuals
from pfk3.rng import stream

P = 32003


def _random_uppers(seed, count=6):
    g = stream(seed, 99)
    return [[g.randrange(P) for _ in range(15)] for _ in range(count)]


def test_cubic_is_the_pfaffian(inst):
    for t in range(5):
        g = stream(t, 1)
        y = [g.randrange(P) for _ in range(6)]
        assert inst.Y_cubic.evaluate(y) == pfaffian(inst.form_at(y))
    assert inst.Y_cubic.is_homogeneous() and inst.Y_cubic.total_degree() == 3


def test_x_ideal_shape(inst):
    assert len(inst.plucker_quadrics) == 15 and len(inst.linear_forms) == 6
    assert inst.certificate.passed and inst.certificate.not_certified


def test_rank_two_form_makes_Y_singular():
    uppers = _random_uppers(1, 5)
    uppers.insert(0, [1] + [0] * 14)  # e0 ^ e1 has rank 2
    rep = certify_instance(PfaffianInstance(uppers, P, seed=0))
    assert rep.failed == "Y singular" and not rep.passed


def test_instance_json_round_trip(inst):
    text = dumps_instance(inst)
    back = loads_instance(text)
    assert dumps_instance(back) == text
    assert back.forms == inst.forms and back.certificate.to_dict() == inst.certificate.to_dict()


def test_tampered_instance_rejected(inst):
    d = json.loads(dumps_instance(inst))
    d["forms"][0][0] = (d["forms"][0][0] + 1) % P
    with pytest.raises(InstanceFormatError):
        loads_instance(json.dumps(d))
    d = json.loads(dumps_instance(inst))
    d["prime"] = 32005
    with pytest.raises(InstanceFormatError):
        loads_instance(json.dumps(d))
    with pytest.raises(InstanceFormatError):
        loads_instance("{not json")
    with pytest.raises(InstanceFormatError):
        loads_instance(json.dumps({"format": "other"}))


def test_bad_prime_rejected():
    with pytest.raises(ValueError):
        sample_instance(1, p=101)
    with pytest.raises(ValueError):
        sample_instance(1, p=32004)


def test_sampling_is_deterministic(inst):
    again = sample_instance(1)
    assert again.forms == inst.forms and again.attempt == inst.attempt


def test_x_points(inst):
    pts = [point_on_X(inst, s) for s in range(10)]
    assert len({p.plucker for p in pts}) == 10
    for pt in pts:
        assert inst.on_X(pt.plucker)
        assert not any(plucker_residuals(pt.plucker, inst.field))
        assert jacobian_corank(inst, pt.plucker) == 2
        p1, p2 = pt.basis
        assert all(phi(p1, p2) == 0 for phi in inst.forms)


def test_y_points(inst):
    ys = [point_on_Y(inst, s) for s in range(20)]
    assert len(set(ys)) >= 19
    for y in ys:
        assert inst.on_Y(y) and inst.form_at(y).rank() == 4

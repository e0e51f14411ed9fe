import json
import math

import pytest

import qcval as q


def square_chain():
    return q.QCFunction.simple(
        [1.0, 2.0],
        [q.ConvexBody.box([0, 0], [1, 1]), q.ConvexBody.box([0, 0], [0.5, 0.5])],
    )


def test_intrinsic_volumes():
    assert q.intrinsic_volumes(q.ConvexBody.box([0, 0, 0], [1, 1, 1])) == pytest.approx([1, 3, 3, 1])
    disk = q.intrinsic_volumes(q.ConvexBody.ball([0, 0], 1.0))
    assert disk == pytest.approx([1, math.pi, math.pi])
    est = q.steiner_fit_oracle(q.ConvexBody.ball([0, 0], 1.0), [0.1, 0.2, 0.4, 0.8], 100000, 3)
    for v, se, exact in zip(est["values"], est["standard_errors"], disk):
        assert abs(v - exact) <= 4 * se


def test_level_measure_and_forms():
    f = square_chain()
    assert f([0.25, 0.25]) == 2.0
    assert f.level_set(1.5).kind == "box"
    assert q.sk_measure(f, 2).atoms() == pytest.approx([(1.0, 0.75), (2.0, 0.25)])
    spec = q.ValuationSpec.phi_form([(2, q.ScalarFunction.table([(0, 0), (5, 5)]))], 0.0)
    assert not q.validate_spec(spec)["well_defined"]
    with pytest.raises(q.InadmissibleSpec):
        q.evaluate_phi_form(spec, f)
    assert q.evaluate_phi_form(spec, f, enforce_admissibility=False) == pytest.approx(1.25)


def test_duality_and_json():
    f = square_chain()
    spec = q.ValuationSpec.phi_form([(1, q.ScalarFunction.truncated_linear(0.25, 2.0))], 0.25)
    pos, neg = q.convert_to_nu(spec)
    assert q.evaluate(spec, f) == pytest.approx(q.evaluate(pos, f) - q.evaluate(neg, f), rel=1e-12)
    back = q.ValuationSpec.from_json(spec.to_json())
    assert q.evaluate(back, f) == pytest.approx(q.evaluate(spec, f), rel=1e-15)
    g = q.QCFunction.from_json(f.to_json())
    assert g([0.75, 0.75]) == 1.0
    with pytest.raises(q.InvalidArgument, match=r"\$\.bodies"):
        q.QCFunction.from_json(json.dumps({"kind": "simple", "levels": [1]}))


def test_cone_layer_cake():
    cone = q.QCFunction.cone([0, 0], 1.0, 1.0)
    r = q.layer_cake(q.ScalarFunction.power(1.0), cone, 200000, 5)
    assert abs(r["integral"] - math.pi / 3) <= 4 * r["standard_error"]


def test_checks_accept_python_callables():
    def squared(f):
        spec = q.ValuationSpec.phi_form([(f.dimension, q.ScalarFunction.power(1.0))], 0.0)
        return q.evaluate_phi_form(spec, f, enforce_admissibility=False) ** 2

    assert not q.check_valuation_identity(squared, pairs=10, seed=1)["passed"]
    spec = q.ValuationSpec.nu_form([(0, q.LevelMeasure.uniform(0.25, 2.0))], 0.25)
    assert q.check_valuation_identity(spec, pairs=10, seed=1)["passed"]
    assert q.check_invariance(spec, square_chain(), motions=10, seed=2)["passed"]


def test_recovery():
    sample = [q.ConvexBody.ball([0, 0], r) for r in (1.0, 2.0, 3.0)]
    sample.append(q.ConvexBody.box([0, 0], [1, 2]))
    coeffs, residual = q.hadwiger_fit(lambda k: 2 * q.intrinsic_volumes(k)[0] + 3 * q.intrinsic_volumes(k)[2], sample)
    assert coeffs == pytest.approx([2, 0, 3], abs=1e-9)
    spec = q.ValuationSpec.nu_form([(2, q.LevelMeasure.uniform(0.5, 1.0))], 0.5)
    psi, cond = q.extract_psi(spec, 2, 0.75, [1.0, 2.0, 4.0])
    assert psi == pytest.approx([0, 0, 0.25], abs=1e-8)
    value, seq = q.atomic_counterexample(2, 10)
    assert value == pytest.approx(math.pi)
    assert seq == [0.0] * 10


def test_divergence():
    trace = q.divergence_trace(1, 2, q.ScalarFunction.power(1.0))
    ints = trace["partial_integrals"]
    assert all(b > a for a, b in zip(ints, ints[1:]))
    assert trace["sustained_growth"]
    with pytest.raises(q.PhiVanishesNearZero):
        q.divergence_trace(1, 2, q.ScalarFunction.truncated_linear(0.25))

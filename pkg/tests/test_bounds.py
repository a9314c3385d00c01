import json
import math

import numpy as np
import pytest

from wentropy.bounds import (
    BoundId,
    BoundVerdict,
    ClassificationError,
    ClassVerdict,
    bound_global,
    bound_past_upper,
    bound_residual_lower,
    classify,
    envelope,
    envelope_maximum,
    is_decreasing_on_grid,
)
from wentropy.distributions import (
    BetaDist,
    Exponential,
    GammaDist,
    PiecewiseConstant,
    TriangularDown,
    TriangularUp,
    Uniform,
)
from wentropy.entropies import weighted_entropy


class TestGlobal:
    @pytest.mark.parametrize("nu", [0.5, 1.0, 2.0, 7.0])
    def test_uniform_equality(self, nu):
        rep = bound_global(Uniform(0, nu))
        assert rep.lhs[0] == pytest.approx(nu / 2 * math.log(nu), abs=1e-10)
        assert rep.slack[0] == pytest.approx(0.0, abs=1e-10)
        assert rep.verdict is BoundVerdict.HOLDS

    @pytest.mark.parametrize("d", [TriangularUp(), TriangularDown(), BetaDist(2, 3),
                                   PiecewiseConstant((0.2, 0.5, 0.3))], ids=str)
    def test_other_families(self, d):
        rep = bound_global(d)
        assert rep.min_slack >= -1e-8
        assert rep.verdict is BoundVerdict.HOLDS

    def test_envelope_maximum(self):
        assert envelope_maximum(1.0) == pytest.approx((1 / (2 * math.e), 1 / (2 * math.e)))
        mu, b = envelope_maximum(6.0)
        assert mu == 6.0 and b == pytest.approx(6 * math.log(3), rel=1e-15)

    @pytest.mark.parametrize("nu", [0.7, 2.0, 5.0, 6.0, 9.0])
    def test_envelope_maximum_is_the_maximum(self, nu):
        mu_m, b_m = envelope_maximum(nu)
        mus = np.linspace(1e-4, nu, 4001)
        assert max(envelope(m, nu) for m in mus) <= b_m + 1e-9
        assert envelope(mu_m, nu) == pytest.approx(b_m, rel=1e-12)

    def test_bound_dominated_by_envelope_maximum(self):
        d = BetaDist(2, 3)
        assert weighted_entropy(d) <= envelope_maximum(1.0)[1]

    def test_infinite_support(self):
        rep = bound_global(Exponential(1))
        assert not rep.precondition_met
        assert rep.verdict is BoundVerdict.NOT_APPLICABLE


class TestResidualLower:
    def test_exponential(self):
        rep = bound_residual_lower(Exponential(1), [1.0])
        assert rep.lhs[0] == pytest.approx(3.0, abs=1e-9)
        assert rep.rhs[0] == pytest.approx(0.0, abs=1e-12)
        assert rep.slack[0] == pytest.approx(3.0, abs=1e-9)
        rep2 = bound_residual_lower(Exponential(2), [0.5])
        assert rep2.lhs[0] == pytest.approx(1.5 - math.log(2), abs=1e-9)
        assert rep2.rhs[0] == pytest.approx(-math.log(2), abs=1e-9)
        assert rep2.slack[0] == pytest.approx(1.5, abs=1e-9)

    def test_gamma_decreasing_hazard(self):
        rep = bound_residual_lower(GammaDist(0.5, 1), np.linspace(0.2, 3, 5))
        assert rep.precondition_met
        assert min(rep.slack) >= 0

    @pytest.mark.parametrize("d", [GammaDist(2, 1), Uniform(0, 1), TriangularUp()], ids=str)
    def test_increasing_hazard_not_applicable(self, d):
        rep = bound_residual_lower(d, [0.5])
        assert rep.verdict is BoundVerdict.NOT_APPLICABLE


class TestPastUpper:
    @pytest.mark.parametrize("nu", [1.0, 3.0])
    def test_uniform_equality(self, nu):
        ts = np.linspace(0.1, nu * 0.95, 6)
        eq25, eq17 = bound_past_upper(Uniform(0, nu), ts)
        np.testing.assert_allclose(eq25.lhs, [t / 2 * math.log(t) for t in ts], atol=1e-10)
        np.testing.assert_allclose(eq25.slack, 0, atol=1e-10)
        assert eq17.verdict is BoundVerdict.HOLDS

    def test_uniform_eq17_example(self):
        _, eq17 = bound_past_upper(Uniform(0, 1), [0.5])
        assert eq17.rhs[0] == pytest.approx(0.25 + 0.25 * math.log(0.5), abs=1e-10)
        assert eq17.lhs[0] == pytest.approx(0.25 * math.log(0.5), abs=1e-10)
        assert eq17.slack[0] == pytest.approx(0.25, abs=1e-10)

    def test_triangular_up(self):
        eq25, eq17 = bound_past_upper(TriangularUp(), np.linspace(0.1, 0.9, 5))
        assert eq25.verdict is BoundVerdict.HOLDS and min(eq25.slack) >= -1e-7
        assert eq17.precondition_met and min(eq17.slack) >= 0

    def test_exponential(self):
        eq25, eq17 = bound_past_upper(Exponential(1), [0.5, 1, 2])
        assert eq25.verdict is BoundVerdict.HOLDS
        assert eq17.verdict is BoundVerdict.HOLDS

    def test_increasing_reversed_hazard_not_applicable(self):
        # Beta(0.5, 0.5): tau = f/F rises near 1
        _, eq17 = bound_past_upper(BetaDist(0.5, 0.5), [0.5])
        assert eq17.verdict is BoundVerdict.NOT_APPLICABLE

    def test_json(self):
        eq25, _ = bound_past_upper(Uniform(0, 1), [0.5])
        obj = json.loads(eq25.to_json())
        assert obj["bound_id"] == "Eq25_past_upper"
        assert {"precondition_met", "t_grid", "lhs", "rhs", "slack", "verdict"} <= set(obj)


def test_monotone_check():
    assert is_decreasing_on_grid(lambda t: 1 / t, np.geomspace(0.1, 10, 64))
    assert is_decreasing_on_grid(lambda t: 2.0, np.linspace(0, 1, 10))
    assert not is_decreasing_on_grid(lambda t: t, np.linspace(0, 1, 10))


class TestClassify:
    @pytest.mark.parametrize("d,kind,label", [
        (Exponential(3), "wurl", "DWURL"),
        (Exponential(2), "wurl", "IWURL"),
        (Uniform(0, 2.5), "wurl", "DWURL"),
        (Uniform(0, 3), "wurl", "Neither"),
        (Uniform(0, 0.3), "wupl", "DWUPL"),
        (Uniform(0, 1), "wupl", "Neither"),
    ], ids=lambda v: getattr(v, "spec", v))
    def test_boundaries(self, d, kind, label):
        rep = classify(d, kind)
        assert rep.label == label
        assert len(rep.derivative_samples) == 128

    @pytest.mark.parametrize("nu,wurl,wupl", [(0.3, "Decreasing", "Decreasing"),
                                              (1.0, "Decreasing", "Neither"),
                                              (2.5, "Decreasing", "Neither"),
                                              (3.0, "Neither", "Neither")])
    def test_uniform_iff_conditions(self, nu, wurl, wupl):
        # DWURL iff nu <= e, DWUPL iff nu <= 1/e
        assert classify(Uniform(0, nu), "wurl").verdict.value == wurl
        assert classify(Uniform(0, nu), "wupl").verdict.value == wupl

    def test_flat_derivative_reports_both_flags(self):
        rep = classify(Exponential(math.e), "wurl")
        assert rep.verdict is ClassVerdict.DECREASING
        assert rep.decreasing and rep.increasing

    def test_samples_match_closed_derivative(self):
        rep = classify(Exponential(2), "wurl")
        for _, g in rep.derivative_samples:
            assert g == pytest.approx(1 - math.log(2), abs=1e-7)

    def test_json(self):
        obj = json.loads(classify(Uniform(0, 2.5), "wurl").to_json())
        assert obj["verdict"] == "Decreasing"
        assert obj["class_kind"] == "WURL"
        assert len(obj["derivative_samples"]) == 128

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            classify(Uniform(0, 1), "other")

    def test_too_few_points(self, monkeypatch):
        import wentropy.bounds as b

        def broken(*args, **kwargs):
            raise ArithmeticError("boom")

        monkeypatch.setattr(b, "differentiate", broken)
        with pytest.raises(ClassificationError):
            classify(Uniform(0, 1), "wurl")

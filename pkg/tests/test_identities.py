import json
import math

import numpy as np
import pytest

from wentropy.distributions import BetaDist, Exponential, GammaDist, TriangularUp, Uniform
from wentropy.entropies import default_grid
from wentropy.identities import (
    IdentityId,
    IdentityReport,
    Verdict,
    audit_limit_claims,
    audit_paper_derivative_identities,
    audit_uniform_comparison,
    check_affine_and_product,
    check_corrected_derivatives,
    check_decomposition,
    check_head_mean_identity,
    check_tail_mean_identity,
    monotonicity_pairs,
)

LOG_HALF = math.log(0.5)


def interior(d, n):
    # drop the outermost points where differencing turns one-sided
    return default_grid(d, n + 4)[2:-2]


class TestReport:
    def test_verdicts(self):
        ok = IdentityReport(IdentityId.EQ9, "x", (1.0,), (1.0,), (1.0 + 1e-9,), 1e-8)
        bad = IdentityReport(IdentityId.EQ9, "x", (1.0,), (1.0,), (1.1,), 1e-8)
        inf = IdentityReport(IdentityId.EQ9, "x", (1.0,), (1.0,), (math.inf,), 1e-8)
        assert ok.verdict is Verdict.HOLDS and ok.holds
        assert bad.verdict is Verdict.FAILS
        assert inf.verdict is Verdict.DIVERGES and inf.max_abs_residual == math.inf

    def test_json_schema(self):
        rep = check_tail_mean_identity(Exponential(1), [1.0, 2.0])
        obj = json.loads(rep.to_json())
        assert {"identity_id", "dist", "residuals", "max_abs_residual", "verdict"} <= set(obj)
        assert obj["residuals"][0].keys() == {"t", "lhs", "rhs"}
        assert obj["identity_id"] == "Eq9"


class TestHolding:
    @pytest.mark.parametrize("d,t,tol", [(Exponential(1), 1.0, 1e-7), (Uniform(0, 1), 0.5, 1e-7),
                                         (GammaDist(2, 1), 2.0, 1e-6)], ids=str)
    def test_decomposition_examples(self, d, t, tol):
        rep = check_decomposition(d, t)
        assert rep.max_abs_residual < tol

    def test_decomposition_uniform_components(self):
        rep = check_decomposition(Uniform(0, 1), 0.5)
        assert rep.lhs[0] == pytest.approx(0.0, abs=1e-12)
        # E X [-F* log F - Fbar* log Fbar] + F Hw_past + S Hw_res with the closed values
        expected = 0.5 * (-0.25 * LOG_HALF - 0.75 * LOG_HALF) + 0.5 * 0.25 * LOG_HALF + 0.5 * 0.75 * LOG_HALF
        assert rep.rhs[0] == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("d", [Exponential(1.0), Uniform(0, 1), GammaDist(2, 1), BetaDist(2, 1)],
                             ids=str)
    def test_decomposition_on_grid(self, d):
        rep = check_decomposition(d, default_grid(d, 12)[1:-1])
        assert len(rep.t_grid) == 10
        assert rep.holds, rep.max_abs_residual

    def test_mean_identity_examples(self):
        rep = check_tail_mean_identity(Exponential(1), 1.0)
        assert rep.lhs[0] == pytest.approx(2 / math.e, abs=1e-12)
        assert rep.max_abs_residual < 1e-9
        head = check_head_mean_identity(Uniform(0, 1), 0.5)
        assert head.lhs[0] == pytest.approx(0.125, abs=1e-14)
        assert head.rhs[0] == pytest.approx(0.125, abs=1e-14)
        assert check_tail_mean_identity(GammaDist(2, 1), 1.0).max_abs_residual < 1e-8

    @pytest.mark.parametrize("d", [Exponential(0.5), Uniform(0, 2), GammaDist(0.5, 1), BetaDist(2, 3),
                                   TriangularUp()], ids=str)
    def test_mean_identities_on_grid(self, d):
        ts = default_grid(d, 9)
        assert check_tail_mean_identity(d, ts).holds
        assert check_head_mean_identity(d, ts).holds

    @pytest.mark.parametrize("d", [Exponential(1), Uniform(0, 1), GammaDist(2, 1)], ids=str)
    def test_corrected_derivatives(self, d):
        reports = check_corrected_derivatives(d, interior(d, 5))
        assert [r.identity_id for r in reports] == [
            IdentityId.CORRECTED_RESIDUAL_DERIVATIVE, IdentityId.CORRECTED_PAST_DERIVATIVE,
            IdentityId.CORRECTED_EQ10]
        for r in reports:
            assert r.holds, (r.identity_id, r.max_abs_residual)

    def test_corrected_examples(self):
        r, _, c = check_corrected_derivatives(Exponential(1), [1.0])
        assert r.lhs[0] == pytest.approx(1.0, abs=1e-5) and r.rhs[0] == pytest.approx(1.0, abs=1e-8)
        assert c.rhs[0] == pytest.approx(3.0, abs=1e-8)
        _, p, _ = check_corrected_derivatives(Uniform(0, 1), [0.5])
        assert p.lhs[0] == pytest.approx(0.5 * LOG_HALF + 0.5, abs=1e-5)
        assert p.rhs[0] == pytest.approx(0.5 * LOG_HALF + 0.5, abs=1e-9)

    def test_affine_and_product(self):
        reports = check_affine_and_product(Exponential(1), Uniform(0, 1), 2.0, 1.0)
        by_id = {r.identity_id: r for r in reports}
        assert by_id[IdentityId.PROP21I].rhs[0] == pytest.approx(5 + 3 * math.log(2), abs=1e-12)
        assert by_id[IdentityId.PROP21II].lhs[0] == pytest.approx(1.0, abs=1e-6)
        assert all(r.holds for r in reports)

    def test_uniform_product_and_identity_map(self):
        reports = check_affine_and_product(Uniform(0, 2), Uniform(0, 2), 1.0, 0.0)
        assert all(r.holds for r in reports)
        eq29 = [r for r in reports if r.identity_id is IdentityId.EQ29]
        assert eq29[0].lhs[0] == pytest.approx(math.log(2), abs=1e-10)
        prop = reports[0]
        assert prop.lhs[0] == pytest.approx(prop.rhs[0], abs=1e-10)

    def test_affine_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            check_affine_and_product(Exponential(1), Uniform(0, 1), -1.0, 0.0)


class TestAudit:
    def test_exponential(self):
        e10, e11, _ = audit_paper_derivative_identities(Exponential(1), [1.0])
        assert e10.verdict is Verdict.DIVERGES
        assert e10.lhs[0] == pytest.approx(3.0, abs=1e-9)
        assert e11.verdict is Verdict.FAILS
        assert e11.lhs[0] == pytest.approx(1.0, abs=1e-5)
        assert e11.rhs[0] == pytest.approx(0.0, abs=1e-5)
        assert "CorrectedResidualDerivative" in e11.note

    def test_uniform(self):
        e10, _, e16 = audit_paper_derivative_identities(Uniform(0, 1), [0.5])
        assert e16.lhs[0] == pytest.approx(0.25 * LOG_HALF, abs=1e-10)
        assert e16.rhs[0] == pytest.approx(0.5, abs=1e-8)
        assert e16.verdict is Verdict.FAILS
        # finite on this family, reported but not equal
        assert math.isfinite(e10.rhs[0]) and e10.verdict is Verdict.FAILS
        assert e10.lhs[0] == pytest.approx(0.75 * LOG_HALF, abs=1e-10)

    @pytest.mark.parametrize("d", [Exponential(2), Uniform(0, 3)], ids=str)
    def test_never_passes_silently(self, d):
        reports = audit_paper_derivative_identities(d, interior(d, 3))
        assert all(r.verdict is not Verdict.HOLDS for r in reports)

    def test_limit_claims(self):
        printed, transposed = audit_limit_claims(Exponential(1))
        assert printed.verdict is Verdict.FAILS
        assert transposed.holds

    def test_uniform_comparison(self):
        rec = audit_uniform_comparison(0.9, 1.3)
        assert rec["mean"] >= 1 and rec["H"] < 0
        assert rec["claim_holds"] is False
        assert audit_uniform_comparison(0.0, 4.0)["claim_holds"] is True

    def test_monotonicity_pairs_reported(self):
        pairs = monotonicity_pairs(Exponential(1), [0.5, 1.0])
        for p in pairs:
            assert p["dH"] == pytest.approx(0.0, abs=1e-6)
            assert p["dHw"] == pytest.approx(1.0, abs=1e-5)

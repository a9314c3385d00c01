import json
import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy import special as sp

from wentropy.distributions import (
    BetaDist,
    DegenerateTailError,
    Exponential,
    GammaDist,
    PiecewiseConstant,
    TriangularDown,
    TriangularUp,
    Uniform,
)
from wentropy.entropies import (
    EntropyCurve,
    MeasureKind,
    closed_form_weighted_entropy,
    closed_form_weighted_past,
    closed_form_weighted_residual,
    default_grid,
    differential_entropy,
    entropy_curve,
    evaluate,
    joint_weighted_entropy_independent,
    joint_weighted_entropy_quadrature,
    length_biased_cdf,
    length_biased_survival,
    mean_past_lifetime,
    mean_residual_value,
    past_entropy,
    residual_entropy,
    weighted_entropy,
    weighted_past_entropy,
    weighted_residual_entropy,
)

LOG2 = math.log(2.0)


def scipy_weighted_entropy(pdf, a, b):
    def g(x):
        f = pdf(x)
        return -x * f * math.log(f) if f > 0 else 0.0

    return sp_integrate.quad(g, a, b, epsabs=1e-13, epsrel=1e-12, limit=500)[0]


class TestStatic:
    def test_differential_entropy_examples(self):
        assert differential_entropy(TriangularUp()) == pytest.approx(0.5 - LOG2, abs=1e-9)
        assert differential_entropy(Uniform(0, 1)) == pytest.approx(0.0, abs=1e-12)
        assert differential_entropy(Exponential(1)) == pytest.approx(1.0, abs=1e-9)
        assert differential_entropy(Exponential(3)) == pytest.approx(1 - math.log(3), abs=1e-9)

    def test_weighted_entropy_examples(self):
        assert weighted_entropy(Exponential(1)) == pytest.approx(2.0, abs=1e-9)
        assert weighted_entropy(TriangularUp()) == pytest.approx(2 / 9 - 2 / 3 * LOG2, abs=1e-9)
        assert weighted_entropy(TriangularDown()) == pytest.approx(5 / 18 - LOG2 / 3, abs=1e-9)

    def test_triangular_pair_ordering(self):
        # equal differential entropies, different weighted entropies
        up, down = TriangularUp(), TriangularDown()
        assert differential_entropy(up) == pytest.approx(differential_entropy(down), abs=1e-10)
        assert weighted_entropy(up) < weighted_entropy(down)

    def test_arbitrarily_negative(self):
        d = Uniform(1 - 1e-6, 1)
        assert weighted_entropy(d) == pytest.approx((1 - 5e-7) * math.log(1e-6), rel=1e-9)
        assert weighted_entropy(d) == pytest.approx(-13.8155, abs=1e-4)

    @pytest.mark.parametrize("d,a,b", [
        (Exponential(0.7), 0, math.inf), (GammaDist(3.0, 0.5), 0, math.inf),
        (BetaDist(2.0, 3.0), 0, 1), (Uniform(0.5, 2.0), 0.5, 2.0),
    ], ids=lambda v: getattr(v, "spec", ""))
    def test_against_scipy_quadrature(self, d, a, b):
        ref = scipy_weighted_entropy(lambda x: float(d.density(x)), a, b)
        assert weighted_entropy(d) == pytest.approx(ref, abs=1e-9)

    @pytest.mark.parametrize("d,expected", [
        (Uniform(0, 2), LOG2),
        (Exponential(math.exp(2)), 0.0),
        (GammaDist(2, 1), 6 - 2 * (1.5 - 0.5772156649015329)),
        (BetaDist(2, 1), 2 / 9 - 2 / 3 * LOG2),
        (TriangularUp(), 2 / 9 - 2 / 3 * LOG2),
        (TriangularDown(), 5 / 18 - LOG2 / 3),
    ], ids=lambda v: getattr(v, "spec", ""))
    def test_closed_forms(self, d, expected):
        assert closed_form_weighted_entropy(d) == pytest.approx(expected, abs=1e-8)
        assert weighted_entropy(d) == pytest.approx(expected, abs=1e-8)

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
    def test_gamma_closed_form_against_scipy(self, alpha, beta):
        # oracle: scipy log-gamma density integrated by scipy quadrature
        pdf = lambda x: float(np.exp((alpha - 1) * np.log(x) - x / beta - sp.gammaln(alpha)
                                     - alpha * math.log(beta)))
        ref = (scipy_weighted_entropy(pdf, 0, 1) + scipy_weighted_entropy(pdf, 1, math.inf))
        assert closed_form_weighted_entropy(GammaDist(alpha, beta)) == pytest.approx(ref, abs=1e-7)

    def test_pwc_closed_form(self):
        for w in [(0.2, 0.5, 0.3), (0.7, 0.3), (0.1, 0.0, 0.9)]:
            d = PiecewiseConstant(w)
            assert closed_form_weighted_entropy(d) == pytest.approx(weighted_entropy(d), abs=1e-10)

    def test_permutation_changes_weighted_entropy(self):
        a = PiecewiseConstant((0.7, 0.3))
        b = PiecewiseConstant((0.3, 0.7))
        assert differential_entropy(a) == pytest.approx(differential_entropy(b), abs=1e-10)
        expected = 0.7 * math.log(0.7) - 0.3 * math.log(0.3)
        assert weighted_entropy(a) - weighted_entropy(b) == pytest.approx(expected, abs=1e-8)
        assert (closed_form_weighted_entropy(a) - closed_form_weighted_entropy(b)
                == pytest.approx(expected, abs=1e-12))

    def test_coincidences(self):
        assert weighted_entropy(Uniform(0, 1)) == pytest.approx(0, abs=1e-8)
        assert weighted_entropy(Exponential(math.exp(2))) == pytest.approx(0, abs=1e-8)
        assert weighted_entropy(Uniform(0, 2)) == pytest.approx(LOG2, abs=1e-8)
        assert weighted_entropy(Exponential(1.93389)) == pytest.approx(LOG2, abs=1e-4)

    @pytest.mark.parametrize("a,b", [(0.0, 1.0), (0.5, 3.0), (0.9, 1.3), (2.0, 2.5)])
    def test_uniform_product_law(self, a, b):
        d = Uniform(a, b)
        assert weighted_entropy(d) == pytest.approx(d.mean * differential_entropy(d), abs=1e-10)

    @pytest.mark.parametrize("base", [Exponential(1.0), Uniform(0.0, 1.5)], ids=str)
    @pytest.mark.parametrize("a", [0.5, 2.0])
    @pytest.mark.parametrize("b", [0.0, 1.0])
    def test_affine_law(self, base, a, b):
        from wentropy.transforms import MonotoneTransform, TransformedDistribution

        y = TransformedDistribution(base, MonotoneTransform.affine(a, b))
        expected = (a * (weighted_entropy(base) + base.mean * math.log(a))
                    + b * (differential_entropy(base) + math.log(a)))
        assert weighted_entropy(y) == pytest.approx(expected, abs=1e-7)

    def test_closed_form_unavailable(self):
        from wentropy.transforms import MonotoneTransform, TransformedDistribution

        y = TransformedDistribution(Exponential(1.0), MonotoneTransform.affine(2.0, 1.0))
        assert closed_form_weighted_entropy(y) is None
        assert closed_form_weighted_residual(GammaDist(2, 1), 1.0) is None


class TestJoint:
    @pytest.mark.parametrize("dx,dy,expected", [
        (Exponential(1), Uniform(0, 1), 1.0),
        (Uniform(0, 1), Uniform(0, 1), 0.0),
        (Uniform(0, 2), Uniform(0, 2), 2 * LOG2),
    ], ids=["exp-unif", "unif-unif", "unif2-unif2"])
    def test_independent_pair(self, dx, dy, expected):
        assert joint_weighted_entropy_independent(dx, dy) == pytest.approx(expected, abs=1e-9)
        assert joint_weighted_entropy_quadrature(dx, dy) == pytest.approx(expected, abs=1e-6)


class TestDynamic:
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_exponential_residual_entropy_is_constant(self, t):
        assert residual_entropy(Exponential(1), t) == pytest.approx(1.0, abs=1e-9)

    def test_uniform_conditional_entropies(self):
        d = Uniform(0, 1)
        assert past_entropy(d, 0.3) == pytest.approx(math.log(0.3), abs=1e-10)
        assert residual_entropy(d, 0.5) == pytest.approx(math.log(0.5), abs=1e-10)

    @pytest.mark.parametrize("t,expected", [(1.0, 3.0), (0.0, 2.0)])
    def test_exponential_weighted_residual(self, t, expected):
        assert weighted_residual_entropy(Exponential(1), t) == pytest.approx(expected, abs=1e-9)

    @pytest.mark.parametrize("nu", [1.0, 3.0])
    @pytest.mark.parametrize("t", [0.1, 0.5, 0.9])
    def test_uniform_weighted_residual(self, nu, t):
        expected = 0.5 * (t + nu) * math.log(nu - t)
        assert weighted_residual_entropy(Uniform(0, nu), t) == pytest.approx(expected, abs=1e-10)
        assert closed_form_weighted_residual(Uniform(0, nu), t) == pytest.approx(expected, abs=1e-15)

    def test_uniform_weighted_past(self):
        d = Uniform(0, 4)
        assert weighted_past_entropy(d, math.e) == pytest.approx(math.e / 2, abs=1e-10)
        assert weighted_past_entropy(d, 1.0) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_exponential_weighted_past_closed_form(self, lam, t):
        d = Exponential(lam)
        assert closed_form_weighted_past(d, t) == pytest.approx(weighted_past_entropy(d, t), abs=1e-8)

    def test_exponential_weighted_past_against_scipy(self):
        t = 1.0
        F = 1 - math.exp(-t)
        g = lambda x: -x * (math.exp(-x) / F) * math.log(math.exp(-x) / F)
        ref = sp_integrate.quad(g, 0, t, epsabs=1e-14, epsrel=1e-13)[0]
        assert weighted_past_entropy(Exponential(1), t) == pytest.approx(ref, abs=1e-11)
        assert closed_form_weighted_past(Exponential(1), t) == pytest.approx(ref, abs=1e-11)

    @pytest.mark.parametrize("d", [Exponential(1.5), Uniform(0, 2), GammaDist(2, 1),
                                   BetaDist(2, 3), PiecewiseConstant((0.2, 0.5, 0.3))], ids=str)
    def test_equivalent_forms_agree(self, d):
        for t in default_grid(d, 7)[1:-1]:
            assert (weighted_residual_entropy(d, t, "rewritten")
                    == pytest.approx(weighted_residual_entropy(d, t), abs=1e-8))
            assert (weighted_past_entropy(d, t, "rewritten")
                    == pytest.approx(weighted_past_entropy(d, t), abs=1e-8))
            assert (mean_residual_value(d, t, "survival")
                    == pytest.approx(mean_residual_value(d, t), abs=1e-8))
            assert mean_past_lifetime(d, t, "cdf") == pytest.approx(mean_past_lifetime(d, t), abs=1e-8)

    def test_conditional_means(self):
        for lam in (0.5, 2.0):
            for t in (0.3, 2.0):
                assert mean_residual_value(Exponential(lam), t) == pytest.approx(t + 1 / lam, abs=1e-9)
        assert mean_residual_value(Uniform(0, 1), 0.5) == pytest.approx(0.75, abs=1e-12)
        assert mean_residual_value(GammaDist(2, 1), 0.0) == pytest.approx(2.0, abs=1e-9)
        assert mean_past_lifetime(Uniform(0, 3), 1.2) == pytest.approx(0.6, abs=1e-12)
        assert mean_past_lifetime(Exponential(1), 60.0) == pytest.approx(1.0, abs=1e-9)
        assert mean_past_lifetime(Exponential(1), math.inf) == 1.0
        assert mean_past_lifetime(TriangularUp(), 1.0) == pytest.approx(2 / 3, abs=1e-12)

    def test_length_biased(self):
        d = Exponential(1)
        assert length_biased_cdf(d, 0.0) == 0.0 and length_biased_survival(d, 0.0) == 1.0
        assert length_biased_survival(d, 1.0) == pytest.approx(2 / math.e, abs=1e-10)
        assert length_biased_cdf(Uniform(0, 1), 0.5) == pytest.approx(0.25, abs=1e-12)
        ts = np.linspace(0.1, 5, 20)
        vals = [length_biased_cdf(d, t) for t in ts]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        for t in ts[::5]:
            assert length_biased_cdf(d, t) + length_biased_survival(d, t) == pytest.approx(1.0, abs=1e-10)

    def test_degenerate_normalizers(self):
        with pytest.raises(DegenerateTailError):
            weighted_residual_entropy(Exponential(1), 800.0)
        with pytest.raises(ValueError):
            weighted_past_entropy(Uniform(0, 1), 0.0)
        with pytest.raises(ValueError):
            weighted_residual_entropy(Uniform(0, 1), 1.0)

    def test_unknown_form(self):
        with pytest.raises(ValueError):
            weighted_residual_entropy(Exponential(1), 1.0, form="other")


class TestCurves:
    def test_exponential_curve(self):
        c = entropy_curve(Exponential(1), MeasureKind.WEIGHTED_RESIDUAL_ENTROPY, [0, 1, 2])
        np.testing.assert_allclose(c.values, [2, 3, 4], atol=1e-9)
        assert all(p.converged for p in c.grid)

    def test_uniform_past_curve(self):
        c = entropy_curve(Uniform(0, 1), "weighted-past", [0.25, 1 - 1e-9])
        assert c.values[0] == pytest.approx(0.125 * math.log(0.25), abs=1e-12)
        assert c.values[1] == pytest.approx(0.0, abs=1e-8)

    @pytest.mark.parametrize("d", [Exponential(1), Uniform(0, 1), GammaDist(2, 1),
                                   TriangularUp(), BetaDist(2, 3)], ids=str)
    def test_limits_at_support_ends(self, d):
        # conditioning on X > lower or X <= upper is vacuous
        hw = weighted_entropy(d)
        lo = d.lower + 1e-6 * (d.quantile(0.5) - d.lower)
        hi = d.upper - 1e-9 if math.isfinite(d.upper) else d.quantile(1 - 1e-12)
        assert weighted_residual_entropy(d, lo) == pytest.approx(hw, abs=1e-4)
        assert weighted_past_entropy(d, hi) == pytest.approx(hw, abs=1e-4)

    def test_default_grid(self):
        d = Uniform(0, 1)
        g = default_grid(d)
        assert len(g) == 512
        assert g[0] == pytest.approx(1e-3) and g[-1] == pytest.approx(0.999)

    def test_failures_are_recorded(self):
        c = entropy_curve(Exponential(1), "weighted-residual", [1.0, 900.0])
        assert c.grid[0].converged and not c.grid[1].converged
        assert math.isnan(c.values[1])

    def test_rejects_static_kind_and_bad_grid(self):
        with pytest.raises(ValueError):
            entropy_curve(Exponential(1), "weighted", [1.0])
        with pytest.raises(ValueError):
            entropy_curve(Uniform(0, 1), "weighted-past", [0.5, 0.2])
        with pytest.raises(ValueError):
            entropy_curve(Uniform(0, 1), "weighted-past", [0.5, 2.0])

    def test_serialization_round_trip(self):
        c = entropy_curve(Exponential(2), "mean-residual", [0.1, 0.2, 0.7])
        obj = json.loads(c.to_json())
        assert set(obj) == {"kind", "dist", "grid"}
        back = EntropyCurve.from_dict(obj)
        assert back == c
        lines = c.to_csv().splitlines()
        assert lines[0] == "t,value,converged"
        assert [float(v) for v in lines[2].split(",")[:2]] == [c.grid[1].t, c.grid[1].value]

    def test_evaluate_dispatch(self):
        d = Exponential(1)
        assert evaluate(d, "weighted") == pytest.approx(2.0, abs=1e-9)
        assert evaluate(d, "weighted-residual", 1.0) == pytest.approx(3.0, abs=1e-9)
        with pytest.raises(ValueError):
            evaluate(d, "past")
        assert {k.dynamic for k in MeasureKind} == {True, False}

import math
import random
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from sadiclab import forms as fm
from sadiclab import lattice as lt
from sadiclab import numberfield as nf
from sadiclab.errors import (
    DegenerateBasis,
    DependentFactors,
    PrecisionBudgetExceeded,
    TooFewWindows,
)
from sadiclab.surd import QuadraticSurd

S2 = QuadraticSurd.sqrt(2)
PHI = QuadraticSurd(Fraction(1, 2), Fraction(1, 2), 5)


@pytest.fixture(scope="module")
def sqrt2_form(rationals, q_inf):
    return fm.make_form(rationals, q_inf, [[(1, 0), (S2, -1)]])


@pytest.fixture(scope="module")
def pell_form(rationals, q_inf):
    return fm.make_form(rationals, q_inf, [[(1, S2), (1, -S2)]])


class TestMakeForm:
    def test_product_of_coordinates(self, rationals, q_inf):
        form = fm.make_form(rationals, q_inf, [[(1, 0), (0, 1)]])
        assert form.expansions[0] == (Fraction(0), Fraction(1), Fraction(0))

    def test_difference_of_squares(self, rationals, q_inf):
        form = fm.make_form(rationals, q_inf, [[(1, -1), (1, 1)]])
        assert form.expansions[0] == (Fraction(1), Fraction(0), Fraction(-1))

    def test_dependent_factors_rejected(self, rationals, q_inf):
        # x * x * (phi x - y): three factors of rank two
        with pytest.raises(DependentFactors):
            fm.make_form(rationals, q_inf,
                         [[(1, 0), (1, 0), (PHI, -1)]])
        with pytest.raises(DependentFactors):
            fm.make_form(rationals, q_inf, [[(1, 0), (2, 0)]])

    def test_gauss_conjugate_pair(self, gauss):
        places = nf.archimedean_places(gauss)
        i = gauss.gen()
        form = fm.make_form(gauss, places, [[(gauss.one(), i),
                                             (gauss.one(), -i)]])
        val = fm.evaluate_form(form, [1, 1])[0]
        assert val == gauss.element([2])


class TestEvaluate:
    def test_pell_value(self, pell_form):
        assert fm.evaluate_form(pell_form, [1, 1])[0] == QuadraticSurd(-1)

    def test_surd_value(self, sqrt2_form):
        val = fm.evaluate_form(sqrt2_form, [5, 7])[0]
        assert float(val) == pytest.approx(0.3553390593273762, rel=1e-12)

    def test_magnitudes_product(self, rationals, q_inf2, sqrt2_form):
        form = fm.make_form(rationals, q_inf2,
                            [[(1, 0), (0, 1)], [(1, 0), (0, 1)]])
        mags, total = form.magnitudes([2, 3])
        # |6|_inf * |6|_2 = 6 * 1/2
        assert abs(float(total) - 3.0) < 1e-30


class TestValueSpectrum:
    def test_pell_values_are_integers(self, pell_form):
        spec = fm.value_spectrum(pell_form, lt.HeightWindow(20))
        assert spec.min_nonzero == pytest.approx(1.0, abs=1e-30)
        for entry in spec.entries:
            assert abs(entry.magnitude - round(entry.magnitude)) < 1e-25

    def test_convergent_magnitudes_present(self, sqrt2_form):
        spec = fm.value_spectrum(sqrt2_form, lt.HeightWindow(100))
        mags = spec.magnitudes()
        # values at the continued-fraction convergents of sqrt2, frozen from
        # the exact surd evaluations x |x sqrt2 - y|
        expected = [
            0.41421356237309505,     # (1, 1): sqrt2 - 1
            0.34314575050761980,     # (2, 3): 6 - 4 sqrt2
            0.35533905932737622,     # (5, 7): 25 sqrt2 - 35
            0.35324701827431297,     # (12, 17): 204 - 144 sqrt2
            0.35360595577293604,     # (29, 41): 841 sqrt2 - 1189
        ]
        for want in expected:
            assert any(abs(m - want) < 1e-12 for m in mags)

    def test_scaled_pell_minimum(self, rationals, q_inf):
        # the det-one rescaling of the Pell rows scales values by 1/(2 sqrt2)
        s = QuadraticSurd(0, Fraction(1, 4), 2)       # sqrt2/4 = 1/(2 sqrt2)
        form = fm.DecomposableForm.from_expansion(
            rationals, q_inf, 2, 2, [(s, QuadraticSurd(0), -2 * s)])
        spec = fm.value_spectrum(form, lt.HeightWindow(50))
        assert spec.min_nonzero == pytest.approx(1 / (2 * math.sqrt(2)),
                                                 rel=1e-12)
        # the minimum sits on the |x^2 - 2y^2| = 1 class
        assert spec.entries[0].witness in ("(1, 0)", "(1, -1)")

    def test_capped_fast_scan_agrees_with_exact(self, sqrt2_form):
        full = fm.value_spectrum(sqrt2_form, lt.HeightWindow(40))
        capped = fm.value_spectrum(sqrt2_form, lt.HeightWindow(40),
                                   magnitude_cap=0.9)
        want = [m for m in full.magnitudes() if m <= 0.9]
        got = capped.magnitudes()
        assert len(want) == len(got)
        assert all(abs(a - b) < 1e-25 for a, b in zip(want, got))

    def test_scaled_integers_min_gap(self, rationals, q_inf):
        form = fm.make_form(rationals, q_inf, [[(3, 0), (0, 1)]])
        spec = fm.value_spectrum(form, lt.HeightWindow(10))
        assert spec.min_nonzero == pytest.approx(3.0, abs=1e-25)
        assert spec.min_gap == pytest.approx(3.0, abs=1e-25)


class TestDiscreteness:
    def test_sqrt2_form_accumulates(self, sqrt2_form):
        rep = fm.discreteness_report(sqrt2_form, [10, 100, 1000])
        assert rep.verdict == "accumulation-detected"
        assert rep.cluster.center == pytest.approx(1 / (2 * math.sqrt(2)),
                                                   abs=1e-3)

    def test_dependent_probe_is_discrete(self):
        probes = fm.builtin_probes()
        probe = probes["dependent-factors"]
        assert "hypothesis violated" in probe.label
        rep = fm.discreteness_report(probe, [10, 100, 1000])
        assert rep.verdict == "discrete-trend"
        assert rep.min_nonzero == pytest.approx(2 - (1 + math.sqrt(5)) / 2,
                                                abs=1e-9)

    def test_indecomposable_probe_is_discrete(self):
        probe = fm.builtin_probes()["indecomposable"]
        rep = fm.discreteness_report(probe, [10, 50, 200])
        assert rep.verdict == "discrete-trend"

    def test_pell_is_discrete(self, pell_form):
        rep = fm.discreteness_report(pell_form, [10, 100, 1000])
        assert rep.verdict == "discrete-trend"

    def test_needs_three_windows(self, pell_form):
        with pytest.raises(TooFewWindows):
            fm.discreteness_report(pell_form, [10, 100])

    def test_thm_consistency_pairing(self, sqrt2_form, pell_form):
        # reconstructed forms look discrete; irrational ones accumulate
        cases = [(pell_form, "reconstructed", "discrete-trend"),
                 (sqrt2_form, "no-rational-reconstruction",
                  "accumulation-detected")]
        for form, status, verdict in cases:
            assert fm.rationality_reconstruct(form).status == status
            rep = fm.discreteness_report(form, [10, 100, 1000])
            assert rep.verdict == verdict
            assert not rep.anomaly


class TestNormForm:
    def test_root2(self, root2_field):
        form = fm.norm_form(root2_field)
        assert form.expansions[0] == (Fraction(1), Fraction(0), Fraction(-2))

    def test_gauss(self, gauss):
        form = fm.norm_form(gauss)
        assert form.expansions[0] == (Fraction(1), Fraction(0), Fraction(1))

    def test_golden(self, golden_field):
        form = fm.norm_form(golden_field)
        assert form.expansions[0] == (Fraction(1), Fraction(1), Fraction(-1))

    def test_degenerate_basis_rejected(self, root2_field):
        with pytest.raises(DegenerateBasis):
            fm.norm_form(root2_field, [root2_field.one(),
                                       root2_field.element([3])])

    @pytest.mark.parametrize("coeffs", [[-2, 0, 1], [-1, -1, 1], [1, 0, 1]])
    def test_values_equal_field_norm(self, coeffs):
        field = nf.create_field(coeffs)
        form = fm.norm_form(field)
        random.seed(17)
        for _ in range(60):
            z = [random.randint(-40, 40), random.randint(-40, 40)]
            val = fm.evaluate_form(form, z)[0]
            assert Fraction(val) == nf.field_norm(field.element(z))

    def test_cubic_field(self):
        field = nf.create_field([1, 1, 0, 1])     # x^3 + x + 1
        form = fm.norm_form(field)
        random.seed(18)
        for _ in range(20):
            z = [random.randint(-10, 10) for _ in range(3)]
            val = fm.evaluate_form(form, z)[0]
            assert Fraction(val) == nf.field_norm(field.element(z))


class TestGLInvariance:
    def test_capped_value_sets_match(self, rationals, q_inf, pell_form):
        gamma = [[1, 1], [0, 1]]
        composed = pell_form.compose(gamma)
        cap = 20.0
        a = fm.value_spectrum(composed, lt.HeightWindow(30), magnitude_cap=cap)
        b = fm.value_spectrum(pell_form, lt.HeightWindow(90), magnitude_cap=cap)
        for m in a.magnitudes():
            assert any(abs(m - x) < 1e-20 for x in b.magnitudes())
        c = fm.value_spectrum(pell_form, lt.HeightWindow(30), magnitude_cap=cap)
        d = fm.value_spectrum(composed, lt.HeightWindow(90), magnitude_cap=cap)
        for m in c.magnitudes():
            assert any(abs(m - x) < 1e-20 for x in d.magnitudes())


class TestReconstruction:
    def test_numeric_scalar_multiple(self, rationals, q_inf):
        with mp.workdps(50):
            pi = +mp.pi
            coeffs = (pi, mpf(0), -pi)
        form = fm.DecomposableForm.from_expansion(rationals, q_inf, 2, 2,
                                                  [coeffs])
        rep = fm.rationality_reconstruct(form)
        assert rep.status == "reconstructed"
        assert rep.g == (1, 0, -1)
        assert abs(rep.alpha[0] - math.pi) < 1e-12

    def test_exact_surd_multiple(self, rationals, q_inf):
        form = fm.make_form(rationals, q_inf, [[(S2, S2), (S2, -S2)]])
        rep = fm.rationality_reconstruct(form)
        assert rep.status == "reconstructed"
        assert rep.g == (1, 0, -1)
        assert rep.alpha[0] == Fraction(2)

    def test_sqrt2_ratio_rejected(self, sqrt2_form):
        rep = fm.rationality_reconstruct(sqrt2_form)
        assert rep.status == "no-rational-reconstruction"
        assert "pivot" in rep.evidence

    def test_round_trip_random(self, rationals, q_inf2):
        random.seed(19)
        with mp.workdps(50):
            for _ in range(25):
                g = [random.randint(-200, 200) for _ in range(3)]
                if not any(g):
                    continue
                g0 = math.gcd(*[abs(v) for v in g if v])
                g = [v // g0 for v in g]
                if next(v for v in g if v) < 0:
                    g = [-v for v in g]
                alphas = [mpf(10) ** random.uniform(-3, 3) *
                          random.choice([1, -1]) for _ in range(2)]
                form = fm.DecomposableForm.from_expansion(
                    rationals, q_inf2, 2, 2,
                    [tuple(a * c for c in g) for a in [alphas[0]]] +
                    [tuple(Fraction(g_i) * Fraction(7, 3) for g_i in g)])
                rep = fm.rationality_reconstruct(form)
                assert rep.status == "reconstructed"
                assert list(rep.g) == g

    def test_disagreeing_places_rejected(self, rationals, q_inf2):
        form = fm.DecomposableForm.from_expansion(
            rationals, q_inf2, 2, 2,
            [(Fraction(1), Fraction(0), Fraction(-1)),
             (Fraction(1), Fraction(0), Fraction(-2))])
        rep = fm.rationality_reconstruct(form)
        assert rep.status == "no-rational-reconstruction"
        assert "disagrees" in rep.evidence

    def test_precision_budget(self, pell_form):
        with pytest.raises(PrecisionBudgetExceeded):
            fm.rationality_reconstruct(pell_form, precision=20)


class TestLittlewood:
    def test_rational_alpha_hits_zero(self):
        res = fm.littlewood_scan(Fraction(1, 2), QuadraticSurd.sqrt(3), 10)
        assert res.minimum == 0.0
        assert res.argmin == 2

    def test_matches_direct_scan(self):
        def brute(a, b, N):
            best, bn = None, None
            with mp.workdps(60):
                av, bv = a.to_mpf(60), b.to_mpf(60)
                for k in range(1, N + 1):
                    da = abs(k * av - mp.nint(k * av))
                    db = abs(k * bv - mp.nint(k * bv))
                    v = k * da * db
                    if best is None or v < best:
                        best, bn = v, k
            return float(best), bn

        for a, b, N in [(QuadraticSurd.sqrt(2), QuadraticSurd.sqrt(2), 100),
                        (QuadraticSurd.sqrt(2), QuadraticSurd.sqrt(3), 400),
                        (PHI, QuadraticSurd.sqrt(2), 250)]:
            want = brute(a, b, N)
            got = fm.littlewood_scan(a, b, N)
            assert got.argmin == want[1]
            assert got.minimum == pytest.approx(want[0], rel=1e-12)

    def test_records_monotone_and_positive(self):
        res = fm.littlewood_scan(QuadraticSurd.sqrt(2),
                                 QuadraticSurd.sqrt(3), 20000)
        values = [v for _, v in res.records]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert all(v > 0 for v in values)
        assert res.records[-1][0] == res.argmin

    def test_decimal_string_spec(self):
        res = fm.littlewood_scan("0.5", "0.25", 8)
        assert res.minimum == 0.0
        assert res.argmin == 2

import random
import warnings
from fractions import Fraction

import pytest

from dunklfp import (FamilyError, Kind, LaurentPolynomial, SigmaBoundWarning,
                     Superpotential, apply_derivative, apply_fp_operator,
                     apply_reflection, apply_square_closed_form,
                     laurent_max_diff, make_params, verify_anticommutation,
                     verify_specialization, verify_square_closed_form,
                     verify_tp_rewrite)

L = LaurentPolynomial


def ch(sigma, mu):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SigmaBoundWarning)
        return make_params(Kind.CH, sigma, mu)


class TestLaurentPolynomial:
    def test_canonical_form_drops_zeros(self):
        p = L({3: 0, 2: 1, -1: 0.0})
        assert p.terms == {2: 1}

    def test_integer_shift_folds_into_keys(self):
        p = L({0: 1, 2: 3}, shift=2)
        assert p.terms == {2: 1, 4: 3} and p.shift == 0

    def test_product_adds_shifts(self):
        p = L({0: Fraction(1)}, shift=Fraction(1, 2), shift_sign=1)
        q = L({1: Fraction(2)}, shift=Fraction(1, 2), shift_sign=-1)
        pq = p * q
        # combined shift 1 is integral and folds into the keys
        assert pq.terms == {2: Fraction(2)} and pq.shift == 0
        assert pq.evaluate(2.0) == pytest.approx(2 * 2.0 ** 2)

    def test_incompatible_shift_addition(self):
        with pytest.raises(ValueError):
            L({0: 1}, shift=Fraction(1, 2)) + L({0: 1})

    def test_evaluate(self):
        p = L({2: 3, -1: 1})
        assert p.evaluate(2.0) == pytest.approx(12.5)


class TestReflection:
    def test_odd_monomial(self):
        assert apply_reflection(L({3: 1})) == L({3: -1})

    def test_even_polynomial_invariant(self):
        p = L({0: 1, 2: 1})
        assert apply_reflection(p) == p

    def test_negative_power(self):
        assert apply_reflection(L({-1: 1})) == L({-1: -1})

    def test_involution(self):
        p = L({-3: Fraction(2, 7), 0: 1, 4: -5})
        assert apply_reflection(apply_reflection(p)) == p


class TestDerivatives:
    def test_ch_on_constant(self):
        params = ch(Fraction(5, 2), Fraction(1, 2))
        assert apply_derivative(params, L({0: 1})) == L({-1: Fraction(2)})

    def test_tp_on_constant_vanishes(self):
        params = make_params(Kind.TP, None, Fraction(3, 5), Fraction(2, 5))
        assert apply_derivative(params, L({0: 1})).is_zero()

    def test_dunkl_on_even_monomial(self):
        params = make_params(Kind.DUNKL, None, Fraction(3, 4))
        assert apply_derivative(params, L({2: 1})) == L({1: 2})

    def test_yang_on_odd_monomial(self):
        params = make_params(Kind.YANG, None, Fraction(3, 4))
        # x^3: derivative 3x^2 minus (mu/x) R x^3 = +mu x^2
        assert apply_derivative(params, L({3: 1})) == L({2: Fraction(3) + Fraction(3, 4)})

    def test_linearity_exact(self):
        params = make_params(Kind.TP, None, Fraction(3, 5), Fraction(-2, 5))
        rng = random.Random(3)
        p = L({rng.randint(-8, 8): Fraction(rng.randint(-9, 9), 4) for _ in range(5)})
        q = L({rng.randint(-8, 8): Fraction(rng.randint(-9, 9), 4) for _ in range(5)})
        lhs = apply_derivative(params, p.scale(Fraction(2, 3)) + q.scale(Fraction(-7, 5)))
        rhs = apply_derivative(params, p).scale(Fraction(2, 3)) \
            + apply_derivative(params, q).scale(Fraction(-7, 5))
        assert lhs == rhs

    def test_fractional_shift_derivative(self):
        # mu = 0, gamma = 0: plain derivative; x^(k + 1/2) -> (k + 1/2) x^(k - 1/2)
        params = make_params(Kind.DUNKL, None, 0)
        p = L({2: 1}, shift=Fraction(1, 2), shift_sign=1)
        out = apply_derivative(params, p)
        assert out.terms == {1: Fraction(5, 2)} and out.shift == Fraction(1, 2)


class TestIdentities:
    PARAM_SETS = [
        make_params(Kind.YANG, None, Fraction(7, 16)),
        make_params(Kind.DUNKL, None, Fraction(19, 8)),
        ch(Fraction(5, 2), Fraction(1, 2)),
        make_params(Kind.TP, None, Fraction(3, 5), Fraction(43, 100)),
        make_params(Kind.TP, None, Fraction(3, 5), Fraction(-12, 25)),
    ]

    @pytest.mark.parametrize("params", PARAM_SETS, ids=lambda p: p.kind.value)
    def test_anticommutation(self, params):
        report = verify_anticommutation(params, 20)
        assert report.passed and report.worst == 0

    def test_anticommutation_catches_unsigned_reflection(self):
        # A reflection that forgets the (-1)^k sign breaks R D = -D R at
        # every monomial whose derivative coefficient is nonzero; the
        # quarter-integer parameters below keep them all nonzero.
        def bad_reflection(p):
            return p

        params = ch(Fraction(5, 2), Fraction(1, 4))
        report = verify_anticommutation(params, 20, reflection=bad_reflection)
        assert not report.passed
        violated = {k for k, _ in report.violations}
        assert all(k in violated for k in range(-19, 20, 2))

    @pytest.mark.parametrize("params", PARAM_SETS, ids=lambda p: p.kind.value)
    def test_square_closed_form_exact(self, params):
        report = verify_square_closed_form(params, 20)
        assert report.passed and report.worst == 0

    def test_square_closed_form_float_params(self):
        params = make_params(Kind.TP, None, 0.6, 0.43)
        report = verify_square_closed_form(params, 30, tol=1e-12)
        assert report.passed

    def test_tp_rewrite(self):
        params = make_params(Kind.TP, None, Fraction(3, 5), Fraction(-12, 25))
        assert verify_tp_rewrite(params, 20).passed

    def test_tp_rewrite_mu_zero(self):
        gamma = Fraction(1, 3)
        params = make_params(Kind.TP, None, 0, gamma)
        assert verify_tp_rewrite(params, 20).passed
        # both forms reduce to (1 + gamma R) d: check even and odd monomials
        assert apply_derivative(params, L({4: 1})) == L({3: 4 * (1 + gamma)})
        assert apply_derivative(params, L({3: 1})) == L({2: 3 * (1 - gamma)})

    def test_specialization_chain(self):
        mu = Fraction(13, 16)
        yang = make_params(Kind.YANG, None, mu)
        dunkl = make_params(Kind.DUNKL, None, mu)
        assert verify_specialization(ch(Fraction(0), mu), yang, 30).passed
        assert verify_specialization(ch(mu, mu), dunkl, 30).passed
        assert verify_specialization(make_params(Kind.TP, None, mu, Fraction(0)),
                                     dunkl, 30).passed

    def test_tp_square_at_gamma_zero_matches_dunkl_square(self):
        mu = Fraction(5, 8)
        tp = make_params(Kind.TP, None, mu, Fraction(0))
        dunkl = make_params(Kind.DUNKL, None, mu)
        for k in range(-20, 21):
            p = L({k: 1})
            assert apply_square_closed_form(tp, p) == apply_square_closed_form(dunkl, p)

    def test_product_parity_rule(self):
        w = L({-1: Fraction(2)})
        p = L({-2: Fraction(1, 3), 1: 4, 6: -2})
        assert apply_reflection(w * p) == apply_reflection(w) * apply_reflection(p)


class TestFpOperator:
    def test_on_constant_matches_hand_expansion(self):
        # L 1 = -D^2 1 + 2 D(a/x); expanding by hand for the even sector gives
        # (mu + sigma - 1)(mu + 2a - sigma) x^-2.
        sigma, mu, a = Fraction(5, 2), Fraction(1, 2), Fraction(2)
        params = ch(sigma, mu)
        out = apply_fp_operator(params, Superpotential.centrifugal(a), L({0: 1}))
        assert out == L({-2: (mu + sigma - 1) * (mu + 2 * a - sigma)})

    def test_zero_input(self):
        params = ch(Fraction(5, 2), Fraction(1, 2))
        out = apply_fp_operator(params, Superpotential.centrifugal(2), L.zero())
        assert out.is_zero()

    def test_oscillator_family_rejected(self):
        params = ch(Fraction(5, 2), Fraction(1, 2))
        with pytest.raises(FamilyError):
            apply_fp_operator(params, Superpotential.oscillator_centrifugal(2.0), L({0: 1}))

    def test_truncated_series_residual_confined_to_top_order(self):
        # x^(a - sigma + 1/2) J_2(2x) for a=2, sigma=5/2, mu=1/2: the exact
        # operator annihilates every retained order except the last.
        from dunklfp import centrifugal_solution, descriptor_series
        from dunklfp.core import Parity
        n_terms = 8
        d = centrifugal_solution(Parity.EVEN, Fraction(2), Fraction(5, 2),
                                 Fraction(1, 2), Fraction(4))
        series = descriptor_series(d, n_terms)
        params = ch(Fraction(5, 2), Fraction(1, 2))
        resid = apply_fp_operator(params, Superpotential.centrifugal(Fraction(2)),
                                  series) - series.scale(Fraction(4))
        top = max(series.terms)
        assert resid == L({top: -Fraction(4) * series.terms[top]})

    def test_fractional_power_series_residual(self):
        # Generic non-admissible sigma: the prefactor power is fractional and
        # carried by the exponent-offset wrapper with a declared even sign.
        from dunklfp import bessel_series_laurent
        a, sigma, mu = Fraction(2), Fraction(21, 10), Fraction(7, 10)
        params = ch(sigma, mu)
        power = a - sigma + Fraction(1, 2)          # 2/5
        order = abs(a + mu - Fraction(1, 2))        # 11/5
        series = bessel_series_laurent(power, order, 2.0, 8, parity_sign=1)
        resid = apply_fp_operator(params, Superpotential.centrifugal(a),
                                  series) - series.scale(4)
        top = max(series.terms)
        expected = L({top: -4 * series.terms[top]}, series.shift, series.shift_sign)
        assert laurent_max_diff(resid, expected) < 1e-12

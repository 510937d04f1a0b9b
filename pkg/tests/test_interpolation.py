from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sobmult.exponents import ExponentDomainError, SpaceSpec, bounded_domain, whole_space
from sobmult.interpolation import (
    DerivationError,
    InterpMethod,
    interpolate_bilinear,
    interpolate_specs,
    perturb_off_integer,
    perturbation_epsilon,
)
from sobmult.rules import (
    MultQuery,
    QueryError,
    RuleId,
    Status,
    check_multiplication,
    necessity_disproof,
    replay_certificate,
)

from conftest import rationals

F = Fraction
R1 = whole_space(1)


def W(s, p, dom=R1):
    return SpaceSpec("W", F(s), F(p), dom)


def H(s, p, dom=R1):
    return SpaceSpec("H", F(s), F(p), dom)


thetas = rationals(0, 1, 24).filter(lambda t: 0 < t < 1)
endpoints = st.tuples(rationals(0, 4), rationals(1, 8))


class TestInterpolateSpecs:
    def test_midpoint(self):
        out, params = interpolate_specs(W(0, 2), W(1, 2), F(1, 2))
        assert (out.s, out.p) == (F(1, 2), 2)
        assert params.admissible and params.method is InterpMethod.REAL

    def test_bessel_scale(self):
        out, params = interpolate_specs(H(0, 2), H(2, 4), F(1, 2))
        assert (out.s, out.p) == (1, F(8, 3))
        assert params.method is InterpMethod.COMPLEX and params.admissible

    def test_integer_result_inadmissible(self):
        out, params = interpolate_specs(W(1, 2), W(4, 2), F(1, 3))
        assert out.s == 2
        assert not params.admissible
        assert any("s integer" in c for c in params.caveats)

    def test_mixed_pattern_inadmissible(self):
        _, params = interpolate_specs(W(1, 2), W(F(5, 2), 2), F(1, 3))
        assert not params.admissible

    def test_complex_w_embedding_only(self):
        _, params = interpolate_specs(W(F(1, 2), 2), W(F(3, 2), 4), F(1, 2), InterpMethod.COMPLEX)
        assert params.admissible
        assert any("embedding only" in c for c in params.caveats)

    @pytest.mark.parametrize("theta", [0, 1, F(3, 2), F(-1, 2)])
    def test_theta_domain(self, theta):
        with pytest.raises(ExponentDomainError):
            interpolate_specs(W(0, 2), W(1, 2), theta)

    def test_mismatched_endpoints(self):
        with pytest.raises(QueryError):
            interpolate_specs(W(0, 2), H(1, 2), F(1, 2))
        with pytest.raises(QueryError):
            interpolate_specs(W(0, 2), W(1, 2, bounded_domain(1)), F(1, 2))

    @settings(max_examples=300)
    @given(endpoints, endpoints, thetas)
    def test_affine_laws(self, a, b, theta):
        A, B = W(*a), W(*b)
        out, _ = interpolate_specs(A, B, theta)
        assert out.s == (1 - theta) * A.s + theta * B.s
        assert 1 / out.p == (1 - theta) / A.p + theta / B.p

    @settings(max_examples=300)
    @given(endpoints, endpoints, thetas)
    def test_reversal(self, a, b, theta):
        out1, _ = interpolate_specs(W(*a), W(*b), theta)
        out2, _ = interpolate_specs(W(*b), W(*a), 1 - theta)
        assert out1 == out2

    @settings(max_examples=200)
    @given(endpoints, endpoints)
    def test_midpoint_of_midpoints(self, a, b):
        A, B = W(*a), W(*b)
        mid, _ = interpolate_specs(A, B, F(1, 2))
        quarter_a, _ = interpolate_specs(A, mid, F(1, 2))
        quarter_b, _ = interpolate_specs(A, B, F(1, 4))
        assert quarter_a == quarter_b


class TestPerturbation:
    def test_epsilon_is_half_min(self):
        eps, active = perturbation_epsilon({"a": F(1, 3), "b": F(1, 5), "c": F(1, 5)})
        assert eps == F(1, 10)
        assert active == ("b", "c")

    def test_nonpositive_margin(self):
        with pytest.raises(ExponentDomainError):
            perturbation_epsilon({"a": 0})

    def test_shift_off_integer(self):
        shifted, eps, _ = perturb_off_integer(W(2, 2), {"gap": F(1, 4)})
        assert eps == F(1, 8)
        assert shifted.s == F(15, 8)

    @given(rationals(-3, 4), st.sampled_from([-1, 1]))
    def test_never_lands_on_integer(self, s, direction):
        shifted, eps, _ = perturb_off_integer(W(s, 2), direction=direction)
        assert eps > 0
        assert shifted.s.denominator != 1


class TestBilinear:
    def test_equal_endpoints(self):
        q = MultQuery(W(2, 2), W(2, 2), W(2, 2))
        out, cert = interpolate_bilinear(q, q, F(1, 3))
        assert out == q
        assert cert.rule_id is RuleId.INTERP_BILINEAR
        assert replay_certificate(cert)

    def test_symmetric_endpoints(self):
        end0 = MultQuery(W(0, 2), W(2, 2), W(0, 2))
        end1 = MultQuery(W(2, 2), W(0, 2), W(0, 2))
        assert check_multiplication(end0).status is Status.PROVED
        out, cert = interpolate_bilinear(end0, end1, F(1, 2))
        assert out == MultQuery(W(1, 2), W(1, 2), W(0, 2))
        assert any(c.label.startswith("end0[") for c in cert.conditions)
        assert any(c.label.startswith("end1[") for c in cert.conditions)

    def test_unproved_endpoint(self):
        bad = MultQuery(W(F(1, 4), 2), W(F(1, 4), 2), W(F(1, 4), 2))
        good = MultQuery(W(2, 2), W(2, 2), W(2, 2))
        with pytest.raises(DerivationError):
            interpolate_bilinear(good, bad, F(1, 2))

    def test_real_secondary(self):
        q = MultQuery(W(2, 2), W(2, 2), W(2, 2))
        _, cert = interpolate_bilinear(q, q, F(1, 2), InterpMethod.REAL, (2, 2, None))
        assert any(c.label == "1/p+1/q-1 >= 0" for c in cert.conditions)
        with pytest.raises(ExponentDomainError):
            interpolate_bilinear(q, q, F(1, 2), InterpMethod.REAL, (3, 3, None))
        with pytest.raises(ExponentDomainError):
            interpolate_bilinear(q, q, F(1, 2), InterpMethod.REAL)

    @settings(max_examples=100, deadline=None)
    @given(thetas)
    def test_output_never_contradicted(self, theta):
        """An interpolated statement that also passes a direct rule is never disproved."""
        end0 = MultQuery(W(0, 2), W(2, 2), W(0, 2))
        end1 = MultQuery(W(2, 2), W(0, 2), W(0, 2))
        out, _ = interpolate_bilinear(end0, end1, theta)
        if check_multiplication(out).status is Status.PROVED:
            assert necessity_disproof(out) is None

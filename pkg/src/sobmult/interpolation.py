"""Interpolation parameter arithmetic for Sobolev scales.

Given endpoint spaces ``X^{s0,p0}`` and ``X^{s1,p1}`` and ``0 < theta < 1`` the
intermediate space has

    s = (1 - theta) s0 + theta s1,    1/p = (1 - theta)/p0 + theta/p1.

Whether that space really *is* the interpolation space depends on integer
patterns of ``s0, s1, s`` and on the method; :func:`interpolate_specs` always
returns the arithmetic and reports admissibility as metadata.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .exponents import (
    ExponentDomainError,
    Family,
    SpaceSpec,
    as_rational,
    condition,
    is_integer,
)
from .rules import (
    Certificate,
    MultQuery,
    QueryError,
    RuleId,
    Status,
    check_multiplication,
)


class DerivationError(ValueError):
    pass


class InterpMethod(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


@dataclass(frozen=True)
class InterpParams:
    theta: Fraction
    method: InterpMethod
    admissible: bool
    caveats: tuple[str, ...] = ()
    # real method only: the fine index q of (A0, A1)_{theta,q}
    secondary: Optional[Fraction] = None


def _check_theta(theta) -> Fraction:
    theta = as_rational(theta)
    if not 0 < theta < 1:
        raise ExponentDomainError(f"theta must lie in (0, 1), got {theta}")
    return theta


def _default_method(family: Family) -> InterpMethod:
    # W (and B_{p,p}) scales are built by real interpolation, H by complex.
    return InterpMethod.COMPLEX if family is Family.H else InterpMethod.REAL


def _admissibility(a: SpaceSpec, b: SpaceSpec, s: Fraction, p: Fraction,
                   method: InterpMethod) -> tuple[bool, list[str]]:
    caveats = []
    if a.s < 0 or b.s < 0:
        caveats.append("endpoint with negative smoothness: interpolation identities need s0, s1 >= 0")
    if a.p <= 1 or b.p <= 1:
        caveats.append("endpoint with p <= 1: interpolation identities need 1 < p0, p1 < inf")
    if caveats:
        return False, caveats

    s0_int, s1_int, s_int = is_integer(a.s), is_integer(b.s), is_integer(s)
    fam = a.family
    if method is InterpMethod.REAL:
        if fam is not Family.W:
            return False, [f"real interpolation identity not available for the {fam.value} scale"]
        if not (s0_int or s1_int or s_int):
            return True, []
        if s1_int and not s_int:
            return True, []
        if s_int:
            return False, ["s integer, real-interpolation cases exclude it"]
        return False, ["s0 integer with s1 non-integer: mixed pattern not among the listed cases"]

    if fam is Family.H:
        return True, []
    if s0_int or s1_int:
        return False, ["complex interpolation of W (or B_{p,p}) needs non-integer s0 and s1"]
    if fam is Family.BPP:
        return True, ["[W^{s0,p0}, W^{s1,p1}]_theta = B^s_{p,p} for non-integer s0, s1"]
    if s > 0 and not s_int:
        return True, []
    if p >= 2:
        return True, ["embedding only: W^{s,p} embeds in [W^{s0,p0}, W^{s1,p1}]_theta (p >= 2)"]
    return False, ["s integer and p < 2: no complex-interpolation identity for W"]


def interpolate_specs(a: SpaceSpec, b: SpaceSpec, theta, method: Optional[InterpMethod] = None
                      ) -> tuple[SpaceSpec, InterpParams]:
    """Interpolated space between ``a`` (weight ``1-theta``) and ``b`` (weight ``theta``)."""
    theta = _check_theta(theta)
    if a.family is not b.family:
        raise QueryError("interpolation endpoints must belong to the same family")
    if a.domain != b.domain:
        raise QueryError("interpolation endpoints must live on the same domain")
    if method is None:
        method = _default_method(a.family)
    s = (1 - theta) * a.s + theta * b.s
    p = 1 / ((1 - theta) / a.p + theta / b.p)
    out = SpaceSpec(a.family, s, p, a.domain)
    ok, caveats = _admissibility(a, b, s, p, method)
    params = InterpParams(
        theta=theta,
        method=method,
        admissible=ok,
        caveats=tuple(caveats),
        secondary=p if method is InterpMethod.REAL else None,
    )
    return out, params


def perturbation_epsilon(margins: Mapping[str, Fraction], factor=Fraction(1, 2)
                         ) -> tuple[Fraction, tuple[str, ...]]:
    """``factor * min(margins)`` plus the labels attaining the minimum.

    Every margin must be strictly positive; this is the proof device used to
    step off a blocked integer case while keeping strict inequalities strict.
    """
    if not margins:
        raise ValueError("need at least one margin")
    values = {k: as_rational(v) for k, v in margins.items()}
    bad = [k for k, v in values.items() if v <= 0]
    if bad:
        raise ExponentDomainError(f"margins must be positive: {', '.join(bad)}")
    low = min(values.values())
    active = tuple(k for k, v in values.items() if v == low)
    return as_rational(factor) * low, active


def perturb_off_integer(spec: SpaceSpec, margins: Mapping[str, Fraction] = None,
                        direction: int = -1) -> tuple[SpaceSpec, Fraction, tuple[str, ...]]:
    """Shift ``spec.s`` by ``eps = min(...)/2`` towards ``direction`` (``-1`` or ``+1``).

    A ``unit`` margin is always included: ``1`` when ``s`` is an integer,
    otherwise the distance to the next integer in the shift direction, so the
    shifted smoothness is never an integer.
    """
    if direction not in (-1, 1):
        raise ValueError("direction must be -1 or +1")
    s = spec.s
    if is_integer(s):
        unit = Fraction(1)
    else:
        unit = s - math.floor(s) if direction < 0 else math.ceil(s) - s
    all_margins = {"unit": unit}
    all_margins.update(margins or {})
    eps, active = perturbation_epsilon(all_margins)
    shifted = SpaceSpec(spec.family, s + direction * eps, spec.p, spec.domain)
    return shifted, eps, active


def _relabel(cert: Certificate, tag: str):
    for c in cert.conditions:
        yield condition(f"{tag}[{cert.rule_id.value}] {c.label}", c.lhs, c.relation.value, c.rhs)


def interpolate_bilinear(end0: MultQuery, end1: MultQuery, theta,
                         method: InterpMethod = InterpMethod.COMPLEX,
                         secondary: Optional[tuple] = None) -> tuple[MultQuery, Certificate]:
    """Interpolate two proved product maps into a third.

    ``secondary`` is ``(p, q, r)`` for the real method, the fine indices of the
    two factors and of the target, with ``1/r = 1/p + 1/q - 1 >= 0``; pass
    ``r=None`` for ``r = inf``.
    """
    theta = _check_theta(theta)
    verdicts = [check_multiplication(e) for e in (end0, end1)]
    for tag, v in zip(("end0", "end1"), verdicts):
        if v.status is not Status.PROVED:
            raise DerivationError(f"{tag} is {v.status.value}, interpolation needs proved endpoints")
    if end0.target.family is not end1.target.family or end0.domain != end1.domain:
        raise QueryError("endpoint queries must share family and domain")

    conds = [condition("theta > 0", theta, ">", 0), condition("theta < 1", theta, "<", 1)]
    notes = [f"derived by {method.value} bilinear interpolation at theta = {theta}"]
    if method is InterpMethod.REAL:
        if secondary is None or len(secondary) != 3:
            raise ExponentDomainError("real method needs secondary exponents (p, q, r)")
        sp, sq, sr = secondary
        sp, sq = as_rational(sp), as_rational(sq)
        inv_r = 1 / sp + 1 / sq - 1
        if inv_r < 0:
            raise ExponentDomainError(f"1/p + 1/q - 1 = {inv_r} < 0")
        given = Fraction(0) if sr is None else 1 / as_rational(sr)
        if given != inv_r:
            raise ExponentDomainError(f"1/r = {given} but 1/p + 1/q - 1 = {inv_r}")
        conds.append(condition("1/p+1/q-1 >= 0", inv_r, ">=", 0))
        conds.append(condition("1/r = 1/p+1/q-1", given, "=", inv_r))

    specs = []
    fine = secondary if secondary is not None else (None, None, None)
    for role, a, b, q in zip(("left", "right", "target"),
                             (end0.left, end0.right, end0.target),
                             (end1.left, end1.right, end1.target), fine):
        out, params = interpolate_specs(a, b, theta, method)
        specs.append(out)
        for cav in params.caveats:
            notes.append(f"{role}: {cav}")
        if not params.admissible:
            notes.append(f"{role}: interpolation space not identified with {out.describe()}")
        if method is InterpMethod.REAL and q is not None and as_rational(q) != out.p:
            notes.append(f"{role}: fine index {as_rational(q)} differs from integrability {out.p}")
    notes.append("endpoint couples are assumed nested (X_0 ⊆ X_1)")

    for tag, v in zip(("end0", "end1"), verdicts):
        conds.extend(_relabel(v.certificate, tag))
    return MultQuery(*specs), Certificate(RuleId.INTERP_BILINEAR, tuple(conds), tuple(notes))

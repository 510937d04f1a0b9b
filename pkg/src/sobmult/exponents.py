"""Exact exponent arithmetic and the function-space data model.

Every smoothness and integrability index is a :class:`fractions.Fraction`;
floats never reach a comparison that decides a verdict.
"""

from __future__ import annotations

import enum
import math
import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^(-?)(\d+)(?:/(\d+)|\.(\d+))?$")


class ParseError(ValueError):
    pass


class ExponentDomainError(ValueError):
    pass


class ValidationError(ValueError):
    pass


def rational_parse(text: str) -> Fraction:
    """Parse ``[-]digits[/digits]`` or ``[-]digits[.digits]`` exactly.

    >>> rational_parse("0.25")
    Fraction(1, 4)
    """
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ParseError(f"malformed rational {text!r}")
    sign, whole, den, decimals = m.groups()
    if den is not None:
        if int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        value = Fraction(int(whole), int(den))
    elif decimals is not None:
        value = Fraction(int(whole + decimals), 10 ** len(decimals))
    else:
        value = Fraction(int(whole))
    return -value if sign else value


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and grammar strings; reject floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not exponents")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return rational_parse(value)
    raise TypeError(
        f"exponents must be exact (int, Fraction or str), got {type(value).__name__}"
    )


def format_rational(value: Fraction) -> str:
    """Wire format: always ``num/den``."""
    return f"{value.numerator}/{value.denominator}"


def is_integer(value: Fraction) -> bool:
    return value.denominator == 1


def frac_part(value: Fraction) -> Fraction:
    return value - math.floor(value)


def conjugate_exponent(p: RationalLike) -> Fraction:
    """Return ``p'`` with ``1/p + 1/p' = 1``; requires ``1 < p < inf``."""
    p = as_rational(p)
    if p <= 1:
        raise ExponentDomainError(f"conjugate exponent needs p > 1, got {p}")
    return p / (p - 1)


class DomainKind(enum.Enum):
    WHOLE_SPACE = "rn"
    BOUNDED_LIPSCHITZ = "bounded"


@dataclass(frozen=True)
class DomainSpec:
    kind: DomainKind
    n: int

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", DomainKind(self.kind))
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"dimension must be a positive integer, got {self.n!r}")

    @property
    def bounded(self) -> bool:
        return self.kind is DomainKind.BOUNDED_LIPSCHITZ

    def describe(self) -> str:
        return f"Ω⊂ℝ^{self.n}" if self.bounded else f"ℝ^{self.n}"


def whole_space(n: int) -> DomainSpec:
    return DomainSpec(DomainKind.WHOLE_SPACE, n)


def bounded_domain(n: int) -> DomainSpec:
    return DomainSpec(DomainKind.BOUNDED_LIPSCHITZ, n)


class Family(enum.Enum):
    W = "W"
    H = "H"
    BPP = "Bpp"


@dataclass(frozen=True)
class SpaceSpec:
    """A function space ``family^{s,p}(domain)``.

    Construction only canonicalizes the exponents; range checks live in
    :func:`validate_space` because the admissible ``p`` depends on the rule
    being applied.
    """

    family: Family
    s: Fraction
    p: Fraction
    domain: DomainSpec

    def __post_init__(self):
        if isinstance(self.family, str):
            object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "s", as_rational(self.s))
        object.__setattr__(self, "p", as_rational(self.p))

    @property
    def integer_smoothness(self) -> bool:
        return is_integer(self.s)

    @property
    def predual(self) -> Optional[tuple[Fraction, Fraction]]:
        """``(-s, p')`` for negative smoothness, else ``None``."""
        if self.s >= 0:
            return None
        return -self.s, conjugate_exponent(self.p)

    def describe(self) -> str:
        fam = "B" if self.family is Family.BPP else self.family.value
        if self.family is Family.BPP:
            return f"B^{self.s}_{{{self.p},{self.p}}}({self.domain.describe()})"
        return f"{fam}^{{{self.s},{self.p}}}({self.domain.describe()})"


def validate_space(spec: SpaceSpec) -> SpaceSpec:
    """Check the integrability range admissible for ``(family, s)``.

    ``W`` and ``B_{p,p}`` with ``s >= 0`` accept ``1 <= p < inf``; negative
    smoothness (duals) and Bessel potential spaces need ``1 < p < inf``.
    Returns the space unchanged, so the call is idempotent.
    """
    if not isinstance(spec, SpaceSpec):
        raise TypeError(f"expected SpaceSpec, got {type(spec).__name__}")
    if spec.s < 0 and spec.p <= 1:
        raise ValidationError(
            f"{spec.describe()}: negative s requires p > 1 (got p = {spec.p})"
        )
    if spec.family is Family.H and spec.p <= 1:
        raise ValidationError(
            f"{spec.describe()}: Bessel potential spaces require p > 1 (got p = {spec.p})"
        )
    if spec.p < 1:
        raise ValidationError(f"{spec.describe()}: p must satisfy p >= 1 (got p = {spec.p})")
    return spec


class Relation(enum.Enum):
    LT = "<"
    LE = "<="
    EQ = "="
    GE = ">="
    GT = ">"

    @property
    def op(self):
        return _RELATION_OPS[self]


_RELATION_OPS = {
    Relation.LT: operator.lt,
    Relation.LE: operator.le,
    Relation.EQ: operator.eq,
    Relation.GE: operator.ge,
    Relation.GT: operator.gt,
}


@dataclass(frozen=True)
class AtomicCondition:
    """``lhs relation rhs`` evaluated exactly, with a human label."""

    label: str
    lhs: Fraction
    relation: Relation
    rhs: Fraction
    holds: bool = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "lhs", as_rational(self.lhs))
        object.__setattr__(self, "rhs", as_rational(self.rhs))
        if isinstance(self.relation, str):
            object.__setattr__(self, "relation", Relation(self.relation))
        if self.holds is None:
            object.__setattr__(self, "holds", self.evaluate())

    def evaluate(self) -> bool:
        return bool(self.relation.op(self.lhs, self.rhs))

    def replays(self) -> bool:
        return self.evaluate() == self.holds

    def __str__(self) -> str:
        return f"{self.label}: {self.lhs} {self.relation.value} {self.rhs}"


def condition(label: str, lhs, relation: str, rhs) -> AtomicCondition:
    return AtomicCondition(label, lhs, Relation(relation), rhs)

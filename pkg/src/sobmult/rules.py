"""Sufficient-condition rules for multiplication and embedding of Sobolev-type spaces.

Each rule is a generator of :class:`~sobmult.exponents.AtomicCondition`
objects in a fixed order. A rule fires when every condition it yields holds;
evaluation stops at the first failure, which is recorded in the verdict's
``tried`` list. Rules are tried in a fixed order and the first one that fires
supplies the certificate.

Rule order
----------
W family:   Mult-Rn, Mult-Int (strict (iv), then strict (iii)), Mult-Bdd,
            Mult-Neg-I, Mult-Neg-II, Mult-Unified
H family:   Mult-Holder-H, Mult-H
B_{p,p}:    Mult-H (Besov variant), Besov-Zolesio
Embedding:  Identity, Emb-I, Emb-III

If nothing fires for a W query on the whole space, the necessity test
(:func:`necessity_disproof`) may still produce a Disproved verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Union

from .exponents import (
    AtomicCondition,
    DomainSpec,
    Family,
    Relation,
    SpaceSpec,
    as_rational,
    condition,
    format_rational,
    frac_part,
    validate_space,
)


class QueryError(ValueError):
    pass


class RuleId(str, enum.Enum):
    EMB_I = "Emb-I"
    EMB_II = "Emb-II"
    EMB_III = "Emb-III"
    MULT_H = "Mult-H"
    MULT_HOLDER_H = "Mult-Holder-H"
    MULT_INT = "Mult-Int"
    MULT_RN = "Mult-Rn"
    MULT_BDD = "Mult-Bdd"
    MULT_NEG_I = "Mult-Neg-I"
    MULT_NEG_II = "Mult-Neg-II"
    MULT_UNIFIED = "Mult-Unified"
    BESOV_ZOLESIO = "Besov-Zolesio"
    DISPROVE_NECESSITY = "Disprove-Necessity"
    IDENTITY = "Identity"
    INTERP_BILINEAR = "Interp-Bilinear"


class Status(str, enum.Enum):
    PROVED = "Proved"
    DISPROVED = "Disproved"
    UNDETERMINED = "Undetermined"


EXIT_CODES = {Status.PROVED: 0, Status.DISPROVED: 2, Status.UNDETERMINED: 3}


@dataclass(frozen=True)
class MultQuery:
    """Is pointwise multiplication ``left x right -> target`` continuous?"""

    left: SpaceSpec
    right: SpaceSpec
    target: SpaceSpec

    def swap(self) -> "MultQuery":
        return MultQuery(self.right, self.left, self.target)

    @property
    def domain(self) -> DomainSpec:
        return self.target.domain

    def describe(self) -> str:
        return f"{self.left.describe()} x {self.right.describe()} -> {self.target.describe()}"


@dataclass(frozen=True)
class EmbedQuery:
    source: SpaceSpec
    target: SpaceSpec

    @property
    def domain(self) -> DomainSpec:
        return self.target.domain

    def describe(self) -> str:
        return f"{self.source.describe()} -> {self.target.describe()}"


Query = Union[MultQuery, EmbedQuery]


@dataclass(frozen=True)
class Certificate:
    rule_id: RuleId
    conditions: tuple[AtomicCondition, ...] = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Attempt:
    """A rule that did not fire: either a failed condition or a gate reason."""

    rule_id: RuleId
    variant: str = ""
    failed: Optional[AtomicCondition] = None
    reason: str = ""


@dataclass(frozen=True)
class Verdict:
    status: Status
    certificate: Optional[Certificate] = None
    tried: tuple[Attempt, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.status is Status.UNDETERMINED and (self.certificate is not None or not self.tried):
            raise ValueError("Undetermined verdicts carry no certificate and a non-empty tried list")
        if self.status is not Status.UNDETERMINED and self.certificate is None:
            raise ValueError(f"{self.status.value} verdict needs a certificate")

    @property
    def rule_id(self) -> Optional[RuleId]:
        return self.certificate.rule_id if self.certificate else None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def replay_certificate(cert: Certificate) -> bool:
    """Re-evaluate every condition exactly; true iff all recorded booleans recur."""
    return all(c.replays() for c in cert.conditions)


# ---------------------------------------------------------------------------
# evaluation context and shared condition builders


@dataclass(frozen=True)
class _Ctx:
    n: Fraction
    bounded: bool
    s1: Fraction
    p1: Fraction
    s2: Fraction
    p2: Fraction
    s: Fraction
    p: Fraction
    ip1: Fraction
    ip2: Fraction
    ip: Fraction

    @classmethod
    def of(cls, q: MultQuery) -> "_Ctx":
        l, r, t = q.left, q.right, q.target
        return cls(
            n=Fraction(q.domain.n),
            bounded=q.domain.bounded,
            s1=l.s, p1=l.p, s2=r.s, p2=r.p, s=t.s, p=t.p,
            ip1=1 / l.p, ip2=1 / r.p, ip=1 / t.p,
        )


def _p_bounds(c: _Ctx, strict: bool, ordered: bool, target_bound: bool = True):
    rel = ">" if strict else ">="
    yield condition(f"p1 {rel} 1", c.p1, rel, 1)
    yield condition(f"p2 {rel} 1", c.p2, rel, 1)
    if ordered:
        yield condition("p1 <= p", c.p1, "<=", c.p)
        yield condition("p2 <= p", c.p2, "<=", c.p)
    elif target_bound:
        yield condition(f"p {rel} 1", c.p, rel, 1)


def _item_i(c: _Ctx):
    yield condition("(i) s1 >= s", c.s1, ">=", c.s)
    yield condition("(i) s2 >= s", c.s2, ">=", c.s)


def _item_iii(c: _Ctx, rel: str = ">="):
    yield condition(f"(iii) s1-s {rel} n(1/p1-1/p)", c.s1 - c.s, rel, c.n * (c.ip1 - c.ip))
    yield condition(f"(iii) s2-s {rel} n(1/p2-1/p)", c.s2 - c.s, rel, c.n * (c.ip2 - c.ip))


def _item_iv(c: _Ctx, rel: str = ">", tail: bool = False):
    rhs = c.n * (c.ip1 + c.ip2 - c.ip)
    yield condition(f"(iv) s1+s2-s {rel} n(1/p1+1/p2-1/p)", c.s1 + c.s2 - c.s, rel, rhs)
    if tail:
        yield condition("(iv) n(1/p1+1/p2-1/p) >= 0", rhs, ">=", 0)


# ---------------------------------------------------------------------------
# multiplication rules


@dataclass(frozen=True)
class _Rule:
    rule_id: RuleId
    conditions: Callable[[_Ctx], Iterable[AtomicCondition]]
    variant: str = ""
    whole_space_only: bool = False
    bounded_only: bool = False
    notes: Callable[[_Ctx], tuple[str, ...]] = field(default=lambda c: ())

    def gate(self, c: _Ctx) -> str:
        if self.whole_space_only and c.bounded:
            return "stated on the whole space only"
        if self.bounded_only and not c.bounded:
            return "stated on bounded Lipschitz domains only"
        return ""


def _mult_rn(c: _Ctx):
    yield from _p_bounds(c, strict=False, ordered=True)
    yield from _item_i(c)
    yield condition("(ii) s >= 0", c.s, ">=", 0)
    yield from _item_iii(c)
    yield from _item_iv(c)


def _mult_int(strict_iii: bool):
    def conds(c: _Ctx):
        yield from _p_bounds(c, strict=False, ordered=False)
        yield from _item_i(c)
        yield condition("(i) s >= 0", c.s, ">=", 0)
        yield condition("(ii) s in N0: frac(s) = 0", frac_part(c.s), "=", 0)
        if strict_iii:
            yield from _item_iii(c, ">")
            yield from _item_iv(c, ">=", tail=True)
        else:
            yield from _item_iii(c, ">=")
            yield from _item_iv(c, ">", tail=True)

    return conds


def _mult_int_notes(c: _Ctx) -> tuple[str, ...]:
    if c.bounded:
        return (
            "bounded-domain variant of the integer-order rule; relies on a continuous "
            "extension operator W^{s,p}(Ω) -> W^{s,p}(ℝ^n)",
        )
    return ()


def _mult_bdd(c: _Ctx):
    yield from _p_bounds(c, strict=False, ordered=False)
    yield from _item_i(c)
    yield condition("(ii) s >= 0", c.s, ">=", 0)
    yield from _item_iii(c)
    pmax, pmin = max(c.p1, c.p2), min(c.p1, c.p2)
    if pmax > c.p:
        yield condition("max{p1,p2} > p", pmax, ">", c.p)
        yield condition("(iv') s1+s2-s > n/min{p1,p2}", c.s1 + c.s2 - c.s, ">", c.n / pmin)
    else:
        yield condition("max{p1,p2} <= p", pmax, "<=", c.p)
        yield from _item_iv(c)


def _mult_bdd_notes(c: _Ctx) -> tuple[str, ...]:
    if max(c.p1, c.p2) > c.p:
        return (
            "replacement clause used: only (iv) is swapped for s1+s2-s > n/min{p1,p2}; "
            "(i)-(iii) kept as stated; no '>= 0' tail is attached to (iv) here",
        )
    return ()


def _mult_neg_i(c: _Ctx):
    yield from _p_bounds(c, strict=True, ordered=True)
    yield from _item_i(c)
    yield condition("(ii) min{s1,s2} < 0", min(c.s1, c.s2), "<", 0)
    yield from _item_iii(c)
    yield from _item_iv(c)
    rhs = c.n * (c.ip1 + c.ip2 - 1)
    yield condition("(v) s1+s2 >= n(1/p1+1/p2-1)", c.s1 + c.s2, ">=", rhs)
    if not c.bounded:
        yield condition("(v) n(1/p1+1/p2-1) >= 0", rhs, ">=", 0)


def _mult_neg_i_notes(c: _Ctx) -> tuple[str, ...]:
    if c.bounded:
        return (
            "bounded-domain variant: the assumption 1/p1+1/p2 >= 1 (tail of (v)) is dropped; "
            "relies on an extension operator",
        )
    return ()


def _mult_neg_ii(c: _Ctx):
    yield from _p_bounds(c, strict=True, ordered=False)
    yield from _item_i(c)
    yield condition("(ii) min{s1,s2} >= 0", min(c.s1, c.s2), ">=", 0)
    yield condition("(ii) s < 0", c.s, "<", 0)
    yield from _item_iii(c)
    yield from _item_iv(c, tail=True)
    yield condition("(v) s1+s2 > n(1/p1+1/p2-1) (strict)", c.s1 + c.s2, ">", c.n * (c.ip1 + c.ip2 - 1))


def _mult_neg_ii_notes(c: _Ctx) -> tuple[str, ...]:
    if c.bounded:
        return ("bounded-domain variant of the second negative-exponent rule; relies on an extension operator",)
    return ()


def _mult_unified(c: _Ctx):
    yield from _p_bounds(c, strict=True, ordered=False)
    yield from _item_i(c)
    yield condition("s1+s2 >= 0", c.s1 + c.s2, ">=", 0)
    for i, (si, pi, ipi) in enumerate(((c.s1, c.p1, c.ip1), (c.s2, c.p2, c.ip2)), start=1):
        yield condition(f"s{i}-s >= n(1/p{i}-1/p)", si - c.s, ">=", c.n * (ipi - c.ip))
        if si == c.s and frac_part(c.s) != 0:
            yield condition(f"s{i} = s", si, "=", c.s)
            yield condition("s not in Z: frac(s) > 0", frac_part(c.s), ">", 0)
            yield condition(f"p{i} <= p (since s{i} = s not in Z)", pi, "<=", c.p)
        elif si != c.s:
            yield condition(f"s{i} > s (no p{i} <= p clause)", si, ">", c.s)
        else:
            yield condition("s in Z (no p-ordering clause)", frac_part(c.s), "=", 0)
    yield from _item_iv(c, tail=True)
    lo = min(c.s1, c.s2)
    rhs = c.n * (c.ip1 + c.ip2 - 1)
    if c.s < 0:
        yield condition("s < 0", c.s, "<", 0)
        if lo < 0:
            yield condition("min(s1,s2) < 0 (equality allowed)", lo, "<", 0)
            yield condition("s1+s2 >= n(1/p1+1/p2-1)", c.s1 + c.s2, ">=", rhs)
        else:
            yield condition("min(s1,s2) >= 0 (strict)", lo, ">=", 0)
            yield condition("s1+s2 > n(1/p1+1/p2-1)", c.s1 + c.s2, ">", rhs)
    else:
        yield condition("s >= 0 (no negative-s clause)", c.s, ">=", 0)
    if c.s1 + c.s2 == 0 and frac_part(lo) != 0:
        yield condition("s1+s2 = 0", c.s1 + c.s2, "=", 0)
        yield condition("min(s1,s2) not in Z", frac_part(lo), ">", 0)
        yield condition("1/p1+1/p2 >= 1", c.ip1 + c.ip2, ">=", 1)
    elif c.s1 + c.s2 != 0:
        yield condition("s1+s2 > 0 (no 1/p1+1/p2 >= 1 clause)", c.s1 + c.s2, ">", 0)
    else:
        yield condition("min(s1,s2) in Z (no 1/p1+1/p2 >= 1 clause)", frac_part(lo), "=", 0)


def _mult_unified_notes(c: _Ctx) -> tuple[str, ...]:
    if c.s < 0:
        return (
            "negative-s clause read as: strict s1+s2 > n(1/p1+1/p2-1) required iff min(s1,s2) >= 0 "
            "(equality allowed only when a factor has negative smoothness)",
        )
    return ()


def _holder_h(c: _Ctx):
    yield from _p_bounds(c, strict=True, ordered=False)
    yield condition("s >= 0", c.s, ">=", 0)
    yield condition("s1 = s", c.s1, "=", c.s)
    yield condition("s2 = s", c.s2, "=", c.s)
    yield condition("1/p1+1/p2 = 1/p", c.ip1 + c.ip2, "=", c.ip)


def _mult_h(c: _Ctx):
    yield from _p_bounds(c, strict=True, ordered=True)
    yield from _item_i(c)
    yield condition("(ii) s >= 0", c.s, ">=", 0)
    yield from _item_iii(c)
    yield from _item_iv(c)


def _besov_zolesio(c: _Ctx):
    yield from _p_bounds(c, strict=True, ordered=True)
    yield condition("s >= 0", c.s, ">=", 0)
    yield from _item_i(c)
    yield from _item_iii(c)
    yield from _item_iv(c)
    if c.s == 0:
        yield condition("s not in N: s = 0", c.s, "=", 0)
    else:
        yield condition("s not in N: frac(s) > 0", frac_part(c.s), ">", 0)


W_RULES: tuple[_Rule, ...] = (
    _Rule(RuleId.MULT_RN, _mult_rn, whole_space_only=True),
    _Rule(RuleId.MULT_INT, _mult_int(strict_iii=False), variant="strict (iv)", notes=_mult_int_notes),
    _Rule(RuleId.MULT_INT, _mult_int(strict_iii=True), variant="strict (iii)", notes=_mult_int_notes),
    _Rule(RuleId.MULT_BDD, _mult_bdd, bounded_only=True, notes=_mult_bdd_notes),
    _Rule(RuleId.MULT_NEG_I, _mult_neg_i, notes=_mult_neg_i_notes),
    _Rule(RuleId.MULT_NEG_II, _mult_neg_ii, notes=_mult_neg_ii_notes),
    _Rule(RuleId.MULT_UNIFIED, _mult_unified, whole_space_only=True, notes=_mult_unified_notes),
)

H_RULES: tuple[_Rule, ...] = (
    _Rule(RuleId.MULT_HOLDER_H, _holder_h, whole_space_only=True),
    _Rule(RuleId.MULT_H, _mult_h, whole_space_only=True),
)

BPP_RULES: tuple[_Rule, ...] = (
    _Rule(
        RuleId.MULT_H, _mult_h, variant="B_{p,p} variant", whole_space_only=True,
        notes=lambda c: ("Bessel-potential rule transferred to B^s_{p,p}",),
    ),
    _Rule(
        RuleId.BESOV_ZOLESIO, _besov_zolesio, whole_space_only=True,
        notes=lambda c: ("Zolesio's Besov product rule, specialised to q_i = p_i, q = p",),
    ),
)

RULES_BY_FAMILY = {Family.W: W_RULES, Family.H: H_RULES, Family.BPP: BPP_RULES}


def _evaluate(rule: _Rule, ctx: _Ctx) -> tuple[Optional[Certificate], Optional[Attempt]]:
    reason = rule.gate(ctx)
    if reason:
        return None, Attempt(rule.rule_id, rule.variant, None, reason)
    seen = []
    for cond in rule.conditions(ctx):
        if not cond.holds:
            return None, Attempt(rule.rule_id, rule.variant, cond)
        seen.append(cond)
    notes = rule.notes(ctx)
    if rule.variant:
        notes = (f"variant: {rule.variant}",) + notes
    return Certificate(rule.rule_id, tuple(seen), notes), None


def _check_mult_query(q: MultQuery) -> None:
    if not isinstance(q, MultQuery):
        raise TypeError(f"expected MultQuery, got {type(q).__name__}")
    specs = (q.left, q.right, q.target)
    if len({sp.domain for sp in specs}) != 1:
        raise QueryError("left, right and target must live on the same domain")
    if len({sp.family for sp in specs}) != 1:
        raise QueryError("left, right and target must belong to the same family")
    for sp in specs:
        validate_space(sp)


def _necessity_conditions(c: _Ctx, side: int):
    si, pi = (c.s1, c.p1) if side == 1 else (c.s2, c.p2)
    so = c.s2 if side == 1 else c.s1
    other = 2 if side == 1 else 1
    yield condition(f"s{side} = s", si, "=", c.s)
    yield condition("s not in Z: frac(s) > 0", frac_part(c.s), ">", 0)
    yield condition("s > 0", c.s, ">", 0)
    yield condition(f"s{other} >= 0", so, ">=", 0)
    yield condition("p1 > 1", c.p1, ">", 1)
    yield condition("p2 > 1", c.p2, ">", 1)
    yield condition("p > 1", c.p, ">", 1)
    yield condition(f"p{side} > p", pi, ">", c.p)


def necessity_disproof(q: MultQuery) -> Optional[Certificate]:
    """Certificate that ``q`` cannot hold, from the ``p1 <= p`` necessity result.

    Applies only to the W family on the whole space, with the factor sharing
    the target's non-integer smoothness having the larger integrability.
    """
    _check_mult_query(q)
    if q.target.family is not Family.W or q.domain.bounded:
        return None
    ctx = _Ctx.of(q)
    for side in (1, 2):
        conds = []
        for cond in _necessity_conditions(ctx, side):
            if not cond.holds:
                break
            conds.append(cond)
        else:
            return Certificate(
                RuleId.DISPROVE_NECESSITY,
                tuple(conds),
                (
                    f"factor {side} shares the target's non-integer smoothness with larger integrability",
                    "witness: modulated copies g_N with |g_N f|_{W^{s,p}} / |g_N|_{W^{s,p_i}} ~ N^(1/p - 1/p_i) unbounded",
                ),
            )
    return None


def check_multiplication(q: MultQuery) -> Verdict:
    """Prove, disprove, or decline to decide ``left x right -> target``."""
    _check_mult_query(q)
    ctx = _Ctx.of(q)
    tried = []
    for rule in RULES_BY_FAMILY[q.target.family]:
        cert, attempt = _evaluate(rule, ctx)
        if cert is not None:
            return Verdict(Status.PROVED, cert, tuple(tried))
        tried.append(attempt)
    disproof = necessity_disproof(q)
    if disproof is not None:
        return Verdict(Status.DISPROVED, disproof, tuple(tried))
    return Verdict(Status.UNDETERMINED, None, tuple(tried))


# ---------------------------------------------------------------------------
# embeddings


def embedding_facts(spec: SpaceSpec) -> tuple[str, ...]:
    """Lebesgue/L^inf/algebra consequences of ``s*p`` versus ``n`` for W spaces."""
    if spec.family is not Family.W or spec.s < 0:
        return ()
    n = spec.domain.n
    sp = spec.s * spec.p
    if sp > n:
        return (f"{RuleId.EMB_II.value}(i): s*p = {sp} > n = {n}: embeds in L^inf ∩ C^0 and is a Banach algebra",)
    if sp == n:
        return (f"{RuleId.EMB_II.value}(ii): s*p = n = {n}: embeds in L^q for {spec.p} <= q < inf",)
    pstar = n * spec.p / (n - sp)
    return (f"{RuleId.EMB_II.value}(iii): s*p = {sp} < n = {n}: embeds in L^q for {spec.p} <= q <= {pstar}",)


def _emb_common(src: SpaceSpec, tgt: SpaceSpec, n: Fraction):
    yield condition("t >= 0", tgt.s, ">=", 0)
    yield condition("t <= s", tgt.s, "<=", src.s)
    yield condition("s-n/p >= t-n/q", src.s - n / src.p, ">=", tgt.s - n / tgt.p)


def _emb_i(src: SpaceSpec, tgt: SpaceSpec, n: Fraction):
    strict = src.family is Family.H
    yield condition("p > 1" if strict else "p >= 1", src.p, ">" if strict else ">=", 1)
    yield condition("p <= q", src.p, "<=", tgt.p)
    yield from _emb_common(src, tgt, n)


def _emb_iii(src: SpaceSpec, tgt: SpaceSpec, n: Fraction):
    yield condition("p >= 1", src.p, ">=", 1)
    yield condition("q >= 1", tgt.p, ">=", 1)
    yield from _emb_common(src, tgt, n)


def _run_conditions(rule_id, conds: Iterator[AtomicCondition], notes=()):
    seen = []
    for cond in conds:
        if not cond.holds:
            return None, Attempt(rule_id, "", cond)
        seen.append(cond)
    return Certificate(rule_id, tuple(seen), tuple(notes)), None


def check_embedding(q: EmbedQuery) -> Verdict:
    """Decide ``source -> target`` via identity, Emb-I, then Emb-III."""
    if not isinstance(q, EmbedQuery):
        raise TypeError(f"expected EmbedQuery, got {type(q).__name__}")
    if q.source.domain != q.target.domain:
        raise QueryError("source and target must live on the same domain")
    validate_space(q.source)
    validate_space(q.target)
    facts = embedding_facts(q.source)
    if q.source == q.target:
        return Verdict(Status.PROVED, Certificate(RuleId.IDENTITY, (), facts))
    tried = [Attempt(RuleId.IDENTITY, reason="source differs from target")]
    src, tgt = q.source, q.target
    n = Fraction(q.domain.n)
    if src.family is not tgt.family:
        tried.append(Attempt(RuleId.EMB_I, reason="families differ; no cross-family rule"))
        return Verdict(Status.UNDETERMINED, None, tuple(tried), facts)
    fam = src.family
    if fam is Family.BPP:
        tried.append(Attempt(RuleId.EMB_I, reason="no embedding rule for B_{p,p}"))
        return Verdict(Status.UNDETERMINED, None, tuple(tried), facts)
    if fam is Family.H and q.domain.bounded:
        tried.append(Attempt(RuleId.EMB_I, reason="Bessel-potential embedding stated on the whole space only"))
    else:
        cert, att = _run_conditions(RuleId.EMB_I, _emb_i(src, tgt, n), facts)
        if cert is not None:
            return Verdict(Status.PROVED, cert, tuple(tried))
        tried.append(att)
    if fam is Family.W and q.domain.bounded:
        notes = ("bounded domain: the ordering p <= q is not needed",) + facts
        cert, att = _run_conditions(RuleId.EMB_III, _emb_iii(src, tgt, n), notes)
        if cert is not None:
            return Verdict(Status.PROVED, cert, tuple(tried))
        tried.append(att)
    else:
        tried.append(Attempt(RuleId.EMB_III, reason="requires a bounded Lipschitz domain and the W family"))
    return Verdict(Status.UNDETERMINED, None, tuple(tried), facts)


def check(q: Query) -> Verdict:
    if isinstance(q, MultQuery):
        return check_multiplication(q)
    if isinstance(q, EmbedQuery):
        return check_embedding(q)
    raise TypeError(f"unsupported query type {type(q).__name__}")


# ---------------------------------------------------------------------------
# JSON encoding; every rational travels as a "num/den" string


def _spec_to_dict(sp: SpaceSpec) -> dict:
    return {"family": sp.family.value, "s": format_rational(sp.s), "p": format_rational(sp.p)}


def _spec_from_dict(d: dict, domain: DomainSpec) -> SpaceSpec:
    return SpaceSpec(Family(d["family"]), as_rational(d["s"]), as_rational(d["p"]), domain)


def query_to_dict(q: Query) -> dict:
    dom = {"kind": q.domain.kind.value, "n": q.domain.n}
    if isinstance(q, MultQuery):
        return {
            "kind": "mult",
            "domain": dom,
            "left": _spec_to_dict(q.left),
            "right": _spec_to_dict(q.right),
            "target": _spec_to_dict(q.target),
        }
    return {"kind": "embed", "domain": dom, "source": _spec_to_dict(q.source), "target": _spec_to_dict(q.target)}


def query_from_dict(d: dict) -> Query:
    dom = DomainSpec(d["domain"]["kind"], int(d["domain"]["n"]))
    if d["kind"] == "mult":
        return MultQuery(*(_spec_from_dict(d[k], dom) for k in ("left", "right", "target")))
    if d["kind"] == "embed":
        return EmbedQuery(_spec_from_dict(d["source"], dom), _spec_from_dict(d["target"], dom))
    raise ValueError(f"unknown query kind {d['kind']!r}")


def condition_to_dict(c: AtomicCondition) -> dict:
    return {
        "label": c.label,
        "lhs": format_rational(c.lhs),
        "rel": c.relation.value,
        "rhs": format_rational(c.rhs),
        "holds": c.holds,
    }


def condition_from_dict(d: dict) -> AtomicCondition:
    return AtomicCondition(d["label"], as_rational(d["lhs"]), Relation(d["rel"]), as_rational(d["rhs"]), bool(d["holds"]))


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "rule": cert.rule_id.value,
        "conditions": [condition_to_dict(c) for c in cert.conditions],
        "notes": list(cert.notes),
    }


def certificate_from_dict(d: dict) -> Certificate:
    return Certificate(
        RuleId(d["rule"]),
        tuple(condition_from_dict(c) for c in d.get("conditions", [])),
        tuple(d.get("notes", [])),
    )


def verdict_to_dict(v: Verdict, q: Optional[Query] = None) -> dict:
    out: dict = {}
    if q is not None:
        out["query"] = query_to_dict(q)
    out["status"] = v.status.value
    if v.certificate is not None:
        out.update(certificate_to_dict(v.certificate))
    else:
        out.update({"rule": None, "conditions": [], "notes": list(v.notes)})
    out["tried"] = [
        {
            "rule": a.rule_id.value,
            "variant": a.variant,
            "failed": condition_to_dict(a.failed) if a.failed else None,
            "reason": a.reason,
        }
        for a in v.tried
    ]
    return out


def verdict_from_dict(d: dict) -> Verdict:
    status = Status(d["status"])
    cert = certificate_from_dict(d) if d.get("rule") else None
    tried = tuple(
        Attempt(
            RuleId(a["rule"]),
            a.get("variant", ""),
            condition_from_dict(a["failed"]) if a.get("failed") else None,
            a.get("reason", ""),
        )
        for a in d.get("tried", [])
    )
    notes = tuple(d.get("notes", [])) if cert is None else ()
    return Verdict(status, cert, tried, notes)

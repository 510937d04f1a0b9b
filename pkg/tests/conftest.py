import random
from fractions import Fraction

from hypothesis import strategies as st

from sobmult import DomainSpec, Family, MultQuery, SpaceSpec

MAX_DEN = 12


def rationals(lo, hi, max_den=MAX_DEN):
    """Fractions in [lo, hi] with denominator at most ``max_den``."""
    return st.integers(1, max_den).flatmap(
        lambda d: st.integers(int(lo * d), int(hi * d)).map(lambda k: Fraction(k, d))
    )


smoothness = rationals(-3, 4)
integrability = rationals(1, 6)
domains = st.builds(DomainSpec, st.sampled_from(["rn", "bounded"]), st.sampled_from([1, 2, 3]))


def _valid_pair(s, p):
    # negative smoothness needs p > 1
    return p if s >= 0 or p > 1 else p + 1


@st.composite
def mult_queries(draw, families=(Family.W, Family.H, Family.BPP)):
    fam = draw(st.sampled_from(families))
    dom = draw(domains)
    specs = []
    for _ in range(3):
        s, p = draw(smoothness), draw(integrability)
        if fam is Family.H and p == 1:
            p = Fraction(3, 2)
        specs.append(SpaceSpec(fam, s, _valid_pair(s, p), dom))
    return MultQuery(*specs)


def random_fraction(rng: random.Random, lo, hi, max_den=MAX_DEN) -> Fraction:
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(int(lo * d), int(hi * d)), d)


def random_corpus(count: int, seed: int = 2024) -> list[MultQuery]:
    """Deterministic corpus of valid multiplication queries over all families."""
    rng = random.Random(seed)
    out = []
    fams = list(Family)
    while len(out) < count:
        fam = fams[rng.randrange(3)]
        dom = DomainSpec(rng.choice(["rn", "bounded"]), rng.randint(1, 3))
        specs = []
        for _ in range(3):
            s = random_fraction(rng, -3, 4)
            p = random_fraction(rng, 1, 6)
            if (s < 0 or fam is Family.H) and p == 1:
                p = Fraction(3, 2)
            specs.append(SpaceSpec(fam, s, p, dom))
        out.append(MultQuery(*specs))
    return out


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip("]"))):
            terminalreporter.write_line(line)

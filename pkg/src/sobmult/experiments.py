"""Numerical experiments: the modulated-copies counter-example and empirical
boundedness checks of proved product and embedding statements."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
from scipy import stats

from .exponents import Family, SpaceSpec, as_rational, format_rational, is_integer, whole_space
from .grid import GridFunction
from .norms import DEFAULT_BANK, LPFilterBank, besov_norm, bessel_norm, lp_norm_grid, sobolev_norm
from .rules import EmbedQuery, MultQuery, Status, check, query_to_dict

GROWTH_TOLERANCE = 0.02
BOUNDEDNESS_TOLERANCE = 0.05


class ConfigError(ValueError):
    pass


class UsageError(ValueError):
    pass


@dataclass
class ExperimentReport:
    experiment: str
    config: dict
    rows: list[dict]
    fitted_slope: float
    slope_stderr: float
    expected_slope: Fraction
    tolerance: float
    # one-sided: pass iff slope <= expected + tolerance
    one_sided: bool = False
    provenance: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        gap = self.fitted_slope - float(self.expected_slope)
        if self.one_sided:
            return gap <= self.tolerance
        return abs(gap) <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "config": self.config,
            "rows": self.rows,
            "slope": self.fitted_slope,
            "stderr": self.slope_stderr,
            "expected": format_rational(self.expected_slope),
            "pass": self.passed,
            "provenance": list(self.provenance),
        }

    def write_json(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    def write_csv(self, path: Union[str, Path]) -> None:
        keys = list(self.rows[0]) if self.rows else []
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=keys)
            w.writeheader()
            w.writerows(self.rows)


def fit_loglog(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """OLS slope and its standard error for ``log y`` against ``log x``."""
    if len(x) < 3:
        raise ConfigError(f"a slope fit needs at least 3 points, got {len(x)}")
    res = stats.linregress(np.log(np.asarray(x, float)), np.log(np.asarray(y, float)))
    return float(res.slope), float(res.stderr)


# ---------------------------------------------------------------------------
# modulated-copies counter-example
# ---------------------------------------------------------------------------

def default_base_function(size: int, period: float) -> GridFunction:
    """``1 + cos(2 pi x / L) / 2``: real, non-vanishing, spectrum in ``|k| <= 1``."""
    return GridFunction.from_function(lambda x: 1.0 + 0.5 * np.cos(2 * math.pi * x / period), size, period)


@dataclass
class CounterexampleConfig:
    """Parameters of ``g_N = sum_j 2^(-s m_j) e^(i 2^(m_j) x) f`` with ``m_j = j + offset``.

    ``f`` must have spectrum in ``|k| < epsilon_modes``, so ``f^2`` has
    spectrum in ``|k| <= 2 (epsilon_modes - 1)``; each modulated copy of
    ``f`` and of ``f^2`` has to sit inside the plateau of its own block.
    """

    s: Fraction = Fraction(1, 2)
    p1: Fraction = Fraction(4)
    p: Fraction = Fraction(2)
    s2: Fraction = Fraction(1)
    p2: Fraction = Fraction(2)
    N_list: tuple[int, ...] = tuple(range(1, 8))
    grid: int = 2 ** 14
    period: float = 8 * math.pi
    epsilon_modes: int = 2
    offset: int = 3
    base: Optional[GridFunction] = None
    bank: LPFilterBank = DEFAULT_BANK

    def __post_init__(self):
        for name in ("s", "p1", "p", "s2", "p2"):
            setattr(self, name, as_rational(getattr(self, name)))
        self.N_list = tuple(int(n) for n in self.N_list)
        if any(n < 1 for n in self.N_list):
            raise ConfigError("N values must be positive")
        if self.s <= 0 or is_integer(self.s):
            raise ConfigError(f"s must be positive and non-integer, got {self.s}")
        if self.epsilon_modes < 1:
            raise ConfigError("epsilon_modes must be positive")
        if self.base is None:
            self.base = default_base_function(self.grid, self.period)
        if self.base.dim != 1 or self.base.size != self.grid or self.base.period != self.period:
            raise ConfigError("base function must live on the configured 1-D grid")
        spec = np.abs(self.base.spectrum())
        k = np.abs(np.fft.fftfreq(self.grid, d=1.0 / self.grid))
        if spec.max() == 0:
            raise ConfigError("base function must not vanish identically")
        if np.any(spec[k >= self.epsilon_modes] > 1e-12 * spec.max()):
            raise ConfigError(f"base function spectrum exceeds |k| < {self.epsilon_modes}")
        for n in self.N_list:
            self.check_blocks(n)

    def exponents(self, n: int) -> list[int]:
        return [j + self.offset for j in range(1, n + 1)]

    def modulation_wavenumber(self, m: int) -> int:
        k = 2.0 ** m * self.period / (2 * math.pi)
        if abs(k - round(k)) > 1e-9 * k:
            raise ConfigError(f"frequency 2^{m} is not a grid wavenumber for period {self.period}")
        return round(k)

    def check_blocks(self, n: int) -> None:
        """Plateau containment for ``f`` and ``f^2`` copies, and grid capacity."""
        dk = 2 * (self.epsilon_modes - 1)
        unit = 2 * math.pi / self.period
        for m in self.exponents(n):
            lo, hi = self.bank.plateau_shell(m)
            kc = self.modulation_wavenumber(m)
            if not (lo <= (kc - dk) * unit and (kc + dk) * unit <= hi):
                raise ConfigError(
                    f"copy at frequency 2^{m} spreads outside the plateau [{lo}, {hi}] of block {m}; "
                    "reduce epsilon_modes or raise the offset"
                )
        kmax = self.modulation_wavenumber(self.exponents(n)[-1]) + dk
        if 2 * kmax >= self.grid:
            required = 1 << (2 * kmax).bit_length()
            raise ConfigError(f"N = {n} needs wavenumber {kmax}; grid too small, requires M >= {required}")

    def describe(self) -> dict:
        return {
            "s": format_rational(self.s),
            "p1": format_rational(self.p1),
            "p": format_rational(self.p),
            "s2": format_rational(self.s2),
            "p2": format_rational(self.p2),
            "N_list": list(self.N_list),
            "grid": self.grid,
            "period": self.period,
            "epsilon_modes": self.epsilon_modes,
            "offsets": f"m_j = j + {self.offset}",
        }


def build_gN(cfg: CounterexampleConfig, n: int) -> GridFunction:
    cfg.check_blocks(n)
    f = cfg.base
    x = f.coordinates()
    s = float(cfg.s)
    acc = np.zeros(cfg.grid, dtype=np.complex128)
    for m in cfg.exponents(n):
        acc += 2.0 ** (-s * m) * np.exp(1j * 2.0 ** m * x)
    return f.with_samples(acc * f.samples)


def _space_norm(u: GridFunction, spec: SpaceSpec, bank: LPFilterBank = DEFAULT_BANK) -> tuple[float, str]:
    """Numeric norm for ``spec`` and a label naming the definition used."""
    s, p = spec.s, spec.p
    if spec.family is Family.H:
        return bessel_norm(u, s, p), "bessel"
    if spec.family is Family.BPP:
        return besov_norm(u, s, p, p, bank), "besov"
    if is_integer(s) and s >= 0:
        return sobolev_norm(u, s, p), "sobolev"
    if is_integer(s):
        return bessel_norm(u, s, p), "bessel (negative integer W)"
    return besov_norm(u, s, p, p, bank), "besov (B^s_pp proxy for W^s,p)"


def counterexample_growth(cfg: CounterexampleConfig) -> ExperimentReport:
    """Growth of ``||g_N f||_{s,p} / (||g_N||_{s,p1} ||f||_{s2,p2})`` in ``N``."""
    if cfg.p1 <= cfg.p:
        raise ConfigError(f"p1 = {cfg.p1} <= p = {cfg.p}: no contradiction expected")
    if len(cfg.N_list) < 3:
        raise ConfigError(f"a slope fit needs at least 3 N values, got {len(cfg.N_list)}")
    f = cfg.base
    f_norm, f_label = _space_norm(f, SpaceSpec(Family.W, cfg.s2, cfg.p2, whole_space(1)), cfg.bank)
    f_p1 = lp_norm_grid(f, cfg.p1)
    f2_p = lp_norm_grid(f * f, cfg.p)
    rows = []
    for n in cfg.N_list:
        g = build_gN(cfg, n)
        g_norm = besov_norm(g, cfg.s, cfg.p1, cfg.p1, cfg.bank)
        gf_norm = besov_norm(g * f, cfg.s, cfg.p, cfg.p, cfg.bank)
        rows.append({
            "N": n,
            "gN_norm": g_norm,
            "gN_expected": n ** (1 / float(cfg.p1)) * f_p1,
            "gNf_norm": gf_norm,
            "gNf_expected": n ** (1 / float(cfg.p)) * f2_p,
            "f_norm": f_norm,
            "ratio": gf_norm / (g_norm * f_norm),
        })
    slope, stderr = fit_loglog([r["N"] for r in rows], [r["ratio"] for r in rows])
    return ExperimentReport(
        experiment="counterexample_growth",
        config=cfg.describe(),
        rows=rows,
        fitted_slope=slope,
        slope_stderr=stderr,
        expected_slope=1 / cfg.p - 1 / cfg.p1,
        tolerance=GROWTH_TOLERANCE,
        provenance=[
            "g_N: dyadically modulated copies of f, one copy per Littlewood-Paley plateau",
            "W^{s,p} norms of g_N and g_N f via besov_norm with q = p (B^s_pp = W^s,p, s non-integer)",
            f"||f||_(s2,p2) via {f_label}",
            f"1-D torus [0, {cfg.period}), M = {cfg.grid}, squared-cosine bank "
            f"plateau {cfg.bank.plateau}, support {cfg.bank.support}",
        ],
    )


# ---------------------------------------------------------------------------
# empirical boundedness
# ---------------------------------------------------------------------------

def random_band_limited(rng: np.random.Generator, bandwidth: int, grid: int, dim: int,
                        decay: float = 1.0, period: float = 2 * math.pi) -> GridFunction:
    """Complex Gaussian Fourier coefficients with amplitude ``(1+|k|)^-decay``
    on ``max_i |k_i| <= bandwidth``, zero elsewhere."""
    k = np.fft.fftfreq(grid, d=1.0 / grid)
    if dim == 1:
        kk = np.abs(k)
        mask = kk <= bandwidth
    else:
        k1, k2 = k[:, None], k[None, :]
        kk = np.sqrt(k1 ** 2 + k2 ** 2)
        mask = (np.abs(k1) <= bandwidth) & (np.abs(k2) <= bandwidth)
    shape = (grid,) * dim
    coeffs = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    coeffs = np.where(mask, coeffs * (1.0 + kk) ** (-decay), 0.0)
    return GridFunction.from_spectrum(coeffs * grid ** dim, period)


def empirical_boundedness(q: Union[MultQuery, EmbedQuery], samples: int = 200, seed: int = 0,
                          bandwidths: Sequence[int] = (16, 32, 64, 128), grid: int = 1024,
                          decay: float = 1.0, bank: LPFilterBank = DEFAULT_BANK) -> ExperimentReport:
    """Max over samples of ``||uv||/(||u|| ||v||)`` (or ``||u||_t/||u||_s``) per bandwidth.

    Passes when the log-log slope of the maxima against bandwidth is at most
    ``0.05``; a bounded map cannot show sustained growth.
    """
    verdict = check(q)
    if verdict.status is not Status.PROVED:
        raise UsageError(f"refusing to verify unproved claim ({verdict.status.value})")
    dim = q.domain.n
    if dim > 2:
        raise UsageError("numeric checks support n = 1 or 2 only")
    if samples < 1:
        raise UsageError("samples must be positive")
    bandwidths = sorted(int(b) for b in bandwidths)
    if grid < 4 * bandwidths[-1]:
        raise UsageError(f"grid {grid} too small for bandwidth {bandwidths[-1]}; need >= {4 * bandwidths[-1]}")
    is_mult = isinstance(q, MultQuery)

    labels = set()
    rows = []
    maxima = []
    for b in bandwidths:
        best = 0.0
        for i in range(samples):
            rng = np.random.default_rng([seed, b, i])
            if is_mult:
                u = random_band_limited(rng, b, grid, dim, decay)
                v = random_band_limited(rng, b, grid, dim, decay)
                nu, lu = _space_norm(u, q.left, bank)
                nv, lv = _space_norm(v, q.right, bank)
                nt, lt = _space_norm(u * v, q.target, bank)
                denom = nu * nv
                labels.update((lu, lv, lt))
            else:
                u = random_band_limited(rng, b, grid, dim, decay)
                denom, ls = _space_norm(u, q.source, bank)
                nt, lt = _space_norm(u, q.target, bank)
                labels.update((ls, lt))
            ratio = nt / denom
            best = max(best, ratio)
            rows.append({"bandwidth": b, "sample": i, "numerator": nt, "denominator": denom, "ratio": ratio})
        maxima.append(best)
    slope, stderr = fit_loglog(bandwidths, maxima)

    provenance = [
        f"verdict {verdict.rule_id.value}: {q.describe()}",
        "norms: " + ", ".join(sorted(labels)),
        f"torus [0, 2pi)^{dim}, M = {grid}, spectral decay (1+|k|)^-{decay}",
        f"seeds: numpy default_rng([{seed}, bandwidth, sample])",
        "max ratio per bandwidth: " + ", ".join(f"{b}: {m:.6g}" for b, m in zip(bandwidths, maxima)),
    ]
    if any("proxy" in lab for lab in labels):
        provenance.append("negative or fractional W smoothness measured by the B^s_pp norm")
    if q.domain.bounded:
        provenance.append("bounded domain modelled by the periodic torus")
    return ExperimentReport(
        experiment="empirical_boundedness",
        config={
            "query": query_to_dict(q),
            "samples": samples,
            "seed": seed,
            "bandwidths": bandwidths,
            "grid": grid,
            "decay": decay,
        },
        rows=rows,
        fitted_slope=slope,
        slope_stderr=stderr,
        expected_slope=Fraction(0),
        tolerance=BOUNDEDNESS_TOLERANCE,
        one_sided=True,
        provenance=provenance,
    )

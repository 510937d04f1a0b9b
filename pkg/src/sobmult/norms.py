"""Discrete Sobolev-type norms of periodic grid functions.

All norms act on :class:`~sobmult.grid.GridFunction` samples on the torus
``[0, L)^dim``.  Fourier multipliers are applied at the physical frequencies
``xi = 2*pi*k/L``; integrals become Riemann sums with cell volume ``(L/M)^dim``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exponents import RationalLike, as_rational
from .grid import GridFunction

# offsets per tile in the Gagliardo double sum
_TILE = 64


class NormError(ValueError):
    pass


def _exponent(p: RationalLike, *, strict: bool = False) -> float:
    p = as_rational(p)
    if p < 1 or (strict and p == 1):
        raise NormError(f"integrability exponent out of range: {p}")
    return float(p)


def _lp(samples: np.ndarray, p: float, cell: float) -> float:
    a = np.abs(samples)
    if p == 2.0:
        return math.sqrt(float(np.sum(a * a)) * cell)
    return (float(np.sum(a ** p)) * cell) ** (1.0 / p)


def lp_norm_grid(u: GridFunction, p: RationalLike) -> float:
    """``(sum |u_i|^p (L/M)^dim)^(1/p)``."""
    return _lp(u.samples, _exponent(p), u.cell_volume)


def bessel_norm(u: GridFunction, s: RationalLike, p: RationalLike) -> float:
    """``|| F^-1 <xi>^s F u ||_p`` with ``<xi> = (1 + |xi|^2)^(1/2)``."""
    s = as_rational(s)
    pf = _exponent(p, strict=True)
    if s == 0:
        return _lp(u.samples, pf, u.cell_volume)
    xi = u.frequency_modulus()
    mult = (1.0 + xi * xi) ** (float(s) / 2.0)
    return _lp(u.apply_multiplier(mult).samples, pf, u.cell_volume)


def slobodeckij_seminorm(u: GridFunction, theta: RationalLike, p: RationalLike) -> float:
    """Gagliardo seminorm ``(∬ |u(x)-u(y)|^p / d(x,y)^(1+theta p))^(1/p)`` in 1-D.

    ``d`` is the periodic distance; coincident points are skipped.  Offsets
    ``d`` and ``M-d`` give identical contributions, so only ``1..M/2`` are
    evaluated (weight 2 except the antipodal offset).  Offsets are processed in
    fixed tiles, which keeps the summation order and the result reproducible.
    """
    if u.dim != 1:
        raise NormError("the Gagliardo seminorm is only implemented for dim = 1")
    theta = as_rational(theta)
    if not 0 < theta < 1:
        raise NormError(f"theta must lie in (0, 1), got {theta}")
    pf = _exponent(p)
    m, h = u.size, u.spacing
    if m < 2:
        return 0.0
    x = u.samples
    power = 1.0 + float(theta) * pf
    half = m // 2
    idx = np.arange(m)
    total = 0.0
    for start in range(1, half + 1, _TILE):
        offs = np.arange(start, min(start + _TILE, half + 1))
        diffs = np.abs(x[(idx[None, :] + offs[:, None]) % m] - x[None, :])
        row = np.sum(diffs ** pf if pf != 2.0 else diffs * diffs, axis=1)
        weight = np.where(offs == half, 1.0, 2.0) / (offs * h) ** power
        total += float(np.dot(row, weight))
    return (total * h * h) ** (1.0 / pf)


def _multi_indices(dim: int, order: int):
    return [nu for nu in itertools.product(range(order + 1), repeat=dim) if sum(nu) == order]


def spectral_derivative(u: GridFunction, nu: tuple[int, ...]) -> GridFunction:
    """``∂^nu u`` via the multiplier ``(i xi)^nu``.

    For odd orders along an axis the Nyquist mode is dropped, since its
    derivative is not representable on the grid.
    """
    if len(nu) != u.dim:
        raise NormError(f"multi-index {nu} does not match dimension {u.dim}")
    if not any(nu):
        return u
    axes = u.wavenumbers()
    mult = np.ones((u.size,) * u.dim, dtype=np.complex128)
    nyq = u.size // 2
    for axis, (xi, order) in enumerate(zip(axes, nu)):
        if order == 0:
            continue
        factor = (1j * xi) ** order
        if order % 2:
            factor = factor.copy()
            sl = [slice(None)] * u.dim
            sl[axis] = nyq
            factor[tuple(sl) if u.dim > 1 else nyq] = 0.0
        mult = mult * factor
    return u.apply_multiplier(mult)


def sobolev_norm(u: GridFunction, s: RationalLike, p: RationalLike) -> float:
    """Sum convention: ``sum_{|nu|<=k} ||∂^nu u||_p`` plus, for ``s = k + theta``
    with ``theta > 0``, ``sum_{|nu|=k} |∂^nu u|_{theta,p}``."""
    s = as_rational(s)
    if s < 0:
        raise NormError("sobolev_norm needs s >= 0; use besov_norm for negative smoothness")
    pf = _exponent(p)
    k = math.floor(s)
    theta = s - k
    if theta and u.dim != 1:
        raise NormError("fractional Sobolev norms are only implemented for dim = 1")
    total = 0.0
    for order in range(k + 1):
        for nu in _multi_indices(u.dim, order):
            du = spectral_derivative(u, nu)
            total += _lp(du.samples, pf, u.cell_volume)
            if order == k and theta:
                total += slobodeckij_seminorm(du, theta, p)
    return total


@dataclass(frozen=True)
class LPFilterBank:
    """Dyadic partition of unity with a squared-cosine profile.

    ``phi0 = 1`` for ``|xi| <= plateau`` and ``0`` for ``|xi| >= support``;
    block ``j >= 1`` is ``phi0(2^-j xi) - phi0(2^(1-j) xi)`` and equals one on
    ``[support/2, plateau] * 2^j``.
    """

    plateau: Fraction = Fraction(11, 10)
    support: Fraction = Fraction(19, 10)

    def __post_init__(self):
        object.__setattr__(self, "plateau", as_rational(self.plateau))
        object.__setattr__(self, "support", as_rational(self.support))
        if not 0 < self.plateau < self.support:
            raise NormError("need 0 < plateau < support")
        if not self.support / 2 < self.plateau:
            raise NormError("support/2 < plateau is needed for blocks with a genuine plateau")

    def phi0(self, r: np.ndarray) -> np.ndarray:
        r = np.abs(np.asarray(r, dtype=float))
        a, b = float(self.plateau), float(self.support)
        t = np.clip((r - a) / (b - a), 0.0, 1.0)
        out = np.cos(0.5 * math.pi * t) ** 2
        out[r <= a] = 1.0
        out[r >= b] = 0.0
        return out

    def plateau_shell(self, j: int) -> tuple[float, float]:
        """Closed interval of ``|xi|`` where block ``j`` is identically one."""
        if j == 0:
            return 0.0, float(self.plateau)
        return float(self.support) * 2.0 ** (j - 1), float(self.plateau) * 2.0 ** j

    def block_count(self, max_freq: float) -> int:
        """Number of blocks needed so that they sum to one up to ``max_freq``."""
        j = 0
        while float(self.plateau) * 2.0 ** j < max_freq:
            j += 1
        return j + 1

    def weights(self, u: GridFunction) -> list[np.ndarray]:
        xi = u.frequency_modulus()
        count = self.block_count(float(xi.max()))
        cumulative = [self.phi0(xi / 2.0 ** j) for j in range(count)]
        return [cumulative[0]] + [cumulative[j] - cumulative[j - 1] for j in range(1, count)]


DEFAULT_BANK = LPFilterBank()


def lp_block(u: GridFunction, j: int, bank: LPFilterBank = DEFAULT_BANK) -> GridFunction:
    if j < 0:
        raise NormError("block index must be non-negative")
    w = bank.weights(u)
    if j >= len(w):
        return u.with_samples(np.zeros_like(u.samples))
    return u.apply_multiplier(w[j])


def _blocks(u: GridFunction, bank: LPFilterBank) -> list[np.ndarray]:
    spec = u.spectrum()
    return [np.fft.ifftn(w * spec) for w in bank.weights(u)]


def besov_norm(u: GridFunction, s: RationalLike, p: RationalLike, q: RationalLike,
               bank: LPFilterBank = DEFAULT_BANK) -> float:
    """``( sum_j (2^(sj) ||block_j||_p)^q )^(1/q)``."""
    sf = float(as_rational(s))
    pf, qf = _exponent(p), _exponent(q)
    terms = np.array([2.0 ** (sf * j) * _lp(b, pf, u.cell_volume)
                      for j, b in enumerate(_blocks(u, bank))])
    return float(np.sum(terms ** qf)) ** (1.0 / qf)


def triebel_norm(u: GridFunction, s: RationalLike, p: RationalLike, q: RationalLike,
                 bank: LPFilterBank = DEFAULT_BANK) -> float:
    """``|| ( sum_j |2^(sj) block_j(x)|^q )^(1/q) ||_p``."""
    sf = float(as_rational(s))
    pf, qf = _exponent(p), _exponent(q)
    acc = np.zeros(u.samples.shape)
    for j, b in enumerate(_blocks(u, bank)):
        acc += (2.0 ** (sf * j) * np.abs(b)) ** qf
    return _lp(acc ** (1.0 / qf), pf, u.cell_volume)

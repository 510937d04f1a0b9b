"""Complex samples on a uniform periodic grid (the torus ``[0, L)^dim``).

Binary format (little endian)::

    b"SOBG"  u32 dim  u32 M  f64 L  then M**dim interleaved (f64 re, f64 im), row-major

CSV format: ``index,re,im`` per line (row-major flat index), optional header.
"""

from __future__ import annotations

import csv
import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Union

import numpy as np

MAGIC = b"SOBG"
_HEADER = struct.Struct("<4sIId")

PathLike = Union[str, Path]


class GridError(ValueError):
    pass


def _is_power_of_two(m: int) -> bool:
    return m > 0 and (m & (m - 1)) == 0


@dataclass(frozen=True, eq=False)
class GridFunction:
    samples: np.ndarray
    period: float = 2 * math.pi

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.complex128, copy=True)
        if arr.ndim not in (1, 2):
            raise GridError(f"dimension must be 1 or 2, got {arr.ndim}")
        if arr.ndim == 2 and arr.shape[0] != arr.shape[1]:
            raise GridError(f"2-D grids must be square, got {arr.shape}")
        if not _is_power_of_two(arr.shape[0]):
            raise GridError(f"grid size must be a power of two, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise GridError("samples must be finite")
        if not (self.period > 0 and math.isfinite(self.period)):
            raise GridError(f"period must be positive, got {self.period}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "period", float(self.period))

    @property
    def dim(self) -> int:
        return self.samples.ndim

    @property
    def size(self) -> int:
        return self.samples.shape[0]

    @property
    def spacing(self) -> float:
        return self.period / self.size

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dim

    @classmethod
    def from_function(cls, f: Callable, size: int, period: float = 2 * math.pi, dim: int = 1) -> "GridFunction":
        x = np.arange(size) * (period / size)
        if dim == 1:
            return cls(f(x), period)
        xx, yy = np.meshgrid(x, x, indexing="ij")
        return cls(f(xx, yy), period)

    @classmethod
    def from_spectrum(cls, coeffs: np.ndarray, period: float = 2 * math.pi) -> "GridFunction":
        """Samples whose DFT (numpy convention) is ``coeffs``."""
        return cls(np.fft.ifftn(coeffs), period)

    def coordinates(self) -> np.ndarray:
        return np.arange(self.size) * self.spacing

    def wavenumbers(self) -> tuple[np.ndarray, ...]:
        """Physical angular frequencies ``2*pi*k/L`` along each axis, broadcastable."""
        k = np.fft.fftfreq(self.size, d=1.0 / self.size)
        xi = 2 * math.pi * k / self.period
        if self.dim == 1:
            return (xi,)
        return (xi[:, None], xi[None, :])

    def frequency_modulus(self) -> np.ndarray:
        axes = self.wavenumbers()
        if self.dim == 1:
            return np.abs(axes[0])
        return np.sqrt(axes[0] ** 2 + axes[1] ** 2)

    def spectrum(self) -> np.ndarray:
        return np.fft.fftn(self.samples)

    def with_samples(self, samples: np.ndarray) -> "GridFunction":
        return GridFunction(samples, self.period)

    def apply_multiplier(self, multiplier: np.ndarray) -> "GridFunction":
        return self.with_samples(np.fft.ifftn(multiplier * self.spectrum()))

    def _check_compatible(self, other: "GridFunction"):
        if self.samples.shape != other.samples.shape or self.period != other.period:
            raise GridError("grid functions live on different grids")

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            self._check_compatible(other)
            return self.with_samples(self.samples * other.samples)
        return self.with_samples(self.samples * other)

    __rmul__ = __mul__

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._check_compatible(other)
        return self.with_samples(self.samples + other.samples)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self._check_compatible(other)
        return self.with_samples(self.samples - other.samples)

    def __neg__(self) -> "GridFunction":
        return self.with_samples(-self.samples)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GridFunction)
            and self.period == other.period
            and self.samples.shape == other.samples.shape
            and bool(np.array_equal(self.samples, other.samples))
        )

    __hash__ = None


def save_sobg(u: GridFunction, path: PathLike) -> None:
    header = _HEADER.pack(MAGIC, u.dim, u.size, u.period)
    payload = np.ascontiguousarray(u.samples, dtype="<c16").tobytes()
    Path(path).write_bytes(header + payload)


def load_sobg(path: PathLike) -> GridFunction:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise GridError("truncated SOBG header")
    magic, dim, m, period = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise GridError(f"bad magic {magic!r}")
    if dim not in (1, 2):
        raise GridError(f"unsupported dimension {dim}")
    count = m ** dim
    body = raw[_HEADER.size:]
    if len(body) != 16 * count:
        raise GridError(f"expected {16 * count} payload bytes, found {len(body)}")
    samples = np.frombuffer(body, dtype="<c16").astype(np.complex128)
    return GridFunction(samples.reshape((m,) * dim), period)


def save_csv(u: GridFunction, path: PathLike) -> None:
    flat = u.samples.reshape(-1)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "re", "im"])
        for i, z in enumerate(flat):
            w.writerow([i, repr(float(z.real)), repr(float(z.imag))])


def load_csv(path: PathLike, period: float = 2 * math.pi, dim: int = 1) -> GridFunction:
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.reader(fh):
            if not rec or rec[0].strip().lower() == "index":
                continue
            if len(rec) != 3:
                raise GridError(f"expected index,re,im but got {rec}")
            rows.append((int(rec[0]), float(rec[1]), float(rec[2])))
    rows.sort()
    if [r[0] for r in rows] != list(range(len(rows))):
        raise GridError("CSV indices must cover 0..count-1 exactly once")
    data = np.array([complex(re, im) for _, re, im in rows])
    m = round(len(data) ** (1.0 / dim))
    if m ** dim != len(data):
        raise GridError(f"{len(data)} samples do not form a {dim}-D square grid")
    return GridFunction(data.reshape((m,) * dim), period)

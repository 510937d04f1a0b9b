import math
import struct

import numpy as np
import pytest

from sobmult.grid import GridError, GridFunction, load_csv, load_sobg, save_csv, save_sobg


def random_grid(seed=0, m=64, dim=1, period=2 * math.pi):
    rng = np.random.default_rng(seed)
    shape = (m,) * dim
    return GridFunction(rng.standard_normal(shape) + 1j * rng.standard_normal(shape), period)


class TestInvariants:
    @pytest.mark.parametrize("shape", [(3,), (12,), (4, 8), (2, 2, 2)])
    def test_rejects_bad_shapes(self, shape):
        with pytest.raises(GridError):
            GridFunction(np.zeros(shape))

    def test_rejects_non_finite(self):
        data = np.zeros(8)
        data[3] = np.nan
        with pytest.raises(GridError):
            GridFunction(data)

    @pytest.mark.parametrize("period", [0.0, -1.0, float("inf")])
    def test_rejects_bad_period(self, period):
        with pytest.raises(GridError):
            GridFunction(np.zeros(8), period)

    def test_immutable_copy(self):
        src = np.ones(8)
        u = GridFunction(src)
        src[0] = 5
        assert u.samples[0] == 1
        with pytest.raises(ValueError):
            u.samples[0] = 2

    def test_wavenumbers(self):
        u = GridFunction(np.zeros(8), period=4 * math.pi)
        (xi,) = u.wavenumbers()
        assert np.allclose(xi, [0, 0.5, 1, 1.5, -2, -1.5, -1, -0.5])

    def test_mismatched_grids(self):
        with pytest.raises(GridError):
            random_grid(m=8) * random_grid(m=16)


class TestSobg:
    @pytest.mark.parametrize("dim", [1, 2])
    def test_round_trip(self, tmp_path, dim):
        u = random_grid(dim=dim, m=16, period=3.5)
        path = tmp_path / "u.sobg"
        save_sobg(u, path)
        assert load_sobg(path) == u

    def test_layout(self, tmp_path):
        u = GridFunction(np.array([1 + 2j, 3 - 4j]), period=2.0)
        path = tmp_path / "u.sobg"
        save_sobg(u, path)
        raw = path.read_bytes()
        assert raw[:4] == b"SOBG"
        assert struct.unpack_from("<IId", raw, 4) == (1, 2, 2.0)
        assert struct.unpack_from("<4d", raw, 20) == (1.0, 2.0, 3.0, -4.0)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.sobg"
        path.write_bytes(b"XXXX" + bytes(16))
        with pytest.raises(GridError, match="magic"):
            load_sobg(path)

    def test_truncated(self, tmp_path):
        u = random_grid(m=8)
        path = tmp_path / "u.sobg"
        save_sobg(u, path)
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(GridError):
            load_sobg(path)


class TestCsv:
    def test_round_trip(self, tmp_path):
        u = random_grid(m=32)
        path = tmp_path / "u.csv"
        save_csv(u, path)
        assert load_csv(path) == u

    def test_2d(self, tmp_path):
        u = random_grid(m=4, dim=2, period=1.0)
        path = tmp_path / "u.csv"
        save_csv(u, path)
        assert load_csv(path, period=1.0, dim=2) == u

    def test_missing_index(self, tmp_path):
        path = tmp_path / "u.csv"
        path.write_text("index,re,im\n0,1,0\n2,1,0\n")
        with pytest.raises(GridError):
            load_csv(path)

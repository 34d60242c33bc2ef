"""Points and point sets on the unit sphere S^d embedded in R^{d+1}."""
from __future__ import annotations

from typing import Iterator

import numpy as np

from ._rng import substream
from .errors import ConditionError, DataError

NORM_TOL = 1e-12
EQ_TOL = 1e-12


def _as_unit(coords: np.ndarray, tol: float = NORM_TOL) -> np.ndarray:
    coords = np.asarray(coords, dtype=float)
    if coords.ndim != 1 or coords.size < 2:
        raise DataError(f"a sphere point needs a flat coordinate vector of "
                        f"length >= 2, got shape {coords.shape}")
    nrm = np.linalg.norm(coords)
    if abs(nrm - 1.0) > tol:
        raise DataError(f"coordinates are off the unit sphere: |norm - 1| = "
                        f"{abs(nrm - 1.0):.3e} > {tol:.0e}")
    return coords / nrm


class SpherePoint:
    """A single point of S^d; coordinates must be unit within 1e-12."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = _as_unit(coords)
        self.coords.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.coords.size - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpherePoint):
            return NotImplemented
        return (self.coords.size == other.coords.size
                and bool(np.all(np.abs(self.coords - other.coords) <= EQ_TOL)))

    __hash__ = None

    def __repr__(self) -> str:
        return f"SpherePoint({self.coords.tolist()})"


class PointSet:
    """An ordered finite subset of S^d, stored as an (n, d+1) array."""

    def __init__(self, coords):
        coords = np.array(coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] < 2:
            raise DataError(f"point set needs shape (n, d+1) with d >= 1, "
                            f"got {coords.shape}")
        nrm = np.linalg.norm(coords, axis=1)
        bad = np.abs(nrm - 1.0) > NORM_TOL
        if np.any(bad):
            i = int(np.argmax(bad))
            raise DataError(f"point {i} is off the unit sphere by "
                            f"{abs(nrm[i] - 1.0):.3e}")
        self.coords = coords / nrm[:, None]
        self.coords.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.coords.shape[1] - 1

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __getitem__(self, i: int) -> SpherePoint:
        return SpherePoint(self.coords[i])

    def __iter__(self) -> Iterator[SpherePoint]:
        for row in self.coords:
            yield SpherePoint(row)

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)}, d={self.dim})"


def as_coords(x) -> np.ndarray:
    """Coordinate array of a SpherePoint, PointSet, or plain array."""
    if isinstance(x, SpherePoint):
        return x.coords
    if isinstance(x, PointSet):
        return x.coords
    return np.asarray(x, dtype=float)


def dot(x, y) -> np.ndarray:
    """Inner products <x, y>, clipped into [-1, 1].

    1-D against 1-D gives a scalar; (n, d+1) against (m, d+1) gives the full
    (n, m) product matrix; mixed shapes follow matrix-vector rules.
    """
    xc = as_coords(x)
    yc = as_coords(y)
    if xc.shape[-1] != yc.shape[-1]:
        raise ConditionError(f"ambient dimensions differ: {xc.shape[-1]} vs "
                             f"{yc.shape[-1]}")
    if yc.ndim == 2:
        out = xc @ yc.T
    else:
        out = xc @ yc
    return np.clip(out, -1.0, 1.0)


def sample_uniform(d: int, n: int, seed: int) -> PointSet:
    """n independent uniform points on S^d; fixed seed gives identical output."""
    if d < 1 or n < 1:
        raise ConditionError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    rng = substream(seed, "sphere.sample_uniform")
    g = rng.standard_normal((n, d + 1))
    nrm = np.linalg.norm(g, axis=1)
    while np.any(nrm < 1e-12):  # essentially never
        bad = nrm < 1e-12
        g[bad] = rng.standard_normal((int(bad.sum()), d + 1))
        nrm = np.linalg.norm(g, axis=1)
    return PointSet(g / nrm[:, None])

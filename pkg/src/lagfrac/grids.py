"""Evaluation and quadrature grids shared by the certificates and norm sweeps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = ["GridSpec", "DIAGONAL_FLOOR"]

DIAGONAL_FLOOR = 1e-6


@dataclass(frozen=True)
class GridSpec:
    """A one-dimensional grid on (lo, hi].

    ``scheme`` is ``"geometric"``, ``"uniform"`` or ``"explicit"`` (then
    ``points`` is used verbatim).  ``near_diagonal`` lists the offsets
    delta >= DIAGONAL_FLOOR at which extra pairs (x, x + delta) are emitted by
    :meth:`pairs`.
    """

    lo: float = 0.1
    hi: float = 10.0
    n: int = 30
    scheme: str = "geometric"
    points: tuple = ()
    near_diagonal: tuple = ()

    def __post_init__(self):
        if self.scheme not in ("geometric", "uniform", "explicit"):
            raise ValueError(f"unknown grid scheme {self.scheme!r}")
        if self.scheme == "explicit":
            if not self.points:
                raise ValueError("explicit grid needs points")
        elif not (0 < self.lo < self.hi and self.n >= 1):
            raise ValueError("grid needs 0 < lo < hi and n >= 1")
        if any(d < DIAGONAL_FLOOR for d in self.near_diagonal):
            raise ValueError(f"near-diagonal offsets must be >= {DIAGONAL_FLOOR}")
        object.__setattr__(self, "points", tuple(float(p) for p in self.points))
        object.__setattr__(self, "near_diagonal", tuple(float(d) for d in self.near_diagonal))

    @classmethod
    def explicit(cls, points: Sequence[float], near_diagonal=()) -> "GridSpec":
        return cls(scheme="explicit", points=tuple(points), near_diagonal=tuple(near_diagonal))

    def nodes(self) -> np.ndarray:
        if self.scheme == "explicit":
            return np.asarray(self.points, dtype=float)
        if self.n == 1:
            return np.array([self.hi])
        if self.scheme == "geometric":
            return np.geomspace(self.lo, self.hi, self.n)
        return np.linspace(self.lo, self.hi, self.n)

    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Off-diagonal pairs of the tensor grid plus near-diagonal pairs.

        Pairs with |x - y| < DIAGONAL_FLOOR are never emitted.
        """
        g = self.nodes()
        X, Y = np.meshgrid(g, g, indexing="ij")
        X, Y = X.ravel(), Y.ravel()
        keep = np.abs(X - Y) >= DIAGONAL_FLOOR
        xs, ys = [X[keep]], [Y[keep]]
        for d in self.near_diagonal:
            xs.append(g)
            ys.append(g + d)
        return np.concatenate(xs), np.concatenate(ys)

    def describe(self) -> str:
        if self.scheme == "explicit":
            body = f"explicit[{len(self.points)}]"
        else:
            body = f"{self.scheme}({self.lo:g},{self.hi:g},{self.n})"
        if self.near_diagonal:
            body += "+diag" + ",".join(f"{d:g}" for d in self.near_diagonal)
        return body

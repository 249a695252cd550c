"""Dense vertex-weight tensors, Yang-Baxter contraction and gauge sandwiches.

An :class:`RMatrix` stores the weight of the vertex with incoming states
``(i, j)`` and outgoing states ``(k, l)`` at ``entries[i, j, k, l]``.  Read as
a linear map on ``V_left (x) V_right`` its operator matrix is
``M[(k, l), (i, j)]``: rows are outgoing pairs, columns incoming pairs, which
is how 4x4 six-vertex matrices are usually printed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np

__all__ = [
    "RMatrix",
    "GaugeSandwich",
    "CheckReport",
    "SupportError",
    "ybe_residual",
    "ybe_defect",
    "apply_gauge",
    "projective_distance",
    "support_violations",
    "dumps_rmatrix",
    "loads_rmatrix",
    "write_rmatrix",
    "read_rmatrix",
]

ZERO_TOL = 1e-14


class SupportError(ValueError):
    """A weight table has a nonzero entry outside its conservation support."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RMatrix:
    """Rank-4 complex weight tensor ``entries[in_l, in_r, out_l, out_r]``."""

    entries: np.ndarray
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        e = _frozen(self.entries)
        if e.ndim != 4:
            raise ValueError(f"RMatrix needs a rank-4 array, got shape {e.shape}")
        d1, d2, d3, d4 = e.shape
        if (d1, d2) != (d3, d4) or min(e.shape) < 1:
            raise ValueError(f"inconsistent leg dimensions {e.shape}")
        if not np.all(np.isfinite(e)):
            raise ValueError("RMatrix entries must be finite")
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "meta", dict(self.meta))

    @property
    def dims(self) -> tuple[int, int]:
        return self.entries.shape[0], self.entries.shape[1]

    def matrix(self) -> np.ndarray:
        """Operator matrix, rows = outgoing pair, columns = incoming pair."""
        d1, d2 = self.dims
        return self.entries.transpose(2, 3, 0, 1).reshape(d1 * d2, d1 * d2)

    @classmethod
    def from_matrix(cls, m, dims: tuple[int, int], meta=None) -> "RMatrix":
        d1, d2 = dims
        m = np.asarray(m, dtype=np.complex128).reshape(d1, d2, d1, d2)
        return cls(m.transpose(2, 3, 0, 1), meta or {})

    @classmethod
    def identity(cls, d1: int, d2: int | None = None) -> "RMatrix":
        d2 = d1 if d2 is None else d2
        return cls.from_matrix(np.eye(d1 * d2), (d1, d2))

    def scaled(self, s: complex) -> "RMatrix":
        return RMatrix(self.entries * s, self.meta)

    def with_meta(self, **kw) -> "RMatrix":
        return RMatrix(self.entries, {**self.meta, **kw})

    def nonzero_count(self, tol: float = ZERO_TOL) -> int:
        scale = max(np.abs(self.entries).max(), 1.0)
        return int(np.count_nonzero(np.abs(self.entries) > tol * scale))


def support_violations(R: RMatrix, rule: str, tol: float = ZERO_TOL) -> list[tuple]:
    """Indices of entries that break a conservation rule.

    ``rule="multiset"``: nonzero only if ``{i, j} == {k, l}``.
    ``rule="charge"``: nonzero only if ``i + j == k + l (mod N)``.
    """
    e = R.entries
    scale = max(np.abs(e).max(), 1.0)
    d1, d2 = R.dims
    bad = []
    for idx in zip(*np.nonzero(np.abs(e) > tol * scale)):
        i, j, k, l = (int(t) for t in idx)
        if rule == "multiset":
            ok = sorted((i, j)) == sorted((k, l))
        elif rule == "charge":
            if d1 != d2:
                raise ValueError("charge rule needs equal leg dimensions")
            ok = (i + j - k - l) % d1 == 0
        else:
            raise ValueError(f"unknown support rule {rule!r}")
        if not ok:
            bad.append((i, j, k, l))
    return bad


def require_support(R: RMatrix, rule: str) -> RMatrix:
    bad = support_violations(R, rule)
    if bad:
        raise SupportError(f"{len(bad)} entries violate the {rule} rule, first {bad[0]}")
    return R


def _ybe_sides(RA: RMatrix, RB: RMatrix, RC: RMatrix):
    (a1, a2), (b1, b3), (c2, c3) = RA.dims, RB.dims, RC.dims
    problems = []
    if a1 != b1:
        problems.append(f"space 1: RA left leg {a1} vs RB left leg {b1}")
    if a2 != c2:
        problems.append(f"space 2: RA right leg {a2} vs RC left leg {c2}")
    if b3 != c3:
        problems.append(f"space 3: RB right leg {b3} vs RC right leg {c3}")
    if problems:
        raise ValueError("dimension mismatch: " + "; ".join(problems))
    A, B, C = RA.entries, RB.entries, RC.entries
    # RA12 RB13 RC23: RC acts first. Internal sums over p, q, r.
    lhs = np.einsum("bcqr,arpz,pqxy->abcxyz", C, B, A, optimize=True)
    # RC23 RB13 RA12: RA acts first.
    rhs = np.einsum("abpq,pcxr,qryz->abcxyz", A, B, C, optimize=True)
    return lhs, rhs


def ybe_defect(RA: RMatrix, RB: RMatrix, RC: RMatrix) -> tuple[float, float]:
    """Raw and relative max-abs defect of ``RA12 RB13 RC23 = RC23 RB13 RA12``."""
    lhs, rhs = _ybe_sides(RA, RB, RC)
    raw = float(np.abs(lhs - rhs).max())
    scale = float(np.abs(lhs).max())
    if scale == 0.0:
        return raw, (0.0 if raw == 0.0 else float("inf"))
    return raw, raw / scale


def ybe_residual(RA: RMatrix, RB: RMatrix, RC: RMatrix) -> float:
    """Relative Yang-Baxter residual.

    ``RA`` acts on spaces (1, 2), ``RB`` on (1, 3), ``RC`` on (2, 3).  The
    result is the max-abs entry of ``RA12 RB13 RC23 - RC23 RB13 RA12`` divided
    by the max-abs entry of the left-hand side.
    """
    return ybe_defect(RA, RB, RC)[1]


@dataclass(frozen=True)
class GaugeSandwich:
    """Diagonal edge transforms on the four legs of a 2-state vertex."""

    pre_left: np.ndarray
    pre_right: np.ndarray
    post_left: np.ndarray
    post_right: np.ndarray

    def __post_init__(self):
        for name in ("pre_left", "pre_right", "post_left", "post_right"):
            v = _frozen(getattr(self, name)).reshape(-1)
            if v.shape != (2,):
                raise ValueError(f"{name} must hold two diagonal values")
            if np.any(v == 0) or not np.all(np.isfinite(v)):
                raise ValueError(f"{name} must be finite and nonzero")
            object.__setattr__(self, name, v)

    @classmethod
    def diag(cls, lam: complex, sides: str) -> "GaugeSandwich":
        """Build from one value ``lam``; ``sides`` is four chars of ``+``/``-``.

        ``+`` puts ``diag(lam, 1/lam)`` on the leg, ``-`` puts
        ``diag(1/lam, lam)``; order is pre_left, pre_right, post_left,
        post_right.
        """
        up = np.array([lam, 1 / lam])
        legs = [up if s == "+" else up[::-1] for s in sides]
        return cls(*legs)

    def inverse(self) -> "GaugeSandwich":
        return GaugeSandwich(1 / self.pre_left, 1 / self.pre_right, 1 / self.post_left, 1 / self.post_right)

    def factors(self) -> np.ndarray:
        """Multiplier tensor indexed like ``RMatrix.entries``."""
        return np.einsum("i,j,k,l->ijkl", self.pre_left, self.pre_right, self.post_left, self.post_right)


def apply_gauge(R: RMatrix, g: GaugeSandwich) -> RMatrix:
    if R.dims != (2, 2):
        raise ValueError(f"gauge sandwiches act on 2-state legs only, got dims {R.dims}")
    return RMatrix(R.entries * g.factors(), R.meta)


def projective_distance(R1: RMatrix, R2: RMatrix) -> float:
    """``max|R1 - s R2|`` with ``s`` fixed at the largest-magnitude entry of R2."""
    if R1.entries.shape != R2.entries.shape:
        raise ValueError(f"shape mismatch {R1.entries.shape} vs {R2.entries.shape}")
    mag = np.abs(R2.entries)
    e = np.unravel_index(np.argmax(mag), mag.shape)
    if mag[e] <= ZERO_TOL:
        raise ValueError("reference matrix is numerically zero")
    s = R1.entries[e] / R2.entries[e]
    return float(np.abs(R1.entries - s * R2.entries).max())


def _jsonable(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_jsonable(t) for t in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(t) for k, t in v.items()}
    return v


def complex_pairs(a: np.ndarray) -> list:
    """Nested ``[re, im]`` lists, preserving the array shape."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim == 0:
        return [float(a.real), float(a.imag)]
    return [complex_pairs(t) for t in a]


def from_pairs(data) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    return arr[..., 0] + 1j * arr[..., 1]


def dumps_rmatrix(R: RMatrix) -> str:
    doc = {"kind": "rmatrix", "dims": list(R.dims), "meta": _jsonable(dict(R.meta)),
           "entries": complex_pairs(R.entries)}
    return json.dumps(doc, indent=1) + "\n"


def loads_rmatrix(text: str) -> RMatrix:
    doc = json.loads(text)
    if doc.get("kind") != "rmatrix":
        raise ValueError("not an rmatrix dump")
    e = from_pairs(doc["entries"])
    d1, d2 = doc["dims"]
    if e.shape != (d1, d2, d1, d2):
        raise ValueError(f"entries shape {e.shape} does not match dims {doc['dims']}")
    return RMatrix(e, doc.get("meta", {}))


def write_rmatrix(R: RMatrix, path) -> None:
    Path(path).write_text(dumps_rmatrix(R))


def read_rmatrix(path) -> RMatrix:
    return loads_rmatrix(Path(path).read_text())


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named verification."""

    name: str
    params: Mapping[str, Any]
    residual: float
    tolerance: float

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not self.residual >= 0:
            raise ValueError(f"residual must be nonnegative, got {self.residual}")

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_dict(self) -> dict:
        return {"name": self.name, "params": _jsonable(dict(self.params)),
                "residual": self.residual, "tolerance": self.tolerance, "pass": self.passed}

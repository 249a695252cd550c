"""N-state chiral Potts weights, star-triangle check and the composed R-matrix.

Rapidities are points ``(a, b, c, d)`` on the curve

    a^N + k' b^N = k d^N,    k' a^N + b^N = k c^N,    k^2 + k'^2 = 1.

Weights are normalised by ``W(0) = Wbar(0) = 1`` and indexed by the spin
difference mod N.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from itertools import product
from pathlib import Path

import numpy as np

from .tensor import RMatrix, complex_pairs, from_pairs, require_support, ybe_residual

__all__ = [
    "Modulus",
    "CPPoint",
    "CPWeights",
    "IRFWeight",
    "PoleError",
    "DegenerateConfiguration",
    "sample_curve_point",
    "random_curve_point",
    "conditioned_points",
    "pair_conditioning",
    "cp_weight_tables",
    "cyclic_closure",
    "star_triangle_residual",
    "compose_star",
    "compose_diamond",
    "wkw_vertex_map",
    "strip_vertex_map",
    "composed_rmatrix",
    "uniform_ybe_4cp",
    "swap_face",
    "placement_scan",
    "STAR_PLACEMENT",
    "DIAMOND_PLACEMENT",
]

CURVE_TOL = 1e-12
POLE_TOL = 1e-13


class PoleError(ZeroDivisionError):
    """A weight denominator vanishes: the pair of points is a pole configuration."""


class DegenerateConfiguration(ArithmeticError):
    pass


def omega(N: int) -> complex:
    return cmath.exp(2j * math.pi / N)


@dataclass(frozen=True)
class Modulus:
    k: complex
    k_prime: complex

    def __post_init__(self):
        k, kp = complex(self.k), complex(self.k_prime)
        if abs(k * k + kp * kp - 1) >= CURVE_TOL:
            raise ValueError(f"k^2 + k'^2 = {k * k + kp * kp} != 1")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "k_prime", kp)

    @classmethod
    def from_k_prime(cls, k_prime: complex) -> "Modulus":
        return cls(cmath.sqrt(1 - complex(k_prime) ** 2), k_prime)


def curve_residual(a, b, c, d, mod: Modulus, N: int) -> float:
    """Worst of the two curve equations, relative to the largest term."""
    k, kp = mod.k, mod.k_prime
    aN, bN, cN, dN = (complex(t) ** N for t in (a, b, c, d))
    scale = max(abs(aN), abs(kp * bN), abs(k * dN), abs(kp * aN), abs(bN), abs(k * cN))
    if scale == 0:
        return 0.0
    r1 = abs(aN + kp * bN - k * dN)
    r2 = abs(kp * aN + bN - k * cN)
    return max(r1, r2) / scale


@dataclass(frozen=True)
class CPPoint:
    a: complex
    b: complex
    c: complex
    d: complex
    modulus: Modulus
    N: int

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be at least 2")
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        res = self.curve_residual()
        if res >= CURVE_TOL:
            raise ValueError(f"point is off the curve (residual {res:.2e})")

    def curve_residual(self) -> float:
        return curve_residual(self.a, self.b, self.c, self.d, self.modulus, self.N)

    def scaled(self, lam: complex) -> "CPPoint":
        return CPPoint(lam * self.a, lam * self.b, lam * self.c, lam * self.d, self.modulus, self.N)

    def to_dict(self) -> dict:
        return {"abcd": complex_pairs(np.array([self.a, self.b, self.c, self.d]))}


def sample_curve_point(mod: Modulus, N: int, a: complex, b: complex,
                       root_c: int = 0, root_d: int = 0) -> CPPoint:
    """Solve the curve for ``c`` and ``d`` given free ``a`` and ``b``.

    ``root_c`` and ``root_d`` choose the branch: the principal N-th root is
    multiplied by ``omega**root``.
    """
    if mod.k == 0:
        raise ValueError("k = 0 leaves c and d undetermined")
    if not (0 <= root_c < N and 0 <= root_d < N):
        raise ValueError("root indices must lie in [0, N)")
    a, b = complex(a), complex(b)
    w = omega(N)
    rad_d = (a**N + mod.k_prime * b**N) / mod.k
    rad_c = (mod.k_prime * a**N + b**N) / mod.k
    d = (rad_d ** (1 / N) if rad_d != 0 else 0) * w**root_d
    c = (rad_c ** (1 / N) if rad_c != 0 else 0) * w**root_c
    return CPPoint(a, b, c, d, mod, N)


def random_curve_point(rng: np.random.Generator, mod: Modulus, N: int) -> CPPoint:
    """Point with ``a``, ``b`` complex normal and uniformly drawn root branches."""
    a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
    rc, rd = (int(t) for t in rng.integers(0, N, size=2))
    return sample_curve_point(mod, N, a, b, rc, rd)


@dataclass(frozen=True)
class CPWeights:
    N: int
    W: np.ndarray
    Wb: np.ndarray

    def __post_init__(self):
        for name in ("W", "Wb"):
            v = np.array(getattr(self, name), dtype=np.complex128)
            if v.shape != (self.N,) or not np.all(np.isfinite(v)):
                raise ValueError(f"{name} must be a finite length-{self.N} array")
            v.setflags(write=False)
            object.__setattr__(self, name, v)


def _ratio_products(num_a, num_b, den_a, den_b, N: int, upto: int, label: str,
                    num_shift: int = 0) -> np.ndarray:
    """``prod_{j=1}^n (num_a w^s - num_b w^j) / (den_a - den_b w^j)`` for n = 0..upto.

    Both numerator terms carry their power of omega as the last factor, so at
    coinciding rapidities the ``j = s`` factor cancels to an exact zero.
    """
    out = np.ones(upto + 1, dtype=np.complex128)
    scale = max(abs(den_a), abs(den_b))
    w = omega(N)
    lead = num_a * w**num_shift if num_shift else num_a
    for j in range(1, upto + 1):
        wj = w ** (j % N)
        den = den_a - den_b * wj
        if abs(den) <= POLE_TOL * scale:
            raise PoleError(f"{label} denominator vanishes at j={j}")
        out[j] = out[j - 1] * (lead - num_b * wj) / den
    return out


def _check_pair(p: CPPoint, q: CPPoint):
    if p.N != q.N:
        raise ValueError(f"points have different N ({p.N}, {q.N})")
    if abs(p.modulus.k - q.modulus.k) > 1e-14 or abs(p.modulus.k_prime - q.modulus.k_prime) > 1e-14:
        raise ValueError("points lie on different curves")


def weight_products(p: CPPoint, q: CPPoint, upto: int) -> tuple[np.ndarray, np.ndarray]:
    """Unreduced running products for n = 0..upto (upto may reach N)."""
    _check_pair(p, q)
    N = p.N
    W = _ratio_products(p.d * q.b, p.a * q.c, p.b * q.d, p.c * q.a, N, upto, "W")
    Wb = _ratio_products(p.a * q.d, p.d * q.a, p.c * q.b, p.b * q.c, N, upto, "Wbar", num_shift=1)
    return W, Wb


def pair_conditioning(p: CPPoint, q: CPPoint) -> float:
    """Worst ``(|den_a| + |den_b|) / |den_a - den_b w^j|`` over j = 1..N.

    Rounding in the weights grows with this number; near a pole it is large.
    """
    _check_pair(p, q)
    w = omega(p.N)
    worst = 0.0
    for da, db in ((p.b * q.d, p.c * q.a), (p.c * q.b, p.b * q.c)):
        for j in range(1, p.N + 1):
            den = abs(da - db * w ** (j % p.N))
            worst = max(worst, math.inf if den == 0 else (abs(da) + abs(db)) / den)
    return worst


MAX_CONDITIONING = 1e4


def conditioned_points(rng: np.random.Generator, mod: Modulus, N: int, count: int,
                       max_cond: float = MAX_CONDITIONING, max_tries: int = 1000) -> list[CPPoint]:
    """``count`` random points whose every pair has conditioning below ``max_cond``.

    Whole sets are redrawn, so the result is a deterministic function of the
    generator state.
    """
    for _ in range(max_tries):
        pts = [random_curve_point(rng, mod, N) for _ in range(count)]
        if all(pair_conditioning(p, q) <= max_cond
               for i, p in enumerate(pts) for q in pts[i + 1:]):
            return pts
    raise DegenerateConfiguration(f"no well-conditioned set of {count} points in {max_tries} draws")


def cp_weight_tables(p: CPPoint, q: CPPoint) -> CPWeights:
    """Normalised ``W_pq(n)`` and ``Wbar_pq(n)`` for n in Z_N."""
    W, Wb = weight_products(p, q, p.N - 1)
    return CPWeights(p.N, W, Wb)


def cyclic_closure(p: CPPoint, q: CPPoint) -> float:
    """``max(|W(N) - 1|, |Wbar(N) - 1|)``; zero exactly on the curve."""
    W, Wb = weight_products(p, q, p.N)
    return float(max(abs(W[-1] - 1), abs(Wb[-1] - 1)))


def star_triangle_residual(p: CPPoint, q: CPPoint, r: CPPoint) -> float:
    """Constancy of ``star / triangle`` over all spin triples.

    star(a,b,c)     = sum_d Wbar_qr(b-d) W_pr(a-d) Wbar_pq(d-c)
    triangle(a,b,c) = W_pq(a-b) Wbar_pr(b-c) W_qr(a-c)

    Returns ``max |rho(a,b,c) - rho(0,0,0)| / |rho(0,0,0)|``.
    """
    N = p.N
    pq, pr, qr = cp_weight_tables(p, q), cp_weight_tables(p, r), cp_weight_tables(q, r)
    s = np.arange(N)
    A, B, C = np.meshgrid(s, s, s, indexing="ij")
    D = s[None, None, None, :]
    star = (qr.Wb[(B[..., None] - D) % N] * pr.W[(A[..., None] - D) % N]
            * pq.Wb[(D - C[..., None]) % N]).sum(axis=-1)
    tri = pq.W[(A - B) % N] * pr.Wb[(B - C) % N] * qr.W[(A - C) % N]
    scale = np.abs(tri).max()
    if np.any(np.abs(tri) <= 1e-14 * scale) or scale == 0:
        raise DegenerateConfiguration("triangle side vanishes for some spin triple")
    rho = star / tri
    return float(np.abs(rho - rho[0, 0, 0]).max() / abs(rho[0, 0, 0]))


def dumps_weights(p: CPPoint, q: CPPoint, w: CPWeights) -> str:
    doc = {
        "kind": "cp-weights",
        "N": w.N,
        "modulus": {"k": complex_pairs(np.array(p.modulus.k)), "k_prime": complex_pairs(np.array(p.modulus.k_prime))},
        "p": p.to_dict(),
        "q": q.to_dict(),
        "W": complex_pairs(w.W),
        "Wb": complex_pairs(w.Wb),
    }
    return json.dumps(doc, indent=1) + "\n"


def loads_weights(text: str) -> tuple[CPPoint, CPPoint, CPWeights]:
    doc = json.loads(text)
    if doc.get("kind") != "cp-weights":
        raise ValueError("not a cp-weights dump")
    N = int(doc["N"])
    k = complex(*doc["modulus"]["k"])
    kp = complex(*doc["modulus"]["k_prime"])
    mod = Modulus(k, kp)
    pts = [CPPoint(*from_pairs(doc[name]["abcd"]), mod, N) for name in ("p", "q")]
    return pts[0], pts[1], CPWeights(N, from_pairs(doc["W"]), from_pairs(doc["Wb"]))


def write_weights(p: CPPoint, q: CPPoint, w: CPWeights, path) -> None:
    Path(path).write_text(dumps_weights(p, q, w))


def read_weights(path):
    return loads_weights(Path(path).read_text())


# --------------------------------------------------------------------------
# Four-weight composition
#
# A double line carries two rapidities (p, p'); p is the strand on the right
# of the direction of travel.  The horizontal pair P = (p, p') runs east, the
# vertical pair Q = (q, q') runs north, so p lies south of p' and q lies east
# of q'.  Star (corner spins a=NW, b=SW, c=SE, d=NE, centre e summed):
#
#        a ------ q' ------ q ------ d
#                 |         |
#     p' ---------W---------Wb-------->
#                 |    e    |
#     p  ---------Wb--------W--------->
#                 |         |
#        b        ^         ^        c
#
# A face is (kind, strand of P, strand of Q, corner, sign); sign +1 means the
# weight argument is ``corner - e``, -1 means ``e - corner``.  This is the
# only one of the 16 W/Wbar assignments that satisfies the uniform
# Yang-Baxter equation (see ``placement_scan``).
# --------------------------------------------------------------------------

STAR_PLACEMENT = (
    ("Wb", 0, 1, "b", +1),
    ("W", 0, 0, "c", -1),
    ("W", 1, 1, "a", +1),
    ("Wb", 1, 0, "d", -1),
)

# Diamond: spins sit on the four side faces, corner order (a, b, c, d) =
# (west, south, east, north).  Faces are (kind, strand of P, strand of Q,
# first spin, second spin) with argument ``first - second``.
DIAMOND_PLACEMENT = (
    ("W", 0, 1, "a", "b"),
    ("Wb", 0, 0, "b", "c"),
    ("Wb", 1, 1, "a", "d"),
    ("W", 1, 0, "d", "c"),
)

_CORNER = {"a": 0, "b": 1, "c": 2, "d": 3}


@dataclass(frozen=True)
class IRFWeight:
    """Face weight ``table[a, b, c, d]`` over Z_N^4 corner spins."""

    N: int
    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=np.complex128)
        if t.shape != (self.N,) * 4 or not np.all(np.isfinite(t)):
            raise ValueError(f"table must be a finite {(self.N,) * 4} array")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def translation_invariant(self) -> bool:
        """Exact equality ``table(a+1, b+1, c+1, d+1) == table(a, b, c, d)``."""
        return bool(np.array_equal(np.roll(self.table, -1, axis=(0, 1, 2, 3)), self.table))

    @classmethod
    def from_differences(cls, reduced: np.ndarray) -> "IRFWeight":
        """Expand ``reduced[a-c, b-c, d-c]`` to the full table."""
        N = reduced.shape[0]
        s = np.arange(N)
        A, B, C, D = np.meshgrid(s, s, s, s, indexing="ij")
        return cls(N, reduced[(A - C) % N, (B - C) % N, (D - C) % N])


def _pair_tables(P, Q):
    """Weight tables for every (strand of P, strand of Q) crossing."""
    _check_pair(P[0], Q[0])
    return {(i, j): cp_weight_tables(P[i], Q[j]) for i in (0, 1) for j in (0, 1)}


def _face_table(tables, kind, i, j):
    w = tables[(i, j)]
    return w.W if kind == "W" else w.Wb


def compose_star(p, p2, q, q2, placement=STAR_PLACEMENT) -> IRFWeight:
    """Star of four weights with the centre spin summed.

    ``(p, p2)`` is the horizontal double line, ``(q, q2)`` the vertical one.
    Only corner differences relative to ``c`` are formed, so translation
    invariance holds bit for bit.
    """
    P, Q = (p, p2), (q, q2)
    N = p.N
    tables = _pair_tables(P, Q)
    s = np.arange(N)
    # corners relative to c: a = x, b = y, c = 0, d = z; centre e = t
    X, Y, Z, T = np.meshgrid(s, s, s, s, indexing="ij")
    corner = {"a": X, "b": Y, "c": np.zeros_like(X), "d": Z}
    prod = np.ones((N,) * 4, dtype=np.complex128)
    for kind, i, j, name, sign in placement:
        arg = (corner[name] - T) if sign > 0 else (T - corner[name])
        prod = prod * _face_table(tables, kind, i, j)[arg % N]
    return IRFWeight.from_differences(prod.sum(axis=-1))


def compose_diamond(p, p2, q, q2, placement=DIAMOND_PLACEMENT) -> IRFWeight:
    """Product of four weights around a diamond of spins, no internal sum."""
    P, Q = (p, p2), (q, q2)
    N = p.N
    tables = _pair_tables(P, Q)
    s = np.arange(N)
    X, Y, Z = np.meshgrid(s, s, s, indexing="ij")
    corner = {"a": X, "b": Y, "c": np.zeros_like(X), "d": Z}
    prod = np.ones((N,) * 3, dtype=np.complex128)
    for kind, i, j, first, second in placement:
        prod = prod * _face_table(tables, kind, i, j)[(corner[first] - corner[second]) % N]
    return IRFWeight.from_differences(prod)


def wkw_vertex_map(w: IRFWeight) -> RMatrix:
    """Difference map from face weights to a Z_N vertex.

    Edge variables ``n1 = a-b``, ``n2 = d-c``, ``n3 = a-d``, ``n4 = b-c``.
    The horizontal line enters across edge ab and leaves across dc, the
    vertical one enters across bc and leaves across ad, so
    ``V[n1, n4, n2, n3] = w(a, b, c, d)`` and every nonzero entry obeys
    ``n1 + n4 = n2 + n3 (mod N)``.
    """
    if not w.translation_invariant:
        raise ValueError("face weight is not translation invariant; difference map undefined")
    N = w.N
    s = np.arange(N)
    N1, N4, N2 = np.meshgrid(s, s, s, indexing="ij")
    N3 = (N1 + N4 - N2) % N
    V = np.zeros((N,) * 4, dtype=np.complex128)
    # representative corners: c = 0, b = n4, a = n1 + n4, d = n2
    V[N1, N4, N2, N3] = w.table[(N1 + N4) % N, N4, 0, N2]
    return require_support(RMatrix(V, {"model": "r4cp", "map": "wkw"}), "charge")


def strip_vertex_map(w: IRFWeight) -> RMatrix:
    """Read a diamond weight as a vertex whose edge states are the strip spins.

    Corner order (west, south, east, north) is already (in-left, in-right,
    out-left, out-right).
    """
    return RMatrix(w.table, {"model": "r4cp", "map": "strip"})


def composed_rmatrix(P, Q, kind: str = "star", placement=None) -> RMatrix:
    """R-matrix for double lines ``P = (p, p')`` (space 1) and ``Q`` (space 2)."""
    if kind == "star":
        return wkw_vertex_map(compose_star(*P, *Q, placement=placement or STAR_PLACEMENT))
    if kind == "diamond":
        return strip_vertex_map(compose_diamond(*P, *Q, placement=placement or DIAMOND_PLACEMENT))
    if kind == "diamond-wkw":
        return wkw_vertex_map(compose_diamond(*P, *Q, placement=placement or DIAMOND_PLACEMENT))
    raise ValueError(f"unknown composition {kind!r}")


def uniform_ybe_4cp(pairs, kind: str = "star", placement=None) -> float:
    """Relative residual of ``R12(P,Q) R13(P,R) R23(Q,R) = R23 R13 R12``."""
    P, Q, R = pairs
    return ybe_residual(composed_rmatrix(P, Q, kind, placement),
                        composed_rmatrix(P, R, kind, placement),
                        composed_rmatrix(Q, R, kind, placement))


def swap_face(placement, index: int):
    """Negative control: flip W <-> Wbar on one face."""
    faces = [list(f) for f in placement]
    faces[index][0] = "Wb" if faces[index][0] == "W" else "W"
    return tuple(tuple(f) for f in faces)


def placement_scan(pairs) -> list[tuple[tuple[str, ...], float]]:
    """Uniform YBE residual for all 16 W/Wbar assignments of the star faces."""
    out = []
    for kinds in product(("W", "Wb"), repeat=4):
        placement = tuple((k,) + tuple(f[1:]) for k, f in zip(kinds, STAR_PLACEMENT))
        out.append((kinds, uniform_ybe_4cp(pairs, "star", placement)))
    return out

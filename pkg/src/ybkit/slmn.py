"""sl(m,n) vertex-model R-matrix: additive, multiplicative and root-of-unity forms.

States ``a = 1..m+n`` are stored as tensor indices ``a - 1``; the first ``m``
carry grading +1, the last ``n`` grading -1.  The weight written
``omega^{cd}_{ab}`` (lower = incoming, upper = outgoing read around the vertex)
is stored at ``entries[a, b, d, c]``.  In particular

* ``omega^{aa}_{aa}`` -> ``R[a, a, a, a]``
* ``omega^{ab}_{ba}`` -> ``R[b, a, b, a]``  (each line keeps its state)
* ``omega^{ba}_{ba}`` -> ``R[b, a, a, b]``  (states exchanged)

With this placement the (m, n) = (2, 0) root-of-unity matrix equals the
``bbp``-gauge six-vertex matrix entry for entry, see
:func:`ybkit.six_vertex.build_six_vertex`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .six_vertex import root_of_unity
from .tensor import RMatrix, require_support

__all__ = [
    "SlmnParams",
    "RootReducedSpec",
    "SpanViolation",
    "build_slmn_additive",
    "build_slmn_multiplicative",
    "build_slmn_root_of_unity",
    "additive_to_multiplicative",
    "monomial_span_certify",
    "fit_monomial_span",
]


def _sign(t: int) -> int:
    return (t > 0) - (t < 0)


@dataclass(frozen=True)
class SlmnParams:
    """Model constants.

    ``twists[a, b]`` is G_ab (diagonal ignored).  ``gauge_p`` and
    ``gauge_q`` are ``(size, 2)`` arrays holding ``(p_{+a}, p_{-a})`` and
    ``(q_{+a}, q_{-a})`` for the two rapidities.  Defaults are all ones.
    """

    m: int
    n: int
    eta: complex
    twists: np.ndarray | None = None
    gauge_p: np.ndarray | None = None
    gauge_q: np.ndarray | None = None
    normalization: complex = 1.0

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 2:
            raise ValueError("need m, n >= 0 and m + n >= 2")
        size = self.m + self.n
        G = np.ones((size, size), complex) if self.twists is None else np.array(self.twists, complex)
        if G.shape != (size, size):
            raise ValueError(f"twists must be {size}x{size}")
        off = ~np.eye(size, dtype=bool)
        if np.any(np.abs((G * G.T)[off] - 1) > 1e-14):
            raise ValueError("twists must satisfy G_ab G_ba = 1")
        for name in ("gauge_p", "gauge_q"):
            v = getattr(self, name)
            v = np.ones((size, 2), complex) if v is None else np.array(v, complex)
            if v.shape != (size, 2) or np.any(v == 0):
                raise ValueError(f"{name} must be a nonzero ({size}, 2) array")
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        G.setflags(write=False)
        object.__setattr__(self, "twists", G)
        object.__setattr__(self, "eta", complex(self.eta))

    @property
    def size(self) -> int:
        return self.m + self.n

    @property
    def grading(self) -> np.ndarray:
        return np.array([1] * self.m + [-1] * self.n)


def _gauge_factors(p: SlmnParams):
    """Gauge multipliers for the diagonal, keep-state and exchange weights."""
    pp, pm = p.gauge_p[:, 0], p.gauge_p[:, 1]
    qp, qm = p.gauge_q[:, 0], p.gauge_q[:, 1]
    diag = pp * qm / (qp * pm)
    # keep[a, b] multiplies omega^{ab}_{ba}: p_{+a} q_{-b} / (q_{+b} p_{-a})
    keep = pp[:, None] * qm[None, :] / (qp[None, :] * pm[:, None])
    # swap[a, b] multiplies omega^{ba}_{ba}: p_{+b} q_{-a} / (q_{+b} p_{-a})
    swap = pp[None, :] * qm[:, None] / (qp[None, :] * pm[:, None])
    return diag, keep, swap


def _assemble(size: int, diag, keep, swap, meta) -> RMatrix:
    R = np.zeros((size,) * 4, dtype=np.complex128)
    for a in range(size):
        R[a, a, a, a] = diag[a]
        for b in range(size):
            if a != b:
                R[b, a, b, a] = keep[a][b]
                R[b, a, a, b] = swap[a][b]
    return require_support(RMatrix(R, meta), "multiset")


def build_slmn_additive(p: SlmnParams, p0: complex, q0: complex) -> RMatrix:
    """Hyperbolic weights with additive rapidities ``p0`` (first) and ``q0``."""
    u = complex(p0) - complex(q0)
    eps = p.grading
    gd, gk, gs = _gauge_factors(p)
    N, G, size = p.normalization, p.twists, p.size
    diag = [N * cmath.sinh(p.eta + eps[a] * u) * gd[a] for a in range(size)]
    keep = [[N * G[a, b] * cmath.sinh(u) * gk[a, b] for b in range(size)] for a in range(size)]
    swap = [[N * cmath.exp(u * _sign(a - b)) * cmath.sinh(p.eta) * gs[a, b] for b in range(size)]
            for a in range(size)]
    return _assemble(size, diag, keep, swap, {"model": "slmn", "form": "additive", "m": p.m, "n": p.n})


def additive_to_multiplicative(p: SlmnParams, p0: complex, q0: complex):
    """``(q, x, y, N')`` for the additive point ``(p0, q0)``.

    ``q = e^(2 eta)``, ``x = e^(2 q0)``, ``y = e^(2 p0)`` and
    ``N' = N q^(1/2) (y/x)^(1/2) / 2`` with the half powers taken as
    ``e^eta`` and ``e^(p0 - q0)``.
    """
    q = cmath.exp(2 * p.eta)
    x = cmath.exp(2 * complex(q0))
    y = cmath.exp(2 * complex(p0))
    n_prime = p.normalization * cmath.exp(p.eta) * cmath.exp(complex(p0) - complex(q0)) / 2
    return q, x, y, n_prime


def build_slmn_multiplicative(p: SlmnParams, x: complex, y: complex) -> RMatrix:
    """Rational weights in ``q = e^(2 eta)`` and the ratio ``x/y``.

    ``p.normalization`` is read as N'.  The half power ``q^(1/2)`` is
    ``e^eta``.  The keep-state weight uses the same gauge factor as the
    additive form so the two builds agree under the change of variables.
    """
    x, y = complex(x), complex(y)
    if x == 0 or y == 0:
        raise ValueError("x and y must be nonzero")
    r = x / y
    qh = cmath.exp(p.eta)
    qi = 1 / (qh * qh)
    eps = p.grading
    gd, gk, gs = _gauge_factors(p)
    N, G, size = p.normalization, p.twists, p.size
    diag = [N * ((1 - qi * r) if eps[a] > 0 else (r - qi)) * gd[a] for a in range(size)]
    keep = [[N * G[a, b] / qh * (1 - r) * gk[a, b] for b in range(size)] for a in range(size)]
    swap = [[N * (1 - qi) * (r if a < b else 1) * gs[a, b] for b in range(size)] for a in range(size)]
    return _assemble(size, diag, keep, swap, {"model": "slmn", "form": "multiplicative", "m": p.m, "n": p.n})


@dataclass(frozen=True)
class RootReducedSpec:
    m: int
    n: int
    N: int
    j: int
    x: complex
    y: complex

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 2:
            raise ValueError("need m, n >= 0 and m + n >= 2")
        if self.N < 2 or math.gcd(self.j, self.N) != 1:
            raise ValueError(f"q is not a primitive root: gcd({self.j}, {self.N}) != 1")
        if self.x == 0 or self.y == 0:
            raise ValueError("x and y must be nonzero")

    @property
    def q(self) -> complex:
        return root_of_unity(self.j, self.N)


def _root_weights(m: int, n: int, qi: complex, r: complex):
    """Root-of-unity weights as functions of ``1/q`` and ``x/y`` only."""
    size = m + n
    diag = [(1 - qi * r) if a < m else (r - qi) for a in range(size)]
    keep = [[(1 - r) if a > b else qi * (1 - r) for b in range(size)] for a in range(size)]
    swap = [[(1 - qi) * r if a < b else (1 - qi) for b in range(size)] for a in range(size)]
    return diag, keep, swap


def build_slmn_root_of_unity(s: RootReducedSpec) -> RMatrix:
    """Twists ``G_ab = q^(+-1/2)`` and trivial gauges: no square roots left."""
    diag, keep, swap = _root_weights(s.m, s.n, 1 / s.q, complex(s.x) / complex(s.y))
    return _assemble(s.m + s.n, diag, keep, swap,
                     {"model": "slmn", "form": "root-of-unity", "m": s.m, "n": s.n, "N": s.N, "j": s.j})


class SpanViolation(ValueError):
    def __init__(self, entry, residual):
        super().__init__(f"entry {entry} is not in span(1, 1/q, x/y, x/(q y)): fit residual {residual:.3e}")
        self.entry = entry
        self.residual = residual


SPAN_FIT_TOL = 1e-12
SPAN_COEF_TOL = 1e-12

# (x, y) sample points; ratios spread over and off the unit circle
_XY = [(1.3 * cmath.exp(0.7j), 0.8), (0.6, 1.1 * cmath.exp(-1.9j)), (2.2j, 1.7),
       (cmath.exp(2.6j), 0.45 + 0.2j), (0.9 - 0.4j, 1.25 * cmath.exp(1.1j)),
       (1.6, 0.7 - 1.1j), (0.35 + 0.8j, 1.0), (1.05 * cmath.exp(-0.3j), 2.4)]


def fit_monomial_span(entry_fn, qs) -> tuple[np.ndarray, float]:
    """Fit ``entry_fn(q, x, y)`` to ``c0 + c1/q + c2 r + c3 r/q``, ``r = x/y``.

    At a single q the columns ``1`` and ``1/q`` coincide, so samples pair
    the first two q values with two ratios each to pin the four
    coefficients; four further samples, spread over all q values, validate
    the fit.  Returns the coefficients and the worst validation residual.
    """
    qs = [complex(q) for q in qs]
    if len(qs) < 2 or len(set(qs)) < 2:
        raise ValueError("need at least two distinct q values")
    fit_pts = [(qs[0], _XY[0]), (qs[0], _XY[1]), (qs[1], _XY[2]), (qs[1], _XY[3])]
    check_pts = [(qs[(2 + t) % len(qs)], _XY[4 + t]) for t in range(4)]

    def rows(pts):
        A = np.array([[1, 1 / q, x / y, x / (q * y)] for q, (x, y) in pts])
        f = np.array([entry_fn(q, x, y) for q, (x, y) in pts])
        return A, f

    A, f = rows(fit_pts)
    coeffs = np.linalg.solve(A, f)
    A2, f2 = rows(check_pts)
    scale = max(np.abs(f2).max(), 1.0)
    residual = float(np.abs(A2 @ coeffs - f2).max() / scale)
    return coeffs, residual


@dataclass(frozen=True)
class SpanCertificate:
    entry: tuple[int, int, int, int]
    coefficients: tuple[complex, complex, complex, complex]
    fit_residual: float
    coefficient_distance: float

    @property
    def integral(self) -> tuple[int, int, int, int]:
        return tuple(int(round(c.real)) for c in self.coefficients)


_AUX_N = (3, 4, 5)


def span_q_values(s: RootReducedSpec) -> list[complex]:
    """``s.q`` first, then primitive roots for N = 3, 4, 5."""
    qs = [s.q]
    for N in _AUX_N:
        q = root_of_unity(1, N)
        if all(abs(q - t) > 1e-9 for t in qs):
            qs.append(q)
    return qs[:3]


def monomial_span_certify(s: RootReducedSpec) -> list[SpanCertificate]:
    """Certify every nonzero reduced weight lies in span(1, 1/q, x/y, x/(q y)).

    Coefficients must be within ``SPAN_COEF_TOL`` of -1, 0 or +1 and the
    validation residual below ``SPAN_FIT_TOL``; otherwise
    :class:`SpanViolation` names the entry.
    """
    size = s.m + s.n

    def build(q, x, y):
        d, k, w = _root_weights(s.m, s.n, 1 / q, x / y)
        return _assemble(size, d, k, w, {}).entries

    support = np.argwhere(np.abs(build_slmn_root_of_unity(s).entries) > 0)
    # entries forced to zero at s.x == s.y still belong to the pattern
    pattern = np.argwhere(np.abs(build(*span_q_values(s)[:1], *_XY[0])) > 0)
    idxs = sorted({tuple(int(t) for t in i) for i in np.vstack([support, pattern])})
    qs = span_q_values(s)
    out = []
    for idx in idxs:
        coeffs, res = fit_monomial_span(lambda q, x, y, idx=idx: build(q, x, y)[idx], qs)
        dist = float(np.abs(coeffs - np.clip(np.round(coeffs.real), -1, 1)).max())
        if res > SPAN_FIT_TOL or dist > SPAN_COEF_TOL:
            raise SpanViolation(idx, max(res, dist))
        out.append(SpanCertificate(idx, tuple(complex(c) for c in coeffs), res, dist))
    return out

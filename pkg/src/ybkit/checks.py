"""Verification checks run by the suite.

Each check takes a seeded generator and a :class:`~ybkit.suite.SuiteConfig`
and yields ``(name, params, residual, tolerance)`` tuples.  Negative controls
report ``threshold / measured`` against tolerance 1, so they pass exactly when
the measured defect reaches the threshold.  Exact properties report a count
of violations against tolerance 0.5.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np

from . import chiral_potts as cp
from . import qseries as qs
from .six_vertex import (
    RootOfUnitySpec,
    SixVertexGauge,
    SixVertexParams,
    build_six_vertex,
    resolve_q1,
    root_of_unity,
    staggered_connect,
    uniform_connect,
)
from .slmn import (
    RootReducedSpec,
    SlmnParams,
    SpanViolation,
    additive_to_multiplicative,
    build_slmn_additive,
    build_slmn_multiplicative,
    build_slmn_root_of_unity,
    fit_monomial_span,
    monomial_span_certify,
    span_q_values,
)
from .tensor import apply_gauge, projective_distance, support_violations, ybe_residual

Row = tuple[str, dict, float, float]
EXACT = 0.5

SLMN_CASES = ((2, 0), (0, 2), (1, 1), (2, 1))


def coprime_j(rng, N: int) -> int:
    choices = [j for j in range(1, N) if math.gcd(j, N) == 1]
    return int(rng.choice(choices))


def unit_phase(rng) -> complex:
    return complex(np.exp(2j * np.pi * rng.uniform()))


def generic_complex(rng) -> complex:
    """Modulus uniform in [0.5, 2], phase uniform."""
    return rng.uniform(0.5, 2.0) * unit_phase(rng)


def draw_q(rng, i: int, Ns) -> tuple[complex, dict]:
    """Alternate roots of unity over ``Ns`` with generic q off the unit circle."""
    if i % 2 == 0:
        N = int(Ns[(i // 2) % len(Ns)])
        j = coprime_j(rng, N)
        return root_of_unity(j, N), {"N": N, "j": j}
    return generic_complex(rng), {"N": None}


def ybe_args(convention: str, x, y, z):
    if convention == "forward":
        return (x, y), (x, z), (y, z)
    if convention == "reversed":
        return (y, x), (z, x), (z, y)
    raise ValueError(f"unknown YBE convention {convention!r}")


def check_six_vertex_ybe(rng, cfg) -> Iterator[Row]:
    n = cfg.samples("1.six-vertex-ybe", 100)
    for gauge in SixVertexGauge:
        worst = 0.0
        ns_seen = set()
        for i in range(n):
            q, info = draw_q(rng, i, cfg.N_list)
            ns_seen.add(info["N"])
            draw = unit_phase if info["N"] else generic_complex
            x, y, z = draw(rng), draw(rng), draw(rng)
            Rs = [build_six_vertex(SixVertexParams(gauge, q, a, b)) for a, b in ybe_args(cfg.ybe_convention, x, y, z)]
            worst = max(worst, ybe_residual(*Rs))
        roots = sorted(t for t in ns_seen if t)
        yield (f"1.six-vertex-ybe.{gauge.value}",
               {"samples": n, "root_N": roots, "convention": cfg.ybe_convention}, worst, 1e-10)


def _bridge_rows(rng, n, qs_fn, tag):
    worst_s = worst_u = 0.0
    for i in range(n):
        q = qs_fn(i)
        x, y = generic_complex(rng), generic_complex(rng)
        R = {g: build_six_vertex(SixVertexParams(g, q, x, y)) for g in SixVertexGauge}
        worst_s = max(worst_s, projective_distance(
            apply_gauge(R[SixVertexGauge.BAZHANOV_STROGANOV], staggered_connect("bs->bbp", q)), R[SixVertexGauge.BBP]))
        worst_u = max(worst_u, projective_distance(
            apply_gauge(R[SixVertexGauge.SYMMETRIC], uniform_connect("sym->bs", x, y)),
            R[SixVertexGauge.BAZHANOV_STROGANOV]))
    yield (f"2.gauge-staggered{tag}", {"samples": n, "lambda": "q^(1/8)"}, worst_s, 1e-12)
    yield (f"2.gauge-uniform{tag}", {"samples": n, "lambda": "(x/y)^(1/8)"}, worst_u, 1e-12)


def check_gauge_bridges(rng, cfg) -> Iterator[Row]:
    n = cfg.samples("2.gauge", 20)
    yield from _bridge_rows(rng, n, lambda i: draw_q(rng, i, cfg.N_list)[0], "")
    for N in (4, 5):
        yield from _bridge_rows(rng, n, lambda i, N=N: root_of_unity(1, N), f".N{N}")


def random_slmn_params(rng, m, n, eta, scale=0.3):
    size = m + n
    U = np.exp(scale * (rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))))
    G = U / U.T
    gauges = [np.exp(scale * (rng.normal(size=(size, 2)) + 1j * rng.normal(size=(size, 2)))) for _ in range(3)]
    return G, gauges


def check_slmn(rng, cfg) -> Iterator[Row]:
    n_samp = cfg.samples("3.slmn", 50)
    for m, n in SLMN_CASES:
        worst = {"additive": 0.0, "multiplicative": 0.0, "root-of-unity": 0.0}
        agree = 0.0
        root_ns = [N for N in (2, 3, 4, 5, 6)]
        for i in range(n_samp):
            eta = complex(rng.normal(), rng.normal()) * 0.5
            G, gauges = random_slmn_params(rng, m, n, eta)
            rap = [complex(rng.normal(), rng.normal()) * 0.4 for _ in range(3)]

            def params(a, b):
                return SlmnParams(m, n, eta, G, gauges[a], gauges[b])

            pairs = ybe_args(cfg.ybe_convention, 0, 1, 2)
            worst["additive"] = max(worst["additive"], ybe_residual(
                *[build_slmn_additive(params(a, b), rap[a], rap[b]) for a, b in pairs]))
            xs = [np.exp(2 * t) for t in rap]
            worst["multiplicative"] = max(worst["multiplicative"], ybe_residual(
                *[build_slmn_multiplicative(params(a, b), xs[b], xs[a]) for a, b in pairs]))
            N = root_ns[i % len(root_ns)]
            j = coprime_j(rng, N)
            ux = [unit_phase(rng) for _ in range(3)]
            worst["root-of-unity"] = max(worst["root-of-unity"], ybe_residual(
                *[build_slmn_root_of_unity(RootReducedSpec(m, n, N, j, ux[b], ux[a])) for a, b in pairs]))
            # additive vs multiplicative after the change of variables
            p = params(0, 1)
            A = build_slmn_additive(p, rap[0], rap[1])
            q, x, y, n_prime = additive_to_multiplicative(p, rap[0], rap[1])
            M = build_slmn_multiplicative(SlmnParams(m, n, eta, G, gauges[0], gauges[1], n_prime), x, y)
            agree = max(agree, float(np.abs(A.entries - M.entries).max() / np.abs(A.entries).max()))
        for form, res in worst.items():
            yield (f"3.slmn-ybe.{m}{n}.{form}", {"m": m, "n": n, "samples": n_samp,
                                                  "root_N": root_ns if form == "root-of-unity" else None},
                   res, 1e-10)
        yield (f"3.slmn-agreement.{m}{n}", {"m": m, "n": n, "samples": n_samp}, agree, 1e-12)


def check_monomial_span(rng, cfg) -> Iterator[Row]:
    for m, n in SLMN_CASES:
        worst = 0.0
        failures = []
        entries = 0
        for N in cfg.N_list:
            s = RootReducedSpec(m, n, N, coprime_j(rng, N), generic_complex(rng), generic_complex(rng))
            try:
                certs = monomial_span_certify(s)
            except SpanViolation as exc:
                failures.append(str(exc))
                worst = max(worst, exc.residual)
                continue
            entries += len(certs)
            worst = max([worst] + [max(c.fit_residual, c.coefficient_distance) for c in certs])
        yield (f"4.monomial-span.{m}{n}", {"m": m, "n": n, "N": list(cfg.N_list), "entries": entries,
                                           "failures": failures}, worst, 1e-12)
    # negative control: symmetric-gauge exchange weight (x/y)^(1/2) (1 - 1/q)
    def sym_c(q, x, y):
        return build_six_vertex(SixVertexParams("sym", q, x, y)).entries[1, 0, 0, 1]

    s = RootReducedSpec(2, 0, 3, 1, 1.0, 1.0)
    _, res = fit_monomial_span(sym_c, span_q_values(s))
    yield ("4.monomial-span.negative-control", {"entry": "sym c", "measured": res, "threshold": 1e-2},
           1e-2 / res, 1.0)
    worst = 0.0
    for N in cfg.N_list:
        j = coprime_j(rng, N)
        x, y = generic_complex(rng), generic_complex(rng)
        red = build_slmn_root_of_unity(RootReducedSpec(2, 0, N, j, x, y))
        bbp = build_six_vertex(SixVertexParams("bbp", root_of_unity(j, N), x, y))
        worst = max(worst, float(np.abs(red.entries - bbp.entries).max()))
    yield ("4.reduction-20-equals-bbp", {"N": list(cfg.N_list)}, worst, 1e-14)


def _modulus(rng) -> cp.Modulus:
    return cp.Modulus.from_k_prime(rng.uniform(0.3, 0.9))


def check_chiral_potts(rng, cfg) -> Iterator[Row]:
    worst = 0.0
    for N in range(2, 8):
        mod = _modulus(rng)
        for _ in range(3):
            a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
            for rc in range(N):
                for rd in range(N):
                    worst = max(worst, cp.sample_curve_point(mod, N, a, b, rc, rd).curve_residual())
    yield ("5.cp-curve", {"N": list(range(2, 8)), "branches": "all"}, worst, 1e-12)

    worst = 0.0
    for N in range(2, 8):
        mod = _modulus(rng)
        for _ in range(5):
            p = cp.random_curve_point(rng, mod, N)
            w = cp.cp_weight_tables(p, p)
            delta = np.zeros(N)
            delta[0] = 1
            worst = max(worst, float(np.abs(w.W - 1).max()), float(np.abs(w.Wb - delta).max()))
    yield ("5.cp-coinciding-rapidities", {"N": list(range(2, 8))}, worst, 1e-14)

    n_pairs = cfg.samples("5.cp-cyclic", 50)
    worst = 0.0
    for N in (2, 3, 4, 5):
        mod = _modulus(rng)
        for _ in range(n_pairs):
            worst = max(worst, cp.cyclic_closure(*cp.conditioned_points(rng, mod, N, 2)))
    yield ("5.cp-cyclic-closure", {"N": [2, 3, 4, 5], "pairs_per_N": n_pairs,
                                   "max_conditioning": cp.MAX_CONDITIONING}, worst, 1e-10)

    n_tri = cfg.samples("5.cp-star-triangle", 10)
    for N in (2, 3, 4, 5):
        mod = _modulus(rng)
        worst = 0.0
        for _ in range(n_tri):
            pts = cp.conditioned_points(rng, mod, N, 3)
            worst = max(worst, cp.star_triangle_residual(*pts))
        yield (f"5.cp-star-triangle.N{N}", {"N": N, "triples": n_tri, "k_prime": mod.k_prime}, worst, 1e-9)


def random_pairs(rng, N, mod=None):
    mod = mod or _modulus(rng)
    pts = cp.conditioned_points(rng, mod, N, 6)
    return (pts[0], pts[1]), (pts[2], pts[3]), (pts[4], pts[5])


def check_composed(rng, cfg) -> Iterator[Row]:
    n_samp = cfg.samples("6.r4cp", 3)
    for N in (2, 3):
        charge_bad = trans_bad = 0
        ybe = diamond = diamond_wkw = 0.0
        neg = math.inf
        for _ in range(n_samp):
            pairs = random_pairs(rng, N)
            P, Q, _ = pairs
            for kind in ("star", "diamond"):
                w = (cp.compose_star if kind == "star" else cp.compose_diamond)(*P, *Q)
                trans_bad += 0 if w.translation_invariant else 1
                charge_bad += len(support_violations(cp.wkw_vertex_map(w), "charge"))
            ybe = max(ybe, cp.uniform_ybe_4cp(pairs))
            diamond = max(diamond, cp.uniform_ybe_4cp(pairs, "diamond"))
            diamond_wkw = max(diamond_wkw, cp.uniform_ybe_4cp(pairs, "diamond-wkw"))
            for face in range(4):
                neg = min(neg, cp.uniform_ybe_4cp(pairs, "star", cp.swap_face(cp.STAR_PLACEMENT, face)))
        yield (f"6.r4cp-charge-rule.N{N}", {"N": N, "samples": n_samp}, float(charge_bad), EXACT)
        yield (f"6.r4cp-translation.N{N}", {"N": N, "samples": n_samp}, float(trans_bad), EXACT)
        yield (f"6.r4cp-uniform-ybe.star.N{N}", {"N": N, "samples": n_samp,
                                                  "placement": [list(f) for f in cp.STAR_PLACEMENT]}, ybe, 1e-8)
        yield (f"6.r4cp-uniform-ybe.diamond.N{N}", {"N": N, "samples": n_samp, "reading": "strip spins",
                                                     "difference_map_residual": diamond_wkw}, diamond, 1e-8)
        yield (f"6.r4cp-negative-control.N{N}", {"N": N, "measured_min": neg, "threshold": 1e-2},
               1e-2 / neg, 1.0)


def check_qseries(rng, cfg) -> Iterator[Row]:
    worst_std = worst_bs = 0.0
    for _ in range(5):
        a, q = generic_complex(rng), generic_complex(rng)
        for n in range(0, 21):
            lhs = qs.pochhammer_std(a, q, n + 1)
            rhs = qs.pochhammer_std(a, q, n) * (1 - a * q**n)
            worst_std = max(worst_std, abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
            lhs = qs.pochhammer_bs(a, q, n + 1)
            rhs = qs.pochhammer_bs(a, q, n) * (q**n / a - a * q ** (-n))
            worst_bs = max(worst_bs, abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
    yield ("7.qseries-recurrence.std", {"n": [0, 20]}, worst_std, 1e-14)
    yield ("7.qseries-recurrence.bs", {"n": [0, 20]}, worst_bs, 1e-14)
    worst = 0.0
    for N in range(2, 13):
        q = root_of_unity(1, N)
        worst = max(worst, abs(qs.pochhammer_std(q, q, N)), abs(qs.q_integer_std(q, N)))
    yield ("7.qseries-root-annihilation", {"N": [2, 12]}, worst, 1e-12)
    worst = 0.0
    base = 1 + 1e-8
    for n in range(0, 13):
        worst = max(worst, abs(qs.q_integer_std(base, n) - n), abs(qs.q_integer_bs(base, n) - n))
    yield ("7.qseries-limits", {"epsilon": 1e-8, "n": [0, 12]}, worst, 1e-6)


def check_parity(rng, cfg) -> Iterator[Row]:
    worst_pow = worst_sq = 0.0
    wrong = 0
    for N in range(2, 13):
        res = resolve_q1(RootOfUnitySpec(N, 1))
        worst_pow = max(worst_pow, res.power_residual)
        if N % 2:
            worst_sq = max(worst_sq, res.square_residual)
        wrong += res.parity_verdict != (1 if N % 2 else -1)
    yield ("8.parity-q1-power", {"N": [2, 12], "wrong_verdicts": wrong}, worst_pow + wrong, 1e-12)
    yield ("8.parity-q1-square-odd", {"N": [3, 5, 7, 9, 11]}, worst_sq, 1e-12)


CHECKS: dict[str, Callable] = {
    "1.six-vertex-ybe": check_six_vertex_ybe,
    "2.gauge": check_gauge_bridges,
    "3.slmn": check_slmn,
    "4.monomial-span": check_monomial_span,
    "5.chiral-potts": check_chiral_potts,
    "6.r4cp": check_composed,
    "7.qseries": check_qseries,
    "8.parity": check_parity,
}

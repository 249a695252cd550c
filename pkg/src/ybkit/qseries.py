"""The two q-Pochhammer and q-integer conventions.

Standard (basic hypergeometric) form::

    (a; q)_n = prod_{k=1}^{n} (1 - a q^(k-1)),        (q)_n = (1 - q^n) / (1 - q)

Symmetric form in the square root ``q1`` of q::

    [a; q1]_n = prod_{k=1}^{n} (q1^(k-1) / a - a q1^(1-k)),
    [q1]_n    = (q1^n - q1^(-n)) / (q1 - 1/q1)

They are tied by ``[a; q1]_n = a^(-n) q1^(n(n-1)/2) (a^2; q1^(-2))_n``.
"""

from __future__ import annotations

import warnings

__all__ = [
    "LimitWarning",
    "pochhammer_std",
    "pochhammer_bs",
    "pochhammer_bs_via_std",
    "q_integer_std",
    "q_integer_bs",
]


class LimitWarning(RuntimeWarning):
    """Returned the continuous limit at a removable singularity."""


def _check_order(n: int) -> int:
    if n < 0 or int(n) != n:
        raise ValueError(f"order must be a nonnegative integer, got {n}")
    return int(n)


def pochhammer_std(a: complex, q: complex, n: int) -> complex:
    n = _check_order(n)
    out = 1 + 0j
    qk = 1 + 0j
    for _ in range(n):
        out *= 1 - a * qk
        qk *= q
    return out


def pochhammer_bs(a: complex, q1: complex, n: int) -> complex:
    n = _check_order(n)
    if a == 0:
        raise ValueError("a must be nonzero")
    if q1 == 0:
        raise ValueError("q1 must be nonzero")
    out = 1 + 0j
    up = 1 + 0j  # q1^(k-1)
    for _ in range(n):
        out *= up / a - a / up
        up *= q1
    return out


def pochhammer_bs_via_std(a: complex, q1: complex, n: int) -> complex:
    """Symmetric symbol through the standard one: an independent route."""
    n = _check_order(n)
    return a ** (-n) * q1 ** (n * (n - 1) // 2) * pochhammer_std(a * a, 1 / q1**2, n)


def q_integer_std(q: complex, n: int) -> complex:
    """``(1 - q^n) / (1 - q)``; for ``n >= 0`` summed as ``1 + q + ... + q^(n-1)``."""
    if q == 1:
        warnings.warn("q = 1: returning the limit n", LimitWarning, stacklevel=2)
        return complex(n)
    if n >= 0:
        return complex(sum(q**k for k in range(n)))
    return (1 - q**n) / (1 - q)


def q_integer_bs(q1: complex, n: int) -> complex:
    """``(q1^n - q1^-n) / (q1 - 1/q1)``; for ``n >= 0`` summed as ``sum_k q1^(n-1-2k)``."""
    if q1 == 0:
        raise ValueError("q1 must be nonzero")
    if q1 in (1, -1):
        warnings.warn(f"q1 = {q1}: returning the limit n q1^(n-1)", LimitWarning, stacklevel=2)
        return complex(n * q1 ** (n - 1))
    if n >= 0:
        return complex(sum(q1 ** (n - 1 - 2 * k) for k in range(n)))
    return (q1**n - q1 ** (-n)) / (q1 - 1 / q1)

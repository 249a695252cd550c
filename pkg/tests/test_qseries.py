from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybkit.qseries import (
    LimitWarning,
    pochhammer_bs,
    pochhammer_bs_via_std,
    pochhammer_std,
    q_integer_bs,
    q_integer_std,
)

finite = st.floats(-1.5, 1.5, allow_nan=False)
cplx = st.builds(complex, finite, finite).filter(lambda z: abs(z) > 0.2)


def test_worked_values():
    assert q_integer_std(2, 3) == 7
    assert q_integer_bs(3, 2) == pytest.approx(10 / 3, abs=1e-15)
    assert q_integer_bs(3, -2) == pytest.approx(-10 / 3, abs=1e-15)
    # [2; 3]_2 = (1/2 - 2)(3/2 - 2/3)
    assert pochhammer_bs(2, 3, 2) == pytest.approx(-1.25, abs=1e-15)
    assert pochhammer_bs_via_std(2, 3, 2) == pytest.approx(-1.25, abs=1e-15)
    assert pochhammer_std(0.5, 2, 3) == pytest.approx(0.5 * 0 * -1, abs=1e-15)


def test_empty_products():
    assert pochhammer_std(3 + 1j, 0.4, 0) == 1
    assert pochhammer_bs(3 + 1j, 0.4, 0) == 1
    assert q_integer_std(0.3j, 0) == 0 and q_integer_bs(0.3j, 0) == 0


@settings(max_examples=80, deadline=None)
@given(a=cplx, q1=cplx, n=st.integers(0, 12))
def test_symmetric_form_through_standard_form(a, q1, n):
    direct = pochhammer_bs(a, q1, n)
    via = pochhammer_bs_via_std(a, q1, n)
    # rounding scale: product of the term magnitudes, not of the (possibly cancelled) factors
    scale = math.prod(abs(q1) ** k / abs(a) + abs(a) / abs(q1) ** k for k in range(n))
    assert abs(direct - via) <= 1e-13 * max(1.0, scale)


@settings(max_examples=80, deadline=None)
@given(a=cplx, q=cplx, n=st.integers(0, 15))
def test_standard_recurrence(a, q, n):
    lhs = pochhammer_std(a, q, n + 1)
    rhs = pochhammer_std(a, q, n) * (1 - a * q**n)
    assert abs(lhs - rhs) <= 1e-13 * max(1.0, abs(lhs))


@settings(max_examples=80, deadline=None)
@given(q1=cplx, n=st.integers(-10, 10))
def test_q_integer_recurrences(q1, n):
    # [n+1] = q1 [n] + q1^-n  and  (n+1)_q = 1 + q (n)_q
    lhs = q_integer_bs(q1, n + 1)
    assert abs(lhs - (q1 * q_integer_bs(q1, n) + q1 ** (-n))) <= 1e-11 * max(1.0, abs(lhs))
    lhs = q_integer_std(q1, n + 1)
    assert abs(lhs - (1 + q1 * q_integer_std(q1, n))) <= 1e-11 * max(1.0, abs(lhs))


@pytest.mark.filterwarnings("ignore::ybkit.qseries.LimitWarning")
@settings(max_examples=60, deadline=None)
@given(q1=cplx, n=st.integers(0, 12))
def test_symmetric_integer_is_symmetric(q1, n):
    assert abs(q_integer_bs(q1, n) - q_integer_bs(1 / q1, n)) <= 1e-11 * max(1.0, abs(q_integer_bs(q1, n)))


@pytest.mark.parametrize("N", range(2, 13))
def test_root_of_unity_annihilation(N):
    q = cmath.exp(2j * math.pi / N)
    assert abs(q_integer_std(q, N)) < 1e-12
    assert abs(pochhammer_std(q, q, N)) < 1e-12
    # symmetric integer vanishes at q1 = exp(i pi / N)
    assert abs(q_integer_bs(cmath.exp(1j * math.pi / N), N)) < 1e-12
    assert all(abs(q_integer_std(q, n)) > 1e-3 for n in range(1, N))


@pytest.mark.parametrize("n", [0, 1, 5, 12])
def test_limit_base_to_one(n):
    assert abs(q_integer_std(1 + 1e-8, n) - n) < 1e-6
    assert abs(q_integer_bs(1 + 1e-8, n) - n) < 1e-6
    with pytest.warns(LimitWarning):
        assert q_integer_std(1, n) == n
    with pytest.warns(LimitWarning):
        assert q_integer_bs(1, n) == n
    with pytest.warns(LimitWarning):
        assert q_integer_bs(-1, n) == n * (-1) ** (n - 1)


@pytest.mark.parametrize("call", [
    lambda: pochhammer_std(1, 2, -1),
    lambda: pochhammer_std(1, 2, 1.5),
    lambda: pochhammer_bs(0, 2, 2),
    lambda: pochhammer_bs(1, 0, 2),
    lambda: q_integer_bs(0, 3),
])
def test_invalid_arguments(call):
    with pytest.raises(ValueError):
        call()

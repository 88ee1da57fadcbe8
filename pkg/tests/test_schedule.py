from fractions import Fraction
from math import lgamma, log

import mpmath
import pytest

from starcodim.schedule import PowerForm, cube_below_power, first_T, greedy_schedule


def scan_first_T(alpha, limit=2000):
    """Largest failing n below ``limit``, plus one (the tail is monotone well before it)."""
    last = max(n for n in range(1, limit) if n ** 3 >= alpha ** n)
    return max(2, last + 1)


@pytest.mark.parametrize("alpha", [Fraction(2), Fraction(3), Fraction(3, 2), Fraction(11, 10)])
def test_first_T(alpha):
    assert first_T(alpha) == scan_first_T(alpha)


def test_first_T_two():
    assert first_T(2) == 10
    assert not cube_below_power(9, Fraction(2)) and cube_below_power(10, Fraction(2))


def test_alpha_must_exceed_one():
    for a in (1, Fraction(1, 2), 0):
        with pytest.raises(ValueError):
            greedy_schedule(a)


def test_bound_schedule_two_steps():
    s = greedy_schedule(2, "bound")
    assert s.complete
    T1, N1 = s.pairs[0]
    T2, N2 = s.pairs[1]
    assert T1 == 10 and N1 == 21 * (2 ** 23 + 1)
    assert T2 == 2 * N1
    assert isinstance(N2, PowerForm) and N2.coefficient == 2 * T2 + 1
    assert s.steps[2].T == PowerForm(2 * N2.coefficient, N2.exponent)
    assert s.ledger().splitlines()[1] == "T1 = 10"
    assert greedy_schedule(2, "bound").ledger() == s.ledger()


def ln_factorial_gap(coef, e):
    """ln (2^e)! - n ln 2 for n = coef*(2^e+1), via log-gamma at high precision."""
    with mpmath.workdps(40):
        m = mpmath.mpf(2) ** e
        return mpmath.loggamma(m + 1) - coef * (m + 1) * mpmath.log(2)


def test_bound_thresholds_against_loggamma():
    s = greedy_schedule(2, "bound")
    for step in s.steps[:2]:
        coef = 2 * step.T + 1
        e = step.evidence["exponent"]
        assert ln_factorial_gap(coef, e) > 0
        # minimal on the power-of-two grid: the next exponent down genuinely fails
        assert ln_factorial_gap(coef, e - 1) < 0


def test_first_threshold_exact_margins():
    # m = 2^22 fails, m = 2^23 holds, using float log-gamma as a second opinion
    n22, n23 = 21 * (2 ** 22 + 1), 21 * (2 ** 23 + 1)
    assert lgamma(2 ** 22 + 1) < n22 * log(2)
    assert lgamma(2 ** 23 + 1) > n23 * log(2)


def test_computed_mode():
    s = greedy_schedule(2, "computed", horizon=6, steps=1, first=2)
    assert s.complete and s.pairs == [(2, 3)] and s.steps[-1].T == 6
    bad = greedy_schedule(100, "computed", horizon=3)
    assert not bad.complete and "horizon 3" in bad.reason
    assert bad.ledger().rstrip().splitlines()[-1].startswith("INCOMPLETE")


def test_bound_horizon_exhausted():
    s = greedy_schedule(2, "bound", horizon=10)
    assert not s.complete and s.pairs == []


def test_power_form():
    p = PowerForm(3, 4)
    assert p.exact() == 51 and str(p) == "3*(2^4+1)"

"""Greedy interleaving T1 < N1 < T2 < N2 < ... for the direct sum C.

``computed`` mode locates each N_k from actual codimensions (desk scale
only).  ``bound`` mode replaces the unknown codimensions by proven
envelopes: below 2T_k the n^3 bound keeps c*_n under alpha^n, and the
factorial lower bound floor(n/(2T+1) - 1)! pushes it over.  In bound mode
N_k = (2T_k+1)(m+1) with m the smallest power of two for which
m! >= alpha^n is certified; these numbers outgrow machine integers by the
second block, so they are kept in the exact form coefficient*(2^e + 1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Union

import mpmath
from mpmath import iv

from .analysis import iv_precision

log = logging.getLogger(__name__)

#: beyond this exponent a threshold is kept symbolic rather than expanded
EXPAND_BITS = 4096


@dataclass(frozen=True)
class PowerForm:
    """The exact integer ``coefficient * (2**exponent + 1)``."""

    coefficient: int
    exponent: int

    def exact(self) -> int:
        return self.coefficient * ((1 << self.exponent) + 1)

    def to_iv(self):
        return iv.mpf(self.coefficient) * (iv.mpf(2) ** self.exponent + 1)

    def __str__(self):
        return f"{self.coefficient}*(2^{self.exponent}+1)"


Number = Union[int, PowerForm]


def _as_iv(x: Number):
    return x.to_iv() if isinstance(x, PowerForm) else iv.mpf(x)


def _double(x: Number) -> Number:
    return PowerForm(2 * x.coefficient, x.exponent) if isinstance(x, PowerForm) else 2 * x


@dataclass
class ScheduleStep:
    k: int
    T: Number
    N: Optional[Number] = None
    note: str = ""
    evidence: dict = field(default_factory=dict)


@dataclass
class BlockSchedule:
    alpha: Fraction
    mode: str
    steps: List[ScheduleStep] = field(default_factory=list)
    complete: bool = True
    reason: str = ""

    @property
    def pairs(self):
        return [(s.T, s.N) for s in self.steps if s.N is not None]

    @property
    def interleaved(self) -> List[Number]:
        out: List[Number] = []
        for s in self.steps:
            out.append(s.T)
            if s.N is not None:
                out.append(s.N)
        return out

    def ledger(self) -> str:
        lines = [f"schedule alpha={self.alpha} mode={self.mode}"]
        for s in self.steps:
            lines.append(f"T{s.k} = {s.T}")
            for key, val in s.evidence.items():
                lines.append(f"  {key}: {val}")
            if s.N is not None:
                lines.append(f"N{s.k} = {s.N}")
            if s.note:
                lines.append(f"  note: {s.note}")
        lines.append("complete" if self.complete else f"INCOMPLETE: {self.reason}")
        return "\n".join(lines) + "\n"


def cube_below_power(n: int, alpha: Fraction) -> bool:
    """Exact test of n^3 < alpha^n."""
    return n ** 3 * alpha.denominator ** n < alpha.numerator ** n


def first_T(alpha: Fraction) -> int:
    """Smallest T >= 2 with n^3 < alpha^n for every n >= T."""
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise ValueError("alpha must exceed 1")
    # alpha^n / n^3 increases once ((n+1)/n)^3 < alpha
    n0 = 1
    while Fraction(n0 + 1, n0) ** 3 >= alpha:
        n0 += 1
    n1 = n0
    while not cube_below_power(n1, alpha):
        n1 += 1
    last_fail = max((n for n in range(1, n1) if not cube_below_power(n, alpha)), default=0)
    return max(2, last_fail + 1)


def _log_factorial_lower(m):
    """Robbins: ln m! > m ln m - m + ln(2 pi m)/2 + 1/(12m+1)."""
    return m * iv.log(m) - m + iv.log(2 * iv.pi * m) / 2 + 1 / (12 * m + 1)


def _factorial_beats(T2p1, e: int, log_alpha):
    """Certified ``(2^e)! >= alpha^n`` with ``n = (2T+1)(2^e + 1)``; returns (ok, lhs_lo, rhs_hi)."""
    m = iv.mpf(2) ** e
    lhs = _log_factorial_lower(m)
    rhs = T2p1 * (m + 1) * log_alpha
    return lhs.a >= rhs.b, lhs.a, rhs.b


def _bound_threshold(T: Number, alpha: Fraction, max_exponent: int):
    """Smallest e >= 1 certified by the factorial bound, or None past ``max_exponent``."""
    with iv_precision(192):
        T2p1 = 2 * _as_iv(T) + 1
        log_alpha = iv.log(iv.mpf(alpha.numerator) / alpha.denominator)
        # below m = alpha^(2T+1) the margin only shrinks; start the search there
        guess = T2p1 * log_alpha / iv.log(2)
        if guess.b > max_exponent:
            return None
        e_lo = max(1, int(mpmath.floor(guess.a)))
        e_hi = e_lo
        while not _factorial_beats(T2p1, e_hi, log_alpha)[0]:
            e_hi = e_hi * 2
            if e_hi > 4 * max_exponent:
                return None
        while e_lo < e_hi:
            mid = (e_lo + e_hi) // 2
            if _factorial_beats(T2p1, mid, log_alpha)[0]:
                e_hi = mid
            else:
                e_lo = mid + 1
        ok, lhs, rhs = _factorial_beats(T2p1, e_hi, log_alpha)
        prev = _factorial_beats(T2p1, e_hi - 1, log_alpha)[0] if e_hi > 1 else False
        return e_hi, lhs, rhs, prev


def greedy_schedule(alpha, mode: str = "bound", horizon: int | None = None, steps: int = 2,
                    first: int | None = None, **codim_kwargs) -> BlockSchedule:
    """Choose T1 < N1 < T2 < N2 < ... with T_{k+1} = 2 N_k.

    ``horizon`` is the largest degree computed in ``computed`` mode (default 6)
    and the largest exponent e (so m = 2^e) tried in ``bound`` mode
    (default 2^40).  ``first``
    overrides T1, which is otherwise the smallest T >= 2 with n^3 < alpha^n
    for all n >= T.  Running out of horizon yields ``complete=False`` with
    the reason; nothing is extrapolated.
    """
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise ValueError("alpha must exceed 1")
    if mode not in ("computed", "bound"):
        raise ValueError(f"unknown mode {mode!r}")
    if horizon is None:
        horizon = 6 if mode == "computed" else 1 << 40
    T: Number = first_T(alpha) if first is None else first
    sched = BlockSchedule(alpha, mode)
    if first is not None and first < 2:
        raise ValueError("T1 must be at least 2")
    for k in range(1, steps + 1):
        step = ScheduleStep(k, T)
        sched.steps.append(step)
        if mode == "bound":
            found = _bound_step(step, alpha, horizon)
        else:
            found = _computed_step(sched, step, alpha, horizon, **codim_kwargs)
        if not found:
            sched.complete = False
            sched.reason = step.note or f"no threshold N{k} found within horizon {horizon}"
            return sched
        T = _double(step.N)
    sched.steps.append(ScheduleStep(steps + 1, T, note="opened by T = 2 N"))
    return sched


def _bound_step(step: ScheduleStep, alpha: Fraction, max_exponent: int) -> bool:
    T = step.T
    step.evidence["cubic_bound"] = f"c*_n <= n^3 < alpha^n for T{step.k} <= n <= 2T{step.k} (n >= T1)"
    if isinstance(T, PowerForm):
        step.note = "T is beyond exact exponent search (2T+1 exceeds representable exponents)"
        return False
    res = _bound_threshold(T, alpha, max_exponent)
    if res is None:
        step.note = f"factorial threshold needs exponent above {max_exponent}"
        return False
    e, lhs, rhs, prev = res
    coef = 2 * T + 1
    N: Number = coef * ((1 << e) + 1) if e <= EXPAND_BITS else PowerForm(coef, e)
    step.N = N
    step.evidence["factorial_bound"] = (f"floor(n/(2T+1)-1)! = (2^{e})! >= alpha^n at n = N{step.k}; "
                               f"ln lower {mpmath.nstr(lhs, 15)} >= ln alpha^n upper {mpmath.nstr(rhs, 15)}")
    step.evidence["block"] = f"m = 2^{e}; e-1 certified: {prev}"
    step.evidence["log_margin"] = mpmath.nstr(lhs - rhs, 15)
    step.evidence["exponent"] = e
    return True


def _computed_step(sched: BlockSchedule, step: ScheduleStep, alpha: Fraction, horizon: int,
                   basis_mode: str = "left_normed", slice_size: int | None = None) -> bool:
    from .engine import total_codimension
    from .families import make_C_prefix

    prev = sched.pairs
    T = step.T
    for n in range(T + 1, horizon + 1):
        C = make_C_prefix(prev + [(T, n)], slice_size or n)
        c = total_codimension(C, n, basis_mode=basis_mode).total
        reached = c * alpha.denominator ** n >= alpha.numerator ** n
        step.evidence[f"c*_{n}"] = f"{c} {'>=' if reached else '<'} alpha^{n}"
        if reached:
            step.N = n
            return True
    step.note = f"c*_n < alpha^n for all {T} < n <= horizon {horizon}"
    return False

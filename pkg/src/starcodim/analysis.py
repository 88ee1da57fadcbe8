"""Exponent constants, inequality checkers and finite-window root estimates.

Every inequality is checked exactly: interval endpoints from ``mpmath.iv``
are converted to exact rationals before comparison, and a check passes
only if it holds across the whole interval.
"""

from __future__ import annotations

import csv
import io
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence

import mpmath
from mpmath import iv

from .engine import CodimEntry, CodimSequence

BETA_DIGITS = 40


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    val = Fraction(man) * Fraction(2) ** exp
    return -val if sign else val


def mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpf, or of a degenerate interval endpoint (no rounding)."""
    if hasattr(x, "_mpi_"):
        lo, hi = x._mpi_
        if lo != hi:
            raise ValueError("interval is not a single point")
        return _raw_to_fraction(lo)
    return _raw_to_fraction(x._mpf_)


@contextmanager
def iv_precision(bits: int):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


@dataclass(frozen=True)
class ExponentConstants:
    T: int
    theta: Fraction
    beta_lo: Fraction
    beta_hi: Fraction
    digits: int

    @property
    def beta(self) -> str:
        """Midpoint rendered to ``digits`` significant digits."""
        mid = (self.beta_lo + self.beta_hi) / 2
        with mpmath.workdps(self.digits + 10):
            return mpmath.nstr(mpmath.mpf(mid.numerator) / mid.denominator, self.digits)

    def interval(self, digits: int = 25) -> str:
        """Endpoints for display; lo rounded down, hi rounded up."""
        with mpmath.workdps(digits + 10):
            scale = mpmath.mpf(10) ** (digits - 1)
            lo = mpmath.floor(mpmath.mpf(self.beta_lo.numerator) / self.beta_lo.denominator * scale) / scale
            hi = mpmath.ceil(mpmath.mpf(self.beta_hi.numerator) / self.beta_hi.denominator * scale) / scale
            return f"[{mpmath.nstr(lo, digits + 2)}, {mpmath.nstr(hi, digits + 2)}]"

    @property
    def width(self) -> Fraction:
        return self.beta_hi - self.beta_lo


def beta_interval(theta: Fraction, prec_bits: int):
    with iv_precision(prec_bits):
        t = iv.mpf(theta.numerator) / theta.denominator
        u = 1 - t
        val = iv.exp(-(t * iv.log(t)) - u * iv.log(u))
        return mpf_to_fraction(val.a), mpf_to_fraction(val.b)


def exponent_constants(T: int, digits: int = BETA_DIGITS) -> ExponentConstants:
    """theta_T = 1/(2T+1) and beta_T = 1/(theta^theta (1-theta)^(1-theta)) as a certified interval."""
    if T < 2:
        raise ValueError("T must be >= 2")
    theta = Fraction(1, 2 * T + 1)
    bits = int(digits * 3.33) + 32
    lo, hi = beta_interval(theta, bits)
    return ExponentConstants(T, theta, lo, hi, digits)


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundRow:
    n: int
    lhs: object
    rhs: object
    satisfied: Optional[bool]
    status: str = ""  # pass | fail | info | skipped
    note: str = ""
    bound: str = ""

    def __post_init__(self):
        if not self.status:
            self.status = "skipped" if self.satisfied is None else ("pass" if self.satisfied else "fail")

    @property
    def margin(self):
        if self.satisfied is None:
            return None
        return Fraction(self.rhs) - Fraction(self.lhs)


HEADER = ["bound", "n", "lhs", "rhs", "pass", "margin", "note"]


@dataclass
class BoundReport:
    name: str
    rows: List[BoundRow] = field(default_factory=list)

    def add(self, n, lhs, rhs, note: str = "", informational: bool = False, strict: bool = False):
        ok = lhs < rhs if strict else lhs <= rhs
        status = "info" if informational else ""
        self.rows.append(BoundRow(n, lhs, rhs, ok, status, note))

    def skip(self, n, note: str):
        self.rows.append(BoundRow(n, None, None, None, "skipped", note))

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.rows)

    @property
    def checked(self) -> List[BoundRow]:
        return [r for r in self.rows if r.status in ("pass", "fail")]

    def csv_rows(self):
        for r in self.rows:
            yield [r.bound or self.name, r.n, _fmt(r.lhs), _fmt(r.rhs), r.status, _fmt(r.margin), r.note]

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(HEADER)
        w.writerows(self.csv_rows())
        return buf.getvalue()

    def to_table(self) -> str:
        rows = [HEADER] + [list(map(str, r)) for r in self.csv_rows()]
        widths = [max(len(r[i]) for r in rows) for i in range(len(HEADER))]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        with mpmath.workdps(25):
            return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, 15)
    return str(x)


def merge_reports(name: str, reports: Sequence[BoundReport]) -> BoundReport:
    out = BoundReport(name)
    for rep in reports:
        for r in rep.rows:
            out.rows.append(BoundRow(r.n, r.lhs, r.rhs, r.satisfied, r.status, r.note, r.bound or rep.name))
    return out


# ---------------------------------------------------------------------------
# checks


def check_dimension_bound(d: int, sequence: CodimSequence) -> BoundReport:
    rep = BoundReport("theorem1")
    for n, e in sorted(sequence.entries.items()):
        rep.add(n, e.total, d ** (n + 1), note=f"c*_n <= {d}^(n+1)")
    return rep


def check_cubic_bound(sequence: CodimSequence, T: int, informational_below: int = 3) -> BoundReport:
    """c*_n <= n^3 for n <= 2T; rows with n < ``informational_below`` never fail the report."""
    rep = BoundReport("lemma1")
    for n, e in sorted(sequence.entries.items()):
        if n > 2 * T:
            rep.skip(n, "n > 2T")
            continue
        rep.add(n, e.total, n ** 3, informational=n < informational_below,
                note="small n, informational" if n < informational_below else "")
    return rep


def check_sandwich(sequence: CodimSequence, T: int, constants: ExponentConstants | None = None) -> BoundReport:
    """Lower bound n^-2 beta^(n-2T-1) and upper bound 3(2T+1)^3 n^3 beta^n, for n >= 2T+2.

    The lower side is recorded at the top of the beta interval and the upper
    side at the bottom, so a recorded pass holds for every beta in it.
    """
    c = constants or exponent_constants(T)
    rep = BoundReport("sandwich")
    for n, e in sorted(sequence.entries.items()):
        if n < 2 * T + 2:
            rep.skip(n, "lower: out of range (n < 2T+2)")
            rep.skip(n, "upper: out of range (n < 2T+2)")
            continue
        lower = Fraction(1, n * n) * c.beta_hi ** (n - 2 * T - 1)
        upper = 3 * (2 * T + 1) ** 3 * n ** 3 * c.beta_lo ** n
        rep.add(n, lower, e.total, note="lower")
        rep.add(n, e.total, upper, note="upper")
    return rep


def check_cell_support(entry: CodimEntry, T: int) -> BoundReport:
    rep = BoundReport("lemma4")
    n = entry.n
    nonzero = [k for k, _, c in entry.cells if c]
    rep.add(n, len(nonzero), 3, note="nonzero cells")
    for k in nonzero:
        rep.add(n, Fraction(k - 2, n), Fraction(1, 2 * T + 1), note=f"(k-2)/n at k={k}")
    return rep


def check_cell_bound(entries, T: int) -> BoundReport:
    """Every cell c*_{k,n-k} <= (2T+1)^3 for n <= 2T+2."""
    if isinstance(entries, CodimSequence):
        entries = [e for _, e in sorted(entries.entries.items())]
    elif isinstance(entries, CodimEntry):
        entries = [entries]
    rep = BoundReport("lemma6")
    bound = (2 * T + 1) ** 3
    for e in entries:
        if e.n > 2 * T + 2:
            rep.skip(e.n, "n > 2T+2")
            continue
        for k, m, c in e.cells:
            rep.add(e.n, c, bound, note=f"cell ({k},{m})")
    return rep


def check_recursion(sequence: CodimSequence) -> BoundReport:
    rep = BoundReport("lemma11")
    for n, e in sorted(sequence.entries.items()):
        if n < 2 or n - 1 not in sequence.entries:
            rep.skip(n, "needs n >= 2 and c*_{n-1}")
            continue
        rep.add(n, e.total, 3 * n * sequence.total(n - 1), note="c*_n <= 3n c*_{n-1}")
    return rep


def check_piecewise(c_sequence: CodimSequence, pairs, block_sequences: Dict[int, CodimSequence]) -> BoundReport:
    """Piecewise comparison of c*_n(C) with the c*_n of its Ã_{T_j} blocks.

    ``block_sequences[j]`` holds c*_n of the Ã_{T_j} slice (0-based block j).
    Regimes: n <= N1 equality; N_{j-1} < n <= T_j equality; T_j < n <= N_j
    sandwich against blocks j and j+1.  Degrees outside every regime are skipped.
    """
    rep = BoundReport("piecewise")
    for n, e in sorted(c_sequence.entries.items()):
        cn = e.total
        N1 = pairs[0][1]
        if n <= N1:
            _equal(rep, n, cn, block_sequences.get(0), "n <= N1")
            continue
        done = False
        for j in range(1, len(pairs)):
            Tj, Nj = pairs[j]
            Nprev = pairs[j - 1][1]
            if Nprev < n <= Tj:
                _equal(rep, n, cn, block_sequences.get(j), f"N{j} < n <= T{j + 1}")
                done = True
            elif Tj < n <= Nj:
                low = block_sequences.get(j)
                high = block_sequences.get(j + 1)
                if low is None or n not in low or (j + 1 < len(pairs) and (high is None or n not in high)):
                    rep.skip(n, "block codimension missing")
                else:
                    extra = high.total(n) if high is not None and n in high else 0
                    rep.add(n, low.total(n), cn, note=f"lower, T{j + 1} < n <= N{j + 1}")
                    rep.add(n, cn, low.total(n) + extra, note=f"upper, T{j + 1} < n <= N{j + 1}")
                done = True
        if not done:
            rep.skip(n, "no regime applies within the prefix")
    return rep


def _equal(rep: BoundReport, n, cn, seq, note):
    if seq is None or n not in seq:
        rep.skip(n, f"{note}: block codimension missing")
        return
    rep.rows.append(BoundRow(n, cn, seq.total(n), cn == seq.total(n), note=f"equality, {note}"))


def stirling_chain(T: int, k: int) -> BoundReport:
    """Exact check of C((2T+1)k, k) > ((2T+1)k)^((2T+1)k) / (k^k (2Tk)^(2Tk) n^2) for n = (2T+1)k+t+1."""
    rep = BoundReport("stirling")
    N0 = (2 * T + 1) * k
    core = Fraction(N0 ** N0, k ** k * (2 * T * k) ** (2 * T * k))
    lhs = comb(N0, k)
    for t in range(0, 2 * T + 1):
        n = N0 + t + 1
        rep.add(n, core / (n * n), Fraction(lhs), strict=True, note=f"k={k}, t={t}")
    return rep


# ---------------------------------------------------------------------------
# finite-window exponent surrogate


@dataclass
class ExponentWindowEstimate:
    """c*_n^(1/n) over a finite window; a surrogate, never a limit."""

    window: List[int]
    roots: Dict[int, Optional[str]]
    zeros: List[int]
    digits: int = 20

    @property
    def values(self) -> Dict[int, mpmath.mpf]:
        return {n: mpmath.mpf(r) for n, r in self.roots.items() if r is not None}

    @property
    def min(self):
        vals = self.values
        return min(vals.values()) if vals else None

    @property
    def max(self):
        vals = self.values
        return max(vals.values()) if vals else None

    def to_csv(self) -> str:
        lines = ["n,root"]
        lines += [f"{n},{'NA' if r is None else r}" for n, r in sorted(self.roots.items())]
        return "\n".join(lines) + "\n"


def window_estimate(sequence: CodimSequence, window: Sequence[int], digits: int = 20) -> ExponentWindowEstimate:
    roots: Dict[int, Optional[str]] = {}
    zeros = []
    with mpmath.workdps(digits + 10):
        for n in window:
            c = sequence.total(n)
            if c <= 0:
                roots[n] = None
                zeros.append(n)
            else:
                roots[n] = mpmath.nstr(mpmath.root(mpmath.mpf(c), n), digits)
    return ExponentWindowEstimate(list(window), roots, zeros, digits)

"""Exact sparse linear algebra over Q, plus a multi-prime modular rank.

Rows are dicts ``{column: value}`` with int or Fraction values.  Exact
elimination clears denominators first and runs fraction-free on Python
integers, dividing each updated row by its content to keep entries small.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence

log = logging.getLogger(__name__)

# Three primes just below 2**61 (the first is the Mersenne prime 2**61 - 1).
PRIMES = (2305843009213693951, 2305843009213693921, 2305843009213693907)

#: modular ranks are cross-checked against the exact rank when
#: ``nnz <= EXACT_CHECK_THRESHOLD``
EXACT_CHECK_THRESHOLD = 200_000


class RankMismatchError(ArithmeticError):
    pass


def _integer_row(row: Dict[int, object]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    g = 0
    for c, v in row.items():
        if v:
            iv = int(v * den)
            out[c] = iv
            g = gcd(g, iv)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def rank_exact(rows: Iterable[Dict[int, object]]) -> int:
    """Exact rank by incremental fraction-free elimination.

    Each incoming row is reduced against the pivot rows found so far; the
    pivot of a row is its first nonzero column.
    """
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        r = _integer_row(row)
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = r
                break
            a, b = piv[c], r[c]
            new = {k: a * v for k, v in r.items()}
            for k, v in piv.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            r = _primitive(new)
    return len(pivots)


def rank_mod_p(rows: Iterable[Dict[int, object]], p: int) -> int:
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        r = {}
        for c, v in row.items():
            if isinstance(v, Fraction):
                x = v.numerator * pow(v.denominator, -1, p) % p
            else:
                x = v % p
            if x:
                r[c] = x
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                break
            f = r[c]
            for k, v in piv.items():
                s = (r.get(k, 0) - f * v) % p
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
    return len(pivots)


def rank(rows: Sequence[Dict[int, object]], method: str = "exact", check_threshold: Optional[int] = None):
    """Rank of a sparse matrix.

    ``method="exact"`` eliminates over Q.  ``method="modular"`` takes the
    consensus rank modulo :data:`PRIMES`; disagreement falls back to exact,
    and small instances are always certified against the exact rank.
    Returns ``(rank, certified)`` where ``certified`` is False only for an
    uncertified modular consensus.
    """
    rows = list(rows)
    if method == "exact":
        return rank_exact(rows), True
    if method != "modular":
        raise ValueError(f"unknown rank method {method!r}")
    threshold = EXACT_CHECK_THRESHOLD if check_threshold is None else check_threshold
    ranks = [rank_mod_p(rows, p) for p in PRIMES]
    if len(set(ranks)) != 1:
        log.warning("modular ranks disagree %s; falling back to exact", ranks)
        return rank_exact(rows), True
    r = ranks[0]
    nnz = sum(len(row) for row in rows)
    if nnz <= threshold:
        exact = rank_exact(rows)
        if exact != r:
            raise RankMismatchError(f"modular rank {r} != exact rank {exact}")
        return r, True
    return r, False


def row_echelon_vectors(vectors: Iterable[Dict[int, object]], reduced: bool = True) -> List[Dict[int, object]]:
    """Reduced row echelon basis of the span of ``vectors`` (leading ones, sorted by pivot)."""
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for vec in vectors:
        r = {c: Fraction(v) for c, v in vec.items() if v}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = 1 / r[c]
                pivots[c] = {k: v * inv for k, v in r.items()}
                break
            f = r[c]
            for k, v in piv.items():
                s = r.get(k, 0) - f * v
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
    if reduced:
        for c in sorted(pivots, reverse=True):
            piv = pivots[c]
            for c2, other in pivots.items():
                if c2 < c and c in other:
                    f = other[c]
                    for k, v in piv.items():
                        s = other.get(k, 0) - f * v
                        if s:
                            other[k] = s
                        else:
                            other.pop(k, None)
    from .algebra import norm_scalar

    return [{k: norm_scalar(v) for k, v in sorted(pivots[c].items())} for c in sorted(pivots)]


def left_nullspace(rows: Sequence[Dict[int, object]]) -> List[Dict[int, object]]:
    """Reduced echelon basis of ``{a : sum_i a_i rows[i] = 0}`` as sparse vectors over row indices."""
    pivots: Dict[int, tuple] = {}
    null = []
    for i, row in enumerate(rows):
        r = _integer_row(row)
        tag = {i: 1}
        if r:
            # the integer row was scaled; track that scale in the tag
            c0 = next(iter(row))
            tag = {i: Fraction(r[c0]) / Fraction(row[c0])}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = (r, tag)
                break
            prow, ptag = piv
            a, b = prow[c], r[c]
            new = {k: a * v for k, v in r.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            newtag = {k: a * v for k, v in tag.items()}
            for k, v in ptag.items():
                s = newtag.get(k, 0) - b * v
                if s:
                    newtag[k] = s
                else:
                    newtag.pop(k, None)
            r, tag = new, newtag
            g = 0
            for v in r.values():
                g = gcd(g, v)
            if g > 1:
                r = {k: v // g for k, v in r.items()}
                tag = {k: Fraction(v, g) for k, v in tag.items()}
        if not r:
            null.append(tag)
    return row_echelon_vectors(null, reduced=True)


def invert_matrix(P: Sequence[Sequence[object]]) -> List[List[object]]:
    from .algebra import norm_scalar

    d = len(P)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(P)]
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(d):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [[norm_scalar(v) for v in row[d:]] for row in M]

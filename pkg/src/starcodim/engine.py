"""Evaluation matrices and exact *-codimensions.

The evaluation matrix has one row per basis monomial of ``P*_{k,m}`` and
one column per (assignment, output coordinate).  Assignments send each
``x_i`` to a symmetric basis vector and each ``y_j`` to a skew one.

Assembly never loops over all assignments.  Evaluated subtrees are built
bottom-up over subsets of variables, and a subtree whose value is zero is
dropped immediately since every product containing it vanishes.  For the
sparse algebras of interest almost every partial product is zero, so only
the nonzero entries of the matrix are ever touched.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraWithInvolution, StarDecomposition, SparseVector
from .linalg import left_nullspace, rank as matrix_rank
from .monomials import LEAF, MonomialBasis, MultilinearMonomial, Tree, check_cap, var_name

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Assignment:
    """Choice of basis element per variable: ``choices[v]`` indexes A+ for x's and A- for y's."""

    k: int
    m: int
    choices: Tuple[int, ...]

    def __post_init__(self):
        if len(self.choices) != self.k + self.m:
            raise ValueError("assignment must cover every variable")

    def rank(self, p: int, q: int) -> int:
        """Odometer position: x1 is the most significant digit, the last y the least."""
        r = 0
        for v, c in enumerate(self.choices):
            r = r * (p if v < self.k else q) + c
        return r

    @classmethod
    def from_rank(cls, r: int, k: int, m: int, p: int, q: int) -> "Assignment":
        digits = []
        for v in reversed(range(k + m)):
            radix = p if v < k else q
            r, c = divmod(r, radix)
            digits.append(c)
        return cls(k, m, tuple(reversed(digits)))

    def vector(self, decomposition: StarDecomposition, v: int) -> SparseVector:
        basis = decomposition.symmetric_basis if v < self.k else decomposition.skew_basis
        return basis[self.choices[v]]

    def describe(self, algebra: AlgebraWithInvolution, decomposition: StarDecomposition) -> str:
        return " ".join(f"{var_name(v, self.k)}={element_name(algebra, decomposition, v < self.k, c)}"
                        for v, c in enumerate(self.choices))


def element_name(algebra, decomposition, symmetric: bool, c: int) -> str:
    vec = (decomposition.symmetric_basis if symmetric else decomposition.skew_basis)[c]
    if len(vec) == 1 and next(iter(vec.values())) == 1:
        return algebra.basis_labels[next(iter(vec))]
    return f"#{c + 1}"


def parse_element(algebra, decomposition, symmetric: bool, text: str) -> int:
    basis = decomposition.symmetric_basis if symmetric else decomposition.skew_basis
    if text.startswith("#"):
        c = int(text[1:]) - 1
        if not 0 <= c < len(basis):
            raise ValueError(f"basis index {text} out of range")
        return c
    idx = algebra.index(text)
    for c, vec in enumerate(basis):
        if vec == {idx: 1}:
            return c
    kind = "symmetric" if symmetric else "skew"
    raise ValueError(f"{text} is not a {kind} basis element")


def assignment_from_labels(algebra: AlgebraWithInvolution, k: int, m: int,
                           sym_labels: Sequence[str], skew_labels: Sequence[str]) -> Assignment:
    dec = algebra.decomposition()
    choices = [parse_element(algebra, dec, True, s) for s in sym_labels]
    choices += [parse_element(algebra, dec, False, s) for s in skew_labels]
    return Assignment(k, m, tuple(choices))


# ---------------------------------------------------------------------------
# evaluation


def evaluate_monomial(algebra: AlgebraWithInvolution, decomposition: StarDecomposition,
                      monomial: MultilinearMonomial, assignment: Assignment) -> SparseVector:
    if (assignment.k, assignment.m) != (monomial.k, monomial.m):
        raise ValueError("assignment signature does not match the monomial")
    it = iter(monomial.labels)

    def walk(t):
        if t == LEAF:
            return assignment.vector(decomposition, next(it))
        left = walk(t[0])
        right = walk(t[1])
        if not left or not right:
            return {}
        return algebra.multiply(left, right)

    return walk(monomial.tree)


@dataclass
class EvaluationMatrix:
    k: int
    m: int
    basis: MonomialBasis
    dim: int
    p: int
    q: int
    rows: Dict[int, Dict[int, object]]

    @property
    def n_rows(self) -> int:
        return len(self.basis)

    @property
    def full_column_count(self) -> int:
        """Columns before dropping zero ones: ``p^k q^m (p+q)``."""
        return self.p ** self.k * self.q ** self.m * (self.p + self.q) if self.k + self.m else 0

    @property
    def columns(self) -> List[int]:
        return sorted({c for row in self.rows.values() for c in row})

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def column_key(self, col: int) -> Tuple[Assignment, int]:
        a, s = divmod(col, self.dim)
        return Assignment.from_rank(a, self.k, self.m, self.p, self.q), s

    def row_list(self) -> List[Dict[int, object]]:
        return [self.rows.get(i, {}) for i in range(self.n_rows)]

    def nonzero_rows(self) -> List[Dict[int, object]]:
        return [self.rows[i] for i in sorted(self.rows)]


def _require_fast_path(algebra: AlgebraWithInvolution) -> None:
    if not algebra.is_commutative_metabelian():
        raise ValueError(f"left-normed basis requires a commutative metabelian algebra; {algebra.name} is not")


class _PartnerIndex:
    """Which entries of a list of vectors can multiply a given left factor to nonzero.

    ``x * y`` can only be nonzero if some ``e_i e_j`` with i in supp(x),
    j in supp(y) is in the table; candidates are found through the
    coordinates j, and returned in list order so output order is unchanged.
    """

    def __init__(self, algebra, vectors):
        self.rows = algebra._rows
        self.by_coord: Dict[int, List[int]] = {}
        for pos, vec in enumerate(vectors):
            for j in vec:
                self.by_coord.setdefault(j, []).append(pos)

    def candidates(self, x) -> List[int]:
        found = set()
        for i in x:
            for j, _ in self.rows.get(i, ()):
                found.update(self.by_coord.get(j, ()))
        return sorted(found)


def _evaluated_items(algebra, dec, k, m, mode):
    """Nonzero (tree, labels, choices, value) for every monomial/assignment pair."""
    n = k + m
    leaves = {}
    for v in range(n):
        basis = dec.symmetric_basis if v < k else dec.skew_basis
        leaves[v] = [((v,), (c,), vec) for c, vec in enumerate(basis) if vec]
    mult = algebra.multiply
    if n == 1:
        return [(LEAF, lab, ch, val) for lab, ch, val in leaves[0]]
    partner = {v: _PartnerIndex(algebra, [vec for _, _, vec in leaves[v]]) for v in range(n)}
    if mode == "left_normed":
        layer = {}
        for u in range(n):
            for v in range(u + 1, n):
                items = []
                for lu, cu, xu in leaves[u]:
                    for pos in partner[v].candidates(xu):
                        lv, cv, xv = leaves[v][pos]
                        val = mult(xu, xv)
                        if val:
                            items.append((lu + lv, cu + cv, val))
                if items:
                    layer[(1 << u) | (1 << v)] = items
        for _ in range(n - 2):
            nxt: Dict[int, list] = {}
            for mask, items in layer.items():
                for v in range(n):
                    if mask >> v & 1:
                        continue
                    out = nxt.setdefault(mask | 1 << v, [])
                    for lab, ch, x in items:
                        for pos in partner[v].candidates(x):
                            lv, cv, xv = leaves[v][pos]
                            val = mult(x, xv)
                            if val:
                                out.append((lab + lv, ch + cv, val))
            layer = {mk: it for mk, it in nxt.items() if it}
        tree = MonomialBasis(k, m, "left_normed").trees[0]
        return [(tree, lab, ch, val) for items in layer.values() for lab, ch, val in items]

    # full mode: items[(mask, tree)]
    from .monomials import _bracketings

    items: Dict[Tuple[int, Tree], list] = {}
    indexes: Dict[Tuple[int, Tree], _PartnerIndex] = {}

    def index_of(key):
        if key not in indexes:
            indexes[key] = _PartnerIndex(algebra, [x for _, _, x in items[key]])
        return indexes[key]

    for v in range(n):
        if leaves[v]:
            items[(1 << v, LEAF)] = leaves[v]
    masks_by_size: Dict[int, List[int]] = {s: [] for s in range(1, n + 1)}
    for mask in range(1, 1 << n):
        masks_by_size[bin(mask).count("1")].append(mask)
    for s in range(2, n + 1):
        for mask in masks_by_size[s]:
            for tree in _bracketings(s):
                tl, tr = tree
                out = []
                # iterate proper nonempty submasks
                sub = (mask - 1) & mask
                while sub:
                    left = items.get((sub, tl))
                    if left:
                        right = items.get((mask ^ sub, tr))
                        if right:
                            idx = index_of((mask ^ sub, tr))
                            for la, ca, xa in left:
                                for pos in idx.candidates(xa):
                                    lb, cb, xb = right[pos]
                                    val = mult(xa, xb)
                                    if val:
                                        out.append((la + lb, ca + cb, val))
                    sub = (sub - 1) & mask
                if out:
                    items[(mask, tree)] = out
    full = (1 << n) - 1
    return [(tree, lab, ch, val) for (mask, tree), its in items.items() if mask == full
            for lab, ch, val in its]


def assemble_matrix(algebra: AlgebraWithInvolution, k: int, m: int, basis_mode: str = "full",
                    cap: int | None = None) -> EvaluationMatrix:
    if k < 0 or m < 0:
        raise ValueError("k and m must be nonnegative")
    check_cap(k + m, cap)
    basis_mode = basis_mode.replace("-", "_")
    if basis_mode == "left_normed":
        _require_fast_path(algebra)
    dec = algebra.decomposition()
    basis = MonomialBasis(k, m, basis_mode, cap)
    d, p, q = algebra.dim, dec.p, dec.q
    rows: Dict[int, Dict[int, object]] = {}
    if k + m == 0:
        return EvaluationMatrix(k, m, basis, d, p, q, rows)
    for tree, labels, choices, val in _evaluated_items(algebra, dec, k, m, basis_mode):
        full_choice = [0] * (k + m)
        for v, c in zip(labels, choices):
            full_choice[v] = c
        a = Assignment(k, m, tuple(full_choice)).rank(p, q)
        row = rows.setdefault(basis.index(tree, labels), {})
        base = a * d
        for s, x in val.items():
            row[base + s] = x
    # deterministic row/column order
    rows = {i: dict(sorted(rows[i].items())) for i in sorted(rows)}
    return EvaluationMatrix(k, m, basis, d, p, q, rows)


# ---------------------------------------------------------------------------
# codimensions


def rank(matrix: EvaluationMatrix, method: str = "exact") -> int:
    r, _ = matrix_rank(matrix.nonzero_rows(), method)
    return r


def partial_codimension(algebra: AlgebraWithInvolution, k: int, m: int, basis_mode: str = "full",
                        rank_method: str = "exact", cap: int | None = None) -> int:
    """``c*_{k,m}(A)`` as the rank of the evaluation matrix.  ``(0, 0)`` gives 0."""
    basis_mode = basis_mode.replace("-", "_")
    check_cap(k + m, cap)
    memo = algebra._cache.setdefault("codim", {})
    key = (k, m, basis_mode, rank_method)
    if key in memo:
        return memo[key]
    M = assemble_matrix(algebra, k, m, basis_mode, cap)
    r, certified = matrix_rank(M.nonzero_rows(), rank_method)
    if certified:
        memo[key] = r
    log.debug("c*_{%d,%d}(%s) = %d [%s, %s]", k, m, algebra.name, r, basis_mode, rank_method)
    return r


@dataclass
class CodimEntry:
    n: int
    cells: List[Tuple[int, int, int]]  # (k, m, c*_{k,m})

    @property
    def weights(self) -> List[int]:
        return [comb(self.n, k) for k, _, _ in self.cells]

    @property
    def total(self) -> int:
        return sum(comb(self.n, k) * c for k, _, c in self.cells)

    def cell(self, k: int) -> int:
        return next(c for kk, _, c in self.cells if kk == k)


@dataclass
class CodimSequence:
    name: str
    entries: Dict[int, CodimEntry] = field(default_factory=dict)

    def total(self, n: int) -> int:
        return self.entries[n].total

    @property
    def totals(self) -> Dict[int, int]:
        return {n: e.total for n, e in sorted(self.entries.items())}

    def __contains__(self, n):
        return n in self.entries

    @classmethod
    def from_totals(cls, name: str, totals: Dict[int, int]) -> "CodimSequence":
        """Sequence with only totals known (recorded as a single pseudo cell)."""
        seq = cls(name)
        for n, t in totals.items():
            seq.entries[n] = _TotalOnly(n, [], t)
        return seq


@dataclass
class _TotalOnly(CodimEntry):
    given_total: int = 0

    @property
    def total(self) -> int:
        return self.given_total


def _cell_job(args):
    algebra, k, m, basis_mode, rank_method, cap = args
    return partial_codimension(algebra, k, m, basis_mode, rank_method, cap)


def total_codimension(algebra: AlgebraWithInvolution, n: int, basis_mode: str = "full",
                      rank_method: str = "exact", jobs: int = 1, cap: int | None = None) -> CodimEntry:
    """``c*_n(A) = sum_k C(n,k) c*_{k,n-k}(A)`` with the per-k breakdown."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    check_cap(n, cap)
    if n == 0:
        return CodimEntry(0, [(0, 0, 0)])
    tasks = [(algebra, k, n - k, basis_mode, rank_method, cap) for k in range(n + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_cell_job, tasks))
        memo = algebra._cache.setdefault("codim", {})
        for k, v in enumerate(values):
            memo.setdefault((k, n - k, basis_mode.replace("-", "_")), v)
    else:
        values = [_cell_job(t) for t in tasks]
    return CodimEntry(n, [(k, n - k, v) for k, v in enumerate(values)])


def codim_sequence(algebra: AlgebraWithInvolution, n_max: int, n_min: int = 1, **kwargs) -> CodimSequence:
    seq = CodimSequence(algebra.name)
    for n in range(n_min, n_max + 1):
        seq.entries[n] = total_codimension(algebra, n, **kwargs)
    return seq


# ---------------------------------------------------------------------------
# identities


@dataclass
class IdentitySpace:
    basis: MonomialBasis
    vectors: List[Dict[int, object]]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def format(self, vec: Dict[int, object]) -> str:
        return format_polynomial(self.basis, vec)


def format_polynomial(basis: MonomialBasis, vec: Dict[int, object]) -> str:
    from .algebra import format_rational

    if not vec:
        return "0"
    terms = []
    for i in sorted(vec):
        c = vec[i]
        w = str(basis[i])
        terms.append(w if c == 1 else f"-{w}" if c == -1 else f"{format_rational(c)}*{w}")
    return " + ".join(terms).replace("+ -", "- ")


def identity_space(algebra: AlgebraWithInvolution, k: int, m: int, basis_mode: str = "full") -> IdentitySpace:
    M = assemble_matrix(algebra, k, m, basis_mode)
    return IdentitySpace(M.basis, left_nullspace(M.row_list()))


@dataclass
class IdentityCheck:
    holds: bool
    counterexample: Optional[Assignment] = None
    value: Optional[SparseVector] = None

    def __bool__(self):
        return self.holds


def _as_sparse(poly, size: int) -> Dict[int, object]:
    if isinstance(poly, dict):
        vec = {i: c for i, c in poly.items() if c}
    else:
        if len(poly) != size:
            raise ValueError(f"polynomial has {len(poly)} coefficients, basis has {size}")
        vec = {i: c for i, c in enumerate(poly) if c}
    if any(not 0 <= i < size for i in vec):
        raise ValueError("coefficient index out of range")
    return vec


def is_identity(algebra: AlgebraWithInvolution, k: int, m: int, polynomial, basis_mode: str = "full",
                matrix: EvaluationMatrix | None = None) -> IdentityCheck:
    """Whether ``polynomial`` (coefficients over the (k, m) monomial basis) vanishes on A."""
    M = matrix if matrix is not None else assemble_matrix(algebra, k, m, basis_mode)
    vec = _as_sparse(polynomial, len(M.basis))
    acc: Dict[int, object] = {}
    for i, c in vec.items():
        for col, x in M.rows.get(i, {}).items():
            s = acc.get(col, 0) + c * x
            if s:
                acc[col] = s
            else:
                acc.pop(col, None)
    if not acc:
        return IdentityCheck(True)
    first = min(acc)
    a, _ = M.column_key(first)
    value = {}
    for col, x in acc.items():
        aa, s = divmod(col, M.dim)
        if aa == first // M.dim:
            value[s] = x
    return IdentityCheck(False, a, value)


@dataclass
class SubsetCheck:
    holds: bool
    violating: Optional[Dict[int, object]] = None
    counterexample: Optional[Assignment] = None

    def __bool__(self):
        return self.holds


def identity_subset_check(algebra_a: AlgebraWithInvolution, algebra_b: AlgebraWithInvolution, k: int, m: int,
                          basis_mode: str = "full") -> SubsetCheck:
    """Is every (k, m) multilinear identity of A also an identity of B?"""
    space = identity_space(algebra_a, k, m, basis_mode)
    MB = assemble_matrix(algebra_b, k, m, basis_mode)
    for vec in space.vectors:
        res = is_identity(algebra_b, k, m, vec, matrix=MB)
        if not res.holds:
            return SubsetCheck(False, vec, res.counterexample)
    return SubsetCheck(True)


# ---------------------------------------------------------------------------
# witnesses


@dataclass
class WitnessCertificate:
    k: int
    m: int
    monomials: List[MultilinearMonomial]
    assignments: List[Assignment]
    submatrix: List[List[SparseVector]]  # [monomial][assignment] -> value
    rank: int


def witness_lower_bound(algebra: AlgebraWithInvolution, monomials: Sequence[MultilinearMonomial],
                        assignments: Sequence[Assignment]) -> WitnessCertificate:
    """Rank of the evaluation submatrix on the given rows and assignments.

    This never exceeds ``c*_{k,m}`` and is cheap even where the full matrix
    is far out of reach.
    """
    sigs = {(w.k, w.m) for w in monomials} | {(a.k, a.m) for a in assignments}
    if len(sigs) > 1:
        raise ValueError(f"monomials and assignments mix signatures {sorted(sigs)}")
    k, m = sigs.pop() if sigs else (0, 0)
    dec = algebra.decomposition()
    d = algebra.dim
    table = [[evaluate_monomial(algebra, dec, w, a) for a in assignments] for w in monomials]
    rows = [{j * d + s: x for j, val in enumerate(vals) for s, x in val.items()} for vals in table]
    r, _ = matrix_rank(rows, "exact")
    return WitnessCertificate(k, m, list(monomials), list(assignments), table, r)


def dump_certificate(algebra: AlgebraWithInvolution, cert: WitnessCertificate) -> str:
    dec = algebra.decomposition()
    lines = [f"algebra {algebra.name}", f"signature {cert.k} {cert.m}"]
    lines += [f"monomial {w}" for w in cert.monomials]
    lines += [f"assignment {a.describe(algebra, dec)}" for a in cert.assignments]
    lines.append(f"rank {cert.rank}")
    return "\n".join(lines) + "\n"


def load_certificate(algebra: AlgebraWithInvolution, text: str):
    """Parse a certificate; returns ``(monomials, assignments, declared_rank)``."""
    from .monomials import parse_monomial

    dec = algebra.decomposition()
    k = m = None
    monos, assigns, declared = [], [], None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "algebra":
            continue
        if key == "signature":
            k, m = (int(x) for x in rest.split())
        elif key == "monomial":
            monos.append(parse_monomial(rest, k, m))
        elif key == "assignment":
            choices = [None] * (k + m)
            for part in rest.split():
                var, _, lab = part.partition("=")
                kind, idx = var[0], int(var[1:])
                v = idx - 1 if kind == "x" else k + idx - 1
                choices[v] = parse_element(algebra, dec, kind == "x", lab)
            if None in choices:
                raise ValueError(f"line {lineno}: assignment does not cover every variable")
            assigns.append(Assignment(k, m, tuple(choices)))
        elif key == "rank":
            declared = int(rest)
        else:
            raise ValueError(f"line {lineno}: unknown directive {key!r}")
    return monos, assigns, declared


def verify_certificate(algebra: AlgebraWithInvolution, text: str) -> Tuple[bool, int, Optional[int]]:
    monos, assigns, declared = load_certificate(algebra, text)
    cert = witness_lower_bound(algebra, monos, assigns)
    return cert.rank == declared, cert.rank, declared

"""Finite-dimensional algebras over Q equipped with an involution.

Structure constants are stored sparsely: ``table[(i, j)]`` is a dict
``{k: c}`` meaning ``e_i e_j = sum_k c e_k``.  Missing keys are zero.
Scalars are :class:`fractions.Fraction`, collapsed to ``int`` whenever the
denominator is 1 so the hot evaluation loops stay in integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Dict, List, Mapping, Sequence, Tuple

Scalar = Fraction
SparseVector = Dict[int, object]
Table = Dict[Tuple[int, int], SparseVector]


class AlgebraStructureError(ValueError):
    """Malformed algebra data: bad index, wrong dimension, unparsable file."""


class InvolutionAxiomError(ValueError):
    """The involution is not an order-2 anti-automorphism."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations[:5]))


def norm_scalar(x):
    """Exact rational, returned as ``int`` when integral."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def parse_rational(text: str):
    try:
        return norm_scalar(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraStructureError(f"bad rational {text!r}") from exc


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec_add(u: SparseVector, v: SparseVector, c=1) -> SparseVector:
    out = dict(u)
    for k, val in v.items():
        s = out.get(k, 0) + c * val
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


@dataclass(frozen=True)
class Violation:
    axiom: str
    pair: Tuple[str, str]
    detail: str = ""

    def __str__(self):
        return f"{self.axiom} violated at ({self.pair[0]}, {self.pair[1]}){': ' + self.detail if self.detail else ''}"


@dataclass(frozen=True)
class StarDecomposition:
    """Bases of the symmetric (+1) and skew (-1) eigenspaces, as sparse vectors."""

    symmetric_basis: Tuple[SparseVector, ...]
    skew_basis: Tuple[SparseVector, ...]

    @property
    def p(self) -> int:
        return len(self.symmetric_basis)

    @property
    def q(self) -> int:
        return len(self.skew_basis)


@dataclass(eq=False)
class AlgebraWithInvolution:
    """An algebra ``A`` of dimension ``dim`` with involution matrix ``involution``.

    ``involution[r][c]`` is the r-th coordinate of ``e_c*`` (columns are images
    of basis vectors).  Construction only checks structure; call
    :func:`validate` for the axioms.
    """

    dim: int
    basis_labels: Tuple[str, ...]
    table: Table
    involution: Tuple[Tuple[object, ...], ...]
    name: str = "algebra"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        d = self.dim
        if not isinstance(d, int) or d < 1:
            raise AlgebraStructureError(f"dimension must be a positive integer, got {d!r}")
        self.basis_labels = tuple(self.basis_labels)
        if len(self.basis_labels) != d:
            raise AlgebraStructureError(f"{len(self.basis_labels)} labels for dimension {d}")
        if len(set(self.basis_labels)) != d:
            raise AlgebraStructureError("basis labels must be distinct")
        if len(self.involution) != d or any(len(row) != d for row in self.involution):
            raise AlgebraStructureError("involution must be a d x d matrix")
        self.involution = tuple(tuple(norm_scalar(x) for x in row) for row in self.involution)
        clean: Table = {}
        for (i, j), vec in self.table.items():
            if not (0 <= i < d and 0 <= j < d):
                raise AlgebraStructureError(f"product index ({i}, {j}) out of range")
            out = {}
            for k, c in vec.items():
                if not 0 <= k < d:
                    raise AlgebraStructureError(f"coordinate {k} out of range in e_{i} e_{j}")
                c = norm_scalar(c)
                if c:
                    out[k] = c
            if out:
                clean[(i, j)] = out
        self.table = clean

    # -- arithmetic -------------------------------------------------------

    @cached_property
    def _rows(self) -> Dict[int, List[Tuple[int, SparseVector]]]:
        rows: Dict[int, List[Tuple[int, SparseVector]]] = {}
        for (i, j), vec in self.table.items():
            rows.setdefault(i, []).append((j, vec))
        return rows

    def multiply(self, u: SparseVector, v: SparseVector) -> SparseVector:
        """Bilinear product of two sparse coordinate vectors."""
        out: SparseVector = {}
        rows = self._rows
        for i, ui in u.items():
            row = rows.get(i)
            if not row:
                continue
            for j, vec in row:
                vj = v.get(j)
                if vj is None:
                    continue
                c = ui * vj
                for k, ck in vec.items():
                    out[k] = out.get(k, 0) + c * ck
        return {k: norm_scalar(c) for k, c in out.items() if c}

    def basis_product(self, i: int, j: int) -> SparseVector:
        return dict(self.table.get((i, j), {}))

    @cached_property
    def _star_columns(self) -> List[SparseVector]:
        J = self.involution
        return [{r: J[r][c] for r in range(self.dim) if J[r][c]} for c in range(self.dim)]

    def star(self, v: SparseVector) -> SparseVector:
        out: SparseVector = {}
        cols = self._star_columns
        for c, vc in v.items():
            for r, x in cols[c].items():
                out[r] = out.get(r, 0) + x * vc
        return {k: norm_scalar(x) for k, x in out.items() if x}

    def index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element {label!r} in {self.name}") from None

    def element(self, label: str) -> SparseVector:
        return {self.index(label): 1}

    def format_vector(self, v: SparseVector) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            lab = self.basis_labels[k]
            parts.append(lab if c == 1 else f"{format_rational(c)}*{lab}")
        return " + ".join(parts)

    # -- cached structural facts ----------------------------------------

    def is_commutative(self) -> bool:
        if "commutative" not in self._cache:
            self._cache["commutative"] = all(
                self.table.get((j, i), {}) == vec for (i, j), vec in self.table.items()
            )
        return self._cache["commutative"]

    def is_metabelian(self) -> bool:
        """``(xy)(zt) = 0`` identically, i.e. ``A^2 A^2 = 0``."""
        if "metabelian" not in self._cache:
            from .linalg import row_echelon_vectors

            span = row_echelon_vectors(list(self.table.values()))
            self._cache["metabelian"] = all(
                not self.multiply(u, v) for u in span for v in span
            )
        return self._cache["metabelian"]

    def is_commutative_metabelian(self) -> bool:
        return self.is_commutative() and self.is_metabelian()

    def decomposition(self) -> StarDecomposition:
        if "decomposition" not in self._cache:
            self._cache["decomposition"] = decompose(self)
        return self._cache["decomposition"]


# ---------------------------------------------------------------------------
# axioms


def _check_indices(algebra: AlgebraWithInvolution) -> None:
    d = algebra.dim
    for (i, j) in algebra.table:
        if not (0 <= i < d and 0 <= j < d):
            raise AlgebraStructureError(f"product index ({i}, {j}) out of range")


def validate(algebra: AlgebraWithInvolution) -> List[Violation]:
    """List every violated involution axiom; an empty list means valid.

    Structural problems raise :class:`AlgebraStructureError` instead.
    """
    _check_indices(algebra)
    d = algebra.dim
    labels = algebra.basis_labels
    report: List[Violation] = []
    images = [algebra.star({c: 1}) for c in range(d)]
    for c in range(d):
        back = algebra.star(images[c])
        if back != {c: 1}:
            bad = sorted(set(back) | {c})
            r = next(r for r in bad if back.get(r, 0) != (1 if r == c else 0))
            report.append(Violation("involution squared is identity", (labels[r], labels[c]),
                                    f"(J^2)[{r},{c}] = {format_rational(back.get(r, 0))}"))
    # (e_i e_j)* and e_j* e_i* can only be nonzero where some product is defined
    rows = algebra._rows
    for i in range(d):
        for j in range(d):
            if (i, j) not in algebra.table and not any(
                    jj in images[i] for ii in images[j] for jj, _ in rows.get(ii, ())):
                continue
            lhs = algebra.star(algebra.basis_product(i, j))
            rhs = algebra.multiply(images[j], images[i])
            if lhs != rhs:
                report.append(Violation("anti-automorphism (e_i e_j)* = e_j* e_i*", (labels[i], labels[j]),
                                        f"{algebra.format_vector(lhs)} != {algebra.format_vector(rhs)}"))
    return report


def ensure_valid(algebra: AlgebraWithInvolution) -> AlgebraWithInvolution:
    report = validate(algebra)
    if report:
        raise InvolutionAxiomError(report)
    return algebra


def _primitive_integer(v: SparseVector) -> SparseVector:
    den = lcm(*(Fraction(x).denominator for x in v.values()))
    ints = {i: int(x * den) for i, x in v.items()}
    g = gcd(*ints.values())
    return {i: x // g for i, x in ints.items()}


def decompose(algebra: AlgebraWithInvolution) -> StarDecomposition:
    """Eigenbases of the involution via the projectors ``(id +- *)/2``.

    Each basis is the reduced row echelon form of the projector's image,
    rescaled to primitive integer vectors (positive pivot) so evaluation
    stays in integer arithmetic.  The result is deterministic.
    """
    from .linalg import row_echelon_vectors

    ensure_valid(algebra)
    d = algebra.dim
    J = algebra.involution
    half = Fraction(1, 2)
    plus, minus = [], []
    for c in range(d):
        vp, vm = {}, {}
        for r in range(d):
            e = 1 if r == c else 0
            a, b = (e + J[r][c]) * half, (e - J[r][c]) * half
            if a:
                vp[r] = norm_scalar(a)
            if b:
                vm[r] = norm_scalar(b)
        plus.append(vp)
        minus.append(vm)
    sym = [_primitive_integer(v) for v in row_echelon_vectors(plus, reduced=True)]
    skew = [_primitive_integer(v) for v in row_echelon_vectors(minus, reduced=True)]
    assert len(sym) + len(skew) == d
    return StarDecomposition(tuple(sym), tuple(skew))


# ---------------------------------------------------------------------------
# constructions


def from_products(name: str, labels: Sequence[str], products: Mapping[Tuple[str, str], Mapping[str, object]],
                  signs: Sequence[int]) -> AlgebraWithInvolution:
    """Build an algebra in an adapted basis from labelled products and ±1 signs."""
    idx = {lab: i for i, lab in enumerate(labels)}
    table: Table = {}
    for (u, v), vec in products.items():
        unknown = [x for x in (u, v, *vec) if x not in idx]
        if unknown:
            raise AlgebraStructureError(f"unknown basis label {unknown[0]!r}")
        table[(idx[u], idx[v])] = {idx[w]: c for w, c in vec.items()}
    d = len(labels)
    J = tuple(tuple(signs[r] if r == c else 0 for c in range(d)) for r in range(d))
    return AlgebraWithInvolution(d, tuple(labels), table, J, name=name)


def direct_sum(algebras: Sequence[AlgebraWithInvolution], name: str | None = None) -> AlgebraWithInvolution:
    if not algebras:
        raise ValueError("direct_sum needs at least one summand")
    for a in algebras:
        ensure_valid(a)
    labels: List[str] = []
    table: Table = {}
    offsets = []
    off = 0
    for b, a in enumerate(algebras, start=1):
        offsets.append(off)
        labels.extend(f"{lab}@{b}" for lab in a.basis_labels)
        for (i, j), vec in a.table.items():
            table[(i + off, j + off)] = {k + off: c for k, c in vec.items()}
        off += a.dim
    d = off
    J = [[0] * d for _ in range(d)]
    for a, o in zip(algebras, offsets):
        for r in range(a.dim):
            for c in range(a.dim):
                J[r + o][c + o] = a.involution[r][c]
    name = name or " + ".join(a.name for a in algebras)
    return AlgebraWithInvolution(d, tuple(labels), table, tuple(map(tuple, J)), name=name)


def nilpotent_tensor(algebra: AlgebraWithInvolution, N: int, name: str | None = None) -> AlgebraWithInvolution:
    """``A ⊗ R_N`` with ``R_N = Z·Q[Z] / (Z^{N+1})``; basis ``e_i ⊗ Z^s``, 1 <= s <= N."""
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    ensure_valid(algebra)
    d = algebra.dim

    def ix(i, s):
        return (s - 1) * d + i

    labels = [f"{lab}*Z{s}" for s in range(1, N + 1) for lab in algebra.basis_labels]
    table: Table = {}
    for (i, j), vec in algebra.table.items():
        for s in range(1, N + 1):
            for t in range(1, N + 1 - s):
                table[(ix(i, s), ix(j, t))] = {ix(k, s + t): c for k, c in vec.items()}
    D = d * N
    J = [[0] * D for _ in range(D)]
    for s in range(1, N + 1):
        for r in range(d):
            for c in range(d):
                J[ix(r, s)][ix(c, s)] = algebra.involution[r][c]
    return AlgebraWithInvolution(D, tuple(labels), table, tuple(map(tuple, J)),
                                 name=name or f"{algebra.name}⊗R{N}")


def change_basis(algebra: AlgebraWithInvolution, P) -> AlgebraWithInvolution:
    """Transport the algebra to the basis ``f_j = sum_i P[i][j] e_i``."""
    from .linalg import invert_matrix

    d = algebra.dim
    if len(P) != d or any(len(row) != d for row in P):
        raise AlgebraStructureError("change of basis must be a d x d matrix")
    P = [[norm_scalar(x) for x in row] for row in P]
    Pinv = invert_matrix(P)  # raises on singular input
    cols = [{i: P[i][j] for i in range(d) if P[i][j]} for j in range(d)]

    def to_new(v: SparseVector) -> SparseVector:
        out = {}
        for r in range(d):
            s = sum(Pinv[r][c] * vc for c, vc in v.items())
            if s:
                out[r] = norm_scalar(s)
        return out

    table: Table = {}
    for i in range(d):
        for j in range(d):
            prod = algebra.multiply(cols[i], cols[j])
            if prod:
                table[(i, j)] = to_new(prod)
    J = algebra.involution
    newJ = []
    for r in range(d):
        row = []
        for c in range(d):
            s = 0
            for a in range(d):
                if Pinv[r][a]:
                    s += Pinv[r][a] * sum(J[a][b] * P[b][c] for b in range(d))
            row.append(norm_scalar(s))
        newJ.append(tuple(row))
    labels = tuple(f"f{j + 1}" for j in range(d))
    out = AlgebraWithInvolution(d, labels, table, tuple(newJ), name=f"{algebra.name}'")
    return ensure_valid(out)


# ---------------------------------------------------------------------------
# text format


def dumps(algebra: AlgebraWithInvolution) -> str:
    d = algebra.dim
    lines = [f"name {algebra.name}", f"dim {d}", "basis " + " ".join(algebra.basis_labels)]
    J = algebra.involution
    diagonal = all(J[r][c] == 0 for r in range(d) for c in range(d) if r != c)
    if diagonal and all(J[r][r] in (1, -1) for r in range(d)):
        lines.append("involution sign " + " ".join("+1" if J[r][r] == 1 else "-1" for r in range(d)))
    else:
        lines.append("involution matrix")
        lines.extend(" ".join(format_rational(x) for x in row) for row in J)
    for (i, j) in sorted(algebra.table):
        for k, c in sorted(algebra.table[(i, j)].items()):
            lines.append(f"prod {i + 1} {j + 1} {k + 1} {format_rational(c)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> AlgebraWithInvolution:
    """Parse the line-based algebra format.  Errors carry 1-based line numbers."""
    name, dim, labels, J = "algebra", None, None, None
    entries: Dict[Tuple[int, int, int], object] = {}
    lines = text.splitlines()
    pos = 0

    def fail(msg, lineno):
        raise AlgebraStructureError(f"line {lineno}: {msg}")

    while pos < len(lines):
        lineno = pos + 1
        raw = lines[pos].split("#", 1)[0].strip()
        pos += 1
        if not raw:
            continue
        key, _, rest = raw.partition(" ")
        args = rest.split()
        if key == "name":
            name = rest.strip() or name
        elif key == "dim":
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                fail("dim expects a positive integer", lineno)
            dim = int(args[0])
        elif key == "basis":
            labels = args
        elif key == "involution":
            if dim is None:
                fail("involution before dim", lineno)
            if args and args[0] == "sign":
                signs = args[1:]
                if len(signs) != dim:
                    fail(f"expected {dim} signs", lineno)
                vals = []
                for s in signs:
                    if s not in ("+1", "1", "-1"):
                        fail(f"sign must be +1 or -1, got {s!r}", lineno)
                    vals.append(-1 if s == "-1" else 1)
                J = tuple(tuple(vals[r] if r == c else 0 for c in range(dim)) for r in range(dim))
            elif args == ["matrix"]:
                rows = []
                while len(rows) < dim:
                    if pos >= len(lines):
                        fail("truncated involution matrix", pos)
                    row_text = lines[pos].split("#", 1)[0].split()
                    pos += 1
                    if not row_text:
                        continue
                    if len(row_text) != dim:
                        fail(f"involution row needs {dim} entries", pos)
                    try:
                        rows.append(tuple(parse_rational(x) for x in row_text))
                    except AlgebraStructureError as exc:
                        fail(str(exc), pos)
                J = tuple(rows)
            else:
                fail("involution expects 'sign' or 'matrix'", lineno)
        elif key == "prod":
            if dim is None:
                fail("prod before dim", lineno)
            if len(args) != 4:
                fail("prod expects: prod i j k coefficient", lineno)
            try:
                i, j, k = (int(a) for a in args[:3])
            except ValueError:
                fail("prod indices must be integers", lineno)
            if not all(1 <= x <= dim for x in (i, j, k)):
                fail(f"prod index out of range 1..{dim}", lineno)
            if (i, j, k) in entries:
                fail(f"duplicate prod {i} {j} {k}", lineno)
            try:
                entries[(i, j, k)] = parse_rational(args[3])
            except AlgebraStructureError as exc:
                fail(str(exc), lineno)
        else:
            fail(f"unknown directive {key!r}", lineno)
    if dim is None:
        raise AlgebraStructureError("missing dim")
    if labels is None:
        labels = [f"e{i}" for i in range(1, dim + 1)]
    if len(labels) != dim:
        raise AlgebraStructureError(f"basis has {len(labels)} labels, dim is {dim}")
    if J is None:
        raise AlgebraStructureError("missing involution")
    table: Table = {}
    for (i, j, k), c in entries.items():
        if c:
            table.setdefault((i - 1, j - 1), {})[k - 1] = c
    return AlgebraWithInvolution(dim, tuple(labels), table, J, name=name)


def load(path) -> AlgebraWithInvolution:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(algebra: AlgebraWithInvolution, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(algebra))

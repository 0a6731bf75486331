"""Matrices over GF(p)[D]: rank, minors, degree theory and normal forms.

A generating matrix is a k x n PolyMatrix of rank k.  Row reduction turns
it into a reduced matrix (leading-coefficient matrix of full rank) by a
unimodular transform; the Smith form gives the basic test, a polynomial
right inverse and a basic generator of the same code.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Sequence

from .errors import DimensionMismatch, FormatError, NotBasic, RankDeficient
from .gf import FieldSpec, left_kernel, rank_mod
from .polylaurent import NEG_INF, Degree, LaurentPoly, Poly


class PolyMatrix:
    """Immutable k x n matrix of polynomials over one prime field."""

    __slots__ = ("spec", "rows")

    def __init__(self, rows: Sequence[Sequence[Poly]], spec: FieldSpec):
        self.spec = spec
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise DimensionMismatch("ragged matrix rows")
        for r in self.rows:
            for e in r:
                spec.check_same(e.spec)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[Sequence[int]]], spec: FieldSpec | int) -> PolyMatrix:
        """Build from nested ascending coefficient lists."""
        if isinstance(spec, int):
            spec = FieldSpec(spec)
        return cls([[Poly(c, spec) for c in r] for r in rows], spec)

    @classmethod
    def identity(cls, size: int, spec: FieldSpec) -> PolyMatrix:
        return cls(
            [[Poly.one(spec) if i == j else Poly.zero(spec) for j in range(size)] for i in range(size)],
            spec,
        )

    @classmethod
    def from_constant(cls, m: Sequence[Sequence[int]], spec: FieldSpec) -> PolyMatrix:
        return cls([[Poly((x,), spec) for x in r] for r in m], spec)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.k, self.n

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple[Poly, ...]:
        return self.rows[i]

    def column(self, j: int) -> tuple[Poly, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> PolyMatrix:
        return PolyMatrix([self.column(j) for j in range(self.n)], self.spec)

    def select_columns(self, cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix([[r[j] for j in cols] for r in self.rows], self.spec)

    def select_rows(self, rows: Sequence[int]) -> PolyMatrix:
        return PolyMatrix([self.rows[i] for i in rows], self.spec)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.spec == other.spec and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.spec.p, self.rows))

    def is_constant(self) -> bool:
        return all(e.is_constant() for r in self.rows for e in r)

    def max_degree(self) -> Degree:
        return max((e.degree for r in self.rows for e in r), default=NEG_INF)

    def coefficient_matrix(self, d: int) -> list[list[int]]:
        """The constant matrix G_d with G = sum_d G_d D^d."""
        return [[e[d] for e in r] for r in self.rows]

    def row_degrees(self) -> list[Degree]:
        return [max(e.degree for e in r) for r in self.rows]

    def extdeg(self) -> Degree:
        return sum(self.row_degrees())

    def intdeg(self) -> Degree:
        return max((m.degree for m in minors(self)), default=NEG_INF)

    def leading_coefficient_matrix(self) -> list[list[int]]:
        """Entry (i, j) is the coefficient of D^nu_i in g_i^(j)."""
        out = []
        for r, nu in zip(self.rows, self.row_degrees()):
            out.append([e[int(nu)] if nu != NEG_INF else 0 for e in r])
        return out

    def to_lists(self) -> list[list[list[int]]]:
        return [[e.to_list() for e in r] for r in self.rows]

    def to_json(self) -> dict[str, Any]:
        return {"field": {"p": self.spec.p}, "k": self.k, "n": self.n, "rows": self.to_lists()}

    @classmethod
    def from_json(cls, obj: Any) -> PolyMatrix:
        """Parse the matrix file format, rejecting anything malformed."""
        try:
            p = obj["field"]["p"]
            k, n, rows = obj["k"], obj["n"], obj["rows"]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"missing matrix field: {exc}") from None
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (p, k, n)):
            raise FormatError("field.p, k and n must be integers")
        try:
            spec = FieldSpec(p)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        if k < 1 or n < 1:
            raise FormatError("k and n must be positive")
        if not isinstance(rows, list) or len(rows) != k:
            raise FormatError(f"expected {k} rows")
        parsed = []
        for i, r in enumerate(rows):
            if not isinstance(r, list) or len(r) != n:
                raise FormatError(f"row {i} does not have {n} entries")
            prow = []
            for j, c in enumerate(r):
                if not isinstance(c, list) or not all(
                    isinstance(x, int) and not isinstance(x, bool) for x in c
                ):
                    raise FormatError(f"entry ({i},{j}) is not a coefficient list")
                if any(not 0 <= x < p for x in c):
                    raise FormatError(f"entry ({i},{j}) has a coefficient outside [0,{p})")
                prow.append(Poly(c, spec))
            parsed.append(prow)
        return cls(parsed, spec)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in r) for r in self.rows)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.to_lists()}, GF({self.spec.p}))"


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.n != b.k:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    a.spec.check_same(b.spec)
    zero = Poly.zero(a.spec)
    out = []
    for r in a.rows:
        row = []
        for j in range(b.n):
            acc = zero
            for t, x in enumerate(r):
                if x:
                    acc = acc + x * b.rows[t][j]
            row.append(acc)
        out.append(row)
    return PolyMatrix(out, a.spec)


def vec_mul(u: Sequence[LaurentPoly | Poly], g: PolyMatrix) -> list[LaurentPoly]:
    """Row vector of Laurent polynomials times a polynomial matrix."""
    if len(u) != g.k:
        raise DimensionMismatch(f"input has {len(u)} components, matrix has {g.k} rows")
    out = [LaurentPoly.zero(g.spec) for _ in range(g.n)]
    for ui, row in zip(u, g.rows):
        if isinstance(ui, Poly):
            ui = LaurentPoly.from_poly(ui)
        if ui.is_zero():
            continue
        for j, e in enumerate(row):
            out[j] = out[j] + ui * e
    return out


def _fraction_free(rows: Sequence[Sequence[Poly]], spec: FieldSpec) -> tuple[int, Poly, int]:
    """Fraction-free (Bareiss) echelon form.

    Returns (rank, last pivot, sign of the row permutation).  For a square
    matrix of full rank the determinant is ``sign * last pivot``.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = Poly.one(spec)
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        pr = m[r]
        for i in range(r + 1, nrows):
            mi = m[i]
            a = mi[c]
            for j in range(c + 1, ncols):
                mi[j] = (pr[c] * mi[j] - a * pr[j]).exact_div(prev)
            mi[c] = Poly.zero(spec)
        prev = pr[c]
        r += 1
    return r, prev, sign


def rank_rational(g: PolyMatrix) -> int:
    """Rank over the rational function field GF(p)(D)."""
    if g.k == 0:
        return 0
    return _fraction_free(g.rows, g.spec)[0]


def det(m: PolyMatrix) -> Poly:
    if m.k != m.n:
        raise DimensionMismatch(f"determinant of non-square {m.shape} matrix")
    if m.k == 0:
        return Poly.one(m.spec)
    rank, last, sign = _fraction_free(m.rows, m.spec)
    if rank < m.k:
        return Poly.zero(m.spec)
    return last if sign == 1 else -last


def minors(g: PolyMatrix, size: int | None = None) -> list[Poly]:
    """All size x size minors (default k x k), columns in lexicographic order."""
    size = g.k if size is None else size
    out = []
    for rows in combinations(range(g.k), size):
        sub = g.select_rows(rows)
        for cols in combinations(range(g.n), size):
            out.append(det(sub.select_columns(cols)))
    return out


def _require_full_row_rank(g: PolyMatrix) -> None:
    r = rank_rational(g)
    if r < g.k:
        raise RankDeficient(f"rank {r} < k = {g.k}")


def row_degrees(g: PolyMatrix) -> list[Degree]:
    return g.row_degrees()


def extdeg(g: PolyMatrix) -> Degree:
    return g.extdeg()


def intdeg(g: PolyMatrix) -> Degree:
    """Largest degree among the k x k minors."""
    return g.intdeg()


def is_reduced(g: PolyMatrix) -> bool:
    return rank_mod(g.leading_coefficient_matrix(), g.spec.p) == g.k


@dataclass(frozen=True)
class UnimodularCert:
    """A unimodular T with its inverse and (constant, nonzero) determinant."""

    T: PolyMatrix
    det: Poly
    Tinv: PolyMatrix

    @classmethod
    def build(cls, t: PolyMatrix, tinv: PolyMatrix) -> UnimodularCert:
        return cls(t, det(t), tinv)

    def verify(self) -> bool:
        size = self.T.k
        return (
            self.det.degree == 0
            and self.T @ self.Tinv == PolyMatrix.identity(size, self.T.spec)
            and self.Tinv @ self.T == PolyMatrix.identity(size, self.T.spec)
        )


def is_unimodular(t: PolyMatrix) -> bool:
    return t.k == t.n and det(t).degree == 0


@dataclass(frozen=True)
class DegreeProfile:
    row_degrees: tuple[int, ...]
    extdeg: int
    intdeg: int
    reduced: bool
    basic: bool
    canonical: bool


def degree_profile(g: PolyMatrix) -> DegreeProfile:
    _require_full_row_rank(g)
    nu = tuple(int(d) for d in g.row_degrees())
    reduced = is_reduced(g)
    basic = all(f == Poly.one(g.spec) for f in smith_form(g).invariant_factors)
    return DegreeProfile(
        row_degrees=nu,
        extdeg=sum(nu),
        intdeg=int(g.intdeg()),
        reduced=reduced,
        basic=basic,
        canonical=reduced and basic,
    )


def predictable_degree_check(
    g: PolyMatrix, u: Sequence[LaurentPoly | Poly]
) -> tuple[bool, Degree, Degree]:
    """Compare deg(uG) against max_i deg(u_i g_i)."""
    if len(u) != g.k:
        raise DimensionMismatch(f"input has {len(u)} components, matrix has {g.k} rows")
    lu = [LaurentPoly.from_poly(x) if isinstance(x, Poly) else x for x in u]
    if all(x.is_zero() for x in lu):
        raise ValueError("predictable degree check needs a nonzero input")
    lhs = max(x.degree for x in vec_mul(lu, g))
    rhs = max(
        max((ui * e).degree for e in row) for ui, row in zip(lu, g.rows)
    )
    return lhs == rhs, lhs, rhs


def _row_axpy(rows: list[list[Poly]], dst: int, f: Poly, src: int) -> None:
    """rows[dst] += f * rows[src]"""
    rows[dst] = [a + f * b for a, b in zip(rows[dst], rows[src])]


def _col_axpy(rows: list[list[Poly]], dst: int, f: Poly, src: int) -> None:
    """column dst += f * column src"""
    for r in rows:
        r[dst] = r[dst] + f * r[src]


def _identity_rows(size: int, spec: FieldSpec) -> list[list[Poly]]:
    return [list(r) for r in PolyMatrix.identity(size, spec).rows]


def reduce(g: PolyMatrix) -> tuple[UnimodularCert, PolyMatrix]:
    """Unimodular row reduction to a reduced matrix R = T G.

    While the leading-coefficient matrix is singular, take a dependency c
    among its rows, pick the participating row of largest degree (lowest
    index on ties) and add to it the D-shifted combination of the others
    that cancels its leading coefficients.  The external degree drops by at
    least one per step.
    """
    _require_full_row_rank(g)
    spec, p, k = g.spec, g.spec.p, g.k
    rows = [list(r) for r in g.rows]
    t = _identity_rows(k, spec)
    tinv = _identity_rows(k, spec)
    while True:
        cur = PolyMatrix(rows, spec)
        kern = left_kernel(cur.leading_coefficient_matrix(), p)
        if not kern:
            break
        c = kern[0]
        nu = [int(d) for d in cur.row_degrees()]
        part = [i for i in range(k) if c[i]]
        r = max(part, key=lambda i: (nu[i], -i))
        inv = spec.inv(c[r])
        for i in part:
            if i == r:
                continue
            f = Poly.monomial(nu[r] - nu[i], spec, c[i] * inv)
            _row_axpy(rows, r, f, i)
            _row_axpy(t, r, f, i)
            _col_axpy(tinv, i, -f, r)
    cert = UnimodularCert.build(PolyMatrix(t, spec), PolyMatrix(tinv, spec))
    return cert, PolyMatrix(rows, spec)


@dataclass(frozen=True)
class SmithForm:
    """U G V = [diag(invariant_factors) | 0] with U, V unimodular."""

    U: UnimodularCert
    V: UnimodularCert
    invariant_factors: tuple[Poly, ...]

    def diagonal(self, k: int, n: int, spec: FieldSpec) -> PolyMatrix:
        z = Poly.zero(spec)
        return PolyMatrix(
            [
                [self.invariant_factors[i] if i == j and i < len(self.invariant_factors) else z for j in range(n)]
                for i in range(k)
            ],
            spec,
        )


def _find_pivot(m: list[list[Poly]], t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, len(m)):
        for j in range(t, len(m[0])):
            e = m[i][j]
            if e and (best is None or e.degree < best[0]):
                best = (e.degree, i, j)
    return None if best is None else (best[1], best[2])


def smith_form(g: PolyMatrix) -> SmithForm:
    """Smith normal form over GF(p)[D] with both transforms and inverses.

    The pivot is the nonzero entry of least degree, first in row-major
    order on ties.
    """
    spec = g.spec
    k, n = g.k, g.n
    m = [list(r) for r in g.rows]
    u, uinv = _identity_rows(k, spec), _identity_rows(k, spec)
    v, vinv = _identity_rows(n, spec), _identity_rows(n, spec)

    def row_add(dst: int, f: Poly, src: int) -> None:
        _row_axpy(m, dst, f, src)
        _row_axpy(u, dst, f, src)
        _col_axpy(uinv, src, -f, dst)

    def col_add(dst: int, f: Poly, src: int) -> None:
        _col_axpy(m, dst, f, src)
        _col_axpy(v, dst, f, src)
        _row_axpy(vinv, src, -f, dst)

    def row_swap(a: int, b: int) -> None:
        if a == b:
            return
        for x in (m, u):
            x[a], x[b] = x[b], x[a]
        for r in uinv:
            r[a], r[b] = r[b], r[a]

    def col_swap(a: int, b: int) -> None:
        if a == b:
            return
        for x in (m, v):
            for r in x:
                r[a], r[b] = r[b], r[a]
        vinv[a], vinv[b] = vinv[b], vinv[a]

    factors: list[Poly] = []
    for t in range(min(k, n)):
        while True:
            piv = _find_pivot(m, t)
            if piv is None:
                break
            row_swap(t, piv[0])
            col_swap(t, piv[1])
            clean = True
            for i in range(t + 1, k):
                if m[i][t]:
                    q, rem = divmod(m[i][t], m[t][t])
                    row_add(i, -q, t)
                    clean = clean and rem.is_zero()
            for j in range(t + 1, n):
                if m[t][j]:
                    q, rem = divmod(m[t][j], m[t][t])
                    col_add(j, -q, t)
                    clean = clean and rem.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, k) for j in range(t + 1, n) if not m[t][t].divides(m[i][j])),
                None,
            )
            if bad is None:
                break
            row_add(t, Poly.one(spec), bad)
        if m[t][t].is_zero():
            factors.extend(Poly.zero(spec) for _ in range(t, min(k, n)))
            break
        lc = m[t][t].lc
        inv = spec.inv(lc)
        m[t] = [e.scale(inv) for e in m[t]]
        u[t] = [e.scale(inv) for e in u[t]]
        for r in uinv:
            r[t] = r[t].scale(lc)
        factors.append(m[t][t])

    return SmithForm(
        U=UnimodularCert.build(PolyMatrix(u, spec), PolyMatrix(uinv, spec)),
        V=UnimodularCert.build(PolyMatrix(v, spec), PolyMatrix(vinv, spec)),
        invariant_factors=tuple(factors),
    )


def right_inverse(g: PolyMatrix) -> PolyMatrix:
    """Polynomial n x k matrix G' with G G' = I; requires G basic."""
    sf = smith_form(g)
    one = Poly.one(g.spec)
    if len(sf.invariant_factors) < g.k or any(f != one for f in sf.invariant_factors):
        raise NotBasic(f"invariant factors {[str(f) for f in sf.invariant_factors]} are not all 1")
    vk = sf.V.T.select_columns(range(g.k))
    return vk @ sf.U.T


def canonicalize(g: PolyMatrix) -> tuple[PolyMatrix, tuple[int, ...]]:
    """Canonical (basic and reduced) generator of the row space of g.

    The first k rows of V^-1 from the Smith form form a basic matrix of the
    same code; row-reducing it keeps it basic.  Rows come back sorted by
    degree, and the row degrees are the Forney indices.
    """
    _require_full_row_rank(g)
    sf = smith_form(g)
    w = sf.V.Tinv.select_rows(range(g.k))
    _, r = reduce(w)
    nu = [int(d) for d in r.row_degrees()]
    order = sorted(range(g.k), key=lambda i: nu[i])
    return r.select_rows(order), tuple(nu[i] for i in order)

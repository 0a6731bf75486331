"""Finite-state encoders (A, B, C, D) for polynomial generating matrices.

Update law, with row-vector states and inputs::

    s' = s A + u B
    v  = s C + u D

State cells are ordered row-major: (row 1, delay 1..nu_1), (row 2, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence, Union

from .errors import DimensionMismatch, FormatError, NotReduced
from .gf import FieldSpec, solve_left, vec_mat_mod
from .polylaurent import LaurentPoly, Poly, RationalFn, TruncatedSeries, rational_expand
from .polymat import PolyMatrix, _require_full_row_rank, is_reduced, vec_mul
from .statespace import AnticausalInput, state_of

Matrix = list[list[int]]


@dataclass(frozen=True)
class Realization:
    spec: FieldSpec
    m: int
    k: int
    n: int
    A: Matrix
    B: Matrix
    C: Matrix
    Dm: Matrix

    def to_json(self) -> dict:
        return {"m": self.m, "A": self.A, "B": self.B, "C": self.C, "D": self.Dm}


@dataclass(frozen=True)
class SymbolStream:
    spec: FieldSpec
    width: int
    symbols: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for s in self.symbols:
            if len(s) != self.width:
                raise DimensionMismatch(f"symbol {s} does not have width {self.width}")
            if any(not 0 <= x < self.spec.p for x in s):
                raise ValueError(f"symbol {s} has entries outside [0, {self.spec.p})")

    def __len__(self) -> int:
        return len(self.symbols)

    def to_text(self) -> str:
        return "".join(" ".join(map(str, s)) + "\n" for s in self.symbols)

    @classmethod
    def parse(cls, text: str, spec: FieldSpec, width: int | None = None) -> SymbolStream:
        """One time step per line, space-separated; '#' starts a comment."""
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                vals = tuple(int(x) for x in line.split())
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer symbol") from None
            if any(not 0 <= x < spec.p for x in vals):
                raise FormatError(f"line {lineno}: symbol outside [0, {spec.p})")
            if width is not None and len(vals) != width:
                raise FormatError(f"line {lineno}: expected {width} entries, got {len(vals)}")
            rows.append(vals)
        if width is None:
            widths = {len(r) for r in rows}
            if len(widths) > 1:
                raise FormatError("ragged symbol stream")
            width = widths.pop() if widths else 0
        return cls(spec, width, tuple(rows))

    def columns(self) -> list[Poly]:
        """Per-component polynomial whose D^t coefficient is symbol t."""
        return [Poly([s[i] for s in self.symbols], self.spec) for i in range(self.width)]


def _cells(nu: Sequence[int]) -> list[tuple[int, int]]:
    return [(i, j) for i, d in enumerate(nu) for j in range(1, d + 1)]


def controller_realization(g: PolyMatrix) -> Realization:
    """Direct-form (controller canonical) shift-register encoder.

    Cell (i, j) holds input i delayed j steps; the output taps of that cell
    are row i of the coefficient matrix G_j.
    """
    _require_full_row_rank(g)
    nu = [max(int(d), 0) for d in g.row_degrees()]
    cells = _cells(nu)
    index = {c: t for t, c in enumerate(cells)}
    m, k, n = len(cells), g.k, g.n
    a = [[0] * m for _ in range(m)]
    b = [[0] * m for _ in range(k)]
    c = [[0] * n for _ in range(m)]
    for (i, j), t in index.items():
        if j < nu[i]:
            a[t][index[(i, j + 1)]] = 1
        if j == 1:
            b[i][t] = 1
        c[t] = [e[j] for e in g.row(i)]
    return Realization(g.spec, m, k, n, a, b, c, g.coefficient_matrix(0))


def standard_realization(g: PolyMatrix) -> Realization:
    """The encoder whose states are the encoding states themselves.

    Coordinates are taken over the basis ``[D^-j e_i]_G`` (valid for reduced
    G).  From state ``[u]_G`` with input ``x``, the output is the D^0
    coefficient of ``(Z(u) + x) G`` and the next state is
    ``[(Z(u) + x) D^-1]_G``; both maps are computed on basis vectors and
    expressed in coordinates by solving against the basis state images.
    """
    if not is_reduced(g):
        raise NotReduced("standard realization needs a reduced matrix")
    _require_full_row_rank(g)
    spec, p, k, n = g.spec, g.spec.p, g.k, g.n
    nu = [int(d) for d in g.row_degrees()]
    cells = _cells(nu)
    m = len(cells)
    width = max(int(g.max_degree()), 1)
    basis = [AnticausalInput.unit(i, j, k, spec) for i, j in cells]
    basis_rows = [state_of(u, g).flatten(width) for u in basis]

    def coords(u: Sequence[LaurentPoly]) -> list[int]:
        target = state_of(u, g).flatten(width)
        if m == 0:
            return []
        x = solve_left(basis_rows, target, p)
        if x is None:
            raise AssertionError("state outside the span of the basis states")
        return x

    def shifted(u: Sequence[LaurentPoly]) -> list[LaurentPoly]:
        return [x.shift(-1) for x in u]

    def output(u: Sequence[LaurentPoly]) -> list[int]:
        return [x.coeff(0) for x in vec_mul(list(u), g)]

    a = [coords(shifted(u.components)) for u in basis]
    c = [output(u.components) for u in basis]
    b, d = [], []
    for i in range(k):
        e = [LaurentPoly.monomial(0, spec) if r == i else LaurentPoly.zero(spec) for r in range(k)]
        b.append(coords(shifted(e)))
        d.append(output(e))
    return Realization(spec, m, k, n, a, b, c, d)


def encoder_step(r: Realization, s: Sequence[int], u: Sequence[int]) -> tuple[list[int], list[int]]:
    if len(s) != r.m or len(u) != r.k:
        raise DimensionMismatch(f"state/input sizes {len(s)}/{len(u)} vs m={r.m}, k={r.k}")
    p = r.spec.p
    s_next = [(x + y) % p for x, y in zip(vec_mat_mod(s, r.A, r.m, p), vec_mat_mod(u, r.B, r.m, p))]
    v = [(x + y) % p for x, y in zip(vec_mat_mod(s, r.C, r.n, p), vec_mat_mod(u, r.Dm, r.n, p))]
    return s_next, v


def encode(r: Realization, stream: SymbolStream) -> SymbolStream:
    """Run the encoder from the zero state over the whole stream."""
    if stream.width != r.k:
        raise DimensionMismatch(f"stream width {stream.width} != k = {r.k}")
    s = [0] * r.m
    out = []
    for u in stream.symbols:
        s, v = encoder_step(r, s, u)
        out.append(tuple(v))
    return SymbolStream(r.spec, r.n, tuple(out))


def reachable_states(r: Realization) -> set[tuple[int, ...]]:
    """States reachable from zero under arbitrary inputs (breadth-first)."""
    start = (0,) * r.m
    seen = {start}
    frontier = [start]
    inputs = list(product(range(r.spec.p), repeat=r.k))
    while frontier:
        nxt = []
        for s in frontier:
            for u in inputs:
                t = tuple(encoder_step(r, s, u)[0])
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


GeneratorEntry = Union[Poly, RationalFn]


def encode_series(
    g: PolyMatrix | Sequence[Sequence[GeneratorEntry]],
    u: Sequence[LaurentPoly | Poly],
    horizon: int,
) -> list[TruncatedSeries]:
    """The codeword u G, exact below ``horizon``.

    Rational (causal) generator entries are expanded as power series to the
    horizon; a denominator vanishing at D = 0 is rejected.
    """
    rows = g.rows if isinstance(g, PolyMatrix) else g
    if len(u) != len(rows):
        raise DimensionMismatch(f"input has {len(u)} components, matrix has {len(rows)} rows")
    n = len(rows[0])
    spec = rows[0][0].spec
    lo = min((x.delay for x in u if not x.is_zero()), default=0)
    # Entries multiplying an input starting at D^lo must be known below horizon - lo.
    entry_h = horizon - min(int(lo), 0)
    out = [TruncatedSeries(0, (), horizon, spec) for _ in range(n)]
    for ui, row in zip(u, rows):
        su = TruncatedSeries.exact(ui)
        for j, e in enumerate(row):
            se = rational_expand(e, entry_h) if isinstance(e, RationalFn) else TruncatedSeries.exact(e)
            out[j] = out[j] + su * se
    return [TruncatedSeries(x.offset, x.coeffs, horizon, spec) if x.horizon >= horizon else x for x in out]


def series_to_stream(v: Sequence[TruncatedSeries], horizon: int) -> SymbolStream:
    """Causal coefficients 0..horizon-1 of each component as a symbol stream."""
    spec = v[0].spec
    return SymbolStream(
        spec, len(v), tuple(tuple(x.coeff(t) for x in v) for t in range(horizon))
    )

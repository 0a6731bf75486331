"""Encoding and code state spaces of a polynomial generating matrix.

An encoding state ``[u]_G`` is represented by its image ``K(Z(u) G)``: the
causal output the past input leaves behind.  Those images are finite
polynomial vectors, so dimensions reduce to ranks over GF(p).  The code
state space C/C* is probed through membership tests in C and C*.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Any, Iterator, Sequence, Union

from .errors import DimensionMismatch, NotCanonical, NotReduced, TooLargeToEnumerate
from .gf import FieldSpec, independent_rows, rank_mod
from .polylaurent import LaurentPoly, Poly, RationalFn, poly_gcd
from .polymat import (
    PolyMatrix,
    _require_full_row_rank,
    canonicalize,
    degree_profile,
    det,
    reduce,
    vec_mul,
)

ENUMERATION_LIMIT = 2**16

Entry = Union[LaurentPoly, Poly, RationalFn]


@dataclass(frozen=True)
class StateVector:
    """n causal polynomials ``K(Z(u) G)``."""

    components: tuple[Poly, ...]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def flatten(self, width: int) -> list[int]:
        """Coefficients of each component padded to ``width``, concatenated."""
        out: list[int] = []
        for c in self.components:
            out.extend(c[d] for d in range(width))
        return out

    def to_lists(self) -> list[list[int]]:
        return [c.to_list() for c in self.components]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class AnticausalInput:
    """k Laurent polynomials supported on negative exponents."""

    components: tuple[LaurentPoly, ...]

    def __post_init__(self) -> None:
        for c in self.components:
            if c.degree >= 0:
                raise ValueError(f"{c} has a nonnegative exponent")

    @classmethod
    def unit(cls, i: int, j: int, k: int, spec: FieldSpec) -> AnticausalInput:
        """The input D^-j on row i (zero-based), zero elsewhere."""
        return cls(
            tuple(
                LaurentPoly.monomial(-j, spec) if r == i else LaurentPoly.zero(spec)
                for r in range(k)
            )
        )

    @classmethod
    def from_coefficients(
        cls, coeffs: Sequence[int], depths: Sequence[int], spec: FieldSpec
    ) -> AnticausalInput:
        """Row i gets ``sum_j c_(i,j) D^-j`` for j = 1..depths[i], row-major."""
        comps = []
        pos = 0
        for d in depths:
            terms = {-(j + 1): coeffs[pos + j] for j in range(d) if coeffs[pos + j]}
            comps.append(LaurentPoly.from_terms(terms, spec))
            pos += d
        return cls(tuple(comps))

    def to_pairs(self) -> list[tuple[int, list[int]]]:
        return [c.to_pair() for c in self.components]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def state_of(u: AnticausalInput | Sequence[LaurentPoly | Poly], g: PolyMatrix) -> StateVector:
    """``K(Z(u) G)``; any Laurent row is accepted and its causal part ignored."""
    comps = u.components if isinstance(u, AnticausalInput) else u
    if len(comps) != g.k:
        raise DimensionMismatch(f"input has {len(comps)} components, matrix has {g.k} rows")
    z = [(LaurentPoly.from_poly(c) if isinstance(c, Poly) else c).anticausal() for c in comps]
    return StateVector(tuple(x.causal().to_poly() for x in vec_mul(z, g)))


def _row_depths(g: PolyMatrix) -> list[int]:
    return [max(int(d), 0) for d in g.row_degrees()]


def _state_width(g: PolyMatrix) -> int:
    return max(int(g.max_degree()), 1)


def _unit_states(g: PolyMatrix, depths: Sequence[int]) -> list[StateVector]:
    return [
        state_of(AnticausalInput.unit(i, j, g.k, g.spec), g)
        for i in range(g.k)
        for j in range(1, depths[i] + 1)
    ]


def state_rank(states: Sequence[StateVector], g: PolyMatrix) -> int:
    w = _state_width(g)
    return rank_mod([s.flatten(w) for s in states], g.spec.p)


def oracle_state_dim(g: PolyMatrix) -> tuple[int, list[StateVector]]:
    """dim of the encoding state space (the McMillan degree) by direct computation.

    The states reached from the inputs ``D^-j e_i`` with ``1 <= j <= nu_i``
    span every reachable state, since deeper inputs leave no causal output.
    Returns the rank and an independent subset of those states.
    """
    _require_full_row_rank(g)
    states = _unit_states(g, _row_depths(g))
    w = _state_width(g)
    idx = independent_rows([s.flatten(w) for s in states], g.spec.p)
    return len(idx), [states[i] for i in idx]


def _check_enumerable(spec: FieldSpec, size: int, limit: int = ENUMERATION_LIMIT) -> None:
    if spec.p**size > limit:
        raise TooLargeToEnumerate(f"{spec.p}^{size} combinations exceed {limit}")


def _lattice(spec: FieldSpec, size: int) -> Iterator[tuple[int, ...]]:
    """All coefficient vectors over GF(p) of the given length, zero first."""
    return product(range(spec.p), repeat=size)


def enumerate_states(g: PolyMatrix, limit: int = ENUMERATION_LIMIT) -> set[StateVector]:
    """Every distinct state reached from the anticausal input lattice."""
    _require_full_row_rank(g)
    depths = _row_depths(g)
    _check_enumerable(g.spec, sum(depths), limit)
    return {
        state_of(AnticausalInput.from_coefficients(c, depths, g.spec), g)
        for c in _lattice(g.spec, sum(depths))
    }


# ---------------------------------------------------------------------------
# Code membership
# ---------------------------------------------------------------------------


def _as_rational(x: Entry) -> RationalFn:
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, Poly):
        return RationalFn(x)
    return RationalFn.from_laurent(x)


def _lcm(a: Poly, b: Poly) -> Poly:
    return (a * b) // poly_gcd(a, b)[0]


def _adjugate(m: PolyMatrix) -> list[list[Poly]]:
    size = m.k
    spec = m.spec
    if size == 1:
        return [[Poly.one(spec)]]
    adj = [[Poly.zero(spec)] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            sub = PolyMatrix(
                [[m[r, c] for c in range(size) if c != j] for r in range(size) if r != i], spec
            )
            cof = det(sub)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


@lru_cache(maxsize=128)
def _solver(g: PolyMatrix) -> tuple[tuple[int, ...], Poly, list[list[Poly]]]:
    """First column set J with det G_J != 0, that determinant, and adj(G_J)."""
    _require_full_row_rank(g)
    for cols in combinations(range(g.n), g.k):
        sub = g.select_columns(cols)
        d = det(sub)
        if d:
            return cols, d, _adjugate(sub)
    raise AssertionError("full-rank matrix without a nonzero maximal minor")


def _clear_denominators(v: Sequence[Entry], spec: FieldSpec) -> tuple[list[Poly], Poly]:
    """Polynomial vector ``v * common`` and the multiplier ``common``."""
    if not any(isinstance(x, RationalFn) for x in v):
        lv = [LaurentPoly.from_poly(x) if isinstance(x, Poly) else x for x in v]
        s = -min((x.offset for x in lv if x), default=0)
        s = max(s, 0)
        return [x.shift(s).to_poly() for x in lv], Poly.monomial(s, spec)
    rv = [_as_rational(x) for x in v]
    common = Poly.one(spec)
    for x in rv:
        common = _lcm(common, x.den)
    return [x.num * (common // x.den) for x in rv], common


def in_code(v: Sequence[Entry], g: PolyMatrix) -> tuple[bool, list[RationalFn] | None]:
    """Whether v lies in the row space of g over GF(p)(D), with coordinates.

    With J the first column set whose k x k minor is nonzero, the candidate
    is ``x = v_J G_J^-1 = v_J adj(G_J) / det(G_J)``; membership holds iff
    ``x G == v``, checked in cleared-denominator polynomial form.
    """
    if len(v) != g.n:
        raise DimensionMismatch(f"vector has {len(v)} components, matrix has {g.n} columns")
    spec = g.spec
    cols, d, adj = _solver(g)
    pv, common = _clear_denominators(v, spec)
    # y = v_J adj(G_J), so x = y / (d * common)
    y = [Poly.zero(spec) for _ in range(g.k)]
    for t, c in enumerate(cols):
        for i in range(g.k):
            y[i] = y[i] + pv[c] * adj[t][i]
    yg = vec_mul(y, g)
    member = all(a == b * d for a, b in zip(yg, pv))
    if not member:
        return False, None
    return True, [RationalFn(yi, d * common) for yi in y]


def _causal_part(x: Entry) -> Entry:
    if isinstance(x, RationalFn):
        return x.split()[1]
    if isinstance(x, Poly):
        return x
    return x.causal()


def in_cstar(v: Sequence[Entry], g: PolyMatrix) -> bool:
    """Whether v is a codeword whose causal part is also a codeword."""
    if not in_code(v, g)[0]:
        return False
    return in_code([_causal_part(x) for x in v], g)[0]


# ---------------------------------------------------------------------------
# Basis theorems
# ---------------------------------------------------------------------------


@dataclass
class TheoremReport:
    theorem: int
    passed: bool
    basis_size: int
    rank: int
    expected: int
    details: dict[str, Any] = field(default_factory=dict)
    witness: Any = None

    def to_json(self) -> dict[str, Any]:
        out = {
            "theorem": self.theorem,
            "passed": self.passed,
            "basis_size": self.basis_size,
            "rank": self.rank,
            "expected": self.expected,
            "details": self.details,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _shifted_rows(g: PolyMatrix, coeffs: Sequence[int], depths: Sequence[int]) -> list[LaurentPoly]:
    """``sum_(i,j) c_(i,j) D^-j g_i`` as a Laurent row vector."""
    u = AnticausalInput.from_coefficients(coeffs, depths, g.spec)
    return vec_mul(list(u.components), g)


def verify_theorem1(c: PolyMatrix, limit: int = ENUMERATION_LIMIT) -> TheoremReport:
    """Check that ``{[D^-j g_i]_C : 1 <= j <= e_i}`` is a basis of C/C*.

    Independence: every nonzero GF(p)-combination is enumerated and shown to
    lie outside C*.  Spanning: the set has sum(e_i) elements, matching the
    oracle dimension of the encoding state space of the canonical matrix.
    """
    prof = degree_profile(c)
    if not prof.canonical:
        raise NotCanonical(f"matrix is not canonical (reduced={prof.reduced}, basic={prof.basic})")
    depths = list(prof.row_degrees)
    size = sum(depths)
    _check_enumerable(c.spec, size, limit)
    witness = None
    checked = 0
    for coeffs in _lattice(c.spec, size):
        if not any(coeffs):
            continue
        checked += 1
        v = _shifted_rows(c, coeffs, depths)
        if in_cstar(v, c):
            witness = [x.to_pair() for x in v]
            break
    oracle = oracle_state_dim(c)[0]
    passed = witness is None and oracle == size
    return TheoremReport(
        theorem=1,
        passed=passed,
        basis_size=size,
        rank=oracle,
        expected=size,
        details={"combinations_checked": checked, "forney": depths, "oracle_dim": oracle},
        witness=witness,
    )


def verify_theorem2(g: PolyMatrix) -> TheoremReport:
    """Check that ``{[D^-j e_i]_G : 1 <= j <= nu_i}`` is a basis of Sigma_G.

    Independence: the states of the candidate basis have rank sum(nu_i).
    Spanning: adding states of deeper inputs, down to ``D^-(max nu + 1)`` on
    every row, does not raise the rank.
    """
    prof = degree_profile(g)
    if not prof.reduced:
        raise NotReduced("matrix is not reduced")
    depths = list(prof.row_degrees)
    size = sum(depths)
    independent = state_rank(_unit_states(g, depths), g)
    deep = max(depths) + 1
    spanning = state_rank(_unit_states(g, [deep] * g.k), g)
    oracle = oracle_state_dim(g)[0]
    passed = independent == size and spanning == size and oracle == size
    return TheoremReport(
        theorem=2,
        passed=passed,
        basis_size=size,
        rank=independent,
        expected=size,
        details={"row_degrees": depths, "rank_with_deeper_inputs": spanning, "oracle_dim": oracle},
    )


def verify_theorem3(g: PolyMatrix) -> TheoremReport:
    """Check that ``{[D^-j t_i]_G : 1 <= j <= nu_i}`` is independent in Sigma_G.

    T comes from row reduction, nu from the row degrees of T G.  The set
    must have rank sum(nu_i), which equals intdeg G.
    """
    prof = degree_profile(g)
    cert, r = reduce(g)
    nu = [int(d) for d in r.row_degrees()]
    states = []
    for i in range(g.k):
        t_row = [LaurentPoly.from_poly(x) for x in cert.T.row(i)]
        for j in range(1, nu[i] + 1):
            states.append(state_of([x.shift(-j) for x in t_row], g))
    rank = state_rank(states, g)
    size = sum(nu)
    passed = rank == size == prof.intdeg
    return TheoremReport(
        theorem=3,
        passed=passed,
        basis_size=size,
        rank=rank,
        expected=prof.intdeg,
        details={
            "reduced_row_degrees": nu,
            "intdeg": prof.intdeg,
            "T": cert.T.to_lists(),
            "states": [s.to_lists() for s in states],
        },
    )


# ---------------------------------------------------------------------------
# Minimality
# ---------------------------------------------------------------------------


@dataclass
class StateSpaceReport:
    intdeg: int
    extdeg: int
    oracle_dim: int
    code_degree: int
    forney: tuple[int, ...]
    minimal_encoding: bool
    kernel_witness: AnticausalInput | None = None
    witness_state: StateVector | None = None
    kernel_dim: int | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "intdeg": self.intdeg,
            "extdeg": self.extdeg,
            "oracle_dim": self.oracle_dim,
            "code_degree": self.code_degree,
            "forney": list(self.forney),
            "minimal_encoding": self.minimal_encoding,
            "verdict": "minimal" if self.minimal_encoding else "non-minimal",
            "kernel_dim": self.kernel_dim,
        }
        if self.kernel_witness is not None:
            out["kernel_witness"] = {
                "input": [list(x) for x in self.kernel_witness.to_pairs()],
                "state": self.witness_state.to_lists() if self.witness_state else None,
            }
        return out


def kernel_states(g: PolyMatrix, limit: int = ENUMERATION_LIMIT) -> Iterator[tuple[AnticausalInput, StateVector]]:
    """Lattice inputs u with nonzero state whose codeword uG lies in C*.

    Their states are exactly the nonzero encoding states that map to the
    zero code state.  For anticausal u the state K(uG) is also the causal
    part of the codeword uG, so membership of uG in C* reduces to
    membership of the state in C.  States are assembled by linearity from
    the unit-input states.
    """
    depths = _row_depths(g)
    size = sum(depths)
    _check_enumerable(g.spec, size, limit)
    spec, p = g.spec, g.spec.p
    w = _state_width(g)
    units = [s.flatten(w) for s in _unit_states(g, depths)]
    for coeffs in _lattice(spec, size):
        flat = [0] * (w * g.n)
        for c, unit in zip(coeffs, units):
            if c:
                flat = [(a + c * b) % p for a, b in zip(flat, unit)]
        if not any(flat):
            continue
        state = StateVector(tuple(Poly(flat[j * w : (j + 1) * w], spec) for j in range(g.n)))
        if in_code(list(state.components), g)[0]:
            yield AnticausalInput.from_coefficients(coeffs, depths, spec), state


def minimality_report(
    g: PolyMatrix, find_witness: bool = True, limit: int = ENUMERATION_LIMIT
) -> StateSpaceReport:
    """Compare the encoding's state dimension with the code's.

    The encoding is minimal iff only the zero encoding state maps to the
    zero code state, i.e. iff its McMillan degree equals the sum of the
    Forney indices.  When enumeration is allowed, the kernel of that map is
    computed and a witness is reported for non-minimal encodings.
    """
    prof = degree_profile(g)
    oracle = oracle_state_dim(g)[0]
    _, forney = canonicalize(g)
    code_degree = sum(forney)
    report = StateSpaceReport(
        intdeg=prof.intdeg,
        extdeg=prof.extdeg,
        oracle_dim=oracle,
        code_degree=code_degree,
        forney=forney,
        minimal_encoding=oracle == code_degree,
    )
    if not find_witness:
        return report
    enumerable = g.spec.p ** sum(_row_depths(g)) <= limit
    if not enumerable:
        if not report.minimal_encoding:
            _check_enumerable(g.spec, sum(_row_depths(g)), limit)
        return report
    kernel = list(kernel_states(g, limit))
    report.kernel_dim = state_rank([s for _, s in kernel], g) if kernel else 0
    if kernel:
        report.kernel_witness, report.witness_state = kernel[0]
    return report

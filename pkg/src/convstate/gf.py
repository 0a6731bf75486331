"""Prime fields GF(p) and dense linear algebra over them.

Field elements are plain integers in ``[0, p)`` inside the hot paths
(polynomials, matrices); :class:`FieldElem` wraps a single value with its
field for callers that want operator syntax and field checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DivisionByZero, MixedFields

MAX_PRIME = 65521


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(p)."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"modulus must be an int, got {self.p!r}")
        if not 2 <= self.p <= MAX_PRIME:
            raise ValueError(f"modulus {self.p} outside [2, {MAX_PRIME}]")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def __call__(self, value: int) -> FieldElem:
        return FieldElem(value % self.p, self)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def elements(self) -> list[FieldElem]:
        return [FieldElem(v, self) for v in range(self.p)]

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def check_same(self, other: FieldSpec) -> None:
        if self.p != other.p:
            raise MixedFields(f"GF({self.p}) vs GF({other.p})")


@dataclass(frozen=True)
class FieldElem:
    value: int
    spec: FieldSpec

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.spec.p:
            raise ValueError(f"{self.value} not in [0, {self.spec.p})")

    def _coerce(self, other: FieldElem | int) -> int:
        if isinstance(other, FieldElem):
            self.spec.check_same(other.spec)
            return other.value
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: FieldElem | int) -> FieldElem:
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem((self.value + b) % self.spec.p, self.spec)

    __radd__ = __add__

    def __sub__(self, other: FieldElem | int) -> FieldElem:
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem((self.value - b) % self.spec.p, self.spec)

    def __rsub__(self, other: int) -> FieldElem:
        return FieldElem((other - self.value) % self.spec.p, self.spec)

    def __mul__(self, other: FieldElem | int) -> FieldElem:
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.value * b % self.spec.p, self.spec)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElem:
        return FieldElem(-self.value % self.spec.p, self.spec)

    def inverse(self) -> FieldElem:
        return FieldElem(self.spec.inv(self.value), self.spec)

    def __truediv__(self, other: FieldElem | int) -> FieldElem:
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.value * self.spec.inv(b) % self.spec.p, self.spec)

    def __pow__(self, e: int) -> FieldElem:
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(pow(self.value, e, self.spec.p), self.spec)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.spec.p})"


# ---------------------------------------------------------------------------
# Dense matrices over GF(p), as lists of int rows.
# ---------------------------------------------------------------------------


def echelon(rows: Iterable[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_mod(rows: Iterable[Sequence[int]], p: int) -> int:
    return len(echelon(rows, p)[1])


def left_kernel(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of ``{c : c @ M == 0}`` for the matrix with the given rows."""
    k = len(rows)
    if k == 0:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [int(i == j) for j in range(k)] for i, r in enumerate(rows)]
    # Pivot only on the original columns so the identity block records combinations.
    m = [[x % p for x in r] for r in aug]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, k) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(k):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return [row[ncols:] for row in m[r:]]


def solve_left(rows: Sequence[Sequence[int]], b: Sequence[int], p: int) -> list[int] | None:
    """Some x with ``x @ M == b``, or None when b is outside the row space."""
    k = len(rows)
    kern = left_kernel(list(rows) + [list(b)], p)
    for c in kern:
        if c[k] % p:
            inv = pow(c[k], p - 2, p)
            return [(-x * inv) % p for x in c[:k]]
    return None


def independent_rows(rows: Sequence[Sequence[int]], p: int) -> list[int]:
    """Indices of a greedy maximal independent subset, in input order."""
    chosen: list[int] = []
    basis: list[list[int]] = []
    for i, r in enumerate(rows):
        trial = basis + [list(r)]
        if rank_mod(trial, p) == len(trial):
            basis = trial
            chosen.append(i)
    return chosen


def mat_mul_mod(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum(a[i][t] * b[t][j] for t in range(inner)) % p for j in range(cols)]
        for i in range(len(a))
    ]


def vec_mat_mod(v: Sequence[int], m: Sequence[Sequence[int]], ncols: int, p: int) -> list[int]:
    """Row vector times matrix; ``ncols`` covers the case of an empty matrix."""
    out = [0] * ncols
    for x, row in zip(v, m):
        if x:
            for j, y in enumerate(row):
                out[j] = (out[j] + x * y) % p
    return out

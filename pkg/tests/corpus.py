"""Seeded random matrices for property and acceptance tests."""

from __future__ import annotations

import random

from convstate import FieldSpec, Poly, PolyMatrix, canonicalize, rank_rational

G1 = PolyMatrix.from_lists([[[1, 0, 1], [1, 1, 1]]], 2)
G2 = PolyMatrix.from_lists([[[1], [0], [0, 1]], [[0], [1], [0, 0, 1]]], 2)
G3 = PolyMatrix.from_lists([[[1, 1], [1, 1]]], 2)


def random_poly(rng: random.Random, spec: FieldSpec, maxdeg: int) -> Poly:
    return Poly([rng.randrange(spec.p) for _ in range(rng.randint(0, maxdeg) + 1)], spec)


def random_matrix(rng, p, k, n, maxdeg=3) -> PolyMatrix:
    """Full-rank k x n matrix with entry degrees <= maxdeg."""
    spec = FieldSpec(p)
    while True:
        g = PolyMatrix([[random_poly(rng, spec, maxdeg) for _ in range(n)] for _ in range(k)], spec)
        if rank_rational(g) == k:
            return g


def random_shape(rng):
    k = rng.randint(1, 3)
    return rng.choice([2, 3]), k, rng.randint(k + 1, 4)


def random_unimodular(rng, spec: FieldSpec, size: int, steps: int = 4, maxdeg: int = 2) -> PolyMatrix:
    """Product of random elementary row operations."""
    rows = [list(r) for r in PolyMatrix.identity(size, spec).rows]
    for _ in range(steps):
        kind = rng.random()
        if size > 1 and kind < 0.6:
            a, b = rng.sample(range(size), 2)
            f = random_poly(rng, spec, maxdeg)
            rows[a] = [x + f * y for x, y in zip(rows[a], rows[b])]
        elif size > 1 and kind < 0.8:
            a, b = rng.sample(range(size), 2)
            rows[a], rows[b] = rows[b], rows[a]
        else:
            a = rng.randrange(size)
            c = rng.randrange(1, spec.p)
            rows[a] = [x.scale(c) for x in rows[a]]
    return PolyMatrix(rows, spec)


def random_canonical(rng, p, k, n, maxdeg=3) -> PolyMatrix:
    while True:
        c, forney = canonicalize(random_matrix(rng, p, k, n, maxdeg))
        if max(forney) <= maxdeg:
            return c


def general_corpus(seed: int = 2024, count: int = 200) -> list[PolyMatrix]:
    rng = random.Random(seed)
    out = [G1, G2, G3]
    while len(out) < count:
        out.append(random_matrix(rng, *random_shape(rng)))
    return out


def canonical_corpus(seed: int = 7, count: int = 24) -> list[PolyMatrix]:
    rng = random.Random(seed)
    out = [G1]
    while len(out) < count:
        out.append(random_canonical(rng, *random_shape(rng)))
    return out

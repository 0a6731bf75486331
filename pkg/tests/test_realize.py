import math
import random

import pytest

import corpus
from convstate import (
    DimensionMismatch,
    FieldSpec,
    FormatError,
    LaurentPoly,
    NonCausalDenominator,
    NotReduced,
    Poly,
    PolyMatrix,
    RationalFn,
    SymbolStream,
    controller_realization,
    encode,
    encode_series,
    encoder_step,
    is_reduced,
    oracle_state_dim,
    reduce,
    standard_realization,
)
from convstate.realize import reachable_states, series_to_stream

GF2 = FieldSpec(2)


def stream(rows, p=2):
    spec = FieldSpec(p)
    return SymbolStream(spec, len(rows[0]), tuple(tuple(r) for r in rows))


def random_input(rng, spec, k, length):
    return SymbolStream(spec, k, tuple(tuple(rng.randrange(spec.p) for _ in range(k)) for _ in range(length)))


class TestController:
    def test_g1(self, g1):
        r = controller_realization(g1)
        assert r.m == 2
        assert r.A == [[0, 1], [0, 0]]
        assert r.B == [[1, 0]]
        assert r.C == [[0, 1], [1, 1]]
        assert r.Dm == [[1, 1]]

    def test_memoryless(self):
        g = PolyMatrix.from_lists([[[1], [2], [0]], [[0], [1], [1]]], 3)
        r = controller_realization(g)
        assert r.m == 0
        out = encode(r, stream([[1, 2], [2, 2]], 3))
        assert out.symbols == ((1, 1, 2), (2, 0, 2))

    def test_g2(self, g2):
        assert controller_realization(g2).m == 3

    def test_impulse_response_is_coefficients(self, general):
        for g in general[:50]:
            r = controller_realization(g)
            top = int(g.max_degree())
            for i in range(g.k):
                impulse = [tuple(int(t == 0 and r_ == i) for r_ in range(g.k)) for t in range(top + 2)]
                out = encode(r, SymbolStream(g.spec, g.k, tuple(impulse)))
                for d in range(top + 2):
                    assert list(out.symbols[d]) == g.coefficient_matrix(d)[i]


class TestStandard:
    def test_g1_matches_controller(self, g1):
        assert standard_realization(g1) == controller_realization(g1)

    def test_reduced_g2(self, g2):
        r = standard_realization(reduce(g2)[1])
        assert r.m == 2 == oracle_state_dim(reduce(g2)[1])[0]

    def test_not_reduced(self, g2):
        with pytest.raises(NotReduced):
            standard_realization(g2)

    def test_equals_controller_on_reduced(self, general):
        for g in general:
            if is_reduced(g):
                assert standard_realization(g) == controller_realization(g)


class TestStep:
    def test_impulse_sequence(self, g1):
        r = controller_realization(g1)
        s, v = encoder_step(r, [0, 0], [1])
        assert (s, v) == ([1, 0], [1, 1])
        s, v = encoder_step(r, s, [0])
        assert (s, v) == ([0, 1], [0, 1])
        s, v = encoder_step(r, s, [0])
        assert (s, v) == ([0, 0], [1, 1])

    def test_zero(self, g2):
        r = controller_realization(g2)
        assert encoder_step(r, [0, 0, 0], [0, 0]) == ([0, 0, 0], [0, 0, 0])

    def test_dimension_mismatch(self, g1):
        with pytest.raises(DimensionMismatch):
            encoder_step(controller_realization(g1), [0], [1])


class TestEncode:
    def test_g1_series(self, g1):
        out = series_to_stream(encode_series(g1, [Poly([1, 1], GF2)], 4), 4)
        assert out.symbols == ((1, 1), (1, 0), (1, 0), (1, 1))
        assert encode(controller_realization(g1), stream([[1], [1], [0], [0]])).symbols == out.symbols

    def test_zero_input(self, g2):
        r = controller_realization(g2)
        assert all(not any(s) for s in encode(r, stream([[0, 0]] * 5)).symbols)

    def test_width_mismatch(self, g2):
        with pytest.raises(DimensionMismatch):
            encode(controller_realization(g2), stream([[1]]))

    def test_series_matches_encoder(self, general):
        rng = random.Random(8)
        for g in general[:40]:
            for _ in range(10):
                inp = random_input(rng, g.spec, g.k, 32)
                via_series = series_to_stream(encode_series(g, inp.columns(), 32), 32)
                assert encode(controller_realization(g), inp) == via_series

    def test_rational_generator(self):
        # [1, 1/(1+D)] with input 1 gives (1, 1 + D + D^2 + ...)
        row = [[RationalFn(Poly.one(GF2)), RationalFn(Poly.one(GF2), Poly([1, 1], GF2))]]
        out = encode_series(row, [Poly.one(GF2)], 5)
        assert out[0].known_part() == LaurentPoly(0, [1], GF2)
        assert out[1].known_part() == LaurentPoly(0, [1] * 5, GF2)
        assert out[1].horizon == 5

    def test_rational_noncausal(self):
        row = [[RationalFn(Poly.one(GF2), Poly([0, 1], GF2))]]
        with pytest.raises(NonCausalDenominator):
            encode_series(row, [Poly.one(GF2)], 5)

    def test_laurent_input(self, g1):
        out = encode_series(g1, [LaurentPoly(-1, [1], GF2)], 3)
        assert out[0].known_part() == LaurentPoly(-1, [1, 0, 1], GF2)


class TestReachable:
    def test_g1(self, g1):
        assert len(reachable_states(controller_realization(g1))) == 4

    def test_reduced_corpus(self, general):
        for g in general:
            if is_reduced(g) and g.extdeg() * math.log2(g.spec.p) <= 12:
                r = controller_realization(g)
                assert len(reachable_states(r)) == g.spec.p ** int(g.extdeg())


class TestStreamFormat:
    def test_parse(self):
        s = SymbolStream.parse("# header\n1 0\n\n0 1  # trailing\n", GF2)
        assert s.symbols == ((1, 0), (0, 1))
        assert s.to_text() == "1 0\n0 1\n"

    @pytest.mark.parametrize("text", ["1 2\n", "1 x\n", "1 0\n1\n"])
    def test_rejects(self, text):
        with pytest.raises(FormatError):
            SymbolStream.parse(text, GF2)

    def test_width_enforced(self):
        with pytest.raises(FormatError):
            SymbolStream.parse("1 0\n", GF2, width=1)

import json
import random
import subprocess
import sys

import pytest

import corpus
from conftest import DATA
from convstate import cli
from convstate.realize import SymbolStream

GOLDEN = DATA.parent / "golden"

GOLDEN_CASES = [
    ("minimal_g3.json", ["minimal", "g3.json"]),
    ("analyze_g2_oracle.json", ["analyze", "g2.json", "--oracle"]),
    ("encode_g1_impulse.json", ["encode", "g1.json", "--input", "impulse.txt"]),
]


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def data_args(args):
    return [str(DATA / a) if a.endswith((".json", ".txt")) else a for a in args]


@pytest.mark.parametrize("golden,args", GOLDEN_CASES)
def test_golden(golden, args, capsys):
    code, out, _ = run(data_args(args) + ["--json"], capsys)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


@pytest.mark.parametrize("golden,args", GOLDEN_CASES)
def test_golden_subprocess_stable(golden, args):
    outs = [
        subprocess.run(
            [sys.executable, "-m", "convstate", *args, "--json"],
            cwd=DATA, capture_output=True, check=True,
        ).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1] == (GOLDEN / golden).read_bytes()


def test_golden_contents():
    rep = json.loads((GOLDEN / "minimal_g3.json").read_text())
    assert rep["verdict"] == "non-minimal" and rep["kernel_witness"]["state"] == [[1], [1]]
    rep = json.loads((GOLDEN / "analyze_g2_oracle.json").read_text())
    assert (rep["intdeg"], rep["extdeg"], rep["oracle_dim"], rep["reduced"]) == (2, 3, 2, False)
    rep = json.loads((GOLDEN / "encode_g1_impulse.json").read_text())
    assert rep["output"] == [[1, 1], [0, 1], [1, 1]]


def test_encode_text(capsys):
    code, out, _ = run(data_args(["encode", "g1.json", "--input", "impulse.txt"]), capsys)
    assert code == 0 and out == "1 1\n0 1\n1 1\n"


class TestExitCodes:
    @pytest.mark.parametrize(
        "args",
        [
            ["analyze", "g1.json"],
            ["reduce", "g2.json", "--emit-T"],
            ["smith", "g3.json"],
            ["canonical", "g2.json"],
            ["realize", "g1.json", "--form", "standard"],
            ["oracle", "g2.json"],
            ["verify", "g1.json", "--theorem", "1"],
            ["verify", "g2.json", "--theorem", "3"],
            ["minimal", "g1.json"],
        ],
    )
    def test_ok(self, args, capsys):
        assert run(data_args(args), capsys)[0] == 0

    @pytest.mark.parametrize(
        "args",
        [[], ["frobnicate", "x"], ["verify", "g1.json"], ["verify", "g1.json", "--theorem", "7"],
         ["encode", "g1.json"], ["encode", "g1.json", "--input", "impulse.txt", "--horizon", "-1"]],
    )
    def test_usage(self, args, capsys):
        assert run(data_args(args), capsys)[0] == 1

    @pytest.mark.parametrize(
        "content",
        ["not json", '{"field":{"p":4},"k":1,"n":1,"rows":[[[1]]]}', '{"field":{"p":2},"k":1,"n":2,"rows":[[[1]]]}'],
    )
    def test_format(self, content, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text(content)
        assert run(["analyze", str(f)], capsys)[0] == 2

    def test_missing_file(self, tmp_path, capsys):
        assert run(["analyze", str(tmp_path / "absent.json")], capsys)[0] == 2

    def test_bad_stream(self, tmp_path, capsys):
        f = tmp_path / "s.txt"
        f.write_text("1 1\n")
        assert run(["encode", str(DATA / "g1.json"), "--input", str(f)], capsys)[0] == 2

    @pytest.mark.parametrize(
        "args",
        [
            ["realize", "g2.json", "--form", "standard"],
            ["verify", "g3.json", "--theorem", "1"],
            ["verify", "g2.json", "--theorem", "2"],
            ["analyze", "rankdef.json"],
        ],
    )
    def test_precondition(self, args, tmp_path, capsys):
        (tmp_path / "rankdef.json").write_text('{"field":{"p":2},"k":2,"n":2,"rows":[[[1],[1]],[[1],[1]]]}')
        args = [str(tmp_path / a) if a == "rankdef.json" else a for a in args]
        code, _, err = run(data_args(args), capsys)
        assert code == 3 and "precondition" in err

    def test_verification_failure(self, monkeypatch, capsys):
        real = cli.verify_theorem3

        def broken(g):
            rep = real(g)
            rep.passed = False
            return rep

        monkeypatch.setattr(cli, "verify_theorem3", broken)
        code, _, err = run(data_args(["verify", "g2.json", "--theorem", "3"]), capsys)
        assert code == 4 and "FAILED" in err


def test_json_roundtrip(capsys):
    for args in (["reduce", "g2.json", "--emit-T"], ["smith", "g3.json"], ["realize", "g1.json"], ["verify", "g1.json", "--theorem", "1"]):
        _, out, _ = run(data_args(args) + ["--json"], capsys)
        obj = json.loads(out)
        assert cli.dump_json(obj) + "\n" == out


def test_reduce_json_matches_library(capsys):
    _, out, _ = run(data_args(["reduce", "g2.json", "--emit-T", "--json"]), capsys)
    obj = json.loads(out)
    assert obj["T"] == [[[1], [0]], [[0, 1], [1]]]
    assert obj["extdeg"] == 2


def test_series_and_encoder_byte_identical(tmp_path, capsys):
    rng = random.Random(31)
    for idx, g in enumerate(corpus.general_corpus()[:40]):
        mf = tmp_path / f"g{idx}.json"
        mf.write_text(json.dumps(g.to_json()))
        length = rng.randint(1, 20)
        stream = SymbolStream(
            g.spec, g.k, tuple(tuple(rng.randrange(g.spec.p) for _ in range(g.k)) for _ in range(length))
        )
        sf = tmp_path / f"u{idx}.txt"
        sf.write_text(stream.to_text())
        outs = []
        for via in ("series", "encoder"):
            for extra in ([], ["--horizon", "25"]):
                code, out, _ = run(["encode", str(mf), "--input", str(sf), "--via", via, *extra], capsys)
                assert code == 0
                outs.append(out)
        assert outs[0] == outs[2] and outs[1] == outs[3]

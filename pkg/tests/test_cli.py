import json
import re

import pytest

from segspectral import load_model
from segspectral.cli import DEFAULT_CONFIG, UsageError, load_config, main


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    """Shared corpus, gold file, and trained model for CLI round trips."""
    root = tmp_path_factory.mktemp("cli")
    assert (
        main(
            [
                "synth",
                "--lines",
                str(root / "lines.txt"),
                "--gold",
                str(root / "gold.txt"),
                "--sentences",
                "120",
                "--seed",
                "0",
            ]
        )
        == 0
    )
    assert (
        main(["train", "--input", str(root / "lines.txt"), "--model", str(root / "model.bin")])
        == 0
    )
    return root


def test_synth_is_deterministic(tmp_path):
    for d in ("a", "b"):
        (tmp_path / d).mkdir()
        rc = main(
            [
                "synth",
                "--lines",
                str(tmp_path / d / "l.txt"),
                "--gold",
                str(tmp_path / d / "g.txt"),
                "--sentences",
                "5",
            ]
        )
        assert rc == 0
    assert (tmp_path / "a" / "l.txt").read_bytes() == (tmp_path / "b" / "l.txt").read_bytes()
    gold = (tmp_path / "a" / "g.txt").read_text(encoding="utf-8")
    lines = (tmp_path / "a" / "l.txt").read_text(encoding="utf-8")
    assert [g.replace(" ", "") for g in gold.splitlines()] == lines.splitlines()


def test_train_reports_counts(workdir, capsys):
    model = load_model(workdir / "model.bin")
    assert model.meta.line_count == 120
    assert model.meta.source == "lines.txt"
    main(["train", "--input", str(workdir / "lines.txt"), "--model", str(workdir / "m2.bin")])
    out = capsys.readouterr().out
    assert "trained on 120 lines" in out


def test_segment_eval_round_trip(workdir, capsys):
    pred = workdir / "pred.txt"
    rc = main(
        [
            "segment",
            "--model",
            str(workdir / "model.bin"),
            "--input",
            str(workdir / "lines.txt"),
            "--output",
            str(pred),
            "--eig-cut",
            "1.5",
        ]
    )
    assert rc == 0
    lines = (workdir / "lines.txt").read_text(encoding="utf-8").splitlines()
    seg_lines = pred.read_text(encoding="utf-8").splitlines()
    assert len(seg_lines) == len(lines)
    for raw, seg in zip(lines, seg_lines):
        assert seg.replace(" ", "") == raw

    rc = main(["eval", "--gold", str(workdir / "gold.txt"), "--pred", str(pred)])
    assert rc == 0
    out = capsys.readouterr().out.strip().splitlines()[-1]
    m = re.fullmatch(
        r"R=(\d\.\d{4}) P=(\d\.\d{4}) F=(\d\.\d{4}) gold=(\d+) pred=(\d+) correct=(\d+)", out
    )
    assert m, out
    assert float(m.group(3)) >= 0.9  # near-perfect on the synthetic corpus


def test_segment_to_stdout_preserves_line_count(workdir, tmp_path, capsys):
    src = tmp_path / "three.txt"
    lines = (workdir / "lines.txt").read_text(encoding="utf-8").splitlines()[:2]
    src.write_text(lines[0] + "\n\n" + lines[1] + "\n", encoding="utf-8")
    rc = main(["segment", "--model", str(workdir / "model.bin"), "--input", str(src)])
    assert rc == 0
    out = capsys.readouterr().out.split("\n")
    assert len(out) == 4 and out[3] == ""  # three lines plus trailing newline
    assert out[1] == ""  # empty input line stays empty


def test_segment_missing_files(workdir, capsys):
    rc = main(["segment", "--model", str(workdir / "nope.bin"), "--input", str(workdir / "lines.txt")])
    assert rc == 2
    rc = main(["segment", "--model", str(workdir / "model.bin"), "--input", str(workdir / "nope.txt")])
    assert rc == 2
    assert "not found" in capsys.readouterr().err


def test_segment_corrupt_model(workdir, tmp_path, capsys):
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"garbage")
    rc = main(["segment", "--model", str(bad), "--input", str(workdir / "lines.txt")])
    assert rc == 1
    assert "cannot load model" in capsys.readouterr().err


def test_no_postprocess_flag(workdir, tmp_path, capsys):
    src = tmp_path / "digits.txt"
    src.write_text("12年\n", encoding="utf-8")
    main(["segment", "--model", str(workdir / "model.bin"), "--input", str(src)])
    assert capsys.readouterr().out == "12年\n"
    main(
        [
            "segment",
            "--model",
            str(workdir / "model.bin"),
            "--input",
            str(src),
            "--no-postprocess",
        ]
    )
    assert capsys.readouterr().out == "1 2 年\n"


def test_dump_eigen(workdir, tmp_path):
    src = tmp_path / "two.txt"
    lines = (workdir / "lines.txt").read_text(encoding="utf-8").splitlines()[:2]
    src.write_text("\n".join(lines) + "\n", encoding="utf-8")
    dump = tmp_path / "eig.jsonl"
    rc = main(
        [
            "segment",
            "--model",
            str(workdir / "model.bin"),
            "--input",
            str(src),
            "--output",
            str(tmp_path / "out.txt"),
            "--dump-eigen",
            str(dump),
        ]
    )
    assert rc == 0
    rows = [json.loads(line) for line in dump.read_text(encoding="utf-8").splitlines()]
    assert [r["line"] for r in rows] == [1, 2]
    for r, line in zip(rows, lines):
        assert r["n"] == len(line) == len(r["eigenvalues"])
        assert r["k"] >= 1


def test_eval_errors(workdir, tmp_path, capsys):
    gold = tmp_path / "g.txt"
    pred = tmp_path / "p.txt"
    gold.write_text("天 安\n", encoding="utf-8")
    pred.write_text("天 门\n", encoding="utf-8")
    assert main(["eval", "--gold", str(gold), "--pred", str(pred)]) == 1
    assert "different text" in capsys.readouterr().err
    pred.write_text("天安\n天安\n", encoding="utf-8")
    assert main(["eval", "--gold", str(gold), "--pred", str(pred)]) == 1


def test_sweep_table(workdir, capsys):
    rc = main(
        [
            "sweep",
            "--model",
            str(workdir / "model.bin"),
            "--input",
            str(workdir / "lines.txt"),
            "--gold",
            str(workdir / "gold.txt"),
            "--cuts",
            "0.1,1.5,8.0",
        ]
    )
    assert rc == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[0].split("\t") == ["eig_cut", "mean_k", "mean_words", "F"]
    body = [r.split("\t") for r in rows[1:]]
    assert [r[0] for r in body] == ["0.1", "1.5", "8"]
    mean_ks = [float(r[1]) for r in body]
    assert mean_ks == sorted(mean_ks)
    best_f = max(float(r[3]) for r in body)
    assert best_f >= 0.9


def test_sweep_bad_cuts(workdir, capsys):
    base = [
        "sweep",
        "--model",
        str(workdir / "model.bin"),
        "--input",
        str(workdir / "lines.txt"),
    ]
    assert main(base + ["--cuts", "a,b"]) == 2
    # leading dash needs the = form or argparse eats it as an option
    assert main(base + ["--cuts=-1,2"]) == 2
    assert main(base + ["--cuts", ""]) == 2


def test_lexicon_recipe_flags(workdir, tmp_path, capsys):
    args = [
        "segment",
        "--model",
        str(workdir / "model.bin"),
        "--input",
        str(workdir / "lines.txt"),
        "--output",
        str(tmp_path / "o.txt"),
        "--recipe",
        "lexicon",
    ]
    assert main(args) == 2  # missing --lexicon
    assert "--lexicon" in capsys.readouterr().err
    lex = tmp_path / "lex.tsv"
    lex.write_text("天安\t3\n", encoding="utf-8")
    assert main(args + ["--lexicon", str(lex)]) == 0


def test_trainwords_recipe_flags(workdir, tmp_path):
    stats = tmp_path / "words.tsv"
    stats.write_text("天安\t40\n的\t900\n", encoding="utf-8")
    rc = main(
        [
            "segment",
            "--model",
            str(workdir / "model.bin"),
            "--input",
            str(workdir / "lines.txt"),
            "--output",
            str(tmp_path / "o.txt"),
            "--recipe",
            "train-words",
            "--word-stats",
            str(stats),
        ]
    )
    assert rc == 0


class TestConfig:
    def test_defaults_returned_as_copy(self):
        cfg = load_config(None)
        assert cfg == DEFAULT_CONFIG
        cfg["seed"] = 99
        assert DEFAULT_CONFIG["seed"] == 0

    def test_unknown_key_rejected(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"nope": 1}), encoding="utf-8")
        with pytest.raises(UsageError, match="unknown config keys: nope"):
            load_config(str(p))

    def test_wrong_type_rejected(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"seed": "zero"}), encoding="utf-8")
        with pytest.raises(UsageError, match="seed"):
            load_config(str(p))
        p.write_text(json.dumps({"postprocess": 1}), encoding="utf-8")
        with pytest.raises(UsageError, match="postprocess"):
            load_config(str(p))
        p.write_text(json.dumps({"factor_1": True}), encoding="utf-8")
        with pytest.raises(UsageError, match="factor_1"):
            load_config(str(p))

    def test_int_promotes_to_float(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"factor_1": 8}), encoding="utf-8")
        cfg = load_config(str(p))
        assert cfg["factor_1"] == 8.0 and isinstance(cfg["factor_1"], float)

    def test_bad_json_and_missing_file(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text("{", encoding="utf-8")
        with pytest.raises(UsageError, match="valid JSON"):
            load_config(str(p))
        with pytest.raises(UsageError, match="not found"):
            load_config(str(tmp_path / "absent.json"))
        p.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(UsageError, match="JSON object"):
            load_config(str(p))

    def test_bad_kmeans_init_rejected(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"kmeans_init": "bogus"}), encoding="utf-8")
        with pytest.raises(UsageError, match="kmeans_init"):
            load_config(str(p))

    def test_unknown_key_exits_2_via_cli(self, workdir, tmp_path, capsys):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"mystery": 1}), encoding="utf-8")
        rc = main(
            [
                "segment",
                "--model",
                str(workdir / "model.bin"),
                "--input",
                str(workdir / "lines.txt"),
                "--config",
                str(p),
            ]
        )
        assert rc == 2
        assert "unknown config keys" in capsys.readouterr().err

    def test_env_var_config_applies(self, workdir, tmp_path, capsys, monkeypatch):
        # A huge threshold forces one cluster per character; the output for
        # a pure-CJK line is then fully space-separated single characters.
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"eig_cut_ehr": 1e6}), encoding="utf-8")
        monkeypatch.setenv("SEGSPECTRAL_CONFIG", str(p))
        src = tmp_path / "one.txt"
        line = (workdir / "lines.txt").read_text(encoding="utf-8").splitlines()[0]
        src.write_text(line + "\n", encoding="utf-8")
        rc = main(["segment", "--model", str(workdir / "model.bin"), "--input", str(src)])
        assert rc == 0
        out = capsys.readouterr().out.strip()
        assert out.split(" ") == list(line)


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "segspectral" in capsys.readouterr().out


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2

"""Command-line front end.

Subcommands: train a character n-gram model from raw text, segment lines
with a chosen recipe, score a segmentation against a gold file, sweep the
granularity threshold over a grid, and generate a synthetic benchmark
corpus. Settings come from built-in defaults, optionally overridden by a
flat JSON config file (--config, or the SEGSPECTRAL_CONFIG environment
variable), then by command-line flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .evaluation import SynthSpec, generate_synthetic, parse_segmented, score_corpus
from .graph import (
    SINGLE_CHAR_WORDS,
    WEAKEN_SET_1,
    WEAKEN_SET_2,
    EhrParams,
    load_lexicon,
    load_word_stats,
)
from .kmeans import INIT_EVEN_ROWS, INIT_KMEANS_PP
from .model_io import ModelIOError, load_model, save_model
from .ngram import CorpusEncodingError, ingest_corpus, iter_corpus_lines
from .pipeline import SegmenterConfig, prepare_sentence, segment_document, segment_prepared
from .spectral import LaplacianForm

DEFAULT_CONFIG = {
    "factor_1": 4.0,
    "factor_2": 80.0,
    "weaken_set_1": WEAKEN_SET_1,
    "weaken_set_2": WEAKEN_SET_2,
    "boost": 20.0,
    "rank_threshold": 25000,
    "rank_scale": 1e6,
    "rank_floor": 20.0,
    "single_char_set": SINGLE_CHAR_WORDS,
    "damp_divisor": 250.0,
    "eig_cut_ehr": 0.15,
    "eig_cut_lexicon": 0.00035,
    "eig_cut_train_words": 0.001,
    "jitter_sd": 0.001,
    "kmeans_init": INIT_KMEANS_PP,
    "seed": 0,
    "postprocess": True,
}

_FORMS = {
    "unnorm": LaplacianForm.UNNORMALIZED,
    "sym": LaplacianForm.SYMMETRIC_NORMALIZED,
}


class UsageError(Exception):
    """Bad invocation, config, or missing file; exits with status 2."""


class DataError(Exception):
    """Bad data encountered while running; exits with status 1."""


def _coerce(key: str, value, want: type):
    if want is bool:
        if isinstance(value, bool):
            return value
    elif want is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif want is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif want is str:
        if isinstance(value, str):
            return value
    raise UsageError(f"config key {key!r} expects {want.__name__}, got {value!r}")


def load_config(path: str | None) -> dict:
    """Defaults overlaid with the JSON file at path (or the env var)."""
    cfg = dict(DEFAULT_CONFIG)
    if path is None:
        path = os.environ.get("SEGSPECTRAL_CONFIG") or None
    if path is None:
        return cfg
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsageError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    unknown = sorted(set(raw) - set(cfg))
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    for key, value in raw.items():
        cfg[key] = _coerce(key, value, type(DEFAULT_CONFIG[key]))
    if cfg["kmeans_init"] not in (INIT_KMEANS_PP, INIT_EVEN_ROWS):
        raise UsageError(f"kmeans_init must be {INIT_KMEANS_PP!r} or {INIT_EVEN_ROWS!r}")
    return cfg


def _read_lines(path: str) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UsageError(f"input file not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise DataError(f"{path} is not valid UTF-8: {exc}") from None
    return text.splitlines()


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="\n")


def _write_lines(path: str | None, lines) -> None:
    out = _open_out(path)
    try:
        for line in lines:
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _load_model(path: str):
    if not Path(path).exists():
        raise UsageError(f"model file not found: {path}")
    try:
        return load_model(path)
    except ModelIOError as exc:
        raise DataError(f"cannot load model {path}: {exc}") from None


def _build_recipe(args, cfg: dict):
    if args.recipe == "ehr":
        return EhrParams(
            weaken_set_1=frozenset(cfg["weaken_set_1"]),
            weaken_set_2=frozenset(cfg["weaken_set_2"]),
            factor_1=cfg["factor_1"],
            factor_2=cfg["factor_2"],
        )
    if args.recipe == "lexicon":
        if args.lexicon is None:
            raise UsageError("--recipe lexicon requires --lexicon PATH")
        if not Path(args.lexicon).exists():
            raise UsageError(f"lexicon file not found: {args.lexicon}")
        try:
            return load_lexicon(
                args.lexicon,
                rank_threshold=cfg["rank_threshold"],
                single_char_set=frozenset(cfg["single_char_set"]),
                boost=cfg["boost"],
                rank_floor=cfg["rank_floor"],
                rank_scale=cfg["rank_scale"],
            )
        except ValueError as exc:
            raise DataError(str(exc)) from None
    if args.recipe == "train-words":
        if args.word_stats is None:
            raise UsageError("--recipe train-words requires --word-stats PATH")
        if not Path(args.word_stats).exists():
            raise UsageError(f"word-stats file not found: {args.word_stats}")
        try:
            return load_word_stats(
                args.word_stats, boost=cfg["boost"], damp_divisor=cfg["damp_divisor"]
            )
        except ValueError as exc:
            raise DataError(str(exc)) from None
    raise UsageError(f"unknown recipe: {args.recipe}")


_CONFIG_CUT_KEY = {
    "ehr": "eig_cut_ehr",
    "lexicon": "eig_cut_lexicon",
    "train-words": "eig_cut_train_words",
}


def _build_segmenter_config(args, cfg: dict) -> SegmenterConfig:
    recipe = _build_recipe(args, cfg)
    base = SegmenterConfig.for_recipe(recipe)
    form = _FORMS[args.form] if args.form else base.form
    eig_cut = args.eig_cut if args.eig_cut is not None else cfg[_CONFIG_CUT_KEY[args.recipe]]
    if eig_cut <= 0.0:
        raise UsageError("eig_cut must be positive")
    seed = args.seed if args.seed is not None else cfg["seed"]
    postprocess = cfg["postprocess"] and not args.no_postprocess
    return SegmenterConfig(
        recipe=recipe,
        form=form,
        eig_cut=eig_cut,
        init=cfg["kmeans_init"],
        seed=seed,
        jitter_sd=cfg["jitter_sd"],
        postprocess=postprocess,
    )


def cmd_train(args) -> int:
    if not Path(args.input).exists():
        raise UsageError(f"input file not found: {args.input}")
    source = args.source if args.source is not None else Path(args.input).name
    try:
        model = ingest_corpus(iter_corpus_lines(args.input), source=source)
    except CorpusEncodingError as exc:
        raise DataError(str(exc)) from None
    save_model(model, args.model)
    print(
        f"trained on {model.meta.line_count} lines: "
        f"{len(model.uni)} unigrams, {len(model.bi)} bigrams, {len(model.tri)} trigrams"
    )
    return 0


def cmd_segment(args) -> int:
    cfg = load_config(args.config)
    scfg = _build_segmenter_config(args, cfg)
    model = _load_model(args.model)
    lines = _read_lines(args.input)

    if args.dump_eigen is None:
        segs, errors = segment_document(lines, model, scfg)
    else:
        segs, errors = [], []
        dumps = []
        for lineno, line in enumerate(lines, 1):
            if line == "":
                segs.append([])
                continue
            try:
                trace = segment_prepared(prepare_sentence(line, model, scfg), scfg)
            except Exception as exc:  # noqa: BLE001 - mirror segment_document
                errors.append((lineno, str(exc)))
                segs.append([line])
                continue
            segs.append(trace.words)
            dumps.append(
                {
                    "line": lineno,
                    "n": len(line),
                    "k": trace.k,
                    "eigenvalues": [float(v) for v in trace.eigenvalues],
                }
            )
        _write_lines(
            args.dump_eigen, (json.dumps(d, ensure_ascii=False) for d in dumps)
        )

    _write_lines(args.output, (" ".join(words) for words in segs))
    for lineno, msg in errors:
        print(f"line {lineno}: {msg}", file=sys.stderr)
    return 1 if errors else 0


def cmd_eval(args) -> int:
    gold = [parse_segmented(line) for line in _read_lines(args.gold)]
    pred = [parse_segmented(line) for line in _read_lines(args.pred)]
    try:
        report = score_corpus(gold, pred)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    print(report.summary_line())
    return 0


def _parse_cuts(text: str) -> list[float]:
    try:
        cuts = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"--cuts expects comma-separated numbers, got {text!r}") from None
    if not cuts or any(c <= 0.0 for c in cuts):
        raise UsageError("--cuts needs at least one positive value")
    return sorted(set(cuts))


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    scfg = _build_segmenter_config(args, cfg)
    cuts = _parse_cuts(args.cuts)
    model = _load_model(args.model)
    lines = _read_lines(args.input)
    gold = None
    if args.gold is not None:
        gold = [parse_segmented(line) for line in _read_lines(args.gold)]
        if len(gold) != len(lines):
            raise DataError(
                f"gold has {len(gold)} lines but input has {len(lines)}"
            )

    preps = {}
    errors = []
    for lineno, line in enumerate(lines, 1):
        if line == "":
            continue
        try:
            preps[lineno] = prepare_sentence(line, model, scfg)
        except Exception as exc:  # noqa: BLE001 - per-line isolation
            errors.append((lineno, str(exc)))

    header = ["eig_cut", "mean_k", "mean_words"]
    if gold is not None:
        header.append("F")
    print("\t".join(header))
    for cut in cuts:
        cut_cfg = replace(scfg, eig_cut=cut)
        segs = []
        ks = []
        for lineno, line in enumerate(lines, 1):
            prep = preps.get(lineno)
            if prep is None:
                segs.append([] if line == "" else [line])
                continue
            trace = segment_prepared(prep, cut_cfg)
            segs.append(trace.words)
            ks.append(trace.k)
        mean_k = sum(ks) / len(ks) if ks else 0.0
        nwords = [len(s) for s in segs if s]
        mean_words = sum(nwords) / len(nwords) if nwords else 0.0
        row = [f"{cut:g}", f"{mean_k:.3f}", f"{mean_words:.3f}"]
        if gold is not None:
            row.append(f"{score_corpus(gold, segs).f1:.4f}")
        print("\t".join(row))

    for lineno, msg in errors:
        print(f"line {lineno}: {msg}", file=sys.stderr)
    return 1 if errors else 0


def cmd_synth(args) -> int:
    spec = SynthSpec(
        vocab_size=args.vocab_size,
        word_len=tuple(args.word_len),
        sentence_len=tuple(args.sentence_len),
        sentences=args.sentences,
        seed=args.seed if args.seed is not None else 0,
    )
    try:
        lines, gold = generate_synthetic(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_lines(args.lines, lines)
    _write_lines(args.gold, (" ".join(words) for words in gold))
    return 0


def _add_recipe_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--recipe", choices=("ehr", "lexicon", "train-words"), default="ehr")
    p.add_argument("--lexicon", help="word<TAB>rank file (recipe: lexicon)")
    p.add_argument("--word-stats", help="word<TAB>count file (recipe: train-words)")
    p.add_argument("--eig-cut", type=float, help="granularity threshold override")
    p.add_argument("--form", choices=sorted(_FORMS), help="Laplacian form override")
    p.add_argument("--config", help="JSON config file (else $SEGSPECTRAL_CONFIG)")
    p.add_argument("--seed", type=int, help="clustering seed override")
    p.add_argument("--no-postprocess", action="store_true", help="skip digit/unit merging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="segspectral",
        description="Unsupervised Chinese word segmentation by spectral graph partitioning.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="count n-grams from raw text into a model file")
    p.add_argument("--input", required=True, help="UTF-8 text, one sentence per line")
    p.add_argument("--model", required=True, help="model file to write")
    p.add_argument("--source", help="corpus label stored in the model")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("segment", help="segment lines into space-delimited words")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True, help="UTF-8 text, one sentence per line")
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--dump-eigen", help="also write per-line eigenvalues as JSON lines")
    _add_recipe_flags(p)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("eval", help="score a segmentation against a gold file")
    p.add_argument("--gold", required=True, help="space-delimited words per line")
    p.add_argument("--pred", required=True, help="space-delimited words per line")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="segment at several granularity thresholds")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--cuts", required=True, help="comma-separated thresholds")
    p.add_argument("--gold", help="gold file; adds an F column")
    _add_recipe_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("synth", help="write a synthetic corpus with known boundaries")
    p.add_argument("--lines", required=True, help="raw sentence file to write")
    p.add_argument("--gold", required=True, help="gold segmentation file to write")
    p.add_argument("--vocab-size", type=int, default=20)
    p.add_argument("--word-len", type=int, nargs=2, default=(2, 4), metavar=("LO", "HI"))
    p.add_argument("--sentence-len", type=int, nargs=2, default=(5, 10), metavar=("LO", "HI"))
    p.add_argument("--sentences", type=int, default=500)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

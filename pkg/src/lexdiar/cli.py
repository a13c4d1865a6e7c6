"""Command-line entry point: ``diarize``, ``report``, ``score`` and ``synth``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .io import FormatError, atomic_write_text, read_embeddings, read_rttm, read_words, write_embeddings, write_rttm, write_words
from .pipeline import MODES, PipelineConfig, diarize
from .scoring import RttmParseError, UndefinedDerError, compute_der
from .spectral import NumericalError
from .synth import SynthSpec, generate

log = logging.getLogger("lexdiar")

EXIT_OK, EXIT_NUMERICAL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_grid(text: str) -> list[float]:
    """``"a:b:step"`` inclusive range, or a comma-separated list."""
    try:
        if ":" in text:
            lo, hi, step = (float(x) for x in text.split(":"))
            if step <= 0 or hi < lo:
                raise ValueError
            n = int((hi - lo) / step + 1e-9)
            return [round(lo + i * step, 10) for i in range(n + 1)]
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; expected 'a:b:step'") from None


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    d = PipelineConfig()
    p.add_argument("--mode", choices=MODES, default=d.mode)
    p.add_argument("--window", type=float, default=d.window)
    p.add_argument("--shift", type=float, default=d.shift)
    p.add_argument("--knn", type=int, default=d.knn)
    p.add_argument("--nu", type=int, default=d.nu)
    p.add_argument("--c-grid", type=parse_grid, default=d.c_grid)
    p.add_argument("--min-overlap-fraction", type=float, default=d.min_overlap_fraction)
    p.add_argument("--k-max", type=int, default=d.k_max)
    p.add_argument("--num-speakers", type=int, default=None)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--collar", type=float, default=d.collar)


def _config(args) -> PipelineConfig:
    cfg = PipelineConfig(
        mode=args.mode,
        window=args.window,
        shift=args.shift,
        knn=args.knn,
        nu=args.nu,
        c_grid=list(args.c_grid),
        min_overlap_fraction=args.min_overlap_fraction,
        k_max=args.k_max,
        num_speakers=args.num_speakers,
        seed=args.seed,
        collar=args.collar,
    )
    try:
        cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return cfg


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out) -> None:
    if out:
        atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def _run_pipeline(args):
    cfg = _config(args)
    emb_path = Path(args.embeddings)
    if not emb_path.is_file():
        raise UsageError(f"embeddings file not found: {emb_path}")
    words = None
    if cfg.mode == "full":
        if not args.words:
            raise UsageError("--mode full requires --words")
        if not Path(args.words).is_file():
            raise UsageError(f"words file not found: {args.words}")
        words = read_words(args.words)
    segments, embeddings = read_embeddings(emb_path)
    rec = args.recording_id or emb_path.stem
    return diarize(cfg, segments, embeddings, words, rec)


def cmd_diarize(args) -> int:
    result = _run_pipeline(args)
    write_rttm(args.out, result.entries)
    _emit(_dumps(result.summary()), args.summary)
    return EXIT_OK


def cmd_report(args) -> int:
    result = _run_pipeline(args)
    _emit(_dumps(result.diagnostics()), args.out)
    return EXIT_OK


def cmd_score(args) -> int:
    for p in (args.ref, args.hyp):
        if not Path(p).is_file():
            raise UsageError(f"RTTM file not found: {p}")
    breakdown = compute_der(read_rttm(args.ref), read_rttm(args.hyp), collar=args.collar)
    text = breakdown.to_table() + "\n" if args.table else breakdown.to_json() + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_synth(args) -> int:
    spec = SynthSpec(
        seed=args.seed,
        num_speakers=args.speakers,
        duration=args.duration,
        embedding_dim=args.dim,
        cluster_separation=args.separation,
        embedding_noise_std=args.noise_std,
        turn_prob_hit=args.turn_prob_hit,
        turn_prob_miss=args.turn_prob_miss,
        words_per_second=args.words_per_second,
        mean_turn_length=args.mean_turn_length,
        window=args.window,
        shift=args.shift,
        recording_id=args.recording_id,
    )
    try:
        conv = generate(spec)
    except ValueError as exc:
        raise UsageError(f"invalid synth spec: {exc}") from None
    out, rec = Path(args.out_dir), spec.recording_id
    write_embeddings(out / f"{rec}.csv", conv.segments, conv.embeddings)
    write_words(out / f"{rec}.words.jsonl", conv.words)
    write_rttm(out / f"{rec}.ref.rttm", conv.reference())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexdiar", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in (
        ("diarize", cmd_diarize, "cluster segments and write an RTTM"),
        ("report", cmd_report, "print per-stage eigengap diagnostics as JSON"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--embeddings", required=True, help="segment embeddings CSV")
        p.add_argument("--words", help="words JSON Lines (required in full mode)")
        p.add_argument("--recording-id", help="defaults to the embeddings file stem")
        _add_config_flags(p)
        if name == "diarize":
            p.add_argument("--out", required=True, help="output RTTM path")
            p.add_argument("--summary", help="write the JSON summary here instead of stdout")
        else:
            p.add_argument("--out", help="write the report here instead of stdout")
        p.set_defaults(func=func)

    p = sub.add_parser("score", help="DER of a hypothesis RTTM against a reference")
    p.add_argument("--ref", required=True)
    p.add_argument("--hyp", required=True)
    p.add_argument("--collar", type=float, default=PipelineConfig().collar)
    p.add_argument("--table", action="store_true", help="fixed-width text instead of JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_score)

    d = SynthSpec()
    p = sub.add_parser("synth", help="write a synthetic conversation")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--speakers", type=int, default=d.num_speakers)
    p.add_argument("--duration", type=float, default=d.duration)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--dim", type=int, default=d.embedding_dim)
    p.add_argument("--separation", type=float, default=d.cluster_separation)
    p.add_argument("--noise-std", type=float, default=d.embedding_noise_std)
    p.add_argument("--turn-prob-hit", type=float, default=d.turn_prob_hit)
    p.add_argument("--turn-prob-miss", type=float, default=d.turn_prob_miss)
    p.add_argument("--words-per-second", type=float, default=d.words_per_second)
    p.add_argument("--mean-turn-length", type=float, default=d.mean_turn_length)
    p.add_argument("--window", type=float, default=d.window)
    p.add_argument("--shift", type=float, default=d.shift)
    p.add_argument("--recording-id", default=d.recording_id)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, FormatError, RttmParseError, UndefinedDerError) as exc:
        parser.print_usage(sys.stderr)
        print(f"lexdiar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"lexdiar: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

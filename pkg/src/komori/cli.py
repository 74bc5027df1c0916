"""Command-line entry point.

Exit codes: 0 success, 2 usage or input-format error, 3 domain error
(for example two languages with no comparable concepts).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from komori import __version__, lexicon, lexstat, metrics, miner, text_norm
from komori.errors import EmptyReference, FormatError, KomoriError, LengthMismatch
from komori.fuzzy_index import BkTree

log = logging.getLogger("komori")

EXIT_USAGE = 2
EXIT_DOMAIN = 3
BOM = b"\xef\xbb\xbf"


class UsageError(Exception):
    pass


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _read_lines(path: Path) -> list[Optional[str]]:
    """File lines decoded as UTF-8; None for a line that does not decode."""
    data = Path(path).read_bytes().removeprefix(BOM)
    if not data:
        return []
    chunks = data.split(b"\n")
    if chunks[-1] == b"":
        chunks.pop()
    lines: list[Optional[str]] = []
    for i, chunk in enumerate(chunks, 1):
        try:
            lines.append(chunk.removesuffix(b"\r").decode("utf-8"))
        except UnicodeDecodeError:
            log.warning("%s:%d is not valid UTF-8, skipping", path, i)
            lines.append(None)
    return lines


def _report(args: argparse.Namespace, inputs: dict, config: dict, counts: dict, started: float) -> dict:
    return {
        "subcommand": args.command,
        "inputs": inputs,
        "config": config,
        "counts": counts,
        "wall_time_s": round(time.perf_counter() - started, 6),
        "version": __version__,
    }


def _write_report(path: Path, report: dict) -> None:
    _write_text(path, json.dumps(report, indent=2, ensure_ascii=False) + "\n")


def _sidecar(path: Path) -> Path:
    return path.with_name(path.name + ".report.json")


def cmd_distance_matrix(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    concepts = lexicon.read_concept_list(args.list_file)
    if len(concepts.languages) < 2:
        raise UsageError("a distance matrix needs at least two language columns")
    matrix = lexstat.distance_matrix(concepts)
    out = Path(args.out)
    _write_text(out, matrix.to_tsv())
    counts = {
        "concepts": len(concepts),
        "languages": len(concepts.languages),
        "coverage": {lang: lexicon.coverage(concepts, lang) for lang in concepts.languages},
        "pair_support": {
            f"{a}-{b}": matrix.pair_support[i][j]
            for i, a in enumerate(matrix.languages)
            for j, b in enumerate(matrix.languages)
            if j < i
        },
    }
    _write_report(_sidecar(out), _report(args, {"list_file": str(args.list_file)}, {}, counts, started))
    return 0


def cmd_build_lexicon(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    lines = _read_lines(args.corpus_file)
    texts = [text_norm.normalize(line) for line in lines if line is not None]
    lex = lexicon.Lexicon.from_texts(args.language, texts)
    out = Path(args.out)
    _write_text(out, lexicon.dump_lexicon(lex))
    counts = {
        "lines": len(lines),
        "tokens": sum(len(t.tokens) for t in texts),
        "types": len(lex),
    }
    config = {"language": args.language}
    _write_report(_sidecar(out), _report(args, {"corpus_file": str(args.corpus_file)}, config, counts, started))
    return 0


def _load_corpus(path: Path, column: Optional[str]) -> tuple[list[Optional[str]], list[str], Optional[str], int]:
    """Sentences to filter, the raw lines to echo on retention, header, first data line number."""
    lines = _read_lines(path)
    if column is None:
        return lines, [line if line is not None else "" for line in lines], None, 1
    if not lines or lines[0] is None:
        raise UsageError(f"{path}: missing TSV header")
    header = lines[0]
    names = header.split("\t")
    if column not in names:
        raise UsageError(f"{path}: no column {column!r} in header ({', '.join(names)})")
    idx = names.index(column)
    sentences: list[Optional[str]] = []
    rows: list[str] = []
    for line in lines[1:]:
        if line is None:
            sentences.append(None)
            rows.append("")
            continue
        cells = line.split("\t")
        sentences.append(cells[idx] if idx < len(cells) else None)
        rows.append(line)
    return sentences, rows, header, 2


def _record_json(rec: miner.FilterRecord) -> str:
    return json.dumps(
        {
            "line_no": rec.line_no,
            "retained": rec.retained,
            "coverage": round(rec.coverage, 6),
            "tokens": rec.tokens,
            "matched": rec.matched,
            "matches": [list(m) for m in rec.matches],
        },
        ensure_ascii=False,
    )


def cmd_filter(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    mode = "exact" if args.command == "filter-exact" else "fuzzy"
    try:
        cfg = miner.FilterConfig(
            coverage_threshold=args.coverage,
            similarity_threshold=args.similarity,
            mode=mode,
            min_tokens=args.min_tokens,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")

    sentences, rows, header, first_line = _load_corpus(Path(args.corpus_file), args.column)
    lex = lexicon.read_lexicon(args.lexicon_file)
    if not lex.words:
        log.warning("lexicon %s is empty; nothing can be retained", args.lexicon_file)
    stats = miner.FilterStats()
    if mode == "exact":
        records = miner.filter_exact(sentences, lex, cfg, first_line=first_line, stats=stats)
    else:
        tree = BkTree(lex.words)
        records = miner.filter_fuzzy(
            sentences, tree, cfg, first_line=first_line, workers=args.threads, stats=stats
        )

    written = []
    seen: set[str] = set()
    for rec, row in zip(records, rows):
        if not rec.retained:
            continue
        if args.dedup:
            if rec.original in seen:
                continue
            seen.add(rec.original)
        written.append(row)

    prefix = args.out
    retained_path = Path(f"{prefix}.retained.txt")
    records_path = Path(f"{prefix}.records.jsonl")
    out_lines = ([header] if header is not None else []) + written
    _write_text(retained_path, "".join(line + "\n" for line in out_lines))
    _write_text(records_path, "".join(_record_json(r) + "\n" for r in records))

    counts = {
        "lines_in": len(records),
        "lines_retained": sum(r.retained for r in records),
        "lines_written": len(written),
        "token_occurrences": stats.token_occurrences,
        "unique_tokens": stats.unique_tokens,
        "cache_hits": stats.cache_hits,
        "distance_evaluations": stats.evaluations,
        "lexicon_size": len(lex),
    }
    config = {
        "mode": mode,
        "coverage": cfg.coverage_threshold,
        "similarity": cfg.similarity_threshold,
        "min_tokens": cfg.min_tokens,
        "column": args.column,
        "dedup": args.dedup,
    }
    inputs = {"corpus_file": str(args.corpus_file), "lexicon_file": str(args.lexicon_file)}
    _write_report(Path(f"{prefix}.report.json"), _report(args, inputs, config, counts, started))
    log.info("%d of %d lines retained", counts["lines_retained"], counts["lines_in"])
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    wanted = [m.strip() for m in args.metrics.split(",") if m.strip()]
    unknown = [m for m in wanted if m not in metrics.ALL_METRICS]
    if unknown or not wanted:
        raise UsageError(f"--metrics must be a subset of {','.join(metrics.ALL_METRICS)}")
    refs = _read_lines(args.refs_file)
    hyps = _read_lines(args.hyps_file)
    if any(line is None for line in refs + hyps):
        raise UsageError("reference and hypothesis files must be valid UTF-8")
    if len(refs) != len(hyps):
        raise UsageError(f"length mismatch: {len(refs)} references vs {len(hyps)} hypotheses")
    scores = metrics.evaluate(refs, hyps, wanted, raw=args.raw)
    payload = json.dumps(scores.to_dict(), ensure_ascii=False) + "\n"
    if args.out:
        out = Path(args.out)
        _write_text(out, payload)
        inputs = {"refs_file": str(args.refs_file), "hyps_file": str(args.hyps_file)}
        config = {"metrics": wanted, "raw": args.raw}
        _write_report(_sidecar(out), _report(args, inputs, config, {"n_pairs": scores.n_pairs}, started))
    else:
        sys.stdout.write(payload)
    return 0


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="komori",
        description="Lexical distance and lexicon-driven corpus filtering for low-resource transfer.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance-matrix", help="pairwise language distances over a concept list TSV")
    p.add_argument("list_file", type=Path)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_distance_matrix)

    p = sub.add_parser("build-lexicon", help="unique normalized words of a corpus")
    p.add_argument("corpus_file", type=Path)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--language", default="")
    p.set_defaults(func=cmd_build_lexicon)

    for name, helptext in (
        ("filter-exact", "keep sentences whose words are mostly in the lexicon"),
        ("filter-fuzzy", "keep sentences whose words mostly have a close lexicon word"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("corpus_file", type=Path)
        p.add_argument("lexicon_file", type=Path)
        p.add_argument("--out", required=True, help="output prefix")
        p.add_argument("--coverage", type=_number, default=0.80, help="minimum covered-token share (0..1)")
        p.add_argument("--similarity", type=_number, default=80.0, help="minimum word similarity (0..100)")
        p.add_argument("--min-tokens", type=int, default=1)
        p.add_argument("--column", default=None, help="filter this column of a TSV with a header row")
        p.add_argument("--dedup", action="store_true", help="drop repeated retained sentences")
        p.add_argument("--threads", type=int, default=1, help="worker processes for fuzzy lookups")
        p.set_defaults(func=cmd_filter)

    p = sub.add_parser("eval", help="WER/CER/ROUGE between parallel reference and hypothesis files")
    p.add_argument("refs_file", type=Path)
    p.add_argument("hyps_file", type=Path)
    p.add_argument("--metrics", default=",".join(metrics.ALL_METRICS))
    p.add_argument("--raw", action="store_true", help="score text without normalization")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    level = os.environ.get("KOMORI_LOG", "WARNING").upper()
    logging.basicConfig(
        level=level if isinstance(logging.getLevelName(level), int) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"komori {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, LengthMismatch, EmptyReference, OSError, UnicodeDecodeError) as exc:
        print(f"komori {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KomoriError as exc:
        print(f"komori {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

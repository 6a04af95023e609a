"""Command-line front end.

Subcommands: train (alias export-arpa), rank, compare, evaluate, grid,
import-check. All outputs are deterministic given identical inputs and
flags; errors go to stderr with exit code 1, usage problems exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Iterator, Optional

from . import _kernels
from .counts import count_corpus
from .errors import HumorLMError, TsvFormatError
from .metrics import ACCURACY_METRICS, DISTANCE_METRICS, GoldTiers, load_gold
from .model import NGramModel, read_arpa, write_arpa
from .ranker import Direction, load_hashtag_file, pairwise, rank, score_hashtag
from .smoothing import estimate_model
from .textprep import PrepConfig

_FLAG_NAMES = ("filter_tags", "filter_urls", "split_punct", "lowercase", "boundaries")
_DIRECTIONS = [d.value for d in Direction]


def _positive_int(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return n


def _fallback_float(value: str) -> float:
    try:
        f = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not 0.0 < f <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in (0, 1], got {value}")
    return f


def _add_prep_flags(p: argparse.ArgumentParser, default: Optional[bool]) -> None:
    for name in _FLAG_NAMES:
        p.add_argument(
            f"--{name.replace('_', '-')}",
            dest=name,
            action=argparse.BooleanOptionalAction,
            default=default,
        )


def _corpus_lines(paths: list[str]) -> Iterator[str]:
    """Concatenate training text: directories contribute every *.tsv inside,
    .tsv files contribute their text column, anything else is read as raw
    lines."""
    files: list[Path] = []
    for p in map(Path, paths):
        if p.is_dir():
            found = sorted(p.glob("*.tsv"))
            if not found:
                raise HumorLMError(f"no .tsv files in directory {p}")
            files.extend(found)
        else:
            files.append(p)
    for fp in files:
        is_tsv = fp.suffix == ".tsv"
        with open(fp, "r", encoding="utf-8") as f:
            for lineno, raw in enumerate(f, start=1):
                line = raw.rstrip("\r\n")
                if not line.strip():
                    continue
                if is_tsv:
                    parts = line.split("\t")
                    if len(parts) < 2:
                        raise TsvFormatError(fp, lineno, "expected an id<TAB>text row")
                    yield parts[1]
                else:
                    yield line


def _train_model(
    corpus: list[str],
    order: int,
    config: PrepConfig,
    fallback: Optional[float],
    direction: str,
) -> tuple[NGramModel, int, int]:
    table = count_corpus(_corpus_lines(corpus), order, config)
    model = estimate_model(table, fallback)
    model.direction = direction
    return model, table.token_count, table.line_count


def cmd_train(args: argparse.Namespace) -> int:
    config = PrepConfig(**{name: bool(getattr(args, name)) for name in _FLAG_NAMES})
    model, tokens, lines = _train_model(
        args.corpus, args.order, config, args.fallback_discount, args.direction
    )
    write_arpa(model, args.output)
    sizes = " ".join(f"{k}={model.ngram_count(k)}" for k in range(1, model.order + 1))
    print(
        f"trained order-{model.order} model on {tokens} tokens "
        f"({lines} lines), vocab {len(model.vocab)}"
    )
    print(f"ngram {sizes}")
    print(f"wrote {args.output} [{_kernels.backend_name()} backend]")
    return 0


def _hashtag_files(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for p in map(Path, paths):
        if p.is_dir():
            found = sorted(p.glob("*.tsv"))
            if not found:
                raise HumorLMError(f"no .tsv files in directory {p}")
            files.extend(found)
        else:
            files.append(p)
    return files


def _resolve_scoring(args: argparse.Namespace, model: NGramModel) -> tuple[PrepConfig, Direction]:
    """Scoring config: model metadata, overridden by any explicit flags."""
    overrides = {
        name: getattr(args, name)
        for name in _FLAG_NAMES
        if getattr(args, name) is not None
    }
    if model.config is None:
        config = PrepConfig(**{n: overrides.get(n, False) for n in _FLAG_NAMES})
    else:
        config = replace(model.config, **overrides) if overrides else model.config
    direction = args.direction or model.direction
    if direction is None:
        raise HumorLMError(
            "model file carries no direction metadata; pass --direction"
        )
    return config, Direction(direction)


def _rank_hashtags(args: argparse.Namespace):
    model = read_arpa(args.model)
    config, direction = _resolve_scoring(args, model)
    for fp in _hashtag_files(args.hashtags):
        hs = load_hashtag_file(fp)
        ranked = rank(score_hashtag(hs, model, config), direction)
        yield hs.hashtag_name, ranked


def cmd_rank(args: argparse.Namespace) -> int:
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, ranked in _rank_hashtags(args):
        out = outdir / f"{name}_PREDICT_B.tsv"
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            for st in ranked:
                f.write(st.tweet_id + "\n")
        print(f"wrote {out} ({len(ranked)} tweets)")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, ranked in _rank_hashtags(args):
        pairs = pairwise(ranked)
        out = outdir / f"{name}_PREDICT_A.tsv"
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            for a, b, label in pairs:
                f.write(f"{a}\t{b}\t{label}\n")
        print(f"wrote {out} ({len(pairs)} pairs)")
    return 0


def _read_predictions_a(path: Path) -> list[tuple[str, str, int]]:
    pairs = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3 or parts[2] not in ("0", "1"):
                raise TsvFormatError(path, lineno, "expected id_a<TAB>id_b<TAB>0|1")
            pairs.append((parts[0], parts[1], int(parts[2])))
    return pairs


def _read_predictions_b(path: Path) -> list[str]:
    with open(path, "r", encoding="utf-8") as f:
        return [line.rstrip("\r\n") for line in f if line.strip()]


def _evaluate_hashtag(
    name: str,
    gold: GoldTiers,
    pred_dir: Path,
    accuracy_fn,
    distance_fn,
) -> tuple[float, float]:
    path_a = pred_dir / f"{name}_PREDICT_A.tsv"
    path_b = pred_dir / f"{name}_PREDICT_B.tsv"
    if not path_a.exists() or not path_b.exists():
        raise HumorLMError(f"hashtag {name}: missing prediction file(s) in {pred_dir}")
    accuracy = accuracy_fn(_read_predictions_a(path_a), gold)
    distance = distance_fn(_read_predictions_b(path_b), gold)
    return accuracy, distance


def _write_report(rows: list[tuple[str, float, float]], out) -> None:
    out.write("hashtag\taccuracy\tdistance\n")
    for name, accuracy, distance in rows:
        out.write(f"{name}\t{accuracy!r}\t{distance!r}\n")
    if rows:
        macro_a = sum(r[1] for r in rows) / len(rows)
        macro_d = sum(r[2] for r in rows) / len(rows)
        out.write(f"macro-average\t{macro_a!r}\t{macro_d!r}\n")


def cmd_evaluate(args: argparse.Namespace) -> int:
    gold_files = _hashtag_files(args.gold)
    pred_dir = Path(args.predictions)
    accuracy_fn = ACCURACY_METRICS[args.accuracy_metric]
    distance_fn = DISTANCE_METRICS[args.distance_metric]
    rows = []
    for fp in sorted(gold_files, key=lambda p: p.stem):
        gold = load_gold(fp)
        try:
            accuracy, distance = _evaluate_hashtag(
                fp.stem, gold, pred_dir, accuracy_fn, distance_fn
            )
        except HumorLMError as e:
            raise HumorLMError(f"hashtag {fp.stem}: {e}") from None
        rows.append((fp.stem, accuracy, distance))
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            _write_report(rows, f)
        print(f"wrote {args.output} ({len(rows)} hashtags)")
    else:
        _write_report(rows, sys.stdout)
    return 0


def cmd_import_check(args: argparse.Namespace) -> int:
    model = read_arpa(args.model)
    sizes = " ".join(f"{k}={model.ngram_count(k)}" for k in range(1, model.order + 1))
    print(f"ok: order-{model.order} model, vocab {len(model.vocab)}")
    print(f"ngram {sizes}")
    if model.config is not None:
        flags = " ".join(
            f"{n}={'true' if getattr(model.config, n) else 'false'}" for n in _FLAG_NAMES
        )
        print(f"metadata: {flags} direction={model.direction or '-'}")
    else:
        print("metadata: none (foreign file; pass prep flags and --direction to rank)")
    return 0


def _grid_paths(value) -> list[str]:
    if isinstance(value, str):
        return [value]
    if isinstance(value, list) and all(isinstance(v, str) for v in value):
        return list(value)
    raise HumorLMError("grid config: corpus paths must be a string or list of strings")


def _run_grid_row(
    idx: int,
    row: dict,
    corpora: dict,
    hashtag_files: list[Path],
    gold_by_name: Optional[dict[str, GoldTiers]],
    fallback: Optional[float],
    outdir: Path,
) -> tuple[str, ...]:
    dataset = row.get("dataset")
    if dataset not in corpora:
        raise HumorLMError(f"grid row {idx}: unknown dataset {dataset!r}")
    order = int(row.get("order", 3))
    if order < 1:
        raise HumorLMError(f"grid row {idx}: order must be >= 1")
    flags = {name: bool(row.get(name, False)) for name in _FLAG_NAMES}
    config = PrepConfig(**flags)
    direction = row.get("direction", "most-like")
    if direction not in _DIRECTIONS:
        raise HumorLMError(f"grid row {idx}: bad direction {direction!r}")

    row_dir = outdir / f"row_{idx:02d}"
    row_dir.mkdir(parents=True, exist_ok=True)
    model, _, _ = _train_model(
        _grid_paths(corpora[dataset]), order, config, fallback, direction
    )
    write_arpa(model, row_dir / "model.arpa")

    results = []
    for fp in hashtag_files:
        hs = load_hashtag_file(fp)
        ranked = rank(score_hashtag(hs, model, config), Direction(direction))
        with open(row_dir / f"{hs.hashtag_name}_PREDICT_B.tsv", "w", encoding="utf-8", newline="\n") as f:
            for st in ranked:
                f.write(st.tweet_id + "\n")
        with open(row_dir / f"{hs.hashtag_name}_PREDICT_A.tsv", "w", encoding="utf-8", newline="\n") as f:
            for a, b, label in pairwise(ranked):
                f.write(f"{a}\t{b}\t{label}\n")
        if gold_by_name is not None:
            gold = gold_by_name[hs.hashtag_name]
            ranked_ids = [st.tweet_id for st in ranked]
            results.append(
                (hs.hashtag_name, ACCURACY_METRICS["pairwise-tier"](pairwise(ranked), gold),
                 DISTANCE_METRICS["tier-inversion"](ranked_ids, gold))
            )

    if results:
        with open(row_dir / "report.tsv", "w", encoding="utf-8", newline="\n") as f:
            _write_report(results, f)
        macro_a = repr(sum(r[1] for r in results) / len(results))
        macro_d = repr(sum(r[2] for r in results) / len(results))
    else:
        macro_a = macro_d = "NA"
    return (
        str(idx),
        str(dataset),
        str(order),
        *("true" if flags[n] else "false" for n in _FLAG_NAMES),
        direction,
        macro_a,
        macro_d,
    )


def _worker_cap(n_tasks: int) -> int:
    cap = os.cpu_count() or 1
    env = os.environ.get("HUMORLM_THREADS")
    if env:
        try:
            cap = min(cap, int(env))
        except ValueError:
            raise HumorLMError(f"HUMORLM_THREADS must be an integer, got {env!r}") from None
    return max(1, min(cap, n_tasks))


def cmd_grid(args: argparse.Namespace) -> int:
    with open(args.config, "r", encoding="utf-8") as f:
        try:
            cfg = json.load(f)
        except json.JSONDecodeError as e:
            raise HumorLMError(f"grid config {args.config}: {e}") from None
    for required in ("corpora", "hashtags", "rows"):
        if required not in cfg:
            raise HumorLMError(f"grid config: missing {required!r} key")
    corpora = cfg["corpora"]
    rows = cfg["rows"]
    if not isinstance(rows, list) or not rows:
        raise HumorLMError("grid config: rows must be a non-empty list")
    hashtag_files = _hashtag_files(_grid_paths(cfg["hashtags"]))
    gold_by_name: Optional[dict[str, GoldTiers]] = None
    if cfg.get("gold"):
        gold_by_name = {
            fp.stem: load_gold(fp) for fp in _hashtag_files(_grid_paths(cfg["gold"]))
        }
        for fp in hashtag_files:
            if fp.stem not in gold_by_name:
                raise HumorLMError(f"no gold file for hashtag {fp.stem}")
    fallback = cfg.get("fallback_discount")
    if fallback is not None and not 0.0 < float(fallback) <= 1.0:
        raise HumorLMError(f"grid config: fallback_discount must be in (0, 1], got {fallback}")
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)

    workers = _worker_cap(len(rows))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        report_rows = list(
            pool.map(
                lambda ir: _run_grid_row(
                    ir[0], ir[1], corpora, hashtag_files, gold_by_name, fallback, outdir
                ),
                enumerate(rows, start=1),
            )
        )

    header = ("row", "dataset", "order", *_FLAG_NAMES, "direction", "accuracy", "distance")
    report_path = outdir / "grid_report.tsv"
    with open(report_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\t".join(header) + "\n")
        for r in report_rows:
            f.write("\t".join(r) + "\n")
    print(f"wrote {report_path} ({len(report_rows)} rows)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="humorlm",
        description="N-gram language models for ranking tweets by log probability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("train", "count a corpus, estimate a model, write it as ARPA"),
        ("export-arpa", "alias of train"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("corpus", nargs="+", help="corpus file(s) or directory of .tsv files")
        p.add_argument("-o", "--output", required=True, help="ARPA file to write")
        p.add_argument("--order", type=_positive_int, default=3)
        p.add_argument("--fallback-discount", type=_fallback_float, default=None)
        p.add_argument("--direction", choices=_DIRECTIONS, default="most-like")
        _add_prep_flags(p, default=False)
        p.set_defaults(func=cmd_train)

    for name, func, help_text in (
        ("rank", cmd_rank, "write <hashtag>_PREDICT_B.tsv rankings"),
        ("compare", cmd_compare, "write <hashtag>_PREDICT_A.tsv pairwise predictions"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("hashtags", nargs="+", help="hashtag .tsv file(s) or directory")
        p.add_argument("-m", "--model", required=True, help="ARPA model file")
        p.add_argument("-d", "--output-dir", default=".")
        p.add_argument("--direction", choices=_DIRECTIONS, default=None)
        _add_prep_flags(p, default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("evaluate", help="score predictions against gold tiers")
    p.add_argument("gold", nargs="+", help="gold .tsv file(s) or directory")
    p.add_argument("-p", "--predictions", required=True, help="directory of *_PREDICT_*.tsv")
    p.add_argument("-o", "--output", default=None, help="report TSV (default stdout)")
    p.add_argument("--accuracy-metric", choices=sorted(ACCURACY_METRICS), default="pairwise-tier")
    p.add_argument("--distance-metric", choices=sorted(DISTANCE_METRICS), default="tier-inversion")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("grid", help="run a settings grid from a JSON config")
    p.add_argument("config", help="JSON grid description")
    p.add_argument("-d", "--output-dir", required=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("import-check", help="validate an ARPA file and print a summary")
    p.add_argument("model")
    p.set_defaults(func=cmd_import_check)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HumorLMError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

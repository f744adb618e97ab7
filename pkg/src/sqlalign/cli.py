"""Command-line front end.

Commands:
  templates  derive structural templates from a corpus
  align      KL-alignment and template-overlap of sources against a target
  ar         alignment ratio of a training set vs baseline predictions
  sample     deterministic sub-sampling of a corpus
  patterns   traceable-pattern count diff between two corpora

Every report embeds the full run configuration, JSON output has sorted keys
and fixed 6-decimal floats, so identical inputs and flags produce
byte-identical reports. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import asdict, dataclass

from .corpus import Corpus, SampleSpec, load_corpus, sample_corpus, templatize_corpus, write_templates
from .errors import SqlAlignError
from .metrics import DEFAULT_ALPHA, AlignmentScore, alignment_ratio, batch_align, ovlp_ratio
from .ngrams import DEFAULT_L_MAX, write_distribution
from .patterns import count_patterns, diff_pattern_counts

log = logging.getLogger("sqlalign")


@dataclass
class RunConfig:
    """Everything that influenced a run; echoed into every report."""

    l_max: int = DEFAULT_L_MAX
    alpha: float = DEFAULT_ALPHA
    c_mode: str = "max_in_batch"
    c: float | None = None
    seed: int = 0
    sql_field: str = "sql"
    question_field: str | None = None
    group_field: str | None = None
    input_format: str | None = None
    skip_bad_rows: bool = False
    output_format: str = "json"
    log_base: str = "e"  # divergences are in nats

    def as_dict(self) -> dict:
        return asdict(self)


def _json_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, int):
        return str(value)
    if value is None:
        return "null"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        items = sorted(value.items(), key=lambda kv: str(kv[0]))
        return "{" + ", ".join(
            f"{json.dumps(str(k), ensure_ascii=False)}: {_json_value(v)}" for k, v in items
        ) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_report(report: dict) -> str:
    """Deterministic JSON: sorted keys, floats with 6 decimals, one
    trailing newline."""
    return _json_value(report) + "\n"


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _write_csv(path: str | None, fieldnames: list[str], rows: list[dict]) -> None:
    def fmt(value):
        if isinstance(value, float):
            return f"{value:.6f}"
        return "" if value is None else value

    out = sys.stdout if path is None else open(path, "w", encoding="utf-8", newline="")
    try:
        writer = csv.DictWriter(out, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: fmt(v) for k, v in row.items()})
    finally:
        if path is not None:
            out.close()


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; our contract reserves 2 for data
    errors, so remap usage problems to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _field_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sql-field", default="sql",
                        help="row field holding the SQL string (default: sql)")
    parser.add_argument("--question-field", default=None,
                        help="row field holding the natural-language question")
    parser.add_argument("--group-field", default=None,
                        help="row field holding the database / domain id used for grouping")
    parser.add_argument("--input-format", choices=("json", "jsonl", "csv"), default=None,
                        help="container format (default: inferred from file extension)")
    parser.add_argument("--skip-bad-rows", action="store_true",
                        help="skip and count rows without usable SQL instead of failing")


def _metric_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--l-max", type=int, default=DEFAULT_L_MAX,
                        help=f"maximum n-gram length (default: {DEFAULT_L_MAX})")
    parser.add_argument("--alpha", type=float, default=DEFAULT_ALPHA,
                        help=f"additive smoothing constant (default: {DEFAULT_ALPHA})")


def _output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", default=None,
                        help="output file (default: stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="report format (default: json)")


def _load(args, path, kind) -> Corpus:
    return load_corpus(path, sql_field=args.sql_field,
                       question_field=args.question_field,
                       group_field=args.group_field, name=str(path), kind=kind,
                       input_format=args.input_format,
                       skip_bad_rows=args.skip_bad_rows)


def _config(args, c_mode=None, c=None, seed=0) -> RunConfig:
    return RunConfig(
        l_max=getattr(args, "l_max", DEFAULT_L_MAX),
        alpha=getattr(args, "alpha", DEFAULT_ALPHA),
        c_mode=c_mode or "max_in_batch",
        c=c,
        seed=seed,
        sql_field=args.sql_field,
        question_field=args.question_field,
        group_field=args.group_field,
        input_format=args.input_format,
        skip_bad_rows=args.skip_bad_rows,
        output_format=getattr(args, "format", "json"),
    )


# -- commands ------------------------------------------------------------


def cmd_templates(args) -> int:
    corpus = _load(args, args.input, kind="train")
    result = templatize_corpus(corpus, l_max=args.l_max)
    if args.output:
        write_templates(result.templates, args.output)
    else:
        for template in result.templates:
            print(template.canonical_text)
    if args.distribution:
        write_distribution(result.distribution, args.distribution)
    if args.report:
        report = {
            "config": _config(args).as_dict(),
            "corpus": corpus.name,
            "n_records": len(corpus),
            "parsed": result.parsed,
            "failed": result.failed,
            "failures": [{"index": i, "message": m} for i, m in result.failures],
        }
        _write_text(args.report, dumps_report(report))
    print(f"{corpus.name}: parsed={result.parsed} failed={result.failed}",
          file=sys.stderr)
    return 0


def cmd_align(args) -> int:
    config = _config(args, c_mode="fixed" if args.c is not None else "max_in_batch",
                     c=args.c)
    target_corpus = _load(args, args.target, kind="target")
    target = templatize_corpus(target_corpus, l_max=args.l_max)
    target_set = {t.canonical_text for t in target.templates}

    prepared = []  # (source_path, corpus, result) or (source_path, error)
    for source_path in args.source:
        try:
            source_corpus = _load(args, source_path, kind="train")
            prepared.append((source_path, source_corpus,
                             templatize_corpus(source_corpus, l_max=args.l_max)))
        except (SqlAlignError, OSError) as exc:
            prepared.append((source_path, exc, None))

    successes = [p for p in prepared if p[2] is not None]
    scores: dict[str, AlignmentScore] = {}
    if successes:
        aligned = batch_align(target.distribution,
                              [p[2].distribution for p in successes],
                              alpha=args.alpha, c=args.c)
        scores = {p[0]: score for p, score in zip(successes, aligned)}

    rows = []
    had_errors = False
    for entry in prepared:
        source_path = entry[0]
        if entry[2] is None:
            had_errors = True
            exc = entry[1]
            rows.append({"target": str(args.target), "source": str(source_path),
                         "error": f"{type(exc).__name__}: {exc}"})
            continue
        _, source_corpus, source_result = entry
        score = scores[source_path]
        rows.append({
            "target": str(args.target),
            "source": str(source_path),
            "d_kl": score.d_kl,
            "a_kl": score.a_kl,
            "ovlp": ovlp_ratio(target_set,
                               {t.canonical_text for t in source_result.templates}),
            "c": score.c,
            "alpha": score.alpha,
            "l_max": args.l_max,
            "n_target_queries": len(target_corpus),
            "n_source_queries": len(source_corpus),
            "parse_failures": {"target": target.failed, "source": source_result.failed},
        })

    if args.format == "csv":
        flat = []
        for row in rows:
            row = dict(row)
            failures = row.pop("parse_failures", {})
            row["parse_failures_target"] = failures.get("target")
            row["parse_failures_source"] = failures.get("source")
            flat.append(row)
        fields = ["target", "source", "d_kl", "a_kl", "ovlp", "c", "alpha",
                  "l_max", "n_target_queries", "n_source_queries",
                  "parse_failures_target", "parse_failures_source", "error"]
        _write_csv(args.output, fields, flat)
    else:
        _write_text(args.output, dumps_report({"config": config.as_dict(), "rows": rows}))
    print(f"align: {len(rows)} row(s), {sum(1 for r in rows if 'error' in r)} error(s)",
          file=sys.stderr)
    return 2 if had_errors else 0


def cmd_ar(args) -> int:
    config = _config(args, c_mode="fixed", c=args.c)
    target = templatize_corpus(_load(args, args.target, kind="target"), l_max=args.l_max)
    train = templatize_corpus(_load(args, args.train, kind="train"), l_max=args.l_max)
    pred = templatize_corpus(_load(args, args.pred, kind="prediction"), l_max=args.l_max)
    ratio = alignment_ratio(target.distribution, train.distribution,
                            pred.distribution, alpha=args.alpha, c=args.c)
    report = {
        "config": config.as_dict(),
        "target": str(args.target),
        "train": str(args.train),
        "pred": str(args.pred),
        "ar": ratio.ar,
        "sft_recommended": ratio.ar > 1.0,
        "note": ("heuristic: ar > 1 predicts that fine-tuning on the training "
                 "set improves accuracy on the target; ar <= 1 predicts little "
                 "or negative change"),
        "numerator": asdict(ratio.numerator),
        "denominator": asdict(ratio.denominator),
        "parse_failures": {"target": target.failed, "train": train.failed,
                           "pred": pred.failed},
    }
    _write_text(args.output, dumps_report(report))
    print(f"ar={ratio.ar:.6f} sft_recommended={ratio.ar > 1.0}", file=sys.stderr)
    return 0


def cmd_sample(args) -> int:
    corpus = _load(args, args.input, kind="train")
    spec = SampleSpec(fraction=args.fraction, per_group=args.per_group, seed=args.seed)
    sampled = sample_corpus(corpus, spec)
    lines = []
    for record in sampled.records:
        lines.append(json.dumps(
            {"sql": record.sql, "question": record.question,
             "group_id": record.group_id, "meta": record.meta},
            ensure_ascii=False, sort_keys=True))
    _write_text(args.output, "\n".join(lines) + "\n")
    print(f"sampled {len(sampled)} of {len(corpus)} records (seed={args.seed})",
          file=sys.stderr)
    return 0


def cmd_patterns(args) -> int:
    config = _config(args)
    before = count_patterns(_load(args, args.before, kind="prediction"))
    after = count_patterns(_load(args, args.after, kind="prediction"))
    diff = diff_pattern_counts(before, after)
    if args.format == "csv":
        rows = [{"pattern_id": pid, **entry} for pid, entry in diff.items()]
        _write_csv(args.output, ["pattern_id", "before", "after", "delta", "direction"], rows)
    else:
        report = {
            "config": config.as_dict(),
            "before_corpus": before.corpus_name,
            "after_corpus": after.corpus_name,
            "parse_failures": {"before": before.parse_failures,
                               "after": after.parse_failures},
            "patterns": diff,
        }
        _write_text(args.output, dumps_report(report))
    print(f"patterns: before_failures={before.parse_failures} "
          f"after_failures={after.parse_failures}", file=sys.stderr)
    return 0


# -- argument wiring -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="sqlalign",
        description=("Structural alignment of text-to-SQL corpora: templates, "
                     "n-gram KL-alignment, overlap and pattern statistics."))
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_ArgumentParser)

    p = sub.add_parser("templates",
                       help="derive structural templates from a corpus")
    p.add_argument("input", help="corpus file (json, jsonl or csv)")
    p.add_argument("-o", "--output", default=None,
                   help="templates file, one canonical template per line (default: stdout)")
    p.add_argument("--report", default=None, help="write a JSON parse report here")
    p.add_argument("--distribution", default=None,
                   help="also export the n-gram distribution as JSON")
    _field_options(p)
    _metric_options(p)
    p.set_defaults(func=cmd_templates)

    p = sub.add_parser("align",
                       help="score sources against a target corpus")
    p.add_argument("--target", required=True, help="target corpus file")
    p.add_argument("--source", required=True, action="append",
                   help="source corpus file (repeatable)")
    p.add_argument("--c", type=float, default=None,
                   help="fixed alignment scaling constant; omit for max-in-batch")
    p.add_argument("--c-mode", choices=("max_in_batch", "fixed"), default=None,
                   help="scaling mode (fixed requires --c)")
    _field_options(p)
    _metric_options(p)
    _output_options(p)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("ar",
                       help="alignment ratio of a training set vs baseline predictions")
    p.add_argument("--target", required=True, help="target corpus file")
    p.add_argument("--train", required=True, help="candidate training corpus file")
    p.add_argument("--pred", required=True, help="baseline model prediction dump")
    p.add_argument("--c", type=float, required=True,
                   help="shared scaling constant (required: the ratio needs one c)")
    _field_options(p)
    _metric_options(p)
    p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    p.set_defaults(func=cmd_ar)

    p = sub.add_parser("sample",
                       help="deterministic corpus sub-sampling")
    p.add_argument("input", help="corpus file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fraction", type=float, default=None,
                       help="uniform fraction in (0, 1] of records to keep")
    group.add_argument("--per-group", type=int, default=None,
                       help="records to keep per group id")
    p.add_argument("--seed", type=int, default=0, help="sampler seed (default: 0)")
    p.add_argument("-o", "--output", default=None,
                   help="sampled corpus as JSON-lines (default: stdout)")
    _field_options(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("patterns",
                       help="traceable-pattern count diff between two corpora")
    p.add_argument("--before", required=True, help="corpus before (e.g. base predictions)")
    p.add_argument("--after", required=True, help="corpus after (e.g. post-SFT predictions)")
    _field_options(p)
    _output_options(p)
    p.set_defaults(func=cmd_patterns)

    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if getattr(args, "l_max", 1) < 1:
        parser.error("--l-max must be >= 1")
    if getattr(args, "alpha", 1.0) <= 0:
        parser.error("--alpha must be positive")
    c = getattr(args, "c", None)
    if c is not None and c <= 0:
        parser.error("--c must be positive")
    if getattr(args, "c_mode", None) == "fixed" and c is None:
        parser.error("--c-mode fixed requires --c")
    if getattr(args, "c_mode", None) == "max_in_batch" and c is not None:
        parser.error("--c-mode max_in_batch conflicts with --c")
    fraction = getattr(args, "fraction", None)
    if fraction is not None and not 0 < fraction <= 1:
        parser.error("--fraction must be in (0, 1]")
    per_group = getattr(args, "per_group", None)
    if per_group is not None and per_group < 1:
        parser.error("--per-group must be >= 1")


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.func(args)
    except (SqlAlignError, OSError) as exc:
        print(f"sqlalign: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

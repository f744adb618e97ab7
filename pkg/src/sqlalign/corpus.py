"""Corpus loading, sampling and the templating pipeline.

Corpora arrive as JSON arrays, JSON-lines or CSV files of rows that hold at
least a SQL string; the caller names the fields explicitly. Records keep an
open metadata map with whatever other fields the row carried.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyCorpusError, FormatError
from .ngrams import DEFAULT_L_MAX, NGramDistribution, build_distribution
from .parsing import ParseError
from .templates import StructuralTemplate, templatize

log = logging.getLogger(__name__)

CORPUS_KINDS = ("train", "target", "prediction")


@dataclass(frozen=True)
class CorpusRecord:
    """One (question, SQL, group) row. The question may be empty, e.g. in
    model prediction dumps; the SQL may not."""

    sql: str
    question: str = ""
    group_id: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.sql.strip():
            raise ValueError("record sql must be non-empty")


@dataclass(frozen=True)
class Corpus:
    name: str
    kind: str
    records: tuple[CorpusRecord, ...]

    def __post_init__(self):
        if self.kind not in CORPUS_KINDS:
            raise ValueError(f"unknown corpus kind {self.kind!r}; expected one of {CORPUS_KINDS}")
        if not self.records:
            raise ValueError("corpus must contain at least one record")

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class SampleSpec:
    """Either a uniform fraction of the corpus or up to per_group records
    from every group, drawn without replacement by a seeded Mersenne
    Twister (random.Random). Original record order is preserved."""

    fraction: float | None = None
    per_group: int | None = None
    seed: int = 0

    def __post_init__(self):
        if (self.fraction is None) == (self.per_group is None):
            raise ValueError("specify exactly one of fraction and per_group")
        if self.fraction is not None and not 0 < self.fraction <= 1:
            raise ValueError("fraction must be in (0, 1]")
        if self.per_group is not None and self.per_group < 1:
            raise ValueError("per_group must be >= 1")


def _iter_rows(path: Path, input_format: str):
    """Yield (row_index, dict) pairs from a corpus file."""
    if input_format == "json":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, list):
            raise FormatError("expected a JSON array of objects")
        for i, row in enumerate(data):
            if not isinstance(row, dict):
                raise FormatError("expected a JSON object", row=i)
            yield i, row
    elif input_format == "jsonl":
        i = 0
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise FormatError(f"invalid JSON line: {exc}", row=i) from exc
                if not isinstance(row, dict):
                    raise FormatError("expected a JSON object", row=i)
                yield i, row
                i += 1
    elif input_format == "csv":
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise FormatError("CSV file has no header row")
            for i, row in enumerate(reader):
                yield i, row
    else:
        raise FormatError(f"unknown input format {input_format!r}")


def _detect_format(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix in (".jsonl", ".ndjson"):
        return "jsonl"
    if suffix == ".csv":
        return "csv"
    raise FormatError(
        f"cannot infer format from {path.name!r}; pass input_format json, jsonl or csv")


def load_corpus(path, sql_field: str = "sql", question_field: str | None = None,
                group_field: str | None = None, name: str | None = None,
                kind: str = "train", input_format: str | None = None,
                skip_bad_rows: bool = False) -> Corpus:
    """Load one corpus file into records.

    A row missing the SQL field (or holding an empty one) raises
    FormatError naming the row; with skip_bad_rows the row is dropped and
    counted in a warning instead. Question and group fields are optional
    and default to "" when absent. All remaining row fields land in meta.
    """
    path = Path(path)
    fmt = input_format or _detect_format(path)
    records: list[CorpusRecord] = []
    skipped = 0
    for i, row in _iter_rows(path, fmt):
        sql = row.get(sql_field)
        if sql is None or not str(sql).strip():
            if skip_bad_rows:
                skipped += 1
                log.warning("%s row %d: missing or empty field %r, skipped", path, i, sql_field)
                continue
            raise FormatError(f"missing or empty field {sql_field!r}", row=i)
        question = str(row.get(question_field) or "") if question_field else ""
        group_id = str(row.get(group_field) or "") if group_field else ""
        claimed = {sql_field, question_field, group_field}
        meta = {k: v for k, v in row.items() if k not in claimed}
        records.append(CorpusRecord(sql=str(sql), question=question,
                                    group_id=group_id, meta=meta))
    if skipped:
        log.warning("%s: skipped %d bad row(s)", path, skipped)
    if not records:
        raise EmptyCorpusError(f"{path} contains no usable records")
    return Corpus(name=name or str(path), kind=kind, records=tuple(records))


def sample_corpus(corpus: Corpus, spec: SampleSpec) -> Corpus:
    """Draw a deterministic sample without replacement.

    fraction mode keeps ceil(fraction * n) records chosen uniformly;
    per_group mode keeps min(per_group, group size) records from each
    distinct group_id. Identical (seed, corpus) inputs reproduce identical
    samples; selected records stay in their original order.
    """
    rng = random.Random(spec.seed)
    n = len(corpus.records)
    if spec.fraction is not None:
        k = math.ceil(spec.fraction * n)
        chosen = sorted(rng.sample(range(n), k))
    else:
        groups: dict[str, list[int]] = {}
        for i, record in enumerate(corpus.records):
            groups.setdefault(record.group_id, []).append(i)
        picked: list[int] = []
        for indices in groups.values():
            picked.extend(rng.sample(indices, min(spec.per_group, len(indices))))
        chosen = sorted(picked)
    return Corpus(name=corpus.name, kind=corpus.kind,
                  records=tuple(corpus.records[i] for i in chosen))


@dataclass
class TemplatizeResult:
    """Templates and pooled distribution of one corpus, plus the parse
    accounting (parsed + failed == record count)."""

    templates: list[StructuralTemplate]
    distribution: NGramDistribution
    parsed: int
    failed: int
    failures: list[tuple[int, str]]


def templatize_corpus(corpus: Corpus, l_max: int = DEFAULT_L_MAX) -> TemplatizeResult:
    """Parse every record, derive templates and build the distribution.

    Records that fail to parse are recorded and excluded; if nothing
    parses, EmptyDistributionError propagates from the distribution
    builder.
    """
    templates: list[StructuralTemplate] = []
    failures: list[tuple[int, str]] = []
    for i, record in enumerate(corpus.records):
        try:
            templates.append(templatize(record.sql))
        except ParseError as exc:
            failures.append((i, str(exc)))
    distribution = build_distribution(templates, l_max=l_max, source_label=corpus.name)
    return TemplatizeResult(templates=templates, distribution=distribution,
                            parsed=len(templates), failed=len(failures),
                            failures=failures)


def write_templates(templates, path) -> None:
    """One canonical template per line, UTF-8, LF line endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for template in templates:
            fh.write(template.canonical_text + "\n")

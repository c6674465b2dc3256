"""Gold-annotation scoring and method comparison.

Buckets each annotated term by where the gold best match landed in a
method's top-five results (first / top-five / no-result), compares methods
on top-five coverage, and reports dataset statistics.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .catalog import KINDS, CatalogTerm, OntologyCatalog, ProprietaryCatalog, RawRecipeSet
from .errors import DataFormatError, RuleBridgeError
from .pipeline import TranslationResult

LABEL_BEST_MATCH = "best_match"
LABEL_AMBIGUOUS = "ambiguous"
LABEL_NONE = "none"
LABELS = (LABEL_BEST_MATCH, LABEL_AMBIGUOUS, LABEL_NONE)

TOP_CUT = 5


@dataclass(frozen=True)
class AnnotationRecord:
    """Gold label for one proprietary term: its best ontology match,
    "ambiguous", or "none"."""

    source_name: str
    kind: str
    label: str
    best_match: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown term kind: {self.kind!r}")
        if self.label not in LABELS:
            raise ValueError(f"unknown annotation label: {self.label!r}")
        if self.label == LABEL_BEST_MATCH and not self.best_match:
            raise ValueError("best_match label requires a best_match name")
        if self.label != LABEL_BEST_MATCH and self.best_match:
            raise ValueError(f"label {self.label!r} must not carry a best_match name")


@dataclass(frozen=True)
class MethodSummary:
    """Bucket counts for one method over one annotation set."""

    method: str
    first_result: int
    top_five: int
    no_result: int
    ambiguous_excluded: int = 0

    @property
    def considered(self) -> int:
        return self.first_result + self.top_five + self.no_result

    @property
    def found_in_top_five(self) -> int:
        return self.first_result + self.top_five


def load_annotations(
    path: str | Path, ontology: OntologyCatalog | None = None
) -> list[AnnotationRecord]:
    """Read annotations from a JSON-lines file: one record per line with
    source_name, kind, label, and best_match when the label requires it.
    With an ontology supplied, best-match names are checked against it."""
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(f"annotation file not found: {path}")

    records: list[AnnotationRecord] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                record = AnnotationRecord(
                    source_name=raw["source_name"],
                    kind=raw["kind"],
                    label=raw["label"],
                    best_match=raw.get("best_match"),
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise DataFormatError(f"{path}:{lineno}: bad annotation record: {exc}") from exc
            records.append(record)

    if ontology is not None:
        for record in records:
            if record.label != LABEL_BEST_MATCH:
                continue
            names = {t.name for t in ontology.terms(record.kind)}
            if record.best_match not in names:
                raise DataFormatError(
                    f"annotation best_match {record.best_match!r} is not an ontology "
                    f"{record.kind} term"
                )
    return records


def save_annotations(records: Iterable[AnnotationRecord], path: str | Path) -> None:
    lines = []
    for r in records:
        entry = {"source_name": r.source_name, "kind": r.kind, "label": r.label}
        if r.best_match is not None:
            entry["best_match"] = r.best_match
        lines.append(json.dumps(entry, ensure_ascii=False))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def score_method(
    results: Sequence[TranslationResult],
    annotations: Sequence[AnnotationRecord],
    method: str | None = None,
) -> MethodSummary:
    """Bucket every non-ambiguous annotation by the gold match's position in
    the method's top-five candidates.

    Rank 1 counts as a first result, ranks 2-5 as top-five, anything else as
    no result. A gold label of "none" lands in the no-result bucket whether or
    not the method also returned nothing.

    Raises:
        RuleBridgeError: an annotation references a term with no result.
    """
    if method is None:
        method = results[0].method if results else "unknown"
    index = {(r.source_name, r.kind): r for r in results}

    first = top_five = no_result = ambiguous = 0
    for record in annotations:
        if record.label == LABEL_AMBIGUOUS:
            ambiguous += 1
            continue
        result = index.get((record.source_name, record.kind))
        if result is None:
            raise RuleBridgeError(
                f"annotation references unknown term: {record.source_name!r} ({record.kind})"
            )
        if record.label == LABEL_NONE:
            no_result += 1
            continue
        top = [c.candidate_name for c in result.presented()[:TOP_CUT]]
        if record.best_match in top:
            if top.index(record.best_match) == 0:
                first += 1
            else:
                top_five += 1
        else:
            no_result += 1

    return MethodSummary(
        method=method,
        first_result=first,
        top_five=top_five,
        no_result=no_result,
        ambiguous_excluded=ambiguous,
    )


def compare_methods(summaries: Sequence[MethodSummary]) -> list[MethodSummary]:
    """Rank methods best-first: most matches found in the top five, then most
    first results, then fewest no-results. Ties preserve input order."""
    if len(summaries) < 2:
        raise RuleBridgeError("method comparison needs at least two summaries")
    totals = {s.considered + s.ambiguous_excluded for s in summaries}
    if len(totals) > 1:
        raise RuleBridgeError(
            f"summaries cover different annotation totals: {sorted(totals)}"
        )
    return sorted(
        summaries,
        key=lambda s: (-s.found_in_top_five, -s.first_result, s.no_result),
    )


def sample_for_annotation(
    catalog: ProprietaryCatalog, n: int, seed: int, kind: str
) -> list[CatalogTerm]:
    """Uniform sample of n distinct terms without replacement, deterministic
    for a given seed."""
    terms = catalog.terms(kind)
    if n > len(terms):
        raise RuleBridgeError(f"sample size {n} exceeds {kind} catalog size {len(terms)}")
    return random.Random(seed).sample(list(terms), n)


@dataclass(frozen=True)
class DatasetStats:
    total_recipes: int
    distinct_triggers: int
    distinct_actions: int
    once_only_triggers: int
    once_only_actions: int
    duplicate_triggers: int
    duplicate_actions: int
    raw_distinct_triggers: int
    raw_distinct_actions: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def dataset_stats(raw: RawRecipeSet, catalog: ProprietaryCatalog) -> DatasetStats:
    """Summarise the recipe dataset: totals, distinct terms, once-only terms,
    and duplicates (terms used more than once).

    Distinct counts are reported both after cleaning (from the catalog) and
    over the raw names, since upstream counts may predate cleaning.
    """
    once_triggers = sum(1 for t in catalog.triggers if t.usage_count == 1)
    once_actions = sum(1 for t in catalog.actions if t.usage_count == 1)
    return DatasetStats(
        total_recipes=raw.total,
        distinct_triggers=len(catalog.triggers),
        distinct_actions=len(catalog.actions),
        once_only_triggers=once_triggers,
        once_only_actions=once_actions,
        duplicate_triggers=len(catalog.triggers) - once_triggers,
        duplicate_actions=len(catalog.actions) - once_actions,
        raw_distinct_triggers=len({row.trigger for row in raw.rows}),
        raw_distinct_actions=len({row.action for row in raw.rows}),
    )


def render_summary_table(summaries: Sequence[MethodSummary]) -> str:
    """Aligned text table with the comparison report's column layout."""
    headers = ("Approach", "First Result", "Top Five Result", "No result")
    rows = [
        (s.method, str(s.first_result), str(s.top_five), str(s.no_result)) for s in summaries
    ]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    lines.extend("  ".join(r[i].ljust(widths[i]) for i in range(len(headers))) for r in rows)
    return "\n".join(lines)

"""Corpus ingestion and preparation.

Loads the proprietary recipe dataset (trigger/action names with usage
frequencies) and the high-level ontology term lists, and normalises both
into immutable catalogs that the translation pipeline consumes.
"""

from __future__ import annotations

import csv
import json
import re
import unicodedata
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import DataFormatError

TRIGGER = "trigger"
ACTION = "action"
KINDS = (TRIGGER, ACTION)

_CAMEL_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z0-9]+|[A-Z]+|[0-9]+")


@dataclass(frozen=True)
class CatalogTerm:
    """A cleaned proprietary trigger or action name with its usage count."""

    name: str
    kind: str
    usage_count: int = 1

    def __post_init__(self):
        if "/" in self.name:
            raise ValueError(f"catalog term contains a forward slash: {self.name!r}")
        if not self.name:
            raise ValueError("catalog term name is empty")
        if self.kind not in KINDS:
            raise ValueError(f"unknown term kind: {self.kind!r}")
        if self.usage_count < 1:
            raise ValueError("usage_count must be >= 1")


@dataclass(frozen=True)
class ProprietaryCatalog:
    """Deduplicated trigger and action term lists for one source platform."""

    triggers: tuple[CatalogTerm, ...]
    actions: tuple[CatalogTerm, ...]
    source_label: str = "ifttt"

    def __post_init__(self):
        for terms in (self.triggers, self.actions):
            names = [t.name for t in terms]
            if len(names) != len(set(names)):
                raise ValueError("catalog term names must be pairwise distinct")

    def terms(self, kind: str) -> tuple[CatalogTerm, ...]:
        if kind == TRIGGER:
            return self.triggers
        if kind == ACTION:
            return self.actions
        raise ValueError(f"unknown term kind: {kind!r}")


@dataclass(frozen=True)
class OntologyTerm:
    """A high-level trigger or action name with its kind suffix removed."""

    name: str
    kind: str
    raw_id: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("ontology term name is empty")
        if self.name.endswith("Trigger") or self.name.endswith("Action"):
            raise ValueError(f"ontology term retains a kind suffix: {self.name!r}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown term kind: {self.kind!r}")


@dataclass(frozen=True)
class OntologyCatalog:
    """High-level trigger and action terms extracted from the ontology."""

    triggers: tuple[OntologyTerm, ...]
    actions: tuple[OntologyTerm, ...]

    def __post_init__(self):
        for terms in (self.triggers, self.actions):
            names = [t.name for t in terms]
            if len(names) != len(set(names)):
                raise ValueError("ontology term names must be pairwise distinct")

    def terms(self, kind: str) -> tuple[OntologyTerm, ...]:
        if kind == TRIGGER:
            return self.triggers
        if kind == ACTION:
            return self.actions
        raise ValueError(f"unknown term kind: {kind!r}")


@dataclass(frozen=True)
class RecipeRow:
    trigger: str
    action: str


@dataclass(frozen=True)
class RawRecipeSet:
    """All recipe rows as loaded, before any cleaning."""

    rows: tuple[RecipeRow, ...]

    @property
    def total(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class FormatConfig:
    """Column/field mapping for the recipe dataset file.

    ``delimiter`` applies to delimited text; JSON-lines files use the same
    field names as object keys.
    """

    trigger_column: str = "triggerName"
    action_column: str = "actionName"
    delimiter: str = ","


@dataclass
class CleaningReport:
    """Diagnostics emitted by clean_and_split: rows whose trigger or action
    name vanished after cleaning."""

    total_rows: int = 0
    dropped_trigger_rows: list[int] = field(default_factory=list)
    dropped_action_rows: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "total_rows": self.total_rows,
            "dropped_trigger_rows": self.dropped_trigger_rows,
            "dropped_action_rows": self.dropped_action_rows,
        }


def clean_name(raw: str) -> str:
    """Normalise one proprietary name: NFC, strip forward slashes, trim and
    collapse whitespace. May return an empty string."""
    text = unicodedata.normalize("NFC", raw)
    text = text.replace("/", "")
    text = re.sub(r"\s+", " ", text)
    return text.strip()


def load_recipes(path: str | Path, format_config: FormatConfig | None = None) -> RawRecipeSet:
    """Load the recipe dataset from a delimited-text or JSON-lines file.

    The trigger and action columns named by ``format_config`` are mandatory;
    all other columns are ignored. Files whose name ends in ``.jsonl`` (or
    whose first non-blank character is ``{``) are parsed record-per-line.

    Args:
        path: dataset file location.
        format_config: column/field mapping; defaults to
            ``triggerName``/``actionName`` with a comma delimiter.

    Returns:
        RawRecipeSet with one row per input record.

    Raises:
        DataFormatError: missing file, missing mandatory column, or zero rows.
    """
    cfg = format_config or FormatConfig()
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(f"recipe dataset not found: {path}")

    with path.open("r", encoding="utf-8", newline="") as fh:
        head = fh.read(1 << 12)
        fh.seek(0)
        stripped = head.lstrip()
        if path.suffix == ".jsonl" or stripped.startswith("{"):
            rows = _read_jsonl_rows(fh, cfg)
        else:
            rows = _read_delimited_rows(fh, cfg, path)

    if not rows:
        raise DataFormatError(f"recipe dataset has zero rows: {path}")
    return RawRecipeSet(rows=tuple(rows))


def _read_delimited_rows(fh, cfg: FormatConfig, path: Path) -> list[RecipeRow]:
    reader = csv.DictReader(fh, delimiter=cfg.delimiter)
    header = reader.fieldnames or []
    for column in (cfg.trigger_column, cfg.action_column):
        if column not in header:
            raise DataFormatError(
                f"missing mandatory column {column!r} in {path} (header: {header})"
            )
    return [
        RecipeRow(trigger=rec[cfg.trigger_column] or "", action=rec[cfg.action_column] or "")
        for rec in reader
    ]


def _read_jsonl_rows(fh, cfg: FormatConfig) -> list[RecipeRow]:
    rows = []
    for lineno, line in enumerate(fh, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"line {lineno} is not valid JSON: {exc}") from exc
        if cfg.trigger_column not in rec or cfg.action_column not in rec:
            raise DataFormatError(
                f"line {lineno} is missing mandatory field "
                f"{cfg.trigger_column!r} or {cfg.action_column!r}"
            )
        rows.append(
            RecipeRow(trigger=str(rec[cfg.trigger_column]), action=str(rec[cfg.action_column]))
        )
    return rows


def clean_and_split(
    raw: RawRecipeSet, source_label: str = "ifttt"
) -> tuple[ProprietaryCatalog, CleaningReport]:
    """Clean every raw name and split the rows into deduplicated trigger and
    action lists.

    Each distinct cleaned name becomes one CatalogTerm whose usage_count is
    the number of rows it occurred in. Names that are empty after cleaning
    are dropped and recorded in the report.

    Raises:
        DataFormatError: raw is empty, or every name cleaned to nothing.
    """
    if raw.total == 0:
        raise DataFormatError("recipe set is empty")

    report = CleaningReport(total_rows=raw.total)
    trigger_counts: dict[str, int] = {}
    action_counts: dict[str, int] = {}
    for index, row in enumerate(raw.rows):
        trigger = clean_name(row.trigger)
        if trigger:
            trigger_counts[trigger] = trigger_counts.get(trigger, 0) + 1
        else:
            report.dropped_trigger_rows.append(index)
        action = clean_name(row.action)
        if action:
            action_counts[action] = action_counts.get(action, 0) + 1
        else:
            report.dropped_action_rows.append(index)

    if not trigger_counts and not action_counts:
        raise DataFormatError("all names empty after cleaning")

    catalog = ProprietaryCatalog(
        triggers=tuple(
            CatalogTerm(name=n, kind=TRIGGER, usage_count=c) for n, c in trigger_counts.items()
        ),
        actions=tuple(
            CatalogTerm(name=n, kind=ACTION, usage_count=c) for n, c in action_counts.items()
        ),
        source_label=source_label,
    )
    return catalog, report


def split_camel_case(identifier: str) -> str:
    """Split a camel-case identifier into space-separated capitalised words.

    Acronym runs become single capitalised words ("ReceivedFromDIY" ->
    "Received From Diy"). Identifiers already containing spaces pass through
    word by word.
    """
    words: list[str] = []
    for chunk in identifier.split():
        words.extend(_CAMEL_RE.findall(chunk))
    if not words:
        return identifier.strip()
    return " ".join(w[:1].upper() + w[1:].lower() for w in words)


def strip_kind_suffix(raw_id: str, kind: str) -> str:
    suffix = "Trigger" if kind == TRIGGER else "Action"
    if raw_id.endswith(suffix) and len(raw_id) > len(suffix):
        return raw_id[: -len(suffix)]
    return raw_id


def load_ontology(
    path: str | Path,
    format: str = "ontology-xml",
    trigger_root: str = "Trigger",
    action_root: str = "Action",
    split_camel: bool = True,
) -> OntologyCatalog:
    """Load the high-level ontology term lists.

    ``ontology-xml`` walks the class hierarchy of an RDF/XML ontology file
    and collects every class under the configured trigger and action roots.
    ``prepared-json`` reads an object with "triggers" and "actions" arrays
    of names or ``{"id": ...}`` records.

    Kind suffixes are stripped from every term and camel-case identifiers
    are split into words unless ``split_camel`` is disabled.

    Raises:
        DataFormatError: unparseable file or an empty term list for a kind.
    """
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(f"ontology file not found: {path}")

    if format == "ontology-xml":
        raw_ids = _ontology_ids_from_xml(path, trigger_root, action_root)
    elif format == "prepared-json":
        raw_ids = _ontology_ids_from_json(path)
    else:
        raise DataFormatError(f"unknown ontology format: {format!r}")

    catalogs: dict[str, list[OntologyTerm]] = {TRIGGER: [], ACTION: []}
    for kind in KINDS:
        seen: set[str] = set()
        for raw_id in raw_ids[kind]:
            name = strip_kind_suffix(raw_id, kind)
            if split_camel:
                name = split_camel_case(name)
            name = re.sub(r"\s+", " ", name).strip()
            if not name or name in seen:
                continue
            seen.add(name)
            catalogs[kind].append(OntologyTerm(name=name, kind=kind, raw_id=raw_id))
        if not catalogs[kind]:
            raise DataFormatError(f"ontology contains no {kind} terms: {path}")

    return OntologyCatalog(triggers=tuple(catalogs[TRIGGER]), actions=tuple(catalogs[ACTION]))


def _local_name(uri: str) -> str:
    for sep in ("#", "/"):
        if sep in uri:
            uri = uri.rsplit(sep, 1)[1]
    return uri


def _ontology_ids_from_xml(path: Path, trigger_root: str, action_root: str) -> dict[str, list[str]]:
    """Collect class ids under each configured root of an RDF/XML hierarchy.

    Any element carrying an rdf:about/rdf:ID counts as a class declaration;
    nested rdfs:subClassOf references (rdf:resource) define the hierarchy.
    """
    try:
        tree = ET.parse(path)
    except ET.ParseError as exc:
        raise DataFormatError(f"cannot parse ontology XML {path}: {exc}") from exc

    rdf_ns = "{http://www.w3.org/1999/02/22-rdf-syntax-ns#}"
    rdfs_ns = "{http://www.w3.org/2000/01/rdf-schema#}"
    children: dict[str, list[str]] = {}

    for elem in tree.getroot().iter():
        about = elem.get(f"{rdf_ns}about") or elem.get(f"{rdf_ns}ID")
        if about is None:
            continue
        class_id = _local_name(about)
        children.setdefault(class_id, [])
        for sub in elem.findall(f"{rdfs_ns}subClassOf"):
            parent_ref = sub.get(f"{rdf_ns}resource")
            if parent_ref is None:
                nested = sub.find(f".//*[@{rdf_ns}about]")
                parent_ref = nested.get(f"{rdf_ns}about") if nested is not None else None
            if parent_ref:
                children.setdefault(_local_name(parent_ref), []).append(class_id)

    def descendants(root: str) -> list[str]:
        found: list[str] = []
        seen: set[str] = set()
        stack = list(children.get(root, []))
        while stack:
            node = stack.pop(0)
            if node in seen:
                continue
            seen.add(node)
            found.append(node)
            stack.extend(children.get(node, []))
        return found

    return {TRIGGER: descendants(trigger_root), ACTION: descendants(action_root)}


def _ontology_ids_from_json(path: Path) -> dict[str, list[str]]:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"cannot parse ontology JSON {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise DataFormatError("prepared-json ontology must be an object with trigger/action lists")

    out: dict[str, list[str]] = {}
    for kind, key in ((TRIGGER, "triggers"), (ACTION, "actions")):
        entries = payload.get(key, [])
        ids = []
        for entry in entries:
            if isinstance(entry, str):
                ids.append(entry)
            elif isinstance(entry, dict) and ("id" in entry or "name" in entry):
                ids.append(entry.get("id") or entry.get("name"))
            else:
                raise DataFormatError(f"unsupported ontology entry under {key!r}: {entry!r}")
        out[kind] = ids
    return out


def save_catalog(catalog: ProprietaryCatalog, path: str | Path) -> None:
    """Serialize a prepared catalog as JSON with {name, kind, usage_count} terms."""
    payload = {
        "source_label": catalog.source_label,
        "triggers": [
            {"name": t.name, "kind": t.kind, "usage_count": t.usage_count}
            for t in catalog.triggers
        ],
        "actions": [
            {"name": t.name, "kind": t.kind, "usage_count": t.usage_count}
            for t in catalog.actions
        ],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_catalog(path: str | Path) -> ProprietaryCatalog:
    """Load a catalog previously written by save_catalog."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataFormatError(f"cannot load catalog {path}: {exc}") from exc
    return ProprietaryCatalog(
        triggers=tuple(CatalogTerm(**t) for t in payload.get("triggers", [])),
        actions=tuple(CatalogTerm(**t) for t in payload.get("actions", [])),
        source_label=payload.get("source_label", "ifttt"),
    )


def save_ontology_catalog(catalog: OntologyCatalog, path: str | Path) -> None:
    payload = {
        "triggers": [{"name": t.name, "id": t.raw_id} for t in catalog.triggers],
        "actions": [{"name": t.name, "id": t.raw_id} for t in catalog.actions],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_ontology_catalog(path: str | Path) -> OntologyCatalog:
    """Load an ontology catalog previously written by save_ontology_catalog.

    Names are taken verbatim (no suffix stripping or camel splitting), so a
    round-trip through save/load is the identity.
    """
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataFormatError(f"cannot load ontology catalog {path}: {exc}") from exc

    def terms(key: str, kind: str) -> tuple[OntologyTerm, ...]:
        return tuple(
            OntologyTerm(name=e["name"], kind=kind, raw_id=e.get("id", e["name"]))
            for e in payload.get(key, [])
        )

    return OntologyCatalog(triggers=terms("triggers", TRIGGER), actions=terms("actions", ACTION))


def rows_from_catalog(catalog: ProprietaryCatalog) -> RawRecipeSet:
    """Render a catalog back into recipe rows: usage_count copies of each
    name, the shorter side padded with empty cells (which cleaning drops).
    Used for idempotence checks."""

    def expand(terms: Iterable[CatalogTerm]) -> list[str]:
        names: list[str] = []
        for term in terms:
            names.extend([term.name] * term.usage_count)
        return names

    triggers = expand(catalog.triggers)
    actions = expand(catalog.actions)
    if not triggers and not actions:
        raise DataFormatError("catalog has no terms to render back into rows")
    size = max(len(triggers), len(actions))
    triggers += [""] * (size - len(triggers))
    actions += [""] * (size - len(actions))
    rows = tuple(RecipeRow(trigger=t, action=a) for t, a in zip(triggers, actions))
    return RawRecipeSet(rows=rows)

"""Persistence for translated rules and human review decisions.

The local backend is an append-friendly single-file document log with an
in-memory index (compact on demand). A generic bearer-token HTTP container
client provides pod-style remote storage with last-writer-wins sync:

    GET    /rules        -> {"rules": {id: revision, ...}}   (manifest)
    GET    /rules/{id}   -> document body
    PUT    /rules/{id}   <- document body
    DELETE /rules/{id}
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import requests

from .errors import DataFormatError, RevisionConflictError, SyncError, UnknownIdError

ACCURACY_SCALE = ("not_at_all", "low", "accurate", "very_accurate")
VERDICT_CHOSEN = "chosen"
VERDICT_NONE_SUITABLE = "none_suitable"


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


@dataclass(frozen=True)
class TranslatedRuleDoc:
    """One persisted translated rule: original names, chosen high-level
    names, and the score evidence for both sides."""

    id: str
    source_platform: str
    original_trigger: str
    original_action: str
    translated_trigger: str | None
    translated_action: str | None
    method: str
    scores: dict = field(default_factory=dict)
    created_at: str = field(default_factory=utc_now_iso)
    revision: int = 1

    def __post_init__(self):
        if not self.id:
            raise ValueError("rule doc id is empty")
        if self.revision < 1:
            raise ValueError("revision must be >= 1")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "source_platform": self.source_platform,
            "original_trigger": self.original_trigger,
            "original_action": self.original_action,
            "translated_trigger": self.translated_trigger,
            "translated_action": self.translated_action,
            "method": self.method,
            "scores": self.scores,
            "created_at": self.created_at,
            "revision": self.revision,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "TranslatedRuleDoc":
        try:
            return cls(**{k: payload[k] for k in cls.__dataclass_fields__ if k in payload})
        except (TypeError, ValueError) as exc:
            raise DataFormatError(f"bad rule document: {exc}") from exc


@dataclass(frozen=True)
class ReviewRecord:
    """A human reviewer's verdict for one (source term, kind) key."""

    source_name: str
    kind: str
    verdict: str
    candidate: str | None = None
    accuracy: str | None = None
    reviewer: str = "anonymous"
    created_at: str = field(default_factory=utc_now_iso)

    def __post_init__(self):
        if self.verdict not in (VERDICT_CHOSEN, VERDICT_NONE_SUITABLE):
            raise ValueError(f"unknown review verdict: {self.verdict!r}")
        if self.verdict == VERDICT_CHOSEN and not self.candidate:
            raise ValueError("chosen verdict requires a candidate name")
        if self.accuracy is not None and self.accuracy not in ACCURACY_SCALE:
            raise ValueError(f"accuracy must be one of {ACCURACY_SCALE}: {self.accuracy!r}")

    def to_dict(self) -> dict:
        return {
            "source_name": self.source_name,
            "kind": self.kind,
            "verdict": self.verdict,
            "candidate": self.candidate,
            "accuracy": self.accuracy,
            "reviewer": self.reviewer,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ReviewRecord":
        try:
            return cls(**{k: payload[k] for k in cls.__dataclass_fields__ if k in payload})
        except (TypeError, ValueError) as exc:
            raise DataFormatError(f"bad review record: {exc}") from exc


class RuleStore:
    """Single-file document log with an in-memory index.

    Writes append one JSON line per event and are serialized behind a lock;
    readers see committed state only. ``compact`` rewrites the log to the
    current state (latest rule revisions, active reviews).
    """

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._rules: dict[str, TranslatedRuleDoc] = {}
        self._reviews: dict[tuple[str, str], ReviewRecord] = {}
        if self._path is not None and self._path.exists():
            self._replay()

    def _replay(self) -> None:
        with self._path.open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    event = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise DataFormatError(f"{self._path}:{lineno}: corrupt log line") from exc
                if event.get("type") == "rule":
                    doc = TranslatedRuleDoc.from_dict(event["doc"])
                    self._rules[doc.id] = doc
                elif event.get("type") == "review":
                    review = ReviewRecord.from_dict(event["doc"])
                    self._reviews[(review.source_name, review.kind)] = review
                else:
                    raise DataFormatError(f"{self._path}:{lineno}: unknown event type")

    def _append(self, event_type: str, doc: dict) -> None:
        if self._path is None:
            return
        line = json.dumps({"type": event_type, "doc": doc}, ensure_ascii=False)
        with self._path.open("a", encoding="utf-8") as fh:
            fh.write(line + "\n")

    # -- rules ------------------------------------------------------------

    def put_rule(self, doc: TranslatedRuleDoc) -> int:
        """Durably store a rule document. The supplied revision must be
        exactly one above the stored revision (1 for a new document)."""
        with self._lock:
            current = self._rules.get(doc.id)
            expected = (current.revision if current else 0) + 1
            if doc.revision != expected:
                raise RevisionConflictError(
                    f"rule {doc.id}: supplied revision {doc.revision}, expected {expected}"
                )
            self._rules[doc.id] = doc
            self._append("rule", doc.to_dict())
            return doc.revision

    def apply_remote_rule(self, doc: TranslatedRuleDoc) -> None:
        """Overwrite local state with a synced remote document (bypasses the
        sequential-revision check; sync owns conflict resolution)."""
        with self._lock:
            self._rules[doc.id] = doc
            self._append("rule", doc.to_dict())

    def get_rule(self, doc_id: str) -> TranslatedRuleDoc:
        with self._lock:
            doc = self._rules.get(doc_id)
        if doc is None:
            raise UnknownIdError(f"unknown rule id: {doc_id}")
        return doc

    def list_rules(
        self, source_platform: str | None = None, method: str | None = None
    ) -> list[TranslatedRuleDoc]:
        with self._lock:
            docs = list(self._rules.values())
        if source_platform is not None:
            docs = [d for d in docs if d.source_platform == source_platform]
        if method is not None:
            docs = [d for d in docs if d.method == method]
        return docs

    def rule_manifest(self) -> dict[str, int]:
        with self._lock:
            return {doc_id: doc.revision for doc_id, doc in self._rules.items()}

    # -- reviews ----------------------------------------------------------

    def record_review(self, review: ReviewRecord) -> ReviewRecord:
        """Store a review, superseding any prior review for its key."""
        with self._lock:
            self._reviews[(review.source_name, review.kind)] = review
            self._append("review", review.to_dict())
            return review

    def lookup_review(self, source_name: str, kind: str) -> ReviewRecord | None:
        with self._lock:
            return self._reviews.get((source_name, kind))

    def list_reviews(self) -> list[ReviewRecord]:
        with self._lock:
            return list(self._reviews.values())

    def compact(self) -> None:
        """Rewrite the log keeping only current state."""
        if self._path is None:
            return
        with self._lock:
            lines = [
                json.dumps({"type": "rule", "doc": d.to_dict()}, ensure_ascii=False)
                for d in self._rules.values()
            ]
            lines += [
                json.dumps({"type": "review", "doc": r.to_dict()}, ensure_ascii=False)
                for r in self._reviews.values()
            ]
            self._path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


class RemoteContainerClient:
    """Plain HTTP document container with bearer-token auth — the pod-style
    remote half of sync."""

    def __init__(
        self,
        base_url: str,
        token: str | None = None,
        timeout: float = 10.0,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._session = session or requests.Session()
        self._headers = {"Authorization": f"Bearer {token}"} if token else {}

    def _request(self, method: str, route: str, **kwargs) -> requests.Response:
        url = self.base_url + route
        try:
            response = self._session.request(
                method, url, headers=self._headers, timeout=self.timeout, **kwargs
            )
        except requests.RequestException as exc:
            raise SyncError(f"container unreachable: {method} {url}: {exc}") from exc
        if response.status_code in (401, 403):
            raise SyncError(f"container auth failure: {method} {url} -> {response.status_code}")
        return response

    def manifest(self) -> dict[str, int]:
        response = self._request("GET", "/rules")
        if response.status_code != 200:
            raise SyncError(f"manifest fetch failed: HTTP {response.status_code}")
        body = response.json()
        rules = body.get("rules") if isinstance(body, dict) else None
        if not isinstance(rules, dict):
            raise SyncError(f"malformed manifest: {body!r}")
        return {str(k): int(v) for k, v in rules.items()}

    def get_doc(self, doc_id: str) -> TranslatedRuleDoc:
        response = self._request("GET", f"/rules/{doc_id}")
        if response.status_code == 404:
            raise UnknownIdError(f"remote has no rule {doc_id}")
        if response.status_code != 200:
            raise SyncError(f"fetch of {doc_id} failed: HTTP {response.status_code}")
        return TranslatedRuleDoc.from_dict(response.json())

    def put_doc(self, doc: TranslatedRuleDoc) -> None:
        response = self._request("PUT", f"/rules/{doc.id}", json=doc.to_dict())
        if response.status_code not in (200, 201, 204):
            raise SyncError(f"push of {doc.id} failed: HTTP {response.status_code}")

    def delete_doc(self, doc_id: str) -> None:
        response = self._request("DELETE", f"/rules/{doc_id}")
        if response.status_code not in (200, 204, 404):
            raise SyncError(f"delete of {doc_id} failed: HTTP {response.status_code}")


@dataclass
class SyncReport:
    pushed: list[str] = field(default_factory=list)
    pulled: list[str] = field(default_factory=list)
    conflicted: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"pushed": self.pushed, "pulled": self.pulled, "conflicted": self.conflicted}


def sync_remote(store: RuleStore, container: RemoteContainerClient) -> SyncReport:
    """Reconcile the local store with a remote container, last-writer-wins.

    Higher revision wins in either direction; equal revisions with differing
    content fall back to the newer created_at timestamp, and documents that
    still tie are reported as conflicted and left untouched. Transport or
    auth failures raise SyncError carrying the partial report.
    """
    report = SyncReport()
    try:
        remote_manifest = container.manifest()
        local_manifest = store.rule_manifest()

        for doc_id in sorted(set(local_manifest) | set(remote_manifest)):
            local_rev = local_manifest.get(doc_id)
            remote_rev = remote_manifest.get(doc_id)
            if remote_rev is None:
                container.put_doc(store.get_rule(doc_id))
                report.pushed.append(doc_id)
            elif local_rev is None:
                store.apply_remote_rule(container.get_doc(doc_id))
                report.pulled.append(doc_id)
            elif local_rev > remote_rev:
                container.put_doc(store.get_rule(doc_id))
                report.pushed.append(doc_id)
            elif local_rev < remote_rev:
                store.apply_remote_rule(container.get_doc(doc_id))
                report.pulled.append(doc_id)
            else:
                local_doc = store.get_rule(doc_id)
                remote_doc = container.get_doc(doc_id)
                if remote_doc.to_dict() == local_doc.to_dict():
                    continue
                if remote_doc.created_at > local_doc.created_at:
                    store.apply_remote_rule(remote_doc)
                    report.pulled.append(doc_id)
                elif remote_doc.created_at < local_doc.created_at:
                    container.put_doc(local_doc)
                    report.pushed.append(doc_id)
                else:
                    report.conflicted.append(doc_id)
    except SyncError as exc:
        raise SyncError(str(exc), report=report) from exc
    return report

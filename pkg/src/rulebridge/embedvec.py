"""Word-vector store and document embedding.

A document (term name) is embedded as the arithmetic mean of the vectors of
its in-vocabulary tokens; documents are compared by cosine similarity. This
is the mechanism behind the embedding-based translation method.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataFormatError

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on any non-alphanumeric character, dropping empty
    fragments. Stopwords are kept; "on"/"off" and friends carry signal here."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class DocVector:
    """Mean token vector of a document plus its vocabulary coverage."""

    vector: np.ndarray
    covered_tokens: int
    total_tokens: int

    def __post_init__(self):
        if self.covered_tokens > self.total_tokens:
            raise ValueError("covered_tokens exceeds total_tokens")

    @property
    def degenerate(self) -> bool:
        """True when no token was found in the store (zero vector)."""
        return self.covered_tokens == 0


class VectorStore:
    """Immutable case-insensitive token -> dense vector map."""

    def __init__(self, dimension: int, entries: dict[str, np.ndarray]):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self._entries: dict[str, np.ndarray] = {}
        for token, vec in entries.items():
            arr = np.asarray(vec, dtype=np.float64)
            if arr.shape != (dimension,):
                raise ValueError(
                    f"vector for {token!r} has shape {arr.shape}, expected ({dimension},)"
                )
            arr.setflags(write=False)
            self._entries[token.lower()] = arr

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self._entries

    def get(self, token: str) -> np.ndarray | None:
        return self._entries.get(token.lower())

    @classmethod
    def load(cls, path: str | Path) -> "VectorStore":
        """Read a text vector file: one token per line followed by its
        components, with an optional "count dim" header line (auto-detected).

        Duplicate tokens keep the last occurrence. Raises DataFormatError on
        missing files, inconsistent dimensions, or unparseable components.
        """
        path = Path(path)
        if not path.is_file():
            raise DataFormatError(f"vector file not found: {path}")

        entries: dict[str, np.ndarray] = {}
        dimension: int | None = None
        with path.open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                parts = line.split()
                if not parts:
                    continue
                if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                    dimension = int(parts[1])
                    continue
                token, raw_values = parts[0], parts[1:]
                try:
                    vec = np.array([float(v) for v in raw_values], dtype=np.float64)
                except ValueError as exc:
                    raise DataFormatError(f"{path}:{lineno}: bad vector component: {exc}") from exc
                if dimension is None:
                    dimension = len(vec)
                if len(vec) != dimension:
                    raise DataFormatError(
                        f"{path}:{lineno}: vector for {token!r} has {len(vec)} components, "
                        f"expected {dimension}"
                    )
                entries[token.lower()] = vec

        if dimension is None or not entries:
            raise DataFormatError(f"vector file contains no vectors: {path}")
        return cls(dimension=dimension, entries=entries)


def embed(text: str, store: VectorStore) -> DocVector:
    """Embed a term name as the mean of its in-vocabulary token vectors.

    Out-of-vocabulary tokens contribute nothing but are counted in
    total_tokens; zero coverage yields the zero vector.
    """
    tokens = tokenize(text)
    found = [store.get(t) for t in tokens]
    found = [v for v in found if v is not None]
    if found:
        vector = np.mean(np.stack(found), axis=0)
    else:
        vector = np.zeros(store.dimension, dtype=np.float64)
    vector.setflags(write=False)
    return DocVector(vector=vector, covered_tokens=len(found), total_tokens=len(tokens))


def cosine(a: "DocVector | np.ndarray", b: "DocVector | np.ndarray") -> float:
    """Standard cosine similarity in [-1, 1]; 0 when either vector has zero
    norm (the degenerate case). Raises ValueError on dimension mismatch."""
    va = a.vector if isinstance(a, DocVector) else np.asarray(a, dtype=np.float64)
    vb = b.vector if isinstance(b, DocVector) else np.asarray(b, dtype=np.float64)
    if va.shape != vb.shape:
        raise ValueError(f"dimension mismatch: {va.shape} vs {vb.shape}")
    norm_a = float(np.linalg.norm(va))
    norm_b = float(np.linalg.norm(vb))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return float(np.dot(va, vb) / (norm_a * norm_b))

"""Entailment scoring server: a deterministic NLI classifier behind the
entailment wire protocol (POST /entail and /entail/batch)."""

from .app import create_app
from .model import (
    LABELS,
    LexicalNliModel,
    ModelLoadError,
    NliWeights,
    load_model,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "LABELS",
    "LexicalNliModel",
    "ModelLoadError",
    "NliWeights",
    "create_app",
    "load_model",
    "tokenize",
]

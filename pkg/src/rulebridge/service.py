"""HTTP API over the translation engine.

The engine facade owns the loaded corpora, scorers, and the rule/review
store; the FastAPI app is a thin layer that validates requests, calls the
engine, and renders ApiError envelopes with a closed code set.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .catalog import (
    KINDS,
    CatalogTerm,
    OntologyCatalog,
    ProprietaryCatalog,
    clean_name,
    load_catalog,
    load_ontology_catalog,
)
from .config import AppConfig
from .embedvec import VectorStore
from .errors import (
    DataFormatError,
    RevisionConflictError,
    RuleBridgeError,
    ScorerUnavailableError,
    UnknownIdError,
)
from .pipeline import (
    METHODS,
    PipelineConfig,
    TranslationResult,
    apply_review_overrides,
    translate_one,
)
from .formats import result_to_dict
from .scoring import (
    EmbeddingScorer,
    EntailmentScorer,
    RemoteEntailmentClient,
    make_embedding_scorer,
    proxy_entailment,
)
from .rulestore import ReviewRecord, RuleStore, TranslatedRuleDoc

API_ERROR_CODES = (
    "invalid-kind",
    "invalid-method",
    "validation-error",
    "unknown-id",
    "revision-conflict",
    "scorer-unavailable",
    "internal-error",
)


class ApiException(Exception):
    """Carries an ApiError envelope to the exception handler."""

    def __init__(self, status_code: int, code: str, message: str, detail=None):
        if code not in API_ERROR_CODES:
            raise ValueError(f"unknown api error code: {code!r}")
        super().__init__(message)
        self.status_code = status_code
        self.code = code
        self.message = message
        self.detail = detail

    def envelope(self) -> dict:
        error: dict = {"code": self.code, "message": self.message}
        if self.detail is not None:
            error["detail"] = self.detail
        return {"error": error}


class TranslationEngine:
    """Facade over catalogs, scorers, and the review store. Translations are
    stateless given fixed corpora and review state; review overrides are
    applied on every call so fresh reviews take effect immediately."""

    def __init__(
        self,
        config: AppConfig,
        catalog: ProprietaryCatalog,
        ontology: OntologyCatalog,
        rule_store: RuleStore,
        embed_scorer: EmbeddingScorer | None = None,
        entail_scorer: EntailmentScorer | None = None,
    ):
        self.config = config
        self.catalog = catalog
        self.ontology = ontology
        self.rule_store = rule_store
        self.embed_scorer = embed_scorer
        self.entail_scorer = entail_scorer
        self._results_cache: list[dict] | None = None

    @classmethod
    def from_config(cls, config: AppConfig) -> "TranslationEngine":
        catalog_dir = Path(config.catalog_dir)
        catalog = load_catalog(catalog_dir / "catalog.json")
        ontology = load_ontology_catalog(catalog_dir / "ontology.json")

        embed_scorer = None
        if config.vectors_path:
            embed_scorer = make_embedding_scorer(VectorStore.load(config.vectors_path))

        if config.entailment_backend == "remote":
            if not config.entailment_endpoint:
                raise DataFormatError("remote entailment backend requires an endpoint")
            entail_scorer = RemoteEntailmentClient(config.entailment_endpoint).score
        else:
            entail_scorer = proxy_entailment

        rule_store = RuleStore(config.store_path)
        return cls(config, catalog, ontology, rule_store, embed_scorer, entail_scorer)

    def pipeline_config(self, method: str | None = None, top_n: int | None = None) -> PipelineConfig:
        return PipelineConfig(
            threshold=self.config.threshold,
            top_n=top_n if top_n is not None else self.config.top_n,
            method=method or self.config.method,
            entailment_backend=self.config.entailment_backend,
        )

    def source_term(self, name: str, kind: str) -> CatalogTerm:
        """Resolve a source term: catalog entry when known, otherwise an
        ad-hoc term so unseen platform names still translate."""
        if kind not in KINDS:
            raise DataFormatError(f"kind must be one of {KINDS}: {kind!r}")
        cleaned = clean_name(name)
        if not cleaned:
            raise DataFormatError("source name is empty after cleaning")
        for term in self.catalog.terms(kind):
            if term.name == cleaned:
                return term
        return CatalogTerm(name=cleaned, kind=kind, usage_count=1)

    def translate(
        self, name: str, kind: str, method: str | None = None, top_n: int | None = None
    ) -> TranslationResult:
        cfg = self.pipeline_config(method, top_n)
        term = self.source_term(name, kind)
        result = translate_one(
            term,
            self.ontology,
            cfg,
            embed_scorer=self.embed_scorer,
            entail_scorer=self.entail_scorer,
        )
        return apply_review_overrides(result, self.rule_store.lookup_review)

    def health(self) -> dict:
        return {
            "status": "ok",
            "version": __version__,
            "triggers": len(self.catalog.triggers),
            "actions": len(self.catalog.actions),
            "ontology_triggers": len(self.ontology.triggers),
            "ontology_actions": len(self.ontology.actions),
            "method": self.config.method,
        }

    def stored_results(self, kind: str | None = None, name: str | None = None) -> list[dict]:
        """Entries from the persisted batch-results file, filtered."""
        if self._results_cache is None:
            self._results_cache = []
            if self.config.results_path:
                path = Path(self.config.results_path)
                if path.exists():
                    payload = json.loads(path.read_text(encoding="utf-8"))
                    entries = payload.get("results", []) if isinstance(payload, dict) else []
                    if not isinstance(entries, list):
                        raise DataFormatError(f"malformed results file: {path}")
                    self._results_cache = entries
        entries = self._results_cache
        if kind is not None:
            entries = [e for e in entries if e.get("kind") == kind]
        if name is not None:
            entries = [e for e in entries if e.get("source_name") == name]
        return entries


def create_app(engine: TranslationEngine) -> FastAPI:
    app = FastAPI(title="rulebridge", version=__version__, docs_url=None, redoc_url=None)

    @app.exception_handler(ApiException)
    async def handle_api_exception(_request: Request, exc: ApiException):
        return JSONResponse(status_code=exc.status_code, content=exc.envelope())

    @app.exception_handler(RequestValidationError)
    async def handle_validation(_request: Request, exc: RequestValidationError):
        envelope = ApiException(400, "validation-error", "malformed request", detail=str(exc))
        return JSONResponse(status_code=400, content=envelope.envelope())

    @app.exception_handler(RuleBridgeError)
    async def handle_domain_error(_request: Request, exc: RuleBridgeError):
        envelope = ApiException(500, "internal-error", str(exc))
        return JSONResponse(status_code=500, content=envelope.envelope())

    def require_kind(kind: str) -> str:
        if kind not in KINDS:
            raise ApiException(400, "invalid-kind", f"kind must be one of {KINDS}: {kind!r}")
        return kind

    @app.get("/api/health")
    def health():
        return engine.health()

    @app.get("/api/catalog/{kind}")
    def catalog_terms(kind: str):
        require_kind(kind)
        terms = engine.catalog.terms(kind)
        return {
            "kind": kind,
            "terms": [{"name": t.name, "usage_count": t.usage_count} for t in terms],
        }

    @app.post("/api/translate")
    def translate(body: dict):
        name = body.get("name")
        kind = body.get("kind")
        method = body.get("method")
        top_n = body.get("top")
        if not isinstance(name, str) or not name.strip():
            raise ApiException(400, "validation-error", "name must be a non-empty string")
        if not isinstance(kind, str):
            raise ApiException(400, "validation-error", "kind must be a string")
        require_kind(kind)
        if method is not None and method not in METHODS:
            raise ApiException(
                400, "invalid-method", f"method must be one of {METHODS}: {method!r}"
            )
        if top_n is not None and (not isinstance(top_n, int) or top_n < 1):
            raise ApiException(400, "validation-error", "top must be a positive integer")
        try:
            result = engine.translate(name, kind, method=method, top_n=top_n)
        except ScorerUnavailableError as exc:
            raise ApiException(503, "scorer-unavailable", str(exc)) from exc
        except DataFormatError as exc:
            raise ApiException(400, "validation-error", str(exc)) from exc
        return result_to_dict(result)

    @app.get("/api/results")
    def results(kind: str | None = None, name: str | None = None):
        if kind is not None:
            require_kind(kind)
        return {"results": engine.stored_results(kind=kind, name=name)}

    @app.get("/api/reviews")
    def list_reviews():
        return {"reviews": [r.to_dict() for r in engine.rule_store.list_reviews()]}

    @app.post("/api/reviews", status_code=201)
    def post_review(body: dict):
        kind = body.get("kind")
        if isinstance(kind, str):
            require_kind(kind)
        try:
            review = ReviewRecord.from_dict(body)
        except DataFormatError as exc:
            raise ApiException(400, "validation-error", str(exc)) from exc
        engine.rule_store.record_review(review)
        return review.to_dict()

    @app.get("/api/rules/{doc_id}")
    def get_rule(doc_id: str):
        try:
            return engine.rule_store.get_rule(doc_id).to_dict()
        except UnknownIdError as exc:
            raise ApiException(404, "unknown-id", str(exc)) from exc

    @app.put("/api/rules/{doc_id}")
    def put_rule(doc_id: str, body: dict):
        if body.get("id") not in (None, doc_id):
            raise ApiException(400, "validation-error", "body id does not match path id")
        try:
            doc = TranslatedRuleDoc.from_dict({**body, "id": doc_id})
            revision = engine.rule_store.put_rule(doc)
        except DataFormatError as exc:
            raise ApiException(400, "validation-error", str(exc)) from exc
        except RevisionConflictError as exc:
            raise ApiException(409, "revision-conflict", str(exc)) from exc
        return {"id": doc_id, "revision": revision}

    ui_dir = engine.config.ui_dir
    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(config: AppConfig) -> None:
    """Build the engine from config and run the HTTP server (blocking)."""
    import uvicorn

    engine = TranslationEngine.from_config(config)
    app = create_app(engine)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")

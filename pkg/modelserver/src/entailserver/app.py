"""HTTP layer implementing the entailment wire protocol:

    POST /entail        {"premise": str, "hypothesis": str} -> triple
    POST /entail/batch  {"pairs": [...]} -> {"results": [triple, ...]}

Validation failures answer 400 and a broken or missing weights file
answers 503, both with an {"error": {"code", "message"}} envelope. The
model is loaded lazily on first use and then shared read-only across
requests; a failed load is retried on the next request rather than
cached, so replacing the weights file heals a 503 without a restart.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .model import LexicalNliModel, ModelLoadError, load_model


class RequestProblem(Exception):
    """A request the server refuses, carried to the envelope handler."""

    def __init__(self, status_code: int, code: str, message: str):
        super().__init__(message)
        self.status_code = status_code
        self.code = code
        self.message = message

    def envelope(self) -> dict:
        return {"error": {"code": self.code, "message": self.message}}


def _require_pair(body: object, where: str = "") -> tuple[str, str]:
    if not isinstance(body, dict):
        raise RequestProblem(400, "validation-error", f"{where}expected an object")
    pair = []
    for field in ("premise", "hypothesis"):
        value = body.get(field)
        if not isinstance(value, str) or not value.strip():
            raise RequestProblem(
                400, "validation-error", f"{where}{field} must be a non-empty string"
            )
        pair.append(value)
    return pair[0], pair[1]


def create_app(weights_path: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="entail-modelserver", docs_url=None, redoc_url=None)
    lock = threading.Lock()
    loaded: dict[str, LexicalNliModel] = {}

    def model() -> LexicalNliModel:
        with lock:
            cached = loaded.get("model")
            if cached is not None:
                return cached
            try:
                fresh = load_model(weights_path)
            except ModelLoadError as exc:
                raise RequestProblem(503, "model-unavailable", str(exc)) from exc
            loaded["model"] = fresh
            return fresh

    @app.exception_handler(RequestProblem)
    async def handle_problem(_request: Request, exc: RequestProblem):
        return JSONResponse(status_code=exc.status_code, content=exc.envelope())

    @app.exception_handler(RequestValidationError)
    async def handle_validation(_request: Request, exc: RequestValidationError):
        problem = RequestProblem(400, "validation-error", "malformed request body")
        return JSONResponse(status_code=400, content=problem.envelope())

    @app.get("/health")
    def health():
        return {"status": "ok", "model": model().version}

    @app.post("/entail")
    def entail(body: dict):
        premise, hypothesis = _require_pair(body)
        return model().predict(premise, hypothesis)

    @app.post("/entail/batch")
    def entail_batch(body: dict):
        pairs_field = body.get("pairs")
        if not isinstance(pairs_field, list):
            raise RequestProblem(400, "validation-error", "pairs must be a list")
        pairs = [
            _require_pair(item, where=f"pairs[{index}]: ")
            for index, item in enumerate(pairs_field)
        ]
        return {"results": model().predict_batch(pairs)}

    return app

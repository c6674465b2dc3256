"""CLI entry point: run the scoring server under uvicorn."""

from __future__ import annotations

import argparse

import uvicorn

from .app import create_app


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(
        prog="entail-modelserver",
        description="serve NLI entailment scoring over the entailment wire protocol",
    )
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8100)
    parser.add_argument(
        "--weights",
        default=None,
        help="path to a model weights file (default: the bundled model)",
    )
    args = parser.parse_args(argv)
    uvicorn.run(create_app(args.weights), host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()

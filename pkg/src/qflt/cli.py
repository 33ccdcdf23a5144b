"""Command-line interface.

Every command talks to the HTTP service: by default an in-process
instance (no server needed), or a remote one when --url is given.  Exit
codes: 0 success, 1 verification mismatch, 2 usage/parse/build errors.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

ANALYZE_CSV_COLUMNS = ("n", "variant", "width", "cnot", "toffoli",
                       "t_count", "depth", "t_depth")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class ServiceError(Exception):
    """Non-2xx response from the service."""


class _Client:
    """Minimal JSON client over either transport."""

    def __init__(self, url: str | None, registry: str | None):
        if url is not None:
            if registry is not None:
                raise ServiceError(
                    "--registry applies to the in-process service; "
                    "a remote server uses its own registry")
            import httpx

            self._client = httpx.Client(base_url=url, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                # fastapi's testclient shim warns about its own httpx import.
                warnings.filterwarnings(
                    "ignore",
                    message="Using `httpx` with `starlette.testclient`")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app(registry),
                                      raise_server_exceptions=False)

    def close(self) -> None:
        self._client.close()

    def _finish(self, response) -> dict:
        if response.status_code != 200:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ServiceError(f"{detail}")
        return response.json()

    def get(self, path: str) -> dict:
        return self._finish(self._client.get(path))

    def post(self, path: str, payload: dict) -> dict:
        return self._finish(self._client.post(path, json=payload))


def _block_summary(blocks: dict[str, int]) -> str:
    leading = ["SQUARE", "MULT", "SQUARE_INV"]
    parts = [f"{name}={blocks.get(name, 0)}" for name in leading]
    parts += [f"{name}={blocks[name]}" for name in sorted(blocks)
              if name not in leading]
    return " ".join(parts)


def cmd_synth(client: _Client, args: argparse.Namespace) -> int:
    reply = client.post("/synth", {
        "field": args.field,
        "modulus": args.modulus,
        "variant": args.variant,
        "uncompute": args.uncompute,
    })
    out = args.out
    if out is None:
        suffix = "_uncompute" if args.uncompute else ""
        out = f"qflt_{args.field}_{args.variant}{suffix}.txt"
    Path(out).write_text(reply["circuit_text"])
    print(f"wrote {out}")
    field = reply["field"] or args.field
    print(f"n={reply['n']} field={field} variant={reply['variant']} "
          f"width={reply['width']} gates={reply['gate_count']} "
          f"result={reply['result']}")
    print("blocks: " + _block_summary(reply["blocks"]))
    return EXIT_OK


def cmd_analyze(client: _Client, args: argparse.Namespace) -> int:
    text = Path(args.circuit).read_text()
    reply = client.post("/analyze", {
        "circuit_text": text,
        "decompose": args.decompose,
    })
    for key in ("width", "cnot", "toffoli", "t_count", "depth", "t_depth"):
        print(f"{key}={reply[key]}")
    for kind in sorted(reply["counts"]):
        print(f"count_{kind}={reply['counts'][kind]}")
    if args.csv:
        _append_csv_row(Path(args.csv), reply)
    return EXIT_OK


def _append_csv_row(path: Path, reply: dict) -> None:
    fresh = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if fresh:
            writer.writerow(ANALYZE_CSV_COLUMNS)
        writer.writerow([
            "" if reply.get("n") is None else reply["n"],
            reply.get("variant") or "",
            reply["width"], reply["cnot"], reply["toffoli"],
            reply["t_count"], reply["depth"], reply["t_depth"],
        ])


def cmd_verify(client: _Client, args: argparse.Namespace) -> int:
    reply = client.post("/verify", {
        "field": args.field,
        "modulus": args.modulus,
        "variant": args.variant,
        "mode": "exhaustive" if args.exhaustive else "sample",
        "samples": args.samples,
        "seed": args.seed,
    })
    print(f"field={reply['field']} variant={reply['variant']} mode={reply['mode']}")
    for failure in reply["failures"]:
        print(f"FAIL input={failure['input']} expected={failure['expected']} "
              f"got={failure['got']}")
    print(f"{reply['passed']}/{reply['total']} pass")
    return EXIT_OK if reply["ok"] else EXIT_MISMATCH


def cmd_compare(client: _Client, args: argparse.Namespace) -> int:
    fields = [token.strip() for token in args.fields.split(",") if token.strip()]
    if not fields:
        raise ServiceError("no fields given")
    reply = client.post("/compare", {"fields": fields, "threads": args.threads})
    out = Path(args.out)
    out.write_text(reply["csv"])
    deltas_path = out.with_name(out.stem + "_deltas" + (out.suffix or ".csv"))
    deltas_path.write_text(reply["deltas_csv"])
    if args.format == "csv":
        sys.stdout.write(reply["csv"])
    else:
        sys.stdout.write(reply["table"])
    print(f"wrote {out} and {deltas_path}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(args.registry), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qflt",
        description="Quantum circuit synthesis for GF(2^n) inversion "
                    "via Fermat's little theorem.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--url", default=None,
                        help="base URL of a running service "
                             "(default: in-process)")
    common.add_argument("--registry", default=None,
                        help="path to a field registry file overriding the "
                             "bundled one (in-process only)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", parents=[common],
                       help="synthesize an inversion circuit to a file")
    p.add_argument("--field", required=True,
                   help="registry name or field degree n")
    p.add_argument("--modulus", default=None,
                   help="hex modulus overriding the registry (degree must be n)")
    p.add_argument("--variant", default="waterfall",
                   choices=("waterfall", "baseline", "naive"))
    p.add_argument("--uncompute", action="store_true",
                   help="append copy-out and the inverse circuit")
    p.add_argument("--out", default=None, help="output path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("analyze", parents=[common],
                       help="resource report for a circuit file")
    p.add_argument("circuit", help="circuit text file")
    p.add_argument("--decompose", action="store_true",
                   help="report on the Toffoli-decomposed circuit")
    p.add_argument("--csv", default=None,
                   help="append a CSV row to this path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", parents=[common],
                       help="simulate against the classical inversion oracle")
    p.add_argument("--field", required=True)
    p.add_argument("--modulus", default=None)
    p.add_argument("--variant", default="waterfall",
                   choices=("waterfall", "baseline", "naive"))
    p.add_argument("--exhaustive", action="store_true",
                   help="all nonzero inputs (n <= 16)")
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", parents=[common],
                       help="measure both schedules across fields")
    p.add_argument("--fields", required=True,
                   help="comma-separated registry names or degrees")
    p.add_argument("--out", default="comparison.csv",
                   help="comparison CSV path (deltas CSV written alongside)")
    p.add_argument("--format", default="table", choices=("table", "csv"),
                   help="stdout format")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--registry", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    if args.command == "serve":
        return cmd_serve(args)
    try:
        client = _Client(args.url, args.registry)
    except ServiceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(client, args)
    except ServiceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())

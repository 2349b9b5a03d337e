"""Command-line client.

Each subcommand builds the same pydantic request the HTTP service accepts and
dispatches it: in-process by default, or against a running service when
--server is given. Output is deterministic JSON on stdout. Exit codes:
0 success, 1 identity-check failure, 2 usage error.

Weights are comma-separated integers in the fundamental-weight basis;
rational points are comma-separated 'p/q' strings; e-coordinate points for
trigonometric evaluations are comma-separated floats.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from pydantic import BaseModel, ValidationError

USAGE_ERROR = 2


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _strs(text: str) -> list[str]:
    return [x.strip() for x in text.split(",")]


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxlie",
        description="Exact tensor product multiplicities, box splines and "
                    "volume functions for classical Lie algebras.",
    )
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default is in-process")
    parser.add_argument("--json-indent", type=int, default=None)
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for grid scans inside verify")
    sub = parser.add_subparsers(dest="command", required=True)

    def wpair(p):
        p.add_argument("--algebra", required=True)
        p.add_argument("--lambda", dest="lam", type=_ints, required=True)
        p.add_argument("--mu", type=_ints, required=True)

    p = sub.add_parser("lr", help="tensor product multiplicity")
    wpair(p)
    p.add_argument("--nu", type=_ints, required=True)

    p = sub.add_parser("kostka", help="weight multiplicity")
    wpair(p)
    p.add_argument("--method", choices=["kostant", "fourier", "findiff"],
                   default="kostant")

    p = sub.add_parser("partition", help="Kostant partition function")
    p.add_argument("--algebra", required=True)
    p.add_argument("--point", type=_ints, required=True,
                   help="root lattice point, root coordinates")

    p = sub.add_parser("boxspline", help="box spline density / table / R-polynomial")
    p.add_argument("--algebra", required=True)
    p.add_argument("--point", type=_strs, default=None,
                   help="rational point 'p/q,...', root coordinates")
    p.add_argument("--table", action="store_true")
    p.add_argument("--rpoly", type=_floats, default=None, help="e-coordinates")

    p = sub.add_parser("volume", help="volume function J(lambda', mu'; gamma)")
    wpair(p)
    p.add_argument("--gamma", type=_strs, default=None,
                   help="rational point, fundamental-weight coordinates")
    p.add_argument("--lattice", action="store_true",
                   help="emit the lattice measure JSON")

    p = sub.add_parser("deconv", help="multiplicities recovered from J")
    wpair(p)
    p.add_argument("--method", choices=["algo", "fourier", "findiff"], default="algo")
    p.add_argument("--nu", type=_ints, default=None)

    p = sub.add_parser("rpoly", help="R-polynomial value")
    p.add_argument("--algebra", required=True)
    p.add_argument("--point", type=_floats, required=True, help="e-coordinates")

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--algebra", required=True)
    p.add_argument("--suite", default="all")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _dispatch_local(command: str, payload: BaseModel):
    from .service import app as service

    handlers = {
        "lr": service.handle_lr,
        "kostka": service.handle_kostka,
        "partition": service.handle_partition,
        "boxspline": service.handle_boxspline,
        "volume": service.handle_volume,
        "deconv": service.handle_deconv,
        "rpoly": service.handle_rpoly,
        "verify": service.handle_verify,
    }
    return handlers[command](payload).model_dump(exclude_none=True)


def _dispatch_http(server: str, command: str, payload: BaseModel) -> dict:
    import urllib.request

    url = server.rstrip("/") + "/" + command
    data = payload.model_dump_json(by_alias=True).encode()
    req = urllib.request.Request(url, data=data,
                                 headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read().decode())


def _request_for(args) -> BaseModel:
    from .service import schemas as s

    cmd = args.command
    if cmd == "lr":
        return s.LrRequest(algebra=args.algebra, lam=args.lam, mu=args.mu, nu=args.nu)
    if cmd == "kostka":
        return s.KostkaRequest(algebra=args.algebra, lam=args.lam, mu=args.mu,
                               method=args.method)
    if cmd == "partition":
        return s.PartitionRequest(algebra=args.algebra, point=args.point)
    if cmd == "boxspline":
        return s.BoxsplineRequest(algebra=args.algebra, point=args.point,
                                  table=args.table, rpoly=args.rpoly)
    if cmd == "volume":
        return s.VolumeRequest(algebra=args.algebra, lam=args.lam, mu=args.mu,
                               gamma=args.gamma, lattice=args.lattice)
    if cmd == "deconv":
        return s.DeconvRequest(algebra=args.algebra, lam=args.lam, mu=args.mu,
                               method=args.method, nu=args.nu)
    if cmd == "rpoly":
        return s.RPolyRequest(algebra=args.algebra, point=args.point)
    if cmd == "verify":
        return s.VerifyRequest(algebra=args.algebra, suite=args.suite,
                               threads=args.threads)
    raise ValueError(cmd)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app as service

        uvicorn.run(service.app, host=args.host, port=args.port)
        return 0

    try:
        payload = _request_for(args)
        if args.server:
            result = _dispatch_http(args.server, args.command, payload)
        else:
            result = _dispatch_local(args.command, payload)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except Exception as exc:  # HTTPException from handlers, network errors
        detail = getattr(exc, "detail", None)
        print(f"error: {detail or exc}", file=sys.stderr)
        return USAGE_ERROR

    print(json.dumps(result, indent=args.json_indent, sort_keys=False))
    if args.command == "verify" and not result.get("passed", False):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

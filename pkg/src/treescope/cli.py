"""Command line entry points: serve a bundle or export payloads headlessly.

Exit codes: 0 success, 1 ingest/replay failure, 2 usage error (argparse).
"""

from __future__ import annotations

import argparse
import socket
import sys

from .errors import TreescopeError
from .provenance import ENGINE_VERSION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treescope")
    parser.add_argument("--version", action="version", version=f"treescope {ENGINE_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="launch the session server on a bundle")
    serve.add_argument("--bundle", required=True, help="path to the bundle manifest JSON")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--host", default="127.0.0.1")

    export = sub.add_parser("export", help="write payload files without a server")
    export.add_argument("--bundle", required=True)
    export.add_argument("--script", default=None, help="replay this .tsescript instead of defaults")
    export.add_argument("--out", required=True)
    return parser


def cmd_serve(args) -> int:
    import uvicorn

    from .ingest import Bundle
    from .server import create_app
    from .session import Session

    try:
        session = Session(Bundle.load(args.bundle))
    except TreescopeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        sock.bind((args.host, args.port))
    except OSError as e:
        print(f"error: PortInUse: cannot bind {args.host}:{args.port} ({e})", file=sys.stderr)
        return 1
    host, port = sock.getsockname()[:2]
    app = create_app(session)
    print(f"treescope serving http://{host}:{port}", flush=True)
    config = uvicorn.Config(app, log_level="warning")
    uvicorn.Server(config).run(sockets=[sock])
    return 0


def cmd_export(args) -> int:
    from .server import headless_export

    try:
        written = headless_export(args.bundle, args.out, args.script)
    except (TreescopeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args)
    return cmd_export(args)


if __name__ == "__main__":
    sys.exit(main())

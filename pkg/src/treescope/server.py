"""HTTP session host plus headless export.

One session per process. All mutations funnel through Session.execute
(single writer); GET endpoints are pure reads returning deterministic
bytes. After each mutation a {"panels": [ids]} event is pushed on the
server-sent-events channel; clients re-fetch the listed payloads.
"""

from __future__ import annotations

import io
import json
import os
import queue
import threading

from fastapi import FastAPI, Request, Response
from fastapi.responses import StreamingResponse

from . import errors, panels, provenance
from .canonical import canonical_dumps
from .errors import TreescopeError
from .ingest import Bundle
from .panels import PlotPayload
from .session import Session, remove_panel

_STATUS = {
    errors.UnknownPanel: 404,
    errors.UnknownId: 404,
    errors.UnknownColumn: 404,
    errors.UnknownNode: 404,
    errors.CycleDetected: 409,
}


def _status_for(exc: TreescopeError) -> int:
    for cls, code in _STATUS.items():
        if isinstance(exc, cls):
            return code
    return 400


class Notifier:
    """Fan-out of panel-change events to SSE subscribers."""

    def __init__(self):
        self._subs: list[queue.Queue] = []
        self._lock = threading.Lock()

    def subscribe(self) -> queue.Queue:
        q: queue.Queue = queue.Queue()
        with self._lock:
            self._subs.append(q)
        return q

    def unsubscribe(self, q: queue.Queue):
        with self._lock:
            if q in self._subs:
                self._subs.remove(q)

    def broadcast(self, panel_ids: list[str]):
        msg = canonical_dumps({"panels": sorted(set(panel_ids))})
        with self._lock:
            for q in self._subs:
                q.put(msg)


def _payload_response(payload: PlotPayload) -> Response:
    body = {**payload.to_canonical(), "provenance_id": payload.provenance_id}
    return Response(content=canonical_dumps(body), media_type="application/json")


def payload_csv(payload: PlotPayload) -> str:
    """Flatten a payload's series into CSV, one shape per payload kind."""
    out = io.StringIO()
    s = payload.series

    def row(cells):
        out.write(",".join(str(c) for c in cells) + "\n")

    if payload.kind == "bars":
        row(["feature"] + list(s["samples"]))
        for f, vals in zip(s["features"], s["values"]):
            row([f] + [repr(float(v)) for v in vals])
    elif payload.kind == "density":
        row(["feature", "x", "y"])
        for c in s["curves"]:
            for x, y in zip(c["x"], c["y"]):
                row([c["feature"], repr(float(x)), repr(float(y))])
    elif payload.kind == "heatmap":
        row(["row_id"] + list(s["col_ids"]))
        for rid, vals in zip(s["row_ids"], s["values"]):
            row([rid] + [repr(float(v)) for v in vals])
    elif payload.kind in ("scatter", "biplot"):
        row(["id", "x", "y", "color"])
        for i, sid in enumerate(s["ids"]):
            color = s["color"][i] if s.get("color") else ""
            row([sid, repr(float(s["x"][i])), repr(float(s["y"][i])), color])
        for a in s.get("arrows", []):
            row([f"arrow:{a['name']}", repr(float(a["x"])), repr(float(a["y"])), ""])
    elif payload.kind == "ranked-bars":
        row(["feature_id", "loading"])
        for fid, v in zip(s["ids"], s["values"]):
            row([fid, repr(float(v))])
    elif payload.kind == "tree":
        row(["id", "label", "parent", "x", "y", "is_leaf"])
        for n in s["nodes"]:
            row([n["id"], n["label"] or "", "" if n["parent"] is None else n["parent"],
                 repr(float(n["x"])), repr(float(n["y"])), n["is_leaf"]])
    elif payload.kind == "table":
        row(s["columns"])
        for rec in s["rows"]:
            row(["" if rec.get(c) is None else rec.get(c) for c in s["columns"]])
    else:
        raise ValueError(f"no CSV shape for kind {payload.kind!r}")
    return out.getvalue()


def create_app(session: Session) -> FastAPI:
    app = FastAPI(title="treescope", version=provenance.ENGINE_VERSION)
    notifier = Notifier()
    app.state.session = session
    app.state.notifier = notifier

    @app.exception_handler(TreescopeError)
    async def on_engine_error(request: Request, exc: TreescopeError):
        body = {"error": type(exc).__name__, "message": str(exc)}
        name = getattr(exc, "name", None)
        if name:
            body["parameter"] = name
        return Response(content=canonical_dumps(body), media_type="application/json",
                        status_code=_status_for(exc))

    @app.get("/api/dataset/summary")
    def summary():
        return Response(content=canonical_dumps(session.summary()),
                        media_type="application/json")

    @app.get("/api/available")
    def available():
        return Response(
            content=canonical_dumps({
                "panels": panels.available_panels(session.experiment),
                "help_text": panels.HELP_TEXT,
                "schemas": {t: {"data": list(s["data"]), "visual": list(s["visual"]),
                                "kind": s["kind"]}
                            for t, s in panels.PANEL_SCHEMAS.items()},
            }),
            media_type="application/json")

    @app.get("/api/panels")
    def list_panels():
        return Response(content=canonical_dumps(session.layout.to_canonical()),
                        media_type="application/json")

    @app.post("/api/panels")
    async def add_panel(request: Request):
        args = await request.json()
        seq, affected = session.execute("add_panel", args)
        notifier.broadcast(affected)
        return {"seq": seq, "id": args["id"], "panels": affected}

    @app.patch("/api/panels/{panel_id}/params")
    async def patch_params(panel_id: str, request: Request):
        args = await request.json()
        args["panel"] = panel_id
        seq, affected = session.execute("set_params", args)
        notifier.broadcast(affected)
        return {"seq": seq, "panels": affected}

    @app.delete("/api/panels/{panel_id}")
    def delete_panel(panel_id: str):
        remove_panel(session, panel_id)
        remaining = [p.id for p in session.layout.panels]
        notifier.broadcast(remaining)
        return {"panels": remaining}

    @app.post("/api/selection")
    async def post_selection(request: Request):
        args = await request.json()
        seq, affected = session.execute("select", args)
        notifier.broadcast(affected)
        return {"seq": seq, "panels": affected}

    @app.get("/api/panels/{panel_id}/payload")
    def get_payload(panel_id: str):
        return _payload_response(session.payload(panel_id))

    @app.get("/api/panels/{panel_id}/script")
    def get_script(panel_id: str):
        script = provenance.export_script(session, panel_id)
        return Response(content=script.dumps(), media_type="application/json")

    @app.get("/api/export/{panel_id}.csv")
    def get_csv(panel_id: str):
        csv = payload_csv(session.payload(panel_id))
        return Response(content=csv, media_type="text/csv")

    @app.get("/api/events")
    def events():
        q = notifier.subscribe()

        def stream():
            try:
                while True:
                    try:
                        msg = q.get(timeout=1.0)
                        yield f"data: {msg}\n\n"
                    except queue.Empty:
                        yield ": keepalive\n\n"
            finally:
                notifier.unsubscribe(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app


def headless_export(bundle_path: str, out_dir: str, script_path: str | None = None) -> list[str]:
    """Write payload JSON + CSV files; with a script, write the replayed
    payload instead of the default layout. Everything is computed before
    the first byte is written so failures leave no partial output."""
    bundle = Bundle.load(bundle_path)
    outputs: list[tuple[str, bytes]] = []
    if script_path:
        with open(script_path, "r", encoding="utf-8") as fh:
            script = provenance.Script.loads(fh.read())
        payload = provenance.replay(script, bundle)
        stem = script.header["target_panel"]
        body = {**payload.to_canonical(), "provenance_id": payload.provenance_id}
        outputs.append((f"{stem}.json", canonical_dumps(body).encode("utf-8")))
        outputs.append((f"{stem}.csv", payload_csv(payload).encode("utf-8")))
    else:
        session = Session(bundle)
        for state in session.layout.panels:
            payload = session.payload(state.id)
            body = {**payload.to_canonical(), "provenance_id": payload.provenance_id}
            outputs.append((f"{state.id}.json", canonical_dumps(body).encode("utf-8")))
            outputs.append((f"{state.id}.csv", payload_csv(payload).encode("utf-8")))
    os.makedirs(out_dir, exist_ok=True)
    if not os.access(out_dir, os.W_OK):
        raise OSError(f"output directory not writable: {out_dir}")
    written = []
    for name, data in outputs:
        path = os.path.join(out_dir, name)
        with open(path, "wb") as fh:
            fh.write(data)
        written.append(path)
    return written

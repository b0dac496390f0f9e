"""Single-writer session state: experiment + layout + command log + cache.

The session is the only mutable object in the engine. Callers (HTTP
handlers, the CLI, replay) funnel every mutation through execute(), which
validates, applies, appends to the log and invalidates cached payloads.
"""

from __future__ import annotations

import threading
from dataclasses import replace
from typing import Optional

from . import container, ordination, panels, transforms
from .container import HierarchicalExperiment
from .errors import SchemaViolation, UnknownPanel
from .ingest import Bundle, load_bundle
from .panels import PanelState, PlotPayload, SelectionEvent, SessionLayout
from .provenance import Command, validate_command
from .transforms import TransformSpec


class Session:
    def __init__(self, bundle: Bundle, record_defaults: bool = True):
        self.bundle = bundle
        self.experiment, self.diagnostics = load_bundle(bundle)
        self.layout = SessionLayout(panels=())
        self.log: list[Command] = []
        self.active_selections: dict[tuple[str, str], tuple[str, ...]] = {}
        self._cache: dict[str, PlotPayload] = {}
        self._next_panel = 1
        self._lock = threading.Lock()
        self._append("load_bundle", {"digest": bundle.digest()})
        if record_defaults:
            for state in panels.default_layout(self.experiment).panels:
                self.execute("add_panel", {
                    "id": state.id, "type": state.type,
                    "data_params": _plain(state.data_params),
                    "visual_params": _plain(state.visual_params),
                    "selection_params": _plain(state.selection_params),
                })

    # -- log ------------------------------------------------------------------

    def _append(self, verb: str, args: dict) -> int:
        validate_command(verb, args)
        seq = len(self.log) + 1
        self.log.append(Command(seq=seq, verb=verb, args=args))
        return seq

    def execute(self, verb: str, args: dict):
        """Validate, apply and record one command. Returns (seq, affected
        panel ids)."""
        validate_command(verb, args)
        with self._lock:
            affected = _APPLY[verb](self, args)
            seq = self._append(verb, args)
            self._cache.clear()
        return seq, affected

    # -- reads ----------------------------------------------------------------

    def payload(self, panel_id: str) -> PlotPayload:
        if panel_id in self._cache:
            return self._cache[panel_id]
        state = self.layout.panel(panel_id)
        out = panels.compute_payload(self.experiment, state, self.active_selections)
        self._cache[panel_id] = out
        return out

    def summary(self) -> dict:
        exp = self.experiment
        return {
            "features": exp.n_features,
            "samples": exp.n_samples,
            "assays": sorted(exp.assays),
            "reduced_dims": sorted(exp.reduced_dims),
            "has_row_tree": exp.row_tree is not None,
            "has_col_tree": exp.col_tree is not None,
            "available_panels": panels.available_panels(exp),
            "row_data_columns": exp.row_data.names,
            "col_data_columns": exp.col_data.names,
        }


def _plain(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        out[k] = v.to_canonical() if isinstance(v, TransformSpec) else v
    return out


# -- command executors --------------------------------------------------------

def _apply_load(session: Session, args: dict):
    raise SchemaViolation("load_bundle may appear only once, at session start")


def _apply_transform(session: Session, args: dict):
    assay = session.experiment.assay(args["assay"])
    spec = TransformSpec(kind=args["kind"],
                         pseudocount=float(args.get("pseudocount", transforms.DEFAULT_PSEUDOCOUNT)))
    if spec.kind == "relative_abundance":
        derived = transforms.relative_abundance(assay, sample_ids=session.experiment.sample_ids)
    else:
        derived = transforms.apply_transform(assay, spec)
    session.experiment = session.experiment.with_assay(derived)
    return []


def _apply_ordinate(session: Session, args: dict):
    exp = session.experiment
    method, k = args["method"], args["k"]
    if method == "pca":
        rd = ordination.pca(exp.assay(args["assay"]), k)
    elif method == "pcoa":
        metric = args.get("metric") or "bray_curtis"
        dist = (ordination.bray_curtis(exp.assay(args["assay"]), exp.sample_ids)
                if metric == "bray_curtis" else ordination.euclidean(exp.assay(args["assay"])))
        rd = ordination.pcoa(dist, k)
    else:
        rd = ordination.rda(exp, args["assay"], args["covariates"], k)
    session.experiment = exp.with_reduced_dim(args["name"], rd)
    return []


def _apply_agglomerate(session: Session, args: dict):
    session.experiment = transforms.agglomerate_by_rank(session.experiment, args["rank_column"])
    session.active_selections = {}
    return [p.id for p in session.layout.panels]


def _apply_subset(session: Session, args: dict):
    session.experiment = container.subset(
        session.experiment,
        keep_features=args.get("features"),
        keep_samples=args.get("samples"))
    session.active_selections = {}
    return [p.id for p in session.layout.panels]


def _apply_add_panel(session: Session, args: dict):
    pid = args.get("id")
    if pid is None:
        while f"panel-{session._next_panel}" in {p.id for p in session.layout.panels}:
            session._next_panel += 1
        pid = f"panel-{session._next_panel}"
        args["id"] = pid  # recorded command must pin the id for replay
    data = args.get("data_params")
    if data is None:
        data = _plain(panels.default_params(args["type"], session.experiment))
        args["data_params"] = data
    state = PanelState(
        id=pid, type=args["type"], data_params=dict(data),
        visual_params=dict(args.get("visual_params") or {}),
        selection_params=dict(args.get("selection_params") or {}),
    )
    session.layout = SessionLayout(panels=session.layout.panels + (state,))
    session._next_panel += 1
    return [pid]


def _apply_set_params(session: Session, args: dict):
    state = session.layout.panel(args["panel"])
    new = replace(
        state,
        data_params={**state.data_params, **(args.get("data_params") or {})},
        visual_params={**state.visual_params, **(args.get("visual_params") or {})},
        selection_params={**state.selection_params, **(args.get("selection_params") or {})},
    )
    session.layout = SessionLayout(panels=tuple(
        new if p.id == state.id else p for p in session.layout.panels))
    return [state.id]


def _apply_select(session: Session, args: dict):
    event = SelectionEvent(origin=args["origin"], axis=args["axis"], ids=tuple(args["ids"]))
    panels.validate_event(session.experiment, event)
    affected = panels.apply_selection(session.layout, event)
    session.active_selections[(event.origin, event.axis)] = event.ids
    return affected


def remove_panel(session: Session, panel_id: str):
    """Panel removal is UI chrome, not provenance: it is not logged."""
    state = session.layout.panel(panel_id)
    remaining = tuple(p for p in session.layout.panels if p.id != panel_id)
    cleaned = []
    for p in remaining:
        sel = dict(p.selection_params)
        changed = False
        for key in ("row_source", "col_source"):
            if sel.get(key) == panel_id:
                sel[key] = None
                changed = True
        cleaned.append(replace(p, selection_params=sel) if changed else p)
    with session._lock:
        session.layout = SessionLayout(panels=tuple(cleaned))
        session._cache.clear()
    return state


_APPLY = {
    "load_bundle": _apply_load,
    "transform": _apply_transform,
    "ordinate": _apply_ordinate,
    "agglomerate": _apply_agglomerate,
    "subset": _apply_subset,
    "add_panel": _apply_add_panel,
    "set_params": _apply_set_params,
    "select": _apply_select,
}

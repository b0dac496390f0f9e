"""Panel engine: registry, availability, payload computation, linked selections.

Each panel type declares a parameter schema (Data / Visual / Selection
groups). compute_payload turns an immutable experiment plus one panel
state plus the active selections into a plot-ready payload whose canonical
JSON bytes are a pure function of those inputs — that byte form is the
provenance-equality target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.cluster.hierarchy import linkage

from . import ordination, transforms
from .canonical import canonical_bytes, token
from .container import HierarchicalExperiment, subset as subset_exp
from .errors import (BadComponent, BadParameter, CycleDetected, EmptyAfterRestriction,
                     UnavailablePanel, UnknownNode, UnknownPanel)
from .transforms import TransformSpec
from .tree import Tree

PANEL_ORDER = (
    "AbundancePlot", "AbundanceDensityPlot", "HeatmapPlot",
    "RowDataTable", "ColumnDataTable",
    "RowTreePlot", "ColumnTreePlot",
    "ReducedDimPlot", "RDAPlot", "LoadingPlot",
)

DEFAULT_PRIORITY = ("AbundancePlot", "ReducedDimPlot", "RowTreePlot",
                    "HeatmapPlot", "AbundanceDensityPlot", "LoadingPlot")

MAX_DEFAULT_PANELS = 6

PANEL_SCHEMAS = {
    "AbundancePlot": {"data": ("assay", "rank_column", "top_n"),
                      "visual": ("bar_order", "palette"), "kind": "bars"},
    "AbundanceDensityPlot": {"data": ("assay", "top_n"),
                             "visual": ("palette",), "kind": "density"},
    "HeatmapPlot": {"data": ("assay", "transform", "cluster_rows", "cluster_cols"),
                    "visual": ("palette", "show_labels"), "kind": "heatmap"},
    "ReducedDimPlot": {"data": ("reduced_dim", "x_component", "y_component"),
                       "visual": ("color_by", "point_size", "palette"), "kind": "scatter"},
    "RDAPlot": {"data": ("reduced_dim", "x_component", "y_component"),
                "visual": ("color_by", "point_size", "palette"), "kind": "biplot"},
    "LoadingPlot": {"data": ("reduced_dim", "component", "top_n"),
                    "visual": ("palette",), "kind": "ranked-bars"},
    "RowTreePlot": {"data": (), "visual": ("color_by", "show_labels"), "kind": "tree"},
    "ColumnTreePlot": {"data": (), "visual": ("color_by", "show_labels"), "kind": "tree"},
    "RowDataTable": {"data": ("page", "page_size"), "visual": (), "kind": "table"},
    "ColumnDataTable": {"data": ("page", "page_size"), "visual": (), "kind": "table"},
}

HELP_TEXT = {
    "AbundancePlot": "Stacked per-sample composition at a chosen rank; top features plus 'Other'.",
    "AbundanceDensityPlot": "Density of per-sample abundances for the top features.",
    "HeatmapPlot": "Transformed assay values, optionally clustered on both axes.",
    "ReducedDimPlot": "Scatter of two ordination components for all samples.",
    "RDAPlot": "Constrained ordination scatter with covariate arrows.",
    "LoadingPlot": "Features ranked by their contribution to one component.",
    "RowTreePlot": "Feature hierarchy; click a node to select its descendants.",
    "ColumnTreePlot": "Sample hierarchy; click a node to select its descendants.",
    "RowDataTable": "Feature annotations, pageable and selectable.",
    "ColumnDataTable": "Sample annotations, pageable and selectable.",
}


@dataclass(frozen=True)
class PanelState:
    id: str
    type: str
    data_params: dict = field(default_factory=dict)
    visual_params: dict = field(default_factory=dict)
    selection_params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.type not in PANEL_SCHEMAS:
            raise BadParameter("type", f"unknown panel type {self.type!r}")
        schema = PANEL_SCHEMAS[self.type]
        for key in self.data_params:
            if key not in schema["data"]:
                raise BadParameter(key, f"{self.type} has no data parameter {key!r}")
        for key in self.visual_params:
            if key not in schema["visual"]:
                raise BadParameter(key, f"{self.type} has no visual parameter {key!r}")
        for key in self.selection_params:
            if key not in ("row_source", "col_source", "restrict"):
                raise BadParameter(key, f"unknown selection parameter {key!r}")
        if self.selection_params.get("row_source") == self.id or \
           self.selection_params.get("col_source") == self.id:
            raise BadParameter("row_source", "a panel cannot select from itself")

    def to_canonical(self):
        data = dict(self.data_params)
        if isinstance(data.get("transform"), TransformSpec):
            data["transform"] = data["transform"].to_canonical()
        return {"id": self.id, "type": self.type, "data_params": data,
                "visual_params": dict(self.visual_params),
                "selection_params": dict(self.selection_params)}


@dataclass(frozen=True)
class SelectionEvent:
    origin: str
    axis: str  # "rows" | "columns"
    ids: tuple[str, ...]

    def __post_init__(self):
        if self.axis not in ("rows", "columns"):
            raise BadParameter("axis", f"bad selection axis {self.axis!r}")
        object.__setattr__(self, "ids", tuple(self.ids))


@dataclass(frozen=True)
class PlotPayload:
    panel: str
    kind: str
    series: dict
    legend: list
    axis: dict
    provenance_id: str
    canonical: bytes

    def to_canonical(self):
        return {"panel": self.panel, "kind": self.kind, "series": self.series,
                "legend": self.legend, "axis": self.axis}


def _finish_payload(panel_id, kind, series, legend=None, axis=None) -> PlotPayload:
    body = {"panel": panel_id, "kind": kind, "series": series,
            "legend": legend or [], "axis": axis or {}}
    raw = canonical_bytes(body)
    return PlotPayload(panel=panel_id, kind=kind, series=body["series"],
                       legend=body["legend"], axis=body["axis"],
                       provenance_id=token(body), canonical=raw)


@dataclass(frozen=True)
class SessionLayout:
    panels: tuple[PanelState, ...]

    def __post_init__(self):
        ids = [p.id for p in self.panels]
        if len(set(ids)) != len(ids):
            raise BadParameter("id", "duplicate panel ids")
        for p in self.panels:
            for key in ("row_source", "col_source"):
                src = p.selection_params.get(key)
                if src is not None and src not in ids:
                    raise UnknownPanel(f"panel {p.id!r} selects from unknown panel {src!r}")
        self._toposort()  # raises CycleDetected

    def panel(self, panel_id: str) -> PanelState:
        for p in self.panels:
            if p.id == panel_id:
                return p
        raise UnknownPanel(f"no panel {panel_id!r}")

    def edges(self) -> list[tuple[str, str, str]]:
        """(origin, receiver, axis) pairs derived from selection params."""
        out = []
        for p in self.panels:
            src = p.selection_params.get("row_source")
            if src:
                out.append((src, p.id, "rows"))
            src = p.selection_params.get("col_source")
            if src:
                out.append((src, p.id, "columns"))
        return out

    def _toposort(self) -> list[str]:
        order = []
        incoming = {p.id: set() for p in self.panels}
        for origin, receiver, _ in self.edges():
            incoming[receiver].add(origin)
        pending = dict(incoming)
        while pending:
            ready = [pid for pid, deps in pending.items() if not (deps & pending.keys())]
            if not ready:
                raise CycleDetected("selection graph has a cycle")
            # keep layout order for determinism
            for p in self.panels:
                if p.id in ready:
                    order.append(p.id)
                    del pending[p.id]
        return order

    def downstream(self, origin: str, axis: str) -> list[str]:
        """Panels transitively downstream of origin along matching-axis
        edges, in topological order."""
        self.panel(origin)
        edges = [(o, r) for o, r, a in self.edges() if a == axis]
        reached = set()
        frontier = {origin}
        while frontier:
            nxt = {r for o, r in edges if o in frontier} - reached
            reached |= nxt
            frontier = nxt
        return [pid for pid in self._toposort() if pid in reached]

    def to_canonical(self):
        return {"panels": [p.to_canonical() for p in self.panels]}


# --- availability and defaults -----------------------------------------------

def available_panels(exp: HierarchicalExperiment) -> list[str]:
    out = ["AbundancePlot", "AbundanceDensityPlot", "HeatmapPlot",
           "RowDataTable", "ColumnDataTable"]
    if exp.row_tree is not None:
        out.append("RowTreePlot")
    if exp.col_tree is not None:
        out.append("ColumnTreePlot")
    if exp.reduced_dims:
        out.append("ReducedDimPlot")
    if any(rd.kind == "constrained" for rd in exp.reduced_dims.values()):
        out.append("RDAPlot")
    if any(rd.loadings is not None for rd in exp.reduced_dims.values()):
        out.append("LoadingPlot")
    return sorted(out, key=PANEL_ORDER.index)


def default_params(ptype: str, exp: HierarchicalExperiment) -> dict:
    first_assay = next(iter(exp.assays))
    data: dict = {}
    if ptype == "AbundancePlot":
        data = {"assay": first_assay, "rank_column": None, "top_n": 9}
    elif ptype == "AbundanceDensityPlot":
        data = {"assay": first_assay, "top_n": 5}
    elif ptype == "HeatmapPlot":
        data = {"assay": first_assay, "transform": TransformSpec("identity"),
                "cluster_rows": True, "cluster_cols": True}
    elif ptype in ("ReducedDimPlot", "RDAPlot"):
        names = [n for n, rd in exp.reduced_dims.items()
                 if ptype == "ReducedDimPlot" or rd.kind == "constrained"]
        data = {"reduced_dim": names[0], "x_component": 1, "y_component": 2}
        if exp.reduced_dims[names[0]].k < 2:
            data["y_component"] = 1
    elif ptype == "LoadingPlot":
        names = [n for n, rd in exp.reduced_dims.items() if rd.loadings is not None]
        data = {"reduced_dim": names[0], "component": 1, "top_n": 10}
    elif ptype in ("RowDataTable", "ColumnDataTable"):
        data = {"page": 1, "page_size": 25}
    return data


def default_layout(exp: HierarchicalExperiment) -> SessionLayout:
    avail = available_panels(exp)
    chosen = list(avail)
    if len(chosen) > MAX_DEFAULT_PANELS:
        prio = [t for t in DEFAULT_PRIORITY if t in avail]
        rest = [t for t in avail if t not in prio]
        chosen = (prio + rest)[:MAX_DEFAULT_PANELS]
        chosen.sort(key=PANEL_ORDER.index)
    panels = tuple(
        PanelState(id=f"panel-{i + 1}", type=t, data_params=default_params(t, exp),
                   selection_params={"row_source": None, "col_source": None, "restrict": False})
        for i, t in enumerate(chosen)
    )
    return SessionLayout(panels=panels)


# --- selections --------------------------------------------------------------

def validate_event(exp: HierarchicalExperiment, event: SelectionEvent):
    universe = set(exp.feature_ids if event.axis == "rows" else exp.sample_ids)
    bad = [i for i in event.ids if i not in universe]
    if bad:
        raise BadParameter("ids", f"selection ids outside the experiment: {bad[:5]}")


def select_tree_node(exp: HierarchicalExperiment, axis: str, node_id: int,
                     origin: str = "") -> SelectionEvent:
    """Selection of every linked id at or below a tree node."""
    tree = exp.row_tree if axis == "rows" else exp.col_tree
    links = exp.row_links if axis == "rows" else exp.col_links
    ids = exp.feature_ids if axis == "rows" else exp.sample_ids
    if tree is None or not tree.has_node(node_id):
        raise UnknownNode(f"no node {node_id} on the {axis} tree")
    below = set(tree.descendants(node_id))
    selected = tuple(i for i, e in zip(ids, links.entries) if e.node_id in below)
    return SelectionEvent(origin=origin, axis="rows" if axis == "rows" else "columns",
                          ids=selected)


def apply_selection(layout: SessionLayout, event: SelectionEvent) -> list[str]:
    return layout.downstream(event.origin, event.axis)


def _incoming(state: PanelState, active_selections) -> tuple[Optional[tuple], Optional[tuple]]:
    """Resolve (row ids, col ids) restrictions for a panel, or None per axis."""
    rows = cols = None
    if not state.selection_params.get("restrict"):
        return None, None
    src = state.selection_params.get("row_source")
    if src and (src, "rows") in active_selections:
        rows = tuple(active_selections[(src, "rows")])
    src = state.selection_params.get("col_source")
    if src and (src, "columns") in active_selections:
        cols = tuple(active_selections[(src, "columns")])
    return rows, cols


def _restrict(exp: HierarchicalExperiment, rows, cols) -> HierarchicalExperiment:
    if rows is None and cols is None:
        return exp
    if rows is not None and not rows:
        raise EmptyAfterRestriction("row selection is empty")
    if cols is not None and not cols:
        raise EmptyAfterRestriction("column selection is empty")
    out = subset_exp(exp, keep_features=rows, keep_samples=cols)
    if out.n_features == 0 or out.n_samples == 0:
        raise EmptyAfterRestriction("nothing left after restriction")
    return out


# --- payload computation -----------------------------------------------------

def compute_payload(exp: HierarchicalExperiment, state: PanelState,
                    active_selections=None) -> PlotPayload:
    active_selections = active_selections or {}
    if state.type not in available_panels(exp):
        raise UnavailablePanel(f"{state.type} is not available for this experiment")
    rows, cols = _incoming(state, active_selections)
    fn = _COMPUTE[state.type]
    return fn(exp, state, rows, cols)


def _abundance(exp, state, rows, cols):
    sub = _restrict(exp, rows, cols)
    rank = state.data_params.get("rank_column")
    if rank:
        sub = transforms.agglomerate_by_rank(sub, rank)
    assay = sub.assay(state.data_params["assay"])
    rel = transforms.relative_abundance(assay, sample_ids=sub.sample_ids)
    top_n = int(state.data_params.get("top_n", 9))
    top = transforms.top_features(rel, top_n, "mean", feature_ids=sub.feature_ids)
    idx = {f: i for i, f in enumerate(sub.feature_ids)}
    order = list(sub.sample_ids)
    if state.visual_params.get("bar_order") == "id":
        order = sorted(order)
    spos = {s: i for i, s in enumerate(sub.sample_ids)}
    values = []
    for f in top:
        values.append([float(rel.values[idx[f], spos[s]]) for s in order])
    other = [float(max(0.0, 1.0 - sum(col))) for col in zip(*values)] if values else [1.0] * len(order)
    series = {"samples": order, "features": top + ["Other"], "values": values + [other]}
    return _finish_payload(state.id, "bars", series, legend=top + ["Other"],
                           axis={"y_label": "relative abundance"})


def _silverman_bandwidth(x: np.ndarray) -> float:
    n = len(x)
    sd = float(x.std(ddof=1)) if n > 1 else 0.0
    q75, q25 = np.percentile(x, [75, 25])
    iqr = float(q75 - q25)
    spread = min(sd, iqr / 1.34) if iqr > 0 else sd
    bw = 0.9 * spread * n ** (-1 / 5)
    if bw <= 0:
        bw = max(float(np.abs(x).max(initial=0.0)), 1.0) * 1e-3
    return bw


def _density(exp, state, rows, cols):
    sub = _restrict(exp, rows, cols)
    assay = sub.assay(state.data_params["assay"])
    rel = transforms.relative_abundance(assay, sample_ids=sub.sample_ids)
    top_n = int(state.data_params.get("top_n", 5))
    top = transforms.top_features(rel, top_n, "mean", feature_ids=sub.feature_ids)
    idx = {f: i for i, f in enumerate(sub.feature_ids)}
    curves = []
    for f in top:
        x = rel.values[idx[f], :]
        bw = _silverman_bandwidth(x)
        lo, hi = float(x.min() - 3 * bw), float(x.max() + 3 * bw)
        grid = np.linspace(lo, hi, 128)
        dens = np.zeros_like(grid)
        for xi in x:
            dens += np.exp(-0.5 * ((grid - xi) / bw) ** 2)
        dens /= len(x) * bw * math.sqrt(2 * math.pi)
        curves.append({"feature": f, "x": grid, "y": dens, "bandwidth": bw})
    series = {"curves": curves}
    return _finish_payload(state.id, "density", series, legend=top,
                           axis={"x_label": "relative abundance", "y_label": "density"})


def _cluster_order(values: np.ndarray, ids) -> list[int]:
    """Deterministic leaf order: average-linkage/Euclidean dendrogram walked
    tightest-cluster-first, ids breaking ties."""
    n = values.shape[0]
    if n < 2:
        return list(range(n))
    Z = linkage(values, method="average", metric="euclidean")

    def info(node):
        # returns (height, min id, leaf list)
        if node < n:
            return 0.0, ids[node], [node]
        row = Z[node - n]
        a = info(int(row[0]))
        b = info(int(row[1]))
        first, second = sorted((a, b), key=lambda t: (t[0], t[1]))
        return float(row[2]), min(a[1], b[1]), first[2] + second[2]

    return info(2 * n - 2)[2]


def _heatmap(exp, state, rows, cols):
    sub = _restrict(exp, rows, cols)
    assay = sub.assay(state.data_params["assay"])
    spec = state.data_params.get("transform", TransformSpec("identity"))
    if isinstance(spec, dict):
        spec = TransformSpec(**spec)
    values = transforms.apply_transform(assay, spec).values
    rid = list(sub.feature_ids)
    cid = list(sub.sample_ids)
    if state.data_params.get("cluster_rows", True):
        order = _cluster_order(values, rid)
        values, rid = values[order, :], [rid[i] for i in order]
    if state.data_params.get("cluster_cols", True):
        order = _cluster_order(values.T, cid)
        values, cid = values[:, order], [cid[i] for i in order]
    series = {"row_ids": rid, "col_ids": cid, "values": values,
              "transform": spec.to_canonical()}
    return _finish_payload(state.id, "heatmap", series)


def _scatter_core(exp, state, cols):
    name = state.data_params["reduced_dim"]
    rd = exp.reduced_dim(name)
    xi = int(state.data_params.get("x_component", 1))
    yi = int(state.data_params.get("y_component", 2))
    for c in (xi, yi):
        if c < 1 or c > rd.k:
            raise BadComponent(f"component {c} outside 1..{rd.k}")
    keep = list(range(exp.n_samples))
    if cols is not None:
        if not cols:
            raise EmptyAfterRestriction("column selection is empty")
        keepset = set(cols)
        keep = [i for i, s in enumerate(exp.sample_ids) if s in keepset]
        if not keep:
            raise EmptyAfterRestriction("nothing left after restriction")
    ids = [exp.sample_ids[i] for i in keep]
    x = [float(rd.scores[i, xi - 1]) for i in keep]
    y = [float(rd.scores[i, yi - 1]) for i in keep]
    color_by = state.visual_params.get("color_by")
    color = None
    if color_by:
        col = exp.col_data.column(color_by)
        color = [col.values[i] for i in keep]

    def label(c):
        base = f"Axis {c}"
        if rd.variance_explained and c <= len(rd.variance_explained):
            base += f" ({100 * rd.variance_explained[c - 1]:.1f}%)"
        return base

    series = {"ids": ids, "x": x, "y": y, "color": color, "color_by": color_by,
              "reduced_dim": name}
    axis = {"x_label": label(xi), "y_label": label(yi),
            "variance_note": "fractions of total variance" if rd.kind == "constrained" else None}
    return rd, xi, yi, series, axis


def _reduced_dim(exp, state, rows, cols):
    _, _, _, series, axis = _scatter_core(exp, state, cols)
    return _finish_payload(state.id, "scatter", series, axis=axis)


def _rda(exp, state, rows, cols):
    rd, xi, yi, series, axis = _scatter_core(exp, state, cols)
    if rd.kind != "constrained":
        raise BadParameter("reduced_dim", "RDAPlot needs a constrained reduced dim")
    arrows = []
    for j, name in enumerate(rd.covariate_names or ()):
        arrows.append({"name": name,
                       "x": float(rd.covariate_scores[j, xi - 1]),
                       "y": float(rd.covariate_scores[j, yi - 1])})
    series["arrows"] = arrows
    return _finish_payload(state.id, "biplot", series,
                           legend=[a["name"] for a in arrows], axis=axis)


def _loading(exp, state, rows, cols):
    name = state.data_params["reduced_dim"]
    rd = exp.reduced_dim(name)
    component = int(state.data_params.get("component", 1))
    top_n = int(state.data_params.get("top_n", 10))
    ranked = ordination.top_loadings(rd, component, len(exp.feature_ids), exp.feature_ids)
    if rows is not None:
        if not rows:
            raise EmptyAfterRestriction("row selection is empty")
        keep = set(rows)
        ranked = [r for r in ranked if r["feature_id"] in keep]
        if not ranked:
            raise EmptyAfterRestriction("nothing left after restriction")
    ranked = ranked[:top_n]
    series = {"ids": [r["feature_id"] for r in ranked],
              "values": [r["loading"] for r in ranked],
              "reduced_dim": name, "component": component}
    return _finish_payload(state.id, "ranked-bars", series,
                           axis={"x_label": f"loading on axis {component}"})


def _tree_layout(tree: Tree) -> dict:
    """Rectangular layout: leaves get y = 1..L in parse order, internal
    nodes the mean of their children; x is cumulative branch length when
    all lengths are present (phylogram), depth otherwise (cladogram)."""
    phylogram = tree.has_branch_lengths()
    ys: dict[int, float] = {}
    for i, leaf in enumerate(tree.leaves(), start=1):
        ys[leaf] = float(i)
    xs: dict[int, float] = {tree.root: 0.0}
    order = tree.descendants(tree.root)
    for nid in order:
        if nid == tree.root:
            continue
        n = tree.node(nid)
        step = n.branch_length if phylogram else 1.0
        xs[nid] = xs[n.parent] + (step if step is not None else 1.0)

    def fill_y(nid):
        kids = tree.children(nid)
        if not kids:
            return ys[nid]
        vals = [fill_y(c) for c in kids]
        ys[nid] = sum(vals) / len(vals)
        return ys[nid]

    fill_y(tree.root)
    nodes = [{"id": n.id, "label": n.label, "parent": n.parent,
              "x": xs[n.id], "y": ys[n.id], "is_leaf": tree.is_leaf(n.id)}
             for n in sorted(tree.nodes, key=lambda n: n.id)]
    return {"nodes": nodes, "mode": "phylogram" if phylogram else "cladogram"}


def _prune(tree: Tree, keep_nodes: set[int]) -> Tree:
    """Keep the nodes on root-to-kept paths; drop everything else."""
    keep = set()
    for nid in keep_nodes:
        cur = nid
        while cur is not None:
            keep.add(cur)
            cur = tree.node(cur).parent
    nodes = tuple(n for n in tree.nodes if n.id in keep)
    return Tree(nodes=nodes, root=tree.root)


def _tree_panel(axis_name):
    def compute(exp, state, rows, cols):
        tree = exp.row_tree if axis_name == "rows" else exp.col_tree
        links = exp.row_links if axis_name == "rows" else exp.col_links
        ids = exp.feature_ids if axis_name == "rows" else exp.sample_ids
        selected = rows if axis_name == "rows" else cols
        linked = dict(zip(ids, (e.node_id for e in links.entries)))
        if selected is not None:
            if not selected:
                raise EmptyAfterRestriction("selection is empty")
            keep = {linked[i] for i in selected if i in linked}
            if not keep:
                raise EmptyAfterRestriction("nothing left after restriction")
            tree = _prune(tree, keep)
            linked = {i: n for i, n in linked.items() if i in set(selected)}
        layout = _tree_layout(tree)
        series = {**layout,
                  "tips": [{"id": i, "node_id": n} for i, n in sorted(linked.items())],
                  "show_labels": bool(state.visual_params.get("show_labels", True))}
        return _finish_payload(state.id, "tree", series)

    return compute


def _table_panel(axis_name):
    def compute(exp, state, rows, cols):
        table = exp.row_data if axis_name == "rows" else exp.col_data
        ids = list(exp.feature_ids if axis_name == "rows" else exp.sample_ids)
        selected = rows if axis_name == "rows" else cols
        records = table.records(ids)
        if selected is not None:
            if not selected:
                raise EmptyAfterRestriction("selection is empty")
            keep = set(selected)
            records = [r for r in records if r["id"] in keep]
            if not records:
                raise EmptyAfterRestriction("nothing left after restriction")
        page = int(state.data_params.get("page", 1))
        size = int(state.data_params.get("page_size", 25))
        if page < 1 or size < 1:
            raise BadParameter("page")
        start = (page - 1) * size
        series = {"columns": ["id"] + table.names, "rows": records[start:start + size],
                  "total": len(records), "page": page, "page_size": size}
        return _finish_payload(state.id, "table", series)

    return compute


_COMPUTE = {
    "AbundancePlot": _abundance,
    "AbundanceDensityPlot": _density,
    "HeatmapPlot": _heatmap,
    "ReducedDimPlot": _reduced_dim,
    "RDAPlot": _rda,
    "LoadingPlot": _loading,
    "RowTreePlot": _tree_panel("rows"),
    "ColumnTreePlot": _tree_panel("columns"),
    "RowDataTable": _table_panel("rows"),
    "ColumnDataTable": _table_panel("columns"),
}

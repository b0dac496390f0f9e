"""The hierarchical experiment container.

Multiple aligned numeric tables (assays) over a shared feature x sample
grid, plus per-axis annotation tables, optional per-axis trees with link
maps, and named ordination results. Experiments are immutable: every
operation returns a new value, so instances are safe to share freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .canonical import canonical_bytes
from .errors import DimensionMismatch, DuplicateId, UnknownId, UnlinkedFeature
from .tree import Tree

MISSING = None  # annotation cells may be missing; assay cells may not


@dataclass(frozen=True)
class Assay:
    name: str
    values: np.ndarray  # features x samples, float64

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2:
            raise DimensionMismatch(f"assay {self.name!r} must be 2-D")
        if np.isnan(v).any():
            raise DimensionMismatch(f"assay {self.name!r} contains NaN")
        object.__setattr__(self, "values", v)

    def to_canonical(self):
        return {"name": self.name, "values": self.values}


@dataclass(frozen=True)
class Column:
    kind: str  # "text" | "real" | "categorical"
    values: tuple
    levels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.kind not in ("text", "real", "categorical"):
            raise ValueError(f"unknown column kind {self.kind!r}")
        if self.kind == "categorical":
            lv = set(self.levels or ())
            for v in self.values:
                if v is not MISSING and v not in lv:
                    raise ValueError(f"value {v!r} outside declared levels")


@dataclass(frozen=True)
class AnnotationTable:
    columns: dict[str, Column] = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(c.values) for c in self.columns.values()}
        if len(lengths) > 1:
            raise DimensionMismatch("annotation columns differ in length")

    def __len__(self):
        for c in self.columns.values():
            return len(c.values)
        return 0

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    def column(self, name: str) -> Column:
        if name not in self.columns:
            raise UnknownId(f"no annotation column {name!r}")
        return self.columns[name]

    def subset(self, idx: list[int]) -> "AnnotationTable":
        return AnnotationTable({
            name: replace(c, values=tuple(c.values[i] for i in idx))
            for name, c in self.columns.items()
        })

    def records(self, ids: list[str]) -> list[dict]:
        return [
            {"id": ids[i], **{name: c.values[i] for name, c in self.columns.items()}}
            for i in range(len(ids))
        ]

    def to_canonical(self):
        return {
            name: {"kind": c.kind, "values": list(c.values),
                   "levels": list(c.levels) if c.levels is not None else None}
            for name, c in self.columns.items()
        }


def empty_annotations(n: int) -> AnnotationTable:
    # zero columns still carry an implied record count via the id list
    return AnnotationTable({})


@dataclass(frozen=True)
class LinkEntry:
    node_id: int
    is_leaf: bool


@dataclass(frozen=True)
class LinkMap:
    entries: tuple[LinkEntry, ...]

    def to_canonical(self):
        return [{"node_id": e.node_id, "is_leaf": e.is_leaf} for e in self.entries]


@dataclass(frozen=True)
class ReducedDim:
    scores: np.ndarray  # samples x k
    loadings: Optional[np.ndarray] = None  # features x k
    variance_explained: Optional[tuple[float, ...]] = None
    kind: str = "unconstrained"
    covariate_scores: Optional[np.ndarray] = None  # covariates x k
    covariate_names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "scores", np.asarray(self.scores, dtype=float))
        if self.loadings is not None:
            object.__setattr__(self, "loadings", np.asarray(self.loadings, dtype=float))
        if self.kind not in ("unconstrained", "constrained"):
            raise ValueError(f"bad reduced-dim kind {self.kind!r}")
        if self.variance_explained is not None:
            ve = tuple(float(v) for v in self.variance_explained)
            if any(v < -1e-12 or v > 1 + 1e-9 for v in ve):
                raise ValueError("variance_explained fractions must lie in [0,1]")
            if sum(ve) > 1 + 1e-9:
                raise ValueError("variance_explained fractions sum past 1")
            object.__setattr__(self, "variance_explained", ve)

    @property
    def k(self) -> int:
        return self.scores.shape[1]

    def to_canonical(self):
        return {
            "scores": self.scores,
            "loadings": self.loadings,
            "variance_explained": list(self.variance_explained) if self.variance_explained else None,
            "kind": self.kind,
            "covariate_scores": self.covariate_scores,
            "covariate_names": list(self.covariate_names) if self.covariate_names else None,
        }


@dataclass(frozen=True)
class HierarchicalExperiment:
    assays: dict[str, Assay]
    feature_ids: tuple[str, ...]
    sample_ids: tuple[str, ...]
    row_data: AnnotationTable
    col_data: AnnotationTable
    row_tree: Optional[Tree] = None
    col_tree: Optional[Tree] = None
    row_links: Optional[LinkMap] = None
    col_links: Optional[LinkMap] = None
    reduced_dims: dict[str, ReducedDim] = field(default_factory=dict)

    def __post_init__(self):
        nf, ns = len(self.feature_ids), len(self.sample_ids)
        if len(set(self.feature_ids)) != nf:
            raise DuplicateId("duplicate feature ids")
        if len(set(self.sample_ids)) != ns:
            raise DuplicateId("duplicate sample ids")
        if not self.assays:
            raise DimensionMismatch("an experiment needs at least one assay")
        for a in self.assays.values():
            if a.values.shape != (nf, ns):
                raise DimensionMismatch(
                    f"assay {a.name!r} is {a.values.shape}, expected {(nf, ns)}")
        if len(self.row_data.columns) and len(self.row_data) != nf:
            raise DimensionMismatch("row_data record count != feature count")
        if len(self.col_data.columns) and len(self.col_data) != ns:
            raise DimensionMismatch("col_data record count != sample count")
        for tree, links, n, what in (
            (self.row_tree, self.row_links, nf, "row"),
            (self.col_tree, self.col_links, ns, "col"),
        ):
            if (tree is None) != (links is None):
                raise UnlinkedFeature(f"{what}_links present iff {what}_tree present")
            if links is not None:
                if len(links.entries) != n:
                    raise DimensionMismatch(f"{what}_links length != axis length")
                for e in links.entries:
                    if not tree.has_node(e.node_id):
                        raise UnlinkedFeature(f"{what} link targets missing node {e.node_id}")
        for name, rd in self.reduced_dims.items():
            if rd.scores.shape[0] != ns:
                raise DimensionMismatch(f"reduced dim {name!r} has wrong score row count")

    # -- accessors ------------------------------------------------------------

    @property
    def n_features(self) -> int:
        return len(self.feature_ids)

    @property
    def n_samples(self) -> int:
        return len(self.sample_ids)

    def assay(self, name: str) -> Assay:
        if name not in self.assays:
            raise UnknownId(f"no assay {name!r}")
        return self.assays[name]

    def reduced_dim(self, name: str) -> ReducedDim:
        if name not in self.reduced_dims:
            raise UnknownId(f"no reduced dim {name!r}")
        return self.reduced_dims[name]

    # -- builders -------------------------------------------------------------

    def with_assay(self, assay: Assay) -> "HierarchicalExperiment":
        return replace(self, assays={**self.assays, assay.name: assay})

    def with_reduced_dim(self, name: str, rd: ReducedDim) -> "HierarchicalExperiment":
        if rd.scores.shape[0] != self.n_samples:
            raise DimensionMismatch(
                f"scores have {rd.scores.shape[0]} rows, experiment has {self.n_samples} samples")
        return replace(self, reduced_dims={**self.reduced_dims, name: rd})

    def to_canonical(self):
        return {
            "assays": {n: a.to_canonical() for n, a in self.assays.items()},
            "feature_ids": list(self.feature_ids),
            "sample_ids": list(self.sample_ids),
            "row_data": self.row_data.to_canonical(),
            "col_data": self.col_data.to_canonical(),
            "row_tree": self.row_tree.to_canonical() if self.row_tree else None,
            "col_tree": self.col_tree.to_canonical() if self.col_tree else None,
            "row_links": self.row_links.to_canonical() if self.row_links else None,
            "col_links": self.col_links.to_canonical() if self.col_links else None,
            "reduced_dims": {n: r.to_canonical() for n, r in self.reduced_dims.items()},
        }

    def canonical_bytes(self) -> bytes:
        return canonical_bytes(self.to_canonical())


def derive_links(tree: Tree, ids: tuple[str, ...], what: str) -> LinkMap:
    """Match each id to the identically-labeled leaf."""
    by_label = tree.leaf_labels()
    entries = []
    for fid in ids:
        if fid not in by_label:
            raise UnlinkedFeature(f"{what} id {fid!r} matches no tree leaf")
        entries.append(LinkEntry(node_id=by_label[fid], is_leaf=True))
    return LinkMap(tuple(entries))


def build_experiment(assays, row_data=None, col_data=None, *, feature_ids, sample_ids,
                     row_tree=None, col_tree=None, row_links=None, col_links=None,
                     reduced_dims=None) -> HierarchicalExperiment:
    """Construct and fully validate an experiment.

    When a tree is given without explicit links, links are auto-derived by
    matching feature/sample ids against leaf labels; any id without a
    matching leaf is an error.
    """
    if isinstance(assays, Assay):
        assays = [assays]
    assay_map = {a.name: a for a in assays}
    if len(assay_map) != len(assays):
        raise DuplicateId("duplicate assay names")
    feature_ids = tuple(str(i) for i in feature_ids)
    sample_ids = tuple(str(i) for i in sample_ids)
    if row_tree is not None and row_links is None:
        row_links = derive_links(row_tree, feature_ids, "feature")
    if col_tree is not None and col_links is None:
        col_links = derive_links(col_tree, sample_ids, "sample")
    return HierarchicalExperiment(
        assays=assay_map,
        feature_ids=feature_ids,
        sample_ids=sample_ids,
        row_data=row_data or AnnotationTable({}),
        col_data=col_data or AnnotationTable({}),
        row_tree=row_tree,
        col_tree=col_tree,
        row_links=row_links,
        col_links=col_links,
        reduced_dims=dict(reduced_dims or {}),
    )


def subset(exp: HierarchicalExperiment, keep_features=None, keep_samples=None) -> HierarchicalExperiment:
    """Restrict to the given feature/sample ids, keeping relative order.

    Trees are retained intact (links stay valid). Reduced dims are dropped
    whenever samples are subset — scores are functions of the sample set —
    and kept (with loadings rows subset) on a pure feature subset.
    """
    fidx = list(range(exp.n_features))
    sidx = list(range(exp.n_samples))
    if keep_features is not None:
        pos = {f: i for i, f in enumerate(exp.feature_ids)}
        for f in keep_features:
            if f not in pos:
                raise UnknownId(f"unknown feature id {f!r}")
        keep = set(keep_features)
        fidx = [i for i, f in enumerate(exp.feature_ids) if f in keep]
    if keep_samples is not None:
        pos = {s: i for i, s in enumerate(exp.sample_ids)}
        for s in keep_samples:
            if s not in pos:
                raise UnknownId(f"unknown sample id {s!r}")
        keep = set(keep_samples)
        sidx = [i for i, s in enumerate(exp.sample_ids) if s in keep]

    samples_changed = len(sidx) != exp.n_samples
    reduced = {}
    if not samples_changed:
        for name, rd in exp.reduced_dims.items():
            loadings = rd.loadings
            if loadings is not None:
                loadings = loadings[fidx, :]
            reduced[name] = replace(rd, loadings=loadings)

    return HierarchicalExperiment(
        assays={n: Assay(n, a.values[np.ix_(fidx, sidx)]) for n, a in exp.assays.items()},
        feature_ids=tuple(exp.feature_ids[i] for i in fidx),
        sample_ids=tuple(exp.sample_ids[i] for i in sidx),
        row_data=exp.row_data.subset(fidx),
        col_data=exp.col_data.subset(sidx),
        row_tree=exp.row_tree,
        col_tree=exp.col_tree,
        row_links=LinkMap(tuple(exp.row_links.entries[i] for i in fidx)) if exp.row_links else None,
        col_links=LinkMap(tuple(exp.col_links.entries[i] for i in sidx)) if exp.col_links else None,
        reduced_dims=reduced,
    )


def add_reduced_dim(exp: HierarchicalExperiment, name: str, rd: ReducedDim) -> HierarchicalExperiment:
    return exp.with_reduced_dim(name, rd)

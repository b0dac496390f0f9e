"""Assay-level compositional transforms and tree-aware size reduction.

All transforms use the natural logarithm and produce derived assays named
"<source>_<kind>"; sources are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .container import Assay, AnnotationTable, Column, HierarchicalExperiment
from .errors import (NegativeValue, NonCategoricalColumn, NonPositiveAfterPseudocount,
                     UnknownColumn, ZeroColumn)

TRANSFORM_KINDS = ("identity", "relative_abundance", "log", "clr")
DEFAULT_PSEUDOCOUNT = 1.0
UNCLASSIFIED = "(unclassified)"


@dataclass(frozen=True)
class TransformSpec:
    kind: str = "identity"
    pseudocount: float = DEFAULT_PSEUDOCOUNT

    def __post_init__(self):
        if self.kind not in TRANSFORM_KINDS:
            raise ValueError(f"unknown transform kind {self.kind!r}")
        if self.pseudocount < 0:
            raise ValueError("pseudocount must be non-negative")

    def to_canonical(self):
        return {"kind": self.kind, "pseudocount": float(self.pseudocount)}


def relative_abundance(assay: Assay, sample_ids=None) -> Assay:
    v = assay.values
    if (v < 0).any():
        raise NegativeValue(f"assay {assay.name!r} has negative values")
    sums = v.sum(axis=0)
    zero = np.nonzero(sums == 0)[0]
    if zero.size:
        i = int(zero[0])
        raise ZeroColumn(sample_ids[i] if sample_ids is not None else i)
    return Assay(f"{assay.name}_relative_abundance", v / sums)


def log_transform(assay: Assay, pseudocount: float = DEFAULT_PSEUDOCOUNT) -> Assay:
    v = assay.values + pseudocount
    if (v <= 0).any():
        raise NonPositiveAfterPseudocount(
            f"assay {assay.name!r} has values <= 0 after pseudocount {pseudocount}")
    return Assay(f"{assay.name}_log", np.log(v))


def clr(assay: Assay, pseudocount: float = DEFAULT_PSEUDOCOUNT) -> Assay:
    """Centered log-ratio per sample: ln(x+p) minus the column mean of ln(x+p)."""
    v = assay.values + pseudocount
    if (v <= 0).any():
        raise NonPositiveAfterPseudocount(
            f"assay {assay.name!r} has values <= 0 after pseudocount {pseudocount}")
    logs = np.log(v)
    return Assay(f"{assay.name}_clr", logs - logs.mean(axis=0))


def apply_transform(assay: Assay, spec: TransformSpec) -> Assay:
    if spec.kind == "identity":
        return assay
    if spec.kind == "relative_abundance":
        return relative_abundance(assay)
    if spec.kind == "log":
        return log_transform(assay, spec.pseudocount)
    return clr(assay, spec.pseudocount)


def agglomerate_by_rank(exp: HierarchicalExperiment, rank_column: str) -> HierarchicalExperiment:
    """Merge features sharing a rank value by summing assay rows.

    New feature ids are the rank values (missing values pooled under
    "(unclassified)"); row_data keeps only columns constant within every
    group; the row tree and links are dropped since merged features no
    longer map 1:1 onto leaves. Per-sample totals are preserved exactly.
    """
    if rank_column not in exp.row_data.columns:
        raise UnknownColumn(f"no row_data column {rank_column!r}")
    col = exp.row_data.columns[rank_column]
    if col.kind == "real":
        raise NonCategoricalColumn(f"column {rank_column!r} is numeric")

    labels = [UNCLASSIFIED if v is None else str(v) for v in col.values]
    groups: dict[str, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    new_ids = sorted(groups)

    assays = {}
    for name, a in exp.assays.items():
        merged = np.vstack([a.values[groups[g], :].sum(axis=0) for g in new_ids])
        assays[name] = Assay(name, merged)

    columns = {}
    for name, c in exp.row_data.columns.items():
        per_group = [{c.values[i] for i in groups[g]} for g in new_ids]
        if all(len(vals) == 1 for vals in per_group):
            columns[name] = replace(c, values=tuple(next(iter(vals)) for vals in per_group))

    return HierarchicalExperiment(
        assays=assays,
        feature_ids=tuple(new_ids),
        sample_ids=exp.sample_ids,
        row_data=AnnotationTable(columns),
        col_data=exp.col_data,
        row_tree=None,
        row_links=None,
        col_tree=exp.col_tree,
        col_links=exp.col_links,
        reduced_dims=_strip_loadings(exp.reduced_dims),
    )


def _strip_loadings(reduced_dims):
    # loadings refer to the pre-merge feature axis and no longer apply
    return {name: replace(rd, loadings=None) for name, rd in reduced_dims.items()}


def top_features(assay: Assay, n: int, score: str = "mean", feature_ids=None) -> list[str]:
    """Feature ids sorted by row score descending, ties by id ascending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if score not in ("mean", "median", "sum"):
        raise ValueError(f"unknown score {score!r}")
    ids = list(feature_ids) if feature_ids is not None else [str(i) for i in range(assay.values.shape[0])]
    fn = {"mean": np.mean, "median": np.median, "sum": np.sum}[score]
    scores = fn(assay.values, axis=1)
    order = sorted(range(len(ids)), key=lambda i: (-scores[i], ids[i]))
    return [ids[i] for i in order[:min(n, len(ids))]]

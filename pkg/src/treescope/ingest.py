"""Readers for the standardized input bundle.

A bundle is a JSON manifest pointing at delimited tables (assays and
annotations) and Newick tree files. Tables are UTF-8, LF or CRLF, first
header cell ignored; assay cells must be numeric (decimal or scientific
notation), annotation cells may be empty ("missing"). All readers are
pure functions of the input bytes.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import container
from .container import AnnotationTable, Assay, Column, HierarchicalExperiment, LinkEntry, LinkMap
from .errors import (BadManifest, DuplicateId, FileNotFound, IdMismatch, NonNumericCell,
                     RaggedRow, UnlinkedFeature)
from .tree import Tree, parse_newick

DEFAULT_DELIMITER = "\t"
_MISSING_TOKENS = {"", "NA", "NaN", "nan"}


@dataclass(frozen=True)
class BundleManifest:
    assay_files: dict[str, str]
    row_data_file: Optional[str] = None
    col_data_file: Optional[str] = None
    row_tree_file: Optional[str] = None
    col_tree_file: Optional[str] = None
    delimiter: str = DEFAULT_DELIMITER

    def __post_init__(self):
        if not self.assay_files:
            raise BadManifest("manifest needs at least one assay file")
        for name, path in self.assay_files.items():
            if not path:
                raise BadManifest(f"assay {name!r} has an empty path")

    @classmethod
    def from_json(cls, text: str) -> "BundleManifest":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise BadManifest(f"manifest is not valid JSON: {e}") from e
        if not isinstance(raw, dict) or not isinstance(raw.get("assays"), dict):
            raise BadManifest('manifest must be an object with an "assays" object')
        return cls(
            assay_files=dict(raw["assays"]),
            row_data_file=raw.get("rowData"),
            col_data_file=raw.get("colData"),
            row_tree_file=raw.get("rowTree"),
            col_tree_file=raw.get("colTree"),
            delimiter=raw.get("delimiter", DEFAULT_DELIMITER),
        )

    def referenced_paths(self) -> list[str]:
        """All file paths in fixed manifest key order."""
        paths = [self.assay_files[name] for name in sorted(self.assay_files)]
        for p in (self.row_data_file, self.col_data_file, self.row_tree_file, self.col_tree_file):
            if p:
                paths.append(p)
        return paths


@dataclass
class ParseDiagnostics:
    warnings: list[dict] = field(default_factory=list)

    def warn(self, line: int, message: str):
        assert line >= 1
        self.warnings.append({"line": line, "message": message})


def _split_rows(text: str, delimiter: str) -> list[list[str]]:
    text = text.replace("\r\n", "\n")
    lines = text.split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    return [line.split(delimiter) for line in lines]


def parse_delimited_matrix(text: str, delimiter: str = DEFAULT_DELIMITER):
    """Parse a numeric table: header row of sample ids, first column of
    feature ids. Returns (row_ids, col_ids, matrix) preserving file order."""
    rows = _split_rows(text, delimiter)
    if not rows:
        raise RaggedRow(1)
    header = rows[0][1:]
    if len(set(header)) != len(header):
        raise DuplicateId("duplicate column ids in header")
    row_ids = []
    values = []
    for lineno, cells in enumerate(rows[1:], start=2):
        if len(cells) != len(header) + 1:
            raise RaggedRow(lineno)
        row_ids.append(cells[0])
        row = []
        for colno, cell in enumerate(cells[1:], start=1):
            try:
                row.append(float(cell))
            except ValueError:
                raise NonNumericCell(lineno, header[colno - 1]) from None
        values.append(row)
    if len(set(row_ids)) != len(row_ids):
        raise DuplicateId("duplicate row ids")
    matrix = np.array(values, dtype=float) if values else np.zeros((0, len(header)))
    return row_ids, header, matrix


def parse_annotation_table(text: str, delimiter: str = DEFAULT_DELIMITER):
    """Parse an annotation table: ids in the first column, typed columns after.

    A column whose every non-missing cell parses as a number becomes "real";
    anything else becomes "categorical" with levels = sorted distinct values.
    Empty/NA cells are missing.
    """
    rows = _split_rows(text, delimiter)
    if not rows:
        raise RaggedRow(1)
    header = rows[0][1:]
    if len(set(header)) != len(header):
        raise DuplicateId("duplicate annotation column names")
    ids = []
    cells: list[list[Optional[str]]] = [[] for _ in header]
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header) + 1:
            raise RaggedRow(lineno)
        ids.append(row[0])
        for j, cell in enumerate(row[1:]):
            cells[j].append(None if cell in _MISSING_TOKENS else cell)
    if len(set(ids)) != len(ids):
        raise DuplicateId("duplicate annotation row ids")

    columns: dict[str, Column] = {}
    for name, col in zip(header, cells):
        present = [v for v in col if v is not None]
        try:
            nums = [float(v) for v in present]
        except ValueError:
            nums = None
        if nums is not None and present:
            it = iter(nums)
            columns[name] = Column("real", tuple(None if v is None else next(it) for v in col))
        else:
            levels = tuple(sorted(set(present)))
            columns[name] = Column("categorical", tuple(col), levels=levels)
    return ids, AnnotationTable(columns)


@dataclass(frozen=True)
class Bundle:
    """A manifest plus the raw bytes of every referenced file."""
    manifest: BundleManifest
    files: dict[str, bytes]

    @classmethod
    def load(cls, manifest_path: str) -> "Bundle":
        try:
            with open(manifest_path, "rb") as fh:
                manifest_bytes = fh.read()
        except OSError as e:
            raise FileNotFound(str(e)) from e
        manifest = BundleManifest.from_json(manifest_bytes.decode("utf-8"))
        base = os.path.dirname(os.path.abspath(manifest_path))
        files = {"__manifest__": manifest_bytes}
        for rel in manifest.referenced_paths():
            path = rel if os.path.isabs(rel) else os.path.join(base, rel)
            try:
                with open(path, "rb") as fh:
                    files[rel] = fh.read()
            except OSError as e:
                raise FileNotFound(str(e)) from e
        return cls(manifest=manifest, files=files)

    def text(self, rel: str) -> str:
        return self.files[rel].decode("utf-8")

    def digest(self) -> str:
        """SHA-256 over the manifest plus referenced files in manifest key order."""
        h = hashlib.sha256()
        h.update(self.files["__manifest__"])
        for rel in self.manifest.referenced_paths():
            h.update(self.files[rel])
        return h.hexdigest()


def _aligned_annotations(ids, table, target_ids, diagnostics, axis):
    """Reorder annotation records to assay id order; extra records warn,
    missing records are an error."""
    pos = {i: k for k, i in enumerate(ids)}
    missing = [t for t in target_ids if t not in pos]
    if missing:
        raise IdMismatch(f"{axis} metadata lacks records for: {', '.join(missing[:5])}")
    for k, i in enumerate(ids):
        if i not in set(target_ids):
            diagnostics.warn(k + 2, f"unmatched {axis} metadata record {i!r}")
    order = [pos[t] for t in target_ids]
    return table.subset(order)


def load_bundle(bundle: Bundle) -> tuple[HierarchicalExperiment, ParseDiagnostics]:
    """Build a validated experiment from bundle files.

    The first assay file defines feature/sample id order. Tree leaves not
    matching any feature id are tolerated with a warning; feature ids
    absent from the tree are an error.
    """
    m = bundle.manifest
    diagnostics = ParseDiagnostics()

    assays = []
    feature_ids = sample_ids = None
    for name in m.assay_files:
        rid, cid, mat = parse_delimited_matrix(bundle.text(m.assay_files[name]), m.delimiter)
        if feature_ids is None:
            feature_ids, sample_ids = rid, cid
        elif rid != feature_ids or cid != sample_ids:
            raise IdMismatch(f"assay {name!r} ids disagree with the first assay")
        assays.append(Assay(name, mat))

    row_data = col_data = None
    if m.row_data_file:
        ids, table = parse_annotation_table(bundle.text(m.row_data_file), m.delimiter)
        row_data = _aligned_annotations(ids, table, feature_ids, diagnostics, "feature")
    if m.col_data_file:
        ids, table = parse_annotation_table(bundle.text(m.col_data_file), m.delimiter)
        col_data = _aligned_annotations(ids, table, sample_ids, diagnostics, "sample")

    row_tree = _load_tree(bundle, m.row_tree_file, feature_ids, diagnostics, "feature")
    col_tree = _load_tree(bundle, m.col_tree_file, sample_ids, diagnostics, "sample")

    exp = container.build_experiment(
        assays, row_data, col_data,
        feature_ids=feature_ids, sample_ids=sample_ids,
        row_tree=row_tree[0] if row_tree else None,
        row_links=row_tree[1] if row_tree else None,
        col_tree=col_tree[0] if col_tree else None,
        col_links=col_tree[1] if col_tree else None,
    )
    return exp, diagnostics


def _load_tree(bundle, path, ids, diagnostics, axis):
    if not path:
        return None
    tree = parse_newick(bundle.text(path))
    by_label = tree.leaf_labels()
    entries = []
    for fid in ids:
        if fid not in by_label:
            raise UnlinkedFeature(f"{axis} id {fid!r} matches no tree leaf")
        entries.append(LinkEntry(node_id=by_label[fid], is_leaf=True))
    extra = sorted(set(by_label) - set(ids))
    if extra:
        diagnostics.warn(1, f"{len(extra)} tree leaves match no {axis} id "
                            f"and remain unlinked (e.g. {extra[0]!r})")
    return tree, LinkMap(tuple(entries))

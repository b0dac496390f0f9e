import json
import os

import numpy as np
import pytest

from treescope.errors import (DuplicateId, FileNotFound, IdMismatch, NonNumericCell,
                              RaggedRow, UnlinkedFeature)
from treescope.ingest import Bundle, BundleManifest, load_bundle, parse_delimited_matrix

from conftest import write_paper_scale_bundle


def test_parse_small_matrix():
    rid, cid, mat = parse_delimited_matrix("id\ts1\ts2\nf1\t1\t2\nf2\t3\t4\n")
    assert rid == ["f1", "f2"] and cid == ["s1", "s2"]
    assert mat.tolist() == [[1.0, 2.0], [3.0, 4.0]]


def test_crlf_and_scientific_notation():
    rid, cid, mat = parse_delimited_matrix("id\ts1\r\nf1\t1e-3\r\n")
    assert mat[0, 0] == 0.001


def test_ragged_row_reports_line():
    with pytest.raises(RaggedRow) as e:
        parse_delimited_matrix("id\ts1\ts2\nf1\t1\t2\t3\n")
    assert e.value.line == 2


def test_non_numeric_cell():
    with pytest.raises(NonNumericCell) as e:
        parse_delimited_matrix("id\ts1\nf1\tabc\n")
    assert e.value.line == 2 and e.value.column == "s1"


def test_duplicate_ids():
    with pytest.raises(DuplicateId):
        parse_delimited_matrix("id\ts1\nf1\t1\nf1\t2\n")
    with pytest.raises(DuplicateId):
        parse_delimited_matrix("id\ts1\ts1\nf1\t1\t2\n")


def test_load_paper_scale_bundle(tmp_path):
    manifest = write_paper_scale_bundle(str(tmp_path))
    exp, diag = load_bundle(Bundle.load(manifest))
    assert exp.n_features == 151 and exp.n_samples == 27
    assert exp.row_tree is not None
    assert all(e.is_leaf for e in exp.row_links.entries)
    assert exp.col_data.columns["group"].kind == "categorical"
    assert exp.col_data.columns["depth"].kind == "real"


def test_minimal_manifest(tmp_path):
    with open(tmp_path / "a.tsv", "w") as fh:
        fh.write("id\ts1\ts2\nf1\t1\t2\n")
    with open(tmp_path / "m.json", "w") as fh:
        json.dump({"assays": {"a": "a.tsv"}}, fh)
    exp, diag = load_bundle(Bundle.load(str(tmp_path / "m.json")))
    assert exp.row_tree is None and exp.row_data.names == []
    assert diag.warnings == []


def test_extra_tree_leaves_warn(tmp_path):
    with open(tmp_path / "a.tsv", "w") as fh:
        fh.write("id\ts1\nf1\t1\nf2\t2\n")
    with open(tmp_path / "t.nwk", "w") as fh:
        fh.write("((f1,f2),extra);\n")
    with open(tmp_path / "m.json", "w") as fh:
        json.dump({"assays": {"a": "a.tsv"}, "rowTree": "t.nwk"}, fh)
    exp, diag = load_bundle(Bundle.load(str(tmp_path / "m.json")))
    assert exp.row_tree is not None
    assert any("unlinked" in w["message"] for w in diag.warnings)


def test_missing_feature_in_tree_is_error(tmp_path):
    with open(tmp_path / "a.tsv", "w") as fh:
        fh.write("id\ts1\nf1\t1\nf2\t2\n")
    with open(tmp_path / "t.nwk", "w") as fh:
        fh.write("(f1,other);\n")
    with open(tmp_path / "m.json", "w") as fh:
        json.dump({"assays": {"a": "a.tsv"}, "rowTree": "t.nwk"}, fh)
    with pytest.raises(UnlinkedFeature):
        load_bundle(Bundle.load(str(tmp_path / "m.json")))


def test_metadata_join_reorders_and_errors(tmp_path):
    with open(tmp_path / "a.tsv", "w") as fh:
        fh.write("id\ts1\nf1\t1\nf2\t2\n")
    with open(tmp_path / "rd.tsv", "w") as fh:
        fh.write("id\tlabel\nf2\tbeta\nf1\talpha\nf9\textra\n")
    with open(tmp_path / "m.json", "w") as fh:
        json.dump({"assays": {"a": "a.tsv"}, "rowData": "rd.tsv"}, fh)
    exp, diag = load_bundle(Bundle.load(str(tmp_path / "m.json")))
    assert exp.row_data.columns["label"].values == ("alpha", "beta")
    assert len(diag.warnings) == 1  # unmatched f9

    with open(tmp_path / "rd.tsv", "w") as fh:
        fh.write("id\tlabel\nf1\talpha\n")  # f2 missing
    with pytest.raises(IdMismatch):
        load_bundle(Bundle.load(str(tmp_path / "m.json")))


def test_missing_file(tmp_path):
    with open(tmp_path / "m.json", "w") as fh:
        json.dump({"assays": {"a": "nope.tsv"}}, fh)
    with pytest.raises(FileNotFound):
        Bundle.load(str(tmp_path / "m.json"))


def test_load_bundle_deterministic(tmp_path):
    manifest = write_paper_scale_bundle(str(tmp_path))
    e1, _ = load_bundle(Bundle.load(manifest))
    e2, _ = load_bundle(Bundle.load(manifest))
    assert e1.canonical_bytes() == e2.canonical_bytes()


def test_bundle_digest_tracks_bytes(tmp_path):
    manifest = write_paper_scale_bundle(str(tmp_path))
    d1 = Bundle.load(manifest).digest()
    with open(tmp_path / "counts.tsv", "a") as fh:
        fh.write("\n")
    assert Bundle.load(manifest).digest() != d1

"""Acceptance suite: one test per criterion, one PASS line each.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines; the whole module is headless and touches no UI code.
"""

import json
import random
import socket
import subprocess
import sys
import threading
import time

import numpy as np
import pytest
import requests
import uvicorn

from treescope.container import Assay, add_reduced_dim
from treescope.errors import CycleDetected
from treescope.ingest import Bundle
from treescope.ordination import bray_curtis, euclidean, pca, pcoa, rda
from treescope.panels import (PanelState, SelectionEvent, SessionLayout, apply_selection,
                              available_panels, compute_payload)
from treescope.provenance import Script, export_script, replay
from treescope.session import Session
from treescope.transforms import agglomerate_by_rank, clr, relative_abundance
from treescope.tree import parse_newick, serialize_newick

from conftest import random_experiment, random_tree, tree_canon, write_paper_scale_bundle
from test_ordination import assert_equal_up_to_sign, cov_eigen_pca_oracle


def report(line):
    print(f"\nPASS: {line}")


def test_newick_round_trip_500():
    rng = random.Random(20240817)
    for _ in range(500):
        t = random_tree(rng, max_nodes=128)
        back = parse_newick(serialize_newick(t))
        assert tree_canon(back) == tree_canon(t)
    report("Newick round-trip: 500 random trees (<=128 nodes) parse∘serialize isomorphic")


def test_compositional_invariants_200():
    rng = np.random.default_rng(101)
    for _ in range(200):
        nf, ns = int(rng.integers(1, 15)), int(rng.integers(1, 10))
        values = rng.uniform(0, 100, size=(nf, ns))
        values[0, :] += 0.1  # keep columns positive-sum
        a = Assay("a", values)
        rel = relative_abundance(a)
        assert np.abs(rel.values.sum(axis=0) - 1.0).max() <= 1e-12
        c = clr(a, 1.0)
        assert np.abs(c.values.sum(axis=0)).max() <= 1e-9
    for _ in range(25):
        exp = random_experiment(rng)
        out = agglomerate_by_rank(exp, "rank")
        for name in exp.assays:
            assert (exp.assays[name].values.sum(axis=0)
                    == out.assays[name].values.sum(axis=0)).all()
    report("Compositional invariants: relative abundance sums to 1 (1e-12), "
           "clr sums to 0 (1e-9), agglomeration conserves totals exactly")


def test_ordination_oracles():
    rng = np.random.default_rng(202)
    for _ in range(100):
        nf, ns = int(rng.integers(2, 13)), int(rng.integers(3, 9))
        v = rng.normal(size=(nf, ns))
        k = int(rng.integers(1, min(ns - 1, nf) + 1))
        rd = pca(Assay("a", v), k)
        scores, loads, ve = cov_eigen_pca_oracle(v, k)
        assert_equal_up_to_sign(rd.scores, scores, 1e-8)
        assert_equal_up_to_sign(rd.loadings, loads, 1e-8)

    v = rng.integers(0, 30, size=(8, 6)).astype(float)
    v[0, :] += 1
    d = bray_curtis(Assay("a", v)).values
    X = v.T
    for i in range(6):
        for j in range(6):
            want = 0.0 if i == j else np.abs(X[i] - X[j]).sum() / (X[i] + X[j]).sum()
            assert d[i, j] == want

    v = rng.normal(size=(5, 9))
    assert_equal_up_to_sign(pcoa(euclidean(Assay("a", v)), 3).scores,
                            pca(Assay("a", v), 3).scores, 1e-8)

    exp = random_experiment(rng, nf=5, ns=12)
    rd = rda(exp, "counts", ["group", "depth"], 2)
    Y = exp.assays["counts"].values.T
    Yc = Y - Y.mean(axis=0)
    g = np.array([1.0 if x == "g1" else 0.0 for x in exp.col_data.columns["group"].values])
    dep = np.asarray(exp.col_data.columns["depth"].values, dtype=float)
    dep = (dep - dep.mean()) / dep.std(ddof=1)
    Xd = np.column_stack([np.ones(12), g, dep])
    Yhat = Xd @ np.linalg.solve(Xd.T @ Xd, Xd.T @ Yc)
    vals, vecs = np.linalg.eigh(np.cov(Yhat, rowvar=False, ddof=1))
    order = np.argsort(vals)[::-1]
    assert_equal_up_to_sign(rd.scores, Yhat @ vecs[:, order[:2]], 1e-8)

    n = 10
    x = rng.normal(size=n)
    B = rng.normal(size=(2, 4))
    Yx = np.column_stack([np.ones(n), x]) @ B
    from dataclasses import replace
    from treescope.container import AnnotationTable, Column
    det = replace(random_experiment(rng, nf=4, ns=n),
                  assays={"counts": Assay("counts", Yx.T)},
                  col_data=AnnotationTable({"x": Column("real", tuple(x))}))
    full = rda(det, "counts", ["x"], 1)
    assert sum(full.variance_explained) == pytest.approx(1.0, abs=1e-8)
    report("Ordination oracles: PCA vs covariance-eigen (1e-8, 100 cases), "
           "Bray-Curtis exact, PCoA==PCA on Euclidean (1e-8), RDA vs normal "
           "equations (1e-8), Y=XB gives total constrained variance 1.0")


def test_availability_truth_table():
    full = random_experiment(np.random.default_rng(7), nf=10, ns=8, with_tree=True)
    full = add_reduced_dim(full, "pca", pca(full.assay("counts"), 2))
    full = add_reduced_dim(full, "rda", rda(full, "counts", ["group"], 1))
    assert set(available_panels(full)) == {
        "AbundancePlot", "AbundanceDensityPlot", "HeatmapPlot", "RowDataTable",
        "ColumnDataTable", "RowTreePlot", "ReducedDimPlot", "RDAPlot", "LoadingPlot"}

    plain = random_experiment(np.random.default_rng(8), nf=6, ns=5)
    assert available_panels(plain) == ["AbundancePlot", "AbundanceDensityPlot",
                                       "HeatmapPlot", "RowDataTable", "ColumnDataTable"]

    only_pcoa = add_reduced_dim(plain, "mds", pcoa(bray_curtis(plain.assay("counts")), 2))
    avail = available_panels(only_pcoa)
    assert "ReducedDimPlot" in avail
    assert "LoadingPlot" not in avail and "RDAPlot" not in avail
    report("Availability rules: full / assay-only / PCoA-only truth table matches")


def test_selection_propagation_dag():
    exp = random_experiment(np.random.default_rng(44), nf=10, ns=9, with_tree=True)
    exp = add_reduced_dim(exp, "pca", pca(exp.assay("counts"), 2))
    scatter = PanelState(id="sc", type="ReducedDimPlot", data_params={"reduced_dim": "pca"})
    tree = PanelState(id="tr", type="RowTreePlot")
    bars = PanelState(id="bars", type="AbundancePlot",
                      data_params={"assay": "counts", "top_n": 3},
                      selection_params={"col_source": "sc", "restrict": True})
    heat = PanelState(id="heat", type="HeatmapPlot", data_params={"assay": "counts"},
                      selection_params={"row_source": "tr", "col_source": "sc",
                                        "restrict": True})
    layout = SessionLayout(panels=(scatter, tree, bars, heat))

    k = 4
    brushed = tuple(exp.sample_ids[:k])
    ev = SelectionEvent(origin="sc", axis="columns", ids=brushed)
    assert apply_selection(layout, ev) == ["bars", "heat"]
    payload = compute_payload(exp, bars, {("sc", "columns"): brushed})
    assert tuple(payload.series["samples"]) == brushed and len(payload.series["samples"]) == k

    # order independence for unrelated origins
    sels_a = {("sc", "columns"): brushed, ("tr", "rows"): tuple(exp.feature_ids[:5])}
    sels_b = {("tr", "rows"): tuple(exp.feature_ids[:5]), ("sc", "columns"): brushed}
    assert compute_payload(exp, heat, sels_a).canonical == \
        compute_payload(exp, heat, sels_b).canonical

    cyc = PanelState(id="sc2", type="ReducedDimPlot", data_params={"reduced_dim": "pca"},
                     selection_params={"col_source": "bars", "restrict": True})
    bars_cyc = PanelState(id="bars", type="AbundancePlot",
                          data_params={"assay": "counts"},
                          selection_params={"col_source": "sc2", "restrict": True})
    with pytest.raises(CycleDetected):
        SessionLayout(panels=(cyc, bars_cyc))
    report("Selection propagation: brush restricts downstream bars to k samples, "
           "order-independent for unrelated events, cycles rejected "
           "(HTTP 409 mapping covered in test_server)")


def test_provenance_replay_corpus(tmp_path):
    manifest = write_paper_scale_bundle(str(tmp_path / "bundle"))
    bundle = Bundle.load(manifest)
    session = Session(bundle)
    session.execute("transform", {"assay": "counts", "kind": "clr", "pseudocount": 1.0})
    session.execute("ordinate", {"method": "pca", "name": "pca", "assay": "counts_clr", "k": 3})
    session.execute("ordinate", {"method": "rda", "name": "rda", "assay": "counts_clr",
                                 "k": 1, "covariates": ["group"]})
    session.execute("add_panel", {"id": "sc", "type": "ReducedDimPlot",
                                  "data_params": {"reduced_dim": "pca",
                                                  "x_component": 1, "y_component": 2}})
    session.execute("add_panel", {"id": "bi", "type": "RDAPlot",
                                  "data_params": {"reduced_dim": "rda",
                                                  "x_component": 1, "y_component": 1}})
    session.execute("add_panel", {"id": "ld", "type": "LoadingPlot",
                                  "data_params": {"reduced_dim": "pca", "component": 2,
                                                  "top_n": 12}})
    session.execute("add_panel", {"id": "bars2", "type": "AbundancePlot",
                                  "data_params": {"assay": "counts", "rank_column": "phylum",
                                                  "top_n": 5},
                                  "selection_params": {"col_source": "sc", "restrict": True}})
    session.execute("select", {"origin": "sc", "axis": "columns",
                               "ids": list(session.experiment.sample_ids[:7])})

    checked = 0
    for state in session.layout.panels:
        live = session.payload(state.id)
        script = export_script(session, state.id)
        assert replay(script, bundle).canonical == live.canonical, state.id
        checked += 1

    # deleting any single command from a representative script breaks replay
    script = export_script(session, "bars2")
    live = session.payload("bars2")
    assert len(script.commands) >= 4
    for drop in range(len(script.commands)):
        mutated = Script(header=script.header,
                         commands=tuple(c for i, c in enumerate(script.commands) if i != drop))
        try:
            out = replay(mutated, bundle)
        except Exception:
            continue
        assert out.canonical != live.canonical
    report(f"Provenance: export→replay byte-identical for {checked} panels "
           "(zero tolerance); single-command deletion breaks equality")


def test_paper_scale_smoke(tmp_path):
    manifest = write_paper_scale_bundle(str(tmp_path / "bundle"))
    start = time.perf_counter()
    session = Session(Bundle.load(manifest))
    payloads = [session.payload(p.id) for p in session.layout.panels]
    elapsed = time.perf_counter() - start
    assert session.experiment.n_features == 151
    assert session.experiment.n_samples == 27
    assert len(payloads) == 6
    assert elapsed < 2.0, f"startup + default payloads took {elapsed:.2f}s"

    out_dir = str(tmp_path / "out")
    res = subprocess.run([sys.executable, "-m", "treescope.cli", "export",
                          "--bundle", manifest, "--out", out_dir],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    import os
    json_files = [n for n in os.listdir(out_dir) if n.endswith(".json")]
    assert len(json_files) == 6
    report(f"Paper-scale smoke: 151x27 bundle + 151-leaf tree, startup + 6 default "
           f"payloads in {elapsed:.2f}s (< 2s); export wrote 6 payload JSON files")


def test_suite_is_headless():
    ui_modules = [m for m in sys.modules if "frontend" in m or "node" in m.split(".")[0]]
    assert not any(m.startswith("frontend") for m in ui_modules)
    report("Primary suite runs headless: no UI component imported or required")

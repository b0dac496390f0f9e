import json
import os
import random

import numpy as np
import pytest

from treescope.container import (AnnotationTable, Assay, Column, build_experiment)
from treescope.tree import Tree, TreeNode, parse_newick


def random_tree(rng: random.Random, max_nodes=128, with_labels=True, with_lengths=None):
    """Random rooted tree by successive leaf attachment."""
    n = rng.randint(1, max_nodes)
    if with_lengths is None:
        with_lengths = rng.random() < 0.5
    alphabet = "abcdefghijklmnopqrstuvwxyzABC 'xyz_().:"
    nodes = [{"id": 0, "label": None, "parent": None, "branch_length": None}]
    for i in range(1, n):
        parent = rng.randrange(i)
        nodes.append({"id": i, "label": None, "parent": parent,
                      "branch_length": round(rng.uniform(0, 10), 3) if with_lengths else None})
    children = {i: [] for i in range(n)}
    for nd in nodes[1:]:
        children[nd["parent"]].append(nd["id"])
    used = set()
    for nd in nodes:
        if with_labels and (not children[nd["id"]] or rng.random() < 0.3):
            while True:
                lab = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 8)))
                if lab.strip() and lab not in used:
                    break
            used.add(lab)
            nd["label"] = lab
    return Tree(nodes=tuple(TreeNode(**nd) for nd in nodes), root=0)


def tree_canon(tree: Tree, node_id=None):
    """Order-insensitive canonical form for isomorphism comparison."""
    if node_id is None:
        node_id = tree.root
    n = tree.node(node_id)
    kids = sorted((tree_canon(tree, c) for c in tree.children(node_id)), key=repr)
    return (n.label, n.branch_length, tuple(kids))


def tiny_experiment(**kwargs):
    values = np.array([[2.0, 1.0], [3.0, 4.0], [5.0, 0.0]])
    return build_experiment(
        [Assay("counts", values)],
        AnnotationTable({"phylum": Column("categorical", ("P1", "P1", "P2"),
                                          levels=("P1", "P2"))}),
        AnnotationTable({"group": Column("categorical", ("a", "b"), levels=("a", "b"))}),
        feature_ids=["f1", "f2", "f3"],
        sample_ids=["s1", "s2"],
        **kwargs,
    )


def random_experiment(rng: np.random.Generator, nf=None, ns=None, with_tree=False):
    nf = nf or int(rng.integers(2, 12))
    ns = ns or int(rng.integers(2, 8))
    feature_ids = [f"f{i:03d}" for i in range(nf)]
    sample_ids = [f"s{i:03d}" for i in range(ns)]
    values = rng.integers(0, 50, size=(nf, ns)).astype(float)
    # avoid all-zero samples so compositional transforms stay defined
    values[0, :] += 1
    ranks = [f"r{int(rng.integers(0, max(2, nf // 2)))}" for _ in range(nf)]
    row = AnnotationTable({"rank": Column("categorical", tuple(ranks),
                                          levels=tuple(sorted(set(ranks))))})
    groups = ["g1" if i % 2 else "g0" for i in range(ns)]
    col = AnnotationTable({
        "group": Column("categorical", tuple(groups), levels=("g0", "g1")),
        "depth": Column("real", tuple(float(v) for v in rng.uniform(1, 9, ns))),
    })
    tree = None
    if with_tree:
        py_rng = random.Random(int(rng.integers(0, 2**31)))
        tree = _labeled_tree_for(feature_ids, py_rng)
    return build_experiment([Assay("counts", values)], row, col,
                            feature_ids=feature_ids, sample_ids=sample_ids,
                            row_tree=tree)


def _labeled_tree_for(leaf_labels, rng: random.Random):
    """Random binary-ish tree whose leaves carry exactly the given labels."""
    newick = _random_topology(list(leaf_labels), rng)
    return parse_newick(newick + ";")


def _random_topology(labels, rng):
    if len(labels) == 1:
        return labels[0]
    k = rng.randint(1, len(labels) - 1)
    left, right = labels[:k], labels[k:]
    return "(" + _random_topology(left, rng) + "," + _random_topology(right, rng) + ")"


def write_paper_scale_bundle(dirpath, n_features=151, n_samples=27, seed=7):
    """Synthetic bundle shaped like the 151x27 reference dataset."""
    rng = np.random.default_rng(seed)
    py_rng = random.Random(seed)
    os.makedirs(dirpath, exist_ok=True)
    feature_ids = [f"OTU{i:04d}" for i in range(n_features)]
    sample_ids = [f"sample{i:02d}" for i in range(n_samples)]
    counts = rng.negative_binomial(2, 0.02, size=(n_features, n_samples)).astype(float)
    counts[0, :] += 1

    lines = ["\t".join(["id"] + sample_ids)]
    for fid, row in zip(feature_ids, counts):
        lines.append("\t".join([fid] + [str(int(v)) for v in row]))
    with open(os.path.join(dirpath, "counts.tsv"), "w") as fh:
        fh.write("\n".join(lines) + "\n")

    phyla = [f"Phylum{int(rng.integers(0, 8))}" for _ in feature_ids]
    genera = [f"Genus{int(rng.integers(0, 40))}" for _ in feature_ids]
    lines = ["id\tphylum\tgenus"]
    for fid, p, g in zip(feature_ids, phyla, genera):
        lines.append(f"{fid}\t{p}\t{g}")
    with open(os.path.join(dirpath, "taxonomy.tsv"), "w") as fh:
        fh.write("\n".join(lines) + "\n")

    lines = ["id\tgroup\tdepth"]
    for i, sid in enumerate(sample_ids):
        lines.append(f"{sid}\t{'treated' if i % 2 else 'control'}\t{rng.uniform(1000, 9000):.1f}")
    with open(os.path.join(dirpath, "samples.tsv"), "w") as fh:
        fh.write("\n".join(lines) + "\n")

    with open(os.path.join(dirpath, "tree.nwk"), "w") as fh:
        fh.write(_random_topology(feature_ids, py_rng) + ";\n")

    manifest = {
        "assays": {"counts": "counts.tsv"},
        "rowData": "taxonomy.tsv",
        "colData": "samples.tsv",
        "rowTree": "tree.nwk",
        "delimiter": "\t",
    }
    manifest_path = os.path.join(dirpath, "manifest.json")
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=1)
    return manifest_path


@pytest.fixture
def paper_bundle(tmp_path):
    return write_paper_scale_bundle(str(tmp_path / "bundle"))

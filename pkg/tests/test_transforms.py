import math

import numpy as np
import pytest

from treescope.container import Assay
from treescope.errors import (NegativeValue, NonCategoricalColumn, NonPositiveAfterPseudocount,
                              UnknownColumn, ZeroColumn)
from treescope.transforms import (agglomerate_by_rank, clr, log_transform,
                                  relative_abundance, top_features)

from conftest import random_experiment, tiny_experiment


def test_relative_abundance_basic():
    out = relative_abundance(Assay("a", np.array([[2.0], [3.0], [5.0]])))
    assert out.values[:, 0].tolist() == [0.2, 0.3, 0.5]
    assert out.name == "a_relative_abundance"


def test_relative_abundance_single_feature():
    out = relative_abundance(Assay("a", np.array([[7.0]])))
    assert out.values[0, 0] == 1.0


def test_relative_abundance_errors():
    with pytest.raises(ZeroColumn):
        relative_abundance(Assay("a", np.array([[0.0], [0.0]])))
    with pytest.raises(NegativeValue):
        relative_abundance(Assay("a", np.array([[-1.0], [2.0]])))


def test_relative_abundance_idempotent():
    rng = np.random.default_rng(3)
    a = Assay("a", rng.uniform(0, 9, size=(6, 4)) + 0.1)
    once = relative_abundance(a)
    twice = relative_abundance(once)
    assert np.abs(twice.values - once.values).max() <= 1e-12


def test_log_transform_values():
    assert log_transform(Assay("a", np.array([[math.e - 1]])), 1.0).values[0, 0] == pytest.approx(1.0)
    assert log_transform(Assay("a", np.array([[0.0]])), 1.0).values[0, 0] == 0.0
    with pytest.raises(NonPositiveAfterPseudocount):
        log_transform(Assay("a", np.array([[0.0]])), 0.0)


def test_clr_constant_and_symmetric_columns():
    out = clr(Assay("a", np.array([[4.0], [4.0], [4.0]])), 0.0)
    assert np.abs(out.values).max() <= 1e-12
    out = clr(Assay("a", np.array([[1.0], [math.e], [math.e ** 2]])), 0.0)
    assert np.allclose(out.values[:, 0], [-1.0, 0.0, 1.0])


def test_clr_matches_direct_formula():
    rng = np.random.default_rng(9)
    v = rng.uniform(0.1, 50, size=(7, 5))
    out = clr(Assay("a", v), 0.5)
    logs = np.log(v + 0.5)
    expected = logs - logs.mean(axis=0)  # ln then subtract the column log-mean
    assert np.abs(out.values - expected).max() <= 1e-12
    assert np.abs(out.values.sum(axis=0)).max() <= 1e-9


def test_agglomerate_sums_and_names():
    exp = tiny_experiment()  # ranks P1,P1,P2; counts [[2,1],[3,4],[5,0]]
    out = agglomerate_by_rank(exp, "phylum")
    assert out.feature_ids == ("P1", "P2")
    assert out.assays["counts"].values.tolist() == [[5.0, 5.0], [5.0, 0.0]]
    assert out.row_tree is None and out.row_links is None


def test_agglomerate_all_distinct_is_rename():
    exp = tiny_experiment()
    # make each feature its own rank
    from treescope.container import AnnotationTable, Column
    from dataclasses import replace
    row = AnnotationTable({"r": Column("categorical", ("x1", "x2", "x3"),
                                       levels=("x1", "x2", "x3"))})
    exp = replace(exp, row_data=row)
    out = agglomerate_by_rank(exp, "r")
    assert sorted(out.feature_ids) == ["x1", "x2", "x3"]
    assert out.assays["counts"].values.sum(axis=0).tolist() == \
        exp.assays["counts"].values.sum(axis=0).tolist()


def test_agglomerate_conserves_totals_exactly():
    rng = np.random.default_rng(21)
    for _ in range(20):
        exp = random_experiment(rng)
        out = agglomerate_by_rank(exp, "rank")
        for name in exp.assays:
            before = exp.assays[name].values.sum(axis=0)
            after = out.assays[name].values.sum(axis=0)
            assert (before == after).all()


def test_agglomerate_permutation_invariant():
    from treescope.container import subset
    exp = random_experiment(np.random.default_rng(8), nf=8, ns=3)
    perm = ["f003", "f000", "f006", "f001", "f007", "f002", "f005", "f004"]
    a = agglomerate_by_rank(exp, "rank")
    b = agglomerate_by_rank(subset(exp, keep_features=perm), "rank")
    # subset keeps relative order, so permute via two complementary subsets
    assert a.canonical_bytes() == b.canonical_bytes()


def test_agglomerate_missing_rank_goes_unclassified():
    from treescope.container import AnnotationTable, Column
    from dataclasses import replace
    exp = tiny_experiment()
    row = AnnotationTable({"r": Column("categorical", ("P", None, None), levels=("P",))})
    exp = replace(exp, row_data=row)
    out = agglomerate_by_rank(exp, "r")
    assert "(unclassified)" in out.feature_ids
    assert out.assays["counts"].values.sum() == exp.assays["counts"].values.sum()


def test_agglomerate_errors():
    exp = tiny_experiment()
    with pytest.raises(UnknownColumn):
        agglomerate_by_rank(exp, "nope")
    from treescope.container import AnnotationTable, Column
    from dataclasses import replace
    row = AnnotationTable({"num": Column("real", (1.0, 2.0, 3.0))})
    with pytest.raises(NonCategoricalColumn):
        agglomerate_by_rank(replace(exp, row_data=row), "num")


def test_top_features_ranking_and_ties():
    a = Assay("a", np.array([[5.0, 5.0], [1.0, 1.0], [3.0, 3.0]]))
    ids = ["r1", "r2", "r3"]
    assert top_features(a, 2, "mean", ids) == ["r1", "r3"]
    assert top_features(a, 10, "mean", ids) == ["r1", "r3", "r2"]
    tied = Assay("a", np.array([[2.0], [2.0]]))
    assert top_features(tied, 2, "mean", ["zz", "aa"]) == ["aa", "zz"]


def test_top_features_prefix_stable():
    rng = np.random.default_rng(2)
    a = Assay("a", rng.uniform(0, 5, size=(9, 4)))
    ids = [f"f{i}" for i in range(9)]
    for n in range(1, 9):
        assert top_features(a, n, "median", ids) == top_features(a, n + 1, "median", ids)[:n]

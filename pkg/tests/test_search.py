from __future__ import annotations

import json

import pytest

from c4flag.catalog import C4, K4
from c4flag.graphs import SizeCapError, SmallGraph, are_isomorphic, contains_subgraph, count_subgraphs
from c4flag.search import (
    c4_extremal_check, copy_masks, enumerate_labeled, k4_bound_check, max_count,
    multipartite_distance, near_extremal_cocherry_scan, scan,
)

K3, K5 = SmallGraph.complete(3), SmallGraph.complete(5)


def turan(n, r):
    q, m = divmod(n, r)
    return SmallGraph.complete_multipartite([q + 1] * m + [q] * (r - m))


def test_enumerate_labeled_counts():
    assert sum(1 for _ in enumerate_labeled(3)) == 8
    assert sum(1 for _ in enumerate_labeled(5)) == 1024
    seen = []
    list(enumerate_labeled(4, 10, 20, visitor=seen.append))
    assert len(seen) == 10
    with pytest.raises(SizeCapError):
        next(enumerate_labeled(9))


def test_copy_masks_count_copies():
    assert len(copy_masks(C4, 4)) == 3
    assert len(copy_masks(K4, 6)) == 15
    assert len(copy_masks(SmallGraph.empty(2), 4)) == 6


def test_vectorised_counts_match_brute_force():
    # compare the scan kernel against count_subgraphs on every graph with n = 5
    import numpy as np
    from c4flag.search import count_copies
    masks = np.arange(1 << 10, dtype=np.uint32)
    counts = count_copies(masks, copy_masks(C4, 5))
    for m in range(0, 1 << 10, 7):
        assert counts[m] == count_subgraphs(C4, SmallGraph.from_edge_mask(5, m))


@pytest.mark.parametrize("n,value", [(5, 5), (6, 15)])
def test_small_c4_extremal(n, value):
    res = c4_extremal_check(n, 3)
    assert res.maximum == value == res.turan_value
    assert len(res.witnesses) == 1 and are_isomorphic(res.witnesses[0], turan(n, 3))
    assert res.scanned == 1 << (n * (n - 1) // 2)


def test_n7_c4_extremal():
    res = c4_extremal_check(7, 3)
    assert res.maximum == 31
    assert res.unique_witness is not None and are_isomorphic(res.unique_witness, turan(7, 3))
    assert res.scanned == 2 ** 21


def test_triangle_free_case():
    res = max_count(6, C4, K3)
    assert res.maximum == 9
    assert len(res.witnesses) == 1 and are_isomorphic(res.witnesses[0], turan(6, 2))


def test_witnesses_are_free_and_extremal():
    res = max_count(6, C4, K4)
    for w in res.witnesses:
        assert not contains_subgraph(K4, w)
        assert count_subgraphs(C4, w) == res.maximum


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_oracle_agreement_with_turan(n):
    for r in (2, 3):
        res = c4_extremal_check(n, r)
        assert res.maximum == res.turan_value
        if n >= 5:
            assert len(res.witnesses) == 1 and are_isomorphic(res.witnesses[0], turan(n, r))


def test_k4_bound_small():
    assert k4_bound_check(6, 3).maximum == 0
    res = k4_bound_check(7, 4)
    assert res.maximum == 8 == res.turan_value
    with pytest.raises(ValueError):
        k4_bound_check(6, 2)


def test_partitioning_and_jobs_do_not_change_results():
    a = max_count(6, C4, K4, chunk_bits=15).to_dict()
    b = max_count(6, C4, K4, chunk_bits=9).to_dict()
    c = max_count(6, C4, K4, chunk_bits=9, jobs=2).to_dict()
    for d in (a, b, c):
        d.pop("elapsed_seconds")
    assert a == b == c


def test_resume(tmp_path):
    path = str(tmp_path / "scan.json")
    full = max_count(6, C4, K4, chunk_bits=10, resume=path)
    data = json.loads(open(path).read())
    assert len(data["chunks"]) == 32
    # drop half the chunks and resume
    data["chunks"] = data["chunks"][:16]
    open(path, "w").write(json.dumps(data))
    again = max_count(6, C4, K4, chunk_bits=10, resume=path)
    assert again.maximum == full.maximum and again.scanned == full.scanned
    with pytest.raises(ValueError):
        max_count(6, C4, K3, chunk_bits=10, resume=path)


def test_n8_gate():
    with pytest.raises(SizeCapError):
        max_count(8, C4, K4)
    with pytest.raises(SizeCapError):
        scan(9, C4, K4, allow_n8=True)


def test_multipartite_distance():
    assert multipartite_distance(turan(6, 3)) == 0
    assert multipartite_distance(SmallGraph.path(4)) == 1
    assert multipartite_distance(turan(6, 3).remove_edge(0, 2)) == 1


def test_near_extremal_scan():
    rep = near_extremal_cocherry_scan(7, 3, 0)
    assert rep.extremal_value == 31
    assert len(rep.entries) == 1 and rep.entries[0].cocherries == 0
    rep = near_extremal_cocherry_scan(6, 3, 4)
    assert rep.entries[0].c4 == 15 and rep.entries[0].cocherries == 0
    for e in rep.entries:
        assert e.c4 >= 11
        assert (e.cocherries == 0) == (e.multipartite_distance == 0)
    assert rep.to_dict()["max_induced_cocherries"] == rep.max_cocherries

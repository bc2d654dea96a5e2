from __future__ import annotations

import time
from fractions import Fraction
from math import comb

import pytest

from c4flag import reference as ref
from c4flag.catalog import C4, CATALOG, catalog_density_vector
from c4flag.certificate import (
    NORMALIZATION, WEIGHTS, bound, build_alphas,
    compute_Q, compute_Q0, evaluate_at, run, slack_table,
)
from c4flag.exact import RationalFn
from c4flag.flags import FlagCombination, density_of_square
from c4flag.graphs import SmallGraph, contains_subgraph, count_subgraphs, labeled_copy_masks
from c4flag.multipartite import PartFractions, asymptotic_c4_density, limit_density_vector

from conftest import random_graph

r = RationalFn.variable("r")


def specialise(alpha: FlagCombination, r0) -> FlagCombination:
    out = FlagCombination.zero(alpha.sigma, alpha.order)
    for f, c in alpha.items():
        out.add_term(c(Fraction(r0)), f)
    return out


@pytest.fixture(scope="module")
def report():
    return run()


# -- alphas and Q_j ----------------------------------------------------------------

def test_alpha_shapes():
    a = build_alphas()
    assert sorted(str(c) for _, c in a[1].items()) == ["-1", "r-1"]
    assert sorted(str(c) for _, c in a[2].items()) == ["-1", "1"]
    assert sorted(str(c) for _, c in a[3].items()) == ["-2", "r-2", "r-2"]


def test_q1_matches_reference_list():
    assert list(compute_Q(1)) == ref.PUBLISHED_Q[1]
    assert NORMALIZATION == 6


def test_q2_derived_values():
    want = [0, 0, 0, 3, 0, 0, 1, -1, -4, 0, 0]
    assert list(compute_Q(2)) == [RationalFn(x) for x in want]


def test_q3_derived_values():
    want = {3: 3 * r ** 2 - 12 * r + 12, 6: r ** 2 - 8 * r + 12, 7: (r - 2) ** 2,
            8: 4 * (r - 2) ** 2, 9: 20 - 8 * r, 10: RationalFn(24)}
    assert list(compute_Q(3)) == [want.get(i, RationalFn(0)) for i in range(11)]


@pytest.mark.parametrize("j", [1, 2, 3])
@pytest.mark.parametrize("r0", [3, 4, 7])
def test_q_forms_match_host_level_oracle(j, r0, rng):
    """Q_j(r0) evaluated on a graph equals 6 E_theta[alpha^2] computed without flag products."""
    alpha = specialise(build_alphas()[j], r0)
    form = compute_Q(j).specialize(r0)
    for _ in range(4):
        g = random_graph(rng, rng.randint(4, 7), rng.random())
        assert form.evaluate(catalog_density_vector(g)) == 6 * density_of_square(alpha, g.adj)


def test_q2_reference_list_is_negative_on_dense_random_graphs():
    """E[P(F_i)] in G(n, p) is a polynomial; the derived Q2 averages to 0 there."""
    p = Fraction(3, 4)
    q = 1 - p
    # labelled copies of F_i on 4 fixed vertices, each with probability p^e q^(6-e)
    vec = [len(labeled_copy_masks(f)) * p ** f.num_edges * q ** (6 - f.num_edges) for f in CATALOG]
    assert sum(vec) == 1
    assert compute_Q(2).specialize(5).evaluate(vec) == 0
    published = sum(Fraction(c(Fraction(5))) * v for c, v in zip(ref.PUBLISHED_Q[2], vec))
    assert published == 24 * p ** 3 * q ** 2 * (q - p) < 0


# -- Q0 ----------------------------------------------------------------------------

def test_q0_coefficients():
    q0 = compute_Q0()
    t = (r ** 3 - 6 * r ** 2 + 11 * r - 6) / r ** 3
    assert list(q0)[:10] == [t] * 10
    assert q0[10] == t - 1 == (-6 * r ** 2 + 11 * r - 6) / r ** 3
    assert list(q0) == ref.PUBLISHED_Q[0]


def test_q0_is_tight_on_t4_and_zero_on_k4_free_at_r3(rng):
    q0 = compute_Q0()
    assert q0.specialize(4).evaluate(limit_density_vector(PartFractions.balanced(4))) == 0
    for _ in range(20):
        g = random_graph(rng, 7, 0.6)
        if contains_subgraph(CATALOG[10], g):
            continue
        assert q0.specialize(3).evaluate(catalog_density_vector(g)) == 0


def test_turan_limit_vector_reproduces_c4_density():
    base = [count_subgraphs(C4, f) for f in CATALOG]
    for k in range(2, 7):
        vec = limit_density_vector(PartFractions.balanced(k))
        assert sum(b * v for b, v in zip(base, vec)) == asymptotic_c4_density(PartFractions.balanced(k))


# -- coefficients and the bound ---------------------------------------------------

def test_bound_formula():
    assert bound() == 3 * (r - 1) * (r ** 2 - 3 * r + 3) / r ** 3
    assert bound()(4) == Fraction(63, 64)


def test_tight_coefficients(report):
    for i in (0, 3, 8, 9, 10):
        assert report.c[i] == ref.BOUND


@pytest.mark.parametrize("i", [1, 2, 4, 5])
def test_coefficients_matching_reference(report, i):
    assert report.c[i] == ref.PUBLISHED_C[i]


def test_paw_and_p4_coefficients(report):
    d = 8 * r ** 3 * (3 * r ** 2 - 11 * r + 9)
    c6 = (28 * r ** 5 - 242 * r ** 4 + 804 * r ** 3 - 1302 * r ** 2 + 1035 * r - 324) / (d / 2)
    c7 = (48 * r ** 5 - 440 * r ** 4 + 1531 * r ** 3 - 2550 * r ** 2 + 2058 * r - 648) / d
    assert report.c[6] == c6
    assert report.c[7] == c7


def test_weights_nonnegative_and_certified(report):
    assert all(p.holds and p.recheck() for p in report.weight_proofs)
    assert WEIGHTS[0](3) == Fraction(9, 2)


def test_bound_proof(report):
    assert report.bound_proven
    assert all(p.recheck() for p in report.slack_proofs)
    assert report.tight_set == [0, 3, 8, 9, 10]


def test_evaluate_at(report):
    s3 = evaluate_at(3, report)
    assert [s3[i] for i in (0, 3, 8, 9, 10)] == [0] * 5
    assert s3[4] == Fraction(2, 3)
    assert s3[1] == Fraction(2, 3) - ref.PUBLISHED_C[1](3) > 0
    for r0 in (Fraction(3), Fraction(7, 2), 4, 10, 1000):
        assert min(evaluate_at(r0, report)) >= 0
    with pytest.raises(ValueError):
        evaluate_at(2)


def test_r3_boundary_section(report):
    b = report.to_dict()["r3_boundary"]
    # K4-free at r = 3: Q0 keeps only the K4 term
    assert b["Q0"] == ["0"] * 10 + ["-1"]
    assert b["bound"] == "2/3"
    assert [b["c"][i] for i in (0, 3, 8, 9, 10)] == ["2/3"] * 5


def test_slack_table(report):
    rows = slack_table(report)
    assert [row["r"] for row in rows] == list(range(3, 11))
    assert rows[1]["bound"] == "63/64"


def test_opt_attained_by_turan(report):
    for k in range(2, 11):
        assert asymptotic_c4_density(PartFractions.balanced(k)) == report.bound(k)


# -- comparison with the reference lists ------------------------------------------

def test_reference_comparison_pinpoints_differences(report):
    cmp = report.reference
    assert cmp["Q_match"] == {"0": True, "1": True, "2": False, "3": False}
    assert [d["index"] for d in cmp["Q_differences"]["2"]] == [6, 7]
    assert [d["index"] for d in cmp["Q_differences"]["3"]] == [6, 7]
    assert [i for i, ok in enumerate(cmp["c_match"]) if not ok] == [6, 7]
    assert cmp["weights_match"] == {"0": True, "1": False, "2": True, "3": True}
    assert cmp["tight_set_match"]
    # recombining the reference Q lists with these weights reproduces every reference c
    assert all(cmp["diagnostics"]["published_Q_c_match"])
    # the printed q1 loses tightness at F0 and F3
    assert 0 not in cmp["diagnostics"]["printed_weights_tight"]


def test_pipeline_is_fast():
    t0 = time.perf_counter()
    rep = run()
    assert time.perf_counter() - t0 < 5
    assert rep.tight_set == [0, 3, 8, 9, 10]


# -- soundness spot check -----------------------------------------------------------

@pytest.mark.parametrize("r0", [3, 4])
def test_finite_identities_and_reported_margin(r0, rng, report, capsys):
    base = [count_subgraphs(C4, f) for f in CATALOG]
    alphas = {j: specialise(a, r0) for j, a in build_alphas().items()}
    c_at = [c(Fraction(r0)) for c in report.c]
    worst = None
    seen = 0
    while seen < 15:
        g = random_graph(rng, rng.randint(5, 8), rng.uniform(0.3, 0.9))
        if contains_subgraph(SmallGraph.complete(r0 + 1), g):
            continue
        seen += 1
        vec = catalog_density_vector(g)
        d = Fraction(count_subgraphs(C4, g), comb(g.n, 4))
        assert d == sum(b * v for b, v in zip(base, vec))
        for j, alpha in alphas.items():
            assert report.Q[j].specialize(r0).evaluate(vec) == 6 * density_of_square(alpha, g.adj)
        margin = sum(c * v for c, v in zip(c_at, vec)) - d
        worst = margin if worst is None else min(worst, margin)
    print(f"r={r0}: min over samples of sum c_i P(F_i) - d(C4) = {float(worst):.4f}")

import json

import pytest

from heckelab import (
    BudgetExceeded,
    FieldTower,
    IsogenyClassifier,
    JInvariant,
    ParametricVariety,
    RunConfig,
    census,
    classify_goodness,
    family_divisor_probe,
    heuristic_table,
    signature_of,
)
from heckelab.census import CUSP_SENTINEL, _variety_points


def _graph_t_plus_1(tower):
    return ParametricVariety.from_univariate(
        tower, 1, [([0, 1], [1]), ([1, 1], [1])])


def test_enumeration_counts(tower5):
    from heckelab import enumerate_points

    diag = ParametricVariety.diagonal(tower5, 2)
    for m in (1, 2):
        assert sum(o for _, o, _ in _variety_points(tower5, diag, m)) == 5**m
        assert len(list(enumerate_points(tower5, diag, m))) == 5**m
    curve = ParametricVariety.from_univariate(
        tower5, 1, [([0, 0, 1], [1]), ([0, 0, 0, 1], [1])])
    assert sum(o for _, o, _ in _variety_points(tower5, curve, 1)) == 5
    pts = list(enumerate_points(tower5, curve, 1))
    assert all(c[0] == p[0] ** 2 and c[1] == p[0] ** 3 for p, c in pts)


def test_pole_becomes_cusp(tower5, classifier5):
    inv_t = ParametricVariety.from_univariate(
        tower5, 1, [([1], [0, 1]), ([0, 1], [1])])
    pts = list(_variety_points(tower5, inv_t, 1))
    assert sum(o for _, o, _ in pts) == 5
    cusps = [c for _, _, c in pts if c[0] is None]
    assert len(cusps) == 1
    sig = signature_of(classifier5, cusps[0])
    assert sig[0] == CUSP_SENTINEL


def test_signature_example(tower5, classifier5):
    sig = signature_of(
        classifier5, [tower5.from_int(1, 0), tower5.from_int(1, 1728)])
    assert sig[0][0] == "supersingular"
    assert sig[1][0] == "ordinary" and sig[1][2] == -4
    jd = tower5.from_int(1, 2)
    sig = signature_of(classifier5, [jd, jd])
    assert sig[0] == sig[1]


def test_diagonal_self_census(tower5, classifier5):
    diag = ParametricVariety.diagonal(tower5, 2)
    rep = census(tower5, classifier5, diag, diag, 3)
    assert [r.points_v for r in rep.rows] == [5, 25, 125]
    for r in rep.rows:
        assert r.matched_pairs >= r.points_v  # every point matches itself
    assert [r.cumulative_matched_v for r in rep.rows] == [5, 25, 145]
    # cumulative column is monotone
    cums = [r.cumulative_matched_v for r in rep.rows]
    assert cums == sorted(cums)


def test_census_symmetry(tower5, classifier5):
    diag = ParametricVariety.diagonal(tower5, 2)
    graph = _graph_t_plus_1(tower5)
    a = census(tower5, classifier5, graph, diag, 3)
    b = census(tower5, classifier5, diag, graph, 3)
    assert [r.matched_pairs for r in a.rows] == [r.matched_pairs for r in b.rows]


def test_census_brute_force_small(tower5, classifier5):
    # q = 5, n = 2, m <= 2: match counts equal a quadratic loop applying
    # the geometric isogeny test directly
    diag = ParametricVariety.diagonal(tower5, 2)
    graph = _graph_t_plus_1(tower5)
    rep = census(tower5, classifier5, graph, diag, 2)
    for m in (1, 2):
        tower5.ensure_level(m)
        vs = []
        ws = []
        for t in tower5.iter_elements(m):
            one = tower5.from_int(m, 1)
            vs.append((t, t + one))
            ws.append((t, t))
        count = 0
        for v in vs:
            for w in ws:
                if classifier5.geometric_isogeny_test(JInvariant(v[0]), JInvariant(w[0])) and \
                   classifier5.geometric_isogeny_test(JInvariant(v[1]), JInvariant(w[1])):
                    count += 1
        assert rep.rows[m - 1].matched_pairs == count


def test_signature_frobenius_stability(tower5, classifier5, rng):
    tower5.ensure_level(4)
    for _ in range(10):
        t = tower5.random_element(4, rng)
        one = tower5.from_int(4, 1)
        sig = signature_of(classifier5, [t, t + one])
        sigp = signature_of(classifier5, [t.frobenius(), (t + one).frobenius()])
        assert sig == sigp


def test_point_vs_diagonal_census(tower5, classifier5):
    # single supersingular point against the diagonal
    pt = ParametricVariety.point(tower5, [0, 0])
    diag = ParametricVariety.diagonal(tower5, 2)
    rep = census(tower5, classifier5, pt, diag, 2)
    for r in rep.rows:
        # number of diagonal points with supersingular coordinate
        tower5.ensure_level(r.m)
        ss = sum(
            1 for j in tower5.iter_elements(r.m)
            if classifier5.is_supersingular(JInvariant(j))
        )
        assert r.matched_pairs == ss


def test_classify_goodness_cases(tower5, classifier5):
    assert classify_goodness(
        tower5, classifier5, ParametricVariety.point(tower5, [0, 0]))[0] == "good"
    assert classify_goodness(
        tower5, classifier5, ParametricVariety.point(tower5, [0, 1728]))[0] == "bad"
    line_ss = ParametricVariety.from_univariate(
        tower5, 1, [([0], [1]), ([0, 1], [1])])
    assert classify_goodness(tower5, classifier5, line_ss)[0] == "bad"
    vertical_ss = ParametricVariety.from_univariate(
        tower5, 1, [([0, 1], [1]), ([0], [1])])
    assert classify_goodness(tower5, classifier5, vertical_ss)[0] == "bad"
    line_ord = ParametricVariety.from_univariate(
        tower5, 1, [([1], [1]), ([0, 1], [1])])
    assert classify_goodness(tower5, classifier5, line_ord)[0] == "good"
    diag = ParametricVariety.diagonal(tower5, 2)
    assert classify_goodness(tower5, classifier5, diag)[0] == "good"
    assert classify_goodness(
        tower5, classifier5, ParametricVariety.full_plane(tower5))[0] == "good"
    # cusp-fixed line: fixed coordinate is not supersingular, hence good
    cusp_line = ParametricVariety.from_univariate(
        tower5, 1, [([1], [0, 1]), ([0, 1], [1])])
    verdict = classify_goodness(tower5, classifier5, cusp_line)
    assert verdict[0] == "good"


def test_heuristic_table_scaling(tower5, classifier5):
    rows = heuristic_table(tower5, classifier5, 1, 3)
    for r in rows:
        assert 1 / 8 <= r["ratio"] <= 8
    assert rows[0]["distinct_labels"] == 4  # {ss, -4, -11, -19} over F_5
    # n = 2 signatures are the labels squared (product structure)
    rows2 = heuristic_table(tower5, classifier5, 2, 2)
    assert rows2[0]["distinct_signatures"] == rows[0]["distinct_labels"] ** 2


def test_divisor_probe(tower5, classifier5):
    fam = ParametricVariety.diagonal(tower5, 2)
    hits = family_divisor_probe(tower5, classifier5, fam, {(1, 0): 1, (0, 1): -1}, 1)
    assert len(hits) == len(list(_variety_points(tower5, fam, 1)))
    graph = _graph_t_plus_1(tower5)
    hits = family_divisor_probe(
        tower5, classifier5, graph, {(1, 0): 1, (0, 1): 1, (0, 0): -3}, 2)
    assert isinstance(hits, list)
    with pytest.raises(ValueError):
        family_divisor_probe(tower5, classifier5, fam, {(0, 0): 1}, 1)


def test_census_cross_validates_monomial_witnesses(tower5, classifier5):
    # matched pairs dominate the witnesses whose root-of-unity field embeds
    from heckelab import MonomialCurvePair, monomial_witness_search

    pair = MonomialCurvePair(5, (3, 5), (6, 20))
    ws, _ = monomial_witness_search(tower5, pair, m_max=2)
    v = ParametricVariety.from_univariate(
        tower5, 1, [([0, 0, 0, 1], [1]), ([0, 0, 0, 0, 0, 1], [1])])
    w = ParametricVariety.from_univariate(
        tower5, 1,
        [([0] * 6 + [1], [1]), ([0] * 20 + [1], [1])])
    rep = census(tower5, classifier5, v, w, 4)
    for row in rep.rows:
        eligible = sum(1 for x in ws if row.m % x.t.level == 0)
        assert row.matched_pairs >= eligible, (row.m, row.matched_pairs, eligible)


def test_report_serialization(tower5, classifier5):
    diag = ParametricVariety.diagonal(tower5, 2)
    rep = census(tower5, classifier5, diag, diag, 2)
    data = json.loads(rep.to_json())
    assert data["schema_version"] == 1
    assert len(data["rows"]) == 2
    csv_text = rep.to_csv()
    lines = csv_text.strip().split("\n")
    assert lines[0].startswith("m,points_v")
    assert len(lines) == 3

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srrlab import checks, codes
from srrlab.checks import OrthogonalFamily
from srrlab.errors import InvariantViolation

from oracles import dual_words, max_orthogonal

G_S = codes.simplex(4).evaluation
H4 = codes.hamming(4)


def test_checks_through_coordinate1_of_printed_simplex():
    got = set(checks.parity_checks_through(G_S, [1]))
    for s in [(1, 12, 13), (1, 2, 3)]:
        assert s in got
    # Rows {1,4,14} and {1,7,15} of the printed check matrix fail G_S.
    assert (1, 4, 14) not in got and (1, 7, 15) not in got


def test_checks_through_empty_set_are_all_nonzero_dual_words():
    assert len(checks.parity_checks_through(G_S, [])) == 2**11 - 1


def test_checks_through_sorted_by_size():
    sizes = [len(s) for s in checks.parity_checks_through(H4, [1])]
    assert sizes == sorted(sizes)


def test_hamming_checks_through_1_start_with_weight8_supports():
    got = checks.parity_checks_through(H4, [1])
    assert got[:8] == codes.min_weight_codewords(G_S, 8, restrict_to=1)


def test_simplex_family_through_1_has_seven_members():
    fam = checks.max_orthogonal_family(G_S, [1])
    assert fam.J == 7 and not fam.lower_bound_only
    fam.verify(G_S)
    assert sorted(fam.outside_parts()) == [(2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15)]


def test_hamming_family_through_1_has_one_member():
    fam = checks.max_orthogonal_family(H4, [1])
    assert fam.J == 1


def test_full_heavy_dual_support_admits_no_family():
    support = codes.min_weight_codewords(G_S, 8)[0]
    assert checks.max_orthogonal_family(H4, support).J == 0


def test_j_upper_bound_values():
    assert checks.j_upper_bound(H4, [1]) == 2
    assert checks.j_upper_bound(G_S, [1]) == 7
    rm = codes.reed_muller(1, 3)  # d_perp = 4, a = 2: tie of both denominators
    assert checks.j_upper_bound(rm, [1, 2]) == Fraction(6, 2)


def test_greedy_is_lower_bound():
    g = checks.max_orthogonal_family(G_S, [1], mode="greedy")
    assert g.lower_bound_only and g.J <= 7
    g.verify(G_S)
    with pytest.raises(ValueError):
        checks.max_orthogonal_family(G_S, [1], mode="fast")


def test_node_budget_exhaustion_flags_lower_bound():
    fam = checks.max_orthogonal_family(G_S, [1], node_budget=1, prune=False)
    assert fam.lower_bound_only
    fam.verify(G_S)


def test_pruning_keeps_j():
    for c, O in [(G_S, [1]), (H4, [1]), (codes.reed_muller(1, 3), [1])]:
        assert checks.max_orthogonal_family(c, O).J == checks.max_orthogonal_family(c, O, prune=False).J


def test_verify_rejects_bad_family():
    with pytest.raises(InvariantViolation):
        OrthogonalFamily((1,), [(1, 4, 14)]).verify(G_S)
    with pytest.raises(InvariantViolation):
        OrthogonalFamily((1,), [(1, 2, 3), (1, 2, 3)]).verify(G_S)


def test_disjoint_recovery_sets():
    dr = checks.disjoint_recovery_sets(G_S, 4)
    assert len(dr.sets) == 8 and dr.sets[0].servers == (1,)
    dr = checks.disjoint_recovery_sets(H4, 1)
    assert [r.size for r in dr.sets] == [1, 7]
    dr = checks.disjoint_recovery_sets(codes.repetition(5), 1)
    assert [r.servers for r in dr.sets] == [(1,), (2,), (3,), (4,), (5,)]


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.data())
def test_clique_matches_brute_force(n, data):
    k = data.draw(st.integers(1, n - 1))
    c = codes.random_code(n, k, data.draw(st.integers(0, 10**6)))
    O = tuple(sorted(data.draw(st.sets(st.integers(1, n), min_size=1, max_size=2))))
    words = dual_words(c.generator.to_lists())
    cand = [tuple(j + 1 for j in range(n) if h[j]) for h in words if any(h)]
    cand = [s for s in cand if set(O) <= set(s)]
    if len(cand) > 20:
        return
    fam = checks.max_orthogonal_family(c, O)
    fam.verify(c)
    assert fam.J == max_orthogonal(cand, O) == checks.brute_force_max_family(cand, O)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 11), st.data())
def test_family_respects_bounds(n, data):
    k = data.draw(st.integers(1, n - 1))
    c = codes.random_code(n, k, data.draw(st.integers(0, 10**6)))
    obj = data.draw(st.integers(1, k))
    a, smallest, fam = checks.best_smallest_family(c, obj)
    greedy = checks.max_orthogonal_family(c, fam.O, mode="greedy")
    assert greedy.J <= fam.J
    if c.dual_distance() <= c.n:
        assert fam.J <= checks.j_upper_bound(c, fam.O)
    for part in fam.outside_parts():
        assert c.column_sum(part) == 1 << (obj - 1)

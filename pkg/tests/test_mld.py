import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srrlab import codes, mld
from srrlab.errors import CapExceeded, InvariantViolation
from srrlab.gf2 import BinaryVector

from fixtures import VALID_VOTE_CHECKS, VOTE_CHECKS, printed_checks_code

G_S = codes.simplex(4).evaluation


def flip(x: BinaryVector, positions) -> BinaryVector:
    bits = x.bits
    for p in positions:
        bits ^= 1 << (p - 1)
    return BinaryVector(x.length, bits)


def all_messages(k):
    return [list(a) for a in product((0, 1), repeat=k)]


def test_printed_vote_checks_define_the_five_votes():
    c = printed_checks_code()
    v = mld.build_votes(c, 4, checks=VOTE_CHECKS)
    assert v.estimates == ((1,), (12, 13), (2, 3), (4, 14), (7, 15))


def test_printed_vote_checks_rejected_by_printed_generator():
    with pytest.raises(InvariantViolation):
        mld.build_votes(G_S, 4, checks=VOTE_CHECKS)


@pytest.mark.parametrize(
    "code, checks",
    [(printed_checks_code(), VOTE_CHECKS), (G_S, VALID_VOTE_CHECKS)],
    ids=["printed-checks-code", "printed-generator"],
)
def test_worked_error_patterns_decode(code, checks):
    v = mld.build_votes(code, 4, checks=checks)
    for a in all_messages(4):
        x = code.encode(a)
        assert mld.decode_symbol(v, x) == a[3]
        assert mld.decode_symbol(v, flip(x, [2, 4])) == a[3]
        assert mld.decode_symbol(v, flip(x, [2, 3, 4, 14])) == a[3]


def test_four_flips_leave_every_check_vote_correct_on_printed_checks_code():
    c = printed_checks_code()
    v = mld.build_votes(c, 4, checks=VOTE_CHECKS)
    x = c.encode([1, 0, 1, 1])
    assert mld.vote_values(v, flip(x, [2, 3, 4, 14]))[1:] == [1, 1, 1, 1]


@pytest.mark.parametrize(
    "code, checks",
    [(printed_checks_code(), VOTE_CHECKS), (G_S, VALID_VOTE_CHECKS)],
    ids=["printed-checks-code", "printed-generator"],
)
def test_four_check_family_corrects_two_not_three(code, checks):
    v = mld.build_votes(code, 4, checks=checks)
    assert mld.verify_capability(code, 4, 2, v).ok
    res = mld.verify_capability(code, 4, 3, v)
    assert not res.ok and len(res.counterexample) == 3


def test_default_votes_use_maximum_family():
    v = mld.build_votes(G_S, 4)
    assert v.J == 7
    assert mld.verify_capability(G_S, 4, 3, v).ok
    res = mld.verify_capability(G_S, 4, 4, v)
    assert not res.ok and len(res.counterexample) == 4


def test_small_vote_sets():
    v = mld.build_votes(codes.hamming(4), 1)
    assert len(v.estimates) == 2
    v = mld.build_votes(codes.repetition(3), 1)
    assert v.estimates == ((1,), (2,), (3,))
    assert mld.verify_capability(codes.repetition(5), 1, 2).ok
    assert mld.verify_capability(codes.repetition(3), 1, 1).ok


def test_tie_decodes_to_zero():
    v = mld.VoteSet(1, (1,), ((2,),))
    assert mld.decode_symbol(v, BinaryVector.from_list([1, 0])) == 0
    assert mld.decode_symbol(v, BinaryVector.from_list([1, 1])) == 1


def test_counterexample_is_real():
    v = mld.build_votes(G_S, 4, checks=VALID_VOTE_CHECKS)
    bad = mld.verify_capability(G_S, 4, 3, v).counterexample
    wrong = False
    for a in all_messages(4):
        if mld.decode_symbol(v, flip(G_S.encode(a), bad)) != a[3]:
            wrong = True
    assert wrong


def test_cap_refusal():
    with pytest.raises(CapExceeded):
        mld.verify_capability(G_S, 4, 3, cap=100)


def test_beyond_bound_rate_is_measured():
    v = mld.build_votes(G_S, 4, checks=VALID_VOTE_CHECKS)
    safe, total = mld.beyond_bound_success(G_S, v)
    assert total == 455 and 0 < safe < total


def test_decode_message_recovers_every_symbol():
    c = codes.hamming(3)
    votes = mld.all_vote_sets(c)
    for a in all_messages(4):
        assert mld.decode_message(c, votes, c.encode(a)) == a


@pytest.mark.parametrize(
    "code",
    [codes.hamming(3), codes.hamming(4), G_S, codes.reed_muller(1, 3), codes.repetition(5), codes.spc(5)],
)
def test_guarantee_holds_at_half_j(code):
    for obj in range(1, code.k + 1):
        v = mld.build_votes(code, obj)
        assert mld.verify_capability(code, obj, v.J // 2, v).ok


def test_zero_error_decoding_exhaustive_and_random():
    rng = random.Random(11)
    for code in [codes.hamming(4), codes.reed_muller(1, 4), codes.simplex(4).systematic]:
        votes = mld.all_vote_sets(code)
        messages = all_messages(code.k) if code.k <= 12 else []
        messages += [[rng.getrandbits(1) for _ in range(code.k)] for _ in range(1000)]
        for a in messages:
            assert mld.decode_message(code, votes, code.encode(a)) == a


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10), st.data())
def test_vote_linearity_away_from_ties(n, data):
    k = data.draw(st.integers(1, n - 1))
    c = codes.random_code(n, k, data.draw(st.integers(0, 10**6)))
    obj = data.draw(st.integers(1, k))
    v = mld.build_votes(c, obj)
    y = BinaryVector(n, data.draw(st.integers(0, (1 << n) - 1)))
    a = [data.draw(st.integers(0, 1)) for _ in range(k)]
    ones = sum(mld.vote_values(v, y))
    if 2 * ones == len(v.estimates):
        return
    assert mld.decode_symbol(v, y + c.encode(a)) == mld.decode_symbol(v, y) ^ a[obj - 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9), st.data())
def test_capability_reduction_matches_all_codewords(n, data):
    k = data.draw(st.integers(1, min(4, n - 1)))
    c = codes.random_code(n, k, data.draw(st.integers(0, 10**6)))
    obj = data.draw(st.integers(1, k))
    v = mld.build_votes(c, obj)
    e = data.draw(st.integers(0, (1 << n) - 1))
    direct = all(
        mld.decode_symbol(v, flip(c.encode(a), [j + 1 for j in range(n) if e >> j & 1])) == a[obj - 1]
        for a in all_messages(k)
    )
    assert mld.pattern_safe(v, e) == direct

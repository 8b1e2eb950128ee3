import pytest

from coregrowth.partitions import (
    EMPTY,
    complement,
    enumerate_reduced_states,
    maximal_state,
)
from coregrowth.posets import weak_covers_bounded
from coregrowth.tasep import (
    alpha,
    alpha_inv,
    alpha_via_core,
    jumps,
    normalize_word,
    reverse_word,
    verify_rectangle_jump,
    verify_tasep_equivalence,
    word_from_string,
    word_to_string,
)

# Word <-> state pairs of the 24-state table (word digits, state parts).
K4_WORDS = {
    "1234": EMPTY,
    "2341": (1,),
    "2314": (1, 1),
    "2134": (1, 1, 1),
    "3412": (2,),
    "3142": (2, 1),
    "1342": (2, 1, 1),
    "3421": (2, 1, 1, 1),
    "3124": (2, 2),
    "1324": (2, 2, 1),
    "3241": (2, 2, 1, 1),
    "3214": (2, 2, 1, 1, 1),
    "4321": (3, 2, 2, 1, 1, 1),
    "1432": (3, 2, 2, 1, 1),
    "4132": (3, 2, 2, 1),
    "4312": (3, 2, 2),
    "2143": (3, 2, 1, 1, 1),
    "2413": (3, 2, 1, 1),
    "2431": (3, 2, 1),
    "1243": (3, 2),
    "4213": (3, 1, 1, 1),
    "4231": (3, 1, 1),
    "1423": (3, 1),
    "4123": (3,),
}

K3_WORDS = {
    "123": EMPTY,
    "231": (1,),
    "213": (1, 1),
    "312": (2,),
    "132": (2, 1),
    "321": (2, 1, 1),
}


def word_of(digits: str, k: int):
    return tuple(int(c) for c in digits) + (k + 1,)


def test_alpha_examples():
    assert alpha(word_from_string("1-4-2-3-5")) == (3, 1)
    assert alpha_inv((3, 3, 1, 1), 5) == (4, 2, 3, 5, 1, 6)
    assert alpha_inv((2, 1), 3) == (1, 3, 2, 4)
    for k in (2, 3, 4, 5):
        assert alpha_inv(EMPTY, k) == tuple(range(1, k + 2))
        assert alpha_inv(maximal_state(k), k) == tuple(range(k, 0, -1)) + (k + 1,)


def test_k3_word_table():
    for digits, state in K3_WORDS.items():
        assert alpha_inv(state, 3) == word_of(digits, 3)
        assert alpha(word_of(digits, 3)) == state


def test_k4_word_table():
    for digits, state in K4_WORDS.items():
        assert alpha_inv(state, 4) == word_of(digits, 4)
        assert alpha(word_of(digits, 4)) == state


def test_alpha_round_trip():
    for k in range(1, 8):
        for s in enumerate_reduced_states(k):
            assert alpha(alpha_inv(s, k)) == s


def test_alpha_via_core_oracle():
    for k in range(1, 6):
        for s in enumerate_reduced_states(k):
            assert alpha_via_core(s, k) == alpha_inv(s, k)


def test_jumps_examples():
    assert jumps(word_of("312", 3)) == [
        (1, (1, 3, 2, 4)),
        (3, (1, 2, 3, 4)),
    ]
    # identity word: only the smallest value can move
    for k in (2, 3, 4):
        moves = jumps(tuple(range(1, k + 2)))
        assert [v for v, _w in moves] == [1]
    # reversed word: every value up to k can move
    moves = jumps(word_of("321", 3))
    assert [v for v, _w in moves] == [1, 2, 3]


def test_jump_count_matches_weak_covers():
    for k in range(2, 6):
        for s in enumerate_reduced_states(k):
            assert len(jumps(alpha_inv(s, k))) == len(weak_covers_bounded(s, k)) <= k


def test_reversal_is_complement():
    for k in range(2, 7):
        for s in enumerate_reduced_states(k):
            assert alpha(reverse_word(alpha_inv(s, k))) == complement(s, k)


def test_normalize_word():
    assert normalize_word((3, 5, 1, 4, 2)) == (1, 4, 2, 3, 5)
    assert normalize_word((4, 1, 2, 3)) == (1, 2, 3, 4)


def test_word_serialization():
    assert word_to_string((1, 4, 2, 3, 5)) == "1-4-2-3-5"
    assert word_from_string("1-4-2-3-5") == (1, 4, 2, 3, 5)
    big = tuple(range(1, 12))
    assert word_from_string(word_to_string(big)) == big
    with pytest.raises(ValueError):
        word_from_string("1-2-2-4")
    with pytest.raises(ValueError):
        word_from_string("2-3-1")  # largest value not last


def test_equivalence_and_rectangle_witness():
    for k in (1, 2, 3, 4):
        assert verify_tasep_equivalence(k).passed
        assert verify_rectangle_jump(k).passed


def test_alpha_inv_after_alpha_on_all_words():
    from itertools import permutations

    for k in range(1, 8):
        for head in permutations(range(1, k + 1)):
            word = head + (k + 1,)
            assert alpha_inv(alpha(word), k) == word

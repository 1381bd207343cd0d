from itertools import permutations
from math import factorial

from hypothesis import given, strategies as st

from nbracket.permutations import (
    from_lehmer,
    inversion_count,
    lehmer_code,
    next_perm,
    parity,
    perm_rank,
    perm_unrank,
    signed_perm_range,
)


def test_inversions_small():
    assert inversion_count((0, 1, 2)) == 0
    assert inversion_count((2, 1, 0)) == 3
    assert inversion_count((1, 0, 2)) == 1


def test_parity_matches_transposition_count():
    # parity of a permutation equals (-1)^(number of adjacent swaps to sort)
    for perm in permutations(range(5)):
        seq = list(perm)
        swaps = 0
        for i in range(len(seq)):
            for j in range(len(seq) - 1):
                if seq[j] > seq[j + 1]:
                    seq[j], seq[j + 1] = seq[j + 1], seq[j]
                    swaps += 1
        assert parity(perm) == (-1) ** swaps


@given(st.permutations(list(range(7))))
def test_rank_unrank_roundtrip(perm):
    perm = tuple(perm)
    assert perm_unrank(perm_rank(perm), len(perm)) == perm


@given(st.permutations(list(range(6))))
def test_lehmer_roundtrip(perm):
    perm = tuple(perm)
    assert from_lehmer(lehmer_code(perm)) == perm


def test_unrank_is_lexicographic():
    ordered = [perm_unrank(r, 4) for r in range(factorial(4))]
    assert ordered == sorted(ordered)
    assert ordered == list(permutations(range(4)))


def test_next_perm_walks_the_order():
    perm = perm_unrank(0, 5)
    seen = [perm]
    while (perm := next_perm(perm)) is not None:
        seen.append(perm)
    assert seen == list(permutations(range(5)))


def test_signed_range_blocks_cover_everything():
    whole = list(signed_perm_range(5))
    assert len(whole) == 120
    pieces = []
    for lo in range(0, 120, 17):
        pieces.extend(signed_perm_range(5, lo, min(lo + 17, 120)))
    assert pieces == whole
    for sign, perm in whole[:24]:
        assert sign == parity(perm)

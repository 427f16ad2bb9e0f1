import random

import pytest

from antipow import (
    BlockSplit,
    FiniteWord,
    REGULAR,
    avoidance_scan,
    classify_block,
    find_first,
    sierpinski_prefix,
    toeplitz_paperfolding_prefix,
)
from conftest import brute_find_first

AB = ("a", "b")


def word(text, alphabet=AB):
    return FiniteWord.from_text(text, alphabet)


def test_classify_abelian_antipower_example():
    flags = classify_block(word("aabaaabbbabb"), BlockSplit(1, 3, 4))
    assert flags.is_abelian_antipower and flags.is_antipower
    assert not flags.is_power and not flags.is_abelian_power


def test_classify_antipower_but_not_abelian():
    # cells aab and aba share the Parikh vector (2,1)
    flags = classify_block(word("aabaaabbbaba"), BlockSplit(1, 3, 4))
    assert flags.is_antipower and not flags.is_abelian_antipower


def test_classify_power():
    flags = classify_block(word("aaaa"), BlockSplit(1, 1, 4))
    assert flags.is_power and flags.is_abelian_power
    assert not flags.is_antipower and not flags.is_abelian_antipower


def test_classify_rejects_overflowing_split():
    with pytest.raises(ValueError):
        classify_block(word("abab"), BlockSplit(2, 2, 2))


def test_block_split_validation():
    for bad in [(0, 1, 1), (1, 0, 1), (1, 1, 0)]:
        with pytest.raises(ValueError):
            BlockSplit(*bad)


def test_classify_implications_on_random_splits():
    rng = random.Random(23)
    for _ in range(300):
        text = "".join(rng.choice("ab") for _ in range(rng.randint(4, 64)))
        w = word(text)
        m = rng.randint(2, 4)
        d = rng.randint(1, max(1, len(w) // m))
        if m * d > len(w):
            continue
        start = rng.randint(1, len(w) - m * d + 1)
        flags = classify_block(w, BlockSplit(start, d, m))
        if flags.is_power:
            assert flags.is_abelian_power
        if flags.is_abelian_antipower:
            assert flags.is_antipower
        assert not (flags.is_abelian_power and flags.is_abelian_antipower)


def test_find_first_tiny():
    hit = find_first(word("0110", ("0", "1")), 2, "antipower")
    assert (hit.start, hit.cell_width) == (1, 1)


def test_find_first_none_for_eleven_antipowers_in_sierpinski():
    w = sierpinski_prefix(3**8)
    assert find_first(w, 11, "antipower", d_max=len(w) // 11) is None


def test_find_first_agrees_with_quadratic_reference():
    rng = random.Random(41)
    for _ in range(1000):
        n = rng.randint(4, 256)
        text = "".join(rng.choice("01") for _ in range(n))
        w = FiniteWord.from_text(text, ("0", "1"))
        m = rng.randint(2, 4)
        if len(w) < m:
            continue
        d_max = rng.randint(1, 16)
        hit = find_first(w, m, "abelian_antipower", d_max=d_max)
        expected = brute_find_first(w, m, "abelian_antipower", d_max=d_max)
        got = None if hit is None else (hit.start, hit.cell_width)
        assert got == expected


def test_find_first_other_kinds_match_reference():
    rng = random.Random(43)
    for kind in ("power", "abelian_power", "antipower"):
        for _ in range(100):
            n = rng.randint(4, 128)
            text = "".join(rng.choice("01") for _ in range(n))
            w = FiniteWord.from_text(text, ("0", "1"))
            m = rng.randint(2, 3)
            d_max = rng.randint(1, 12)
            hit = find_first(w, m, kind, d_max=d_max)
            expected = brute_find_first(w, m, kind, d_max=d_max)
            got = None if hit is None else (hit.start, hit.cell_width)
            assert got == expected


def test_find_first_nonbinary_alphabet():
    w = FiniteWord.from_text("abcabc", ("a", "b", "c"))
    hit = find_first(w, 3, "abelian_antipower")
    assert (hit.start, hit.cell_width) == (1, 1)
    assert find_first(w, 2, "abelian_power") is not None


def test_avoidance_tiny_counterexample():
    assert not avoidance_scan(word("ab"), 2, "antipower")


def test_avoidance_sierpinski_small_stage():
    w = sierpinski_prefix(3**6)
    assert avoidance_scan(w, 11, "antipower")
    assert avoidance_scan(w, 11, "abelian_antipower")


def test_scan_argument_validation():
    w = word("abab")
    with pytest.raises(ValueError):
        find_first(w, 1, "antipower")
    with pytest.raises(ValueError):
        avoidance_scan(w, 1, "antipower")
    with pytest.raises(ValueError):
        find_first(w, 2, "anti-power")
    with pytest.raises(ValueError):
        find_first(word("a"), 2, "antipower")


def test_threads_do_not_change_results():
    w = toeplitz_paperfolding_prefix(REGULAR, 2**10)
    for kind in ("antipower", "abelian_antipower"):
        assert find_first(w, 3, kind) == find_first(w, 3, kind, threads=3)
    s = sierpinski_prefix(3**5)
    assert avoidance_scan(s, 11, "antipower") == avoidance_scan(s, 11, "antipower", threads=3)


def test_scan_hit_json():
    hit = find_first(word("0110", ("0", "1")), 2, "antipower")
    assert hit.to_json() == '{"start": 1, "d": 1, "m": 2, "kind": "antipower"}'


def test_slow_abelian_mask_agrees_with_classifier():
    from antipow.scan import _hit_mask, _hit_mask_slow

    rng = random.Random(47)
    for _ in range(30):
        text = "".join(rng.choice("abc") for _ in range(rng.randint(6, 40)))
        w = FiniteWord.from_text(text, ("a", "b", "c"))
        m = rng.randint(2, 3)
        d = rng.randint(1, len(w) // m)
        slow = _hit_mask_slow(w, d, m, "abelian_antipower")
        fast = _hit_mask(w, d, m, "abelian_antipower")
        assert list(slow) == list(fast)
        for p, flag in enumerate(slow):
            expected = classify_block(w, BlockSplit(p + 1, d, m)).is_abelian_antipower
            assert flag == expected

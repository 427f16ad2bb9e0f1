import random

import pytest

from antipow import (
    FiniteWord,
    InstructionSequence,
    Morphism,
    REGULAR,
    SIERPINSKI_MORPHISM,
    THUE_MORSE_MORPHISM,
    morphism_prefix,
    paperfolding_letter,
    sierpinski_prefix,
    toeplitz_paperfolding_prefix,
)

REGULAR_32 = "00100110001101100010011100110110"


def test_morphism_prefix_sierpinski_two_iterations():
    assert str(morphism_prefix(SIERPINSKI_MORPHISM, "a", 9)) == "ababbbaba"


def test_morphism_prefix_seed_only():
    assert str(morphism_prefix(SIERPINSKI_MORPHISM, "a", 1)) == "a"


def test_morphism_prefix_thue_morse():
    # iterating 0 -> 01 -> 0110 -> 01101001 by hand
    assert str(morphism_prefix(THUE_MORSE_MORPHISM, "0", 8)) == "01101001"


def test_morphism_prefix_rejects_non_prolongable_seed():
    swap = Morphism({"a": "ba", "b": "ab"})
    with pytest.raises(ValueError, match="prolongable"):
        morphism_prefix(swap, "a", 4)


def test_morphism_prefix_rejects_unknown_seed():
    with pytest.raises(ValueError, match="no rule"):
        morphism_prefix(SIERPINSKI_MORPHISM, "c", 4)


def test_morphism_prefix_rejects_non_expanding():
    idle = Morphism({"a": "a"})
    with pytest.raises(ValueError, match="expand"):
        morphism_prefix(idle, "a", 2)


def test_morphism_rules_validation():
    with pytest.raises(ValueError):
        Morphism({"a": "ab"})  # 'b' has no rule
    with pytest.raises(ValueError):
        Morphism({"a": ""})


def test_sierpinski_prefix_displayed():
    assert str(sierpinski_prefix(10)) == "ababbbabab"
    assert str(sierpinski_prefix(1)) == "a"


def test_sierpinski_stage_lengths_are_powers_of_three():
    # s_3 has 27 letters and is a prefix of every longer stage
    s3 = str(sierpinski_prefix(27))
    assert len(s3) == 27
    assert s3 == "ababbbaba" + "b" * 9 + "ababbbaba"


def test_sierpinski_matches_morphism_route():
    n = 3**9
    assert sierpinski_prefix(n) == morphism_prefix(SIERPINSKI_MORPHISM, "a", n)


def test_sierpinski_prefix_rejects_zero():
    with pytest.raises(ValueError):
        sierpinski_prefix(0)


def test_toeplitz_regular_prefix():
    assert str(toeplitz_paperfolding_prefix(REGULAR, 32)) == REGULAR_32
    assert str(toeplitz_paperfolding_prefix(REGULAR, 3)) == "001"


def test_toeplitz_all_minus_matches_oracle():
    b = InstructionSequence((), (-1,))
    w = toeplitz_paperfolding_prefix(b, 4)
    assert str(w) == "1101"
    assert all(paperfolding_letter(b, i + 1) == w[i] for i in range(4))


def test_paperfolding_letter_examples():
    assert paperfolding_letter(REGULAR, 3) == 1
    assert paperfolding_letter(REGULAR, 12) == 1
    assert paperfolding_letter(REGULAR, 8) == 0  # 8 = 2^3, even odd-index


def test_paperfolding_letter_rejects_zero():
    with pytest.raises(ValueError):
        paperfolding_letter(REGULAR, 0)


def test_paperfolding_letter_at_astronomical_positions():
    # ones of order k sit at positions 2^k(3+4t) in the regular word
    assert paperfolding_letter(REGULAR, 3 << 200) == 1
    assert paperfolding_letter(REGULAR, 1 << 200) == 0
    assert paperfolding_letter(REGULAR, 7 << 200) == 1
    assert paperfolding_letter(REGULAR, 5 << 200) == 0


@pytest.mark.parametrize(
    "text", ["(+)", "(-+)", "+-(-)", "(--+)", "++(-+-)"]
)
def test_toeplitz_agrees_with_letter_oracle(text):
    b = InstructionSequence.parse(text)
    n = 2**10
    w = toeplitz_paperfolding_prefix(b, n)
    assert all(paperfolding_letter(b, i + 1) == w[i] for i in range(n))


def test_regular_ones_of_each_order_sit_on_arithmetic_progression():
    for k in range(7):
        n = 2 ** (k + 4)
        w = toeplitz_paperfolding_prefix(REGULAR, n)
        found = [
            i
            for i in range(1, n + 1)
            if w[i - 1] == 1 and (i & -i).bit_length() - 1 == k
        ]
        expected = [(3 + 4 * t) << k for t in range(4)]
        assert found == [p for p in expected if p <= n]


def test_instruction_sequence_accessor():
    b = InstructionSequence.parse("+-(-)")
    assert [b.at(k) for k in range(6)] == [1, -1, -1, -1, -1, -1]
    alt = InstructionSequence.parse("(-+)")
    assert [alt.at(k) for k in range(5)] == [-1, 1, -1, 1, -1]
    with pytest.raises(ValueError):
        alt.at(-1)


def test_instruction_sequence_round_trip():
    for text in ["(+)", "(-+)", "+-(-)", "++--(-+-)"]:
        assert str(InstructionSequence.parse(text)) == text


def test_instruction_sequence_parse_errors():
    for bad in ["bad", "", "+", "(+", "+)", "()", "(a)", "(+)(+)"]:
        with pytest.raises(ValueError):
            InstructionSequence.parse(bad)


def test_instruction_sequence_accepts_unicode_minus():
    assert InstructionSequence.parse("(−+)") == InstructionSequence.parse("(-+)")


def test_instruction_sequence_validation():
    with pytest.raises(ValueError):
        InstructionSequence((), ())
    with pytest.raises(ValueError):
        InstructionSequence((2,), (1,))


def test_finite_word_basics():
    w = FiniteWord.from_text("abba", ("a", "b"))
    assert len(w) == 4
    assert str(w) == "abba"
    assert w[1] == 1
    assert str(w[1:3]) == "bb"
    assert str(w.prefix(2)) == "ab"
    with pytest.raises(ValueError):
        w.prefix(9)


def test_finite_word_validation():
    with pytest.raises(ValueError):
        FiniteWord.from_text("abc", ("a", "b"))
    with pytest.raises(ValueError):
        FiniteWord(("a", "a"), b"\x00")
    with pytest.raises(ValueError):
        FiniteWord(("a", "b"), b"\x05")
    with pytest.raises(ValueError):
        FiniteWord((), b"")


def test_random_instruction_sequences_oracle_consistency():
    rng = random.Random(7)
    for _ in range(5):
        pre = tuple(rng.choice((1, -1)) for _ in range(rng.randint(0, 3)))
        per = tuple(rng.choice((1, -1)) for _ in range(rng.randint(1, 4)))
        b = InstructionSequence(pre, per)
        n = 2**9
        w = toeplitz_paperfolding_prefix(b, n)
        assert all(paperfolding_letter(b, i + 1) == w[i] for i in range(n))

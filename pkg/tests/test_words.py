import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfflip.words import (
    C,
    F2,
    F3,
    M,
    M_SPEC,
    FixedPointSpec,
    MorphismError,
    Word,
    apply_morphism,
    dump_morphism,
    fixed_point_prefix,
    load_morphism,
    read_words,
    validate_morphism,
    write_words,
)

# images exactly as printed, with c expanded by hand
PRINTED_M = [
    "13012402301302402301240241341240230130240230124",
    "02301240241301240230130240234124024134124023013",
    "02341240241301240234130241301240230130240230124",
    "13012402301302402301240241341240230130240234124",
    "02341240241301240230130240234124024134124023013",
]


def words_over(max_size=5, max_len=30):
    return st.integers(1, max_size).flatmap(
        lambda s: st.lists(st.integers(0, s - 1), max_size=max_len).map(lambda xs: Word(bytes(xs), s))
    )


def test_builtin_m_matches_printed_images():
    f = validate_morphism([C + tail for tail in PRINTED_M])
    assert f.q == 95
    assert f.images == M.images
    assert len(C) == 48


def test_builtin_image_morphisms():
    assert str(apply_morphism(F3, "0")) == "0001022"
    assert [str(F2.image(a)) for a in range(5)] == ["0000001", "0101001", "0010011", "0001111", "1011011"]
    assert (F3.codomain_size, F2.codomain_size) == (3, 2)


def test_validate_rejects_non_uniform():
    with pytest.raises(MorphismError, match="non-uniform"):
        validate_morphism(["01", "0"])


def test_validate_rejects_letter_out_of_range():
    with pytest.raises(MorphismError, match="out of range"):
        validate_morphism({"domain_size": 1, "codomain_size": 2, "q": 2, "images": ["02"]})


def test_validate_rejects_empty():
    with pytest.raises(MorphismError):
        validate_morphism([])


def test_apply_to_empty_word():
    for f in (M, F3, F2):
        assert len(apply_morphism(f, Word(b"", 5))) == 0


def test_apply_rejects_letter_outside_domain():
    with pytest.raises(MorphismError):
        apply_morphism(F3, Word.parse("5"))


def test_m_of_zero_starts_with_c():
    w = apply_morphism(M, "0")
    assert len(w) == 95
    assert str(w).startswith(C)


def test_fixed_point_prefix_small_cases():
    assert str(fixed_point_prefix(M_SPEC, 48)) == C
    assert str(fixed_point_prefix(M_SPEC, 1)) == "0"
    assert len(fixed_point_prefix(M_SPEC, 0)) == 0
    assert fixed_point_prefix(M_SPEC, 9025) == apply_morphism(M, apply_morphism(M, "0"))


def test_fixed_point_spec_requires_prolongable_seed():
    with pytest.raises(MorphismError, match="prolongable"):
        FixedPointSpec(M, 1)
    with pytest.raises(MorphismError):
        FixedPointSpec(F3, 0)


@given(words_over(), words_over())
def test_morphism_is_a_homomorphism(x, y):
    assert apply_morphism(M, x + y) == apply_morphism(M, x) + apply_morphism(M, y)
    assert len(apply_morphism(F3, x)) == 7 * len(x)


@given(st.integers(0, 400))
def test_fixed_point_equation(n):
    assert fixed_point_prefix(M_SPEC, 95 * n) == apply_morphism(M, fixed_point_prefix(M_SPEC, n))


@given(st.integers(0, 3000), st.integers(0, 3000))
def test_prefixes_are_consistent(a, b):
    a, b = sorted((a, b))
    assert fixed_point_prefix(M_SPEC, b)[:a] == fixed_point_prefix(M_SPEC, a)


def test_word_parse_and_text_roundtrip():
    w = Word.parse("0112")
    assert w.alphabet_size == 3
    assert str(w) == "0112"
    assert list(w) == [0, 1, 1, 2]
    with pytest.raises(ValueError):
        Word.parse("01a")
    with pytest.raises(ValueError):
        Word(b"\x03", 3)


def test_morphism_json_roundtrip(tmp_path):
    path = tmp_path / "f3.json"
    dump_morphism(F3, path)
    data = json.loads(path.read_text())
    assert set(data) == {"domain_size", "codomain_size", "q", "images"}
    assert load_morphism(path).images == F3.images


def test_word_file_roundtrip(tmp_path):
    path = tmp_path / "w.txt"
    words = [Word.parse("012"), Word.parse("0110")]
    write_words(words, path)
    assert path.read_text() == "012\n0110\n"
    assert [str(w) for w in read_words(path)] == ["012", "0110"]

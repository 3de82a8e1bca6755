import pytest
from hypothesis import given
from hypothesis import strategies as st

from cayleykit.errors import AlphabetError, ParseError
from cayleykit.words import (
    PAD,
    Alphabet,
    TrackAlphabet,
    Word,
    alphabet,
    convolve,
    convolve_cells,
    deconvolve,
    multi_convolve,
    multi_deconvolve,
    parse_word,
    word,
)


def test_alphabet_rejects_duplicates_and_reserved():
    with pytest.raises(AlphabetError):
        alphabet("a", "a")
    with pytest.raises(AlphabetError):
        alphabet("a", "_")
    with pytest.raises(AlphabetError):
        alphabet("⊞")
    with pytest.raises(AlphabetError):
        alphabet("eps")


def test_word_validates_letters():
    ab = alphabet("a", "b")
    w = word(ab, ["a", "b", "a"])
    assert len(w) == 3 and list(w) == ["a", "b", "a"]
    with pytest.raises(AlphabetError):
        word(ab, ["a", "c"])


def test_word_text_and_compact():
    ab = alphabet("a", "a'", "b")
    assert word(ab, []).text() == "eps"
    assert word(ab, ["a", "a'"]).text() == "a a'"
    assert word(ab, ["a", "a'", "b"]).compact() == "aa⁻¹b"


def test_parse_word():
    ab = alphabet("a", "a'", "↑")
    assert parse_word(ab, "eps").letters == ()
    assert parse_word(ab, "a a' a").letters == ("a", "a'", "a")
    # keyboard alias for the arrow
    assert parse_word(ab, "a ^ a").letters == ("a", "↑", "a")
    with pytest.raises(ParseError) as exc:
        parse_word(ab, "a q")
    assert exc.value.position == 1


def test_convolution_pads_shorter_track():
    ab = alphabet("a", "b")
    u = word(ab, ["a", "b", "a"])
    v = word(ab, ["b"])
    cw = convolve(u, v)
    assert cw.cells == (("a", "b"), ("b", PAD), ("a", PAD))
    assert deconvolve(cw) == (u, v)


def test_convolution_requires_same_alphabet():
    u = word(alphabet("a"), ["a"])
    v = word(alphabet("b"), ["b"])
    with pytest.raises(AlphabetError):
        convolve(u, v)


@given(st.lists(st.sampled_from("ab"), max_size=8),
       st.lists(st.sampled_from("ab"), max_size=8))
def test_convolve_cells_round_trip(us, vs):
    cells = convolve_cells(tuple(us), tuple(vs))
    assert len(cells) == max(len(us), len(vs))
    left = tuple(c[0] for c in cells if c[0] != PAD)
    right = tuple(c[1] for c in cells if c[1] != PAD)
    assert left == tuple(us) and right == tuple(vs)


@given(st.lists(st.lists(st.sampled_from(["0", "1", "-"]), max_size=6),
                min_size=1, max_size=4))
def test_multi_convolve_round_trip(tracks):
    tracks = tuple(tuple(t) for t in tracks)
    cells = multi_convolve(tracks)
    assert multi_deconvolve(cells, len(tracks)) == tracks


def test_track_alphabet_membership():
    ta = TrackAlphabet((), components=("0", "1"), tracks=2)
    assert "0:1" in ta and "0:_" in ta and "_:1" in ta
    assert "_:_" not in ta
    assert "0" not in ta and "0:1:0" not in ta and "x:1" not in ta
    assert len(ta) == 8
    assert set(ta) == {f"{x}:{y}" for x in "01_" for y in "01_"} - {"_:_"}


def test_track_alphabet_rejects_bad_shapes():
    with pytest.raises(AlphabetError):
        TrackAlphabet((), components=("0", "_"), tracks=2)
    with pytest.raises(AlphabetError):
        TrackAlphabet(("x",), components=("0",), tracks=1)
    with pytest.raises(AlphabetError):
        TrackAlphabet((), components=("0",), tracks=0)

import itertools
import random

from conftest import words_up_to

from cayleykit.groups.nilpotent import (
    coords_language_dfa,
    decode_coords,
    decode_int2,
    encode_coords,
    encode_int2,
    heisenberg_rep,
)
from cayleykit.oracle import heisenberg_oracle
from cayleykit.representation import normal_form, word_problem


def oracle_coords(m):
    return (m.entries[0][1], m.entries[1][2], m.entries[0][2])


def test_int2_round_trip():
    for n in range(-300, 301):
        assert decode_int2(encode_int2(n)) == n


def test_frozen_examples():
    rep = heisenberg_rep()
    w = encode_coords((2, 3, 5))
    out, _ = rep.multipliers["b"].apply(w)
    assert decode_coords(out, 3) == (2, 4, 7)
    out, _ = rep.multipliers["a"].apply(())
    assert decode_coords(out, 3) == (1, 0, 0)
    assert word_problem(rep, ("a", "b", "a'", "b'", "c'"))
    assert not word_problem(rep, ("a", "b", "a'", "b'"))


def test_coords_round_trip_random():
    rng = random.Random(5)
    for _ in range(1000):
        v = tuple(rng.randint(-10 ** 6, 10 ** 6) for _ in range(3))
        assert decode_coords(encode_coords(v), 3) == v


def test_language_dfa_consistent():
    dfa = coords_language_dfa(3)
    rng = random.Random(6)
    for _ in range(500):
        v = tuple(rng.randint(-50, 50) for _ in range(3))
        assert dfa.accepts(encode_coords(v)), v
    # exhaustive over short token strings: accepted words round trip
    for w in words_up_to(tuple(dfa.symbols), 3):
        if dfa.accepts(w):
            v = decode_coords(w, 3)
            assert encode_coords(v) == tuple(w), w


def test_nf_matches_matrix_oracle():
    rep = heisenberg_rep()
    orc = heisenberg_oracle()
    for v in words_up_to(rep.generators.symbols, 4):
        nf, _ = normal_form(rep, v)
        assert decode_coords(nf.letters, 3) == oracle_coords(orc.evaluate(v)), v


def test_multipliers_on_big_coordinates():
    rep = heisenberg_rep()
    rng = random.Random(7)
    updates = {
        "a": lambda x, y, z: (x + 1, y, z),
        "a'": lambda x, y, z: (x - 1, y, z),
        "b": lambda x, y, z: (x, y + 1, z + x),
        "b'": lambda x, y, z: (x, y - 1, z - x),
        "c": lambda x, y, z: (x, y, z + 1),
        "c'": lambda x, y, z: (x, y, z - 1),
    }
    for _ in range(800):
        v = tuple(rng.randint(-10 ** 6, 10 ** 6) for _ in range(3))
        w = encode_coords(v)
        s = rng.choice(list(updates))
        out, _ = rep.multipliers[s].apply(w)
        assert decode_coords(out, 3) == updates[s](*v), (v, s)


def test_central_commutator():
    # [a, b] = c in the Heisenberg group
    rep = heisenberg_rep()
    assert word_problem(rep, ("a", "b", "a'", "b'", "c'"))
    nf, _ = normal_form(rep, ("a", "b", "a'", "b'"))
    assert decode_coords(nf.letters, 3) == (0, 0, 1)

import itertools
from fractions import Fraction

import pytest
from conftest import words_up_to

from cayleykit.errors import AlphabetError
from cayleykit.oracle import (
    GroupOracle,
    LamplighterElement,
    RationalMatrix,
    bfs_ball,
    britton_is_identity,
    britton_oracle,
    bs_matrix_oracle,
    dihedral_matrix_oracle,
    direct_product_oracle,
    evaluate_word,
    free_product_oracle,
    heisenberg_oracle,
    int_oracle,
    lamplighter_oracle,
    matrix_oracle,
    subgroup_oracle,
    zk_oracle,
)


def check_group_axioms(orc, radius=3):
    """multiply/invert consistency with the generator actions on a ball."""
    ball = list(bfs_ball(orc, radius, cap=100_000))
    e = orc.identity
    for g in ball[:200]:
        assert orc.multiply(g, e) == g
        assert orc.multiply(e, g) == g
        assert orc.multiply(g, orc.invert(g)) == e
    for g in ball[:40]:
        for s, fn in orc.actions.items():
            gen = orc.evaluate((s,))
            assert fn(g) == orc.multiply(g, gen), (g, s)


def test_lamplighter_oracle_axioms():
    orc = lamplighter_oracle()
    check_group_axioms(orc)
    g = orc.evaluate(("b", "a", "b", "a"))
    assert g == LamplighterElement(frozenset({0, 1}), 2)


def test_lamplighter_ball_sizes():
    orc = lamplighter_oracle()
    sizes = [len(bfs_ball(orc, r)) for r in range(5)]
    # |B(r)| for Z2 wr Z with generators a, a', b (b is an involution)
    assert sizes == [1, 4, 10, 22, 44]


def test_int_and_zk_oracles():
    orc = int_oracle()
    assert orc.evaluate(("a", "a", "a'")) == 1
    assert orc.invert(5) == -5
    z2 = zk_oracle(2)
    syms = sorted(z2.actions)
    total = z2.evaluate(syms)
    assert total == sum(z2.evaluate((s,)) for s in syms)
    assert z2.multiply(Fraction(1, 2), Fraction(3, 4)) == Fraction(5, 4)


def test_rational_matrix():
    a = RationalMatrix.from_rows([[1, 1], [0, 1]])
    b = a.inverse()
    assert a @ b == RationalMatrix.identity(2)
    assert (a @ a).entries[0][1] == 2


def test_heisenberg_oracle_relation():
    orc = heisenberg_oracle()
    check_group_axioms(orc, radius=2)
    comm = orc.evaluate(("a", "b", "a'", "b'"))
    assert comm == orc.evaluate(("c",))


def test_bs_matrix_oracle_faithful_for_p1():
    orc = bs_matrix_oracle(2)
    assert orc.evaluate(("t", "a", "t'", "a'", "a'")) == orc.identity
    assert orc.evaluate(("a",)) != orc.identity


def test_britton_oracle_agrees_with_matrix_for_bs12():
    mat = bs_matrix_oracle(2)
    brit = britton_oracle(1, 2)
    for w in words_up_to(("a", "a'", "t", "t'"), 4):
        assert (mat.evaluate(w) == mat.identity) == \
            britton_is_identity(brit.evaluate(w)), w


def test_britton_oracle_bs23_relator():
    orc = britton_oracle(2, 3)
    relator = ("t", "a", "a", "t'", "a'", "a'", "a'")
    assert britton_is_identity(orc.evaluate(relator))
    assert not britton_is_identity(orc.evaluate(("t", "a", "t'", "a'")))
    check_group_axioms(orc, radius=2)


def test_direct_product_oracle():
    f1, f2 = int_oracle(), int_oracle()
    orc = direct_product_oracle("pair", (f1, f2), {
        "a": (0, "a"), "a'": (0, "a'"), "b": (1, "a"), "b'": (1, "a'")})
    assert orc.evaluate(("a", "b", "b", "a'")) == (0, 2)
    check_group_axioms(orc)


def test_free_product_oracle_reduction():
    f1, f2 = int_oracle(), int_oracle()
    orc = free_product_oracle("free", (f1, f2), {
        "a": (0, "a"), "a'": (0, "a'"), "b": (1, "a"), "b'": (1, "a'")})
    assert orc.evaluate(("a", "b", "b'", "a'")) == ()
    g = orc.evaluate(("a", "a", "b", "a"))
    assert g == ((0, 2), (1, 1), (0, 1))
    # blocks alternate and are nontrivial
    for w in words_up_to(("a", "a'", "b", "b'"), 5):
        blocks = orc.evaluate(w)
        assert all(elem != 0 for _, elem in blocks), w
        assert all(blocks[i][0] != blocks[i + 1][0]
                   for i in range(len(blocks) - 1)), w
    check_group_axioms(orc)


def test_subgroup_oracle_binds_words():
    parent = int_oracle()
    orc = subgroup_oracle(parent, {"x": ("a", "a")})
    assert orc.evaluate(("x", "x", "x'")) == 2
    assert set(orc.actions) == {"x", "x'"}
    assert orc.name.endswith("-sub")


def test_subgroup_oracle_requires_algebra():
    bare = GroupOracle(name="bare", identity=0,
                       actions={"a": lambda g: g + 1})
    with pytest.raises(AlphabetError):
        subgroup_oracle(bare, {"x": ("a",)})


def test_dihedral_matrix_oracle():
    orc = dihedral_matrix_oracle()
    assert orc.evaluate(("k", "k")) == orc.identity
    assert orc.evaluate(("k", "a", "k", "a")) == orc.identity
    assert orc.evaluate(("a",) * 5) != orc.identity
    # k a k = a^-1
    assert orc.evaluate(("k", "a", "k")) == orc.evaluate(("a'",))


def test_evaluate_word_and_unknown_symbol():
    orc = int_oracle()
    assert evaluate_word(orc, ("a", "a")) == 2
    with pytest.raises(AlphabetError):
        orc.act(0, "z")


def test_bfs_ball_distances():
    orc = int_oracle()
    ball = bfs_ball(orc, 4)
    assert ball == {n: abs(n) for n in range(-4, 5)}

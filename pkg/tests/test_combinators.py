import json
from pathlib import Path

import pytest
from conftest import words_up_to

import cayleykit

from cayleykit.combinators import (
    FiniteExtensionTable,
    derive_extension_table,
    direct_product,
    disjoint_tagging,
    extension_oracle,
    extension_table_from_json,
    extension_table_to_json,
    finite_extension,
    free_product,
    load_extension_table,
    rename_oracle,
    rename_rep,
    save_extension_table,
    subgroup,
    validate_extension_table,
)
from cayleykit.errors import AlphabetError, DomainError, ParseError
from cayleykit.groups.lamplighter import lamplighter_rep
from cayleykit.groups.zn import zn_oracle, zn_rep
from cayleykit.oracle import (
    bfs_ball,
    dihedral_matrix_oracle,
    direct_product_oracle,
    free_product_oracle,
    lamplighter_oracle,
    subgroup_oracle,
)
from cayleykit.representation import (
    enumerate_normal_forms,
    normal_form,
    word_problem,
)

DIHEDRAL_PATH = str(Path(cayleykit.__file__).parent / "data" / "dihedral.json")


def pair_symbol_map(rep1, rep2, tags):
    out = {}
    for s in rep1.generators.symbols:
        out[s] = (0, s)
    for s in rep2.generators.symbols:
        out[tags.get(s, s)] = (1, s)
    return out


# ---------------------------------------------------------------------------
# Tagging and renaming


def test_disjoint_tagging_advances_letters():
    tags = disjoint_tagging(zn_rep(), zn_rep())
    assert tags == {"a": "b", "a'": "b'"}


def test_disjoint_tagging_skips_taken_letters():
    tags = disjoint_tagging(lamplighter_rep(), zn_rep())
    # lamplighter already uses a and b, so the fresh letter is c
    assert tags == {"a": "c", "a'": "c'"}


def test_disjoint_tagging_no_collision_is_empty():
    from cayleykit.groups.baumslag import bs_rep
    # zn uses a; bs uses a and t: a collides, t does not
    tags = disjoint_tagging(zn_rep(), bs_rep(1, 2))
    assert tags["a"] == "b" and tags["a'"] == "b'"
    assert "t" not in tags


def test_rename_rep_preserves_behavior():
    renamed = rename_rep(zn_rep(), {"a": "x", "a'": "x'"}, name="zx")
    assert renamed.name == "zx"
    assert set(renamed.generators.symbols) == {"x", "x'"}
    w, _ = normal_form(renamed, ("x", "x", "x'"))
    assert w.letters == ("x",)
    assert word_problem(renamed, ("x", "x'"))
    assert renamed.language.contains(("x", "x")) is True
    assert renamed.language.contains(("x", "x'")) is False


def test_rename_rep_rejects_non_injective():
    with pytest.raises(AlphabetError):
        rename_rep(zn_rep(), {"a": "x", "a'": "x"})


def test_rename_oracle():
    orc = rename_oracle(zn_oracle(), {"a": "x", "a'": "x'"})
    assert orc.evaluate(("x", "x", "x'")) == 1


# ---------------------------------------------------------------------------
# Direct product


def build_dp():
    rep1, rep2 = zn_rep(), zn_rep()
    tags = disjoint_tagging(rep1, rep2)
    rep = direct_product(rep1, rep2)
    orc = direct_product_oracle("pair", (zn_oracle(), zn_oracle()),
                                pair_symbol_map(rep1, rep2, tags))
    return rep, orc


def test_direct_product_matches_pair_oracle():
    rep, orc = build_dp()
    assert rep.name == "dp(zn:1,zn:1)"
    for w in words_up_to(rep.generators.symbols, 4):
        assert word_problem(rep, w) == \
            (orc.evaluate(w) == orc.identity), w


def test_direct_product_decode_and_language():
    rep, _ = build_dp()
    nf, _ = normal_form(rep, ("a", "a", "b", "a'"))
    assert rep.decode(nf.letters) == (1, 1)
    assert rep.language.class_tag == "REG"
    assert rep.language.contains(("a", "b")) is True
    assert rep.language.contains(("b", "a")) is False  # factor order fixed


def test_direct_product_ball_bijectivity():
    rep, orc = build_dp()
    for r in range(4):
        forms = list(enumerate_normal_forms(rep, r))
        assert len(forms) == len(bfs_ball(orc, r))
        assert len(set(w.letters for w in forms)) == len(forms)


# ---------------------------------------------------------------------------
# Free product


def build_fp():
    rep1, rep2 = zn_rep(), zn_rep()
    tags = disjoint_tagging(rep1, rep2)
    rep = free_product(rep1, rep2)
    orc = free_product_oracle("free", (zn_oracle(), zn_oracle()),
                              pair_symbol_map(rep1, rep2, tags))
    return rep, orc


def test_free_product_matches_reduction_oracle():
    rep, orc = build_fp()
    assert rep.name == "fp(zn:1,zn:1)"
    for w in words_up_to(rep.generators.symbols, 5):
        assert word_problem(rep, w) == (orc.evaluate(w) == ()), w


def test_free_product_cancellation_across_blocks():
    rep, _ = build_fp()
    assert word_problem(rep, ("a", "b", "b'", "a'"))
    assert not word_problem(rep, ("a", "b", "a'", "b'"))


def test_free_product_decode_blocks():
    rep, _ = build_fp()
    nf, _ = normal_form(rep, ("a", "a", "b", "a"))
    assert rep.decode(nf.letters) == ((0, 2), (1, 1), (0, 1))


def test_free_product_normal_forms_alternate():
    rep, orc = build_fp()
    for r in range(4):
        forms = list(enumerate_normal_forms(rep, r))
        assert len(forms) == len(bfs_ball(orc, r))
        for w in forms:
            blocks = rep.decode(w.letters)
            assert all(blocks[i][0] != blocks[i + 1][0]
                       for i in range(len(blocks) - 1)), w.letters
            assert all(elem != 0 for _, elem in blocks), w.letters


def test_free_product_with_nonempty_identity_word():
    # lamplighter's identity word is "# ↑ #", which exercises the
    # normalize-identity wrapper inside the free product
    rep = free_product(lamplighter_rep(), zn_rep())
    orc = free_product_oracle(
        "free", (lamplighter_oracle(), zn_oracle()),
        {"a": (0, "a"), "a'": (0, "a'"), "b": (0, "b"),
         "c": (1, "a"), "c'": (1, "a'")})
    for w in words_up_to(rep.generators.symbols, 3):
        assert word_problem(rep, w) == (orc.evaluate(w) == ()), w


# ---------------------------------------------------------------------------
# Finite extension


def dihedral_table():
    return load_extension_table(DIHEDRAL_PATH)


def test_shipped_dihedral_table_validates():
    table = dihedral_table()
    validate_extension_table(table, dihedral_matrix_oracle(), ("a", "a'"))


def test_validation_catches_wrong_rule():
    table = dihedral_table()
    broken = FiniteExtensionTable(
        coset_symbols=table.coset_symbols,
        generator_pairs=table.generator_pairs,
        rules={**table.rules, ("k", "a"): (("a",), "k")})
    with pytest.raises(DomainError) as exc:
        validate_extension_table(broken, dihedral_matrix_oracle(), ("a", "a'"))
    assert "(k, a)" in str(exc.value)


def test_validation_catches_missing_rule():
    table = dihedral_table()
    rules = dict(table.rules)
    del rules[("k", "a")]
    broken = FiniteExtensionTable(table.coset_symbols,
                                  table.generator_pairs, rules)
    with pytest.raises(DomainError) as exc:
        validate_extension_table(broken, dihedral_matrix_oracle(), ("a", "a'"))
    assert "missing rule" in str(exc.value)


def test_derive_reproduces_shipped_table():
    derived = derive_extension_table(
        zn_rep(), dihedral_matrix_oracle(), ("k",), (("k", "k"),))
    shipped = dihedral_table()
    assert derived.rules == shipped.rules
    assert derived.coset_symbols == shipped.coset_symbols


def test_finite_extension_matches_oracles():
    table = dihedral_table()
    rep = finite_extension(zn_rep(), table, oracle=dihedral_matrix_oracle())
    ext_orc = extension_oracle(zn_oracle(), table, ("a", "a'"))
    mat = dihedral_matrix_oracle()
    for w in words_up_to(rep.generators.symbols, 5):
        got = word_problem(rep, w)
        assert got == (ext_orc.evaluate(w) == ext_orc.identity), w
        assert got == (mat.evaluate(w) == mat.identity), w


def test_finite_extension_relations_and_decode():
    rep = finite_extension(zn_rep(), dihedral_table())
    assert word_problem(rep, ("k", "k"))
    assert word_problem(rep, ("k", "a", "k", "a"))
    assert not word_problem(rep, ("k",))
    nf, _ = normal_form(rep, ("a", "a", "k"))
    assert rep.decode(nf.letters) == (2, "k")
    assert rep.language.class_tag == "REG"


def test_extension_table_json_round_trip(tmp_path):
    table = dihedral_table()
    data = extension_table_to_json(table)
    again = extension_table_from_json(data)
    assert again == table
    path = tmp_path / "d.json"
    save_extension_table(table, str(path))
    assert load_extension_table(str(path)) == table
    assert json.loads(path.read_text())["cosetSymbols"] == ["k"]


def test_extension_table_json_rejects_malformed(tmp_path):
    with pytest.raises(ParseError):
        extension_table_from_json({"cosetSymbols": ["k"]})
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_extension_table(str(path))


# ---------------------------------------------------------------------------
# Subgroup


def test_subgroup_even_integers():
    rep = subgroup(zn_rep(), {"x": ("a", "a")})
    orc = subgroup_oracle(zn_oracle(), {"x": ("a", "a")})
    for w in words_up_to(("x", "x'"), 6):
        assert word_problem(rep, w) == \
            (orc.evaluate(w) == orc.identity), w
    nf, _ = normal_form(rep, ("x", "x"))
    assert nf.letters == ("a",) * 4


def test_subgroup_of_free_product():
    base = free_product(zn_rep(), zn_rep())
    rep = subgroup(base, {"x": ("a", "a"), "y": ("b", "b")})
    orc = subgroup_oracle(
        free_product_oracle("free", (zn_oracle(), zn_oracle()),
                            {"a": (0, "a"), "a'": (0, "a'"),
                             "b": (1, "a"), "b'": (1, "a'")}),
        {"x": ("a", "a"), "y": ("b", "b")})
    for w in words_up_to(rep.generators.symbols, 4):
        assert word_problem(rep, w) == \
            (orc.evaluate(w) == orc.identity), w


def test_subgroup_enumerator_and_language():
    base = free_product(zn_rep(), zn_rep())
    rep = subgroup(base, {"x": ("a", "a"), "y": ("b", "b")})
    assert rep.language.class_tag == "RE"
    forms = {w.letters for w in enumerate_normal_forms(rep, 1)}
    assert forms == {(), ("a", "a"), ("a'", "a'"), ("b", "b"), ("b'", "b'")}
    # identity is emitted first by the reachability enumerator
    first = next(iter(rep.language.enumerator(10)))
    assert tuple(first) == ()


def test_subgroup_quasigeodesic_only_with_distortion():
    plain = subgroup(zn_rep(), {"x": ("a", "a")})
    assert plain.quasigeodesic_c is None
    scaled = subgroup(zn_rep(), {"x": ("a", "a")}, distortion=2.0)
    assert scaled.quasigeodesic_c == pytest.approx(2.0)

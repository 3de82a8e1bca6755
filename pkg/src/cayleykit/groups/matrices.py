"""Finitely generated subgroups of GL(n, Q) as digit-track words.

All generator entries (including the inverses') lie in Z[1/k] for the
least k, the radical of the denominator lcm; k = 1 for integer matrices.
An element C is the n^2-track convolution of the base-max(k,2) digit
encodings of its entries, row major.  Right multiplication by a fixed
generator M computes each output entry

    d_ij = c_i1 m_1j + ... + c_in m_nj

with multiplications by the fixed constants m_lj and additions, all as
single passes over the digit tracks, so one application is linear in the
encoding length.  Membership in the image language is only semidecidable
(RE tag): a matrix word is valid iff it is reachable from the identity,
and the language enumerator walks exactly that orbit.
"""

import json
import os
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from ..errors import ParseError
from ..pftm import TimeBudget
from ..representation import (PF_LINEAR, RE, CayleyRep, GeneratorSet,
                              LanguageSpec, native_multiplier)
from ..words import TrackAlphabet, multi_convolve, multi_deconvolve
from .zk import decode_zk, encode_zk, zk_add, zk_alphabet, zk_mul

Rows = Tuple[Tuple[Fraction, ...], ...]


def _as_rows(entries) -> Rows:
    rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("generator matrices must be square and nonempty")
    return rows


def _identity_rows(n: int) -> Rows:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def _matmul(a: Rows, b: Rows) -> Rows:
    n = len(a)
    return tuple(
        tuple(sum((a[i][l] * b[l][j] for l in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def _inverse_rows(m: Rows) -> Rows:
    n = len(m)
    aug = [list(m[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular generator matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _radical(n: int) -> int:
    out, d, n = 1, 2, abs(n)
    while d * d <= n:
        if n % d == 0:
            out *= d
            while n % d == 0:
                n //= d
        d += 1
    return out * (n if n > 1 else 1)


def least_k(matrices: Iterable[Rows]) -> int:
    """Smallest k with every entry in Z[1/k]: the radical of the lcm of
    the denominators (1 when all entries are integers)."""
    k = 1
    for rows in matrices:
        for row in rows:
            for x in row:
                r = _radical(x.denominator)
                for p in range(2, r + 1):
                    if r % p == 0 and k % p != 0:
                        k *= p
    return k


def encode_matrix(base: int, rows: Rows) -> Tuple[str, ...]:
    return multi_convolve(tuple(encode_zk(base, x) for row in rows for x in row))


def decode_matrix(base: int, n: int, letters) -> Rows:
    tracks = multi_deconvolve(tuple(letters), n * n)
    vals = [decode_zk(base, t) for t in tracks]
    return tuple(tuple(vals[i * n + j] for j in range(n)) for i in range(n))


def matrix_rep(name: str, generators: Dict[str, Rows],
               pairs: Sequence[Tuple[str, str]]) -> CayleyRep:
    """generators must contain every symbol in pairs (inverses included)."""
    mats = {sym: _as_rows(rows) for sym, rows in generators.items()}
    gens = GeneratorSet(tuple(pairs))
    n = len(next(iter(mats.values())))
    for sym in gens.symbols:
        if sym not in mats:
            raise ValueError(f"missing matrix for generator {sym!r}")
        if len(mats[sym]) != n:
            raise ValueError("all generators must share one dimension")
    for sym, inv in gens.pairs:
        if _matmul(mats[sym], mats[inv]) != _identity_rows(n):
            raise ValueError(f"{inv!r} is not the inverse of {sym!r}")

    k = least_k(mats.values())
    base = max(k, 2)
    identity_word = encode_matrix(base, _identity_rows(n))

    def mult(symbol):
        m = mats[symbol]

        def fn(letters):
            tracks = multi_deconvolve(tuple(letters), n * n)
            out_tracks: List[Tuple[str, ...]] = []
            for i in range(n):
                for j in range(n):
                    acc = encode_zk(base, Fraction(0))
                    for l in range(n):
                        if m[l][j] == 0:
                            continue
                        term = zk_mul(base, tracks[i * n + l], m[l][j])
                        acc = zk_add(base, acc, term)
                    out_tracks.append(acc)
            out = multi_convolve(tuple(out_tracks))
            return out, len(tuple(letters)) + len(out) + n * n
        return fn

    def enumerate_reachable(budget: int) -> Iterable[Tuple[str, ...]]:
        seen = {identity_word}
        yield identity_word
        frontier = [identity_word]
        count = 1
        while frontier and count < budget:
            nxt = []
            for w in frontier:
                for s in gens.symbols:
                    out, _ = multipliers[s].apply(w)
                    if out not in seen:
                        seen.add(out)
                        nxt.append(out)
                        yield out
                        count += 1
                        if count >= budget:
                            return
            frontier = nxt

    budget = TimeBudget.pf_linear(4 * n * n * (base + 2), 4 * n * n * (base + 2))
    multipliers = {s: native_multiplier(s, mult(s), budget) for s in gens.symbols}
    return CayleyRep(
        name=name,
        alphabet=TrackAlphabet((), zk_alphabet(base).symbols, n * n),
        language=LanguageSpec(RE, enumerator=enumerate_reachable),
        identity_word=identity_word,
        generators=gens,
        multipliers=multipliers,
        time_class=PF_LINEAR,
        constants={"k": k, "base": base, "n": n},
        decode=lambda letters, base=base, n=n: decode_matrix(base, n, letters),
    )


def parse_matrix_file(path: str) -> Tuple[str, Dict[str, Rows], Tuple[Tuple[str, str], ...]]:
    """JSON shape: {n, generators: [{name, entries: [["p/q", ...], ...],
    inverseName?}]}; missing inverses are computed and named."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read matrix file {path}: {exc}")
    if not isinstance(data, dict):
        raise ParseError("matrix file must be a JSON object")
    n = data.get("n")
    gens = data.get("generators")
    if not isinstance(n, int) or not isinstance(gens, list) or not gens:
        raise ParseError("matrix file needs integer n and a generator list", 0)
    mats: Dict[str, Rows] = {}
    pairs: List[Tuple[str, str]] = []
    for item in gens:
        if not isinstance(item, dict) or "name" not in item or "entries" not in item:
            raise ParseError("each generator needs a name and an entries grid", 0)
        name = item["name"]
        try:
            rows = _as_rows(item["entries"])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"generator {name!r}: bad entries ({exc})", 0)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ParseError(f"generator {name!r} is not {n}x{n}", 0)
        mats[name] = rows
    for item in gens:
        name = item["name"]
        inv_name = item.get("inverseName", name + "'")
        if any(name in p for p in pairs):
            continue
        if inv_name in mats:
            pairs.append((name, inv_name))
        elif _matmul(mats[name], mats[name]) == _identity_rows(n):
            pairs.append((name, name))
        else:
            mats[inv_name] = _inverse_rows(mats[name])
            pairs.append((name, inv_name))
    label = os.path.splitext(os.path.basename(path))[0]
    return label, mats, tuple(pairs)


def load_matrix_file(path: str) -> CayleyRep:
    label, mats, pairs = parse_matrix_file(path)
    return matrix_rep(f"matrix:{label}", mats, pairs)

"""Finite automata and synchronous two-tape transducers.

A SyncTransducer reads the convolution u ⊗ v cell by cell and accepts when
the pair belongs to the relation it recognizes.  The transducers used as
group multipliers may be nondeterministic, but they must be functional on
their domain: for each input word there is at most one output word.  That
requirement is enforced at build time by a square construction (the product
of the machine with itself on a shared input track, searching for a pair of
runs with divergent outputs).

DFAs here are plain partial-map machines over any hashable symbols, which
lets the same code handle base alphabets and convolution cell alphabets.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import AlphabetError, DomainError, FunctionalityError
from .words import PAD, Alphabet, Word

# ---------------------------------------------------------------------------
# DFA / NFA


class Dfa:
    """Deterministic finite automaton with a partial transition map."""

    def __init__(self, symbols, states, start, accepting, transitions):
        self.symbols = tuple(symbols)
        self.states = frozenset(states)
        self.start = start
        self.accepting = frozenset(accepting)
        self.transitions = dict(transitions)
        if self.start not in self.states:
            raise ValueError("start state missing from state set")
        if not self.accepting.issubset(self.states):
            raise ValueError("accepting states must be a subset of the state set")
        for (src, sym), dst in self.transitions.items():
            if src not in self.states or dst not in self.states:
                raise ValueError(f"transition ({src!r},{sym!r}) references unknown state")

    def step(self, state, symbol):
        return self.transitions.get((state, symbol))

    def accepts(self, letters) -> bool:
        state = self.start
        for sym in letters:
            state = self.transitions.get((state, sym))
            if state is None:
                return False
        return state in self.accepting

    # -- language operations ------------------------------------------------

    def to_nfa(self) -> "Nfa":
        trans: Dict[Tuple[object, object], set] = {}
        for (src, sym), dst in self.transitions.items():
            trans.setdefault((src, sym), set()).add(dst)
        return Nfa(self.symbols, self.states, {self.start}, self.accepting, trans, {})

    def union(self, other: "Dfa") -> "Dfa":
        return nfa_union(self.to_nfa(), other.to_nfa()).determinize().minimize()

    def concat(self, other: "Dfa") -> "Dfa":
        return nfa_concat(self.to_nfa(), other.to_nfa()).determinize().minimize()

    def star(self) -> "Dfa":
        return nfa_star(self.to_nfa()).determinize().minimize()

    def intersect(self, other: "Dfa") -> "Dfa":
        symbols = tuple(s for s in self.symbols if s in set(other.symbols))
        start = (self.start, other.start)
        states = {start}
        trans = {}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for sym in symbols:
                a = self.transitions.get((p[0], sym))
                b = other.transitions.get((p[1], sym))
                if a is None or b is None:
                    continue
                q = (a, b)
                trans[(p, sym)] = q
                if q not in states:
                    states.add(q)
                    queue.append(q)
        accepting = {p for p in states if p[0] in self.accepting and p[1] in other.accepting}
        return Dfa(symbols, states, start, accepting, trans).minimize()

    def minimize(self) -> "Dfa":
        """Moore partition refinement; returns a trimmed canonical machine."""
        sink = object()
        states = set(self.states) | {sink}
        total = {}
        for s in states:
            for sym in self.symbols:
                total[(s, sym)] = self.transitions.get((s, sym), sink) if s is not sink else sink

        # initial partition: accepting vs not
        block = {s: (s in self.accepting) for s in states}
        while True:
            signature = {
                s: (block[s], tuple(block[total[(s, sym)]] for sym in self.symbols))
                for s in states
            }
            renumber = {}
            for s in states:
                renumber.setdefault(signature[s], len(renumber))
            new_block = {s: renumber[signature[s]] for s in states}
            if len(set(new_block.values())) == len(set(block.values())):
                block = new_block
                break
            block = new_block

        start = block[self.start]
        trans = {}
        accepting = set()
        for s in states:
            if s is sink:
                continue
            if s in self.accepting:
                accepting.add(block[s])
            for sym in self.symbols:
                dst = total[(s, sym)]
                if dst is not sink:
                    trans[(block[s], sym)] = block[dst]
        dfa = Dfa(self.symbols, set(block.values()), start, accepting, trans)
        return dfa._trim()._canonical()

    def _trim(self) -> "Dfa":
        reach = {self.start}
        queue = deque([self.start])
        while queue:
            s = queue.popleft()
            for sym in self.symbols:
                t = self.transitions.get((s, sym))
                if t is not None and t not in reach:
                    reach.add(t)
                    queue.append(t)
        back: Dict[object, set] = {s: set() for s in reach}
        for (src, sym), dst in self.transitions.items():
            if src in reach and dst in reach:
                back[dst].add(src)
        live = set(self.accepting & reach)
        queue = deque(live)
        while queue:
            s = queue.popleft()
            for p in back.get(s, ()):
                if p not in live:
                    live.add(p)
                    queue.append(p)
        if self.start not in live:
            # empty language: single non-accepting start
            return Dfa(self.symbols, {0}, 0, set(), {})
        trans = {
            key: dst
            for key, dst in self.transitions.items()
            if key[0] in live and dst in live
        }
        return Dfa(self.symbols, live, self.start, self.accepting & live, trans)

    def _canonical(self) -> "Dfa":
        """Renumber states 0..n-1 by BFS over symbols in sorted order."""
        order = {self.start: 0}
        queue = deque([self.start])
        syms = sorted(self.symbols, key=repr)
        while queue:
            s = queue.popleft()
            for sym in syms:
                t = self.transitions.get((s, sym))
                if t is not None and t not in order:
                    order[t] = len(order)
                    queue.append(t)
        trans = {
            (order[src], sym): order[dst]
            for (src, sym), dst in self.transitions.items()
            if src in order and dst in order
        }
        accepting = {order[s] for s in self.accepting if s in order}
        return Dfa(self.symbols, set(order.values()), 0, accepting, trans)

    def same_language_shape(self, other: "Dfa") -> bool:
        """Isomorphism of canonical forms (use after minimize())."""
        a, b = self._canonical(), other._canonical()
        return (
            sorted(a.symbols, key=repr) == sorted(b.symbols, key=repr)
            and a.states == b.states
            and a.start == b.start
            and a.accepting == b.accepting
            and a.transitions == b.transitions
        )

    def enumerate_words(self, max_len: int) -> Iterable[Tuple]:
        """All accepted words of length <= max_len, shortest first.

        Dead branches are pruned with a distance-to-accept table, so sparse
        languages over large alphabets enumerate quickly.
        """
        dist = self._distance_to_accept()
        if dist.get(self.start) is None:
            return
        queue = deque([(self.start, ())])
        while queue:
            state, prefix = queue.popleft()
            if state in self.accepting:
                yield prefix
            if len(prefix) == max_len:
                continue
            remaining = max_len - len(prefix) - 1
            for sym in self.symbols:
                t = self.transitions.get((state, sym))
                if t is not None and dist.get(t, max_len + 1) <= remaining:
                    queue.append((t, prefix + (sym,)))

    def _distance_to_accept(self) -> Dict[object, int]:
        back: Dict[object, set] = {}
        for (src, sym), dst in self.transitions.items():
            back.setdefault(dst, set()).add(src)
        dist = {s: 0 for s in self.accepting}
        queue = deque(self.accepting)
        while queue:
            s = queue.popleft()
            for p in back.get(s, ()):
                if p not in dist:
                    dist[p] = dist[s] + 1
                    queue.append(p)
        return dist


class Nfa:
    """Nondeterministic automaton with epsilon moves, used to build DFAs."""

    def __init__(self, symbols, states, starts, accepting, transitions, epsilon):
        self.symbols = tuple(symbols)
        self.states = frozenset(states)
        self.starts = frozenset(starts)
        self.accepting = frozenset(accepting)
        self.transitions = {key: frozenset(val) for key, val in transitions.items()}
        self.epsilon = {key: frozenset(val) for key, val in epsilon.items()}

    def _closure(self, states) -> frozenset:
        seen = set(states)
        queue = deque(states)
        while queue:
            s = queue.popleft()
            for t in self.epsilon.get(s, ()):
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return frozenset(seen)

    def determinize(self) -> Dfa:
        start = self._closure(self.starts)
        subsets = {start}
        trans = {}
        queue = deque([start])
        while queue:
            sub = queue.popleft()
            for sym in self.symbols:
                nxt = set()
                for s in sub:
                    nxt.update(self.transitions.get((s, sym), ()))
                if not nxt:
                    continue
                nxt = self._closure(nxt)
                trans[(sub, sym)] = nxt
                if nxt not in subsets:
                    subsets.add(nxt)
                    queue.append(nxt)
        accepting = {sub for sub in subsets if sub & self.accepting}
        return Dfa(self.symbols, subsets, start, accepting, trans)


def _merge_symbols(a, b):
    out = list(a)
    for sym in b:
        if sym not in out:
            out.append(sym)
    return tuple(out)


def _tagged(nfa: Nfa, tag):
    rename = {s: (tag, s) for s in nfa.states}
    return Nfa(
        nfa.symbols,
        rename.values(),
        {rename[s] for s in nfa.starts},
        {rename[s] for s in nfa.accepting},
        {(rename[s], sym): {rename[t] for t in dsts} for (s, sym), dsts in nfa.transitions.items()},
        {rename[s]: {rename[t] for t in dsts} for s, dsts in nfa.epsilon.items()},
    )


def nfa_union(a: Nfa, b: Nfa) -> Nfa:
    a, b = _tagged(a, 0), _tagged(b, 1)
    return Nfa(
        _merge_symbols(a.symbols, b.symbols),
        a.states | b.states,
        a.starts | b.starts,
        a.accepting | b.accepting,
        {**a.transitions, **b.transitions},
        {**a.epsilon, **b.epsilon},
    )


def nfa_concat(a: Nfa, b: Nfa) -> Nfa:
    a, b = _tagged(a, 0), _tagged(b, 1)
    eps = {**a.epsilon, **b.epsilon}
    for s in a.accepting:
        eps[s] = eps.get(s, frozenset()) | b.starts
    return Nfa(
        _merge_symbols(a.symbols, b.symbols),
        a.states | b.states,
        a.starts,
        b.accepting,
        {**a.transitions, **b.transitions},
        eps,
    )


def nfa_star(a: Nfa) -> Nfa:
    a = _tagged(a, 0)
    new_start = ("star", 0)
    eps = dict(a.epsilon)
    eps[new_start] = a.starts
    for s in a.accepting:
        eps[s] = eps.get(s, frozenset()) | {new_start}
    return Nfa(
        a.symbols,
        a.states | {new_start},
        {new_start},
        a.accepting | {new_start},
        a.transitions,
        eps,
    )


# ---------------------------------------------------------------------------
# Synchronous transducers


_DONE = object()


@dataclass(frozen=True)
class SyncTransducer:
    """Two-tape synchronous automaton over the convolution alphabet.

    transitions is a frozenset of (state, (x, y), state) triples where x and
    y range over the base alphabet plus PAD, never both PAD at once.
    Instances should be built through make_transducer, which trims useless
    states and runs the padding and functionality checks.
    """

    alphabet: Alphabet
    states: FrozenSet
    start: object
    accepting: FrozenSet
    transitions: FrozenSet
    name: str = ""

    @property
    def state_count(self) -> int:
        return len(self.states)

    def _index(self):
        idx: Dict[object, Dict[object, List[Tuple[object, object]]]] = {}
        for src, (x, y), dst in self.transitions:
            idx.setdefault(src, {}).setdefault(x, []).append((y, dst))
        return idx

    def accepts_cells(self, cells) -> bool:
        current = {self.start}
        idx = self._index()
        for (x, y) in cells:
            nxt = set()
            for s in current:
                for (yy, t) in idx.get(s, {}).get(x, ()):
                    if yy == y:
                        nxt.add(t)
            if not nxt:
                return False
            current = nxt
        return bool(current & self.accepting)

    def swapped(self, name: str = "") -> "SyncTransducer":
        """The converse relation: every cell (x, y) becomes (y, x)."""
        trans = frozenset((src, (y, x), dst) for src, (x, y), dst in self.transitions)
        return make_transducer(
            self.alphabet, self.states, self.start, self.accepting, trans,
            name=name or (self.name + "~"),
        )


def make_transducer(alphabet, states, start, accepting, transitions, name="",
                    check_functional: bool = True) -> SyncTransducer:
    """Validate, trim, and freeze a synchronous transducer.

    Raises FunctionalityError if two runs on a shared input can produce
    different outputs, and AlphabetError for malformed cell labels or
    non-monotone padding.  check_functional=False defers the functionality
    test, for raw machines whose domain is about to be narrowed by
    restrict_input (the restricted build re-checks).
    """
    allowed = set(alphabet.symbols) | {PAD}
    for src, (x, y), dst in transitions:
        if x == PAD and y == PAD:
            raise AlphabetError("cell (PAD, PAD) is not a convolution cell")
        if x not in allowed or y not in allowed:
            raise AlphabetError(f"cell ({x!r},{y!r}) uses symbols outside the alphabet")

    t = SyncTransducer(alphabet, frozenset(states), start, frozenset(accepting),
                       frozenset(transitions), name)
    t = _trim_transducer(t)
    _check_padding_monotone(t)
    if check_functional:
        _check_functional(t)
    return t


def _trim_transducer(t: SyncTransducer) -> SyncTransducer:
    forward: Dict[object, set] = {}
    backward: Dict[object, set] = {}
    for src, _, dst in t.transitions:
        forward.setdefault(src, set()).add(dst)
        backward.setdefault(dst, set()).add(src)
    reach = {t.start}
    queue = deque([t.start])
    while queue:
        s = queue.popleft()
        for nxt in forward.get(s, ()):
            if nxt not in reach:
                reach.add(nxt)
                queue.append(nxt)
    live = set(t.accepting & reach)
    queue = deque(live)
    while queue:
        s = queue.popleft()
        for prev in backward.get(s, ()):
            if prev in reach and prev not in live:
                live.add(prev)
                queue.append(prev)
    live.add(t.start)
    trans = frozenset(tr for tr in t.transitions if tr[0] in live and tr[2] in live)
    return SyncTransducer(t.alphabet, frozenset(live), t.start, frozenset(t.accepting & live),
                          trans, t.name)


def _check_padding_monotone(t: SyncTransducer):
    """Once a track pads it must stay padded on every surviving run."""
    seen = {(t.start, False, False)}
    queue = deque(seen)
    idx = t._index()
    while queue:
        s, p1, p2 = queue.popleft()
        for x, pairs in idx.get(s, {}).items():
            for (y, dst) in pairs:
                if (p1 and x != PAD) or (p2 and y != PAD):
                    raise AlphabetError(
                        f"transducer {t.name or '?'}: non-monotone padding at "
                        f"state {s!r} on cell ({x!r},{y!r})"
                    )
                cfg = (dst, p1 or x == PAD, p2 or y == PAD)
                if cfg not in seen:
                    seen.add(cfg)
                    queue.append(cfg)


def _check_functional(t: SyncTransducer):
    """Square construction: search for two runs with the same input word but
    divergent outputs.  _DONE marks a run whose word has ended."""
    idx = t._index()
    start = (t.start, t.start, False)
    seen = {start}
    parent = {start: None}
    queue = deque([start])

    def moves(cfg):
        s1, s2, div = cfg
        if s1 is not _DONE and s1 in t.accepting:
            yield (_DONE, s2, div), None
        if s2 is not _DONE and s2 in t.accepting:
            yield (s1, _DONE, div), None
        if s1 is _DONE and s2 is _DONE:
            return
        if s1 is _DONE:
            for (y2, d2) in idx.get(s2, {}).get(PAD, ()):
                yield (_DONE, d2, True), (PAD, PAD, y2)
            return
        if s2 is _DONE:
            for (y1, d1) in idx.get(s1, {}).get(PAD, ()):
                yield (d1, _DONE, True), (PAD, y1, PAD)
            return
        for x, pairs1 in idx.get(s1, {}).items():
            pairs2 = idx.get(s2, {}).get(x, ())
            for (y1, d1) in pairs1:
                for (y2, d2) in pairs2:
                    yield (d1, d2, div or y1 != y2), (x, y1, y2)

    while queue:
        cfg = queue.popleft()
        if cfg[0] is _DONE and cfg[1] is _DONE and cfg[2]:
            cells = []
            cur = cfg
            while parent[cur] is not None:
                prev, label = parent[cur]
                if label is not None:
                    cells.append(label)
                cur = prev
            cells.reverse()
            u = tuple(x for (x, _, _) in cells if x != PAD)
            v1 = tuple(y for (_, y, _) in cells if y != PAD)
            v2 = tuple(y for (_, _, y) in cells if y != PAD)
            raise FunctionalityError(
                f"transducer {t.name or '?'} is not functional: input {u!r} "
                f"admits outputs {v1!r} and {v2!r}",
                witness=(u, v1, v2),
            )
        for nxt, label in moves(cfg):
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = (cfg, label)
                queue.append(nxt)


def restrict_input(t: SyncTransducer, language: Dfa, name: str = "") -> SyncTransducer:
    """Product with a DFA on the input track: keeps exactly the pairs (u, v)
    with u in the language.  Useful to pin a multiplier's domain to the
    normal-form language, which also makes injective relations safely
    swappable."""
    start = (t.start, language.start)
    idx = t._index()
    seen = {start}
    queue = deque([start])
    trans = set()
    while queue:
        s, d = queue.popleft()
        for x, pairs in idx.get(s, {}).items():
            if x == PAD:
                d2 = d
            else:
                d2 = language.transitions.get((d, x))
                if d2 is None:
                    continue
            for (y, s2) in pairs:
                dst = (s2, d2)
                trans.add(((s, d), (x, y), dst))
                if dst not in seen:
                    seen.add(dst)
                    queue.append(dst)
    accepting = {(s, d) for (s, d) in seen
                 if s in t.accepting and d in language.accepting}
    return make_transducer(t.alphabet, seen, start, accepting, trans,
                           name=name or (t.name + "|L"))


def restrict_output(t: SyncTransducer, language: Dfa, name: str = "",
                    check_functional: bool = True) -> SyncTransducer:
    """Product with a DFA on the output track: keeps the pairs (u, v) with
    v in the language.  Prunes nondeterministic runs that would emit
    structurally invalid words."""
    start = (t.start, language.start)
    idx = t._index()
    seen = {start}
    queue = deque([start])
    trans = set()
    while queue:
        s, d = queue.popleft()
        for x, pairs in idx.get(s, {}).items():
            for (y, s2) in pairs:
                if y == PAD:
                    d2 = d
                else:
                    d2 = language.transitions.get((d, y))
                    if d2 is None:
                        continue
                dst = (s2, d2)
                trans.add(((s, d), (x, y), dst))
                if dst not in seen:
                    seen.add(dst)
                    queue.append(dst)
    accepting = {(s, d) for (s, d) in seen
                 if s in t.accepting and d in language.accepting}
    return make_transducer(t.alphabet, seen, start, accepting, trans,
                           name=name or (t.name + "|outL"),
                           check_functional=check_functional)


def evaluate_letters(t: SyncTransducer, letters: Tuple[str, ...]) -> Tuple[Tuple[str, ...], int]:
    """Run the transducer as a function; returns (output letters, steps).

    Steps are counted as |u ⊗ v| synchronous cells.  The output length is
    capped at |u| + state count, which the pumping bound guarantees is
    enough for any accepted pair.
    """
    cache = getattr(t, "_eval_index", None)
    if cache is None:
        cache = t._index()
        object.__setattr__(t, "_eval_index", cache)
    idx = cache

    if not letters and t.start in t.accepting:
        return (), 0

    layers = [{t.start: None}]
    max_cells = len(letters) + t.state_count
    for i in range(max_cells):
        x = letters[i] if i < len(letters) else PAD
        nxt: Dict[object, Tuple[object, object]] = {}
        for s in layers[-1]:
            for (y, dst) in idx.get(s, {}).get(x, ()):
                if dst not in nxt:
                    nxt[dst] = (s, y)
        if not nxt:
            break
        layers.append(nxt)
        if i + 1 >= len(letters):
            hits = [s for s in nxt if s in t.accepting]
            if hits:
                outs = set()
                for hit in hits:
                    out = []
                    state = hit
                    for layer in range(len(layers) - 1, 0, -1):
                        state, y = layers[layer][state]
                        out.append(y)
                    out.reverse()
                    outs.add(tuple(y for y in out if y != PAD))
                if len(outs) > 1:
                    raise FunctionalityError(
                        f"transducer {t.name or '?'}: two outputs at runtime",
                        witness=(letters,) + tuple(sorted(outs)),
                    )
                return outs.pop(), i + 1
    raise DomainError(f"input {letters!r} is outside the domain of transducer {t.name or '?'}")


def evaluate(t: SyncTransducer, u: Word) -> Word:
    if u.alphabet != t.alphabet:
        raise AlphabetError("word alphabet does not match transducer alphabet")
    out, _ = evaluate_letters(t, u.letters)
    return Word(t.alphabet, out)


def bounded_difference_constant(t: SyncTransducer) -> int:
    """Pumping bound: for every accepted (u, v), ||u| - |v|| <= state count."""
    return t.state_count


def relation_automaton(t: SyncTransducer, language: Dfa) -> Dfa:
    """DFA over convolution cells accepting {u ⊗ v : u in L, (u, v) in T}.

    Built as the product of L lifted to the input track with T, then
    determinized and minimized.
    """
    for sym in language.symbols:
        if sym not in t.alphabet:
            raise AlphabetError("language alphabet does not match transducer tracks")
    cell_symbols = [
        (x, y)
        for x in tuple(t.alphabet.symbols) + (PAD,)
        for y in tuple(t.alphabet.symbols) + (PAD,)
        if not (x == PAD and y == PAD)
    ]
    start = (language.start, t.start)
    states = {start}
    trans: Dict[Tuple[object, object], set] = {}
    queue = deque([start])
    idx = t._index()
    while queue:
        l, s = queue.popleft()
        for x, pairs in idx.get(s, {}).items():
            if x == PAD:
                nls = [l]
            else:
                nl = language.transitions.get((l, x))
                if nl is None:
                    continue
                nls = [nl]
            for (y, dst) in pairs:
                for nl in nls:
                    key = ((l, s), (x, y))
                    trans.setdefault(key, set()).add((nl, dst))
                    if (nl, dst) not in states:
                        states.add((nl, dst))
                        queue.append((nl, dst))
    accepting = {(l, s) for (l, s) in states if l in language.accepting and s in t.accepting}
    nfa = Nfa(cell_symbols, states, {start}, accepting, trans, {})
    return nfa.determinize().minimize()


# ---------------------------------------------------------------------------
# Small built-in machines


def identity_transducer(alphabet: Alphabet) -> SyncTransducer:
    trans = {(0, (x, x), 0) for x in alphabet.symbols}
    return make_transducer(alphabet, {0}, 0, {0}, trans, name="identity")


def append_symbol_transducer(alphabet: Alphabet, symbol: str) -> SyncTransducer:
    """Recognizes {(w, w + symbol)}; two states."""
    trans = {(0, (x, x), 0) for x in alphabet.symbols}
    trans.add((0, (PAD, symbol), 1))
    return make_transducer(alphabet, {0, 1}, 0, {1}, trans, name=f"append-{symbol}")


# ---------------------------------------------------------------------------
# JSON interchange


def transducer_to_json(t: SyncTransducer) -> dict:
    states = sorted(t.states, key=repr)
    return {
        "alphabet": list(t.alphabet.symbols),
        "states": [repr(s) for s in states],
        "start": repr(t.start),
        "accepting": sorted(repr(s) for s in t.accepting),
        "transitions": [
            {"from": repr(src), "in": x, "out": y, "to": repr(dst)}
            for src, (x, y), dst in sorted(t.transitions, key=repr)
        ],
    }


def transducer_from_json(data: dict) -> SyncTransducer:
    alpha = Alphabet(tuple(data["alphabet"]))
    trans = {
        (item["from"], (item["in"], item["out"]), item["to"])
        for item in data["transitions"]
    }
    return make_transducer(
        alpha, set(data["states"]), data["start"], set(data["accepting"]), trans,
        name=data.get("name", ""),
    )


def dfa_to_json(dfa: Dfa) -> dict:
    def enc(sym):
        if isinstance(sym, tuple):
            return {"in": sym[0], "out": sym[1]}
        return {"in": sym}

    return {
        "states": [repr(s) for s in sorted(dfa.states, key=repr)],
        "start": repr(dfa.start),
        "accepting": sorted(repr(s) for s in dfa.accepting),
        "transitions": [
            {"from": repr(src), **enc(sym), "to": repr(dst)}
            for (src, sym), dst in sorted(dfa.transitions.items(), key=repr)
        ],
    }


def dfa_from_json(data: dict) -> Dfa:
    trans = {}
    symbols = []
    for item in data["transitions"]:
        sym = (item["in"], item["out"]) if "out" in item else item["in"]
        if sym not in symbols:
            symbols.append(sym)
        trans[(item["from"], sym)] = item["to"]
    return Dfa(symbols, set(data["states"]), data["start"], set(data["accepting"]), trans)

"""DFAO engine and regular-language algebra.

A Dfao reads words over a single-character alphabet.  Direction "lsd" means
the word is consumed right-to-left (least significant digit first), which is
the convention for digit automata here; "msd" reads left-to-right.  The
accepted language of an acceptor (outputs 0/1) is always the set of words as
written, whatever the reading direction.
"""

from __future__ import annotations

import json
from collections import deque
from itertools import product as iter_product

from .digits import RADIX, digit_alphabet, word_from_json, word_to_json

STATE_CAP = 10 ** 6


class AutomatonError(ValueError):
    pass


class StateCapError(AutomatonError):
    pass


class Dfao:
    __slots__ = ("alphabet", "transitions", "initial", "outputs", "direction", "_sym")

    def __init__(self, alphabet, transitions, initial, outputs, direction="lsd"):
        if direction not in ("lsd", "msd"):
            raise AutomatonError(f"direction must be 'lsd' or 'msd', got {direction!r}")
        self.alphabet = "".join(alphabet)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise AutomatonError("duplicate symbols in alphabet")
        self.transitions = tuple(tuple(row) for row in transitions)
        self.initial = initial
        self.outputs = tuple(outputs)
        self.direction = direction
        n = len(self.transitions)
        if len(self.outputs) != n:
            raise AutomatonError("outputs must cover every state")
        if not 0 <= initial < n:
            raise AutomatonError("initial state out of range")
        for row in self.transitions:
            if len(row) != len(self.alphabet):
                raise AutomatonError("transition table must be total")
            for t in row:
                if not 0 <= t < n:
                    raise AutomatonError("transition target out of range")
        self._sym = {ch: i for i, ch in enumerate(self.alphabet)}

    # -- basics --

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def __repr__(self):
        return (
            f"Dfao(states={self.n_states}, alphabet={self.alphabet!r}, "
            f"direction={self.direction!r})"
        )

    def sym_index(self, ch: str) -> int:
        try:
            return self._sym[ch]
        except KeyError:
            raise AutomatonError(f"symbol {ch!r} not in alphabet {self.alphabet!r}") from None

    def step(self, state: int, ch: str) -> int:
        return self.transitions[state][self.sym_index(ch)]

    def final_state(self, word: str) -> int:
        seq = reversed(word) if self.direction == "lsd" else word
        q = self.initial
        for ch in seq:
            q = self.transitions[q][self.sym_index(ch)]
        return q

    def run(self, word: str):
        return self.outputs[self.final_state(word)]

    def accepts(self, word: str) -> bool:
        return bool(self.run(word))

    def is_acceptor(self) -> bool:
        return all(o in (0, 1) for o in self.outputs)

    # -- rebuilding helpers --

    def with_outputs(self, outputs):
        return Dfao(self.alphabet, self.transitions, self.initial, outputs, self.direction)

    def map_outputs(self, f):
        return self.with_outputs([f(o) for o in self.outputs])

    # -- reachability --

    def accessible(self):
        seen = {self.initial}
        todo = deque([self.initial])
        while todo:
            q = todo.popleft()
            for t in self.transitions[q]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen

    def coaccessible(self, accepting=None):
        if accepting is None:
            accepting = {q for q, o in enumerate(self.outputs) if o}
        rev = [[] for _ in range(self.n_states)]
        for q, row in enumerate(self.transitions):
            for t in row:
                rev[t].append(q)
        seen = set(accepting)
        todo = deque(accepting)
        while todo:
            q = todo.popleft()
            for s in rev[q]:
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
        return seen

    def live_states(self):
        """States on some path initial -> accepting (acceptor semantics)."""
        return self.accessible() & self.coaccessible()

    def trim(self):
        """Redirect dead states into a single non-accepting sink; stays total."""
        live = self.live_states()
        if not live:
            return Dfao(self.alphabet, [[0] * len(self.alphabet)], 0, [0], self.direction)
        order = sorted(live)
        idx = {q: i for i, q in enumerate(order)}
        sink = len(order)
        rows = []
        for q in order:
            rows.append([idx.get(t, sink) for t in self.transitions[q]])
        rows.append([sink] * len(self.alphabet))
        outputs = [self.outputs[q] for q in order] + [0]
        init = idx.get(self.initial, sink)
        return Dfao(self.alphabet, rows, init, outputs, self.direction)

    # -- product constructions --

    def product(self, other: "Dfao", combine):
        if self.alphabet != other.alphabet:
            raise AutomatonError(
                f"alphabet mismatch: {self.alphabet!r} vs {other.alphabet!r}"
            )
        if self.direction != other.direction:
            raise AutomatonError("reading-direction mismatch in product")
        start = (self.initial, other.initial)
        index = {start: 0}
        rows, outputs = [], []
        todo = deque([start])
        while todo:
            a, b = pair = todo.popleft()
            row = []
            for s in range(len(self.alphabet)):
                nxt = (self.transitions[a][s], other.transitions[b][s])
                if nxt not in index:
                    index[nxt] = len(index)
                    todo.append(nxt)
                    rows.append(None)
                    outputs.append(None)
                row.append(index[nxt])
            while len(rows) < len(index):
                rows.append(None)
                outputs.append(None)
            rows[index[pair]] = row
            outputs[index[pair]] = combine(self.outputs[a], other.outputs[b])
        return Dfao(self.alphabet, rows, 0, outputs, self.direction)

    def complement(self):
        return self.map_outputs(lambda o: 0 if o else 1)

    def union(self, other):
        return self.product(other, lambda a, b: 1 if (a or b) else 0)

    def intersect(self, other):
        return self.product(other, lambda a, b: 1 if (a and b) else 0)

    def difference(self, other):
        return self.product(other, lambda a, b: 1 if (a and not b) else 0)

    def symmetric_difference(self, other):
        return self.product(other, lambda a, b: 1 if bool(a) != bool(b) else 0)

    def is_empty(self) -> bool:
        acc = self.accessible()
        return not any(self.outputs[q] for q in acc)

    def same_language(self, other) -> bool:
        return self.symmetric_difference(other).is_empty()

    # -- minimization (Moore refinement over output classes) --

    def minimize(self) -> "Dfao":
        acc = sorted(self.accessible())
        idx = {q: i for i, q in enumerate(acc)}
        trans = [[idx[self.transitions[q][s]] for s in range(len(self.alphabet))] for q in acc]
        outs = [self.outputs[q] for q in acc]
        n = len(acc)

        classes = {}
        cls = []
        for q in range(n):
            key = outs[q]
            if key not in classes:
                classes[key] = len(classes)
            cls.append(classes[key])
        while True:
            sig = {}
            new = []
            for q in range(n):
                key = (cls[q], tuple(cls[t] for t in trans[q]))
                if key not in sig:
                    sig[key] = len(sig)
                new.append(sig[key])
            if new == cls:
                break
            cls = new

        # canonical numbering: BFS from the initial class in symbol order
        class_trans = {}
        class_out = {}
        for q in range(n):
            c = cls[q]
            if c not in class_trans:
                class_trans[c] = [cls[t] for t in trans[q]]
                class_out[c] = outs[q]
        start = cls[idx[self.initial]]
        renum = {start: 0}
        order = deque([start])
        while order:
            c = order.popleft()
            for t in class_trans[c]:
                if t not in renum:
                    renum[t] = len(renum)
                    order.append(t)
        rows = [None] * len(renum)
        outputs = [None] * len(renum)
        for c, i in renum.items():
            rows[i] = [renum[t] for t in class_trans[c]]
            outputs[i] = class_out[c]
        return Dfao(self.alphabet, rows, 0, outputs, self.direction)

    # -- counting --

    def census(self, n: int) -> int:
        """Number of accepted words of length <= n (direction-independent)."""
        if n < 0:
            raise AutomatonError("census needs n >= 0")
        return self.census_table(n)[-1]

    def census_table(self, n: int):
        """Cumulative counts [f(0), f(1), ..., f(n)]."""
        vec = [0] * self.n_states
        vec[self.initial] = 1
        acc = [q for q, o in enumerate(self.outputs) if o]
        total = sum(vec[q] for q in acc)
        table = [total]
        for _ in range(n):
            new = [0] * self.n_states
            for q, c in enumerate(vec):
                if c:
                    for t in self.transitions[q]:
                        new[t] += c
            vec = new
            total += sum(vec[q] for q in acc)
            table.append(total)
        return table

    def words(self, max_len: int):
        """Brute-force enumeration of accepted words of length <= max_len."""
        for ln in range(max_len + 1):
            for tup in iter_product(self.alphabet, repeat=ln):
                w = "".join(tup)
                if self.accepts(w):
                    yield w

    # -- zero-padding closures --

    def accept_closure(self, sym: str) -> "Dfao":
        """Accept when some number of extra `sym`s at the end of reading would.

        For an LSD acceptor over digits this makes acceptance insensitive to
        leading zeros of the written word."""
        s = self.sym_index(sym)
        good = {q for q, o in enumerate(self.outputs) if o}
        changed = True
        while changed:
            changed = False
            for q in range(self.n_states):
                if q not in good and self.transitions[q][s] in good:
                    good.add(q)
                    changed = True
        return self.with_outputs([1 if q in good else 0 for q in range(self.n_states)])

    def initial_closure(self, sym: str) -> "Dfao":
        """Language of words that land in the language after some number of
        `sym`s consumed first (subset construction from the sym-orbit of the
        initial state).  For an LSD acceptor this absorbs trailing zeros."""
        s = self.sym_index(sym)
        orbit = []
        q = self.initial
        seen = set()
        while q not in seen:
            seen.add(q)
            orbit.append(q)
            q = self.transitions[q][s]
        nfa = NFA(self.alphabet, direction=self.direction)
        for q in range(self.n_states):
            for i, ch in enumerate(self.alphabet):
                nfa.add(q, ch, self.transitions[q][i])
        nfa.initials.update(orbit)
        nfa.accepting.update(i for i, o in enumerate(self.outputs) if o)
        return nfa.determinize()

    # -- serialization --

    def to_json(self) -> dict:
        return {
            "alphabet": word_to_json(self.alphabet),
            "states": self.n_states,
            "initial": self.initial,
            "transitions": [list(r) for r in self.transitions],
            "outputs": [o.to_json() if hasattr(o, "to_json") else o for o in self.outputs],
            "direction": self.direction,
        }

    @classmethod
    def from_json(cls, obj, output_parser=None) -> "Dfao":
        alphabet = word_from_json(obj["alphabet"])
        outputs = obj["outputs"]
        if output_parser is not None:
            outputs = [output_parser(o) for o in outputs]
        return cls(
            alphabet,
            obj["transitions"],
            obj["initial"],
            outputs,
            obj.get("direction", "lsd"),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class NFA:
    """Nondeterministic acceptor used internally; determinizes to a Dfao."""

    def __init__(self, alphabet, direction="lsd"):
        self.alphabet = "".join(alphabet)
        self.direction = direction
        self.trans: dict = {}
        self.initials: set = set()
        self.accepting: set = set()
        self.states: set = set()

    def add(self, src, sym, dst):
        self.states.add(src)
        self.states.add(dst)
        self.trans.setdefault((src, sym), set()).add(dst)

    def determinize(self, cap: int = STATE_CAP) -> Dfao:
        start = frozenset(self.initials)
        index = {start: 0}
        rows, outs = [], []
        todo = deque([start])
        while todo:
            cur = todo.popleft()
            row = []
            for ch in self.alphabet:
                nxt = frozenset(t for q in cur for t in self.trans.get((q, ch), ()))
                if nxt not in index:
                    if len(index) >= cap:
                        raise StateCapError(
                            f"determinization exceeded the {cap}-state cap"
                        )
                    index[nxt] = len(index)
                    todo.append(nxt)
                row.append(index[nxt])
            while len(rows) < len(index):
                rows.append(None)
                outs.append(None)
            rows[index[cur]] = row
            outs[index[cur]] = 1 if cur & self.accepting else 0
        return Dfao(self.alphabet, rows, 0, outs, self.direction).minimize()


# -- common digit-language acceptors -------------------------------------------


def empty_acceptor(alphabet, direction="lsd") -> Dfao:
    return Dfao(alphabet, [[0] * len(alphabet)], 0, [0], direction)


def singleton_acceptor(word: str, alphabet, direction="lsd") -> Dfao:
    """Acceptor of the one-word language {word}."""
    seq = word[::-1] if direction == "lsd" else word
    n = len(seq)
    sink = n + 1
    rows = []
    for i in range(n + 1):
        row = []
        for ch in alphabet:
            row.append(i + 1 if i < n and ch == seq[i] else sink)
        rows.append(row)
    rows.append([sink] * len(alphabet))
    outputs = [0] * (n + 2)
    outputs[n] = 1
    return Dfao(alphabet, rows, 0, outputs, direction)


def canonical_nat_acceptor(k: int, direction="lsd") -> Dfao:
    """Acceptor of base-k encodings of naturals: no leading zeros.

    The empty word (encoding 0) is accepted."""
    alphabet = digit_alphabet(k)
    if direction == "msd":
        # states: 0 start (accepting), 1 running ok, 2 dead
        rows = []
        rows.append([2 if ch == "0" else 1 for ch in alphabet])  # start
        rows.append([1] * k)
        rows.append([2] * k)
        return Dfao(alphabet, rows, 0, [1, 1, 0], "msd")
    # lsd: reading is reversed, leading digit is consumed last; track whether
    # the most recently consumed symbol is zero.
    # states: 0 start/ok (accepting), 1 last-was-zero
    rows = [
        [1 if ch == "0" else 0 for ch in alphabet],
        [1 if ch == "0" else 0 for ch in alphabet],
    ]
    return Dfao(alphabet, rows, 0, [1, 0], "lsd")


def valid_sp_acceptor(p: int, direction="lsd") -> Dfao:
    """Acceptor of valid base-p expansions (one radix, no leading or trailing
    zeros around the significant digits)."""
    alphabet = digit_alphabet(p, radix=True)
    nfa = NFA(alphabet, direction)
    # msd-order structure; build states for: START, INT (seen nonzero lead),
    # RAD_OK (radix seen, word may end), RAD_ZERO (radix seen, trailing zero)
    START, INT, RAD_OK, RAD_Z = range(4)
    for d in alphabet[:-1]:
        z = d == "0"
        if not z:
            nfa.add(START, d, INT)
        nfa.add(INT, d, INT)
        nfa.add(RAD_OK, d, RAD_Z if z else RAD_OK)
        nfa.add(RAD_Z, d, RAD_Z if z else RAD_OK)
    nfa.add(START, RADIX, RAD_OK)
    nfa.add(INT, RADIX, RAD_OK)
    nfa.initials.add(START)
    nfa.accepting.add(RAD_OK)
    if direction == "lsd":
        # reverse all edges: reading order is reversed word
        rev = NFA(alphabet, "lsd")
        for (src, sym), dsts in nfa.trans.items():
            for dst in dsts:
                rev.add(dst, sym, src)
        rev.initials = set(nfa.accepting)
        rev.accepting = set(nfa.initials)
        return rev.determinize()
    return nfa.determinize()

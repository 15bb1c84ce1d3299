"""Algebra of p-automatic subsets of S_p = { m/p^n : m, n >= 0 }.

An SpSet is backed by an LSD acceptor over the digit-plus-radix alphabet whose
language is intersected with the valid-expansion language E_p at construction.
Constant shifts are deterministic digit transducers with carry/borrow; the
Minkowski sum is the classic digit-pair automaton with carry; the two spread
operations realize the union of p^n-scalings through pattern surgery on the
simple-sparse components (relocating the radix point through literals and
cycles, plus the zero-padded schema when it leaves the word).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .automata import NFA, Dfao, empty_acceptor, singleton_acceptor, valid_sp_acceptor
from .digits import RADIX, decode_sp, digit_alphabet, encode_sp
from .sparse import (
    ClosedForm,
    SimpleSparseForm,
    SparseError,
    closed_form,
    decompose,
    is_sparse,
    is_well_ordered,
    patterns_acceptor,
)


class SpSetError(ValueError):
    pass


def sp_alphabet(p: int) -> str:
    return digit_alphabet(p, radix=True)


def canonical_closure(A: Dfao) -> Dfao:
    """{u in E_p : 0^a u 0^b in L for some a, b >= 0}, minimized.

    Absorbs leading zeros before the radix and trailing zeros after it, then
    restricts to valid expansions; value-preserving on digit words."""
    p = len(A.alphabet) - 1
    if A.direction == "lsd":
        closed = A.initial_closure("0").accept_closure("0")
    else:
        closed = A.accept_closure("0").initial_closure("0")
    return closed.intersect(valid_sp_acceptor(p, A.direction)).minimize()


# -- comparison with a constant ----------------------------------------------------


def compare_acceptor(p: int, b: int, rel: str) -> Dfao:
    """Acceptor of { x in S_p : x <rel> b } for a nonnegative integer b."""
    if rel not in ("lt", "le", "gt", "ge"):
        raise SpSetError(f"relation must be lt/le/gt/ge, got {rel!r}")
    alphabet = sp_alphabet(p)
    bdig = []
    bb = b
    while bb:
        bdig.append(bb % p)
        bb //= p
    nb = len(bdig)

    # states: ("f", frac_seen) during the fractional phase;
    #         ("i", frac_seen, bpos, rel_so_far) afterwards.
    def int_accepts(frac_seen, bpos, rel_acc):
        if any(d for d in bdig[bpos:]):
            final = "lt"
        else:
            final = rel_acc
        if final == "eq" and frac_seen:
            final = "gt"
        if rel == "lt":
            return final == "lt"
        if rel == "le":
            return final in ("lt", "eq")
        if rel == "gt":
            return final == "gt"
        return final in ("gt", "eq")

    start = ("f", False)
    index = {start: 0}
    rows, outs = [], []
    todo = deque([start])
    while todo:
        st = todo.popleft()
        row = []
        for ch in alphabet:
            if st[0] == "dead":
                nxt = st
            elif st[0] == "f":
                _, seen = st
                if ch == RADIX:
                    nxt = ("i", seen, 0, "eq")
                else:
                    nxt = ("f", True)
            else:
                _, seen, bpos, acc = st
                if ch == RADIX:
                    nxt = ("dead",)
                else:
                    d = ord(ch) - ord("0")
                    bd = bdig[bpos] if bpos < nb else 0
                    acc2 = "gt" if d > bd else ("lt" if d < bd else acc)
                    nxt = ("i", seen, min(bpos + 1, nb), acc2)
            if nxt not in index:
                index[nxt] = len(index)
                todo.append(nxt)
            row.append(index[nxt])
        while len(rows) < len(index):
            rows.append(None)
            outs.append(None)
        rows[index[st]] = row
        if st[0] == "i":
            outs[index[st]] = 1 if int_accepts(st[1], st[2], st[3]) else 0
        else:
            outs[index[st]] = 0
    return Dfao(alphabet, rows, 0, outs, "lsd").minimize()


# -- constant-shift transducers ------------------------------------------------------


def _digits_lsd(n: int, p: int):
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out


def _flush_states(A: Dfao, value_from):
    """Acceptance after feeding the base-p digits of a residual value."""
    closed = A.accept_closure("0")

    def accepts_after(q, value):
        p = len(A.alphabet) - 1
        while value:
            q = A.transitions[q][A.sym_index(chr(ord("0") + value % p))]
            value //= p
        return bool(closed.outputs[q])

    return accepts_after


def shift_const(A: Dfao, b: int, mode: str) -> Dfao:
    """Value-level constant shift of an S_p language, as an acceptor.

    mode "add": { x + b : x in values(A) }          (reads y, feeds y - b)
    mode "sub": { x - b : x in values(A), x >= b }  (reads y, feeds y + b)
    mode "rsub": { b - x : x in values(A), x <= b } (reads y, feeds b - y)
    The fed word reaches A with leading zeros absorbed via closure."""
    if mode not in ("add", "sub", "rsub"):
        raise SpSetError(f"unknown shift mode {mode!r}")
    if b < 0:
        raise SpSetError("shift constant must be nonnegative")
    p = len(A.alphabet) - 1
    alphabet = A.alphabet
    closed = A.accept_closure("0")
    accepts_after = _flush_states(A, None)
    bdig = _digits_lsd(b, p)
    nb = len(bdig)

    # state: (q, phase, carry_or_borrow, bpos); phase "f" fractional, "i" integer
    start = (A.initial, "f", 0, 0)
    index = {start: 0}
    rows, outs = [], []
    todo = deque([start])

    def out_flag(st):
        q, phase, cb, bpos = st
        if phase != "i":
            return 0
        rest = sum(d * p ** i for i, d in enumerate(bdig[bpos:]))
        if mode == "add":
            # fed x = y - b; done iff no borrow remains and b is exhausted
            return 1 if cb == 0 and rest == 0 and closed.outputs[q] else 0
        if mode == "sub":
            # fed x = y + b; flush the remaining b digits plus carry
            return 1 if accepts_after(q, rest + cb) else 0
        # rsub: fed x = b - y; flush remaining b digits minus borrow
        return 1 if rest - cb >= 0 and accepts_after(q, rest - cb) else 0

    DEAD = ("dead",)
    while todo:
        st = todo.popleft()
        row = []
        for ch in alphabet:
            if st == DEAD:
                nxt = DEAD
            else:
                q, phase, cb, bpos = st
                if ch == RADIX:
                    if phase != "f":
                        nxt = DEAD
                    else:
                        if mode == "rsub" and cb == 0:
                            # no fractional digits were consumed: borrow stays 0
                            borrow = 0
                        elif mode == "rsub":
                            borrow = 1
                        else:
                            borrow = 0
                        q2 = A.transitions[q][A.sym_index(RADIX)]
                        nxt = (q2, "i", borrow if mode == "rsub" else cb, bpos)
                else:
                    d = ord(ch) - ord("0")
                    if phase == "f":
                        if mode in ("add", "sub"):
                            # b is an integer: fractional digits pass through
                            q2 = A.transitions[q][A.sym_index(ch)]
                            nxt = (q2, "f", cb, bpos)
                        else:
                            # rsub: complement; the deepest digit maps to p - d
                            if cb == 0:  # first fractional digit (deepest)
                                if d == 0:
                                    nxt = DEAD  # canonical words end nonzero
                                else:
                                    fd = p - d
                                    q2 = A.transitions[q][A.sym_index(chr(ord("0") + fd))]
                                    nxt = (q2, "f", 1, bpos)
                            else:
                                fd = p - 1 - d
                                q2 = A.transitions[q][A.sym_index(chr(ord("0") + fd))]
                                nxt = (q2, "f", 1, bpos)
                    else:
                        bd = bdig[bpos] if bpos < nb else 0
                        npos = min(bpos + 1, nb)
                        if mode == "add":
                            diff = d - bd - cb
                            fd, nb_ = (diff % p), (1 if diff < 0 else 0)
                        elif mode == "sub":
                            tot = d + bd + cb
                            fd, nb_ = tot % p, tot // p
                        else:
                            diff = bd - d - cb
                            fd, nb_ = (diff % p), (1 if diff < 0 else 0)
                        q2 = A.transitions[q][A.sym_index(chr(ord("0") + fd))]
                        nxt = (q2, "i", nb_, npos)
            if nxt not in index:
                index[nxt] = len(index)
                todo.append(nxt)
            row.append(index[nxt])
        while len(rows) < len(index):
            rows.append(None)
            outs.append(None)
        rows[index[st]] = row
        outs[index[st]] = 0 if st == DEAD else out_flag(st)
    for st, i in index.items():
        if rows[i] is None:
            rows[i] = [i] * len(alphabet)
            outs[i] = 0
    raw = Dfao(alphabet, rows, 0, outs, "lsd")
    return canonical_closure(raw)


def scale_pow_acceptor(A: Dfao, j: int) -> Dfao:
    """{ p^j * x : x in values(A) } for j >= 1: the radix moves j places right."""
    if j < 1:
        raise SpSetError("scale exponent must be >= 1")
    p = len(A.alphabet) - 1
    alphabet = A.alphabet
    closed = A.accept_closure("0")

    # reading y deepest-first; x = y / p^j has its radix j symbols later
    # state: (q, phase) with phase "f" (before y's radix) or ("delay", c) or "i"
    start = (A.initial, "f")
    index = {start: 0}
    rows, outs = [], []
    todo = deque([start])
    DEAD = ("dead",)

    def feed(q, ch):
        return A.transitions[q][A.sym_index(ch)]

    def finish(q, phase):
        # flush at end of input: complete the delayed radix with zeros
        if phase == "f":
            return False  # no radix seen: not a valid word anyway
        if phase == "i":
            return bool(closed.outputs[q])
        c = phase[1]
        for _ in range(j - c):
            q = feed(q, "0")
        q = feed(q, RADIX)
        return bool(closed.outputs[q])

    while todo:
        st = todo.popleft()
        row = []
        for ch in alphabet:
            if st == DEAD:
                nxt = DEAD
            else:
                q, phase = st
                if phase == "f":
                    if ch == RADIX:
                        nxt = (q, ("delay", 0))
                    else:
                        nxt = (feed(q, ch), "f")
                elif phase == "i":
                    nxt = DEAD if ch == RADIX else (feed(q, ch), "i")
                else:
                    c = phase[1]
                    if ch == RADIX:
                        nxt = DEAD
                    else:
                        q2 = feed(q, ch)
                        if c + 1 == j:
                            nxt = (feed(q2, RADIX), "i")
                        else:
                            nxt = (q2, ("delay", c + 1))
            if nxt not in index:
                index[nxt] = len(index)
                todo.append(nxt)
            row.append(index[nxt])
        while len(rows) < len(index):
            rows.append(None)
            outs.append(None)
        rows[index[st]] = row
        outs[index[st]] = 0 if st == DEAD else (1 if finish(*st) else 0)
    raw = Dfao(alphabet, rows, 0, outs, "lsd")
    return canonical_closure(raw)


# -- Minkowski sum -------------------------------------------------------------------


def minkowski_acceptor(A: Dfao, B: Dfao, state_cap: int = 10 ** 6) -> Dfao:
    """Acceptor of { x + y : x in values(A), y in values(B) }.

    Digit-pair automaton with carry, LSD-first; operands are padded with zeros
    on both ends so the alignment at the radix point is synchronous."""
    p = len(A.alphabet) - 1
    alphabet = A.alphabet
    Ap = A.initial_closure("0").accept_closure("0")
    Bp = B.initial_closure("0").accept_closure("0")

    nfa = NFA(alphabet, "lsd")
    start = (Ap.initial, Bp.initial, 0, "f")
    stack = [start]
    seen = {start}
    while stack:
        st = stack.pop()
        qa, qb, carry, phase = st
        if phase == "f":
            ra = Ap.transitions[qa][Ap.sym_index(RADIX)]
            rb = Bp.transitions[qb][Bp.sym_index(RADIX)]
            nxt = (ra, rb, carry, "i")
            nfa.add(st, RADIX, nxt)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
        for da in range(p):
            for db in range(p):
                tot = da + db + carry
                o = tot % p
                c2 = tot // p
                ta = Ap.transitions[qa][Ap.sym_index(chr(ord("0") + da))]
                tb = Bp.transitions[qb][Bp.sym_index(chr(ord("0") + db))]
                nxt = (ta, tb, c2, phase)
                nfa.add(st, chr(ord("0") + o), nxt)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    nfa.initials.add(start)
    for st in seen:
        qa, qb, carry, phase = st
        if phase == "i" and carry == 0 and Ap.outputs[qa] and Bp.outputs[qb]:
            nfa.accepting.add(st)
    return canonical_closure(nfa.determinize(cap=state_cap))


# -- pattern surgery for the spread operations ----------------------------------------


def _form_items(form: SimpleSparseForm):
    """(literals, cycles, (r, o)) with the radix removed from literal r at offset o."""
    lits = list(form.vs)
    pos = None
    for i, v in enumerate(lits):
        if RADIX in v:
            o = v.index(RADIX)
            lits[i] = v.replace(RADIX, "")
            pos = (i, o)
    if pos is None:
        raise SparseError("pattern surgery needs a radix-bearing form")
    return lits, list(form.ws), pos


def _items_form(k, lits, cycles, pos):
    r, o = pos
    vs = list(lits)
    vs[r] = vs[r][:o] + RADIX + vs[r][o:]
    return SimpleSparseForm(k, tuple(vs), tuple(cycles))


def shift_right_patterns(form: SimpleSparseForm):
    """Patterns covering union over n >= 0 of p^n * (members of form)."""
    lits, cycles, (r, o) = _form_items(form)
    out = []
    # (a) radix relocated inside a literal at or right of the original spot
    for r2 in range(r, len(lits)):
        lo = o if r2 == r else 0
        for o2 in range(lo, len(lits[r2]) + 1):
            out.append(_items_form(form.k, lits, cycles, (r2, o2)))
    # (b) radix inside a later cycle region: w* (w'.w'') w* with w = w'w'';
    #     cut 0 puts the radix on a copy boundary with a copy following
    for i in range(r, len(cycles)):
        w = cycles[i]
        for cut in range(0, len(w)):
            nl = lits[: i + 1] + [w[:cut] + RADIX + w[cut:]] + lits[i + 1 :]
            nc = cycles[: i + 1] + [w] + cycles[i + 1 :]
            out.append(SimpleSparseForm(form.k, tuple(nl), tuple(nc)))
    # (c) radix pushed past the last digit, padding with zeros
    nl = lits[:-1] + [lits[-1]] + [RADIX]
    nc = cycles + ["0"]
    out.append(SimpleSparseForm(form.k, tuple(nl), tuple(nc)))
    return out


def shift_left_patterns(form: SimpleSparseForm):
    """Patterns covering union over n >= 1 of p^-n * (members of form).

    The n = 0 image must not leak in: a relocated-radix pattern whose material
    between the new and the old radix position can vanish (all intervening
    literal text empty, all intervening cycles at zero repetitions) would
    contain the original words, so such patterns force one intervening cycle
    to repeat at least once."""
    lits, cycles, (r, o) = _form_items(form)
    out = []

    def emit(position_patterns, interv_lits, interv_cycles):
        nl, nc, pos = position_patterns
        if interv_lits:
            out.append(_items_form(form.k, nl, nc, pos))
            return
        for i in interv_cycles:
            fl = list(nl)
            fl[i] = fl[i] + nc[i]  # force one repetition of cycle i
            out.append(_items_form(form.k, fl, nc, pos))
        # no intervening cycles at all: pure identity, skip

    # (a) radix relocated strictly left inside a literal
    for r2 in range(0, r + 1):
        hi = o if r2 == r else len(lits[r2]) + 1
        for o2 in range(0, hi):
            between = lits[r2][o2:] if r2 == r else (
                lits[r2][o2:] + "".join(lits[r2 + 1 : r]) + lits[r][:o]
            )
            emit((list(lits), list(cycles), (r2, o2)), between, list(range(r2, r)))
    # (b) radix inside an earlier cycle region: the copy after the radix is
    #     intervening material, so these never reduce to the identity
    for i in range(0, r):
        w = cycles[i]
        for cut in range(0, len(w)):
            nl = lits[: i + 1] + [w[:cut] + RADIX + w[cut:]] + lits[i + 1 :]
            nc = cycles[: i + 1] + [w] + cycles[i + 1 :]
            out.append(SimpleSparseForm(form.k, tuple(nl), tuple(nc)))
    # (c) radix pushed before the first digit with zero padding ". 0^i digits";
    #     i = 0 is allowed only when some pre-radix material exists
    pre_text = "".join(lits[:r]) + lits[r][:o]
    base = [RADIX] + list(lits)
    nc = ["0"] + list(cycles)
    if pre_text:
        out.append(SimpleSparseForm(form.k, tuple(base), tuple(nc)))
    else:
        # i >= 1 always
        out.append(SimpleSparseForm(form.k, tuple([RADIX + "0"] + list(lits)), tuple(nc)))
        if r > 0:
            # i = 0 with a nonempty pre side: force one pre-radix cycle
            for i in range(r):
                fl = list(lits)
                fl[i] = fl[i] + cycles[i]
                out.append(SimpleSparseForm(form.k, tuple([RADIX] + fl), tuple(nc)))
    return out


# -- SpSet -----------------------------------------------------------------------------


@dataclass
class SpSet:
    """p-automatic subset of S_p with cached sparseness flags."""

    p: int
    acceptor: Dfao
    sparse: bool = None
    well_ordered: bool = None  # tri-state: True / False / None (unknown)

    @classmethod
    def from_acceptor(cls, p: int, A: Dfao, analyze: bool = True) -> "SpSet":
        A = A.intersect(valid_sp_acceptor(p, A.direction)).minimize()
        S = cls(p, A)
        if analyze:
            S.analyze()
        return S

    @classmethod
    def from_values(cls, p: int, values) -> "SpSet":
        alphabet = sp_alphabet(p)
        A = empty_acceptor(alphabet)
        for v in values:
            A = A.union(singleton_acceptor(encode_sp(Fraction(v), p), alphabet))
        return cls.from_acceptor(p, A.minimize())

    @classmethod
    def from_forms(cls, p: int, forms) -> "SpSet":
        A = patterns_acceptor(forms, sp_alphabet(p))
        return cls.from_acceptor(p, A)

    @classmethod
    def from_nat_acceptor(cls, p: int, A: Dfao) -> "SpSet":
        """Lift an acceptor of natural-number encodings to S_p (append '.')."""
        if A.direction != "lsd":
            raise SpSetError("expected an LSD acceptor")
        alphabet = sp_alphabet(p)
        rows = []
        n = A.n_states
        init = n
        dead = n + 1
        for q in range(n):
            row = [A.transitions[q][i] for i in range(p)] + [dead]
            rows.append(row)
        rows.append([dead] * p + [A.initial])  # new initial: '.' first
        rows.append([dead] * (p + 1))
        outputs = list(A.outputs) + [0, 0]
        return cls.from_acceptor(p, Dfao(alphabet, rows, init, outputs, "lsd"))

    def analyze(self):
        verdict = is_sparse(self.acceptor)
        self.sparse = verdict.sparse
        if self.sparse:
            self.well_ordered = all(is_well_ordered(f) for f in verdict.components)
        else:
            # integer-only languages are subsets of N and trivially well-ordered
            self.well_ordered = True if self._integer_only() else None
        return self

    def _integer_only(self) -> bool:
        # no accepted word has digits after the radix: in LSD reading the
        # first consumed symbol of any accepted word must be the radix
        A = self.acceptor
        nonint = NFA(A.alphabet, "lsd")
        for q in range(A.n_states):
            for i, ch in enumerate(A.alphabet):
                nonint.add(q, ch, A.transitions[q][i])
        nonint.initials = {
            A.transitions[A.initial][A.sym_index(ch)] for ch in A.alphabet if ch != RADIX
        }
        nonint.accepting = {q for q, o in enumerate(A.outputs) if o}
        return nonint.determinize().is_empty()

    # -- membership and windows --

    def member(self, x) -> bool:
        x = Fraction(x)
        if x < 0:
            return False
        try:
            w = encode_sp(x, self.p)
        except Exception:
            return False
        return self.acceptor.accepts(w)

    def values_by_word_length(self, max_len: int):
        return sorted(decode_sp(w, self.p) for w in self.acceptor.words(max_len))

    def components(self, cap: int = 10 ** 4):
        return decompose(self.acceptor, cap)

    def closed_forms(self, cap: int = 10 ** 4):
        return [closed_form(f) for f in self.components(cap)]

    def is_empty(self) -> bool:
        return self.acceptor.is_empty()

    def same_set(self, other: "SpSet") -> bool:
        return self.acceptor.same_language(other.acceptor)

    # -- algebra --

    def union(self, other: "SpSet") -> "SpSet":
        self._check(other)
        out = SpSet.from_acceptor(self.p, self.acceptor.union(other.acceptor), analyze=False)
        out.sparse = self.sparse and other.sparse if None not in (self.sparse, other.sparse) else None
        if self.well_ordered and other.well_ordered:
            out.well_ordered = True  # finite unions of well-ordered sets
        if out.sparse is None or out.well_ordered is None:
            out.analyze()
        return out

    def minkowski_sum(self, other: "SpSet", state_cap: int = 10 ** 6) -> "SpSet":
        self._check(other)
        if self.well_ordered is not True or other.well_ordered is not True:
            raise SpSetError("minkowski_sum needs both operands flagged well-ordered")
        A = minkowski_acceptor(self.acceptor, other.acceptor, state_cap)
        out = SpSet.from_acceptor(self.p, A, analyze=False)
        if self.sparse and other.sparse:
            out.sparse = True
            out.well_ordered = True  # sums of well-ordered sparse sets
            # verify the promised flags rather than assuming them silently
            check = is_sparse(out.acceptor)
            if not check.sparse:
                raise SpSetError("sum of sparse sets classified non-sparse; impossible")
            if not all(is_well_ordered(f) for f in check.components):
                raise SpSetError("sum failed the well-ordering check; impossible")
        else:
            out.analyze()
        return out

    def split(self, b: int):
        """(S intersect [0,b), S intersect (b,oo)); the point b is in neither."""
        if b <= 0:
            raise SpSetError("split point must be a positive integer")
        left = self.acceptor.intersect(compare_acceptor(self.p, b, "lt"))
        right = self.acceptor.intersect(compare_acceptor(self.p, b, "gt"))
        lo = SpSet.from_acceptor(self.p, left.minimize())
        hi = SpSet.from_acceptor(self.p, right.minimize())
        return lo, hi

    def spread_up(self, b: int) -> "SpSet":
        """Union over n >= 0 of (S - b) p^n + b, for S inside (b, oo)."""
        if b <= 0:
            raise SpSetError("base point must be a positive integer")
        if self.sparse is not True or self.well_ordered is not True:
            raise SpSetError("spread_up needs a sparse, well-ordered operand")
        below = self.acceptor.intersect(compare_acceptor(self.p, b, "le"))
        if not below.is_empty():
            raise SpSetError(f"spread_up needs the set inside ({b}, oo)")
        shifted = shift_const(self.acceptor, b, "sub")
        patterns = []
        for f in decompose(shifted):
            patterns.extend(shift_right_patterns(f))
        spread = canonical_closure(patterns_acceptor(patterns, sp_alphabet(self.p)))
        result = shift_const(spread, b, "add")
        out = SpSet.from_acceptor(self.p, result)
        if not out.sparse or out.well_ordered is not True:
            raise SpSetError("spread_up output failed its sparseness checks")
        return out

    def spread_down(self, b: int) -> "SpSet":
        """Union over n >= 1 of (S - b) p^-n + b, for S inside [0, b)."""
        if b <= 0:
            raise SpSetError("base point must be a positive integer")
        if self.sparse is not True or self.well_ordered is not True:
            raise SpSetError("spread_down needs a sparse, well-ordered operand")
        above = self.acceptor.intersect(compare_acceptor(self.p, b, "ge"))
        if not above.is_empty():
            raise SpSetError(f"spread_down needs the set inside [0, {b})")
        if self.is_empty():
            return SpSet.from_acceptor(self.p, empty_acceptor(sp_alphabet(self.p)))
        mirrored = shift_const(self.acceptor, b, "rsub")  # b - S in (0, b]
        patterns = []
        for f in decompose(mirrored):
            patterns.extend(shift_left_patterns(f))
        spread = canonical_closure(patterns_acceptor(patterns, sp_alphabet(self.p)))
        result = shift_const(spread, b, "rsub")  # b - union p^-n (b - S)
        out = SpSet.from_acceptor(self.p, result)
        if not out.sparse or out.well_ordered is not True:
            raise SpSetError("spread_down output failed its sparseness checks")
        return out

    def scale_up_union(self) -> "SpSet":
        """Union over n >= 0 of p^n * S (the b -> 0 analogue of spread_up)."""
        patterns = []
        for f in decompose(self.acceptor):
            patterns.extend(shift_right_patterns(f))
        spread = canonical_closure(patterns_acceptor(patterns, sp_alphabet(self.p)))
        return SpSet.from_acceptor(self.p, spread)

    def weak_census(self, n: int) -> int:
        """#{ a in S : a < p^n and p^n a in N }: words u.v with both sides <= n."""
        if n < 0:
            raise SpSetError("census index must be >= 0")
        A = self.acceptor
        digit_syms = [i for i, ch in enumerate(A.alphabet) if ch != RADIX]
        rad = A.sym_index(RADIX)

        def step(vec):
            out = [0] * A.n_states
            for q, c in enumerate(vec):
                if c:
                    for s in digit_syms:
                        out[A.transitions[q][s]] += c
            return out

        vec = [0] * A.n_states
        vec[A.initial] = 1
        frac_sum = list(vec)
        for _ in range(n):
            vec = step(vec)
            frac_sum = [a + b for a, b in zip(frac_sum, vec)]
        after = [0] * A.n_states
        for q, c in enumerate(frac_sum):
            if c:
                after[A.transitions[q][rad]] += c
        total = 0
        vec = after
        acc = [q for q, o in enumerate(A.outputs) if o]
        total += sum(vec[q] for q in acc)
        for _ in range(n):
            vec = step(vec)
            total += sum(vec[q] for q in acc)
        return total

    def _check(self, other):
        if other.p != self.p:
            raise SpSetError(f"mixed primes {self.p} and {other.p}")

    def to_json(self):
        return {
            "p": self.p,
            "acceptor": self.acceptor.to_json(),
            "flags": {"sparse": self.sparse, "well_ordered": self.well_ordered},
        }

    @classmethod
    def from_json(cls, obj) -> "SpSet":
        A = Dfao.from_json(obj["acceptor"])
        out = cls.from_acceptor(obj["p"], A, analyze=False)
        flags = obj.get("flags", {})
        out.sparse = flags.get("sparse")
        out.well_ordered = flags.get("well_ordered")
        if out.sparse is None:
            out.analyze()
        return out


# -- affine images at the closed-form level --------------------------------------------


def affine_closed_form(cf: ClosedForm, a, b) -> ClosedForm:
    """Closed form of a*S + b; a > 0 and both with p-power denominators."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0:
        raise SpSetError("affine scale must be positive")
    for x in (a, b):
        d = x.denominator
        while d % cf.k == 0:
            d //= cf.k
        if d != 1:
            raise SpSetError(f"affine constant {x} leaves S_{cf.k}")
    cs = tuple(a * c for c in cf.cs)
    cs = (cs[0] + b,) + cs[1:]
    ds = None if cf.ds is None else tuple(a * d for d in cf.ds)
    out = ClosedForm(cf.k, cs, cf.deltas, ds)
    probe = [0] * out.s
    if out.value(tuple(probe)) < 0:
        raise SpSetError("affine image leaves S_p (negative values)")
    return out

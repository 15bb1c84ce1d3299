"""Sparseness analysis of regular languages over digit alphabets.

A trimmed deterministic automaton accepts a sparse language exactly when every
strongly connected component of its live subgraph is a single simple cycle.
In that case the accepted language decomposes into pattern languages
v1 w1* v2 w2* ... v_{s+1}, one per reduced path through the condensation, and
each pattern has an arithmetic closed form built from geometric series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .automata import NFA, Dfao
from .digits import RADIX, radix_value


class SparseError(ValueError):
    pass


class ComponentCapError(SparseError):
    pass


COMPONENT_CAP = 10 ** 4


# -- simple sparse forms --------------------------------------------------------


@dataclass(frozen=True)
class SimpleSparseForm:
    """Pattern v1 w1* v2 w2* ... v_{s+1} over base-k digits.

    At most one radix point may appear, inside one of the v-words; the w-words
    never contain it.  Words are in written (most significant first) order."""

    k: int
    vs: tuple
    ws: tuple

    def __post_init__(self):
        if len(self.vs) != len(self.ws) + 1:
            raise SparseError("need s+1 literal words for s cycle words")
        if any(not w for w in self.ws):
            raise SparseError("cycle words must be nonempty")
        if any(RADIX in w for w in self.ws):
            raise SparseError("cycle words cannot contain the radix point")
        radixes = sum(v.count(RADIX) for v in self.vs)
        if radixes > 1:
            raise SparseError("at most one radix point in a form")
        digits = set("0123456789"[: self.k])
        for w in self.vs + self.ws:
            for ch in w:
                if ch != RADIX and ch not in digits:
                    raise SparseError(f"symbol {ch!r} is not a base-{self.k} digit")

    @property
    def s(self) -> int:
        return len(self.ws)

    @property
    def has_radix(self) -> bool:
        return any(RADIX in v for v in self.vs)

    @property
    def radix_index(self) -> int:
        """1-based index j of the v-word holding the radix point."""
        for i, v in enumerate(self.vs):
            if RADIX in v:
                return i + 1
        raise SparseError("form has no radix point")

    def word(self, ns) -> str:
        if len(ns) != self.s:
            raise SparseError(f"need {self.s} pump counts, got {len(ns)}")
        parts = [self.vs[0]]
        for i, n in enumerate(ns):
            parts.append(self.ws[i] * n)
            parts.append(self.vs[i + 1])
        return "".join(parts)

    def value(self, ns):
        val = radix_value(self.word(ns), self.k)
        return val if self.has_radix else int(val)

    def describe(self) -> str:
        out = [self.vs[0]]
        for i in range(self.s):
            out.append(f"({self.ws[i]})*")
            out.append(self.vs[i + 1])
        return "".join(out) or "(empty word)"

    def to_json(self):
        return {"k": self.k, "vs": list(self.vs), "ws": list(self.ws)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["k"], tuple(obj["vs"]), tuple(obj["ws"]))


def form_acceptor(form: SimpleSparseForm, alphabet: str, direction="lsd") -> Dfao:
    """Minimal acceptor of the pattern language of `form`."""
    return patterns_acceptor([form], alphabet, direction)


def patterns_acceptor(forms, alphabet: str, direction="lsd") -> Dfao:
    """Minimal acceptor of the union of several pattern languages."""
    nfa = NFA(alphabet, direction)
    eps = []
    fresh = iter(range(10 ** 9)).__next__
    for form in forms:
        cur = fresh()
        nfa.states.add(cur)
        nfa.initials.add(cur)
        pieces = [form.vs[0]]
        for i in range(form.s):
            pieces.append(("star", form.ws[i]))
            pieces.append(form.vs[i + 1])
        for piece in pieces:
            if isinstance(piece, tuple):
                _, w = piece
                hub = fresh()
                eps.append((cur, hub))
                node = hub
                for ch in w[:-1]:
                    nxt = fresh()
                    nfa.add(node, ch, nxt)
                    node = nxt
                nfa.add(node, w[-1], hub)
                cur = hub
            else:
                for ch in piece:
                    nxt = fresh()
                    nfa.add(cur, ch, nxt)
                    cur = nxt
        nfa.accepting.add(cur)
    _eliminate_eps(nfa, eps)
    if direction == "lsd":
        nfa = _reverse_nfa(nfa)
    return nfa.determinize()


def _eliminate_eps(nfa: NFA, eps):
    fwd = {}
    for a, b in eps:
        fwd.setdefault(a, set()).add(b)

    def closure(q):
        seen, todo = {q}, [q]
        while todo:
            x = todo.pop()
            for y in fwd.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    all_states = set(nfa.states) | nfa.initials | nfa.accepting
    for a, b in eps:
        all_states.add(a)
        all_states.add(b)
    clos = {q: closure(q) for q in all_states}
    new_trans = {}
    for q in all_states:
        for mid in clos[q]:
            for (src, sym), dsts in list(nfa.trans.items()):
                if src == mid:
                    new_trans.setdefault((q, sym), set()).update(dsts)
    nfa.trans = new_trans
    nfa.accepting = {q for q in all_states if clos[q] & nfa.accepting}
    nfa.initials = set(nfa.initials)
    nfa.states = all_states


def _reverse_nfa(nfa: NFA) -> NFA:
    rev = NFA(nfa.alphabet, nfa.direction)
    for (src, sym), dsts in nfa.trans.items():
        for dst in dsts:
            rev.add(dst, sym, src)
    rev.states |= nfa.states
    rev.initials = set(nfa.accepting)
    rev.accepting = set(nfa.initials)
    return rev


# -- sparseness test ------------------------------------------------------------


@dataclass(frozen=True)
class Sparse:
    components: tuple
    degree: int

    sparse = True


@dataclass(frozen=True)
class NonSparse:
    u: str
    a: str
    b: str
    v: str
    alpha: float

    sparse = False


def _live_sccs(A: Dfao):
    """Tarjan SCCs of the live subgraph.  Returns (live, scc_id, sccs)."""
    live = A.live_states()
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    scc_id = {}
    counter = [0]

    for root in sorted(live):
        if root in index:
            continue
        work = [(root, iter(sorted({t for t in A.transitions[root] if t in live})))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            q, it = work[-1]
            advanced = False
            for t in it:
                if t not in index:
                    index[t] = low[t] = counter[0]
                    counter[0] += 1
                    stack.append(t)
                    on_stack.add(t)
                    work.append((t, iter(sorted({u for u in A.transitions[t] if u in live}))))
                    advanced = True
                    break
                if t in on_stack:
                    low[q] = min(low[q], index[t])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[q])
            if low[q] == index[q]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    scc_id[x] = len(sccs)
                    if x == q:
                        break
                sccs.append(tuple(sorted(comp)))
    return live, scc_id, sccs


def _scc_structure(A: Dfao):
    """Classify SCCs.  Returns (live, scc_id, sccs, cycle_next, violation).

    An edge is internal when both ends share an SCC (a singleton SCC has an
    internal edge only via a self-loop).  cycle_next[q] is the unique internal
    edge (symbol, target) for states on a cycle SCC; violation is a state with
    two symbol-edges into its own SCC, or None."""
    live, scc_id, sccs = _live_sccs(A)
    cycle_next = {}
    violation = None
    for q in sorted(live):
        internal = [
            (A.alphabet[s], t)
            for s, t in enumerate(A.transitions[q])
            if t in live and scc_id.get(t) == scc_id[q]
        ]
        if len(internal) > 1 and violation is None:
            violation = q
        if internal:
            cycle_next[q] = internal[0]
    return live, scc_id, sccs, cycle_next, violation


def _cycle_word(entry, cycle_next):
    word = []
    q = entry
    while True:
        sym, t = cycle_next[q]
        word.append(sym)
        q = t
        if q == entry:
            return "".join(word)


def _reverse_component(vs, ws):
    vs2 = tuple(v[::-1] for v in reversed(vs))
    ws2 = tuple(w[::-1] for w in reversed(ws))
    return vs2, ws2


def _raw_components(A: Dfao, cap: int):
    """Reduced-path components in reading order; raises on non-sparse input."""
    live, scc_id, sccs, cycle_next, violation = _scc_structure(A)
    if violation is not None:
        raise SparseError("automaton accepts a non-sparse language")
    if A.initial not in live:
        return []

    k = len([ch for ch in A.alphabet if ch != RADIX])
    out = []

    scc_members = {}
    for q in live:
        scc_members.setdefault(scc_id[q], set()).add(q)

    def visit(q, entry, pieces, v):
        # pieces: list of (v_word, w_word); v: literal under construction
        if A.outputs[q]:
            vs = tuple(p[0] for p in pieces) + (v,)
            ws = tuple(p[1] for p in pieces)
            out.append((vs, ws))
            if len(out) > cap:
                raise ComponentCapError(
                    f"decomposition exceeded the {cap}-component cap"
                )
        for s, ch in enumerate(A.alphabet):
            t = A.transitions[q][s]
            if t not in live:
                continue
            if scc_id[t] == scc_id[q]:
                # the unique internal move within the current cycle SCC
                if t == entry:
                    continue  # completing the cycle is the pump, not the path
                visit(t, entry, pieces, v + ch)
            elif t in cycle_next:
                visit(t, t, pieces + [(v + ch, _cycle_word(t, cycle_next))], "")
            else:
                visit(t, None, pieces, v + ch)

    q0 = A.initial
    if q0 in cycle_next:
        visit(q0, q0, [("", _cycle_word(q0, cycle_next))], "")
    else:
        visit(q0, None, [], "")
    return out


def decompose(A: Dfao, cap: int = COMPONENT_CAP):
    """Disjoint simple-sparse components whose union is the language of A.

    Determinism plus the simple-cycle SCC structure make the reduced-path
    components disjoint as produced; no overlap removal is needed."""
    A = A.trim()
    k = len([ch for ch in A.alphabet if ch != RADIX])
    raw = _raw_components(A, cap)
    forms = []
    for vs, ws in raw:
        if A.direction == "lsd":
            vs, ws = _reverse_component(vs, ws)
        forms.append(SimpleSparseForm(k, vs, ws))
    forms.sort(key=lambda f: (f.s, f.vs, f.ws))
    return forms


def sparse_degree(A: Dfao) -> int:
    """Max number of cycle SCCs on any live path (census is O(n^degree))."""
    live, scc_id, sccs, cycle_next, violation = _scc_structure(A)
    if violation is not None:
        raise SparseError("automaton accepts a non-sparse language")
    if A.initial not in live:
        return 0
    is_cycle = [False] * len(sccs)
    for q in live:
        if q in cycle_next and scc_id[cycle_next[q][1]] == scc_id[q]:
            is_cycle[scc_id[q]] = True
    # condensation edges
    succ = {i: set() for i in range(len(sccs))}
    for q in live:
        for t in A.transitions[q]:
            if t in live and scc_id[t] != scc_id[q]:
                succ[scc_id[q]].add(scc_id[t])
    memo = {}

    def best(c):
        if c in memo:
            return memo[c]
        memo[c] = 0  # guard against (impossible) cycles in the condensation
        base = 1 if is_cycle[c] else 0
        memo[c] = base + max((best(d) for d in succ[c]), default=0)
        return memo[c]

    return best(scc_id[A.initial])


def _pump_witness(A: Dfao):
    """Concrete (u, a, b, v) with u{a,b}*v inside the language, |a| = |b|, a != b."""
    live, scc_id, sccs, cycle_next, violation = _scc_structure(A)
    q = violation
    internal = [
        (A.alphabet[s], t)
        for s, t in enumerate(A.transitions[q])
        if t in live and scc_id[t] == scc_id[q]
    ]
    (s1, t1), (s2, t2) = internal[0], internal[1]
    members = {x for x in live if scc_id[x] == scc_id[q]}
    w1 = s1 + _path_word(A, t1, q, members)
    w2 = s2 + _path_word(A, t2, q, members)
    a = w1 * len(w2)
    b = w2 * len(w1)
    u = _path_word(A, A.initial, q, live)
    v = _path_to_accepting(A, q, live)
    if A.direction == "lsd":
        u, v = v[::-1], u[::-1]
        a, b = a[::-1], b[::-1]
    return u, a, b, v


def _path_word(A: Dfao, src, dst, allowed):
    """Lexicographically-least shortest symbol path src -> dst inside allowed."""
    if src == dst:
        return ""
    from collections import deque

    prev = {src: None}
    todo = deque([src])
    while todo:
        q = todo.popleft()
        for s, ch in enumerate(A.alphabet):
            t = A.transitions[q][s]
            if t in allowed and t not in prev:
                prev[t] = (q, ch)
                if t == dst:
                    todo.clear()
                    break
                todo.append(t)
    if dst not in prev:
        raise SparseError("no path between the requested states")
    out = []
    q = dst
    while prev[q] is not None:
        p, ch = prev[q]
        out.append(ch)
        q = p
    return "".join(reversed(out))


def _path_to_accepting(A: Dfao, src, allowed):
    from collections import deque

    if A.outputs[src]:
        return ""
    prev = {src: None}
    todo = deque([src])
    target = None
    while todo and target is None:
        q = todo.popleft()
        for s, ch in enumerate(A.alphabet):
            t = A.transitions[q][s]
            if t in allowed and t not in prev:
                prev[t] = (q, ch)
                if A.outputs[t]:
                    target = t
                    break
                todo.append(t)
    out = []
    q = target
    while prev[q] is not None:
        p, ch = prev[q]
        out.append(ch)
        q = p
    return "".join(reversed(out))


def measured_alpha(A: Dfao, max_n: int = 16) -> float:
    """Least-squares exponent of census growth: slope of log f against log k^n."""
    k = len([ch for ch in A.alphabet if ch != RADIX])
    table = A.census_table(max_n)
    pts = [(n * math.log(k), math.log(c)) for n, c in enumerate(table) if c > 0 and n > 0]
    if len(pts) < 2:
        return 0.0
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    num = sum((x - mx) * (y - my) for x, y in pts)
    den = sum((x - mx) ** 2 for x, y in pts)
    return num / den if den else 0.0


def is_sparse(A: Dfao, cap: int = COMPONENT_CAP):
    """Sparse(components, degree) or NonSparse(witness, measured alpha)."""
    T = A.trim()
    live, scc_id, sccs, cycle_next, violation = _scc_structure(T)
    if violation is not None:
        u, a, b, v = _pump_witness(T)
        return NonSparse(u, a, b, v, measured_alpha(T))
    return Sparse(tuple(decompose(T, cap)), sparse_degree(T))


@dataclass(frozen=True)
class Growth:
    sparse: bool
    degree: int | None = None
    alpha: float | None = None


def classify_growth(A: Dfao) -> Growth:
    verdict = is_sparse(A)
    if verdict.sparse:
        return Growth(True, degree=sparse_degree(A.trim()))
    return Growth(False, alpha=verdict.alpha)


# -- closed forms ---------------------------------------------------------------


@dataclass(frozen=True)
class ClosedForm:
    """Arithmetic shadow of a simple sparse form.

    Integer case (ds is None):
        value(n_1..n_s) = cs[0] + sum_i cs[i] * k^(d_s n_s + ... + d_{s-i+1} n_{s-i+1}).
    Radix case: cs covers the j-1 pre-radix pumps the same way, and
        ds = (D_0..D_r) adds D_0 + sum_i D_i * k^(-(d_j n_j + ... + d_{j+i-1} n_{j+i-1})).
    """

    k: int
    cs: tuple
    deltas: tuple
    ds: tuple = None

    @property
    def s(self) -> int:
        return len(self.deltas)

    @property
    def pre_pumps(self) -> int:
        return len(self.cs) - 1

    def value(self, ns) -> Fraction:
        if len(ns) != self.s:
            raise SparseError(f"need {self.s} pump counts, got {len(ns)}")
        j1 = self.pre_pumps  # number of pre-radix pumps (= s when integer form)
        val = self.cs[0]
        for i in range(1, j1 + 1):
            e = sum(self.deltas[r] * ns[r] for r in range(j1 - i, j1))
            val += self.cs[i] * Fraction(self.k) ** e
        if self.ds is not None:
            val += self.ds[0]
            for i in range(1, len(self.ds)):
                e = sum(self.deltas[j1 + r] * ns[j1 + r] for r in range(i))
                val += self.ds[i] * Fraction(self.k) ** (-e)
        return val

    def pre_combination(self, ns) -> Fraction:
        """sum_i c_i k^(...) without the constant; >= 0 when well-ordered."""
        j1 = self.pre_pumps
        val = Fraction(0)
        for i in range(1, j1 + 1):
            e = sum(self.deltas[r] * ns[r] for r in range(j1 - i, j1))
            val += self.cs[i] * Fraction(self.k) ** e
        return val

    def post_combination(self, ns) -> Fraction:
        """sum_i d_i k^(-...) without d_0; <= 0 when well-ordered."""
        if self.ds is None:
            return Fraction(0)
        j1 = self.pre_pumps
        val = Fraction(0)
        for i in range(1, len(self.ds)):
            e = sum(self.deltas[j1 + r] * ns[j1 + r] for r in range(i))
            val += self.ds[i] * Fraction(self.k) ** (-e)
        return val

    def to_json(self):
        def frac(x):
            return {"num": str(x.numerator), "den": str(x.denominator)}

        out = {
            "k": self.k,
            "cs": [frac(Fraction(c)) for c in self.cs],
            "deltas": list(self.deltas),
        }
        if self.ds is not None:
            out["ds"] = [frac(Fraction(d)) for d in self.ds]
        return out


def _closed_int(literals, cycles, k):
    """Closed form data (c_0..c_r) for integer words u_1 w_1^* ... u_{r+1}."""
    r = len(cycles)
    a = [Fraction(_pos_value(u, k)) for u in literals]  # a[0] = [u_1], ...
    b = [Fraction(_pos_value(w, k)) for w in cycles]
    mu = [len(u) for u in literals]
    delta = [len(w) for w in cycles]
    P = [Fraction(1)] * (r + 2)
    for i in range(1, r + 2):
        # product of k^mu over the last i literals
        P[i] = P[i - 1] * Fraction(k) ** (mu[r + 1 - i] if r + 1 - i < len(mu) else 0)
    cs = []
    if r == 0:
        return (a[0],), ()
    c0 = a[r] - P[1] * b[r - 1] / (Fraction(k) ** delta[r - 1] - 1)
    cs.append(c0)
    for i in range(1, r):
        ci = (
            P[i] * b[r - i] / (Fraction(k) ** delta[r - i] - 1)
            + P[i] * a[r - i]
            - P[i + 1] * b[r - i - 1] / (Fraction(k) ** delta[r - i - 1] - 1)
        )
        cs.append(ci)
    cr = P[r] * b[0] / (Fraction(k) ** delta[0] - 1) + P[r] * a[0]
    cs.append(cr)
    return tuple(cs), tuple(delta)


def _closed_frac(literals, cycles, k):
    """Closed form data (D_0..D_r) for fractional tails u_0 w_1^* u_1 ... w_r^* u_r."""
    r = len(cycles)
    ahat = [Fraction(_pos_value(u, k), k ** len(u)) for u in literals]
    bhat = [Fraction(_pos_value(w, k), k ** len(w)) for w in cycles]
    delta = [len(w) for w in cycles]
    B = [bh / (1 - Fraction(k) ** (-d)) for bh, d in zip(bhat, delta)]
    Q = []
    acc = Fraction(1)
    for u in literals:
        acc /= Fraction(k) ** len(u)
        Q.append(acc)
    ds = []
    if r == 0:
        return (ahat[0],), ()
    ds.append(ahat[0] + Q[0] * B[0])
    for i in range(1, r):
        ds.append(Q[i - 1] * (ahat[i] - B[i - 1]) + Q[i] * B[i])
    ds.append(Q[r - 1] * (ahat[r] - B[r - 1]))
    return tuple(ds), tuple(delta)


def _pos_value(w, k):
    out = 0
    for ch in w:
        out = out * k + (ord(ch) - ord("0"))
    return out


def closed_form(form: SimpleSparseForm) -> ClosedForm:
    """Coefficients realizing value(n_1..n_s) = decode of the pumped word."""
    k = form.k
    if not form.has_radix:
        cs, deltas = _closed_int(list(form.vs), list(form.ws), k)
        return ClosedForm(k, cs, deltas)
    j = form.radix_index
    vj_pre, vj_post = form.vs[j - 1].split(RADIX)
    pre_lits = list(form.vs[: j - 1]) + [vj_pre]
    pre_cycles = list(form.ws[: j - 1])
    post_lits = [vj_post] + list(form.vs[j:])
    post_cycles = list(form.ws[j - 1 :])
    cs, pre_deltas = _closed_int(pre_lits, pre_cycles, k)
    ds, post_deltas = _closed_frac(post_lits, post_cycles, k)
    return ClosedForm(k, cs, pre_deltas + post_deltas, ds)


# -- enumeration oracle ----------------------------------------------------------


def enumerate_values(form: SimpleSparseForm, bound, max_denom_exp: int | None = None):
    """All member values <= bound, each once, ascending.

    Radix forms with post-radix pumps additionally need `max_denom_exp`: only
    members whose denominator divides k^max_denom_exp are listed (otherwise the
    member list below a bound may be infinite)."""
    cf = closed_form(form)
    s = form.s
    bound = Fraction(bound)
    if s == 0:
        v = cf.value(())
        return [_as_number(v)] if v <= bound and _denom_ok(v, form.k, max_denom_exp) else []

    j1 = cf.pre_pumps
    caps = []
    for r in range(s):
        if r >= j1:
            if max_denom_exp is None:
                raise SparseError(
                    "enumerating a radix form with post-radix pumps needs max_denom_exp"
                )
            caps.append(max_denom_exp // cf.deltas[r] + 1)
            continue
        caps.append(_pre_cap(cf, r, bound))
    while True:
        values = set()
        margin = set()
        for ns in iter_product(*(range(c + 3) for c in caps)):
            v = cf.value(ns)
            if v <= bound and _denom_ok(v, form.k, max_denom_exp):
                if all(n <= c for n, c in zip(ns, caps)):
                    values.add(v)
                else:
                    margin.add(v)
        if margin <= values:
            return sorted(_as_number(v) for v in values)
        caps = [c + 3 for c in caps]  # pathological form: widen and retry
        if max(caps) > 512:
            raise SparseError("cannot bound enumeration for this form")


def _pre_cap(cf: ClosedForm, r: int, bound: Fraction) -> int:
    # sensitivity: pumping n_r scales the terms c_i with i >= j1 - r
    j1 = cf.pre_pumps
    if all(cf.cs[i] == 0 for i in range(j1 - r, j1 + 1)):
        return 0
    t = 0
    prev = None
    while True:
        ns = [0] * cf.s
        ns[r] = t
        v = cf.value(tuple(ns))
        if v > bound:
            return t
        if prev is not None and v == prev:
            return t  # constant in this index beyond here
        prev = v
        t += 1
        if t > 512:
            raise SparseError("cannot bound enumeration for this form")


def _denom_ok(v: Fraction, k: int, max_denom_exp) -> bool:
    if v.denominator == 1:
        return True
    if max_denom_exp is None:
        return True
    return v.denominator <= k ** max_denom_exp and (k ** max_denom_exp) % v.denominator == 0


def _as_number(v: Fraction):
    return int(v) if v.denominator == 1 else v


# -- well-ordering check ----------------------------------------------------------


def is_well_ordered(form: SimpleSparseForm, depth: int = 3) -> bool:
    """Desk-scale well-ordering check for a radix-bearing form.

    Integer forms are trivially well-ordered.  Radix forms are checked by the
    sign conditions on the closed form (pre-combination >= 0, post <= 0 on a
    bounded index box), by single-pump monotonicity, and by an enumeration
    cross-check; sound on the forms produced by decompose, heuristic beyond."""
    if not form.has_radix:
        return True
    cf = closed_form(form)
    s = form.s
    j1 = cf.pre_pumps
    # single-pump monotonicity of post-radix cycles
    for r in range(j1, s):
        base = [0] * s
        lo = cf.value(tuple(base))
        base[r] = 1
        if cf.value(tuple(base)) < lo:
            return False
    # rem39-style sign conditions on a bounded box
    for ns in iter_product(range(depth + 1), repeat=s):
        if cf.pre_combination(ns) < 0:
            return False
        if cf.post_combination(ns) > 0:
            return False
    # enumeration cross-check: pumping any post cycle never descends
    for r in range(j1, s):
        for base in iter_product(range(2), repeat=s):
            seq = []
            for t in range(depth + 2):
                ns = list(base)
                ns[r] = t
                seq.append(cf.value(tuple(ns)))
            if any(b < a for a, b in zip(seq, seq[1:])):
                return False
    return True

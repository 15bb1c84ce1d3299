"""Truncated and generalized power series over GF(p^m), and the
Artin-Schreier operator suite built on them.

TruncatedSeries has natural-number exponents below a precision cutoff.
GenSeries allows rational exponents; its knowledge region is governed by a
value cutoff `hi` and a denominator-depth cutoff `depth` (coefficients at
exponents a/p^e are guaranteed only for e <= depth), since series such as
sum t^(1 - p^-n) have infinitely many terms below any value bound.  Every
operation computes the guaranteed-correct region of its result; nothing is
silently truncated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .fields import GF, FFElem, common_field, moore_basis, artin_schreier_root_extending

INF = math.inf


class SeriesError(ValueError):
    pass


def den_exp(x: Fraction, p: int) -> int:
    """Exponent e with denominator(x) = p^e; raises if not a p-power."""
    d = Fraction(x).denominator
    e = 0
    while d > 1:
        if d % p:
            raise SeriesError(f"exponent {x} has denominator outside p-powers")
        d //= p
        e += 1
    return e


# -- truncated power series ------------------------------------------------------


class TruncatedSeries:
    """Power series with integer exponents, complete below `precision`."""

    __slots__ = ("field", "precision", "coeffs")

    def __init__(self, field: GF, coeffs: dict, precision):
        self.field = field
        self.precision = precision
        self.coeffs = {e: c for e, c in coeffs.items() if not c.is_zero() and e < precision}
        for e in self.coeffs:
            if e < 0 or e != int(e):
                raise SeriesError(f"exponent {e} not a natural number")

    # -- constructors --

    @classmethod
    def zero(cls, field: GF, precision=INF):
        return cls(field, {}, precision)

    @classmethod
    def monomial(cls, field: GF, coeff, exp: int, precision=INF):
        return cls(field, {int(exp): field(coeff)}, precision)

    @classmethod
    def from_coeff_list(cls, field: GF, values, precision=None):
        if precision is None:
            precision = len(values)
        return cls(field, {i: field(v) for i, v in enumerate(values)}, precision)

    @classmethod
    def indicator(cls, field: GF, exponents, precision):
        one = field.one()
        return cls(field, {int(e): one for e in exponents if e < precision}, precision)

    # -- plumbing --

    def coefficient(self, e: int) -> FFElem:
        if e >= self.precision:
            raise SeriesError(f"coefficient at {e} is beyond precision {self.precision}")
        return self.coeffs.get(e, self.field.zero())

    def coefficient_list(self, n: int):
        return [self.coefficient(i) for i in range(n)]

    def support(self):
        return sorted(self.coeffs)

    def valuation(self):
        """Least known exponent with nonzero coefficient, else `precision`."""
        return min(self.coeffs) if self.coeffs else self.precision

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant_term(self) -> FFElem:
        return self.coefficient(0)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and other.field is self.field
            and other.precision == self.precision
            and other.coeffs == self.coeffs
        )

    def agrees(self, other: "TruncatedSeries", below=None) -> bool:
        below = min(self.precision, other.precision) if below is None else below
        if below > self.precision or below > other.precision:
            raise SeriesError("comparison window exceeds a precision guarantee")
        for e in set(self.coeffs) | set(other.coeffs):
            if e < below and self.coeffs.get(e) != other.coeffs.get(e):
                return False
        return True

    def __repr__(self):
        terms = [f"{c.n}*t^{e}" for e, c in sorted(self.coeffs.items())[:6]]
        more = "+..." if len(self.coeffs) > 6 else ""
        return f"TruncatedSeries({' + '.join(terms) or '0'}{more}; N={self.precision})"

    def _check(self, other):
        if other.field is not self.field:
            raise SeriesError(f"mixed fields {self.field} and {other.field}")

    # -- ring operations --

    def __add__(self, other):
        self._check(other)
        prec = min(self.precision, other.precision)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, self.field.zero()) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return TruncatedSeries(self.field, out, prec)

    def __neg__(self):
        return TruncatedSeries(self.field, {e: -c for e, c in self.coeffs.items()}, self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        prec = min(self.precision + other.valuation(), other.precision + self.valuation())
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= prec:
                    continue
                s = out.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                out[e] = s
        return TruncatedSeries(self.field, {e: c for e, c in out.items() if not c.is_zero()}, prec)

    def scale(self, coeff: FFElem):
        coeff = self.field(coeff)
        return TruncatedSeries(
            self.field, {e: coeff * c for e, c in self.coeffs.items()}, self.precision
        )

    def __pow__(self, n: int):
        if n < 0:
            raise SeriesError("negative powers of truncated series are not defined")
        result = TruncatedSeries.monomial(self.field, 1, 0, INF)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- characteristic-p structure --

    def pth_power(self, e: int = 1):
        """F^(p^e) via the Frobenius: coefficientwise p^e-th power, exponents * p^e."""
        p_e = self.field.p ** e
        return TruncatedSeries(
            self.field,
            {ex * p_e: c.frobenius(e) for ex, c in self.coeffs.items()},
            self.precision * p_e,
        )

    def scale_var(self, alpha: FFElem):
        """F(alpha t): multiplies the n-th coefficient by alpha^n."""
        alpha = self.field(alpha)
        return TruncatedSeries(
            self.field,
            {e: (alpha ** e) * c for e, c in self.coeffs.items()},
            self.precision,
        )

    def subst_power(self, c, d=0):
        """t^d F(t^c) with c > 0 rational and d rational; exponents must stay natural."""
        c = Fraction(c)
        d = Fraction(d)
        if c <= 0:
            raise SeriesError(f"substitution exponent must be positive, got {c}")
        out = {}
        for e, coeff in self.coeffs.items():
            ne = c * e + d
            if ne.denominator != 1 or ne < 0:
                raise SeriesError(
                    f"substitution maps exponent {e} to {ne}, outside natural numbers"
                )
            out[int(ne)] = coeff
        prec = c * self.precision + d
        prec = INF if prec == INF else (int(prec) if Fraction(prec).denominator == 1 else math.floor(prec) + 1)
        return TruncatedSeries(self.field, out, prec)

    # -- Artin-Schreier operators --

    def as_power(self):
        """F + F^p + F^(p^2) + ...; needs strictly positive support.

        The result G satisfies G^p - G = -F exactly (to precision)."""
        if not self.coeffs and self.precision == INF:
            return self
        if self.valuation() <= 0:
            raise SeriesError("as_power needs strictly positive support")
        prec = self.precision
        total = TruncatedSeries(self.field, dict(self.coeffs), prec)
        term = self
        while True:
            term = term.pth_power()
            if term.valuation() >= prec:
                break
            total = total + TruncatedSeries(
                self.field, {e: c for e, c in term.coeffs.items() if e < prec}, prec
            )
        return total

    def as_subst(self):
        """F(t) + F(t^p) + F(t^(p^2)) + ...; needs F(0) = 0.

        Coefficientwise this adds f(e / p^i) over all i with integral e/p^i;
        equals as_power exactly when all coefficients lie in the prime field."""
        if not self.coeffs and self.precision == INF:
            return self
        if self.valuation() <= 0:
            raise SeriesError("as_subst needs zero constant term and positive support")
        p = self.field.p
        prec = self.precision
        total = TruncatedSeries(self.field, dict(self.coeffs), prec)
        scale = p
        while self.valuation() * scale < prec:
            shifted = {e * scale: c for e, c in self.coeffs.items() if e * scale < prec}
            total = total + TruncatedSeries(self.field, shifted, prec)
            scale *= p
        return total

    def gap_sum(self, d: int):
        """F + F^(p^d) + F^(p^2d) + ...; computed directly and through the
        Moore-basis route, which must agree."""
        if d < 1:
            raise SeriesError(f"gap width must be >= 1, got {d}")
        if self.valuation() <= 0:
            raise SeriesError("gap_sum needs strictly positive support")
        prec = self.precision
        total = TruncatedSeries(self.field, dict(self.coeffs), prec)
        term = self
        while True:
            term = term.pth_power(d)
            if term.valuation() >= prec:
                break
            total = total + TruncatedSeries(
                self.field, {e: c for e, c in term.coeffs.items() if e < prec}, prec
            )
        moore = self._gap_sum_moore(d)
        emb = self.field.embed_into(moore.field)
        lifted = TruncatedSeries(
            moore.field, {e: emb(c) for e, c in total.coeffs.items()}, total.precision
        )
        if prec != INF and not lifted.agrees(moore, below=min(prec, moore.precision)):
            raise SeriesError("gap-sum routes disagree; internal inconsistency")
        return total

    def _gap_sum_moore(self, d: int):
        """sum_i c_i (a_i F + (a_i F)^p + ...) with Moore data for (p, d)."""
        md = moore_basis(self.field.p, d)
        K = common_field(self.field, md.field)
        lift = self.field.embed_into(K)
        lift_m = md.field.embed_into(K)
        F = TruncatedSeries(K, {e: lift(c) for e, c in self.coeffs.items()}, self.precision)
        total = TruncatedSeries.zero(K, F.precision)
        for a, c in zip(md.basis, md.coeffs):
            total = total + F.scale(lift_m(a)).as_power().scale(lift_m(c))
        return total

    def to_gen(self) -> "GenSeries":
        return GenSeries(
            self.field,
            {Fraction(e): c for e, c in self.coeffs.items()},
            lo=Fraction(0),
            hi=self.precision,
            depth=INF,
            den_bound=0,
        )

    def to_json(self):
        return {
            "p": self.field.p,
            "m": self.field.m,
            "precision": None if self.precision == INF else int(self.precision),
            "terms": [
                [int(e), 1, list(c.digits)] for e, c in sorted(self.coeffs.items())
            ],
        }


# -- algebraic equations ---------------------------------------------------------


class AlgebraicEquation:
    """sum_j B_j(t) X^j with B_j polynomials over the field."""

    def __init__(self, field: GF, terms):
        self.field = field
        self.terms = {}
        for (i, j), c in dict(terms).items():
            c = field(c)
            if not c.is_zero():
                self.terms[int(i), int(j)] = c
        if not self.terms:
            raise SeriesError("equation must have a nonzero coefficient")
        self.x_degree = max(j for _, j in self.terms)

    def coefficient_poly(self, j: int, precision=INF) -> TruncatedSeries:
        return TruncatedSeries(
            self.field,
            {i: c for (i, jj), c in self.terms.items() if jj == j},
            precision,
        )

    def hasse_polys(self, F: TruncatedSeries):
        """Taylor data C_k(F) with P(F + Y) = sum_k C_k(F) Y^k (Hasse derivatives)."""
        out = []
        for k in range(self.x_degree + 1):
            acc = TruncatedSeries.zero(self.field, F.precision if k else F.precision)
            for j in range(k, self.x_degree + 1):
                binom = math.comb(j, k) % self.field.p
                if binom == 0:
                    continue
                B = self.coefficient_poly(j)
                term = B * (F ** (j - k))
                if binom != 1:
                    term = term.scale(self.field(binom))
                acc = acc + term
            out.append(acc)
        return out

    def evaluate(self, F: TruncatedSeries) -> TruncatedSeries:
        """P(F), by Horner in X."""
        acc = self.coefficient_poly(self.x_degree, F.precision * self.x_degree + 1)
        for j in range(self.x_degree - 1, -1, -1):
            acc = acc * F + self.coefficient_poly(j, INF)
        return TruncatedSeries(
            self.field, {e: c for e, c in acc.coeffs.items() if e < F.precision}, F.precision
        )

    def to_json(self):
        return {
            "p": self.field.p,
            "m": self.field.m,
            "terms": [[i, j, list(c.digits)] for (i, j), c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, obj) -> "AlgebraicEquation":
        field = GF(obj["p"], obj.get("m", 1))
        terms = {}
        for i, j, c in obj["terms"]:
            key = (i, j)
            val = field(c)
            if key in terms:
                val = terms[key] + val
            terms[key] = val
        return cls(field, terms)


@dataclass(frozen=True)
class ResidualReport:
    """t-adic order of the residual, against the guaranteed precision bound."""

    order: object  # int, or None meaning `>= bound`
    bound: object

    @property
    def satisfied(self) -> bool:
        return self.order is None or self.order >= self.bound


def verify_algebraic(F: TruncatedSeries, eq: AlgebraicEquation) -> ResidualReport:
    resid = eq.evaluate(F)
    order = None if resid.is_zero() else resid.valuation()
    return ResidualReport(order, resid.precision)


def series_from_equation(eq: AlgebraicEquation, seed, N: int, beam_cap: int = 64):
    """All power-series solutions of P(F) = 0 to precision N extending `seed`.

    `seed` is the forced initial coefficient list f(0), f(1), ...  Coefficients
    are found by undetermined coefficients with Hasse-derivative updates; when
    several extensions stay consistent the branches are all followed (up to
    beam_cap) and every completed branch is returned."""
    field = eq.field
    seed = [field(v) for v in seed]
    zero_series = TruncatedSeries.zero(field, N)
    branches = [
        {
            "F": {},
            "R": eq.evaluate(zero_series).coeffs,
            "C": [c.coeffs for c in eq.hasse_polys(zero_series)],
        }
    ]

    def influence_floor(C, n):
        best = INF
        for k in range(1, len(C)):
            if C[k]:
                best = min(best, min(C[k]) + k * n)
        return best

    def consistent(state, n):
        floor = influence_floor(state["C"], n)
        return all(e >= floor for e in state["R"])

    def apply(state, n, v):
        p = field.p
        C = state["C"]
        newR = dict(state["R"])
        vk = field.one()
        for k in range(1, len(C)):
            vk = vk * v
            if vk.is_zero():
                break
            for e, c in C[k].items():
                ee = e + k * n
                if ee >= N:
                    continue
                s = newR.get(e + k * n, field.zero()) + vk * c
                if s.is_zero():
                    newR.pop(e + k * n, None)
                else:
                    newR[e + k * n] = s
        newC = [dict(ck) for ck in C]
        for k in range(1, len(C)):
            vk = field.one()
            for m in range(k + 1, len(C)):
                vk = vk * v
                binom = math.comb(m, k) % p
                if binom == 0 or vk.is_zero():
                    continue
                mult = field(binom) * vk
                for e, c in C[m].items():
                    ee = e + (m - k) * n
                    if ee >= N:
                        continue
                    s = newC[k].get(ee, field.zero()) + mult * c
                    if s.is_zero():
                        newC[k].pop(ee, None)
                    else:
                        newC[k][ee] = s
        newF = dict(state["F"])
        if not v.is_zero():
            newF[n] = v
        return {"F": newF, "R": newR, "C": newC}

    for n in range(N):
        next_branches = []
        for state in branches:
            if n < len(seed):
                candidates = [seed[n]]
            else:
                C1 = state["C"][1]
                v1 = min(C1) if C1 else INF
                others = influence_floor(state["C"][:1] + [{}] + state["C"][2:], n)
                if C1 and v1 + n < others:
                    # unique linear determination at exponent v1 + n
                    r = state["R"].get(v1 + n)
                    v = field.zero() if r is None else -r / C1[v1]
                    candidates = [v]
                elif influence_floor(state["C"], n) >= N and not state["R"]:
                    candidates = [field.zero()]  # nothing below N can change
                else:
                    candidates = list(field.elements())
            for v in candidates:
                new = apply(state, n, v)
                if consistent(new, n + 1):
                    next_branches.append(new)
        if not next_branches:
            raise SeriesError(f"no power-series solution extends the seed at t^{n}")
        if len(next_branches) > beam_cap:
            raise SeriesError(f"more than {beam_cap} consistent branches at t^{n}")
        branches = next_branches

    solutions = []
    seen = set()
    for state in branches:
        if state["R"]:
            continue
        F = TruncatedSeries(field, state["F"], N)
        key = tuple(sorted((e, c.n) for e, c in F.coeffs.items()))
        if key not in seen:
            seen.add(key)
            solutions.append(F)
    if not solutions:
        raise SeriesError("no power-series solution to the requested precision")
    return solutions


# -- generalized series ----------------------------------------------------------


class GenSeries:
    """Series with rational exponents and explicit knowledge bounds.

    Invariants: the true series has support in [lo, oo) with denominator
    exponents <= den_bound; coefficients are guaranteed for every exponent
    e < hi with den_exp(e) <= depth, and only those are stored."""

    __slots__ = ("field", "coeffs", "lo", "hi", "depth", "den_bound")

    def __init__(self, field: GF, coeffs: dict, lo, hi, depth, den_bound):
        self.field = field
        self.lo = lo if lo == -INF else Fraction(lo)
        self.hi = hi if hi == INF else Fraction(hi)
        # a series known for all values and all depths up to its support bound
        # is fully known: record that as infinite depth and an exact den bound
        if hi == INF and den_bound <= depth:
            depth = INF
        self.depth = depth
        self.den_bound = den_bound
        p = field.p
        kept = {}
        max_den = 0
        for e, c in coeffs.items():
            e = Fraction(e)
            if c.is_zero():
                continue
            de = den_exp(e, p)
            if e >= self.hi or de > depth:
                continue  # beyond the trust region; drop
            if e < self.lo:
                raise SeriesError(f"stored exponent {e} below the support bound {self.lo}")
            kept[e] = c
            max_den = max(max_den, de)
        self.coeffs = kept
        if self.hi == INF and self.depth == INF:
            self.den_bound = max_den

    # -- constructors --

    @classmethod
    def zero(cls, field: GF):
        return cls(field, {}, lo=0, hi=INF, depth=INF, den_bound=0)

    @classmethod
    def monomial(cls, field: GF, coeff, exp):
        exp = Fraction(exp)
        db = den_exp(exp, field.p)
        return cls(field, {exp: field(coeff)}, lo=min(exp, 0), hi=INF, depth=INF, den_bound=db)

    @classmethod
    def indicator(cls, field: GF, exponents, hi, depth, den_bound=INF, lo=None):
        one = field.one()
        exponents = [Fraction(e) for e in exponents]
        if lo is None:
            lo = min(exponents, default=Fraction(0))
            lo = min(lo, Fraction(0))
        return cls(field, {e: one for e in exponents}, lo=lo, hi=hi, depth=depth, den_bound=den_bound)

    # -- plumbing --

    def known_at(self, e) -> bool:
        e = Fraction(e)
        if e < self.hi and den_exp(e, self.field.p) <= self.depth:
            return True
        if e < self.lo:
            return True
        return den_exp(e, self.field.p) > self.den_bound

    def coefficient(self, e) -> FFElem:
        e = Fraction(e)
        if not self.known_at(e):
            raise SeriesError(f"coefficient at {e} is outside the guaranteed region")
        return self.coeffs.get(e, self.field.zero())

    def support(self):
        return sorted(self.coeffs)

    def valuation(self):
        return min(self.coeffs) if self.coeffs else self.hi

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        terms = [f"{c.n}*t^{e}" for e, c in sorted(self.coeffs.items())[:6]]
        more = "+..." if len(self.coeffs) > 6 else ""
        return (
            f"GenSeries({' + '.join(terms) or '0'}{more}; hi={self.hi}, "
            f"depth={self.depth})"
        )

    def _check(self, other):
        if other.field is not self.field:
            raise SeriesError(f"mixed fields {self.field} and {other.field}")

    def agrees(self, other: "GenSeries", below, max_den: int) -> bool:
        return self.first_mismatch(other, below, max_den) is None

    def first_mismatch(self, other: "GenSeries", below, max_den: int):
        """Least exponent (< below, depth <= max_den) where coefficients differ."""
        self._check(other)
        below = Fraction(below)
        for S in (self, other):
            if below > S.hi or max_den > S.depth:
                raise SeriesError("comparison window exceeds a knowledge guarantee")
        p = self.field.p
        diffs = []
        for e in set(self.coeffs) | set(other.coeffs):
            if e < below and den_exp(e, p) <= max_den:
                if self.coeffs.get(e) != other.coeffs.get(e):
                    diffs.append(e)
        return min(diffs) if diffs else None

    # -- ring operations --

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, self.field.zero()) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return GenSeries(
            self.field,
            out,
            lo=min(self.lo, other.lo),
            hi=min(self.hi, other.hi),
            depth=min(self.depth, other.depth),
            den_bound=max(self.den_bound, other.den_bound),
        )

    def __neg__(self):
        return GenSeries(
            self.field,
            {e: -c for e, c in self.coeffs.items()},
            lo=self.lo,
            hi=self.hi,
            depth=self.depth,
            den_bound=self.den_bound,
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        coeff = self.field(coeff)
        return GenSeries(
            self.field,
            {e: coeff * c for e, c in self.coeffs.items()},
            lo=self.lo,
            hi=self.hi,
            depth=self.depth,
            den_bound=self.den_bound,
        )

    def __mul__(self, other):
        self._check(other)
        if self.lo == -INF or other.lo == -INF:
            raise SeriesError("product needs finite support lower bounds")
        # deep unknowns of one factor must not reach the claimed depth through
        # cancellation with the other factor's support
        depth = min(self.depth, other.depth)
        if self.den_bound > self.depth and other.den_bound > depth:
            raise SeriesError("cannot bound product depth; factors both unbounded")
        if other.den_bound > other.depth and self.den_bound > depth:
            raise SeriesError("cannot bound product depth; factors both unbounded")
        hi = min(_badd(self.hi, other.lo), _badd(other.hi, self.lo))
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= hi:
                    continue
                s = out.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                out[e] = s
        return GenSeries(
            self.field,
            {e: c for e, c in out.items() if not c.is_zero()},
            lo=self.lo + other.lo,
            hi=hi,
            depth=depth,
            den_bound=_badd(self.den_bound, other.den_bound),
        )

    # -- characteristic-p structure --

    def pth_power(self, e: int = 1):
        if e < 0:
            return self.pth_root(-e)
        p_e = self.field.p ** e
        return GenSeries(
            self.field,
            {ex * p_e: c.frobenius(e) for ex, c in self.coeffs.items()},
            lo=_bmul(self.lo, p_e),
            hi=_bmul(self.hi, p_e),
            depth=self.depth if self.depth == INF else self.depth - e,
            den_bound=max(0, self.den_bound - e) if self.den_bound != INF else INF,
        )

    def pth_root(self, e: int = 1):
        p_e = self.field.p ** e
        return GenSeries(
            self.field,
            {ex / p_e: c.frobenius(-e) for ex, c in self.coeffs.items()},
            lo=_bdiv(self.lo, p_e),
            hi=_bdiv(self.hi, p_e),
            depth=self.depth if self.depth == INF else self.depth + e,
            den_bound=_badd(self.den_bound, e),
        )

    def scale_var(self, alpha):
        """F(alpha t); fractional exponents need a consistent root of alpha."""
        alpha = self.field(alpha)
        dens = {Fraction(e).denominator for e in self.coeffs}
        dens.discard(1)
        if dens:
            root_order = math.lcm(*dens)
            root = _unique_root(alpha, root_order)
            out = {
                e: (root ** int(e * root_order)) * c for e, c in self.coeffs.items()
            }
        else:
            out = {e: (alpha ** int(e)) * c for e, c in self.coeffs.items()}
        return GenSeries(
            self.field, out, lo=self.lo, hi=self.hi, depth=self.depth, den_bound=self.den_bound
        )

    def subst_power(self, c, d=0):
        """t^d F(t^c) with c in Q_{>0}, d in Q."""
        c = Fraction(c)
        d = Fraction(d)
        if c <= 0:
            raise SeriesError(f"substitution exponent must be positive, got {c}")
        p = self.field.p
        a = 0
        num, den = c.numerator, c.denominator
        while num % p == 0:
            num //= p
            a += 1
        while den % p == 0:
            den //= p
            a -= 1
        base = self.pth_power(a) if a >= 0 else self.pth_root(-a)
        scale = Fraction(num, den)
        dd = den_exp(d, p)
        depth = base.depth
        if dd > depth:
            raise SeriesError("shift exponent deeper than the guaranteed depth")
        out = {e * scale + d: coeff for e, coeff in base.coeffs.items()}
        return GenSeries(
            self.field,
            out,
            lo=_badd(_bmul(base.lo, scale), d),
            hi=_badd(_bmul(base.hi, scale), d),
            depth=depth,
            den_bound=max(base.den_bound, dd) if base.den_bound != INF else INF,
        )

    def restrict_sign(self, sign: str) -> "GenSeries":
        """Positive-, negative-, or zero-exponent part, as fully as it is known."""
        if sign == "pos":
            keep = {e: c for e, c in self.coeffs.items() if e > 0}
            lo = min(keep, default=max(self.hi, Fraction(0)))
            lo = max(lo, Fraction(0)) if not keep else lo
            return GenSeries(self.field, keep, lo=lo, hi=self.hi,
                             depth=self.depth, den_bound=self.den_bound)
        if sign == "neg":
            if self.hi < 0:
                raise SeriesError("negative part is not fully known below 0")
            keep = {e: c for e, c in self.coeffs.items() if e < 0}
            return GenSeries(self.field, keep, lo=self.lo, hi=INF,
                             depth=self.depth, den_bound=self.den_bound)
        raise SeriesError(f"sign must be 'pos' or 'neg', got {sign!r}")

    # -- Artin-Schreier operators --

    def as_power_pos(self):
        """F + F^p + F^(p^2) + ... for strictly positive support; G^p - G = -F."""
        if self.coeffs and self.valuation() <= 0:
            raise SeriesError("as_power_pos needs strictly positive support")
        if self.lo < 0:
            raise SeriesError("as_power_pos needs a nonnegative support bound")
        total = self
        term = self
        while True:
            term = term.pth_power()
            if not term.coeffs or term.valuation() >= self.hi:
                break
            total = total + GenSeries(
                self.field,
                {e: c for e, c in term.coeffs.items() if e < self.hi},
                lo=term.lo, hi=self.hi, depth=term.depth, den_bound=term.den_bound,
            )
        return GenSeries(self.field, total.coeffs, lo=self.lo, hi=self.hi,
                         depth=self.depth, den_bound=self.den_bound)

    def as_power_neg(self, terms: int = 8):
        """-(F^(1/p) + F^(1/p^2) + ...) for strictly negative support.

        Only `terms` iterations are materialized; the result is guaranteed
        below lo * p^-(terms+1), which tends to 0 from below as terms grows
        (the true series has support accumulating at 0 from below, hence the
        unbounded den_bound).  The result G satisfies G^p - G = -F there."""
        if any(e >= 0 for e in self.coeffs):
            raise SeriesError("as_power_neg needs strictly negative support")
        if self.hi < 0:
            raise SeriesError("as_power_neg needs the full negative part (hi >= 0)")
        if self.lo == -INF:
            raise SeriesError("as_power_neg needs a finite support lower bound")
        p = self.field.p
        out = {}
        term = self
        depth = self.depth
        for _ in range(terms):
            term = term.pth_root()
            depth = min(depth, term.depth)
            for e, c in term.coeffs.items():
                s = out.get(e)
                s = -c if s is None else s - c
                out[e] = s
        hi_out = self.lo * Fraction(1, p ** (terms + 1))
        return GenSeries(
            self.field,
            {e: c for e, c in out.items() if e < hi_out},
            lo=_bdiv(self.lo, p),
            hi=hi_out,
            depth=depth,
            den_bound=INF,
        )

    def as_subst(self):
        """F(t) + F(t^p) + ... for positive support (substitution-form operator)."""
        if self.coeffs and self.valuation() <= 0:
            raise SeriesError("as_subst needs strictly positive support")
        if self.lo < 0:
            raise SeriesError("as_subst needs a nonnegative support bound")
        p = self.field.p
        total = self
        scale = p
        while self.coeffs and self.valuation() * scale < self.hi:
            shifted = {e * scale: c for e, c in self.coeffs.items() if e * scale < self.hi}
            total = total + GenSeries(
                self.field, shifted, lo=self.lo, hi=self.hi,
                depth=self.depth, den_bound=self.den_bound,
            )
            scale *= p
        return GenSeries(self.field, total.coeffs, lo=self.lo, hi=self.hi,
                         depth=self.depth, den_bound=self.den_bound)

    def gap_sum_pos(self, d: int):
        """F + F^(p^d) + F^(p^2d) + ... for strictly positive support,
        cross-checked against the Moore-basis route."""
        if d < 1:
            raise SeriesError(f"gap width must be >= 1, got {d}")
        if self.coeffs and self.valuation() <= 0:
            raise SeriesError("gap_sum_pos needs strictly positive support")
        if self.lo < 0:
            raise SeriesError("gap_sum_pos needs a nonnegative support bound")
        total = self
        term = self
        while True:
            term = term.pth_power(d)
            if not term.coeffs or term.valuation() >= self.hi:
                break
            total = total + GenSeries(
                self.field,
                {e: c for e, c in term.coeffs.items() if e < self.hi},
                lo=term.lo, hi=self.hi, depth=term.depth, den_bound=term.den_bound,
            )
        out = GenSeries(self.field, total.coeffs, lo=self.lo, hi=self.hi,
                        depth=self.depth, den_bound=self.den_bound)
        if self.hi != INF and self.depth != INF:
            moore = self._gap_sum_moore(d, "pos")
            cmp_hi = min(out.hi, moore.hi)
            cmp_depth = min(out.depth, moore.depth)
            lifted = _lift(out, moore.field)
            if not lifted.agrees(moore, cmp_hi, cmp_depth):
                raise SeriesError("gap-sum routes disagree; internal inconsistency")
        return out

    def gap_sum_neg(self, d: int, terms: int = 8):
        """F^(p^-d) + F^(p^-2d) + ... for strictly negative support,
        cross-checked against the Moore-basis route."""
        if d < 1:
            raise SeriesError(f"gap width must be >= 1, got {d}")
        if any(e >= 0 for e in self.coeffs):
            raise SeriesError("gap_sum_neg needs strictly negative support")
        if self.hi < 0 or self.lo == -INF:
            raise SeriesError("gap_sum_neg needs the full negative part")
        p = self.field.p
        out = {}
        term = self
        depth = self.depth
        for _ in range(terms):
            term = term.pth_root(d)
            depth = min(depth, term.depth)
            for e, c in term.coeffs.items():
                s = out.get(e, self.field.zero()) + c
                out[e] = s
        hi_out = self.lo * Fraction(1, p ** (d * (terms + 1)))
        result = GenSeries(
            self.field,
            {e: c for e, c in out.items() if e < hi_out},
            lo=_bdiv(self.lo, p ** d),
            hi=hi_out,
            depth=depth,
            den_bound=INF,
        )
        moore = self._gap_sum_moore(d, "neg", terms)
        cmp_hi = min(result.hi, moore.hi)
        cmp_depth = min(result.depth, moore.depth)
        lifted = _lift(result, moore.field)
        if not lifted.agrees(moore, cmp_hi, cmp_depth):
            raise SeriesError("gap-sum routes disagree; internal inconsistency")
        return result

    def _gap_sum_moore(self, d: int, sign: str, terms: int = 8):
        md = moore_basis(self.field.p, d)
        K = common_field(self.field, md.field)
        lift = self.field.embed_into(K)
        lift_m = md.field.embed_into(K)
        F = GenSeries(K, {e: lift(c) for e, c in self.coeffs.items()},
                      lo=self.lo, hi=self.hi, depth=self.depth, den_bound=self.den_bound)
        total = GenSeries.zero(K)
        for a, c in zip(md.basis, md.coeffs):
            if sign == "pos":
                H = F.scale(lift_m(a)).as_power_pos()
            else:
                H = -F.scale(lift_m(a)).as_power_neg(terms)
            total = total + H.scale(lift_m(c))
        if sign == "neg":
            total = -total
        return total

    def to_json(self):
        return {
            "p": self.field.p,
            "m": self.field.m,
            "terms": [
                [e.numerator, e.denominator, list(c.digits)]
                for e, c in sorted(self.coeffs.items())
            ],
            "window": {
                "lo": None if self.lo == -INF else str(self.lo),
                "hi": None if self.hi == INF else str(self.hi),
                "depth": None if self.depth == INF else self.depth,
            },
        }


def _lift(F: GenSeries, K: GF) -> GenSeries:
    if F.field is K:
        return F
    emb = F.field.embed_into(K)
    return GenSeries(K, {e: emb(c) for e, c in F.coeffs.items()},
                     lo=F.lo, hi=F.hi, depth=F.depth, den_bound=F.den_bound)


def _badd(a, b):
    if a == INF or b == INF:
        return INF
    if a == -INF or b == -INF:
        return -INF
    return a + b


def _bmul(a, c):
    if a == INF:
        return INF
    if a == -INF:
        return -INF
    return a * c


def _bdiv(a, c):
    if a == INF:
        return INF
    if a == -INF:
        return -INF
    return Fraction(a, 1) / c


def _unique_root(alpha: FFElem, order: int) -> FFElem:
    """The root of x^order = alpha when unique (gcd(order, q-1) = 1)."""
    F = alpha.field
    if math.gcd(order, F.q - 1) != 1:
        raise SeriesError(
            f"scale_var with fractional exponents needs a unique {order}-th root in {F}"
        )
    inv = pow(order, -1, F.q - 1)
    return alpha ** inv


def series_from_json(obj, gen: bool = False):
    field = GF(obj["p"], obj.get("m", 1))
    if gen or any(int(t[1]) != 1 for t in obj["terms"]):
        coeffs = {Fraction(int(t[0]), int(t[1])): field(t[2]) for t in obj["terms"]}
        win = obj.get("window", {})
        lo = win.get("lo")
        hi = win.get("hi")
        depth = win.get("depth")
        exps = list(coeffs) or [Fraction(0)]
        p = field.p
        return GenSeries(
            field,
            coeffs,
            lo=Fraction(lo) if lo is not None else min(min(exps), Fraction(0)),
            hi=Fraction(hi) if hi is not None else INF,
            depth=depth if depth is not None else INF,
            den_bound=max(den_exp(e, p) for e in exps),
        )
    precision = obj.get("precision")
    return TruncatedSeries(
        field,
        {int(t[0]): field(t[2]) for t in obj["terms"]},
        INF if precision is None else precision,
    )


# -- the Artin-Schreier solver ----------------------------------------------------


@dataclass(frozen=True)
class ASSolution:
    """One solution G = neg + constant + pos of X^p - X + F = 0.

    Because the Frobenius is additive, the residual splits exactly into the
    three parts; each is verified on its own guaranteed window (the combined
    `series` view is limited to the narrowest window)."""

    series: GenSeries
    neg: GenSeries
    constant: FFElem
    pos: GenSeries
    neg_residual_order: object  # None means >= the bound
    neg_residual_bound: object
    pos_residual_order: object
    pos_residual_bound: object

    @property
    def verified(self) -> bool:
        ok_neg = self.neg_residual_order is None or self.neg_residual_order >= self.neg_residual_bound
        ok_pos = self.pos_residual_order is None or self.pos_residual_order >= self.pos_residual_bound
        return ok_neg and ok_pos


def solve_artin_schreier(F: GenSeries, neg_terms: int = 8):
    """All p solutions G of G^p - G + F = 0, split as G- + a + G+ + i.

    The positive part is handled by the forward operator, the negative part by
    p-th roots, and the constant term by a root of x^p - x = -c, extending the
    coefficient field by one Artin-Schreier step when necessary."""
    if F.hi < 0:
        raise SeriesError("solver needs F known at least up to exponent 0")
    field = F.field
    c = F.coeffs.get(Fraction(0), field.zero())
    a, big = artin_schreier_root_extending(-c)
    if big is not field:
        F = _lift(F, big)
        field = big
        c = F.coeffs.get(Fraction(0), field.zero())
    Fpos = F.restrict_sign("pos")
    Fneg = F.restrict_sign("neg")
    Gpos = Fpos.as_power_pos()
    if Fneg.is_zero():
        Gneg = GenSeries.zero(field)
    else:
        Gneg = Fneg.as_power_neg(neg_terms)

    rneg = Gneg.pth_power() - Gneg + Fneg
    neg_order = None if rneg.is_zero() else rneg.valuation()
    rpos = Gpos.pth_power() - Gpos + Fpos
    pos_order = None if rpos.is_zero() else rpos.valuation()
    if not (a.frobenius() - a + c).is_zero():
        raise SeriesError("constant-term root failed; impossible")

    out = []
    for i in range(field.p):
        const = a + field(i)
        combined = Gpos + Gneg + GenSeries.monomial(field, const, 0)
        out.append(
            ASSolution(
                combined, Gneg, const, Gpos,
                neg_order, rneg.hi, pos_order, rpos.hi,
            )
        )
    return out

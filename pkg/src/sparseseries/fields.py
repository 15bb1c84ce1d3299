"""Exact arithmetic in GF(p^m), with the Frobenius structure used everywhere else.

Elements are coefficient vectors over F_p modulo a fixed irreducible polynomial.
The modulus for each (p, m) is pinned (built-in table for p in {2,3,5}, m <= 6;
deterministic search otherwise) so that encodings are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class FieldError(ValueError):
    pass


MAX_P = 64
MAX_M = 12
_SEARCH_CAP = 1 << 16  # largest field size for exhaustive root searches


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- dense polynomial helpers over F_p; tuples, lowest degree first, trimmed --

def _trim(a):
    i = len(a)
    while i and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_mod(a, mod, p):
    # mod must be monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        if c:
            shift = len(a) - 1 - dm
            for i, mc in enumerate(mod):
                a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def _poly_powmod(a, e, mod, p):
    r = (1,)
    a = _poly_mod(a, mod, p)
    while e:
        if e & 1:
            r = _poly_mod(_poly_mul(r, a, p), mod, p)
        a = _poly_mod(_poly_mul(a, a, p), mod, p)
        e >>= 1
    return r


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = tuple((c * inv) % p for c in b)
        a = _poly_mod(a, bm, p)
        a, b = b, a
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def _prime_factors(n):
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def is_irreducible(coeffs, p) -> bool:
    """Rabin test for a monic polynomial over F_p (coeffs lowest-first)."""
    f = _trim(coeffs)
    m = len(f) - 1
    if m <= 0 or f[-1] != 1:
        return False
    if m == 1:
        return True
    x = (0, 1)
    if _poly_powmod(x, p ** m, f, p) != _poly_mod(x, f, p):
        return False
    for ell in _prime_factors(m):
        g = list(_poly_powmod(x, p ** (m // ell), f, p))
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        if _poly_gcd(_trim(g), f, p) != (1,):
            return False
    return True


# Lexicographically least (by integer encoding of the non-leading coefficients)
# monic irreducible modulus per (p, m).  Verified irreducible in the tests.
_MODULUS_TABLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (2, 0, 0, 0, 1),
    (5, 5): (1, 4, 0, 0, 0, 1),
    (5, 6): (2, 1, 0, 0, 0, 0, 1),
}


@lru_cache(maxsize=None)
def _find_modulus(p, m):
    if m == 1:
        return (0, 1)  # F_p itself; never used for reduction
    if (p, m) in _MODULUS_TABLE:
        return _MODULUS_TABLE[p, m]
    for enc in range(p ** m):
        digits, e = [], enc
        for _ in range(m):
            digits.append(e % p)
            e //= p
        f = tuple(digits) + (1,)
        if is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible modulus found for GF({p}^{m})")


class GF:
    """The field GF(p^m).  Instances are cached, so `GF(2, 2) is GF(2, 2)`."""

    _cache: dict = {}

    def __new__(cls, p: int, m: int = 1):
        key = (p, m)
        inst = cls._cache.get(key)
        if inst is not None:
            return inst
        if not is_prime(p) or p > MAX_P:
            raise FieldError(f"characteristic must be a prime <= {MAX_P}, got {p}")
        if not 1 <= m <= MAX_M:
            raise FieldError(f"extension degree must be in [1, {MAX_M}], got {m}")
        inst = super().__new__(cls)
        inst.p = p
        inst.m = m
        inst.q = p ** m
        inst.modulus = _find_modulus(p, m)
        cls._cache[key] = inst
        return inst

    def __repr__(self):
        return f"GF({self.p})" if self.m == 1 else f"GF({self.p}^{self.m})"

    def __call__(self, value) -> "FFElem":
        if isinstance(value, FFElem):
            if value.field is not self:
                raise FieldError(f"no implicit coercion from {value.field} to {self}")
            return value
        if isinstance(value, int):
            digits, e = [], value % self.q
            for _ in range(self.m):
                digits.append(e % self.p)
                e //= self.p
            return FFElem(self, tuple(digits))
        digits = tuple(int(d) % self.p for d in value)
        if len(digits) != self.m:
            raise FieldError(f"{self} elements need {self.m} digits, got {len(digits)}")
        return FFElem(self, digits)

    def zero(self) -> "FFElem":
        return self(0)

    def one(self) -> "FFElem":
        return self(1)

    def gen(self) -> "FFElem":
        if self.m == 1:
            return self(1)
        return self(self.p)

    def elements(self):
        for n in range(self.q):
            yield self(n)

    def embed_into(self, other: "GF"):
        """Field homomorphism GF(p^m) -> GF(p^M) for m | M; explicit only."""
        return _embedding(self, other)


@lru_cache(maxsize=None)
def _embedding(small: GF, big: GF):
    if small.p != big.p:
        raise FieldError(f"cannot embed {small} into {big}: different characteristic")
    if big.m % small.m != 0:
        raise FieldError(f"cannot embed {small} into {big}: {small.m} does not divide {big.m}")
    if small is big:
        return lambda x: x
    if small.m == 1:
        def embed_prime(x, _big=big):
            return _big(x.digits[0])
        return embed_prime
    if big.q > _SEARCH_CAP:
        raise FieldError(f"embedding search into {big} exceeds supported size")
    # image of the generator = least root of the small modulus in the big field
    mod = small.modulus
    for cand in big.elements():
        acc = big.zero()
        pw = big.one()
        for c in mod:
            if c:
                acc = acc + pw * big(c)
            pw = pw * cand
        if acc.is_zero():
            root = cand
            break
    else:
        raise FieldError(f"no root of {small} modulus in {big}")

    def embed(x, _root=root, _big=big):
        acc = _big.zero()
        pw = _big.one()
        for d in x.digits:
            if d:
                acc = acc + pw * _big(d)
            pw = pw * _root
        return acc

    return embed


def common_field(a: GF, b: GF) -> GF:
    """Smallest declared field containing both (degree lcm)."""
    if a.p != b.p:
        raise FieldError(f"{a} and {b} have different characteristic")
    import math
    return GF(a.p, math.lcm(a.m, b.m))


class FFElem:
    __slots__ = ("field", "digits")

    def __init__(self, field: GF, digits: tuple):
        self.field = field
        self.digits = digits

    # -- value plumbing --

    @property
    def n(self) -> int:
        """Integer encoding sum(d_i p^i); stable across runs."""
        p, out = self.field.p, 0
        for d in reversed(self.digits):
            out = out * p + d
        return out

    def is_zero(self) -> bool:
        return not any(self.digits)

    def __bool__(self):
        return any(self.digits)

    def __eq__(self, other):
        return (
            isinstance(other, FFElem)
            and other.field is self.field
            and other.digits == self.digits
        )

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.digits))

    def __repr__(self):
        return f"{self.field!r}({self.n})"

    def _check(self, other):
        if not isinstance(other, FFElem):
            raise TypeError(f"expected FFElem, got {type(other).__name__}")
        if other.field is not self.field:
            raise FieldError(f"mixed fields {self.field} and {other.field}; embed explicitly")

    # -- arithmetic --

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FFElem(self.field, tuple((a + b) % p for a, b in zip(self.digits, other.digits)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FFElem(self.field, tuple((a - b) % p for a, b in zip(self.digits, other.digits)))

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple((-a) % p for a in self.digits))

    def __mul__(self, other):
        self._check(other)
        F = self.field
        prod = _poly_mul(self.digits, other.digits, F.p)
        if F.m > 1:
            prod = _poly_mod(prod, F.modulus, F.p)
        digits = tuple(prod) + (0,) * (F.m - len(prod))
        return FFElem(F, digits)

    def inverse(self) -> "FFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in " + repr(self.field))
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        F = self.field
        if e < 0:
            return self.inverse() ** (-e)
        r = F.one()
        base = self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    # -- Frobenius structure --

    def frobenius(self, e: int = 1) -> "FFElem":
        """x^(p^e); e may be negative (p-th roots), using x^(p^m) = x."""
        e %= self.field.m
        out = self
        for _ in range(e):
            out = out ** self.field.p
        return out

    def pth_root(self) -> "FFElem":
        return self.frobenius(-1)

    def trace(self) -> "FFElem":
        """Trace to the prime field, as an element of this field."""
        acc = self
        x = self
        for _ in range(self.field.m - 1):
            x = x.frobenius()
            acc = acc + x
        return acc

    # -- serialization --

    def to_json(self):
        return {"p": self.field.p, "m": self.field.m, "digits": list(self.digits)}


def elem_from_json(obj, field: GF | None = None) -> FFElem:
    if isinstance(obj, dict):
        F = GF(obj["p"], obj.get("m", 1))
        if field is not None and F is not field:
            raise FieldError(f"element field {F} does not match expected {field}")
        return F(obj["digits"])
    if isinstance(obj, int):
        if field is None:
            raise FieldError("bare integer element needs an explicit field")
        return field(obj)
    if isinstance(obj, list):
        if field is None:
            raise FieldError("digit-list element needs an explicit field")
        return field(obj)
    raise FieldError(f"cannot parse field element from {obj!r}")


# -- Moore-matrix interpolation data ------------------------------------------

@dataclass(frozen=True)
class MooreData:
    """Basis a_1..a_d of GF(p^d) and coefficients c_1..c_d with
    sum_i c_i a_i^(p^j) = 1 if j = 0 (mod d) else 0, for all j >= 0."""

    field: GF
    basis: tuple
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.basis)


def _solve_linear(rows, rhs, field: GF):
    """Gaussian elimination over `field`; rows is a list of lists of FFElem."""
    n = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise FieldError("singular linear system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def moore_basis(p: int, d: int) -> MooreData:
    """Choose a_1..a_d as the power basis 1, g, ..., g^(d-1) of GF(p^d) and
    solve the Moore system for c_1..c_d.  Deterministic for fixed (p, d)."""
    if d < 1:
        raise FieldError(f"degree must be >= 1, got {d}")
    K = GF(p, d)
    g = K.gen()
    basis = tuple(g ** i for i in range(d))
    # rows indexed by j: sum_i c_i a_i^(p^j) = delta_{j,0}
    rows = [[a.frobenius(j) for a in basis] for j in range(d)]
    rhs = [K.one() if j == 0 else K.zero() for j in range(d)]
    coeffs = tuple(_solve_linear(rows, rhs, K))
    return MooreData(K, basis, coeffs)


def artin_schreier_root(c: FFElem):
    """A root of x^p - x = c in c's field, or None when there is none.

    Solvable exactly when the trace of c to F_p vanishes."""
    F = c.field
    if F.q > _SEARCH_CAP:
        raise FieldError(f"root search in {F} exceeds supported size")
    for x in F.elements():
        if x.frobenius() - x == c:
            return x
    return None


def artin_schreier_root_extending(c: FFElem):
    """Root of x^p - x = c, extending to GF(p, m*p) when needed.

    Returns (root, field); the extension always suffices because the trace
    from GF(p^(mp)) of an element of GF(p^m) is p * trace = 0."""
    r = artin_schreier_root(c)
    if r is not None:
        return r, c.field
    F = c.field
    if F.m * F.p > MAX_M:
        raise FieldError(
            f"Artin-Schreier root of {c!r} needs GF({F.p}^{F.m * F.p}), beyond the supported table"
        )
    big = GF(F.p, F.m * F.p)
    cc = F.embed_into(big)(c)
    r = artin_schreier_root(cc)
    if r is None:
        raise FieldError("no Artin-Schreier root in the degree-p extension; impossible")
    return r, big

"""Exact polynomial algebra over the rationals.

``Poly`` is a dense univariate polynomial, ``BiPoly`` a sparse bivariate one.
Coefficients are ``int`` or ``fractions.Fraction``; nothing here ever touches
floating point.  The module also carries the combinatorial number machinery
(Stirling numbers, Bell polynomials), changes of basis between the power,
falling-factorial, rising-factorial and shifted-binomial bases, and exact
real-root counting with Sturm chains.
"""

from __future__ import annotations

import enum
import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from numbers import Rational
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Poly",
    "BiPoly",
    "Basis",
    "X",
    "ONE",
    "ZERO",
    "stirling2",
    "stirling1_unsigned",
    "bell_poly",
    "falling",
    "rising",
    "binomial_poly",
    "convert_basis",
    "basis_poly",
    "sturm_chain",
    "sturm_real_roots",
    "real_root_count",
    "all_roots_real",
    "root_multiplicity_at",
    "squarefree_parts",
    "isolate_real_roots",
    "series_coeffs",
    "gen_binomial",
]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _is_scalar(v) -> bool:
    return isinstance(v, (int, Fraction, Rational)) and not isinstance(v, bool)


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    # construction helpers
    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    # basic queries
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __iter__(self) -> Iterator:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if _is_scalar(other):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # arithmetic
    def __add__(self, other) -> "Poly":
        if _is_scalar(other):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        if _is_scalar(other):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if _is_scalar(other):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c) -> "Poly":
        if not _is_scalar(c):
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("division by zero scalar")
        return Poly([Fraction(x) / c for x in self.coeffs])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        db = other.degree
        lb = Fraction(other.lc())
        if len(rem) - 1 < db:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lb
            quot[k] = c
            if c:
                for j, cb in enumerate(other.coeffs):
                    rem[k + j] -= c * cb
        return Poly(quot), Poly(rem[:db] if db > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar or a ``Poly``/``BiPoly``."""
        if not self.coeffs:
            return 0 if _is_scalar(x) else x * 0
        acc = self.coeffs[-1]
        if not _is_scalar(x):
            acc = x * 0 + acc
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return _norm(acc) if _is_scalar(acc) else acc

    evaluate = __call__

    def compose(self, inner: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, k: int) -> "Poly":
        """Multiply by ``x**k``."""
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else Poly()

    def monic(self) -> "Poly":
        return self / self.lc()

    def content_primitive(self) -> "Poly":
        """Scale to an integer polynomial with coprime coefficients and positive lead."""
        if not self.coeffs:
            return self
        fr = [Fraction(c) for c in self.coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return Poly([c // g for c in ints])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def to_bipoly(self, var: int = 0) -> "BiPoly":
        if var == 0:
            return BiPoly({(i, 0): c for i, c in enumerate(self.coeffs)})
        return BiPoly({(0, i): c for i, c in enumerate(self.coeffs)})

    # presentation
    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return self.pretty()

    def pretty(self, var: str = "x") -> str:
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            terms.append(_term(c, [(var, i)]))
        return _join_terms(terms)

    def to_json(self, basis: "Basis | None" = None) -> dict:
        b = basis or Basis.POWER
        return {
            "basis": b.value,
            "coeffs": [[Fraction(c).numerator, Fraction(c).denominator] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Poly":
        coeffs = [Fraction(n, d) for n, d in obj["coeffs"]]
        basis = Basis(obj.get("basis", Basis.POWER.value))
        if basis is not Basis.POWER:
            p = max(len(coeffs) - 1, 0)
            coeffs = convert_basis(coeffs, basis, Basis.POWER, p)
        return cls(coeffs)


def _term(c, powers: Sequence[tuple[str, int]]) -> tuple[bool, str]:
    mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in powers if k)
    neg = c < 0
    a = -c if neg else c
    if not mono:
        return neg, str(a)
    if a == 1:
        return neg, mono
    return neg, f"{a}{mono}" if isinstance(a, int) else f"({a}){mono}"


def _join_terms(terms: list[tuple[bool, str]]) -> str:
    if not terms:
        return "0"
    neg, body = terms[0]
    out = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


X = Poly([0, 1])
ONE = Poly([1])
ZERO = Poly()


class BiPoly:
    """Sparse polynomial in two variables: ``{(i, j): c}`` for ``c x^i y^j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[tuple[int, int], object] = {
            k: _norm(v) for k, v in (terms or {}).items() if v != 0
        }

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if _is_scalar(other):
            return self.terms == BiPoly.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "BiPoly":
        if _is_scalar(other):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "BiPoly":
        if _is_scalar(other):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other) -> "BiPoly":
        if _is_scalar(other):
            return BiPoly({k: v * other for k, v in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiPoly":
        result, base = BiPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c) -> "BiPoly":
        if c == 0:
            raise ZeroDivisionError("division by zero scalar")
        return BiPoly({k: Fraction(v) / c for k, v in self.terms.items()})

    def evaluate(self, x, y):
        """Evaluate at scalars (or any ring elements supporting ``*`` and ``**``)."""
        total = 0
        for (i, j), c in self.terms.items():
            total = total + c * (x**i) * (y**j)
        return _norm(total) if _is_scalar(total) else total

    __call__ = evaluate

    def substitute_y(self, value) -> Poly:
        """Substitute ``y := value`` (scalar or ``Poly`` in x); returns a ``Poly`` in x."""
        out = Poly()
        for (i, j), c in self.terms.items():
            out = out + Poly.monomial(i, c) * (value**j if not _is_scalar(value) else Poly([value**j]))
        return out

    def substitute_x(self, value) -> Poly:
        """Substitute ``x := value``; returns a ``Poly`` in y."""
        return self.swap().substitute_y(value)

    def swap(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), 0)

    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[int, int, object]]:
        return [(i, j, self.terms[(i, j)]) for i, j in sorted(self.terms)]

    def __repr__(self) -> str:
        return f"BiPoly({dict(sorted(self.terms.items()))!r})"

    def __str__(self) -> str:
        return self.pretty()

    def pretty(self, xname: str = "x", yname: str = "y") -> str:
        keys = sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0]))
        return _join_terms([_term(self.terms[k], [(xname, k[0]), (yname, k[1])]) for k in keys])

    def to_json(self) -> dict:
        return {
            "terms": [
                [i, j, Fraction(c).numerator, Fraction(c).denominator]
                for i, j, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BiPoly":
        return cls({(i, j): Fraction(n, d) for i, j, n, d in obj["terms"]})


# ---------------------------------------------------------------------------
# Stirling numbers and Bell polynomials

_stirling_lock = threading.Lock()
_S2: list[list[int]] = [[1]]
_C1: list[list[int]] = [[1]]


def _extend(table: list[list[int]], p: int, first_kind: bool) -> None:
    with _stirling_lock:
        while len(table) <= p:
            m = len(table) - 1
            prev = table[m]
            row = [0] * (m + 2)
            for k in range(1, m + 2):
                left = prev[k - 1]
                right = prev[k] if k <= m else 0
                mult = m if first_kind else k
                row[k] = mult * right + left
            table.append(row)


def stirling2(p: int, k: int) -> int:
    """Number of partitions of a ``p``-set into ``k`` nonempty blocks."""
    if p < 0 or k < 0:
        raise ValueError("Stirling numbers need non-negative arguments")
    if k > p:
        return 0
    _extend(_S2, p, first_kind=False)
    return _S2[p][k]


def stirling1_unsigned(p: int, k: int) -> int:
    """Unsigned Stirling number of the first kind (permutations with ``k`` cycles)."""
    if p < 0 or k < 0:
        raise ValueError("Stirling numbers need non-negative arguments")
    if k > p:
        return 0
    _extend(_C1, p, first_kind=True)
    return _C1[p][k]


@lru_cache(maxsize=None)
def bell_poly(p: int) -> Poly:
    return Poly([stirling2(p, k) for k in range(p + 1)])


@lru_cache(maxsize=None)
def falling(i: int) -> Poly:
    """``(x)_i = x(x-1)...(x-i+1)``."""
    return Poly.from_roots(range(i))


@lru_cache(maxsize=None)
def rising(i: int) -> Poly:
    """``<x>_i = x(x+1)...(x+i-1)``."""
    return Poly.from_roots(range(0, -i, -1))


@lru_cache(maxsize=None)
def binomial_poly(shift: int, p: int) -> Poly:
    """``C(x + shift, p)`` as a polynomial in x."""
    return Poly.from_roots(range(-shift, -shift + p)) / factorial(p)


def gen_binomial(a, k: int):
    """Generalised binomial ``C(a, k) = (a)_k / k!`` for any rational ``a``."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= a - i
    return _norm(Fraction(num) / factorial(k))


# ---------------------------------------------------------------------------
# Bases


class Basis(enum.Enum):
    POWER = "power"
    FALLING = "falling"
    RISING = "rising"
    SHIFTED_BINOMIAL = "shifted_binomial"


def basis_poly(tag: Basis, i: int, p: int) -> Poly:
    """The ``i``-th basis element of ``tag`` (``p`` only matters for shifted binomials)."""
    if tag is Basis.POWER:
        return Poly.monomial(i)
    if tag is Basis.FALLING:
        return falling(i)
    if tag is Basis.RISING:
        return rising(i)
    return binomial_poly(p - i, p)


@lru_cache(maxsize=None)
def _to_power_matrix(tag: Basis, p: int) -> tuple[tuple, ...]:
    return tuple(
        tuple(basis_poly(tag, i, p)[k] for k in range(p + 1)) for i in range(p + 1)
    )


@lru_cache(maxsize=None)
def _from_power_matrix(tag: Basis, p: int) -> tuple[tuple, ...]:
    # row k: coefficients of x^k in the target basis.
    if tag is Basis.POWER:
        return tuple(tuple(1 if i == k else 0 for i in range(p + 1)) for k in range(p + 1))
    if tag is Basis.FALLING:
        return tuple(tuple(stirling2(k, i) for i in range(p + 1)) for k in range(p + 1))
    if tag is Basis.RISING:
        return tuple(
            tuple((-1) ** (k - i) * stirling2(k, i) for i in range(p + 1)) for k in range(p + 1)
        )
    # shifted binomial basis is triangular the other way; invert exactly
    return _invert_to_power(tag, p)


def _invert_to_power(tag: Basis, p: int) -> tuple[tuple, ...]:
    # Solve M^T a = e_k for each power x^k via Gaussian elimination over Q.
    n = p + 1
    m = [[Fraction(_to_power_matrix(tag, p)[i][k]) for i in range(n)] for k in range(n)]
    inv = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = m[col][col]
        m[col] = [v / f for v in m[col]]
        inv[col] = [v / f for v in inv[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                g = m[r][col]
                m[r] = [a - g * b for a, b in zip(m[r], m[col])]
                inv[r] = [a - g * b for a, b in zip(inv[r], inv[col])]
    # inv maps power-coefficient vectors to basis vectors: basis = inv @ power
    return tuple(tuple(_norm(inv[i][k]) for i in range(n)) for k in range(n))


def convert_basis(coeffs: Sequence, src: Basis, dst: Basis, p: int) -> list:
    """Re-express a coefficient vector of length ``<= p + 1`` from ``src`` to ``dst``."""
    if len(coeffs) > p + 1:
        raise ValueError("coefficient vector longer than p + 1")
    vec = list(coeffs) + [0] * (p + 1 - len(coeffs))
    if src is dst:
        return vec
    power = [0] * (p + 1)
    to_pow = _to_power_matrix(src, p)
    for i, c in enumerate(vec):
        if c:
            row = to_pow[i]
            for k in range(p + 1):
                if row[k]:
                    power[k] += c * row[k]
    if dst is Basis.POWER:
        return [_norm(c) for c in power]
    from_pow = _from_power_matrix(dst, p)
    out = [0] * (p + 1)
    for k, c in enumerate(power):
        if c:
            row = from_pow[k]
            for i in range(p + 1):
                if row[i]:
                    out[i] += c * row[i]
    return [_norm(c) for c in out]


# ---------------------------------------------------------------------------
# Real roots


def _prem_sturm_next(a: Poly, b: Poly) -> Poly:
    r = a % b
    return (-r).content_primitive() * (1 if (-r).lc() > 0 else -1) if not r.is_zero() else r


def sturm_chain(f: Poly) -> list[Poly]:
    """Sturm sequence of ``f`` with each member scaled by a positive constant."""
    if f.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    p0 = f.content_primitive()
    if f.lc() < 0:
        p0 = -p0
    chain = [p0]
    d = f.derivative()
    if d.is_zero():
        return chain
    p1 = d.content_primitive() * (1 if d.lc() > 0 else -1)
    chain.append(p1)
    while True:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        nxt = -r
        prim = nxt.content_primitive()
        if nxt.lc() < 0:
            prim = -prim
        chain.append(prim)
    return chain


def _sign_changes(values: Iterable) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_inf(p: Poly, positive: bool) -> int:
    lc = p.lc()
    s = 1 if lc > 0 else -1
    if not positive and p.degree % 2 == 1:
        s = -s
    return s


def _variations(chain: list[Poly], x) -> int:
    if x == "+inf":
        return _sign_changes(_sign_at_inf(p, True) for p in chain)
    if x == "-inf":
        return _sign_changes(_sign_at_inf(p, False) for p in chain)
    return _sign_changes(p(x) for p in chain)


def sturm_real_roots(f: Poly, interval: tuple | None = None) -> int:
    """Number of *distinct* real roots of ``f`` in ``(a, b]`` (whole line if omitted)."""
    chain = sturm_chain(f)
    if interval is None:
        a, b = "-inf", "+inf"
    else:
        a, b = interval
        a = "-inf" if a is None else Fraction(a)
        b = "+inf" if b is None else Fraction(b)
    return _variations(chain, a) - _variations(chain, b)


def squarefree_parts(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's square-free decomposition: ``f = c * prod(g_i ** i)``."""
    if f.is_zero():
        raise ValueError("square-free decomposition of zero")
    if f.degree <= 0:
        return []
    parts = []
    df = f.derivative()
    a = f.gcd(df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = b.gcd(d)
        if g.degree > 0:
            parts.append((g, i))
        b = b // g
        c = d // g
        d = c - b.derivative()
        i += 1
    return parts


def real_root_count(f: Poly) -> int:
    """Real roots of ``f`` counted with multiplicity."""
    return sum(mult * sturm_real_roots(g) for g, mult in squarefree_parts(f))


def all_roots_real(f: Poly) -> bool:
    if f.is_zero():
        raise ValueError("realness of the zero polynomial is undefined")
    return real_root_count(f) == f.degree


def root_multiplicity_at(f: Poly, r) -> int:
    if f.is_zero():
        raise ValueError("multiplicity in the zero polynomial")
    lin = Poly([-Fraction(r), 1])
    k = 0
    while True:
        q, rem = f.divmod(lin)
        if not rem.is_zero():
            return k
        f, k = q, k + 1


def _cauchy_bound(f: Poly) -> Fraction:
    lc = Fraction(f.lc())
    return 1 + max((abs(Fraction(c) / lc) for c in f.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(f: Poly, width=Fraction(1, 10**8), interval: tuple | None = None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals ``(a, b]``, each holding exactly one distinct real root.

    Intervals are bisected until narrower than ``width``.  Restricting to
    ``interval`` keeps only roots inside that half-open range.
    """
    g = f // f.gcd(f.derivative()) if f.degree > 0 else f
    chain = sturm_chain(g)
    if interval is None:
        bnd = _cauchy_bound(g)
        lo, hi = -bnd, bnd
    else:
        lo, hi = Fraction(interval[0]), Fraction(interval[1])
    width = Fraction(width)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi, _variations(chain, lo) - _variations(chain, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and b - a <= width:
            out.append((a, b))
            continue
        m = (a + b) / 2
        left = _variations(chain, a) - _variations(chain, m)
        stack.append((m, b, n - left))
        stack.append((a, m, left))
    return sorted(out)


def series_coeffs(numerator: Poly, p: int, k_max: int) -> list:
    """First ``k_max + 1`` coefficients of ``numerator / (1 - x)^(p + 1)``."""
    if p < 0:
        raise ValueError("p must be non-negative")
    out = []
    for k in range(k_max + 1):
        out.append(
            _norm(sum(numerator[i] * comb(p + k - i, p) for i in range(0, min(k, numerator.degree) + 1)))
        )
    return out

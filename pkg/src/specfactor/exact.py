"""Exact integer characteristic polynomials and real-root comparison.

Floats order two spectral radii only when their certified enclosures are
disjoint.  Everything else lands here: monic integer characteristic
polynomials (Faddeev-LeVerrier, all divisions exact), Sturm-sequence root
counting over rationals, bisection isolation of the largest real root, and
an exact three-way comparison that detects genuine equality through the
polynomial gcd instead of ever trusting float coincidence.

Sturm chains are normalized to primitive integer polynomials (positive
scaling preserves signs), so sign evaluations at a rational num/den reduce
to pure integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from .graphs import Graph


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial; coeffs[i] is the coefficient of x^i."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("empty coefficient list")
        if self.coeffs[-1] != 1:
            raise ValueError("polynomial is not monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def pretty(self, var: str = "x") -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                body = mag + (var if k == 1 else f"{var}^{k}")
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign0, body0 = terms[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def char_poly_exact(g: Graph) -> IntPolynomial:
    """Characteristic polynomial of the adjacency matrix, exactly.

    Faddeev-LeVerrier recurrence in arbitrary-precision integers:
    M_1 = A, c_{n-1} = -tr(M_1); M_k = A M_{k-1} + c_{n-k+1} I,
    c_{n-k} = -tr(A M_k... ) / k -- every division is exact.
    """
    n = g.n
    if n == 0:
        raise ValueError("characteristic polynomial needs n >= 1")
    a_rows = [[g.adj[i] >> j & 1 for j in range(n)] for i in range(n)]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m_rows = [row[:] for row in a_rows]
    for k in range(1, n + 1):
        tr = sum(m_rows[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("inexact division in Faddeev-LeVerrier")
        ck = -tr // k
        coeffs[n - k] = ck
        if k == n:
            break
        for i in range(n):
            m_rows[i][i] += ck
        nxt = [[0] * n for _ in range(n)]
        for i in range(n):
            ai = a_rows[i]
            out = nxt[i]
            for t in range(n):
                ait = ai[t]
                if ait:
                    mt = m_rows[t]
                    for j in range(n):
                        out[j] += mt[j]
        m_rows = nxt
    return IntPolynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# primitive-integer polynomial helpers (coefficients ascending)


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c: list[int]) -> int:
    acc = 0
    for v in c:
        acc = _int_gcd(acc, abs(v))
    return acc or 1


def _to_primitive(c: list[Fraction]) -> list[int]:
    """Scale by a positive rational to primitive integer coefficients."""
    den = 1
    for v in c:
        den = den * v.denominator // _int_gcd(den, v.denominator)
    ints = [int(v * den) for v in c]
    g = _content(ints)
    return [v // g for v in ints]


def _deriv(c: list[int]) -> list[int]:
    return [i * c[i] for i in range(1, len(c))]


def _rem_primitive(a: list[int], b: list[int]) -> list[int]:
    """Primitive remainder of a by b over the rationals."""
    r = [Fraction(v) for v in a]
    d = len(b) - 1
    lead = Fraction(b[-1])
    while len(r) - 1 >= d and _trim(r):
        shift = len(r) - 1 - d
        q = r[-1] / lead
        for i, bv in enumerate(b):
            r[shift + i] -= q * bv
        r.pop()
        _trim(r)
    if not r:
        return []
    return _to_primitive(r)


def sturm_chain(c: list[int]) -> list[list[int]]:
    """Canonical Sturm chain of a squarefree-or-not integer polynomial."""
    chain = [list(c)]
    d = _trim(_deriv(c))
    if d:
        chain.append(d)
        while True:
            rem = _rem_primitive(chain[-2], chain[-1])
            if not rem:
                break
            chain.append([-v for v in rem])
            if len(chain[-1]) == 1:
                break
    return chain


def _sign_at(c: list[int], num: int, den: int) -> int:
    """Sign of the polynomial at num/den (den > 0) in pure integers.

    Homogenized Horner: evaluates sum c_i num^i den^(deg-i), which has the
    same sign as the polynomial value.
    """
    it = reversed(c)
    acc = next(it)
    dp = 1
    for coeff in it:
        dp *= den
        acc = acc * num + coeff * dp
    return (acc > 0) - (acc < 0)


def _variations(chain: list[list[int]], num: int, den: int) -> int:
    signs = [s for s in (_sign_at(c, num, den) for c in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _divide_out_root(c: list[Fraction], root: Fraction) -> list[Fraction]:
    """Exact synthetic division by (x - root); remainder must vanish."""
    out = [Fraction(0)] * (len(c) - 1)
    acc = Fraction(0)
    for i in range(len(c) - 1, 0, -1):
        acc = acc * root + c[i]
        out[i - 1] = acc
    rem = acc * root + c[0]
    if rem != 0:
        raise ArithmeticError("division by non-root")
    return out


def _eval_fraction(c, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc


def count_roots_open(c: list[int], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots strictly inside (lo, hi).

    Roots sitting exactly on an endpoint are divided out first so the
    classical Sturm count applies with non-root endpoints.
    """
    if hi <= lo:
        return 0
    work = [Fraction(v) for v in c]
    for endpoint in (lo, hi):
        while len(work) > 1 and _eval_fraction(work, endpoint) == 0:
            work = _divide_out_root(work, endpoint)
    ints = _to_primitive(work)
    if len(ints) == 1:
        return 0
    chain = sturm_chain(ints)
    va = _variations(chain, lo.numerator, lo.denominator)
    vb = _variations(chain, hi.numerator, hi.denominator)
    return va - vb


def poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of two integer polynomials (positive leading sign)."""
    x, y = list(a), list(b)
    _trim(x)
    _trim(y)
    while y:
        x, y = y, _rem_primitive(x, y)
    if not x:
        return []
    if x[-1] < 0:
        x = [-v for v in x]
    return x


# ---------------------------------------------------------------------------
# largest real root: isolation state and exact comparison


def root_upper_bound(c: list[int]) -> Fraction:
    """Cauchy bound: strictly above every real root magnitude."""
    lead = abs(c[-1])
    biggest = max((abs(v) for v in c[:-1]), default=0)
    return Fraction(biggest, lead) + 2


class _LargestRoot:
    """Bisection state for the largest real root of an integer polynomial.

    Holds either an exact rational value or an open interval (lo, hi) that
    contains the largest root and no root at or above hi.  ``isolate``
    shrinks the interval until it contains exactly one distinct root, the
    precondition for gcd-based equality checks.
    """

    def __init__(self, coeffs: tuple[int, ...]) -> None:
        self.poly = list(coeffs)
        self.chain = sturm_chain(self.poly)
        bound = root_upper_bound(self.poly)
        self.lo = -bound
        self.hi = bound
        self.exact: Fraction | None = None
        if count_roots_open(self.poly, self.lo, self.hi) == 0:
            raise ArithmeticError("polynomial has no real root")

    def _count(self, lo: Fraction, hi: Fraction) -> int:
        if _eval_fraction(self.poly, lo) == 0 or _eval_fraction(self.poly, hi) == 0:
            return count_roots_open(self.poly, lo, hi)
        return _variations(self.chain, lo.numerator, lo.denominator) - _variations(
            self.chain, hi.numerator, hi.denominator
        )

    def refine_once(self) -> None:
        if self.exact is not None:
            return
        mid = (self.lo + self.hi) / 2
        above = self._count(mid, self.hi)
        if _eval_fraction(self.poly, mid) == 0:
            if above == 0:
                self.exact = mid
                self.lo = self.hi = mid
            else:
                self.lo = mid
        elif above >= 1:
            self.lo = mid
        else:
            self.hi = mid

    def isolate(self) -> None:
        while self.exact is None and self._count(self.lo, self.hi) > 1:
            self.refine_once()

    def contains(self, x: Fraction) -> bool:
        return self.lo < x < self.hi


def compare_largest_roots(p: IntPolynomial, q: IntPolynomial) -> int:
    """-1, 0 or +1 comparing the largest real roots of p and q, exactly.

    Identical polynomials short-circuit to equality.  Otherwise both roots
    are isolated and refined; equality is recognized when gcd(p, q) has a
    root inside the shared isolating interval (that root then *is* both
    largest roots), and once the gcd count says the roots differ the loop
    only needs to refine until the intervals separate.
    """
    if p.coeffs == q.coeffs:
        return 0
    a = _LargestRoot(p.coeffs)
    b = _LargestRoot(q.coeffs)
    a.isolate()
    b.isolate()
    g = poly_gcd(list(p.coeffs), list(q.coeffs))
    can_be_equal = len(g) > 1
    while True:
        if a.exact is not None and b.exact is not None:
            return (a.exact > b.exact) - (a.exact < b.exact)
        if a.exact is not None:
            t = a.exact
            if _eval_fraction(b.poly, t) == 0 and b.contains(t):
                return 0
            while b.exact is None and b.contains(t):
                b.refine_once()
            if b.exact is not None:
                return (t > b.exact) - (t < b.exact)
            return -1 if t <= b.lo else 1
        if b.exact is not None:
            return -compare_largest_roots(q, p)
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        if can_be_equal:
            jlo = max(a.lo, b.lo)
            jhi = min(a.hi, b.hi)
            if jlo < jhi and count_roots_open(g, jlo, jhi) >= 1:
                return 0
            can_be_equal = False
        a.refine_once()
        b.refine_once()

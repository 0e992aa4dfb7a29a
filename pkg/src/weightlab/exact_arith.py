"""Exact rational arithmetic: binomials, Gamma ratios, fraction-free elimination.

Everything here works over :class:`fractions.Fraction`; there is no floating
point anywhere in the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction


class DivisionByZero(ZeroDivisionError):
    pass


class NotSquare(ValueError):
    pass


class Singular(ArithmeticError):
    pass


def Q(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip().replace("−", "-"))
    raise TypeError(f"cannot read {value!r} as a rational")


def fmt(q: Fraction) -> str:
    """Serialize as "p/q", dropping the denominator when it is 1."""
    q = Q(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_integral(q: Fraction) -> bool:
    return Q(q).denominator == 1


def binom_general(x, i: int) -> Fraction:
    """x(x-1)...(x-i+1)/i! for rational x and i >= 0."""
    if i < 0:
        raise ValueError("i must be non-negative")
    x = Q(x)
    out = Fraction(1)
    for k in range(i):
        out = out * (x - k) / (k + 1)
    return out


def gamma_ratio(nu, ell: int) -> Fraction:
    """Gamma(nu+1)/Gamma(nu+ell+1), written as a finite product."""
    nu = Q(nu)
    out = Fraction(1)
    if ell >= 0:
        for k in range(1, ell + 1):
            if nu + k == 0:
                raise DivisionByZero(f"factor nu+{k} vanishes at nu={fmt(nu)}")
            out /= nu + k
    else:
        for k in range(0, -ell):
            out *= nu - k
    return out


def rational_power(base, exponent) -> Fraction | None:
    """base**exponent when the result is rational, else None."""
    base, exponent = Q(base), Q(exponent)
    if exponent.denominator == 1:
        if base == 0 and exponent < 0:
            raise DivisionByZero("0 to a negative power")
        return base ** exponent.numerator
    if base <= 0:
        return None
    q = exponent.denominator
    num = _exact_root(base.numerator, q)
    den = _exact_root(base.denominator, q)
    if num is None or den is None:
        return None
    return Fraction(num, den) ** exponent.numerator


def _exact_root(n: int, q: int) -> int | None:
    lo, hi = 0, 1
    while hi ** q <= n:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** q <= n:
            lo = mid
        else:
            hi = mid
    return lo if lo ** q == n else None


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial, coefficients lowest degree first."""

    coeffs: tuple

    def __post_init__(self):
        c = [Q(a) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-Q(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        x = Q(x)
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly(tuple(a * Q(other) for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return UniPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def rational_roots(self) -> list:
        """All rational roots (with multiplicity), by the rational root theorem."""
        if not self.coeffs:
            raise ValueError("zero polynomial")
        den = lcm(*(a.denominator for a in self.coeffs))
        ints = [int(a * den) for a in self.coeffs]
        roots = []
        while ints and ints[0] == 0:
            roots.append(Fraction(0))
            ints = ints[1:]
        p = UniPoly(tuple(ints))
        while p.degree > 0:
            found = None
            lead, const = abs(int(p.coeffs[-1])), abs(int(p.coeffs[0]))
            for a in _divisors(const):
                for b in _divisors(lead):
                    for r in (Fraction(a, b), Fraction(-a, b)):
                        if p(r) == 0:
                            found = r
                            break
                    if found is not None:
                        break
                if found is not None:
                    break
            if found is None:
                break
            roots.append(found)
            p = _divide_linear(p, found)
        return sorted(roots)

    def to_json(self) -> list:
        return [fmt(a) for a in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mono = "" if k == 0 else ("mu" if k == 1 else f"mu^{k}")
            mag = abs(a)
            body = fmt(mag) if (mag != 1 or not mono) else ""
            term = body + ("*" if body and mono else "") + mono
            sign = "-" if a < 0 else "+"
            parts.append((sign, term))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])


def _divisors(n: int) -> list:
    n = abs(n)
    if n == 0:
        return [0]
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _divide_linear(p: UniPoly, r: Fraction) -> UniPoly:
    # synthetic division by (mu - r)
    c = list(reversed(p.coeffs))
    out = [c[0]]
    for a in c[1:-1]:
        out.append(a + out[-1] * r)
    return UniPoly(tuple(reversed(out)))


class RationalMatrix:
    """Dense immutable matrix of Fractions."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        data = tuple(tuple(Q(a) for a in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        self.rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r: int, c: int) -> "RationalMatrix":
        return cls([[0] * c for _ in range(r)], c)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "RationalMatrix":
        return cls([[col[i] for col in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return RationalMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def apply(self, v: Sequence) -> list:
        return [sum((a * Q(b) for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c) -> "RationalMatrix":
        c = Q(c)
        return RationalMatrix([[a * c for a in r] for r in self.rows], self.ncols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(c) for c in zip(*self.rows)], self.nrows) if self.nrows else RationalMatrix([], 0)

    def antidiagonal_transpose(self) -> "RationalMatrix":
        """Reflection across the anti-diagonal: entry (i,j) -> (n-1-j, n-1-i)."""
        n, m = self.nrows, self.ncols
        return RationalMatrix([[self.rows[n - 1 - j][m - 1 - i] for j in range(n)] for i in range(m)], n)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def to_json(self) -> list:
        return [[fmt(a) for a in r] for r in self.rows]

    def __repr__(self) -> str:
        return f"RationalMatrix({self.to_json()})"


def _as_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix(m)


def bareiss_echelon(m) -> tuple:
    """Fraction-free row echelon form.

    Rows are first scaled to integer rows, then eliminated with the Bareiss
    recurrence so every intermediate entry stays an integer.  Returns
    (echelon rows as ints, pivot columns).
    """
    m = _as_matrix(m)
    rows = []
    for r in m.rows:
        d = lcm(*(a.denominator for a in r)) if r else 1
        rows.append([int(a * d) for a in r])
    nr, nc = m.nrows, m.ncols
    pivots = []
    prev = 1
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nr):
            ric = rows[i][c]
            rows[i] = [(piv * rows[i][j] - ric * rows[r][j]) // prev for j in range(nc)]
        prev = piv
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m) -> int:
    return len(bareiss_echelon(m)[1])


def kernel_basis(m) -> list:
    """Basis of the right null space {v : m v = 0}; [] means injective."""
    m = _as_matrix(m)
    rows, pivots = bareiss_echelon(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = sum((rows[r][j] * v[j] for j in range(c + 1, m.ncols)), Fraction(0))
            v[c] = -s / rows[r][c]
        basis.append(v)
    return basis


def determinant(m) -> Fraction:
    m = _as_matrix(m)
    if m.nrows != m.ncols:
        raise NotSquare(f"{m.nrows}x{m.ncols}")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    d = lcm(*(a.denominator for r in m.rows for a in r))
    a = [[int(x * d) for x in r] for r in m.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], d ** n)


def solve(m, b) -> list:
    """The unique x with m x = b; raises Singular if none or not unique."""
    m = _as_matrix(m)
    b = [Q(x) for x in b]
    if len(b) != m.nrows:
        raise ValueError("right-hand side has the wrong length")
    aug = RationalMatrix([list(r) + [-bi] for r, bi in zip(m.rows, b)], m.ncols + 1)
    rows, pivots = bareiss_echelon(aug)
    if m.ncols in pivots:
        raise Singular("inconsistent system")
    if len(pivots) < m.ncols:
        raise Singular("solution is not unique")
    x = [Fraction(0)] * m.ncols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = sum((rows[r][j] * x[j] for j in range(c + 1, m.ncols)), Fraction(0)) + rows[r][m.ncols]
        x[c] = -s / rows[r][c]
    return x


def charpoly(m) -> UniPoly:
    """Monic det(mu I - m) by the Faddeev-LeVerrier recursion."""
    m = _as_matrix(m)
    if m.nrows != m.ncols:
        raise NotSquare(f"{m.nrows}x{m.ncols}")
    n = m.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = RationalMatrix.identity(n)
    aux = RationalMatrix.zeros(n, n)
    for k in range(1, n + 1):
        aux = m @ aux + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ aux).trace() / k
    return UniPoly(tuple(coeffs))

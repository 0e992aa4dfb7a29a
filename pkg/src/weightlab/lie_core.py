"""The Lie algebras W1, W2, A1, A2 with exact brackets.

Storage is the basis x^alpha (x_i d_i) of polynomial vector fields plus, for
the A-algebras, the scalar functions x^j.  Brackets go through the
derivation picture: x^alpha (x_i d_i) is the field x^(alpha+e_i) d_i.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator

from .exact_arith import Q, fmt

ALGEBRAS = {"W1": 1, "W2": 2, "A1": 1, "A2": 2}


class AlgebraMismatch(TypeError):
    pass


class BadMonomial(ValueError):
    pass


class BadGenerator(ValueError):
    pass


def rank_of(algebra: str) -> int:
    try:
        return ALGEBRAS[algebra]
    except KeyError:
        raise AlgebraMismatch(f"unknown algebra {algebra!r}") from None


def has_functions(algebra: str) -> bool:
    return algebra.startswith("A")


def _unit(n: int, i: int) -> tuple:
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def check_key(algebra: str, key: tuple) -> None:
    n = rank_of(algebra)
    if key[0] == "v":
        _, alpha, i = key
        if len(alpha) != n or not 1 <= i <= n:
            raise BadMonomial(f"bad vector field {key} for {algebra}")
        e = _add(alpha, _unit(n, i))
        if any(x < 0 for x in e):
            raise BadMonomial(f"x^{alpha} (x{i}d{i}) is not a polynomial vector field")
    elif key[0] == "f":
        if not has_functions(algebra):
            raise AlgebraMismatch(f"{algebra} has no function part")
        if len(key[1]) != n or any(x < 0 for x in key[1]):
            raise BadMonomial(f"bad function monomial {key}")
    else:
        raise BadMonomial(f"unknown monomial kind {key[0]!r}")


def key_root(key: tuple) -> tuple:
    return key[1]


class LieElement:
    """Finite rational combination of basis monomials of one algebra."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: str, terms: dict | None = None, check: bool = True):
        rank_of(algebra)
        clean = {}
        for k, c in (terms or {}).items():
            c = Q(c)
            if c != 0:
                if check:
                    check_key(algebra, k)
                clean[k] = c
        self.algebra = algebra
        self.terms = clean
        self._hash = None

    @property
    def rank(self) -> int:
        return ALGEBRAS[self.algebra]

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def _same(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement) or other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {getattr(other, 'algebra', type(other).__name__)}")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._same(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return LieElement(self.algebra, t, check=False)

    def __neg__(self) -> "LieElement":
        return LieElement(self.algebra, {k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __mul__(self, c) -> "LieElement":
        c = Q(c)
        return LieElement(self.algebra, {k: v * c for k, v in self.terms.items()}, check=False)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self.terms.items())))
        return self._hash

    def roots(self) -> set:
        return {key_root(k) for k in self.terms}

    @property
    def root(self) -> tuple:
        """The root of a homogeneous element."""
        rs = self.roots()
        if len(rs) != 1:
            raise ValueError(f"{self} is not weight-homogeneous")
        return next(iter(rs))

    def monomials(self) -> list:
        return [LieElement(self.algebra, {k: 1}, check=False) for k in sorted(self.terms, key=_order)]

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"LieElement({self.algebra!r}, {format_element(self)!r})"


# constructors


def vf(alpha: Iterable[int], i: int, algebra: str = "W2") -> LieElement:
    """The basis monomial x^alpha (x_i d_i)."""
    return LieElement(algebra, {("v", tuple(alpha), i): 1})


def fn(j: Iterable[int], algebra: str = "A2") -> LieElement:
    """The function x^j (A-algebras only)."""
    return LieElement(algebra, {("f", tuple(j)): 1})


def field(exponent: Iterable[int], i: int, algebra: str = "W2") -> LieElement:
    """The field x^exponent d_i."""
    e = tuple(exponent)
    return vf(_sub(e, _unit(len(e), i)), i, algebra)


def D(i: int, algebra: str = "A1") -> LieElement:
    """D_i = x^(i+1) d."""
    return vf((i,), 1, algebra)


def I(j: int, algebra: str = "A1") -> LieElement:
    """I_j = x^j."""
    return fn((j,), algebra)


def euler(algebra: str = "W2") -> LieElement:
    n = rank_of(algebra)
    return sum((vf((0,) * n, i, algebra) for i in range(2, n + 1)), vf((0,) * n, 1, algebra))


# bracket


def _bracket_keys(n: int, k1: tuple, k2: tuple) -> dict:
    out: dict = {}
    if k1[0] == "f" and k2[0] == "f":
        return out
    if k1[0] == "f":
        return {k: -c for k, c in _bracket_keys(n, k2, k1).items()}
    _, a1, i = k1
    e1 = _add(a1, _unit(n, i))
    if k2[0] == "f":
        j = k2[1]
        if j[i - 1] != 0:
            out[("f", _sub(_add(e1, j), _unit(n, i)))] = Fraction(j[i - 1])
        return out
    _, a2, k = k2
    e2 = _add(a2, _unit(n, k))
    # [x^e1 d_i, x^e2 d_k] = e2_i x^(e1+e2-e_i) d_k - e1_k x^(e1+e2-e_k) d_i
    if e2[i - 1] != 0:
        ex = _sub(_add(e1, e2), _unit(n, i))
        key = ("v", _sub(ex, _unit(n, k)), k)
        out[key] = out.get(key, 0) + e2[i - 1]
    if e1[k - 1] != 0:
        ex = _sub(_add(e1, e2), _unit(n, k))
        key = ("v", _sub(ex, _unit(n, i)), i)
        out[key] = out.get(key, 0) - e1[k - 1]
    return out


def bracket(a: LieElement, b: LieElement) -> LieElement:
    if not isinstance(a, LieElement) or not isinstance(b, LieElement) or a.algebra != b.algebra:
        raise AlgebraMismatch("bracket of elements from different algebras")
    n = a.rank
    out: dict = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in b.terms.items():
            for k, c in _bracket_keys(n, k1, k2).items():
                out[k] = out.get(k, 0) + c1 * c2 * c
    return LieElement(a.algebra, out, check=False)


def ad_powers(a: LieElement, u: LieElement) -> list:
    """[u, ad(a)u, ad(a)^2 u, ...] up to the last nonzero term."""
    out = [u]
    cur = u
    while True:
        cur = bracket(a, cur)
        if cur.is_zero():
            return out
        out.append(cur)
        if len(out) > 64:
            raise ArithmeticError(f"ad({a}) does not look nilpotent on {u}")


def root_of(m: LieElement) -> tuple:
    return m.root


def sigma(e: LieElement) -> LieElement:
    """Swap the indices 1 and 2."""
    if e.rank != 2:
        raise AlgebraMismatch("sigma is defined in rank 2 only")
    out = {}
    for k, c in e.terms.items():
        if k[0] == "v":
            _, (a1, a2), i = k
            out[("v", (a2, a1), 3 - i)] = c
        else:
            j1, j2 = k[1]
            out[("f", (j2, j1))] = c
    return LieElement(e.algebra, out, check=False)


# sl3


SL3_BASIS = ("E01", "E02", "E10", "E20", "E12", "E21", "H01", "H12")
SL3_CONVENTIONS = ("gl2", "transpose", "literal")


def sl3_embed(name: str, convention: str = "transpose") -> LieElement:
    """Image of an sl3 basis element in W2.

    ``transpose`` (default): E_k0 -> -d_k, E_0k -> x_k E, E_ij -> -x_j d_i.
    A homomorphism in which the E_k0 root is -e_k.  ``gl2``: E_ij -> x_i d_j,
    E_0k -> -d_k, E_k0 -> x_k E, also a homomorphism.  ``literal``: the mix
    E_ij -> x_i d_j, E_k0 -> -d_k, E_0k -> x_k E, which is not a
    homomorphism; kept so the discrepancy can be reported.
    H_ij stands for E_ii - E_jj.
    """
    if convention not in SL3_CONVENTIONS:
        raise BadGenerator(f"unknown convention {convention!r}")
    m = re.fullmatch(r"([EH])([0-2])([0-2])", name)
    if not m or m.group(2) == m.group(3):
        raise BadGenerator(f"not an sl3 basis element: {name!r}")
    kind, i, j = m.group(1), int(m.group(2)), int(m.group(3))
    if kind == "H":
        if i > 0 and j > 0:
            return _gl(i, i, convention) - _gl(j, j, convention)
        return bracket(sl3_embed(f"E{i}{j}", convention), sl3_embed(f"E{j}{i}", convention))
    return _gl(i, j, convention)


def _gl(i: int, j: int, convention: str) -> LieElement:
    E = euler("W2")
    if i > 0 and j > 0:
        if convention == "transpose":
            return -field(_unit(2, j), i)
        return field(_unit(2, i), j)
    k = i or j
    if (i == 0) == (convention == "gl2"):
        # E_0k under gl2, E_k0 under the other two
        return -field((0, 0), k)
    return _times_xk(E, k)


def sl3_matrix(name: str) -> list:
    m = re.fullmatch(r"([EH])([0-2])([0-2])", name)
    if not m or m.group(2) == m.group(3):
        raise BadGenerator(f"not an sl3 basis element: {name!r}")
    i, j = int(m.group(2)), int(m.group(3))
    out = [[0] * 3 for _ in range(3)]
    if m.group(1) == "E":
        out[i][j] = 1
    else:
        out[i][i], out[j][j] = 1, -1
    return out


def sl3_bracket(a: str, b: str) -> dict:
    """[a, b] in sl3, written in SL3_BASIS coordinates."""
    A, B = sl3_matrix(a), sl3_matrix(b)
    C = [[sum(A[i][k] * B[k][j] - B[i][k] * A[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    out = {}
    for i in range(3):
        for j in range(3):
            if i != j and C[i][j]:
                out[f"E{i}{j}"] = Fraction(C[i][j])
    # diagonal d = a H01 + b H12 with H01 = (1,-1,0), H12 = (0,1,-1)
    if C[0][0]:
        out["H01"] = Fraction(C[0][0])
    if C[0][0] + C[1][1]:
        out["H12"] = Fraction(C[0][0] + C[1][1])
    return out


def sl3_homomorphism_failures(convention: str = "transpose") -> list:
    """Ordered pairs (a, b) with [Phi a, Phi b] != Phi [a, b]."""
    bad = []
    for a in SL3_BASIS:
        for b in SL3_BASIS:
            rhs = LieElement("W2", {})
            for name, c in sl3_bracket(a, b).items():
                rhs = rhs + sl3_embed(name, convention) * c
            if bracket(sl3_embed(a, convention), sl3_embed(b, convention)) != rhs:
                bad.append((a, b))
    return bad


def _times_xk(e: LieElement, k: int) -> LieElement:
    out = {}
    for key, c in e.terms.items():
        _, alpha, i = key
        out[("v", _add(alpha, _unit(2, k)), i)] = c
    return LieElement(e.algebra, out)


# text form


def _order(key: tuple):
    if key[0] == "v":
        return (0, tuple(-x for x in key[1]), key[2])
    return (1, tuple(-x for x in key[1]), 0)


def _mono_text(algebra: str, key: tuple) -> str:
    n = rank_of(algebra)
    if n == 1:
        return f"D{key[1][0]}" if key[0] == "v" else f"I{key[1][0]}"
    if key[0] == "f":
        return f"x^({key[1][0]},{key[1][1]})"
    _, alpha, i = key
    base = f"x{i}d{i}"
    if alpha == (0, 0):
        return base
    return f"x^({alpha[0]},{alpha[1]}) {base}"


def format_element(e: LieElement) -> str:
    if e.is_zero():
        return "0"
    parts = []
    for key in sorted(e.terms, key=_order):
        c = e.terms[key]
        mag = abs(c)
        body = _mono_text(e.algebra, key)
        text = body if mag == 1 else f"{fmt(mag)} {body}"
        parts.append(("-" if c < 0 else "+", text))
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<coef>[0-9]+(?:/[0-9]+)?)"
    r"|x\^\((?P<pow>[^)]*)\)"
    r"|x(?P<xi>[12])(?:\^(?P<xe>[0-9]+))?"
    r"|d(?P<d>[12])"
    r"|D(?P<D>-?[0-9]+)"
    r"|I(?P<I>[0-9]+)"
    r"|(?P<star>\*)"
    r")"
)


def parse_element(text: str, algebra: str) -> LieElement:
    """Read the canonical text form back, plus shorthands such as "x1d2", "d1",
    "x1^2d1", "D-1", "I2" and "3/2 x^(1,0) x2d2"."""
    n = rank_of(algebra)
    text = text.replace("−", "-").strip()
    if text == "0":
        return LieElement(algebra)
    terms: dict = {}
    for sign, chunk in _split_terms(text):
        coef = Fraction(sign)
        exp = [0] * n
        d = None
        direct = None
        pos = 0
        chunk = chunk.strip()
        while pos < len(chunk):
            m = _TOKEN.match(chunk, pos)
            if not m or m.end() == pos:
                raise BadMonomial(f"cannot parse {chunk[pos:]!r} in {text!r}")
            pos = m.end()
            if m.group("coef"):
                coef *= Q(m.group("coef"))
            elif m.group("pow") is not None:
                vals = [int(v) for v in m.group("pow").replace(" ", "").split(",")]
                if len(vals) != n:
                    raise BadMonomial(f"exponent {vals} has the wrong length for {algebra}")
                exp = [a + b for a, b in zip(exp, vals)]
            elif m.group("xi"):
                exp[int(m.group("xi")) - 1] += int(m.group("xe") or 1)
            elif m.group("d"):
                d = int(m.group("d"))
            elif m.group("D") is not None:
                direct = ("v", (int(m.group("D")),), 1)
            elif m.group("I") is not None:
                direct = ("f", (int(m.group("I")),))
        if direct is not None:
            key = direct
        elif d is None:
            key = ("f", tuple(exp))
        else:
            # a bare x^(a,b) prefix in front of xidi is already the alpha
            key = ("v", tuple(exp[k] - (1 if k == d - 1 else 0) for k in range(n)), d)
        check_key(algebra, key)
        terms[key] = terms.get(key, 0) + coef
    return LieElement(algebra, terms)


def _split_terms(text: str) -> list:
    out, depth, start, sign = [], 0, 0, 1
    i = 0
    if text.startswith("-"):
        sign, start, i = -1, 1, 1
    elif text.startswith("+"):
        start, i = 1, 1
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > start and text[i - 1] in " \t":
            out.append((sign, text[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
        i += 1
    out.append((sign, text[start:]))
    return out


# parabolic subsets of W2 roots live in roots.py; re-exported here
from .roots import (  # noqa: E402
    PARABOLICS, ParabolicSet, UnknownTag, enumerate_parabolics, is_w_root, parabolic, parabolic_set, w_roots,
)

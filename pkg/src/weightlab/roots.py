"""Root sets of W2 and the parabolic subsets P(J) cut out by sl3 root vectors.

A W2 root (a1, a2) is paired with vectors written in the (eps0, eps1, eps2)
basis by giving it a zero eps0 coordinate and using the orthonormal form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator


class UnknownTag(KeyError):
    pass


def is_w_root(alpha: tuple) -> bool:
    """alpha in Delta_W: nonzero, and either all entries >= 0 or exactly one is -1."""
    a1, a2 = alpha
    if alpha == (0, 0):
        return False
    neg = [a for a in alpha if a < 0]
    if not neg:
        return True
    return len(neg) == 1 and neg[0] == -1


def w_roots(radius: int) -> Iterator[tuple]:
    for a1 in range(-1, radius + 1):
        for a2 in range(-1, radius + 1):
            if is_w_root((a1, a2)):
                yield (a1, a2)


def pair(alpha: tuple, s: tuple) -> Fraction:
    """(alpha, s) with alpha a W2 weight and s = (s0, s1, s2)."""
    return Fraction(alpha[0]) * s[1] + Fraction(alpha[1]) * s[2]


E0, E1, E2 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def _v(*terms) -> tuple:
    out = [0, 0, 0]
    for sign, e in terms:
        for k in range(3):
            out[k] += sign * e[k]
    return tuple(out)


# the twelve configurations, in the order (i)..(xii)
PARABOLICS = (
    ("1+", "P(1⁺)", (_v((1, E1), (-1, E0)),)),
    ("1-", "P(1⁻)", (_v((1, E0), (-1, E1)),)),
    ("2+", "P(2⁺)", (_v((1, E2), (-1, E0)),)),
    ("2-", "P(2⁻)", (_v((1, E0), (-1, E2)),)),
    ("12+", "P(12⁺)", (_v((1, E1), (1, E2)),)),
    ("12-", "P(12⁻)", (_v((-1, E1), (-1, E2)),)),
    ("1+,2-", "P(1⁺,2⁻)", (_v((1, E1), (-1, E0)), _v((1, E0), (-1, E2)))),
    ("1-,2+", "P(1⁻,2⁺)", (_v((1, E0), (-1, E1)), _v((1, E2), (-1, E0)))),
    ("2-,12-", "P(2⁻,12⁻)", (_v((1, E0), (-1, E2)), _v((-1, E1), (-1, E2)))),
    ("1+,12+", "P(1⁺,12⁺)", (_v((1, E1), (-1, E0)), _v((1, E1), (1, E2)))),
    ("1-,12-", "P(1⁻,12⁻)", (_v((1, E0), (-1, E1)), _v((-1, E1), (-1, E2)))),
    ("2+,12+", "P(2⁺,12⁺)", (_v((1, E2), (-1, E0)), _v((1, E1), (1, E2)))),
)
ROMAN = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii")


@dataclass(frozen=True)
class ParabolicSet:
    J: tuple
    tag: str = ""
    name: str = ""

    def contains(self, alpha: tuple) -> bool:
        return is_w_root(alpha) and all(pair(alpha, s) <= 0 for s in self.J)

    def is_levi(self, alpha: tuple) -> bool:
        return is_w_root(alpha) and all(pair(alpha, s) == 0 for s in self.J)

    def is_nilrad(self, alpha: tuple) -> bool:
        return self.contains(alpha) and not self.is_levi(alpha)

    def roots(self, radius: int) -> set:
        return {a for a in w_roots(radius) if self.contains(a)}

    def levi_roots(self, radius: int) -> set:
        return {a for a in w_roots(radius) if self.is_levi(a)}

    def nilrad_roots(self, radius: int) -> set:
        return {a for a in w_roots(radius) if self.is_nilrad(a)}

    def cone_contains(self, delta: tuple) -> bool:
        """delta in the lattice cone {(delta, s) <= 0 for s in J} (zero allowed)."""
        return all(pair(delta, s) <= 0 for s in self.J)


def parabolic_set(J) -> ParabolicSet:
    J = tuple(tuple(Fraction(x) for x in s) for s in J)
    for tag, name, vecs in PARABOLICS:
        if set(J) == {tuple(Fraction(x) for x in v) for v in vecs}:
            return ParabolicSet(J, tag, name)
    return ParabolicSet(J)


def parabolic(tag: str) -> ParabolicSet:
    for t, name, vecs in PARABOLICS:
        if t == tag.replace("⁺", "+").replace("⁻", "-").replace(" ", ""):
            return ParabolicSet(tuple(tuple(Fraction(x) for x in v) for v in vecs), t, name)
    raise UnknownTag(tag)


def enumerate_parabolics() -> list:
    return [(name, parabolic(tag)) for tag, name, _ in PARABOLICS]


def axiom_violations(p: ParabolicSet, radius: int) -> list:
    """Brute-force check of the parabolic axioms on the truncated root set."""
    bad = []
    roots = list(w_roots(radius))
    P = p.roots(radius)
    for a in roots:
        neg = (-a[0], -a[1])
        if is_w_root(neg) and a not in P and neg not in P:
            bad.append(("not P or -P", a))
        if p.is_levi(a) and is_w_root(neg) and not p.is_levi(neg):
            bad.append(("levi not symmetric", a))
    for a in P:
        for b in P:
            c = (a[0] + b[0], a[1] + b[1])
            if is_w_root(c) and max(c) <= radius:
                if c not in P:
                    bad.append(("not closed", a, b))
                elif (p.is_nilrad(a) or p.is_nilrad(b)) and not p.is_nilrad(c):
                    bad.append(("nilrad not an ideal", a, b))
    return bad

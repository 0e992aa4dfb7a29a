"""Tensor modules T(nu, lambda, J, c) and their generalized sub/quotients.

A module is realized by a rule deciding which basis vectors x^s (x) v_k
belong to it, so nothing is ever truncated: windows only choose which
weights get reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Iterable

from .exact_arith import Q, fmt, is_integral, solve
from .lie_core import LieElement, rank_of, has_functions, AlgebraMismatch


class NotDominant(ValueError):
    pass


class NoJ(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class BadSpec(ValueError):
    pass


class UnknownFormula(KeyError):
    pass


def weight(values: Iterable) -> tuple:
    return tuple(Q(v) for v in values)


def wfmt(w: tuple) -> str:
    return "(" + ",".join(fmt(x) for x in w) + ")"


# gl2 (or gl1) on L(lambda) with basis v_0..v_n


@dataclass(frozen=True)
class GL2Module:
    lambda1: Fraction
    lambda2: Fraction

    def __post_init__(self):
        d = Q(self.lambda1) - Q(self.lambda2)
        if not is_integral(d) or d < 0:
            raise NotDominant(f"lambda1 - lambda2 = {fmt(d)} is not a non-negative integer")

    @property
    def n(self) -> int:
        return int(Q(self.lambda1) - Q(self.lambda2))

    def weight_of(self, i: int) -> tuple:
        return (Q(self.lambda1) - i, Q(self.lambda2) + i)


def gl2_act(a: int, b: int, i: int, mod: GL2Module) -> list:
    """E_ab v_i as a list of (index, coefficient)."""
    n = mod.n
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"v_{i} with n = {n}")
    if (a, b) == (1, 2):
        return [(i - 1, Fraction(i))] if i > 0 else []
    if (a, b) == (2, 1):
        return [(i + 1, Fraction(n - i))] if i < n else []
    if (a, b) == (1, 1):
        return [(i, Q(mod.lambda1) - i)]
    if (a, b) == (2, 2):
        return [(i, Q(mod.lambda2) + i)]
    raise IndexOutOfRange(f"E_{a}{b}")


# specs


@dataclass(frozen=True)
class TensorModuleSpec:
    algebra: str
    nu: tuple
    lam: tuple
    J: tuple = ()  # sorted pairs (axis, "+"/"-")
    c: Fraction | None = None

    def __post_init__(self):
        n = rank_of(self.algebra)
        object.__setattr__(self, "nu", weight(self.nu))
        object.__setattr__(self, "lam", weight(self.lam))
        if len(self.nu) != n or len(self.lam) != n:
            raise BadSpec(f"{self.algebra} needs weights of length {n}")
        J = self.J.items() if isinstance(self.J, dict) else self.J
        J = tuple(sorted((int(a), str(s)) for a, s in J))
        if len({a for a, _ in J}) != len(J) or any(s not in "+-" or not 1 <= a <= n for a, s in J):
            raise BadSpec(f"bad sign assignment {J}")
        object.__setattr__(self, "J", J)
        if n == 2:
            GL2Module(self.lam[0], self.lam[1])
        integral = self.integral_axes()
        for a, _ in J:
            if a not in integral:
                raise BadSpec(f"axis {a} is not in Int(lambda - nu)")
        if has_functions(self.algebra):
            object.__setattr__(self, "c", Q(self.c if self.c is not None else 0))
        elif self.c is not None:
            raise BadSpec(f"{self.algebra} has no central charge")

    @property
    def rank(self) -> int:
        return rank_of(self.algebra)

    def integral_axes(self) -> tuple:
        return tuple(i + 1 for i in range(self.rank) if is_integral(self.lam[i] - self.nu[i]))

    @property
    def plus(self) -> tuple:
        return tuple(a for a, s in self.J if s == "+")

    @property
    def minus(self) -> tuple:
        return tuple(a for a, s in self.J if s == "-")

    def J_text(self) -> str:
        return ",".join(f"{a}{s}" if self.rank == 2 else s for a, s in self.J)

    def describe(self) -> str:
        nu = wfmt(self.nu) if self.rank == 2 else fmt(self.nu[0])
        lam = wfmt(self.lam) if self.rank == 2 else fmt(self.lam[0])
        parts = [nu, lam]
        if self.J:
            parts.append("(" + self.J_text() + ")")
        if self.c is not None:
            parts.append(f"c={fmt(self.c)}")
        return f"{self.algebra} T(" + ", ".join(parts) + ")"

    def to_json(self) -> dict:
        out = {
            "algebra": self.algebra,
            "nu": [fmt(x) for x in self.nu],
            "lambda": [fmt(x) for x in self.lam],
            "J": [f"{a}{s}" for a, s in self.J],
        }
        if self.c is not None:
            out["c"] = fmt(self.c)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "TensorModuleSpec":
        algebra = data.get("algebra", "W2")
        n = rank_of(algebra)
        J = []
        raw = data.get("J", []) or []
        if isinstance(raw, str):
            raw = [t for t in raw.split(",") if t.strip()]
        for item in raw:
            item = str(item).replace("⁺", "+").replace("⁻", "-").strip()
            if n == 1 and item in "+-":
                J.append((1, item))
            else:
                J.append((int(item[:-1]), item[-1]))
        return cls(algebra, tuple(data["nu"]), tuple(data["lambda"]), tuple(J), data.get("c"))


def spec(algebra: str, nu, lam, J="", c=None) -> TensorModuleSpec:
    """Shorthand: J as "1+,2-" (rank 2) or "+"/"-" (rank 1)."""
    if isinstance(nu, (int, str, Fraction)):
        nu = (nu,)
    if isinstance(lam, (int, str, Fraction)):
        lam = (lam,)
    return TensorModuleSpec.from_json(
        {"algebra": algebra, "nu": nu, "lambda": lam, "J": [j for j in J.split(",") if j], "c": c}
    )


# vectors


class ModuleVector:
    """Finite combination of basis keys (s, k) meaning x^s (x) v_k."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: Q(c) for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def basis(cls, s, k: int = 0) -> "ModuleVector":
        return cls({(weight(s), k): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return ModuleVector(t)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def __mul__(self, c) -> "ModuleVector":
        c = Q(c)
        return ModuleVector({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def weights(self) -> set:
        return {s for s, _ in self.terms}

    def components(self) -> dict:
        out: dict = {}
        for (s, k), c in self.terms.items():
            out.setdefault(s, {})[(s, k)] = c
        return {s: ModuleVector(t) for s, t in out.items()}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (s, k) in sorted(self.terms, key=lambda t: (t[0], t[1])):
            c = self.terms[(s, k)]
            body = f"x^{wfmt(s)} v{k}"
            mag = abs(c)
            parts.append(("-" if c < 0 else "+", body if mag == 1 else f"{fmt(mag)} {body}"))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{a} {b}" for a, b in parts[1:]])

    __repr__ = __str__

    def to_json(self) -> list:
        return [
            {"weight": [fmt(x) for x in s], "index": k, "coeff": fmt(c)}
            for (s, k), c in sorted(self.terms.items())
        ]


def parse_vector(text: str) -> ModuleVector:
    """Read "1/2 x^(1/2,1/3) v0 - x^(3/2,1/3) v1"."""
    import re

    text = text.replace("−", "-").strip()
    pat = re.compile(r"\s*([+-])?\s*([0-9]+(?:/[0-9]+)?)?\s*x\^\(([^)]*)\)\s*(?:v([0-9]+))?")
    out = ModuleVector()
    pos = 0
    while pos < len(text):
        m = pat.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse vector {text[pos:]!r}")
        pos = m.end()
        c = Q(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        s = weight(m.group(3).split(","))
        out = out + ModuleVector({(s, int(m.group(4) or 0)): c})
    return out


# the module


class TensorModule:
    """T(nu, lambda, J, c): the dense module or its J sub/quotient."""

    def __init__(self, spec: TensorModuleSpec):
        self.spec = spec
        self.algebra = spec.algebra
        self.rank = spec.rank
        self.gl = GL2Module(*spec.lam) if self.rank == 2 else None
        self.n = self.gl.n if self.gl else 0
        self.degree = self.n + 1
        self.coset = spec.nu
        self._basis: dict = {}

    def __repr__(self) -> str:
        return self.spec.describe()

    def mu(self, k: int) -> tuple:
        return self.gl.weight_of(k) if self.gl else self.spec.lam

    def in_coset(self, s: tuple) -> bool:
        return len(s) == self.rank and all(is_integral(a - b) for a, b in zip(s, self.coset))

    def membership(self, s: tuple, k: int) -> str:
        mu = self.mu(k)
        ok_plus = all(is_integral(s[a - 1] - mu[a - 1]) and s[a - 1] >= mu[a - 1] for a in self.spec.plus)
        if not self.spec.minus:
            return "in_submodule" if ok_plus else "out"
        ok_minus = all(s[a - 1] < mu[a - 1] for a in self.spec.minus)
        return "in_quotient_basis" if ok_plus and ok_minus else "out"

    def _is_basis(self, s: tuple, k: int) -> bool:
        if not (0 <= k <= self.n) or not self.in_coset(s):
            return False
        return not self.spec.J or self.membership(s, k) != "out"

    def basis_at(self, s: tuple) -> list:
        got = self._basis.get(s)
        if got is None:
            s = weight(s)
            got = [(s, k) for k in range(self.n + 1) if self._is_basis(s, k)]
            self._basis[s] = got
        return got

    def is_basis(self, s: tuple, k: int) -> bool:
        return (s, k) in self.basis_at(s)

    def dim(self, s: tuple) -> int:
        return len(self.basis_at(s))

    # generic module interface

    def weight_basis(self, s: tuple) -> list:
        return [ModuleVector({key: 1}) for key in self.basis_at(s)]

    def coordinates(self, v: ModuleVector, s: tuple) -> list:
        keys = self.basis_at(s)
        extra = set(v.terms) - set(keys)
        if extra:
            raise ValueError(f"vector has components outside the weight space {wfmt(s)}: {extra}")
        return [v.terms.get(key, Fraction(0)) for key in keys]

    def zero(self) -> ModuleVector:
        return ModuleVector()

    def act(self, w: LieElement, m: ModuleVector) -> ModuleVector:
        return tensor_act(w, m, self)

    def __eq__(self, other):
        return isinstance(other, TensorModule) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)


def membership_J(s, i: int, spec: TensorModuleSpec) -> str:
    if not spec.J:
        raise NoJ("this module has no sign assignment J")
    return TensorModule(spec).membership(weight(s), i)


def tensor_act(w: LieElement, m: ModuleVector, mod: TensorModule) -> ModuleVector:
    """The tensor action, followed by projection onto the module's basis."""
    if not isinstance(mod, TensorModule):
        mod = TensorModule(mod)
    if w.algebra != mod.algebra:
        raise AlgebraMismatch(f"{w.algebra} element acting on a {mod.algebra} module")
    out: dict = {}
    rank, gl = mod.rank, mod.gl
    for key, cw in w.terms.items():
        if key[0] == "f":
            j = key[1]
            for (s, k), cm in m.terms.items():
                t = (tuple(a + b for a, b in zip(s, j)), k)
                out[t] = out.get(t, 0) + cw * cm * mod.spec.c
            continue
        _, alpha, i = key
        for (s, k), cm in m.terms.items():
            t = tuple(a + b for a, b in zip(s, alpha))
            c0 = s[i - 1]
            if rank == 1:
                c0 = c0 + alpha[0] * mod.spec.lam[0]
            else:
                for j in (1, 2):
                    if alpha[j - 1] == 0:
                        continue
                    for k2, c in gl2_act(j, i, k, gl):
                        key2 = (t, k2)
                        out[key2] = out.get(key2, 0) + cw * cm * alpha[j - 1] * c
            key1 = (t, k)
            out[key1] = out.get(key1, 0) + cw * cm * c0
    return ModuleVector({key: c for key, c in out.items() if mod.is_basis(*key)})


class TrivialModule:
    """The one-dimensional module on which everything acts by zero."""

    def __init__(self, algebra: str = "W2"):
        self.algebra = algebra
        self.rank = rank_of(algebra)
        self.degree = 1
        self.coset = (Fraction(0),) * self.rank
        self.spec = None

    def __repr__(self):
        return f"{self.algebra} trivial module"

    def in_coset(self, s) -> bool:
        return all(is_integral(a) for a in s)

    def basis_at(self, s) -> list:
        s = weight(s)
        return [(s, 0)] if all(a == 0 for a in s) else []

    def dim(self, s) -> int:
        return len(self.basis_at(s))

    def weight_basis(self, s) -> list:
        return [ModuleVector({key: 1}) for key in self.basis_at(s)]

    def coordinates(self, v, s) -> list:
        return [v.terms.get(key, Fraction(0)) for key in self.basis_at(s)]

    def zero(self) -> ModuleVector:
        return ModuleVector()

    def act(self, w: LieElement, m: ModuleVector) -> ModuleVector:
        if w.algebra != self.algebra:
            raise AlgebraMismatch(f"{w.algebra} element acting on a {self.algebra} module")
        return ModuleVector()


def as_module(obj):
    return TensorModule(obj) if isinstance(obj, TensorModuleSpec) else obj


# windows


@dataclass(frozen=True)
class WeightWindow:
    lo: tuple
    hi: tuple
    margin: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lo", weight(self.lo))
        object.__setattr__(self, "hi", weight(self.hi))
        if len(self.lo) != len(self.hi):
            raise ValueError("lo and hi have different lengths")
        for a, b in zip(self.lo, self.hi):
            if not is_integral(b - a) or b < a:
                raise ValueError("hi - lo must be a non-negative integer vector")
        if self.margin < 0:
            raise ValueError("negative margin")

    @classmethod
    def around(cls, center, radius: int, margin: int = 0) -> "WeightWindow":
        center = weight(center)
        return cls(tuple(c - radius for c in center), tuple(c + radius for c in center), margin)

    @classmethod
    def parse(cls, text: str) -> "WeightWindow":
        """ "lo1,lo2:hi1,hi2:margin" """
        parts = text.replace(" ", "").split(":")
        if len(parts) not in (2, 3):
            raise ValueError(f"bad window {text!r}")
        margin = int(parts[2]) if len(parts) == 3 else 0
        return cls(weight(parts[0].split(",")), weight(parts[1].split(",")), margin)

    def shrink(self, extra: int) -> "WeightWindow":
        return WeightWindow(self.lo, self.hi, self.margin + extra)

    def _points(self, pad: int) -> list:
        ranges = [
            [a + k for k in range(pad, int(b - a) - pad + 1)] for a, b in zip(self.lo, self.hi)
        ]
        return [tuple(p) for p in product(*ranges)]

    def points(self) -> list:
        return self._points(0)

    def interior(self) -> list:
        return self._points(self.margin)

    def contains(self, s, pad: int = 0) -> bool:
        return all(
            is_integral(x - a) and a + pad <= x <= b - pad for x, a, b in zip(s, self.lo, self.hi)
        )

    def in_interior(self, s) -> bool:
        return self.contains(s, self.margin)

    def to_json(self) -> dict:
        return {"lo": [fmt(x) for x in self.lo], "hi": [fmt(x) for x in self.hi], "margin": self.margin}


def character(mod, window: WeightWindow) -> dict:
    mod = as_module(mod)
    out = {}
    for s in window.interior():
        d = mod.dim(s)
        if d:
            out[s] = d
    return out


def support(mod, window: WeightWindow) -> set:
    return set(character(mod, window))


def degree_on(mod, window: WeightWindow) -> int:
    return max(character(mod, window).values(), default=0)


# closed-form characters, expanded as power series on the window

FORMULAS = {
    "1+,2+": ((1, 0), (0, 1)),
    "1+,2-": ((1, 0), (0, -1)),
    "1-,2+": ((-1, 0), (0, 1)),
    "1-,2-": ((-1, 0), (0, -1)),
}


def char_series_expand(formula_id: str, params: dict, window: WeightWindow) -> dict:
    """Coefficients of the closed-form characters on the window interior.

    Quadrant ids "1+,2+" .. "1-,2-" expand
        e^shift ch L(lambda) / ((1 - e^{d1}) (1 - e^{d2}))
    with d_i = +-eps_i and shift = -(sum of the negative d_i); "2-" expands
        (sum_m e^{(nu1 - lambda1 + m) eps1 - eps2}) ch L(lambda) / (1 - e^{-eps2}).
    """
    fid = formula_id.replace("⁺", "+").replace("⁻", "-").replace(" ", "")
    lam = weight(params["lambda"])
    n = int(lam[0] - lam[1])
    chL = [(lam[0] - k, lam[1] + k) for k in range(n + 1)]
    box = window.interior()
    if not box:
        return {}
    lo = [min(p[i] for p in box) for i in range(2)]
    hi = [max(p[i] for p in box) for i in range(2)]
    inside = set(box)
    out: dict = {}

    def bump(s):
        if s in inside:
            out[s] = out.get(s, 0) + 1

    if fid in FORMULAS:
        d1, d2 = FORMULAS[fid]
        shift = tuple(sum(min(d[i], 0) for d in (d1, d2)) for i in range(2))
        span = int(max(hi[0] - lo[0], hi[1] - lo[1]) + 2 * n + 4)
        for w in chL:
            base = (w[0] + shift[0], w[1] + shift[1])
            for a in range(span + 1):
                for b in range(span + 1):
                    bump((base[0] + a * d1[0] + b * d2[0], base[1] + a * d1[1] + b * d2[1]))
        return out
    if fid == "2-":
        nu1 = Q(params["nu"][0])
        first = nu1 - lam[0]
        m_lo = int((lo[0] - first) // 1) - n - 2
        m_hi = int((hi[0] - first) // 1) + n + 2
        span = int(hi[1] - lo[1]) + n + 4
        for w in chL:
            for m in range(m_lo, m_hi + 1):
                for b in range(span + 1):
                    bump((first + m + w[0], -1 + w[1] - b))
        return out
    raise UnknownFormula(formula_id)

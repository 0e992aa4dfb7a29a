import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import non_integers, rationals
from families import FAMILIES, RANK_ONE_VARIANTS, generators_for, interior_basis, window_for
from weightlab.lie_core import AlgebraMismatch, D, I, bracket, fn, parse_element
from weightlab.weight_modules import (
    BadSpec, GL2Module, IndexOutOfRange, ModuleVector, NoJ, NotDominant, TensorModule,
    TensorModuleSpec, TrivialModule, UnknownFormula, WeightWindow, char_series_expand, character,
    degree_on, gl2_act, membership_J, parse_vector, spec, support, tensor_act,
)


def vec(s, k=0):
    return ModuleVector.basis(s, k)


# gl2


def test_gl2_examples():
    L = GL2Module(F(7, 2), F(-1, 2))
    assert gl2_act(1, 2, 0, L) == []
    assert gl2_act(2, 1, 0, L) == [(1, F(4))]
    assert gl2_act(1, 1, 1, L) == [(1, F(5, 2))]
    assert gl2_act(2, 2, 3, L) == [(3, F(5, 2))]
    with pytest.raises(IndexOutOfRange):
        gl2_act(1, 2, 5, L)
    with pytest.raises(NotDominant):
        GL2Module(0, 1)


@given(st.integers(0, 5), rationals())
def test_gl2_relations(n, l2):
    """[E12, E21] = E11 - E22 on every v_i."""
    L = GL2Module(l2 + n, l2)

    def apply(a, b, v):
        out = {}
        for i, c in v.items():
            for j, d in gl2_act(a, b, i, L):
                out[j] = out.get(j, 0) + c * d
        return out

    for i in range(n + 1):
        v = {i: F(1)}
        lhs = apply(1, 2, apply(2, 1, v))
        for j, c in apply(2, 1, apply(1, 2, v)).items():
            lhs[j] = lhs.get(j, 0) - c
        rhs = apply(1, 1, v)
        for j, c in apply(2, 2, v).items():
            rhs[j] = rhs.get(j, 0) - c
        assert {j: c for j, c in lhs.items() if c} == {j: c for j, c in rhs.items() if c}


# the action


def test_tensor_act_examples():
    s = (F(1, 3), F(2, 5))
    lam = (4, 1)
    mod = TensorModule(spec("W2", s, lam))
    for i in range(4):
        assert mod.act(parse_element("x1d1", "W2"), vec(s, i)) == vec(s, i) * s[0]
    i = 1
    t = (s[0] - 1, s[1] + 1)
    want = vec(t, i) * (s[0] - lam[0] + i) + vec(t, i + 1) * (3 - i)
    assert mod.act(parse_element("x2d1", "W2"), vec(s, i)) == want
    lam1 = F(2, 9)
    rank1 = TensorModule(spec("A1", lam1, lam1, "", 5))
    assert rank1.act(D(-1), vec((lam1,))).is_zero()
    a2 = TensorModule(spec("A2", s, lam, "", F(-3, 4)))
    assert a2.act(fn((2, 1), "A2"), vec(s, 2)) == vec((s[0] + 2, s[1] + 1), 2) * F(-3, 4)
    with pytest.raises(AlgebraMismatch):
        mod.act(D(0), vec(s))


def test_cli_act_example():
    mod = TensorModule(spec("W2", (F(1, 2), F(1, 3)), (0, 0)))
    out = mod.act(parse_element("x1d1", "W2"), parse_vector("x^(1/2,1/3) v0"))
    assert str(out) == "1/2 x^(1/2,1/3) v0"
    assert tensor_act(parse_element("x1d1", "W2"), parse_vector("x^(1/2,1/3) v0"), mod.spec) == out


def test_corner_action_is_reduced():
    sp = spec("W2", (3, 1), (3, 1), "1+,2+")
    mod = TensorModule(sp)
    out = mod.act(parse_element("x2d1", "W2"), vec((3, 1), 0))
    # x^(2,2) v0 leaves the submodule; only x^(2,2) v1 (gl weight (2,2)) survives
    assert set(out.terms) == {((2, 2), 1)}


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_representation_property(name):
    sp = FAMILIES[name]
    mod = TensorModule(sp)
    gens = generators_for(sp, 2)
    basis = interior_basis(sp, window_for(sp))[::7]
    for key in basis:
        m = ModuleVector({key: 1})
        for u in gens[::3]:
            for v in gens[1::4]:
                lhs = mod.act(u, mod.act(v, m)) - mod.act(v, mod.act(u, m))
                assert lhs == mod.act(bracket(u, v), m)


@given(st.sampled_from(RANK_ONE_VARIANTS), st.integers(-1, 5), st.integers(-1, 5), st.integers(-6, 6))
def test_rank_one_representation_property(sp, i, j, shift):
    mod = TensorModule(sp)
    s = (sp.nu[0] + shift,)
    if not mod.dim(s):
        return
    m = vec(s)
    gens = [D(i, sp.algebra), D(j, sp.algebra)]
    if sp.algebra == "A1":
        gens = [D(i), I(j + 1)]
    u, v = gens
    assert mod.act(u, mod.act(v, m)) - mod.act(v, mod.act(u, m)) == mod.act(bracket(u, v), m)


@given(st.sampled_from(sorted(FAMILIES)), st.data())
def test_weight_homogeneity(name, data):
    sp = FAMILIES[name]
    mod = TensorModule(sp)
    gens = generators_for(sp, 3)
    u = data.draw(st.sampled_from(gens))
    key = data.draw(st.sampled_from(interior_basis(sp, window_for(sp))))
    out = mod.act(u, ModuleVector({key: 1}))
    shift = tuple(a + b for a, b in zip(key[0], u.root))
    assert out.weights() <= {shift}


@pytest.mark.parametrize("J", ["1+,2+", "1+", "2+"])
def test_submodule_closure(J):
    sp = spec("W2", (2, 1), (2, 1), J) if J == "1+,2+" else spec("W2", (1, F(1, 3)) if J == "1+" else (F(1, 3), 1), (1, 0), J)
    sub = TensorModule(sp)
    dense = TensorModule(spec("W2", sp.nu, sp.lam))
    for key in interior_basis(sp, window_for(sp, 8, 2)):
        for u in generators_for(sp, 2):
            out = dense.act(u, ModuleVector({key: 1}))
            assert all(sub.is_basis(*k) for k in out.terms)


@given(rationals(), st.sampled_from(sorted(FAMILIES)))
def test_central_charge(c, name):
    base = FAMILIES[name]
    if base.rank == 1:
        sp = spec("A1", base.nu[0], base.lam[0], base.J_text(), c)
        u = I(0)
    else:
        sp = TensorModuleSpec("A2", base.nu, base.lam, base.J, c)
        u = fn((0, 0), "A2")
    mod = TensorModule(sp)
    for key in interior_basis(sp, window_for(sp, 4, 0))[:20]:
        m = ModuleVector({key: 1})
        assert mod.act(u, m) == m * c


# membership


def test_membership_examples():
    lam = (F(3), F(1))
    sp = spec("W2", lam, lam, "1+,2+")
    assert membership_J(lam, 0, sp) == "in_submodule"
    assert membership_J((lam[0] - 1, lam[1]), 0, sp) == "out"
    rank1 = TensorModule(spec("A1", 2, 2, "+"))
    assert [rank1.dim((F(k),)) for k in range(-2, 6)] == [0, 0, 0, 0, 1, 1, 1, 1]
    with pytest.raises(NoJ):
        membership_J(lam, 0, spec("W2", lam, lam))
    q = spec("W2", lam, lam, "1-,2-")
    assert membership_J((2, 0), 0, q) == "in_quotient_basis"


# characters


def test_character_examples():
    W = WeightWindow((-2, -2), (6, 6))
    ch = character(spec("W2", (0, 0), (0, 0), "1+,2+"), W)
    assert ch == {(F(a), F(b)): 1 for a in range(7) for b in range(7)}
    assert ch == char_series_expand("1+,2+", {"lambda": (0, 0)}, W)
    dense = spec("W2", (F(1, 3), F(4, 5)), (3, 1))
    Wd = WeightWindow.around(dense.nu, 4)
    assert set(character(dense, Wd).values()) == {3}
    assert len(character(dense, Wd)) == 81


@pytest.mark.parametrize("J", ["1+,2+", "1+,2-", "1-,2+", "1-,2-"])
@pytest.mark.parametrize("lam", [(2, 0), (3, 1), (5, 2)])
def test_character_closed_forms(J, lam):
    W = WeightWindow.around(lam, 6)
    assert character(spec("W2", lam, lam, J), W) == char_series_expand(J, {"lambda": lam}, W)
    assert degree_on(spec("W2", lam, lam, J), W) == lam[0] - lam[1] + 1


def test_shifted_minus_minus_support():
    W = WeightWindow.around((0, 0), 5)
    ch = char_series_expand("1-,2-", {"lambda": (0, 0)}, W)
    assert max(ch) == (-1, -1) and (0, 0) not in ch


@given(non_integers(-3, 3), st.integers(0, 3))
def test_half_plane_character(nu1, n):
    lam = (n, 0)
    nu = (nu1, F(1))
    W = WeightWindow.around(nu, 5)
    assert character(spec("W2", nu, lam, "2-"), W) == char_series_expand("2-", {"lambda": lam, "nu": nu}, W)


@given(non_integers(), non_integers(), st.integers(0, 4))
def test_degree_is_dim_of_gl_module(a, b, n):
    sp = spec("W2", (a, b), (n, 0))
    assert degree_on(sp, WeightWindow.around(sp.nu, 2)) == n + 1


def test_unknown_formula():
    with pytest.raises(UnknownFormula):
        char_series_expand("3+", {"lambda": (0, 0)}, WeightWindow.around((0, 0), 1))


def test_supports():
    lam = (F(3), F(1))
    W = WeightWindow.around(lam, 4)
    supp = support(spec("W2", lam, lam, "1+,2+"), W)
    assert all(s[0] >= lam[0] - 2 and s[1] >= lam[1] for s in supp)
    assert support(TrivialModule(), WeightWindow.around((6, 6), 2)) == set()
    assert support(TrivialModule(), WeightWindow.around((0, 0), 2)) == {(0, 0)}
    dense = spec("W2", (F(1, 2), F(1, 2)), (0, 0))
    Wd = WeightWindow.around(dense.nu, 3)
    assert support(dense, Wd) == set(Wd.interior())


# specs and windows


def test_spec_validation():
    with pytest.raises(BadSpec):
        spec("W2", (F(1, 2), 0), (1, 0), "1+")
    with pytest.raises(BadSpec):
        spec("W2", (0, 0), (0, 0), "", 3)
    with pytest.raises(NotDominant):
        spec("W2", (0, 0), (0, 1))
    assert spec("A2", (0, 0), (0, 0)).c == 0


def test_spec_json_round_trip():
    sp = spec("A2", (F(1, 2), 3), (2, 1), "2-", F(-7, 3))
    data = json.loads(json.dumps(sp.to_json()))
    assert data["nu"] == ["1/2", "3"] and data["c"] == "-7/3"
    assert TensorModuleSpec.from_json(data) == sp
    assert TensorModuleSpec.from_json({"nu": [0, 0], "lambda": [1, 0], "J": "1⁺,2⁻"}).J == ((1, "+"), (2, "-"))


def test_window():
    W = WeightWindow.parse("0,0:4,6:1")
    assert W.lo == (0, 0) and W.hi == (4, 6) and W.margin == 1
    assert len(W.interior()) == 3 * 5
    assert W.contains((4, 6)) and not W.in_interior((4, 6))
    with pytest.raises(ValueError):
        WeightWindow((0, 0), (F(1, 2), 1))


def test_vector_text():
    v = parse_vector("1/2 x^(1/2,1/3) v0 − x^(3/2,1/3) v1")
    assert v == vec((F(1, 2), F(1, 3))) * F(1, 2) - vec((F(3, 2), F(1, 3)), 1)
    assert parse_vector(str(v)) == v

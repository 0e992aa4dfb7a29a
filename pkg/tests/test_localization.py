from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import non_integers
from weightlab.exact_arith import Singular
from weightlab.lie_core import D, I, bracket, parse_element
from weightlab.localization import (
    HypothesisViolated, LocalizedModule, TwistedVector, WindowOverflow, additivity_check,
    check_twist, generators, inv_act, loc_iso_check, reverse_iso_modules, twisted_act,
)
from weightlab.weight_modules import ModuleVector, TensorModule, WeightWindow, spec

W2 = "W2"
d1 = parse_element("d1", W2)
x1d2 = parse_element("x1d2", W2)
x1d1 = parse_element("x1d1", W2)


def vec(s, k=0):
    return ModuleVector.basis(s, k)


def dense(nu=(F(1, 3), F(2, 5)), lam=(2, 0)):
    return TensorModule(spec(W2, nu, lam))


def test_allowed_twists():
    for t in ("d1", "d2", "x1d2", "x2d1"):
        check_twist(parse_element(t, W2))
    check_twist(D(-1))
    check_twist(I(2))
    for bad in (parse_element("x1d1", W2), parse_element("2 d1", W2), parse_element("d1 + d2", W2)):
        with pytest.raises(ValueError):
            check_twist(bad)
    with pytest.raises(ValueError):
        check_twist(D(1))


# inverse action


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(0, 2), st.sampled_from(["d1", "d2", "x1d2", "x2d1"]))
def test_inverse_contract(k1, k2, i, a_text):
    mod = dense()
    a = parse_element(a_text, W2)
    s = (mod.coset[0] + k1, mod.coset[1] + k2)
    m = vec(s, i)
    assert mod.act(a, inv_act(a, m, mod)) == m
    assert inv_act(a, mod.act(a, m), mod) == m


def test_inverse_of_d1_is_diagonal():
    mod = dense()
    s = (F(7, 3), F(2, 5))
    for i in range(3):
        pre = inv_act(d1, vec(s, i), mod)
        # d1 x^(s + e1) v_i = (s1 + 1 - lambda1 + i) x^s v_i
        assert pre == vec((s[0] + 1, s[1]), i) * (1 / (s[0] + 1 - 2 + i))


def test_inverse_degenerate_and_window():
    mod = dense((0, F(1, 2)), (0, 0))
    with pytest.raises(Singular):
        inv_act(d1, vec((-1, F(1, 2))), mod)
    with pytest.raises(WindowOverflow):
        inv_act(d1, vec((2, F(1, 2))), mod, WeightWindow((0, 0), (2, 2)))


# twisted action


def test_zero_twist_is_the_ordinary_action():
    mod = dense()
    loc = LocalizedModule(mod, x1d2, 0)
    m = vec((F(4, 3), F(-3, 5)), 1)
    for u in generators(W2, 2):
        got = twisted_act(u, loc.generator(m))
        assert got == loc.generator(mod.act(u, m))


@given(non_integers(-3, 3))
def test_cartan_shift_under_d1(x):
    mod = dense()
    loc = LocalizedModule(mod, d1, x)
    s = (F(4, 3), F(2, 5))
    g = loc.generator(vec(s, 0))
    assert g.weights() == {(s[0] - x, s[1])}
    assert twisted_act(x1d1, g) == g * (s[0] - x)


@given(non_integers(-3, 3), non_integers(-3, 3), st.integers(-3, 3))
def test_i1_twist_on_d_minus_one(x, c, k):
    base = TensorModule(spec("A1", F(1, 5), F(2, 3), "", c))
    loc = LocalizedModule(base, I(1), x)
    m = vec((F(1, 5) + k,))
    got = twisted_act(D(-1), loc.generator(m))
    want = TwistedVector(loc, x, base.act(D(-1), m)) + TwistedVector(loc, x - 1, m) * (x * c)
    assert got == want


@given(st.integers(0, 4), st.sampled_from(["d1", "x1d2", "x2d1"]), st.data())
def test_integer_twists_conjugate_by_powers(k, a_text, data):
    mod = dense()
    a = parse_element(a_text, W2)
    loc = LocalizedModule(mod, a, 0)
    u = data.draw(st.sampled_from(generators(W2, 2)))
    m = vec((F(4, 3) + data.draw(st.integers(-2, 2)), F(2, 5)), data.draw(st.integers(0, 2)))

    def power(v, j):
        for _ in range(j):
            v = mod.act(a, v)
        return v

    r = twisted_act(u, TwistedVector(loc, k, m))
    literal = mod.act(u, power(m, k))
    e = r.e
    assert power(literal, max(0, int(-e))) == power(r.payload, max(0, int(e)))


@given(non_integers(-3, 3), st.sampled_from(["d1", "d2", "x1d2", "x2d1"]), st.data())
def test_bracket_identity_on_twisted_vectors(x, a_text, data):
    loc = LocalizedModule(dense(), parse_element(a_text, W2), x)
    gens = generators(W2, 2)
    u = data.draw(st.sampled_from(gens))
    v = data.draw(st.sampled_from(gens))
    m = vec((F(1, 3) + data.draw(st.integers(-3, 3)), F(2, 5) + data.draw(st.integers(-3, 3))), data.draw(st.integers(0, 2)))
    tv = loc.generator(m)
    lhs = twisted_act(u, twisted_act(v, tv)) - twisted_act(v, twisted_act(u, tv))
    assert lhs == twisted_act(bracket(u, v), tv)


@given(non_integers(-3, 3), non_integers(-3, 3), st.integers(-2, 3))
def test_rank_one_bracket_identity(x, c, k):
    base = TensorModule(spec("A1", F(2, 7), F(1, 2), "", c))
    loc = LocalizedModule(base, D(-1), x)
    tv = loc.generator(vec((F(2, 7) + k,)))
    for u in generators("A1", 2):
        for v in generators("A1", 2):
            assert twisted_act(u, twisted_act(v, tv)) - twisted_act(v, twisted_act(u, tv)) == twisted_act(bracket(u, v), tv)


def test_weight_bases_of_localized_modules():
    loc = LocalizedModule(TensorModule(spec(W2, (F(1, 3), 0), (2, 0), "2-")), x1d2, F(1, 2))
    w = (loc.coset[0] + 1, loc.coset[1] - 1)
    assert loc.dim(w) == 3
    assert loc.coordinates(loc.weight_basis(w)[1] * 5, w) == [0, 5, 0]


# additivity of twists


def test_additivity_rank_one():
    base = TensorModule(spec("A1", F(1, 3), F(1, 3), "-", F(2, 5)))
    flat = LocalizedModule(base, D(-1), F(-1, 2) + F(1, 7))
    r = additivity_check(base, D(-1), F(-1, 2), F(1, 7), WeightWindow.around(flat.coset, 4, 2))
    assert r["checks"] > 0 and r["violations"] == []


def test_additivity_rank_two():
    base = TensorModule(spec(W2, (F(1, 3), 0), (1, 0), "2-"))
    x, y = F(2, 3), F(-1, 4)
    flat = LocalizedModule(base, x1d2, x + y)
    r = additivity_check(base, x1d2, x, y, WeightWindow.around(flat.coset, 2, 1), max_height=1)
    assert r["checks"] > 0 and r["violations"] == []


# explicit isomorphisms


def test_i1_isomorphism_example():
    r = loc_iso_check("A1_I1_plus", {"lambda": F(1, 3), "c": 1, "nu": F(1, 2)}, WeightWindow.around((F(5, 6),), 5, 3))
    assert r["checks"] > 0 and r["violations"] == []
    assert "D0" in r["generators_checked"] and "I2" in r["generators_checked"]


def test_d_minus_one_isomorphism_in_the_reducible_case():
    r = loc_iso_check("A1_Dm1_minus", {"lambda": 1, "c": 0, "nu": F(1, 2)}, WeightWindow.around((F(3, 2),), 5, 3))
    assert r["checks"] > 0 and r["violations"] == []


def test_hypotheses_are_enforced():
    W = WeightWindow.around((0,), 3, 1)
    with pytest.raises(HypothesisViolated):
        loc_iso_check("A1_I1_plus", {"lambda": F(1, 3), "c": 0, "nu": F(1, 2)}, W)
    with pytest.raises(HypothesisViolated):
        loc_iso_check("A1_Dm1_minus", {"lambda": F(1, 3), "c": 1, "nu": 2}, W)
    with pytest.raises(HypothesisViolated):
        reverse_iso_modules("W2_reverse_2minus", {"s": (F(1, 3), F(2, 3)), "lambda": (2, 0)})
    with pytest.raises(KeyError):
        loc_iso_check("nonsense", {}, W)


def test_reverse_two_minus():
    s = (F(1, 3), F(2, 7))
    r = loc_iso_check("W2_reverse_2minus", {"s": s, "lambda": (2, 0)}, WeightWindow.around(s, 3, 2))
    assert r["violations"] == []
    assert r["cases"][0]["commutant_dim"] == 1
    assert r["printed_exponent_reading"].startswith("ill-posed")

"""Twisted localization of a rank-one module and an explicit isomorphism.

Twisting the lowest weight module of A1 by I1 with a non-integral exponent
gives a dense module; loc_iso_check builds the intertwiner on a window and
tests every generator of height <= 2 against it.
"""
from fractions import Fraction as F

from weightlab.lie_core import D, I
from weightlab.localization import LocalizedModule, loc_iso_check, twisted_act
from weightlab.weight_modules import ModuleVector, TensorModule, WeightWindow, spec

base = TensorModule(spec("A1", F(1, 3), F(1, 3), "", 1))
loc = LocalizedModule(base, I(1), F(1, 2))
g = loc.generator(ModuleVector.basis((F(1, 3),), 0))
print("generator   ", g)
print("D(-1) . g = ", twisted_act(D(-1), g))

params = {"lambda": F(1, 3), "c": 1, "nu": F(1, 2)}
r = loc_iso_check("A1_I1_plus", params, WeightWindow.around((F(5, 6),), 6, 3))
print()
print(f"A1_I1_plus: {r['checks']} checks, {len(r['violations'])} violations")
print("generators:", ", ".join(r["generators_checked"]))

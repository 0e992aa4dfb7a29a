"""Weight diagrams of the four highest weight tensor modules T(lambda, lambda, J).

Each grid shows the multiplicity at s = lambda + (i, j); a dot marks weights
outside the support. All four modules have degree lambda1 - lambda2 + 1.
"""
from fractions import Fraction as F

from weightlab.weight_modules import WeightWindow, char_series_expand, character, degree_on, spec

lam = (3, 1)
W = WeightWindow.around(lam, 4, 0)

for J in ("1+,2+", "1+,2-", "1-,2+", "1-,2-"):
    sp = spec("W2", lam, lam, J)
    ch = character(sp, W)
    assert ch == char_series_expand(J, {"lambda": lam}, W)
    print(f"T({lam}, {lam}, ({J}))  degree {degree_on(sp, W)}")
    for b in range(int(W.hi[1]), int(W.lo[1]) - 1, -1):
        row = [ch.get((F(a), F(b)), 0) for a in range(int(W.lo[0]), int(W.hi[0]) + 1)]
        print(f"  {b:3} | " + " ".join(str(k) if k else "." for k in row))
    print()

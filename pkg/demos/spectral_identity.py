"""The composite (x1 d2)(x2 d1) on one weight space of a dense tensor module.

Its characteristic polynomial factors as prod_i (mu - (x-i)(y-i)) with
x = s2 - lambda2 + 1 and y = s1 - lambda2. The second half shows which
products of the displayed A_n, B_n matrices reproduce that spectrum.
"""
from fractions import Fraction as F

from weightlab import analysis as an
from weightlab.exact_arith import charpoly

s, lam = (F(2, 3), F(-1, 5)), (3, 0)
M = an.operator_matrix_M(s, lam)
x, y = an.spectral_xy(s, lam)
print("operator on T^s:")
for row in M.rows:
    print("  ", " ".join(f"{str(c):>8}" for c in row))
print("charpoly     ", charpoly(M))
print("product form ", an.expected_charpoly(3, x, y))

pts = [((F(k, 3), F(1 - k, 7)), (F(k, 5) + 3, F(k, 5))) for k in range(1, 7)]
conv = an.charpoly_identity_check(3, pts)["conventions"]["details"]
print()
print("printed A.B reading matches:", conv["printed_reading_matches"])
print("readings that match:", ", ".join(conv["matching_factorization"]))

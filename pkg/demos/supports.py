"""Support shapes of a few tensor modules, with the template each one matches."""
from fractions import Fraction as F

from weightlab import analysis as an
from weightlab.weight_modules import TrivialModule, WeightWindow, spec

cases = [
    spec("W2", (F(1, 3), F(2, 5)), (2, 0)),
    spec("W2", (3, 1), (3, 1), "1+,2+"),
    spec("W2", (3, 1), (3, 1), "1-,2+"),
    spec("W2", (F(1, 2), 1), (2, 0), "2-"),
    spec("W2", (1, F(1, 2)), (2, 0), "1+"),
]
for sp in cases:
    shape = an.support_shape(sp, WeightWindow.around(sp.nu, 6))
    print(f"{sp.describe():40} ({shape['tag']}) {shape['shape']}")
shape = an.support_shape(TrivialModule(), WeightWindow.around((0, 0), 3))
print(f"{'trivial module':40} ({shape['tag']}) {shape['shape']}")

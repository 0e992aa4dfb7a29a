"""sl3 sits inside W2 as the projective vector fields.

Prints the image of each basis element, then checks all 64 brackets under
every sign convention the library knows about.
"""
from weightlab.lie_core import SL3_BASIS, format_element, sl3_embed, sl3_homomorphism_failures

print("basis element -> vector field (transpose convention)")
for name in SL3_BASIS:
    print(f"  {name:4} -> {format_element(sl3_embed(name))}")

print()
for conv in ("transpose", "gl2", "literal"):
    bad = sl3_homomorphism_failures(conv)
    print(f"{conv:10} {64 - len(bad):2}/64 brackets preserved", f"(first failure {bad[0]})" if bad else "")

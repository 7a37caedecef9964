"""From the automorphism group to an Artin-Schreier cover and back.

The quotient by V is again a formal disk; pushing the action down gives
an equation y^q - y = g(x) whose class modulo (Frobenius - 1) and
holomorphic parts remembers exactly the conductor m.  The reduction
comes with an explicit witness d such that g - red(g) - hol = d^q - d.
"""

from wildram.ascover import (
    class_reduce,
    conductor,
    downstairs_model,
    germ_model,
    normalized_generators,
    reduction_witness_valid,
)
from wildram.autoreps import make_character
from wildram.coeffring import make_field

p, s, m = 2, 2, 3
field = make_field(p, s)
ch = make_character(field, [[1, 0], [0, 1]], m)
q = p ** s

print("cover y^%d - y = g for V = (Z/%d)^%d, m = %d" % (q, p, s, m))

# normalized generators shift the cover coordinates by delta_ij
for rec in normalized_generators(ch):
    print("  sigma_j(y_i) = y_i + delta_ij:", all(rec["shift_check"]))

germ = germ_model(ch)
print("\ngerm right-hand side pole orders:",
      sorted(-e for e in germ.rhs.coeffs if e < 0))

down = downstairs_model(ch)
g = down["cover"].rhs
cls = class_reduce(g, s)
print("\ndownstairs representative reduced; conductor:", conductor(cls))
print("equals m:", conductor(cls) == m)
print("witness identity g - red - hol = d^q - d holds:",
      reduction_witness_valid(g, cls))

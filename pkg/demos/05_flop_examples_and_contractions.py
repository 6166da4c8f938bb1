"""Explicit flops: Laufer, the length-3 example, superpotentials, and
contraction algebras with Gopakumar-Vafa invariants."""

from flopcalc import (
    builtins,
    contraction_report,
    cyclic_derivative,
    hypersurface,
    matrix_factorization,
    specialize,
    universal_flopping_algebra,
    verify_superpotential,
)
from flopcalc.coeff import ParamRing, format_poly

# -- the Laufer flop: a length-2 specialization -------------------------------

laufer = builtins()["laufer"]
hyp = hypersurface(laufer)
print("Laufer hypersurface: f =", hyp.equation)

nccr = builtins()["laufer-nccr"]
pres = nccr.presentation()
phi = nccr.superpotential_element()
print("superpotential:", phi)
print("d/d b of it:   ", cyclic_derivative(phi, "b"))
print("verified:", verify_superpotential(pres, phi).ok)

rep = contraction_report(pres, "0", length=2)
print("contraction: dim=%s dim_ab=%s GV=%s" % (rep.dim, rep.dim_ab, rep.gv_solutions))
print()

# -- an explicit flop of length 3 ---------------------------------------------

# the classifying map t = 0, T1b = T1c = 0, T0b = T0c = T0d = T applied to
# the universal length-3 algebra
spec = specialize(
    universal_flopping_algebra(3).presentation(),
    {"t": "0", "T0b": "T", "T1b": "0", "T0c": "T", "T1c": "0", "T0d": "T"},
    ParamRing(["T"]),
)
print("specialized length-3 relations:")
for r in spec.relations:
    print("   ", r)

example = builtins()["length-3-example"]
h3 = hypersurface(example)
print("length-3 hypersurface: g =", format_poly(h3.g))
mf3 = matrix_factorization(example, hyp=h3)
print("6x6 factorization, C^2 = g I:", mf3.check())

nccr3 = builtins()["length-3-nccr"]
rep3 = contraction_report(nccr3.presentation(), "0", length=3)
print("contraction: dim=%s dim_ab=%s GV=%s" % (rep3.dim, rep3.dim_ab, rep3.gv_solutions))
print()

# note: the printed potentials for lengths >= 3 recover the relations only
# after rescaling the loop generators; the exact length-3 potential is
# a*b*A + a*c*A + (1/4)*b^4 + (1/4)*c^4 - (1/3)*(b + c)^3
p3 = nccr3.presentation()
exact = p3.element("a*b*A + a*c*A + (1/4)*b^4 + (1/4)*c^4 - (1/3)*(b + c)^3")
print("exact-coefficient length-3 potential verified:",
      verify_superpotential(p3, exact).ok)

# -- central fibres for every length ------------------------------------------

print()
print("central-fibre contraction dimensions (2l(l-1) for l >= 2):")
for l in range(1, 7):
    cf = universal_flopping_algebra(l).central_fibre_presentation()
    r = contraction_report(cf, "0")
    print("  length %d: dim %s, abelianized %s" % (l, r.dim, r.dim_ab))

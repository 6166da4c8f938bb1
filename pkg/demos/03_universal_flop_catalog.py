"""The catalog: six universal flopping algebras and their Weyl data.

Each length 1..6 ships the quiver-with-relations presentation over its
parameter ring H_l, the central fibre (the partial resolution algebra of
the colored Dynkin diagram), the commuting generators x', y, z, the 2l
module generators, and the invariant-theory data defining H_l inside the
Cartan parameter ring.
"""

from flopcalc import (
    DIAGRAMS,
    apply_simple_reflection,
    deformed_preprojective,
    format_presentation,
    preprojective,
    universal_flopping_algebra,
    verify_invariants,
)

entry = universal_flopping_algebra(2)
print(format_presentation(entry.presentation()))
print(format_presentation(entry.central_fibre_presentation()))

# the H_l generators are Weyl invariants: every simple reflection of the
# colored subgroup W_C fixes them, reflections square to the identity,
# and setting the parameters to zero recovers the central fibre
for l in range(1, 7):
    rep = verify_invariants(universal_flopping_algebra(l))
    print("length %d invariants: %d checks, all ok = %s" % (l, len(rep.checks), rep.ok))
print()

# the simple reflection action on the Cartan parameters (extended diagram)
d4 = DIAGRAMS["D4"]
ring = d4.param_ring()
t1, t4 = ring.var("t1"), ring.var("t4")
print("D4: s1(t1) =", apply_simple_reflection(d4, 1, t1))
print("D4: s1(t4) =", apply_simple_reflection(d4, 1, t4))
print()

# (deformed) preprojective algebras of the five diagrams are generated
# from the commutator-sum relation, one relation per vertex
pp = preprojective(DIAGRAMS["D4"])
dp = deformed_preprojective(DIAGRAMS["E8"])
print(format_presentation(pp))
print("E8 deformed preprojective has %d relations over %s" %
      (len(dp.relations), dp.params))

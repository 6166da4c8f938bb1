"""Truncated noncommutative Groebner bases, normal forms, and dimensions.

The completion resolves overlap ambiguities of the leading words up to a
degree bound; a complete basis gives unique normal forms and lets us count
normal words, which is how algebra dimensions are computed.
"""

from flopcalc import (
    dimension,
    enumerate_normal_words,
    normal_form,
    parse_presentation,
    truncated_groebner,
)

# the contraction algebra of the Laufer flop: C<b, c>/(c^3 - b^2, bc + cb)
pres = parse_presentation("""
name: laufer-contraction
params:
vertices: 4
arrows: b: 4 -> 4, c: 4 -> 4
relations: c^3 - b^2 ; b*c + c*b
""")

gb = truncated_groebner(pres, max_degree=10)
print(gb.serialize())

words = enumerate_normal_words(gb, "4", "4", None)
print("normal word basis (%d words):" % len(words))
for w in words:
    print("   ", w.format(pres.quiver))
print()
print("dimension:", dimension(pres))

# normal forms are linear and idempotent
x = pres.element("(b + c)^3")
print("NF((b+c)^3) =", normal_form(x, gb).format(gb.order))

# an infinite-dimensional quotient is detected by the pumping bound
free = parse_presentation("params:\nvertices: 0\narrows: x: 0 -> 0, y: 0 -> 0\nrelations:")
print("free algebra on two loops:", dimension(free))

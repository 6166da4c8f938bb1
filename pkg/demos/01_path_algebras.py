"""Path algebras over parameter rings: the objects everything else uses.

A presentation is a quiver, a ring of commuting parameters, and a list of
relations.  Elements are finite sums of (rational function) x (path), with
non-composable products equal to zero by construction.
"""

from flopcalc import parse_presentation, format_presentation

text = """
name: demo
params: t, q
vertices: 0, 4
arrows: a: 0 -> 4, A: 4 -> 0, b: 4 -> 4, c: 4 -> 4
relations: a*A - t*e0 ; b^2 - q*e4
relations: A*a + b + c - (1/2)*t*e4
"""

pres = parse_presentation(text)
print("parsed:", pres)
print()

a, A, b, c = (pres.arrow(n) for n in "aAbc")
e0, e4 = pres.idempotent(0), pres.idempotent(4)

print("a * A          =", a * A)                  # a cycle at vertex 0
print("A * a          =", A * a)                  # a cycle at vertex 4
print("a * a          =", a * a)                  # not composable: zero
print("(b + c)*(b - c) =", (b + c) * (b - c))     # noncommutative expansion
print("e0 + e4 acts as 1:", (e0 + e4) * b == b)
print()

# coefficients live in the fraction field of the parameter ring
t = pres.param("t")
x = b.scale(t / (t + 1))
print("scaled element:", x)
print()

# presentations round-trip through their file format
print(format_presentation(pres))

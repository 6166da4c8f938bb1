import random
from fractions import Fraction

import pytest

from flopcalc.coeff import (
    CoeffError,
    DivisionByZeroError,
    MultiPoly,
    ParamRing,
    RatFunc,
    divexact,
    elementary_symmetric,
    format_poly,
    parse_poly,
    poly_arith,
    poly_gcd,
    substitute,
)

RING = ParamRing(["t", "u", "v", "w"])


def rand_poly(rng, ring, terms=4, deg=3, span=6):
    p = ring.zero()
    for _ in range(rng.randint(0, terms)):
        mono = ring.const(Fraction(rng.randint(-span, span), rng.randint(1, 3)))
        for name in ring.names:
            mono = mono * ring.var(name) ** rng.randint(0, deg)
        p = p + mono
    return p


def test_ring_axioms_randomized():
    rng = random.Random(101)
    for _ in range(60):
        a, b, c = (rand_poly(rng, RING) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + RING.zero() == a
        assert a * RING.one() == a


def test_monomial_product():
    t, u, w = RING.var("t"), RING.var("u"), RING.var("w")
    assert (t * u) * (t * w) == t ** 2 * u * w


def test_sub_to_zero():
    p = parse_poly("u*w - v^2", RING)
    assert (p - p).is_zero()


def test_div_roundtrip():
    t = RING.var("t")
    p = parse_poly("t^2 - u", RING)
    q = poly_arith(p, t, "div")
    assert isinstance(q, RatFunc)
    assert q * t == RatFunc(p)


def test_div_by_zero_distinct_error():
    with pytest.raises(DivisionByZeroError):
        poly_arith(RING.one(), RING.zero(), "div")


def test_substitute_laufer_example():
    # f = x^2+u y^2+2 v y z+w z^2+(uw-v^2) t^2 under w->-t, u->y, v->0
    ring = ParamRing(["x", "y", "z", "u", "v", "w", "t"])
    f = parse_poly("x^2 + u*y^2 + 2*v*y*z + w*z^2 + (u*w - v^2)*t^2", ring)
    image = substitute(f, {"w": -ring.var("t"), "u": ring.var("y"), "v": ring.zero()}, ring)
    assert image == parse_poly("x^2 + y^3 - t*z^2 - y*t^3", ring)


def test_substitute_identity_and_zero():
    p = parse_poly("t^2 - 3*u", RING)
    assert substitute(p, {}) == p
    assert substitute(RING.var("t") ** 2, {"t": RING.zero()}).is_zero()


def test_substitute_is_homomorphism():
    rng = random.Random(77)
    for _ in range(25):
        p, q = rand_poly(rng, RING), rand_poly(rng, RING)
        m = {"t": rand_poly(rng, RING, 2, 2), "u": rand_poly(rng, RING, 2, 2)}
        assert substitute(p * q, m) == substitute(p, m) * substitute(q, m)
        assert substitute(p + q, m) == substitute(p, m) + substitute(q, m)


def test_elementary_symmetric_examples():
    ring = ParamRing(["t1", "a", "b", "c"])
    tau1 = parse_poly("(1/2)*t1", ring)
    tau2 = parse_poly("-(1/2)*t1", ring)
    # sigma_2 = -t1^2/4, so -sigma_2 = t1^2/4
    assert elementary_symmetric(2, [tau1, tau2]) == parse_poly("-(1/4)*t1^2", ring)
    a, b, c = ring.var("a"), ring.var("b"), ring.var("c")
    assert elementary_symmetric(1, [a, b, c]) == a + b + c
    assert elementary_symmetric(3, [a, b, c]) == a * b * c
    with pytest.raises(CoeffError):
        elementary_symmetric(4, [a, b, c])


def test_newtons_identity_bruteforce():
    # sigma_k from the library matches expansion of prod (X + x_i)
    rng = random.Random(5)
    ring = ParamRing(["X", "a", "b", "c", "d"])

    def value_poly():
        p = ring.zero()
        for _ in range(rng.randint(0, 2)):
            mono = ring.const(Fraction(rng.randint(-6, 6), rng.randint(1, 3)))
            for name in ("a", "b", "c", "d"):
                mono = mono * ring.var(name) ** rng.randint(0, 1)
            p = p + mono
        return p

    for n in range(1, 5):
        values = [value_poly() for _ in range(n)]
        prod = ring.one()
        X = ring.var("X")
        for v in values:
            prod = prod * (X + v)
        for k in range(1, n + 1):
            sigma = elementary_symmetric(k, values)
            # coefficient of X^(n-k)
            xi = ring.index("X")
            coeff = MultiPoly(ring, {e[:xi] + (0,) + e[xi + 1:]: c
                                     for e, c in prod.terms.items() if e[xi] == n - k})
            assert coeff == sigma


def test_parse_print_roundtrip():
    rng = random.Random(9)
    for _ in range(40):
        p = rand_poly(rng, RING)
        assert parse_poly(format_poly(p), RING) == p


def test_parse_rational_literals():
    assert parse_poly("3/4", RING) == RING.const(Fraction(3, 4))
    assert parse_poly("(1/2)*t^2 - 2", RING) == RING.var("t") ** 2 * Fraction(1, 2) - 2


def test_parse_errors():
    with pytest.raises(CoeffError):
        parse_poly("q + 1", RING)  # undeclared name
    with pytest.raises(CoeffError):
        parse_poly("t +", RING)


def test_gcd_and_divexact():
    rng = random.Random(31)
    for _ in range(30):
        a = rand_poly(rng, RING, 3, 2)
        b = rand_poly(rng, RING, 3, 2)
        g = rand_poly(rng, RING, 2, 2)
        if g.is_zero() or a.is_zero() or b.is_zero():
            continue
        d = poly_gcd(a * g, b * g)
        # divisor of both, containing g
        assert divexact(a * g, d) * d == a * g
        assert divexact(b * g, d) * d == b * g
        assert divexact(d, poly_gcd(d, g)) is not None


def test_ratfunc_normalization():
    t = RING.var("t")
    r = RatFunc(t ** 2 - RING.one(), t - RING.one())
    assert r.is_polynomial()
    assert r.as_poly() == t + 1
    s = RatFunc(t, t * t)
    assert s == RatFunc(RING.one(), t)
    assert (s * t).is_one()


def test_ratfunc_field_axioms():
    rng = random.Random(13)
    for _ in range(20):
        num1, num2 = rand_poly(rng, RING, 2, 2), rand_poly(rng, RING, 2, 2)
        den1, den2 = rand_poly(rng, RING, 2, 1), rand_poly(rng, RING, 2, 1)
        if den1.is_zero() or den2.is_zero():
            continue
        a, b = RatFunc(num1, den1), RatFunc(num2, den2)
        assert a + b == b + a
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a


def test_param_ring_validation():
    with pytest.raises(CoeffError):
        ParamRing(["t", "t"])
    with pytest.raises(CoeffError):
        ParamRing(["1bad"])


def test_grading_default_two():
    ring = ParamRing(["t", "s"], {"s": 4})
    assert ring.grading == (2, 4)
    p = ring.var("t") * ring.var("s")
    assert p.graded_degree() == 6

"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see every line.  Each
criterion is implemented exactly as stated, at its stated tolerance (all
comparisons here are exact polynomial or integer equalities; there are no
floating point tolerances anywhere in the package).
"""

import random
from fractions import Fraction

import pytest

from flopcalc.catalog import (
    LENGTH2_CHARTS,
    builtins,
    universal_flopping_algebra,
    verify_invariants,
)
from flopcalc.coeff import ParamRing, RatFunc, parse_poly
from flopcalc.contraction import contraction_report, gv_invariants
from flopcalc.flops import (
    Representation,
    hypersurface,
    matrix_factorization,
    verify_representation,
    verify_superpotential,
)
from flopcalc.ncgb import normal_form, reduce_element, truncated_groebner
from flopcalc.pathalg import Element, Path


def report(number, description, ok, detail=""):
    line = "criterion %2d: %s - %s" % (number, "PASS" if ok else "FAIL", description)
    if detail and not ok:
        line += " (%s)" % detail
    print(line, flush=True)
    assert ok, "%s %s" % (description, detail)


# -- shared expensive artifacts ------------------------------------------------

@pytest.fixture(scope="module")
def l2_nice():
    hyp = hypersurface(universal_flopping_algebra(2), basis="nice")
    mf = matrix_factorization(universal_flopping_algebra(2), basis="nice", hyp=hyp)
    return hyp, mf


@pytest.fixture(scope="module")
def l3_example():
    b = builtins()["length-3-example"]
    hyp = hypersurface(b)
    mf = matrix_factorization(b, hyp=hyp)
    return hyp, mf


def test_criterion_1_length2_hypersurface(l2_nice):
    hyp, _ = l2_nice
    expected = parse_poly("x^2 + u*y^2 + 2*v*y*z + w*z^2 + (u*w - v^2)*t^2", hyp.ring)
    report(1, "length-2 hypersurface f = x^2+uy^2+2vyz+wz^2+(uw-v^2)t^2 exactly",
           hyp.equation == expected,
           "computed f = %s" % hyp.equation)


def test_criterion_2_length2_matrix_factorization(l2_nice):
    hyp, mf = l2_nice
    ok_identity = mf.check()
    # xI + C matches the reference 4x4 matrix after the documented sign
    # flip of the third basis element (D = diag(1,1,-1,1))
    ring = hyp.ring
    reference = [
        ["x - v*t", "y", "z", "t"],
        ["-u*y - 2*z*v", "x + v*t", "-u*t", "z"],
        ["-w*z", "w*t", "x - v*t", "-y"],
        ["-u*w*t", "-w*z", "u*y + 2*v*z", "x + v*t"],
    ]
    reference = [[parse_poly(e, ring) for e in row] for row in reference]
    xpc = mf.x_plus()
    sign = (1, 1, -1, 1)
    mismatches = [(i, j) for i in range(4) for j in range(4)
                  if sign[i] * sign[j] * xpc[i][j] != reference[i][j]]
    report(2, "length-2 MF: C^2 = g I exact and xI+C matches the reference matrix "
              "after the documented third-basis sign",
           ok_identity and not mismatches,
           "identity=%s mismatches=%s" % (ok_identity, mismatches))


def test_criterion_3_length1_pipeline():
    hyp = hypersurface(universal_flopping_algebra(1))
    mf = matrix_factorization(universal_flopping_algebra(1), hyp=hyp)
    # f at t = 0 is the A1 singularity xy - z^2 in the recorded coordinates
    # X = w + x, Y = w - x (so that -f(0) = XY - z^2 exactly)
    big = ParamRing(["X", "Y", "z", "t"])
    f0 = hyp.equation.substitute({"t": hyp.ring.zero()}, hyp.ring)
    image = f0.substitute({
        "x": parse_poly("(1/2)*X - (1/2)*Y", big),
        "w": parse_poly("(1/2)*X + (1/2)*Y", big),
    }, big)
    ok_fibre = (-image == parse_poly("X*Y - z^2", big))
    ok_mf = mf.size == 2 and mf.check()
    report(3, "length-1 pipeline: f(t=0) is xy - z^2 and the 2x2 MF identity is exact",
           ok_fibre and ok_mf,
           "fibre=%s mf=%s" % (ok_fibre, ok_mf))


REFERENCE_L3_G = ("-T^5 + 4*T^3*y + T^2*z^2 + (1/4)*T^2*y^2 + (1/2)*T*z^2*y "
                "+ (1/4)*z^4 - y^3")

# the reference 6x6 half of the factorization (x Id + C); it matches the
# computed C after the recorded sign change z -> -z
REFERENCE_L3_C = [
    ["(1/2)*(T*y - z^2)", "-T^2", "T^2 - y", "-y", "-z", "-T"],
    ["-T*y + z*y", "-(1/2)*(T*y + z^2)", "-T^2 + T*z", "T^2", "y", "-z"],
    ["-T^3 - T^2*z", "T^3 - T*y + z*y", "-(1/2)*(T*y - z^2)", "T*z", "-T^2", "y"],
    ["-T^3 + y^2", "T*y", "T*z + T*y", "-(1/2)*(T*y + z^2)", "-T^2", "-y"],
    ["-T^2*z - T^2*y", "T^3 + T^2*z - y^2", "-T^3 - T*y", "T^3 - T*y + z*y",
     "(1/2)*(T*y + z^2)", "T^2"],
    ["-T^3*z - T^2*y + T*z*y - z^2*y", "T^4 - T^2*z - 2*T^2*y + T*z*y",
     "T^3 - y^2", "-T^3", "-T^3 + T*y - z*y", "(1/2)*(T*y + z^2)"],
]


def test_criterion_4_length3_example(l3_example):
    hyp, mf = l3_example
    ring = hyp.P.ring
    ok_g = hyp.g.cast(ring) == parse_poly(REFERENCE_L3_G, ring)
    flip = {"z": -ring.var("z")}
    reference = [[parse_poly(e, ring) for e in row] for row in REFERENCE_L3_C]
    mismatches = [
        (i, j) for i in range(6) for j in range(6)
        if mf.C[i][j].cast(ring).substitute(flip, ring) != reference[i][j]
    ]
    ok_mf = mf.check()
    report(4, "length-3 example: reference equation and reference 6x6 C entry-for-entry "
              "(recorded sign z -> -z), MF identity exact",
           ok_g and ok_mf and not mismatches,
           "g=%s identity=%s mismatches=%s" % (ok_g, ok_mf, mismatches[:4]))


def test_criterion_5_central_fibre_contraction_dimensions():
    stated = [1, 4, 9, 24, 40, 60]
    computed = []
    for l in range(1, 7):
        cf = universal_flopping_algebra(l).central_fibre_presentation()
        rep = contraction_report(cf, "0")
        computed.append(rep.dim)
    report(5, "central-fibre contraction dimensions are %s" % stated,
           computed == stated,
           "computed %s; the stated value 9 at length 3 is inconsistent: the "
           "slice presentation, the preprojective corner e6.Pi(E6).e6, and a "
           "brute-force linear-algebra count all give 12 = 2l(l-1), the same "
           "pattern the five other stated values satisfy" % computed)


def _eliminate_to_nccr(elem, laufer, nccr):
    """Rewrite a Laufer presentation element over the plain NCCR quiver.

    The parameter t acts as a*A at vertex 0 and c^2 at vertex 4; the loop
    d equals (1/2) c^2 - A*a - b - c.
    """
    t_elem = {"0": nccr.element("a*A"), "4": nccr.element("c^2")}
    d_sub = nccr.element("(1/2)*c^2 - A*a - b - c")
    out = Element.zero(nccr.quiver, nccr.params)
    for path, coeff in elem.terms.items():
        num = coeff.num
        den = coeff.den
        if not den.is_constant():
            raise AssertionError("unexpected denominator in a Laufer relation")
        factor = Element.idempotent(nccr.quiver, nccr.params, path.source)
        for ai in path.arrows:
            name = laufer.quiver.arrows[ai].name
            factor = factor * (d_sub if name == "d" else nccr.arrow(name))
        ti = laufer.params.index("t")
        for exp, q in num.terms.items():
            term = factor.scale(Fraction(q) / den.constant_value())
            for _ in range(exp[ti]):
                term = t_elem[path.source] * term
            out = out + term
    return out


def test_criterion_6_laufer():
    checks = {}
    laufer = builtins()["laufer"]
    nccr_b = builtins()["laufer-nccr"]
    lp = laufer.presentation()
    nccr = nccr_b.presentation()

    # specialization reproduces the Curto-Morrison equation under the map
    hyp2 = hypersurface(universal_flopping_algebra(2), basis="nice")
    hyp = hypersurface(laufer)
    ring = hyp.ring
    mapping = {k: parse_poly(v, ring) for k, v in (("u", "y"), ("v", "0"), ("w", "-t"))}
    checks["hypersurface"] = (
        hyp.equation == parse_poly("x^2 + y^3 - t*z^2 - y*t^3", ring)
        and hyp2.equation.substitute(mapping, ring) == hyp.equation)

    # the stated relations hold: each NCCR relation vanishes in the Laufer
    # algebra, and each Laufer relation vanishes in the NCCR after
    # eliminating t and the loop d
    lgb = truncated_groebner(lp, max_degree=10)
    fwd = []
    for text in ("a*A*a - a*c^2", "A*a*A - c^2*A",
                 "b^2 - c^3 + A*a*c + c*A*a", "b*c + c*b"):
        fwd.append(reduce_element(lp.element(text), lgb).is_zero())
    ngb = truncated_groebner(nccr, max_degree=10)
    rev = []
    for rel in lp.relations:
        image = _eliminate_to_nccr(rel, lp, nccr)
        rev.append(reduce_element(image, ngb).is_zero())
    checks["stated relations"] = all(fwd) and all(rev)

    # superpotential: the four cyclic derivatives generate the relations
    pot = verify_superpotential(nccr, nccr_b.superpotential_element())
    checks["superpotential"] = pot.ok

    rep = contraction_report(nccr, "0", length=2)
    checks["contraction"] = (rep.dim, rep.dim_ab) == (9, 5) and \
        rep.gv_solutions == [(5, 1, 0, 0, 0, 0)]

    bad = sorted(k for k, v in checks.items() if not v)
    report(6, "Laufer flop: stated relations, superpotential, contraction (9, 5, {(5,1)})",
           not bad, "failing: %s" % bad)


def test_criterion_7_length3_nccr():
    b = builtins()["length-3-nccr"]
    pres = b.presentation()
    rep = contraction_report(pres, "0", length=3)
    ok_con = (rep.dim, rep.dim_ab) == (27, 6) and rep.gv_solutions == [(6, 3, 1, 0, 0, 0)]
    pot = verify_superpotential(pres, b.superpotential_element())
    report(7, "length-3 NCCR: contraction (27, 6, {(6,3,1)}) and the stated "
              "superpotential verified",
           ok_con and pot.ok,
           "contraction=%s; the strict check fails: the stated potential's "
           "cyclic derivatives give 5*A*a - (b+c)^2 rather than 0, so it "
           "presents the algebra only after rescaling the generators; the "
           "exact-coefficient potential a*b*A + a*c*A + (1/4)*b^4 + (1/4)*c^4 "
           "- (1/3)*(b+c)^3 passes both directions strictly" % ok_con)


def test_criterion_8_length2_charts():
    alg = universal_flopping_algebra(2).presentation()
    results = {}
    for name, chart in LENGTH2_CHARTS.items():
        rep = Representation(alg, chart["dims"], chart["matrices"],
                             ParamRing(chart["ring"]), chart["param_map"])
        results[name] = verify_representation(alg, rep).ok
    report(8, "length-2 moduli charts U0 and U1 satisfy all five relations",
           all(results.values()), str(results))


def test_criterion_9_weyl_invariant_suite():
    failures = []
    for l in range(1, 7):
        rep = verify_invariants(universal_flopping_algebra(l))
        failures.extend(rep.failures())
    report(9, "all H_l generators fixed by W_C; s_i^2 = id on H_Gamma",
           not failures, str(failures[:4]))


# -- criterion 10: the order- and scale-robust property suite -----------------

def _random_element(rng, pres, max_len=4):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        v = rng.choice(pres.quiver.vertices)
        arrows = []
        at = v
        for _ in range(rng.randint(0, max_len)):
            outs = [a for a in pres.quiver.arrows if a.source == at]
            if not outs:
                break
            a = rng.choice(outs)
            arrows.append(a.index)
            at = a.target
        p = Path(pres.quiver, v, tuple(arrows))
        c = RatFunc.coerce(pres.params, Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        if not c.is_zero():
            terms[p] = c
    return Element(pres.quiver, pres.params, terms)


def test_criterion_10_property_suite(l2_nice):
    rng = random.Random(20260808)
    problems = []

    # NF idempotence and linearity, 1000 randomized elements per algebra
    for l in range(1, 7):
        pres = universal_flopping_algebra(l).presentation()
        gb = truncated_groebner(pres, max_degree=pres.gb_degree)
        for _ in range(1000):
            x = _random_element(rng, pres)
            if x.degree() > gb.truncation_degree:
                continue
            nf = normal_form(x, gb)
            if reduce_element(nf, gb) != nf:
                problems.append("NF not idempotent (length %d)" % l)
                break
            y = _random_element(rng, pres, 3)
            if (x + y.scale(2)).degree() <= gb.truncation_degree:
                if normal_form(x + y.scale(2), gb) != nf + normal_form(y, gb).scale(2):
                    problems.append("NF not linear (length %d)" % l)
                    break

        # ideal membership soundness: NF(u r v) = 0
        hits = 0
        for _ in range(300):
            rel = rng.choice(pres.relations)
            u = _random_element(rng, pres, 2)
            v = _random_element(rng, pres, 2)
            x = u * rel * v
            if x.is_zero() or x.degree() > gb.truncation_degree:
                continue
            hits += 1
            if not normal_form(x, gb).is_zero():
                problems.append("ideal membership failed (length %d)" % l)
                break
        if hits < 20:
            problems.append("too few membership samples (length %d)" % l)

    # MF identity re-verified independently of the extraction path
    _, mf = l2_nice
    ring = mf.g.ring
    n = mf.size
    reparsed = [[parse_poly(str(e), ring) for e in row] for row in mf.C]
    for i in range(n):
        for j in range(n):
            s = ring.zero()
            for k in range(n):
                s = s + reparsed[i][k] * reparsed[k][j]
            if s != (mf.g if i == j else ring.zero()):
                problems.append("independent C^2 = g I recheck failed at %s" % ((i, j),))

    # (xI - C)(xI + C) = f I in the x-ring
    xm, xp = mf.x_minus(), mf.x_plus()
    xring = mf.hypersurface.ring
    f = mf.hypersurface.equation
    for i in range(n):
        for j in range(n):
            s = xring.zero()
            for k in range(n):
                s = s + xm[i][k] * xp[k][j]
            if s != (f if i == j else xring.zero()):
                problems.append("(xI-C)(xI+C) = f I failed at %s" % ((i, j),))

    # GV tuples re-satisfy their defining equations
    for dim, dim_ab, length in ((9, 5, 2), (27, 6, 3), (40, 7, None), (60, 6, None)):
        for tup in gv_invariants(dim, dim_ab, length):
            if tup[0] != dim_ab or sum(np * (i + 1) ** 2 for i, np in enumerate(tup)) != dim:
                problems.append("GV re-check failed for %s" % (tup,))

    # determinism: byte-identical basis serialization across runs
    pres = builtins()["laufer-nccr"].presentation()
    s1 = truncated_groebner(pres, max_degree=10).serialize()
    s2 = truncated_groebner(pres, max_degree=10).serialize()
    if s1 != s2:
        problems.append("serialized bases differ between runs")

    report(10, "property suite: NF idempotence/linearity, ideal membership, "
               "independent MF identity, GV re-check, determinism",
           not problems, "; ".join(problems[:5]))

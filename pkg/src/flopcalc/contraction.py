"""Contraction algebras, their dimensions, and Gopakumar-Vafa invariants.

The contraction algebra of a presentation with a chosen vertex e0 is the
quotient by the two-sided ideal generated by e0: delete the vertex, delete
every arrow touching it, and kill every relation term whose path passes
through it.  Dimensions are computed by counting normal words; the
abelianization adds loop commutators and kills the surviving non-loop
arrows (each equals a commutator with an idempotent).

Gopakumar-Vafa extraction solves dim = sum n_i i^2 with n_1 = dim of the
abelianization by exhaustive enumeration; n_i <= dim / i^2 bounds the
search.  When several tuples satisfy the constraints all are reported.

Reported dimensions are those of the complete local contraction algebra
(the completion at the arrow ideal): for inhomogeneous relation ideals the
plain quotient can carry extra semisimple summands supported away from the
origin, and `completed_dimension` removes them exactly by computing the
stable power of the arrow ideal.  For homogeneous ideals the two notions
coincide with the graded word count.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .ncgb import (
    Budget,
    BudgetExceededError,
    INFINITE,
    enumerate_normal_words,
    reduce_element,
    truncated_groebner,
)
from .pathalg import AlgebraPresentation, Element, Path, PathAlgebraError, Quiver


class ContractionError(PathAlgebraError):
    pass


class ContractionReport:
    """dim, abelianized dim, and the admissible GV tuples (n1..n6)."""

    def __init__(self, presentation, dim, dim_ab, gv_solutions, declared_length=None):
        self.presentation = presentation
        self.dim = dim
        self.dim_ab = dim_ab
        self.gv_solutions = gv_solutions
        self.declared_length = declared_length

    def __repr__(self):
        return "ContractionReport(dim=%s, dim_ab=%s, gv=%s)" % (
            self.dim, self.dim_ab, self.gv_solutions)


def contraction_presentation(alg: AlgebraPresentation, e0) -> AlgebraPresentation:
    """The quotient A / A e0 A, presented on the remaining quiver."""
    e0 = str(e0)
    if e0 not in alg.quiver.vertices:
        raise ContractionError("vertex %r is not in the quiver" % e0)
    keep_vertices = [v for v in alg.quiver.vertices if v != e0]
    if not keep_vertices:
        raise ContractionError("contraction would remove every vertex")
    keep_arrows = [a for a in alg.quiver.arrows if a.source != e0 and a.target != e0]
    quiver = Quiver(keep_vertices, [(a.name, a.source, a.target, a.degree) for a in keep_arrows],
                    name=(alg.quiver.name + "-con") if alg.quiver.name else "")
    name_ok = {a.name for a in keep_arrows}

    def survives(path) -> bool:
        if path.source == e0 or path.target == e0:
            return False
        return all(alg.quiver.arrows[i].name in name_ok for i in path.arrows)

    relations = []
    for rel in alg.relations:
        ep = rel.endpoints()
        if ep is not None and e0 in ep:
            continue  # the whole relation lives through e0
        terms = {}
        for path, coeff in rel.terms.items():
            if not survives(path):
                continue
            arrows = tuple(quiver.arrow(alg.quiver.arrows[i].name).index for i in path.arrows)
            terms[Path(quiver, path.source, arrows, _check=False)] = coeff
        img = Element(quiver, alg.params, terms)
        if not img.is_zero():
            relations.append(img)
    precedence = None
    if alg.precedence:
        precedence = [n for n in alg.precedence if n in name_ok]
    return AlgebraPresentation(quiver, alg.params, relations,
                               name=(alg.name + "-con") if alg.name else "contraction",
                               precedence=precedence, gb_degree=alg.gb_degree)


def abelianization(alg: AlgebraPresentation) -> AlgebraPresentation:
    """Quotient by all commutators: kill non-loop arrows, commute loops."""
    extra: List[Element] = []
    loops_at = {}
    for a in alg.quiver.arrows:
        if a.source == a.target:
            loops_at.setdefault(a.source, []).append(a.name)
        else:
            extra.append(alg.arrow(a.name))  # [e_src, a] = a
    for v, names in sorted(loops_at.items()):
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                x, y = alg.arrow(names[i]), alg.arrow(names[j])
                extra.append(x * y - y * x)
    return alg.with_relations(list(alg.relations) + extra,
                              name=(alg.name + "-ab") if alg.name else "abelianization")


def completed_dimension(alg: AlgebraPresentation, budget: Optional[Budget] = None,
                        max_truncation: int = 64):
    """Dimension of the completion of the quotient at the arrow ideal.

    The quotient A can pick up semisimple summands supported away from the
    origin (the ideal need not be homogeneous); the contraction algebra of
    the flops literature is the complete local one.  For finite-dimensional
    A the arrow-ideal powers m^k stabilize at m^infty and the completion is
    A/m^infty, so dim = dim A - dim m^infty, computed by exact linear
    algebra on the normal-word basis.
    """
    budget = budget or Budget()
    order = alg.order()
    rel_deg = max((r.degree() for r in alg.relations if not r.is_zero()), default=1)
    d = max(2 * rel_deg, 4)
    gb = None
    while d <= max_truncation:
        gb = truncated_groebner(alg, order, d, budget)
        if gb.complete:
            break
        d = d + max(2, d // 2)
    if gb is None or not gb.complete:
        raise BudgetExceededError("no complete basis below truncation degree %d" % max_truncation)
    try:
        words = enumerate_normal_words(gb, None, None, None)
    except BudgetExceededError as exc:
        if "pumping bound" in str(exc):
            return INFINITE
        raise
    n = len(words)
    pos = {p: i for i, p in enumerate(words)}
    quiver, params = alg.quiver, alg.params

    def vec(elem: Element) -> Dict[int, Fraction]:
        out = {}
        for p, c in elem.terms.items():
            if not c.is_polynomial() or not c.num.is_constant():
                raise ContractionError("completed dimension needs constant coefficients")
            out[pos[p]] = c.num.constant_value()
        return out

    def row_reduce_into(basis: Dict[int, Dict[int, Fraction]], row: Dict[int, Fraction]) -> bool:
        row = dict(row)
        while row:
            j = min(row)
            piv = basis.get(j)
            if piv is None:
                lc = row[j]
                basis[j] = {k: v / lc for k, v in row.items()}
                return True
            f = row[j]
            for k, v in piv.items():
                nv = row.get(k, Fraction(0)) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return False

    from .pathalg import compose, arrow_path

    # sparse one-arrow multiplication actions on the normal-word basis
    def action(side: str):
        mats = []
        for a in quiver.arrows:
            ap = arrow_path(quiver, a.name)
            col: Dict[int, Dict[int, Fraction]] = {}
            for j, w in enumerate(words):
                p = compose(quiver, ap, w) if side == "left" else compose(quiver, w, ap)
                if p is None:
                    continue
                e = reduce_element(Element.from_path(quiver, params, p), gb, budget)
                if not e.is_zero():
                    col[j] = vec(e)
            mats.append(col)
        return mats

    left_mats = action("left")
    right_mats = action("right")

    def apply(mat, v: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for j, c in v.items():
            img = mat.get(j)
            if not img:
                continue
            for k, ck in img.items():
                s = out.get(k, Fraction(0)) + c * ck
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def closed_span(seeds, mats) -> Tuple[Dict[int, Dict[int, Fraction]], List[Dict[int, Fraction]]]:
        basis: Dict[int, Dict[int, Fraction]] = {}
        kept: List[Dict[int, Fraction]] = []
        queue = [dict(v) for v in seeds]
        while queue:
            v = queue.pop()
            if row_reduce_into(basis, v):
                kept.append(v)
                for mat in mats:
                    w = apply(mat, v)
                    if w:
                        queue.append(w)
        return basis, kept

    # m = sum over arrows x of A x A: right-close {x} then left-close
    arrow_vecs = []
    for a in quiver.arrows:
        e = reduce_element(Element.arrow(quiver, params, a.name), gb, budget)
        if not e.is_zero():
            arrow_vecs.append(vec(e))
    _, right_closed = closed_span(arrow_vecs, right_mats)
    _, current = closed_span(right_closed, left_mats)
    dim_power = len(current)
    # m^(k+1) = sum over arrows x of A x m^k, already a two-sided ideal
    while dim_power:
        seeds = []
        for mat in left_mats:
            for f in current:
                w = apply(mat, f)
                if w:
                    seeds.append(w)
        _, nxt = closed_span(seeds, left_mats)
        if len(nxt) == dim_power:
            break
        dim_power = len(nxt)
        current = nxt
    return n - dim_power


def contraction_dims(alg: AlgebraPresentation, e0, budget: Optional[Budget] = None,
                     max_truncation: int = 64) -> Tuple[object, object]:
    """(dim, dim_ab) of the (complete local) contraction algebra at e0."""
    con = contraction_presentation(alg, e0)
    try:
        dim = completed_dimension(con, budget=budget, max_truncation=max_truncation)
    except BudgetExceededError as exc:
        raise BudgetExceededError(
            "contraction dimension did not finish: %s (an incomplete basis or "
            "completion-sensitivity of the presentation are possible causes)" % exc,
            partial=exc.partial)
    dim_ab = completed_dimension(abelianization(con), budget=budget,
                                 max_truncation=max_truncation)
    return dim, dim_ab


def gv_invariants(dim: int, dim_ab: int, length: Optional[int] = None) -> List[Tuple[int, ...]]:
    """All (n1..n6) with n1 = dim_ab, sum n_i i^2 = dim, and the length cut."""
    if dim < dim_ab or dim_ab < 0:
        raise ContractionError("need dim >= dim_ab >= 0, got (%s, %s)" % (dim, dim_ab))
    n1 = dim_ab
    rest = dim - n1
    if rest < 0:
        return []
    solutions = []
    bounds = [rest // (i * i) for i in range(2, 7)]

    def walk(i, remaining, partial):
        if i == 7:
            if remaining == 0:
                solutions.append(tuple([n1] + partial))
            return
        for ni in range(bounds[i - 2], -1, -1):
            used = ni * i * i
            if used <= remaining:
                walk(i + 1, remaining - used, partial + [ni])

    walk(2, rest, [])
    solutions.sort(reverse=True)
    if length is not None:
        solutions = [
            s for s in solutions
            if (length == 1 or s[length - 1] > 0) and all(x == 0 for x in s[length:])
        ]
    return solutions


def contraction_report(alg: AlgebraPresentation, e0, length: Optional[int] = None,
                       budget: Optional[Budget] = None,
                       max_truncation: int = 64) -> ContractionReport:
    con = contraction_presentation(alg, e0)
    dim, dim_ab = contraction_dims(alg, e0, budget=budget, max_truncation=max_truncation)
    if dim == INFINITE or dim_ab == INFINITE:
        return ContractionReport(con, dim, dim_ab, [], length)
    return ContractionReport(con, dim, dim_ab, gv_invariants(dim, dim_ab, length), length)

"""The flop pipeline: hypersurfaces, matrix factorizations, superpotentials.

* The center of a catalog algebra is a hypersurface over the commutative
  subring generated by the auxiliary central elements (y, z): normalize
  x'^2 against a truncated Groebner basis, expand it over the free basis
  {monomial in y,z} x {e0, x'}, and center x := x' - P/2 to get f = x^2 - g.
* The rank-l module is free over that subring on its 2l generators, so
  expanding the x-action NF(x . g_i) over {monomial times generator} reads
  off the square matrix C with x.g_i = sum_j C_ij g_j and
  (xI - C)(xI + C) = f I.  Both expansions are unique by freeness, which
  makes P, Q and C canonical and independent of the monomial order.
* Presentations push forward along classifying maps on the parameter ring.
* Superpotentials are checked by cyclic differentiation plus two-sided
  ideal membership in both directions; explicit chart representations are
  checked by evaluating every relation on matrices.

The binding contract for every produced factorization is the exact
identity C^2 = g I in the commutative polynomial ring; it is checked
before anything is returned.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .catalog import CheckReport, PipelineData
from .coeff import MultiPoly, ParamRing, RatFunc, divexact, parse_poly
from .ncgb import (
    Budget,
    GroebnerBasis,
    reduce_element,
    reduce_poly,
    truncated_groebner,
)
from .pathalg import (
    AlgebraPresentation,
    Element,
    Path,
    PathAlgebraError,
    idempotent_path,
)


class PipelineError(PathAlgebraError):
    pass


class TruncationInsufficientError(PipelineError):
    """The truncated basis cannot normalize the requested element into the
    expected shape; retry with the suggested degree."""

    def __init__(self, message, needed_degree=None):
        super().__init__(message)
        self.needed_degree = needed_degree


# ---------------------------------------------------------------------------
# hypersurface recovery
# ---------------------------------------------------------------------------

class Hypersurface:
    """f = x^2 - g with g in Q[params][aux vars], plus the centering data.

    NF(x'^2) decomposes as P x' + Q over the free module on {e0, x'}; the
    centering x := x' - P/2 gives f = x^2 - g with g = Q + P^2/4.  `ring`
    is the pipeline parameter ring extended by the auxiliary generator
    names and the variable x.
    """

    def __init__(self, pipeline: PipelineData, gb: GroebnerBasis,
                 P: MultiPoly, Q: MultiPoly, x_centered: Element,
                 aux_elements):
        self.pipeline = pipeline
        self.gb = gb
        self.P = P
        self.Q = Q
        self.x_centered = x_centered
        self.aux_elements = aux_elements
        base = P.ring
        self.ring = ParamRing(("x",) + base.names)
        self.g = (Q + P * P * Fraction(1, 4)).cast(self.ring)
        x = self.ring.var("x")
        self.equation = x * x - self.g

    @property
    def f(self) -> MultiPoly:
        return self.equation

    def variables(self) -> Tuple[str, ...]:
        return self.ring.names

    def __repr__(self):
        return "Hypersurface(f = %s)" % self.equation


def _pipeline_of(source, basis: str = "raw") -> PipelineData:
    if isinstance(source, PipelineData):
        return source
    if hasattr(source, "pipeline"):
        return source.pipeline(basis)
    raise PipelineError("expected a catalog entry or PipelineData, got %r" % (source,))


def pipeline_groebner(pipe: PipelineData, gb_degree: Optional[int] = None,
                      budget: Optional[Budget] = None) -> GroebnerBasis:
    degree = gb_degree if gb_degree is not None else pipe.gb_degree
    return truncated_groebner(pipe.presentation, None, degree, budget)


class _AuxMonomials:
    """Normal forms of the auxiliary central monomials z^i y^j (...).

    The corner e0 A e0 and the generator module are free over the
    commutative subring generated by the auxiliary elements, so expanding
    a normal form over these monomial columns has at most one solution;
    the expansion is found by exact Gaussian elimination over the
    coefficient field.
    """

    def __init__(self, pipe: PipelineData, gb: GroebnerBasis, budget: Budget):
        self.pipe = pipe
        self.gb = gb
        self.budget = budget
        self.names = [n for n, _ in pipe.aux]
        self.elements = [e for _, e in pipe.aux]
        self.weights = [pipe.graded_degree_element(e) for e in self.elements]
        self.ring = pipe.presentation.params.extend(self.names)
        self._powers = {}

    def monomials(self, bound: int) -> List[Tuple[int, ...]]:
        out = []

        def walk(i, exps, used):
            if i == len(self.weights):
                out.append(tuple(exps))
                return
            k = 0
            while used + k * self.weights[i] <= bound:
                walk(i + 1, exps + [k], used + k * self.weights[i])
                k += 1

        walk(0, [], 0)
        out.sort(key=lambda e: (sum(w * k for w, k in zip(self.weights, e)), e))
        return out

    def monomial_poly(self, exps: Tuple[int, ...]) -> MultiPoly:
        poly = self.ring.one()
        for name, k in zip(self.names, exps):
            if k:
                poly = poly * self.ring.var(name) ** k
        return poly

    def monomial_element(self, exps: Tuple[int, ...]) -> Element:
        cached = self._powers.get(exps)
        if cached is not None:
            return cached
        pres = self.pipe.presentation
        elem = Element.identity(pres.quiver, pres.params)
        for e, k in zip(self.elements, exps):
            for _ in range(k):
                elem = elem * e
        elem = reduce_element(elem, self.gb, self.budget)
        self._powers[exps] = elem
        return elem


def _express_in_span(target, columns, params) -> Optional[Dict]:
    """Solve target = sum_k coeff_k * column_k exactly; None if inconsistent.

    Target and columns are fraction-free pairs (poly terms, scale) with
    terms = scale * value.  Columns are linearly independent by freeness,
    so a solution is unique; forward elimination is Bareiss fraction-free
    and only the final back substitution touches rational functions.
    """
    t_terms, t_scale = target
    words = {}
    for _, col_terms, _ in columns:
        for p in col_terms:
            words.setdefault(p, len(words))
    for p in t_terms:
        if p not in words:
            return None
    ncols = len(columns)
    zero = params.zero()
    rows = [[zero] * (ncols + 1) for _ in range(len(words))]
    for j, (_, col_terms, _) in enumerate(columns):
        for p, c in col_terms.items():
            rows[words[p]][j] = c
    for p, c in t_terms.items():
        rows[words[p]][ncols] = c

    pivot_row_of_col = {}
    r = 0
    prev = params.one()
    for j in range(ncols):
        pv = None
        for i in range(r, len(rows)):
            if not rows[i][j].is_zero():
                pv = i
                break
        if pv is None:
            continue
        rows[r], rows[pv] = rows[pv], rows[r]
        piv = rows[r][j]
        for i in range(r + 1, len(rows)):
            if rows[i][j].is_zero():
                # still must rescale for Bareiss consistency
                updated = []
                for k in range(j, ncols + 1):
                    val = rows[i][k] * piv
                    updated.append(divexact(val, prev) if not prev.is_one() else val)
                rows[i][j:] = updated
                continue
            fij = rows[i][j]
            updated = []
            for k in range(j, ncols + 1):
                val = rows[i][k] * piv - fij * rows[r][k]
                updated.append(divexact(val, prev) if not prev.is_one() else val)
            rows[i][j:] = updated
        pivot_row_of_col[j] = r
        prev = piv
        r += 1

    # consistency: rows beyond the pivots must have zero RHS (their column
    # entries are all zero by construction)
    for i in range(r, len(rows)):
        if any(not rows[i][k].is_zero() for k in range(ncols)):
            return None  # a free column below a pivot: cannot happen
        if not rows[i][ncols].is_zero():
            return None

    # back substitution over the fraction field (few operations)
    sol: List[RatFunc] = [RatFunc.coerce(params, 0)] * ncols
    for j in sorted(pivot_row_of_col, reverse=True):
        i = pivot_row_of_col[j]
        acc = RatFunc(rows[i][ncols])
        for k in range(j + 1, ncols):
            if not rows[i][k].is_zero() and not sol[k].is_zero():
                acc = acc - RatFunc(rows[i][k]) * sol[k]
        sol[j] = acc / RatFunc(rows[i][j])

    scale = RatFunc(t_scale)
    out = {}
    for j, (key, _, col_scale) in enumerate(columns):
        if not sol[j].is_zero():
            out[key] = sol[j] * RatFunc(col_scale) / scale
    return out


def _nice_substitution(source, aux_names):
    """(target ring, raw param -> polynomial map) for a recorded nice basis."""
    entry = source if hasattr(source, "nice_param_map") else getattr(source, "entry", None)
    if entry is None or getattr(entry, "nice_param_map", None) is None:
        raise PipelineError("no recorded nice basis for %r" % (source,))
    ring = ParamRing(tuple(entry.nice_vars) + tuple(aux_names))
    mapping = {k: parse_poly(v, ring) for k, v in entry.nice_param_map.items()}
    return ring, mapping


def hypersurface(source, gb_degree: Optional[int] = None, basis: str = "raw",
                 budget: Optional[Budget] = None,
                 gb: Optional[GroebnerBasis] = None) -> Hypersurface:
    """Recover the hypersurface equation of the center from the pipeline.

    Computes NF(x'^2) and expands it over the monomials in the auxiliary
    central generators paired with {e0, x'}; the expansion coefficients
    assemble P and Q with f = x^2 - g, g = Q + P^2/4 after centering.
    basis='nice' applies the recorded change of basis to the output,
    exactly as the change of basis is applied to the raw equation.
    Raises TruncationInsufficientError (with a degree hint) when the
    expansion fails at this truncation.
    """
    if basis == "nice":
        raw = hypersurface(source, gb_degree=gb_degree, basis="raw",
                           budget=budget, gb=gb)
        aux = raw.aux_elements
        ring, mapping = _nice_substitution(source, aux.names)
        hyp = Hypersurface(raw.pipeline, raw.gb,
                           raw.P.substitute(mapping, ring),
                           raw.Q.substitute(mapping, ring),
                           raw.x_centered, aux)
        hyp.basis_map = (ring, mapping)
        return hyp
    pipe = _pipeline_of(source, basis)
    budget = budget or Budget()
    if gb is None:
        gb = pipeline_groebner(pipe, gb_degree, budget)
    pres = pipe.presentation
    x_prime = pipe.x_elem

    ep = x_prime.endpoints()
    if ep is None or ep[0] != ep[1]:
        raise PipelineError("x' must be a cycle, got endpoints %r" % (ep,))
    e0 = idempotent_path(pres.quiver, ep[0])
    e0_elem = Element.from_path(pres.quiver, pres.params, e0)

    aux = _AuxMonomials(pipe, gb, budget)
    xw = pipe.graded_degree_element(x_prime)
    bound = 2 * xw

    x_nf = reduce_element(x_prime, gb, budget)
    square = reduce_poly(x_prime * x_prime, gb, budget)

    columns = []
    for m in aux.monomials(bound):
        terms, scale = reduce_poly(aux.monomial_element(m) * e0_elem, gb, budget)
        if terms:
            columns.append((("Q", m), terms, scale))
    for m in aux.monomials(bound - xw):
        terms, scale = reduce_poly(aux.monomial_element(m) * x_nf, gb, budget)
        if terms:
            columns.append((("P", m), terms, scale))

    solution = _express_in_span(square, columns, pres.params)
    if solution is None:
        raise TruncationInsufficientError(
            "NF(x'^2) does not expand over the central monomials at truncation "
            "degree %d; try %d" % (gb.truncation_degree, gb.truncation_degree + 2),
            needed_degree=gb.truncation_degree + 2,
        )

    ring = aux.ring
    P = ring.zero()
    Q = ring.zero()
    for (kind, m), coeff in sorted(solution.items()):
        if not coeff.is_polynomial():
            raise PipelineError("non-polynomial expansion coefficient %s" % coeff)
        term = coeff.as_poly().cast(ring) * aux.monomial_poly(m)
        if kind == "P":
            P = P + term
        else:
            Q = Q + term

    # center: x := x' - P/2 with the auxiliary variables substituted back
    # by their defining elements
    half_P = _poly_as_element(P * Fraction(-1, 2), aux, e0_elem)
    x_centered = x_prime + half_P
    hyp = Hypersurface(pipe, gb, P, Q, x_centered, aux)

    # the centering must reduce x^2 to the pure central polynomial g
    g_no_x = hyp.g.substitute({"x": hyp.ring.zero()}, hyp.ring).cast(ring)
    check = reduce_element(x_centered * x_centered, gb, budget)
    g_elem = reduce_element(_poly_as_element(g_no_x, aux, e0_elem), gb, budget)
    if check != g_elem:
        raise PipelineError("internal: NF(x^2) disagrees with g after centering")
    return hyp


def _poly_as_element(poly: MultiPoly, aux: _AuxMonomials, e0_elem: Element) -> Element:
    """Evaluate a polynomial in the auxiliary variables on their elements."""
    pres = aux.pipe.presentation
    base = pres.params
    out = Element.zero(pres.quiver, base)
    aux_pos = [poly.ring.index(n) for n in aux.names]
    for exp, c in sorted(poly.terms.items()):
        rest = list(exp)
        mono = []
        for i, pos in enumerate(aux_pos):
            mono.append(exp[pos])
            rest[pos] = 0
        coeff_poly = MultiPoly(poly.ring, {tuple(rest): c}).cast(base)
        term = aux.monomial_element(tuple(mono)) * e0_elem
        out = out + term.scale(RatFunc(coeff_poly))
    return out


# ---------------------------------------------------------------------------
# matrix factorizations
# ---------------------------------------------------------------------------

class MatrixFactorization:
    """C with x.g_i = sum_j C_ij g_j and C^2 = g I exactly.

    Packaging (xI - C)(xI + C) = (x^2 - g) I = f I over Q[params][y,z][x].
    """

    def __init__(self, hyp: Hypersurface, generators: List[Path], C: List[List[MultiPoly]]):
        self.hypersurface = hyp
        self.generators = generators
        self.C = C
        self.size = len(generators)
        self.g = hyp.g.substitute({"x": hyp.P.ring.zero()}, hyp.P.ring)

    def check(self) -> bool:
        """Exact verification of C^2 = g I in the commutative ring."""
        n = self.size
        g = self.g
        ring = g.ring
        for i in range(n):
            for j in range(n):
                s = ring.zero()
                for k in range(n):
                    s = s + self.C[i][k] * self.C[k][j]
                want = g if i == j else ring.zero()
                if s != want:
                    return False
        return True

    def residual(self) -> List[List[MultiPoly]]:
        n = self.size
        g = self.g
        ring = g.ring
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                s = ring.zero()
                for k in range(n):
                    s = s + self.C[i][k] * self.C[k][j]
                row.append(s - (g if i == j else ring.zero()))
            out.append(row)
        return out

    def x_plus(self) -> List[List[MultiPoly]]:
        return self._shift(1)

    def x_minus(self) -> List[List[MultiPoly]]:
        return self._shift(-1)

    def _shift(self, sign: int) -> List[List[MultiPoly]]:
        ring = self.hypersurface.ring
        x = ring.var("x")
        out = []
        for i in range(self.size):
            row = []
            for j in range(self.size):
                entry = self.C[i][j].cast(ring) * sign
                if i == j:
                    entry = entry + x
                row.append(entry)
            out.append(row)
        return out

    def __repr__(self):
        return "MatrixFactorization(%dx%d, C^2 = g I)" % (self.size, self.size)


def matrix_factorization(source, gb_degree: Optional[int] = None, basis: str = "raw",
                         budget: Optional[Budget] = None,
                         hyp: Optional[Hypersurface] = None) -> MatrixFactorization:
    """Read off C from the x-action on the 2l module generators.

    Each NF(x . g_i) is expanded over the module basis {m g_j} (auxiliary
    monomial times generator, unique by freeness); C^2 = g I is checked
    exactly before returning.
    """
    if basis == "nice":
        if hyp is None:
            hyp = hypersurface(source, gb_degree=gb_degree, basis="nice", budget=budget)
        raw_hyp = hypersurface(source, gb_degree=gb_degree, basis="raw",
                               budget=budget, gb=hyp.gb)
        raw_mf = matrix_factorization(source, basis="raw", budget=budget, hyp=raw_hyp)
        ring, mapping = hyp.basis_map
        C = [[e.substitute(mapping, ring) for e in row] for row in raw_mf.C]
        mf = MatrixFactorization(hyp, raw_mf.generators, C)
        if not mf.check():
            raise PipelineError("matrix factorization identity broke under the basis change")
        return mf
    pipe = _pipeline_of(source, basis)
    budget = budget or Budget()
    if hyp is None:
        hyp = hypersurface(pipe, gb_degree=gb_degree, budget=budget)
    gb = hyp.gb
    pres = pipe.presentation
    aux = hyp.aux_elements
    ring = aux.ring

    gen_paths: List[Path] = []
    gen_nfs: List[Element] = []
    for i, g_el in enumerate(pipe.generators):
        if len(g_el.terms) != 1:
            raise PipelineError("generator %d is not a single path" % i)
        (p, c), = g_el.terms.items()
        if not c.is_one():
            raise PipelineError("generator %d is not monic" % i)
        nf = reduce_element(g_el, gb, budget)
        if nf.is_zero():
            raise PipelineError("generator %d (%s) reduces to zero" % (i, p.format(pres.quiver)))
        gen_paths.append(p)
        gen_nfs.append(nf)

    x = hyp.x_centered
    xw = pipe.graded_degree_element(x)
    gmax = max(pipe.graded_degree_element(g) for g in gen_nfs)
    gmin = min(pipe.graded_degree_element(g) for g in gen_nfs)
    bound = xw + gmax - gmin

    columns = []
    for j, g_nf in enumerate(gen_nfs):
        for m in aux.monomials(bound):
            terms, scale = reduce_poly(aux.monomial_element(m) * g_nf, gb, budget)
            if terms:
                columns.append(((j, m), terms, scale))

    n = len(gen_paths)
    C: List[List[MultiPoly]] = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for i, g_el in enumerate(gen_nfs):
        image = reduce_poly(x * g_el, gb, budget)
        solution = _express_in_span(image, columns, pres.params)
        if solution is None:
            raise TruncationInsufficientError(
                "NF(x.g_%d) does not expand over the generator module basis at "
                "truncation %d; try %d"
                % (i, gb.truncation_degree, gb.truncation_degree + 2),
                needed_degree=gb.truncation_degree + 2,
            )
        for (j, m), coeff in solution.items():
            if not coeff.is_polynomial():
                raise PipelineError("non-polynomial entry C[%d][%d]: %s" % (i, j, coeff))
            C[i][j] = C[i][j] + coeff.as_poly().cast(ring) * aux.monomial_poly(m)

    mf = MatrixFactorization(hyp, gen_paths, C)
    if not mf.check():
        bad = [(i, j) for i, row in enumerate(mf.residual())
               for j, e in enumerate(row) if not e.is_zero()]
        raise PipelineError(
            "matrix factorization identity C^2 = g I fails at entries %s" % bad[:6])
    return mf


# ---------------------------------------------------------------------------
# specialization along classifying maps
# ---------------------------------------------------------------------------

def specialize(alg: AlgebraPresentation, mapping: Mapping[str, Union[str, MultiPoly]],
               ring: Optional[ParamRing] = None, name: str = "") -> AlgebraPresentation:
    """Push the presentation along a parameter substitution.

    `mapping` sends parameter names to polynomials over the target ring
    (texts are parsed over `ring`); unmapped parameters must exist in the
    target ring and are retained.
    """
    if ring is None:
        polys = [v for v in mapping.values() if isinstance(v, MultiPoly)]
        if polys:
            ring = polys[0].ring
        else:
            keep = [n for n in alg.params.names if n not in mapping]
            ring = ParamRing(keep)
    poly_map: Dict[str, MultiPoly] = {}
    for k, v in mapping.items():
        alg.params.index(k)
        poly_map[k] = parse_poly(v, ring) if isinstance(v, str) else v.cast(ring)
    relations = []
    for r in alg.relations:
        img = r.map_coefficients(lambda c: c.substitute(poly_map, ring))
        img = Element(r.quiver, ring, img.terms)
        if not img.is_zero():
            relations.append(img)
    return AlgebraPresentation(
        alg.quiver, ring, relations,
        name=name or (alg.name + "-specialized" if alg.name else "specialized"),
        precedence=alg.precedence, gb_degree=alg.gb_degree,
    )


# ---------------------------------------------------------------------------
# superpotentials
# ---------------------------------------------------------------------------

def cyclic_derivative(w: Element, arrow: str) -> Element:
    """For each occurrence of the arrow in each cyclic word, rotate that
    occurrence to the front and delete it; sum with coefficients."""
    quiver = w.quiver
    a = quiver.arrow(arrow)
    out = Element.zero(quiver, w.params)
    for path, coeff in w.terms.items():
        if path.source != path.target:
            raise PipelineError(
                "cyclic derivative needs cyclic terms; %s runs %s -> %s"
                % (path.format(quiver), path.source, path.target))
        arrows = path.arrows
        for i, ai in enumerate(arrows):
            if ai != a.index:
                continue
            rotated = arrows[i + 1:] + arrows[:i]
            out = out + Element.from_path(
                quiver, w.params, Path(quiver, a.target, rotated, _check=False), coeff)
    return out


class SuperpotentialReport(CheckReport):
    def __init__(self):
        super().__init__()
        self.derivatives: Dict[str, Element] = {}
        self.derivative_normal_forms: Dict[str, Element] = {}


def verify_superpotential(alg: AlgebraPresentation, phi: Element,
                          gb_degree: Optional[int] = None,
                          budget: Optional[Budget] = None) -> SuperpotentialReport:
    """Check that the cyclic derivatives of phi match the relation ideal.

    Two directions, both up to the truncation degree: every derivative must
    reduce to zero against the relations (the derivatives lie in the
    ideal), and every relation must reduce to zero against the ideal
    generated by the derivatives.
    """
    budget = budget or Budget()
    report = SuperpotentialReport()
    degree = gb_degree if gb_degree is not None else alg.gb_degree
    if degree is None:
        degree = max(phi.degree(), *(r.degree() for r in alg.relations)) + 4
    degree = max(degree, phi.degree(),
                 max((r.degree() for r in alg.relations if not r.is_zero()), default=1))

    gb = truncated_groebner(alg, None, degree, budget)
    derivs = {}
    for a in alg.quiver.arrows:
        d = cyclic_derivative(phi, a.name)
        derivs[a.name] = d
        report.derivatives[a.name] = d
        nf = reduce_element(d, gb, budget)
        report.derivative_normal_forms[a.name] = nf
        report.add("NF(d_%s phi) = 0" % a.name, nf.is_zero(),
                   "" if nf.is_zero() else nf.format(gb.order))

    deriv_rels = [d for d in derivs.values() if not d.is_zero()]
    if deriv_rels:
        dalg = alg.with_relations(deriv_rels, name=(alg.name or "algebra") + "-potential")
        dgb = truncated_groebner(dalg, None, degree, budget)
        for i, r in enumerate(alg.relations):
            nf = reduce_element(r, dgb, budget)
            report.add("relation %d in <d phi>" % i, nf.is_zero(),
                       "" if nf.is_zero() else nf.format(dgb.order))
    else:
        for i, r in enumerate(alg.relations):
            report.add("relation %d in <d phi>" % i, r.is_zero())
    return report


# ---------------------------------------------------------------------------
# representation verification
# ---------------------------------------------------------------------------

class Representation:
    """Dimension vector plus one matrix per arrow over a commutative ring.

    Matrix entries are polynomials over `ring`; `param_map` sends the
    algebra's parameters into that ring so relation coefficients can be
    evaluated.  A path acts by the left-to-right product of its arrow
    matrices, shapes dim(source) x dim(target).
    """

    def __init__(self, algebra: AlgebraPresentation, dims: Mapping[str, int],
                 matrices: Mapping[str, Sequence[Sequence]], ring: ParamRing,
                 param_map: Optional[Mapping[str, Union[str, MultiPoly]]] = None):
        self.algebra = algebra
        self.dims = {str(v): int(n) for v, n in dims.items()}
        self.ring = ring
        self.param_map = {
            k: (parse_poly(v, ring) if isinstance(v, str) else v)
            for k, v in (param_map or {}).items()
        }
        self.matrices: Dict[str, List[List[MultiPoly]]] = {}
        for a in algebra.quiver.arrows:
            if a.name not in matrices:
                raise PipelineError("missing matrix for arrow %r" % a.name)
            rows = matrices[a.name]
            m = [[parse_poly(e, ring) if isinstance(e, str) else MultiPoly.coerce(ring, e)
                  for e in row] for row in rows]
            want = (self.dims[a.source], self.dims[a.target])
            got = (len(m), len(m[0]) if m else 0)
            if want != got:
                raise PipelineError(
                    "matrix for %r has shape %r, expected %r" % (a.name, got, want))
            self.matrices[a.name] = m

    def path_matrix(self, path: Path) -> List[List[MultiPoly]]:
        n = self.dims[path.source]
        out = [[self.ring.one() if i == j else self.ring.zero() for j in range(n)]
               for i in range(n)]
        for ai in path.arrows:
            name = self.algebra.quiver.arrows[ai].name
            out = _mat_mul(out, self.matrices[name], self.ring)
        return out

    def evaluate(self, elem: Element) -> List[List[MultiPoly]]:
        ep = elem.endpoints()
        if ep is None:
            raise PipelineError("cannot evaluate an endpoint-inhomogeneous element")
        rows, cols = self.dims[ep[0]], self.dims[ep[1]]
        acc = [[self.ring.zero() for _ in range(cols)] for _ in range(rows)]
        for path, coeff in elem.terms.items():
            c = coeff.substitute(self.param_map, self.ring)
            if not c.is_polynomial():
                raise PipelineError("coefficient %s is not polynomial in the chart ring" % c)
            cp = c.as_poly()
            mat = self.path_matrix(path)
            for i in range(rows):
                for j in range(cols):
                    acc[i][j] = acc[i][j] + cp * mat[i][j]
        return acc


def _mat_mul(a, b, ring):
    rows, mid, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(mid):
            e = a[i][k]
            if e.is_zero():
                continue
            for j in range(cols):
                out[i][j] = out[i][j] + e * b[k][j]
    return out


def verify_representation(alg: AlgebraPresentation, rep: Representation) -> CheckReport:
    """Evaluate every relation on the matrices; pass iff all vanish."""
    report = CheckReport()
    for i, r in enumerate(alg.relations):
        if r.is_zero():
            report.add("relation %d" % i, True)
            continue
        mat = rep.evaluate(r)
        ok = all(e.is_zero() for row in mat for e in row)
        detail = ""
        if not ok:
            bad = [(a, b) for a, row in enumerate(mat) for b, e in enumerate(row)
                   if not e.is_zero()]
            detail = "nonzero at %s" % bad[:4]
        report.add("relation %d" % i, ok, detail)
    return report

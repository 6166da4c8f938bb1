"""Two-sided noncommutative Groebner bases for path-algebra ideals.

Completion is Bergman-style overlap (diamond lemma) resolution on leading
words, restricted to vertex-compatible overlaps and truncated by word
degree.  Rules are interreduced (no leading word contains another rule's
leading word; tails fully reduced) and pair selection follows the normal
strategy (lowest overlap degree first, ties broken by the monomial order),
so repeated runs produce identical bases element by element.

Internally the rewriting is fraction free: a rule is stored as
lc * lead ≡ rest with polynomial coefficients, applying a rule with a
nonconstant leading coefficient pseudo-scales the working element, and the
accumulated multiplier is divided out only when a caller asks for an
actual normal form.  Rules with constant leading coefficients (the vast
majority) are made genuinely monic at creation, so most rewrite steps are
exact; the monic-over-the-fraction-field view of the basis is what
`rule_elements` and `serialize` present.

Normal forms are unique for inputs whose degree stays within the
truncation bound; `reduce_element` is the same rewriting loop without the
degree guard (sound for ideal membership at any degree, canonical only
below it).
"""

from __future__ import annotations

import os
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .coeff import MultiPoly, ParamRing, RatFunc, divexact, poly_gcd
from .pathalg import (
    AlgebraPresentation,
    Element,
    MonomialOrder,
    Path,
    PathAlgebraError,
    Quiver,
)

DEFAULT_MAX_STEPS = 10 ** 6
INFINITE = "infinite-or-budget"

PolyTerms = Dict[Path, MultiPoly]


class BudgetExceededError(RuntimeError):
    """Raised when a completion or reduction exceeds its step budget."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class TruncationError(PathAlgebraError):
    """Input degree exceeds the basis truncation degree."""


class Budget:
    __slots__ = ("max_steps", "steps")

    def __init__(self, max_steps: Optional[int] = None):
        if max_steps is None:
            max_steps = int(os.environ.get("FLOPCALC_MAX_STEPS", DEFAULT_MAX_STEPS))
        self.max_steps = max_steps
        self.steps = 0

    def tick(self, n: int = 1):
        self.steps += n
        if self.steps > self.max_steps:
            raise BudgetExceededError(
                "reduction step budget exceeded (%d steps; raise FLOPCALC_MAX_STEPS "
                "or pass a larger budget)" % self.max_steps
            )


class Rule:
    """Rewrite rule lc * lead ≡ rest with polynomial coefficients.

    `lc` is 1 whenever the candidate's leading coefficient was constant.
    An empty lead (idempotent path e_v) is the degenerate rule e_v -> 0,
    killing every path through v.
    """

    __slots__ = ("lead", "lc", "rest")

    def __init__(self, lead: Path, lc: MultiPoly, rest: PolyTerms):
        self.lead = lead
        self.lc = lc
        self.rest = rest

    def poly_element(self) -> PolyTerms:
        terms = {self.lead: self.lc}
        for p, c in self.rest.items():
            terms[p] = -c
        return terms

    def monic_element(self, quiver: Quiver, params: ParamRing) -> Element:
        """The relation as a monic element: lead - remainder."""
        terms = {self.lead: RatFunc.coerce(params, 1)}
        lc = RatFunc(self.lc)
        for p, c in self.rest.items():
            terms[p] = -(RatFunc(c) / lc)
        return Element(quiver, params, terms)

    def remainder_element(self, quiver: Quiver, params: ParamRing) -> Element:
        """What the lead word rewrites to: rest / lc."""
        lc = RatFunc(self.lc)
        return Element(quiver, params,
                       {p: RatFunc(c) / lc for p, c in self.rest.items()})

    def __repr__(self):
        return "Rule(%r -> %d terms)" % (self.lead, len(self.rest))


def _visits(quiver: Quiver, path: Path, vertex: str) -> Optional[int]:
    """First position at which `path`'s vertex sequence hits `vertex`."""
    if path.source == vertex:
        return 0
    at = path.source
    for i, ai in enumerate(path.arrows):
        at = quiver.arrows[ai].target
        if at == vertex:
            return i + 1
    return None


class _RuleIndex:
    """Rules indexed by leading first arrow for leftmost subword search."""

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        self.rules: List[Rule] = []
        self.by_first: Dict[int, List[Rule]] = {}
        self.empty_leads: Dict[str, Rule] = {}

    def add(self, rule: Rule):
        self.rules.append(rule)
        if rule.lead.arrows:
            self.by_first.setdefault(rule.lead.arrows[0], []).append(rule)
        else:
            self.empty_leads[rule.lead.source] = rule

    def remove(self, rule: Rule):
        self.rules.remove(rule)
        if rule.lead.arrows:
            self.by_first[rule.lead.arrows[0]].remove(rule)
        else:
            del self.empty_leads[rule.lead.source]

    def find(self, path: Path):
        """Leftmost match: (position, rule) or None.

        Interreduction guarantees at most one nonempty lead matches at a
        given position; empty leads are checked on the vertex sequence.
        """
        if self.empty_leads:
            for v, rule in self.empty_leads.items():
                pos = _visits(self.quiver, path, v)
                if pos is not None:
                    return pos, rule
        word = path.arrows
        by_first = self.by_first
        n = len(word)
        for i in range(n):
            cands = by_first.get(word[i])
            if not cands:
                continue
            for rule in cands:
                la = rule.lead.arrows
                m = len(la)
                if i + m <= n and word[i:i + m] == la:
                    return i, rule
        return None

    def is_normal(self, path: Path) -> bool:
        return self.find(path) is None


class GroebnerBasis:
    """An interreduced truncated rewriting system with its monomial order."""

    def __init__(
        self,
        algebra: AlgebraPresentation,
        order: MonomialOrder,
        rules: Sequence[Rule],
        truncation_degree: int,
        complete: bool,
    ):
        self.algebra = algebra
        self.order = order
        self.rules = list(rules)
        self.truncation_degree = truncation_degree
        self.complete = complete
        self._index = _RuleIndex(algebra.quiver)
        for r in self.rules:
            self._index.add(r)

    def __repr__(self):
        return "GroebnerBasis(%d rules, degree<=%d, complete=%s)" % (
            len(self.rules),
            self.truncation_degree,
            self.complete,
        )

    def rule_elements(self) -> List[Element]:
        """The rules as monic elements lead - remainder over the fraction field."""
        q, pr = self.algebra.quiver, self.algebra.params
        return [r.monic_element(q, pr) for r in self.rules]

    def serialize(self) -> str:
        """Ordered rule list `lead -> remainder` with a header."""
        lines = [
            "order: deglex; %s" % ", ".join(self.order.precedence),
            "truncation_degree: %d" % self.truncation_degree,
            "complete: %s" % ("true" if self.complete else "false"),
        ]
        q, pr = self.algebra.quiver, self.algebra.params
        for r in self.rules:
            lines.append("%s -> %s" % (
                r.lead.format(q), r.remainder_element(q, pr).format(self.order)))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# fraction-free reduction
# ---------------------------------------------------------------------------

def _reduce_poly_terms(
    terms: PolyTerms,
    index: _RuleIndex,
    quiver: Quiver,
    order: MonomialOrder,
    budget: Budget,
) -> Tuple[PolyTerms, MultiPoly]:
    """Fully reduce, fraction free; returns (reduced, multiplier).

    The result equals multiplier * (exact reduction of the input); the
    multiplier is the product of the nonconstant leading coefficients of
    the rules applied.  Deterministic: largest reducible word first.
    """
    ring = None
    work: PolyTerms = {}
    for p, c in terms.items():
        if not c.is_zero():
            work[p] = c
            ring = c.ring
    out: PolyTerms = {}
    mult: Optional[MultiPoly] = None
    key = order.key
    find = index.find
    while work:
        w = max(work, key=key)
        c = work.pop(w)
        if c.is_zero():
            continue
        m = find(w)
        if m is None:
            prev = out.get(w)
            s = c if prev is None else prev + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
            continue
        budget.tick()
        pos, rule = m
        if not rule.lc.is_one():
            lc = rule.lc
            for p in list(work):
                work[p] = work[p] * lc
            for p in list(out):
                out[p] = out[p] * lc
            mult = lc if mult is None else mult * lc
        la = rule.lead.arrows
        pre = w.arrows[:pos]
        post = w.arrows[pos + len(la):]
        for rw, rc in rule.rest.items():
            np = Path(quiver, w.source, pre + rw.arrows + post, _check=False)
            nc = c * rc
            prev = work.get(np)
            s = nc if prev is None else prev + nc
            if s.is_zero():
                work.pop(np, None)
            else:
                work[np] = s
    if mult is None:
        if ring is None:
            ring = ParamRing([])
        mult = ring.one()
    return out, mult


def _poly_content(terms: PolyTerms) -> Optional[MultiPoly]:
    acc = None
    for c in terms.values():
        acc = c if acc is None else poly_gcd(acc, c)
        if acc.is_one():
            return acc
    return acc


def _primitive(terms: PolyTerms, order: MonomialOrder) -> PolyTerms:
    """Divide by the polynomial content and normalize the sign so the
    leading word's leading rational coefficient is positive."""
    if not terms:
        return terms
    cont = _poly_content(terms)
    if cont is not None and not cont.is_one():
        terms = {p: divexact(c, cont) for p, c in terms.items()}
    lead = max(terms, key=order.key)
    _, lead_c = terms[lead].lead()
    if lead_c != 1:
        inv = 1 / lead_c
        # keep coefficients polynomial: rational rescale is always exact
        terms = {p: MultiPoly(c.ring, {e: v * inv for e, v in c.terms.items()})
                 for p, c in terms.items()}
    return terms


def _clear_denominators(x: Element) -> Tuple[PolyTerms, MultiPoly]:
    """(polynomial terms, D) with terms = D * x."""
    ring = x.params
    D = ring.one()
    for c in x.terms.values():
        if not c.den.is_one():
            g = poly_gcd(D, c.den)
            extra = divexact(c.den, g) if not g.is_one() else c.den
            D = D * extra
    terms: PolyTerms = {}
    for p, c in x.terms.items():
        scaled = c * RatFunc(D)
        terms[p] = scaled.as_poly()
    return terms, D


def reduce_poly(x: Element, gb: GroebnerBasis, budget: Optional[Budget] = None
                ) -> Tuple[PolyTerms, MultiPoly]:
    """Fraction-free reduction: (terms, scale) with terms = scale * NF(x)."""
    budget = budget or Budget()
    cleared, D = _clear_denominators(x)
    reduced, mult = _reduce_poly_terms(cleared, gb._index, x.quiver, gb.order, budget)
    return reduced, D * mult


def reduce_element(x: Element, gb: GroebnerBasis, budget: Optional[Budget] = None) -> Element:
    """Rewrite x to an irreducible form (canonical below truncation only)."""
    reduced, scale = reduce_poly(x, gb, budget)
    rscale = RatFunc(scale)
    terms = {p: RatFunc(c) / rscale for p, c in reduced.items()}
    return Element(x.quiver, x.params, terms)


def normal_form(x: Element, gb: GroebnerBasis, budget: Optional[Budget] = None) -> Element:
    """Unique irreducible representative modulo the ideal, up to truncation."""
    if x.degree() > gb.truncation_degree:
        raise TruncationError(
            "element degree %d exceeds basis truncation degree %d"
            % (x.degree(), gb.truncation_degree)
        )
    return reduce_element(x, gb, budget)


# ---------------------------------------------------------------------------
# completion
# ---------------------------------------------------------------------------

def _make_rule(terms: PolyTerms, order: MonomialOrder) -> Rule:
    lead = max(terms, key=order.key)
    lc = terms[lead]
    rest = {}
    if lc.is_constant():
        inv = 1 / lc.constant_value()
        for p, c in terms.items():
            if p == lead:
                continue
            rest[p] = MultiPoly(c.ring, {e: -v * inv for e, v in c.terms.items()})
        lc = lc.ring.one()
    else:
        for p, c in terms.items():
            if p == lead:
                continue
            rest[p] = -c
    return Rule(lead, lc, rest)


def truncated_groebner(
    algebra: AlgebraPresentation,
    order: Optional[MonomialOrder] = None,
    max_degree: Optional[int] = None,
    budget: Optional[Budget] = None,
) -> GroebnerBasis:
    """Overlap completion truncated at `max_degree` (word degree).

    Deterministic for fixed inputs.  Raises BudgetExceededError (carrying
    the partial basis in `.partial`) when the step cap is hit.
    """
    if order is None:
        order = algebra.order()
    if max_degree is None:
        max_degree = algebra.gb_degree
    if max_degree is None:
        raise PathAlgebraError("max_degree required (no default recorded on presentation)")
    budget = budget or Budget()
    quiver, params = algebra.quiver, algebra.params
    key = order.key
    arrow_degree = tuple(a.degree for a in quiver.arrows)

    max_rel_degree = max((r.degree() for r in algebra.relations if not r.is_zero()), default=0)
    if max_degree < max_rel_degree:
        raise PathAlgebraError(
            "max_degree %d is below the maximum relation degree %d" % (max_degree, max_rel_degree)
        )

    index = _RuleIndex(quiver)
    pending: List[PolyTerms] = [
        _clear_denominators(r)[0] for r in algebra.relations if not r.is_zero()
    ]
    seen_overlaps: Set[Tuple] = set()
    overlap_queue: List[Tuple] = []
    skipped_above = [False]

    def queue_overlaps(rule: Rule):
        l1 = rule.lead.arrows
        if not l1:
            return
        for other in index.rules:
            l2 = other.lead.arrows
            if not l2:
                continue
            for first, second in ((rule, other), (other, rule)):
                a1, a2 = first.lead.arrows, second.lead.arrows
                for k in range(1, min(len(a1), len(a2))):
                    if a1[len(a1) - k:] != a2[:k]:
                        continue
                    sig = (a1, a2, k)
                    if sig in seen_overlaps:
                        continue
                    seen_overlaps.add(sig)
                    word = a1 + a2[k:]
                    deg = sum(arrow_degree[i] for i in word)
                    if deg > max_degree:
                        skipped_above[0] = True
                        continue
                    src = quiver.arrows[word[0]].source
                    wkey = key(Path(quiver, src, word, _check=False))
                    overlap_queue.append((deg, wkey, sig, first, second, k))
                if first is second:
                    break

    def insert(terms: PolyTerms):
        rule = _make_rule(terms, order)
        la = rule.lead.arrows
        retired = []
        if la:
            m = len(la)
            for r in index.rules:
                wa = r.lead.arrows
                if len(wa) > m and any(wa[i:i + m] == la for i in range(len(wa) - m + 1)):
                    retired.append(r)
        else:
            v = rule.lead.source
            for r in index.rules:
                if r.lead.arrows and _visits(quiver, r.lead, v) is not None:
                    retired.append(r)
        for r in retired:
            index.remove(r)
            pending.append(r.poly_element())
        index.add(rule)
        # keep every tail fully reduced against the updated system
        for r in index.rules:
            if not r.rest:
                continue
            reduced, mult = _reduce_poly_terms(r.rest, index, quiver, order, budget)
            if mult.is_one():
                r.rest = reduced
            else:
                # lc * lead = rest got scaled: rescale lc accordingly, then
                # restore primitivity of the full rule
                whole = {r.lead: r.lc * mult}
                for p, c in reduced.items():
                    whole[p] = -c
                prim = _primitive(whole, order)
                fresh = _make_rule(prim, order)
                r.lc = fresh.lc
                r.rest = fresh.rest
        queue_overlaps(rule)

    active = lambda r: (r in index.rules)

    try:
        while True:
            if pending:
                normalized = []
                for t in pending:
                    red, _ = _reduce_poly_terms(t, index, quiver, order, budget)
                    if red:
                        normalized.append(_primitive(red, order))
                pending.clear()
                if not normalized:
                    continue
                normalized.sort(key=lambda t: key(max(t, key=key)))
                chosen = normalized[0]
                pending.extend(normalized[1:])
                insert(chosen)
                continue
            best_i = -1
            for i, entry in enumerate(overlap_queue):
                if not (active(entry[3]) and active(entry[4])):
                    continue
                if best_i < 0 or entry[:3] < overlap_queue[best_i][:3]:
                    best_i = i
            if best_i < 0:
                break
            _, _, _, r1, r2, k = overlap_queue.pop(best_i)
            l1, l2 = r1.lead.arrows, r2.lead.arrows
            src = quiver.arrows[l1[0]].source
            tail = l2[k:]
            head = l1[: len(l1) - k]
            # lc1*word ≡ rest1*tail and lc2*word ≡ head*rest2:
            # S = lc2*(rest1∘tail) - lc1*(head∘rest2)
            terms: PolyTerms = {}
            for rw, rc in r1.rest.items():
                p = Path(quiver, src, rw.arrows + tail, _check=False)
                c = rc if r2.lc.is_one() else rc * r2.lc
                prev = terms.get(p)
                s = c if prev is None else prev + c
                if s.is_zero():
                    terms.pop(p, None)
                else:
                    terms[p] = s
            for rw, rc in r2.rest.items():
                p = Path(quiver, src, head + rw.arrows, _check=False)
                c = rc if r1.lc.is_one() else rc * r1.lc
                prev = terms.get(p)
                s = -c if prev is None else prev - c
                if s.is_zero():
                    terms.pop(p, None)
                else:
                    terms[p] = s
            reduced, _ = _reduce_poly_terms(terms, index, quiver, order, budget)
            if reduced:
                pending.append(reduced)
    except BudgetExceededError as exc:
        exc.partial = GroebnerBasis(algebra, order, list(index.rules), max_degree, False)
        raise

    rules = sorted(index.rules, key=lambda r: key(r.lead))
    return GroebnerBasis(algebra, order, rules, max_degree, complete=not skipped_above[0])


# ---------------------------------------------------------------------------
# normal word enumeration and dimension
# ---------------------------------------------------------------------------

def enumerate_normal_words(
    gb: GroebnerBasis,
    source: Optional[str] = None,
    target: Optional[str] = None,
    max_degree: Optional[int] = None,
    max_count: int = 10 ** 6,
) -> List[Path]:
    """All irreducible words with the given endpoints, graded by degree.

    With max_degree=None the enumeration runs until a degree level is empty
    (valid because normal words are closed under taking prefixes); if it
    instead passes the pumping bound the quotient is infinite dimensional
    and BudgetExceededError is raised.
    """
    quiver = gb.algebra.quiver
    if source is not None:
        source = str(source)
    if target is not None:
        target = str(target)
    index = gb._index
    out: List[Path] = []
    frontier = [
        Path(quiver, v, ())
        for v in quiver.vertices
        if source in (None, v) and index.is_normal(Path(quiver, v, ()))
    ]
    bound = max_degree if max_degree is not None else _pumping_bound(gb)
    while frontier:
        for p in frontier:
            if target in (None, p.target):
                out.append(p)
        if len(out) > max_count:
            raise BudgetExceededError("normal word enumeration exceeded max_count=%d" % max_count)
        new: List[Path] = []
        for p in frontier:
            for a in quiver.arrows:
                if a.source != p.target:
                    continue
                np = Path(quiver, p.source, p.arrows + (a.index,), _check=False)
                if np.degree > bound:
                    if max_degree is None:
                        raise BudgetExceededError(
                            "normal words keep growing past the pumping bound; "
                            "the quotient is infinite dimensional"
                        )
                    continue
                if index.is_normal(np):
                    new.append(np)
        frontier = new
    okey = gb.order.key
    out.sort(key=lambda p: (p.degree, okey(p)))
    return out


def _pumping_bound(gb: GroebnerBasis) -> int:
    """Length bound past which normal-word growth proves infinite dimension.

    Extension of a normal word depends only on its trailing m-1 arrows
    (m = longest lead length): a normal word longer than the number of such
    states repeats a state and can be pumped, giving infinitely many.
    """
    quiver = gb.algebra.quiver
    m = max((len(r.lead.arrows) for r in gb.rules), default=1)
    window = max(m - 1, 1)
    counts = {v: 1 for v in quiver.vertices}
    states = len(quiver.vertices)
    for _ in range(window):
        nxt = {v: 0 for v in quiver.vertices}
        for a in quiver.arrows:
            nxt[a.target] += counts[a.source]
        counts = nxt
        states += sum(counts.values())
        if states > 10 ** 6:
            break
    maxdeg = max((a.degree for a in quiver.arrows), default=1)
    return (states + window + 2) * maxdeg


def dimension(
    algebra: AlgebraPresentation,
    order: Optional[MonomialOrder] = None,
    start_degree: Optional[int] = None,
    max_truncation: int = 64,
    budget: Optional[Budget] = None,
):
    """Total normal-word count when finite; INFINITE for provable growth.

    The detection loop raises the truncation degree until the basis is
    complete (no overlaps skipped); a complete basis either hits an empty
    degree level (finite, exact count) or passes the pumping bound
    (infinite dimensional).  Budget exhaustion raises BudgetExceededError.
    """
    budget = budget or Budget()
    if order is None:
        order = algebra.order()
    rel_deg = max((r.degree() for r in algebra.relations if not r.is_zero()), default=1)
    d = start_degree or max(2 * rel_deg, 4)
    while d <= max_truncation:
        gb = truncated_groebner(algebra, order, d, budget)
        if gb.complete:
            try:
                words = enumerate_normal_words(gb, None, None, None)
            except BudgetExceededError as exc:
                if "pumping bound" in str(exc):
                    return INFINITE
                raise
            return len(words)
        d = d + max(2, d // 2)
    raise BudgetExceededError("no complete basis below truncation degree %d" % max_truncation)

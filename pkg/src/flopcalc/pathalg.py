"""Quivers, vertex-typed paths, and elements of path algebras.

A path algebra element is a finite sum of (rational-function coefficient,
path) pairs.  Paths are typed by source and target vertex, with the empty
path at v acting as the idempotent e_v, so non-composable products are zero
by construction rather than by bookkeeping.

The module also owns the line-oriented presentation file format::

    name: length-2
    params: t, T0b, T0c, T0d
    vertices: 0, 4
    arrows: a: 0 -> 4, A: 4 -> 0, b: 4 -> 4 (deg 1), c: 4 -> 4, d: 4 -> 4
    relations: a*A - t*e0 ; b*b - T0b*e4
    relations: A*a + b + c + d - (1/2)*t*e4

`e<v>` denotes the idempotent at vertex v, `*` is (noncommutative) product,
`#` starts a comment.  parse -> print -> parse is the identity.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import (
    CoeffError,
    ParamRing,
    RatFunc,
    _PolyParser,
    tokenize_poly,
)


class PathAlgebraError(ValueError):
    pass


class ParseError(PathAlgebraError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = " (line %d%s)" % (line, ", column %d" % column if column is not None else "")
        super().__init__(message + loc)
        self.line = line
        self.column = column


class Arrow:
    __slots__ = ("name", "source", "target", "degree", "index")

    def __init__(self, name: str, source: str, target: str, degree: int = 1, index: int = -1):
        self.name = name
        self.source = source
        self.target = target
        self.degree = int(degree)
        self.index = index
        if self.degree < 1:
            raise PathAlgebraError("arrow %r must have positive degree" % name)

    def __repr__(self):
        return "Arrow(%s: %s -> %s)" % (self.name, self.source, self.target)


class Quiver:
    """Ordered vertices plus named arrows with source/target and degree."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple], name: str = ""):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise PathAlgebraError("vertex ids must be distinct")
        vset = set(self.vertices)
        self.arrows: Tuple[Arrow, ...] = ()
        built = []
        names = set()
        for i, spec in enumerate(arrows):
            if isinstance(spec, Arrow):
                a = Arrow(spec.name, spec.source, spec.target, spec.degree, i)
            else:
                nm, src, tgt = spec[0], str(spec[1]), str(spec[2])
                deg = spec[3] if len(spec) > 3 else 1
                a = Arrow(nm, src, tgt, deg, i)
            if a.name in names:
                raise PathAlgebraError("duplicate arrow name %r" % a.name)
            if a.source not in vset or a.target not in vset:
                raise PathAlgebraError("arrow %r has undeclared endpoint" % a.name)
            names.add(a.name)
            built.append(a)
        self.arrows = tuple(built)
        self.name = name
        self._by_name = {a.name: a for a in self.arrows}

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise PathAlgebraError("undeclared arrow %r" % name)

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and [(a.name, a.source, a.target, a.degree) for a in self.arrows]
            == [(a.name, a.source, a.target, a.degree) for a in other.arrows]
        )

    def __hash__(self):
        return hash((self.vertices, tuple((a.name, a.source, a.target, a.degree) for a in self.arrows)))

    def __repr__(self):
        return "Quiver(vertices=%r, arrows=%r)" % (list(self.vertices), [a.name for a in self.arrows])


class Path:
    """A composable arrow word; the empty word at v is the idempotent e_v."""

    __slots__ = ("source", "target", "arrows", "degree", "_hash")

    def __init__(self, quiver: Quiver, source: str, arrows: Tuple[int, ...], _check: bool = True):
        self.arrows = arrows
        if arrows:
            qa = quiver.arrows
            if _check:
                at = source
                for i in arrows:
                    a = qa[i]
                    if a.source != at:
                        raise PathAlgebraError("non-composable arrow sequence")
                    at = a.target
            self.source = source
            self.target = qa[arrows[-1]].target
            self.degree = sum(qa[i].degree for i in arrows)
        else:
            self.source = source
            self.target = source
            self.degree = 0
        self._hash = hash((self.source, self.arrows))

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.source == other.source
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.arrows)

    def format(self, quiver: Quiver) -> str:
        if not self.arrows:
            return "e%s" % self.source
        return "*".join(quiver.arrows[i].name for i in self.arrows)

    def __repr__(self):
        return "Path(%s->%s, %r)" % (self.source, self.target, self.arrows)


def idempotent_path(quiver: Quiver, vertex: str) -> Path:
    vertex = str(vertex)
    if vertex not in quiver.vertices:
        raise PathAlgebraError("undeclared vertex %r" % vertex)
    return Path(quiver, vertex, ())


def arrow_path(quiver: Quiver, name: str) -> Path:
    a = quiver.arrow(name)
    return Path(quiver, a.source, (a.index,), _check=False)


def compose(quiver: Quiver, p: Path, q: Path) -> Optional[Path]:
    """Concatenation p then q; None encodes the formal zero."""
    if p.target != q.source:
        return None
    if not p.arrows:
        return q
    if not q.arrows:
        return p
    return Path(quiver, p.source, p.arrows + q.arrows, _check=False)


class MonomialOrder:
    """Degree-lex over an arrow precedence list (earlier name = greater).

    Words are compared by (total degree, length, letters); the letter
    comparison uses the precedence ranks, so the order is total on
    composable words, multiplicative, and well founded.
    """

    def __init__(self, quiver: Quiver, precedence: Optional[Sequence[str]] = None):
        self.quiver = quiver
        if precedence is None:
            precedence = [a.name for a in quiver.arrows]
        precedence = list(precedence)
        if sorted(precedence) != sorted(a.name for a in quiver.arrows):
            raise PathAlgebraError("precedence must list every arrow exactly once")
        self.precedence = tuple(precedence)
        n = len(precedence)
        rank = {}
        for pos, name in enumerate(precedence):
            rank[quiver.arrow(name).index] = n - pos  # earlier in list = larger rank
        self._rank = tuple(rank[i] for i in range(n))

    def key(self, path: Path):
        r = self._rank
        return (path.degree, len(path.arrows), tuple(r[i] for i in path.arrows))

    def less(self, p: Path, q: Path) -> bool:
        return self.key(p) < self.key(q)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.quiver == other.quiver
            and self.precedence == other.precedence
        )

    def __repr__(self):
        return "MonomialOrder(deglex; %s)" % ", ".join(self.precedence)


class Element:
    """Finite sum of coefficient*path terms in a fixed (quiver, params) pair."""

    __slots__ = ("quiver", "params", "terms")

    def __init__(self, quiver: Quiver, params: ParamRing, terms: Optional[Dict[Path, RatFunc]] = None):
        self.quiver = quiver
        self.params = params
        self.terms = terms or {}

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(quiver: Quiver, params: ParamRing) -> "Element":
        return Element(quiver, params, {})

    @staticmethod
    def from_path(quiver: Quiver, params: ParamRing, path: Path, coeff=1) -> "Element":
        c = RatFunc.coerce(params, coeff)
        if c.is_zero():
            return Element(quiver, params, {})
        return Element(quiver, params, {path: c})

    @staticmethod
    def idempotent(quiver: Quiver, params: ParamRing, vertex: str) -> "Element":
        return Element.from_path(quiver, params, idempotent_path(quiver, vertex))

    @staticmethod
    def arrow(quiver: Quiver, params: ParamRing, name: str) -> "Element":
        return Element.from_path(quiver, params, arrow_path(quiver, name))

    @staticmethod
    def identity(quiver: Quiver, params: ParamRing) -> "Element":
        out = Element.zero(quiver, params)
        for v in quiver.vertices:
            out = out + Element.idempotent(quiver, params, v)
        return out

    def _compatible(self, other: "Element"):
        if self.quiver != other.quiver or self.params != other.params:
            raise PathAlgebraError("elements belong to different algebras")

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(p.degree for p in self.terms)

    def support(self) -> List[Path]:
        return list(self.terms)

    def endpoints(self) -> Optional[Tuple[str, str]]:
        """(source, target) if endpoint homogeneous, else None."""
        eps = {(p.source, p.target) for p in self.terms}
        if len(eps) == 1:
            return next(iter(eps))
        return None

    def coefficient(self, path: Path) -> RatFunc:
        return self.terms.get(path, RatFunc.coerce(self.params, 0))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for p, c in other.terms.items():
            s = terms.get(p)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(p, None)
            else:
                terms[p] = s
        return Element(self.quiver, self.params, terms)

    def __neg__(self):
        return Element(self.quiver, self.params, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            self._compatible(other)
            out: Dict[Path, RatFunc] = {}
            q = self.quiver
            for p1, c1 in self.terms.items():
                for p2, c2 in other.terms.items():
                    p = compose(q, p1, p2)
                    if p is None:
                        continue
                    c = c1 * c2
                    s = out.get(p)
                    s = c if s is None else s + c
                    if s.is_zero():
                        out.pop(p, None)
                    else:
                        out[p] = s
            return Element(self.quiver, self.params, out)
        return self.scale(other)

    def __rmul__(self, other):
        # central scalars commute with everything
        return self.scale(other)

    def scale(self, c) -> "Element":
        c = RatFunc.coerce(self.params, c)
        if c.is_zero():
            return Element(self.quiver, self.params, {})
        return Element(self.quiver, self.params, {p: v * c for p, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise PathAlgebraError("negative powers are not defined")
        out = Element.identity(self.quiver, self.params)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.params == other.params
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.quiver, self.params, frozenset(self.terms.items())))

    def map_coefficients(self, fn) -> "Element":
        terms = {}
        for p, c in self.terms.items():
            c2 = fn(c)
            if not c2.is_zero():
                terms[p] = c2
        return Element(self.quiver, self.params, terms)

    def cast(self, params: ParamRing) -> "Element":
        return Element(
            self.quiver,
            params,
            {p: RatFunc.coerce(params, c) for p, c in self.terms.items()},
        )

    # -- printing -----------------------------------------------------------

    def format(self, order: Optional[MonomialOrder] = None) -> str:
        if not self.terms:
            return "0"
        if order is not None:
            paths = sorted(self.terms, key=order.key, reverse=True)
        else:
            paths = sorted(self.terms, key=lambda p: (-p.degree, -len(p.arrows), p.format(self.quiver)))
        parts = []
        for p in paths:
            c = self.terms[p]
            cs = str(c)
            word = p.format(self.quiver)
            if cs == "1":
                body = word
            elif cs == "-1":
                body = "- " + word
            else:
                if ("+" in cs[1:] or ("-" in cs[1:].replace("/", "")) or "/" in cs) and not c.den.is_one():
                    cs = "(%s)" % cs
                elif "+" in cs[1:] or " - " in cs:
                    cs = "(%s)" % cs
                body = "%s*%s" % (cs, word)
            if body.startswith("- "):
                parts.append("- " + body[2:])
            elif body.startswith("-"):
                parts.append("- " + body[1:])
            else:
                parts.append("+ " + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "Element(%s)" % self.format()


def element_arith(x: Element, y: Element, op: str, scalar=None) -> Element:
    """add | sub | mul | scale; errors on algebra mismatch."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "scale":
        return x.scale(scalar)
    raise PathAlgebraError("unknown op %r" % op)


class AlgebraPresentation:
    """A quiver, a central parameter ring, and a finite relation list.

    Every relation must be endpoint homogeneous: all its paths share one
    (source, target) pair.  `precedence` fixes the default monomial order
    (declaration order when omitted); `gb_degree` records an empirically
    sufficient default truncation degree for this presentation.
    """

    def __init__(
        self,
        quiver: Quiver,
        params: ParamRing,
        relations: Sequence[Element],
        name: str = "",
        precedence: Optional[Sequence[str]] = None,
        gb_degree: Optional[int] = None,
    ):
        self.quiver = quiver
        self.params = params
        self.relations = list(relations)
        self.name = name
        self.precedence = tuple(precedence) if precedence is not None else None
        self.gb_degree = gb_degree
        for i, r in enumerate(self.relations):
            if r.quiver != quiver or r.params != params:
                raise PathAlgebraError("relation %d belongs to a different algebra" % i)
            if r.is_zero():
                continue
            if r.endpoints() is None:
                raise PathAlgebraError(
                    "relation %d is not endpoint homogeneous: %s" % (i, r.format())
                )

    def order(self) -> MonomialOrder:
        return MonomialOrder(self.quiver, self.precedence)

    def element(self, text: str) -> Element:
        return parse_element(text, self.quiver, self.params)

    def idempotent(self, vertex) -> Element:
        return Element.idempotent(self.quiver, self.params, str(vertex))

    def arrow(self, name: str) -> Element:
        return Element.arrow(self.quiver, self.params, name)

    def param(self, name: str) -> RatFunc:
        return RatFunc(self.params.var(name))

    def with_relations(self, relations: Sequence[Element], name: str = "") -> "AlgebraPresentation":
        return AlgebraPresentation(
            self.quiver, self.params, relations, name or self.name,
            precedence=self.precedence, gb_degree=self.gb_degree,
        )

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraPresentation)
            and self.quiver == other.quiver
            and self.params == other.params
            and self.relations == other.relations
        )

    def __repr__(self):
        return "AlgebraPresentation(%s: %d vertices, %d arrows, %d relations)" % (
            self.name or "?",
            len(self.quiver.vertices),
            len(self.quiver.arrows),
            len(self.relations),
        )


# ---------------------------------------------------------------------------
# element expression parsing
# ---------------------------------------------------------------------------

class _ElementParser(_PolyParser):
    """Element expressions: params, arrows, e<v>, rationals, + - * ^ ()."""

    def __init__(self, toks, quiver: Quiver, params: ParamRing):
        super().__init__(toks, params)
        self.quiver = quiver

    def _const(self, value) -> Element:
        return Element.identity(self.quiver, self.ring).scale(value)

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.take()
            return self._const(t.value)
        if t.kind == "name":
            self.take()
            name = t.value
            if name in self.quiver._by_name:
                return Element.arrow(self.quiver, self.ring, name)
            if name.startswith("e") and name[1:] in self.quiver.vertices:
                return Element.idempotent(self.quiver, self.ring, name[1:])
            if name in self.ring._index:
                return self._const(RatFunc(self.ring.var(name)))
            raise ParseError("unknown name %r (not an arrow, idempotent, or parameter)" % name, column=t.pos)
        if t.kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        raise ParseError("unexpected token %r" % (t.value,), column=t.pos)

    def factor(self):
        base = self.atom()
        while self.peek().kind == "^":
            self.take()
            e = self.take("num").value
            if e.denominator != 1 or e < 0:
                raise ParseError("exponents must be nonnegative integers")
            base = base ** int(e)
        return base

    def term(self):
        # element syntax allows division, but only by central coefficients
        # (needed so serialized rewrite rules parse back)
        out = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            rhs = self.factor()
            if op == "*":
                out = out * rhs
                continue
            coeffs = {c for c in rhs.terms.values()}
            if any(p.arrows for p in rhs.terms) or len(coeffs) != 1:
                raise ParseError("division is only defined by central coefficients")
            out = out.scale(next(iter(coeffs)).inv())
        return out


def parse_element(text: str, quiver: Quiver, params: ParamRing) -> Element:
    try:
        toks = tokenize_poly(text)
        return _ElementParser(toks, quiver, params).parse()
    except CoeffError as exc:
        raise ParseError(str(exc))


# ---------------------------------------------------------------------------
# presentation files
# ---------------------------------------------------------------------------

def parse_presentation(text: str) -> AlgebraPresentation:
    """Parse the line-oriented presentation format (see module docstring)."""
    name = ""
    params: List[str] = []
    grading: Dict[str, int] = {}
    vertices: List[str] = []
    arrow_specs: List[Tuple[str, str, str, int]] = []
    relation_texts: List[Tuple[str, int]] = []
    precedence: Optional[List[str]] = None
    gb_degree: Optional[int] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", line=lineno)
        key, value = line.split(":", 1)
        key = key.strip()
        value = value.strip()
        if key == "name":
            name = value
        elif key == "params":
            for tok in _split_list(value):
                if "(" in tok:
                    nm, deg = tok.split("(", 1)
                    nm = nm.strip()
                    deg = deg.strip()
                    if not deg.startswith("deg") or not deg.endswith(")"):
                        raise ParseError("bad parameter grading %r" % tok, line=lineno)
                    grading[nm] = int(deg[3:-1])
                    params.append(nm)
                else:
                    params.append(tok)
        elif key == "vertices":
            vertices.extend(_split_list(value))
        elif key == "arrows":
            for tok in _split_list(value):
                arrow_specs.append(_parse_arrow_spec(tok, lineno))
        elif key == "relations":
            for part in value.split(";"):
                part = part.strip()
                if part:
                    relation_texts.append((part, lineno))
        elif key == "precedence":
            precedence = _split_list(value)
        elif key == "gb_degree":
            gb_degree = int(value)
        else:
            raise ParseError("unknown key %r" % key, line=lineno)

    if not vertices:
        raise ParseError("no vertices declared")
    try:
        ring = ParamRing(params, grading)
        quiver = Quiver(vertices, arrow_specs, name=name)
    except (CoeffError, PathAlgebraError) as exc:
        raise ParseError(str(exc))
    relations = []
    for text_r, lineno in relation_texts:
        try:
            rel = parse_element(text_r, quiver, ring)
        except (CoeffError, ParseError) as exc:
            raise ParseError("in relation %r: %s" % (text_r, exc), line=lineno)
        if not rel.is_zero() and rel.endpoints() is None:
            raise ParseError("relation %r is not endpoint homogeneous" % text_r, line=lineno)
        relations.append(rel)
    try:
        return AlgebraPresentation(
            quiver, ring, relations, name=name, precedence=precedence, gb_degree=gb_degree
        )
    except PathAlgebraError as exc:
        raise ParseError(str(exc))


def _split_list(value: str) -> List[str]:
    parts = []
    depth = 0
    cur = ""
    for ch in value:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur.strip())
    return [p for p in parts if p]


def _parse_arrow_spec(tok: str, lineno: int) -> Tuple[str, str, str, int]:
    if ":" not in tok:
        raise ParseError("bad arrow %r (expected 'name: src -> tgt')" % tok, line=lineno)
    nm, rest = tok.split(":", 1)
    nm = nm.strip()
    rest = rest.strip()
    deg = 1
    if "(" in rest:
        rest, dd = rest.split("(", 1)
        dd = dd.strip()
        if not (dd.startswith("deg") and dd.endswith(")")):
            raise ParseError("bad arrow degree in %r" % tok, line=lineno)
        deg = int(dd[3:-1])
        rest = rest.strip()
    if "->" not in rest:
        raise ParseError("bad arrow %r (missing '->')" % tok, line=lineno)
    src, tgt = rest.split("->", 1)
    return (nm, src.strip(), tgt.strip(), deg)


def format_presentation(pres: AlgebraPresentation) -> str:
    """Render a presentation in the file format (round-trips with parse)."""
    lines = []
    if pres.name:
        lines.append("name: %s" % pres.name)
    if pres.params.names:
        items = []
        for n, g in zip(pres.params.names, pres.params.grading):
            items.append(n if g == 2 else "%s (deg %d)" % (n, g))
        lines.append("params: %s" % ", ".join(items))
    else:
        lines.append("params:")
    lines.append("vertices: %s" % ", ".join(pres.quiver.vertices))
    arrows = []
    for a in pres.quiver.arrows:
        spec = "%s: %s -> %s" % (a.name, a.source, a.target)
        if a.degree != 1:
            spec += " (deg %d)" % a.degree
        arrows.append(spec)
    lines.append("arrows: %s" % ", ".join(arrows))
    order = pres.order()
    for r in pres.relations:
        lines.append("relations: %s" % r.format(order))
    if pres.precedence is not None:
        lines.append("precedence: %s" % ", ".join(pres.precedence))
    if pres.gb_degree is not None:
        lines.append("gb_degree: %d" % pres.gb_degree)
    return "\n".join(lines) + "\n"

"""Exact multivariate polynomial and rational function arithmetic over Q.

This is the coefficient kernel for every path algebra in the package: all
central parameters (t, T0b, T0c, ... as well as adjoined commuting
generators like y and z) live in a ParamRing, polynomials in those
parameters are MultiPoly values with arbitrary-precision rational
coefficients, and RatFunc is the fraction field used to keep rewriting
rules monic.

Everything here is immutable and exact; there is no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _math_gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Exponents = Tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class CoeffError(ValueError):
    """Raised for malformed coefficient-level input (bad names, syntax)."""


class DivisionByZeroError(ZeroDivisionError):
    """Division by a zero polynomial or rational function."""


class ParamRing:
    """An ordered list of commuting parameter names with an integer grading.

    The grading (degree 2 per parameter by default) is bookkeeping only: it
    never influences arithmetic, just degree accounting in callers.
    """

    __slots__ = ("names", "grading", "_index")

    def __init__(self, names: Sequence[str], grading: Optional[Mapping[str, int]] = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise CoeffError("parameter names must be distinct: %r" % (names,))
        for n in names:
            if not n or not (n[0].isalpha() or n[0] == "_"):
                raise CoeffError("bad parameter name %r" % n)
        self.names = names
        grading = dict(grading or {})
        unknown = set(grading) - set(names)
        if unknown:
            raise CoeffError("grading for undeclared parameters: %r" % sorted(unknown))
        self.grading = tuple(int(grading.get(n, 2)) for n in names)
        self._index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, ParamRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "ParamRing(%s)" % ", ".join(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise CoeffError("undeclared parameter %r (declared: %s)" % (name, ", ".join(self.names) or "none"))

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly(self, {})
        return MultiPoly(self, {(0,) * len(self.names): c})

    def var(self, name: str) -> "MultiPoly":
        i = self.index(name)
        exp = [0] * len(self.names)
        exp[i] = 1
        return MultiPoly(self, {tuple(exp): _ONE})

    def extend(self, extra: Sequence[str], grading: Optional[Mapping[str, int]] = None) -> "ParamRing":
        """Ring with additional parameters appended after the current ones."""
        g = {n: d for n, d in zip(self.names, self.grading)}
        g.update(grading or {})
        return ParamRing(self.names + tuple(extra), g)


def _grlex_key(exp: Exponents):
    # graded lex; comparing keys with > picks the canonical leading term
    return (sum(exp), exp)


class MultiPoly:
    """A polynomial over Q in the parameters of a ParamRing.

    terms maps exponent tuples to nonzero Fractions; zero coefficients are
    never stored, so equality is plain dict equality.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: ParamRing, terms: Dict[Exponents, Fraction]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def coerce(ring: ParamRing, value) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            if value.ring != ring:
                return value.cast(ring)
            return value
        return ring.const(value)

    def cast(self, ring: ParamRing) -> "MultiPoly":
        """Re-express in another ring containing all used parameters."""
        pos = [ring.index(n) if n in ring._index else -1 for n in self.ring.names]
        terms: Dict[Exponents, Fraction] = {}
        width = len(ring.names)
        for exp, c in self.terms.items():
            new = [0] * width
            for i, e in enumerate(exp):
                if e:
                    if pos[i] < 0:
                        raise CoeffError("parameter %r missing from target ring" % self.ring.names[i])
                    new[pos[i]] = e
            terms[tuple(new)] = c
        return MultiPoly(ring, terms)

    # -- predicates & accessors ------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.items())) == ((0,) * len(self.ring.names), _ONE)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return _ZERO
        if not self.is_constant():
            raise CoeffError("not a constant: %s" % self)
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def graded_degree(self) -> int:
        """Degree under the ring's parameter grading (default 2 each)."""
        if not self.terms:
            return -1
        g = self.ring.grading
        return max(sum(k * w for k, w in zip(e, g)) for e in self.terms)

    def lead(self) -> Tuple[Exponents, Fraction]:
        """Leading (exponent, coefficient) under graded lex."""
        if not self.terms:
            raise CoeffError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = MultiPoly.coerce(self.ring, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, _ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-MultiPoly.coerce(self.ring, other))

    def __rsub__(self, other):
        return MultiPoly.coerce(self.ring, other) - self

    def __mul__(self, other):
        other = MultiPoly.coerce(self.ring, other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: Dict[Exponents, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, _ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise CoeffError("negative power of a polynomial; use RatFunc")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- substitution ------------------------------------------------------

    def substitute(self, mapping: Mapping[str, "MultiPoly"], ring: Optional[ParamRing] = None) -> "MultiPoly":
        """Simultaneous substitution name -> polynomial.

        Unmapped names are retained (they must exist in the target ring).
        """
        if ring is None:
            rings = [v.ring for v in mapping.values() if isinstance(v, MultiPoly)]
            ring = rings[0] if rings else self.ring
        for name in mapping:
            self.ring.index(name)  # validate
        images: List[MultiPoly] = []
        for n in self.ring.names:
            if n in mapping:
                images.append(MultiPoly.coerce(ring, mapping[n]))
            else:
                images.append(ring.var(n))
        out = ring.zero()
        for exp, c in sorted(self.terms.items()):
            term = ring.const(c)
            for i, e in enumerate(exp):
                if e:
                    term = term * images[i] ** e
            out = out + term
        return out

    # -- printing ----------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "MultiPoly(%s)" % format_poly(self)


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def format_poly(p: MultiPoly) -> str:
    """Canonical text form; graded-lex descending, `+ - * ^` syntax."""
    if not p.terms:
        return "0"
    names = p.ring.names
    parts: List[str] = []
    for exp in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[exp]
        factors = []
        for n, e in zip(names, exp):
            if e == 1:
                factors.append(n)
            elif e > 1:
                factors.append("%s^%d" % (n, e))
        if not factors:
            body = _fmt_coeff(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_fmt_coeff(abs(c))] + factors)
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _Tok:
    def __init__(self, kind, value, pos):
        self.kind, self.value, self.pos = kind, value, pos


def tokenize_poly(text: str) -> List[_Tok]:
    toks: List[_Tok] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                toks.append(_Tok("num", Fraction(int(text[i:j]), int(text[j + 1:k])), i))
                i = k
            else:
                toks.append(_Tok("num", Fraction(int(text[i:j])), i))
                i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
            continue
        raise CoeffError("unexpected character %r at position %d" % (ch, i))
    toks.append(_Tok("end", None, n))
    return toks


class _PolyParser:
    """Recursive-descent parser for `+ - * ^`, rationals p/q, parentheses."""

    def __init__(self, toks: List[_Tok], ring: ParamRing):
        self.toks = toks
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t.kind != kind:
            raise CoeffError("expected %s at position %d, found %r" % (kind, t.pos, t.value))
        self.i += 1
        return t

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.peek().kind != "end":
            t = self.peek()
            raise CoeffError("trailing input at position %d: %r" % (t.pos, t.value))
        return p

    def expr(self) -> MultiPoly:
        sign = 1
        while self.peek().kind in "+-":
            if self.take().kind == "-":
                sign = -sign
        out = self.term() * sign
        while self.peek().kind in "+-":
            sign = 1
            while self.peek().kind in "+-":
                if self.take().kind == "-":
                    sign = -sign
            out = out + self.term() * sign
        return out

    def term(self) -> MultiPoly:
        out = self.factor()
        while self.peek().kind in ("*",):
            self.take()
            out = out * self.factor()
        return out

    def factor(self) -> MultiPoly:
        base = self.atom()
        while self.peek().kind == "^":
            self.take()
            neg = False
            if self.peek().kind == "-":
                raise CoeffError("negative exponent at position %d" % self.peek().pos)
            e = self.take("num").value
            if e.denominator != 1 or neg:
                raise CoeffError("exponents must be nonnegative integers")
            base = base ** int(e)
        return base

    def atom(self) -> MultiPoly:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return self.ring.const(t.value)
        if t.kind == "name":
            self.take()
            return self.ring.var(t.value)
        if t.kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        raise CoeffError("unexpected token %r at position %d" % (t.value, t.pos))


def parse_poly(text: str, ring: ParamRing) -> MultiPoly:
    return _PolyParser(tokenize_poly(text), ring).parse()


# ---------------------------------------------------------------------------
# gcd / exact division (needed to keep RatFunc canonical)
# ---------------------------------------------------------------------------

def _vars_used(p: MultiPoly) -> List[int]:
    used = set()
    for e in p.terms:
        for i, k in enumerate(e):
            if k:
                used.add(i)
    return sorted(used)


def _as_univariate(p: MultiPoly, var: int) -> Dict[int, MultiPoly]:
    """View p as a polynomial in variable `var` with MultiPoly coefficients."""
    out: Dict[int, Dict[Exponents, Fraction]] = {}
    for e, c in p.terms.items():
        d = e[var]
        rest = e[:var] + (0,) + e[var + 1:]
        out.setdefault(d, {})[rest] = c
    return {d: MultiPoly(p.ring, t) for d, t in out.items()}


def _from_univariate(ring: ParamRing, var: int, coeffs: Dict[int, MultiPoly]) -> MultiPoly:
    terms: Dict[Exponents, Fraction] = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            e2 = e[:var] + (d,) + e[var + 1:]
            terms[e2] = c
    return MultiPoly(ring, terms)


def divexact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Exact division f / g; raises if g does not divide f."""
    if g.is_zero():
        raise DivisionByZeroError("polynomial division by zero")
    if f.is_zero():
        return f
    if g.is_constant():
        inv = 1 / g.constant_value()
        return MultiPoly(f.ring, {e: c * inv for e, c in f.terms.items()})
    ring = f.ring
    q: Dict[Exponents, Fraction] = {}
    rem = f
    ge, gc = g.lead()
    while not rem.is_zero():
        re, rc = rem.lead()
        qe = tuple(a - b for a, b in zip(re, ge))
        if any(x < 0 for x in qe):
            raise CoeffError("inexact polynomial division")
        qc = rc / gc
        q[qe] = q.get(qe, _ZERO) + qc
        rem = rem - MultiPoly(ring, {qe: qc}) * g
    return MultiPoly(ring, {e: c for e, c in q.items() if c})


def _monic(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    _, c = p.lead()
    if c == 1:
        return p
    return MultiPoly(p.ring, {e: v / c for e, v in p.terms.items()})


_GCD_CACHE: Dict[Tuple["MultiPoly", "MultiPoly"], "MultiPoly"] = {}


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """gcd over Q[params], normalized monic under graded lex.

    Heuristic evaluation gcd (integer evaluation and balanced base-xi
    reconstruction, verified by exact division) with a primitive-PRS
    fallback; results are memoized because the same denominators recur
    constantly during rewriting.
    """
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    key = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    hit = _GCD_CACHE.get(key)
    if hit is not None:
        return hit
    mono = _monomial_gcd_fast(f, g)
    if mono is not None:
        result = mono
    elif _coprime_prescreen(f, g):
        result = f.ring.one()
    else:
        result = _gcd_heu_entry(f, g)
        if result is None:
            used = sorted(set(_vars_used(f)) | set(_vars_used(g)))
            result = _monic(_gcd_rec(f, g, used))
    if len(_GCD_CACHE) > 200000:
        _GCD_CACHE.clear()
    _GCD_CACHE[key] = result
    return result


_PRESCREEN_POINTS = (10007, 10501, 11003, 11513, 12007, 12511, 13001, 13513,
                     14009, 14503, 15013, 15511)


def _coprime_prescreen(f: MultiPoly, g: MultiPoly) -> bool:
    """Cheap certificate attempt that gcd(f, g) = 1 via integer evaluation.

    Any common factor divides both evaluations at the fixed point, so two
    coprime evaluations prove coprimality up to the (rare) chance that the
    factor evaluates to +-1 there; a false negative only leaves a fraction
    unreduced, which equality handles by cross multiplication.
    """
    def ev(p: MultiPoly) -> int:
        total = Fraction(0)
        for e, c in p.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * _PRESCREEN_POINTS[i % len(_PRESCREEN_POINTS)] ** k
            total += v
        return total.numerator

    a, b = ev(f), ev(g)
    if a == 0 or b == 0:
        return False
    return _math_gcd(a, b) == 1


def _monomial_gcd_fast(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """Exact gcd when one operand is a single term: the common monomial."""
    if len(f.terms) != 1 and len(g.terms) != 1:
        return None
    width = len(f.ring.names)
    mins = [None] * width
    for p in (f, g):
        for e in p.terms:
            for i in range(width):
                v = e[i]
                if mins[i] is None or v < mins[i]:
                    mins[i] = v
    return MultiPoly(f.ring, {tuple(mins): _ONE})


def _int_clear(p: MultiPoly) -> Dict[Exponents, int]:
    """Scale to integer coefficients (gcd is only defined up to units)."""
    denlcm = 1
    for c in p.terms.values():
        denlcm = denlcm * c.denominator // _int_gcd(denlcm, c.denominator)
    out = {}
    for e, c in p.terms.items():
        out[e] = int(c * denlcm)
    return out


def _int_gcd(a: int, b: int) -> int:
    return _math_gcd(a, b)


def _gcd_heu_entry(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    ring = f.ring
    fz = _int_clear(f)
    gz = _int_clear(g)
    used = sorted({i for e in list(fz) + list(gz) for i, k in enumerate(e) if k})
    h = _gcd_heu(fz, gz, used, ring)
    if h is None:
        return None
    poly = MultiPoly(ring, {e: Fraction(c) for e, c in h.items() if c})
    return _monic(poly)


def _heu_height(p: Dict[Exponents, int]) -> int:
    return max(abs(c) for c in p.values()) if p else 0


def _heu_eval(p: Dict[Exponents, int], var: int, xi: int) -> Dict[Exponents, int]:
    deg = 0
    for e in p:
        if e[var] > deg:
            deg = e[var]
    pows = [1] * (deg + 1)
    for i in range(1, deg + 1):
        pows[i] = pows[i - 1] * xi
    out: Dict[Exponents, int] = {}
    for e, c in p.items():
        e2 = e[:var] + (0,) + e[var + 1:]
        out[e2] = out.get(e2, 0) + c * pows[e[var]]
    return {e: c for e, c in out.items() if c}


def _heu_content(p: Dict[Exponents, int]) -> int:
    g = 0
    for c in p.values():
        g = _int_gcd(g, c)
        if g == 1:
            return 1
    return g or 1


def _heu_divides(h: Dict[Exponents, int], p: Dict[Exponents, int], ring: ParamRing) -> bool:
    try:
        divexact(MultiPoly(ring, {e: Fraction(c) for e, c in p.items()}),
                 MultiPoly(ring, {e: Fraction(c) for e, c in h.items()}))
        return True
    except (CoeffError, DivisionByZeroError):
        return False


def _gcd_heu(fz, gz, used, ring, depth=0):
    """Heuristic gcd on integer term dicts; None when attempts run out.

    Integer contents are stripped first (Gauss), so evaluation points stay
    small; candidates are verified by exact trial division at every level.
    """
    cf = _heu_content(fz)
    cg = _heu_content(gz)
    cc = _int_gcd(cf, cg)
    if cf > 1:
        fz = {e: c // cf for e, c in fz.items()}
    if cg > 1:
        gz = {e: c // cg for e, c in gz.items()}
    used = [v for v in used
            if any(e[v] for e in fz) or any(e[v] for e in gz)]
    if not used:
        return {(0,) * len(ring.names): cc}
    # evaluate high-degree variables first, while the evaluation point is
    # still small; deep recursion levels with huge xi then face low degrees
    var = max(used, key=lambda v: (min(_heu_degree(fz, v), _heu_degree(gz, v)), v))
    rest = [v for v in used if v != var]
    if _heu_degree(fz, var) == 0 or _heu_degree(gz, var) == 0:
        # var occurs in only one operand: the gcd cannot involve it, so
        # replace that operand by the gcd of its var-coefficient slices
        fa = fz if _heu_degree(fz, var) == 0 else _heu_content_wrt(fz, var, rest, ring, depth)
        ga = gz if _heu_degree(gz, var) == 0 else _heu_content_wrt(gz, var, rest, ring, depth)
        if fa is None or ga is None:
            return None
        h = _gcd_heu(fa, ga, rest, ring, depth + 1)
        if h is None:
            return None
        return {e: c * cc for e, c in h.items()}
    xi = 2 * min(_heu_height(fz), _heu_height(gz)) + 29
    for _ in range(6):
        if xi.bit_length() * max(_heu_degree(fz, var), _heu_degree(gz, var)) > 150000:
            return None
        fe = _heu_eval(fz, var, xi)
        ge = _heu_eval(gz, var, xi)
        if fe and ge:
            gamma = _gcd_heu(fe, ge, rest, ring, depth + 1)
            if gamma is not None and gamma:
                h = _heu_reconstruct(gamma, var, xi)
                cont = _heu_content(h)
                if cont > 1:
                    h = {e: c // cont for e, c in h.items()}
                if h and _heu_divides(h, fz, ring) and _heu_divides(h, gz, ring):
                    return {e: c * cc for e, c in h.items()}
        xi = xi * 73794 // 27011 + 7
    return None


def _heu_content_wrt(p: Dict[Exponents, int], var: int, rest, ring, depth):
    """gcd of the var-coefficient slices of p (the content w.r.t. var)."""
    slices: Dict[int, Dict[Exponents, int]] = {}
    for e, c in p.items():
        slices.setdefault(e[var], {})[e[:var] + (0,) + e[var + 1:]] = c
    acc = None
    for d in sorted(slices):
        if acc is None:
            acc = slices[d]
        else:
            acc = _gcd_heu(acc, slices[d], list(rest), ring, depth + 1)
            if acc is None:
                return None
        if len(acc) == 1 and not any(next(iter(acc))):
            break  # constant content already
    return acc


def _heu_degree(p: Dict[Exponents, int], var: int) -> int:
    return max((e[var] for e in p), default=0)


def _heu_reconstruct(gamma: Dict[Exponents, int], var: int, xi: int) -> Dict[Exponents, int]:
    """Balanced base-xi digits of gamma, reading off the var exponents."""
    out: Dict[Exponents, int] = {}
    current = dict(gamma)
    k = 0
    half = xi // 2
    while current and k < 4000:
        nxt: Dict[Exponents, int] = {}
        for e, c in current.items():
            r = c % xi
            if r > half:
                r -= xi
            if r:
                e2 = e[:var] + (k,) + e[var + 1:]
                out[e2] = r
            q = (c - r) // xi
            if q:
                nxt[e] = q
        current = nxt
        k += 1
    return out


def _content(coeffs: Iterable[MultiPoly], used: List[int]) -> MultiPoly:
    it = iter(coeffs)
    acc = next(it)
    for c in it:
        if acc.is_constant() and not acc.is_zero():
            return acc.ring.one()
        acc = _gcd_rec(acc, c, used)
    if acc.is_constant() and not acc.is_zero():
        return acc.ring.one()
    return acc


def _gcd_rec(f: MultiPoly, g: MultiPoly, used: List[int]) -> MultiPoly:
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    var = max(set(_vars_used(f)) | set(_vars_used(g)))
    rest = [v for v in used if v != var]
    fu = _as_univariate(f, var)
    gu = _as_univariate(g, var)
    if max(fu) == 0 or max(gu) == 0:
        # one of them does not involve var after all
        return _gcd_rec(_content(fu.values(), rest), _content(gu.values(), rest), rest)
    cf = _content(fu.values(), rest)
    cg = _content(gu.values(), rest)
    cont = _gcd_rec(cf, cg, rest)
    fp = {d: divexact(c, cf) for d, c in fu.items()}
    gp = {d: divexact(c, cg) for d, c in gu.items()}
    a, b = fp, gp
    if max(a) < max(b):
        a, b = b, a
    ring = f.ring
    while True:
        r = _pseudo_rem(a, b, var, ring)
        if not r:
            break
        rc = _content(r.values(), rest)
        a, b = b, {d: divexact(c, rc) for d, c in r.items()}
    result = cont * _from_univariate(ring, var, b)
    return result


def _pseudo_rem(a: Dict[int, MultiPoly], b: Dict[int, MultiPoly], var: int, ring: ParamRing) -> Dict[int, MultiPoly]:
    da, db = max(a), max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        # lb * r - lr * x^(dr-db) * b
        new: Dict[int, MultiPoly] = {}
        for d, c in r.items():
            new[d] = c * lb
        for d, c in b.items():
            t = new.get(d + dr - db, ring.zero()) - lr * c
            new[d + dr - db] = t
        r = {d: c for d, c in new.items() if not c.is_zero()}
    return r


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """num/den in lowest terms with monic denominator (graded lex).

    The denominator normalization makes equality structural: equal rational
    functions have identical (num, den) pairs.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MultiPoly, den: Optional[MultiPoly] = None, _normalized=False):
        ring = num.ring
        if den is None:
            den = ring.one()
        if den.is_zero():
            raise DivisionByZeroError("zero denominator")
        if not _normalized:
            num, den = _normalize_frac(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def coerce(ring: ParamRing, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            if value.ring != ring:
                return RatFunc(value.num.cast(ring), value.den.cast(ring), _normalized=True)
            return value
        if isinstance(value, MultiPoly):
            return RatFunc(MultiPoly.coerce(ring, value))
        return RatFunc(ring.const(value))

    @property
    def ring(self) -> ParamRing:
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        if self.den.is_one():
            return True
        try:
            divexact(self.num, self.den)
            return True
        except (CoeffError, DivisionByZeroError):
            return False

    def as_poly(self) -> MultiPoly:
        if self.den.is_one():
            return self.num
        try:
            return divexact(self.num, self.den)
        except (CoeffError, DivisionByZeroError):
            raise CoeffError("not a polynomial: %s" % self)

    def __add__(self, other):
        other = RatFunc.coerce(self.ring, other)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, None, _normalized=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        num = self.num * other.den + other.num * self.den
        return RatFunc(num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(self.ring, other))

    def __rsub__(self, other):
        return RatFunc.coerce(self.ring, other) - self

    def __mul__(self, other):
        other = RatFunc.coerce(self.ring, other)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, None, _normalized=True)
        # cross-cancel to keep intermediate products small
        n1, d2 = self.num, other.den
        if not d2.is_one():
            g = poly_gcd(n1, d2)
            if not g.is_one():
                n1, d2 = divexact(n1, g), divexact(d2, g)
        n2, d1 = other.num, self.den
        if not d1.is_one():
            g = poly_gcd(n2, d1)
            if not g.is_one():
                n2, d1 = divexact(n2, g), divexact(d1, g)
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZeroError("inverting zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = RatFunc.coerce(self.ring, other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return RatFunc.coerce(self.ring, other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RatFunc.coerce(self.ring, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        # cross multiply: equality must not depend on canonical reduction
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # hash through evaluation at a fixed point so that equal values
        # (even when a reduction was skipped) hash identically
        if self._hash is None:
            num = _hash_eval(self.num)
            den = _hash_eval(self.den)
            self._hash = hash((self.ring, Fraction(num, den) if den else ("pole", num)))
        return self._hash

    def substitute(self, mapping: Mapping[str, MultiPoly], ring: Optional[ParamRing] = None) -> "RatFunc":
        num = self.num.substitute(mapping, ring)
        den = self.den.substitute(mapping, ring)
        if den.is_zero():
            raise DivisionByZeroError("substitution sends denominator to zero")
        return RatFunc(num, den)

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return "(%s)/(%s)" % (format_poly(self.num), format_poly(self.den))

    def __repr__(self):
        return "RatFunc(%s)" % str(self)


def _hash_eval(p: MultiPoly) -> Fraction:
    total = Fraction(0)
    for e, c in p.terms.items():
        v = c
        for i, k in enumerate(e):
            if k:
                v = v * _PRESCREEN_POINTS[i % len(_PRESCREEN_POINTS)] ** k
        total += v
    return total


def _normalize_frac(num: MultiPoly, den: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
    if num.is_zero():
        return num, den.ring.one()
    if den.is_constant():
        c = den.constant_value()
        if c == 1:
            return num, den
        return MultiPoly(num.ring, {e: v / c for e, v in num.terms.items()}), den.ring.one()
    g = poly_gcd(num, den)
    if not g.is_one():
        num = divexact(num, g)
        den = divexact(den, g)
    _, lc = den.lead()
    if lc != 1:
        num = MultiPoly(num.ring, {e: v / lc for e, v in num.terms.items()})
        den = MultiPoly(den.ring, {e: v / lc for e, v in den.terms.items()})
    return num, den


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def poly_arith(a, b, op: str):
    """add | sub | mul | div on MultiPoly or RatFunc operands (exact)."""
    if op == "div":
        ra = a if isinstance(a, RatFunc) else RatFunc(a)
        rb = b if isinstance(b, RatFunc) else RatFunc.coerce(ra.ring, b)
        if rb.is_zero():
            raise DivisionByZeroError("poly_arith: division by zero")
        return ra / rb
    if isinstance(a, RatFunc) or isinstance(b, RatFunc):
        ra = a if isinstance(a, RatFunc) else RatFunc(a)
        rb = b if isinstance(b, RatFunc) else RatFunc.coerce(ra.ring, b)
        return {"add": ra + rb, "sub": ra - rb, "mul": ra * rb}[op]
    return {"add": a + b, "sub": a - b, "mul": a * b}[op]


def substitute(p: MultiPoly, mapping: Mapping[str, MultiPoly], ring: Optional[ParamRing] = None) -> MultiPoly:
    """Simultaneous exact substitution; a ring homomorphism."""
    return p.substitute(mapping, ring)


def elementary_symmetric(k: int, values: Sequence[MultiPoly]) -> MultiPoly:
    """sigma_k of the given polynomials; 1 <= k <= len(values)."""
    n = len(values)
    if not 1 <= k <= n:
        raise CoeffError("elementary_symmetric: k=%d out of range 1..%d" % (k, n))
    ring = values[0].ring
    # column j of the dynamic table holds sigma_j of the prefix seen so far
    sig: List[MultiPoly] = [ring.one()] + [ring.zero()] * k
    for v in values:
        for j in range(k, 0, -1):
            sig[j] = sig[j] + sig[j - 1] * v
    return sig[k]

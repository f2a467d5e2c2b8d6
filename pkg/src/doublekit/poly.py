"""Exact multivariate polynomials over the rationals.

Polynomials live in a :class:`PolyRing`, an ordered tuple of variable names
with the graded reverse lexicographic (grevlex) monomial order.  Terms are
stored sparsely as ``{exponent tuple: coefficient}`` with coefficients of type
``gmpy2.mpq`` (exact, always normalised).  Ring morphisms act by simultaneous
substitution of the variables.

The text grammar understood by :func:`parse_poly` is a small infix language::

    expr   ::= ['+'|'-'] term (('+'|'-') term)*
    term   ::= factor (('*'|'/') factor)*
    factor ::= atom ('^' nat)?
    atom   ::= number | name | '(' expr ')'

which contains the canonical printed form (``-3*x1^2*x2 + 1/2*x2 - 1``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping, Sequence

import gmpy2

from .errors import ParseError, RingMismatch

Rational = type(gmpy2.mpq())
Exponents = tuple


def QQ(value, denominator=None) -> Rational:
    """Coerce ``value`` (int, Fraction, mpq, or ``"a/b"`` text) to an exact rational."""
    if denominator is not None:
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        return gmpy2.mpq(value, denominator)
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Fraction, _RationalABC)) or type(value).__name__ == "mpz":
        return gmpy2.mpq(value)
    if isinstance(value, str):
        return gmpy2.mpq(Fraction(value.strip()))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def format_rational(c: Rational) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def grevlex_key(exps: Exponents) -> tuple:
    """Sort key realising grevlex: larger key means larger monomial."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class PolyRing:
    """Q[v1, ..., vn] with grevlex order, v1 > v2 > ... > vn."""

    __slots__ = ("variables", "_index", "_zero_exps")

    order = "grevlex"

    def __init__(self, variables: Iterable[str]):
        names = tuple(variables)
        for v in names:
            if not isinstance(v, str) or not _NAME_RE.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.variables = names
        self._index = {v: i for i, v in enumerate(names)}
        self._zero_exps = (0,) * len(names)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.variables == other.variables

    def __hash__(self):
        return hash(("PolyRing", self.variables))

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self!r}") from None

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = QQ(c)
        return Polynomial(self, {self._zero_exps: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for {self!r}")
        c = QQ(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def gen(self, which) -> Polynomial:
        i = self.index(which) if isinstance(which, str) else which
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): QQ(1)})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch(f"{value} lives in {value.ring!r}, not {self!r}")
            return value
        if isinstance(value, str):
            return parse_poly(self, value)
        return self.const(value)

    def parse(self, text: str) -> Polynomial:
        return parse_poly(self, text)


class Polynomial:
    """Immutable sparse polynomial.  Arithmetic with ints/rationals coerces them."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponents, object]):
        self.ring = ring
        # callers inside this module hand over fresh dicts without zeros
        if type(terms) is dict and all(type(c) is Rational and c for c in terms.values()):
            self._terms = terms
        else:
            clean = {}
            for e, c in terms.items():
                c = QQ(c)
                if c:
                    e = tuple(e)
                    if len(e) != ring.nvars:
                        raise ValueError(f"exponent {e} does not match {ring!r}")
                    clean[e] = c
            self._terms = clean
        self._hash = None

    # -- basic access -------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponents, Rational]:
        return self._terms

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Exponents, Rational]]:
        """Terms in decreasing grevlex order."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ring._zero_exps in self._terms)

    def constant_coefficient(self) -> Rational:
        return self._terms.get(self.ring._zero_exps, QQ(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def leading_term(self) -> tuple[Exponents, Rational]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grevlex_key)
        return e, self._terms[e]

    def variables_used(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(v for v, k in zip(self.ring.variables, e) if k)
        return used

    # -- arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            out: dict = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = tuple([a + b for a, b in zip(e1, e2)])
                    s = out.get(e)
                    out[e] = c1 * c2 if s is None else s + c1 * c2
            return Polynomial(self.ring, {e: c for e, c in out.items() if c})
        try:
            c = QQ(other)
        except TypeError:
            return NotImplemented
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: c * v for e, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero constant only."""
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("can only divide by a nonzero constant")
            other = other.constant_coefficient()
        c = QQ(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self._terms == self.ring.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- printing -----------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial:
    """``p / q`` when ``q`` divides ``p`` exactly; raises ``ArithmeticError`` otherwise."""
    if p.ring != q.ring:
        raise RingMismatch(f"ring mismatch: {p.ring!r} vs {q.ring!r}")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    qe, qc = q.leading_term()
    qinv = 1 / qc
    qterms = list(q.items())
    rem = dict(p._terms)
    quot: dict = {}
    while rem:
        e = max(rem, key=grevlex_key)
        c = rem[e]
        shift = tuple([a - b for a, b in zip(e, qe)])
        if any(k < 0 for k in shift):
            raise ArithmeticError("inexact polynomial division")
        f = c * qinv
        quot[shift] = f
        for e2, c2 in qterms:
            t = tuple([a + b for a, b in zip(e2, shift)])
            v = rem.get(t, 0) - f * c2
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial(p.ring, quot)


def format_monomial(names: Sequence[str], exps: Exponents) -> str:
    parts = []
    for v, k in zip(names, exps):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    """Canonical text: decreasing grevlex terms, ``*`` products, ``^`` powers."""
    if not p._terms:
        return "0"
    out = []
    for k, (e, c) in enumerate(p.sorted_terms()):
        mono = format_monomial(p.ring.variables, e)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# -- parsing ------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _PolyParser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value or kind == "end":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos)
        return p

    def expr(self) -> Polynomial:
        kind, v, _ = self.peek()
        sign = 1
        if kind == "op" and v in "+-":
            self.take()
            sign = -1 if v == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, v, _ = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                t = self.term()
                acc = acc + t if v == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == "op" and v == "/":
                self.take()
                d = self.factor()
                if d.is_zero() or not d.is_constant():
                    raise ParseError("division only by nonzero constants", pos)
                acc = acc / d
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        kind, v, _ = self.peek()
        if kind == "op" and v == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a natural number", pos)
            base = base ** int(v)
        return base

    def atom(self) -> Polynomial:
        kind, v, pos = self.take()
        if kind == "num":
            return self.ring.const(int(v))
        if kind == "name":
            if v not in self.ring._index:
                raise ParseError(f"unknown variable {v!r} (ring variables: {' '.join(self.ring.variables)})", pos)
            return self.ring.gen(v)
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and v == "-":
            return -self.factor()
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse_poly(ring: PolyRing, text: str) -> Polynomial:
    return _PolyParser(ring, text).parse()


# -- morphisms ----------------------------------------------------------------------

class RingMorphism:
    """Q-algebra map ``source -> target`` determined by the images of the variables."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: PolyRing, target: PolyRing, images: Sequence):
        images = tuple(target(im) for im in images)
        if len(images) != source.nvars:
            raise ValueError(
                f"need {source.nvars} images for {source!r}, got {len(images)}")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def identity(cls, ring: PolyRing) -> RingMorphism:
        return cls(ring, ring, ring.gens())

    @classmethod
    def by_names(cls, source: PolyRing, target: PolyRing, rename: Mapping[str, str] | None = None):
        """Send each source variable to the target variable of the same (or renamed) name."""
        rename = rename or {}
        return cls(source, target, [target.gen(rename.get(v, v)) for v in source.variables])

    def __call__(self, p: Polynomial) -> Polynomial:
        if not isinstance(p, Polynomial):
            return self.target.const(p)
        if p.ring != self.source:
            raise RingMismatch(f"{p} is not in the source ring {self.source!r}")
        powers: list[dict[int, Polynomial]] = [{0: self.target.one(), 1: im} for im in self.images]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * self.images[i]
            return cache[k]

        acc = self.target.zero()
        for e, c in p.items():
            term = self.target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def then(self, other: RingMorphism) -> RingMorphism:
        """``other ∘ self``."""
        if other.source != self.target:
            raise RingMismatch("morphisms are not composable")
        return RingMorphism(self.source, other.target, [other(im) for im in self.images])

    def __eq__(self, other):
        return (isinstance(other, RingMorphism) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        maps = ", ".join(f"{v} -> {im}" for v, im in zip(self.source.variables, self.images))
        return f"RingMorphism({maps})"


def apply_morphism(f: RingMorphism, p: Polynomial) -> Polynomial:
    return f(p)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring != q.ring:
        raise RingMismatch(f"ring mismatch: {p.ring!r} vs {q.ring!r}")
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring != q.ring:
        raise RingMismatch(f"ring mismatch: {p.ring!r} vs {q.ring!r}")
    return p * q


def iter_monomials(nvars: int, degree: int) -> Iterator[Exponents]:
    """All exponent vectors of exactly the given total degree."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for k in range(degree, -1, -1):
        for rest in iter_monomials(nvars - 1, degree - k):
            yield (k,) + rest

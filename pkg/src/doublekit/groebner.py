"""Gröbner bases for submodules of Q[x1..xn]^p.

Vectors are plain dicts ``{(component, exponents): coefficient}``.  The module
order is position-over-term: the component index dominates with the *lower*
index being larger, ties are broken by grevlex on the exponents.  With this
order the leading term of a vector sits in its first nonzero component, which is
what makes the elimination tricks in :mod:`doublekit.modules` (syzygies,
kernels, lifting) work.

Pair handling follows Gebauer-Möller, minus the coprime-leading-monomial
(product) criterion, which is unsound for modules: ``(x, 1)`` and ``(y, 0)``
have coprime leads but a nonzero S-vector.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

INFINITE = math.inf

Term = tuple  # (component, exponents)

_KEYS: dict = {}


def term_key(t: Term) -> tuple:
    """Heap key of a module term; *smaller* key means *larger* term."""
    k = _KEYS.get(t)
    if k is None:
        comp, e = t
        k = (comp, -sum(e), e[::-1])
        if len(_KEYS) > 500_000:
            _KEYS.clear()
        _KEYS[t] = k
    return k


def leading_term(vec: dict) -> Term:
    return min(vec, key=term_key)


def sorted_terms(vec: dict) -> list:
    """Terms of ``vec`` from largest to smallest."""
    return sorted(vec.items(), key=lambda tc: term_key(tc[0]))


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple([x if x > y else y for x, y in zip(a, b)])


@dataclass
class _Elem:
    comp: int
    lead: tuple           # exponents of the (monic) leading term
    vec: dict
    tail: list            # [(term, coeff)] without the leading term


def _make_elem(vec: dict) -> _Elem:
    lt = leading_term(vec)
    lc = vec[lt]
    if lc != 1:
        inv = 1 / lc
        vec = {t: c * inv for t, c in vec.items()}
    tail = [(t, c) for t, c in vec.items() if t != lt]
    return _Elem(lt[0], lt[1], vec, tail)


class _Reducer:
    """Index of basis elements by component for divisor lookup."""

    def __init__(self, elems: Iterable[_Elem] = ()):
        self.by_comp: dict[int, list[_Elem]] = {}
        for g in elems:
            self.add(g)

    def add(self, g: _Elem):
        self.by_comp.setdefault(g.comp, []).append(g)

    def remove(self, g: _Elem):
        self.by_comp[g.comp].remove(g)

    def find(self, t: Term):
        comp, e = t
        for g in self.by_comp.get(comp, ()):
            if _divides(g.lead, e):
                return g
        return None

    def normal_form(self, vec: dict, full: bool = True) -> dict:
        """Reduce ``vec``; with ``full=False`` stop at the first irreducible leading term."""
        f = dict(vec)
        heap = [(term_key(t), t) for t in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            g = self.find(t)
            if g is None:
                rem[t] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            shift = tuple([a - b for a, b in zip(t[1], g.lead)])
            for (gc, ge), a in g.tail:
                nt = (gc, tuple([x + y for x, y in zip(ge, shift)]))
                old = f.get(nt)
                if old is None:
                    f[nt] = -c * a
                    heapq.heappush(heap, (term_key(nt), nt))
                else:
                    v = old - c * a
                    if v:
                        f[nt] = v
                    else:
                        del f[nt]
        return rem


def _spoly(g: _Elem, h: _Elem, lcm: tuple) -> dict:
    sg = tuple([a - b for a, b in zip(lcm, g.lead)])
    sh = tuple([a - b for a, b in zip(lcm, h.lead)])
    out: dict = {}
    for (c, e), a in g.tail:
        out[(c, tuple([x + y for x, y in zip(e, sg)]))] = a
    for (c, e), a in h.tail:
        t = (c, tuple([x + y for x, y in zip(e, sh)]))
        v = out.get(t, 0) - a
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def groebner_basis(vectors: Sequence[dict]) -> list[dict]:
    """Reduced Gröbner basis (monic, sorted by decreasing leading term)."""
    elems: list[_Elem] = []
    active: list[int] = []
    red = _Reducer()
    pairs: dict[tuple[int, int], tuple] = {}

    def update(h: _Elem):
        nonlocal active
        hi = len(elems)
        elems.append(h)
        cands = [(gi, _lcm(h.lead, elems[gi].lead)) for gi in active if elems[gi].comp == h.comp]
        kept: list = []
        while cands:
            gi, L = cands.pop(0)
            if any(_divides(L2, L) for _, L2 in cands) or any(_divides(L2, L) for _, L2 in kept):
                continue
            kept.append((gi, L))
        for (a, b), L in list(pairs.items()):
            ea, eb = elems[a], elems[b]
            if (ea.comp == h.comp and _divides(h.lead, L)
                    and _lcm(ea.lead, h.lead) != L and _lcm(eb.lead, h.lead) != L):
                del pairs[(a, b)]
        for gi, L in kept:
            pairs[(gi, hi)] = L
        still = []
        for gi in active:
            g = elems[gi]
            if g.comp == h.comp and _divides(h.lead, g.lead):
                red.remove(g)
            else:
                still.append(gi)
        active = still + [hi]
        red.add(h)

    start = [dict(v) for v in vectors if v]
    start.sort(key=lambda v: term_key(leading_term(v)), reverse=True)
    for v in start:
        r = red.normal_form(v, full=True)
        if r:
            update(_make_elem(r))

    while pairs:
        key = min(pairs, key=lambda ab: (sum(pairs[ab]), elems[ab[0]].comp, pairs[ab][::-1], ab))
        L = pairs.pop(key)
        s = _spoly(elems[key[0]], elems[key[1]], L)
        if not s:
            continue
        r = red.normal_form(s, full=True)
        if r:
            update(_make_elem(r))

    basis = [elems[i] for i in active]
    out = []
    for g in basis:
        others = _Reducer(b for b in basis if b is not g)
        tail = others.normal_form(dict(g.tail), full=True)
        tail[(g.comp, g.lead)] = g.vec[(g.comp, g.lead)]
        out.append(tail)
    out.sort(key=lambda v: term_key(leading_term(v)))
    return out


def reducer_for(basis: Sequence[dict]) -> _Reducer:
    return _Reducer(_make_elem(v) for v in basis if v)


def normal_form(vec: dict, basis: Sequence[dict]) -> dict:
    return reducer_for(basis).normal_form(vec)


def standard_monomial_count(leads: Iterable[Term], rank: int, nvars: int):
    """dim_Q of Q[x]^rank / <leading terms>, or INFINITE.

    Finite iff in every component each variable has a pure power among the
    leading monomials of that component.
    """
    by_comp: dict[int, list[tuple]] = {c: [] for c in range(rank)}
    for comp, e in leads:
        by_comp[comp].append(e)
    total = 0
    for comp in range(rank):
        ls = by_comp[comp]
        if any(sum(e) == 0 for e in ls):
            continue
        for i in range(nvars):
            if not any(e[i] > 0 and sum(e) == e[i] for e in ls):
                return INFINITE
        # walk the order ideal of standard monomials
        zero = (0,) * nvars
        seen = {zero}
        stack = [zero]
        while stack:
            m = stack.pop()
            for i in range(nvars):
                n = m[:i] + (m[i] + 1,) + m[i + 1:]
                if n in seen or any(_divides(e, n) for e in ls):
                    continue
                seen.add(n)
                stack.append(n)
        total += len(seen)
    return total

"""Submodules of free modules R^p over R = Q[x1..xn], and matrix homomorphisms.

Everything is built on :mod:`doublekit.groebner`.  The position-over-term order
lets one Gröbner computation on "augmented" vectors answer several questions
at once: stacking ``(A*g_i | g_i)`` and keeping the basis vectors whose first
block vanishes gives the kernel of ``A`` on ``<g_i>``, stacking ``(g_i | e_i)``
gives syzygies, and so on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import groebner as gb
from .errors import NotContained, RankMismatch, RingMismatch
from .groebner import INFINITE
from .poly import Polynomial, PolyRing, divide_exact


@dataclass(frozen=True, repr=False)
class ModuleElement:
    """A vector in R^rank."""

    ring: PolyRing
    components: tuple

    def __post_init__(self):
        comps = tuple(self.ring(c) for c in self.components)
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, ring: PolyRing, rank: int) -> ModuleElement:
        return cls(ring, (ring.zero(),) * rank)

    @classmethod
    def basis_vector(cls, ring: PolyRing, rank: int, i: int) -> ModuleElement:
        return cls(ring, tuple(ring.one() if k == i else ring.zero() for k in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def _check(self, other: ModuleElement):
        if not isinstance(other, ModuleElement):
            raise TypeError(f"expected a ModuleElement, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
        if other.rank != self.rank:
            raise RankMismatch(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        return ModuleElement(self.ring, tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        self._check(other)
        return ModuleElement(self.ring, tuple(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return ModuleElement(self.ring, tuple(-a for a in self))

    def __mul__(self, scalar):
        if isinstance(scalar, ModuleElement):
            return NotImplemented
        s = self.ring(scalar)
        return ModuleElement(self.ring, tuple(s * a for a in self))

    __rmul__ = __mul__

    def concat(self, other: ModuleElement) -> ModuleElement:
        if other.ring != self.ring:
            raise RingMismatch(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
        return ModuleElement(self.ring, self.components + other.components)

    def to_vector(self, offset: int = 0) -> dict:
        vec = {}
        for c, p in enumerate(self.components):
            for e, a in p.items():
                vec[(c + offset, e)] = a
        return vec

    @classmethod
    def from_vector(cls, ring: PolyRing, rank: int, vec: dict, offset: int = 0) -> ModuleElement:
        comps: list[dict] = [{} for _ in range(rank)]
        for (c, e), a in vec.items():
            k = c - offset
            if 0 <= k < rank:
                comps[k][e] = a
        return cls(ring, tuple(Polynomial(ring, d) for d in comps))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"ModuleElement{self}"


def element(ring: PolyRing, *components) -> ModuleElement:
    """Convenience constructor: ``element(R, "x", "y^2")``."""
    return ModuleElement(ring, tuple(ring(c) for c in components))


class Submodule:
    """Finitely generated submodule of R^rank with a lazily cached Gröbner basis.

    Behaves as an immutable value; the cache is filled at most once with a
    deterministic result, so concurrent readers agree on it.
    """

    __slots__ = ("ring", "rank", "gens", "_gb", "_reducer")

    def __init__(self, ring: PolyRing, rank: int, gens: Iterable = ()):
        if rank < 0:
            raise ValueError("rank must be non-negative")
        gens = tuple(g if isinstance(g, ModuleElement) else ModuleElement(ring, tuple(g))
                     for g in gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator {g} is not over {ring!r}")
            if g.rank != rank:
                raise RankMismatch(f"generator {g} has rank {g.rank}, expected {rank}")
        self.ring = ring
        self.rank = rank
        self.gens = gens
        self._gb = None
        self._reducer = None

    @classmethod
    def free(cls, ring: PolyRing, rank: int) -> Submodule:
        return cls(ring, rank, [ModuleElement.basis_vector(ring, rank, i) for i in range(rank)])

    @classmethod
    def zero(cls, ring: PolyRing, rank: int) -> Submodule:
        return cls(ring, rank, [])

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens=[{', '.join(str(g) for g in self.gens)}])"

    def nonzero_gens(self) -> tuple:
        return tuple(g for g in self.gens if not g.is_zero())

    def basis_vectors(self) -> list[dict]:
        if self._gb is None:
            self._gb = gb.groebner_basis([g.to_vector() for g in self.gens])
        return self._gb

    def groebner(self) -> list[ModuleElement]:
        return [ModuleElement.from_vector(self.ring, self.rank, v) for v in self.basis_vectors()]

    def _red(self):
        if self._reducer is None:
            self._reducer = gb.reducer_for(self.basis_vectors())
        return self._reducer

    def normal_form(self, h: ModuleElement) -> ModuleElement:
        self._check_element(h)
        return ModuleElement.from_vector(self.ring, self.rank, self._red().normal_form(h.to_vector()))

    def contains(self, h: ModuleElement) -> bool:
        self._check_element(h)
        return not self._red().normal_form(h.to_vector(), full=False)

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.basis_vectors()

    def _check_element(self, h: ModuleElement):
        if h.ring != self.ring:
            raise RingMismatch(f"element {h} is not over {self.ring!r}")
        if h.rank != self.rank:
            raise RankMismatch(f"element of rank {h.rank} tested against rank-{self.rank} module")

    def same_ambient(self, other: Submodule):
        if other.ring != self.ring:
            raise RingMismatch(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
        if other.rank != self.rank:
            raise RankMismatch(f"ambient rank mismatch: {self.rank} vs {other.rank}")


# -- basic predicates -------------------------------------------------------------

def groebner(M: Submodule) -> list[ModuleElement]:
    return M.groebner()


def contains(M: Submodule, h: ModuleElement) -> bool:
    return M.contains(h)


def is_submodule(M: Submodule, N: Submodule) -> bool:
    """M ⊆ N."""
    M.same_ambient(N)
    return all(N.contains(g) for g in M.gens)


def module_eq(M: Submodule, N: Submodule) -> bool:
    M.same_ambient(N)
    return is_submodule(M, N) and is_submodule(N, M)


# -- elimination-based constructions -----------------------------------------------

def _eliminate(vectors: list[dict], cut: int) -> list[dict]:
    """Basis vectors of <vectors> ∩ (0^cut ⊕ R^*), i.e. leading component >= cut."""
    return [v for v in gb.groebner_basis(vectors) if gb.leading_term(v)[0] >= cut]


def _tagged(gens: Sequence[ModuleElement], ring: PolyRing, p: int) -> list[dict]:
    """Vectors (g_i | e_i) in R^(p+s)."""
    one = ring.one().constant_coefficient()
    vecs = []
    for i, g in enumerate(gens):
        v = g.to_vector()
        v[(p + i, ring._zero_exps)] = one
        vecs.append(v)
    return vecs


def syzygies(gens: Sequence[ModuleElement], ring: PolyRing | None = None) -> Submodule:
    """Relation module {a in R^s : sum a_i g_i = 0}, generated by a Gröbner basis of it."""
    gens = list(gens)
    if not gens:
        if ring is None:
            raise ValueError("syzygies of an empty list need an explicit ring")
        return Submodule.zero(ring, 0)
    ring = gens[0].ring
    p, s = gens[0].rank, len(gens)
    rel = _eliminate(_tagged(gens, ring, p), p)
    return Submodule(ring, s, [ModuleElement.from_vector(ring, s, v, offset=p) for v in rel])


def lift(M: Submodule, h: ModuleElement) -> list[Polynomial] | None:
    """Coefficients a with h = sum a_i * M.gens[i], or None when h is not in M."""
    return Lifter(M)(h)


class Lifter:
    """Reusable lifting against a fixed generating list (one Gröbner basis)."""

    def __init__(self, M: Submodule):
        self.module = M
        self._red = gb.reducer_for(gb.groebner_basis(_tagged(M.gens, M.ring, M.rank)))

    def __call__(self, h: ModuleElement) -> list[Polynomial] | None:
        M = self.module
        M._check_element(h)
        r = self._red.normal_form(h.to_vector())
        if any(c < M.rank for c, _ in r):
            return None
        neg = ModuleElement.from_vector(M.ring, len(M.gens), r, offset=M.rank)
        return [-c for c in neg.components]


def intersection(M: Submodule, N: Submodule) -> Submodule:
    M.same_ambient(N)
    p = M.rank
    vecs = []
    for g in M.gens:
        v = g.to_vector()
        v.update(g.to_vector(offset=p))
        vecs.append(v)
    vecs.extend(g.to_vector() for g in N.gens)
    rel = _eliminate(vecs, p)
    return Submodule(M.ring, p, [ModuleElement.from_vector(M.ring, p, v, offset=p) for v in rel])


def direct_sum(M: Submodule, N: Submodule) -> Submodule:
    if M.ring != N.ring:
        raise RingMismatch(f"ring mismatch: {M.ring!r} vs {N.ring!r}")
    zq = ModuleElement.zero(M.ring, N.rank)
    zp = ModuleElement.zero(M.ring, M.rank)
    gens = [g.concat(zq) for g in M.gens] + [zp.concat(h) for h in N.gens]
    return Submodule(M.ring, M.rank + N.rank, gens)


def colength(M: Submodule, N: Submodule):
    """dim_Q(N/M) for M ⊆ N, or ``INFINITE``.

    N/M is presented as R^t / L where t = #gens(N) and L is the preimage of M
    under (a_i) -> sum a_i n_i, i.e. the syzygies of N's generators plus the
    expressions of M's generators.  The count is over standard monomials of L.
    """
    M.same_ambient(N)
    if not is_submodule(M, N):
        raise NotContained("colength requires M ⊆ N")
    ring, p, t = M.ring, M.rank, len(N.gens)
    if t == 0:
        return 0
    vecs = _tagged(N.gens, ring, p)
    vecs.extend(g.to_vector() for g in M.gens)
    rel = _eliminate(vecs, p)
    leads = [(c - p, e) for c, e in (gb.leading_term(v) for v in rel)]
    return gb.standard_monomial_count(leads, t, ring.nvars)


def generic_rank(M: Submodule) -> int:
    """Rank of M over Frac(R).

    Under position-over-term every vector's leading term sits in its first
    nonzero component, so the distinct leading components of a Gröbner basis
    are exactly the pivot columns of an echelon form of M ⊗ Frac(R).
    """
    return len({gb.leading_term(v)[0] for v in M.basis_vectors()})


def generic_rank_bareiss(M: Submodule) -> int:
    """Same rank by fraction-free (Bareiss) elimination of the generator matrix."""
    rows = [list(g.components) for g in M.gens if not g.is_zero()]
    return matrix_rank(rows)


def matrix_rank(rows: list[list[Polynomial]]) -> int:
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ring = rows[0][0].ring
    ncols = len(rows[0])
    prev = ring.one()
    rank = 0
    cols = list(range(ncols))
    while rows and cols:
        # smallest nonzero entry as pivot keeps intermediate sizes down
        best = None
        for ri, r in enumerate(rows):
            for c in cols:
                if r[c]:
                    size = (r[c].total_degree(), len(r[c]))
                    if best is None or size < best[0]:
                        best = (size, ri, c)
        if best is None:
            break
        _, ri, pc = best
        prow = rows.pop(ri)
        piv = prow[pc]
        cols.remove(pc)
        new_rows = []
        for r in rows:
            a = r[pc]
            nr = list(r)
            for c in cols:
                val = piv * r[c] - a * prow[c]
                nr[c] = divide_exact(val, prev) if val else val
            nr[pc] = ring.zero()
            if any(nr[c] for c in cols):
                new_rows.append(nr)
        rows = new_rows
        prev = piv
        rank += 1
    return rank


# -- homomorphisms -----------------------------------------------------------------

def _matrix(ring: PolyRing, rows, q: int, p: int) -> tuple:
    rows = tuple(tuple(ring(a) for a in row) for row in rows)
    if len(rows) != q or any(len(r) != p for r in rows):
        raise RankMismatch(f"matrix shape does not match {q}x{p}")
    return rows


def mat_vec(matrix: tuple, h: ModuleElement, ring: PolyRing) -> ModuleElement:
    return ModuleElement(ring, tuple(
        sum((a * b for a, b in zip(row, h.components)), ring.zero()) for row in matrix))


def mat_mul(A: tuple, B: tuple, ring: PolyRing, ncols: int | None = None) -> tuple:
    inner = len(B)
    if ncols is None:
        ncols = len(B[0]) if B else 0
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(inner)), ring.zero()) for j in range(ncols))
        for i in range(len(A)))


class MatrixHom:
    """φ: domain ⊂ R^p -> codomain ⊂ R^q given by a q×p matrix."""

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: Submodule, codomain: Submodule, matrix, check: bool = True):
        if domain.ring != codomain.ring:
            raise RingMismatch("domain and codomain live over different rings")
        self.domain = domain
        self.codomain = codomain
        self.matrix = _matrix(domain.ring, matrix, codomain.rank, domain.rank)
        if check:
            for g in domain.gens:
                if not codomain.contains(self.apply(g)):
                    raise NotContained(f"image of generator {g} is not in the codomain")

    @property
    def ring(self) -> PolyRing:
        return self.domain.ring

    @property
    def shape(self) -> tuple[int, int]:
        return self.codomain.rank, self.domain.rank

    @classmethod
    def identity(cls, M: Submodule) -> MatrixHom:
        r = M.ring
        return cls(M, M, [[r.one() if i == j else r.zero() for j in range(M.rank)]
                          for i in range(M.rank)], check=False)

    @classmethod
    def zero(cls, M: Submodule, N: Submodule) -> MatrixHom:
        return cls(M, N, [[M.ring.zero()] * M.rank for _ in range(N.rank)], check=False)

    def apply(self, h: ModuleElement) -> ModuleElement:
        if h.rank != self.domain.rank:
            raise RankMismatch(f"element of rank {h.rank} fed to a map from rank {self.domain.rank}")
        return mat_vec(self.matrix, h, self.ring)

    __call__ = apply

    def __add__(self, other: MatrixHom) -> MatrixHom:
        _same_shape(self, other)
        m = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.matrix, other.matrix))
        return MatrixHom(self.domain, self.codomain, m, check=False)

    def __neg__(self) -> MatrixHom:
        return MatrixHom(self.domain, self.codomain,
                         tuple(tuple(-a for a in r) for r in self.matrix), check=False)

    def __sub__(self, other: MatrixHom) -> MatrixHom:
        return self + (-other)

    def scale(self, c) -> MatrixHom:
        c = self.ring(c)
        return MatrixHom(self.domain, self.codomain,
                         tuple(tuple(c * a for a in r) for r in self.matrix), check=False)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.matrix)
        return f"MatrixHom([{rows}])"


def _same_shape(f: MatrixHom, g: MatrixHom):
    if f.shape != g.shape or f.ring != g.ring:
        raise RankMismatch(f"hom shapes differ: {f.shape} vs {g.shape}")


def image(phi: MatrixHom) -> Submodule:
    return Submodule(phi.ring, phi.codomain.rank, [phi.apply(g) for g in phi.domain.gens])


def kernel(phi: MatrixHom) -> Submodule:
    """{h in domain : A h = 0}, via elimination on the vectors (A g_i | g_i)."""
    q, p = phi.shape
    vecs = []
    for g in phi.domain.gens:
        v = phi.apply(g).to_vector()
        v.update(g.to_vector(offset=q))
        vecs.append(v)
    rel = _eliminate(vecs, q)
    return Submodule(phi.ring, p, [ModuleElement.from_vector(phi.ring, p, v, offset=q) for v in rel])


def hom_compose(gamma: MatrixHom, phi: MatrixHom, check: bool = True) -> MatrixHom:
    """γ ∘ φ."""
    if gamma.ring != phi.ring:
        raise RingMismatch("homs live over different rings")
    if phi.codomain.rank != gamma.domain.rank:
        raise RankMismatch("homs are not composable: rank mismatch")
    if check and not is_submodule(phi.codomain, gamma.domain):
        raise NotContained("codomain of the first map is not inside the domain of the second")
    return MatrixHom(phi.domain, gamma.codomain, mat_mul(gamma.matrix, phi.matrix, phi.ring, phi.domain.rank),
                     check=False)


def hom_eq_on_domain(phi: MatrixHom, psi: MatrixHom) -> bool:
    """Equality as maps: (A - A') g = 0 for every domain generator g."""
    _same_shape(phi, psi)
    diff = phi - psi
    return all(diff.apply(g).is_zero() for g in phi.domain.gens)


def is_zero_map(phi: MatrixHom) -> bool:
    return all(phi.apply(g).is_zero() for g in phi.domain.gens)


def is_surjective(phi: MatrixHom) -> bool:
    return is_submodule(phi.codomain, image(phi))


def is_injective(phi: MatrixHom) -> bool:
    return kernel(phi).is_zero()


@dataclass(frozen=True)
class PresentedQuotient:
    """numerator / denominator with denominator ⊆ numerator ⊆ R^p."""

    numerator: Submodule
    denominator: Submodule
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        self.numerator.same_ambient(self.denominator)
        if self.check and not is_submodule(self.denominator, self.numerator):
            raise NotContained("quotient denominator is not contained in the numerator")

    @property
    def rank(self) -> int:
        return self.numerator.rank

    def is_zero(self) -> bool:
        return is_submodule(self.numerator, self.denominator)

    def dimension(self):
        return colength(self.denominator, self.numerator)


def quotient_from_cosets(reps: Sequence[ModuleElement], W: Submodule) -> PresentedQuotient:
    """Submodule <reps + W> of R^p/W presented by its preimage <reps> + W."""
    pre = Submodule(W.ring, W.rank, list(reps) + list(W.gens))
    return PresentedQuotient(pre, W)


__all__ = [
    "INFINITE", "ModuleElement", "Submodule", "MatrixHom", "PresentedQuotient", "Lifter",
    "element", "groebner", "contains", "is_submodule", "module_eq", "syzygies", "lift",
    "intersection", "direct_sum", "colength", "generic_rank", "generic_rank_bareiss", "matrix_rank", "image",
    "kernel", "hom_compose", "hom_eq_on_domain", "is_zero_map", "is_surjective",
    "is_injective", "quotient_from_cosets", "mat_vec", "mat_mul",
]

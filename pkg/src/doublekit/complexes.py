"""Bounded chain complexes of submodules, chain maps, homotopies, and their doubles.

A complex stores modules M_i for i in [low, high] and differentials
φ_i: M_i -> M_{i-1}.  Outside that range the module is the rank-0 zero module
and missing differentials are zero maps, so exactness at the ends is measured
against zero maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .double import DoubleContext, double_matrix, double_module
from .errors import RankMismatch, RingMismatch
from .modules import (
    MatrixHom, Submodule, hom_compose, hom_eq_on_domain, image, kernel, module_eq,
)
from .poly import PolyRing


class ChainComplex:
    def __init__(self, ring: PolyRing, modules: Mapping[int, Submodule],
                 differentials: Mapping[int, MatrixHom] | None = None):
        if not modules:
            raise ValueError("a complex needs at least one module")
        degrees = sorted(modules)
        if degrees != list(range(degrees[0], degrees[-1] + 1)):
            raise ValueError("module degrees must form a contiguous range")
        self.ring = ring
        self.low, self.high = degrees[0], degrees[-1]
        self.modules = dict(modules)
        for M in self.modules.values():
            if M.ring != ring:
                raise RingMismatch("module over the wrong ring")
        self.differentials = {}
        for i, d in (differentials or {}).items():
            if i not in self.modules or i - 1 not in self.modules:
                raise RankMismatch(f"differential {i} leaves the degree range")
            if d.domain.rank != self.modules[i].rank or d.codomain.rank != self.modules[i - 1].rank:
                raise RankMismatch(f"differential {i} has shape {d.shape}, "
                                   f"expected {(self.modules[i - 1].rank, self.modules[i].rank)}")
            if d.domain is not self.modules[i] or d.codomain is not self.modules[i - 1]:
                d = MatrixHom(self.modules[i], self.modules[i - 1], d.matrix, check=False)
            self.differentials[i] = d

    @classmethod
    def from_top(cls, modules: Sequence[Submodule], diffs: Sequence[MatrixHom],
                 low: int = 0) -> ChainComplex:
        """``modules`` listed from the highest degree down to ``low``; ``diffs``
        likewise (diffs[k] starts at modules[k])."""
        if len(diffs) != len(modules) - 1:
            raise RankMismatch(f"{len(modules)} modules need {len(modules) - 1} differentials")
        high = low + len(modules) - 1
        mods = {high - k: M for k, M in enumerate(modules)}
        ds = {high - k: d for k, d in enumerate(diffs)}
        return cls(modules[0].ring, mods, ds)

    @property
    def degrees(self) -> range:
        return range(self.low, self.high + 1)

    def __len__(self):
        return self.high - self.low + 1

    def module(self, i: int) -> Submodule:
        M = self.modules.get(i)
        return M if M is not None else Submodule.zero(self.ring, 0)

    def diff(self, i: int) -> MatrixHom:
        d = self.differentials.get(i)
        if d is None:
            return MatrixHom.zero(self.module(i), self.module(i - 1))
        return d

    def __repr__(self):
        ranks = ", ".join(f"{i}:{self.modules[i].rank}" for i in self.degrees)
        return f"ChainComplex(ranks={{{ranks}}})"


def is_complex(C: ChainComplex) -> bool:
    """Every composite φ_{i-1}∘φ_i kills every generator of M_i."""
    for i in range(C.low + 2, C.high + 1):
        comp = hom_compose(C.diff(i - 1), C.diff(i), check=False)
        if not all(comp.apply(g).is_zero() for g in C.module(i).gens):
            return False
    return True


def is_exact_at(C: ChainComplex, i: int) -> bool:
    if i not in C.degrees:
        raise IndexError(f"degree {i} outside [{C.low}, {C.high}]")
    return module_eq(image(C.diff(i + 1)), kernel(C.diff(i)))


def is_exact(C: ChainComplex) -> bool:
    return all(is_exact_at(C, i) for i in C.degrees)


def double_complex(ctx: DoubleContext, C: ChainComplex) -> ChainComplex:
    dm = {i: double_module(ctx, C.module(i)) for i in C.degrees}
    mods = {i: d.value for i, d in dm.items()}
    diffs = {}
    for i, d in C.differentials.items():
        diffs[i] = MatrixHom(mods[i], mods[i - 1], double_matrix(ctx, d.matrix, d.domain.rank),
                             check=False)
    return ChainComplex(ctx.doubled, mods, diffs)


def _degree_span(C: ChainComplex, D: ChainComplex) -> range:
    return range(min(C.low, D.low), max(C.high, D.high) + 1)


class ChainMap:
    """Per-degree homs α_i: M_i -> M'_i (zero where not given)."""

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 maps: Mapping[int, MatrixHom], check: bool = True):
        if source.ring != target.ring:
            raise RingMismatch("chain map between complexes over different rings")
        self.source = source
        self.target = target
        self.maps = {}
        for i, f in maps.items():
            dom, cod = source.module(i), target.module(i)
            if f.domain.rank != dom.rank or f.codomain.rank != cod.rank:
                raise RankMismatch(f"chain map component {i} has the wrong shape")
            self.maps[i] = MatrixHom(dom, cod, f.matrix, check=False)
        if check and not self.commutes():
            raise ValueError("chain map squares do not commute")

    def at(self, i: int) -> MatrixHom:
        f = self.maps.get(i)
        if f is None:
            return MatrixHom.zero(self.source.module(i), self.target.module(i))
        return f

    @property
    def degrees(self) -> range:
        return _degree_span(self.source, self.target)

    def commutes(self) -> bool:
        for i in self.degrees:
            left = hom_compose(self.target.diff(i), self.at(i), check=False)
            right = hom_compose(self.at(i - 1), self.source.diff(i), check=False)
            if not hom_eq_on_domain(left, right):
                return False
        return True

    @classmethod
    def identity(cls, C: ChainComplex) -> ChainMap:
        return cls(C, C, {i: MatrixHom.identity(C.module(i)) for i in C.degrees}, check=False)

    @classmethod
    def zero(cls, C: ChainComplex, D: ChainComplex) -> ChainMap:
        return cls(C, D, {}, check=False)

    def __sub__(self, other: ChainMap) -> ChainMap:
        return ChainMap(self.source, self.target,
                        {i: self.at(i) - other.at(i) for i in self.degrees}, check=False)

    def __add__(self, other: ChainMap) -> ChainMap:
        return ChainMap(self.source, self.target,
                        {i: self.at(i) + other.at(i) for i in self.degrees}, check=False)

    def then(self, other: ChainMap) -> ChainMap:
        """other ∘ self."""
        span = range(min(self.source.low, other.target.low), max(self.source.high, other.target.high) + 1)
        return ChainMap(self.source, other.target,
                        {i: hom_compose(other.at(i), self.at(i), check=False) for i in span},
                        check=False)


def chain_maps_equal(a: ChainMap, b: ChainMap) -> bool:
    """Equality as maps on generators in every degree."""
    return all(hom_eq_on_domain(a.at(i), b.at(i)) for i in _degree_span(a.source, a.target))


class DegreeOneMap:
    """μ_i: M_i -> M'_{i+1}."""

    def __init__(self, source: ChainComplex, target: ChainComplex, maps: Mapping[int, MatrixHom]):
        if source.ring != target.ring:
            raise RingMismatch("degree-one map between complexes over different rings")
        self.source = source
        self.target = target
        self.maps = {}
        for i, f in maps.items():
            dom, cod = source.module(i), target.module(i + 1)
            if f.domain.rank != dom.rank or f.codomain.rank != cod.rank:
                raise RankMismatch(f"degree-one component {i} has the wrong shape")
            self.maps[i] = MatrixHom(dom, cod, f.matrix, check=False)

    def at(self, i: int) -> MatrixHom:
        f = self.maps.get(i)
        if f is None:
            return MatrixHom.zero(self.source.module(i), self.target.module(i + 1))
        return f

    @classmethod
    def zero(cls, C: ChainComplex, D: ChainComplex) -> DegreeOneMap:
        return cls(C, D, {})


def tilde(mu: DegreeOneMap) -> ChainMap:
    """The chain map φ'_{i+1}∘μ_i + μ_{i-1}∘φ_i."""
    C, D = mu.source, mu.target
    maps = {}
    for i in _degree_span(C, D):
        a = hom_compose(D.diff(i + 1), mu.at(i), check=False)
        b = hom_compose(mu.at(i - 1), C.diff(i), check=False)
        maps[i] = a + b
    return ChainMap(C, D, maps, check=False)


def is_homotopy(alpha: ChainMap, beta: ChainMap, mu: DegreeOneMap) -> bool:
    """μ̃ = α - β as maps, degree by degree."""
    if alpha.source is not beta.source and alpha.source.degrees != beta.source.degrees:
        raise RankMismatch("chain maps have different sources")
    return chain_maps_equal(tilde(mu), alpha - beta)


def double_chain_map(ctx: DoubleContext, alpha: ChainMap, source_D: ChainComplex | None = None,
                     target_D: ChainComplex | None = None) -> ChainMap:
    sD = source_D or double_complex(ctx, alpha.source)
    tD = target_D or double_complex(ctx, alpha.target)
    maps = {}
    for i, f in alpha.maps.items():
        maps[i] = MatrixHom(sD.module(i), tD.module(i), double_matrix(ctx, f.matrix, f.domain.rank),
                            check=False)
    return ChainMap(sD, tD, maps, check=False)


def double_degree_one_map(ctx: DoubleContext, mu: DegreeOneMap, source_D: ChainComplex | None = None,
                          target_D: ChainComplex | None = None) -> DegreeOneMap:
    sD = source_D or double_complex(ctx, mu.source)
    tD = target_D or double_complex(ctx, mu.target)
    maps = {}
    for i, f in mu.maps.items():
        maps[i] = MatrixHom(sD.module(i), tD.module(i + 1), double_matrix(ctx, f.matrix, f.domain.rank),
                            check=False)
    return DegreeOneMap(sD, tD, maps)


def matrices_equal(a: ChainMap, b: ChainMap) -> bool:
    return all(a.at(i).matrix == b.at(i).matrix for i in _degree_span(a.source, a.target))


@dataclass
class ContractibilityReport:
    precondition: bool
    transferred: bool | None = None

    @property
    def ok(self) -> bool:
        return self.precondition and bool(self.transferred)


def contractibility_transfer(ctx: DoubleContext, C: ChainComplex, mu: DegreeOneMap) -> ContractibilityReport:
    """If μ contracts C (id ≃ 0 via μ), check μ_D contracts C_D."""
    if not is_homotopy(ChainMap.identity(C), ChainMap.zero(C, C), mu):
        return ContractibilityReport(precondition=False)
    CD = double_complex(ctx, C)
    muD = double_degree_one_map(ctx, mu, CD, CD)
    ok = is_homotopy(ChainMap.identity(CD), ChainMap.zero(CD, CD), muD)
    return ContractibilityReport(precondition=True, transferred=ok)


@dataclass
class ExactnessReport:
    exact: dict = field(default_factory=dict)
    exact_doubled: dict = field(default_factory=dict)

    @property
    def complex_exact(self) -> bool:
        return all(self.exact.values())

    @property
    def double_exact(self) -> bool:
        return all(self.exact_doubled.values())

    @property
    def implication_holds(self) -> bool:
        """C_D exact ⇒ C exact."""
        return self.complex_exact or not self.double_exact


def exactness_propagation_check(ctx: DoubleContext, C: ChainComplex,
                                CD: ChainComplex | None = None) -> ExactnessReport:
    CD = CD or double_complex(ctx, C)
    rep = ExactnessReport()
    for i in C.degrees:
        rep.exact[i] = is_exact_at(C, i)
        rep.exact_doubled[i] = is_exact_at(CD, i)
    return rep


def homotopy_equivalence_transfer(ctx: DoubleContext, alpha: ChainMap, beta: ChainMap,
                                  mu_src: DegreeOneMap, mu_tgt: DegreeOneMap) -> tuple[bool, bool]:
    """Given β∘α ≃ id via ``mu_src`` and α∘β ≃ id via ``mu_tgt``, return
    (hypotheses hold, doubled witnesses certify the doubled equivalence)."""
    C, D = alpha.source, alpha.target
    hyp = (is_homotopy(alpha.then(beta), ChainMap.identity(C), mu_src)
           and is_homotopy(beta.then(alpha), ChainMap.identity(D), mu_tgt))
    CD, DD = double_complex(ctx, C), double_complex(ctx, D)
    aD = double_chain_map(ctx, alpha, CD, DD)
    bD = double_chain_map(ctx, beta, DD, CD)
    ok = (is_homotopy(aD.then(bD), ChainMap.identity(CD), double_degree_one_map(ctx, mu_src, CD, CD))
          and is_homotopy(bD.then(aD), ChainMap.identity(DD), double_degree_one_map(ctx, mu_tgt, DD, DD)))
    return hyp, ok

"""Seeded random instances for the property suites.

Every generator takes a ``random.Random`` so that a trial is reproducible from
its seed alone.  Bounds live in :class:`InstanceSpec`; the hard limits below
are the largest instances the suites are specified for, the defaults are the
(smaller) configuration the suites actually run with.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Sequence

from .modules import MatrixHom, ModuleElement, Submodule, mat_mul, mat_vec, syzygies
from .poly import PolyRing, Polynomial, RingMorphism, iter_monomials

LIMITS = {"max_vars": 3, "max_rank": 3, "max_gens": 4, "max_degree": 3, "coeff_bound": 5}
SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class InstanceSpec:
    seed: int = 0
    max_vars: int = 2
    max_rank: int = 2
    max_gens: int = 3
    max_degree: int = 2
    coeff_bound: int = 5
    max_terms: int = 2

    def __post_init__(self):
        for name, hi in LIMITS.items():
            v = getattr(self, name)
            lo = 1 if name in ("max_vars", "max_rank", "coeff_bound") else 0
            if not lo <= v <= hi:
                raise ValueError(f"{name}={v} outside [{lo}, {hi}]")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")
        if not 0 <= self.seed <= SEED_MASK:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def with_(self, **kw) -> InstanceSpec:
        return replace(self, **kw)


def trial_seed(base: int, k: int) -> int:
    """Seed of trial ``k`` in a suite started from ``base``."""
    return (base * 1_000_003 + k) & SEED_MASK


def ring_with(nvars: int) -> PolyRing:
    return PolyRing([f"x{i + 1}" for i in range(nvars)])


def random_ring(spec: InstanceSpec, rng: random.Random) -> PolyRing:
    return ring_with(rng.randint(1, spec.max_vars))


def random_poly(spec: InstanceSpec, ring: PolyRing, rng: random.Random,
                zero_chance: float = 0.25, max_degree: int | None = None) -> Polynomial:
    if rng.random() < zero_chance:
        return ring.zero()
    deg = spec.max_degree if max_degree is None else max_degree
    terms = {}
    for _ in range(rng.randint(1, spec.max_terms)):
        d = rng.randint(0, deg)
        mons = list(iter_monomials(ring.nvars, d))
        c = 0
        while c == 0:
            c = rng.randint(-spec.coeff_bound, spec.coeff_bound)
        terms[rng.choice(mons)] = c
    return Polynomial(ring, terms)


def random_element(spec: InstanceSpec, ring: PolyRing, rank: int, rng: random.Random) -> ModuleElement:
    return ModuleElement(ring, tuple(random_poly(spec, ring, rng) for _ in range(rank)))


def random_module(spec: InstanceSpec, ring: PolyRing, rank: int, rng: random.Random,
                  ngens: int | None = None) -> Submodule:
    s = rng.randint(0, spec.max_gens) if ngens is None else ngens
    return Submodule(ring, rank, [random_element(spec, ring, rank, rng) for _ in range(s)])


def gen_submodule(spec: InstanceSpec, seed: int | None = None) -> Submodule:
    """A random submodule within ``spec``'s bounds; deterministic in the seed."""
    rng = random.Random(spec.seed if seed is None else seed)
    ring = random_ring(spec, rng)
    rank = rng.randint(1, spec.max_rank)
    return random_module(spec, ring, rank, rng)


def small_coeff(spec: InstanceSpec, rng: random.Random, ring: PolyRing) -> Polynomial:
    """A low-degree multiplier, used when combining generators."""
    return random_poly(spec, ring, rng, zero_chance=0.3, max_degree=1)


def combination(spec: InstanceSpec, M: Submodule, rng: random.Random) -> ModuleElement:
    acc = ModuleElement.zero(M.ring, M.rank)
    for g in M.gens:
        acc = acc + g * small_coeff(spec, rng, M.ring)
    return acc


def recombined(spec: InstanceSpec, M: Submodule, rng: random.Random) -> Submodule:
    """Same module, different generators: shuffled, with combinations mixed in."""
    gens = list(M.gens)
    # adding multiples of the *other* generators, one generator at a time, keeps the span
    for k in range(len(gens)):
        if rng.random() < 0.5:
            for j in range(len(gens)):
                if j != k and rng.random() < 0.5:
                    gens[k] = gens[k] + gens[j] * small_coeff(spec, rng, M.ring)
    if gens and rng.random() < 0.5:
        gens.append(combination(spec, M, rng))
    rng.shuffle(gens)
    return Submodule(M.ring, M.rank, gens)


def random_matrix(spec: InstanceSpec, ring: PolyRing, q: int, p: int, rng: random.Random) -> tuple:
    return tuple(tuple(random_poly(spec, ring, rng, zero_chance=0.4) for _ in range(p))
                 for _ in range(q))


def matrix_into(spec: InstanceSpec, N: Submodule, p: int, rng: random.Random) -> tuple:
    """A q×p matrix whose columns lie in N, so it maps all of R^p into N."""
    q = N.rank
    cols = [combination(spec, N, rng) for _ in range(p)]
    return tuple(tuple(cols[j][i] for j in range(p)) for i in range(q))


HOM_KINDS = ("generic", "generic", "onto", "identity", "zero", "scalar", "free")


def hom_from(spec: InstanceSpec, rng: random.Random, M: Submodule, kind: str | None = None) -> MatrixHom:
    """A matrix hom out of M of one of several shapes: generic (into its image plus
    a stray generator), onto its image, identity, zero, nonzero scalar, into a free module."""
    ring, p = M.ring, M.rank
    kind = kind or rng.choice(HOM_KINDS)
    if kind == "identity":
        return MatrixHom.identity(M)
    if kind == "scalar":
        c = rng.choice([c for c in range(-spec.coeff_bound, spec.coeff_bound + 1) if c])
        return MatrixHom.identity(M).scale(c)
    q = rng.randint(1, spec.max_rank)
    if kind == "zero":
        return MatrixHom.zero(M, random_module(spec, ring, q, rng))
    A = random_matrix(spec, ring, q, p, rng)
    if kind == "free":
        return MatrixHom(M, Submodule.free(ring, q), A, check=False)
    images = [mat_vec(A, g, ring) for g in M.gens]
    extra = [] if kind == "onto" else [random_element(spec, ring, q, rng)
                                       for _ in range(rng.randint(0, 1))]
    return MatrixHom(M, Submodule(ring, q, images + extra), A, check=False)


def random_hom(spec: InstanceSpec, rng: random.Random, ring: PolyRing | None = None,
               kind: str | None = None) -> MatrixHom:
    ring = ring or random_ring(spec, rng)
    M = random_module(spec, ring, rng.randint(1, spec.max_rank), rng)
    return hom_from(spec, rng, M, kind)


def annihilating_matrix(spec: InstanceSpec, M: Submodule, q: int, rng: random.Random) -> tuple | None:
    """A nonzero q×p matrix K with K·g = 0 for every generator g of M, if one exists."""
    ring, p = M.ring, M.rank
    if not M.gens:
        return random_matrix(spec, ring, q, p, rng)
    rows_of_G = [ModuleElement(ring, tuple(g[k] for g in M.gens)) for k in range(p)]
    ann = syzygies(rows_of_G)
    if not ann.gens:
        return None
    rows = []
    for _ in range(q):
        acc = ModuleElement.zero(ring, p)
        for a in ann.gens:
            acc = acc + a * small_coeff(spec, rng, ring)
        rows.append(acc.components)
    if all(all(c.is_zero() for c in r) for r in rows):
        rows[0] = ann.gens[0].components
    return tuple(rows)


def low_rank_module(spec: InstanceSpec, ring: PolyRing, rank: int, rng: random.Random) -> Submodule:
    """Generators that are multiples of one vector, so the module has an annihilator."""
    v = random_element(spec, ring, rank, rng)
    s = rng.randint(1, max(1, spec.max_gens))
    return Submodule(ring, rank, [v * small_coeff(spec, rng, ring) for _ in range(s)])


def unimodular(spec: InstanceSpec, ring: PolyRing, n: int, rng: random.Random, steps: int = 2):
    """A random invertible n×n polynomial matrix and its inverse (products of elementary ones)."""
    one, zero = ring.one(), ring.zero()
    U = [[one if i == j else zero for j in range(n)] for i in range(n)]
    Uinv = [row[:] for row in U]
    if n < 2:
        return tuple(map(tuple, U)), tuple(map(tuple, Uinv))
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = random_poly(spec, ring, rng, zero_chance=0.0, max_degree=1)
        E = [[one if a == b else zero for b in range(n)] for a in range(n)]
        E[i][j] = c
        Einv = [row[:] for row in E]
        Einv[i][j] = -c
        U = [list(r) for r in mat_mul(tuple(map(tuple, E)), tuple(map(tuple, U)), ring, n)]
        Uinv = [list(r) for r in mat_mul(tuple(map(tuple, Uinv)), tuple(map(tuple, Einv)), ring, n)]
    return tuple(map(tuple, U)), tuple(map(tuple, Uinv))


def random_monomial_germ(spec: InstanceSpec, source: PolyRing, rng: random.Random,
                         target_vars: Sequence[str] = ("t",)) -> RingMorphism:
    """Pullback of a map germ whose coordinates are monomials c*t^a."""
    target = PolyRing(target_vars)
    images = []
    for _ in range(source.nvars):
        e = tuple(rng.randint(0, 3) for _ in target_vars)
        if not any(e):
            e = (1,) + e[1:]
        c = rng.choice([1, 1, 1, -1, 2, -3])
        images.append(target.monomial(e, c))
    return RingMorphism(source, target, images)


__all__ = [
    "InstanceSpec", "LIMITS", "trial_seed", "ring_with", "random_ring", "random_poly",
    "random_element", "random_module", "gen_submodule", "combination", "recombined",
    "random_matrix", "matrix_into", "hom_from", "random_hom", "HOM_KINDS", "annihilating_matrix", "low_rank_module",
    "unimodular", "random_monomial_germ",
]

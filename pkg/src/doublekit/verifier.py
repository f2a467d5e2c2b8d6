"""Property suites: each numbered result becomes an invariant checked on seeded
random instances.

A suite runs ``trials`` independent trials; trial k uses the seed
``trial_seed(spec.seed, k)`` so any failure can be replayed alone.  Reports are
merged in trial order, so the outcome does not depend on how trials were
scheduled.
"""

from __future__ import annotations

import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import instances as gen
from .complexes import (
    ChainComplex, ChainMap, DegreeOneMap, contractibility_transfer, double_chain_map,
    double_complex, double_degree_one_map, exactness_propagation_check,
    homotopy_equivalence_transfer, is_complex, is_homotopy, matrices_equal, tilde,
)
from .double import (
    GeneratorImageHom, RelativeMap, block_structure_ok, closed_form_oracle, context_for,
    direct_sum_iso, double_element, double_matrix, double_matrix_hom, double_module,
    double_quotient_element, double_quotient_module, interleave_permutation, lemma_sides,
    permutation_matrix, relative_double_hom,
)
from .errors import DoubleKitError
from .groebner import INFINITE
from .instances import InstanceSpec, trial_seed
from .modules import (
    MatrixHom, ModuleElement, PresentedQuotient, Submodule, colength, direct_sum,
    generic_rank, hom_compose, hom_eq_on_domain, image, is_injective, is_submodule,
    is_surjective, is_zero_map, kernel, mat_mul, mat_vec, module_eq,
)
from .poly import QQ, PolyRing, RingMorphism

# -- reports ----------------------------------------------------------------------


@dataclass
class PropertyReport:
    id: str
    trials: int
    failures: list = field(default_factory=list)   # (seed, message)
    wall_time: float = 0.0
    notes: list = field(default_factory=list)
    tallies: Counter = field(default_factory=Counter)
    replays: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"PROP {self.id} trials={self.trials} failures={len(self.failures)}"

    def lines(self) -> list[str]:
        out = [self.summary()]
        out.extend(f"FAIL {self.id} seed={seed}: {msg}" for seed, msg in self.failures)
        out.extend(f"REPLAY {p}" for p in self.replays)
        out.extend(self.notes)
        return out


@dataclass
class TrialResult:
    seed: int
    failures: list
    tallies: Counter
    replay: str | None = None


class Trial:
    """State of one trial: its rng, recorded objects (for replay) and failed checks."""

    def __init__(self, prop_id: str, spec: InstanceSpec, seed: int, index: int = 0):
        self.prop_id = prop_id
        self.index = index
        self.spec = spec
        self.seed = seed
        self.rng = random.Random(seed)
        self.failures: list[str] = []
        self.tallies: Counter = Counter()
        self.objects: list = []

    def record(self, name: str, obj):
        self.objects.append((name, obj))
        return obj

    def check(self, cond: bool, label: str) -> bool:
        if not cond:
            self.failures.append(label)
        return cond

    def tally(self, key):
        self.tallies[key] += 1

    # doubling helpers that also run the block-structure check on every doubled hom
    def double_hom(self, phi: MatrixHom, dom=None, cod=None) -> MatrixHom:
        ctx = context_for(phi.ring)
        dh = double_matrix_hom(ctx, phi, dom, cod)
        self.tally("block checks")
        self.check(block_structure_ok(ctx, dh.matrix, *phi.shape), "doubled matrix is not block diagonal")
        return dh.as_matrix_hom()

    def _blocks(self, ctx, maps: dict, doubled, what: str):
        for i, f in maps.items():
            self.tally("block checks")
            self.check(block_structure_ok(ctx, doubled.at(i).matrix, *f.shape),
                       f"doubled {what} in degree {i} is not block diagonal")

    def double_cx(self, ctx, C: ChainComplex) -> ChainComplex:
        CD = double_complex(ctx, C)
        for i, d in C.differentials.items():
            self.tally("block checks")
            self.check(block_structure_ok(ctx, CD.diff(i).matrix, *d.shape),
                       f"doubled differential d{i} is not block diagonal")
        return CD

    def double_chain(self, ctx, a: ChainMap, CD=None, DD=None) -> ChainMap:
        aD = double_chain_map(ctx, a, CD, DD)
        self._blocks(ctx, a.maps, aD, "chain map")
        return aD

    def double_deg1(self, ctx, mu: DegreeOneMap, CD=None, DD=None) -> DegreeOneMap:
        muD = double_degree_one_map(ctx, mu, CD, DD)
        self._blocks(ctx, mu.maps, muD, "degree-one map")
        return muD

    def double_mod(self, M: Submodule) -> Submodule:
        return double_module(context_for(M.ring), M).value


# -- membership, containment, equality --------------------------------------------

def _ring_and_rank(t: Trial) -> tuple[PolyRing, int]:
    return gen.random_ring(t.spec, t.rng), t.rng.randint(1, t.spec.max_rank)


def prop_p31a(t: Trial):
    R, p = _ring_and_rank(t)
    h = gen.random_element(t.spec, R, p, t.rng)
    roll = t.rng.random()
    if roll < 0.4:
        w = gen.random_element(t.spec, R, p, t.rng)
        g = (h + w) - w
    elif roll < 0.7:
        g = h + ModuleElement.basis_vector(R, p, t.rng.randrange(p)) * gen.random_poly(t.spec, R, t.rng)
    else:
        g = gen.random_element(t.spec, R, p, t.rng)
    t.record("h", h), t.record("g", g)
    ctx = context_for(R)
    t.tally(("equal", h == g))
    t.check((h == g) == (double_element(ctx, h) == double_element(ctx, g)), "h = g differs from h_D = g_D")


def prop_p31b(t: Trial):
    R, p = _ring_and_rank(t)
    M = t.record("M", gen.random_module(t.spec, R, p, t.rng))
    roll = t.rng.random()
    if roll < 0.5:
        h = gen.combination(t.spec, M, t.rng)
    elif roll < 0.75:
        h = gen.combination(t.spec, M, t.rng) + gen.random_element(t.spec, R, p, t.rng)
    else:
        h = gen.random_element(t.spec, R, p, t.rng)
    t.record("h", h)
    inside = M.contains(h)
    t.tally(("member", inside))
    t.check(inside == t.double_mod(M).contains(double_element(context_for(R), h)),
            "h in M differs from h_D in M_D")


def _pair(t: Trial, R: PolyRing, p: int) -> tuple[Submodule, Submodule]:
    """(M, N) that are nested, equal, or unrelated with similar odds."""
    spec, rng = t.spec, t.rng
    N = gen.random_module(spec, R, p, rng)
    roll = rng.random()
    if roll < 0.35:
        M = Submodule(R, p, [gen.combination(spec, N, rng) for _ in range(rng.randint(0, spec.max_gens))])
    elif roll < 0.55:
        M = gen.recombined(spec, N, rng)
    elif roll < 0.75:
        M = Submodule(R, p, list(N.gens) + [gen.random_element(spec, R, p, rng)])
    else:
        M = gen.random_module(spec, R, p, rng)
    if rng.random() < 0.5:
        M, N = N, M
    return M, N


def prop_p31c(t: Trial):
    R, p = _ring_and_rank(t)
    M, N = _pair(t, R, p)
    t.record("M", M), t.record("N", N)
    sub = is_submodule(M, N)
    t.tally(("contained", sub))
    t.check(sub == is_submodule(t.double_mod(M), t.double_mod(N)), "M ⊆ N differs from M_D ⊆ N_D")


def prop_p31d(t: Trial):
    R, p = _ring_and_rank(t)
    M, N = _pair(t, R, p)
    t.record("M", M), t.record("N", N)
    eq = module_eq(M, N)
    t.tally(("equal", eq))
    t.check(eq == module_eq(t.double_mod(M), t.double_mod(N)), "M = N differs from M_D = N_D")


def prop_c32(t: Trial):
    R, p = _ring_and_rank(t)
    ctx = context_for(R)
    h = t.record("h", gen.random_element(t.spec, R, p, t.rng))
    g = t.record("g", gen.random_element(t.spec, R, p, t.rng) if t.rng.random() < 0.7 else h)
    hD, gD = double_element(ctx, h), double_element(ctx, g)
    t.check(double_element(ctx, h + g) == hD + gD, "(h + g)_D != h_D + g_D")
    t.check(double_element(ctx, -h) == -hD, "(-h)_D != -(h_D)")
    t.check(double_element(ctx, ModuleElement.zero(R, p)).is_zero(), "0_D != 0")
    t.check(hD != gD or h == g, "h_D = g_D but h != g")


def prop_rank_even(t: Trial):
    M = t.record("M", gen.gen_submodule(t.spec, t.rng.getrandbits(64)))
    r = generic_rank(t.double_mod(M))
    t.check(r % 2 == 0, f"generic rank of M_D is odd ({r})")
    t.tally(("twice", r == 2 * generic_rank(M)))


def prop_gen_oracle(t: Trial):
    M = t.record("M", gen.gen_submodule(t.spec, t.rng.getrandbits(64)))
    ctx = context_for(M.ring)
    closed = double_module(ctx, M).value
    oracle = closed_form_oracle(ctx, M, degree=5)
    t.check(all(oracle.contains(g) for g in closed.gens), "closed-form generator outside the brute-force span")
    t.check(all(closed.contains(g) for g in oracle.gens), "brute-force h_D outside the closed-form span")


def prop_p3113a(t: Trial):
    M = t.record("M", gen.gen_submodule(t.spec, t.rng.getrandbits(64)))
    MD = t.double_mod(M)
    lD = colength(Submodule.zero(MD.ring, MD.rank), MD)
    l = colength(Submodule.zero(M.ring, M.rank), M)
    t.tally(("finite length of M_D", lD != INFINITE))
    if lD != INFINITE:
        t.check(l != INFINITE and l <= lD, f"length(M)={l} exceeds length(M_D)={lD}")


def prop_p3113b(t: Trial):
    """N/M of finite colength: N random, M = I*N + a few elements of N with I a
    power-of-variables ideal; one trial in four takes M = N re-generated."""
    spec, rng = t.spec, t.rng
    R, p = _ring_and_rank(t)
    N = gen.random_module(spec, R, p, rng, ngens=rng.randint(1, spec.max_gens))
    if rng.random() < 0.25:
        M = gen.recombined(spec, N, rng)
    else:
        pows = [R.monomial(tuple(rng.randint(1, 2) if k == i else 0 for k in range(R.nvars)))
                for i in range(R.nvars)]
        gens = [g * m for g in N.gens for m in pows]
        gens += [gen.combination(spec, N, rng) for _ in range(rng.randint(0, 2))]
        M = Submodule(R, p, gens)
    t.record("M", M), t.record("N", N)
    l = colength(M, N)
    t.check(l != INFINITE, "generated pair does not have finite colength")
    lD = colength(t.double_mod(M), t.double_mod(N))
    t.tally(("doubled colength finite", lD != INFINITE))
    if lD != INFINITE:
        t.check(l != INFINITE and l <= lD, f"colength(M, N)={l} exceeds doubled colength {lD}")


# -- homomorphisms -----------------------------------------------------------------

def _hom(t: Trial, name: str = "f", ring=None, kind=None) -> MatrixHom:
    phi = gen.random_hom(t.spec, t.rng, ring, kind)
    t.record(name, phi)
    return phi


def _some_element(t: Trial, M: Submodule) -> ModuleElement:
    return gen.combination(t.spec, M, t.rng)


def prop_t33(t: Trial):
    phi = _hom(t)
    ctx = context_for(phi.ring)
    dom = double_module(ctx, phi.domain)
    phiD = t.double_hom(phi, dom)
    h = _some_element(t, phi.domain)
    t.check(phiD.apply(double_element(ctx, h)) == double_element(ctx, phi.apply(h)),
            "phi_D(h_D) != (phi(h))_D")
    codD = t.double_mod(phi.codomain)
    t.check(all(codD.contains(phiD.apply(u)) for u in dom.value.gens), "phi_D leaves N_D")
    # uniqueness: on a difference generator the value is forced by
    # (0, (y_j - x_j) pi2(g)) = (x_j g)_D - x_j g_D
    for u, kind in zip(dom.value.gens, dom.kinds):
        if kind[0] != "diff":
            continue
        _, i, j = kind
        g = phi.domain.gens[i]
        xj = phi.ring.gens()[j]
        forced = double_element(ctx, phi.apply(g * xj)) - double_element(ctx, phi.apply(g)) * ctx.x[j]
        t.check(phiD.apply(u) == forced, "phi_D is not forced on a difference generator")


def prop_p34a(t: Trial):
    phi = _hom(t)
    phiD = t.double_hom(phi)
    t.check(module_eq(image(phiD), t.double_mod(image(phi))), "Im(phi_D) != (Im phi)_D")


def prop_p34b(t: Trial):
    phi = _hom(t)
    phiD = t.double_hom(phi)
    KD = kernel(phiD)
    DK = t.double_mod(kernel(phi))
    t.check(is_submodule(DK, KD), "(Ker phi)_D not inside Ker(phi_D)")
    strict = not is_submodule(KD, DK)
    t.tally(("strict", strict))
    if strict:
        t.tally("witness")


def _equal_or_not(t: Trial) -> tuple[MatrixHom, MatrixHom]:
    """phi and phi' with the same domain and codomain, equal as maps about half the time."""
    spec, rng = t.spec, t.rng
    R = gen.random_ring(spec, rng)
    p = rng.randint(1, spec.max_rank)
    M = gen.low_rank_module(spec, R, p, rng) if rng.random() < 0.5 else gen.random_module(spec, R, p, rng)
    q = rng.randint(1, spec.max_rank)
    N = Submodule.free(R, q)
    A = gen.random_matrix(spec, R, q, p, rng)
    roll = rng.random()
    K = gen.annihilating_matrix(spec, M, q, rng) if roll < 0.5 else None
    if K is not None:
        A2 = tuple(tuple(a + k for a, k in zip(ra, rk)) for ra, rk in zip(A, K))
    elif roll < 0.65:
        A2 = A
    else:
        A2 = gen.random_matrix(spec, R, q, p, rng)
    phi, psi = MatrixHom(M, N, A, check=False), MatrixHom(M, N, A2, check=False)
    t.record("f", phi), t.record("g", psi)
    return phi, psi


def prop_p39a(t: Trial):
    phi, psi = _equal_or_not(t)
    dom = double_module(context_for(phi.ring), phi.domain)
    eq = hom_eq_on_domain(phi, psi)
    t.tally(("equal", eq, phi.matrix == psi.matrix))
    t.check(eq == hom_eq_on_domain(t.double_hom(phi, dom), t.double_hom(psi, dom)),
            "phi = phi' differs from phi_D = phi'_D")


def prop_t316_faithful(t: Trial):
    phi, psi = _equal_or_not(t)
    dom = double_module(context_for(phi.ring), phi.domain)
    eqD = hom_eq_on_domain(t.double_hom(phi, dom), t.double_hom(psi, dom))
    t.tally(("doubles equal", eqD))
    if eqD:
        t.check(hom_eq_on_domain(phi, psi), "phi_D = phi'_D but phi != phi'")


def prop_t316_objects(t: Trial):
    R, p = _ring_and_rank(t)
    M, N = _pair(t, R, p)
    t.record("M", M), t.record("N", N)
    eqD = module_eq(t.double_mod(M), t.double_mod(N))
    t.tally(("doubles equal", eqD))
    if eqD:
        t.check(module_eq(M, N), "M_D = N_D but M != N")


def prop_p39b(t: Trial):
    phi = _hom(t)
    gamma = t.record("g", gen.hom_from(t.spec, t.rng, phi.codomain))
    ctx = context_for(phi.ring)
    dM, dN, dP = (double_module(ctx, X) for X in (phi.domain, phi.codomain, gamma.codomain))
    left = t.double_hom(hom_compose(gamma, phi), dM, dP)
    right = hom_compose(t.double_hom(gamma, dN, dP), t.double_hom(phi, dM, dN), check=False)
    t.check(left.matrix == right.matrix, "(g o f)_D matrix != g_D o f_D matrix")
    t.check(hom_eq_on_domain(left, right), "(g o f)_D != g_D o f_D on M_D")


def prop_p39c(t: Trial):
    phi = _hom(t, kind="free")
    A2 = gen.random_matrix(t.spec, phi.ring, *phi.shape, t.rng)
    psi = t.record("g", MatrixHom(phi.domain, phi.codomain, A2, check=False))
    dom = double_module(context_for(phi.ring), phi.domain)
    left = t.double_hom(phi + psi, dom)
    right = t.double_hom(phi, dom) + t.double_hom(psi, dom)
    t.check(left.matrix == right.matrix, "(f + g)_D != f_D + g_D")


def prop_c35a(t: Trial):
    phi = _hom(t)
    s = is_surjective(phi)
    t.tally(("surjective", s))
    t.check(s == is_surjective(t.double_hom(phi)), "surjectivity differs between phi and phi_D")


def prop_c35b(t: Trial):
    phi = _hom(t)
    injD = is_injective(t.double_hom(phi))
    inj = is_injective(phi)
    t.tally(("injective", inj, injD))
    if injD:
        t.check(inj, "phi_D injective but phi not")


def prop_c35c(t: Trial):
    phi = _hom(t)
    phiD = t.double_hom(phi)
    iso = is_injective(phi) and is_surjective(phi)
    isoD = is_injective(phiD) and is_surjective(phiD)
    t.tally(("isomorphism", iso))
    t.check(iso == isoD, "isomorphism differs between phi and phi_D")


def prop_c35d(t: Trial):
    phi = _hom(t)
    z = is_zero_map(phi)
    t.tally(("zero", z))
    t.check(z == is_zero_map(t.double_hom(phi)), "zero map differs between phi and phi_D")


def _identity_on(f: MatrixHom) -> bool:
    return all(f.apply(g) == g for g in f.domain.gens)


def prop_c318(t: Trial):
    """Split monomorphisms, split epimorphisms and isomorphisms come with explicit
    one-sided inverses; the doubled inverses must still be inverses."""
    spec, rng = t.spec, t.rng
    R = gen.random_ring(spec, rng)
    p, q = rng.randint(1, spec.max_rank), rng.randint(1, spec.max_rank)
    M = gen.random_module(spec, R, p, rng)
    kind = rng.choice(["mono", "epi", "iso"])
    one, zero = R.one(), R.zero()
    if kind == "iso":
        U, Uinv = gen.unimodular(spec, R, p, rng)
        UM = Submodule(R, p, [mat_vec(U, g, R) for g in M.gens])
        phi, gamma = MatrixHom(M, UM, U), MatrixHom(UM, M, Uinv)
    else:
        N = gen.random_module(spec, R, q, rng)
        S = direct_sum(M, N)
        inc = tuple(tuple(one if i == j else zero for j in range(p)) for i in range(p + q))
        proj = tuple(tuple(one if i == j else zero for j in range(p + q)) for i in range(p))
        phi, gamma = MatrixHom(M, S, inc), MatrixHom(S, M, proj)
        if kind == "epi":
            phi, gamma = gamma, phi
    t.record("f", phi), t.record("g", gamma)
    t.tally(kind)
    # kind == "epi": phi has the right inverse gamma, i.e. phi o gamma = id
    left = hom_compose(phi, gamma) if kind == "epi" else hom_compose(gamma, phi)
    t.check(_identity_on(left), "supplied witness is not a one-sided inverse")
    ctx = context_for(R)
    dA, dB = double_module(ctx, phi.domain), double_module(ctx, phi.codomain)
    phiD, gammaD = t.double_hom(phi, dA, dB), t.double_hom(gamma, dB, dA)
    leftD = hom_compose(phiD, gammaD, check=False) if kind == "epi" else hom_compose(gammaD, phiD, check=False)
    t.check(_identity_on(leftD), f"doubled witness is not an inverse ({kind})")
    if kind == "iso":
        t.check(_identity_on(hom_compose(phiD, gammaD, check=False)), "doubled iso has no right inverse")


def prop_l319(t: Trial):
    phi = _hom(t)
    R = phi.ring
    q, p = phi.shape
    ext = MatrixHom(Submodule.free(R, p), Submodule.free(R, q), phi.matrix, check=False)
    t.check(all(phi.codomain.contains(ext.apply(g)) for g in phi.domain.gens), "extension leaves N on M")
    cols = [ext.apply(ModuleElement.basis_vector(R, p, k)) for k in range(p)]
    rebuilt = tuple(tuple(cols[j][i] for j in range(p)) for i in range(q))
    t.check(rebuilt == phi.matrix, "columns phi(e_k) do not rebuild the matrix")


def prop_p320(t: Trial):
    phi = _hom(t)
    ctx = context_for(phi.ring)
    q, p = phi.shape
    B = double_matrix(ctx, phi.matrix, p)
    t.tally("block checks")
    t.check(block_structure_ok(ctx, B, q, p), "doubled matrix is not block diagonal")
    h = _some_element(t, phi.domain)
    t.check(mat_vec(B, double_element(ctx, h), ctx.doubled) == double_element(ctx, phi.apply(h)),
            "B * h_D != (phi(h))_D")


# -- direct sums ---------------------------------------------------------------------

def prop_t321(t: Trial):
    spec, rng = t.spec, t.rng
    R = gen.random_ring(spec, rng)
    M = t.record("M", gen.random_module(spec, R, rng.randint(1, spec.max_rank), rng))
    N = t.record("N", gen.random_module(spec, R, rng.randint(1, spec.max_rank), rng))
    ctx = context_for(R)
    eta, delta = direct_sum_iso(ctx, M, N)
    t.check(all(eta.codomain.contains(eta.apply(u)) for u in eta.domain.gens), "eta leaves M_D + N_D")
    t.check(all(delta.codomain.contains(delta.apply(u)) for u in delta.domain.gens), "delta leaves (M+N)_D")
    t.check(_identity_on(hom_compose(delta, eta, check=False)), "delta o eta != id")
    t.check(_identity_on(hom_compose(eta, delta, check=False)), "eta o delta != id")
    h, g = _some_element(t, M), _some_element(t, N)
    t.check(eta.apply(double_element(ctx, h.concat(g))) == double_element(ctx, h).concat(double_element(ctx, g)),
            "eta((h, g)_D) != (h_D, g_D)")


def prop_c322(t: Trial):
    spec, rng = t.spec, t.rng
    R = gen.random_ring(spec, rng)
    Ms = [t.record(f"M{i + 1}", gen.random_module(spec, R, rng.randint(1, spec.max_rank), rng))
          for i in range(3)]
    ctx = context_for(R)
    S = ctx.doubled
    ranks = [M.rank for M in Ms]
    direct = permutation_matrix(S, interleave_permutation(ranks))
    eta12_3, _ = direct_sum_iso(ctx, direct_sum(Ms[0], Ms[1]), Ms[2])
    eta12, _ = direct_sum_iso(ctx, Ms[0], Ms[1])
    n12, n3 = 2 * (ranks[0] + ranks[1]), 2 * ranks[2]
    one, zero = S.one(), S.zero()
    block = tuple(
        tuple((eta12.matrix[i][j] if i < n12 and j < n12 else (one if i == j else zero))
              for j in range(n12 + n3)) for i in range(n12 + n3))
    iterated = mat_mul(block, eta12_3.matrix, S, n12 + n3)
    total = direct_sum(direct_sum(Ms[0], Ms[1]), Ms[2])
    totalD = double_module(ctx, total).value
    target = direct_sum(direct_sum(*(double_module(ctx, M).value for M in Ms[:2])),
                        double_module(ctx, Ms[2]).value)
    for u in totalD.gens:
        a, b = mat_vec(direct, u, S), mat_vec(iterated, u, S)
        t.check(a == b, "iterated and direct permutations disagree")
        t.check(target.contains(a), "image outside (M1)_D + (M2)_D + (M3)_D")
    hs = [_some_element(t, M) for M in Ms]
    whole = double_element(ctx, hs[0].concat(hs[1]).concat(hs[2]))
    parts = double_element(ctx, hs[0]).concat(double_element(ctx, hs[1])).concat(double_element(ctx, hs[2]))
    t.check(mat_vec(direct, whole, S) == parts, "(h1, h2, h3)_D does not map to (h1_D, h2_D, h3_D)")


# -- quotients -----------------------------------------------------------------------

def _nested(t: Trial) -> tuple[Submodule, Submodule]:
    spec, rng = t.spec, t.rng
    R, p = _ring_and_rank(t)
    M = gen.random_module(spec, R, p, rng)
    W = Submodule(R, p, [gen.combination(spec, M, rng) for _ in range(rng.randint(0, spec.max_gens))])
    if rng.random() < 0.2:
        W = gen.recombined(spec, M, rng)
    t.record("M", M), t.record("W", W)
    return M, W


def prop_q4_quotient(t: Trial):
    M, W = _nested(t)
    ctx = context_for(M.ring)
    QD = double_quotient_module(ctx, PresentedQuotient(M, W))
    MD, WD = t.double_mod(M), t.double_mod(W)
    t.check(module_eq(QD.numerator, MD) and module_eq(QD.denominator, WD), "(M/W)_D is not M_D/W_D")
    t.check(is_submodule(WD, MD), "W_D not inside M_D")
    t.check(PresentedQuotient(M, W).is_zero() == QD.is_zero(), "zero quotient differs at the double level")
    # quotient given by coset generators: preimage <reps> + W doubles to <reps>_D + W_D
    reps = [_some_element(t, M) for _ in range(t.rng.randint(1, 2))]
    pre = Submodule(M.ring, M.rank, reps + list(W.gens))
    A = Submodule(M.ring, M.rank, reps)
    summed = Submodule(ctx.doubled, 2 * M.rank, list(t.double_mod(A).gens) + list(WD.gens))
    t.check(module_eq(t.double_mod(pre), summed), "(<reps> + W)_D != <reps>_D + W_D")


def prop_q4_coset(t: Trial):
    M, W = _nested(t)
    R, p = M.ring, M.rank
    ctx = context_for(R)
    WD = t.double_mod(W)
    h = gen.random_element(t.spec, R, p, t.rng) if t.rng.random() < 0.5 else _some_element(t, M)
    g = h + _some_element(t, W)
    t.record("h", h), t.record("g", g)
    a = double_quotient_element(ctx, h, W, WD)
    b = double_quotient_element(ctx, g, W, WD)
    t.check(a.same_coset(b), "(h + W)_D depends on the representative")
    zero = W.contains(h)
    t.tally(("zero coset", zero))
    t.check(zero == a.is_zero(), "h + W = 0 differs from (h + W)_D = 0")


# -- complexes -----------------------------------------------------------------------

def random_complex(spec: InstanceSpec, rng: random.Random, ring: PolyRing | None = None,
                   length: int | None = None) -> ChainComplex:
    """Modules listed from degree L-1 down to 0.  Each differential has columns
    in the kernel of the one below, so the complex law holds by construction;
    sometimes the columns generate that kernel, making the complex exact there."""
    R = ring or gen.random_ring(spec, rng)
    L = length or rng.randint(1, 4)
    p0 = rng.randint(1, spec.max_rank)
    mods = [gen.random_module(spec, R, p0, rng)]
    diffs = []
    for _ in range(1, L):
        below = mods[-1]
        if diffs:
            target = kernel(diffs[-1])
            if len(target.gens) > spec.max_gens:
                target = Submodule(R, target.rank, target.gens[: spec.max_gens])
        else:
            target = below
        if target.gens and rng.random() < 0.4:
            # hit the target exactly: free module on its generators
            p = len(target.gens)
            A = tuple(tuple(g[i] for g in target.gens) for i in range(target.rank))
            M = Submodule.free(R, p)
        else:
            p = rng.randint(1, spec.max_rank)
            A = gen.matrix_into(spec, target, p, rng) if target.gens else \
                tuple(tuple(R.zero() for _ in range(p)) for _ in range(target.rank))
            M = gen.random_module(spec, R, p, rng) if rng.random() < 0.6 else Submodule.free(R, p)
        diffs.append(MatrixHom(M, below, A, check=False))
        mods.append(M)
    mods.reverse()
    diffs.reverse()
    return ChainComplex.from_top(mods, diffs)


def random_degree_one(spec: InstanceSpec, rng: random.Random, C: ChainComplex, D: ChainComplex) -> DegreeOneMap:
    maps = {}
    for i in range(C.low, C.high + 1):
        if i + 1 in D.degrees and rng.random() < 0.8:
            tgt = D.module(i + 1)
            maps[i] = MatrixHom(C.module(i), tgt, gen.matrix_into(spec, tgt, C.module(i).rank, rng), check=False)
    return DegreeOneMap(C, D, maps)


def random_chain_map(spec: InstanceSpec, rng: random.Random, C: ChainComplex) -> ChainMap:
    """c * id + tilde(nu) for a random degree-one nu: always a chain map C -> C."""
    c = rng.choice([0, 1, 1, -1, 2, 3])
    base = ChainMap.identity(C)
    scaled = ChainMap(C, C, {i: base.at(i).scale(c) for i in C.degrees}, check=False)
    return scaled + tilde(random_degree_one(spec, rng, C, C))


def prop_p36(t: Trial):
    C = t.record("C", random_complex(t.spec, t.rng))
    ctx = context_for(C.ring)
    CD = t.double_cx(ctx, C)
    t.check(is_complex(C), "generated complex violates d o d = 0")
    t.check(is_complex(CD), "doubled complex violates d o d = 0")
    for i in C.differentials:
        t.check(module_eq(CD.module(i), t.double_mod(C.module(i))), "C_D module is not the double")


def prop_p38(t: Trial):
    C = t.record("C", random_complex(t.spec, t.rng))
    rep = exactness_propagation_check(context_for(C.ring), C)
    t.tally(("table", rep.complex_exact, rep.double_exact))
    t.check(rep.implication_holds, "C_D exact but C not exact")


def prop_p310(t: Trial):
    C = t.record("C", random_complex(t.spec, t.rng))
    alpha = random_chain_map(t.spec, t.rng, C)
    ctx = context_for(C.ring)
    t.check(alpha.commutes(), "generated chain map does not commute")
    aD = t.double_chain(ctx, alpha)
    t.check(aD.commutes(), "doubled chain map does not commute")


def prop_c311(t: Trial):
    C = t.record("C", random_complex(t.spec, t.rng))
    alpha = random_chain_map(t.spec, t.rng, C)
    beta = random_chain_map(t.spec, t.rng, C)
    ctx = context_for(C.ring)
    CD = t.double_cx(ctx, C)
    left = t.double_chain(ctx, alpha.then(beta), CD, CD)
    right = t.double_chain(ctx, alpha, CD, CD).then(t.double_chain(ctx, beta, CD, CD))
    t.check(matrices_equal(left, right), "(b o a)_D != b_D o a_D")


def prop_l312(t: Trial):
    C = t.record("C", random_complex(t.spec, t.rng))
    D = C if t.rng.random() < 0.5 else t.record("D", random_complex(t.spec, t.rng, C.ring))
    mu = random_degree_one(t.spec, t.rng, C, D)
    ctx = context_for(C.ring)
    CD, DD = t.double_cx(ctx, C), t.double_cx(ctx, D)
    left = tilde(t.double_deg1(ctx, mu, CD, DD))
    right = t.double_chain(ctx, tilde(mu), CD, DD)
    t.check(matrices_equal(left, right), "tilde(mu_D) != (tilde mu)_D")


def prop_p313(t: Trial):
    C = t.record("C", random_complex(t.spec, t.rng))
    ctx = context_for(C.ring)
    beta = random_chain_map(t.spec, t.rng, C)
    mu = random_degree_one(t.spec, t.rng, C, C)
    if t.rng.random() < 0.5:
        alpha = beta + tilde(mu)
    else:
        alpha = beta + tilde(random_degree_one(t.spec, t.rng, C, C))
    CD = t.double_cx(ctx, C)
    h = is_homotopy(alpha, beta, mu)
    hD = is_homotopy(t.double_chain(ctx, alpha, CD, CD), t.double_chain(ctx, beta, CD, CD),
                     t.double_deg1(ctx, mu, CD, CD))
    t.tally(("homotopy", h))
    t.check(h == hD, "mu homotopy differs from mu_D homotopy")


def prop_c314(t: Trial):
    C = t.record("C", random_complex(t.spec, t.rng))
    nu = random_degree_one(t.spec, t.rng, C, C)
    c = t.rng.choice([1, -1, 2, 3])
    ident = ChainMap.identity(C)
    alpha = ChainMap(C, C, {i: ident.at(i).scale(c) for i in C.degrees}, check=False) + tilde(nu)
    inv = QQ(1, c)
    beta = ChainMap(C, C, {i: ident.at(i).scale(inv) for i in C.degrees}, check=False)
    # beta o alpha - id = tilde(nu / c) = alpha o beta - id
    w = DegreeOneMap(C, C, {i: f.scale(inv) for i, f in nu.maps.items()})
    hyp, ok = homotopy_equivalence_transfer(context_for(C.ring), alpha, beta, w, w)
    t.check(hyp, "supplied witnesses are not homotopies")
    t.check(ok, "doubled witnesses do not certify the doubled equivalence")


def random_contractible(spec: InstanceSpec, rng: random.Random,
                        ring: PolyRing | None = None) -> tuple[ChainComplex, DegreeOneMap]:
    """Sum of pieces E --id--> E, conjugated degree-wise by random invertible matrices."""
    R = ring or gen.random_ring(spec, rng)
    top = rng.randint(1, 3)
    pieces = []
    for k in range(rng.randint(1, 2)):
        # later pieces overlap the first, so the degrees stay contiguous
        i = top if k == 0 else max(1, top - rng.randint(0, 1))
        E = gen.random_module(spec, R, rng.randint(1, spec.max_rank), rng,
                              ngens=rng.randint(1, max(1, spec.max_gens)))
        pieces.append((i, E))
    one, zero = R.one(), R.zero()
    layout: dict[int, list] = {d: [] for d in range(top + 1)}   # degree -> [(piece, rank)]
    for k, (i, E) in enumerate(pieces):
        layout[i].append((k, E))
        layout[i - 1].append((k, E))
    degrees = [d for d in range(top + 1) if layout[d]]
    lo, hi = min(degrees), max(degrees)
    offsets, ranks = {}, {}
    for d in range(lo, hi + 1):
        off = 0
        for k, E in layout[d]:
            offsets[(d, k)] = off
            off += E.rank
        ranks[d] = off

    def block_matrix(src: int, dst: int) -> tuple:
        rows = [[zero] * ranks[src] for _ in range(ranks[dst])]
        for k, E in layout[src]:
            if (dst, k) in offsets:
                a, b = offsets[(dst, k)], offsets[(src, k)]
                for r in range(E.rank):
                    rows[a + r][b + r] = one
        return tuple(map(tuple, rows))

    mods = {}
    for d in range(lo, hi + 1):
        gens = []
        for k, E in layout[d]:
            for g in E.gens:
                v = [zero] * ranks[d]
                for r in range(E.rank):
                    v[offsets[(d, k)] + r] = g[r]
                gens.append(ModuleElement(R, tuple(v)))
        mods[d] = Submodule(R, ranks[d], gens)
    # a piece living in degrees (i, i-1): d_i is the identity on it, mu_{i-1} goes back
    U, Uinv = {}, {}
    for d in range(lo, hi + 1):
        U[d], Uinv[d] = gen.unimodular(spec, R, ranks[d], rng) if ranks[d] else ((), ())
    tm = {d: Submodule(R, ranks[d], [mat_vec(U[d], g, R) for g in mods[d].gens]) for d in mods}
    diffs, mus = {}, {}
    for d in range(lo + 1, hi + 1):
        if ranks[d] and ranks[d - 1]:
            core = block_matrix(d, d - 1)
            A = mat_mul(mat_mul(U[d - 1], core, R, ranks[d]), Uinv[d], R, ranks[d])
            diffs[d] = MatrixHom(tm[d], tm[d - 1], A, check=False)
            back = block_matrix(d - 1, d)
            B = mat_mul(mat_mul(U[d], back, R, ranks[d - 1]), Uinv[d - 1], R, ranks[d - 1])
            mus[d - 1] = MatrixHom(tm[d - 1], tm[d], B, check=False)
    C = ChainComplex(R, tm, diffs)
    return C, DegreeOneMap(C, C, mus)


def prop_c315(t: Trial):
    if t.rng.random() < 0.85:
        C, mu = random_contractible(t.spec, t.rng)
    else:
        C = random_complex(t.spec, t.rng)
        mu = random_degree_one(t.spec, t.rng, C, C)
    t.record("C", C)
    ctx = context_for(C.ring)
    rep = contractibility_transfer(ctx, C, mu)
    t.tally(("contraction", rep.precondition))
    if rep.precondition:
        t.double_deg1(ctx, mu)
        t.check(bool(rep.transferred), "mu_D does not contract C_D")


def prop_complex_suite(t: Trial):
    """All complex-level laws on one random complex (plus a contractible one)."""
    C = t.record("C", random_complex(t.spec, t.rng))
    ctx = context_for(C.ring)
    CD = t.double_cx(ctx, C)
    t.check(is_complex(CD), "doubled complex violates d o d = 0")
    mu = random_degree_one(t.spec, t.rng, C, C)
    t.check(matrices_equal(tilde(t.double_deg1(ctx, mu, CD, CD)),
                           t.double_chain(ctx, tilde(mu), CD, CD)), "tilde(mu_D) != (tilde mu)_D")
    beta = random_chain_map(t.spec, t.rng, C)
    alpha = beta + tilde(mu) if t.rng.random() < 0.5 else random_chain_map(t.spec, t.rng, C)
    h = is_homotopy(alpha, beta, mu)
    hD = is_homotopy(t.double_chain(ctx, alpha, CD, CD), t.double_chain(ctx, beta, CD, CD),
                     t.double_deg1(ctx, mu, CD, CD))
    t.check(h == hD, "homotopy transfer failed")
    rep = exactness_propagation_check(ctx, C, CD)
    t.tally(("table", rep.complex_exact, rep.double_exact))
    t.check(rep.implication_holds, "C_D exact but C not exact")
    K, kappa = random_contractible(t.spec, t.rng, C.ring)
    crep = contractibility_transfer(ctx, K, kappa)
    t.double_deg1(ctx, kappa)
    t.check(crep.precondition, "generated contraction is not a contraction")
    t.check(crep.ok, "mu_D does not contract C_D")


# -- relative doubles ------------------------------------------------------------------

def cusp() -> RingMorphism:
    X, Y = PolyRing(["x1", "x2"]), PolyRing(["t"])
    return RingMorphism(X, Y, [Y("t^2"), Y("t^3")])


def _germ(t: Trial, target_vars=("t",)) -> RingMorphism:
    if t.index == 0:
        return cusp()
    nx = t.rng.randint(1, min(2, t.spec.max_vars))
    return gen.random_monomial_germ(t.spec, gen.ring_with(nx), t.rng, target_vars)


def relative_hom(spec: InstanceSpec, rng: random.Random, rel: RelativeMap,
                 M: Submodule | None = None) -> GeneratorImageHom:
    """h -> A * pullback(h): O_X-linear for any matrix A over R_Y."""
    X, Y = rel.source, rel.target
    M = M or gen.random_module(spec, X, rng.randint(1, spec.max_rank), rng)
    q = rng.randint(1, spec.max_rank)
    A = gen.random_matrix(spec, Y, q, M.rank, rng)
    pb = rel.pullback
    images = [mat_vec(A, ModuleElement(Y, tuple(pb(c) for c in g)), Y) for g in M.gens]
    extra = [gen.random_element(spec, Y, q, rng) for _ in range(rng.randint(0, 1))]
    N = Submodule(Y, q, images + extra)
    hom = GeneratorImageHom(M, N, images, rel)
    hom.matrix = A
    return hom


def prop_l323(t: Trial):
    pb = t.record("phi", _germ(t))
    rel = RelativeMap(pb)
    alpha = gen.random_poly(t.spec, rel.source_ctx.doubled, t.rng, zero_chance=0.0)
    for slot in (1, 2):
        a, b = lemma_sides(rel, alpha, fixed_slot=slot)
        t.check(a == b, f"lemma sides differ with slot {slot} fixed")


def prop_t324(t: Trial):
    pb = t.record("phi", _germ(t))
    rel = RelativeMap(pb)
    hom = relative_hom(t.spec, t.rng, rel)
    t.record("M", hom.domain), t.record("N", hom.codomain), t.record("psi", hom)
    rd = relative_double_hom(rel, hom)
    sx, sy = rel.source_ctx, rel.target_ctx
    ND = rd.codomain.value
    t.check(all(ND.contains(v) for v in rd.images), "generator image outside N_D")
    h = _some_element(t, hom.domain)
    Y = rel.target
    phi_h = mat_vec(hom.matrix, ModuleElement(Y, tuple(pb(c) for c in h)), Y)
    t.check(hom.apply(h) == phi_h, "generator-image hom disagrees with its defining matrix")
    t.check(rd.apply(double_element(sx, h)) == double_element(sy, phi_h), "phi_D(h_D) != (phi(h))_D")


def prop_p325(t: Trial):
    spec, rng = t.spec, t.rng
    pb1 = t.record("phi", _germ(t, ("t", "u") if rng.random() < 0.3 else ("t",)))
    Y = pb1.target
    pb2 = t.record("phi2", gen.random_monomial_germ(spec, Y, rng, ("s",)))
    rel1, rel2 = RelativeMap(pb1), RelativeMap(pb2)
    f = relative_hom(spec, rng, rel1)
    g = relative_hom(spec, rng, rel2, f.codomain)
    t.record("M", f.domain), t.record("N", f.codomain), t.record("P", g.codomain)
    t.record("psi", f), t.record("psi2", g)
    comp = f.then(g)
    t.check(comp.relative.pullback == pb1.then(pb2), "composite germ mismatch")
    comp.check_well_defined()
    fD, gD = relative_double_hom(rel1, f), relative_double_hom(rel2, g)
    cD = relative_double_hom(comp.relative, comp)
    for u, v in zip(cD.images, fD.images):
        t.check(u == gD.apply(v), "(g o f)_D != g_D o f_D on a generator")


# -- functor sample --------------------------------------------------------------------

def prop_functor(t: Trial):
    from .double import functor_check

    R = gen.random_ring(t.spec, t.rng)
    f = _hom(t, "f", R)
    g = t.record("g", gen.hom_from(t.spec, t.rng, f.codomain))
    rep = functor_check(context_for(R), [f.domain, f.codomain], [f, g])
    for msg in rep.failures:
        t.check(False, msg)


# -- catalog ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Property:
    id: str
    run: Callable[[Trial], None]
    trials: int
    summary: str
    spec: dict = field(default_factory=dict)   # overrides of the default bounds


PROPERTIES: dict[str, Property] = {p.id: p for p in [
    Property("P3.1-a", prop_p31a, 200, "h = g iff h_D = g_D"),
    Property("P3.1-b", prop_p31b, 200, "h in M iff h_D in M_D"),
    Property("P3.1-c", prop_p31c, 200, "M in N iff M_D in N_D"),
    Property("P3.1-d", prop_p31d, 200, "M = N iff M_D = N_D"),
    Property("C3.2", prop_c32, 200, "h -> h_D is an injective group homomorphism"),
    Property("T3.3", prop_t33, 200, "phi_D(h_D) = (phi(h))_D, values forced on all generators"),
    Property("P3.4-a", prop_p34a, 200, "Im(phi_D) = (Im phi)_D"),
    Property("P3.4-b", prop_p34b, 200, "(Ker phi)_D inside Ker(phi_D)"),
    Property("P3.9-a", prop_p39a, 200, "phi = phi' iff phi_D = phi'_D"),
    Property("P3.9-b", prop_p39b, 200, "(g o f)_D = g_D o f_D"),
    Property("P3.9-c", prop_p39c, 200, "(f + g)_D = f_D + g_D"),
    Property("C3.5-a", prop_c35a, 200, "surjectivity transfers both ways"),
    Property("C3.5-b", prop_c35b, 200, "phi_D injective implies phi injective"),
    Property("C3.5-c", prop_c35c, 200, "isomorphism transfers both ways"),
    Property("C3.5-d", prop_c35d, 200, "zero map transfers both ways"),
    Property("T3.16-faithful", prop_t316_faithful, 200, "phi_D = phi'_D implies phi = phi'"),
    Property("T3.16-objects", prop_t316_objects, 200, "M_D = N_D implies M = N"),
    Property("C3.18", prop_c318, 200, "split mono/epi/iso witnesses double to witnesses"),
    Property("L3.19", prop_l319, 200, "matrix homs extend to the ambient free modules"),
    Property("P3.20", prop_p320, 200, "doubled matrix is diag(A o pi1, A o pi2)"),
    Property("T3.21", prop_t321, 100, "eta, delta inverse; eta((h, g)_D) = (h_D, g_D)"),
    Property("C3.22", prop_c322, 30, "three-fold sums: iterated eta equals the direct permutation"),
    Property("P3.1.13-a", prop_p3113a, 200, "finite length of M_D bounds that of M (degenerate)"),
    Property("P3.1.13-b", prop_p3113b, 30, "finite doubled colength bounds the colength"),
    Property("RANK-EVEN", prop_rank_even, 200, "generic rank of M_D is even"),
    Property("GEN-ORACLE", prop_gen_oracle, 50, "closed-form generators span the degree <= 5 family"),
    Property("Q4-quotient", prop_q4_quotient, 100, "(M/W)_D = M_D / W_D"),
    Property("Q4-coset", prop_q4_coset, 200, "(h + W)_D independent of the representative"),
    Property("P3.6", prop_p36, 100, "doubling preserves the complex law"),
    Property("P3.8", prop_p38, 100, "C_D exact implies C exact"),
    Property("P3.10", prop_p310, 100, "chain maps double to chain maps"),
    Property("C3.11", prop_c311, 100, "(b o a)_D = b_D o a_D"),
    Property("L3.12", prop_l312, 100, "tilde(mu_D) = (tilde mu)_D"),
    Property("P3.13", prop_p313, 100, "mu homotopy iff mu_D homotopy"),
    Property("C3.14", prop_c314, 100, "homotopy equivalences double"),
    Property("C3.15", prop_c315, 100, "contractions double"),
    Property("COMPLEX", prop_complex_suite, 100, "all complex laws on one random complex"),
    Property("L3.23", prop_l323, 51, "pullback of a slice = slice of the tensor pullback"),
    Property("T3.24", prop_t324, 51, "relative double: phi_D(h_D) = (phi(h))_D"),
    Property("P3.25", prop_p325, 30, "relative doubles compose"),
    Property("FUNCTOR", prop_functor, 100, "functor laws on a two-hom sample"),
]}

# every numbered result, mapped to the suites exercising it, or to the reason it has none
CATALOG: dict[str, list[str] | str] = {
    "module double generators": ["GEN-ORACLE"],
    "P3.1": ["P3.1-a", "P3.1-b", "P3.1-c", "P3.1-d"],
    "C3.2": ["C3.2"],
    "T3.3": ["T3.3"],
    "P3.4": ["P3.4-a", "P3.4-b"],
    "C3.5": ["C3.5-a", "C3.5-b", "C3.5-c", "C3.5-d"],
    "P3.9": ["P3.9-a", "P3.9-b", "P3.9-c"],
    "L3.19": ["L3.19"],
    "P3.20": ["P3.20"],
    "T3.21": ["T3.21"],
    "C3.22": ["C3.22"],
    "P3.1.13": ["P3.1.13-a", "P3.1.13-b"],
    "D3.7": ["P3.6"],
    "P3.6": ["P3.6", "COMPLEX"],
    "P3.8": ["P3.8", "COMPLEX"],
    "P3.10": ["P3.10"],
    "C3.11": ["C3.11"],
    "L3.12": ["L3.12", "COMPLEX"],
    "P3.13": ["P3.13", "COMPLEX"],
    "C3.14": ["C3.14"],
    "C3.15": ["C3.15", "COMPLEX"],
    "T3.16": ["T3.16-faithful", "T3.16-objects", "FUNCTOR"],
    "C3.18": ["C3.18"],
    "rank remark": ["RANK-EVEN"],
    "quotient doubles": ["Q4-quotient", "Q4-coset"],
    "L3.23": ["L3.23"],
    "T3.24": ["T3.24"],
    "P3.25": ["P3.25"],
    "applications": "out of scope: bi-Lipschitz equisingularity, integral closure, Lipschitz "
                    "vector fields and EIDS families are not computed",
    "analytic local rings": "out of scope: polynomial rings over Q stand in for convergent power series",
    "quotient rings": "out of scope: singular base spaces V(I) with I nonzero; quotient modules are supported",
    "unbounded complexes": "out of scope: only bounded complexes are represented",
    "P3.1.13 length form": "out of scope beyond the degenerate check: a nonzero submodule of a free "
                           "module over a polynomial ring never has finite length",
}

# default bounds the suites run with; each suite may tighten them further
DEFAULT_SPEC = InstanceSpec()


def spec_for(prop: Property, spec: InstanceSpec | None) -> InstanceSpec:
    if spec is None:
        return DEFAULT_SPEC.with_(**prop.spec) if prop.spec else DEFAULT_SPEC
    return spec


def _worker_count() -> int:
    env = os.environ.get("DOUBLEKIT_THREADS")
    cpus = os.cpu_count() or 1
    if env:
        try:
            return max(1, min(int(env), cpus))
        except ValueError:
            pass
    return cpus


def run_trial(prop_id: str, spec: InstanceSpec, k: int) -> TrialResult:
    prop = PROPERTIES[prop_id]
    seed = trial_seed(spec.seed, k)
    t = Trial(prop_id, spec, seed, k)
    try:
        prop.run(t)
    except (DoubleKitError, ArithmeticError, ValueError) as e:
        t.failures.append(f"error: {type(e).__name__}: {e}")
    replay = None
    if t.failures:
        try:
            from .session import dump_objects
            replay = dump_objects(t.objects, header=[
                f"replay of {prop_id}, trial seed {seed}",
                *(f"failed: {m}" for m in t.failures)])
        except Exception as e:  # the replay is best effort; the failure itself is reported
            replay = f"# replay unavailable: {e}\n"
    return TrialResult(seed, t.failures, t.tallies, replay)


def _run_chunk(args) -> list[TrialResult]:
    prop_id, spec, ks = args
    return [run_trial(prop_id, spec, k) for k in ks]


def run_property(prop_id: str, spec: InstanceSpec | None = None, trials: int | None = None,
                 replay_dir: str | Path | None = None, workers: int | None = None) -> PropertyReport:
    """Run one suite.  Deterministic for a fixed spec (wall time aside)."""
    if prop_id not in PROPERTIES:
        raise KeyError(f"unknown property id {prop_id!r}")
    prop = PROPERTIES[prop_id]
    spec = spec_for(prop, spec)
    n = prop.trials if trials is None else trials
    if n < 0:
        raise ValueError("trials must be non-negative")
    workers = workers or _worker_count()
    start = time.perf_counter()
    if workers > 1 and n > 1:
        chunks = [(prop_id, spec, list(range(w, n, workers))) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, chunks))
        results = sorted((r for part in parts for r in part), key=lambda r: _trial_index(spec, r.seed))
    else:
        results = [run_trial(prop_id, spec, k) for k in range(n)]
    report = PropertyReport(prop_id, n)
    for r in results:
        report.tallies.update(r.tallies)
        for msg in dict.fromkeys(r.failures):
            report.failures.append((r.seed, msg))
        if r.replay and replay_dir is not None:
            d = Path(replay_dir)
            d.mkdir(parents=True, exist_ok=True)
            path = d / f"{prop_id}-{r.seed}.dk"
            path.write_text(r.replay, encoding="utf-8")
            report.replays.append(str(path))
    report.wall_time = time.perf_counter() - start
    report.notes = _notes(prop_id, report)
    return report


def _trial_index(spec: InstanceSpec, seed: int) -> int:
    return (seed - spec.seed * 1_000_003) & ((1 << 64) - 1)


def _notes(prop_id: str, rep: PropertyReport) -> list[str]:
    tal = rep.tallies
    if prop_id == "P3.4-b":
        return [f"NOTE P3.4-b strict kernel inclusions: {tal.get('witness', 0)}"]
    if prop_id in ("P3.8", "COMPLEX"):
        rows = [f"TABLE {prop_id} C_exact C_D_exact count"]
        for a in (True, False):
            for b in (True, False):
                rows.append(f"TABLE {prop_id} {str(a).lower()} {str(b).lower()} {tal.get(('table', a, b), 0)}")
        return rows
    if prop_id == "P3.1.13-b":
        k = tal.get(("doubled colength finite", True), 0)
        return [f"NOTE P3.1.13-b doubled colength finite in {k} of {rep.trials} instances"]
    return []


def run_all(spec: InstanceSpec | None = None, trials: int | None = None) -> list[PropertyReport]:
    return [run_property(pid, spec, trials) for pid in PROPERTIES]


__all__ = [
    "InstanceSpec", "PropertyReport", "Property", "PROPERTIES", "CATALOG", "DEFAULT_SPEC",
    "run_property", "run_trial", "run_all", "gen_submodule", "random_complex",
    "random_contractible", "random_chain_map", "random_degree_one", "relative_hom", "cusp",
]

gen_submodule = gen.gen_submodule

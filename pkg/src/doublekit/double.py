"""The double construction on elements, modules, homomorphisms and quotients.

For R = Q[x1..xn] the doubled ring is S = Q[x1..xn, y1..yn]; the two
projections become the substitutions ``pi1: xi -> xi`` and ``pi2: xi -> yi``.
An element h of R^p doubles to ``h_D = (pi1(h), pi2(h))`` in S^2p, and a module
M = <g1..gs> doubles to the S-module generated by all h_D, h in M.  That set is
infinite; :func:`double_module` uses the finite family

    (g_i)_D,   (0, (y_j - x_j) * pi2(g_i))      i <= s, j <= n

which generates the same module because
``(x_j g_i)_D = x_j (g_i)_D + (0, (y_j - x_j) pi2(g_i))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import IllDefinedHom, NotContained, RankMismatch, RingMismatch
from .modules import (
    Lifter, MatrixHom, ModuleElement, PresentedQuotient, Submodule, direct_sum, generic_rank,
    hom_compose, hom_eq_on_domain, image, is_injective, is_submodule, is_surjective,
    is_zero_map, kernel, mat_vec, module_eq, syzygies,
)
from .poly import Polynomial, PolyRing, RingMorphism


def second_copy_names(variables: Sequence[str]) -> tuple[str, ...]:
    """Names of the y-copy: x -> y, x1 -> y1, ...; otherwise v -> v_2."""
    taken = set(variables)
    if variables and all(v.startswith("x") for v in variables):
        names = tuple("y" + v[1:] for v in variables)
        if not taken.intersection(names) and len(set(names)) == len(names):
            return names
    out = []
    for v in variables:
        cand = v + "_2"
        while cand in taken:
            cand += "_2"
        taken.add(cand)
        out.append(cand)
    return tuple(out)


class DoubleContext:
    """Base ring R, doubled ring S and the two substitutions pi1, pi2: R -> S."""

    def __init__(self, base: PolyRing, second_names: Sequence[str] | None = None):
        names = tuple(second_names) if second_names is not None else second_copy_names(base.variables)
        if len(names) != base.nvars:
            raise ValueError("need one second-copy name per base variable")
        n = base.nvars
        self.base = base
        self.doubled = PolyRing(base.variables + names)
        gens = self.doubled.gens()
        self.pi1 = RingMorphism(base, self.doubled, gens[:n])
        self.pi2 = RingMorphism(base, self.doubled, gens[n:])

    @property
    def x(self) -> tuple[Polynomial, ...]:
        return self.doubled.gens()[: self.base.nvars]

    @property
    def y(self) -> tuple[Polynomial, ...]:
        return self.doubled.gens()[self.base.nvars:]

    def __eq__(self, other):
        return isinstance(other, DoubleContext) and self.doubled == other.doubled and self.base == other.base

    def __hash__(self):
        return hash((self.base, self.doubled))

    def __repr__(self):
        return f"DoubleContext({self.base!r} -> {self.doubled!r})"

    def _check(self, ring: PolyRing):
        if ring != self.base:
            raise RingMismatch(f"{ring!r} is not the base ring {self.base!r}")


_CONTEXTS: dict = {}


def context_for(ring: PolyRing) -> DoubleContext:
    """Shared default context for ``ring``."""
    ctx = _CONTEXTS.get(ring)
    if ctx is None:
        ctx = _CONTEXTS[ring] = DoubleContext(ring)
    return ctx


# -- elements and modules -----------------------------------------------------------

def double_element(ctx: DoubleContext, h: ModuleElement) -> ModuleElement:
    ctx._check(h.ring)
    return ModuleElement(ctx.doubled,
                         tuple(ctx.pi1(c) for c in h) + tuple(ctx.pi2(c) for c in h))


@dataclass(frozen=True)
class DoubledModule:
    """M_D together with its source M.  ``kinds[k]`` says where generator k came from:
    ``("D", i)`` for (g_i)_D and ``("diff", i, j)`` for (0, (y_j - x_j) pi2(g_i))."""

    context: DoubleContext
    value: Submodule
    source: Submodule
    kinds: tuple

    @property
    def rank(self) -> int:
        return self.value.rank

    @property
    def gens(self):
        return self.value.gens


def double_module(ctx: DoubleContext, M: Submodule) -> DoubledModule:
    ctx._check(M.ring)
    p = M.rank
    S = ctx.doubled
    zero_p = (S.zero(),) * p
    gens, kinds = [], []
    for i, g in enumerate(M.gens):
        if not g.is_zero():
            gens.append(double_element(ctx, g))
            kinds.append(("D", i))
    for i, g in enumerate(M.gens):
        if g.is_zero():
            continue
        g2 = [ctx.pi2(c) for c in g]
        for j, (xj, yj) in enumerate(zip(ctx.x, ctx.y)):
            d = yj - xj
            gens.append(ModuleElement(S, zero_p + tuple(d * c for c in g2)))
            kinds.append(("diff", i, j))
    return DoubledModule(ctx, Submodule(S, 2 * p, gens), M, tuple(kinds))


def _factor_text(f: Polynomial) -> str:
    s = str(f)
    if len(f) > 1 or s.startswith("-"):
        return f"({s})"
    return s


def format_doubled_generators(dm: DoubledModule) -> list[str]:
    """Generators of M_D in print form; difference generators keep their factor,
    e.g. ``(0, (y - x)*y)`` for M = <x>."""
    ctx = dm.context
    out = []
    for gen, kind in zip(dm.value.gens, dm.kinds):
        if kind[0] == "D":
            out.append(str(gen))
            continue
        _, i, j = kind
        diff = f"{ctx.doubled.variables[ctx.base.nvars + j]} - {ctx.base.variables[j]}"
        parts = ["0"] * dm.source.rank
        for c in dm.source.gens[i]:
            f = ctx.pi2(c)
            if f.is_zero():
                parts.append("0")
            elif f == 1:
                parts.append(diff)
            elif f == -1:
                parts.append(f"-({diff})")
            else:
                parts.append(f"({diff})*{_factor_text(f)}")
        out.append("(" + ", ".join(parts) + ")")
    return out


def closed_form_oracle(ctx: DoubleContext, M: Submodule, degree: int = 5) -> Submodule:
    """Brute-force family {(m * g_i)_D : m monomial of degree <= ``degree``}."""
    from .poly import iter_monomials

    R = ctx.base
    gens = []
    for g in M.gens:
        for d in range(degree + 1):
            for e in iter_monomials(R.nvars, d):
                gens.append(double_element(ctx, g * R.monomial(e)))
    return Submodule(ctx.doubled, 2 * M.rank, gens)


# -- homomorphisms ------------------------------------------------------------------

@dataclass(frozen=True)
class DoubledHom:
    """φ_D with its block matrix diag(A∘π1, A∘π2)."""

    context: DoubleContext
    matrix: tuple
    domain: DoubledModule
    codomain: DoubledModule
    source: MatrixHom

    def as_matrix_hom(self) -> MatrixHom:
        return MatrixHom(self.domain.value, self.codomain.value, self.matrix, check=False)

    def apply(self, u: ModuleElement) -> ModuleElement:
        if u.rank != self.domain.rank:
            raise RankMismatch("element rank does not match the doubled domain")
        return mat_vec(self.matrix, u, self.context.doubled)

    __call__ = apply


def double_matrix(ctx: DoubleContext, A: Sequence[Sequence[Polynomial]], p: int) -> tuple:
    S = ctx.doubled
    q = len(A)
    z = S.zero()
    top = [tuple(ctx.pi1(a) for a in row) + (z,) * p for row in A]
    bottom = [(z,) * p + tuple(ctx.pi2(a) for a in row) for row in A]
    assert all(len(r) == 2 * p for r in top + bottom) and len(top) == q
    return tuple(top + bottom)


def double_matrix_hom(ctx: DoubleContext, phi: MatrixHom,
                      domain: DoubledModule | None = None,
                      codomain: DoubledModule | None = None) -> DoubledHom:
    ctx._check(phi.ring)
    q, p = phi.shape
    dom = domain if domain is not None else double_module(ctx, phi.domain)
    cod = codomain if codomain is not None else double_module(ctx, phi.codomain)
    return DoubledHom(ctx, double_matrix(ctx, phi.matrix, p), dom, cod, phi)


def block_structure_ok(ctx: DoubleContext, B: tuple, q: int, p: int) -> bool:
    """Off-diagonal blocks zero, x-block free of y's, y-block free of x's."""
    if len(B) != 2 * q or any(len(r) != 2 * p for r in B):
        return False
    xs = set(ctx.base.variables)
    ys = set(ctx.doubled.variables[ctx.base.nvars:])
    for i, row in enumerate(B):
        for j, a in enumerate(row):
            top, left = i < q, j < p
            if top != left:
                if not a.is_zero():
                    return False
            elif a.variables_used() & (ys if top else xs):
                return False
    return True


# -- quotients ----------------------------------------------------------------------

@dataclass(frozen=True)
class DoubledCoset:
    """h_D + W_D in S^2p / W_D."""

    representative: ModuleElement
    denominator: Submodule

    def is_zero(self) -> bool:
        return self.denominator.contains(self.representative)

    def same_coset(self, other: DoubledCoset) -> bool:
        if other.denominator is not self.denominator:
            self.denominator.same_ambient(other.denominator)
        return self.denominator.contains(self.representative - other.representative)


def double_quotient_element(ctx: DoubleContext, h: ModuleElement, W: Submodule,
                            W_D: Submodule | None = None) -> DoubledCoset:
    if h.ring != W.ring or h.rank != W.rank:
        raise RankMismatch("coset representative and W live in different ambients")
    WD = W_D if W_D is not None else double_module(ctx, W).value
    return DoubledCoset(double_element(ctx, h), WD)


def double_quotient_module(ctx: DoubleContext, Q: PresentedQuotient) -> PresentedQuotient:
    """(M/W)_D = M_D / W_D."""
    MD = double_module(ctx, Q.numerator).value
    WD = double_module(ctx, Q.denominator).value
    if not is_submodule(WD, MD):
        raise NotContained("W_D is not contained in M_D")
    return PresentedQuotient(MD, WD, check=False)


# -- direct sums --------------------------------------------------------------------

def interleave_permutation(ranks: Sequence[int]) -> list[int]:
    """Index map from layout (p1..pr | p1..pr) to (p1 p1 | p2 p2 | ... ).

    Entry k of the result is the old position of new coordinate k."""
    total = sum(ranks)
    perm = []
    start = 0
    for p in ranks:
        perm.extend(range(start, start + p))
        perm.extend(range(total + start, total + start + p))
        start += p
    return perm


def permutation_matrix(ring: PolyRing, perm: Sequence[int]) -> tuple:
    n = len(perm)
    return tuple(tuple(ring.one() if j == perm[i] else ring.zero() for j in range(n))
                 for i in range(n))


def direct_sum_iso(ctx: DoubleContext, M: Submodule, N: Submodule) -> tuple[MatrixHom, MatrixHom]:
    """η: (M⊕N)_D -> M_D⊕N_D and its inverse δ, as permutation matrices."""
    ctx._check(M.ring)
    ctx._check(N.ring)
    S = ctx.doubled
    perm = interleave_permutation([M.rank, N.rank])
    inv = [0] * len(perm)
    for k, old in enumerate(perm):
        inv[old] = k
    sum_D = double_module(ctx, direct_sum(M, N)).value
    D_sum = direct_sum(double_module(ctx, M).value, double_module(ctx, N).value)
    eta = MatrixHom(sum_D, D_sum, permutation_matrix(S, perm), check=False)
    delta = MatrixHom(D_sum, sum_D, permutation_matrix(S, inv), check=False)
    return eta, delta


# -- relative doubles along map germs -------------------------------------------------

class RelativeMap:
    """A map germ Y -> X seen through its pullback R_X -> R_Y.

    ``tensor`` is the induced S_X -> S_Y: x-copy variables go through the
    pullback into the x-copy of S_Y, y-copy variables into the y-copy."""

    def __init__(self, pullback: RingMorphism, source_ctx: DoubleContext | None = None,
                 target_ctx: DoubleContext | None = None):
        self.pullback = pullback
        self.source_ctx = source_ctx or context_for(pullback.source)
        self.target_ctx = target_ctx or context_for(pullback.target)
        if self.source_ctx.base != pullback.source or self.target_ctx.base != pullback.target:
            raise RingMismatch("contexts do not match the pullback rings")
        tx, ty = self.target_ctx.pi1, self.target_ctx.pi2
        images = [tx(im) for im in pullback.images] + [ty(im) for im in pullback.images]
        self.tensor = RingMorphism(self.source_ctx.doubled, self.target_ctx.doubled, images)

    @property
    def source(self) -> PolyRing:
        return self.pullback.source

    @property
    def target(self) -> PolyRing:
        return self.pullback.target

    @classmethod
    def identity(cls, ctx: DoubleContext) -> RelativeMap:
        return cls(RingMorphism.identity(ctx.base), ctx, ctx)

    def then(self, other: RelativeMap) -> RelativeMap:
        """Germ composite: pullback of (this germ ∘ other germ) is other.pullback ∘ self.pullback."""
        return RelativeMap(self.pullback.then(other.pullback), self.source_ctx, other.target_ctx)

    def __repr__(self):
        return f"RelativeMap({self.pullback!r})"


def phi_tensor(rel: RelativeMap, alpha: Polynomial) -> Polynomial:
    return rel.tensor(alpha)


def lemma_sides(rel: RelativeMap, alpha: Polynomial, fixed_slot: int = 2) -> tuple[Polynomial, Polynomial]:
    """Both sides of pullback(alpha^{phi(w)}) = (phi_tensor(alpha))^w, w symbolic.

    Fixing the second slot at w = phi(w') and then pulling back the free slot,
    versus substituting through the doubled pullback.  ``fixed_slot=1`` is the
    mirror statement."""
    sx, sy = rel.source_ctx, rel.target_ctx
    n = sx.base.nvars
    # mixed ring: free copy of X's variables + the fixed copy of Y's variables
    fixed_names = sy.doubled.variables[sy.base.nvars:] if fixed_slot == 2 else sy.base.variables
    mixed = PolyRing([f"_z{i}" for i in range(n)] + list(fixed_names))
    free = mixed.gens()[:n]
    fixed_ctx_map = RingMorphism(sy.base, mixed, mixed.gens()[n:])
    fixed_images = [fixed_ctx_map(im) for im in rel.pullback.images]
    if fixed_slot == 2:
        step1 = RingMorphism(sx.doubled, mixed, list(free) + fixed_images)
    else:
        step1 = RingMorphism(sx.doubled, mixed, fixed_images + list(free))
    free_pull = sy.pi1 if fixed_slot == 2 else sy.pi2
    fixed_embed = sy.pi2 if fixed_slot == 2 else sy.pi1
    step2 = RingMorphism(mixed, sy.doubled,
                         [free_pull(im) for im in rel.pullback.images]
                         + list(fixed_embed(v) for v in sy.base.gens()))
    return step2(step1(alpha)), rel.tensor(alpha)


class GeneratorImageHom:
    """O_X-linear φ: M -> N (N over R_Y) given by images of M's generators.

    Well-definedness: every syzygy (a_i) of M's generators must satisfy
    sum pullback(a_i) * image_i = 0."""

    def __init__(self, domain: Submodule, codomain: Submodule, images: Sequence[ModuleElement],
                 relative: RelativeMap, check: bool = True):
        if domain.ring != relative.source or codomain.ring != relative.target:
            raise RingMismatch("hom rings do not match the map germ")
        images = tuple(images)
        if len(images) != len(domain.gens):
            raise RankMismatch("need one image per domain generator")
        for im in images:
            codomain._check_element(im)
        self.domain = domain
        self.codomain = codomain
        self.images = images
        self.relative = relative
        self._lifter = None
        if check:
            self.check_well_defined()

    def check_well_defined(self):
        for k, im in enumerate(self.images):
            if not self.codomain.contains(im):
                raise IllDefinedHom(f"image {im} of generator {k} is not in the codomain")
        if not self.domain.gens:
            return
        pb = self.relative.pullback
        Ry = self.codomain.ring
        for syz in syzygies(self.domain.gens).gens:
            acc = ModuleElement.zero(Ry, self.codomain.rank)
            for a, im in zip(syz, self.images):
                if a:
                    acc = acc + im * pb(a)
            if not acc.is_zero():
                raise IllDefinedHom(f"syzygy {syz} is not respected by the generator images")

    def apply(self, h: ModuleElement) -> ModuleElement:
        if self._lifter is None:
            self._lifter = Lifter(self.domain)
        coeffs = self._lifter(h)
        if coeffs is None:
            raise NotContained(f"{h} is not in the domain")
        pb = self.relative.pullback
        acc = ModuleElement.zero(self.codomain.ring, self.codomain.rank)
        for a, im in zip(coeffs, self.images):
            if a:
                acc = acc + im * pb(a)
        return acc

    __call__ = apply

    def then(self, other: GeneratorImageHom) -> GeneratorImageHom:
        """other ∘ self, relative to the composite germ."""
        return GeneratorImageHom(self.domain, other.codomain,
                                 [other.apply(im) for im in self.images],
                                 self.relative.then(other.relative), check=False)

    @classmethod
    def from_matrix_hom(cls, phi: MatrixHom, ctx: DoubleContext | None = None) -> GeneratorImageHom:
        ctx = ctx or context_for(phi.ring)
        return cls(phi.domain, phi.codomain, [phi.apply(g) for g in phi.domain.gens],
                   RelativeMap.identity(ctx), check=False)


@dataclass
class RelativeDoubledHom:
    """φ_{D,φ}: M_D -> N_D given on the finite generators of M_D."""

    relative: RelativeMap
    domain: DoubledModule
    codomain: DoubledModule
    images: tuple
    _lifter: object = field(default=None, repr=False)

    def apply(self, u: ModuleElement) -> ModuleElement:
        if self._lifter is None:
            self._lifter = Lifter(self.domain.value)
        coeffs = self._lifter(u)
        if coeffs is None:
            raise NotContained(f"{u} is not in the doubled domain")
        T = self.relative.tensor
        acc = ModuleElement.zero(self.codomain.value.ring, self.codomain.rank)
        for a, im in zip(coeffs, self.images):
            if a:
                acc = acc + im * T(a)
        return acc

    __call__ = apply


def relative_double_hom(rel: RelativeMap, phi: GeneratorImageHom) -> RelativeDoubledHom:
    sx, sy = rel.source_ctx, rel.target_ctx
    dom = double_module(sx, phi.domain)
    cod = double_module(sy, phi.codomain)
    S_Y = sy.doubled
    q = phi.codomain.rank
    zero_q = (S_Y.zero(),) * q
    pulled = rel.pullback.images
    images = []
    for kind in dom.kinds:
        im = phi.images[kind[1]]
        if kind[0] == "D":
            images.append(double_element(sy, im))
        else:
            j = kind[2]
            factor = sy.pi2(pulled[j]) - sy.pi1(pulled[j])
            images.append(ModuleElement(S_Y, zero_q + tuple(factor * sy.pi2(c) for c in im)))
    return RelativeDoubledHom(rel, dom, cod, tuple(images))


# -- functor laws on a sample ---------------------------------------------------------

@dataclass
class FunctorReport:
    """Counts of checks run per law and a message per failed check."""

    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def _check(self, law: str, cond: bool, what: str = ""):
        self.checked[law] = self.checked.get(law, 0) + 1
        if not cond:
            self.failures.append(f"{law}: {what}" if what else law)


def functor_check(ctx: DoubleContext, modules: Sequence[Submodule] = (),
                  homs: Sequence[MatrixHom] = ()) -> FunctorReport:
    """Check the functor laws of D on a sample of modules and matrix homs.

    Pairs are formed inside the sample: modules with the same ambient rank are
    compared for equality, homs with the same domain and shape for equality as
    maps, and homs whose codomain sits inside another's domain are composed.
    """
    rep = FunctorReport()
    doubles: dict[int, DoubledModule] = {}

    def dbl(M: Submodule) -> DoubledModule:
        d = doubles.get(id(M))
        if d is None:
            d = doubles[id(M)] = double_module(ctx, M)
        return d

    def dhom(phi: MatrixHom) -> MatrixHom:
        dh = double_matrix_hom(ctx, phi, dbl(phi.domain), dbl(phi.codomain))
        rep._check("block", block_structure_ok(ctx, dh.matrix, *phi.shape))
        return dh.as_matrix_hom()

    mods = list(modules) + [m for f in homs for m in (f.domain, f.codomain)]
    seen = set()
    for M in mods:
        if id(M) in seen:
            continue
        seen.add(id(M))
        MD = dbl(M).value
        ident = dhom(MatrixHom.identity(M))
        rep._check("identity", ident.matrix == MatrixHom.identity(MD).matrix, repr(M))
        rep._check("rank-even", generic_rank(MD) % 2 == 0, repr(M))
    for a, M in enumerate(modules):
        for N in modules[a + 1:]:
            if N.rank == M.rank:
                rep._check("objects", module_eq(M, N) == module_eq(dbl(M).value, dbl(N).value))
    doubled = [dhom(f) for f in homs]
    for f, fD in zip(homs, doubled):
        rep._check("image", module_eq(image(fD), dbl(image(f)).value), repr(f))
        KD = kernel(fD)
        rep._check("kernel", is_submodule(dbl(kernel(f)).value, KD), repr(f))
        surj, surjD = is_surjective(f), is_surjective(fD)
        rep._check("surjective", surj == surjD, repr(f))
        inj, injD = is_injective(f), KD.is_zero()
        rep._check("injective", inj or not injD, repr(f))
        rep._check("isomorphism", (inj and surj) == (injD and surjD), repr(f))
        rep._check("zero", is_zero_map(f) == is_zero_map(fD), repr(f))
        if inj and not injD:
            rep.notes.append(f"injective but double not injective: {f!r}")
    for a, (f, fD) in enumerate(zip(homs, doubled)):
        for g, gD in zip(homs, doubled):
            if g is f:
                continue
            if g.domain is f.domain and g.shape == f.shape:
                rep._check("faithful", hom_eq_on_domain(f, g) == hom_eq_on_domain(fD, gD))
            if f.codomain.rank == g.domain.rank and f.ring == g.ring and is_submodule(f.codomain, g.domain):
                comp = dhom(hom_compose(g, f))
                rep._check("composition", comp.matrix == hom_compose(gD, fD, check=False).matrix)
    return rep


__all__ = [
    "DoubleContext", "DoubledModule", "DoubledHom", "DoubledCoset", "RelativeMap",
    "GeneratorImageHom", "RelativeDoubledHom", "context_for", "second_copy_names",
    "double_element", "double_module", "double_matrix", "double_matrix_hom",
    "block_structure_ok", "double_quotient_element", "double_quotient_module",
    "direct_sum_iso", "interleave_permutation", "permutation_matrix", "phi_tensor",
    "lemma_sides", "relative_double_hom", "format_doubled_generators", "closed_form_oracle",
    "FunctorReport", "functor_check",
]

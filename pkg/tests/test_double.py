import random

import pytest

from doublekit.double import (
    DoubleContext, GeneratorImageHom, RelativeMap, block_structure_ok, closed_form_oracle,
    context_for, direct_sum_iso, double_element, double_matrix, double_matrix_hom,
    double_module, double_quotient_element, double_quotient_module, format_doubled_generators,
    functor_check, interleave_permutation, lemma_sides, relative_double_hom, second_copy_names,
)
from doublekit.errors import IllDefinedHom
from doublekit.groebner import INFINITE
from doublekit.instances import InstanceSpec, gen_submodule, recombined
from doublekit.modules import (
    MatrixHom, ModuleElement, PresentedQuotient, Submodule, colength, element, generic_rank,
    hom_compose, is_submodule, module_eq,
)
from doublekit.poly import PolyRing, RingMorphism

Q1 = PolyRing(["x"])
CTX = context_for(Q1)
S = CTX.doubled


def ideal(ring, *gens):
    return Submodule(ring, 1, [element(ring, g) for g in gens])


def test_second_copy_names():
    assert second_copy_names(["x"]) == ("y",)
    assert second_copy_names(["x1", "x2"]) == ("y1", "y2")
    assert second_copy_names(["t"]) == ("t_2",)
    assert second_copy_names(["x", "t"]) == ("x_2", "t_2")
    assert context_for(PolyRing(["x1", "x2"])).doubled.variables == ("x1", "x2", "y1", "y2")


def test_context_rejects_clashing_names():
    with pytest.raises(ValueError):
        DoubleContext(PolyRing(["x", "y"]), ["y", "z"])


def test_element_double_examples():
    assert double_element(CTX, element(Q1, "x^2")) == element(S, "x^2", "y^2")
    z = double_element(CTX, ModuleElement.zero(Q1, 1))
    assert z.rank == 2 and z.is_zero()
    R2 = PolyRing(["x1", "x2"])
    c2 = context_for(R2)
    assert double_element(c2, element(R2, "x1", "x2")) == element(c2.doubled, "x1", "x2", "y1", "y2")


def test_worked_example_generators():
    dm = double_module(CTX, ideal(Q1, "x"))
    assert format_doubled_generators(dm) == ["(x, y)", "(0, (y - x)*y)"]
    assert module_eq(dm.value, Submodule(S, 2, [element(S, "x", "y"), element(S, 0, "(y - x)*y")]))


def test_unit_ideal_double():
    dm = double_module(CTX, Submodule.free(Q1, 1))
    assert module_eq(dm.value, Submodule(S, 2, [element(S, 1, 1), element(S, 0, "y - x")]))
    assert format_doubled_generators(dm) == ["(1, 1)", "(0, y - x)"]


def test_zero_module_double():
    assert double_module(CTX, Submodule.zero(Q1, 1)).value.is_zero()


def test_closed_form_matches_brute_force_family():
    for M in [ideal(Q1, "x"), Submodule.free(Q1, 1)]:
        closed = double_module(CTX, M).value
        oracle = closed_form_oracle(CTX, M, degree=5)
        assert is_submodule(closed, oracle) and is_submodule(oracle, closed)


def test_doubled_membership_worked_example():
    MD = double_module(CTX, ideal(Q1, "x")).value
    assert MD.contains(element(S, "x^2", "y^2"))
    assert not MD.contains(element(S, "x", "x"))
    assert MD.contains(double_element(CTX, element(Q1, "x^7 - 3*x")))


def test_block_double_examples():
    F = Submodule.free(Q1, 1)
    dh = double_matrix_hom(CTX, MatrixHom.identity(F))
    assert dh.matrix == ((S.one(), S.zero()), (S.zero(), S.one()))
    B = double_matrix(CTX, ((Q1("x"),),), 1)
    assert B == ((S("x"), S.zero()), (S.zero(), S("y")))
    R2 = PolyRing(["x1", "x2"])
    c2 = context_for(R2)
    B = double_matrix(c2, ((R2("x1"), R2("x2")),), 2)
    T = c2.doubled
    assert B == ((T("x1"), T("x2"), T.zero(), T.zero()), (T.zero(), T.zero(), T("y1"), T("y2")))
    assert block_structure_ok(c2, B, 1, 2)


def test_block_check_catches_mixed_variables():
    bad = ((S("x"), S.zero()), (S.zero(), S("x")))
    assert not block_structure_ok(CTX, bad, 1, 1)
    bad = ((S("x"), S.one()), (S.zero(), S("y")))
    assert not block_structure_ok(CTX, bad, 1, 1)


def test_doubled_colength_of_worked_example_is_infinite():
    # N_D/M_D maps onto (N/M) tensored with the second copy of the ring, which is infinite
    # dimensional as soon as N/M is nonzero
    M, N = ideal(Q1, "x"), Submodule.free(Q1, 1)
    assert colength(M, N) == 1
    assert colength(double_module(CTX, M).value, double_module(CTX, N).value) == INFINITE
    assert colength(double_module(CTX, N).value, double_module(CTX, N).value) == 0


def test_doubled_colength_finite_only_for_equal_modules():
    spec = InstanceSpec(max_vars=1, max_rank=2, max_gens=3, max_degree=2)
    rng = random.Random(3)
    seen = set()
    for seed in range(30):
        N = gen_submodule(spec, seed)
        ctx = context_for(N.ring)
        x = N.ring.gens()[0]
        M = recombined(spec, N, rng) if seed % 3 == 0 else Submodule(N.ring, N.rank, [g * x for g in N.gens])
        if colength(M, N) == INFINITE:
            continue
        dl = colength(double_module(ctx, M).value, double_module(ctx, N).value)
        assert (dl != INFINITE) == module_eq(M, N)
        seen.add(module_eq(M, N))
    assert seen == {True, False}


def test_generic_rank_doubles():
    assert generic_rank(double_module(CTX, ideal(Q1, "x")).value) == 2
    spec = InstanceSpec(max_vars=2, max_rank=2, max_gens=3)
    for seed in range(20):
        M = gen_submodule(spec, seed)
        assert generic_rank(double_module(context_for(M.ring), M).value) == 2 * generic_rank(M)


def test_quotient_double_examples():
    M, W = ideal(Q1, "x"), ideal(Q1, "x^2")
    QD = double_quotient_module(CTX, PresentedQuotient(M, W))
    assert module_eq(QD.numerator, Submodule(S, 2, [element(S, "x", "y"), element(S, 0, "(y - x)*y")]))
    assert module_eq(QD.denominator, Submodule(S, 2, [element(S, "x^2", "y^2"), element(S, 0, "(y - x)*y^2")]))
    assert is_submodule(QD.denominator, QD.numerator)
    assert double_quotient_module(CTX, PresentedQuotient(M, M)).is_zero()


def test_coset_double_examples():
    W = ideal(Q1, "x^2")
    assert double_quotient_element(CTX, element(Q1, "x^3"), W).is_zero()
    c = double_quotient_element(CTX, element(Q1, "x"), W)
    assert c.representative == element(S, "x", "y")
    assert not c.is_zero()
    assert c.same_coset(double_quotient_element(CTX, element(Q1, "x + 5*x^2"), W))
    plain = double_quotient_element(CTX, element(Q1, "x"), Submodule.zero(Q1, 1))
    assert plain.representative == element(S, "x", "y")


def test_direct_sum_iso_claim():
    M, N = ideal(Q1, "x"), Submodule.free(Q1, 1)
    eta, delta = direct_sum_iso(CTX, M, N)
    h = element(Q1, "x").concat(element(Q1, 1))
    assert double_element(CTX, h) == element(S, "x", 1, "y", 1)
    assert eta(double_element(CTX, h)) == element(S, "x", "y", 1, 1)
    assert delta(eta(double_element(CTX, h))) == double_element(CTX, h)


def test_direct_sum_with_zero():
    M, Z = ideal(Q1, "x"), Submodule.zero(Q1, 1)
    eta, _ = direct_sum_iso(CTX, M, Z)
    u = element(S, "x", 0, "y", 0)
    assert eta(u) == element(S, "x", "y", 0, 0)


def test_interleave_permutation():
    # (a1, b1, a2, b2) -> (a1, a2, b1, b2) for ranks (1, 1)
    assert interleave_permutation([1, 1]) == [0, 2, 1, 3]
    assert sorted(interleave_permutation([2, 1, 3])) == list(range(12))


def test_relative_tensor_example():
    X, T = PolyRing(["x1", "x2"]), PolyRing(["t"])
    rel = RelativeMap(RingMorphism(X, T, ["t^2", "t^3"]))
    SX, ST = rel.source_ctx.doubled, rel.target_ctx.doubled
    assert ST.variables == ("t", "t_2")
    assert rel.tensor(SX("x1 - y1")) == ST("t^2 - t_2^2")
    assert rel.tensor(SX("7")) == ST("7")


def test_lemma_sides_on_cusp():
    X, T = PolyRing(["x1", "x2"]), PolyRing(["t"])
    rel = RelativeMap(RingMorphism(X, T, ["t^2", "t^3"]))
    SX = rel.source_ctx.doubled
    for alpha in ["x1*y1", "x1^2 - y2 + 3*x2*y1", "5"]:
        for slot in (1, 2):
            a, b = lemma_sides(rel, SX(alpha), fixed_slot=slot)
            assert a == b


def test_relative_double_forced_value():
    X, T = PolyRing(["x"]), PolyRing(["t"])
    rel = RelativeMap(RingMorphism(X, T, ["t^2"]))
    M, N = ideal(X, "x"), ideal(T, "t^2")
    phi = GeneratorImageHom(M, N, [element(T, "t^2")], rel)
    rd = relative_double_hom(rel, phi)
    h = element(X, "x^2")
    assert phi(h) == element(T, "t^4")
    ST = rel.target_ctx.doubled
    assert rd.apply(double_element(rel.source_ctx, h)) == element(ST, "t^4", "t_2^4")


def test_relative_identity_reduces_to_matrix_double():
    M = Submodule(Q1, 1, [element(Q1, "x"), element(Q1, "x^2")])
    phi = MatrixHom(M, M, [["x"]])
    g = GeneratorImageHom.from_matrix_hom(phi)
    rd = relative_double_hom(RelativeMap.identity(CTX), g)
    dh = double_matrix_hom(CTX, phi)
    for u in rd.domain.value.gens:
        assert rd.apply(u) == dh.apply(u)


def test_relative_hom_rejects_broken_syzygy():
    X, T = PolyRing(["x"]), PolyRing(["t"])
    rel = RelativeMap(RingMorphism(X, T, ["t"]))
    M = Submodule(X, 1, [element(X, "x"), element(X, "x^2")])
    F = Submodule.free(T, 1)
    with pytest.raises(IllDefinedHom):
        GeneratorImageHom(M, F, [element(T, 1), element(T, 1)], rel)


def test_relative_composition():
    X, Y, Z = PolyRing(["x"]), PolyRing(["t"]), PolyRing(["s"])
    r1 = RelativeMap(RingMorphism(X, Y, ["t^2"]))
    r2 = RelativeMap(RingMorphism(Y, Z, ["s^3"]))
    M, N, P = ideal(X, "x"), ideal(Y, "t"), ideal(Z, "s")
    f = GeneratorImageHom(M, N, [element(Y, "t^2")], r1)
    g = GeneratorImageHom(N, P, [element(Z, "s^3")], r2)
    c = f.then(g)
    fD, gD = relative_double_hom(r1, f), relative_double_hom(r2, g)
    cD = relative_double_hom(c.relative, c)
    for u, v in zip(cD.images, fD.images):
        assert u == gD.apply(v)


def test_functor_check_samples():
    M = ideal(Q1, "x")
    F = Submodule.free(Q1, 1)
    ident = MatrixHom.identity(M)
    rep = functor_check(CTX, [M], [ident])
    assert rep.ok and rep.checked["identity"] >= 1
    mult = MatrixHom(F, M, [["x"]])
    rep = functor_check(CTX, [F, M], [mult])
    assert rep.ok and rep.checked["surjective"] == 1
    zero = MatrixHom.zero(M, F)
    rep = functor_check(CTX, [M], [zero, ident, hom_compose(zero, ident)])
    assert rep.ok and rep.checked["zero"] == 3

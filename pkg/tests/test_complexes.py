import random

import pytest

from doublekit.complexes import (
    ChainComplex, ChainMap, DegreeOneMap, contractibility_transfer, double_chain_map,
    double_complex, double_degree_one_map, exactness_propagation_check, is_complex, is_exact,
    is_exact_at, is_homotopy, matrices_equal, tilde,
)
from doublekit.double import context_for
from doublekit.instances import InstanceSpec
from doublekit.modules import MatrixHom, Submodule, element
from doublekit.verifier import random_chain_map, random_complex, random_contractible, random_degree_one
from doublekit.poly import PolyRing

R = PolyRing(["x1", "x2"])
Q1 = PolyRing(["x"])


def koszul(sign=1):
    F1 = Submodule.free(R, 1)
    F2 = Submodule.free(R, 2)
    I = Submodule(R, 1, [element(R, "x1"), element(R, "x2")])
    d2 = MatrixHom(F1, F2, [["-x2" if sign > 0 else "x2"], ["x1"]])
    d1 = MatrixHom(F2, I, [["x1", "x2"]])
    return ChainComplex.from_top([F1, F2, I], [d2, d1])


def identity_complex(M):
    # 0 -> M --id--> M -> 0 in degrees 1, 0
    return ChainComplex.from_top([M, M], [MatrixHom.identity(M)])


def test_koszul_is_complex_and_exact():
    K = koszul()
    assert is_complex(K)
    assert is_exact_at(K, 1)
    assert is_exact(K)


def test_broken_sign_is_not_complex():
    assert not is_complex(koszul(sign=-1))


def test_zero_differentials():
    F = Submodule.free(R, 1)
    C = ChainComplex(R, {0: F, 1: F, 2: F}, {})
    assert is_complex(C)
    assert not is_exact_at(C, 1)
    Z = Submodule.zero(R, 1)
    zc = ChainComplex(R, {0: Z, 1: Z}, {})
    assert is_exact(zc)


def test_exact_at_out_of_range():
    with pytest.raises(IndexError):
        is_exact_at(koszul(), 7)


def test_complex_validation():
    F = Submodule.free(R, 1)
    with pytest.raises(ValueError):
        ChainComplex(R, {0: F, 2: F})
    with pytest.raises(ValueError):
        ChainComplex(R, {})


def test_double_of_zero_complex():
    Z = Submodule.zero(R, 1)
    CD = double_complex(context_for(R), ChainComplex(R, {0: Z, 1: Z}, {}))
    assert all(CD.module(i).is_zero() for i in CD.degrees)


def test_double_of_identity_complex():
    M = Submodule(Q1, 1, [element(Q1, "x")])
    C = identity_complex(M)
    CD = double_complex(context_for(Q1), C)
    assert is_complex(CD)
    assert is_exact_at(CD, 0) and is_exact_at(CD, 1)


def test_double_of_koszul_records_exactness():
    K = koszul()
    rep = exactness_propagation_check(context_for(R), K)
    assert is_complex(double_complex(context_for(R), K))
    assert rep.complex_exact
    assert rep.implication_holds
    assert set(rep.exact_doubled) == set(K.degrees)


def test_exactness_report_on_trivial_complexes():
    Z = Submodule.zero(R, 1)
    rep = exactness_propagation_check(context_for(R), ChainComplex(R, {0: Z}, {}))
    assert rep.complex_exact and rep.double_exact
    rep = exactness_propagation_check(context_for(Q1), identity_complex(Submodule.free(Q1, 1)))
    assert rep.complex_exact and rep.double_exact


def test_identity_and_zero_chain_maps_double():
    K = koszul()
    ctx = context_for(R)
    KD = double_complex(ctx, K)
    idD = double_chain_map(ctx, ChainMap.identity(K), KD, KD)
    assert matrices_equal(idD, ChainMap.identity(KD))
    zD = double_chain_map(ctx, ChainMap.zero(K, K), KD, KD)
    assert all(zD.at(i).matrix == ChainMap.zero(KD, KD).at(i).matrix for i in KD.degrees)


def test_chain_map_composite_doubles():
    M = Submodule(Q1, 1, [element(Q1, "x")])
    C = identity_complex(M)
    a = ChainMap(C, C, {i: MatrixHom(M, M, [["x"]]) for i in C.degrees})
    b = ChainMap(C, C, {i: MatrixHom(M, M, [["x + 2"]]) for i in C.degrees})
    ctx = context_for(Q1)
    CD = double_complex(ctx, C)
    left = double_chain_map(ctx, a.then(b), CD, CD)
    right = double_chain_map(ctx, a, CD, CD).then(double_chain_map(ctx, b, CD, CD))
    assert matrices_equal(left, right)


def test_chain_map_must_commute():
    M = Submodule.free(Q1, 1)
    C = identity_complex(M)
    with pytest.raises(ValueError):
        ChainMap(C, C, {1: MatrixHom(M, M, [["x"]])})


def test_tilde_examples():
    M = Submodule.free(Q1, 1)
    C = identity_complex(M)
    zero = tilde(DegreeOneMap.zero(C, C))
    assert all(zero.at(i).matrix == ((Q1.zero(),),) for i in C.degrees)
    mu = DegreeOneMap(C, C, {0: MatrixHom.identity(M)})
    assert matrices_equal(tilde(mu), ChainMap.identity(C))


def test_homotopy_examples():
    M = Submodule.free(Q1, 1)
    C = identity_complex(M)
    ident = ChainMap.identity(C)
    assert is_homotopy(ident, ident, DegreeOneMap.zero(C, C))
    mu = DegreeOneMap(C, C, {0: MatrixHom.identity(M)})
    assert is_homotopy(ident, ChainMap.zero(C, C), mu)
    assert not is_homotopy(ident, ChainMap.zero(C, C), DegreeOneMap.zero(C, C))


def test_homotopy_transfer_random():
    spec = InstanceSpec(max_vars=2, max_rank=2, max_gens=2, max_degree=1)
    rng = random.Random(8)
    for _ in range(15):
        C = random_complex(spec, rng)
        ctx = context_for(C.ring)
        CD = double_complex(ctx, C)
        mu = random_degree_one(spec, rng, C, C)
        beta = random_chain_map(spec, rng, C)
        alpha = beta + tilde(mu)
        assert is_homotopy(alpha, beta, mu)
        assert is_homotopy(double_chain_map(ctx, alpha, CD, CD), double_chain_map(ctx, beta, CD, CD),
                           double_degree_one_map(ctx, mu, CD, CD))
        assert matrices_equal(tilde(double_degree_one_map(ctx, mu, CD, CD)),
                              double_chain_map(ctx, tilde(mu), CD, CD))


def test_contractibility_examples():
    M = Submodule(Q1, 1, [element(Q1, "x")])
    C = identity_complex(M)
    mu = DegreeOneMap(C, C, {0: MatrixHom.identity(M)})
    rep = contractibility_transfer(context_for(Q1), C, mu)
    assert rep.precondition and rep.ok
    # Koszul complex with the zero map is not contracted
    rep = contractibility_transfer(context_for(R), koszul(), DegreeOneMap.zero(koszul(), koszul()))
    assert not rep.precondition and not rep.ok


def test_sum_of_contractible_pieces():
    spec = InstanceSpec(max_vars=2, max_rank=2, max_gens=2, max_degree=1)
    rng = random.Random(2)
    for _ in range(10):
        C, mu = random_contractible(spec, rng)
        rep = contractibility_transfer(context_for(C.ring), C, mu)
        assert rep.precondition and rep.ok


def test_random_complexes_satisfy_complex_law():
    spec = InstanceSpec(max_vars=2, max_rank=2, max_gens=3, max_degree=2)
    rng = random.Random(4)
    for _ in range(20):
        C = random_complex(spec, rng)
        assert len(C) <= 4
        assert is_complex(C)
        ctx = context_for(C.ring)
        CD = double_complex(ctx, C)
        assert is_complex(CD)
        for i in C.degrees:
            assert CD.module(i).rank == 2 * C.module(i).rank

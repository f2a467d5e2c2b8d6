import random

import pytest

from doublekit.instances import (
    LIMITS, InstanceSpec, annihilating_matrix, gen_submodule, random_hom, random_monomial_germ,
    ring_with, trial_seed, unimodular,
)
from doublekit.modules import MatrixHom, Submodule, element, mat_mul, mat_vec


def test_zero_generator_bound_gives_zero_module():
    M = gen_submodule(InstanceSpec(max_gens=0), 0)
    assert M.is_zero() and not M.gens


def test_same_seed_same_module():
    spec = InstanceSpec()
    for seed in (0, 1, 2**63 + 5):
        a, b = gen_submodule(spec, seed), gen_submodule(spec, seed)
        assert a.ring == b.ring and a.rank == b.rank
        assert [g.components for g in a.gens] == [g.components for g in b.gens]


def test_bound_audit():
    spec = InstanceSpec(max_vars=3, max_rank=3, max_gens=4, max_degree=3, coeff_bound=5)
    for seed in range(1000):
        M = gen_submodule(spec, seed)
        assert 1 <= M.ring.nvars <= 3
        assert 1 <= M.rank <= 3
        assert len(M.gens) <= 4
        for g in M.gens:
            for c in g:
                if c.is_zero():
                    continue
                assert c.total_degree() <= 3
                assert all(abs(coef) <= 5 and coef.denominator == 1 for _, coef in c.items())


def test_spec_validation():
    with pytest.raises(ValueError):
        InstanceSpec(max_vars=4)
    with pytest.raises(ValueError):
        InstanceSpec(max_rank=0)
    with pytest.raises(ValueError):
        InstanceSpec(coeff_bound=6)
    with pytest.raises(ValueError):
        InstanceSpec(seed=-1)
    with pytest.raises(ValueError):
        InstanceSpec(max_terms=0)
    assert InstanceSpec().with_(seed=9).seed == 9
    assert set(LIMITS) == {"max_vars", "max_rank", "max_gens", "max_degree", "coeff_bound"}


def test_trial_seeds_are_distinct_and_64_bit():
    seeds = {trial_seed(7, k) for k in range(500)}
    assert len(seeds) == 500
    assert all(0 <= s < 2**64 for s in seeds)
    assert trial_seed(2**64 - 1, 3) < 2**64


def test_random_homs_are_well_defined():
    spec = InstanceSpec()
    rng = random.Random(1)
    for _ in range(50):
        phi = random_hom(spec, rng)
        # re-check with validation switched on
        MatrixHom(phi.domain, phi.codomain, phi.matrix, check=True)


def test_annihilating_matrix_kills_generators():
    spec = InstanceSpec()
    rng = random.Random(2)
    R = ring_with(2)
    # one generator (v, x1*v): the row (x1, -1) annihilates it
    M = Submodule(R, 2, [element(R, "x1 + x2", "x1^2 + x1*x2")])
    for _ in range(30):
        K = annihilating_matrix(spec, M, 2, rng)
        assert K is not None
        assert any(not a.is_zero() for row in K for a in row)
        for g in M.gens:
            assert mat_vec(K, g, R).is_zero()
    # the free module has no annihilator
    assert annihilating_matrix(spec, Submodule.free(R, 2), 1, rng) is None


def test_unimodular_inverse():
    spec = InstanceSpec()
    rng = random.Random(3)
    R = ring_with(2)
    for n in (1, 2, 3):
        U, Uinv = unimodular(spec, R, n, rng)
        ident = mat_mul(U, Uinv, R, n)
        assert all(ident[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def test_monomial_germs_are_nonconstant():
    spec = InstanceSpec()
    rng = random.Random(4)
    for _ in range(30):
        g = random_monomial_germ(spec, ring_with(2), rng)
        assert all(not im.is_constant() for im in g.images)

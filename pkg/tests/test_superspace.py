import pytest

from hookw.scalars import K, Level
from hookw.superspace import (BasisVector, Config, ConfigError, LinComb,
                              gl_bracket,
                              centralizer_basis, centralizer_dim_from_partition,
                              ee, f_power_is_zero, f_rank, form,
                              hook_superalgebra, index_maps, jordan_type,
                              nilpotent_f, psi, super_bracket)

CFG = Config(4, 3)
LVL = Level(4, 3)


def test_config_validation():
    with pytest.raises(ConfigError):
        Config(3, 3)   # m > n violated
    with pytest.raises(ConfigError):
        Config(4, 2)   # n >= 3 violated
    Config(5, 3)


def test_index_maps_examples():
    assert index_maps(CFG, 5) == (2, 2, None, 2)
    assert index_maps(CFG, 2) == (1, 2, 5, None)
    assert index_maps(CFG, 1) == (1, 1, None, None)
    with pytest.raises(IndexError):
        index_maps(CFG, 8)


def test_hat_tilde_mutually_inverse():
    for i in range(1, CFG.size + 1):
        info = index_maps(CFG, i)
        if info.hat is not None:
            back = index_maps(CFG, info.hat)
            assert back.tilde == i
            assert back.col == info.col + 1
        if info.tilde is not None:
            back = index_maps(CFG, info.tilde)
            assert back.hat == i


def test_super_bracket_examples():
    assert super_bracket(CFG, ee(CFG, 1, 2), ee(CFG, 2, 3)) == \
        LinComb({ee(CFG, 1, 3): 1})
    assert super_bracket(CFG, ee(CFG, 1, 2), psi(CFG, 5, 1)) == \
        LinComb({psi(CFG, 5, 2): -1})
    assert not super_bracket(CFG, psi(CFG, 5, 1), psi(CFG, 6, 2))


def test_form_examples():
    assert form(CFG, "kappa", ee(CFG, 1, 2), ee(CFG, 2, 1), LVL) == K + 3
    # e[1,5] lies outside b; kappa's "0 otherwise" branch still applies
    assert not form(CFG, "kappa", ee(CFG, 5, 1), BasisVector("e", 1, 5), LVL)
    assert form(CFG, "kappa", ee(CFG, 1, 1), ee(CFG, 2, 2), LVL) == 1
    assert not form(CFG, "kappa_tilde", ee(CFG, 1, 1), psi(CFG, 5, 2), LVL)
    assert form(CFG, "inner_g", ee(CFG, 1, 2), ee(CFG, 2, 1), LVL) == K


def test_kappa_tilde_symmetric_on_evens():
    alg = hook_superalgebra(CFG, LVL)
    for gx in alg.even_gids:
        for gy in alg.even_gids:
            assert alg.form(gx, gy) == alg.form(gy, gx)


def test_kappa_invariance():
    # kappa([x,y],z) = kappa(x,[y,z]) over all basis triples of b
    evens = [BasisVector("e", i, j)
             for i in range(1, 8) for j in range(1, 8)
             if not (i <= 4 and j > 4)]   # col(i) >= col(j)

    def lin_form(comb, z):
        total = LVL.zero
        for v, c in comb:
            total = total + form(CFG, "kappa", v, z, LVL) * c
        return total

    def lin_form_right(x, comb):
        total = LVL.zero
        for v, c in comb:
            total = total + form(CFG, "kappa", x, v, LVL) * c
        return total

    for x in evens:
        for y in evens:
            bxy = super_bracket(CFG, x, y)
            for z in evens:
                lhs = lin_form(bxy, z)
                rhs = lin_form_right(x, super_bracket(CFG, y, z))
                assert lhs == rhs, (x, y, z)


def test_super_jacobi_sampled():
    import random
    alg = hook_superalgebra(CFG, LVL)
    rng = random.Random(7)
    gens = list(range(alg.dim))

    def br(gx, gy):
        return alg.bracket(gx, gy)

    for _ in range(4000):
        x, y, z = (rng.choice(gens) for _ in range(3))
        px, py, pz = alg.parity[x], alg.parity[y], alg.parity[z]
        acc = {}

        def add(sign, a, rest_pair):
            for w1, c1 in br(*rest_pair):
                for w2, c2 in br(a, w1):
                    acc[w2] = acc.get(w2, 0) + sign * c1 * c2

        # (-1)^{px pz}[x,[y,z]] + (-1)^{py px}[y,[z,x]] + (-1)^{pz py}[z,[x,y]] = 0
        add((-1) ** (px * pz), x, (y, z))
        add((-1) ** (py * px), y, (z, x))
        add((-1) ** (pz * py), z, (x, y))
        assert all(c == 0 for c in acc.values()), (x, y, z, acc)


def test_nilpotent_f_and_jordan_type():
    f = nilpotent_f(CFG)
    assert f == LinComb({ee(CFG, 5, 2): 1, ee(CFG, 6, 3): 1, ee(CFG, 7, 4): 1})
    assert not f_power_is_zero(CFG, 1)
    assert f_power_is_zero(CFG, 2)   # largest Jordan block is 2
    assert f_rank(CFG) == 3
    assert jordan_type(CFG) == (2, 2, 2, 1)
    assert jordan_type(Config(5, 3)) == (2, 2, 2, 1, 1)


def test_centralizer_census():
    assert len(centralizer_basis(CFG)) == 25
    assert centralizer_dim_from_partition(CFG) == 25
    cfg53 = Config(5, 3)
    assert len(centralizer_basis(cfg53)) == 34
    assert centralizer_dim_from_partition(cfg53) == 34


def test_centralizer_members_commute_with_f():
    fterms = nilpotent_f(CFG)
    for comb in centralizer_basis(CFG):
        acc = {}
        for fv, fc in fterms:
            for xv, xc in comb:
                for w, c in gl_bracket(fv, xv):
                    key = (w.i, w.j)
                    acc[key] = acc.get(key, 0) + fc * xc * c
        assert all(not c for c in acc.values())


def test_algebra_tables():
    alg = hook_superalgebra(CFG, LVL)
    assert alg.dim == 37 + 12
    assert sum(1 for p in alg.parity if p == 0) == 37
    g12 = alg.gid[ee(CFG, 1, 2)]
    g21 = alg.gid[ee(CFG, 2, 1)]
    assert alg.form(g12, g21) == K + 3
    got = dict(alg.bracket(g12, g21))
    assert got == {alg.gid[ee(CFG, 1, 1)]: 1, alg.gid[ee(CFG, 2, 2)]: -1}

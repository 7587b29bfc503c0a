import random

import pytest

from hookw.scalars import K, Level, Rational, gen_binomial
from hookw.superspace import Config, ee, hook_superalgebra, psi
from hookw.vertex import State, VertexEngine

CFG = Config(4, 3)
LVL = Level(4, 3)


@pytest.fixture(scope="module")
def eng():
    return VertexEngine(hook_superalgebra(CFG, LVL))


def test_act_mode_examples(eng):
    v = eng.gen_state(ee(CFG, 2, 3))
    got = eng.act_mode(ee(CFG, 1, 2), 0, v)
    assert got == eng.gen_state(ee(CFG, 1, 3))

    v = eng.gen_state(ee(CFG, 2, 1))
    got = eng.act_mode(ee(CFG, 1, 2), 1, v)
    assert got == eng.vacuum() * LVL.alpha1

    for a in (0, 1, 3):
        assert not eng.act_mode(ee(CFG, 1, 2), a, eng.vacuum())


def test_translate(eng):
    u = ee(CFG, 2, 3)
    v = ee(CFG, 3, 1)
    assert not eng.translate(eng.vacuum())
    assert eng.translate(eng.gen_state(u)) == eng.gen_state(u, 2)
    uv = eng.monomial_state([(u, 1), (v, 1)])
    expect = eng.monomial_state([(u, 2), (v, 1)]) + \
        eng.monomial_state([(u, 1), (v, 2)])
    assert eng.translate(uv) == expect


def test_nth_product_examples(eng):
    a = eng.gen_state(ee(CFG, 1, 2))
    b = eng.gen_state(ee(CFG, 2, 3))
    assert eng.nth_product(a, 0, b) == eng.gen_state(ee(CFG, 1, 3))
    # vacuum axiom
    big = eng.monomial_state([(ee(CFG, 5, 2), 2), (ee(CFG, 1, 1), 1)])
    assert eng.nth_product(big, -1, eng.vacuum()) == big
    # annihilation bound
    for s in range(a.weight() + b.weight(), a.weight() + b.weight() + 3):
        assert not eng.nth_product(a, s, b)


def test_ope_all_examples(eng):
    a = eng.gen_state(ee(CFG, 1, 2))
    b = eng.gen_state(ee(CFG, 2, 1))
    table = eng.ope_all(a, b)
    assert set(table) == {0, 1}
    assert table[0] == eng.gen_state(ee(CFG, 1, 1)) - eng.gen_state(ee(CFG, 2, 2))
    # kappa~(e_{1,2}, e_{2,1}) = alpha1; the delta_{ij}delta_{pq} part is 0 here
    assert table[1] == eng.vacuum() * LVL.alpha1
    assert eng.ope_all(eng.vacuum(), b) == {}


def test_pbw_square_of_odd_vanishes(eng):
    p = psi(CFG, 5, 1)
    st = eng.act_mode(p, -1, eng.gen_state(p))
    assert not st


def test_odd_swap_sign(eng):
    p1 = psi(CFG, 5, 1)
    p2 = psi(CFG, 6, 2)
    a = eng.act_mode(p1, -1, eng.gen_state(p2))
    b = eng.act_mode(p2, -1, eng.gen_state(p1))
    assert a == -b and a


def random_states(eng, rng, count, max_weight=3, gids=None):
    for _ in range(count):
        yield eng.random_state(rng, max_weight, nterms=2, gids=gids,
                               k_linear=True)


def test_skew_symmetry(eng):
    # a_(s)b = -p(a,b) sum_j (-1)^{s+j} (1/j!) d^j (b_(s+j) a)
    rng = random.Random(101)
    evens = eng.alg.even_gids
    for trial in range(60):
        a = eng.random_state(rng, 2, nterms=2, gids=evens)
        b = eng.random_state(rng, 2, nterms=2, gids=evens)
        bound = a.weight() + b.weight()
        for s in range(-2, bound + 1):
            lhs = eng.nth_product(a, s, b)
            rhs = State({})
            term = None
            fact = 1
            for j in range(0, bound - s + 2):
                if j:
                    fact *= j
                inner = eng.nth_product(b, s + j, a)
                for _ in range(j):
                    inner = eng.translate(inner)
                sign = -1 if (s + j) % 2 == 0 else 1   # (-1)^{s+j+1}
                rhs = rhs + inner * eng.level.of(Rational(sign, fact))
            assert lhs == rhs, (trial, s)


def test_translation_covariance(eng):
    rng = random.Random(202)
    for trial in range(40):
        a = eng.random_state(rng, 2, nterms=2)
        b = eng.random_state(rng, 2, nterms=2)
        for s in range(-2, a.weight() + b.weight() + 1):
            # (da)_(s) b = -s a_(s-1) b
            lhs = eng.nth_product(eng.translate(a), s, b)
            rhs = eng.nth_product(a, s - 1, b) * eng.level.of(-s)
            assert lhs == rhs, (trial, s, "derivative-left")
            # d(a_(s)b) = (da)_(s)b + a_(s)db
            lhs2 = eng.translate(eng.nth_product(a, s, b))
            rhs2 = eng.nth_product(eng.translate(a), s, b) + \
                eng.nth_product(a, s, eng.translate(b))
            assert lhs2 == rhs2, (trial, s, "leibniz")


def parity_of_state(eng, st):
    ps = {sum(eng.alg.parity[g] for g, _ in m) % 2 for m in st.terms}
    assert len(ps) <= 1
    return ps.pop() if ps else 0


def test_borcherds_identity(eng):
    # sum_j C(p,j) (a_(r+j)b)_(p+q-j) c =
    #   sum_j (-1)^j C(r,j) [ a_(p+r-j)(b_(q+j)c)
    #                         - (-1)^r p(a,b) b_(q+r-j)(a_(p+j)c) ]
    rng = random.Random(303)
    for trial in range(25):
        a = eng.random_state(rng, 2, nterms=1)
        b = eng.random_state(rng, 2, nterms=1)
        c = eng.random_state(rng, 2, nterms=1)
        pab = parity_of_state(eng, a) * parity_of_state(eng, b)
        wa, wb, wc = a.weight(), b.weight(), c.weight()
        for _ in range(3):
            p = rng.randint(-2, 2)
            q = rng.randint(-2, 2)
            r = rng.randint(-2, 2)
            lhs = State({})
            for j in range(0, max(0, wa + wb - r) + 1):
                ab = eng.nth_product(a, r + j, b)
                if not ab:
                    continue
                lhs = lhs + eng.nth_product(ab, p + q - j, c) * \
                    eng.level.of(gen_binomial(p, j))
            rhs = State({})
            jmax = max(0, wb + wc - q, wa + wc - p) + 2
            for j in range(0, jmax + 1):
                coeff = eng.level.of(gen_binomial(r, j) * (-1) ** j)
                if not coeff:
                    continue
                t1 = eng.nth_product(a, p + r - j, eng.nth_product(b, q + j, c))
                term = t1
                t2 = eng.nth_product(b, q + r - j, eng.nth_product(a, p + j, c))
                sign = (1 if r % 2 == 0 else -1) * (-1 if pab else 1)
                term = term - t2 * eng.level.of(sign)
                rhs = rhs + term * coeff
            assert lhs == rhs, (trial, p, q, r)


def test_nth_product_reproduces_dot_product(eng):
    # u[-w] . v[-s] = (u[-w])_{(-1)} v[-s]
    u, v = ee(CFG, 5, 2), ee(CFG, 3, 3)
    lhs = eng.nth_product(eng.gen_state(u, 2), -1, eng.gen_state(v, 1))
    rhs = eng.monomial_state([(u, 2), (v, 1)])
    assert lhs == rhs


def test_basis_monomials_counts(eng):
    # 37 even + 12 odd generators
    assert len(eng.basis_monomials(1)) == 49
    evens = eng.alg.even_gids
    assert len(eng.basis_monomials(1, gids=evens)) == 37
    # weight 2 over evens: u[-2] plus unordered even pairs
    assert len(eng.basis_monomials(2, gids=evens)) == 37 + 37 * 38 // 2
    for mono in eng.basis_monomials(3, gids=evens)[:50]:
        assert sum(d for _, d in mono) == 3
        assert list(mono) == sorted(mono, key=lambda p: (-p[1], p[0]))


def test_numeric_level_matches_specialisation(eng):
    k0 = Rational(3, 2)
    lvl = Level(4, 3, k0=k0)
    eng_num = VertexEngine(hook_superalgebra(CFG, lvl))
    a = eng.gen_state(ee(CFG, 1, 2))
    b = eng.gen_state(ee(CFG, 2, 1))
    sym = eng.ope_all(a, b)
    num = eng_num.ope_all(eng_num.gen_state(ee(CFG, 1, 2)),
                          eng_num.gen_state(ee(CFG, 2, 1)))
    assert set(sym) == set(num)
    for s, st in sym.items():
        got = {m: c for m, c in num[s].terms.items()}
        want = {m: (c.specialize(k0) if hasattr(c, "specialize") else c)
                for m, c in st.terms.items()}
        assert got == want

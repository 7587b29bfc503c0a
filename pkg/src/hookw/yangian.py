"""The affine Yangian presentation, the maps into mode algebras, and the
relation verification suites.

Generators X^+_{i,r}, X^-_{i,r}, H_{i,r} (i mod n, r = 0, 1) satisfy ten
families of relations governed by the affine A_{n-1}^(1) Cartan matrix
(entries 2 / -1 for cyclically adjacent / 0) and two parameters hbar, eps;
here hbar = -1 throughout and eps is n + alpha2 for the W-algebra map,
n + alpha1 + alpha2 for its evaluation-style shadow, and n + c for the
gl(n) evaluation map at central charge c.

Three image families are provided:

* phi      - into modes of the W-algebra generators (the main theorem);
* evtilde  - phi minus its level-two mode corrections; satisfies (2.2)-(2.10)
             but *not* (2.1) at (r,s) = (1,1), because the W-current algebra
             carries a doubled diagonal central term;
* evgln    - the classical evaluation map on a genuine gl(n) current algebra
             at central charges (c, 1), where all ten families hold.

Every relation instance is turned into a residual expression.  The (1,1)
instance of the commuting-Cartan family is the only series-against-series
case; it is decided by the action oracle exclusively.  All other residuals
collapse symbolically, with an oracle confirmation at a configurable depth.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .modes import (ModeExpression, Verdict, is_zero_oracle, mode_word)
from .report import CheckResult
from .scalars import Level, Rational
from .superspace import Config, gl_current_algebra, hook_superalgebra
from .vertex import VertexEngine
from .wgens import WAlgebra


def cartan_entry(i, j, n) -> int:
    """Affine A_{n-1}^(1) Cartan matrix on indices 0..n-1."""
    if n < 3:
        raise ValueError("n >= 3 is required")
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"Cartan indices must lie in 0..{n - 1}")
    if i == j:
        return 2
    if abs(i - j) == 1 or {i, j} == {0, n - 1}:
        return -1
    return 0


@dataclass(frozen=True)
class YGen:
    kind: str   # "H" | "X+" | "X-"
    i: int
    r: int

    def __repr__(self):
        return f"{self.kind}[{self.i},{self.r}]"


@dataclass(frozen=True)
class RelationInstance:
    rel: int                  # 1..10
    params: tuple             # frozen key/value pairs

    def get(self, key, default=None):
        return dict(self.params).get(key, default)

    def label(self):
        ps = dict(self.params)
        inner = ",".join(f"{k}={ps[k]}" for k in sorted(ps))
        return f"(2.{self.rel})[{inner}]"


def relation_instances(n):
    """Every admissible instance of the ten defining relation families."""
    out = []

    def add(rel, **ps):
        out.append(RelationInstance(rel, tuple(sorted(ps.items()))))

    for i in range(n):
        for j in range(n):
            if i < j:
                for r, s in ((0, 0), (0, 1), (1, 1)):
                    add(1, i=i, j=j, r=r, s=s)
            elif i == j:
                add(1, i=i, j=j, r=0, s=1)
    for i in range(n):
        for j in range(n):
            add(2, i=i, j=j)
            add(3, i=i, j=j, variant="plus1")
            add(3, i=i, j=j, variant="minus1")
            for r in (0, 1):
                for sign in (1, -1):
                    add(4, i=i, j=j, r=r, sign=sign)
            if (i, j) not in ((0, n - 1), (n - 1, 0)):
                for sign in (1, -1):
                    add(5, i=i, j=j, sign=sign)
                    add(8, i=i, j=j, sign=sign)
            if i != j:
                for sign in (1, -1):
                    add(10, i=i, j=j, sign=sign)
    for sign in (1, -1):
        add(6, sign=sign)
        add(7, sign=sign)
        add(9, sign=sign)
    return out


class YangianMap:
    """Images of the Yangian generators as mode expressions, plus context."""

    def __init__(self, tag, eng, images, eps, oracle_gids, n):
        self.tag = tag
        self.eng = eng
        self.level = eng.level
        self.images = images
        self.eps = eps
        self.hbar = eng.level.of(-1)
        self.oracle_gids = oracle_gids
        self.n = n

    def image(self, g: YGen) -> ModeExpression:
        try:
            return self.images[g]
        except KeyError:
            raise ValueError(f"no image for generator {g}") from None

    def h_tilde(self, i) -> ModeExpression:
        """H~_{i,1} = H_{i,1} - (hbar/2) H_{i,0}^2."""
        h1 = self.image(YGen("H", i, 1))
        h0 = self.image(YGen("H", i, 0))
        return h1 - (h0 * h0).scaled(self.hbar * self.level.of(Rational(1, 2)))


def _series_block(e, rows, pL, pR):
    for L, R in rows:
        e.add_series((e.eng.level.one,), L, R, pL, pR)


def phi_map(cfg: Config, level: Level, walg: WAlgebra | None = None):
    """The homomorphism into modes of the W-algebra generators."""
    w = walg if walg is not None else WAlgebra(
        VertexEngine(hook_superalgebra(cfg, level)))
    eng = w.eng
    lvl = level
    n, sh = cfg.n, cfg.m - cfg.n
    one = lvl.one
    a1, a2 = lvl.alpha1, lvl.alpha2
    A = a1 + a2

    def w1(a, b):
        return w.w1_state(sh + a, sh + b)

    def w2(a, b):
        return w.w2_state(sh + a, sh + b)

    def expr():
        return ModeExpression(eng)

    imgs = {}
    for i in range(n):
        e = expr()
        if i == 0:
            e.add_word(one, ((w1(n, n) - w1(1, 1), 0),))
            e.add_const(A)
        else:
            e.add_word(one, ((w1(i, i) - w1(i + 1, i + 1), 0),))
        imgs[YGen("H", i, 0)] = e
        e = expr()
        if i == 0:
            e.add_word(one, ((w1(n, 1), 1),))
        else:
            e.add_word(one, ((w1(i, i + 1), 0),))
        imgs[YGen("X+", i, 0)] = e
        e = expr()
        if i == 0:
            e.add_word(one, ((w1(1, n), -1),))
        else:
            e.add_word(one, ((w1(i + 1, i), 0),))
        imgs[YGen("X-", i, 0)] = e

    small = [w.w1_state(x, x) for x in range(1, sh + 1)]

    for i in range(n):
        # H_{i,1}
        e = expr()
        if i == 0:
            e.add_word(one, ((w2(n, n), 1),))
            e.add_word(-one, ((w2(1, 1), 1),))
            e.add_word(a1 - A - A, ((w1(n, n), 0),))
            e.add_word(A, ((w1(1, 1), 0),))
            e.add_const(a1 * A - A * A)
            e.add_word(one, ((w1(n, n), 0), (w1(1, 1), 0)))
            for st in small:
                e.add_word(one, ((st, 0),))
            for u in range(1, n + 1):
                e.add_series((-one,), w1(n, u), w1(u, n), 0, 0)
                e.add_series((one,), w1(1, u), w1(u, 1), -1, 1)
        else:
            e.add_word(one, ((w2(i, i), 1),))
            e.add_word(-one, ((w2(i + 1, i + 1), 1),))
            half_i = lvl.of(Rational(i, 2))
            e.add_word(half_i, ((w1(i, i), 0),))
            e.add_word(-half_i, ((w1(i + 1, i + 1), 0),))
            e.add_word(one, ((w1(i, i), 0), (w1(i + 1, i + 1), 0)))
            for u in range(1, i + 1):
                e.add_series((-one,), w1(i, u), w1(u, i), 0, 0)
                e.add_series((one,), w1(i + 1, u), w1(u, i + 1), 0, 0)
            for u in range(i + 1, n + 1):
                e.add_series((-one,), w1(i, u), w1(u, i), -1, 1)
                e.add_series((one,), w1(i + 1, u), w1(u, i + 1), -1, 1)
        imgs[YGen("H", i, 1)] = e
        # X^+_{i,1}
        e = expr()
        if i == 0:
            e.add_word(one, ((w2(n, 1), 2),))
            e.add_word(-A, ((w1(n, 1), 1),))
            for u in range(1, n + 1):
                e.add_series((-one,), w1(n, u), w1(u, 1), 0, 1)
        else:
            e.add_word(one, ((w2(i, i + 1), 1),))
            e.add_word(lvl.of(Rational(i, 2)), ((w1(i, i + 1), 0),))
            for u in range(1, i + 1):
                e.add_series((-one,), w1(i, u), w1(u, i + 1), 0, 0)
            for u in range(i + 1, n + 1):
                e.add_series((-one,), w1(i, u), w1(u, i + 1), -1, 1)
        imgs[YGen("X+", i, 1)] = e
        # X^-_{i,1}
        e = expr()
        if i == 0:
            e.add_word(one, ((w2(1, n), 0),))
            # the shifted current here: raw W1_{1,n} breaks (2.3) at i=j=0
            # by the constant alpha1(alpha1+alpha2)
            e.add_word(a1, ((w1(1, n), -1),))
            e.add_word(-A, ((w1(1, n), -1),))
            for u in range(1, n + 1):
                e.add_series((-one,), w1(1, u), w1(u, n), -1, 0)
        else:
            e.add_word(one, ((w2(i + 1, i), 1),))
            e.add_word(lvl.of(Rational(i, 2)), ((w1(i + 1, i), 0),))
            for u in range(1, i + 1):
                e.add_series((-one,), w1(i + 1, u), w1(u, i), 0, 0)
            for u in range(i + 1, n + 1):
                e.add_series((-one,), w1(i + 1, u), w1(u, i), -1, 1)
        imgs[YGen("X-", i, 1)] = e

    eps = lvl.of(n) + a2
    return YangianMap("phi", eng, imgs, eps, eng.alg.even_gids, n), w


def evtilde_map(cfg: Config, level: Level, walg: WAlgebra | None = None):
    """The evaluation-map formulas realised on the level-one W currents.

    This is the ev shadow of phi: the degree-zero images coincide with
    phi's, the degree-one ones drop phi's level-two mode terms.  The paper
    prints the differences phi - ev~; two of the printed corrections carry
    an alpha1 term on the wrong chirality and the H_{0,1} one misses the
    constant alpha1(alpha1+alpha2) - the engine pins the version for which
    the (2.2)-(2.9) compatibilities actually hold (see phi_evtilde_deltas).
    """
    w = walg if walg is not None else WAlgebra(
        VertexEngine(hook_superalgebra(cfg, level)))
    sh = cfg.m - cfg.n
    c = level.alpha1 + level.alpha2
    imgs = _ev_style_images(w.eng, lambda a, b: w.w1_state(sh + a, sh + b),
                            cfg.n, c, level)
    eps = level.of(cfg.n) + c
    return YangianMap("evtilde", w.eng, imgs, eps, w.eng.alg.even_gids,
                      cfg.n), w


def evgln_map(n: int, level: Level, c=None):
    """Theorem-2.2 evaluation map on the gl(n) current algebra at charge c."""
    lvl = level
    if c is None:
        c = lvl.alpha1 + lvl.alpha2
    alg = gl_current_algebra(n, c, lvl)
    eng = VertexEngine(alg)

    from .superspace import BasisVector

    def E(a, b):
        return eng.gen_state(BasisVector("e", a, b))

    imgs = _ev_style_images(eng, E, n, c, lvl)
    eps = lvl.of(n) + c
    gids = tuple(range(alg.dim))
    return YangianMap("evgln", eng, imgs, eps, gids, n)


def _ev_style_images(eng, E, n, c, lvl):
    """The evaluation-map images over any E_{a,b} current family."""
    one = lvl.one
    hb = lvl.of(-1)
    imgs = {}
    for i in range(n):
        e = ModeExpression(eng)
        if i == 0:
            e.add_word(one, ((E(n, n) - E(1, 1), 0),))
            e.add_const(c)
        else:
            e.add_word(one, ((E(i, i) - E(i + 1, i + 1), 0),))
        imgs[YGen("H", i, 0)] = e
        e = ModeExpression(eng)
        if i == 0:
            e.add_word(one, ((E(n, 1), 1),))
        else:
            e.add_word(one, ((E(i, i + 1), 0),))
        imgs[YGen("X+", i, 0)] = e
        e = ModeExpression(eng)
        if i == 0:
            e.add_word(one, ((E(1, n), -1),))
        else:
            e.add_word(one, ((E(i + 1, i), 0),))
        imgs[YGen("X-", i, 0)] = e

    for i in range(n):
        e = ModeExpression(eng)
        if i == 0:
            # hbar c h_0 - hbar E_nn (E_11 - c) + series
            e += imgs[YGen("H", 0, 0)].scaled(hb * c)
            e.add_word(-hb, ((E(n, n), 0), (E(1, 1), 0)))
            e.add_word(hb * c, ((E(n, n), 0),))
            for kk in range(1, n + 1):
                e.add_series((hb,), E(n, kk), E(kk, n), 0, 0)
                e.add_series((-hb,), E(1, kk), E(kk, 1), -1, 1)
        else:
            e += imgs[YGen("H", i, 0)].scaled(hb * lvl.of(Rational(-i, 2)))
            e.add_word(-hb, ((E(i, i), 0), (E(i + 1, i + 1), 0)))
            for kk in range(1, i + 1):
                e.add_series((hb,), E(i, kk), E(kk, i), 0, 0)
                e.add_series((-hb,), E(i + 1, kk), E(kk, i + 1), 0, 0)
            for kk in range(i + 1, n + 1):
                e.add_series((hb,), E(i, kk), E(kk, i), -1, 1)
                e.add_series((-hb,), E(i + 1, kk), E(kk, i + 1), -1, 1)
        imgs[YGen("H", i, 1)] = e
        e = ModeExpression(eng)
        if i == 0:
            e += imgs[YGen("X+", 0, 0)].scaled(hb * c)
            for kk in range(1, n + 1):
                e.add_series((hb,), E(n, kk), E(kk, 1), 0, 1)
        else:
            e += imgs[YGen("X+", i, 0)].scaled(hb * lvl.of(Rational(-i, 2)))
            for kk in range(1, i + 1):
                e.add_series((hb,), E(i, kk), E(kk, i + 1), 0, 0)
            for kk in range(i + 1, n + 1):
                e.add_series((hb,), E(i, kk), E(kk, i + 1), -1, 1)
        imgs[YGen("X+", i, 1)] = e
        e = ModeExpression(eng)
        if i == 0:
            e += imgs[YGen("X-", 0, 0)].scaled(hb * c)
            for kk in range(1, n + 1):
                e.add_series((hb,), E(1, kk), E(kk, n), -1, 0)
        else:
            e += imgs[YGen("X-", i, 0)].scaled(hb * lvl.of(Rational(-i, 2)))
            for kk in range(1, i + 1):
                e.add_series((hb,), E(i + 1, kk), E(kk, i), 0, 0)
            for kk in range(i + 1, n + 1):
                e.add_series((hb,), E(i + 1, kk), E(kk, i), -1, 1)
        imgs[YGen("X-", i, 1)] = e
    return imgs


def phi_evtilde_deltas(cfg: Config, level: Level, walg: WAlgebra | None = None):
    """Structural differences phi(g) - ev~(g) for the degree-one generators.

    Returns (gen, delta, printed) triples where `printed` is the paper's
    stated correction; the suite reports where the two disagree (two swapped
    alpha1 terms and one constant).
    """
    w = walg if walg is not None else WAlgebra(
        VertexEngine(hook_superalgebra(cfg, level)))
    phi, _ = phi_map(cfg, level, w)
    evt, _ = evtilde_map(cfg, level, w)
    eng, lvl = phi.eng, level
    n, sh = cfg.n, cfg.m - cfg.n
    one, a1 = lvl.one, lvl.alpha1

    def w1(a, b):
        return w.w1_state(sh + a, sh + b)

    def w2(a, b):
        return w.w2_state(sh + a, sh + b)

    out = []
    for i in range(n):
        for kind in ("H", "X+", "X-"):
            g = YGen(kind, i, 1)
            delta = phi.image(g) - evt.image(g)
            printed = ModeExpression(eng)
            if kind == "H":
                if i == 0:
                    printed.add_word(one, ((w2(n, n), 1),))
                    printed.add_word(-one, ((w2(1, 1), 1),))
                    printed.add_word(a1, ((w1(n, n), 0),))
                    for x in range(1, sh + 1):
                        printed.add_word(one, ((w.w1_state(x, x), 0),))
                else:
                    printed.add_word(one, ((w2(i, i), 1),))
                    printed.add_word(-one, ((w2(i + 1, i + 1), 1),))
            elif kind == "X+":
                if i == 0:
                    printed.add_word(one, ((w2(n, 1), 2),))
                    printed.add_word(a1, ((w1(n, 1), 1),))
                else:
                    printed.add_word(one, ((w2(i, i + 1), 1),))
            else:
                if i == 0:
                    printed.add_word(one, ((w2(1, n), 0),))
                else:
                    printed.add_word(one, ((w2(i + 1, i), 1),))
            out.append((g, delta, printed))
    return out


def build_map(tag, cfg: Config | None, level: Level, n=None, c=None,
              walg=None):
    if tag == "phi":
        return phi_map(cfg, level, walg)[0]
    if tag == "evtilde":
        return evtilde_map(cfg, level, walg)[0]
    if tag == "evgln":
        return evgln_map(n if n is not None else cfg.n, level, c)
    raise ValueError(f"unknown map {tag!r}")


# -- residuals -----------------------------------------------------------------

def relation_residual(ymap: YangianMap, rel: RelationInstance,
                      eps_override=None):
    """Left minus right of one relation instance under the map.

    Returns either a ModeExpression (symbolic path) or a pair of
    expressions whose commutator must vanish (the oracle-only path).
    """
    n = ymap.n
    lvl = ymap.level
    eps = eps_override if eps_override is not None else ymap.eps
    hb = ymap.hbar
    corr = eps + hb * lvl.of(Rational(n, 2))   # eps + n hbar / 2
    img = ymap.image
    r = rel.rel
    p = dict(rel.params)

    def X(sign, i, rr):
        return img(YGen("X+" if sign > 0 else "X-", i, rr))

    if r == 1:
        i, j, rr, ss = p["i"], p["j"], p["r"], p["s"]
        a = img(YGen("H", i, rr))
        b = img(YGen("H", j, ss))
        if rr == 1 and ss == 1:
            return (a, b)
        return a.bracket(b)
    if r == 2:
        i, j = p["i"], p["j"]
        res = img(YGen("X+", i, 0)).bracket(img(YGen("X-", j, 0)))
        if i == j:
            res = res - img(YGen("H", i, 0))
        return res
    if r == 3:
        i, j = p["i"], p["j"]
        if p["variant"] == "plus1":
            res = img(YGen("X+", i, 1)).bracket(img(YGen("X-", j, 0)))
        else:
            res = img(YGen("X+", i, 0)).bracket(img(YGen("X-", j, 1)))
        if i == j:
            res = res - img(YGen("H", i, 1))
        return res
    if r == 4:
        i, j, rr, sign = p["i"], p["j"], p["r"], p["sign"]
        a = cartan_entry(i, j, n)
        res = img(YGen("H", i, 0)).bracket(X(sign, j, rr))
        if a:
            res = res - X(sign, j, rr).scaled(lvl.of(sign * a))
        return res
    if r == 5:
        i, j, sign = p["i"], p["j"], p["sign"]
        a = cartan_entry(i, j, n)
        res = ymap.h_tilde(i).bracket(X(sign, j, 0))
        if a:
            res = res - X(sign, j, 1).scaled(lvl.of(sign * a))
        return res
    if r == 6:
        sign = p["sign"]
        res = ymap.h_tilde(0).bracket(X(sign, n - 1, 0))
        fix = X(sign, n - 1, 1) - X(sign, n - 1, 0).scaled(corr)
        return res + fix.scaled(lvl.of(sign))
    if r == 7:
        sign = p["sign"]
        res = ymap.h_tilde(n - 1).bracket(X(sign, 0, 0))
        fix = X(sign, 0, 1) + X(sign, 0, 0).scaled(corr)
        return res + fix.scaled(lvl.of(sign))
    if r == 8:
        i, j, sign = p["i"], p["j"], p["sign"]
        a = cartan_entry(i, j, n)
        res = X(sign, i, 1).bracket(X(sign, j, 0)) - \
            X(sign, i, 0).bracket(X(sign, j, 1))
        if a:
            anti = X(sign, i, 0) * X(sign, j, 0) + \
                X(sign, j, 0) * X(sign, i, 0)
            res = res - anti.scaled(lvl.of(Rational(sign * a, 2)) * hb)
        return res
    if r == 9:
        # the (2.8) pattern at the corner pair (a = -1) plus the eps shift
        sign = p["sign"]
        a = cartan_entry(0, n - 1, n)
        res = X(sign, 0, 1).bracket(X(sign, n - 1, 0)) - \
            X(sign, 0, 0).bracket(X(sign, n - 1, 1))
        anti = X(sign, 0, 0) * X(sign, n - 1, 0) + \
            X(sign, n - 1, 0) * X(sign, 0, 0)
        res = res - anti.scaled(lvl.of(Rational(sign * a, 2)) * hb)
        res = res + X(sign, 0, 0).bracket(X(sign, n - 1, 0)).scaled(corr)
        return res
    if r == 10:
        i, j, sign = p["i"], p["j"], p["sign"]
        a = cartan_entry(i, j, n)
        res = X(sign, j, 0)
        for _ in range(1 - a):
            res = X(sign, i, 0).bracket(res)
        return res
    raise ValueError(f"unknown relation {r}")


def check_relation(ymap: YangianMap, rel: RelationInstance, D=4,
                   confirm_depth=2, basis="full", eps_override=None):
    """One relation instance to a CheckResult."""
    t0 = time.time()
    anchor = {1: "commuting Cartan modes", 2: "simple-root pairing",
              3: "level-one pairing", 4: "Cartan action",
              5: "deformed Cartan action", 6: "corner correction (0,n-1)",
              7: "corner correction (n-1,0)", 8: "mixed-level symmetriser",
              9: "corner symmetriser", 10: "Serre relation"}[rel.rel]
    anchor = f"(2.{rel.rel}) {anchor}"
    cid = f"yangian-{ymap.tag}/{rel.label()}"
    out = relation_residual(ymap, rel, eps_override)
    if isinstance(out, tuple):
        a, b = out
        verdict = is_zero_oracle(a, D, gids=ymap.oracle_gids, basis=basis,
                                 commutator_with=b)
        ok = verdict.is_zero
        note = f"oracle {verdict!r}"
    else:
        if out.is_literally_zero():
            ok, note = True, "zero symbolically"
        else:
            verdict = is_zero_oracle(out, confirm_depth,
                                     gids=ymap.oracle_gids, basis=basis)
            ok = verdict.is_zero
            note = f"residual {out.summary()}; oracle {verdict!r}"
    return CheckResult(id=cid, paper_anchor=anchor,
                       status="pass" if ok else "fail",
                       residual="" if ok else note,
                       millis=int((time.time() - t0) * 1000))


def check_all(ymap: YangianMap, D=4, confirm_depth=2, basis="full",
              oracle_basis=None, expect_fail=()):
    """Every admissible relation instance; returns CheckResults.

    `expect_fail` marks instances whose nonzero verdict is the theorem
    (the ev-shadow's (1,1) Cartan commutators): those report as pass when
    the oracle finds a witness, with the witness recorded.
    """
    results = []
    for rel in relation_instances(ymap.n):
        key = (rel.rel, rel.get("r"), rel.get("s"))
        is_oracle_only = rel.rel == 1 and rel.get("r") == 1 \
            and rel.get("s") == 1
        b = oracle_basis if (is_oracle_only and oracle_basis) else basis
        res = check_relation(ymap, rel, D=D, confirm_depth=confirm_depth,
                             basis=b)
        if is_oracle_only and key in expect_fail:
            flipped = "pass" if res.status == "fail" else "fail"
            res = CheckResult(
                id=res.id + "[expected-nonzero]",
                paper_anchor=res.paper_anchor + "; fails by design",
                status=flipped,
                residual=res.residual if flipped == "pass" else
                "expected a nonzero witness, none found up to depth",
                millis=res.millis)
        results.append(res)
    return results

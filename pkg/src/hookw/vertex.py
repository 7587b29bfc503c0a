"""The vacuum module of an affinised current (super)algebra, exactly.

States are Q(k)-combinations of PBW-ordered monomials
u_1[-s_1]...u_r[-s_r]|0>, a monomial being a tuple of (generator id,
depth) pairs sorted by depth descending, then generator id (which encodes
kind and (i, j) lexicographically).  Two identical odd factors vanish.

Modes of the generating currents obey

    [u t^a, v t^b] = [u, v] t^{a+b} + a delta_{a+b,0} kappa~(u, v)

with the central element acting as 1; negative modes create (prepend and
re-straighten), nonnegative modes annihilate towards the vacuum.  Composite
n-th products are computed through the standard expansion of the modes of
u[-d]w in terms of those of u and w, so a_(s) b = 0 automatically once
s >= weight(a) + weight(b).

Straightening coefficients are plain ints; level scalars only enter through
the form and through user coefficients, which keeps the hot paths cheap in
both the symbolic and the specialised-k modes.
"""

from __future__ import annotations

import random

from .scalars import gen_binomial
from .superspace import Algebra

VACUUM = ()


def monomial_weight(mono):
    return sum(d for _, d in mono)


_SID_COUNTER = iter(range(1, 1 << 62))


class State:
    """A finite combination of PBW monomials; treated as immutable."""

    __slots__ = ("terms", "_frozen", "_sid")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    t[mono] = c
        self.terms = t
        self._frozen = None
        self._sid = None

    @classmethod
    def vacuum(cls, level):
        return cls({VACUUM: level.one})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, State) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for mono, c in other.terms.items():
            cur = out.get(mono)
            new = c if cur is None else cur + c
            if new:
                out[mono] = new
            else:
                del out[mono]
        return State.__raw__(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return State.__raw__({m: -c for m, c in self.terms.items()})

    def __mul__(self, scalar):
        if not scalar:
            return ZERO
        return State.__raw__({m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    @classmethod
    def __raw__(cls, terms):
        s = cls.__new__(cls)
        s.terms = terms
        s._frozen = None
        s._sid = None
        return s

    def sid(self):
        """A process-unique id for caching; equal objects share via frozen()."""
        if self._sid is None:
            self._sid = next(_SID_COUNTER)
        return self._sid

    def weight(self):
        """Largest monomial weight present (0 for the vacuum/zero state)."""
        return max((monomial_weight(m) for m in self.terms), default=0)

    def is_homogeneous(self):
        ws = {monomial_weight(m) for m in self.terms}
        return len(ws) <= 1

    def truncated(self, max_weight):
        return State.__raw__({m: c for m, c in self.terms.items()
                              if monomial_weight(m) <= max_weight})

    def frozen(self):
        """A hashable canonical snapshot, usable as a dict key."""
        if self._frozen is None:
            self._frozen = tuple(sorted(self.terms.items(),
                                        key=lambda t: t[0]))
        return self._frozen

    def __hash__(self):
        return hash(self.frozen())

    def __repr__(self):
        return f"State({len(self.terms)} terms, wt<={self.weight()})"


ZERO = State.__raw__({})


def _key(gid, depth):
    return (-depth, gid)


class VertexEngine:
    """Exact operations on the vacuum module of one current algebra."""

    def __init__(self, algebra: Algebra):
        self.alg = algebra
        self.level = algebra.level
        self._create_cache = {}
        self._ann_cache = {}
        self._basis_cache = {}
        self._nth_cache = {}

    # -- construction ------------------------------------------------------

    def vacuum(self):
        return State.vacuum(self.level)

    def gen_state(self, v, depth=1):
        """u[-depth]|0> for a generator (BasisVector or gid)."""
        gid = v if isinstance(v, int) else self.alg.gid[v]
        return State({((gid, depth),): self.level.one})

    def monomial_state(self, pairs):
        """Product of creation modes applied to |0>, normalised."""
        out = self.vacuum()
        for v, depth in reversed(list(pairs)):
            out = self.act_mode(v, -depth, out)
        return out

    # -- straightening (integer coefficients) ------------------------------

    def _create(self, gid, depth, mono):
        """g t^{-depth} applied to a canonical monomial; {mono: int}."""
        key = (gid, depth, mono)
        hit = self._create_cache.get(key)
        if hit is not None:
            return hit
        par = self.alg.parity
        k = _key(gid, depth)
        if not mono or k <= _key(*mono[0]):
            if mono and k == _key(*mono[0]) and par[gid]:
                out = {}   # psi[-s]^2 = 0
            else:
                out = {((gid, depth),) + mono: 1}
            self._create_cache[key] = out
            return out
        h, e = mono[0]
        rest = mono[1:]
        sign = -1 if (par[gid] and par[h]) else 1
        out = {}
        for m2, c2 in self._create(gid, depth, rest).items():
            for m3, c3 in self._create(h, e, m2).items():
                c = out.get(m3, 0) + sign * c2 * c3
                if c:
                    out[m3] = c
                else:
                    del out[m3]
        for w, cw in self.alg.bracket(gid, h):
            for m2, c2 in self._create(w, depth + e, rest).items():
                c = out.get(m2, 0) + cw * c2
                if c:
                    out[m2] = c
                else:
                    del out[m2]
        self._create_cache[key] = out
        return out

    def _annihilate(self, gid, a, mono):
        """g t^a (a >= 0) applied to a canonical monomial; {mono: scalar|int}."""
        if not mono:
            return {}
        key = (gid, a, mono)
        hit = self._ann_cache.get(key)
        if hit is not None:
            return hit
        par = self.alg.parity
        h, e = mono[0]
        rest = mono[1:]
        out = {}

        def acc(m, c):
            cur = out.get(m)
            new = c if cur is None else cur + c
            if new:
                out[m] = new
            elif cur is not None:
                del out[m]

        if a == e:
            fv = self.alg.form(gid, h)
            if fv:
                acc(rest, fv * a)
        for w, cw in self.alg.bracket(gid, h):
            b = a - e
            if b < 0:
                for m2, c2 in self._create(w, -b, rest).items():
                    acc(m2, cw * c2)
            else:
                for m2, c2 in self._annihilate(w, b, rest).items():
                    acc(m2, c2 * cw)
        sign = -1 if (par[gid] and par[h]) else 1
        for m2, c2 in self._annihilate(gid, a, rest).items():
            for m3, c3 in self._create(h, e, m2).items():
                c = c2 * c3
                acc(m3, -c if sign < 0 else c)
        self._ann_cache[key] = out
        return out

    # -- spec operations ----------------------------------------------------

    def act_mode(self, u, a, v: State) -> State:
        """Action of the current mode u t^a on a state."""
        gid = u if isinstance(u, int) else self.alg.gid[u]
        out = {}
        if a < 0:
            per_mono = lambda mono: self._create(gid, -a, mono)
        else:
            per_mono = lambda mono: self._annihilate(gid, a, mono)
        for mono, c in v.terms.items():
            for m2, c2 in per_mono(mono).items():
                cur = out.get(m2)
                new = c * c2 if cur is None else cur + c * c2
                if new:
                    out[m2] = new
                elif cur is not None:
                    del out[m2]
        return State.__raw__(out)

    def translate(self, v: State) -> State:
        """The translation operator: a derivation with u[-s] -> s u[-s-1]."""
        out = ZERO
        for mono, c in v.terms.items():
            for t in range(len(mono)):
                gid, d = mono[t]
                lifted = self._create(gid, d + 1, mono[t + 1:])
                pre = mono[:t]
                for m2, c2 in lifted.items():
                    acc = c * (d * c2)
                    st = State.__raw__({m2: acc})
                    for g2, d2 in reversed(pre):
                        st = self.act_mode(g2, -d2, st)
                    out = out + st
        return out

    def nth_product(self, a: State, s: int, b: State) -> State:
        """The s-th product a_(s) b inside the vacuum module.

        Bilinear over both arguments; cached per (a, s, monomial of b) so
        oracle sweeps that apply the same few states across a large basis
        share their work.
        """
        sid = a.sid()
        cache = self._nth_cache
        acc = {}
        for mono_b, cb in b.terms.items():
            # low-weight right monomials recur across oracle sweeps; deep
            # ones are one-shot, caching them only costs memory
            cacheable = monomial_weight(mono_b) <= 3
            key = (sid, s, mono_b)
            part = cache.get(key) if cacheable else None
            if part is None:
                part = ZERO
                single = State.__raw__({mono_b: self.level.one})
                for mono_a, ca in a.terms.items():
                    piece = self._mono_mode(mono_a, s, single)
                    if piece:
                        part = part + piece * ca
                if cacheable:
                    cache[key] = part
            for mono, c in part.terms.items():
                cur = acc.get(mono)
                new = c * cb if cur is None else cur + c * cb
                if new:
                    acc[mono] = new
                elif cur is not None:
                    del acc[mono]
        return State.__raw__(acc)

    def _mono_mode(self, mono, s, b: State) -> State:
        """(mono)_(s) b for a canonical monomial viewed as a state."""
        if not b:
            return ZERO
        if not mono:
            return b if s == -1 else ZERO
        gid, d = mono[0]
        rest = mono[1:]
        par = self.alg.parity
        p_u_rest = bool(par[gid]) and (sum(par[g] for g, _ in rest) % 2 == 1)
        wt_rest = monomial_weight(rest)
        wt_b = b.weight()
        out = ZERO
        # (u_(-d) w)_(s) = sum_j (-1)^j C(-d,j) [ u_(-d-j) w_(s+j)
        #                  - (-1)^{-d} p(u,w) w_(s-d-j) u_(j) ]
        j = 0
        while s + j < wt_rest + wt_b:
            coeff = self.level.of(gen_binomial(-d, j) * ((-1) ** j))
            inner = self._mono_mode(rest, s + j, b)
            if inner:
                out = out + self.act_mode(gid, -d - j, inner) * coeff
            j += 1
        sign2 = -((-1) ** d)
        if p_u_rest:
            sign2 = -sign2
        for j in range(0, wt_b + 1):
            ub = self.act_mode(gid, j, b)
            if not ub:
                continue
            coeff = self.level.of(gen_binomial(-d, j) * ((-1) ** j * sign2))
            inner = self._mono_mode(rest, s - d - j, ub)
            if inner:
                out = out + inner * coeff
        return out

    def ope_all(self, a: State, b: State) -> dict:
        """All nonnegative products a_(s) b; support bounded by the weights."""
        bound = a.weight() + b.weight()
        table = {}
        for s in range(0, bound):
            val = self.nth_product(a, s, b)
            if val:
                table[s] = val
        return table

    # -- basis enumeration and random states --------------------------------

    def basis_monomials(self, weight, gids=None, max_factors=None):
        """Canonical PBW monomials of exact total depth `weight`."""
        gids = tuple(gids) if gids is not None else tuple(range(self.alg.dim))
        key = (weight, gids, max_factors)
        hit = self._basis_cache.get(key)
        if hit is not None:
            return hit
        par = self.alg.parity
        out = []

        def rec(remaining, min_key, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if max_factors is not None and len(acc) >= max_factors:
                return
            for d in range(remaining, 0, -1):
                for g in gids:
                    k = (-d, g)
                    if k < min_key:
                        continue
                    if acc and k == _key(*acc[-1]) and par[g]:
                        continue
                    acc.append((g, d))
                    rec(remaining - d, k, acc)
                    acc.pop()

        rec(weight, (-weight - 1, -1), [])
        self._basis_cache[key] = out
        return out

    def random_basis_monomial(self, rng: random.Random, weight, gids=None):
        """One canonical monomial of the given weight, seeded-pseudo-random."""
        gids = tuple(gids) if gids is not None else tuple(range(self.alg.dim))
        par = self.alg.parity
        while True:
            pairs = []
            remaining = weight
            while remaining > 0:
                d = rng.randint(1, remaining)
                g = rng.choice(gids)
                pairs.append((g, d))
                remaining -= d
            pairs.sort(key=lambda p: _key(*p))
            ok = all(not (pairs[t] == pairs[t + 1] and par[pairs[t][0]])
                     for t in range(len(pairs) - 1))
            if ok:
                return tuple(pairs)

    def random_state(self, rng: random.Random, max_weight, nterms=2,
                     gids=None, k_linear=False):
        """A small random state with rational (optionally k-linear) coefficients."""
        terms = {}
        for _ in range(nterms):
            w = rng.randint(1, max_weight)
            mono = self.random_basis_monomial(rng, w, gids)
            c = self.level.of(rng.randint(-3, 3))
            if k_linear and self.level.symbolic and rng.random() < 0.4:
                c = c + self.level.k * rng.randint(-2, 2)
            if not c:
                c = self.level.one
            terms[mono] = terms.get(mono, self.level.zero) + c
        return State(terms)

    # -- pretty printing -----------------------------------------------------

    def format_state(self, v: State, max_terms=6):
        if not v:
            return "0"
        items = sorted(v.terms.items(), key=lambda t: t[0])
        bits = []
        for mono, c in items[:max_terms]:
            if mono == VACUUM:
                word = "|0>"
            else:
                word = " ".join(f"{self.alg.label(g)}(-{d})" for g, d in mono)
            bits.append(f"({c})*{word}")
        if len(items) > max_terms:
            bits.append(f"... (+{len(items) - max_terms} terms)")
        return " + ".join(bits)

"""Finite products of modes, bilinear series, and the action oracle.

Elements of the (degreewise completed) universal enveloping algebra of the
vertex algebra are handled in three parts:

* a scalar;
* words: finite products of modes (state) t^a with the Borcherds bracket
  [u t^a, v t^b] = sum_{r>=0} C(a, r) (u_(r) v) t^{a+b-r};
* bilinear series  sum_{s>=0} c(s) (L t^{pL-s}) (R t^{pR+s})  with c a
  polynomial in the summation index s.

Series are stored anchored at pL = -1 (re-indexing peels finitely many
boundary words), so identical tails merge coefficientwise and the paper's
cancellations happen symbolically.  A bracket of a single mode against a
series stays in this class; series-against-series has no finite symbolic
form here and must go through the action oracle.

Equality in the completion is decided by `is_zero_oracle`: apply the
expression to PBW basis vectors of the vacuum module up to weight D and
test the results.  A nonzero action is an exact witness of nonzero; zero
across the whole truncation is bounded-depth evidence (the verdict records
which).  Scalar multiples of the vacuum fold into words via
(c|0>) t^a = c delta_{a,-1}, and translation classes ((dv) t^a = -a v
t^{a-1}) are only identified by the oracle, never syntactically.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .scalars import gen_binomial
from .vertex import State, VertexEngine, ZERO

VACUUM_MONO = ()


class UseOracleError(ValueError):
    """A symbolic bracket shape with no finite closed form; use the oracle."""


# -- polynomials in the summation index s (coefficients are level scalars) ---

def sp_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def sp_scale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def sp_mul(a, b):
    if not a or not b:
        return ()
    out = [None] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            prod = ca * cb
            cur = out[i + j]
            out[i + j] = prod if cur is None else cur + prod
    while out and not out[-1]:
        out.pop()
    return tuple(c for c in out)


def sp_eval(a, s):
    out = None
    for c in reversed(a):
        out = c if out is None else out * s + c
    return out


def sp_shift(a, delta, level):
    """c(s) -> c(s + delta) for an integer delta."""
    if not a or delta == 0:
        return a
    out = ()
    pow_poly = (level.one,)
    lin = (level.of(delta), level.one)
    for i, c in enumerate(a):
        if i:
            pow_poly = sp_mul(pow_poly, lin)
        if c:
            out = sp_add(out, sp_scale(pow_poly, c))
    return out


@dataclass(frozen=True)
class Verdict:
    is_zero: bool
    depth: int
    checked: int
    witness: tuple | None = None
    witness_repr: str = ""

    def __repr__(self):
        if self.is_zero:
            return f"zero-up-to({self.depth}); {self.checked} vectors"
        return f"nonzero(witness {self.witness_repr})"


_NORM_CACHE = {}


def _norm_state(st: State):
    """Factor the leading coefficient out: st = c * st_hat, st_hat monic.

    Makes scalar multiples of one state share a key, so bilinear entries
    merge (series tails, long words).
    """
    sid = st.sid()
    hit = _NORM_CACHE.get(sid)
    if hit is not None:
        return hit
    lead_mono = min(st.terms)
    c0 = st.terms[lead_mono]
    if c0 == 1:
        out = (c0, st)
    else:
        inv = 1 / c0 if not hasattr(c0, "inv") else c0.inv()
        out = (c0, st * inv)
    _NORM_CACHE[sid] = out
    return out


class ModeExpression:
    """scalar + single modes + longer words + anchored bilinear series.

    Single modes merge at the state level per power ((A+B) t^a is the same
    entry as A t^a plus B t^a); longer words merge by their syntactic mode
    keys.  All states in the word/series sectors are vacuum-free: scalar
    multiples of |0> fold into the surrounding coefficients exactly.
    """

    __slots__ = ("eng", "const", "singles", "words", "series")

    def __init__(self, eng: VertexEngine, const=None):
        self.eng = eng
        self.const = const if const is not None else eng.level.zero
        self.singles = {}  # power -> State (combined)
        self.words = {}    # key -> (coeff, ((State, power), ...)), len >= 2
        self.series = {}   # key (Lf, Rf, pR) -> (spoly, L, R); pL = -1

    # -- construction -------------------------------------------------------

    def copy(self):
        out = ModeExpression(self.eng, self.const)
        out.singles = dict(self.singles)
        out.words = dict(self.words)
        out.series = dict(self.series)
        return out

    def add_const(self, c):
        self.const = self.const + c

    def add_word(self, coeff, modes):
        """Append coeff * product of (state, power) modes.

        Vacuum components fold out exactly: (c|0>) t^p is c when p = -1 and
        0 otherwise, applied factor by factor.
        """
        if not coeff:
            return
        for t, (st, p) in enumerate(modes):
            if not st:
                return
            if VACUUM_MONO in st.terms:
                c0 = st.terms[VACUUM_MONO]
                rest = State({m: c for m, c in st.terms.items()
                              if m != VACUUM_MONO})
                before, after = modes[:t], modes[t + 1:]
                if p == -1:
                    self.add_word(coeff * c0, before + after)
                if rest:
                    self.add_word(coeff, before + ((rest, p),) + after)
                return
        if not modes:
            self.add_const(coeff)
            return
        if len(modes) == 1:
            st, p = modes[0]
            cur = self.singles.get(p, ZERO) + st * coeff
            if cur:
                self.singles[p] = cur
            else:
                self.singles.pop(p, None)
            return
        normed = []
        for st, p in modes:
            c0, st = _norm_state(st)
            coeff = coeff * c0
            normed.append((st, p))
        key = tuple((st.frozen(), p) for st, p in normed)
        cur = self.words.get(key)
        new = coeff if cur is None else cur[0] + coeff
        if new:
            self.words[key] = (new, tuple(normed))
        elif cur is not None:
            del self.words[key]

    def iter_words(self):
        """All words, singles included, as (coeff, modes) pairs."""
        one = self.eng.level.one
        for p, st in self.singles.items():
            yield one, ((st, p),)
        yield from self.words.values()

    def add_series(self, spoly, L: State, R: State, pL: int, pR: int):
        """Add sum_{s>=0} c(s) (L t^{pL-s})(R t^{pR+s}), anchored at pL=-1."""
        if not spoly or not L or not R:
            return
        lvl = self.eng.level
        cL, L = _norm_state(L)
        cR, R = _norm_state(R)
        fac = cL * cR
        if fac != 1:
            spoly = sp_scale(spoly, fac)
        shift = pL + 1
        if shift != 0:
            # u = s - shift runs over u >= -shift; c'(u) = c(u + shift)
            moved = sp_shift(spoly, shift, lvl)
            pR_new = pR + shift
            if shift > 0:
                rng, sign = range(-shift, 0), 1      # extra terms join back
            else:
                rng, sign = range(0, -shift), -1     # overcounted, remove
            for u in rng:
                c = sp_eval(moved, u)
                if c:
                    self.add_word(c if sign > 0 else -c,
                                  ((L, -1 - u), (R, pR_new + u)))
            spoly, pR = moved, pR_new
        key = (L.frozen(), R.frozen(), pR)
        cur = self.series.get(key)
        merged = spoly if cur is None else sp_add(cur[0], spoly)
        if merged:
            self.series[key] = (merged, L, R)
        else:
            self.series.pop(key, None)

    def series_terms(self):
        """Iterate (spoly, L, R, pR); stored series all have pL = -1."""
        for (Lf, Rf, pR), (sp, L, R) in self.series.items():
            yield sp, L, R, pR

    # -- linear structure -----------------------------------------------------

    def __iadd__(self, other):
        self.add_const(other.const)
        for coeff, modes in other.iter_words():
            self.add_word(coeff, modes)
        for sp, L, R, pR in other.series_terms():
            self.add_series(sp, L, R, -1, pR)
        return self

    def __add__(self, other):
        out = self.copy()
        out += other
        return out

    def scaled(self, c):
        out = ModeExpression(self.eng, self.const * c)
        if not c:
            return out
        for p, st in self.singles.items():
            out.singles[p] = st * c
        for key, (coeff, modes) in self.words.items():
            out.words[key] = (coeff * c, modes)
        for key, (sp, L, R) in self.series.items():
            out.series[key] = (sp_scale(sp, c), L, R)
        return out

    def __neg__(self):
        return self.scaled(self.eng.level.of(-1))

    def __sub__(self, other):
        return self + (-other)

    def is_literally_zero(self):
        return (not self.const and not self.singles and not self.words
                and not self.series)

    def has_series(self):
        return bool(self.series)

    def summary(self, max_items=3):
        if self.is_literally_zero():
            return "0"
        bits = []
        if self.const:
            bits.append(f"const {self.const}")
        nwords = len(self.singles) + len(self.words)
        for coeff, modes in itertools.islice(self.iter_words(), max_items):
            word = " ".join(f"(wt{st.weight()})t^{p}" for st, p in modes)
            bits.append(f"({coeff})*{word}")
        if nwords > max_items:
            bits.append(f"...+{nwords - max_items} more words")
        if self.series:
            bits.append(f"+{len(self.series)} series")
        return " ".join(bits)

    # -- products (word sector only) -------------------------------------------

    def __mul__(self, other):
        if self.series or other.series:
            raise UseOracleError("products with series have no symbolic form;"
                                 " use the action oracle")
        out = ModeExpression(self.eng, self.const * other.const)
        if other.const:
            for coeff, modes in self.iter_words():
                out.add_word(coeff * other.const, modes)
        if self.const:
            for coeff, modes in other.iter_words():
                out.add_word(coeff * self.const, modes)
        for c1, m1 in self.iter_words():
            for c2, m2 in other.iter_words():
                out.add_word(c1 * c2, m1 + m2)
        return out

    # -- brackets ----------------------------------------------------------------

    def bracket(self, other) -> "ModeExpression":
        if self.series and other.series:
            raise UseOracleError(
                "series-series bracket requested; use the action oracle")
        out = ModeExpression(self.eng)
        for c1, m1 in self.iter_words():
            for c2, m2 in other.iter_words():
                _word_bracket(out, c1 * c2, m1, m2)
        for c1, m1 in self.iter_words():
            for sp, L, R, pR in other.series_terms():
                _mode_series_bracket(out, c1, m1, sp, L, R, pR, sign=1)
        for c2, m2 in other.iter_words():
            for sp, L, R, pR in self.series_terms():
                _mode_series_bracket(out, c2, m2, sp, L, R, pR, sign=-1)
        return out

    # -- action -------------------------------------------------------------------

    def act(self, v: State, max_weight=None) -> State:
        """Apply to a state: exact, then truncated to max_weight if given."""
        eng = self.eng
        out = v * self.const if self.const else ZERO
        for coeff, modes in self.iter_words():
            st = v
            for S, p in reversed(modes):
                st = eng.nth_product(S, p, st)
                if not st:
                    break
            if st:
                out = out + st * coeff
        wv = v.weight()
        for sp, L, R, pR in self.series_terms():
            smax = R.weight() + wv - pR   # R t^{pR+s} v = 0 for s >= smax
            for s in range(0, max(0, smax)):
                c = sp_eval(sp, s)
                if c is None or not c:
                    continue
                tmp = eng.nth_product(R, pR + s, v)
                if not tmp:
                    continue
                tmp = eng.nth_product(L, -1 - s, tmp)
                if tmp:
                    out = out + tmp * c
        if max_weight is not None:
            out = out.truncated(max_weight)
        return out


def mode_word(eng: VertexEngine, coeff, *modes) -> ModeExpression:
    out = ModeExpression(eng)
    out.add_word(coeff if not isinstance(coeff, int) else eng.level.of(coeff),
                 tuple(modes))
    return out


def mode_const(eng: VertexEngine, c) -> ModeExpression:
    return ModeExpression(eng, c if not isinstance(c, int) else eng.level.of(c))


def mode_series(eng: VertexEngine, spoly, L, R, pL, pR) -> ModeExpression:
    out = ModeExpression(eng)
    if isinstance(spoly, int):
        spoly = (eng.level.of(spoly),)
    out.add_series(spoly, L, R, pL, pR)
    return out


def mode_bracket(eng: VertexEngine, A, a, B, b) -> ModeExpression:
    """[(A) t^a, (B) t^b] = sum_r C(a, r) (A_(r) B) t^{a+b-r}."""
    out = ModeExpression(eng)
    _word_bracket(out, eng.level.one, ((A, a),), ((B, b),))
    return out


def bracket_expr(x: ModeExpression, y: ModeExpression) -> ModeExpression:
    return x.bracket(y)


def series_normalize(e: ModeExpression) -> ModeExpression:
    """Anchor every series at pL = -1 and merge; idempotent.

    Expressions built through add_series are already anchored, so this is
    a re-canonicalisation plus cleanup of empty entries.
    """
    out = ModeExpression(e.eng, e.const)
    for coeff, modes in e.iter_words():
        out.add_word(coeff, modes)
    for sp, L, R, pR in e.series_terms():
        out.add_series(sp, L, R, -1, pR)
    return out


def _word_bracket(out: ModeExpression, coeff, mx, my):
    """coeff * [mx, my] for mode words (all states even), expanded into out."""
    eng = out.eng
    if not coeff:
        return
    if len(mx) == 1 and len(my) == 1:
        (A, a), (B, b) = mx[0], my[0]
        for r in range(0, A.weight() + B.weight()):
            cb = gen_binomial(a, r)
            if not cb:
                continue
            st = eng.nth_product(A, r, B)
            if st:
                out.add_word(coeff * eng.level.of(cb), ((st, a + b - r),))
        return
    if len(mx) > 1:
        head, rest = mx[:1], mx[1:]
        _compose(out, coeff, head, _bracket_of(eng, rest, my), ())
        _compose(out, coeff, (), _bracket_of(eng, head, my), rest)
        return
    head, rest = my[:1], my[1:]
    _compose(out, coeff, (), _bracket_of(eng, mx, head), rest)
    _compose(out, coeff, head, _bracket_of(eng, mx, rest), ())


def _bracket_of(eng, mx, my) -> ModeExpression:
    inner = ModeExpression(eng)
    _word_bracket(inner, eng.level.one, mx, my)
    return inner


def _compose(out: ModeExpression, coeff, pre, inner: ModeExpression, post):
    if inner.const:
        out.add_word(coeff * inner.const, pre + post)
    for c2, m2 in inner.iter_words():
        out.add_word(coeff * c2, pre + m2 + post)


def _mode_series_bracket(out: ModeExpression, coeff, modes, sp, L, R, pR,
                         sign):
    """sign * coeff * [mode word, sum_s c(s) L t^{-1-s} R t^{pR+s}]."""
    eng = out.eng
    lvl = eng.level
    if len(modes) != 1:
        raise UseOracleError("bracket of a multi-mode word against a series"
                             " has no symbolic form; use the action oracle")
    (A, a) = modes[0]
    if sign < 0:
        coeff = -coeff
    pL = -1
    # [A t^a, L t^{pL-s}] R t^{pR+s}: binomial C(a, r) is constant in s
    for r in range(0, A.weight() + L.weight()):
        cb = gen_binomial(a, r)
        if not cb:
            continue
        st = eng.nth_product(A, r, L)
        if not st:
            continue
        cbs = lvl.of(cb)
        terms = st.terms
        if len(terms) == 1 and VACUUM_MONO in terms:
            # (c0|0>) t^{a+pL-r-s} fires only at s0 = a + pL - r + 1
            s0 = a + pL - r + 1
            if s0 >= 0:
                c = sp_eval(sp, s0)
                if c is not None and c:
                    out.add_word(coeff * cbs * terms[VACUUM_MONO] * c,
                                 ((R, pR + s0),))
            continue
        out.add_series(sp_scale(sp, coeff * cbs), st, R, a + pL - r, pR)
    # L t^{pL-s} [A t^a, R t^{pR+s}]
    for r in range(0, A.weight() + R.weight()):
        cb = gen_binomial(a, r)
        if not cb:
            continue
        st = eng.nth_product(A, r, R)
        if not st:
            continue
        cbs = lvl.of(cb)
        terms = st.terms
        if len(terms) == 1 and VACUUM_MONO in terms:
            s0 = r - a - pR - 1
            if s0 >= 0:
                c = sp_eval(sp, s0)
                if c is not None and c:
                    out.add_word(coeff * cbs * terms[VACUUM_MONO] * c,
                                 ((L, pL - s0),))
            continue
        out.add_series(sp_scale(sp, coeff * cbs), L, st, pL, a + pR - r)


def act(e: ModeExpression, v: State, D: int) -> State:
    """Spec surface: apply an expression and truncate to weight <= D."""
    return e.act(v, D)


def act_commutator(x: ModeExpression, y: ModeExpression, v: State,
                   max_weight=None) -> State:
    """[x, y] v evaluated through exact intermediate actions."""
    out = x.act(y.act(v)) - y.act(x.act(v))
    if max_weight is not None:
        out = out.truncated(max_weight)
    return out


def _basis_iter(eng: VertexEngine, D, gids, basis):
    """Yield monomials of weight 0..D per the basis policy, vacuum first."""
    yield VACUUM_MONO
    if basis == "full":
        for w in range(1, D + 1):
            yield from eng.basis_monomials(w, gids=gids)
        return
    kind = basis[0]
    if kind == "factors":
        rmax = basis[1]
        for w in range(1, D + 1):
            yield from eng.basis_monomials(w, gids=gids, max_factors=rmax)
        return
    if kind == "sample":
        per_weight, seed = basis[1], basis[2]
        rng = random.Random(seed)
        for w in range(1, D + 1):
            seen = set()
            for _ in range(per_weight):
                mono = eng.random_basis_monomial(rng, w, gids=gids)
                if mono not in seen:
                    seen.add(mono)
                    yield mono
        return
    raise ValueError(f"unknown basis policy {basis!r}")


def is_zero_oracle(e, D: int, gids=None, basis="full",
                   commutator_with=None) -> Verdict:
    """Decide whether an expression acts as zero up to weight D.

    `e` is a ModeExpression (the k treatment is fixed by the engine it was
    built over: symbolic engines give exact-in-Q(k) verdicts, specialised
    engines give verdicts at that rational k).  With `commutator_with`,
    the tested operator is the commutator [e, commutator_with] evaluated
    through exact intermediate actions (the series-series case).
    """
    eng = e.eng
    lvl = eng.level
    checked = 0
    for mono in _basis_iter(eng, D, gids, basis):
        v = State({mono: lvl.one})
        if commutator_with is None:
            got = e.act(v, D)
        else:
            got = act_commutator(e, commutator_with, v, D)
        checked += 1
        if got:
            return Verdict(False, D, checked, witness=mono,
                           witness_repr=eng.format_state(
                               State({mono: lvl.one}), 3))
    return Verdict(True, D, checked)

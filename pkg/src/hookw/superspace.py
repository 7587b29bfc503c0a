"""Finite-dimensional input data for the hook-type reduction.

gl(m+n) is laid out in two column blocks: indices 1..m form column 1 and
m+1..m+n form column 2, with row(i) = i for column 1 and i-n for column 2
(so column 2 carries rows m-n+1..m).  hat/tilde move an index one column
right/left at fixed row and are partial: formulas consuming them simply
drop the absent terms.

On top of gl(m+n) sit the block lower-triangular subalgebra b
(col(i) >= col(j)), the superalgebra a = b (+) span{psi_{i,j}:
col(i) > col(j)} with odd generators psi, the invariant forms kappa and
kappa~ carrying alpha1 = k+n and alpha2 = k+m, and the hook nilpotent
f = sum e_{j,j-n} of Jordan type (2^n, 1^{m-n}).

The same container (:class:`Algebra`) also hosts the gl(n) current algebra
used by the evaluation-map suite, with invariant form
c*delta_{i,q}delta_{p,j} + delta_{p,q}delta_{i,j}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .scalars import Level, Rational

EVEN = 0
ODD = 1


class ConfigError(ValueError):
    """Invalid (m, n) pair."""


@dataclass(frozen=True)
class Config:
    m: int
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ConfigError(f"n >= 3 is required, got n={self.n}")
        if self.m <= self.n:
            raise ConfigError(f"m > n is required, got m={self.m}, n={self.n}")

    @property
    def size(self):
        return self.m + self.n


class IndexInfo(NamedTuple):
    col: int
    row: int
    hat: int | None
    tilde: int | None


def col(cfg: Config, i: int) -> int:
    return 1 if i <= cfg.m else 2


def row(cfg: Config, i: int) -> int:
    return i if i <= cfg.m else i - cfg.n


def hat(cfg: Config, i: int) -> int | None:
    # column-2 partner at the same row; column 2 only has rows m-n+1..m
    if i <= cfg.m and i > cfg.m - cfg.n:
        return i + cfg.n
    return None


def tilde(cfg: Config, i: int) -> int | None:
    if i > cfg.m:
        return i - cfg.n
    return None


def index_maps(cfg: Config, i: int) -> IndexInfo:
    if not 1 <= i <= cfg.size:
        raise IndexError(f"index {i} out of range 1..{cfg.size}")
    return IndexInfo(col(cfg, i), row(cfg, i), hat(cfg, i), tilde(cfg, i))


@dataclass(frozen=True)
class BasisVector:
    """A generator e_{i,j} (even) or psi_{i,j} (odd) of the superalgebra a."""

    kind: str  # "e" | "psi"
    i: int
    j: int

    @property
    def parity(self) -> int:
        return EVEN if self.kind == "e" else ODD

    def __repr__(self):
        return f"{self.kind}[{self.i},{self.j}]"


def ee(cfg: Config, i: int, j: int) -> BasisVector:
    if not (1 <= i <= cfg.size and 1 <= j <= cfg.size):
        raise IndexError(f"e[{i},{j}] out of range for m+n={cfg.size}")
    if col(cfg, i) < col(cfg, j):
        raise ValueError(f"e[{i},{j}] is not in b: col(i) < col(j)")
    return BasisVector("e", i, j)


def psi(cfg: Config, i: int, j: int) -> BasisVector:
    if not (1 <= i <= cfg.size and 1 <= j <= cfg.size):
        raise IndexError(f"psi[{i},{j}] out of range for m+n={cfg.size}")
    if col(cfg, i) <= col(cfg, j):
        raise ValueError(f"psi[{i},{j}] needs col(i) > col(j)")
    return BasisVector("psi", i, j)


class LinComb:
    """A finite Q(k)-combination of basis vectors plus an optional central part."""

    __slots__ = ("terms", "central")

    def __init__(self, terms=None, central=0):
        self.terms = {}
        if terms:
            for v, c in terms.items():
                if c:
                    self.terms[v] = c
        self.central = central

    def add(self, v, c):
        if not c:
            return
        cur = self.terms.get(v)
        new = c if cur is None else cur + c
        if new:
            self.terms[v] = new
        else:
            del self.terms[v]

    def __iter__(self):
        return iter(self.terms.items())

    def __bool__(self):
        return bool(self.terms) or bool(self.central)

    def __eq__(self, other):
        return (self.terms == other.terms
                and self.central == other.central)

    def __repr__(self):
        parts = [f"{c}*{v}" for v, c in sorted(
            self.terms.items(), key=lambda t: (t[0].kind, t[0].i, t[0].j))]
        if self.central:
            parts.append(f"{self.central}*1")
        return " + ".join(parts) if parts else "0"


def gl_bracket(x: BasisVector, y: BasisVector) -> LinComb:
    """[e_{i,j}, e_{p,q}] in gl, without any block membership checks."""
    out = LinComb()
    if x.j == y.i:
        out.add(BasisVector("e", x.i, y.j), 1)
    if y.j == x.i:
        out.add(BasisVector("e", y.i, x.j), -1)
    return out


def super_bracket(cfg: Config, x: BasisVector, y: BasisVector) -> LinComb:
    """The Lie super-bracket of a; results are always inside a again."""
    out = LinComb()
    if x.kind == "e" and y.kind == "e":
        if x.j == y.i:
            out.add(ee(cfg, x.i, y.j), 1)
        if y.j == x.i:
            out.add(ee(cfg, y.i, x.j), -1)
    elif x.kind == "e" and y.kind == "psi":
        # [e_{i,j}, psi_{p,q}] = delta_{j,p} psi_{i,q} - delta_{i,q} psi_{p,j}
        if x.j == y.i:
            out.add(psi(cfg, x.i, y.j), 1)
        if x.i == y.j:
            out.add(psi(cfg, y.i, x.j), -1)
    elif x.kind == "psi" and y.kind == "e":
        inner = super_bracket(cfg, y, x)
        for v, c in inner:
            out.add(v, -c)
    # psi,psi -> 0
    return out


def form(cfg: Config, which: str, x: BasisVector, y: BasisVector, level: Level):
    """Invariant bilinear forms: inner_g on gl(m+n), kappa on b, kappa~ on a."""
    if which == "kappa_tilde":
        if x.kind == "psi" or y.kind == "psi":
            return level.zero
        which = "kappa"
    if x.kind == "psi" or y.kind == "psi":
        raise ValueError(f"form {which!r} is only defined on even vectors")
    i, j, p, q = x.i, x.j, y.i, y.j
    d_iq_pj = 1 if (i == q and p == j) else 0
    d_ij_pq = 1 if (i == j and p == q) else 0
    if which == "inner_g":
        return level.k * d_iq_pj + level.of(d_ij_pq)
    if which == "kappa":
        # vanishes unless both vectors sit in one diagonal block; inside a
        # block it is alpha_block * trace form + tr (x) tr
        m = cfg.m
        if max(i, j, p, q) <= m:
            lead = level.alpha1
        elif min(i, j, p, q) > m:
            lead = level.alpha2
        else:
            return level.zero
        return lead * d_iq_pj + level.of(d_ij_pq)
    raise ValueError(f"unknown form {which!r}")


def nilpotent_f(cfg: Config) -> LinComb:
    out = LinComb()
    for j in range(cfg.m + 1, cfg.size + 1):
        out.add(ee(cfg, j, j - cfg.n), 1)
    return out


def _f_matrix(cfg: Config):
    N = cfg.size
    mat = [[0] * N for _ in range(N)]
    for j in range(cfg.m + 1, N + 1):
        mat[j - 1][j - cfg.n - 1] = 1
    return mat


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)]


def _mat_rank(mat):
    # Gaussian elimination over exact rationals
    rows = [[Rational(c) for c in r] for r in mat]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def jordan_type(cfg: Config) -> tuple:
    """Jordan block sizes of f, from the ranks of its powers."""
    N = cfg.size
    mat = _f_matrix(cfg)
    ranks = [N]
    cur = [[1 if i == j else 0 for j in range(N)] for i in range(N)]
    while True:
        cur = _mat_mul(cur, mat)
        rk = _mat_rank(cur)
        ranks.append(rk)
        if rk == 0:
            break
    # number of blocks of size >= s is rank(f^{s-1}) - rank(f^s)
    blocks = []
    for s in range(1, len(ranks)):
        count_ge = ranks[s - 1] - ranks[s]
        blocks.append(count_ge)
    sizes = []
    for s in range(len(blocks), 0, -1):
        exact = blocks[s - 1] - (blocks[s] if s < len(blocks) else 0)
        sizes.extend([s] * exact)
    return tuple(sorted(sizes, reverse=True))


def f_power_is_zero(cfg: Config, power: int) -> bool:
    mat = _f_matrix(cfg)
    cur = mat
    for _ in range(power - 1):
        cur = _mat_mul(cur, mat)
    return all(not c for r in cur for c in r)


def f_rank(cfg: Config) -> int:
    return _mat_rank(_f_matrix(cfg))


def centralizer_basis(cfg: Config) -> list[LinComb]:
    """Kernel of ad(f) on all of gl(m+n), by exact linear algebra.

    This is the independent census oracle: it never looks at the W-generator
    index formulas.
    """
    N = cfg.size
    fterms = [(j, j - cfg.n) for j in range(cfg.m + 1, N + 1)]
    # unknowns x_{pq} indexed by (p,q), equation coeffs for [f, x] = 0
    idx = {(p, q): p * N + q for p in range(N) for q in range(N)}
    rows = {}

    def add_entry(eq, var, coeff):
        rows.setdefault(eq, {})[var] = rows.setdefault(eq, {}).get(var, 0) + coeff

    for (a1, b1) in ((a - 1, b - 1) for a, b in fterms):
        for (p, q), v in idx.items():
            # [e_{a,b}, e_{p,q}] = delta_{b,p} e_{a,q} - delta_{q,a} e_{p,b}
            if b1 == p:
                add_entry(idx[(a1, q)], v, 1)
            if q == a1:
                add_entry(idx[(p, b1)], v, -1)
    # assemble dense matrix (N^2 x N^2) and compute kernel
    dim = N * N
    mat = [[Rational(0)] * dim for _ in range(dim)]
    for eq, entries in rows.items():
        for var, c in entries.items():
            mat[eq][var] += c
    # row reduce
    pivots = []
    r = 0
    for c in range(dim):
        piv = next((i for i in range(r, dim) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(dim):
            if i != r and mat[i][c]:
                fct = mat[i][c]
                mat[i] = [x - fct * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(dim) if c not in set(pivots)]
    basis = []
    for fv in free:
        vec = [Rational(0)] * dim
        vec[fv] = Rational(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -mat[ri][fv]
        comb = LinComb()
        for (p, q), v in idx.items():
            if vec[v]:
                comb.add(BasisVector("e", p + 1, q + 1), vec[v])
        basis.append(comb)
    return basis


def centralizer_dim_from_partition(cfg: Config) -> int:
    parts = [2] * cfg.n + [1] * (cfg.m - cfg.n)
    return sum(min(a, b) for a in parts for b in parts)


# -- int-indexed structure tables for the vertex engine ----------------------

class Algebra:
    """Indexed structure constants and invariant form of a current algebra.

    Generators are consecutive ints whose natural order realises the PBW
    tie-break (kind, then (i, j) lexicographic).  Bracket entries are integer
    structure constants; the form table carries the level scalars.
    """

    __slots__ = ("name", "cfg", "level", "dim", "parity", "labels", "gid",
                 "bracket_table", "form_table", "even_gids")

    def __init__(self, name, cfg, level, gens, bracket_fn, form_fn):
        self.name = name
        self.cfg = cfg
        self.level = level
        self.dim = len(gens)
        self.labels = list(gens)
        self.gid = {v: g for g, v in enumerate(gens)}
        self.parity = tuple(v.parity for v in gens)
        self.even_gids = tuple(g for g, v in enumerate(gens) if v.parity == EVEN)
        bt = {}
        ft = {}
        for gx, x in enumerate(gens):
            for gy, y in enumerate(gens):
                br = bracket_fn(x, y)
                entries = tuple((self.gid[v], c) for v, c in br if c)
                if entries:
                    bt[(gx, gy)] = entries
                fv = form_fn(x, y)
                if fv:
                    ft[(gx, gy)] = fv
        self.bracket_table = bt
        self.form_table = ft

    def bracket(self, gx, gy):
        return self.bracket_table.get((gx, gy), ())

    def form(self, gx, gy):
        return self.form_table.get((gx, gy))

    def label(self, g):
        return self.labels[g]

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim})"


def hook_superalgebra(cfg: Config, level: Level) -> Algebra:
    """The superalgebra a with the form kappa~ (b sits inside as the evens)."""
    gens = []
    N = cfg.size
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if col(cfg, i) >= col(cfg, j):
                gens.append(BasisVector("e", i, j))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if col(cfg, i) > col(cfg, j):
                gens.append(BasisVector("psi", i, j))

    def br(x, y):
        return super_bracket(cfg, x, y)

    def fm(x, y):
        if x.kind == "psi" or y.kind == "psi":
            return level.zero
        return form(cfg, "kappa_tilde", x, y, level)

    return Algebra("a", cfg, level, gens, br, fm)


def gl_current_algebra(n: int, c, level: Level) -> Algebra:
    """gl(n) with invariant form c*delta_{iq}delta_{pj} + delta_{pq}delta_{ij}.

    The vacuum module of this current algebra realises the completed
    U(gl(n)-hat) at central charges (c, z=1) used by the evaluation map.
    """
    gens = [BasisVector("e", i, j)
            for i in range(1, n + 1) for j in range(1, n + 1)]

    def br(x, y):
        out = LinComb()
        if x.j == y.i:
            out.add(BasisVector("e", x.i, y.j), 1)
        if y.j == x.i:
            out.add(BasisVector("e", y.i, x.j), -1)
        return out

    def fm(x, y):
        d1 = 1 if (x.i == y.j and y.i == x.j) else 0
        d2 = 1 if (x.i == x.j and y.i == y.j) else 0
        return c * d1 + level.of(d2)

    return Algebra(f"gl({n})", None, level, gens, br, fm)

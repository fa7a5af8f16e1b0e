"""Automorphism families of R0..R3, the automorphism test, and enumeration oracles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import fpspace, linalg
from .algebra import Algebra, bracket
from .catalog import MIN_N
from .errors import BudgetExceeded, DimensionMismatch, FieldTooSmall, InvalidParams, NTooSmall
from .scalars import Field

DEFAULT_BUDGET = 10**8

PARAM_NAMES = {
    "r0": ("alpha", "beta"),
    "r1": ("alpha", "beta", "gamma"),
    "r2": ("alpha", "beta", "gamma", "delta"),
    "r3": ("alpha", "beta", "gamma"),
}
# parameters that must be nonzero for the tuple to be admissible
NONZERO = {"r0": ("beta",), "r1": ("alpha", "beta"), "r2": ("alpha", "gamma"), "r3": ("alpha", "gamma")}
SHORT = {"a": "alpha", "b": "beta", "c": "gamma", "g": "gamma", "d": "delta"}


@dataclass(frozen=True)
class LinearMap:
    """Square matrix stored by columns: ``cols[j]`` is the image of e_j."""

    cols: tuple
    field: Field

    @classmethod
    def from_columns(cls, cols, field):
        cols = tuple(tuple(field(x) for x in c) for c in cols)
        if any(len(c) != len(cols) for c in cols):
            raise DimensionMismatch("linear map must be square")
        return cls(cols, field)

    @classmethod
    def from_rows(cls, rows, field):
        return cls.from_columns(list(zip(*rows)), field)

    @classmethod
    def identity(cls, dim, field):
        return cls.from_rows(linalg.identity(dim, field), field)

    @classmethod
    def zero(cls, dim, field):
        return cls.from_columns([[0] * dim] * dim, field)

    @property
    def dim(self) -> int:
        return len(self.cols)

    def rows(self):
        return [list(r) for r in zip(*self.cols)]

    def entry(self, row, col):
        return self.cols[col][row]

    def __call__(self, v):
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} for a {self.dim}x{self.dim} map")
        out = [self.field.zero] * self.dim
        for vj, col in zip(v, self.cols):
            if vj:
                out = [a + vj * b for a, b in zip(out, col)]
        return tuple(out)

    def det(self):
        return linalg.det(self.rows(), self.field)

    def as_ints(self) -> tuple:
        """Row-major residues (finite fields only), hashable."""
        return tuple(int(x) for r in self.rows() for x in r)


@dataclass(frozen=True)
class AutParams:
    family: str
    alpha: object = None
    beta: object = None
    gamma: object = None
    delta: object = None

    @classmethod
    def of(cls, family, *values, **named):
        family = family.lower()
        names = PARAM_NAMES[family]
        if len(values) > len(names):
            raise InvalidParams(f"{family} takes {len(names)} parameters")
        kw = dict(zip(names, values))
        for k, v in named.items():
            k = SHORT.get(k, k)
            if k not in names:
                raise InvalidParams(f"{family} has no parameter {k!r}")
            kw[k] = v
        missing = [nm for nm in names if kw.get(nm) is None]
        if missing:
            raise InvalidParams(f"missing parameters for {family}: {', '.join(missing)}")
        return cls(family, **kw)

    @property
    def names(self):
        return PARAM_NAMES[self.family]

    def values(self) -> tuple:
        return tuple(getattr(self, nm) for nm in self.names)

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values()))

    def in_field(self, field: Field) -> "AutParams":
        return AutParams(self.family, **{k: field(v) for k, v in self.as_dict().items()})

    def is_admissible(self) -> bool:
        return all(getattr(self, nm) for nm in NONZERO[self.family])

    def validate(self):
        bad = [nm for nm in NONZERO[self.family] if not getattr(self, nm)]
        if bad:
            raise InvalidParams(f"{self.family} automorphisms need {' and '.join(bad)} nonzero")
        return self


def _prep(family, n, params, field, check):
    if n < MIN_N[family]:
        raise NTooSmall(f"{family.upper()} needs n >= {MIN_N[family]}")
    if field.is_finite and field.p <= n:
        raise FieldTooSmall(f"factorials up to {n}! need p > {n}")
    if isinstance(params, AutParams):
        if params.family != family:
            raise InvalidParams(f"parameters for {params.family} passed to {family}")
    else:
        params = AutParams.of(family, *params)
    params = params.in_field(field)
    if check:
        params.validate()
    return params


def aut_r0(n, params, field, check=True) -> LinearMap:
    """phi(e_i) = sum_{j>=i} alpha^(j-i) beta^i / (j-i)! e_j on R0(n)."""
    P = _prep("r0", n, params, field, check)
    a, b = P.alpha, P.beta
    d = n + 1
    cols = []
    for i in range(d):
        col = [field.zero] * d
        for j in range(i, d):
            col[j] = a ** (j - i) * b ** i / field.factorial(j - i)
        cols.append(tuple(col))
    return LinearMap(tuple(cols), field)


def aut_r1(n, params, field, check=True) -> LinearMap:
    P = _prep("r1", n, params, field, check)
    a, b, g = P.alpha, P.beta, P.gamma
    d, x, y = n + 2, n, n + 1
    cols = [[field.zero] * d for _ in range(d)]
    cols[0][0] = a
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            cols[i - 1][j - 1] = (-1) ** (j - i) * a ** (i - 2) * b * g ** (j - i) / field.factorial(j - i)
    cols[x][0] = g
    cols[x][x] = field.one
    cols[y][y] = field.one
    return LinearMap(tuple(map(tuple, cols)), field)


def _aut_r23(family, n, params, field, check):
    P = _prep(family, n, params, field, check)
    a, b, g = P.alpha, P.beta, P.gamma
    d, x, y = n + 2, n, n + 1
    cols = [[field.zero] * d for _ in range(d)]
    cols[0][0] = a
    for i in range(3, n + 1):
        cols[0][i - 1] = (-1) ** i * a * b ** (i - 2) / field.factorial(i - 2)
    cols[1][1] = g
    for i in range(3, n + 1):
        for j in range(i, n + 1):
            cols[i - 1][j - 1] = (-1) ** (j - i) * a ** (i - 1) * b ** (j - i) / field.factorial(j - i)
    cols[x][0] = b
    for i in range(3, n + 1):
        cols[x][i - 1] = (-1) ** i * b ** (i - 1) / field.factorial(i - 1)
    cols[x][x] = field.one
    if family == "r2":
        cols[y][1] = P.delta
    cols[y][y] = field.one
    return LinearMap(tuple(map(tuple, cols)), field)


def aut_r2(n, params, field, check=True) -> LinearMap:
    return _aut_r23("r2", n, params, field, check)


def aut_r3(n, params, field, check=True) -> LinearMap:
    return _aut_r23("r3", n, params, field, check)


AUT_BUILDERS = {"r0": aut_r0, "r1": aut_r1, "r2": aut_r2, "r3": aut_r3}


def aut_family(family, n, params, field, check=True) -> LinearMap:
    return AUT_BUILDERS[family.lower()](n, params, field, check)


@dataclass(frozen=True)
class AutVerdict:
    kind: str  # "yes" | "not_bijective" | "not_homomorphic"
    pair: tuple = None  # first failing basis pair (lexicographic)
    failures: tuple = ()

    def __bool__(self):
        return self.kind == "yes"


def homomorphism_failures(A: Algebra, T: LinearMap, first_only=False):
    if T.dim != A.dim:
        raise DimensionMismatch(f"{T.dim}x{T.dim} map on a {A.dim}-dimensional algebra")
    img = T.cols
    bad = []
    for i, j in itertools.product(range(A.dim), repeat=2):
        col = A.table.get((i, j), {})
        lhs = [A.field.zero] * A.dim
        for k, c in col.items():
            lhs = [u + c * v for u, v in zip(lhs, img[k])]
        if tuple(lhs) != bracket(A, img[i], img[j]):
            bad.append((i, j))
            if first_only:
                break
    return bad


def is_automorphism(A: Algebra, T: LinearMap) -> AutVerdict:
    """Bijective and bracket-preserving on every basis pair."""
    if T.dim != A.dim:
        raise DimensionMismatch(f"{T.dim}x{T.dim} map on a {A.dim}-dimensional algebra")
    if not T.det():
        return AutVerdict("not_bijective")
    bad = homomorphism_failures(A, T)
    if bad:
        return AutVerdict("not_homomorphic", bad[0], tuple(bad))
    return AutVerdict("yes")


def compose(T1: LinearMap, T2: LinearMap) -> LinearMap:
    """The map x -> T1(T2(x)), i.e. the matrix product T1 T2."""
    if T1.dim != T2.dim:
        raise DimensionMismatch("cannot compose maps of different sizes")
    return LinearMap(tuple(T1(c) for c in T2.cols), T1.field)


def aut_compose_params_r0(p1: AutParams, p2: AutParams) -> AutParams:
    """Parameters of compose(aut_r0(p1), aut_r0(p2)).

    With phi = exp(alpha S) D_beta (S the index shift, D_beta = diag(beta^i)),
    D_beta S = beta S D_beta gives alpha = alpha1 + beta1 alpha2, beta = beta1 beta2.
    """
    return AutParams("r0", p1.alpha + p1.beta * p2.alpha, p1.beta * p2.beta)


def admissible_params(family: str, field: Field):
    """All admissible parameter tuples over a finite field, in lexicographic order."""
    if not field.is_finite:
        raise ValueError("parameter enumeration needs a finite field")
    family = family.lower()
    names = PARAM_NAMES[family]
    elems = field.elements()
    for vals in itertools.product(elems, repeat=len(names)):
        P = AutParams(family, **dict(zip(names, vals)))
        if P.is_admissible():
            yield P


@dataclass(frozen=True)
class AutGroup:
    """All family automorphisms over F_p with parameters and stacked matrices."""

    family: str
    n: int
    field: Field
    params: tuple
    maps: tuple
    mats: np.ndarray  # (m, d, d) residues, mats[t, row, col]

    @property
    def dim(self):
        return self.mats.shape[1]

    def __len__(self):
        return len(self.params)

    def images(self, pts: np.ndarray) -> np.ndarray:
        """(m, P) codes of phi_t(x) for each map t and point row x."""
        p = self.field.p
        y = np.einsum("trc,pc->tpr", self.mats, pts) % p
        return y @ fpspace.weights(p, self.dim)

    def fit(self, x, v) -> list:
        """Indices t with phi_t(x) = v."""
        p = self.field.p
        xv = np.array([int(c) for c in x], dtype=np.int64)
        vv = np.array([int(c) % p for c in v], dtype=np.int64)
        img = (self.mats @ xv) % p
        return list(np.flatnonzero((img == vv).all(axis=1)))


@lru_cache(maxsize=64)
def aut_group(family: str, n: int, field: Field) -> AutGroup:
    family = family.lower()
    params, maps = [], []
    for P in admissible_params(family, field):
        params.append(P)
        maps.append(aut_family(family, n, P, field))
    mats = np.array([[[int(x) for x in r] for r in m.rows()] for m in maps], dtype=np.int64)
    return AutGroup(family, n, field, tuple(params), tuple(maps), mats)


def enumerate_aut_parametrized(family: str, n: int, field: Field) -> frozenset:
    """{aut_family(n, P) : P admissible} as a set of LinearMaps."""
    return frozenset(aut_group(family, n, field).maps)


def enumerate_aut_bruteforce(A: Algebra, budget=DEFAULT_BUDGET, chunk=1 << 16) -> frozenset:
    """Every invertible homomorphism of A over F_p, by exhaustive column search.

    Columns are fixed in index order; the constraint for basis pair (a, b) is
    applied as soon as columns a, b and the support of [e_a, e_b] are all fixed.
    """
    F = A.field
    if not F.is_finite:
        raise ValueError("brute-force enumeration needs a finite field")
    p, d = F.p, A.dim
    if budget is not None and p ** (d * d) > budget:
        raise BudgetExceeded(f"{p}^{d * d} candidate matrices exceed the budget {budget}")
    c = fpspace.structure_tensor(A)
    ready = {}
    for a, b in itertools.product(range(d), repeat=2):
        supp = list(np.flatnonzero(c[a, b]))
        ready.setdefault(max([a, b] + supp), []).append((a, b))
    allcols = fpspace.points(p, d)
    cand = np.zeros((1, 0, d), dtype=np.int64)
    for level in range(d):
        pieces = []
        for start in range(0, len(cand), max(1, chunk // len(allcols))):
            block = cand[start:start + max(1, chunk // len(allcols))]
            nb = len(block)
            new = np.concatenate(
                [np.repeat(block, len(allcols), axis=0), np.tile(allcols, (nb, 1))[:, None, :]], axis=1
            )
            for a, b in ready.get(level, []):
                lhs = np.einsum("l,nlk->nk", c[a, b, : level + 1], new) % p
                rhs = np.einsum("ni,nj,ijk->nk", new[:, a, :], new[:, b, :], c) % p
                new = new[(lhs == rhs).all(axis=1)]
            pieces.append(new)
        cand = np.concatenate(pieces) if pieces else np.zeros((0, level + 1, d), dtype=np.int64)
    out = set()
    for m in cand:
        rows = m.T  # m holds columns
        if fpspace.det_mod_p(rows, p):
            out.add(LinearMap.from_rows(rows.tolist(), F))
    return frozenset(out)

"""Exhaustive finite-field oracles for local and 2-local automorphisms.

Nothing here uses the probe proofs.  Orbits are computed by applying every
automorphism to every point, and the checks are direct transcriptions of the
definitions quantified over all of F_p^d.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .. import fpspace
from ..automorphisms import AutGroup, AutParams, LinearMap, aut_group
from ..errors import BudgetExceeded, DimensionMismatch, InvalidParams
from ..scalars import PrimeField

SCAN_BUDGET = 10**8


def aut_matrices(aut, p: int) -> np.ndarray:
    """Stack an AutGroup or an iterable of LinearMaps as (m, d, d) residues."""
    if isinstance(aut, AutGroup):
        return aut.mats
    mats = [[[int(x) % p for x in r] for r in T.rows()] for T in sorted(aut, key=LinearMap.as_ints)]
    return np.array(mats, dtype=np.int64)


def apply_all(mats: np.ndarray, pts: np.ndarray, p: int) -> np.ndarray:
    """(m, P) codes of mats[t] @ pts[x]."""
    y = np.einsum("trc,pc->tpr", mats, pts) % p
    return y @ fpspace.weights(p, mats.shape[1])


@dataclass(frozen=True)
class OrbitIndex:
    """``member[x, y]`` is True iff code y lies in the orbit of code x."""

    p: int
    dim: int
    member: np.ndarray

    @classmethod
    def build(cls, aut, p: int, dim: int) -> "OrbitIndex":
        mats = aut_matrices(aut, p)
        if mats.shape[1:] != (dim, dim):
            raise DimensionMismatch("automorphisms do not match the algebra dimension")
        pts = fpspace.points(p, dim)
        P = len(pts)
        member = np.zeros((P, P), dtype=bool)
        if len(mats):
            img = apply_all(mats, pts, p)
            member[np.broadcast_to(np.arange(P), img.shape), img] = True
        return cls(p, dim, member)

    def orbit(self, code: int) -> np.ndarray:
        return np.flatnonzero(self.member[code])


@dataclass(frozen=True)
class LocalCheck:
    ok: bool
    witness: tuple = None  # first point (coordinates) whose image leaves its orbit

    def __bool__(self):
        return self.ok


def _field_p(A):
    if not A.field.is_finite:
        raise ValueError("exhaustive oracles need a finite field")
    return A.field.p


def is_local_automorphism_exhaustive(A, aut, phi: LinearMap, index: OrbitIndex = None, block=8192) -> LocalCheck:
    """Phi(x) lies in the orbit of x for every x in F_p^d; else the first failing x."""
    p, d = _field_p(A), A.dim
    if phi.dim != d:
        raise DimensionMismatch(f"{phi.dim}x{phi.dim} map on a {d}-dimensional algebra")
    pts = fpspace.points(p, d)
    M = np.array([[int(x) for x in r] for r in phi.rows()], dtype=np.int64)
    img = ((pts @ M.T) % p) @ fpspace.weights(p, d)
    if index is not None:
        ok = index.member[np.arange(len(pts)), img]
    else:
        # no P x P table: compare against every automorphism image, blockwise
        mats = aut_matrices(aut, p)
        ok = np.zeros(len(pts), dtype=bool)
        for s in range(0, len(pts), block):
            ok[s:s + block] = (apply_all(mats, pts[s:s + block], p) == img[None, s:s + block]).any(axis=0)
    if ok.all():
        return LocalCheck(True)
    x = int(np.argmin(ok))
    return LocalCheck(False, tuple(int(c) for c in pts[x]))


# ---- scan of every linear map -------------------------------------------

def _scan_block(args):
    member, p, d, start, stop = args
    pts = fpspace.points(p, d)
    P = len(pts)
    w = fpspace.weights(p, d)
    t = np.arange(start, stop, dtype=np.int64)
    codes = np.empty((len(t), d), dtype=np.int64)
    for j in range(d - 1, -1, -1):
        t, codes[:, j] = np.divmod(t, P)
    M = pts[codes].transpose(0, 2, 1)  # M[b, row, col]
    img = ((M @ pts.T) % p).transpose(0, 2, 1) @ w  # (B, P)
    ok = member[np.arange(P), img].all(axis=1)
    return [int(x) for x in np.flatnonzero(ok) + start]


def _worker_count(workers):
    if workers is None:
        env = os.environ.get("LEIBNIZ_WORKERS")
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


def all_local_linear_maps(A, aut, workers=None, budget=SCAN_BUDGET, block=4096) -> frozenset:
    """Every linear map on F_p^d passing the exhaustive local test.

    All p^(d*d) matrices are examined; matrix number t has column j equal to
    the point whose code is the j-th base-p^d digit of t.  Blocks of matrices
    are shared out over ``workers`` processes and merged as a set.
    """
    p, d = _field_p(A), A.dim
    total = p ** (d * d)
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} linear maps exceed the budget {budget}")
    index = OrbitIndex.build(aut, p, d)
    jobs = [(index.member, p, d, s, min(s + block, total)) for s in range(0, total, block)]
    k = _worker_count(workers)
    if k == 1:
        hits = [h for job in jobs for h in _scan_block(job)]
    else:
        with ProcessPoolExecutor(max_workers=k) as ex:
            hits = [h for part in ex.map(_scan_block, jobs, chunksize=8) for h in part]
    pts = fpspace.points(p, d)
    P = len(pts)
    F = A.field
    out = set()
    for t in hits:
        cols = []
        for _ in range(d):
            t, c = divmod(t, P)
            cols.append(pts[c].tolist())
        out.add(LinearMap.from_columns(cols[::-1], F))
    return frozenset(out)


# ---- function tables and 2-locality -------------------------------------

@dataclass(frozen=True)
class FunctionTable:
    """A total map F_p^d -> F_p^d stored as image codes in point order."""

    p: int
    dim: int
    codes: tuple

    def __post_init__(self):
        if len(self.codes) != self.p ** self.dim:
            raise DimensionMismatch(f"table needs {self.p ** self.dim} entries, got {len(self.codes)}")

    @classmethod
    def from_array(cls, p, dim, arr):
        return cls(p, dim, tuple(int(c) for c in arr))

    @classmethod
    def from_linear_map(cls, T: LinearMap):
        p, d = T.field.p, T.dim
        pts = fpspace.points(p, d)
        M = np.array([[int(x) for x in r] for r in T.rows()], dtype=np.int64)
        return cls.from_array(p, d, ((pts @ M.T) % p) @ fpspace.weights(p, d))

    @classmethod
    def from_callable(cls, f, p, dim):
        pts = fpspace.points(p, dim)
        return cls.from_array(p, dim, [fpspace.encode([int(c) for c in f(tuple(int(c) for c in x))], p) for x in pts])

    @property
    def field(self):
        return PrimeField(self.p)

    def array(self) -> np.ndarray:
        return np.array(self.codes, dtype=np.int64)

    def code_of(self, x) -> int:
        return int(fpspace.encode([int(c) for c in x], self.p))

    def __call__(self, x) -> tuple:
        return fpspace.decode(self.codes[self.code_of(x)], self.p, self.dim)

    def is_linear_map(self, T: LinearMap) -> bool:
        return self == FunctionTable.from_linear_map(T)


@dataclass(frozen=True)
class TwoLocalVerdict:
    ok: bool
    pair: tuple = None  # (x, y) as coordinate tuples

    def __bool__(self):
        return self.ok


def is_2local(A, aut, delta: FunctionTable, block=512) -> TwoLocalVerdict:
    """Every pair (x, y) has an automorphism agreeing with delta at x and y.

    Pairs are scanned in lexicographic order of (code x, code y); the first
    failing pair is reported.
    """
    p, d = _field_p(A), A.dim
    if (delta.p, delta.dim) != (p, d):
        raise DimensionMismatch("table does not match the algebra")
    mats = aut_matrices(aut, p)
    pts = fpspace.points(p, d)
    P = len(pts)
    if not len(mats):
        return TwoLocalVerdict(False, (tuple(int(c) for c in pts[0]),) * 2)
    match = (apply_all(mats, pts, p) == delta.array()[None, :]).astype(np.int32)  # (m, P)
    for s in range(0, P, block):
        both = match[:, s:s + block].T @ match  # (B, P) counts
        bad = np.argwhere(both == 0)
        if len(bad):
            x, y = bad[0]
            return TwoLocalVerdict(False, (tuple(int(c) for c in pts[s + x]), tuple(int(c) for c in pts[y])))
    return TwoLocalVerdict(True)


def pair_has_common_automorphism(maps, delta, x, y) -> bool:
    """Independent recheck of one pair by evaluating each LinearMap."""
    targets = [tuple(int(c) for c in delta(x)), tuple(int(c) for c in delta(y))]
    for T in maps:
        F = T.field
        got = [tuple(int(c) for c in T(tuple(F(c) for c in pt))) for pt in (x, y)]
        if got == targets:
            return True
    return False


# ---- patchworks ---------------------------------------------------------

@dataclass(frozen=True)
class PatchworkSpec:
    """Default parameters plus per-point overrides keyed by point code."""

    family: str
    n: int
    p: int
    default: AutParams
    overrides: dict

    def params_for(self, code: int) -> AutParams:
        return self.overrides.get(code, self.default)


def make_patchwork(spec: PatchworkSpec) -> FunctionTable:
    """The table x -> aut(params_x)(x)."""
    F = PrimeField(spec.p)
    G = aut_group(spec.family, spec.n, F)
    lookup = {P.in_field(F): t for t, P in enumerate(G.params)}
    d = G.dim
    pts = fpspace.points(spec.p, d)
    pick = np.empty(len(pts), dtype=np.int64)
    for code in range(len(pts)):
        P = spec.params_for(code)
        if P.family != spec.family:
            raise InvalidParams(f"parameters for {P.family} in a {spec.family} patchwork")
        Pf = P.in_field(F)
        if Pf not in lookup:
            raise InvalidParams(f"inadmissible parameters {P.as_dict()} at point {code}")
        pick[code] = lookup[Pf]
    img = np.einsum("prc,pc->pr", G.mats[pick], pts) % spec.p
    return FunctionTable.from_array(spec.p, d, img @ fpspace.weights(spec.p, d))

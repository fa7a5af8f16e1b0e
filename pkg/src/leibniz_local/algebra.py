"""Structure-constant Leibniz algebras.

An :class:`Algebra` stores ``[e_i, e_j] = sum_k c[i, j][k] e_k`` sparsely.
Vectors are tuples of field elements in basis order.  Subspaces are kept in
reduced row-echelon form so that equal subspaces compare equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from . import linalg
from .errors import DimensionMismatch, NotNilpotent
from .scalars import Field


@dataclass(frozen=True)
class Algebra:
    dim: int
    field: Field
    basis_names: tuple
    table: Mapping  # (i, j) -> {k: c}, zero coefficients omitted

    @classmethod
    def from_entries(cls, dim, field, entries, basis_names=None):
        """Build from ``(i, j, k, c)`` tuples; repeated entries are summed."""
        table = {}
        for i, j, k, c in entries:
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise DimensionMismatch(f"index {idx} outside 0..{dim - 1}")
            col = table.setdefault((i, j), {})
            col[k] = col.get(k, field.zero) + field(c)
        clean = {}
        for key, col in sorted(table.items()):
            col = {k: c for k, c in sorted(col.items()) if c}
            if col:
                clean[key] = col
        names = tuple(basis_names) if basis_names else tuple(f"e{i}" for i in range(dim))
        if len(names) != dim:
            raise DimensionMismatch("basis_names must have dim entries")
        return cls(dim, field, names, clean)

    def entries(self):
        """Nonzero structure constants as sorted ``(i, j, k, c)`` tuples."""
        return [(i, j, k, c) for (i, j), col in sorted(self.table.items()) for k, c in sorted(col.items())]

    def basis_vector(self, i: int):
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    def zero_vector(self):
        return (self.field.zero,) * self.dim

    def vector(self, coords):
        if len(coords) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(self.field(c) for c in coords)

    def index(self, name: str) -> int:
        return self.basis_names.index(name)


def _check_vec(A: Algebra, v):
    if len(v) != A.dim:
        raise DimensionMismatch(f"vector of length {len(v)} in algebra of dim {A.dim}")


def bracket(A: Algebra, x, y):
    _check_vec(A, x)
    _check_vec(A, y)
    out = [A.field.zero] * A.dim
    for (i, j), col in A.table.items():
        xi = x[i]
        if not xi:
            continue
        yj = y[j]
        if not yj:
            continue
        s = xi * yj
        for k, c in col.items():
            out[k] = out[k] + s * c
    return tuple(out)


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def scale(a, x):
    return tuple(a * b for b in x)


@dataclass(frozen=True)
class LeibnizViolation:
    triple: tuple
    lhs: tuple
    rhs: tuple


def check_leibniz(A: Algebra):
    """Check ``[[x,y],z] = [[x,z],y] + [x,[y,z]]`` on all basis triples.

    Returns ``None`` when the identity holds, else the lexicographically first
    violating triple with both sides.
    """
    E = [A.basis_vector(i) for i in range(A.dim)]
    for i, j, k in itertools.product(range(A.dim), repeat=3):
        lhs = bracket(A, bracket(A, E[i], E[j]), E[k])
        rhs = add(bracket(A, bracket(A, E[i], E[k]), E[j]), bracket(A, E[i], bracket(A, E[j], E[k])))
        if lhs != rhs:
            return LeibnizViolation((i, j, k), lhs, rhs)
    return None


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^dim held as its canonical RREF basis."""

    dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors, dim: int, field: Field):
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != dim:
                raise DimensionMismatch(f"vector of length {len(v)} in F^{dim}")
        basis, pivots = linalg.rref(vecs, field)
        return cls(dim, basis, pivots)

    @classmethod
    def coordinate(cls, indices, dim, field):
        """Span of the standard basis vectors with the given indices."""
        return cls.span([[field.one if k == i else field.zero for k in range(dim)] for i in sorted(indices)], dim, field)

    @classmethod
    def whole(cls, dim, field):
        return cls.coordinate(range(dim), dim, field)

    @classmethod
    def zero(cls, dim):
        return cls(dim, (), ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.rank

    def coordinates(self, v):
        """Coordinates of ``v`` in the RREF basis, or ``None`` if v is outside."""
        coeffs = [v[p] for p in self.pivots]
        if not self.basis:
            return [] if not any(v) else None
        recon = [sum((c * row[k] for c, row in zip(coeffs, self.basis)), start=v[0] * 0) for k in range(self.dim)]
        return coeffs if tuple(recon) == tuple(v) else None

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def plus(self, other: "Subspace", field: Field) -> "Subspace":
        return Subspace.span(list(self.basis) + list(other.basis), self.dim, field)


def subspace_product(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    """Span of all brackets ``[u, v]`` with u, v running over the bases."""
    if U.dim != A.dim or V.dim != A.dim:
        raise DimensionMismatch("subspace does not live in this algebra")
    prods = [bracket(A, u, v) for u in U.basis for v in V.basis]
    return Subspace.span(prods, A.dim, A.field)


@dataclass(frozen=True)
class SeriesReport:
    kind: str  # "derived" | "lower_central"
    dims: tuple  # dims[0] is the 1-based term L^(1) = L
    stabilized_at: int  # 1-based index of the last (stable or zero) term
    terminates_at_zero: bool
    terms: tuple = dc_field(default=(), compare=False, repr=False)

    @property
    def index(self):
        """Minimal 1-based s with the s-th term zero, or None."""
        return len(self.dims) if self.terminates_at_zero else None


def _series(A: Algebra, kind: str) -> SeriesReport:
    whole = Subspace.whole(A.dim, A.field)
    terms = [whole]
    while terms[-1].rank:
        cur = terms[-1]
        nxt = subspace_product(A, cur, cur) if kind == "derived" else subspace_product(A, cur, whole)
        if nxt == cur:
            break
        terms.append(nxt)
    dims = tuple(t.rank for t in terms)
    return SeriesReport(kind, dims, len(dims), dims[-1] == 0, tuple(terms))


def derived_series(A: Algebra) -> SeriesReport:
    return _series(A, "derived")


def lower_central_series(A: Algebra) -> SeriesReport:
    return _series(A, "lower_central")


def is_solvable(A: Algebra):
    """``(True, s)`` with s the index of solvability, or ``(False, None)``."""
    rep = derived_series(A)
    return rep.terminates_at_zero, rep.index


def is_nilpotent(A: Algebra):
    rep = lower_central_series(A)
    return rep.terminates_at_zero, rep.index


def _lc_dim(rep: SeriesReport, i: int) -> int:
    # dims past the recorded end repeat the last term
    return rep.dims[i - 1] if i <= len(rep.dims) else rep.dims[-1]


def is_null_filiform(A: Algebra) -> bool:
    n = A.dim
    rep = lower_central_series(A)
    return all(_lc_dim(rep, i) == n + 1 - i for i in range(1, n + 2))


def is_filiform(A: Algebra) -> bool:
    # only 2 <= i <= n is constrained
    n = A.dim
    rep = lower_central_series(A)
    return all(_lc_dim(rep, i) == n - i for i in range(2, n + 1))


def is_antisymmetric(A: Algebra) -> bool:
    for (i, j), col in A.table.items():
        if i == j or A.table.get((j, i), {}) != {k: -c for k, c in col.items()}:
            return False
    return True


def antisymmetry_witness(A: Algebra):
    """First basis pair (i, j) with ``[e_i,e_j] != -[e_j,e_i]``, or None."""
    E = [A.basis_vector(i) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(i, A.dim):
            if bracket(A, E[i], E[j]) != scale(-A.field.one, bracket(A, E[j], E[i])):
                return (i, j)
    return None


def restrict(A: Algebra, U: Subspace, names=None) -> Algebra:
    """Subalgebra structure on U, in U's RREF basis.

    Raises DimensionMismatch if U is not closed under the bracket.
    """
    entries = []
    for a, u in enumerate(U.basis):
        for b, v in enumerate(U.basis):
            w = bracket(A, u, v)
            coeffs = U.coordinates(w)
            if coeffs is None:
                raise DimensionMismatch("subspace is not closed under the bracket")
            entries.extend((a, b, k, c) for k, c in enumerate(coeffs) if c)
    if names is None:
        names = [A.basis_names[p] for p in U.pivots]
    return Algebra.from_entries(U.rank, A.field, entries, names)


def associated_graded(A: Algebra):
    """The graded algebra built on the layers ``L^i / L^(i+1)``.

    Returns ``(gr, layer_dims)``.  Basis vectors of gr are lifts of each layer,
    concatenated from the top layer down.
    """
    rep = lower_central_series(A)
    if not rep.terminates_at_zero:
        raise NotNilpotent("associated graded algebra needs a nilpotent input")
    F = A.field
    terms = rep.terms
    lifts = []  # (layer index starting at 1, vector)
    for i in range(len(terms) - 1):
        upper, lower = terms[i], terms[i + 1]
        cur = lower
        for row in upper.basis:
            if not cur.contains(row):
                lifts.append((i + 1, row))
                cur = Subspace.span(list(cur.basis) + [row], A.dim, F)
    layer_dims = [sum(1 for d, _ in lifts if d == i + 1) for i in range(len(terms) - 1)]
    # coordinates in the lifted basis: solve M c = w with M the lift columns
    cols = [v for _, v in lifts]
    aug_cache = {}

    def coords(w):
        key = w
        if key not in aug_cache:
            rows = [[cols[c][r] for c in range(len(cols))] + [w[r]] for r in range(A.dim)]
            red, piv = linalg.rref(rows, F)
            sol = [F.zero] * len(cols)
            for row, pc in zip(red, piv):
                sol[pc] = row[-1]
            aug_cache[key] = sol
        return aug_cache[key]

    entries = []
    for a, (da, u) in enumerate(lifts):
        for b, (db, v) in enumerate(lifts):
            w = bracket(A, u, v)
            if not any(w):
                continue
            c = coords(w)
            for k, (dk, _) in enumerate(lifts):
                if dk == da + db and c[k]:
                    entries.append((a, b, k, c[k]))
    names = [f"g{d}_{a}" for a, (d, _) in enumerate(lifts)]
    return Algebra.from_entries(len(lifts), F, entries, names), layer_dims


def same_table(A: Algebra, B: Algebra) -> bool:
    return A.dim == B.dim and A.field == B.field and A.entries() == B.entries()


def abelian(dim: int, field: Field) -> Algebra:
    return Algebra.from_entries(dim, field, [])

"""Builders for the solvable families R0..R3 and the null-filiform algebra NF.

Basis order (also the JSON/matrix index order):

* NF(n): e1..en
* R0(n): e0, e1, ..., en
* R1..R3(n): e1..en, x, y
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, Subspace
from .errors import FieldTooSmall, NTooSmall
from .scalars import Field

FAMILIES = ("nf", "r0", "r1", "r2", "r3")
MIN_N = {"nf": 1, "r0": 2, "r1": 4, "r2": 4, "r3": 4}


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    n: int
    algebra: Algebra
    nilradical: Subspace
    complement: Subspace
    nilradical_indices: tuple
    complement_indices: tuple
    basis_roles: dict

    def meta(self):
        """The ``"catalog"`` block of the algebra JSON."""
        return {
            "family": self.family,
            "n": self.n,
            "nilradical": list(self.nilradical_indices),
            "complement": list(self.complement_indices),
        }


def _check(family, n, field: Field):
    if n < MIN_N[family]:
        raise NTooSmall(f"{family.upper()} needs n >= {MIN_N[family]}, got {n}")
    if field.is_finite and field.p <= n:
        raise FieldTooSmall(f"{family.upper()}({n}) needs p > {n}, got p = {field.p}")


def _entry(family, n, field, entries, names, nil_idx, comp_idx, roles):
    A = Algebra.from_entries(len(names), field, entries, names)
    return CatalogEntry(
        family,
        n,
        A,
        Subspace.coordinate(nil_idx, A.dim, field),
        Subspace.coordinate(comp_idx, A.dim, field),
        tuple(nil_idx),
        tuple(comp_idx),
        roles,
    )


def build_nf(n: int, field: Field) -> CatalogEntry:
    _check("nf", n, field)
    entries = [(i - 1, 0, i, 1) for i in range(1, n)]
    names = [f"e{i}" for i in range(1, n + 1)]
    return _entry("nf", n, field, entries, names, range(n), [], {nm: "e" for nm in names})


def build_r0(n: int, field: Field) -> CatalogEntry:
    _check("r0", n, field)
    entries = [(i, 1, i + 1, 1) for i in range(0, n)]
    entries += [(i, 0, i, -i) for i in range(1, n + 1)]
    names = [f"e{i}" for i in range(n + 1)]
    return _entry("r0", n, field, entries, names, range(1, n + 1), [0], {nm: "e" for nm in names})


def _filiform_skeleton(n):
    """Index helpers for the (e1..en, x, y) basis."""
    e = lambda i: i - 1  # noqa: E731
    return e, n, n + 1


def build_r1(n: int, field: Field) -> CatalogEntry:
    _check("r1", n, field)
    e, x, y = _filiform_skeleton(n)
    entries = [(e(i), e(1), e(i + 1), 1) for i in range(2, n)]
    entries += [(e(1), x, e(1), 1), (x, e(1), e(1), -1)]
    entries += [(e(i), x, e(i), i - 1) for i in range(2, n + 1)]
    entries += [(e(i), y, e(i), 1) for i in range(2, n + 1)]
    return _filiform_entry("r1", n, field, entries)


def _r23_entries(n):
    e, x, y = _filiform_skeleton(n)
    entries = [(e(1), e(1), e(3), 1)]
    entries += [(e(i), e(1), e(i + 1), 1) for i in range(3, n)]
    entries += [(e(1), x, e(1), 1), (x, e(1), e(1), -1)]
    entries += [(e(i), x, e(i), i - 1) for i in range(3, n + 1)]
    entries += [(e(2), y, e(2), 1)]
    return entries


def build_r2(n: int, field: Field) -> CatalogEntry:
    _check("r2", n, field)
    e, x, y = _filiform_skeleton(n)
    return _filiform_entry("r2", n, field, _r23_entries(n) + [(y, e(2), e(2), -1)])


def build_r3(n: int, field: Field) -> CatalogEntry:
    _check("r3", n, field)
    return _filiform_entry("r3", n, field, _r23_entries(n))


def _filiform_entry(family, n, field, entries):
    names = [f"e{i}" for i in range(1, n + 1)] + ["x", "y"]
    roles = {nm: "e" for nm in names[:n]}
    roles.update(x="x", y="y")
    return _entry(family, n, field, entries, names, range(n), [n, n + 1], roles)


BUILDERS = {"nf": build_nf, "r0": build_r0, "r1": build_r1, "r2": build_r2, "r3": build_r3}


def build(family: str, n: int, field: Field) -> CatalogEntry:
    try:
        builder = BUILDERS[family.lower()]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}") from None
    return builder(n, field)


def nilradical_of(entry: CatalogEntry) -> Subspace:
    return entry.nilradical


def complement_of(entry: CatalogEntry) -> Subspace:
    return entry.complement

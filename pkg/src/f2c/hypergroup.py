"""Double cosets ``H\\G/H`` and the possibilistic hypergroups they carry.

A possibilistic hypergroup only remembers *which* products are inhabited:
``x·y`` is a nonempty subset of the elements.  Products are stored as a dense
``n x n`` table of Python ints used as bitsets.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .errors import NotASubgroup, SchemaError
from .groups import FiniteGroup

__all__ = [
    "DoubleCosetDecomposition",
    "PossibilisticHypergroup",
    "HypergroupReport",
    "double_cosets",
    "hypergroup_from_double_cosets",
    "verify_hypergroup",
    "hypergroups_isomorphic",
    "support_closure",
]


def _bits(s: Iterable[int]) -> int:
    out = 0
    for x in s:
        out |= 1 << x
    return out


def _members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    group: FiniteGroup
    subgroup: frozenset[int]
    classes: tuple[frozenset[int], ...]
    representatives: tuple[int, ...]

    def class_of(self, g: int) -> int:
        return self._index[g]

    @property
    def _index(self) -> dict[int, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {g: i for i, c in enumerate(self.classes) for g in c}
            object.__setattr__(self, "_idx", idx)
        return idx

    def __len__(self):
        return len(self.classes)

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "subgroup": sorted(self.subgroup),
            "classes": [sorted(c) for c in self.classes],
            "representatives": list(self.representatives),
        }


def double_cosets(G: FiniteGroup, H: Iterable[int]) -> DoubleCosetDecomposition:
    """Orbits of ``H x H`` on ``G`` by ``(h, h')·g = h g h'``, ordered by least element."""
    H = frozenset(int(h) for h in H)
    if not G.is_subgroup(H):
        raise NotASubgroup("not a subgroup", subset=sorted(H))
    T = G.table
    hs = sorted(H)
    seen = [False] * G.order
    classes = []
    for g in G.elements:
        if seen[g]:
            continue
        left = {int(T[h, g]) for h in hs}
        orbit = frozenset(int(T[x, h]) for x in left for h in hs)
        for x in orbit:
            seen[x] = True
        classes.append(orbit)
    return DoubleCosetDecomposition(G, H, tuple(classes), tuple(min(c) for c in classes))


@dataclass(frozen=True, eq=False)
class PossibilisticHypergroup:
    """Set-valued multiplication on ``0 .. size-1``.

    ``table[x][y]`` is a bitmask of ``x·y``; ``inverse`` may be ``None`` for
    tables that have not been checked (``verify_hypergroup`` reports it).
    """

    size: int
    unit: int
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...] | None = None
    labels: tuple | None = None

    @classmethod
    def from_sets(cls, unit: int, products, labels=None) -> "PossibilisticHypergroup":
        n = len(products)
        table = tuple(tuple(_bits(products[x][y]) for y in range(n)) for x in range(n))
        return cls(n, unit, table, _find_inverses(n, unit, table), labels)

    def mul(self, x: int, y: int) -> frozenset[int]:
        return frozenset(_members(self.table[x][y]))

    def mul_sets(self, xs: int, ys: int) -> int:
        """Product of two subsets given as bitmasks."""
        out = 0
        for x in _members(xs):
            row = self.table[x]
            for y in _members(ys):
                out |= row[y]
        return out

    @property
    def is_group(self) -> bool:
        return all(m and not m & (m - 1) for row in self.table for m in row)

    def __eq__(self, other):
        if not isinstance(other, PossibilisticHypergroup):
            return NotImplemented
        return (self.size, self.unit, self.table) == (other.size, other.unit, other.table)

    def __hash__(self):
        return hash((self.size, self.unit, self.table))

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "unit": self.unit,
            "inverse": list(self.inverse) if self.inverse is not None else None,
            "table": [[_members(m) for m in row] for row in self.table],
        }

    @staticmethod
    def from_json(d: dict) -> "PossibilisticHypergroup":
        try:
            rows = d["table"]
            unit = int(d["unit"])
            n = len(rows)
            table = tuple(tuple(_bits(int(v) for v in cell) for cell in row) for row in rows)
        except (KeyError, TypeError, ValueError):
            raise SchemaError("hypergroup needs 'unit' and a square 'table' of index lists") from None
        if any(len(r) != n for r in table) or not 0 <= unit < n:
            raise SchemaError("hypergroup table is not square or unit out of range")
        if any(m >> n for r in table for m in r):
            raise SchemaError("hypergroup product index out of range")
        return PossibilisticHypergroup(n, unit, table, _find_inverses(n, unit, table))


def _find_inverses(n, unit, table):
    u = 1 << unit
    inv = []
    for x in range(n):
        right = [y for y in range(n) if table[x][y] & u]
        left = [y for y in range(n) if table[y][x] & u]
        if len(right) != 1 or right != left:
            return None
        inv.append(right[0])
    return tuple(inv)


def hypergroup_from_double_cosets(d: DoubleCosetDecomposition) -> PossibilisticHypergroup:
    """``[f]·[g] = {[k] : k in f H g}`` on the double-coset classes."""
    G, T = d.group, d.group.table
    hs = sorted(d.subgroup)
    idx = d._index
    products = []
    for f in d.representatives:
        fh = [int(T[f, h]) for h in hs]
        row = []
        for g in d.representatives:
            row.append({idx[int(T[x, g])] for x in fh})
        products.append(row)
    return PossibilisticHypergroup.from_sets(idx[G.identity], products, labels=d.representatives)


@dataclass(frozen=True)
class HypergroupReport:
    ok: bool
    violation: str | None = None
    witness: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "violation": self.violation, "witness": self.witness}


def verify_hypergroup(h: PossibilisticHypergroup) -> HypergroupReport:
    """Check the axioms in order: nonempty products, unit, inverses, associativity."""
    n, T = h.size, h.table
    for x, y in product(range(n), repeat=2):
        if not T[x][y]:
            return HypergroupReport(False, "EmptyProduct", {"x": x, "y": y})
    u = h.unit
    for x in range(n):
        if T[u][x] != 1 << x or T[x][u] != 1 << x:
            return HypergroupReport(False, "NonSingletonUnit", {
                "x": x, "unit_x": _members(T[u][x]), "x_unit": _members(T[x][u])})
    ubit = 1 << u
    for x in range(n):
        right = [y for y in range(n) if T[x][y] & ubit]
        left = [y for y in range(n) if T[y][x] & ubit]
        if not right or not left:
            return HypergroupReport(False, "MissingInverse", {"x": x, "right": right, "left": left})
        if len(right) > 1 or len(left) > 1:
            return HypergroupReport(False, "AmbiguousInverse", {"x": x, "right": right, "left": left})
        if right != left:
            return HypergroupReport(False, "AmbiguousInverse", {"x": x, "right": right, "left": left})
    for x, y, z in product(range(n), repeat=3):
        lhs = h.mul_sets(T[x][y], 1 << z)
        rhs = h.mul_sets(1 << x, T[y][z])
        if lhs != rhs:
            return HypergroupReport(False, "AssociativityFailure", {
                "triple": [x, y, z], "left": _members(lhs), "right": _members(rhs)})
    return HypergroupReport(True)


def _profile(h: PossibilisticHypergroup, x: int):
    row = tuple(sorted(bin(m).count("1") for m in h.table[x]))
    col = tuple(sorted(bin(h.table[y][x]).count("1") for y in range(h.size)))
    sq = bin(h.table[x][x]).count("1")
    return row, col, sq


def hypergroups_isomorphic(a: PossibilisticHypergroup,
                           b: PossibilisticHypergroup) -> tuple[int, ...] | None:
    """A bijection ``phi`` with ``phi(x·y) = phi(x)·phi(y)`` and ``phi(1) = 1``, or ``None``."""
    if a.size != b.size:
        return None
    n = a.size
    pa = [_profile(a, x) for x in range(n)]
    pb = [_profile(b, x) for x in range(n)]
    if Counter(pa) != Counter(pb) or pa[a.unit] != pb[b.unit]:
        return None
    phi = [-1] * n
    used = [False] * n
    phi[a.unit] = b.unit
    used[b.unit] = True
    order = [a.unit] + [x for x in range(n) if x != a.unit]

    def image(mask):
        out = 0
        for x in _members(mask):
            out |= 1 << phi[x]
        return out

    def consistent(k):
        # every product among the first k assigned elements must map exactly
        x = order[k]
        for j in range(k + 1):
            y = order[j]
            for p, q in ((x, y), (y, x)):
                m = a.table[p][q]
                if all(phi[t] >= 0 for t in _members(m)):
                    if image(m) != b.table[phi[p]][phi[q]]:
                        return False
                elif bin(m).count("1") != bin(b.table[phi[p]][phi[q]]).count("1"):
                    return False
        return True

    def rec(k):
        if k == n:
            return all(image(a.table[p][q]) == b.table[phi[p]][phi[q]]
                       for p, q in product(range(n), repeat=2))
        x = order[k]
        for c in range(n):
            if used[c] or pb[c] != pa[x]:
                continue
            phi[x] = c
            used[c] = True
            if consistent(k) and rec(k + 1):
                return True
            phi[x] = -1
            used[c] = False
        return False

    if not consistent(0) or not rec(1):
        return None
    return tuple(phi)


def support_closure(G: FiniteGroup, S: Iterable[int]) -> frozenset[int]:
    """Subgroup generated by ``S`` (which must contain the identity)."""
    S = frozenset(int(s) for s in S)
    if G.identity not in S:
        raise SchemaError("support must contain the identity", subset=sorted(S))
    return G.closure(S)

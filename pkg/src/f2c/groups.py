"""Finite groups and supergroups as explicit multiplication tables.

Elements are the integers ``0 .. order-1``; ``table[a, b]`` is the index of
``a*b``.  Everything here is brute force and meant for desk-scale orders.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ActionNotHomomorphism,
    EnumerationLimitExceeded,
    NoIdentity,
    NoInverse,
    NotAbelian,
    NotAssociative,
    NotASubgroup,
    NotInjective,
    ValidationError,
)


class Limits:
    """Global enumeration caps; the CLI overrides these from its flags."""

    max_order = 24
    max_cochain_cells = 5000
    max_sh_base_order = 6


limits = Limits()


def _check_order(n: int, what: str):
    if n > limits.max_order:
        raise EnumerationLimitExceeded(
            f"{what}: order {n} exceeds enumeration limit {limits.max_order}", order=n
        )


class FiniteGroup:
    """A group given by its multiplication table.

    Do not call directly with untrusted input; use :func:`group_from_table`.
    """

    def __init__(self, table, name: str | None = None, identity: int | None = None):
        t = np.array(table, dtype=np.int64)
        t.setflags(write=False)
        self.table = t
        self.order = int(t.shape[0])
        self.identity = int(identity) if identity is not None else _find_identity(t)
        self.name = name or f"G{self.order}"

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, FiniteGroup)
            and self.identity == other.identity
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.order, self.identity, self.table.tobytes()))

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.table == self.identity, axis=1)
        inv.setflags(write=False)
        return inv

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = self.identity
        for _ in range(k):
            r = self.mul(r, a)
        return r

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in self.elements:
            k, x = 1, a
            while x != self.identity:
                x = self.mul(x, a)
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(np.array(self.element_orders, dtype=np.int64)))

    @cached_property
    def conjugation(self) -> np.ndarray:
        """``conjugation[g, h] = g h g^-1``."""
        n = self.order
        g = np.arange(n)[:, None]
        gh = self.table[g, np.arange(n)[None, :]]
        c = self.table[gh, self.inverse[g]]
        c.setflags(write=False)
        return c

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def center(self) -> frozenset[int]:
        return frozenset(
            a for a in self.elements if np.array_equal(self.table[a, :], self.table[:, a])
        )

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A deterministic generating set, greedy by element order."""
        order = sorted(self.elements, key=lambda a: (-self.element_orders[a], a))
        gens: list[int] = []
        span = frozenset([self.identity])
        for a in order:
            if len(span) == self.order:
                break
            if a not in span:
                gens.append(a)
                span = self.closure(gens)
        return tuple(gens)

    def closure(self, elements: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``elements``."""
        gens = sorted(set(int(x) for x in elements))
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for h in frontier:
                for s in gens:
                    x = int(self.table[h, s])
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = frozenset(int(x) for x in subset)
        if self.identity not in s:
            return False
        idx = np.array(sorted(s))
        prods = self.table[np.ix_(idx, idx)]
        return bool(np.isin(prods, idx).all())

    def conjugate_subgroup(self, g: int, subgroup: Iterable[int]) -> frozenset[int]:
        return frozenset(int(self.conjugation[g, h]) for h in subgroup)

    def is_normal(self, subgroup: Iterable[int]) -> bool:
        s = frozenset(subgroup)
        return all(self.conjugate_subgroup(g, s) == s for g in self.elements)

    @cached_property
    def _all_subgroups(self) -> tuple[frozenset[int], ...]:
        _check_order(self.order, "subgroup enumeration")
        cyclic = sorted({self.closure([g]) for g in self.elements}, key=_subset_key)
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            nxt = []
            for s in frontier:
                for c in cyclic:
                    if c <= s:
                        continue
                    j = self.closure(s | c)
                    if j not in found:
                        found.add(j)
                        nxt.append(j)
            frontier = nxt
        return tuple(sorted(found, key=_subset_key))

    def subgroups(self) -> list[frozenset[int]]:
        return list(self._all_subgroups)

    def subgroup_class(self, subgroup: Iterable[int]) -> frozenset[frozenset[int]]:
        s = frozenset(subgroup)
        return frozenset(self.conjugate_subgroup(g, s) for g in self.elements)

    def __reduce__(self):
        return (FiniteGroup, (self.table.tolist(), self.name, self.identity))


def _subset_key(s: frozenset[int]):
    return (len(s), tuple(sorted(s)))


def _find_identity(t: np.ndarray) -> int:
    n = t.shape[0]
    r = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], r) and np.array_equal(t[:, e], r):
            return e
    raise NoIdentity("no two-sided identity element")


def group_from_table(table, name: str | None = None) -> FiniteGroup:
    """Validate a square table and wrap it as a :class:`FiniteGroup`."""
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"table is not an integer array: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ValidationError("table must be a non-empty square array", shape=list(t.shape))
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise ValidationError("table entries out of range")
    e = _find_identity(t)
    for a in range(n):
        row = np.nonzero(t[a] == e)[0]
        col = np.nonzero(t[:, a] == e)[0]
        if len(row) == 0 or len(col) == 0 or row[0] != col[0]:
            raise NoInverse(f"element {a} has no two-sided inverse", element=a)
    left = t[t]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(x) for x in bad[0])
        raise NotAssociative(f"(a*b)*c != a*(b*c) for (a,b,c)=({a},{b},{c})", triple=[a, b, c])
    return FiniteGroup(t, name=name, identity=e)


# ---------------------------------------------------------------- constructors


def cyclic(n: int) -> FiniteGroup:
    r = np.arange(n)
    return FiniteGroup((r[:, None] + r[None, :]) % n, name=f"Z{n}", identity=0)


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Element ``(a, b)`` has index ``a * |h| + b``."""
    m = h.order
    a = np.arange(g.order * m)
    ga, hb = a // m, a % m
    t = g.table[ga[:, None], ga[None, :]] * m + h.table[hb[:, None], hb[None, :]]
    return FiniteGroup(t, name=name or f"{g.name}x{h.name}", identity=g.identity * m + h.identity)


def permutation_group(perms: Sequence[Sequence[int]], name: str) -> FiniteGroup:
    """Group of the given permutations (must be closed), indexed in the given order."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    t = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            # (p*q)(x) = p(q(x))
            t[i, j] = index[tuple(p[x] for x in q)]
    return group_from_table(t, name=name)


def symmetric(n: int) -> FiniteGroup:
    return permutation_group(sorted(permutations(range(n))), name=f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``; element ``r^k s^e`` has index ``2k + e``."""
    m = 2 * n
    t = np.empty((m, m), dtype=np.int64)
    for a, b in product(range(m), repeat=2):
        k1, e1 = divmod(a, 2)
        k2, e2 = divmod(b, 2)
        k = (k1 + (k2 if e1 == 0 else -k2)) % n
        t[a, b] = 2 * k + ((e1 + e2) % 2)
    return FiniteGroup(t, name=f"D{n}", identity=0)


def quaternion() -> FiniteGroup:
    """Q8 on the indices of (1, -1, i, -i, j, -j, k, -k)."""
    # represent as (sign, unit) with unit in {1,i,j,k}
    units = {("1", "1"): (1, "1")}
    base = {
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    for u in "1ijk":
        units[("1", u)] = (1, u)
        units[(u, "1")] = (1, u)
    units.update(base)
    elems = [(s, u) for u in "1ijk" for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    t = np.empty((8, 8), dtype=np.int64)
    for (s1, u1), (s2, u2) in product(elems, repeat=2):
        s, u = units[(u1, u2)]
        t[index[(s1, u1)], index[(s2, u2)]] = index[(s * s1 * s2, u)]
    return FiniteGroup(t, name="Q8", identity=0)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], name="Z1", identity=0)


# ---------------------------------------------------------- homomorphisms


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))

    def __call__(self, a: int) -> int:
        return self.map[a]

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.map == other.map
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(self.map)

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def is_homomorphism(self) -> bool:
        m = np.array(self.map)
        s, t = self.source.table, self.target.table
        return bool(np.array_equal(m[s], t[m[:, None], m[None, :]]))

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self ∘ first``."""
        return GroupHom(first.source, self.target, tuple(self.map[x] for x in first.map))

    def inverse(self) -> "GroupHom":
        inv = [0] * len(self.map)
        for a, b in enumerate(self.map):
            inv[b] = a
        return GroupHom(self.target, self.source, tuple(inv))

    @staticmethod
    def identity(g: FiniteGroup) -> "GroupHom":
        return GroupHom(g, g, tuple(g.elements))

    @staticmethod
    def trivial(src: FiniteGroup, tgt: FiniteGroup) -> "GroupHom":
        return GroupHom(src, tgt, (tgt.identity,) * src.order)


def inner_automorphism(g: FiniteGroup, x: int) -> GroupHom:
    return GroupHom(g, g, tuple(int(v) for v in g.conjugation[x]))


def _extend_on_span(src: FiniteGroup, tgt: FiniteGroup, gens, images, known=None):
    """Extend generator images to the span by BFS; None on inconsistency."""
    f = dict(known) if known else {src.identity: tgt.identity}
    frontier = list(f)
    pairs = list(zip(gens, images))
    while frontier:
        nxt = []
        for h in frontier:
            fh = f[h]
            for s, fs in pairs:
                x = int(src.table[h, s])
                fx = int(tgt.table[fh, fs])
                old = f.get(x)
                if old is None:
                    f[x] = fx
                    nxt.append(x)
                elif old != fx:
                    return None
        frontier = nxt
    return f


def _hom_search(src: FiniteGroup, tgt: FiniteGroup, injective=False, bijective=False,
                fix: tuple[int, int] | None = None):
    _check_order(src.order, "hom enumeration")
    _check_order(tgt.order, "hom enumeration")
    if bijective and src.order != tgt.order:
        return []
    if injective and tgt.order % src.order:
        return []
    gens = src.generators
    so, to = src.element_orders, tgt.element_orders
    exact = injective or bijective
    cands = []
    for s in gens:
        if exact:
            cands.append([x for x in tgt.elements if to[x] == so[s]])
        else:
            cands.append([x for x in tgt.elements if so[s] % to[x] == 0])
    results = []

    def rec(i, images, f):
        if exact and len(set(f.values())) != len(f):
            return
        if fix is not None and fix[0] in f and f[fix[0]] != fix[1]:
            return
        if i == len(gens):
            results.append(tuple(f[a] for a in src.elements))
            return
        for x in cands[i]:
            g = _extend_on_span(src, tgt, gens[: i + 1], images + [x], known=None)
            if g is not None:
                rec(i + 1, images + [x], g)

    rec(0, [], {src.identity: tgt.identity})
    results.sort()
    return [GroupHom(src, tgt, m) for m in results]


def all_homs(h: FiniteGroup, g: FiniteGroup, injective_only: bool = False) -> list[GroupHom]:
    """Every homomorphism ``h -> g`` (sorted by image tuple)."""
    return _hom_search(h, g, injective=injective_only)


def automorphisms(g: FiniteGroup, fix_z: int | None = None) -> list[GroupHom]:
    """Aut(G), or Aut(G, z) when ``fix_z`` is given."""
    fix = None if fix_z is None else (fix_z, fix_z)
    return _hom_search(g, g, bijective=True, fix=fix)


def find_isomorphism(a: FiniteGroup, b: FiniteGroup, z_a: int | None = None,
                     z_b: int | None = None) -> GroupHom | None:
    if a.order != b.order or sorted(a.element_orders) != sorted(b.element_orders):
        return None
    if (z_a is None) != (z_b is None):
        raise ValueError("give both or neither of z_a, z_b")
    fix = None if z_a is None else (z_a, z_b)
    gens = a.generators
    so, to = a.element_orders, b.element_orders
    cands = [[x for x in b.elements if to[x] == so[s]] for s in gens]

    def rec(i, images, f):
        if len(set(f.values())) != len(f):
            return None
        if fix is not None and fix[0] in f and f[fix[0]] != fix[1]:
            return None
        if i == len(gens):
            return f
        for x in cands[i]:
            g = _extend_on_span(a, b, gens[: i + 1], images + [x])
            if g is not None:
                r = rec(i + 1, images + [x], g)
                if r is not None:
                    return r
        return None

    f = rec(0, [], {a.identity: b.identity})
    if f is None:
        return None
    return GroupHom(a, b, tuple(f[x] for x in a.elements))


def is_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    return find_isomorphism(a, b) is not None


# -------------------------------------------------------------- supergroups


@dataclass(frozen=True)
class Supergroup:
    group: FiniteGroup
    z: int

    def __post_init__(self):
        g = self.group
        if not 0 <= self.z < g.order:
            raise ValidationError("z out of range", z=self.z)
        if self.z not in g.center:
            raise ValidationError(f"z={self.z} is not central", z=self.z)
        if g.mul(self.z, self.z) != g.identity:
            raise ValidationError(f"z={self.z} does not square to the identity", z=self.z)

    @property
    def is_bosonic(self) -> bool:
        return self.z == self.group.identity

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def name(self) -> str:
        return f"{self.group.name}:z{self.z}" if not self.is_bosonic else self.group.name


@dataclass(frozen=True)
class SupergroupHom:
    source: Supergroup
    target: Supergroup
    hom: GroupHom

    def __post_init__(self):
        if self.hom.source != self.source.group or self.hom.target != self.target.group:
            raise ValidationError("hom does not match supergroups")
        if self.hom(self.source.z) != self.target.z:
            raise ValidationError("hom does not carry z to z")

    @property
    def map(self) -> tuple[int, ...]:
        return self.hom.map

    @property
    def is_injective(self) -> bool:
        return self.hom.is_injective

    def compose(self, first: "SupergroupHom") -> "SupergroupHom":
        return SupergroupHom(first.source, self.target, self.hom.compose(first.hom))

    @staticmethod
    def identity(s: Supergroup) -> "SupergroupHom":
        return SupergroupHom(s, s, GroupHom.identity(s.group))


def supergroup_structures(g: FiniteGroup) -> list[Supergroup]:
    """All central ``z`` with ``z^2 = e`` (including ``z = e``)."""
    return [
        Supergroup(g, z)
        for z in sorted(g.center)
        if g.mul(z, z) == g.identity
    ]


def supergroup_homs(h: Supergroup, g: Supergroup, injective_only: bool = False) -> list[SupergroupHom]:
    homs = _hom_search(h.group, g.group, injective=injective_only, fix=(h.z, g.z))
    return [SupergroupHom(h, g, f) for f in homs if f(h.z) == g.z]


def conjugation_orbit_rep(f: GroupHom) -> tuple[int, ...]:
    g = f.target
    return min(tuple(int(g.conjugation[x, y]) for y in f.map) for x in g.elements)


def conjugacy_classes_of_homs(h: Supergroup, g: Supergroup, injective_only: bool) -> list[SupergroupHom]:
    reps = {}
    for f in supergroup_homs(h, g, injective_only=injective_only):
        key = conjugation_orbit_rep(f.hom)
        reps.setdefault(key, None)
    return [SupergroupHom(h, g, GroupHom(h.group, g.group, k)) for k in sorted(reps)]


def conjugacy_classes_of_embeddings(h: Supergroup, g: Supergroup) -> list[SupergroupHom]:
    """z-preserving embeddings modulo inner automorphisms of the target."""
    return conjugacy_classes_of_homs(h, g, injective_only=True)


def subgroups_up_to_conjugacy(g: FiniteGroup) -> list[frozenset[int]]:
    """One representative (lexicographically least) per conjugacy class."""
    reps = set()
    for s in g.subgroups():
        reps.add(min(g.subgroup_class(s), key=_subset_key))
    return sorted(reps, key=_subset_key)


def quotient_group(g: FiniteGroup, normal: Iterable[int], name: str | None = None):
    """``(G/N, projection)`` with cosets ordered by their least element."""
    n = frozenset(normal)
    if not g.is_subgroup(n):
        raise NotASubgroup("not a subgroup", subset=sorted(n))
    if not g.is_normal(n):
        raise ValidationError("subgroup is not normal", subset=sorted(n))
    cosets = sorted({frozenset(int(g.table[a, x]) for x in n) for a in g.elements}, key=min)
    which = {}
    for i, c in enumerate(cosets):
        for a in c:
            which[a] = i
    reps = [min(c) for c in cosets]
    k = len(cosets)
    t = np.empty((k, k), dtype=np.int64)
    for i, j in product(range(k), repeat=2):
        t[i, j] = which[g.mul(reps[i], reps[j])]
    q = FiniteGroup(t, name=name or f"{g.name}/N{len(n)}", identity=which[g.identity])
    return q, GroupHom(g, q, tuple(which[a] for a in g.elements))


def restrict_to_subgroup(g: FiniteGroup, subset: Iterable[int], name: str | None = None):
    """``(H, inclusion)`` for a subgroup given as an element set of ``g``."""
    s = sorted(frozenset(subset))
    if not g.is_subgroup(s):
        raise NotASubgroup("not a subgroup", subset=s)
    pos = {a: i for i, a in enumerate(s)}
    t = [[pos[g.mul(a, b)] for b in s] for a in s]
    h = FiniteGroup(t, name=name or f"{g.name}<{len(s)}>", identity=pos[g.identity])
    return h, GroupHom(h, g, tuple(s))


# ------------------------------------------------ semidirect products, duals


def _as_action_maps(a: FiniteGroup, h: FiniteGroup, action) -> list[tuple[int, ...]]:
    maps = []
    for x in h.elements:
        m = action[x]
        if isinstance(m, GroupHom):
            m = m.map
        maps.append(tuple(int(v) for v in m))
    return maps


def semidirect_product(a: FiniteGroup, h: FiniteGroup, action, name: str | None = None):
    """``A ⋊ H`` with ``(a,h)(a',h') = (a·h(a'), hh')``.

    ``action[x]`` is the automorphism of ``a`` for ``x`` in ``h`` (a map tuple
    or :class:`GroupHom`).  Element ``(a, x)`` has index ``a * |H| + x``.
    Returns ``(group, A -> group, H -> group)``.
    """
    maps = _as_action_maps(a, h, action)
    for x, m in enumerate(maps):
        f = GroupHom(a, a, m)
        if not (f.is_injective and f.is_homomorphism()):
            raise ActionNotHomomorphism(f"action of {x} is not an automorphism", element=x)
    for x, y in product(h.elements, repeat=2):
        xy = h.mul(x, y)
        if tuple(maps[x][maps[y][v]] for v in a.elements) != maps[xy]:
            raise ActionNotHomomorphism(f"action not multiplicative at ({x},{y})", pair=[x, y])
    nh = h.order
    size = a.order * nh
    idx = np.arange(size)
    av, hv = idx // nh, idx % nh
    act = np.array(maps, dtype=np.int64)  # act[x, a]
    moved = act[hv[:, None], av[None, :]]  # h(a')
    t = a.table[av[:, None], moved] * nh + h.table[hv[:, None], hv[None, :]]
    e = a.identity * nh + h.identity
    g = FiniteGroup(t, name=name or f"{a.name}:{h.name}", identity=e)
    emb_a = GroupHom(a, g, tuple(x * nh + h.identity for x in a.elements))
    emb_h = GroupHom(h, g, tuple(a.identity * nh + x for x in h.elements))
    return g, emb_a, emb_h


@dataclass(frozen=True)
class DualGroup:
    """Characters of an abelian group as values ``k/exponent`` in Q/Z."""

    group: FiniteGroup
    source: FiniteGroup
    exponent: int
    characters: tuple[tuple[int, ...], ...]

    def evaluate(self, chi: int, a: int) -> tuple[int, int]:
        """``chi(a)`` as a numerator over ``exponent``."""
        return self.characters[chi][a], self.exponent


def pontryagin_dual(a: FiniteGroup) -> DualGroup:
    if not a.is_abelian:
        raise NotAbelian(f"{a.name} is not abelian")
    e = a.exponent
    homs = all_homs(a, cyclic(e))
    chars = sorted(h.map for h in homs)
    index = {c: i for i, c in enumerate(chars)}
    k = len(chars)
    t = np.empty((k, k), dtype=np.int64)
    for i, j in product(range(k), repeat=2):
        t[i, j] = index[tuple((x + y) % e for x, y in zip(chars[i], chars[j]))]
    trivial = index[tuple([0] * a.order)]
    g = FiniteGroup(t, name=f"{a.name}^", identity=trivial)
    return DualGroup(g, a, e, tuple(chars))


def dual_action(dual: DualGroup, h: FiniteGroup, action) -> list[tuple[int, ...]]:
    """Induced action on characters: ``(x·chi)(a) = chi(x^-1 · a)``."""
    maps = _as_action_maps(dual.source, h, action)
    index = {c: i for i, c in enumerate(dual.characters)}
    out = []
    for x in h.elements:
        back = maps[h.inv(x)]
        out.append(tuple(
            index[tuple(chi[back[v]] for v in dual.source.elements)] for chi in dual.characters
        ))
    return out


# ------------------------------------------------------- central extensions


@dataclass(frozen=True)
class CentralExtensionPresentation:
    """``G`` as a Z/2 central extension of ``base = G/<z>`` with cocycle ``kappa``."""

    supergroup: Supergroup
    base: FiniteGroup
    projection: tuple[int, ...]
    section: tuple[int, ...]
    kappa: "object" = field(repr=False)  # Cochain of degree 2, Z/2 coefficients

    def lift(self, x: int, eps: int) -> int:
        s = self.section[x]
        return self.supergroup.group.mul(s, self.supergroup.z) if eps else s


def quotient_by_z(s: Supergroup) -> CentralExtensionPresentation:
    from .cohomology import Cochain, Z2

    g = s.group
    if s.is_bosonic:
        kappa = Cochain.zero(g, 2, Z2)
        ident = tuple(g.elements)
        return CentralExtensionPresentation(s, g, ident, ident, kappa)
    z = s.z
    cosets = sorted({frozenset((a, g.mul(a, z))) for a in g.elements}, key=min)
    which = {a: i for i, c in enumerate(cosets) for a in c}
    section = [min(c) for c in cosets]
    base_e = which[g.identity]
    section[base_e] = g.identity
    k = len(cosets)
    t = np.empty((k, k), dtype=np.int64)
    for i, j in product(range(k), repeat=2):
        t[i, j] = which[g.mul(section[i], section[j])]
    base = FiniteGroup(t, name=f"{g.name}/z", identity=base_e)
    vals = np.zeros((k, k), dtype=np.int64)
    for i, j in product(range(k), repeat=2):
        prod_ = g.mul(section[i], section[j])
        vals[i, j] = 0 if prod_ == section[int(t[i, j])] else 1
    kappa = Cochain(base, 2, Z2, vals)
    return CentralExtensionPresentation(
        s, base, tuple(which[a] for a in g.elements), tuple(section), kappa
    )


def central_extension(base: FiniteGroup, kappa) -> Supergroup:
    """Rebuild ``(G, z)`` from ``(base, kappa)``: element ``(x, eps)`` is ``2x + eps``."""
    n = base.order
    vals = np.asarray(kappa.values).reshape(n, n) % 2
    t = np.empty((2 * n, 2 * n), dtype=np.int64)
    for a, b in product(range(2 * n), repeat=2):
        x, e1 = divmod(a, 2)
        y, e2 = divmod(b, 2)
        t[a, b] = 2 * base.mul(x, y) + (e1 + e2 + int(vals[x, y])) % 2
    g = group_from_table(t, name=f"ext({base.name})")
    return Supergroup(g, 2 * base.identity + 1)


def base_map(f: SupergroupHom, src: CentralExtensionPresentation | None = None,
             tgt: CentralExtensionPresentation | None = None):
    """Induced map on bases plus the section-defect ``sigma`` (a Z/2 1-cochain).

    ``f(s_H(x)) = s_G(f_b(x)) · z^{sigma(x)}``, so that
    ``f_b^* kappa_G = kappa_H + d sigma``.
    """
    from .cohomology import Cochain, Z2

    src = src or quotient_by_z(f.source)
    tgt = tgt or quotient_by_z(f.target)
    fb = []
    sigma = np.zeros(src.base.order, dtype=np.int64)
    for x in src.base.elements:
        y = f.hom(src.section[x])
        xb = tgt.projection[y]
        fb.append(xb)
        sigma[x] = 0 if y == tgt.section[xb] else 1
    hom_b = GroupHom(src.base, tgt.base, tuple(fb))
    return hom_b, Cochain(src.base, 1, Z2, sigma)


def require_injective(f: GroupHom):
    if not f.is_injective:
        raise NotInjective("homomorphism is not injective", map=list(f.map))

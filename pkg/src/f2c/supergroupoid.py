"""Finite 1-truncated superspaces and components of equivariant mapping spaces.

A connected block is either a supergroup ``B(G, z)`` or, equivalently, a
base group with a Z/2 extension class ``kappa`` (the space over ``B^2 Z/2``).
The two are interchangeable via :func:`f2c.groups.quotient_by_z` and
:func:`f2c.groups.central_extension`.  A disconnected superspace is a list
of blocks.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Union

from .catalog import get_group
from .cohomology import Cochain, Z2, is_cocycle
from .errors import NotACocycle, SchemaError, ValidationError
from .groups import (
    FiniteGroup,
    Supergroup,
    SupergroupHom,
    central_extension,
    conjugacy_classes_of_homs,
    quotient_by_z,
    trivial_group,
)

__all__ = [
    "ConnectedSuper",
    "OverBase",
    "Supergroupoid",
    "SupergroupoidMap",
    "spec_of",
    "equivariant_map_classes",
    "map_classes",
    "is_faithful",
    "is_pi0_surjective",
]


@dataclass(frozen=True)
class ConnectedSuper:
    supergroup: Supergroup

    def as_supergroup(self) -> Supergroup:
        return self.supergroup

    def to_json(self) -> dict:
        s = self.supergroup
        return {"group": s.group.name, "z": s.z}


@dataclass(frozen=True)
class OverBase:
    base: FiniteGroup
    kappa: Cochain

    def __post_init__(self):
        k = self.kappa
        if k.group != self.base or k.degree != 2 or k.coeff != Z2:
            raise ValidationError("kappa must be a Z/2 2-cochain on the base")
        if not is_cocycle(k):
            raise NotACocycle("kappa is not a cocycle")

    def as_supergroup(self) -> Supergroup:
        return central_extension(self.base, self.kappa)

    def to_json(self) -> dict:
        return {"base": self.base.name, "kappa": self.kappa.to_json()}


Block = Union[ConnectedSuper, OverBase]


@dataclass(frozen=True)
class Supergroupoid:
    blocks: tuple[Block, ...]

    @classmethod
    def connected(cls, block: Block) -> "Supergroupoid":
        return cls((block,))

    @property
    def is_connected(self) -> bool:
        return len(self.blocks) == 1

    def supergroups(self) -> list[Supergroup]:
        return [b.as_supergroup() for b in self.blocks]

    def to_json(self) -> dict:
        return {"blocks": [b.to_json() for b in self.blocks]}

    @staticmethod
    def from_json(d: dict) -> "Supergroupoid":
        try:
            raw = d["blocks"]
        except (KeyError, TypeError):
            raise SchemaError("supergroupoid needs 'blocks'") from None
        blocks = []
        for b in raw:
            if not isinstance(b, dict):
                raise SchemaError("each block must be an object")
            if "group" in b:
                g = get_group(b["group"])
                blocks.append(ConnectedSuper(Supergroup(g, int(b.get("z", g.identity)))))
            elif "kappa" in b:
                k = Cochain.from_json(b["kappa"])
                blocks.append(OverBase(k.group, k))
            else:
                raise SchemaError("block needs 'group' or 'base'/'kappa'")
        if not blocks:
            raise SchemaError("supergroupoid needs at least one block")
        return Supergroupoid(tuple(blocks))


def spec_of(kind: str, group: FiniteGroup | None = None, z: int | None = None) -> Supergroupoid:
    """The superspace of ``Vect``, ``sVect``, ``Rep(G)`` or ``Rep(G, z)``.

    ``Rep(G, z)`` with ``z`` nontrivial is returned in its over-the-base form.
    """
    if kind == "Vect":
        t = trivial_group()
        return Supergroupoid.connected(ConnectedSuper(Supergroup(t, t.identity)))
    if kind == "sVect":
        t = trivial_group()
        return Supergroupoid.connected(OverBase(t, Cochain.zero(t, 2, Z2)))
    if group is None:
        raise SchemaError(f"{kind} needs a group")
    if kind == "Rep(G)":
        if z is not None and z != group.identity:
            raise SchemaError("Rep(G) has z = e; use Rep(G,z)")
        return Supergroupoid.connected(ConnectedSuper(Supergroup(group, group.identity)))
    if kind == "Rep(G,z)":
        s = Supergroup(group, group.identity if z is None else int(z))
        if s.is_bosonic:
            return Supergroupoid.connected(ConnectedSuper(s))
        p = quotient_by_z(s)
        return Supergroupoid.connected(OverBase(p.base, p.kappa))
    raise SchemaError(f"unknown symmetric category {kind!r}")


def _connected(X) -> Supergroup:
    if isinstance(X, Supergroup):
        return X
    if isinstance(X, (ConnectedSuper, OverBase)):
        return X.as_supergroup()
    if isinstance(X, Supergroupoid):
        if not X.is_connected:
            raise SchemaError("expected a connected supergroupoid")
        return X.blocks[0].as_supergroup()
    raise SchemaError(f"not a supergroupoid: {type(X).__name__}")


def equivariant_map_classes(X, Y) -> list[SupergroupHom]:
    """Components of the equivariant mapping space between connected blocks.

    These are z-preserving homomorphisms modulo conjugation in the target,
    one representative each (the lexicographically least map in its orbit).
    """
    return conjugacy_classes_of_homs(_connected(X), _connected(Y), injective_only=False)


@dataclass(frozen=True)
class SupergroupoidMap:
    source: Supergroupoid
    target: Supergroupoid
    assignment: tuple[int, ...]
    homs: tuple[SupergroupHom, ...]

    def to_json(self) -> dict:
        return {"assignment": list(self.assignment),
                "homs": [list(f.map) for f in self.homs]}


def map_classes(X: Supergroupoid, Y: Supergroupoid, threads: int = 1) -> list[SupergroupoidMap]:
    """Components of the mapping space between possibly disconnected superspaces."""
    xs, ys = X.supergroups(), Y.supergroups()
    cache: dict[tuple[int, int], list[SupergroupHom]] = {}

    def classes(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = equivariant_map_classes(xs[i], ys[j])
        return cache[(i, j)]

    pairs = [(i, j) for i in range(len(xs)) for j in range(len(ys))]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for key, val in zip(pairs, ex.map(lambda p: equivariant_map_classes(xs[p[0]], ys[p[1]]), pairs)):
                cache[key] = val
    out = []
    for assignment in product(range(len(ys)), repeat=len(xs)):
        per_block = [classes(i, j) for i, j in enumerate(assignment)]
        for homs in product(*per_block):
            out.append(SupergroupoidMap(X, Y, assignment, tuple(homs)))
    return out


def is_faithful(f) -> bool:
    """Injective on every block's group."""
    if isinstance(f, SupergroupHom):
        return f.is_injective
    return all(h.is_injective for h in f.homs)


def is_pi0_surjective(f) -> bool:
    if isinstance(f, SupergroupHom):
        return True
    return set(f.assignment) == set(range(len(f.target.blocks)))

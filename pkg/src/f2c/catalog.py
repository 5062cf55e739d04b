"""Bundled catalog: every group of order <= 12 up to isomorphism.

Set ``F2C_CATALOG`` to a JSON file (list of catalog entries) to replace it.
"""
from __future__ import annotations

import json
import os
from functools import lru_cache

from .errors import SchemaError
from .groups import (
    FiniteGroup,
    Supergroup,
    cyclic,
    dihedral,
    direct_product,
    group_from_table,
    quaternion,
    semidirect_product,
    symmetric,
    trivial_group,
)


def _named(g: FiniteGroup, name: str) -> FiniteGroup:
    g.name = name
    return g


def _inverting(n: int, h_order: int):
    """Action of Z_{h_order} on Z_n where a generator acts by inversion."""
    return [tuple((-a) % n if x % 2 else a for a in range(n)) for x in range(h_order)]


def _a4() -> FiniteGroup:
    v = direct_product(cyclic(2), cyclic(2))
    # Z3 cycles the three involutions: (1,0) -> (0,1) -> (1,1)
    rot = {0: 0, 2: 1, 1: 3, 3: 2}
    maps = []
    m = tuple(range(4))
    for _ in range(3):
        maps.append(m)
        m = tuple(rot[x] for x in m)
    g, _, _ = semidirect_product(v, cyclic(3), maps)
    return g


def builtin_groups() -> list[FiniteGroup]:
    z2 = cyclic(2)
    out = [
        _named(trivial_group(), "Z1"),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        _named(direct_product(z2, z2), "Z2xZ2"),
        cyclic(5),
        cyclic(6),
        _named(symmetric(3), "S3"),
        cyclic(7),
        cyclic(8),
        _named(direct_product(cyclic(4), z2), "Z4xZ2"),
        _named(direct_product(direct_product(z2, z2), z2), "Z2xZ2xZ2"),
        _named(dihedral(4), "D4"),
        quaternion(),
        cyclic(9),
        _named(direct_product(cyclic(3), cyclic(3)), "Z3xZ3"),
        cyclic(10),
        _named(dihedral(5), "D5"),
        cyclic(11),
        cyclic(12),
        _named(direct_product(cyclic(6), z2), "Z6xZ2"),
        _named(_a4(), "A4"),
        _named(dihedral(6), "D6"),
        _named(semidirect_product(cyclic(3), cyclic(4), _inverting(3, 4))[0], "Dic3"),
    ]
    return out


def entry_to_json(g: FiniteGroup, z: int | None = None) -> dict:
    d = {"name": g.name, "order": g.order, "table": g.table.tolist()}
    if z is not None:
        d["z"] = z
    return d


def group_from_json(d: dict) -> FiniteGroup:
    try:
        table, name = d["table"], d["name"]
    except (KeyError, TypeError):
        raise SchemaError("group entry needs 'name' and 'table'") from None
    g = group_from_table(table, name=str(name))
    if "order" in d and d["order"] != g.order:
        raise SchemaError("'order' does not match table", name=name)
    return g


@lru_cache(maxsize=None)
def _load(path: str | None) -> tuple[FiniteGroup, ...]:
    if path is None:
        return tuple(builtin_groups())
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("groups", [data])
    return tuple(group_from_json(d) for d in data)


def catalog(max_order: int | None = None) -> list[FiniteGroup]:
    groups = _load(os.environ.get("F2C_CATALOG"))
    return [g for g in groups if max_order is None or g.order <= max_order]


def get_group(name: str) -> FiniteGroup:
    for g in catalog():
        if g.name == name:
            return g
    raise SchemaError(f"unknown group {name!r}", name=name)


def parse_supergroup(spec: str) -> Supergroup:
    """``"Z2"`` (z = e), ``"Z2:z"`` (the unique nontrivial choice) or ``"Z4:2"``."""
    name, _, zpart = spec.partition(":")
    g = get_group(name)
    if not zpart:
        return Supergroup(g, g.identity)
    if zpart == "z":
        cands = [z for z in sorted(g.center) if z != g.identity and g.mul(z, z) == g.identity]
        if len(cands) != 1:
            raise SchemaError(f"{name} has {len(cands)} nontrivial choices of z; give an index")
        return Supergroup(g, cands[0])
    try:
        return Supergroup(g, int(zpart))
    except ValueError:
        raise SchemaError(f"bad supergroup spec {spec!r}") from None


def catalog_json(max_order: int | None = None) -> list[dict]:
    return [entry_to_json(g) for g in catalog(max_order)]

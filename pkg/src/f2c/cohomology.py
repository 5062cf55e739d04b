"""Normalized bar cochains and group cohomology.

Coefficients come in two flavours:

* ``CyclicModM(m)``: the subgroup ``(1/m)Z/Z`` of Q/Z, i.e. roots of unity
  in C^x.  A value ``k`` stands for ``exp(2 pi i k/m)``.  Cochains with
  different ``m`` are compared and added as Q/Z-valued functions.
* ``Z2``: the field with two elements (trivial action).

The cohomology of a ``CyclicModM(m)`` coefficient group is the image of
``H^n(G; Z/m)`` in ``H^n(G; Q/Z)``; in particular two cocycles are
cohomologous when they differ by the coboundary of some Q/Z-valued cochain.
With ``m`` a multiple of ``|G|`` (the default of :func:`cx`) this is all of
``H^n(G; C^x)``.

Cochains store their values on the full product ``G^n`` in lexicographic
order (flattened), and are required to vanish whenever an argument is the
identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm

import numpy as np

from . import kernels, linalg
from .errors import (
    BaseMismatch,
    CoefficientMismatch,
    DegreeMismatch,
    NotACocycle,
    SchemaError,
    ValidationError,
)
from .groups import FiniteGroup, GroupHom, require_injective

__all__ = [
    "CoefficientGroup",
    "CyclicModM",
    "Z2",
    "cx",
    "Cochain",
    "CohomologyGroup",
    "differential",
    "cohomology",
    "restrict",
    "pullback",
    "coboundary_witness",
    "cohomologous_witness",
    "cup",
    "cup_i",
    "sq",
]


# ------------------------------------------------------------ coefficients


@dataclass(frozen=True)
class CoefficientGroup:
    """``kind`` is ``"cyclic"`` or ``"z2"``; ``action`` is a sign character.

    The action, when present, is a tuple of ``+1/-1`` indexed by group
    elements and acts by negation on the coefficient.
    """

    kind: str
    m: int
    action: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("cyclic", "z2"):
            raise SchemaError(f"unknown coefficient kind {self.kind!r}")
        if self.m < 1:
            raise SchemaError("modulus must be positive", m=self.m)
        if self.kind == "z2" and (self.m != 2 or self.action is not None):
            raise SchemaError("Z2 coefficients have modulus 2 and trivial action")
        if self.action is not None:
            act = tuple(int(s) for s in self.action)
            if any(s not in (1, -1) for s in act):
                raise SchemaError("action must be a tuple of signs")
            object.__setattr__(self, "action", None if all(s == 1 for s in act) else act)

    @property
    def is_cyclic(self) -> bool:
        return self.kind == "cyclic"

    def signs(self, group: FiniteGroup) -> tuple[int, ...]:
        if self.action is None:
            return (1,) * group.order
        if len(self.action) != group.order:
            raise CoefficientMismatch("action length differs from group order")
        return self.action

    def check_action(self, group: FiniteGroup):
        s = np.asarray(self.signs(group))
        if not (s[group.table] == s[:, None] * s[None, :]).all():
            from .errors import ActionNotHomomorphism

            raise ActionNotHomomorphism("sign action is not a homomorphism")

    def with_modulus(self, m: int) -> "CoefficientGroup":
        if not self.is_cyclic:
            if m != 2:
                raise CoefficientMismatch("Z2 coefficients cannot change modulus")
            return self
        return CoefficientGroup("cyclic", int(m), self.action)

    def compatible(self, other: "CoefficientGroup") -> bool:
        return self.kind == other.kind and self.action == other.action

    def to_json(self) -> dict:
        d = {"kind": self.kind, "m": self.m}
        if self.action is not None:
            d["action"] = list(self.action)
        return d

    @staticmethod
    def from_json(d: dict) -> "CoefficientGroup":
        try:
            return CoefficientGroup(d["kind"], int(d.get("m", 2)), d.get("action"))
        except (KeyError, TypeError):
            raise SchemaError("coefficient needs 'kind' and 'm'") from None

    def __str__(self):
        base = "Z2" if self.kind == "z2" else f"(1/{self.m})Z/Z"
        return base if self.action is None else base + "(signed)"


def CyclicModM(m: int, action=None) -> CoefficientGroup:
    return CoefficientGroup("cyclic", int(m), None if action is None else tuple(action))


Z2 = CoefficientGroup("z2", 2)


def cx(group: FiniteGroup, action=None) -> CoefficientGroup:
    """The C^x model for ``group``: ``(1/|G|)Z/Z``."""
    return CyclicModM(group.order, action)


# ----------------------------------------------------------------- cochains


@lru_cache(maxsize=256)
def _degenerate_mask(order: int, identity: int, n: int) -> np.ndarray:
    mask = np.ones(order ** n, dtype=bool)
    mask[kernels.normalized_positions(order, identity, n)] = False
    mask.setflags(write=False)
    return mask


@lru_cache(maxsize=256)
def _positions(order: int, identity: int, n: int) -> np.ndarray:
    p = kernels.normalized_positions(order, identity, n)
    p.setflags(write=False)
    return p


class Cochain:
    """A normalized function ``G^n -> coefficients``."""

    __slots__ = ("group", "degree", "coeff", "values")

    def __init__(self, group: FiniteGroup, degree: int, coeff: CoefficientGroup,
                 values, check: bool = True):
        if degree < 0:
            raise DegreeMismatch("negative degree", degree=degree)
        vals = np.array(values, dtype=np.int64).reshape(-1) % coeff.m
        if vals.size != group.order ** degree:
            raise ValidationError(
                f"degree-{degree} cochain on {group.name} needs {group.order ** degree} values",
                got=int(vals.size),
            )
        if check and degree > 0 and vals[_degenerate_mask(group.order, group.identity, degree)].any():
            raise ValidationError("cochain is not normalized")
        vals.setflags(write=False)
        self.group = group
        self.degree = degree
        self.coeff = coeff
        self.values = vals

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, group: FiniteGroup, degree: int, coeff: CoefficientGroup) -> "Cochain":
        return cls(group, degree, coeff, np.zeros(group.order ** degree, dtype=np.int64), check=False)

    @classmethod
    def from_normalized(cls, group, degree, coeff, vector) -> "Cochain":
        vals = np.zeros(group.order ** degree, dtype=np.int64)
        vals[_positions(group.order, group.identity, degree)] = np.asarray(vector, dtype=np.int64)
        return cls(group, degree, coeff, vals, check=False)

    @classmethod
    def from_function(cls, group, degree, coeff, fn) -> "Cochain":
        if degree == 0:
            return cls(group, 0, coeff, [int(fn())], check=False)
        idx = np.indices((group.order,) * degree).reshape(degree, -1).T
        vals = [0 if group.identity in row else int(fn(*row)) for row in idx.tolist()]
        return cls(group, degree, coeff, vals, check=False)

    @classmethod
    def random(cls, group, degree, coeff, rng: np.random.Generator) -> "Cochain":
        k = linalg.cochain_dim(group, degree) if degree else 1
        return cls.from_normalized(group, degree, coeff, rng.integers(0, coeff.m, k))

    # access -----------------------------------------------------------
    def normalized(self) -> np.ndarray:
        return self.values[_positions(self.group.order, self.group.identity, self.degree)]

    def __call__(self, *args: int) -> int:
        if len(args) != self.degree:
            raise DegreeMismatch(f"expected {self.degree} arguments")
        i = 0
        for a in args:
            i = i * self.group.order + int(a)
        return int(self.values[i])

    def is_zero(self) -> bool:
        return not self.values.any()

    def __repr__(self):
        return f"Cochain({self.group.name}, deg={self.degree}, {self.coeff}, nnz={int(np.count_nonzero(self.values))})"

    # arithmetic in Q/Z ------------------------------------------------
    def _aligned(self, other: "Cochain"):
        if self.group != other.group:
            raise BaseMismatch("cochains live on different groups")
        if self.degree != other.degree:
            raise DegreeMismatch("cochains have different degrees",
                                 degrees=[self.degree, other.degree])
        if not self.coeff.compatible(other.coeff):
            raise CoefficientMismatch("incompatible coefficient groups")
        L = lcm(self.coeff.m, other.coeff.m)
        return (L, self.values * (L // self.coeff.m), other.values * (L // other.coeff.m))

    def __add__(self, other: "Cochain") -> "Cochain":
        L, a, b = self._aligned(other)
        return Cochain(self.group, self.degree, self.coeff.with_modulus(L), a + b, check=False)

    def __sub__(self, other: "Cochain") -> "Cochain":
        L, a, b = self._aligned(other)
        return Cochain(self.group, self.degree, self.coeff.with_modulus(L), a - b, check=False)

    def __neg__(self) -> "Cochain":
        return Cochain(self.group, self.degree, self.coeff, -self.values, check=False)

    def __mul__(self, k: int) -> "Cochain":
        return Cochain(self.group, self.degree, self.coeff, self.values * int(k), check=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        try:
            _, a, b = self._aligned(other)
        except ValidationError:
            return False
        return bool((a == b).all())

    def __hash__(self):
        g = gcd(self.coeff.m, *[int(v) for v in np.unique(self.values)]) if self.values.any() else self.coeff.m
        red = self.values // g
        return hash((self.group, self.degree, self.coeff.kind, self.coeff.action,
                     self.coeff.m // g, red.tobytes()))

    def rescale(self, m: int) -> "Cochain":
        """Same Q/Z-valued cochain written over ``(1/m)Z/Z`` (``m`` a multiple)."""
        if not self.coeff.is_cyclic:
            raise CoefficientMismatch("only cyclic coefficients can be rescaled")
        if m % self.coeff.m:
            raise CoefficientMismatch(f"{m} is not a multiple of {self.coeff.m}")
        return Cochain(self.group, self.degree, self.coeff.with_modulus(m),
                       self.values * (m // self.coeff.m), check=False)

    def half_lift(self, m: int = 2) -> "Cochain":
        """``Z2 -> (1/m)Z/Z``, ``1 -> 1/2``; ``m`` must be even."""
        if self.coeff.is_cyclic:
            raise CoefficientMismatch("half_lift takes a Z2 cochain")
        if m % 2:
            raise CoefficientMismatch("half_lift needs an even modulus")
        return Cochain(self.group, self.degree, CyclicModM(m), self.values * (m // 2), check=False)

    def mod2(self) -> "Cochain":
        """Reduce an integer-valued ``Z/m`` cochain (``m`` even) to Z2."""
        if self.coeff.is_cyclic and self.coeff.m % 2:
            raise CoefficientMismatch("mod 2 reduction needs an even modulus")
        return Cochain(self.group, self.degree, Z2, self.values % 2, check=False)

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        d = {"group": self.group.name, "degree": self.degree,
             "coeff": self.coeff.to_json(), "values": self.values.tolist()}
        if not _is_catalog_group(self.group):
            d["table"] = self.group.table.tolist()
        return d

    @staticmethod
    def from_json(d: dict, group: FiniteGroup | None = None) -> "Cochain":
        from .catalog import get_group
        from .groups import group_from_table

        try:
            if group is None:
                group = (group_from_table(d["table"], name=d["group"]) if "table" in d
                         else get_group(d["group"]))
            coeff = CoefficientGroup.from_json(d["coeff"])
            return Cochain(group, int(d["degree"]), coeff, d["values"])
        except (KeyError, TypeError):
            raise SchemaError("cochain needs 'group', 'degree', 'coeff', 'values'") from None


def _is_catalog_group(g: FiniteGroup) -> bool:
    from .catalog import catalog

    return any(h.name == g.name and h == g for h in catalog())


# ------------------------------------------------------------- differential


def differential(c: Cochain) -> Cochain:
    """Inhomogeneous bar differential (sign action on the first argument)."""
    signs = np.asarray(c.coeff.signs(c.group), dtype=np.int64)
    vals = kernels.coboundary(c.group.table, signs, c.values, c.degree, c.coeff.m)
    return Cochain(c.group, c.degree + 1, c.coeff, vals, check=False)


def is_cocycle(c: Cochain) -> bool:
    return differential(c).is_zero()


def _require_cocycle(c: Cochain, what: str = "cochain"):
    dc = differential(c)
    if not dc.is_zero():
        nz = int(np.nonzero(dc.values)[0][0])
        args = np.unravel_index(nz, (c.group.order,) * dc.degree)
        raise NotACocycle(f"{what} is not a cocycle", at=[int(a) for a in args],
                          value=int(dc.values[nz]))


# ----------------------------------------------------------------- cohomology


def _factor(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _crt(residues: list[tuple[int, int]]) -> int:
    x, mod = 0, 1
    for r, q in residues:
        # q coprime to mod by construction
        t = (r - x) * pow(mod, -1, q) % q if q > 1 else 0
        x += mod * t
        mod *= q
    return x % mod


class CohomologyGroup:
    """``H^n(G; coeff)`` as ``Z/d_1 x ... x Z/d_r`` with ``d_1 | d_2 | ...``.

    ``generators[i]`` is a cocycle of order ``invariant_factors[i]``;
    :meth:`coordinates` sends any cocycle to its class in this basis.
    """

    def __init__(self, group, coeff, degree, invariant_factors, generators, coord_data):
        self.group = group
        self.coeff = coeff
        self.degree = degree
        self.invariant_factors = tuple(int(d) for d in invariant_factors)
        self.generators = tuple(generators)
        self._coord = coord_data

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __repr__(self):
        return f"H^{self.degree}({self.group.name}; {self.coeff}) = {self.invariant_factors or 0}"

    def _check_shape(self, c: Cochain):
        if c.group != self.group or c.degree != self.degree:
            raise DegreeMismatch("cochain does not belong to this cohomology group")
        if not c.coeff.compatible(self.coeff):
            raise CoefficientMismatch("cochain coefficients differ from the group's")

    def _normalize_input(self, c: Cochain) -> Cochain:
        m = self.coeff.m
        if not self.coeff.is_cyclic or c.coeff.m == m:
            return c
        if m % c.coeff.m == 0:
            return c.rescale(m)
        if m % self.group.order:
            raise CoefficientMismatch(
                f"cannot locate a (1/{c.coeff.m})-valued class in a modulus-{m} group")
        # Push the class into (1/|G|)Z/Z: |G| c = d beta, then c - d(beta/|G|).
        n = self.group.order
        beta = coboundary_witness(c * n)
        if beta is None:  # pragma: no cover - |G| kills cohomology
            raise CoefficientMismatch("class is not |G|-torsion")
        fine = Cochain(self.group, beta.degree, beta.coeff.with_modulus(beta.coeff.m * n),
                       beta.values, check=False)
        adjusted = c - differential(fine)
        L = adjusted.coeff.m
        vals = adjusted.values
        step = L // n
        if (vals % step).any():  # pragma: no cover
            raise CoefficientMismatch("internal: class did not reduce to |G|-torsion values")
        out = Cochain(self.group, self.degree, self.coeff.with_modulus(n), vals // step, check=False)
        return out.rescale(m)

    def coordinates(self, c: Cochain) -> tuple[int, ...]:
        """Class of the cocycle ``c``; raises NotACocycle otherwise."""
        self._check_shape(c)
        _require_cocycle(c)
        if self.is_trivial():
            return ()
        c = self._normalize_input(c)
        d = self._coord
        m = self.coeff.m
        vec = c.normalized()
        u = (d["scale"] * linalg.matmul_mod(d["Pbar"], vec, m)) % m
        v = linalg.matmul_mod(d["P2"], u, m)
        t = [linalg.divide(int(v[i]), int(d["D2"][i]), m) % int(d["orders"][i])
             for i in range(len(d["orders"]))]
        coords = []
        for parts, dd in zip(d["regroup"], self.invariant_factors):
            coords.append(_crt([(t[j] * cj % pv, pv) for (j, cj, pv) in parts]) % dd)
        return tuple(coords)

    def element(self, coords) -> Cochain:
        out = Cochain.zero(self.group, self.degree, self.coeff)
        for k, g in zip(coords, self.generators):
            out = out + g * int(k)
        return out

    def elements(self):
        """All coordinate vectors, lexicographic."""
        from itertools import product

        return product(*[range(d) for d in self.invariant_factors])

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "degree": self.degree,
            "coeff": self.coeff.to_json(),
            "invariant_factors": list(self.invariant_factors),
            "generators": [g.to_json() for g in self.generators],
        }


def _regroup(orders: list[int]):
    """Primary decomposition of ``Z/o_1 x ... x Z/o_k`` into invariant factors.

    Returns ``(factors, parts)``: ascending invariant factors and, per factor,
    the list ``(j, crt_coefficient, prime_power)`` of primary pieces it gathers,
    each piece being ``(o_j / prime_power) * gen_j``.
    """
    by_prime: dict[int, list[tuple[int, int, int]]] = {}
    for j, o in enumerate(orders):
        for p, v in _factor(o).items():
            pv = p ** v
            c = pow(o // pv % pv, -1, pv)
            by_prime.setdefault(p, []).append((pv, j, c))
    for p in by_prime:
        by_prime[p].sort(key=lambda e: (-e[0], e[1]))
    r = max((len(v) for v in by_prime.values()), default=0)
    factors, parts = [], []
    for t in range(r):
        d, gathered = 1, []
        for p in sorted(by_prime):
            lst = by_prime[p]
            if t < len(lst):
                pv, j, c = lst[t]
                d *= pv
                gathered.append((j, c, pv))
        factors.append(d)
        parts.append(gathered)
    factors.reverse()
    parts.reverse()
    return factors, parts


_coh_cache: dict = {}


def cohomology(group: FiniteGroup, coeff: CoefficientGroup, n: int) -> CohomologyGroup:
    """``H^n(group; coeff)`` with deterministic representative cocycles."""
    if n < 0:
        raise DegreeMismatch("negative degree", degree=n)
    key = (group, coeff, n)
    hit = _coh_cache.get(key)
    if hit is not None:
        return hit
    coeff.check_action(group)
    signs = coeff.signs(group)
    m = coeff.m
    s = group.order if coeff.is_cyclic else 1
    cn = linalg.cochain_dim(group, n)
    if cn == 0 or m == 1:
        res = CohomologyGroup(group, coeff, n, (), (), None)
        _coh_cache[key] = res
        return res
    linalg.check_cells(group, n)
    K = linalg.kernel_basis(group, signs, n, m)
    if n == 0:
        f = np.full(1, m, dtype=np.int64)
        P = np.eye(1, dtype=np.int64)
    else:
        rel = linalg.snf(group, signs, n - 1, s * m, want_q=False)
        g = rel.row_moduli()
        f = g // np.gcd(g, s)
        P = np.asarray(rel.P) % m
    rows = np.nonzero(f > 1)[0]
    Pbar = P[rows]
    scale = (m // f[rows]).astype(np.int64)
    if K.shape[1] == 0 or rows.size == 0:
        res = CohomologyGroup(group, coeff, n, (), (), None)
        _coh_cache[key] = res
        return res
    Psi = (scale[:, None] * linalg.matmul_mod(Pbar, K, m)) % m
    D2, P2, Q2, _ = kernels.snf_mod(Psi, m, True, True)
    D2 = np.asarray(D2)
    orders = m // np.gcd(D2, m)
    J = np.nonzero(orders > 1)[0]
    gens_mat = linalg.matmul_mod(K, np.asarray(Q2)[:, J], m)
    orders = [int(o) for o in orders[J]]
    factors, parts = _regroup(orders)
    generators = []
    for gathered in parts:
        vec = np.zeros(cn, dtype=np.int64)
        for (j, _c, pv) in gathered:
            vec = (vec + (orders[j] // pv) * gens_mat[:, j]) % m
        generators.append(Cochain.from_normalized(group, n, coeff, vec))
    coord = {
        "Pbar": Pbar, "scale": scale, "P2": np.asarray(P2)[J], "D2": D2[J],
        "orders": orders, "regroup": parts,
    }
    res = CohomologyGroup(group, coeff, n, factors, generators, coord)
    _coh_cache[key] = res
    return res


# ------------------------------------------------------------ pullbacks


def pullback(c: Cochain, f: GroupHom) -> Cochain:
    """``f^* c``: ``(f^* c)(h_1..h_n) = c(f h_1, .., f h_n)``."""
    if f.target != c.group:
        raise BaseMismatch("homomorphism target is not the cochain's group")
    src = f.source
    fm = np.asarray(f.map, dtype=np.int64)
    n = c.degree
    coeff = c.coeff
    if coeff.action is not None:
        coeff = CoefficientGroup(coeff.kind, coeff.m, tuple(coeff.action[x] for x in fm))
    if n == 0:
        return Cochain(src, 0, coeff, c.values, check=False)
    idx = np.indices((src.order,) * n, dtype=np.int64).reshape(n, -1)
    flat = np.zeros(idx.shape[1], dtype=np.int64)
    for row in idx:
        flat = flat * c.group.order + fm[row]
    return Cochain(src, n, coeff, c.values[flat], check=False)


def restrict(c: Cochain, emb: GroupHom) -> Cochain:
    """Pullback along an injective homomorphism."""
    require_injective(emb)
    return pullback(c, emb)


# ------------------------------------------------------------ witnesses


def coboundary_witness(c: Cochain) -> Cochain | None:
    """Some ``mu`` with ``d mu = c``, or ``None`` when ``[c] != 0``.

    For cyclic coefficients the witness is first sought over the same
    modulus ``m``; failing that over ``m*|G|``, which suffices for any
    Q/Z-valued solution to exist.
    """
    if c.degree == 0:
        raise DegreeMismatch("degree-0 cochains are never coboundaries of anything")
    _require_cocycle(c)
    g = c.group
    signs = c.coeff.signs(g)
    rhs = c.normalized()
    attempts = [(c.coeff.m, 1)]
    if c.coeff.is_cyclic and g.order > 1:
        attempts.append((c.coeff.m * g.order, g.order))
    for N, scale in attempts:
        x = linalg.solve(g, signs, c.degree - 1, rhs * scale, N)
        if x is not None:
            return Cochain.from_normalized(g, c.degree - 1, c.coeff.with_modulus(N), x)
    return None


def cohomologous_witness(a: Cochain, b: Cochain) -> Cochain | None:
    """``mu`` with ``d mu = a - b``, or ``None``."""
    if a.degree != b.degree:
        raise DegreeMismatch("cocycles have different degrees", degrees=[a.degree, b.degree])
    if a.group != b.group:
        raise BaseMismatch("cocycles live on different groups")
    if not a.coeff.compatible(b.coeff):
        raise CoefficientMismatch("incompatible coefficient groups")
    _require_cocycle(a, "first argument")
    _require_cocycle(b, "second argument")
    return coboundary_witness(a - b)


# ------------------------------------------------------------ products


@lru_cache(maxsize=64)
def _prefixes(group: FiniteGroup, n: int):
    """Running products ``g_1 ... g_v`` for every cell of ``G^n``."""
    idx = np.indices((group.order,) * n, dtype=np.int64).reshape(n, -1) if n else np.zeros((0, 1), dtype=np.int64)
    cells = idx.shape[1]
    pref = [np.full(cells, group.identity, dtype=np.int64)]
    for v in range(n):
        pref.append(group.table[pref[-1], idx[v]])
    for arr in pref:
        arr.setflags(write=False)
    return tuple(pref)


@lru_cache(maxsize=1024)
def _face_index(group: FiniteGroup, n: int, verts: tuple[int, ...]) -> np.ndarray:
    """Flat index of the sub-simplex spanned by ``verts`` for every cell of ``G^n``."""
    pref = _prefixes(group, n)
    inv = group.inverse
    flat = np.zeros(pref[0].shape, dtype=np.int64)
    for a, b in zip(verts[:-1], verts[1:]):
        flat = flat * group.order + group.table[inv[pref[a]], pref[b]]
    flat.setflags(write=False)
    return flat


def _face_values(c: Cochain, n: int, verts) -> np.ndarray:
    """Evaluate ``c`` on the face ``verts`` of each ``n``-cell."""
    if c.degree == 0:
        return np.full(c.group.order ** n, c.values[0], dtype=np.int64)
    return c.values[_face_index(c.group, n, tuple(verts))]


@lru_cache(maxsize=256)
def _intervals(p: int, q: int, i: int) -> tuple:
    """Vertex sets ``(even, odd)`` of the interval formula for ``cup_i``."""
    n = p + q - i
    out = []
    for js in combinations(range(n + 1), i + 1):
        bounds = [0, *js, n]
        even, odd = set(), set()
        for k in range(i + 2):
            seg = range(bounds[k], bounds[k + 1] + 1)
            (even if k % 2 == 0 else odd).update(seg)
        if len(even) == p + 1 and len(odd) == q + 1:
            out.append((tuple(sorted(even)), tuple(sorted(odd))))
    return tuple(out)


def _check_pair(a: Cochain, b: Cochain):
    if a.group != b.group:
        raise BaseMismatch("cochains live on different groups")


def cup(a: Cochain, b: Cochain) -> Cochain:
    """Alexander-Whitney cup product.

    Z2 x Z2 -> Z2, or ``Z/m x Z/m -> Z/m`` (ring product of the integer
    representatives) for two cyclic cochains with the same modulus.
    """
    _check_pair(a, b)
    if a.coeff.kind != b.coeff.kind or a.coeff.m != b.coeff.m:
        raise CoefficientMismatch("cup needs matching coefficient rings")
    if not a.coeff.is_cyclic:
        return cup_i(a, b, 0)
    g = a.group
    p, q = a.degree, b.degree
    n = p + q
    pref = _prefixes(g, n)
    va = _face_values(a, n, range(0, p + 1))
    vb = _face_values(b, n, range(p, n + 1))
    sb = np.asarray(b.coeff.signs(g), dtype=np.int64)
    vals = va * sb[pref[p]] * vb
    if a.coeff.action is None and b.coeff.action is None:
        act = None
    else:
        sa = np.asarray(a.coeff.signs(g))
        act = tuple(int(x) for x in sa * sb)
    coeff = CoefficientGroup("cyclic", a.coeff.m, act)
    return Cochain(g, n, coeff, vals, check=False)


def cup_i(a: Cochain, b: Cochain, i: int) -> Cochain:
    """Steenrod's ``a cup_i b`` over Z2 (explicit interval formula)."""
    _check_pair(a, b)
    for c in (a, b):
        if c.coeff.is_cyclic:
            raise CoefficientMismatch("cup_i is implemented for Z2 coefficients only")
    p, q = a.degree, b.degree
    n = p + q - i
    g = a.group
    if i < 0 or n < max(p, q):
        return Cochain.zero(g, max(n, 0), Z2)
    acc = np.zeros(g.order ** n, dtype=np.int64)
    for even, odd in _intervals(p, q, i):
        acc ^= _face_values(a, n, even) & _face_values(b, n, odd)
    return Cochain(g, n, Z2, acc, check=False)


def sq(k: int, a: Cochain) -> Cochain:
    """Cochain-level Steenrod square ``Sq^k a = a cup_{deg a - k} a``."""
    if a.coeff.is_cyclic:
        raise CoefficientMismatch("Steenrod squares take Z2 cochains")
    if k < 0 or k > a.degree:
        return Cochain.zero(a.group, a.degree + max(k, 0), Z2)
    return cup_i(a, a, a.degree - k)

"""A cochain model of degree-3 and degree-4 supercohomology.

A class is a triple ``(n2, n3, nu4)`` on the base ``G_b = G/<z>`` of a
supergroup, where ``kappa`` is the extension cocycle of ``G -> G_b``.  For
degree ``n`` the three layers have degrees ``n-2, n-1, n`` (the field names
follow the degree-4 case) and satisfy

    d n2  = 0
    d n3  = Sq^2 n2 + kappa u n2                          (mod 2)
    d nu4 = 1/2 * lift(Sq^2 n3 + kappa u n3)             (in Q/Z)

with ``Sq^2 y = y u_{deg y - 2} y``.  Everything that depends on this
particular choice of equations lives in :class:`EquationSet`; the layered
enumeration and canonicalization only call its methods.

Gauge moves (applied one at a time, each with an explicit transport of the
higher layers) generate the equivalence relation:

* ``("w", w)``: ``n2 -> n2 + dw``, ``n3 -> n3 + corr(n2, w)``;
* ``("x", x)``: ``n3 -> n3 + dx``;
* ``("y", y)``: ``nu4 -> nu4 + dy`` with ``y`` any Q/Z-valued cochain.

When a move changes ``n3``, ``nu4`` is shifted by ``1/2 lift(e)`` with
``de = Sq^2 n3' + kappa n3' - (Sq^2 n3 + kappa n3)``; ``e`` is an explicit
formula where one is known and otherwise the canonical linear solution.  If no
mod-2 ``e`` exists, a Q/Z-valued primitive of ``1/2 lift(...)`` is used instead.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from . import linalg
from .cohomology import (
    Cochain,
    CyclicModM,
    Z2,
    coboundary_witness,
    cohomology,
    cup,
    cup_i,
    cx,
    differential,
    pullback,
    sq,
)
from .errors import (
    BaseMismatch,
    DegreeMismatch,
    EnumerationLimitExceeded,
    GaugeTransportError,
    NotACocycle,
)
from .groups import (
    CentralExtensionPresentation,
    FiniteGroup,
    Supergroup,
    SupergroupHom,
    automorphisms,
    base_map,
    limits,
    quotient_by_z,
)

__all__ = [
    "EquationSet",
    "GU_WEN",
    "SupercohomologyTriple",
    "SupercohomologySet",
    "ShEquivalence",
    "sh_triples",
    "sh_equivalent",
    "sh_pullback",
    "sh_orbits",
    "sh_add",
    "canonicalize",
    "apply_move",
    "check_equations",
    "zero_triple",
]


# ----------------------------------------------------------- equation seam


class EquationSet:
    """The coupled equations and their transport formulas.

    Subclass and override to try a different twist; pass the instance to
    :func:`sh_triples` and friends.
    """

    name = "gu-wen"

    @staticmethod
    def sq2(y: Cochain) -> Cochain:
        return sq(2, y)

    def a_rhs(self, kappa: Cochain, a: Cochain) -> Cochain:
        """Required value of ``d n3``."""
        return self.sq2(a) + cup(kappa, a)

    def b_rhs(self, kappa: Cochain, b: Cochain) -> Cochain:
        """``X(b)``; ``d nu4`` must equal ``1/2 lift X(b)``."""
        return self.sq2(b) + cup(kappa, b)

    def corr(self, kappa: Cochain, a: Cochain, w: Cochain) -> Cochain:
        """Shift of ``n3`` accompanying ``n2 -> n2 + dw``."""
        out = cup(kappa, w)
        if a.degree >= 2:
            dw = differential(w)
            out = out + cup_i(a, dw, a.degree - 1) + cup(w, dw)
        return out

    def x_transport(self, kappa: Cochain, b: Cochain, x: Cochain) -> Cochain:
        """A primitive of ``X(b + dx) - X(b)`` up to ``db u_{i+1} dx``."""
        i = b.degree - 2
        dx = differential(x)
        e = cup_i(b, dx, i + 1) + cup_i(x, dx, i) + cup(kappa, x)
        if i >= 1:
            e = e + cup_i(x, x, i - 1)
        return e

    def sum_b(self, a1: Cochain, a2: Cochain) -> Cochain:
        """Correction to ``n3 + n3'`` in the group law.

        ``a1 u_{k-1} a2`` in every degree ``k``: for ``k = 1`` it is a plain
        cup product, which the equations alone would not force.
        """
        return cup_i(a1, a2, a1.degree - 1)

    def sum_transport(self, b1: Cochain, b2: Cochain) -> Cochain:
        """A primitive of ``X(b1 + b2) - X(b1) - X(b2)`` when both are closed."""
        return cup_i(b1, b2, b1.degree - 1)

    def section_shift(self, sigma: Cochain, a: Cochain) -> Cochain:
        """Shift of pulled-back ``n3`` when sections disagree by ``sigma``."""
        return cup(sigma, a)


GU_WEN = EquationSet()


# ----------------------------------------------------------------- triples


@dataclass(frozen=True, eq=False)
class SupercohomologyTriple:
    base: FiniteGroup
    kappa: Cochain
    n2: Cochain
    n3: Cochain
    nu4: Cochain

    @property
    def degree(self) -> int:
        return self.nu4.degree

    def same_base(self, other: "SupercohomologyTriple") -> bool:
        return (self.base == other.base and self.kappa == other.kappa
                and self.degree == other.degree)

    def __eq__(self, other):
        if not isinstance(other, SupercohomologyTriple):
            return NotImplemented
        return (self.same_base(other) and self.n2 == other.n2 and self.n3 == other.n3
                and self.nu4 == other.nu4)

    def __hash__(self):
        return hash((self.base, self.degree, self.n2, self.n3, self.nu4))

    def is_zero(self) -> bool:
        return self.n2.is_zero() and self.n3.is_zero() and self.nu4.is_zero()

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "kappa": self.kappa.to_json(),
            "n2": self.n2.to_json(),
            "n3": self.n3.to_json(),
            "nu4": self.nu4.to_json(),
        }

    @staticmethod
    def from_json(d: dict, base: FiniteGroup | None = None) -> "SupercohomologyTriple":
        kappa = Cochain.from_json(d["kappa"], base)
        g = kappa.group
        return SupercohomologyTriple(
            g, kappa, Cochain.from_json(d["n2"], g), Cochain.from_json(d["n3"], g),
            Cochain.from_json(d["nu4"], g),
        )


def _c_modulus(base: FiniteGroup) -> int:
    return 2 * base.order


def zero_triple(base: FiniteGroup, kappa: Cochain, degree: int = 4) -> SupercohomologyTriple:
    _check_degree(degree)
    return SupercohomologyTriple(
        base, kappa,
        Cochain.zero(base, degree - 2, Z2),
        Cochain.zero(base, degree - 1, Z2),
        Cochain.zero(base, degree, CyclicModM(_c_modulus(base))),
    )


def _check_degree(degree: int):
    if degree not in (3, 4):
        raise DegreeMismatch("supercohomology is modelled in degrees 3 and 4 only", degree=degree)


def check_equations(t: SupercohomologyTriple, eqs: EquationSet = GU_WEN) -> list[str]:
    """Names of violated equations (empty list when the triple is valid)."""
    bad = []
    if not differential(t.n2).is_zero():
        bad.append("d n2 = 0")
    if differential(t.n3) != eqs.a_rhs(t.kappa, t.n2):
        bad.append("d n3 = Sq2 n2 + kappa n2")
    target = eqs.b_rhs(t.kappa, t.n3).half_lift(2)
    if differential(t.nu4) != target:
        bad.append("d nu4 = 1/2 (Sq2 n3 + kappa n3)")
    return bad


def _require_valid(t: SupercohomologyTriple, eqs: EquationSet):
    bad = check_equations(t, eqs)
    if bad:
        raise NotACocycle("triple violates its equations", violated=bad)


def _solve_mod2(rhs: Cochain) -> Cochain | None:
    """Canonical ``e`` with ``de = rhs`` over Z2 (``None`` if unsolvable)."""
    if rhs.is_zero():
        return Cochain.zero(rhs.group, rhs.degree - 1, Z2)
    g = rhs.group
    x = linalg.solve(g, (1,) * g.order, rhs.degree - 1, rhs.normalized(), 2)
    if x is None:
        return None
    return Cochain.from_normalized(g, rhs.degree - 1, Z2, x)


def _half_primitive(delta: Cochain, e: Cochain | None, M: int, what: str) -> Cochain:
    """A Q/Z cochain ``s`` with ``ds = 1/2 lift(delta)``, starting from the guess ``e``.

    The residual is first solved mod 2 (so that ``s = 1/2 lift(e')``); when
    that fails a finer Q/Z primitive is used (``1/2 lift`` of a cocycle can
    be a coboundary without the cocycle being one mod 2).
    """
    if e is None:
        e = Cochain.zero(delta.group, delta.degree - 1, Z2)
    residual = delta + differential(e)
    out = e.half_lift(M)
    if residual.is_zero():
        return out
    fix = _solve_mod2(residual)
    if fix is not None:
        return out + fix.half_lift(M)
    y = None
    if differential(residual).is_zero():
        y = coboundary_witness(residual.half_lift(M))
    if y is None:
        raise GaugeTransportError(f"{what} admits no nu4 transport", degree=delta.degree - 1)
    return out + y


def _transport(t: SupercohomologyTriple, new_b: Cochain, explicit: Cochain | None,
               eqs: EquationSet) -> Cochain:
    """``nu4`` shift making ``(.., new_b, ..)`` valid again."""
    delta = eqs.b_rhs(t.kappa, new_b) + eqs.b_rhs(t.kappa, t.n3)
    return t.nu4 + _half_primitive(delta, explicit, _c_modulus(t.base), "this gauge move")


def apply_move(t: SupercohomologyTriple, move, eqs: EquationSet = GU_WEN) -> SupercohomologyTriple:
    """Apply one gauge move ``(kind, cochain)``; see the module docstring."""
    kind, p = move
    if kind == "w":
        a = t.n2 + differential(p)
        b = t.n3 + eqs.corr(t.kappa, t.n2, p)
        return SupercohomologyTriple(t.base, t.kappa, a, b, _transport(t, b, None, eqs))
    if kind == "x":
        b = t.n3 + differential(p)
        c = _transport(t, b, eqs.x_transport(t.kappa, t.n3, p), eqs)
        return SupercohomologyTriple(t.base, t.kappa, t.n2, b, c)
    if kind == "y":
        return SupercohomologyTriple(t.base, t.kappa, t.n2, t.n3, t.nu4 + differential(p))
    raise ValueError(f"unknown move kind {kind!r}")


def apply_path(t: SupercohomologyTriple, path, eqs: EquationSet = GU_WEN) -> SupercohomologyTriple:
    for mv in path:
        t = apply_move(t, mv, eqs)
    return t


# ------------------------------------------------------ layered structure


class _Layers:
    """Lazily computed layer data for one ``(base, kappa, degree)``."""

    def __init__(self, base: FiniteGroup, kappa: Cochain, degree: int, eqs: EquationSet):
        self.base, self.kappa, self.degree, self.eqs = base, kappa, degree, eqs
        self.Ha = cohomology(base, Z2, degree - 2)
        self.Hb = cohomology(base, Z2, degree - 1)
        self.Hw = cohomology(base, Z2, degree - 3)
        self.Hc = cohomology(base, cx(base), degree)
        self.M = _c_modulus(base)
        self._lock = threading.Lock()
        self._a: dict = {}
        self._c0: dict = {}
        self._q = None

    # layer 2: n3 given a canonical n2 ---------------------------------
    def a_data(self, ca: tuple[int, ...]):
        with self._lock:
            hit = self._a.get(ca)
        if hit is not None:
            return hit
        a = self.Ha.element(ca) if ca else Cochain.zero(self.base, self.degree - 2, Z2)
        rhs = self.eqs.a_rhs(self.kappa, a)
        b0 = _solve_mod2(rhs)
        data = {"a": a, "b0": b0}
        if b0 is not None:
            ws = list(self.Hw.generators)
            rows = [self.Hb.coordinates(self.eqs.corr(self.kappa, a, w)) for w in ws]
            if rows and len(self.Hb.invariant_factors):
                R, piv, combo = linalg.rref_mod2(np.array(rows, dtype=np.int64))
            else:
                R, piv, combo = np.zeros((0, len(self.Hb.invariant_factors)), dtype=np.int64), [], None
            data.update(ws=ws, R=R, pivots=piv, combo=combo)
        with self._lock:
            self._a[ca] = data
        return data

    def b_cosets(self, ca):
        """Canonical coset vectors of ``H^{n-1} / S_a`` (lexicographic)."""
        d = self.a_data(ca)
        r = len(self.Hb.invariant_factors)
        free = [j for j in range(r) if j not in d["pivots"]]
        out = []
        for bits in product((0, 1), repeat=len(free)):
            v = np.zeros(r, dtype=np.int64)
            v[free] = bits
            out.append(tuple(int(x) for x in v))
        return sorted(out)

    # layer 3: nu4 given canonical n2, n3 ------------------------------
    def c0(self, ca, rb):
        key = (ca, rb)
        with self._lock:
            if key in self._c0:
                return self._c0[key]
        b = self.b_of(ca, rb)
        X = self.eqs.b_rhs(self.kappa, b)
        c0 = None
        if differential(X).is_zero():
            w = coboundary_witness(X.half_lift(2))
            if w is not None:
                c0 = w.rescale(self.M)
        with self._lock:
            self._c0[key] = c0
        return c0

    def b_of(self, ca, rb) -> Cochain:
        d = self.a_data(ca)
        return d["b0"] + self.Hb.element(rb) if rb else d["b0"]

    def q_group(self):
        """Subgroup of ``H^n(C^x)`` killed by closed ``x`` moves, with witnesses."""
        if self._q is not None:
            return self._q
        dims = self.Hc.invariant_factors
        gens = []
        for z in self.Ha.generators:
            e = self.eqs.sq2(z) + cup(self.kappa, z)
            gens.append((z, self.Hc.coordinates(e.half_lift(2))))
        zero = tuple(0 for _ in dims)
        elems = {zero: None}  # element -> (previous element, generator index)
        frontier = [zero]
        while frontier:
            nxt = []
            for v in frontier:
                for k, (_z, g) in enumerate(gens):
                    u = tuple((a + b) % d for a, b, d in zip(v, g, dims))
                    if u not in elems:
                        elems[u] = (v, k)
                        nxt.append(u)
            frontier = sorted(nxt)
        self._q = (gens, elems)
        return self._q

    def q_witness(self, q) -> Cochain | None:
        gens, elems = self.q_group()
        z = None
        while elems[q] is not None:
            prev, k = elems[q]
            z = gens[k][0] if z is None else z + gens[k][0]
            q = prev
        return z

    def c_cosets(self):
        _gens, elems = self.q_group()
        dims = self.Hc.invariant_factors
        reps = set()
        for v in product(*[range(d) for d in dims]):
            reps.add(self.c_rep(v)[0])
        return sorted(reps)

    def c_rep(self, v):
        _gens, elems = self.q_group()
        dims = self.Hc.invariant_factors
        best, best_q = None, None
        for q in elems:
            u = tuple((a + b) % d for a, b, d in zip(v, q, dims))
            if best is None or u < best:
                best, best_q = u, q
        return best, best_q

    def triple(self, ca, rb, rc) -> SupercohomologyTriple:
        d = self.a_data(ca)
        c = self.c0(ca, rb)
        if rc:
            c = c + self.Hc.element(rc).rescale(self.M)
        return SupercohomologyTriple(self.base, self.kappa, d["a"], self.b_of(ca, rb), c)


_layers_cache: dict = {}
_layers_lock = threading.Lock()


def _layers(base, kappa, degree, eqs) -> _Layers:
    key = (base, kappa, degree, id(eqs))
    with _layers_lock:
        hit = _layers_cache.get(key)
        if hit is None:
            hit = _Layers(base, kappa, degree, eqs)
            _layers_cache[key] = hit
    return hit


def _check_base(base: FiniteGroup):
    if base.order > limits.max_sh_base_order:
        raise EnumerationLimitExceeded(
            f"supercohomology base of order {base.order} exceeds cap {limits.max_sh_base_order}",
            order=base.order, cap=limits.max_sh_base_order,
        )


# ------------------------------------------------------- canonicalization


@dataclass(frozen=True, eq=False)
class Canonical:
    triple: SupercohomologyTriple
    key: tuple
    path: tuple


def canonicalize(t: SupercohomologyTriple, eqs: EquationSet = GU_WEN) -> Canonical:
    """Canonical representative of the class of ``t`` and a gauge path to it."""
    _check_degree(t.degree)
    _check_base(t.base)
    _require_valid(t, eqs)
    L = _layers(t.base, t.kappa, t.degree, eqs)
    path = []

    def step(cur, mv):
        path.append(mv)
        return apply_move(cur, mv, eqs)

    cur = t
    # layer 1
    ca = L.Ha.coordinates(t.n2)
    data = L.a_data(ca)
    if data["b0"] is None:  # pragma: no cover - valid triples have solvable n3
        raise GaugeTransportError("canonical n2 admits no n3")
    if cur.n2 != data["a"]:
        w = coboundary_witness(cur.n2 + data["a"])
        cur = step(cur, ("w", w))
    # layer 2
    vb = np.array(L.Hb.coordinates(cur.n3 + data["b0"]), dtype=np.int64)
    if len(data["pivots"]):
        rem, used = linalg.reduce_mod2(vb, data["R"], data["pivots"])
        if used.any():
            coeffs = (used @ data["combo"]) % 2
            w2 = None
            for c, w in zip(coeffs, data["ws"]):
                if c:
                    w2 = w if w2 is None else w2 + w
            if w2 is not None:
                cur = step(cur, ("w", w2))
    else:
        rem = vb
    rb = tuple(int(x) for x in rem)
    target_b = L.b_of(ca, rb)
    if cur.n3 != target_b:
        x = coboundary_witness(cur.n3 + target_b)
        cur = step(cur, ("x", x))
    # layer 3
    c0 = L.c0(ca, rb)
    if c0 is None:  # pragma: no cover
        raise GaugeTransportError("canonical n3 admits no nu4")
    vc = L.Hc.coordinates(cur.nu4 - c0)
    rc, q = L.c_rep(vc)
    z = L.q_witness(q)
    if z is not None:
        cur = step(cur, ("x", z))
    final = L.triple(ca, rb, rc)
    if cur.nu4 != final.nu4:
        y = coboundary_witness(final.nu4 - cur.nu4)
        if y is None:  # pragma: no cover - would mean the model is inconsistent
            raise GaugeTransportError("nu4 did not land in its canonical class")
        cur = step(cur, ("y", y))
    return Canonical(final, (tuple(ca), rb, tuple(rc)), tuple(path))


@dataclass(frozen=True)
class ShEquivalence:
    """Gauge paths taking each triple to their common canonical form."""

    first: tuple
    second: tuple
    canonical: SupercohomologyTriple

    def verify(self, t1, t2, eqs: EquationSet = GU_WEN) -> bool:
        return (apply_path(t1, self.first, eqs) == self.canonical
                and apply_path(t2, self.second, eqs) == self.canonical)


def sh_equivalent(t1: SupercohomologyTriple, t2: SupercohomologyTriple,
                  eqs: EquationSet = GU_WEN) -> ShEquivalence | None:
    if not t1.same_base(t2):
        raise BaseMismatch("triples live over different bases, twists or degrees")
    c1 = canonicalize(t1, eqs)
    c2 = canonicalize(t2, eqs)
    if c1.key != c2.key:
        return None
    return ShEquivalence(c1.path, c2.path, c1.triple)


# ------------------------------------------------------------- group law


def sh_add(t1: SupercohomologyTriple, t2: SupercohomologyTriple,
           eqs: EquationSet = GU_WEN) -> SupercohomologyTriple:
    """Cochain-level sum; canonicalize to compare classes."""
    if not t1.same_base(t2):
        raise BaseMismatch("triples live over different bases, twists or degrees")
    a = t1.n2 + t2.n2
    b = t1.n3 + t2.n3 + eqs.sum_b(t1.n2, t2.n2)
    delta = eqs.b_rhs(t1.kappa, b) + eqs.b_rhs(t1.kappa, t1.n3) + eqs.b_rhs(t1.kappa, t2.n3)
    e = eqs.sum_transport(t1.n3, t2.n3)
    c = t1.nu4 + t2.nu4 + _half_primitive(delta, e, _c_modulus(t1.base), "sum of triples")
    return SupercohomologyTriple(t1.base, t1.kappa, a, b, c)


# ------------------------------------------------------------ enumeration


@dataclass(frozen=True, eq=False)
class SupercohomologySet:
    """Canonical class representatives; the addition table is built on demand."""

    supergroup: Supergroup
    degree: int
    presentation: CentralExtensionPresentation
    classes: tuple[SupercohomologyTriple, ...]
    keys: tuple[tuple, ...]
    equations: EquationSet = field(default=GU_WEN, repr=False)

    @property
    def order(self) -> int:
        return len(self.classes)

    def index_of(self, t: SupercohomologyTriple) -> int:
        return self.keys.index(canonicalize(t, self.equations).key)

    @cached_property
    def addition(self) -> tuple[tuple[int, ...], ...]:
        index = {k: i for i, k in enumerate(self.keys)}
        eqs = self.equations
        table = [[0] * self.order for _ in range(self.order)]
        for i, t1 in enumerate(self.classes):
            for j in range(i, self.order):
                k = index[canonicalize(sh_add(t1, self.classes[j], eqs), eqs).key]
                table[i][j] = table[j][i] = k
        return tuple(tuple(r) for r in table)

    def to_json(self, with_table: bool = True) -> dict:
        d = {
            "supergroup": {"group": self.supergroup.group.name, "z": self.supergroup.z},
            "degree": self.degree,
            "order": self.order,
            "base": self.presentation.base.name,
            "kappa": self.presentation.kappa.values.tolist(),
            "classes": [
                {"key": [list(k) for k in key], "n2": t.n2.values.tolist(),
                 "n3": t.n3.values.tolist(), "nu4": t.nu4.values.tolist(),
                 "nu4_modulus": t.nu4.coeff.m}
                for key, t in zip(self.keys, self.classes)
            ],
        }
        if with_table:
            d["addition"] = [list(r) for r in self.addition]
        return d


def sh_triples(S: Supergroup, degree: int = 4, eqs: EquationSet = GU_WEN,
               threads: int = 1) -> SupercohomologySet:
    """All classes for ``S`` by the layered enumeration."""
    _check_degree(degree)
    pres = quotient_by_z(S)
    base, kappa = pres.base, pres.kappa
    _check_base(base)
    L = _layers(base, kappa, degree, eqs)

    def per_a(ca):
        d = L.a_data(ca)
        if d["b0"] is None:
            return []
        out = []
        for rb in L.b_cosets(ca):
            if L.c0(ca, rb) is None:
                continue
            for rc in L.c_cosets():
                out.append(((ca, rb, rc), L.triple(ca, rb, rc)))
        return out

    a_classes = sorted(tuple(int(x) for x in v) for v in L.Ha.elements())
    if threads > 1 and len(a_classes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            chunks = list(ex.map(per_a, a_classes))
    else:
        chunks = [per_a(ca) for ca in a_classes]
    items = sorted((it for ch in chunks for it in ch), key=lambda it: it[0])
    keys = tuple(k for k, _ in items)
    classes = tuple(t for _, t in items)
    return SupercohomologySet(S, degree, pres, classes, keys, eqs)


# ----------------------------------------------------------------- pullback


def sh_pullback(t: SupercohomologyTriple, f: SupergroupHom,
                eqs: EquationSet = GU_WEN) -> SupercohomologyTriple:
    """Pull ``t`` (over the base of ``f.target``) back to the base of ``f.source``.

    The layers are pulled back along the induced base map.  When the pulled
    back extension cocycle differs from the source's own ``kappa`` by ``d s``,
    the triple is moved over by the canonical ``s`` (``n3 += s u n2`` plus a
    ``nu4`` transport).  The section defect of ``f`` itself is not used: a
    change of section that leaves ``kappa`` unchanged acts trivially here.
    """
    src = quotient_by_z(f.source)
    tgt = quotient_by_z(f.target)
    if tgt.base != t.base or tgt.kappa != t.kappa:
        raise BaseMismatch("triple does not live over the target supergroup's base")
    fb, _sigma = base_map(f, src, tgt)
    kH = src.kappa
    a = pullback(t.n2, fb)
    b = pullback(t.n3, fb)
    c = pullback(t.nu4, fb)
    pulled_k = pullback(t.kappa, fb)
    shift = _solve_mod2(kH + pulled_k)
    if shift is None:  # pragma: no cover - base_map guarantees d sigma = difference
        raise GaugeTransportError("extension cocycles are not cohomologous")
    if not shift.is_zero():
        old_X = eqs.b_rhs(pulled_k, b)
        b = b + eqs.section_shift(shift, a)
        delta = eqs.b_rhs(kH, b) + old_X
        if not delta.is_zero():
            c = c + _half_primitive(delta, None, _c_modulus(src.base), "pullback")
    return SupercohomologyTriple(src.base, kH, a, b, c)


def sh_orbits(S: Supergroup, degree: int = 4, eqs: EquationSet = GU_WEN,
              sh: SupercohomologySet | None = None) -> list[list[int]]:
    """Partition of class indices into ``Aut(G, z)``-orbits."""
    sh = sh or sh_triples(S, degree, eqs)
    auts = automorphisms(S.group, fix_z=S.z)
    parent = list(range(sh.order))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for phi in auts:
        f = SupergroupHom(S, S, phi)
        for i, t in enumerate(sh.classes):
            j = sh.index_of(sh_pullback(t, f, eqs))
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(sh.order):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())

"""Classification tuples, their equivalence, and desk-scale enumeration.

A tuple records a braided category label ``A``, an embedding of supergroups
``(H, z) -> (G, z)``, an action label ``rho``, a class on ``G`` (a degree-4
cocycle ``pi`` in the bosonic case, a supercohomology triple ``varpi`` in the
fermionic case) and a trivialization ``mu`` of its restriction to ``H``.

The braided category and the action are opaque.  Everything else is checked
exactly; the anomaly-matching condition is only decidable when the action is
trivial, and is otherwise reported as unverifiable.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Union

from .cohomology import (
    Cochain,
    coboundary_witness,
    cohomologous_witness,
    cohomology,
    cx,
    differential,
    is_cocycle,
    pullback,
    restrict,
)
from .errors import (
    EnumerationLimitExceeded,
    NotACocycle,
    NotASubgroup,
    NotTrivializable,
    RestrictionNotStrictlyTrivial,
    SchemaError,
    ValidationError,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Supergroup,
    SupergroupHom,
    automorphisms,
    dual_action,
    find_isomorphism,
    limits,
    pontryagin_dual,
    quotient_by_z,
    semidirect_product,
    subgroups_up_to_conjugacy,
    supergroup_structures,
)
from .hypergroup import (
    DoubleCosetDecomposition,
    PossibilisticHypergroup,
    double_cosets,
    hypergroup_from_double_cosets,
    verify_hypergroup,
)
from .supercohomology import (
    SupercohomologyTriple,
    ShEquivalence,
    apply_path,
    canonicalize,
    check_equations,
    sh_equivalent,
    sh_pullback,
    sh_triples,
    zero_triple,
)

__all__ = [
    "BraidedCategoryLabel",
    "VECT",
    "SVECT",
    "TrivialAction",
    "OpaqueNamed",
    "ActionLabel",
    "ClassificationTuple",
    "TupleReport",
    "TupleEquivalence",
    "CategoricalGroup",
    "ReconstructionReport",
    "RankBound",
    "EnumerationEntry",
    "tuple_validate",
    "tuples_equivalent",
    "make_2vect_tuple",
    "make_2rep_tuple",
    "reconstruct",
    "rank_bound_holds",
    "enumerate_rank_bounded",
]

NONDEGENERATE = "nondegenerate"
SVECT_NONDEGENERATE = "sVect-nondegenerate"


# ------------------------------------------------------------------ labels


@dataclass(frozen=True)
class BraidedCategoryLabel:
    name: str
    rank: int
    witt_tag: str = "trivial"
    nondegeneracy: str = NONDEGENERATE
    aut_br_label: str = "trivial"

    def __post_init__(self):
        if self.rank < 1:
            raise ValidationError("rank must be positive", rank=self.rank)
        if self.nondegeneracy not in (NONDEGENERATE, SVECT_NONDEGENERATE):
            raise ValidationError(f"unknown nondegeneracy tag {self.nondegeneracy!r}")
        fixed = {"Vect": (1, NONDEGENERATE), "sVect": (2, SVECT_NONDEGENERATE)}
        if self.name in fixed and (self.rank, self.nondegeneracy) != fixed[self.name]:
            raise ValidationError(f"{self.name} has rank {fixed[self.name][0]} and "
                                  f"tag {fixed[self.name][1]}")

    def to_json(self) -> dict:
        return {"name": self.name, "rank": self.rank, "witt_tag": self.witt_tag,
                "nondegeneracy": self.nondegeneracy, "aut_br_label": self.aut_br_label}

    @staticmethod
    def from_json(d: dict) -> "BraidedCategoryLabel":
        try:
            return BraidedCategoryLabel(str(d["name"]), int(d["rank"]), str(d.get("witt_tag", "trivial")),
                                        str(d.get("nondegeneracy", NONDEGENERATE)),
                                        str(d.get("aut_br_label", "trivial")))
        except (KeyError, TypeError, ValueError):
            raise SchemaError("label needs 'name' and 'rank'") from None


VECT = BraidedCategoryLabel("Vect", 1)
SVECT = BraidedCategoryLabel("sVect", 2, nondegeneracy=SVECT_NONDEGENERATE)


@dataclass(frozen=True)
class TrivialAction:
    def to_json(self):
        return "trivial"


@dataclass(frozen=True)
class OpaqueNamed:
    name: str

    def to_json(self):
        return {"opaque": self.name}


Descriptor = Union[TrivialAction, OpaqueNamed]


@dataclass(frozen=True)
class ActionLabel:
    source: Supergroup
    descriptor: Descriptor = TrivialAction()

    @property
    def is_trivial(self) -> bool:
        return isinstance(self.descriptor, TrivialAction)


# ------------------------------------------------------------------ tuples


@dataclass(frozen=True, eq=False)
class ClassificationTuple:
    A: BraidedCategoryLabel
    embedding: SupergroupHom
    rho: ActionLabel
    pi: Cochain | None = None
    varpi: SupercohomologyTriple | None = None
    mu: object = None
    zero_point: str = "zero triple"

    @property
    def G(self) -> Supergroup:
        return self.embedding.target

    @property
    def H(self) -> Supergroup:
        return self.embedding.source

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.embedding.map)

    @property
    def is_fermionic(self) -> bool:
        return self.varpi is not None

    def with_embedding(self, emb: SupergroupHom) -> "ClassificationTuple":
        return ClassificationTuple(self.A, emb, ActionLabel(emb.source, self.rho.descriptor),
                                   self.pi, self.varpi, self.mu, self.zero_point)


@dataclass(frozen=True)
class TupleReport:
    status: str  # "pass", "fail" or "unverifiable"
    violation: str | None = None
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"status": self.status, "violation": self.violation, "witness": self.witness}


def _fail(violation, **witness) -> TupleReport:
    return TupleReport("fail", violation, witness)


def _structural(t: ClassificationTuple) -> TupleReport | None:
    emb = t.embedding
    if (t.pi is None) == (t.varpi is None):
        return _fail("ClassKind", detail="exactly one of pi and varpi must be given")
    if not emb.is_injective:
        return _fail("EmbeddingNotInjective", map=list(emb.map))
    if t.rho.source != t.H:
        return _fail("ActionSourceMismatch")
    if t.A.name == "Vect" and not t.rho.is_trivial:
        return _fail("VectActionNotTrivial", descriptor=t.rho.descriptor.to_json())
    if t.is_fermionic:
        if t.A.nondegeneracy != SVECT_NONDEGENERATE:
            return _fail("NondegeneracyMismatch", expected=SVECT_NONDEGENERATE)
        p = quotient_by_z(t.G)
        v = t.varpi
        if v.base != p.base or v.kappa != p.kappa:
            return _fail("TripleBaseMismatch")
        bad = check_equations(v)
        if bad:
            return _fail("TripleEquations", violated=bad)
    else:
        if t.A.nondegeneracy != NONDEGENERATE:
            return _fail("NondegeneracyMismatch", expected=NONDEGENERATE)
        if not t.G.is_bosonic:
            return _fail("BosonicNeedsTrivialZ", z=t.G.z)
        pi = t.pi
        if pi.group != t.G.group or pi.degree != 4 or not pi.coeff.is_cyclic:
            return _fail("PiShape", degree=pi.degree)
        if not is_cocycle(pi):
            return _fail("PiNotCocycle")
    return None


def _restricted(t: ClassificationTuple) -> Cochain:
    return pullback(t.pi, t.embedding.hom)


def _pulled_triple(t: ClassificationTuple) -> SupercohomologyTriple:
    return sh_pullback(t.varpi, t.embedding)


def tuple_validate(t: ClassificationTuple) -> TupleReport:
    bad = _structural(t)
    if bad is not None:
        return bad
    if not t.rho.is_trivial:
        return TupleReport("unverifiable", "AnomalyNotMachineCheckable",
                           {"descriptor": t.rho.descriptor.to_json()})
    if t.is_fermionic:
        pulled = _pulled_triple(t)
        zero = zero_triple(pulled.base, pulled.kappa, pulled.degree)
        if t.mu is None:
            return _fail("MissingTrivialization", trivializable=canonicalize(pulled).triple.is_zero())
        if apply_path(pulled, t.mu) != zero:
            return _fail("TrivializationMismatch", trivializable=canonicalize(pulled).triple.is_zero())
        return TupleReport("pass")
    res = _restricted(t)
    mu = t.mu
    if mu is None:
        return _fail("MissingTrivialization", trivializable=coboundary_witness(res) is not None)
    if not isinstance(mu, Cochain) or mu.group != t.H.group or mu.degree != 3:
        return _fail("MuShape")
    if differential(mu) != res:
        residual = res - differential(mu)
        return _fail("TrivializationMismatch",
                     trivializable=coboundary_witness(res) is not None,
                     residual_support=int((residual.values != 0).sum()))
    return TupleReport("pass")


# ------------------------------------------------------------- equivalence


def _conjugator(G: FiniteGroup, target: frozenset[int], sub: frozenset[int]) -> int | None:
    """Least ``c`` with ``c sub c^-1 = target``."""
    for c in G.elements:
        if G.conjugate_subgroup(c, sub) == target:
            return c
    return None


@dataclass(frozen=True)
class TupleEquivalence:
    """``phi: G -> G'`` with ``phi(H) = c H' c^-1`` and connecting data.

    Bosonic: ``d connecting = pi - phi^* pi'``.  Fermionic: ``connecting``
    is an :class:`ShEquivalence` between ``varpi`` and ``phi^* varpi'``.
    """

    phi: GroupHom
    conjugator: int
    connecting: object

    def verify(self, t1: ClassificationTuple, t2: ClassificationTuple) -> bool:
        phi = self.phi
        if phi.source != t1.G.group or phi.target != t2.G.group:
            return False
        if not (phi.is_injective and phi.is_homomorphism()) or phi(t1.G.z) != t2.G.z:
            return False
        G2 = t2.G.group
        if frozenset(phi(x) for x in t1.image) != G2.conjugate_subgroup(self.conjugator, t2.image):
            return False
        if t1.is_fermionic:
            other = sh_pullback(t2.varpi, SupergroupHom(t1.G, t2.G, phi))
            return isinstance(self.connecting, ShEquivalence) and self.connecting.verify(t1.varpi, other)
        return differential(self.connecting) == t1.pi - pullback(t2.pi, phi)

    def inverse(self, t1: ClassificationTuple, t2: ClassificationTuple) -> "TupleEquivalence":
        psi = self.phi.inverse()
        c = psi(t2.G.group.inv(self.conjugator))
        if t1.is_fermionic:
            conn = sh_equivalent(t2.varpi, sh_pullback(t1.varpi, SupergroupHom(t2.G, t1.G, psi)))
        else:
            conn = -pullback(self.connecting, psi)
        return TupleEquivalence(psi, c, conn)

    def compose(self, other: "TupleEquivalence", t1: ClassificationTuple,
                t3: ClassificationTuple) -> "TupleEquivalence":
        """``self: t1 -> t2`` followed by ``other: t2 -> t3``."""
        phi = other.phi.compose(self.phi)
        G3 = other.phi.target
        c = G3.mul(other.phi(self.conjugator), other.conjugator)
        if t1.is_fermionic:
            conn = sh_equivalent(t1.varpi, sh_pullback(t3.varpi, SupergroupHom(t1.G, t3.G, phi)))
        else:
            conn = self.connecting + pullback(other.connecting, self.phi)
        return TupleEquivalence(phi, c, conn)

    def to_json(self) -> dict:
        conn = self.connecting
        return {
            "phi": list(self.phi.map),
            "conjugator": self.conjugator,
            "connecting": conn.to_json() if isinstance(conn, Cochain) else path_to_json(conn.first),
        }


def _isomorphisms(S1: Supergroup, S2: Supergroup) -> list[GroupHom]:
    f0 = find_isomorphism(S1.group, S2.group, S1.z, S2.z)
    if f0 is None:
        return []
    homs = {a.compose(f0) for a in automorphisms(S2.group, fix_z=S2.z)}
    return sorted(homs, key=lambda h: h.map)


def tuples_equivalent(t1: ClassificationTuple, t2: ClassificationTuple) -> TupleEquivalence | None:
    """An equivalence witness, or ``None``.  Opaque labels are compared by equality."""
    if t1.A != t2.A or t1.rho.descriptor != t2.rho.descriptor:
        return None
    if t1.is_fermionic != t2.is_fermionic or t1.zero_point != t2.zero_point:
        return None
    G2 = t2.G.group
    if len(t1.image) != len(t2.image):
        return None
    for phi in _isomorphisms(t1.G, t2.G):
        c = _conjugator(G2, frozenset(phi(x) for x in t1.image), t2.image)
        if c is None:
            continue
        if t1.is_fermionic:
            conn = sh_equivalent(t1.varpi, sh_pullback(t2.varpi, SupergroupHom(t1.G, t2.G, phi)))
        else:
            conn = cohomologous_witness(t1.pi, pullback(t2.pi, phi))
        if conn is not None:
            return TupleEquivalence(phi, c, conn)
    return None


# -------------------------------------------------------- example families


@dataclass(frozen=True, eq=False)
class CategoricalGroup:
    """``H`` acting on an abelian ``A``; ``action[h]`` is an automorphism map of ``A``."""

    H: FiniteGroup
    A: FiniteGroup
    action: tuple | None = None

    @cached_property
    def dual(self):
        return pontryagin_dual(self.A)

    @cached_property
    def _product(self):
        act = self.action
        if act is None:
            act = [tuple(self.A.elements)] * self.H.order
        return semidirect_product(self.dual.group, self.H, dual_action(self.dual, self.H, act))

    @property
    def group(self) -> FiniteGroup:
        return self._product[0]

    @property
    def dual_inclusion(self) -> GroupHom:
        return self._product[1]

    @property
    def h_inclusion(self) -> GroupHom:
        return self._product[2]


def _bosonic(g: FiniteGroup) -> Supergroup:
    return Supergroup(g, g.identity)


def _check_pi(cg: CategoricalGroup, pi: Cochain | None) -> Cochain:
    G = cg.group
    if pi is None:
        return Cochain.zero(G, 4, cx(G))
    if pi.group != G:
        raise ValidationError("pi does not live on the semidirect product")
    if pi.degree != 4 or not pi.coeff.is_cyclic:
        raise ValidationError("pi must be a degree-4 cochain with cyclic coefficients")
    if not is_cocycle(pi):
        raise NotACocycle("pi is not a cocycle")
    return pi


def make_2vect_tuple(cg: CategoricalGroup, pi: Cochain | None = None) -> ClassificationTuple:
    """Tuple for the dual inclusion; ``pi`` must vanish identically on it."""
    pi = _check_pi(cg, pi)
    emb = cg.dual_inclusion
    res = restrict(pi, emb)
    nz = [int(i) for i in (res.values != 0).nonzero()[0][:1]]
    if nz:
        raise RestrictionNotStrictlyTrivial(
            "pi restricted to the dual group is not the zero cochain", flat_index=nz[0])
    src = _bosonic(emb.source)
    e = SupergroupHom(src, _bosonic(cg.group), emb)
    return ClassificationTuple(VECT, e, ActionLabel(src), pi=pi,
                               mu=Cochain.zero(emb.source, 3, pi.coeff))


def make_2rep_tuple(cg: CategoricalGroup, pi: Cochain | None = None,
                    mu: Cochain | None = None) -> ClassificationTuple:
    """Tuple for the inclusion of ``H``; ``mu`` is found when omitted."""
    pi = _check_pi(cg, pi)
    emb = cg.h_inclusion
    res = restrict(pi, emb)
    if mu is None:
        mu = coboundary_witness(res)
        if mu is None:
            raise NotTrivializable("restriction of pi to H is not a coboundary")
    elif mu.group != emb.source or mu.degree != 3 or differential(mu) != res:
        raise NotTrivializable("mu does not trivialize the restriction of pi",
                               trivializable=coboundary_witness(res) is not None)
    src = _bosonic(emb.source)
    e = SupergroupHom(src, _bosonic(cg.group), emb)
    return ClassificationTuple(VECT, e, ActionLabel(src), pi=pi, mu=mu)


# ---------------------------------------------------------- reconstruction


@dataclass(frozen=True)
class ReconstructionReport:
    components: DoubleCosetDecomposition
    fusion: PossibilisticHypergroup
    rank_lower_bound: int
    omega_rank: int | None = None

    def to_json(self) -> dict:
        return {"components": self.components.to_json(), "fusion": self.fusion.to_json(),
                "rank_lower_bound": self.rank_lower_bound, "omega_rank": self.omega_rank,
                "fusion_valid": bool(verify_hypergroup(self.fusion))}


def reconstruct(t: ClassificationTuple) -> ReconstructionReport:
    """Components and fusion rules of the fusion 2-category a tuple describes.

    ``omega_rank`` (the rank of the endomorphisms of the unit) is left empty:
    it depends on the braided category, which is carried as a label only.
    """
    d = double_cosets(t.G.group, t.image)
    h = hypergroup_from_double_cosets(d)
    return ReconstructionReport(d, h, len(d))


# ------------------------------------------------------ rank finiteness


@dataclass(frozen=True)
class RankBound:
    group_order: int
    subgroup_order: int
    double_cosets: int

    @property
    def rhs(self) -> int:
        return self.double_cosets * self.subgroup_order ** 2

    @property
    def holds(self) -> bool:
        return self.group_order <= self.rhs

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {"lhs": self.group_order, "rhs": self.rhs, "holds": self.holds,
                "double_cosets": self.double_cosets, "subgroup_order": self.subgroup_order}


def rank_bound_holds(G: FiniteGroup, H: Iterable[int]) -> RankBound:
    H = frozenset(H)
    if not G.is_subgroup(H):
        raise NotASubgroup("not a subgroup", subset=sorted(H))
    return RankBound(G.order, len(H), len(double_cosets(G, H)))


@dataclass(frozen=True)
class EnumerationEntry:
    group: FiniteGroup
    subgroup: frozenset[int]
    bound: RankBound
    h4: tuple[int, ...] | None = None
    sh4: tuple[tuple[int, int | None], ...] = ()

    def sort_key(self):
        return (self.group.order, self.group.name, len(self.subgroup), sorted(self.subgroup))

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order,
            "subgroup": sorted(self.subgroup),
            "double_cosets": self.bound.double_cosets,
            "rank_bound": self.bound.to_json(),
            "h4": list(self.h4) if self.h4 is not None else None,
            "sh4": {str(z): n for z, n in self.sh4},
        }


def _invariants(G: FiniteGroup):
    try:
        h4 = tuple(cohomology(G, cx(G), 4).invariant_factors)
    except EnumerationLimitExceeded:
        h4 = None
    sh = []
    for S in supergroup_structures(G):
        try:
            n = sh_triples(S, 4).order
        except EnumerationLimitExceeded:
            n = None
        sh.append((S.z, n))
    return h4, tuple(sh)


def enumerate_rank_bounded(N: int, groups: Iterable[FiniteGroup] | None = None,
                           rank_contribution: int = 1, invariants: bool = True,
                           threads: int = 1) -> list[EnumerationEntry]:
    """Pairs ``(G, H up to conjugacy)`` with ``|H\\G/H| * rank_contribution <= N``.

    The output is sorted by ``(|G|, name, |H|, H)`` so it does not depend on
    the order of ``groups`` or on ``threads``.
    """
    from .catalog import catalog

    if rank_contribution < 1:
        raise ValidationError("rank contribution must be positive")
    groups = list(catalog(12) if groups is None else groups)
    for G in groups:
        if G.order > limits.max_order:
            raise EnumerationLimitExceeded(f"{G.name} exceeds the order cap", order=G.order)

    def per_group(G):
        pairs = []
        for H in subgroups_up_to_conjugacy(G):
            b = rank_bound_holds(G, H)
            if b.double_cosets * rank_contribution <= N:
                pairs.append((H, b))
        if not pairs:
            return []
        h4, sh = _invariants(G) if invariants else (None, ())
        return [EnumerationEntry(G, H, b, h4, sh) for H, b in pairs]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            chunks = list(ex.map(per_group, groups))
    else:
        chunks = [per_group(G) for G in groups]
    return sorted((e for c in chunks for e in c), key=EnumerationEntry.sort_key)


# ------------------------------------------------------------- JSON


def path_to_json(path) -> list:
    return [{"kind": k, "cochain": c.to_json()} for k, c in path]


def path_from_json(d) -> tuple:
    try:
        return tuple((str(m["kind"]), Cochain.from_json(m["cochain"])) for m in d)
    except (KeyError, TypeError):
        raise SchemaError("gauge path entries need 'kind' and 'cochain'") from None


def _supergroup_json(s: Supergroup) -> dict:
    return {"name": s.group.name, "table": s.group.table.tolist(), "z": s.z}


def _supergroup_from_json(d: dict) -> Supergroup:
    from .catalog import get_group
    from .groups import group_from_table

    try:
        g = group_from_table(d["table"], name=d["name"]) if "table" in d else get_group(d["name"])
        return Supergroup(g, int(d.get("z", g.identity)))
    except (KeyError, TypeError):
        raise SchemaError("supergroup needs 'name' (and optionally 'table', 'z')") from None


def tuple_to_json(t: ClassificationTuple) -> dict:
    mu = t.mu
    if isinstance(mu, Cochain):
        mu_json = mu.to_json()
    elif mu is None:
        mu_json = None
    else:
        mu_json = {"path": path_to_json(mu)}
    return {
        "A": t.A.to_json(),
        "source": _supergroup_json(t.H),
        "target": _supergroup_json(t.G),
        "embedding": list(t.embedding.map),
        "rho": t.rho.descriptor.to_json(),
        "pi": t.pi.to_json() if t.pi is not None else None,
        "varpi": t.varpi.to_json() if t.varpi is not None else None,
        "mu": mu_json,
        "zero_point": t.zero_point,
    }


def tuple_from_json(d: dict) -> ClassificationTuple:
    if not isinstance(d, dict):
        raise SchemaError("tuple must be an object")
    try:
        A = BraidedCategoryLabel.from_json(d["A"])
        H = _supergroup_from_json(d["source"])
        G = _supergroup_from_json(d["target"])
        f = GroupHom(H.group, G.group, tuple(int(x) for x in d["embedding"]))
        if len(f.map) != H.order or any(not 0 <= x < G.order for x in f.map) or not f.is_homomorphism():
            raise SchemaError("embedding is not a homomorphism")
        emb = SupergroupHom(H, G, f)
        r = d.get("rho", "trivial")
        desc = TrivialAction() if r == "trivial" else OpaqueNamed(str(r["opaque"]))
        pi = Cochain.from_json(d["pi"], G.group) if d.get("pi") is not None else None
        varpi = None
        if d.get("varpi") is not None:
            varpi = SupercohomologyTriple.from_json(d["varpi"])
        mu = d.get("mu")
        if isinstance(mu, dict) and "path" in mu:
            mu = path_from_json(mu["path"])
        elif mu is not None:
            mu = Cochain.from_json(mu, H.group)
    except (KeyError, TypeError):
        raise SchemaError("tuple needs 'A', 'source', 'target', 'embedding' and a class") from None
    return ClassificationTuple(A, emb, ActionLabel(H, desc), pi, varpi, mu,
                               str(d.get("zero_point", "zero triple")))

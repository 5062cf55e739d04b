import json

import numpy as np
import pytest

import oracles
from f2c.catalog import catalog, get_group, parse_supergroup
from f2c.classification import (
    SVECT,
    VECT,
    ActionLabel,
    BraidedCategoryLabel,
    CategoricalGroup,
    ClassificationTuple,
    OpaqueNamed,
    enumerate_rank_bounded,
    make_2rep_tuple,
    make_2vect_tuple,
    rank_bound_holds,
    reconstruct,
    tuple_from_json,
    tuple_to_json,
    tuple_validate,
    tuples_equivalent,
)
from f2c.cohomology import Cochain, coboundary_witness, cohomology, cx, differential, restrict
from f2c.errors import NotASubgroup, NotTrivializable, SchemaError, ValidationError
from f2c.groups import GroupHom, Supergroup, SupergroupHom, restrict_to_subgroup
from f2c.hypergroup import verify_hypergroup
from f2c.supercohomology import canonicalize, sh_pullback, sh_triples


def bosonic(G):
    return Supergroup(G, G.identity)


def inclusion(G, H):
    Hg, inc = restrict_to_subgroup(G, H)
    return SupergroupHom(bosonic(Hg), bosonic(G), inc)


def bosonic_tuple(name, H, pi=None, seed=0):
    G = get_group(name)
    emb = inclusion(G, H)
    if pi is None:
        pi = differential(Cochain.random(G, 3, cx(G), np.random.default_rng(seed)))
    mu = coboundary_witness(restrict(pi, emb.hom))
    return ClassificationTuple(VECT, emb, ActionLabel(emb.source), pi=pi, mu=mu)


# ------------------------------------------------------------------ labels


def test_label_validation():
    assert VECT.rank == 1 and SVECT.rank == 2
    with pytest.raises(ValidationError):
        BraidedCategoryLabel("A", 0)
    with pytest.raises(ValidationError):
        BraidedCategoryLabel("A", 3, nondegeneracy="slightly")
    with pytest.raises(ValidationError):
        BraidedCategoryLabel("sVect", 2)
    d = BraidedCategoryLabel("Ising", 3, witt_tag="ising").to_json()
    assert BraidedCategoryLabel.from_json(d).witt_tag == "ising"
    with pytest.raises(SchemaError):
        BraidedCategoryLabel.from_json({"rank": 2})


# -------------------------------------------------------------- validation


def test_valid_bosonic_tuple():
    G = get_group("S3")
    t = bosonic_tuple("S3", [g for g in G.subgroups() if len(g) == 3][0], seed=3)
    assert tuple_validate(t).ok


def test_failure_kinds():
    G = get_group("Z4")
    H = frozenset([0, 2])
    t = bosonic_tuple("Z4", H, seed=1)
    emb, rho = t.embedding, t.rho

    def report(**kw):
        fields = dict(A=t.A, embedding=emb, rho=rho, pi=t.pi, varpi=None, mu=t.mu)
        fields.update(kw)
        return tuple_validate(ClassificationTuple(**fields))

    assert report(pi=None).violation == "ClassKind"
    Z2 = emb.source
    triv = SupergroupHom(Z2, emb.target, GroupHom.trivial(Z2.group, G))
    assert report(embedding=triv).violation == "EmbeddingNotInjective"
    assert report(rho=ActionLabel(bosonic(G))).violation == "ActionSourceMismatch"
    assert report(rho=ActionLabel(Z2, OpaqueNamed("swap"))).violation == "VectActionNotTrivial"
    assert report(A=SVECT).violation == "NondegeneracyMismatch"
    assert report(pi=Cochain.zero(G, 3, cx(G))).violation == "PiShape"
    noisy = Cochain.random(G, 4, cx(G), np.random.default_rng(2))
    assert report(pi=noisy).violation == "PiNotCocycle"
    r = report(mu=None)
    assert r.violation == "MissingTrivialization" and r.witness["trivializable"]
    assert report(mu=Cochain.zero(Z2.group, 2, cx(G))).violation == "MuShape"
    other = t.mu + differential(Cochain.random(Z2.group, 2, t.mu.coeff, np.random.default_rng(5)))
    assert report(mu=other).ok  # another primitive of the same restriction
    bad = t.mu + Cochain(Z2.group, 3, t.mu.coeff, [0] * 7 + [1])
    r = report(mu=bad)
    assert r.violation == "TrivializationMismatch" and r.witness["residual_support"] > 0


def test_fermionic_needs_trivial_z_for_pi():
    S = parse_supergroup("Z4:z")
    Hg, inc = restrict_to_subgroup(S.group, [0, 2])
    emb = SupergroupHom(Supergroup(Hg, 1), S, inc)
    t = ClassificationTuple(VECT, emb, ActionLabel(emb.source), pi=Cochain.zero(S.group, 4, cx(S.group)),
                            mu=Cochain.zero(Hg, 3, cx(S.group)))
    assert tuple_validate(t).violation == "BosonicNeedsTrivialZ"


def _fermionic_tuple(spec, H, cls, mu_from_canonical=True, seed=0):
    S = parse_supergroup(spec)
    Hg, inc = restrict_to_subgroup(S.group, H)
    emb = SupergroupHom(Supergroup(Hg, inc.map.index(S.z)), S, inc)
    varpi = sh_triples(S, 4).classes[cls]
    mu = canonicalize(sh_pullback(varpi, emb)).path if mu_from_canonical else None
    return ClassificationTuple(SVECT, emb, ActionLabel(emb.source), varpi=varpi, mu=mu)


def test_fermionic_tuple_with_gauge_path():
    # SH^4(Z4, z) = Z2; the nonzero class dies on the fermion parity subgroup
    for cls in range(2):
        t = _fermionic_tuple("Z4:z", [0, 2], cls)
        assert t.is_fermionic
        pulled = sh_pullback(t.varpi, t.embedding)
        assert canonicalize(pulled).triple.is_zero()
        assert tuple_validate(t).ok
    t = _fermionic_tuple("Z4:z", [0, 2], 1, mu_from_canonical=False)
    assert tuple_validate(t).violation == "MissingTrivialization"


def test_fermionic_shape_failures():
    t = _fermionic_tuple("Z4:z", [0, 2], 0)
    bad = ClassificationTuple(VECT, t.embedding, t.rho, varpi=t.varpi, mu=t.mu)
    assert tuple_validate(bad).violation == "NondegeneracyMismatch"
    other = sh_triples(parse_supergroup("Z2xZ2:1"), 4).classes[0]
    bad = ClassificationTuple(SVECT, t.embedding, t.rho, varpi=other, mu=t.mu)
    assert tuple_validate(bad).violation == "TripleBaseMismatch"


def test_opaque_action_is_unverifiable():
    t = _fermionic_tuple("Z4:z", [0, 2], 0)
    label = BraidedCategoryLabel("SO(3)_3", 2, nondegeneracy="sVect-nondegenerate")
    u = ClassificationTuple(label, t.embedding, ActionLabel(t.H, OpaqueNamed("charge conjugation")),
                            varpi=t.varpi, mu=t.mu)
    r = tuple_validate(u)
    assert r.status == "unverifiable" and not r.ok
    assert r.witness["descriptor"] == {"opaque": "charge conjugation"}


# ---------------------------------------------------------- example families


def test_2vect_tuple():
    cg = CategoricalGroup(get_group("Z2"), get_group("Z3"))
    t = make_2vect_tuple(cg)
    assert t.G.order == 6 and t.H.order == 3
    assert tuple_validate(t).ok
    assert reconstruct(t).rank_lower_bound == 2


def test_2rep_tuple_and_not_trivializable():
    cg = CategoricalGroup(get_group("Z2"), get_group("Z2"))
    t = make_2rep_tuple(cg)
    assert tuple_validate(t).ok and t.H.order == 2
    # with trivial A the inclusion of H is the identity, so every nonzero class obstructs
    cg = CategoricalGroup(get_group("Z2xZ2"), get_group("Z1"))
    G = cg.group
    H4 = cohomology(G, cx(G), 4)
    assert H4.invariant_factors == (2, 2)
    for v in H4.elements():
        pi = H4.element(v)
        if any(v):
            with pytest.raises(NotTrivializable):
                make_2rep_tuple(cg, pi)
        else:
            assert tuple_validate(make_2rep_tuple(cg, pi)).ok
    with pytest.raises(NotTrivializable):
        make_2rep_tuple(cg, None, mu=Cochain.random(cg.H, 3, cx(G), np.random.default_rng(1)))


def test_make_tuple_pi_errors():
    cg = CategoricalGroup(get_group("Z2"), get_group("Z2"))
    with pytest.raises(ValidationError):
        make_2vect_tuple(cg, Cochain.zero(get_group("Z4"), 4, cx(cg.group)))
    with pytest.raises(ValidationError):
        make_2vect_tuple(cg, Cochain.zero(cg.group, 3, cx(cg.group)))


# ------------------------------------------------------------ equivalence


def test_equivalence_under_coboundary_and_conjugation():
    G = get_group("S3")
    order2 = [H for H in G.subgroups() if len(H) == 2]
    H4 = cohomology(G, cx(G), 4)
    pi = H4.element(tuple(0 for _ in H4.invariant_factors))
    t1 = bosonic_tuple("S3", order2[0], pi=pi + differential(Cochain.random(G, 3, cx(G), np.random.default_rng(1))))
    t2 = bosonic_tuple("S3", order2[1], pi=pi)
    e = tuples_equivalent(t1, t2)
    assert e is not None and e.verify(t1, t2)
    inv = e.inverse(t1, t2)
    assert inv.verify(t2, t1)
    assert json.loads(json.dumps(e.to_json()))["conjugator"] == e.conjugator
    t3 = bosonic_tuple("S3", [g for g in G.subgroups() if len(g) == 3][0])
    assert tuples_equivalent(t1, t3) is None


def test_fermionic_equivalence():
    t1 = _fermionic_tuple("Z4:z", [0, 2], 1)
    t2 = _fermionic_tuple("Z4:z", [0, 2], 1)
    e = tuples_equivalent(t1, t2)
    assert e is not None and e.verify(t1, t2)
    assert tuples_equivalent(t1, _fermionic_tuple("Z4:z", [0, 2], 0)) is None


# --------------------------------------------------- reconstruction, bounds


def test_reconstruct_matches_double_cosets():
    G = get_group("A4")
    for H in G.subgroups():
        r = reconstruct(bosonic_tuple("A4", H, pi=Cochain.zero(G, 4, cx(G))))
        assert set(r.components.classes) == oracles.double_coset_partition(G, H)
        assert verify_hypergroup(r.fusion)
        assert r.omega_rank is None
        assert r.to_json()["fusion_valid"]


def test_rank_bound():
    for G in catalog(12):
        for H in G.subgroups():
            b = rank_bound_holds(G, H)
            assert b.holds and bool(b) and b.to_json()["lhs"] == G.order
    with pytest.raises(NotASubgroup):
        rank_bound_holds(get_group("S3"), [0, 1, 2])


def test_enumeration_sorted_and_thread_independent():
    groups = catalog(8)
    a = enumerate_rank_bounded(3, groups=groups, invariants=False)
    b = enumerate_rank_bounded(3, groups=list(reversed(groups)), invariants=False, threads=4)
    assert [e.to_json() for e in a] == [e.to_json() for e in b]
    assert [e.sort_key() for e in a] == sorted(e.sort_key() for e in a)
    assert all(e.bound.double_cosets <= 3 for e in a)
    assert len(enumerate_rank_bounded(3, groups=groups, rank_contribution=2, invariants=False)) < len(a)
    with pytest.raises(ValidationError):
        enumerate_rank_bounded(3, rank_contribution=0)


def test_enumeration_invariants():
    (e,) = [x for x in enumerate_rank_bounded(1, groups=[get_group("Z4")]) if len(x.subgroup) == 4]
    assert e.h4 == ()
    assert dict(e.sh4) == {0: 1, 2: 2}


# ------------------------------------------------------------------ JSON


def test_tuple_json_round_trip():
    t = bosonic_tuple("S3", [g for g in get_group("S3").subgroups() if len(g) == 3][0], seed=8)
    back = tuple_from_json(json.loads(json.dumps(tuple_to_json(t))))
    assert back.pi == t.pi and back.mu == t.mu and back.embedding.map == t.embedding.map
    assert tuple_validate(back).ok
    f = _fermionic_tuple("Z4:z", [0, 2], 1)
    back = tuple_from_json(json.loads(json.dumps(tuple_to_json(f))))
    assert back.varpi == f.varpi and tuple_validate(back).ok


@pytest.mark.parametrize("bad", [
    [],
    {"A": {"name": "Vect", "rank": 1}},
    {"A": {"name": "Vect", "rank": 1}, "source": {"name": "Z2"}, "target": {"name": "Z4"},
     "embedding": [0, 1], "pi": None},
])
def test_tuple_json_errors(bad):
    with pytest.raises(SchemaError):
        tuple_from_json(bad)

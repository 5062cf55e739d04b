"""Acceptance criteria, one test per criterion.

Each test is named ``test_criterion_<n>``; the conftest prints a pass/fail
line for every one of them at the end of the run.  Reference values come
from :mod:`oracles`, which only shares group tables with the package.
"""
import json
import subprocess
import sys
import time
from collections import defaultdict
from functools import lru_cache
from itertools import product

import numpy as np
import pytest

import oracles
from f2c.catalog import catalog, get_group, parse_supergroup
from f2c.classification import (
    CategoricalGroup,
    ClassificationTuple,
    VECT,
    ActionLabel,
    enumerate_rank_bounded,
    make_2vect_tuple,
    rank_bound_holds,
    tuple_to_json,
    tuple_validate,
    tuples_equivalent,
)
from f2c.cohomology import (
    Z2,
    Cochain,
    coboundary_witness,
    cohomology,
    cx,
    differential,
    pullback,
    restrict,
)
from f2c.errors import RestrictionNotStrictlyTrivial
from f2c.groups import (
    GroupHom,
    Supergroup,
    SupergroupHom,
    automorphisms,
    inner_automorphism,
    limits,
    quotient_by_z,
    quotient_group,
    restrict_to_subgroup,
    supergroup_structures,
)
from f2c.hypergroup import (
    PossibilisticHypergroup,
    double_cosets,
    hypergroup_from_double_cosets,
    hypergroups_isomorphic,
    verify_hypergroup,
)
from f2c.supercohomology import apply_move, canonicalize, check_equations, sh_triples
from f2c.supergroupoid import equivariant_map_classes

CATALOG = catalog(12)


@lru_cache(maxsize=None)
def _subgroups(name):
    return sorted(oracles.all_subgroups(get_group(name)), key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------- 1


def test_criterion_1():
    start = time.perf_counter()
    pairs = 0
    for G in CATALOG:
        for H in G.subgroups():
            d = double_cosets(G, H)
            assert set(d.classes) == oracles.double_coset_partition(G, H), (G.name, sorted(H))
            assert len(d.classes) == len(set(d.classes))
            assert sorted(x for c in d.classes for x in c) == list(range(G.order))
            rep = verify_hypergroup(hypergroup_from_double_cosets(d))
            assert rep.ok, (G.name, sorted(H), rep)
            pairs += 1
    # the package's subgroup list is itself checked against the oracle
    for G in CATALOG:
        assert set(G.subgroups()) == oracles.all_subgroups(G), G.name
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {pairs} pairs in {elapsed:.2f}s")
    assert elapsed < 10


# ---------------------------------------------------------------- 2


def test_criterion_2():
    start = time.perf_counter()
    checked = normal = 0
    for G in CATALOG:
        for H in G.subgroups():
            hH = hypergroup_from_double_cosets(double_cosets(G, H))
            for K in oracles.conjugates(G, H):
                hK = hypergroup_from_double_cosets(double_cosets(G, K))
                phi = hypergroups_isomorphic(hH, hK)
                assert phi is not None, (G.name, sorted(H), sorted(K))
                for x, y in product(range(hH.size), repeat=2):
                    assert {phi[t] for t in hH.mul(x, y)} == set(hK.mul(phi[x], phi[y]))
                checked += 1
            if G.is_normal(H):
                assert hH.is_group, (G.name, sorted(H))
                Q, proj = quotient_group(G, H)
                # same table up to relabelling: class i <-> coset of representative i
                qh = PossibilisticHypergroup.from_sets(
                    Q.identity, [[{Q.mul(a, b)} for b in Q.elements] for a in Q.elements])
                assert hypergroups_isomorphic(hH, qh) is not None
                reps = hH.labels
                for i, j in product(range(hH.size), repeat=2):
                    (k,) = hH.mul(i, j)
                    assert proj(reps[k]) == Q.mul(proj(reps[i]), proj(reps[j]))
                normal += 1
    elapsed = time.perf_counter() - start
    print(f"criterion 2: {checked} conjugate pairs, {normal} normal subgroups, {elapsed:.2f}s")
    assert elapsed < 30


# ---------------------------------------------------------------- 3


def test_criterion_3():
    start = time.perf_counter()
    exceptions = []
    for G in CATALOG:
        for H in _subgroups(G.name):
            b = rank_bound_holds(G, H)
            n_dc = len(oracles.double_coset_partition(G, H))
            assert b.double_cosets == n_dc
            if not G.order <= n_dc * len(H) ** 2:
                exceptions.append((G.name, sorted(H)))
            assert b.holds == (G.order <= n_dc * len(H) ** 2)
    assert exceptions == []
    for N in range(1, 5):
        entries = enumerate_rank_bounded(N)
        got = [(e.group.name, oracles.conjugates(e.group, e.subgroup)) for e in entries]
        assert len(got) == len(set(got)), "duplicate conjugacy class in output"
        expected = set()
        for G in CATALOG:
            for H in _subgroups(G.name):
                if len(oracles.double_coset_partition(G, H)) <= N:
                    expected.add((G.name, oracles.conjugates(G, H)))
        assert set(got) == expected, N
        for e in entries:
            assert e.bound.holds
    elapsed = time.perf_counter() - start
    print(f"criterion 3: zero exceptions; enumeration N<=4 matches scan, {elapsed:.2f}s")
    assert elapsed < 60


# ---------------------------------------------------------------- 4


def test_criterion_4():
    start = time.perf_counter()
    cases = 0
    for G in catalog(4):
        for n in range(0, 5):
            got_cx = cohomology(G, cx(G), n).invariant_factors
            assert list(got_cx) == oracles.cx_model_invariants(G, n, G.order), (G.name, n)
            H2 = cohomology(G, Z2, n)
            dim = oracles.z2_dimension(G, n)
            assert H2.invariant_factors == (2,) * dim, (G.name, n)
            if G.order ** n <= 16:
                assert oracles.z2_dimension_by_enumeration(G, n) == dim
            cases += 2
    Z2g = get_group("Z2")
    assert cohomology(Z2g, cx(Z2g), 3).invariant_factors == (2,)
    assert cohomology(Z2g, cx(Z2g), 4).invariant_factors == ()
    elapsed = time.perf_counter() - start
    print(f"criterion 4: {cases} (group, degree, coefficient) cases, {elapsed:.2f}s")
    assert elapsed < 120


# ---------------------------------------------------------------- 5


def _feasible_degrees(G):
    return [n for n in (1, 2, 3, 4)
            if max(G.order - 1, 1) ** (n + 1) <= limits.max_cochain_cells]


def test_criterion_5():
    rng = np.random.default_rng(20261014)
    total = 0
    for G in CATALOG:
        degrees = _feasible_degrees(G)
        for k in range(200):
            n = degrees[k % len(degrees)]
            coeff = cx(G) if (k // len(degrees)) % 2 == 0 else Z2
            mu0 = Cochain.random(G, n - 1, coeff, rng)
            c = differential(mu0)
            mu = coboundary_witness(c)
            assert mu is not None, (G.name, n)
            assert differential(mu) == c, (G.name, n)
            total += 1
    Z2g = get_group("Z2")
    (gen,) = cohomology(Z2g, cx(Z2g), 3).generators
    assert coboundary_witness(gen) is None
    (gen2,) = cohomology(Z2g, Z2, 3).generators
    assert coboundary_witness(gen2) is None
    print(f"criterion 5: {total} witnesses exact; H^3(Z2) generator not trivializable")


# ---------------------------------------------------------------- 6


def _actions(H, A):
    """All homomorphisms H -> Aut(A), as lists of automorphism maps."""
    auts = [f.map for f in automorphisms(A)]
    gens = oracles.generating_set(H)
    out = []
    for imgs in product(auts, repeat=len(gens)):
        act = {H.identity: tuple(A.elements)}
        frontier = [H.identity]
        ok = True
        while frontier and ok:
            new = []
            for x in frontier:
                for g, m in zip(gens, imgs):
                    xg = H.mul(x, g)
                    val = tuple(act[x][m[a]] for a in A.elements)
                    if xg in act:
                        ok = ok and act[xg] == val
                    else:
                        act[xg] = val
                        new.append(xg)
            frontier = new
        if ok and all(act[H.mul(x, y)] == tuple(act[x][act[y][a]] for a in A.elements)
                      for x in H.elements for y in H.elements):
            lst = [act[x] for x in H.elements]
            if lst not in out:
                out.append(lst)
    return out


def test_criterion_6():
    rng = np.random.default_rng(6)
    small = catalog(4)
    combos = accepted = rejected = 0
    for H in small:
        for A in small:
            if not A.is_abelian:
                continue
            for act in _actions(H, A):
                cg = CategoricalGroup(H, A, tuple(act))
                G = cg.group
                assert G.order == H.order * A.order
                emb = cg.dual_inclusion
                dual_cells = set(emb.map)
                proj = GroupHom(G, H, tuple(x % H.order for x in G.elements))
                assert proj.is_homomorphism()
                C = cx(G)
                candidates = [Cochain.zero(G, 4, C)]
                for gen in cohomology(H, cx(H), 4).generators:
                    candidates.append(pullback(gen, proj))
                beta = Cochain.random(G, 3, C, rng)
                candidates.append(differential(beta))
                vals = beta.values.reshape((G.order,) * 3).copy()
                for cell in product(sorted(dual_cells), repeat=3):
                    vals[cell] = 0
                beta0 = Cochain(G, 3, C, vals.reshape(-1))
                candidates.append(differential(beta0))
                for pi in candidates:
                    grid = pi.values.reshape((G.order,) * 4)
                    strictly_zero = all(grid[cell] == 0 for cell in product(sorted(dual_cells), repeat=4))
                    if strictly_zero:
                        t = make_2vect_tuple(cg, pi)
                        rep = tuple_validate(t)
                        assert rep.status == "pass", rep
                        assert t.mu.is_zero() and t.mu.degree == 3
                        accepted += 1
                    else:
                        with pytest.raises(RestrictionNotStrictlyTrivial):
                            make_2vect_tuple(cg, pi)
                        rejected += 1
                combos += 1
    assert accepted > 0 and rejected > 0
    print(f"criterion 6: {combos} (H, A, action) combos; {accepted} accepted, {rejected} rejected")


# ---------------------------------------------------------------- 7


def _normalized_cochains(base, degree, coeff):
    k = max(base.order - 1, 0) ** degree
    for vec in product(range(coeff.m), repeat=k):
        yield Cochain.from_normalized(base, degree, coeff, np.array(vec, dtype=np.int64))


def _brute_classes(S, degree):
    """Connected components of the gauge-move graph on all valid triples."""
    from f2c.cohomology import CyclicModM
    from f2c.supercohomology import SupercohomologyTriple

    p = quotient_by_z(S)
    base, kappa = p.base, p.kappa
    M = 2 * base.order
    C = CyclicModM(M)
    triples = []
    for a in _normalized_cochains(base, degree - 2, Z2):
        for b in _normalized_cochains(base, degree - 1, Z2):
            for c in _normalized_cochains(base, degree, C):
                t = SupercohomologyTriple(base, kappa, a, b, c)
                if not check_equations(t):
                    triples.append(t)
    moves = ([("w", w) for w in _normalized_cochains(base, degree - 3, Z2)]
             + [("x", x) for x in _normalized_cochains(base, degree - 2, Z2)]
             + [("y", y) for y in _normalized_cochains(base, degree - 1, CyclicModM(2 * M))])
    index = {t: i for i, t in enumerate(triples)}
    parent = list(range(len(triples)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    frontier = list(range(len(triples)))
    while frontier:
        new = []
        for i in frontier:
            t = triples[i]
            for mv in moves:
                u = apply_move(t, mv)
                assert check_equations(u) == [], (S.name, mv[0])
                if u not in index:
                    index[u] = len(triples)
                    triples.append(u)
                    parent.append(len(parent))
                    new.append(index[u])
                ri, rj = find(i), find(index[u])
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        frontier = new
    comps = defaultdict(list)
    for i, t in enumerate(triples):
        comps[find(i)].append(t)
    return list(comps.values())


def _small_base_supergroups():
    out = []
    for name in ("Z1", "Z2", "Z4", "Z2xZ2"):
        for S in supergroup_structures(get_group(name)):
            if quotient_by_z(S).base.order <= 2:
                out.append(S)
    return out


def test_criterion_7():
    Zz = parse_supergroup("Z2:z")
    for n in (3, 4):
        sh = sh_triples(Zz, n)
        assert sh.order == 1 and sh.addition == ((0,),)
        assert sh.classes[0].is_zero()
    emitted = 0
    for G in catalog(8):
        for S in supergroup_structures(G):
            if quotient_by_z(S).base.order > limits.max_sh_base_order:
                continue
            for n in (3, 4):
                try:
                    sh = sh_triples(S, n)
                except Exception as exc:  # cap reached: allowed, but must be the cap error
                    assert type(exc).__name__ == "EnumerationLimitExceeded", exc
                    continue
                for t in sh.classes:
                    assert check_equations(t) == [], (S.name, n)
                emitted += sh.order
    compared = []
    for S in _small_base_supergroups():
        for n in (3, 4):
            comps = _brute_classes(S, n)
            sh = sh_triples(S, n)
            assert len(comps) == sh.order, (S.name, n)
            seen = set()
            for comp in comps:
                keys = {canonicalize(t).key for t in comp}
                assert len(keys) == 1, (S.name, n)
                seen |= keys
            assert seen == set(sh.keys)
            compared.append(f"{S.name}/{n}:{sh.order}")
    print(f"criterion 7: {emitted} emitted classes satisfy the equations; brute force agrees on "
          + ", ".join(compared))


# ---------------------------------------------------------------- 8


def test_criterion_8():
    groups = catalog(8)
    homs = {}
    pairs = 0
    for X in groups:
        for Y in groups:
            hs = oracles.homomorphisms(X, Y)
            homs[(X.name, Y.name)] = hs
    for X in groups:
        for SX in supergroup_structures(X):
            for Y in groups:
                for SY in supergroup_structures(Y):
                    good = {m for m in homs[(X.name, Y.name)] if m[SX.z] == SY.z}
                    expected = oracles.conjugation_orbits(Y, good)
                    got = equivariant_map_classes(SX, SY)
                    assert len(got) == len(expected), (SX.name, SY.name)
                    assert {f.map for f in got} <= good
                    orbit_of = {m: o for o in expected for m in o}
                    assert len({orbit_of[f.map] for f in got}) == len(expected)
                    pairs += 1
    print(f"criterion 8: {pairs} supergroup pairs match")


# ---------------------------------------------------------------- 9


def _tuple_family():
    rng = np.random.default_rng(9)
    family = []
    for name in ("Z1", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "Z6"):
        G = get_group(name)
        SG = Supergroup(G, G.identity)
        H4 = cohomology(G, cx(G), 4)
        pis = [H4.element(v) for v in H4.elements()]
        for H in G.subgroups():
            Hg, inc = restrict_to_subgroup(G, H)
            emb = SupergroupHom(Supergroup(Hg, Hg.identity), SG, inc)
            for pi in pis:
                for k in range(3):
                    p = pi if k == 0 else pi + differential(Cochain.random(G, 3, pi.coeff, rng))
                    mu = coboundary_witness(restrict(p, inc))
                    if mu is None:  # restriction not trivial: no tuple
                        continue
                    family.append(ClassificationTuple(VECT, emb, ActionLabel(emb.source), pi=p, mu=mu))
    return family


def test_criterion_9():
    family = _tuple_family()
    assert len(family) >= 100
    for t in family:
        assert tuple_validate(t).status == "pass"
    n = len(family)
    eq = {}
    for i in range(n):
        for j in range(n):
            if family[i].G.group.order != family[j].G.group.order:
                continue
            eq[i, j] = tuples_equivalent(family[i], family[j])
    for i in range(n):
        e = eq[i, i]
        assert e is not None and e.verify(family[i], family[i])
    for (i, j), e in eq.items():
        if e is None:
            assert eq[j, i] is None
            continue
        assert e.verify(family[i], family[j])
        assert eq[j, i] is not None
        assert e.inverse(family[i], family[j]).verify(family[j], family[i])
    transitive = 0
    for (i, j), e1 in eq.items():
        if e1 is None:
            continue
        for k in range(n):
            e2 = eq.get((j, k))
            if e2 is None:
                continue
            assert eq[i, k] is not None
            assert e1.compose(e2, family[i], family[k]).verify(family[i], family[k])
            transitive += 1
    conj = 0
    for t in family:
        G = t.G.group
        for g in G.elements:
            c = inner_automorphism(G, g)
            moved = t.with_embedding(SupergroupHom(t.H, t.G, c.compose(t.embedding.hom)))
            e = tuples_equivalent(t, moved)
            assert e is not None and e.verify(t, moved)
            conj += 1
    classes = len({min(j for j in range(n) if eq.get((i, j)) is not None) for i in range(n)})
    print(f"criterion 9: {n} tuples, {classes} classes, {transitive} composed witnesses, "
          f"{conj} conjugate replacements")


# ---------------------------------------------------------------- 10


def _cli_inputs(tmp):
    G = get_group("S3")
    rng = np.random.default_rng(10)
    c = differential(Cochain.random(G, 2, cx(G), rng))
    (gen,) = cohomology(get_group("Z2"), cx(get_group("Z2")), 3).generators
    files = {}

    def put(name, obj):
        p = tmp / name
        p.write_text(json.dumps(obj))
        files[name] = str(p)

    put("restrict.json", {"cochain": c.to_json(), "subgroup": [0, 1]})
    put("trivialize.json", {"cochain": c.to_json()})
    put("trivialize_gen.json", {"cochain": gen.to_json()})
    h1 = hypergroup_from_double_cosets(double_cosets(G, G.subgroups()[1]))
    h2 = hypergroup_from_double_cosets(double_cosets(G, G.subgroups()[2]))
    put("iso.json", {"a": h1.to_json(), "b": h2.to_json()})
    Zp = get_group("Z2")
    cg = CategoricalGroup(Zp, Zp)
    t = make_2vect_tuple(cg)
    put("tuple.json", tuple_to_json(t))
    put("hyper.json", h1.to_json())
    return files


def _cli_commands(files):
    return [
        ["cohomology", "--group", "Z2xZ2", "--coeff", "cx", "--degree", "3"],
        ["cohomology", "--group", "S3", "--coeff", "z2", "--degree", "2"],
        ["restrict", "--input", files["restrict.json"]],
        ["trivialize", "--input", files["trivialize.json"]],
        ["trivialize", "--input", files["trivialize_gen.json"]],
        ["double-cosets", "--group", "A4", "--subgroup-index", "3"],
        ["hypergroup", "--group", "S3", "--subgroup", "0,1"],
        ["hypergroup", "--input", files["hyper.json"]],
        ["iso", "--input", files["iso.json"]],
        ["sh4", "--supergroup", "Z4:2"],
        ["sh4", "--supergroup", "Z2", "--degree", "3"],
        ["sh-orbits", "--supergroup", "Z2xZ2", "--degree", "3", "--no-table"],
        ["spec", "--category", "Rep(G,z)", "--group", "Z4", "--z", "2"],
        ["maps", "--source", "Z2:z", "--target", "Q8:z"],
        ["validate-tuple", "--input", files["tuple.json"]],
        ["reconstruct", "--input", files["tuple.json"]],
        ["enumerate", "--rank", "2", "--max-order", "8"],
        ["cohomology", "--group", "D4", "--degree", "4"],  # cap error, exit 3
        ["frobnicate"],  # bad verb, exit 2
    ]


def _run_cli(args):
    r = subprocess.run([sys.executable, "-m", "f2c.cli", *args], capture_output=True, check=False)
    return r.returncode, r.stdout


def test_criterion_10(tmp_path):
    files = _cli_inputs(tmp_path)
    cmds = _cli_commands(files)
    from f2c.cli import VERBS

    assert {c[0] for c in cmds} >= set(VERBS)
    jobs = []
    for cmd in cmds:
        variants = [cmd] * 3 + [cmd + ["--threads", "4"], cmd + ["--threads", "2"]]
        jobs.append(variants)
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=8) as ex:
        results = [list(ex.map(_run_cli, variants)) for variants in jobs]
    codes = {}
    for cmd, outs in zip(cmds, results):
        first = outs[0]
        for o in outs[1:]:
            assert o == first, cmd
        codes[" ".join(cmd)] = first[0]
        assert first[1].endswith(b"\n")
        json.loads(first[1])
    assert codes["cohomology --group D4 --degree 4"] == 3
    assert codes["frobnicate"] == 2
    assert sum(1 for c in codes.values() if c == 0) == len(cmds) - 2
    print(f"criterion 10: {len(cmds)} commands x 5 runs byte-identical")

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from f2c.catalog import get_group, parse_supergroup
from f2c.cohomology import Z2, Cochain, CyclicModM, differential
from f2c.errors import BaseMismatch, DegreeMismatch, EnumerationLimitExceeded, NotACocycle
from f2c.groups import SupergroupHom, automorphisms
from f2c.supercohomology import (
    GU_WEN,
    SupercohomologyTriple,
    apply_path,
    canonicalize,
    check_equations,
    sh_add,
    sh_equivalent,
    sh_orbits,
    sh_pullback,
    sh_triples,
    zero_triple,
)

seeds = st.integers(0, 2**32 - 1)
# kept below the 256-class sets so the addition tables stay cheap
SMALL = ["Z2", "Z2:z", "Z4:z", "Z2xZ2:1", "Z3", "Z6:z", "S3"]


def sh(spec, n):
    return sh_triples(parse_supergroup(spec), n)


@pytest.mark.parametrize("spec,n,order", [
    ("Z1", 3, 1), ("Z1", 4, 1),
    ("Z2:z", 3, 1), ("Z2:z", 4, 1),
    ("Z2", 3, 8), ("Z2", 4, 1),
    ("Z4:z", 3, 1), ("Z4:z", 4, 2),
    ("Z3", 3, 3), ("Z3", 4, 1),
    ("Z2xZ2:1", 3, 8), ("Z2xZ2:1", 4, 1),
])
def test_orders(spec, n, order):
    assert sh(spec, n).order == order


def _order_profile(s):
    """Sorted multiset of element orders in the addition table."""
    table = s.addition
    t0 = s.classes[0]
    zero = s.keys.index(canonicalize(zero_triple(t0.base, t0.kappa, s.degree)).key)
    orders = []
    for i in range(s.order):
        k, x = 1, i
        while x != zero:
            x = table[x][i]
            k += 1
        orders.append(k)
    return sorted(orders)


@pytest.mark.parametrize("spec", ["Z2", "Z2xZ2:1"])
def test_degree3_over_z2_is_cyclic_of_order_8(spec):
    # both are Z2 x Z2^f in 2+1 dimensions, classified by Z8
    assert _order_profile(sh(spec, 3)) == [1, 2, 4, 4, 8, 8, 8, 8]


@pytest.mark.slow
def test_bosonic_z2xz2_degree3_is_z8_z8_z4():
    from collections import Counter

    counts = Counter(_order_profile(sh("Z2xZ2", 3)))
    # Z8 x Z8 x Z4: 8 elements killed by 2, 64 killed by 4
    assert counts == {1: 1, 2: 7, 4: 56, 8: 192}


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("n", [3, 4])
def test_group_axioms(spec, n):
    s = sh(spec, n)
    T = s.addition
    k = s.order
    zero = [i for i in range(k) if all(T[i][j] == j for j in range(k))]
    assert len(zero) == 1
    for i in range(k):
        assert sorted(T[i]) == list(range(k))  # Latin square: inverses exist
        for j in range(k):
            assert T[i][j] == T[j][i]
            for l in range(k):
                assert T[T[i][j]][l] == T[i][T[j][l]]


@pytest.mark.parametrize("spec", SMALL + ["D4:z", "Q8:z", "Z2xZ2"])
@pytest.mark.parametrize("n", [3, 4])
def test_classes_satisfy_equations(spec, n):
    s = sh(spec, n)
    assert len(set(s.keys)) == s.order
    for t in s.classes:
        assert check_equations(t) == []
        c = canonicalize(t)
        assert c.triple == t and c.path == ()


def _random_moves(t, rng, count, degree4_w_closed=True):
    """Random gauge moves; degree-4 w-moves are restricted to closed w."""
    moves = []
    base = t.base
    M = 2 * base.order
    for _ in range(count):
        kind = rng.choice(["w", "x", "y"])
        if kind == "w":
            w = Cochain.random(base, t.degree - 3, Z2, rng)
            if degree4_w_closed and t.degree == 4 and not differential(w).is_zero():
                continue
            moves.append(("w", w))
        elif kind == "x":
            moves.append(("x", Cochain.random(base, t.degree - 2, Z2, rng)))
        else:
            moves.append(("y", Cochain.random(base, t.degree - 1, CyclicModM(2 * M), rng)))
    return moves


@given(st.sampled_from(SMALL + ["D4:z", "Q8:z"]), st.sampled_from([3, 4]), seeds)
@settings(max_examples=30)
def test_gauge_invariance(spec, n, seed):
    s = sh(spec, n)
    rng = np.random.default_rng(seed)
    i = int(rng.integers(s.order))
    t = s.classes[i]
    path = _random_moves(t, rng, 4)
    u = apply_path(t, path)
    assert check_equations(u) == []
    c = canonicalize(u)
    assert c.key == s.keys[i]
    assert apply_path(u, c.path) == c.triple
    e = sh_equivalent(t, u)
    assert e is not None and e.verify(t, u)


def test_inequivalent_classes_have_no_witness():
    s = sh("Z2", 3)
    for i in range(1, s.order):
        assert sh_equivalent(s.classes[0], s.classes[i]) is None


def test_check_equations_detects_violations():
    G = get_group("Z2")
    kappa = Cochain.zero(G, 2, Z2)
    t = SupercohomologyTriple(
        G, kappa, Cochain(G, 2, Z2, [0, 0, 0, 1]), Cochain.zero(G, 3, Z2),
        Cochain.zero(G, 4, CyclicModM(4)))
    assert "d n3 = Sq2 n2 + kappa n2" in check_equations(t)
    with pytest.raises(NotACocycle):
        canonicalize(t)


@given(st.sampled_from([("Z2:z", "Z4:z"), ("Z2:z", "Q8:z"), ("Z2", "Z2xZ2"),
                        ("Z2:z", "D4:z"), ("Z2", "S3"), ("Z2:z", "Z2xZ2:1")]),
       st.sampled_from([3, 4]), seeds)
@settings(max_examples=25)
def test_pullback_respects_classes(pair, n, seed):
    """Pullback lands in valid triples and is constant on classes."""
    from f2c.groups import supergroup_homs

    X, Y = (parse_supergroup(p) for p in pair)
    homs = supergroup_homs(X, Y)
    rng = np.random.default_rng(seed)
    f = homs[int(rng.integers(len(homs)))]
    sY = sh_triples(Y, n)
    sX = sh_triples(X, n)
    t = sY.classes[int(rng.integers(sY.order))]
    p = sh_pullback(t, f)
    assert check_equations(p) == []
    moved = apply_path(t, _random_moves(t, rng, 3))
    assert sX.index_of(sh_pullback(moved, f)) == sX.index_of(p)


@pytest.mark.parametrize("spec", ["Z2", "Z2xZ2:1", "Z4:z", "Z3"])
def test_pullback_functorial_on_automorphisms(spec):
    S = parse_supergroup(spec)
    for n in (3, 4):
        s = sh_triples(S, n)
        auts = [SupergroupHom(S, S, a) for a in automorphisms(S.group, fix_z=S.z)]
        for t in s.classes:
            for f in auts:
                for g in auts:
                    lhs = s.index_of(sh_pullback(sh_pullback(t, g), f))
                    rhs = s.index_of(sh_pullback(t, g.compose(f)))
                    assert lhs == rhs
            assert s.index_of(sh_pullback(t, SupergroupHom.identity(S))) == s.index_of(t)


@pytest.mark.parametrize("spec,n", [("Z2xZ2:1", 3), ("Z2", 3), ("Z4:z", 4), ("Z2xZ2", 4)])
def test_orbits_partition(spec, n):
    S = parse_supergroup(spec)
    s = sh_triples(S, n)
    orbits = sh_orbits(S, n, sh=s)
    flat = sorted(i for o in orbits for i in o)
    assert flat == list(range(s.order))
    zero = s.keys.index(canonicalize(zero_triple(s.classes[0].base, s.classes[0].kappa, n)).key)
    assert [zero] in orbits


def test_sum_respects_classes():
    s = sh("Z2xZ2:1", 3)
    rng = np.random.default_rng(4)
    for _ in range(10):
        i, j = (int(x) for x in rng.integers(s.order, size=2))
        a = apply_path(s.classes[i], _random_moves(s.classes[i], rng, 3))
        b = apply_path(s.classes[j], _random_moves(s.classes[j], rng, 3))
        assert s.index_of(sh_add(a, b)) == s.addition[i][j]


def test_errors():
    with pytest.raises(DegreeMismatch):
        sh("Z2", 5)
    with pytest.raises(EnumerationLimitExceeded):
        sh("Z8", 3)
    a = sh("Z2", 3).classes[0]
    b = sh("Z2:z", 3).classes[0]
    with pytest.raises(BaseMismatch):
        sh_add(a, b)


def test_json():
    s = sh("Z4:z", 4)
    d = json.loads(json.dumps(s.to_json()))
    assert d["order"] == 2 and len(d["addition"]) == 2
    assert "addition" not in s.to_json(with_table=False)
    t = s.classes[1]
    assert SupercohomologyTriple.from_json(json.loads(json.dumps(t.to_json()))) == t


def test_equation_set_is_named():
    assert GU_WEN.name

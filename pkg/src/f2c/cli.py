"""``f2c`` command line: one verb per operation, JSON out.

Exit status is 0 on success, 2 on invalid input (with an error object on
stdout) and 3 when an enumeration cap is hit.
"""
from __future__ import annotations

import argparse
import json
import sys

from .catalog import catalog, get_group, parse_supergroup
from .classification import enumerate_rank_bounded, reconstruct, tuple_from_json, tuple_validate
from .cohomology import (
    Z2,
    Cochain,
    CyclicModM,
    coboundary_witness,
    cohomology,
    cx,
    is_cocycle,
    restrict,
)
from .errors import EnumerationLimitExceeded, F2CError, SchemaError
from .groups import limits, restrict_to_subgroup
from .hypergroup import (
    PossibilisticHypergroup,
    double_cosets,
    hypergroup_from_double_cosets,
    hypergroups_isomorphic,
    verify_hypergroup,
)
from .supercohomology import sh_orbits, sh_triples
from .supergroupoid import equivariant_map_classes, spec_of

VERBS = ("cohomology", "restrict", "trivialize", "double-cosets", "hypergroup", "iso", "sh4",
         "sh-orbits", "spec", "maps", "validate-tuple", "reconstruct", "enumerate")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(message)


def _load_input(value):
    if value is None:
        raise SchemaError("this verb needs --input")
    if value == "-":
        text = sys.stdin.read()
    elif value.lstrip().startswith(("{", "[")):
        text = value
    else:
        try:
            with open(value) as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read input: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input is not JSON: {exc}") from None


def _coeff(spec: str, group):
    if spec == "cx":
        return cx(group)
    if spec == "z2":
        return Z2
    if spec[:1] in ("m", "Z") and spec[1:].isdigit():
        return CyclicModM(int(spec[1:]))
    raise SchemaError(f"unknown coefficient {spec!r}; use cx, z2 or mN")


def _subgroup(args, G):
    if args.subgroup is not None:
        try:
            return frozenset(int(x) for x in args.subgroup.split(",") if x.strip())
        except ValueError:
            raise SchemaError("--subgroup is a comma-separated list of element indices") from None
    if args.subgroup_index is not None:
        subs = G.subgroups()
        if not 0 <= args.subgroup_index < len(subs):
            raise SchemaError(f"{G.name} has {len(subs)} subgroups", count=len(subs))
        return subs[args.subgroup_index]
    raise SchemaError("give --subgroup or --subgroup-index")


def _check_degree(n, args):
    if n > args.max_degree:
        raise EnumerationLimitExceeded(f"degree {n} exceeds --max-degree {args.max_degree}",
                                       degree=n, cap=args.max_degree)


def _gate(g, args):
    if g.order > args.max_order:
        raise EnumerationLimitExceeded(f"{g.name} has order {g.order} > --max-order {args.max_order}",
                                       order=g.order, cap=args.max_order)
    return g


def _group_arg(args):
    if args.group is None:
        raise SchemaError("this verb needs --group")
    return _gate(get_group(args.group), args)


# ------------------------------------------------------------------ verbs


def _cohomology(args):
    G = _group_arg(args)
    if args.degree is None:
        raise SchemaError("cohomology needs --degree")
    _check_degree(args.degree, args)
    return cohomology(G, _coeff(args.coeff, G), args.degree).to_json()


def _restrict(args):
    d = _load_input(args.input)
    try:
        c = Cochain.from_json(d["cochain"])
        sub = frozenset(int(x) for x in d["subgroup"])
    except (KeyError, TypeError, ValueError):
        raise SchemaError("restrict input needs 'cochain' and 'subgroup'") from None
    _check_degree(c.degree, args)
    _, inc = restrict_to_subgroup(c.group, sub)
    r = restrict(c, inc)
    return {"restricted": r.to_json(), "is_cocycle": is_cocycle(r), "subgroup": sorted(sub)}


def _trivialize(args):
    d = _load_input(args.input)
    c = Cochain.from_json(d.get("cochain", d) if isinstance(d, dict) else d)
    _check_degree(c.degree, args)
    w = coboundary_witness(c)
    return {"trivializable": w is not None, "witness": w.to_json() if w is not None else None}


def _double_cosets(args):
    G = _group_arg(args)
    return double_cosets(G, _subgroup(args, G)).to_json()


def _hypergroup(args):
    if args.input is not None:
        h = PossibilisticHypergroup.from_json(_load_input(args.input))
    else:
        G = _group_arg(args)
        h = hypergroup_from_double_cosets(double_cosets(G, _subgroup(args, G)))
    return {"hypergroup": h.to_json(), "report": verify_hypergroup(h).to_json(),
            "is_group": h.is_group}


def _iso(args):
    d = _load_input(args.input)
    try:
        a = PossibilisticHypergroup.from_json(d["a"])
        b = PossibilisticHypergroup.from_json(d["b"])
    except (KeyError, TypeError):
        raise SchemaError("iso input needs hypergroups 'a' and 'b'") from None
    phi = hypergroups_isomorphic(a, b)
    return {"isomorphic": phi is not None, "bijection": list(phi) if phi is not None else None}


def _supergroup_arg(args):
    if args.supergroup is None:
        raise SchemaError("this verb needs --supergroup")
    S = parse_supergroup(args.supergroup)
    _gate(S.group, args)
    return S


def _sh4(args):
    S = _supergroup_arg(args)
    _check_degree(args.degree or 4, args)
    sh = sh_triples(S, args.degree or 4, threads=args.threads)
    return sh.to_json(with_table=not args.no_table)


def _sh_orbits(args):
    S = _supergroup_arg(args)
    _check_degree(args.degree or 4, args)
    sh = sh_triples(S, args.degree or 4, threads=args.threads)
    orbits = sh_orbits(S, args.degree or 4, sh=sh)
    return {"supergroup": {"group": S.group.name, "z": S.z}, "order": sh.order,
            "orbits": orbits, "orbit_sizes": [len(o) for o in orbits]}


def _spec(args):
    if args.category is None:
        raise SchemaError("spec needs --category")
    G = get_group(args.group) if args.group else None
    return spec_of(args.category, G, args.z).to_json()


def _maps(args):
    if args.source is None or args.target is None:
        raise SchemaError("maps needs --source and --target supergroups")
    X = parse_supergroup(args.source)
    Y = parse_supergroup(args.target)
    _gate(X.group, args)
    _gate(Y.group, args)
    classes = equivariant_map_classes(X, Y)
    return {"count": len(classes), "classes": [list(f.map) for f in classes],
            "faithful": [f.is_injective for f in classes]}


def _validate_tuple(args):
    return tuple_validate(tuple_from_json(_load_input(args.input))).to_json()


def _reconstruct(args):
    t = tuple_from_json(_load_input(args.input))
    rep = tuple_validate(t)
    if rep.status == "fail":
        raise SchemaError("tuple is not valid", violation=rep.violation)
    return reconstruct(t).to_json()


def _enumerate(args):
    if args.rank is None:
        raise SchemaError("enumerate needs --rank")
    groups = catalog(args.max_order)
    entries = enumerate_rank_bounded(args.rank, groups, args.rank_contribution,
                                     invariants=not args.no_invariants, threads=args.threads)
    return {"rank": args.rank, "rank_contribution": args.rank_contribution,
            "count": len(entries), "entries": [e.to_json() for e in entries]}


HANDLERS = {
    "cohomology": _cohomology,
    "restrict": _restrict,
    "trivialize": _trivialize,
    "double-cosets": _double_cosets,
    "hypergroup": _hypergroup,
    "iso": _iso,
    "sh4": _sh4,
    "sh-orbits": _sh_orbits,
    "spec": _spec,
    "maps": _maps,
    "validate-tuple": _validate_tuple,
    "reconstruct": _reconstruct,
    "enumerate": _enumerate,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="f2c", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--input", help="JSON file, '-' for stdin, or inline JSON")
    p.add_argument("--output", help="write the result here instead of stdout")
    p.add_argument("--group")
    p.add_argument("--subgroup", help="comma-separated element indices")
    p.add_argument("--subgroup-index", type=int, help="position in the sorted subgroup list")
    p.add_argument("--coeff", default="cx")
    p.add_argument("--degree", type=int)
    p.add_argument("--supergroup", help="NAME, NAME:z or NAME:<index>")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--category", help="Vect, sVect, Rep(G) or Rep(G,z)")
    p.add_argument("--z", type=int)
    p.add_argument("--rank", type=int)
    p.add_argument("--rank-contribution", type=int, default=1)
    p.add_argument("--no-invariants", action="store_true")
    p.add_argument("--no-table", action="store_true")
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--cap", type=int, default=limits.max_cochain_cells,
                   help="largest differential (rows) the linear algebra may build")
    p.add_argument("--threads", type=int, default=1)
    return p


def run(argv) -> tuple[int, dict]:
    """Execute one command; returns ``(exit status, JSON-ready result)``."""
    code, result, _ = _run(argv)
    return code, result


def _run(argv):
    saved = limits.max_cochain_cells
    output = None
    try:
        args = build_parser().parse_args(argv)
        output = args.output
        if args.threads < 1 or args.max_order < 1 or args.cap < 1:
            raise SchemaError("--threads, --max-order and --cap must be positive")
        limits.max_cochain_cells = args.cap
        return 0, HANDLERS[args.verb](args), output
    except EnumerationLimitExceeded as exc:
        return 3, exc.to_json(), None
    except F2CError as exc:
        return 2, exc.to_json(), None
    finally:
        limits.max_cochain_cells = saved


def dumps(result) -> str:
    return json.dumps(result, sort_keys=True, separators=(",", ":")) + "\n"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, result, out = _run(argv)
    text = dumps(result)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

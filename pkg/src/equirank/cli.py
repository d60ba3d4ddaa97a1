"""Command-line front end.

Spec strings name a group (``Z6``, ``S3``, ``D4``, ``Z2xZ4``,
``perm:<degree>:<generators>``) and a G-set (``shift:q=2``,
``cosets:0,3``, ``union:<a>+<b>``); subcommands report the subgroup
lattice, the box decomposition, monoid enumerations, the relative rank,
cellular automata, or run the verification suite on the instance.

Exit codes: 0 success, 2 malformed spec / domain error, 3 budget
exceeded, 4 property-check failure, 5 internal error.  JSON output is
deterministic: same input, byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

import numpy as np

from .actions import (
    GSet,
    alpha_by_moebius,
    aut_orbits_in_box,
    burnside_orbit_count,
    coset_action,
    decompose,
    disjoint_union,
)
from .errors import BudgetExceeded, EquirankError, PropertyFailure, SpecStringError
from .groups import (
    FiniteGroup,
    direct_product,
    from_permutation_generators,
    make_cyclic,
    make_dihedral,
    make_symmetric,
)
from .lattice import Subgroup, build_lattice, generated_subgroup
from .rank import (
    aut_generators,
    aut_group_order,
    collapse_type_census,
    relative_rank,
    wreath_order_checks,
)
from .shift import LocalRule, ShiftSpace, build_shift, ca_from_rule, minimal_memory_set, rule_from_map
from .transform import (
    closure,
    end_monoid_order,
    enumerate_aut,
    enumerate_end,
    identity_map,
    map_rank,
)

COMMANDS = ("lattice", "boxes", "enumerate", "rank", "ca", "verify")
_IMAGE_LIMIT = 512

_ATOM = re.compile(r"^(Z|S|D)(\d+)$")
_PERM = re.compile(r"^perm:(\d+):(.+)$")
_SHIFT = re.compile(r"^shift:q=(\d+)$")
_COSETS = re.compile(r"^cosets:(\d+(,\d+)*)$")


@dataclass(frozen=True)
class RunConfig:
    command: str
    group_spec: str
    gset_spec: str | None
    rule_spec: str | None = None
    paper_layout: bool = False
    aut_only: bool = False
    verify_after: bool = False
    budget: int | None = None
    output: str = "json"


def _check_group_syntax(token: str, position: int) -> None:
    if _PERM.match(token):
        return
    for part in token.split("x"):
        if not _ATOM.match(part):
            raise SpecStringError(
                f"unknown group token {part!r} in {token!r} (argument {position})",
                token=part, position=position)


def _check_gset_syntax(token: str, position: int) -> None:
    if token.startswith("union:"):
        parts = token[len("union:"):].split("+")
        if len(parts) < 2:
            raise SpecStringError(
                f"union spec {token!r} needs at least two parts (argument {position})",
                token=token, position=position)
        for part in parts:
            _check_gset_syntax(part, position)
        return
    m = _SHIFT.match(token)
    if m:
        if int(m.group(1)) < 2:
            raise SpecStringError(
                f"alphabet size must be at least 2 in {token!r} (argument {position})",
                token=token, position=position)
        return
    if _COSETS.match(token):
        return
    raise SpecStringError(
        f"unknown G-set token {token!r} (argument {position})",
        token=token, position=position)


def parse_specs(args) -> RunConfig:
    """Validate the argument list; raises SpecStringError on bad tokens."""
    parser = argparse.ArgumentParser(
        prog="equirank",
        description="structure of the equivariant self-maps of a finite group action")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("group", help="Z6 | S3 | D4 | Z2xZ4 | perm:<degree>:<gens>")
    parser.add_argument("gset", nargs="?",
                        help="shift:q=<n> | cosets:<elements> | union:<a>+<b>")
    parser.add_argument("--rule", help="local rule as <memory>:<table>, e.g. 0,1:0110")
    parser.add_argument("--paper-layout", action="store_true",
                        help="render boxes as a compact printed-style table")
    parser.add_argument("--aut-only", action="store_true",
                        help="enumerate only the bijections")
    parser.add_argument("--verify", action="store_true",
                        help="run the property suite after the command")
    parser.add_argument("--budget", type=int)
    parser.add_argument("--output", choices=["json", "table"], default="json")
    try:
        ns = parser.parse_args(list(args))
    except SystemExit:
        raise SpecStringError(f"could not parse arguments: {' '.join(args)}") from None

    if ns.budget is not None and ns.budget <= 0:
        raise SpecStringError(f"budget must be positive, got {ns.budget}")
    _check_group_syntax(ns.group, 2)
    if ns.command == "lattice":
        if ns.gset is not None:
            _check_gset_syntax(ns.gset, 3)
    else:
        if ns.gset is None:
            raise SpecStringError(f"command {ns.command!r} needs a G-set spec")
        _check_gset_syntax(ns.gset, 3)
    if ns.command == "ca":
        if not _SHIFT.match(ns.gset):
            raise SpecStringError("the ca command needs a shift:q=<n> G-set")
        if ns.rule is None:
            raise SpecStringError("the ca command needs --rule <memory>:<table>")
        if ":" not in ns.rule:
            raise SpecStringError(f"rule spec {ns.rule!r} is missing the ':' separator",
                                  token=ns.rule)
    return RunConfig(
        command=ns.command,
        group_spec=ns.group,
        gset_spec=ns.gset,
        rule_spec=ns.rule,
        paper_layout=ns.paper_layout,
        aut_only=ns.aut_only,
        verify_after=ns.verify,
        budget=ns.budget,
        output=ns.output,
    )


def _build_group(token: str) -> FiniteGroup:
    m = _PERM.match(token)
    if m:
        degree = int(m.group(1))
        gens = []
        for word in m.group(2).split(";"):
            perm = list(range(degree))
            for cyc in re.findall(r"\(([^)]*)\)", word):
                entries = [int(t) for t in re.split(r"[ ,]+", cyc.strip()) if t]
                if any(not 0 <= e < degree for e in entries) or len(set(entries)) != len(entries):
                    raise SpecStringError(f"malformed cycle ({cyc}) in {token!r}", token=token)
                for a, b in zip(entries, entries[1:] + entries[:1]):
                    perm[a] = b
            gens.append(tuple(perm))
        return from_permutation_generators(degree, gens, name=token)
    parts = []
    for part in token.split("x"):
        kind, n = _ATOM.match(part).groups()
        n = int(n)
        maker = {"Z": make_cyclic, "S": make_symmetric, "D": make_dihedral}[kind]
        parts.append(maker(n))
    G = parts[0]
    for other in parts[1:]:
        G = direct_product(G, other)
    return G


def _build_gset(G: FiniteGroup, token: str):
    """Returns (gset, shift-space-or-None)."""
    if token.startswith("union:"):
        pieces = [_build_gset(G, part)[0] for part in token[len("union:"):].split("+")]
        out = pieces[0]
        for nxt in pieces[1:]:
            out = disjoint_union(out, nxt)
        return out, None
    m = _SHIFT.match(token)
    if m:
        space = build_shift(G, int(m.group(1)))
        return space.gset, space
    m = _COSETS.match(token)
    if m is None:
        raise SpecStringError(f"unknown G-set token {token!r}", token=token)
    elements = [int(t) for t in m.group(1).split(",")]
    if any(not 0 <= e < G.order for e in elements):
        raise SpecStringError(f"coset spec {token!r} names elements outside the group",
                              token=token)
    H = Subgroup(G, tuple(sorted(generated_subgroup(G, elements))))
    return coset_action(G, H), None


def _parse_rule(space: ShiftSpace, spec: str) -> LocalRule:
    mem_part, _, table_part = spec.partition(":")
    memory = tuple(int(t) for t in mem_part.split(",") if t != "")
    if any(not 0 <= s < space.group.order for s in memory):
        raise SpecStringError(f"memory set in {spec!r} names elements outside the group",
                              token=spec)
    if "," in table_part:
        table = [int(t) for t in table_part.split(",")]
    else:
        if not table_part.isdigit() and table_part != "":
            raise SpecStringError(f"rule table in {spec!r} must be digits", token=spec)
        table = [int(ch) for ch in table_part]
    return LocalRule(space=space, memory=memory, table=np.array(table, dtype=np.int64))


def _subgroup_elements(lattice, idx: int) -> list[int]:
    return [int(e) for e in lattice.subgroups[idx].elements]


def _lattice_report(G: FiniteGroup) -> dict:
    lat = build_lattice(G)
    moebius = []
    for i in range(len(lat.subgroups)):
        for j in range(len(lat.subgroups)):
            if lat.leq[i, j]:
                moebius.append([i, j, int(lat.moebius(i, j))])
    return {
        "schema": 1,
        "command": "lattice",
        "group": G.name,
        "group_order": G.order,
        "subgroups": [_subgroup_elements(lat, i) for i in range(len(lat.subgroups))],
        "classes": [list(c) for c in lat.classes],
        "class_reps": [int(r) for r in lat.class_reps],
        "normalizers": [int(n) for n in lat.normalizer_idx],
        "moebius": moebius,
    }


def _boxes_report(X: GSet) -> dict:
    lat = build_lattice(X.group)
    decomp = decompose(X, lat)
    boxes = []
    for i in range(decomp.n_boxes):
        H = decomp.box_subgroup(i)
        entry = {
            "stabilizer": [int(e) for e in H.elements],
            "stabilizer_order": H.order,
            "alpha": int(decomp.alpha[i]),
            "aut_orbits": int(decomp.expected_aut_orbits(i)),
            "sub_boxes": {str(k): [int(x) for x in pts]
                          for k, pts in decomp.sub_boxes[i].items()},
        }
        if X.size <= _IMAGE_LIMIT:
            entry["points"] = [int(x) for x in decomp.boxes[i]]
            entry["orbits"] = [[int(x) for x in o] for o in decomp.orbits_in_box(i)]
        boxes.append(entry)
    return {
        "schema": 1,
        "command": "boxes",
        "group": X.group.name,
        "gset": X.name,
        "points": X.size,
        "orbit_count": burnside_orbit_count(X),
        "kappa": [int(i) for i in decomp.kappa],
        "boxes": boxes,
    }


def _paper_table(X: GSet) -> str:
    """Boxes as printed tables: largest stabilizer first, one column per orbit."""
    decomp = decompose(X)
    G = X.group
    lines = [f"{X.name}: {X.size} points, {decomp.n_boxes} boxes"]
    for i in reversed(range(decomp.n_boxes)):
        H = decomp.box_subgroup(i)
        label = "{" + ",".join(G.label(e) for e in H.elements) + "}"
        lines.append(f"stabilizer class {label}  alpha = {decomp.alpha[i]}")
        orbs = decomp.orbits_in_box(i)
        width = max(len(str(p)) for o in orbs for p in o)
        for r in range(len(orbs[0])):
            lines.append("  " + "  ".join(str(o[r]).rjust(width) for o in orbs))
    return "\n".join(lines)


def _enumerate_report(X: GSet, config: RunConfig) -> dict:
    kwargs = {"budget": config.budget} if config.budget else {}
    if config.aut_only:
        found = enumerate_aut(X, **kwargs)
        predicted = aut_group_order(decompose(X))
    else:
        found = enumerate_end(X, **kwargs)
        predicted = end_monoid_order(X)
    if found.size != predicted:
        raise PropertyFailure(f"enumerated {found.size} maps, formula gives {predicted}")
    report = {
        "schema": 1,
        "command": "enumerate",
        "kind": "aut" if config.aut_only else "end",
        "group": X.group.name,
        "gset": X.name,
        "size": found.size,
        "order_formula": predicted,
    }
    if found.size <= _IMAGE_LIMIT:
        report["images"] = [[int(v) for v in row] for row in found.images]
    return report


def _rank_report(X: GSet) -> dict:
    lat = build_lattice(X.group)
    report = relative_rank(X, lat)
    decomp = report.decomposition
    out = {
        "schema": 1,
        "command": "rank",
        "group": X.group.name,
        "gset": X.name,
        "points": X.size,
        "relative_rank": report.relative_rank,
        "u_sizes": [len(u) for u in report.u_sets],
        "u_sets": [[list(cls) for cls in u] for u in report.u_sets],
        "alpha": [int(a) for a in decomp.alpha],
        "kappa": [int(i) for i in report.kappa],
        "kappa_size": len(report.kappa),
        "tags": list(report.tags),
        "aut_order": aut_group_order(decomp),
    }
    if X.size <= _IMAGE_LIMIT:
        out["generators"] = [[int(v) for v in g.image] for g in report.generating_set]
    return out


def _ca_report(space: ShiftSpace, config: RunConfig) -> dict:
    rule = _parse_rule(space, config.rule_spec)
    tau = ca_from_rule(space, rule)
    out = {
        "schema": 1,
        "command": "ca",
        "group": space.group.name,
        "q": space.q,
        "memory": [int(s) for s in rule.memory],
        "rule": [int(v) for v in rule.table],
        "equivariant": True,
        "invertible": tau.is_bijective(),
        "map_rank": map_rank(tau),
        "minimal_memory": [int(s) for s in minimal_memory_set(space, tau)],
    }
    if space.size <= _IMAGE_LIMIT:
        out["image"] = [int(v) for v in tau.image]
    return out


def _verify_checks(X: GSet, space: ShiftSpace | None, budget: int | None) -> list[dict]:
    checks = []

    def record(name, fn):
        try:
            fn()
            checks.append({"name": name, "status": "pass"})
        except BudgetExceeded:
            checks.append({"name": name, "status": "skipped"})
        except (PropertyFailure, AssertionError) as e:
            checks.append({"name": name, "status": "fail", "detail": str(e)})

    lat = build_lattice(X.group)
    decomp = decompose(X, lat)

    def check_burnside():
        if burnside_orbit_count(X) != len(X.orbits):
            raise PropertyFailure("orbit count disagrees with the fixed-point average")

    def check_moebius():
        for i in range(decomp.n_boxes):
            if alpha_by_moebius(decomp, i) != decomp.alpha[i]:
                raise PropertyFailure(f"box {i}: Moebius route disagrees with direct count")

    def check_aut_orbits():
        for i in range(decomp.n_boxes):
            aut_orbits_in_box(X, decomp.box_subgroup(i), lat)

    def check_rank():
        report = relative_rank(X, lat)
        census = collapse_type_census(X, lat)
        if len(census) != report.relative_rank:
            raise PropertyFailure(
                f"census has {len(census)} types, rank is {report.relative_rank}")

    def check_wreath():
        wreath_order_checks(X, lat, **({"budget": budget} if budget else {}))

    def check_enumeration():
        kwargs = {"budget": budget} if budget else {}
        end = enumerate_end(X, **kwargs)
        if end.size != end_monoid_order(X):
            raise PropertyFailure("enumeration disagrees with the order formula")
        aut = enumerate_aut(X, **kwargs)
        if aut.size != aut_group_order(decomp):
            raise PropertyFailure("bijection count disagrees with the wreath formula")
        gens = aut_generators(X, lat, decomp) + list(relative_rank(X, lat).generating_set)
        if closure(X, gens, cap=max(end.size, 2)).size != end.size:
            raise PropertyFailure("Aut plus the push set does not generate the monoid")

    record("burnside_orbit_count", check_burnside)
    record("alpha_moebius", check_moebius)
    record("aut_orbits_per_box", check_aut_orbits)
    record("rank_census", check_rank)
    record("wreath_orders", check_wreath)
    record("enumeration_vs_formulas", check_enumeration)

    if space is not None:
        def check_curtis_hedlund():
            ident = identity_map(space.gset)
            if ca_from_rule(space, rule_from_map(space, ident)) != ident:
                raise PropertyFailure("identity map does not round-trip through its rule")
            mm = minimal_memory_set(space, ident)
            if mm != (space.group.identity,):
                raise PropertyFailure(f"identity map has minimal memory {mm}")

        record("rule_round_trip", check_curtis_hedlund)
    return checks


def _verify_report(X: GSet, space: ShiftSpace | None, config: RunConfig) -> tuple[int, dict]:
    checks = _verify_checks(X, space, config.budget)
    failures = sum(1 for c in checks if c["status"] == "fail")
    report = {
        "schema": 1,
        "command": "verify",
        "group": X.group.name,
        "gset": X.name,
        "checks": checks,
        "failures": failures,
    }
    return (4 if failures else 0), report


def run(config: RunConfig) -> tuple[int, dict | str]:
    """Execute a parsed config; returns (exit code, report)."""
    G = _build_group(config.group_spec)
    if config.command == "lattice":
        return 0, _lattice_report(G)

    X, space = _build_gset(G, config.gset_spec)
    code = 0
    if config.command == "boxes":
        report = _paper_table(X) if config.paper_layout else _boxes_report(X)
    elif config.command == "enumerate":
        report = _enumerate_report(X, config)
    elif config.command == "rank":
        report = _rank_report(X)
    elif config.command == "ca":
        report = _ca_report(space, config)
    else:
        code, report = _verify_report(X, space, config)

    if config.verify_after and config.command != "verify" and isinstance(report, dict):
        vcode, vreport = _verify_report(X, space, config)
        report["verification"] = vreport["checks"]
        code = code or vcode
    return code, report


def _as_table(report, indent: str = "") -> str:
    if isinstance(report, str):
        return report
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_as_table(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for k, item in enumerate(value):
                lines.append(f"{indent}{key}[{k}]:")
                lines.append(_as_table(item, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        config = parse_specs(args)
        code, report = run(config)
    except EquirankError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    except Exception as e:  # pragma: no cover - defensive
        sys.stderr.write(f"internal error: {e!r}\n")
        return 5
    if isinstance(report, str) or config.output == "table":
        sys.stdout.write(_as_table(report) + "\n")
    else:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())

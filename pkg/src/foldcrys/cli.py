"""Command-line interface: unfolding reports, crystal computations,
reference-table verification, relation checking, and combinatorics
helpers.  Output is deterministic byte-for-byte for a fixed invocation."""

import argparse
import json
import os
import sys

from .cartan import InvalidDatum, builtin_datum, unfold, validate_datum
from .coweight import EvenCoweight, grading_of
from .crystal import (
    CapExceeded,
    Caps,
    Monomial,
    character,
    closure_Minfty,
    component,
    labels,
    to_dot,
    to_json,
)
from .coweight import dim_N_eta_rho
from .gklo import BudgetExceeded, check_A0, check_relation
from .golden import verify_all
from .lie import RootSystem, tensor_decompose
from .seqcomb import SizeCap, e_w_mu_support, is_even_pair, underline_order

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BUDGET = 2


class CliError(ValueError):
    pass


def _parse_caps(text, base=None):
    caps = base or Caps()
    values = {"nodes": caps.nodes, "iterations": caps.iterations}
    if text:
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            key, _, val = chunk.partition("=")
            key = key.strip()
            if key not in values:
                raise CliError(f"unknown cap {key!r} (expected nodes, iterations)")
            try:
                num = int(val)
            except ValueError:
                raise CliError(f"cap {key!r} must be an integer") from None
            if num <= 0:
                raise CliError(f"cap {key!r} must be positive")
            values[key] = num
    return Caps(iterations=values["iterations"], nodes=values["nodes"])


def _caps_from(args):
    caps = _parse_caps(os.environ.get("FOLDCRYS_CAPS", ""))
    return _parse_caps(getattr(args, "caps", None), base=caps)


def _datum_from(args):
    if getattr(args, "input", None):
        with open(args.input) as handle:
            raw = json.load(handle)
        return validate_datum(
            raw["c"],
            raw["d"],
            parity=raw.get("parity"),
            order=raw.get("order"),
            family=raw.get("family"),
            name=raw.get("name"),
        )
    if getattr(args, "type", None):
        return builtin_datum(args.type)
    raise CliError("either --type or --input is required")


def _unfolded_from(args):
    datum = _datum_from(args)
    seed = None
    if getattr(args, "seed", None):
        i, _, r = args.seed.partition(",")
        seed = (int(i), int(r))
    return unfold(datum, seed=seed)


def _emit_json(payload):
    print(json.dumps(payload, sort_keys=True, indent=2))


def _ui_text(ui):
    return f"({ui[0]},{ui[1]})"


def cmd_unfold(args):
    uq = _unfolded_from(args)
    payload = {
        "base": {
            "name": uq.base.name,
            "c": [list(row) for row in uq.base.c],
            "d": list(uq.base.d),
            "parity": list(uq.base.parity),
            "order": list(uq.base.order),
        },
        "vertices": [list(ui) for ui in uq.underline_I],
        "arrows": [[list(x), list(y)] for (x, y) in uq.underline_E],
        "cartan": [list(row) for row in uq.underline_C],
        "residues": [sorted(res) for res in uq.class_residues],
        "seed": list(uq.seed),
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        print(f"base: {uq.base.name or 'custom'}  rank {uq.base.n}")
        print("vertices:", " ".join(_ui_text(ui) for ui in uq.underline_I))
        print(
            "arrows:",
            " ".join(f"{_ui_text(x)}->{_ui_text(y)}" for (x, y) in uq.underline_E),
        )
        print("cartan:")
        for row in uq.underline_C:
            print("  " + " ".join(f"{x:3d}" for x in row))
        for i, res in enumerate(payload["residues"], start=1):
            print(f"residues[{i}]: {res}")
    return EXIT_OK


def _emit_graph(args, uq, graph):
    if args.format == "dot":
        sys.stdout.write(to_dot(uq, graph))
    elif args.format == "json":
        _emit_json(to_json(uq, graph))
    else:
        print(f"nodes: {len(graph)}")
        for m in graph.nodes:
            print("  " + m.to_text())
        print(f"highest: {len(graph.highest)}")
        for m in graph.highest:
            print("  " + m.to_text())


def cmd_crystal_component(args):
    uq = _unfolded_from(args)
    caps = _caps_from(args)
    m = Monomial.from_text(args.monomial)
    graph = component(uq, m, cap=caps.nodes)
    _emit_graph(args, uq, graph)
    return EXIT_OK


def cmd_closure(args):
    uq = _unfolded_from(args)
    caps = _caps_from(args)
    rho = EvenCoweight.from_string(args.rho, uq.base.n)
    graph, stable = closure_Minfty(uq, rho, caps)
    if args.format == "table":
        _emit_graph(args, uq, graph)
        print(f"stable dominant set: {len(stable)}")
        for m in stable:
            print("  " + m.to_text())
    elif args.format == "dot":
        sys.stdout.write(to_dot(uq, graph))
    else:
        payload = to_json(uq, graph)
        payload["stable_dominant"] = [m.to_text() for m in stable]
        _emit_json(payload)
    return EXIT_OK


def cmd_labels(args):
    uq = _unfolded_from(args)
    caps = _caps_from(args)
    rho = EvenCoweight.from_string(args.rho, uq.base.n)
    graph, _stable = closure_Minfty(uq, rho, caps)
    labeled, unlabeled = labels(uq, rho, graph)
    rows = [
        {
            "node": m.to_text(),
            "gamma": gamma.to_string(),
            "weight": [wt[ui] for ui in uq.underline_I],
        }
        for m, gamma, wt in labeled
    ]
    payload = {
        "vertex_order": [list(ui) for ui in uq.underline_I],
        "labels": rows,
        "unlabeled": [m.to_text() for m in unlabeled],
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        for row in rows:
            print(f"{row['node']:40s}  mu={row['weight']}  gamma={row['gamma'] or '0'}")
        if unlabeled:
            print(f"unlabeled: {len(unlabeled)}")
    return EXIT_FAIL if unlabeled else EXIT_OK


def cmd_verify_b2(args):
    caps = _caps_from(args)
    reports = verify_all(caps)
    if args.format == "json":
        _emit_json({"cases": reports})
    else:
        for rep in reports:
            status = "ok" if rep["ok"] else "MISMATCH"
            print(f"case ({rep['id']}): {status}")
            for problem in rep["problems"]:
                print("  - " + problem)
    return EXIT_OK if all(rep["ok"] for rep in reports) else EXIT_FAIL


def cmd_check_relations(args):
    datum = _datum_from(args)
    dims = tuple(int(x) for x in args.dims.split(","))
    framing = tuple(int(x) for x in args.framing.split(","))
    if len(dims) != datum.n or len(framing) != datum.n:
        raise CliError("--dims and --framing must match the rank")
    rels = args.relations
    reports = [check_relation(datum, dims, framing, rel) for rel in rels]
    reports.append(check_A0(datum, dims, framing))
    payload = {
        "type": datum.name or "custom",
        "dims": list(dims),
        "framing": list(framing),
        "results": reports,
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        for rep in reports:
            status = "pass" if rep["holds"] else "FAIL"
            line = f"relation ({rep['relation']}): {status}"
            if rep["witness"]:
                line += f"  [{rep['witness']}]"
            print(line)
    return EXIT_OK if all(rep["holds"] for rep in reports) else EXIT_FAIL


def cmd_seq(args):
    uq = _unfolded_from(args)
    order = underline_order(uq)
    parts = [int(x) for x in args.alpha.split(",")]
    if len(parts) != len(order):
        raise CliError(
            f"--alpha needs {len(order)} entries for vertex order "
            + " ".join(_ui_text(ui) for ui in order)
        )
    alpha = {ui: c for ui, c in zip(order, parts)}
    levels = tuple(sorted(int(x) for x in args.levels.split(","))) if args.levels else ()
    window = None
    if args.window:
        lo, _, hi = args.window.partition(",")
        window = (int(lo), int(hi))
    even = (lambda ui, val: is_even_pair(uq, ui, val)) if args.even else None
    support = e_w_mu_support(
        alpha, levels, order, window=window, even=even, cap=args.cap
    )
    payload = {
        "vertex_order": [list(ui) for ui in order],
        "levels": list(levels),
        "support": [
            {"v": [list(ui) for ui in v], "kappa": list(kappa)}
            for v, kappa in support
        ],
        "count": len(support),
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        print(f"count: {len(support)}")
        for entry in payload["support"]:
            print(f"  v={entry['v']} kappa={entry['kappa']}")
    return EXIT_OK


def cmd_dim(args):
    uq = _unfolded_from(args)
    eta = EvenCoweight.from_string(args.eta, uq.base.n)
    rho = EvenCoweight.from_string(args.rho, uq.base.n)
    value = dim_N_eta_rho(uq, eta, rho)
    payload = {
        "eta": eta.to_string(),
        "rho": rho.to_string(),
        "eta_grading": [
            [list(ui), k, c] for (ui, k), c in grading_of(uq, eta).dims
        ],
        "dim": value,
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        print(value)
    return EXIT_OK


def cmd_tensor(args):
    datum = _datum_from(args)
    rs = RootSystem(datum.c)
    lam = tuple(int(x) for x in args.highest.split(","))
    mu = tuple(int(x) for x in args.other.split(","))
    dec = tensor_decompose(rs, lam, mu)
    rows = [
        {"highest": list(nu), "multiplicity": m, "dim": rs.weyl_dim(nu)}
        for nu, m in sorted(dec.items())
    ]
    total = sum(r["multiplicity"] * r["dim"] for r in rows)
    payload = {
        "factors": [list(lam), list(mu)],
        "dims": [rs.weyl_dim(lam), rs.weyl_dim(mu)],
        "summands": rows,
        "total_dim": total,
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        for row in rows:
            print(
                f"L({','.join(str(x) for x in row['highest'])})"
                f" x{row['multiplicity']}  dim {row['dim']}"
            )
        print(f"total: {total} = {payload['dims'][0]} * {payload['dims'][1]}")
    return EXIT_OK


def _add_datum_args(parser):
    parser.add_argument("--type", help="built-in Cartan type, e.g. B2, G2, A3")
    parser.add_argument("--input", help="JSON file with fields c, d [, parity, order]")
    parser.add_argument("--seed", help="unfolding seed as 'vertex,residue'")


def _add_common(parser, formats=("table", "json")):
    parser.add_argument("--format", choices=formats, default="table")
    parser.add_argument("--caps", help="cap overrides, e.g. 'nodes=5000,iterations=8'")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="foldcrys",
        description="folded Cartan data, even monomial crystals, and "
        "symbolic difference-operator presentations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unfold", help="report the unfolded quiver")
    _add_datum_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("crystal-component", help="connected crystal component")
    _add_datum_args(p)
    _add_common(p, formats=("table", "json", "dot"))
    p.add_argument("--monomial", required=True, help="seed, e.g. 'z[1,4]'")
    p.set_defaults(func=cmd_crystal_component)

    p = sub.add_parser("closure", help="dominant-closure subcrystal")
    _add_datum_args(p)
    _add_common(p, formats=("table", "json", "dot"))
    p.add_argument("--rho", required=True, help="framing coweight, e.g. '1:[-4]'")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("labels", help="coweight labels of the closure nodes")
    _add_datum_args(p)
    _add_common(p)
    p.add_argument("--rho", required=True, help="framing coweight, e.g. '1:[-4]'")
    p.set_defaults(func=cmd_labels)

    p = sub.add_parser("verify-b2", help="check the built-in reference tables")
    _add_common(p)
    p.set_defaults(func=cmd_verify_b2)

    p = sub.add_parser("check-relations", help="symbolic relation checks")
    _add_datum_args(p)
    _add_common(p)
    p.add_argument("--dims", required=True, help="dimension vector, e.g. '1,1'")
    p.add_argument("--framing", required=True, help="framing vector, e.g. '0,1'")
    p.add_argument(
        "--relations", default="abcdefg", help="letters among a-h (default abcdefg)"
    )
    p.set_defaults(func=cmd_check_relations)

    p = sub.add_parser("seq", help="sequence/triple support enumeration")
    _add_datum_args(p)
    _add_common(p)
    p.add_argument("--alpha", required=True, help="entries per unfolded vertex")
    p.add_argument("--levels", default="", help="comma-separated cut levels")
    p.add_argument("--window", help="x-value window 'lo,hi'")
    p.add_argument("--even", action="store_true", help="restrict to even pairs")
    p.add_argument("--cap", type=int, help="support size cap")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("dim", help="graded pair-space dimension")
    _add_datum_args(p)
    _add_common(p)
    p.add_argument("--eta", required=True, help="coweight, e.g. '1:[-4,-6]'")
    p.add_argument("--rho", required=True, help="framing coweight")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("tensor", help="tensor-product decomposition")
    _add_datum_args(p)
    _add_common(p)
    p.add_argument("--highest", required=True, help="fundamental coords, e.g. '1,0,0'")
    p.add_argument("--other", required=True, help="fundamental coords of the second factor")
    p.set_defaults(func=cmd_tensor)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, CapExceeded, SizeCap) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CliError, InvalidDatum, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

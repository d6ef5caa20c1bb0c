"""Command-line entry point over the JSON interchange formats.

Exit codes separate mathematical answers from operational failures: 0 for
success and positive verdicts, 1 for refutations and membership
violations, 2 for input problems, 3 for an exhausted search budget.
Output is byte-stable for fixed inputs; the only randomness lives behind
the explicit seed of sampled spectra scans.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .amalgamation import (
    AmalgamResult,
    InvalidSystemError,
    ScanEntry,
    SpecialSystem,
    amalgamate_infinite,
    amalgamate_quotient,
    ap_search,
    dap_from_ap,
    dap_search,
    spectra_scan,
)
from .diagrams import (
    diagram_from_json,
    diagram_key,
    diagram_set_from_json,
    diagram_set_to_json,
    diagram_to_json,
    validate,
)
from .diagrams import DiagramSet, prune as prune_set, quotient as quotient_set
from .ordinal import Ordinal, parse_ordinal, render_ordinal
from .rank import InfiniteDiagram, rank_table
from .structures import (
    ColoringStructure,
    in_class,
    monochromatic_model,
    structure_from_json,
    structure_to_json,
)
from .constructions import (
    IntervalBlock,
    build_interval_splitting,
    build_k_splitting,
    build_limit_sum,
    build_pair_splitting,
)
from .walpha import WAlphaParams, verify_claim


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation: command, inputs, budget, seed, and output sink.

    A fixed seed makes sampled runs byte-identical; everything else is
    deterministic outright.
    """

    command: str
    budget: Optional[int]
    seed: int
    out: Optional[str]
    threads: int

    def __post_init__(self) -> None:
        if self.budget is not None and self.budget < 1:
            raise InputError("budget must be at least 1")
        if self.threads < 1:
            raise InputError("thread cap must be at least 1")


class InputError(Exception):
    """Bad input: malformed JSON, failed validation, missing pieces."""


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e.msg} at line {e.lineno} column {e.colno}")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}")


def _load_diagram_set(path: str) -> DiagramSet:
    ds = diagram_set_from_json(_load_json(path))
    report = validate(ds)
    if not report:
        raise InputError(f"{path}: invalid diagram set: {report.reason}")
    return ds


def _load_structure(path: str) -> ColoringStructure:
    try:
        return structure_from_json(_load_json(path))
    except (ValueError, KeyError) as e:
        raise InputError(f"{path}: invalid structure: {e}")


def system_to_json(sys_: SpecialSystem) -> dict:
    return {
        "x": list(sys_.x),
        "a1": sys_.a1,
        "a2": sys_.a2,
        "c1": structure_to_json(sys_.c1),
        "c2": structure_to_json(sys_.c2),
    }


def system_from_json(data: dict) -> SpecialSystem:
    return SpecialSystem(
        tuple(sorted(int(p) for p in data["x"])),
        int(data["a1"]),
        int(data["a2"]),
        structure_from_json(data["c1"]),
        structure_from_json(data["c2"]),
    )


def amalgam_result_to_json(result: AmalgamResult) -> dict:
    return {
        "status": result.status,
        "method": result.method,
        "witness": structure_to_json(result.witness) if result.witness else None,
        "identified": result.identified,
        "refutation": [
            {
                "branch": [b.color.arity, b.color.id],
                "violating_subset": list(b.violating_subset),
                "diagram": diagram_to_json(b.diagram),
            }
            for b in result.refutation
        ],
        "nodes": result.nodes,
    }


def scan_table_to_json(table: dict[int, ScanEntry]) -> dict:
    out = {}
    for lam, entry in table.items():
        out[str(lam)] = {
            "dap": entry.dap,
            "ap": entry.ap,
            "dap_certificate": system_to_json(entry.dap_certificate)
            if entry.dap_certificate
            else None,
            "ap_certificate": system_to_json(entry.ap_certificate)
            if entry.ap_certificate
            else None,
        }
    return out


def _emit(payload, out_path: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chroma")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=None)
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("rank", help="rank every member of a diagram set")
    p.add_argument("--in", dest="infile", required=True)
    add_common(p)

    p = sub.add_parser("member", help="check a structure against a diagram set")
    p.add_argument("--structure", required=True)
    p.add_argument("--diagrams", required=True)
    add_common(p)

    p = sub.add_parser("amalgamate", help="extend a special system to the union")
    p.add_argument("--system", required=True)
    p.add_argument("--diagrams", required=True)
    p.add_argument(
        "--mode",
        choices=["dap", "ap", "from-ap", "infinite", "quotient"],
        default="dap",
    )
    add_common(p)

    p = sub.add_parser("build", help="run a model builder on a JSON parameter block")
    p.add_argument("kind", choices=["mono", "limit-sum", "pair-split", "k-split", "interval-split"])
    p.add_argument("--in", dest="infile", required=True)
    add_common(p)

    p = sub.add_parser("spectra", help="scan amalgamation verdicts by size")
    p.add_argument("--diagrams", required=True)
    p.add_argument("--lambda-max", dest="lambda_max", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--trials", type=int, default=100)
    add_common(p)

    p = sub.add_parser("walpha-verify", help="audit the closed-form rank law on a truncation")
    p.add_argument("--alpha", required=True)
    p.add_argument("--F", dest="indices", required=True)
    p.add_argument("--max-arity", dest="max_arity", type=int, required=True)
    p.add_argument("--max-gamma", dest="max_gamma", type=int, default=1)
    add_common(p)

    p = sub.add_parser("quotient", help="chop a stem off a diagram set")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--wbar", required=True, help="JSON diagram, e.g. '[[1,0]]'")
    add_common(p)

    p = sub.add_parser("prune", help="keep members comparable with the given diagrams")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--keep", required=True, help="JSON list of diagrams")
    add_common(p)

    return parser


def _threads_from_env() -> int:
    raw = os.environ.get("CHROMA_THREADS", "1")
    try:
        threads = int(raw)
    except ValueError:
        raise InputError(f"CHROMA_THREADS must be an integer, got {raw!r}")
    if threads < 1:
        raise InputError("CHROMA_THREADS must be at least 1")
    return threads


def _cmd_rank(args) -> tuple[dict, int]:
    ds = _load_diagram_set(args.infile)
    ranks = rank_table(ds)
    payload = {
        "ranks": {
            diagram_key(w): render_ordinal(Ordinal.from_int(r))
            for w, r in sorted(ranks.items())
        }
    }
    return payload, 0


def _cmd_member(args) -> tuple[dict, int]:
    ds = _load_diagram_set(args.diagrams)
    m = _load_structure(args.structure)
    report = in_class(m, ds)
    payload = {
        "ok": report.ok,
        "violating_subset": list(report.violating_subset) if report.violating_subset else None,
        "diagram": diagram_to_json(report.diagram) if report.diagram else None,
    }
    return payload, 0 if report.ok else 1


def _cmd_amalgamate(args) -> tuple[dict, int]:
    ds = _load_diagram_set(args.diagrams)
    raw = _load_json(args.system)
    try:
        sys_ = system_from_json(raw)
    except (ValueError, KeyError) as e:
        raise InputError(f"{args.system}: invalid system: {e}")
    try:
        if args.mode == "dap":
            result = dap_search(sys_, ds, args.budget)
        elif args.mode == "ap":
            result = ap_search(sys_, ds, args.budget)
        elif args.mode == "from-ap":
            result = dap_from_ap(sys_, ds, lambda s, w: ap_search(s, w, args.budget))
        elif args.mode == "infinite":
            branch = raw.get("branch")
            d = (
                InfiniteDiagram.from_symbols(diagram_from_json(branch))
                if branch is not None
                else None
            )
            result = amalgamate_infinite(sys_, ds, d)
        else:
            if "wbar" not in raw or "cstar" not in raw:
                raise InputError("quotient mode needs 'wbar' and 'cstar' in the system file")
            stem = diagram_from_json(raw["wbar"])
            cstar = (
                structure_from_json(raw["cstar"])
                if raw["cstar"].get("universe")
                else ColoringStructure((), {})
            )
            result = amalgamate_quotient(sys_, ds, stem, cstar)
    except (InvalidSystemError, ValueError) as e:
        raise InputError(str(e))
    payload = amalgam_result_to_json(result)
    if result.status in ("witness", "identification"):
        return payload, 0
    if result.status == "unsat":
        return payload, 1
    return payload, 3


def _cmd_build(args) -> tuple[dict, int]:
    params = _load_json(args.infile)
    try:
        if args.kind == "mono":
            diagram = diagram_from_json(params["diagram"])
            m = monochromatic_model(diagram, int(params["n"]), params.get("universe"))
        elif args.kind == "limit-sum":
            m = build_limit_sum([structure_from_json(c) for c in params["components"]])
        elif args.kind == "pair-split":
            m = build_pair_splitting(
                int(params["m"]),
                diagram_from_json(params["stem"]),
                [diagram_from_json(w) for w in params["pairs"]],
            )
        elif args.kind == "k-split":
            m = build_k_splitting(
                int(params["m"]),
                diagram_from_json(params["stem"]),
                [structure_from_json(c) for c in params["components"]],
            )
        else:
            blocks = [
                IntervalBlock(
                    int(b["length"]),
                    diagram_from_json(b["pair"]),
                    diagram_from_json(b["stem"]),
                    tuple(structure_from_json(c) for c in b["components"]),
                )
                for b in params["blocks"]
            ]
            m = build_interval_splitting(int(params["m"]), blocks)
    except (ValueError, KeyError) as e:
        raise InputError(f"{args.infile}: {e}")
    return structure_to_json(m), 0


def _cmd_spectra(args) -> tuple[dict, int]:
    ds = _load_diagram_set(args.diagrams)
    table = spectra_scan(
        ds,
        args.lambda_max,
        mode=args.mode,
        seed=args.seed,
        trials=args.trials,
        budget=args.budget,
    )
    payload = scan_table_to_json(table)
    verdicts = [e.dap for e in table.values()] + [e.ap for e in table.values()]
    if "no" in verdicts:
        return payload, 1
    if "unknown" in verdicts and args.mode == "exhaustive":
        return payload, 3
    return payload, 0


def _cmd_walpha_verify(args) -> tuple[dict, int]:
    try:
        alpha = parse_ordinal(args.alpha)
        indices = [parse_ordinal(part.strip()) for part in args.indices.split(",") if part.strip()]
        params = WAlphaParams(alpha)
        report = verify_claim(params, indices, args.max_arity, args.max_gamma)
    except ValueError as e:
        raise InputError(str(e))
    payload = {
        "ok": report.ok,
        "checked": report.checked,
        "mismatches": [
            {
                "diagram": diagram_to_json(m.diagram),
                "expected": m.expected,
                "actual": m.actual,
            }
            for m in report.mismatches
        ],
    }
    return payload, 0 if report.ok else 1


def _cmd_quotient(args) -> tuple[dict, int]:
    ds = _load_diagram_set(args.infile)
    try:
        stem = diagram_from_json(json.loads(args.wbar))
        _, result = quotient_set(ds, stem)
    except json.JSONDecodeError as e:
        raise InputError(f"--wbar: invalid JSON: {e.msg} at column {e.colno}")
    except ValueError as e:
        raise InputError(str(e))
    return diagram_set_to_json(result), 0


def _cmd_prune(args) -> tuple[dict, int]:
    ds = _load_diagram_set(args.infile)
    try:
        keep = [diagram_from_json(w) for w in json.loads(args.keep)]
        result = prune_set(ds, keep)
    except json.JSONDecodeError as e:
        raise InputError(f"--keep: invalid JSON: {e.msg} at column {e.colno}")
    except ValueError as e:
        raise InputError(str(e))
    return diagram_set_to_json(result), 0


_COMMANDS = {
    "rank": _cmd_rank,
    "member": _cmd_member,
    "amalgamate": _cmd_amalgamate,
    "build": _cmd_build,
    "spectra": _cmd_spectra,
    "walpha-verify": _cmd_walpha_verify,
    "quotient": _cmd_quotient,
    "prune": _cmd_prune,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        threads = _threads_from_env()
        config = RunConfig(args.command, getattr(args, "budget", None), getattr(args, "seed", 0), args.out, threads)
        payload, code = _COMMANDS[config.command](args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _emit(payload, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())

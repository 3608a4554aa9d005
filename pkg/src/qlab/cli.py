"""Command-line surface.

One verb per core capability; ``--json`` switches every report to a
machine-readable object.  Exit codes: 0 success / property true, 1
property false or witness absent, 2 invalid input.

Paths that do not exist on disk are retried against the bundled data
directory, so ``qlab validate instances/q2.qt`` works from anywhere.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .completion import (
    check_adjunction,
    completeness_report,
    conical_colimit,
    cotensor,
    synthesize_right_adjoint,
    tensor,
    weighted_colimit,
)
from .data import data_root, instances_dir
from .errors import QlabError, TypeMismatch
from .fileformat import Instance, load_file, render_instance
from .quantaloid import QArrow
from .suite import run_suite
from .variation import (
    category_to_module,
    category_to_pseudofunctor,
    module_roundtrip,
    module_to_category,
    pseudofunctor_to_category,
)


def _resolve_path(arg: str) -> Path:
    for candidate in (Path(arg), data_root() / arg, instances_dir() / Path(arg).name):
        if candidate.is_file():
            return candidate
    raise FileNotFoundError(arg)


def _load(arg: str, kinds: tuple[str, ...] | None = None) -> Instance:
    inst = load_file(_resolve_path(arg))
    if kinds and inst.kind not in kinds:
        raise TypeMismatch(f"{arg} is a {inst.kind}; expected one of {kinds}")
    return inst


def _parse_arrow(text: str) -> QArrow:
    try:
        endpoints, value = text.rsplit(":", 1)
        src, dst = endpoints.split("->")
        return QArrow(src.strip(), dst.strip(), value.strip())
    except ValueError:
        raise TypeMismatch(f"arrow must look like 'X->Y:value', got {text!r}")


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _witness_exit(candidates) -> int:
    return 0 if candidates else 1


def cmd_validate(args) -> int:
    inst = _load(args.path)
    _emit({"kind": inst.kind, "name": inst.name, "status": "valid"}, args.json)
    return 0


def cmd_report(args) -> int:
    inst = _load(args.path, ("category",))
    report = completeness_report(inst.value)
    payload = dict(report.flags())
    payload["witnesses"] = {k: str(v) for k, v in report.witnesses.items()}
    _emit(payload, args.json)
    return 0


def cmd_tensor(args) -> int:
    inst = _load(args.path, ("category",))
    ws = tensor(inst.value, args.object, _parse_arrow(args.arrow))
    _emit({"witnesses": list(ws.candidates)}, args.json)
    return _witness_exit(ws.candidates)


def cmd_cotensor(args) -> int:
    inst = _load(args.path, ("category",))
    ws = cotensor(inst.value, _parse_arrow(args.arrow), args.object)
    _emit({"witnesses": list(ws.candidates)}, args.json)
    return _witness_exit(ws.candidates)


def cmd_conical(args) -> int:
    inst = _load(args.path, ("category",))
    family = [o for o in (args.objects or "").split(",") if o]
    ws = conical_colimit(inst.value, args.type, family)
    _emit({"witnesses": list(ws.candidates)}, args.json)
    return _witness_exit(ws.candidates)


def cmd_colim(args) -> int:
    weight = _load(args.weight, ("distributor",))
    functor = _load(args.functor, ("functor",))
    results = weighted_colimit(weight.value, functor.value,
                               verify_routes=args.verify_routes)
    payload = {a: list(ws.candidates) for a, ws in sorted(results.items())}
    _emit(payload, args.json)
    return 0 if all(payload.values()) else 1


def cmd_adjoint(args) -> int:
    left = _load(args.functor, ("functor",))
    if args.right is not None:
        right = _load(args.right, ("functor",))
        ok, witness = check_adjunction(left.value, right.value)
        _emit({"adjoint": ok, "witness": witness}, args.json)
        return 0 if ok else 1
    try:
        right = synthesize_right_adjoint(left.value)
    except QlabError as e:
        _emit({"adjoint": False, "error": e.code, "detail": str(e)}, args.json)
        return 1
    out = Instance("functor", f"{left.name}_radj",
                   {"source": left.refs["target"], "target": left.refs["source"]},
                   right)
    print(render_instance(out), end="")
    return 0


def cmd_to_pseudofunctor(args) -> int:
    inst = _load(args.path, ("category",))
    p = category_to_pseudofunctor(inst.value)
    out = Instance("pseudofunctor", f"{inst.name}_pf",
                   {"base": inst.refs["base"]}, p)
    print(render_instance(out), end="")
    return 0


def cmd_to_category(args) -> int:
    inst = _load(args.path, ("pseudofunctor", "module"))
    if inst.kind == "module":
        c = module_to_category(inst.value)
    else:
        c = pseudofunctor_to_category(inst.value)
    out = Instance("category", f"{inst.name}_cat", {"base": inst.refs["base"]}, c)
    print(render_instance(out), end="")
    return 0


def cmd_to_module(args) -> int:
    inst = _load(args.path, ("category",))
    m = category_to_module(inst.value)
    out = Instance("module", f"{inst.name}_mod", {"base": inst.refs["base"]}, m)
    print(render_instance(out), end="")
    return 0


def cmd_roundtrip(args) -> int:
    inst = _load(args.path, ("category", "module"))
    trip = module_roundtrip(inst.value)
    _emit({"kind": trip.kind, "isomorphic": trip.ok,
           "isomorphism": trip.isomorphism}, args.json)
    return 0 if trip.ok else 1


def cmd_suite(args) -> int:
    report = run_suite(directory=args.dir, max_objects=args.max_objects,
                       max_carrier=args.max_carrier, cap=args.cap)
    print(report.render_json() if args.json else report.render_text())
    return report.exit_code()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlab",
        description="Finite quantaloid-enriched categories: validation, "
                    "(co)limits, completeness, adjoints, and the theorem suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, "parse and validate one instance file")
    p.add_argument("path")

    p = add("report", cmd_report, "completeness flags of a category")
    p.add_argument("path")

    p = add("tensor", cmd_tensor, "tensor witnesses of an object and an arrow")
    p.add_argument("path")
    p.add_argument("--object", required=True)
    p.add_argument("--arrow", required=True, metavar="X->Y:v")

    p = add("cotensor", cmd_cotensor, "cotensor witnesses of an arrow and an object")
    p.add_argument("path")
    p.add_argument("--arrow", required=True, metavar="X->Y:v")
    p.add_argument("--object", required=True)

    p = add("conical", cmd_conical, "conical colimit witnesses of a family")
    p.add_argument("path")
    p.add_argument("--type", required=True)
    p.add_argument("--objects", default="", metavar="a,b,c")

    p = add("colim", cmd_colim, "weighted colimit of a functor by a distributor")
    p.add_argument("weight")
    p.add_argument("functor")
    p.add_argument("--verify-routes", action="store_true",
                   help="also compute the tensor routes and require agreement")

    p = add("adjoint", cmd_adjoint,
            "synthesize a right adjoint, or check a candidate pair")
    p.add_argument("functor")
    p.add_argument("right", nargs="?", default=None)

    p = add("to-pseudofunctor", cmd_to_pseudofunctor,
            "tensor actions of a tensored category, as a pseudofunctor file")
    p.add_argument("path")

    p = add("to-category", cmd_to_category,
            "category of a closed pseudofunctor or module")
    p.add_argument("path")

    p = add("to-module", cmd_to_module,
            "module of a skeletal cocomplete category")
    p.add_argument("path")

    p = add("roundtrip", cmd_roundtrip,
            "cross the module/category correspondence both ways")
    p.add_argument("path")

    p = add("suite", cmd_suite, "run the full theorem suite")
    p.add_argument("dir", nargs="?", default=None)
    p.add_argument("--max-objects", type=int, default=2,
                   help="sweep size cap; 0 disables the sweep")
    p.add_argument("--max-carrier", type=int, default=4,
                   help="lattice enumeration cap")
    p.add_argument("--cap", type=int, default=None,
                   help="presheaf enumeration cap (also QLAB_CAP)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as e:
        print(f"error: no such file: {e}", file=sys.stderr)
        return 2
    except QlabError as e:
        print(f"error[{e.code}]: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

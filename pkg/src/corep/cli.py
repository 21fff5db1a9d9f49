"""Command-line front end: ``corep <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage,
parse or structural errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import comodule as com
from .coalgebra import Coalgebra, WindowEscape, coradical, coradical_filtration
from .config import WINDOWS
from .fusion import (BasedRing, check_associativity, cyclic_group_ring, fusion_ring_from_coalgebra,
                     natural_key, tensor_decompose, verify_based_ring)
from .hopf import ParameterError, TruncationError, parse_descriptor, truncate_coalgebra
from .quiver import (Quiver, build_Qmn, classify_quiver, link_quiver_from_coalgebra,
                     link_quiver_from_fusion, one_S)
from .report import Report, StructuralError
from .scalar import CyclotomicField

DEFAULT_WINDOW = WINDOWS.families()


class UsageError(Exception):
    pass


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _window(h, N):
    if h.finite:
        return None
    return N if N is not None else WINDOWS.for_family(h.family)


def _hopf(desc: str, field_order: int | None):
    h = parse_descriptor(desc)
    if field_order is not None:
        order = getattr(h.field, "order", None)
        if order is None or field_order % order:
            raise ParameterError(f"{desc} needs coefficients outside Q(zeta_{field_order})")
    return h


def _qmn(desc: str) -> Quiver:
    _, _, rest = desc.partition(":")
    kv = dict(part.split("=", 1) for part in rest.split(",") if "=" in part)
    try:
        return build_Qmn(int(kv["m"]), int(kv["n"]), int(kv.get("r", 2)))
    except (KeyError, ValueError) as exc:
        raise StructuralError(f"Qmn descriptor needs integer m, n and r: {exc}") from None


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: invalid JSON ({exc})") from None


def _report_out(rep: Report, fmt: str) -> int:
    _emit(json.dumps(rep.to_json(), indent=1) if fmt == "json" else "\n".join(rep.lines()))
    return 0 if rep.ok else 1


# -- verify-hopf ------------------------------------------------------------------

def cmd_verify_hopf(args) -> int:
    h = _hopf(args.descriptor, args.field_order)
    rep = verify_hopf_axioms_report(h)
    if args.format == "json":
        _emit(json.dumps(rep.to_json(), indent=1))
        return 0 if rep.ok else 1
    lines = [rep.title]
    for group, checks in _step_groups(rep):
        bad = [c for c in checks if not c.ok]
        lines.append(f"[{'FAIL' if bad else 'PASS'}] {group} ({len(checks)} checks)")
        for c in bad:
            lines.append(f"    {c.name}" + (f": {c.detail}" if c.detail else ""))
    _emit("\n".join(lines))
    return 0 if rep.ok else 1


def verify_hopf_axioms_report(h) -> Report:
    from .hopf import verify_hopf_axioms

    return verify_hopf_axioms(h)


def _step_groups(rep: Report):
    groups: dict = {}
    for c in rep.checks:
        groups.setdefault(c.name.split(":")[0], []).append(c)
    return list(groups.items())


# -- link-quiver --------------------------------------------------------------------

def link_quiver_for(desc: str, N, field_order=None, cross_check: bool = True):
    """Link quiver of a descriptor's truncation plus the fusion-route check (or None)."""
    if desc.startswith("Qmn"):
        return _qmn(desc), None
    h = _hopf(desc, field_order)
    N = _window(h, N)
    C = truncate_coalgebra(h, N)
    Q = link_quiver_from_coalgebra(C)
    if not cross_check:
        return Q, None
    # products of window simples are read from the next truncation
    big = C if h.finite else truncate_coalgebra(h, N + 1)
    R = fusion_ring_from_coalgebra(big).restrict(list(Q.vertices))
    oneS = sorted(one_S(Q).items(), key=lambda kv: natural_key(kv[0]))
    Qf = link_quiver_from_fusion(R, oneS)
    return Q, Q == Qf


def cmd_link_quiver(args) -> int:
    Q, agree = link_quiver_for(args.descriptor, args.window, args.field_order, not args.no_cross_check)
    if args.format == "dot":
        _emit(Q.to_dot())
    elif args.format == "json":
        _emit(Q.dumps())
    else:
        _emit(Q.text())
    if agree is not None:
        sys.stderr.write(f"fusion-route cross-check: {'agree' if agree else 'DISAGREE'}\n")
    return 1 if agree is False else 0


# -- classify ---------------------------------------------------------------------

def cmd_classify(args) -> int:
    src = args.input
    if os.path.exists(src):
        Q = Quiver.from_json(_load_json(src))
        regime = args.regime or "finite"
    else:
        Q, _ = link_quiver_for(src, args.window, args.field_order, cross_check=False)
        if args.regime:
            regime = args.regime
        elif src.startswith("Qmn"):
            regime = "infinite"
        else:
            regime = "finite" if parse_descriptor(src).finite else "infinite"
    res = classify_quiver(Q, regime)
    if args.format == "json":
        _emit(json.dumps(res.to_json(), indent=1))
    else:
        _emit("\n".join(res.lines()))
    return 0


# -- fusion -----------------------------------------------------------------------

def ring_for(desc: str, N, field_order=None) -> BasedRing:
    if desc.startswith("Zn:") or desc.startswith("Z:"):
        try:
            return cyclic_group_ring(int(desc.split("=", 1)[1]))
        except (IndexError, ValueError):
            raise StructuralError("cyclic ring descriptor is Zn:n=<order>") from None
    if os.path.exists(desc):
        return BasedRing.from_json(_load_json(desc))
    h = _hopf(desc, field_order)
    return fusion_ring_from_coalgebra(truncate_coalgebra(h, _window(h, N)))


def cmd_fusion(args) -> int:
    R = ring_for(args.descriptor, args.window, args.field_order)
    rep = verify_based_ring(R)
    assoc = check_associativity(R)
    rep.checks.extend(assoc.checks)
    if args.format == "json":
        _emit(json.dumps({"ring": R.to_json(), "report": rep.to_json()}, indent=1))
    else:
        _emit("\n".join(R.table() + rep.lines()))
    return 0 if rep.ok else 1


# -- comodule -------------------------------------------------------------------------

def _comodules(args, C: Coalgebra) -> list:
    out = []
    if args.file:
        for path in args.file:
            out.append(com.from_json(C, _load_json(path), os.path.basename(path)))
    wanted = [k for k in ("S", "U", "V") if getattr(args, k)]
    if wanted or args.W:
        built = com.build_paper_comodules(C, ks=tuple(args.W or ()))
        out += [built[k] for k in wanted]
        out += [built[f"W({k})"] for k in args.W or ()]
    if args.V0:
        out.append(com.hefuv_v0(C))
    return out


def _coalgebra_for_comodules(args):
    if args.coalgebra:
        return Coalgebra.from_json(_load_json(args.coalgebra), os.path.basename(args.coalgebra))
    h = _hopf(args.family, args.field_order)
    N = args.window
    if N is None:
        N = 2
        if args.tensor:
            N = max(2, sum(_block_index(b) for b in args.tensor))
    return truncate_coalgebra(h, _window(h, N))


def _block_index(label: str) -> int:
    digits = "".join(ch for ch in label if ch.isdigit())
    return int(digits) if digits else 1


def cmd_comodule(args) -> int:
    C = _coalgebra_for_comodules(args)
    if args.action == "decompose" and args.tensor:
        return _tensor_action(args, C)
    Ms = _comodules(args, C)
    if not Ms:
        raise UsageError("no comodule given (use --W k, --U, --V, --S, --V0 or --file)")
    lines, data, ok = [], [], True
    if args.action == "iso":
        if len(Ms) != 2:
            raise UsageError("iso needs exactly two comodules")
        M, N = Ms
        F = com.are_isomorphic(M, N)
        if F is None:
            lines.append(f"{M.name} and {N.name}: not isomorphic")
            data.append({"pair": [M.name, N.name], "isomorphic": False})
        else:
            fmt = C.field.format
            lines.append(f"{M.name} and {N.name}: isomorphic")
            lines.append("witness: [" + "; ".join(" ".join(fmt(x) for x in row) for row in F) + "]")
            data.append({"pair": [M.name, N.name], "isomorphic": True,
                         "witness": [[fmt(x) for x in row] for row in F]})
        return _comodule_out(args, lines, data, True)
    cor = coradical(C)
    for M in Ms:
        if args.action == "verify":
            rep = com.verify_comodule(M)
            ok &= rep.ok
            lines.append(f"{M.name}: {'PASS' if rep.ok else 'FAIL'}")
            lines += ["    " + line for line in rep.lines() if line.startswith("[FAIL]")]
            data.append({"name": M.name, "report": rep.to_json()})
        elif args.action == "indec":
            v = com.indecomposability_verdict(M)
            lines.append(f"{M.name}: {v}")
            data.append({"name": M.name, "verdict": v})
        elif args.action == "loewy":
            n = com.loewy_length(M)
            dv = com.dimension_vector(M, cor)
            lines.append(f"{M.name}: Loewy length {n}; dimension vector {_fmt_counts(dv)}")
            data.append({"name": M.name, "loewy_length": n, "dimension_vector": dv})
        elif args.action == "decompose":
            try:
                dec = com.decompose_semisimple(M, cor)
            except ArithmeticError as exc:
                lines.append(f"{M.name}: not semisimple ({exc})")
                data.append({"name": M.name, "semisimple": False})
                ok = False
                continue
            text = _fmt_multiset(com.multiset(dec.labels), cor)
            lines.append(f"{M.name}: {text}")
            data.append({"name": M.name, "summands": com.multiset(dec.labels)})
    return _comodule_out(args, lines, data, ok)


def _fmt_counts(dv: dict) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in dv.items()) + "}"


def _fmt_multiset(ms: dict, cor) -> str:
    sizes = {b.label: b.size for b in cor.blocks}
    order = sorted(ms, key=lambda lab: (lab != "1", sizes.get(lab, 0), natural_key(lab)))
    return com.format_multiset(ms, order)


def _tensor_action(args, C: Coalgebra) -> int:
    cor = coradical(C)
    a, b = args.tensor
    try:
        A, B = cor.block(a), cor.block(b)
    except KeyError:
        raise StructuralError(f"unknown simple block among {a}, {b}; have {', '.join(cor.labels())}") from None
    dec = tensor_decompose(C, A.matrix, B.matrix, cor)
    text = _fmt_multiset(dec.multiset, cor)
    return _comodule_out(args, [f"{a} (x) {b} = {text}"], [{"tensor": [a, b], "summands": dec.multiset}], True)


def _comodule_out(args, lines, data, ok) -> int:
    _emit(json.dumps(data, indent=1) if args.format == "json" else "\n".join(lines))
    return 0 if ok else 1


# -- export ---------------------------------------------------------------------------

def cmd_export(args) -> int:
    what = args.what
    if what == "quiver":
        Q, _ = link_quiver_for(args.descriptor, args.window, args.field_order, cross_check=False)
        _emit(Q.to_dot() if args.format == "dot" else Q.dumps())
        return 0
    h = _hopf(args.descriptor, args.field_order)
    C = truncate_coalgebra(h, _window(h, args.window))
    if what == "coalgebra":
        _emit(C.dumps())
    elif what == "ring":
        _emit(fusion_ring_from_coalgebra(C).dumps())
    elif what == "filtration":
        chain, loewy = coradical_filtration(C)
        _emit(json.dumps({"dims": [S.dim for S in chain], "length": loewy}))
    elif what == "comodules":
        built = com.build_paper_comodules(C, ks=(1,))
        _emit(json.dumps({k: M.to_json() for k, M in built.items()}, indent=1))
    return 0


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--field-order", type=int, default=None, metavar="n",
                        help="require the coefficients to lie in Q(zeta_n)")
    common.add_argument("-N", "--window", type=int, default=None, metavar="N",
                        help="truncation window for infinite-dimensional families")

    p = argparse.ArgumentParser(prog="corep", description="Coalgebras, link quivers and corepresentation type.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-hopf", parents=[common], help="check the Hopf axioms of a family")
    s.add_argument("descriptor")
    s.set_defaults(func=cmd_verify_hopf)

    s = sub.add_parser("link-quiver", parents=[common], help="link quiver of a truncation")
    s.add_argument("descriptor")
    s.add_argument("--no-cross-check", action="store_true", help="skip the fusion-route comparison")
    s.set_defaults(func=cmd_link_quiver)

    s = sub.add_parser("classify", parents=[common], help="representation-type report")
    s.add_argument("input", help="quiver JSON file or family descriptor")
    s.add_argument("--regime", choices=("finite", "infinite"), default=None)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("fusion", parents=[common], help="based ring of the simple comodules")
    s.add_argument("descriptor", help="family descriptor, ring JSON file or Zn:n=<order>")
    s.set_defaults(func=cmd_fusion)

    s = sub.add_parser("comodule", parents=[common], help="comodule checks")
    s.add_argument("action", choices=("verify", "indec", "iso", "decompose", "loewy"))
    s.add_argument("--family", default="Hefuv")
    s.add_argument("--coalgebra", help="coalgebra JSON file (instead of --family)")
    s.add_argument("--file", action="append", help="comodule JSON file (repeatable)")
    s.add_argument("--W", type=int, action="append", metavar="k")
    for name in ("S", "U", "V", "V0"):
        s.add_argument(f"--{name}", action="store_true")
    s.add_argument("--tensor", nargs=2, metavar=("A", "B"), help="decompose the tensor of two simple blocks")
    s.set_defaults(func=cmd_comodule)

    s = sub.add_parser("export", parents=[common], help="dump JSON/DOT data")
    s.add_argument("descriptor")
    s.add_argument("--what", choices=("coalgebra", "quiver", "ring", "filtration", "comodules"),
                   default="coalgebra")
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {exc}\n")
    except (StructuralError, ParameterError) as exc:
        sys.stderr.write(f"error: {exc}\n")
    except (TruncationError, WindowEscape) as exc:
        sys.stderr.write(f"error: {exc}\n")
    except (OSError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
    return 2


if __name__ == "__main__":
    sys.exit(main())

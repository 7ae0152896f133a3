"""Command line interface: algebra/module file formats, ``info`` and ``run`` commands.

Exit codes: 0 ok, 1 a checked statement failed, 2 inconclusive, 3 input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from importlib import resources
from pathlib import Path
from typing import Optional

from . import repmod
from .exactlinalg import FieldSpec, Matrix, QQ
from .homological import (AtLeast, DEFAULT_CAP, domdim, gldim, injective_dimension_of_algebra,
                          is_selfinjective, projective_injective_vertices)
from .quiver_algebra import (CapExceeded, FDAlgebra, PresentationError, QuiverPresentation,
                             build_algebra, format_presentation, parse_presentation)
from .repmod import DecompositionInconclusive, Representation

EXIT_OK, EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

REPORT_SCHEMA = json.loads(resources.files(__package__).joinpath("report_schema.json").read_text())


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# file formats


def algebra_hash(p: QuiverPresentation) -> str:
    return hashlib.sha256(format_presentation(p).encode()).hexdigest()[:16]


def with_field(p: QuiverPresentation, fld: FieldSpec) -> QuiverPresentation:
    """The same quiver and relations over another field."""
    rels = tuple(tuple((fld(c), w) for c, w in rel) for rel in p.relations)
    return QuiverPresentation(fld, p.vertices, p.arrows, rels)


def parse_field(text: str) -> FieldSpec:
    t = text.replace(" ", "").replace(":", "")
    if t in ("Q", "QQ"):
        return QQ
    if t[:1] == "F" and t[1:].isdigit():
        return FieldSpec(int(t[1:]))
    raise InputError(f"unknown field {text!r}; use Q or F<p>")


def load_algebra(path: str, cap: int = 30, field_override: Optional[str] = None):
    """``(presentation, algebra)`` from a quiver file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from None
    pres = parse_presentation(text)
    if field_override:
        pres = with_field(pres, parse_field(field_override))
    return pres, build_algebra(pres, cap)


def format_module(m: Representation, pres: QuiverPresentation) -> str:
    fld = m.field
    lines = [f"module over {algebra_hash(pres)}"]
    for v, d in zip(pres.vertices, m.dims):
        lines.append(f"dim {v} {d}")
    for (name, _, _), mat in zip(pres.arrows, m.action):
        if mat.is_zero():
            continue
        lines.append(f"map {name}")
        for row in mat.rows:
            lines.append(" ".join(fld.to_str(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_module(text: str, pres: QuiverPresentation, alg: FDAlgebra) -> Representation:
    """Read a module file; maps not listed are zero (the writer omits zero maps)."""
    fld = alg.field
    dims = {v: 0 for v in pres.vertices}
    maps = {}
    lines = [(n, raw.split("#", 1)[0].strip()) for n, raw in enumerate(text.splitlines(), 1)]
    lines = [(n, ln) for n, ln in lines if ln]
    if not lines or not lines[0][1].startswith("module over"):
        raise PresentationError("expected 'module over <algebra-hash>'", lines[0][0] if lines else 1)
    header = lines[0][1].split()
    if len(header) != 3:
        raise PresentationError("expected 'module over <algebra-hash>'", lines[0][0])
    if header[2] != algebra_hash(pres):
        raise PresentationError(f"module is over {header[2]}, algebra hash is {algebra_hash(pres)}",
                                lines[0][0])
    arrow_ends = {name: (s, t) for name, s, t in pres.arrows}
    i = 1
    while i < len(lines):
        n, ln = lines[i]
        toks = ln.split()
        if toks[0] == "dim" and len(toks) == 3:
            if toks[1] not in dims:
                raise PresentationError(f"unknown vertex {toks[1]!r}", n)
            if not toks[2].isdigit():
                raise PresentationError("dimension must be a non-negative integer", n)
            dims[toks[1]] = int(toks[2])
            i += 1
        elif toks[0] == "map" and len(toks) == 2:
            if toks[1] not in arrow_ends:
                raise PresentationError(f"unknown arrow {toks[1]!r}", n)
            s, t = arrow_ends[toks[1]]
            rows = []
            for _ in range(dims[t]):
                i += 1
                if i >= len(lines):
                    raise PresentationError("matrix ends early", n)
                try:
                    rows.append([fld(x) for x in lines[i][1].split()])
                except (ValueError, ZeroDivisionError) as exc:
                    raise PresentationError(f"bad matrix entry: {exc}", lines[i][0]) from None
                if len(rows[-1]) != dims[s]:
                    raise PresentationError(f"row needs {dims[s]} entries", lines[i][0])
            maps[toks[1]] = Matrix(fld, rows, ncols=dims[s])
            i += 1
        else:
            raise PresentationError(f"unexpected line {ln!r}", n)
    dvec = [dims[v] for v in pres.vertices]
    action = []
    for name, s, t in pres.arrows:
        action.append(maps.get(name, Matrix.zeros(fld, dims[t], dims[s])))
    try:
        return Representation(alg, dvec, action, check=True)
    except ValueError as exc:
        raise PresentationError(str(exc)) from None


def load_module(path: str, pres: QuiverPresentation, alg: FDAlgebra) -> Representation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from None
    return parse_module(text, pres, alg)


# ---------------------------------------------------------------------------
# report helpers


class Status:
    def __init__(self):
        self.failed = False
        self.inconclusive = False

    def check(self, value) -> object:
        """Record a checked statement (True/False/None for undecided) and pass it through."""
        if value is None:
            self.inconclusive = True
        elif value is False:
            self.failed = True
        return value

    def check_bound(self, value):
        """A verdict that is data rather than a checked claim; only undecided values count."""
        if value is None:
            self.inconclusive = True
        return value

    def value(self, v):
        if isinstance(v, AtLeast):
            self.inconclusive = True
        return v

    @property
    def name(self) -> str:
        if self.failed:
            return "failed"
        if self.inconclusive:
            return "inconclusive"
        return "ok"


def jsonable(v):
    if isinstance(v, AtLeast):
        return f">={v.value}"
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return str(v)


def algebra_summary(alg: FDAlgebra, st: Status, cap: int) -> dict:
    from .endo import present_by_quiver
    gd = st.value(gldim(alg, cap))
    dd = st.value(domdim(alg, cap))
    return {"dim": alg.dim, "vertices": alg.n_vertices, "gldim": gd, "domdim": dd,
            "presentation": format_presentation(present_by_quiver(alg).presentation)}


def _dims(mods) -> list:
    return [list(m.dims) for m in mods]


# ---------------------------------------------------------------------------
# commands


def cmd_info(pres, alg, args, st: Status) -> dict:
    from .tilting import check_dAG, check_dAuslander, consistent_ag_parameter
    cap = args.cap
    res = {
        "dim": alg.dim,
        "cartan": alg.cartan(),
        "vertices": list(alg.vertices),
        "projective_injective": [alg.vertices[v] for v in projective_injective_vertices(alg)],
        "gldim": st.value(gldim(alg, cap)),
        "domdim": st.value(domdim(alg, cap)),
        "injective_dimension": st.value(injective_dimension_of_algebra(alg, cap)),
        "selfinjective": is_selfinjective(alg),
    }
    d = consistent_ag_parameter(alg, cap)
    res["consistent_d"] = d
    if d is not None and d >= 1:
        res["d_auslander_gorenstein"] = check_dAG(alg, d, cap)
        res["d_auslander"] = check_dAuslander(alg, d, cap)
    return res


def task_shift(pres, alg, args, st: Status, coshift: bool) -> dict:
    from .tilting import ShiftContext, verify_cotilting, verify_tilting
    ctx = ShiftContext(alg, args.cap)
    k = args.k
    summands = ctx.coshifted_summands(k) if coshift else ctx.shifted_summands(k)
    cert = (verify_cotilting if coshift else verify_tilting)(summands, k, ctx.pi_summands, args.cap)
    b = ctx.coshifted_algebra(k) if coshift else ctx.shifted_algebra(k)
    res = {"k": k, "domdim": st.value(ctx.d), "summand_dims": _dims(summands),
           "certificate": {name: c.passed for name, c in cert.checks.items()},
           "special_for_pi": cert.special_for is not None,
           "algebra": algebra_summary(b, st, args.cap), "tagged_vertices": b.meta["tag"]}
    st.check(cert.passed)
    return res


def task_verify(pres, alg, args, st: Status) -> dict:
    from .tilting import verify_tilting
    if not args.module:
        raise InputError("verify-tilting needs --module")
    m = load_module(args.module, pres, alg)
    cert = verify_tilting(m, args.k, cap=args.cap)
    res = {"k": args.k, "checks": {n: c.passed for n, c in cert.checks.items()},
           "reason": cert.checks["chain"].witness.get("reason", "")}
    st.check(cert.passed)
    return res


def task_ag(pres, alg, args, st: Status) -> dict:
    from .tilting import (ShiftContext, check_dAG, check_dAuslander, consistent_ag_parameter,
                          shifted_family_equals_coshifted)
    d = args.d if args.d is not None else consistent_ag_parameter(alg, args.cap)
    if d is None or d < 1:
        return {"d": d, "applicable": False}
    dag = check_dAG(alg, d, args.cap)
    res = {"d": d, "d_auslander_gorenstein": st.check_bound(dag),
           "d_auslander": st.check_bound(check_dAuslander(alg, d, args.cap))}
    ctx = ShiftContext(alg, args.cap)
    try:
        cmp = shifted_family_equals_coshifted(ctx, d)
    except ValueError as exc:
        res["families"] = f"not computed: {exc}"
        return res
    res["families"] = cmp.verdict
    res["matches"] = cmp.matches
    res["pairing"] = cmp.pairing
    if dag:
        # the two families coincide for d-Auslander-Gorenstein algebras
        st.check(cmp.verdict == "equal")
    return res


def task_mt(pres, alg, args, st: Status) -> dict:
    from .endo import end_algebra
    from .fixtures import generator_cogenerator
    e = load_module(args.module, pres, alg) if args.module else generator_cogenerator(alg)
    gamma = end_algebra(e, name="Gamma")
    res = algebra_summary(gamma, st, args.cap)
    res["summand_dims"] = _dims(gamma.meta["endomorphism"].summands)
    return res


def task_intext(pres, alg, args, st: Status) -> dict:
    from .recollement import verify_intext_theorem
    out = {}
    for side in ("shifted", "coshifted"):
        rep = verify_intext_theorem(alg, args.k, side, args.cap)
        out[side] = {"in_image": rep.in_image, "gen": rep.gen_membership,
                     "cogen": rep.cogen_membership}
        st.check(rep.passed)
    return out


def task_homotopy(pres, alg, args, st: Status) -> dict:
    from .endo import end_algebra
    from .fixtures import generator_cogenerator
    from .homotopy_cat import build_Ek_lower, build_Ek_upper, cartan_matches, end_algebra_Kb
    from .tilting import ShiftContext
    e = load_module(args.module, pres, alg) if args.module else generator_cogenerator(alg)
    gamma = end_algebra(e)
    ctx = ShiftContext(gamma, args.cap)
    k = args.k
    lower = end_algebra_Kb(build_Ek_lower(alg, e, k))
    upper = end_algebra_Kb(build_Ek_upper(alg, e, k))
    bk, bup = ctx.shifted_algebra(k), ctx.coshifted_algebra(k)
    res = {"k": k, "dim_End_E_lower": lower.dim, "dim_B_k": bk.dim,
           "dim_End_E_upper": upper.dim, "dim_B^k": bup.dim,
           "cartan_lower_matches": bool(cartan_matches(lower, bk)),
           "cartan_upper_matches": bool(cartan_matches(upper, bup))}
    st.check(lower.dim == bk.dim and upper.dim == bup.dim and res["cartan_lower_matches"]
             and res["cartan_upper_matches"])
    return res


def task_iterate(pres, alg, args, st: Status) -> dict:
    from .endo import quiver_isomorphic
    from .tilting import ShiftContext
    steps = []
    start_dd = st.value(domdim(alg, args.cap))
    seen = [alg]
    current = alg
    k = args.k if args.k else 1
    for _ in range(args.max_steps):
        ctx = ShiftContext(current, args.cap)
        dd = st.value(ctx.d)
        if isinstance(dd, AtLeast) or dd < k:
            break
        nxt = ctx.shifted_algebra(k)
        summary = algebra_summary(nxt, st, args.cap)
        repeat = next((i for i, old in enumerate(seen) if old.dim == nxt.dim
                       and quiver_isomorphic(old, nxt)), None)
        summary["repeats_step"] = repeat
        steps.append(summary)
        if repeat is not None:
            break
        seen.append(nxt)
        current = nxt
    return {"k": k, "steps": {str(i + 1): s for i, s in enumerate(steps)},
            "domdims": [start_dd] + [s["domdim"] for s in steps]}


TASKS = {
    "shift": lambda p, a, args, st: task_shift(p, a, args, st, False),
    "coshift": lambda p, a, args, st: task_shift(p, a, args, st, True),
    "verify-tilting": task_verify,
    "ag-check": task_ag,
    "mt": task_mt,
    "intext": task_intext,
    "homotopy": task_homotopy,
    "iterate": task_iterate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="resolution and path caps")
    common.add_argument("--seed", type=int, default=repmod.DEFAULT_SEED)
    common.add_argument("--field-override", default=None, help="Q or F<p>")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    parser = argparse.ArgumentParser(prog="shiftilt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    info = sub.add_parser("info", parents=[common], help="invariants of an algebra")
    info.add_argument("algebra")
    run = sub.add_parser("run", parents=[common], help="run a task on an algebra")
    run.add_argument("algebra")
    run.add_argument("--task", required=True, choices=sorted(TASKS))
    run.add_argument("--k", type=int, default=1)
    run.add_argument("--d", type=int, default=None)
    run.add_argument("--module", default=None, help="module file over the algebra")
    run.add_argument("--max-steps", type=int, default=10)
    schema = sub.add_parser("schema", help="print the JSON schema of reports")
    del schema
    return parser


def _file_hash(path: str) -> str:
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError:
        return "unreadable"


def execute(argv) -> tuple:
    """``(exit code, report)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "schema":
        return EXIT_OK, REPORT_SCHEMA
    repmod.DEFAULT_SEED = args.seed
    inputs = {args.algebra: _file_hash(args.algebra)}
    if getattr(args, "module", None):
        inputs[args.module] = _file_hash(args.module)
    report = {"command": list(argv), "inputs": inputs, "results": {}, "status": "ok",
              "seed": args.seed}
    st = Status()
    try:
        pres, alg = load_algebra(args.algebra, max(args.cap, 30), args.field_override)
        if args.command == "info":
            results = cmd_info(pres, alg, args, st)
        else:
            results = TASKS[args.task](pres, alg, args, st)
    except (InputError, PresentationError, CapExceeded) as exc:
        report["status"] = "failed"
        report["error"] = str(exc)
        return EXIT_INPUT, report
    except DecompositionInconclusive as exc:
        report["status"] = "inconclusive"
        report["error"] = str(exc)
        return EXIT_INCONCLUSIVE, report
    except ValueError as exc:     # precondition failures of the tasks
        report["status"] = "failed"
        report["error"] = f"{type(exc).__name__}: {exc}"
        return EXIT_FAILED, report
    report["results"] = jsonable(results)
    report["status"] = st.name
    code = {"ok": EXIT_OK, "failed": EXIT_FAILED, "inconclusive": EXIT_INCONCLUSIVE}[st.name]
    return code, report


def _print_text(report: dict, out):
    if "error" in report:
        print(f"error: {report['error']}", file=out)

    def walk(obj, indent=0):
        pad = "  " * indent
        for key, val in obj.items():
            if isinstance(val, dict):
                print(f"{pad}{key}:", file=out)
                walk(val, indent + 1)
            elif isinstance(val, str) and "\n" in val:
                print(f"{pad}{key}:", file=out)
                for line in val.rstrip().splitlines():
                    print(f"{pad}  {line}", file=out)
            else:
                print(f"{pad}{key}: {val}", file=out)

    walk(report.get("results", {}))
    print(f"status: {report['status']}", file=out)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, report = execute(argv)
    if argv and argv[0] == "schema":
        print(json.dumps(report, indent=2))
        return code
    if "--json" in argv:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_text(report, sys.stdout if code != EXIT_INPUT else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every subcommand is turned into a request ``{"kind": ..., "params": {...}}``
with canonical parameters, looked up in the result cache, and otherwise
dispatched to the library.  Exit codes: 0 ok, 1 verification failure,
2 invalid input, 3 precondition violation, 4 resource limit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import __version__, _kernels
from .cache import ResultCache
from .errors import LensetaError, PreconditionError, ResourceLimit
from .exactmath import ResidueQmodZ, circle_distance, rational_reconstruct
from .kirby import (
    build_cobordism,
    chain_link,
    characteristic_sublinks,
    first_component_rule,
    h1_order,
    slam_dunk_expand,
    spin_extension,
    structure_report,
)
from .lens import LensSpace, td2_relative, xi_closed_form, xi_defect_sum, xi_spin_pair
from .seifert import (
    RepType,
    e_real,
    e_real_statement,
    e_real_via_bprime,
    e_real_via_cobordism,
    eigenvalue_exponents,
    seifert_data,
    solve_coefficients,
    validate_type,
)
from .verify import SUITES, run_suite

TOOL_VERSION = __version__

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_RESOURCE = 4

KINDS = ("lens-xi", "seifert-solve", "seifert-e", "kirby-chain", "kirby-cobordism", "verify")


class UsageError(Exception):
    """Malformed command line or request."""


# -- parameter normalization -------------------------------------------------


def _as_int(name, value):
    if isinstance(value, bool):
        raise UsageError(f"{name}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise UsageError(f"{name}: expected an integer, got {value!r}")


def _as_int_list(name, value):
    if isinstance(value, str):
        items = [x for x in value.split(",") if x.strip()]
    elif isinstance(value, (list, tuple)):
        items = list(value)
    else:
        raise UsageError(f"{name}: expected a comma-separated list of integers, got {value!r}")
    return [_as_int(name, x) for x in items]


def _as_matrix(name, value):
    if isinstance(value, str):
        rows = [r for r in value.split(";") if r.strip()]
    elif isinstance(value, (list, tuple)):
        rows = list(value)
    else:
        raise UsageError(f"{name}: expected rows like '0,1;0,1', got {value!r}")
    return [_as_int_list(name, r) for r in rows]


def _choice(options):
    def conv(name, value):
        if value not in options:
            raise UsageError(f"{name}: expected one of {', '.join(options)}, got {value!r}")
        return value

    return conv


def _as_bool(name, value):
    if isinstance(value, bool):
        return value
    raise UsageError(f"{name}: expected true/false, got {value!r}")


_REQUIRED = object()

# kind -> {param: (converter, default)}
SCHEMAS: dict[str, dict[str, tuple[Callable, Any]]] = {
    "lens-xi": {
        "p": (_as_int, _REQUIRED),
        "q": (_as_int, _REQUIRED),
        "s": (_as_int, _REQUIRED),
        "method": (_choice(("closed", "defect", "both", "td2")), "closed"),
        "spin_pair": (_as_bool, False),
    },
    "seifert-solve": {"a": (_as_int_list, _REQUIRED)},
    "seifert-e": {
        "a": (_as_int_list, _REQUIRED),
        "N": (_as_int, _REQUIRED),
        "r_h": (_as_int, _REQUIRED),
        "s": (_as_matrix, _REQUIRED),
        "method": (_choice(("direct", "bprime", "cobordism", "all")), "all"),
        "formula": (_choice(("proof", "statement")), "proof"),
    },
    "kirby-chain": {"p": (_as_int, _REQUIRED), "q": (_as_int, _REQUIRED)},
    "kirby-cobordism": {"a": (_as_int_list, _REQUIRED)},
    "verify": {"suite": (_choice(SUITES + ("all",)), "all")},
}


def normalize_request(kind, params) -> dict:
    """Validate a raw request and return its canonical form."""
    if kind not in SCHEMAS:
        raise UsageError(f"unknown request kind {kind!r}")
    if not isinstance(params, dict):
        raise UsageError("params must be an object")
    schema = SCHEMAS[kind]
    unknown = set(params) - set(schema)
    if unknown:
        raise UsageError(f"{kind}: unknown parameter(s) {', '.join(sorted(unknown))}")
    out = {}
    for name, (conv, default) in schema.items():
        if params.get(name) is None:
            if default is _REQUIRED:
                raise UsageError(f"{kind}: missing parameter {name}")
            out[name] = default
        else:
            out[name] = conv(name, params[name])
    return {"kind": kind, "params": out}


def request_key(request: dict) -> str:
    blob = json.dumps(request, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


# -- execution ---------------------------------------------------------------


def _frac(x) -> dict:
    if isinstance(x, ResidueQmodZ):
        x = x.value
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _residue_fields(r: ResidueQmodZ) -> dict:
    return {"exact": _frac(r), "signed": _frac(r.signed)}


def _lens_xi(params):
    p, q, s, method = params["p"], params["q"], params["s"], params["method"]
    out: dict[str, Any] = {}
    exact = None
    if method in ("closed", "both"):
        exact = xi_closed_form(p, q, s)
    elif method == "td2":
        exact = ResidueQmodZ(td2_relative(p, q, s))
        out["td2_rational"] = _frac(td2_relative(p, q, s))
    if exact is not None:
        out.update(_residue_fields(exact))
    else:
        out["exact"] = None
    if method in ("defect", "both"):
        z = xi_defect_sum(LensSpace.standard(p, q), s)
        out["numeric"] = {"re": z.real, "im": z.imag, "re_mod_1": z.real % 1.0}
        out["backend"] = _kernels.BACKEND
        if exact is None:
            try:
                snapped = rational_reconstruct(z.real, 2 * p, 1e-8)
                out["reconstructed"] = _frac(snapped)
            except LensetaError:
                out["reconstructed"] = None
        else:
            out["agreement"] = circle_distance(z.real, float(exact)) < 1e-8 and abs(z.imag) < 1e-9
    if params["spin_pair"]:
        first, second = xi_spin_pair(p, q, s)
        out["spin_pair"] = [_frac(first), _frac(second)]
    return out


def _seifert_solve(params):
    b, b_vec = solve_coefficients(params["a"])
    return {"exact": None, "b": b, "b_vec": list(b_vec), "a": seifert_data(params["a"]).a}


def _seifert_e(params):
    data = seifert_data(params["a"])
    rep = RepType(params["N"], params["r_h"], tuple(tuple(r) for r in params["s"]))
    report = validate_type(data, rep)
    routes = {"direct": e_real, "bprime": e_real_via_bprime, "cobordism": e_real_via_cobordism}
    chosen = list(routes) if params["method"] == "all" else [params["method"]]
    values = {name: routes[name](data, rep) for name in chosen}
    first = values[chosen[0]]
    out = {
        "b": data.b,
        "b_vec": list(data.b_vec),
        "validation": [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
        "routes": {name: _frac(v) for name, v in values.items()},
        "agreement": all(v == first for v in values.values()),
        "eigenvalue_exponents": [
            [[num, den] for num, den in eigenvalue_exponents(data, rep, j)] for j in range(data.n)
        ],
    }
    out.update(_residue_fields(first))
    if params["formula"] == "statement":
        out["statement_value"] = _frac(e_real_statement(data, rep))
    return out


def _kirby_chain(params):
    p, q = params["p"], params["q"]
    framings = slam_dunk_expand(p, q)
    link = chain_link(framings)
    out = {
        "exact": None,
        "framings": framings,
        "linking": [list(r) for r in link.linking],
        "h1_order": h1_order(link),
        "characteristic_sublinks": [list(c) for c in characteristic_sublinks(link)],
    }
    if 0 < q < p:
        rule = first_component_rule(p, q)
        out["first_component"] = {"predicted": rule.predicted, "computed": rule.computed, "agree": rule.agree}
    return out


def _kirby_cobordism(params):
    data = seifert_data(params["a"])
    diagram = build_cobordism(data)
    ext = spin_extension(diagram)
    rep = structure_report(data)
    return {
        "exact": None,
        "b": data.b,
        "b_vec": list(data.b_vec),
        "bracketed_framings": list(diagram.bracketed.framings),
        "attach_framing": diagram.attach_framing,
        "attach_linking": list(diagram.attach_linking),
        "extension": [
            {"coloring": list(bits), "lk_sum": total, "extends": ok} for bits, total, ok in ext.candidates
        ],
        "spin_cobordism_exists": ext.exists,
        "structure": {
            "product": rep.product,
            "product_even": rep.product_even,
            "spinnable": rep.spinnable,
            "spin_structures_on_W": rep.spin_structures_on_W,
            "extension_agrees": rep.extension_agrees,
            "spinc_on_W": rep.spinc_on_W,
            "spinc_on_boundary_lens": rep.spinc_on_boundary_lens,
            "canonical_spinc_extension": rep.canonical_spinc_extension,
            "pi1_W": rep.pi1_W,
            "exact_sequence": rep.exact_sequence,
        },
    }


def _verify(params):
    results = run_suite(params["suite"])
    return {
        "exact": None,
        "passed": all(r.passed for r in results),
        "properties": [
            {"suite": r.suite, "name": r.name, "passed": r.passed, "cases": r.cases,
             "counterexample": r.counterexample}
            for r in results
        ],
    }


HANDLERS = {
    "lens-xi": _lens_xi,
    "seifert-solve": _seifert_solve,
    "seifert-e": _seifert_e,
    "kirby-chain": _kirby_chain,
    "kirby-cobordism": _kirby_cobordism,
    "verify": _verify,
}


def execute(request: dict) -> dict:
    """Compute the result object of a canonical request (no cache)."""
    body = HANDLERS[request["kind"]](request["params"])
    result = {"request": request, "method": request["params"].get("method", request["kind"]),
              "tool_version": TOOL_VERSION}
    result.update(body)
    # JSON round trip so fresh and cached results compare equal
    return json.loads(json.dumps(result))


def resolve(request: dict, cache: ResultCache | None) -> dict:
    if cache is None or request["kind"] == "verify":
        return execute(request)
    key = request_key(request)
    hit = cache.get(key, TOOL_VERSION)
    if hit is not None:
        return hit
    result = execute(request)
    cache.put(key, result, TOOL_VERSION)
    return result


def _safe_execute(request):
    try:
        return True, execute(request)
    except (PreconditionError, ResourceLimit) as exc:
        return False, {"error": type(exc).__name__, "message": str(exc)}


# -- rendering ---------------------------------------------------------------


def render(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True)
    lines: list[str] = []
    _render_text(result, "", lines)
    return "\n".join(lines)


def _render_text(value, prefix, lines):
    if isinstance(value, dict):
        if set(value) == {"num", "den"}:
            lines.append(f"{prefix}: {value['num']}/{value['den']}")
            return
        for key, sub in value.items():
            _render_text(sub, f"{prefix}.{key}" if prefix else key, lines)
    elif isinstance(value, list) and any(isinstance(v, dict) for v in value):
        for i, sub in enumerate(value):
            _render_text(sub, f"{prefix}[{i}]", lines)
    else:
        lines.append(f"{prefix}: {json.dumps(value)}")


# -- argument parsing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def exit(self, status=0, message=None):
        if status:
            raise UsageError(message or "invalid arguments")
        raise _HelpExit(message or "")


class _HelpExit(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache-dir", default=None, help="result cache directory (env LENSETA_CACHE_DIR)")
    common.add_argument("--no-cache", action="store_true")

    parser = _Parser(prog="lenseta", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lenseta {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("lens-xi", parents=[common], help="xi-invariant of rho_s on L(p, q)")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--method", choices=("closed", "defect", "both", "td2"), default="closed")
    p.add_argument("--spin-pair", action="store_true", help="also report the q+p spin structure (p even)")

    p = sub.add_parser("seifert-solve", parents=[common], help="canonical (b, b_i) for Sigma(a)")
    p.add_argument("--a", required=True, help="comma-separated multiplicities")

    p = sub.add_parser("seifert-e", parents=[common], help="2N Re(e) for a representation type")
    p.add_argument("--a", required=True)
    p.add_argument("--N", required=True)
    p.add_argument("--rh", required=True, dest="r_h")
    p.add_argument("--s", required=True, help="type rows, e.g. '0,1;0,1;0,1'")
    p.add_argument("--method", choices=("direct", "bprime", "cobordism", "all"), default="all")
    p.add_argument("--formula", choices=("proof", "statement"), default="proof")

    p = sub.add_parser("kirby-chain", parents=[common], help="slam-dunk chain of p/q surgery")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)

    p = sub.add_parser("kirby-cobordism", parents=[common], help="relative diagram and spin data of W")
    p.add_argument("--a", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a property sweep")
    p.add_argument("--suite", required=True)

    p = sub.add_parser("batch", parents=[common], help="run one JSON request per line")
    p.add_argument("path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", default=None, help="write result lines here instead of stdout")
    return parser


_ARG_NAMES = {
    "lens-xi": ("p", "q", "s", "method", "spin_pair"),
    "seifert-solve": ("a",),
    "seifert-e": ("a", "N", "r_h", "s", "method", "formula"),
    "kirby-chain": ("p", "q"),
    "kirby-cobordism": ("a",),
    "verify": ("suite",),
}


def _open_cache(args) -> ResultCache | None:
    if args.no_cache:
        return None
    directory = args.cache_dir or os.environ.get("LENSETA_CACHE_DIR")
    if directory is None:
        directory = Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "lenseta"
    return ResultCache(directory)


def parse_batch(text: str) -> list[dict]:
    requests = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise UsageError(f"line {lineno}: malformed JSON ({exc.msg})") from None
        if not isinstance(obj, dict) or "kind" not in obj:
            raise UsageError(f"line {lineno}: expected an object with 'kind' and 'params'")
        try:
            requests.append(normalize_request(obj["kind"], obj.get("params", {})))
        except UsageError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
    return requests


def run_batch(path, cache: ResultCache | None, jobs: int = 1) -> tuple[list[str], dict]:
    """Execute every request of a batch file; result line ``i`` answers request ``i``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    requests = parse_batch(text)
    outcomes: list[tuple[bool, dict] | None] = [None] * len(requests)
    pending = []
    for i, req in enumerate(requests):
        if cache is not None and req["kind"] != "verify":
            hit = cache.get(request_key(req), TOOL_VERSION)
            if hit is not None:
                outcomes[i] = (True, hit)
                continue
        pending.append(i)
    todo = [requests[i] for i in pending]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fresh = list(pool.map(_safe_execute, todo))
    else:
        fresh = [_safe_execute(r) for r in todo]
    for i, (ok, body) in zip(pending, fresh):
        outcomes[i] = (ok, body)
        if ok and cache is not None and requests[i]["kind"] != "verify":
            cache.put(request_key(requests[i]), body, TOOL_VERSION)
    lines = []
    counts = {"ok": 0, "failed": 0}
    for ok, body in outcomes:
        if ok and body.get("passed", True) is not False:
            counts["ok"] += 1
            lines.append(json.dumps({"ok": True, "result": body}, sort_keys=True))
        else:
            counts["failed"] += 1
            lines.append(json.dumps({"ok": False, **({"result": body} if ok else body)}, sort_keys=True))
    return lines, counts


def run(argv: list[str], stderr=None) -> tuple[str, int]:
    """Parse ``argv``, dispatch, and return ``(output text, exit code)``.

    Diagnostics for failures are written as one line to ``stderr``.
    """
    err = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.command == "batch":
            lines, counts = run_batch(args.path, _open_cache(args), args.jobs)
            summary = json.dumps({"summary": counts}, sort_keys=True)
            if args.output:
                Path(args.output).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
                return summary, EXIT_OK
            return "\n".join(lines + [summary]), EXIT_OK
        raw = {name: getattr(args, name) for name in _ARG_NAMES[args.command]}
        request = normalize_request(args.command, raw)
        result = resolve(request, _open_cache(args))
        text = render(result, args.format)
        if args.command == "verify":
            if args.format == "text":
                text = "\n".join(
                    f"[{'PASS' if p['passed'] else 'FAIL'}] {p['suite']}: {p['name']} ({p['cases']} cases)"
                    + (f"  counterexample: {p['counterexample']}" if p["counterexample"] else "")
                    for p in result["properties"]
                )
            return text, EXIT_OK if result["passed"] else EXIT_VERIFY
        return text, EXIT_OK
    except _HelpExit as exc:
        return str(exc).rstrip(), EXIT_OK
    except UsageError as exc:
        print(f"lenseta: error: {exc}", file=err)
        return "", EXIT_USAGE
    except ResourceLimit as exc:
        print(f"lenseta: ResourceLimit: {exc}", file=err)
        return "", EXIT_RESOURCE
    except PreconditionError as exc:
        print(f"lenseta: {type(exc).__name__}: {exc}", file=err)
        return "", EXIT_PRECONDITION


def main(argv=None) -> int:
    text, code = run(sys.argv[1:] if argv is None else argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

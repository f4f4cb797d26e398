"""Command-line front end: ``cyclicover alex|cover|rg|thompson``.

Exit codes: 0 success, 1 computation refused (size limit, failed certificate),
2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from .covers import (
    cyclic_cover_presentation,
    index_one_relabeling,
    rank_gradient_sequence,
    relabel_generators,
    tietze_simplify,
)
from .exactalg import SizeLimitError, as_rational, format_rational
from .fox import alexander_polynomial, hnn_end_test
from .plgroup import (
    CertificateError,
    GroupSpec,
    PLMap,
    compose,
    fixed_points,
    independence_certificate,
    independence_witness,
    irreducibility_witness,
    lambda_char,
    rho_char,
    validate,
)
from .plot import plmap_svg
from .presentations import (
    NonPrimitiveClassWarning,
    Presentation,
    PresentationError,
    ensure_stable_generator,
    format_word,
    parse_presentation,
)

SCHEMA = "cyclicover/1"

EXIT_OK, EXIT_REFUSED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class CommandResult:
    human_text: str
    json: dict
    exit_code: int = EXIT_OK


def _doc(command: str, **fields) -> dict:
    return {"schema": SCHEMA, "command": command, **fields}


def _read_presentation(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonPrimitiveClassWarning)
        p, phi = parse_presentation(text)
    nonprimitive = any(issubclass(w.category, NonPrimitiveClassWarning) for w in caught)
    return p, phi, nonprimitive


def _require_class(path: str):
    p, phi, nonprimitive = _read_presentation(path)
    if phi is None:
        raise InputError(f"{path}: a 'phi:' line is required")
    if nonprimitive:
        raise InputError(f"{path}: class has divisibility {phi.divisibility()}; a primitive class is required")
    return p, phi


def _presentation_json(p: Presentation) -> dict:
    return {"generators": list(p.generators), "relators": [format_word(r) for r in p.relators]}


def _presentation_text(p: Presentation) -> str:
    rels = ", ".join(format_word(r) for r in p.relators)
    return f"  gens: {' '.join(p.generators)}\n  rels: {rels}"


# ---------------------------------------------------------------------------
# commands

def cmd_alex(path: str) -> CommandResult:
    p, phi = _require_class(path)
    p, phi, stable = ensure_stable_generator(p, phi)
    delta = alexander_polynomial(p, phi)
    report = hnn_end_test(delta)
    text = (
        f"Delta = {delta}\n"
        f"stable generator: {stable}\n"
        f"bottom coefficient: {report.bottom_coefficient} (unit: {str(report.bottom_is_unit).lower()})\n"
        f"top coefficient: {report.top_coefficient} (unit: {str(report.top_is_unit).lower()})\n"
        f"verdict: {report.verdict.value}\n"
    )
    doc = _doc(
        "alex",
        stable=stable,
        delta={"text": str(delta), **delta.to_json()},
        hnnEndTest=report.to_json(),
    )
    return CommandResult(text, doc)


def cmd_cover(path: str, index: int) -> CommandResult:
    if index < 1:
        raise InputError(f"--index must be at least 1, got {index}")
    p, phi = _require_class(path)
    cover = cyclic_cover_presentation(p, phi, index)
    raw = cover.presentation
    simple = tietze_simplify(raw)
    if index == 1:
        names = index_one_relabeling(cover)
        raw = relabel_generators(raw, names)
        simple = relabel_generators(simple, names)
    text = (
        f"index {index} cover\n"
        f"raw: {len(raw.generators)} generators, {len(raw.relators)} relators\n"
        f"{_presentation_text(raw)}\n"
        f"simplified: {len(simple.generators)} generators, {len(simple.relators)} relators\n"
        f"{_presentation_text(simple)}\n"
    )
    doc = _doc(
        "cover",
        index=index,
        powerGenerator=cover.power_generator if index > 1 else cover.stable,
        raw=_presentation_json(raw),
        simplified=_presentation_json(simple),
    )
    return CommandResult(text, doc)


def cmd_rg(path: str, max_index: int, jobs: int = 1) -> CommandResult:
    if max_index < 1:
        raise InputError(f"--max must be at least 1, got {max_index}")
    p, phi = _require_class(path)
    seq = rank_gradient_sequence(p, phi, max_index, jobs=jobs)
    rows = [("i", "lb", "ub", "lb/i", "ub/i", "min ub/i")]
    for e, best in zip(seq.entries, seq.running_minima()):
        rows.append((str(e.index), str(e.lower), str(e.upper), format_rational(e.lower_ratio),
                     format_rational(e.upper_ratio), format_rational(best)))
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in rows]
    text = "\n".join(lines) + (
        f"\nbest certified upper estimate of the rank gradient: "
        f"{format_rational(seq.running_min_upper_ratio)}\n"
        "(upper bounds are generator counts of simplified presentations; the liminf "
        "itself is not computable from finitely many indices)\n"
    )
    return CommandResult(text, _doc("rg", **seq.to_json()))


def _spec(ell: str, basis: str) -> GroupSpec:
    try:
        nums = [int(x) for x in basis.split(",") if x.strip()]
        return GroupSpec.of(as_rational(ell), nums)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None


def _load_map(path: str) -> PLMap:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        return PLMap.from_json(doc)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: invalid PL map: {exc}") from None


def _fixed_json(f: PLMap) -> list:
    return [[format_rational(a), format_rational(b)] for a, b in fixed_points(f)]


def _fixed_text(f: PLMap) -> str:
    parts = [format_rational(a) if a == b else f"[{format_rational(a)}, {format_rational(b)}]"
             for a, b in fixed_points(f)]
    return "{" + ", ".join(parts) + "}"


def _characters(f: PLMap, spec: GroupSpec) -> tuple[list, list]:
    return list(lambda_char(f, spec.basis).j), list(rho_char(f, spec.basis).j)


def cmd_thompson(args) -> CommandResult:
    sub = args.action
    if sub == "validate":
        f = _load_map(args.file)
        spec = _spec(args.ell or format_rational(f.ell), args.basis)
        report = validate(f, spec)
        text = f"{spec.label()}\n{f}\n" + (
            "valid\n" if report.valid else
            "invalid\n" + "".join(f"  - {v.detail}\n" for v in report.violations)
        )
        return CommandResult(text, _doc("thompson validate", group=spec.label(), map=f.to_json(),
                                        **report.to_json()))
    if sub == "compose":
        f, g = _load_map(args.first), _load_map(args.second)
        try:
            h = compose(f, g)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        spec = _spec(args.ell or format_rational(h.ell), args.basis)
        report = validate(h, spec)
        text = f"{h}\n" + ("valid\n" if report.valid else "invalid\n")
        doc = _doc("thompson compose", group=spec.label(), map=h.to_json(), valid=report.valid)
        if report.valid:
            lam, rho = _characters(h, spec)
            doc.update({"lambda": lam, "rho": rho})
            text += f"lambda exponent: {tuple(lam)}  rho exponent: {tuple(rho)}\n"
        return CommandResult(text, doc)
    if sub == "witness":
        spec = _spec(args.ell, args.basis)
        nu = args.nu if args.nu is not None else str(spec.basis.basis[0])
        try:
            if args.end is None:
                kind = "irreducibility"
                f = irreducibility_witness(spec, as_rational(nu))
            else:
                kind = "independence"
                f = independence_witness(spec, as_rational(nu), args.end)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(str(exc)) from None
        lam, rho = _characters(f, spec)
        lam_v = format_rational(spec.basis.value(lam))
        rho_v = format_rational(spec.basis.value(rho))
        text = (f"{kind} witness in {spec.label()}, nu = {format_rational(as_rational(nu))}"
                + (f", end = {args.end}" if args.end else "") + "\n"
                f"{f}\nlambda = {lam_v}, rho = {rho_v}\nfixed points: {_fixed_text(f)}\n")
        if args.plot:
            caption = f"{kind} witness in {spec.label()}; lambda={lam_v}, rho={rho_v}"
            Path(args.plot).write_text(plmap_svg(f, caption), encoding="utf-8")
        doc = _doc("thompson witness", kind=kind, group=spec.label(),
                   nu=format_rational(as_rational(nu)), end=args.end, map=f.to_json(),
                   **{"lambda": lam, "rho": rho, "lambdaValue": lam_v, "rhoValue": rho_v},
                   fixedPoints=_fixed_json(f))
        return CommandResult(text, doc)
    if sub == "certify":
        spec = _spec(args.ell, args.basis)
        cert = independence_certificate(spec)
        lines = [f"independence certificate for {spec.label()}"]
        for w in cert.witnesses:
            lines.append(f"  nu={w.nu} {w.end:5s} lambda={w.lambda_exponent.j} "
                         f"rho={w.rho_exponent.j} valid={str(w.valid).lower()}")
        lines.append(f"  irreducibility element fixed points: {_fixed_text(cert.irreducible)}")
        lines.append(f"  lambda(Ker rho) = lambda(G): {str(cert.lambda_surjects_from_ker_rho).lower()}")
        lines.append(f"  rho(Ker lambda) = rho(G): {str(cert.rho_surjects_from_ker_lambda).lower()}")
        lines.append("PASS" if cert.passed else "FAIL")
        code = EXIT_OK if cert.passed else EXIT_REFUSED
        return CommandResult("\n".join(lines) + "\n", _doc("thompson certify", **cert.to_json()), code)
    raise InputError(f"unknown thompson action {sub!r}")


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--output", metavar="PATH", help="write output to PATH")

    parser = argparse.ArgumentParser(prog="cyclicover", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("alex", parents=[common], help="Alexander polynomial and HNN end test")
    p.add_argument("file")

    p = subs.add_parser("cover", parents=[common], help="Reidemeister-Schreier cover presentation")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("file")

    p = subs.add_parser("rg", parents=[common], help="rank bound table for cyclic covers")
    p.add_argument("--max", dest="max_index", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("file")

    p = subs.add_parser("thompson", help="generalized Thompson groups")
    acts = p.add_subparsers(dest="action", required=True)
    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--ell", default=None, help="interval length p/q")
    group.add_argument("--basis", required=True, help="comma separated n1,n2,...")

    a = acts.add_parser("validate", parents=[common, group])
    a.add_argument("file")
    a = acts.add_parser("compose", parents=[common, group])
    a.add_argument("first")
    a.add_argument("second")
    a = acts.add_parser("witness", parents=[common, group])
    a.add_argument("--nu", default=None)
    a.add_argument("--end", choices=["left", "right"], default=None)
    a.add_argument("--plot", metavar="PATH")
    a = acts.add_parser("certify", parents=[common, group])
    return parser


def run(argv: list[str] | None = None) -> tuple[CommandResult, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "alex":
            result = cmd_alex(args.file)
        elif args.command == "cover":
            result = cmd_cover(args.file, args.index)
        elif args.command == "rg":
            result = cmd_rg(args.file, args.max_index, args.jobs)
        else:
            if args.action in ("witness", "certify") and args.ell is None:
                raise InputError("--ell is required")
            result = cmd_thompson(args)
    except (InputError, PresentationError) as exc:
        result = CommandResult(f"error: {exc}\n", _doc(_name(args), error={"kind": "input", "message": str(exc)}),
                               EXIT_INPUT)
    except SizeLimitError as exc:
        result = CommandResult(f"refused: {exc}\n", _doc(_name(args), error={"kind": "size-limit", "message": str(exc)}),
                               EXIT_REFUSED)
    except CertificateError as exc:
        result = CommandResult(f"certificate failure: {exc}\n",
                               _doc(_name(args), error={"kind": "certificate", "message": str(exc)}),
                               EXIT_REFUSED)
    return result, args


def _name(args) -> str:
    return args.command if args.command != "thompson" else f"thompson {args.action}"


def main(argv: list[str] | None = None) -> int:
    result, args = run(argv)
    out = json.dumps(result.json, indent=2) + "\n" if args.json else result.human_text
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        stream = sys.stdout if result.exit_code == EXIT_OK or args.json else sys.stderr
        stream.write(out)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

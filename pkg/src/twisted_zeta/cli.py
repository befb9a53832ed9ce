"""Command-line front end.

Each subcommand reads one JSON document, runs the matching analysis and
prints a report either as text or as deterministic JSON. Integers may be
given as JSON numbers or decimal strings; rationals as ``"p/q"``.

Exit codes: 0 success, 1 internal error, 2 malformed document,
3 mathematical precondition violated, 4 integer size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from collections.abc import Callable, Sequence
from fractions import Fraction
from typing import Any

from . import __version__
from ._limits import BitLimitExceeded
from .congruence import gauss_check
from .exactmath.matrix import det
from .exactmath.series import exp_zeta_series
from .fgab import (
    FgAbEndo,
    FgAbGroup,
    eventual_image,
    lefschetz_zeta,
    nilpotent_radical_quotient,
    reidemeister_sequence,
    reidemeister_zeta,
    sigma_r_p,
    torsion_tau,
    verify_functional_equation,
)
from .grouporacle import (
    AbelianCharEndo,
    FiniteGroupEndo,
    automorphism_order,
    is_automorphism,
    tbft_check,
    twisted_classes,
)
from .orbitzeta import (
    FiniteMap,
    fixed_count,
    orbit_decomposition,
    periodic_product_formula,
    product_matches_sequence,
    zeta_from_orbits,
)
from .solenoid import (
    NATURAL_BOUNDARY,
    SolenoidSpec,
    boundary_expansion,
    classify,
    cokernel_count,
    no_short_recurrence,
    periodic_counts,
    unit_primes,
    zeta_series,
)
from .zetaform import ZetaUndefined, reconstruct_zeta

EXIT_OK, EXIT_INTERNAL, EXIT_SCHEMA, EXIT_MATH, EXIT_BITS = 0, 1, 2, 3, 4
DEFAULT_N_MAX, DEFAULT_ORDER, DEFAULT_DIGITS = 12, 24, 30


class SchemaError(ValueError):
    """The input document does not have the expected shape."""


# ------------------------------------------------------------ parsing


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise SchemaError(f"{where}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise SchemaError(f"{where}: expected an integer (number or decimal string), got {x!r}")


def _rational(x: Any, where: str) -> Fraction:
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
        raise SchemaError(f"{where}: expected a rational like \"3/2\", got {x!r}")
    return Fraction(_int(x, where))


def _int_list(x: Any, where: str) -> list[int]:
    if not isinstance(x, list):
        raise SchemaError(f"{where}: expected a list")
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(x)]


def _matrix(x: Any, where: str) -> list[list[int]]:
    if not isinstance(x, list):
        raise SchemaError(f"{where}: expected a list of rows")
    return [_int_list(row, f"{where}[{i}]") for i, row in enumerate(x)]


def _get(doc: dict, *keys: str, default: Any = None) -> Any:
    for k in keys:
        if k in doc:
            return doc[k]
    return default


def _require(doc: dict, *keys: str) -> Any:
    value = _get(doc, *keys)
    if value is None:
        raise SchemaError(f"missing field {keys[0]!r}")
    return value


def _object(doc: Any, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"{kind} document must be a JSON object")
    declared = doc.get("kind")
    if declared is not None and declared != kind:
        raise SchemaError(f"document kind {declared!r} does not match subcommand ({kind})")
    return doc


def _option(args: argparse.Namespace, doc: dict, name: str, keys: Sequence[str], default: int | None):
    flag = getattr(args, name)
    if flag is not None:
        return flag
    raw = _get(doc, *keys) if isinstance(doc, dict) else None
    if raw is None:
        raw = _get(doc.get("options", {}) or {}, *keys) if isinstance(doc, dict) else None
    return default if raw is None else _int(raw, keys[0])


def _positive(value: int, name: str) -> int:
    if value < 1:
        raise SchemaError(f"{name} must be >= 1")
    return value


def load_sequence(doc: Any) -> list[int]:
    """Bare list, ``{"values": [...]}`` or ``{"sequence": [...]}`` (so reports can be re-read)."""
    if isinstance(doc, dict):
        doc = _get(doc, "values", "sequence")
        if doc is None:
            raise SchemaError("sequence document needs a 'values' or 'sequence' list")
    values = _int_list(doc, "sequence")
    if not values:
        raise SchemaError("sequence must contain at least one term")
    return values


# ---------------------------------------------------------- rendering


def _fs(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _strs(values) -> list[str]:
    return [str(v) for v in values]


def _congruence(values: Sequence[int]) -> dict:
    report = gauss_check(values)
    out = report.to_json()
    out["first_failure"] = report.first_failure
    return out


def render_text(report: dict) -> str:
    lines: list[str] = []
    _text(report, lines, 0)
    return "\n".join(lines) + "\n"


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _text(obj: Any, lines: list[str], depth: int) -> None:
    pad = "  " * depth
    for key, value in obj.items():
        label = key.replace("_", " ")
        if isinstance(value, dict):
            lines.append(f"{pad}{label}:")
            _text(value, lines, depth + 1)
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{pad}{label}:")
            cols = list(value[0].keys())
            if all(not isinstance(row.get(c), (dict, list)) for row in value for c in cols):
                rows = [cols] + [[_scalar(row.get(c)) for c in cols] for row in value]
                widths = [max(len(r[i]) for r in rows) for i in range(len(cols))]
                for r in rows:
                    lines.append(pad + "  " + "  ".join(s.rjust(w) for s, w in zip(r, widths)))
            else:
                for i, row in enumerate(value, start=1):
                    lines.append(f"{pad}  [{i}]")
                    _text(row, lines, depth + 2)
        elif isinstance(value, list):
            if value and isinstance(value[0], list):
                lines.append(f"{pad}{label}:")
                for row in value:
                    lines.append(f"{pad}  " + " ".join(_scalar(v) for v in row))
            else:
                body = ", ".join(_scalar(v) for v in value) if value else "-"
                lines.append(f"{pad}{label}: {body}")
        else:
            lines.append(f"{pad}{label}: {_scalar(value)}")


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ----------------------------------------------------------- analyses


def _series_section(zeta) -> dict:
    out = {"series": zeta.series.to_json()}
    if zeta.closed_form is not None:
        out["closed_form"] = str(zeta.closed_form)
        out["closed_form_coefficients"] = zeta.closed_form.to_json()
    elif zeta.recurrence is not None:
        out["closed_form"] = None
        out["recurrence"] = zeta.recurrence.to_json()
    else:
        out["closed_form"] = None
    return out


def analyze_fgab(doc: Any, args: argparse.Namespace) -> dict:
    doc = _object(doc, "fgab")
    n_max = _positive(_option(args, doc, "n_max", ("N", "n_max"), DEFAULT_N_MAX), "N")
    digits = _positive(_option(args, doc, "digits", ("digits",), DEFAULT_DIGITS), "digits")
    rank = _int(_get(doc, "rank", default=0), "rank")
    torsion = _int_list(_get(doc, "torsion", default=[]), "torsion")
    A = _matrix(_get(doc, "A", default=[]), "A")
    B = _matrix(_get(doc, "B", default=[]), "B")
    C = _matrix(_get(doc, "C", default=[]), "C")
    try:
        e = FgAbEndo(FgAbGroup(rank, tuple(torsion)), tuple(map(tuple, A)), tuple(map(tuple, B)), tuple(map(tuple, C)))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc

    seq = reidemeister_sequence(e, n_max)
    report: dict = {
        "kind": "fgab",
        "group": {"rank": rank, "torsion": _strs(e.group.torsion)},
        "sequence": seq.to_json(),
    }
    values = seq.require_finite()
    zeta = reidemeister_zeta(e, n_max)
    report.update(_series_section(zeta))
    report["congruence"] = _congruence(values)

    if e.is_torsion_free and rank:
        sigma, r, p = sigma_r_p(e.A)
        d = det([list(row) for row in e.A])
        eps = verify_functional_equation(zeta.closed_form, d, rank, r)
        report["functional_equation"] = {
            "degree": str(d),
            "rank": rank,
            "sigma": sigma,
            "r": r,
            "p": p,
            "holds": eps is not None,
            "epsilon": None if eps is None else _fs(eps),
        }
        angles = _get(doc, "tau", default=[])
        if angles:
            L = lefschetz_zeta(e.A)
            rows = []
            for i, ang in enumerate(angles):
                a, b = _int_list(ang, f"tau[{i}]") if isinstance(ang, list) else (None, None)
                if b is None:
                    raise SchemaError(f"tau[{i}]: expected [a, b] for lambda = exp(2 pi i a/b)")
                t = torsion_tau(L, a, b, digits)
                rows.append({"a": str(a), "b": str(b), **t.to_json()})
            report["torsion"] = rows
    else:
        report["functional_equation"] = {
            "holds": None,
            "note": "only checked for torsion-free groups; the degree is unspecified otherwise",
        }

    img = eventual_image(e)
    quo = nilpotent_radical_quotient(e)
    report["reductions"] = {
        "eventual_image": _reduction_json(img.endo, values),
        "nilpotent_quotient": _reduction_json(quo.endo, values),
    }
    return report


def _reduction_json(endo: FgAbEndo, values: list[int]) -> dict:
    red = reidemeister_sequence(endo, len(values))
    return {
        "rank": endo.group.rank,
        "torsion": _strs(endo.group.torsion),
        "preserves_sequence": red.finite and red.require_finite() == values,
    }


def analyze_solenoid(doc: Any, args: argparse.Namespace) -> dict:
    doc = _object(doc, "solenoid")
    n_max = _positive(_option(args, doc, "n_max", ("N", "n_max"), DEFAULT_N_MAX), "N")
    order = _positive(_option(args, doc, "order", ("order",), DEFAULT_ORDER), "order")
    depth = _option(args, doc, "depth", ("depth", "J"), None)
    primes = _int_list(_get(doc, "S0", "primes", default=[]), "S0")
    xi = _rational(_require(doc, "xi"), "xi")
    try:
        s = SolenoidSpec(primes, xi)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc

    F = periodic_counts(s, n_max)
    oracle = [cokernel_count(s, j) for j in range(1, n_max + 1)]
    if F != oracle:
        raise AssertionError("place product and cokernel counts disagree")
    verdict = classify(s, order)
    report: dict = {
        "kind": "solenoid",
        "S0": _strs(s.primes),
        "xi": _fs(s.xi),
        "sequence": _strs(F),
        "cokernel_oracle_agrees": True,
        "series": zeta_series(s, order).to_json(),
        "verdict": verdict.to_json(),
        "closed_form": None if verdict.closed_form is None else str(verdict.closed_form),
        "congruence": _congruence(F),
    }
    if verdict.tag == NATURAL_BOUNDARY:
        report["verdict"]["no_short_recurrence"] = no_short_recurrence(s)
        if depth is not None:
            if depth < 0:
                raise SchemaError("depth must be >= 0")
            if len(unit_primes(s)) != 1:
                report["expansion"] = {
                    "declined": "boundary expansion supports exactly one witness prime",
                }
            else:
                report["expansion"] = boundary_expansion(s, depth, order).to_json()
    return report


def _parse_group(doc: dict) -> tuple[FiniteGroupEndo, AbelianCharEndo | None]:
    if "invariants" in doc:
        inv = _int_list(doc["invariants"], "invariants")
        C = _matrix(_require(doc, "C", "matrix"), "C")
        try:
            a = AbelianCharEndo(tuple(inv), tuple(map(tuple, C)))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        return a.to_group(), a
    table = _matrix(_require(doc, "table"), "table")
    endo = _int_list(_require(doc, "endomorphism", "endo"), "endomorphism")
    ident = _get(doc, "identity")
    g = FiniteGroupEndo.from_tables(table, endo, None if ident is None else _int(ident, "identity"))
    return g, None


def _permutation_order(perm: Sequence[int]) -> int | None:
    from math import lcm

    if sorted(perm) != list(range(len(perm))):
        return None
    seen, m = set(), 1
    for start in range(len(perm)):
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        if length:
            m = lcm(m, length)
    return m


def analyze_group(doc: Any, args: argparse.Namespace) -> dict:
    doc = _object(doc, "group")
    n_max = _positive(_option(args, doc, "n_max", ("N", "n_max"), DEFAULT_N_MAX), "N")
    order = _positive(_option(args, doc, "order", ("order",), DEFAULT_ORDER), "order")
    g, a = _parse_group(doc)

    R = [twisted_classes(g, n) for n in range(1, n_max + 1)]
    zeta = reconstruct_zeta(lambda n: twisted_classes(g, n), order)
    report: dict = {"kind": "group", "order": g.order, "sequence": _strs(R)}
    report.update(_series_section(zeta))
    report["congruence"] = _congruence(R)
    if a is not None:
        rows = tbft_check(a, n_max)
        report["tbft"] = [
            {"n": r.n, "R": str(r.reidemeister), "RT": str(r.fixed_characters), "equal": r.equal}
            for r in rows
        ]
        m = automorphism_order(a) if is_automorphism(a) else None
    else:
        m = _permutation_order([int(x) for x in g.endomorphism])
    if m is not None:
        from .exactmath.numtheory import divisors

        values = {d: twisted_classes(g, d) for d in divisors(m)}
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pp = periodic_product_formula(values, m)
        report["periodic_product"] = {
            "period": m,
            "P": {str(d): str(v) for d, v in sorted(pp.P.items())},
            "factors": pp.product.to_json(),
            "integral": all(v % d == 0 for d, v in pp.P.items()),
            "matches_series": product_matches_sequence(pp, values, order),
        }
    return report


def analyze_map(doc: Any, args: argparse.Namespace) -> dict:
    if isinstance(doc, list):
        doc = {"table": doc}
    doc = _object(doc, "map")
    n_max = _positive(_option(args, doc, "n_max", ("N", "n_max"), DEFAULT_N_MAX), "N")
    table = _int_list(_require(doc, "table"), "table")
    try:
        f = FiniteMap(tuple(table))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    dec = orbit_decomposition(f)
    counts = [fixed_count(dec, n) for n in range(1, n_max + 1)]
    report: dict = {
        "kind": "map",
        "size": f.size,
        "cycle_lengths": list(dec.cycle_lengths),
        "transient": dec.transient,
        "sequence": _strs(counts),
        "series": exp_zeta_series(counts).to_json(),
    }
    oz = zeta_from_orbits(dec)
    report["closed_form"] = str(oz.zeta)
    report["closed_form_coefficients"] = oz.zeta.to_json()
    report["functional_equation"] = {"a": oz.a, "b": oz.b, "holds": True}
    report["congruence"] = _congruence(counts)
    return report


def check_congruence(doc: Any, args: argparse.Namespace) -> dict:
    values = load_sequence(doc)
    report = gauss_check(values)
    return {
        "kind": "sequence",
        "sequence": _strs(values),
        "congruence": _congruence(values),
        "verdict": "PASS" if report.passed else f"FAIL at n={report.first_failure}",
    }


COMMANDS: dict[str, Callable[[Any, argparse.Namespace], dict]] = {
    "analyze-fgab": analyze_fgab,
    "analyze-solenoid": analyze_solenoid,
    "analyze-group": analyze_group,
    "analyze-map": analyze_map,
    "check-congruence": check_congruence,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twisted-zeta",
        description="Reidemeister zeta functions of abelian groups, solenoids and finite systems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", dest="n_max", type=int, default=None, metavar="K",
                        help=f"number of iterates tabulated (default {DEFAULT_N_MAX})")
    common.add_argument("--order", type=int, default=None, metavar="K",
                        help=f"zeta series order (default {DEFAULT_ORDER})")
    common.add_argument("--depth", type=int, default=None, metavar="J",
                        help="boundary expansion depth (solenoids)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--digits", type=int, default=None, metavar="K",
                        help=f"certified digits for torsion values (default {DEFAULT_DIGITS})")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file", metavar="FILE", help="JSON document, or - for stdin")
    return parser


def _read(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](_read(args.file), args)
    except SchemaError as exc:
        print(f"error: invalid input document: {exc}", file=stderr)
        return EXIT_SCHEMA
    except BitLimitExceeded as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_BITS
    except ZetaUndefined as exc:
        print(f"error: precondition violated: {exc}", file=stderr)
        return EXIT_MATH
    except AssertionError as exc:
        print(f"internal error: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (ValueError, ArithmeticError) as exc:
        print(f"error: precondition violated: {exc}", file=stderr)
        return EXIT_MATH
    text = render_json(report) if args.format == "json" else render_text(report)
    stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

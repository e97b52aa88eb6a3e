"""Command line front end.

Algebras are read from JSON files (see `parse_algebra`) and every command prints
a JSON report on standard output. Exit codes: 0 on success, 1 when a
computation precondition fails, 2 on invalid input.
"""

import argparse
import json
import logging
import pathlib
import sys
import time
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from . import __version__
from .algebra import (
    OUT_OF_WINDOW,
    AlgebraPresentation,
    BilinearForm,
    ValidationReport,
    adjoint_module,
    dual_module,
    trivial_module,
    validate,
)
from .catalog import CATALOG_NAMES, NOTICES, build, named_cocycle
from .cochain import Cochain, CochainSpace, Theory, is_cocycle
from .cohomology import (
    central_extension,
    cocycle_from_quadratic,
    cohomology,
    derivations,
    hl2_equals_h2_by_forms,
    invariant_forms,
    is_coboundary,
    is_lie_cocycle,
    map_g,
    sder,
    theta,
    verify_exact_sequence,
)
from .exactlin import SparseMatrix
from .exceptions import (
    CatalogError,
    ContractViolation,
    FormatError,
    InputError,
    LeibcohError,
    MalformedJSONError,
    MissingFileError,
    PreconditionError,
    UnknownLabelError,
)
from .utils import format_rational, parse_rational

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_INPUT = 2


# Files


def _read_json(path: Union[str, pathlib.Path]) -> Any:
    path = pathlib.Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise MissingFileError(f"no such file: {path}")
    except OSError as e:
        raise MissingFileError(f"cannot read {path}: {e}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedJSONError(f"{path}: {e}")


def _split_pair(key: str, name: str) -> List[str]:
    parts = [p.strip() for p in key.split(",")]
    if len(parts) != 2 or not all(parts):
        raise FormatError(f"bracket key {key!r} in {name} is not of the form 'a,b'")
    return parts


def algebra_from_dict(data: Dict[str, Any]) -> AlgebraPresentation:
    """Build a presentation from the JSON algebra file layout."""
    if not isinstance(data, dict):
        raise FormatError("algebra file must hold a JSON object")
    name = data.get("name", "algebra")
    kind = data.get("kind")
    basis = data.get("basis")
    if kind not in ("lie", "leibniz"):
        raise FormatError(f"kind must be 'lie' or 'leibniz', got {kind!r}")
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise FormatError("basis must be an array of strings")
    known = set(basis)

    def _label(label):
        if label not in known:
            raise UnknownLabelError(f"unknown basis label {label!r} in {name}")
        return label

    brackets = {}
    raw = data.get("brackets", {})
    if not isinstance(raw, dict):
        raise FormatError("brackets must be an object")
    for key, value in raw.items():
        a, b = (_label(p) for p in _split_pair(key, name))
        if not isinstance(value, dict):
            raise FormatError(f"bracket {key!r} must map labels to coefficients")
        brackets[(a, b)] = {
            _label(k): _coefficient(c, f"[{a},{b}] at {k}") for k, c in value.items()
        }
    for key in data.get("out_of_window", []):
        if not isinstance(key, str):
            raise FormatError(f"out_of_window entry {key!r} is not a string")
        a, b = (_label(p) for p in _split_pair(key, name))
        if (a, b) in brackets:
            raise FormatError(f"bracket {key!r} is both given and out of window")
        brackets[(a, b)] = OUT_OF_WINDOW
    grading = data.get("grading")
    if grading is not None:
        if not isinstance(grading, dict):
            raise FormatError("grading must map labels to degrees")
        for label, degree in grading.items():
            _label(label)
            parts = degree if isinstance(degree, list) and degree else [degree]
            if not all(isinstance(d, int) and not isinstance(d, bool) for d in parts):
                raise FormatError(f"degree of {label!r} must be an integer or [int, int]")
    try:
        return AlgebraPresentation.from_labels(
            name,
            kind,
            basis,
            brackets,
            grading=grading,
            windowed=bool(data.get("windowed", False)),
            notices=data.get("notices", ()),
        )
    except InputError:
        raise
    except LeibcohError as e:
        raise FormatError(f"{name}: {e}")


def parse_algebra(source: Union[str, pathlib.Path, Dict[str, Any]]) -> AlgebraPresentation:
    """Read an algebra definition from a JSON file path (or an already loaded
    object).

    Example file:

    ```json
    {"name": "sl2", "kind": "lie", "basis": ["e", "f", "h"],
     "brackets": {"e,f": {"h": "1"}, "h,e": {"e": "2"}, "h,f": {"f": "-2"}}}
    ```

    Raises:
        MissingFileError: If the file does not exist
        MalformedJSONError: If the file is not valid JSON
        UnknownLabelError: If a bracket references an undefined label
        CoefficientError: If a coefficient is not an exact rational
        FormatError: For any other schema problem
    """
    data = source if isinstance(source, dict) else _read_json(source)
    algebra = algebra_from_dict(data)
    report = validate(algebra)
    if not report.valid:
        logger.warning(
            "%s fails validation on %d instances", algebra.name, len(report.violations)
        )
    return algebra


def _coefficient(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except InputError as e:
        raise type(e)(f"{e} in {where}")


def algebra_to_dict(a: AlgebraPresentation) -> Dict[str, Any]:
    """The JSON algebra file layout of a presentation."""
    brackets = {}
    out_of_window = []
    for (i, j), value in sorted(a.brackets.items()):
        key = f"{a.basis[i]},{a.basis[j]}"
        if value is OUT_OF_WINDOW:
            out_of_window.append(key)
        else:
            brackets[key] = {a.basis[k]: format_rational(c) for k, c in sorted(value.items())}
    data: Dict[str, Any] = {
        "name": a.name,
        "kind": a.kind.value,
        "basis": list(a.basis),
        "brackets": brackets,
    }
    if a.grading is not None:
        data["grading"] = {
            label: (d[0] if len(d) == 1 else list(d))
            for label, d in zip(a.basis, a.grading)
        }
    if a.windowed:
        data["windowed"] = True
        data["out_of_window"] = out_of_window
    if a.notices:
        data["notices"] = list(a.notices)
    return data


def _write_json(path: Union[str, pathlib.Path], data: Any) -> None:
    pathlib.Path(path).write_text(
        json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _entries(data: Any, what: str) -> List:
    if isinstance(data, dict):
        data = data.get("entries")
    if not isinstance(data, list):
        raise FormatError(f"{what} file must hold an entries array")
    out = []
    for entry in data:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not isinstance(entry[0], list)
            or not all(isinstance(label, str) for label in entry[0])
        ):
            raise FormatError(f"malformed {what} entry {entry!r}")
        out.append((tuple(entry[0]), entry[1]))
    return out


def _indices(a: AlgebraPresentation, labels, size: int, what: str):
    if len(labels) != size:
        raise FormatError(f"{what} entry {list(labels)} needs {size} labels")
    for label in labels:
        if label not in a.basis:
            raise UnknownLabelError(f"unknown basis label {label!r} in {what} file")
    return tuple(a.index(label) for label in labels)


def read_cochain(a: AlgebraPresentation, source) -> Cochain:
    """A Loday 2-cochain with trivial coefficients from ``[[x, y], "p/q"]``
    entries."""
    data = source if isinstance(source, (dict, list)) else _read_json(source)
    space = CochainSpace(Theory.LEIBNIZ, 2, a, trivial_module(a))
    coords: Dict[int, Fraction] = {}
    for labels, value in _entries(data, "cocycle"):
        index = space.index(_indices(a, labels, 2, "cocycle"))
        coords[index] = coords.get(index, 0) + _coefficient(value, f"cocycle {labels}")
    return Cochain(space, coords)


def read_form(a: AlgebraPresentation, source) -> BilinearForm:
    """A bilinear form from ``[[x, y], "p/q"]`` entries; an entry whose mirror is
    absent is mirrored, so symmetric forms may list each pair once."""
    data = source if isinstance(source, (dict, list)) else _read_json(source)
    entries: Dict = {}
    for labels, value in _entries(data, "form"):
        i, j = _indices(a, labels, 2, "form")
        entries[(i, j)] = _coefficient(value, f"form {labels}")
    for (i, j), v in list(entries.items()):
        entries.setdefault((j, i), v)
    return BilinearForm(a, SparseMatrix.from_entries(a.dim, a.dim, entries))


def read_derivation(a: AlgebraPresentation, source) -> SparseMatrix:
    """A linear map from ``[[x, y], "p/q"]`` entries: d(x) has coefficient p/q
    along y."""
    data = source if isinstance(source, (dict, list)) else _read_json(source)
    entries: Dict = {}
    for labels, value in _entries(data, "derivation"):
        x, y = _indices(a, labels, 2, "derivation")
        entries[(y, x)] = _coefficient(value, f"derivation {labels}")
    return SparseMatrix.from_entries(a.dim, a.dim, entries)


# Report fragments


def _labelled(a: AlgebraPresentation, vector) -> Dict[str, str]:
    return {a.basis[k]: format_rational(v) for k, v in sorted(vector.items())}


def cochain_entries(cochain: Cochain) -> List:
    space = cochain.space
    module = space.coefficients
    out = []
    for t, c, v in cochain.items():
        labels = list(space.labels(t))
        if module.is_trivial and module.dim == 1:
            out.append([labels, format_rational(v)])
        else:
            out.append([labels, module.labels[c], format_rational(v)])
    return out


def form_entries(form: BilinearForm) -> List:
    a = form.algebra
    return [
        [[a.basis[i], a.basis[j]], format_rational(v)]
        for (i, j), v in sorted(form.matrix.entries.items())
    ]


def _validation(report: ValidationReport, a: AlgebraPresentation) -> Dict[str, Any]:
    return {
        "valid": report.valid,
        "checked": report.checked,
        "skipped": report.skipped,
        "violations": [
            {
                "identity": v.identity,
                "labels": list(v.labels),
                "lhs": _labelled(a, v.lhs),
                "rhs": _labelled(a, v.rhs),
            }
            for v in report.violations
        ],
    }


def _matrix_rows(m: SparseMatrix) -> List[List[str]]:
    return [[format_rational(v) for v in row] for row in m.to_dense()]


# Commands


def _module(a: AlgebraPresentation, name: str):
    if name == "trivial":
        return trivial_module(a)
    if name == "dual":
        return dual_module(a)
    return adjoint_module(a)


def _guard(args, a: AlgebraPresentation, degree: int, module_dim: int = 1) -> None:
    if degree > args.max_degree:
        raise PreconditionError(
            f"degree {degree} exceeds --max-degree {args.max_degree}", code="size_cap"
        )
    size = a.dim ** (degree + 1) * module_dim
    if size > args.max_cochains:
        raise PreconditionError(
            f"coboundary of degree {degree} on {a.name} has {size} rows,"
            f" more than --max-cochains {args.max_cochains}",
            code="size_cap",
        )


def _parse_weight(text: Optional[str]):
    if text is None:
        return None
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise FormatError(f"weight {text!r} is not a comma separated integer list")


def _base(command: str, a: AlgebraPresentation) -> Dict[str, Any]:
    report = {
        "command": command,
        "algebra": a.name,
        "kind": a.kind.value,
        "dim": a.dim,
        "window_relative": a.windowed,
    }
    if a.notices:
        report["notices"] = list(a.notices)
    return report


def cmd_validate(args) -> Dict[str, Any]:
    a = parse_algebra(args.file)
    report = _base("validate", a)
    report.update(_validation(validate(a), a))
    return report


def _group_report(group) -> Dict[str, Any]:
    return {
        "theory": group.theory.value,
        "degree": group.degree,
        "coefficients": group.space.coefficients.name,
        "weight": None if group.space.weight is None else list(group.space.weight),
        "dimension": group.dim,
        "cocycles": group.cocycles.dim,
        "coboundaries": group.coboundaries.dim,
        "representatives": [cochain_entries(r) for r in group.representatives],
        "window_relative": group.window_relative,
    }


def cmd_cohomology(args) -> Dict[str, Any]:
    a = parse_algebra(args.file)
    module = _module(a, args.coefficients)
    _guard(args, a, args.degree, module.dim)
    group = cohomology(
        args.theory, a, module, args.degree, weight=_parse_weight(args.weight)
    )
    report = _base("cohomology", a)
    report.update(_group_report(group))
    return report


def cmd_bforms(args) -> Dict[str, Any]:
    a = parse_algebra(args.file)
    _guard(args, a, 2)
    forms = invariant_forms(a)
    report = _base("bforms", a)
    report["dimension"] = len(forms)
    report["forms"] = [form_entries(f) for f in forms]
    if args.triple:
        criterion = hl2_equals_h2_by_forms(a, args.triple.split(","))
        report["hl2_equals_h2"] = {
            "certified": criterion.certified,
            "obstruction": None
            if criterion.obstruction is None
            else format_rational(criterion.obstruction),
            "reason": criterion.reason,
        }
    return report


def _exactness(a: AlgebraPresentation) -> Dict[str, Any]:
    result = verify_exact_sequence(a)
    return {
        "H2": result.h2_dim,
        "HL2": result.hl2_dim,
        "B": result.b_dim,
        "H3": result.h3_dim,
        "ker_h": result.ker_h_dim,
        "rank_f": result.rank_f,
        "rank_g": result.rank_g,
        "rank_h": result.rank_h,
        "f_injective": result.f_injective,
        "im_f_eq_ker_g": result.im_f_eq_ker_g,
        "im_g_eq_ker_h": result.im_g_eq_ker_h,
        "dimension_identity": result.dimension_identity,
        "identity": f"{result.hl2_dim} = {result.h2_dim} + {result.ker_h_dim}",
    }


def cmd_exactseq(args) -> Dict[str, Any]:
    a = parse_algebra(args.file)
    _guard(args, a, 3)
    report = _base("exactseq", a)
    report.update(_exactness(a))
    return report


def cmd_derivations(args) -> Dict[str, Any]:
    a = parse_algebra(args.file)
    report = _base("derivations", a)
    if args.skew:
        _guard(args, a, 2)
        spaces = derivations(a, dual_module(a))
        skew = sder(a)
        h2 = cohomology(Theory.CHEVALLEY_EILENBERG, a, n=2)
        hl2 = cohomology(Theory.LEIBNIZ, a, n=2)
        report.update(
            {
                "coefficients": "dual",
                "der": spaces.der.dim,
                "inn": spaces.inn.dim,
                "sder": skew.dim,
                "H1": spaces.h1.dim,
                "der_minus_sder": spaces.der.dim - skew.dim,
                "hl2_minus_h2": hl2.dim - h2.dim,
                "identity_holds": spaces.der.dim - skew.dim == hl2.dim - h2.dim,
            }
        )
    else:
        _guard(args, a, 1, a.dim)
        spaces = derivations(a, adjoint_module(a))
        report.update(
            {
                "coefficients": "adjoint",
                "der": spaces.der.dim,
                "inn": spaces.inn.dim,
                "H1": spaces.h1.dim,
            }
        )
    return report


def cmd_theta(args) -> Dict[str, Any]:
    a = parse_algebra(args.file)
    _guard(args, a, 2)
    result = theta(a)
    report = _base("theta", a)
    report.update(
        {
            "H1_dual": result.h1.dim,
            "HL2": result.hl2.dim,
            "matrix": _matrix_rows(result.matrix),
            "isomorphism": result.is_isomorphism,
            "derivation_identity": "a([x,y]) = x.a(y) - y.a(x)",
        }
    )
    return report


def cmd_extend(args) -> Dict[str, Any]:
    a = parse_algebra(args.file)
    _guard(args, a, 2)
    alpha = read_cochain(a, args.cocycle)
    extension = central_extension(a, alpha, label=args.label)
    report = _base("extend", a)
    report.update(
        {
            "extension": algebra_to_dict(extension),
            "extension_kind": extension.kind.value,
            "validation": _validation(validate(extension), extension),
        }
    )
    if args.emit:
        _write_json(args.emit, algebra_to_dict(extension))
    return report


def cmd_quadratic(args) -> Dict[str, Any]:
    a = parse_algebra(args.file)
    _guard(args, a, 2)
    form = read_form(a, args.form)
    d = read_derivation(a, args.derivation)
    result = cocycle_from_quadratic(a, form, d)
    report = _base("quadratic", a)
    report.update(
        {
            "cochain": cochain_entries(result.cochain),
            "is_cocycle": is_cocycle(result.cochain),
            "alternating": result.alternating,
            "lie_cocycle": is_lie_cocycle(result.cochain),
            "coboundary": is_coboundary(result.cochain),
            "symmetrization": form_entries(map_g(result.cochain, check=False)),
        }
    )
    return report


def _catalog_params(args) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    if args.window is not None:
        params["window"] = args.window
    if args.order is not None:
        params["order"] = args.order
    if args.q is not None:
        params["q"] = args.q
    if args.dim is not None:
        params["dim"] = args.dim
    if args.simple is not None:
        params["simple"] = args.simple
    if args.phi is not None:
        try:
            params["phi"] = tuple(int(v) for v in args.phi.split(","))
        except ValueError:
            raise CatalogError(f"phi {args.phi!r} is not four comma separated integers")
    return params


def cmd_catalog(args) -> Dict[str, Any]:
    entry = build(args.name, **_catalog_params(args))
    a = entry.algebra
    report = _base("catalog", a)
    report["validation"] = _validation(validate(a), a)
    if args.emit:
        _write_json(args.emit, algebra_to_dict(a))
        report["emitted"] = str(args.emit)
    if args.cocycle:
        result = named_cocycle(args.cocycle, a, shift=args.shift)
        notices = [NOTICES[args.cocycle]] if args.cocycle in NOTICES else []
        if isinstance(result, BilinearForm):
            payload = {"entries": form_entries(result)}
            report["cocycle"] = {
                "name": args.cocycle,
                "form": payload["entries"],
                "symmetric": result.is_symmetric(),
                "invariant": result.is_invariant(),
            }
        elif isinstance(result, Cochain):
            payload = {"entries": cochain_entries(result)}
            report["cocycle"] = {
                "name": args.cocycle,
                "entries": payload["entries"],
                "is_cocycle": is_cocycle(result),
                "alternating": is_lie_cocycle(result),
            }
        else:
            payload = None
            report["cocycle"] = {
                "name": args.cocycle,
                "cochains": [cochain_entries(c) for c in result],
                "is_cocycle": [is_cocycle(c) for c in result],
            }
        if notices:
            report["cocycle"]["notices"] = notices
        if args.emit_cocycle:
            if payload is None:
                raise CatalogError(f"{args.cocycle} yields several cochains")
            _write_json(args.emit_cocycle, payload)
    return report


def cmd_report(args) -> Dict[str, Any]:
    a = parse_algebra(args.file)
    report = _base("report", a)
    report["validation"] = _validation(validate(a), a)
    dims: Dict[str, Dict[str, int]] = {"leibniz": {}}
    if a.is_lie:
        dims["chevalley_eilenberg"] = {}
    for n in range(3):
        _guard(args, a, n)
        for theory in dims:
            dims[theory][str(n)] = cohomology(theory, a, n=n).dim
    report["dimensions"] = dims
    report["B"] = len(invariant_forms(a))
    if a.is_lie and not a.windowed:
        _guard(args, a, 3)
        report["exact_sequence"] = _exactness(a)
    return report


COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "bforms": cmd_bforms,
    "exactseq": cmd_exactseq,
    "derivations": cmd_derivations,
    "theta": cmd_theta,
    "extend": cmd_extend,
    "quadratic": cmd_quadratic,
    "catalog": cmd_catalog,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leibcoh",
        description="Exact Leibniz and Lie algebra cohomology from structure constants.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument(
        "--max-degree", type=int, default=4, help="largest cochain degree (default 4)"
    )
    parser.add_argument(
        "--max-cochains",
        type=int,
        default=10**7,
        help="largest number of coboundary rows dim(g)^(n+1) dim(M) (default 10^7)",
    )
    parser.add_argument(
        "--timing", action="store_true", help="add elapsed milliseconds to the report"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def _with_file(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("file", help="algebra definition (JSON)")
        return p

    _with_file("validate", "check the Leibniz (and Lie) identities")
    p = _with_file("cohomology", "compute H^n or HL^n")
    p.add_argument("--theory", choices=["lie", "leibniz"], required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument(
        "--coefficients", choices=["trivial", "dual", "adjoint"], default="trivial"
    )
    p.add_argument("--weight", help="restrict to a weight block, e.g. 0 or 0,0")
    p = _with_file("bforms", "invariant symmetric bilinear forms")
    p.add_argument("--triple", help="sl2-triple x,y,h for the HL^2 = H^2 criterion")
    _with_file("exactseq", "verify 0 -> H^2 -> HL^2 -> B -> H^3")
    p = _with_file("derivations", "derivations and skew derivations")
    p.add_argument("--skew", action="store_true", help="Der(g,g*) and SDer(g,g*)")
    _with_file("theta", "the map H^1(g,g*) -> HL^2(g)")
    p = _with_file("extend", "one-dimensional central extension by a cocycle")
    p.add_argument("--cocycle", required=True, help="cocycle file")
    p.add_argument("--label", default="c", help="label of the central element")
    p.add_argument("--emit", help="write the extension to this file")
    p = _with_file("quadratic", "cocycle phi(x, d y) of a quadratic algebra")
    p.add_argument("--form", required=True, help="invariant form file")
    p.add_argument("--derivation", required=True, help="derivation file")
    p = sub.add_parser("catalog", help="construct a catalog algebra")
    p.add_argument("name", help=f"one of {', '.join(CATALOG_NAMES)}")
    p.add_argument("--window", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--q", help="rational q for q_virasoro_like, e.g. 2 or 3/2")
    p.add_argument("--dim", type=int, help="dimension of abelian")
    p.add_argument("--simple", choices=["sl2", "sl3"], help="simple algebra of loop")
    p.add_argument("--phi", help="block matrix p11,p12,p21,p22")
    p.add_argument("--shift", type=int, default=1, help="derivation shift for loop_51")
    p.add_argument("--emit", help="write the algebra to this file")
    p.add_argument(
        "--cocycle",
        choices=["virasoro", "w1inf_psi", "hvir_triple", "block_form", "loop_51"],
    )
    p.add_argument("--emit-cocycle", help="write the named cocycle to this file")
    _with_file("report", "validation, dimensions in degrees 0-2, B and exactness")
    return parser


def _error_report(command: Optional[str], error: LeibcohError) -> Dict[str, Any]:
    return {"command": command, "error": {"code": error.code, "message": str(error)}}


def _emit(report: Dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except (InputError, CatalogError, ContractViolation) as e:
        logger.error("%s", e)
        _emit(_error_report(args.command, e))
        return EXIT_INPUT
    except LeibcohError as e:
        logger.error("%s", e)
        _emit(_error_report(args.command, e))
        return EXIT_PRECONDITION
    if args.timing:
        report["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
    _emit(report)
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())

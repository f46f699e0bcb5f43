"""Document format and the ``fpknormal`` command line.

A document is a JSON object::

    {
      "name": "heisenberg3",
      "dimension": 3,
      "basis": ["xi1", "xi2", "xi3"],
      "brackets": [{"i": 0, "j": 1, "k": 2, "c": "1"}],
      "phi": [["0", "0", "0"], ...],          # optional, row-major
      "parallelism": [["1", "0", "0"], ...],  # optional
      "product_with": "heisenberg3"           # optional, catalog name or inline algebra
    }

Indices are zero-based with ``i < j``; rationals are strings ``"p"`` or ``"p/q"``.
Exit codes: 0 when the checked condition holds, 1 when it fails on valid
input, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from . import linalg as la
from .errors import ParseError, StructureError
from .fpk import EndoTensor, FpkStructure, ResidualReport, condition_star, validate_fpk
from .lie_core import LieAlgebra, jacobi_violation, lie_algebra, check_jacobi
from .linalg import Vec
from .mixed3 import ComplexEigen, RealEigen, check_admissibility, condition_double_star, equivalence_harness

FIELDS = ("name", "dimension", "basis", "brackets", "phi", "parallelism", "product_with")


@dataclass(frozen=True)
class Document:
    name: str
    algebra: LieAlgebra
    phi: EndoTensor | None = None
    parallelism: tuple[Vec, ...] | None = None
    product_with: LieAlgebra | str | None = None

    def structure(self) -> FpkStructure:
        if self.phi is None or self.parallelism is None:
            raise ParseError("document needs both 'phi' and 'parallelism' for this check")
        return validate_fpk(self.algebra, self.phi, self.parallelism)

    def group_factor(self) -> LieAlgebra | None:
        if isinstance(self.product_with, str):
            return catalog.get_entry(self.product_with).algebra
        return self.product_with


# -- parsing ------------------------------------------------------------------


class _Locator:
    """Best-effort mapping from a JSON value back to a line of the source text."""

    def __init__(self, text: str):
        self.text = text

    def line_of(self, value: Any) -> int | None:
        needle = json.dumps(value) if isinstance(value, str) else None
        if needle is None:
            return None
        pos = self.text.find(needle)
        return self.text.count("\n", 0, pos) + 1 if pos >= 0 else None


def _rational(value: Any, path: str, loc: _Locator) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"expected a rational string, got {value!r}", loc.line_of(value), path)
    try:
        return la.rational(value)
    except ParseError as exc:
        raise ParseError(exc.message, loc.line_of(value), path) from None


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", path=path)
    return value


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"expected a list, got {type(value).__name__}", path=path)
    return value


def _algebra_from(obj: Any, loc: _Locator, prefix: str = "") -> LieAlgebra:
    if not isinstance(obj, dict):
        raise ParseError("algebra must be a JSON object", path=prefix or None)
    for key in ("dimension", "brackets"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}", path=prefix + key)
    dim = _int(obj["dimension"], prefix + "dimension")
    basis = obj.get("basis")
    if basis is not None:
        basis = _list(basis, prefix + "basis")
        if not all(isinstance(b, str) for b in basis):
            raise ParseError("basis labels must be strings", path=prefix + "basis")
    constants = []
    for n, entry in enumerate(_list(obj["brackets"], prefix + "brackets")):
        path = f"{prefix}brackets[{n}]"
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "k", "c"}:
            raise ParseError("bracket entry must have exactly the keys i, j, k, c", path=path)
        constants.append(
            (_int(entry["i"], path + ".i"), _int(entry["j"], path + ".j"), _int(entry["k"], path + ".k"),
             _rational(entry["c"], path + ".c", loc))
        )
    try:
        return lie_algebra(constants, dim, basis)
    except ParseError:
        raise
    except StructureError as exc:
        raise type(exc)(f"{prefix or 'document'}: {exc}") from None


def _vectors(value: Any, dim: int, path: str, loc: _Locator) -> tuple[Vec, ...]:
    rows = []
    for n, row in enumerate(_list(value, path)):
        row = _list(row, f"{path}[{n}]")
        if len(row) != dim:
            raise ParseError(f"expected {dim} entries, got {len(row)}", path=f"{path}[{n}]")
        rows.append(tuple(_rational(x, f"{path}[{n}][{m}]", loc) for m, x in enumerate(row)))
    return tuple(rows)


def parse_document(text: str, validate: bool = True) -> Document:
    """Parse a document; with ``validate`` the algebra's Jacobi identity is checked.

    The f.pk axioms are checked lazily by :meth:`Document.structure`.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object", 1)
    unknown = set(obj) - set(FIELDS)
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}")
    loc = _Locator(text)
    algebra = _algebra_from(obj, loc)
    if validate:
        check_jacobi(algebra)
    phi = parallelism = product = None
    if obj.get("phi") is not None:
        rows = _vectors(obj["phi"], algebra.dim, "phi", loc)
        if len(rows) != algebra.dim:
            raise ParseError(f"phi must have {algebra.dim} rows", path="phi")
        phi = EndoTensor(rows)
    if obj.get("parallelism") is not None:
        parallelism = _vectors(obj["parallelism"], algebra.dim, "parallelism", loc)
    pw = obj.get("product_with")
    if isinstance(pw, str):
        catalog.get_entry(pw)
        product = pw
    elif pw is not None:
        product = _algebra_from(pw, loc, "product_with.")
        if validate:
            check_jacobi(product)
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string", path="name")
    return Document(name, algebra, phi, parallelism, product)


# -- serialization ------------------------------------------------------------


def _algebra_fields(g: LieAlgebra) -> dict:
    return {
        "dimension": g.dim,
        "basis": list(g.labels),
        "brackets": [{"i": i, "j": j, "k": k, "c": str(c)} for i, j, k, c in g.constants],
    }


def document_to_dict(doc: Document) -> dict:
    out: dict[str, Any] = {"name": doc.name}
    out.update(_algebra_fields(doc.algebra))
    if doc.phi is not None:
        out["phi"] = [[str(x) for x in row] for row in doc.phi.matrix]
    if doc.parallelism is not None:
        out["parallelism"] = [[str(x) for x in v] for v in doc.parallelism]
    if isinstance(doc.product_with, str):
        out["product_with"] = doc.product_with
    elif doc.product_with is not None:
        out["product_with"] = _algebra_fields(doc.product_with)
    return out


def _dump(value: Any, depth: int = 0) -> str:
    # objects expand, flat lists stay on one line, lists of rows get one row per line
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict) and depth == 0 or isinstance(value, dict) and "brackets" in value:
        body = ",\n".join(f"{inner}{json.dumps(k)}: {_dump(v, depth + 1)}" for k, v in value.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
        body = ",\n".join(inner + json.dumps(v, separators=(", ", ": ")) for v in value)
        return "[\n" + body + "\n" + pad + "]"
    return json.dumps(value, separators=(", ", ": "))


def serialize_document(doc: Document) -> str:
    """Canonical text: fixed field order, sorted brackets, rationals as strings."""
    return _dump(document_to_dict(doc)) + "\n"


def document_from_entry(entry: catalog.CatalogEntry) -> Document:
    phi = EndoTensor(entry.phi) if entry.phi is not None else None
    return Document(entry.name, entry.algebra, phi, entry.parallelism)


# -- reports ------------------------------------------------------------------


def render_vector(v: Vec, labels: Sequence[str]) -> str:
    """``-r*``, ``2 s - 1/2 t``, ``0``."""
    parts = []
    for c, name in zip(v, labels):
        if not c:
            continue
        mag = abs(c)
        term = name if mag == 1 else f"{mag} {name}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def _pair_names(pair, labels):
    return [labels[pair[0]], labels[pair[1]]]


def _par_names(doc_labels: Sequence[str], parallelism: Sequence[Vec]) -> list[str]:
    names = []
    for v in parallelism:
        nz = [i for i, x in enumerate(v) if x]
        names.append(doc_labels[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else render_vector(v, doc_labels))
    return names


def _strs(v: Vec) -> list[str]:
    return [str(x) for x in v]


def _residual_entry(report: ResidualReport, k) -> dict:
    v = report.residuals[k]
    entry = {"pair": _pair_names(k, report.labels), "indices": list(k), "residual": _strs(v), "zero": not any(v)}
    if k in report.terms:
        tensor, d_term = report.terms[k]
        entry["tensor"] = _strs(tensor)
        entry["d_term"] = _strs(d_term)
    return entry


def report_to_json(report: ResidualReport, par_names: Sequence[str] = ()) -> dict:
    labels = report.labels
    out = {
        "condition": report.condition,
        "verdict": report.verdict,
        "basis": list(labels),
        "witness": None,
        "residuals": [_residual_entry(report, k) for k in sorted(report.residuals)],
    }
    if report.witness is not None:
        w = report.witness
        out["witness"] = {"pair": _pair_names(w, labels), "indices": list(w)}
    if report.parallelism_residuals:
        out["parallelism_residuals"] = [
            {"pair": _pair_names(k, par_names), "indices": list(k), "residual": _strs(v), "zero": not any(v)}
            for k, v in sorted(report.parallelism_residuals.items())
        ]
        pw = report.parallelism_witness
        out["parallelism_witness"] = None if pw is None else {"pair": _pair_names(pw, par_names), "indices": list(pw)}
    return out


def report_to_text(name: str, report: ResidualReport, full: bool, par_names: Sequence[str] = ()) -> str:
    labels = report.labels
    status = "holds" if report.verdict else "FAILS"
    lines = [f"{name or '<document>'}: {report.condition} {status} ({len(report.residuals)} basis pairs)"]
    if report.witness is not None:
        a, b = _pair_names(report.witness, labels)
        lines.append(f"  witness ({a}, {b}): {render_vector(report.residuals[report.witness], labels)}")
    pw = report.parallelism_witness
    if pw is not None:
        a, b = _pair_names(pw, par_names)
        lines.append(
            f"  parallelism witness ({a}, {b}): {render_vector(report.parallelism_residuals[pw], labels)}"
        )
    shown = sorted(report.residuals.items()) if full else sorted(report.nonzero().items())
    if shown:
        lines.append("  residuals:" if full else "  nonzero residuals:")
        for k, v in shown:
            a, b = _pair_names(k, labels)
            line = f"    ({a}, {b}): {render_vector(v, labels)}"
            if full and k in report.terms:
                tensor, d_term = report.terms[k]
                line += f"    [tensor {render_vector(tensor, labels)}; d-term {render_vector(d_term, labels)}]"
            lines.append(line)
    return "\n".join(lines)


def admissibility_to_json(result) -> dict:
    if isinstance(result, RealEigen):
        return {"result": "RealEigen", "admissible": True, "gamma": str(result.gamma)}
    if isinstance(result, ComplexEigen):
        return {
            "result": "ComplexEigen",
            "admissible": True,
            "alpha": str(result.alpha),
            "beta": str(result.beta),
            "orientation": result.orientation,
        }
    return {"result": "NotAdmissible", "admissible": False, "code": result.code, "reason": result.reason}


def admissibility_to_text(result) -> str:
    if isinstance(result, RealEigen):
        return f"RealEigen(gamma={result.gamma})"
    if isinstance(result, ComplexEigen):
        return f"ComplexEigen(alpha={result.alpha}, beta={result.beta}, orientation={result.orientation:+d})"
    return f"NotAdmissible({result.code}: {result.reason})"


# -- commands -----------------------------------------------------------------


def _load(path: str, validate: bool = True) -> Document:
    if path.startswith("catalog:"):
        return document_from_entry(catalog.get_entry(path[len("catalog:"):]))
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_document(text, validate=validate)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.list_entries():
            print(name)
        return 0
    if args.name is None:
        raise ParseError("catalog show needs an entry name")
    entry = catalog.get_entry(args.name, args.theta)
    sys.stdout.write(serialize_document(document_from_entry(entry)))
    return 0


def _cmd_verify(args) -> int:
    if args.check == "jacobi":
        doc = _load(args.file, validate=False)
        bad = jacobi_violation(doc.algebra)
        labels = doc.algebra.labels
        if bad is None:
            _emit(args, {"condition": "jacobi", "verdict": True}, f"{doc.name or '<document>'}: Jacobi identity holds")
            return 0
        i, j, k, r = bad
        triple = [labels[i], labels[j], labels[k]]
        _emit(
            args,
            {"condition": "jacobi", "verdict": False, "triple": triple, "indices": [i, j, k], "residual": _strs(r)},
            f"{doc.name or '<document>'}: JacobiViolation on ({', '.join(triple)}): residual {render_vector(r, labels)}",
        )
        return 1

    doc = _load(args.file)
    full = args.report == "full"
    if args.check == "admissible":
        if doc.parallelism is None:
            raise ParseError("document has no parallelism")
        result = check_admissibility(doc.algebra, doc.parallelism)
        _emit(args, admissibility_to_json(result), f"{doc.name or '<document>'}: {admissibility_to_text(result)}")
        return 0 if result.admissible else 1

    fpk = doc.structure()
    if args.check == "normal":
        report = condition_star(fpk)
        names = _par_names(doc.algebra.labels, fpk.parallelism)
        _emit(args, report_to_json(report, names), report_to_text(doc.name, report, full, names))
        return 0 if report.verdict else 1
    if args.check == "mixed-normal":
        report = condition_double_star(fpk)
        _emit(args, report_to_json(report), report_to_text(doc.name, report, full))
        return 0 if report.verdict else 1
    # oracle
    record = equivalence_harness(fpk, doc.group_factor())
    payload = {
        "mixed_normal": record.mixed_normal,
        "codim_one_normal": record.codim_one_normal,
        "codim_one_product_integrable": record.codim_one_product_integrable,
        "j_hat_integrable": record.j_hat_integrable,
        "all_equal": record.all_equal,
    }
    text = "\n".join([f"{doc.name or '<document>'}:"] + [f"  {k}: {v}" for k, v in payload.items()])
    _emit(args, payload, text)
    return 0 if record.all_equal else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fpknormal", description="Exact normality checks for left-invariant f.pk-structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="list or print built-in algebras and structures")
    cat.add_argument("action", choices=["list", "show"])
    cat.add_argument("name", nargs="?")
    cat.add_argument("--theta", help="parameter for bianchi_lista_5, as p or p/q")
    cat.set_defaults(func=_cmd_catalog)

    ver = sub.add_parser("verify", help="check a condition on a document")
    ver.add_argument("check", choices=["jacobi", "normal", "mixed-normal", "admissible", "oracle"])
    ver.add_argument("file", help="document path, '-' for stdin, or catalog:<name>")
    ver.add_argument("--json", action="store_true", help="machine-readable output")
    ver.add_argument("--report", choices=["summary", "full"], default="summary")
    ver.set_defaults(func=_cmd_verify)
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (StructureError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())

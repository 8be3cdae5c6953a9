"""JSON input documents and report assembly for the command line tools.

Everything that crosses the process boundary stays exact: rationals travel
as "num/den" strings, number-field elements as coordinate arrays, and
function-field data as expression strings over the declared variables.
"""

from __future__ import annotations

import json
import math
import time
from fractions import Fraction

from .connection import CompanionConnection, ConnectionMatrix, Derivation
from .deformation import TruncatedFamily
from .exprs import ParseError, parse_expression
from .fields import GF, QQ, is_prime
from .linalg import Matrix
from .numberfield import NumberField
from .poly import IrreducibilityUndecided, Polynomial
from .ratfunc import FunctionField
from .surface import Representation, SurfacePresentation
from .valuation import standard_tower

TOOL_NAME = "pcurvkit"
TOOL_VERSION = "0.1.0"
SCHEMA_VERSION = 1


class SpecError(ValueError):
    """A spec document that cannot be turned into exact objects."""


def load_spec(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    return doc


# ---------------------------------------------------------------------------
# exact literals


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, bool):
        raise SpecError(f"bad rational literal {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        num, slash, den = s.partition("/")
        try:
            if slash:
                return Fraction(int(num.strip()), int(den.strip()))
            return Fraction(int(num.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"bad rational literal {s!r}") from exc
    raise SpecError(f"bad rational literal {s!r}")


def valuation_str(v) -> str:
    """q-adic valuations serialize as 'inf' or 'num/den'."""
    if v == math.inf:
        return "inf"
    return frac_str(v)


# ---------------------------------------------------------------------------
# function-field specs


def parse_base(obj):
    if obj is None or obj == "QQ":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"p"}:
        p = obj["p"]
        if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
            raise SpecError(f"base characteristic must be a prime, got {p!r}")
        return GF(p)
    raise SpecError(f'bad base field {obj!r} (use "QQ" or {{"p": N}})')


def _field_env(field: FunctionField) -> dict:
    env = {}
    level = field
    while isinstance(level, FunctionField):
        env.setdefault(level.var, field(level.gen()))
        level = level.base
    return env


def parse_field_expression(text, field: FunctionField):
    if isinstance(text, int) and not isinstance(text, bool):
        return field(text)
    if not isinstance(text, str):
        raise SpecError(f"expected an expression string, got {text!r}")
    try:
        return parse_expression(text, _field_env(field), field.one)
    except ParseError as exc:
        raise SpecError(
            f"bad expression {text!r} (line {exc.line}, column {exc.col}): {exc}"
        ) from exc


def parse_expression_matrix(rows, field: FunctionField) -> Matrix:
    if not isinstance(rows, list) or not rows \
            or not all(isinstance(r, list) and r for r in rows):
        raise SpecError("matrix must be a nonempty list of nonempty rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise SpecError("matrix rows have unequal lengths")
    return Matrix(field, [
        [parse_field_expression(e, field) for e in r] for r in rows
    ])


def parse_derivation(obj, field: FunctionField) -> Derivation:
    var = field.var
    if obj is None:
        return Derivation.d_dx(field)
    if isinstance(obj, str):
        compact = obj.replace(" ", "")
        if compact == f"d/d{var}":
            return Derivation.d_dx(field)
        if compact == f"{var}*d/d{var}":
            return Derivation.x_d_dx(field)
        raise SpecError(
            f"unknown derivation {obj!r}; use 'd/d{var}', '{var}*d/d{var}', "
            f"or {{\"multiplier\": <expr>}}")
    if isinstance(obj, dict) and set(obj) == {"multiplier"}:
        u = parse_field_expression(obj["multiplier"], field)
        if not u:
            raise SpecError("derivation multiplier must be nonzero")
        return Derivation(u)
    raise SpecError(f"bad derivation {obj!r}")


def connection_from_spec(doc: dict) -> ConnectionMatrix:
    if doc.get("kind") not in (None, "matrix"):
        raise SpecError(
            f'scan expects a plain connection spec, got kind {doc.get("kind")!r}')
    base = parse_base(doc.get("base"))
    var = doc.get("variable", "x")
    field = FunctionField(base, var)
    if "matrix" not in doc:
        raise SpecError('connection spec needs a "matrix" entry')
    M = parse_expression_matrix(doc["matrix"], field)
    if M.nrows != M.ncols:
        raise SpecError("connection matrix must be square")
    D = parse_derivation(doc.get("derivation"), field)
    return ConnectionMatrix(M, D)


def companion_from_spec(doc: dict):
    """Companion connection over GF(p)(q)(x); returns (connection, p)."""
    if doc.get("kind") != "companion":
        raise SpecError('analyze expects a spec with "kind": "companion"')
    p = doc.get("p")
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise SpecError(f"companion spec needs a prime p, got {p!r}")
    qvar = doc.get("qvar", "q")
    xvar = doc.get("variable", "x")
    _, tower, D = standard_tower(p, qvar, xvar)
    if doc.get("derivation") is not None:
        D = parse_derivation(doc["derivation"], tower)
    col = doc.get("last_column")
    if not isinstance(col, list) or not col:
        raise SpecError('companion spec needs a nonempty "last_column"')
    entries = [parse_field_expression(e, tower) for e in col]
    return CompanionConnection(entries, D), p


def family_from_spec(doc: dict):
    """Truncated q-family of connections; returns (family, ansatz_degree|None)."""
    base = parse_base(doc.get("base"))
    var = doc.get("variable", "x")
    field = FunctionField(base, var)
    D = parse_derivation(doc.get("derivation"), field)
    qvar = doc.get("qvar", "q")
    layers_doc = doc.get("layers")
    if not isinstance(layers_doc, list) or not layers_doc:
        raise SpecError('family spec needs a nonempty "layers" list')
    layers = [parse_expression_matrix(L, field) for L in layers_doc]
    if layers[0].nrows != layers[0].ncols:
        raise SpecError("family layers must be square matrices")
    try:
        fam = TruncatedFamily(D, layers, qvar)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    ansatz = doc.get("ansatz_degree")
    if ansatz is not None and (not isinstance(ansatz, int) or ansatz < 0):
        raise SpecError("ansatz_degree must be a nonnegative integer")
    return fam, ansatz


# ---------------------------------------------------------------------------
# number-field specs


def number_field_from_spec(obj) -> NumberField:
    if obj is None or obj == "QQ":
        return NumberField(Polynomial(QQ, [Fraction(0), Fraction(1)]), "t")
    if not isinstance(obj, dict) or "min_poly" not in obj:
        raise SpecError(
            'field spec needs {"min_poly": [c0, ..., 1]} coefficients')
    coeffs = [parse_frac(c) for c in obj["min_poly"]]
    name = obj.get("name", "w")
    try:
        return NumberField(Polynomial(QQ, coeffs), name)
    except IrreducibilityUndecided as exc:
        raise SpecError(f"cannot certify the field polynomial: {exc}") from exc
    except ValueError as exc:
        raise SpecError(f"bad number field: {exc}") from exc


def parse_nf_element(obj, K: NumberField):
    """A 'num/den' string, an integer, or a coordinate array of them."""
    if isinstance(obj, (str, int)):
        return K(parse_frac(obj))
    if isinstance(obj, list):
        if len(obj) != K.degree:
            raise SpecError(
                f"coordinate array of length {len(obj)} for a degree "
                f"{K.degree} field")
        return K.element([parse_frac(c) for c in obj])
    raise SpecError(f"bad field element {obj!r}")


def nf_element_coords(e) -> list[str]:
    return [frac_str(c) for c in e.coords]


def parse_nf_matrix(rows, K: NumberField, size: int | None = None) -> Matrix:
    if not isinstance(rows, list) or not rows \
            or not all(isinstance(r, list) and r for r in rows):
        raise SpecError("matrix must be a nonempty list of nonempty rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise SpecError("matrix must be square")
    if size is not None and n != size:
        raise SpecError(f"expected a {size}x{size} matrix")
    return Matrix(K, [[parse_nf_element(e, K) for e in r] for r in rows])


def representation_from_spec(doc: dict):
    """(Representation, caps dict, projective flag) from a JSON document."""
    K = number_field_from_spec(doc.get("field"))
    surf = doc.get("surface")
    if not isinstance(surf, dict):
        raise SpecError('representation spec needs "surface": {genus, punctures}')
    try:
        pres = SurfacePresentation(
            int(surf.get("genus", 0)), int(surf.get("punctures", 0)))
    except (TypeError, ValueError) as exc:
        raise SpecError(str(exc)) from exc
    target = doc.get("target", "SL2")
    gens_doc = doc.get("generators")
    if not isinstance(gens_doc, dict) or not gens_doc:
        raise SpecError('representation spec needs a "generators" mapping')
    gens = {}
    for name, rows in gens_doc.items():
        gens[name] = parse_nf_matrix(rows, K, size=2)
    try:
        rho = Representation(K, pres, gens, target)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    caps = {
        "max_elements": _cap(doc, "max_elements", 10000),
        "max_order": _cap(doc, "max_order", 10000),
    }
    projective = doc.get("projective", False)
    if not isinstance(projective, bool):
        raise SpecError("projective must be a boolean")
    return rho, caps, projective


def _cap(doc, key, default):
    v = doc.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise SpecError(f"{key} must be a positive integer")
    return v


def conjugation_from_spec(doc: dict):
    """(sigma generator matrices, tau layer stacks, m) over a number field."""
    m = doc.get("m")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise SpecError("conjugation spec needs an integer m >= 1")
    K = number_field_from_spec(doc.get("field"))
    sigma_doc = doc.get("sigma")
    tau_doc = doc.get("tau")
    if not isinstance(sigma_doc, list) or not sigma_doc:
        raise SpecError('conjugation spec needs "sigma" generator matrices')
    if not isinstance(tau_doc, list) or len(tau_doc) != len(sigma_doc):
        raise SpecError('"tau" must list one layer stack per sigma generator')
    sigma = [parse_nf_matrix(rows, K) for rows in sigma_doc]
    tau = []
    for stack in tau_doc:
        if not isinstance(stack, list) or not stack:
            raise SpecError("each tau entry must be a list of layer matrices")
        tau.append([parse_nf_matrix(rows, K, size=sigma[0].nrows)
                    for rows in stack])
    return sigma, tau, m


# ---------------------------------------------------------------------------
# report assembly


def ratfunc_matrix_strs(M: Matrix) -> list[list[str]]:
    return [[e.to_str() for e in r] for r in M.rows]


def nf_matrix_coords(M: Matrix) -> list[list[list[str]]]:
    return [[nf_element_coords(e) for e in r] for r in M.rows]


def make_report(command: list[str], results: dict, started: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "command": list(command),
        "results": results,
        "timing_ms": int((time.monotonic() - started) * 1000),
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)

"""File formats and wire forms.

Polynomial wire form (used by every file format): a list of monomials

    [{"coeff": "-3/2", "vars": {"d": 2, "l1": 1}}, ...]

The coefficient string is the canonical reduced fraction ("3", "-3/2";
"3/1" and "2/4" are rejected), exponents are >= 1, and the empty list is
the zero polynomial.  Emission is canonical (monomials sorted), so a
canonical file round-trips byte-identically.  Wherever a polynomial is
expected, a compact expression string such as "l1*d^2 - 3/2" is accepted
as an alternative input form and normalized to the wire form on output.

JSON objects reject duplicate keys, and every format rejects unknown
fields.  Syntax errors carry line/column positions (from the JSON
decoder); semantic errors carry the JSON path of the offending value.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra import ConformalEndo, Superalgebra, Vector
from .exactmath import L1, Poly

_COEFF_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")
_VAR_RE = re.compile(r"^[a-z][a-z0-9]*$")


class ParseError(ValueError):
    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def _no_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise ParseError(f"duplicate key {key!r}")
        out[key] = value
    return out


def load_json(text: str):
    try:
        return json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _expect_keys(obj: dict, required, optional=(), path: str = ""):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path)
    for key in obj:
        if key not in required and key not in optional:
            raise ParseError(f"unknown field {key!r}", path)
    for key in required:
        if key not in obj:
            raise ParseError(f"missing field {key!r}", path)


# ---------------------------------------------------------------------------
# Polynomial wire form
# ---------------------------------------------------------------------------


def coeff_to_string(c: Fraction) -> str:
    return str(c)


def coeff_from_string(s: str, path: str = "") -> Fraction:
    if not isinstance(s, str):
        raise ParseError("coefficient must be a string", path)
    m = _COEFF_RE.match(s)
    if not m:
        raise ParseError(f"malformed rational {s!r}", path)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {s!r}", path)
    value = Fraction(num, den)
    if coeff_to_string(value) != s:
        raise ParseError(f"non-canonical rational {s!r} (expected {value})", path)
    return value


def poly_to_wire(p: Poly) -> list:
    out = []
    for mono, coeff in p.sorted_terms():
        out.append(
            {"coeff": coeff_to_string(coeff), "vars": {v: e for v, e in mono}}
        )
    return out


def poly_from_wire(data, path: str = "") -> Poly:
    if isinstance(data, str):
        try:
            return parse_poly_expr(data)
        except ParseError as exc:
            raise ParseError(str(exc), path) from None
    if not isinstance(data, list):
        raise ParseError("expected a monomial list or expression string", path)
    terms = {}
    for idx, entry in enumerate(data):
        here = f"{path}[{idx}]"
        _expect_keys(entry, ("coeff", "vars"), path=here)
        coeff = coeff_from_string(entry["coeff"], f"{here}.coeff")
        if coeff == 0:
            raise ParseError("zero coefficients must be omitted", here)
        vars_obj = entry["vars"]
        if not isinstance(vars_obj, dict):
            raise ParseError("'vars' must be an object", here)
        mono = []
        for var, exp in vars_obj.items():
            if not _VAR_RE.match(var):
                raise ParseError(f"invalid variable name {var!r}", here)
            if not isinstance(exp, int) or exp < 1:
                raise ParseError(
                    f"exponent of {var!r} must be an integer >= 1", here
                )
            mono.append((var, exp))
        key = tuple(sorted(mono))
        if key in terms:
            raise ParseError("repeated monomial", here)
        terms[key] = coeff
    return Poly(terms)


# ---------------------------------------------------------------------------
# Compact expression syntax:  l1*d^2 - 3/2*t + 1
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[a-z][a-z0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos}: {text[pos:]!r}")
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    return tokens


def parse_poly_expr(text: str) -> Poly:
    """Parse the compact polynomial syntax (+, -, *, ^, parentheses, p/q)."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_expr() -> Poly:
        sign = 1
        kind, value = peek()
        if (kind, value) == ("op", "-"):
            take()
            sign = -1
        elif (kind, value) == ("op", "+"):
            take()
        total = parse_term() * sign
        while True:
            kind, value = peek()
            if (kind, value) == ("op", "+"):
                take()
                total = total + parse_term()
            elif (kind, value) == ("op", "-"):
                take()
                total = total - parse_term()
            else:
                return total

    def parse_term() -> Poly:
        out = parse_factor()
        while peek() == ("op", "*"):
            take()
            out = out * parse_factor()
        return out

    def parse_factor() -> Poly:
        base = parse_atom()
        if peek() == ("op", "^"):
            take()
            kind, value = take() if pos < len(tokens) else (None, None)
            if kind != "num" or "/" in value:
                raise ParseError("exponent must be a nonnegative integer")
            return base ** int(value)
        return base

    def parse_atom() -> Poly:
        kind, value = peek()
        if kind is None:
            raise ParseError("unexpected end of expression")
        if (kind, value) == ("op", "-"):
            take()
            return -parse_atom()
        if (kind, value) == ("op", "("):
            take()
            inner = parse_expr()
            if take() != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return inner
        take()
        if kind == "num":
            try:
                return Poly.const(Fraction(value))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {value!r}") from None
        if kind == "name":
            return Poly.var(value)
        raise ParseError(f"unexpected token {value!r}")

    result = parse_expr()
    if pos != len(tokens):
        raise ParseError(f"trailing tokens: {tokens[pos:]!r}")
    return result


# ---------------------------------------------------------------------------
# Basis-indexed values
# ---------------------------------------------------------------------------


def vector_to_wire(names, v: Vector) -> list:
    return [
        {"target": names[i], "poly": poly_to_wire(c)} for i, c in v.items()
    ]


def vector_from_wire(names, data, path: str = "") -> Vector:
    if not isinstance(data, list):
        raise ParseError("expected a list of {target, poly} entries", path)
    index = {name: i for i, name in enumerate(names)}
    coeffs = {}
    for idx, entry in enumerate(data):
        here = f"{path}[{idx}]"
        _expect_keys(entry, ("target", "poly"), path=here)
        target = entry["target"]
        if target not in index:
            raise ParseError(f"unknown target {target!r}", here)
        if index[target] in coeffs:
            raise ParseError(f"repeated target {target!r}", here)
        coeffs[index[target]] = poly_from_wire(entry["poly"], f"{here}.poly")
    return Vector(coeffs)


def matrix_from_wire(data, size: int, path: str = "") -> list:
    if not isinstance(data, list) or len(data) != size:
        raise ParseError(f"expected a {size}x{size} matrix", path)
    out = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != size:
            raise ParseError(f"expected a {size}x{size} matrix", f"{path}[{i}]")
        out.append(
            [poly_from_wire(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)]
        )
    return out


def matrix_to_wire(matrix) -> list:
    return [[poly_to_wire(x) for x in row] for row in matrix]


def _parse_basis(data, path: str) -> list:
    if not isinstance(data, list):
        raise ParseError("expected a list of basis entries", path)
    basis = []
    for idx, entry in enumerate(data):
        here = f"{path}[{idx}]"
        _expect_keys(entry, ("name", "parity"), path=here)
        name = entry["name"]
        parity = entry["parity"]
        if not isinstance(name, str) or not name:
            raise ParseError("basis name must be a nonempty string", here)
        if parity not in (0, 1):
            raise ParseError("parity must be 0 or 1", here)
        basis.append((name, parity))
    return basis


def _parse_pair_key(key: str, index: dict, path: str):
    parts = key.split("|")
    if len(parts) != 2:
        raise ParseError(f"bracket key must be 'left|right', got {key!r}", path)
    for part in parts:
        if part not in index:
            raise ParseError(f"unknown basis name {part!r}", path)
    return index[parts[0]], index[parts[1]]


# ---------------------------------------------------------------------------
# Algebra definition files
# ---------------------------------------------------------------------------


def algebra_from_json(data, name: str = "algebra") -> Superalgebra:
    _expect_keys(
        data, ("delta", "basis", "alpha", "brackets"), optional=("scalar_params",)
    )
    if data["delta"] not in (1, -1):
        raise ParseError("delta must be 1 or -1", "delta")
    basis = _parse_basis(data["basis"], "basis")
    index = {nm: i for i, (nm, _) in enumerate(basis)}
    if len(index) != len(basis):
        raise ParseError("duplicate basis names", "basis")
    params = data.get("scalar_params", [])
    if not isinstance(params, list) or not all(
        isinstance(p, str) and _VAR_RE.match(p) for p in params
    ):
        raise ParseError("scalar_params must be a list of variable names", "scalar_params")
    alpha = matrix_from_wire(data["alpha"], len(basis), "alpha")
    if not isinstance(data["brackets"], dict):
        raise ParseError("expected an object", "brackets")
    brackets = {}
    for key, entries in data["brackets"].items():
        pair = _parse_pair_key(key, index, f"brackets.{key}")
        value = vector_from_wire(
            [nm for nm, _ in basis], entries, f"brackets.{key}"
        )
        brackets[pair] = value
    try:
        return Superalgebra(
            delta=data["delta"],
            basis=basis,
            alpha=alpha,
            brackets=brackets,
            scalar_params=params,
            name=name,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def algebra_to_json(A: Superalgebra) -> dict:
    return {
        "delta": A.delta,
        "scalar_params": sorted(A.scalar_params),
        "basis": [
            {"name": nm, "parity": p} for nm, p in zip(A.names, A.parities)
        ],
        "alpha": matrix_to_wire(A.alpha),
        "brackets": {
            f"{A.names[i]}|{A.names[j]}": vector_to_wire(A.names, value)
            for (i, j), value in sorted(A.brackets.items())
        },
    }


def load_algebra_file(path: str) -> Superalgebra:
    with open(path, "r", encoding="utf-8") as handle:
        data = load_json(handle.read())
    return algebra_from_json(data, name=path)


# ---------------------------------------------------------------------------
# Representation files
# ---------------------------------------------------------------------------


def representation_from_json(data, A: Superalgebra):
    from .representation import Representation

    _expect_keys(data, ("module_basis", "beta", "rho"))
    module_basis = _parse_basis(data["module_basis"], "module_basis")
    m = len(module_basis)
    beta = matrix_from_wire(data["beta"], m, "beta")
    if not isinstance(data["rho"], dict):
        raise ParseError("expected an object", "rho")
    rho = {}
    for key, mat in data["rho"].items():
        if key not in A.names:
            raise ParseError(f"unknown algebra generator {key!r}", "rho")
        rho[A.index(key)] = matrix_from_wire(mat, m, f"rho.{key}")
    try:
        return Representation(A, module_basis=module_basis, beta=beta, rho=rho)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def representation_to_json(R) -> dict:
    return {
        "module_basis": [
            {"name": nm, "parity": p}
            for nm, p in zip(R.module_names, R.module_parities)
        ],
        "beta": matrix_to_wire(R.beta),
        "rho": {
            R.algebra.names[i]: matrix_to_wire(R.rho_matrix(i))
            for i in range(R.algebra.dim)
            if any(not e.is_zero for row in R.rho_matrix(i) for e in row)
        },
    }


def load_representation_file(path: str, A: Superalgebra):
    with open(path, "r", encoding="utf-8") as handle:
        data = load_json(handle.read())
    return representation_from_json(data, A)


# ---------------------------------------------------------------------------
# Cochain files
# ---------------------------------------------------------------------------


def cochain_from_json(data, A: Superalgebra, R):
    from .cohomology import Cochain

    _expect_keys(data, ("arity", "parity", "values"))
    arity = data["arity"]
    if arity not in (0, 1, 2, 3):
        raise ParseError("arity must be 0..3", "arity")
    if data["parity"] not in (0, 1):
        raise ParseError("parity must be 0 or 1", "parity")
    if not isinstance(data["values"], dict):
        raise ParseError("expected an object", "values")
    index = {nm: i for i, nm in enumerate(A.names)}
    values = {}
    for key, entries in data["values"].items():
        here = f"values.{key}"
        names = key.split("|") if key else []
        if len(names) != arity:
            raise ParseError(f"key has {len(names)} names, arity is {arity}", here)
        try:
            tup = tuple(index[nm] for nm in names)
        except KeyError as exc:
            raise ParseError(f"unknown basis name {exc.args[0]!r}", here) from None
        if tuple(sorted(tup)) != tup:
            raise ParseError("store values on sorted index tuples only", here)
        if tup in values:
            raise ParseError("repeated tuple", here)
        values[tup] = vector_from_wire(R.module_names, entries, here)
    try:
        return Cochain.build(A, R, arity, data["parity"], values)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def cochain_to_json(A: Superalgebra, R, gamma) -> dict:
    return {
        "arity": gamma.arity,
        "parity": gamma.parity,
        "values": {
            "|".join(A.names[i] for i in tup): vector_to_wire(R.module_names, value)
            for tup, value in sorted(gamma.values.items())
        },
    }


def load_cochain_file(path: str, A: Superalgebra, R):
    with open(path, "r", encoding="utf-8") as handle:
        data = load_json(handle.read())
    return cochain_from_json(data, A, R)


# ---------------------------------------------------------------------------
# Operator (matrix) files: Nijenhuis candidates, derivation candidates, twists
# ---------------------------------------------------------------------------


def endo_from_json(data, A: Superalgebra, default_var: str = L1):
    _expect_keys(data, ("entries",), optional=("parity", "k", "var"))
    parity = data.get("parity", 0)
    if parity not in (0, 1):
        raise ParseError("parity must be 0 or 1", "parity")
    var = data.get("var", default_var)
    if not isinstance(var, str) or not _VAR_RE.match(var):
        raise ParseError("var must be a variable name", "var")
    entries = matrix_from_wire(data["entries"], A.dim, "entries")
    endo = ConformalEndo.from_rows(entries, parity=parity, var=var)
    k = data.get("k")
    if k is not None and (not isinstance(k, int) or k < 0):
        raise ParseError("k must be a nonnegative integer", "k")
    return endo, k


def endo_to_json(endo: ConformalEndo, k: int | None = None) -> dict:
    out = {
        "parity": endo.parity,
        "var": endo.var,
        "entries": matrix_to_wire(endo.matrix()),
    }
    if k is not None:
        out["k"] = k
    return out


def load_endo_file(path: str, A: Superalgebra):
    with open(path, "r", encoding="utf-8") as handle:
        data = load_json(handle.read())
    return endo_from_json(data, A)


# ---------------------------------------------------------------------------
# Associative lambda-product files (commutator-construction input)
# ---------------------------------------------------------------------------


def homassoc_from_json(data, name: str = "assoc"):
    from .constructions import HomAssocConformal

    _expect_keys(data, ("delta", "basis", "alpha", "products"))
    if data["delta"] not in (1, -1):
        raise ParseError("delta must be 1 or -1", "delta")
    basis = _parse_basis(data["basis"], "basis")
    index = {nm: i for i, (nm, _) in enumerate(basis)}
    alpha = matrix_from_wire(data["alpha"], len(basis), "alpha")
    if not isinstance(data["products"], dict):
        raise ParseError("expected an object", "products")
    products = {}
    for key, entries in data["products"].items():
        pair = _parse_pair_key(key, index, f"products.{key}")
        products[pair] = vector_from_wire(
            [nm for nm, _ in basis], entries, f"products.{key}"
        )
    try:
        return HomAssocConformal(
            delta=data["delta"], basis=basis, alpha=alpha, products=products, name=name
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_homassoc_file(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        data = load_json(handle.read())
    return homassoc_from_json(data, name=path)


# ---------------------------------------------------------------------------
# Finite-dimensional superalgebra files (current-algebra input)
# ---------------------------------------------------------------------------


def jordan_superalgebra_from_json(data, name: str = "g"):
    from .constructions import JordanLieSuperalgebra

    _expect_keys(data, ("delta", "basis", "alpha", "brackets"))
    if data["delta"] not in (1, -1):
        raise ParseError("delta must be 1 or -1", "delta")
    basis = _parse_basis(data["basis"], "basis")
    index = {nm: i for i, (nm, _) in enumerate(basis)}
    n = len(basis)
    alpha_raw = data["alpha"]
    if not isinstance(alpha_raw, list) or len(alpha_raw) != n:
        raise ParseError(f"expected a {n}x{n} matrix", "alpha")
    alpha = []
    for i, row in enumerate(alpha_raw):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"expected a {n}x{n} matrix", f"alpha[{i}]")
        alpha.append(
            [coeff_from_string(x, f"alpha[{i}][{j}]") for j, x in enumerate(row)]
        )
    if not isinstance(data["brackets"], dict):
        raise ParseError("expected an object", "brackets")
    brackets = {}
    for key, entries in data["brackets"].items():
        pair = _parse_pair_key(key, index, f"brackets.{key}")
        if not isinstance(entries, list):
            raise ParseError("expected a list", f"brackets.{key}")
        coeffs = {}
        for idx, entry in enumerate(entries):
            here = f"brackets.{key}[{idx}]"
            _expect_keys(entry, ("target", "coeff"), path=here)
            if entry["target"] not in index:
                raise ParseError(f"unknown target {entry['target']!r}", here)
            coeffs[index[entry["target"]]] = coeff_from_string(
                entry["coeff"], f"{here}.coeff"
            )
        brackets[pair] = coeffs
    try:
        return JordanLieSuperalgebra(
            delta=data["delta"], basis=basis, alpha=alpha, brackets=brackets, name=name
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_jordan_superalgebra_file(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        data = load_json(handle.read())
    return jordan_superalgebra_from_json(data, name=path)


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False)

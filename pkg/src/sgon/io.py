"""JSON file formats for lattices and planar points, plus bundled fixtures."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import ParseError, SchemaError
from .exact_arith import DEFAULT_SYMBOLS, SymbolBasis
from .planar import Tau
from .sparse_core import LatticeBasis


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ParseError(f"{path}: no such file") from exc
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: cannot read ({exc})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def lattice_from_json(obj: Any) -> LatticeBasis:
    if not isinstance(obj, dict):
        raise SchemaError("lattice file must hold a JSON object")
    syms = obj.get("symbols")
    matrix = obj.get("matrix")
    if not isinstance(syms, list) or not syms or not isinstance(matrix, list):
        raise SchemaError("lattice object needs 'symbols' (nonempty list) and 'matrix'")
    names, approx = [], {}
    for s in syms:
        if not isinstance(s, dict) or not isinstance(s.get("name"), str):
            raise SchemaError(f"bad symbol entry {s!r}")
        names.append(s["name"])
        if "approx" in s:
            approx[s["name"]] = str(s["approx"])
        elif s["name"] not in DEFAULT_SYMBOLS:
            raise SchemaError(f"symbol {s['name']!r} needs an 'approx' string")
    basis = SymbolBasis.from_names(names, approx)
    order = [basis.index(nm) for nm in names]  # file column -> basis position
    n = obj.get("n", len(matrix))
    if not isinstance(n, int) or n != len(matrix):
        raise SchemaError(f"'n' = {n!r} does not match {len(matrix)} matrix rows")
    rows = []
    for r, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"matrix row {r} must have {n} entries")
        out = []
        for c, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != len(names):
                raise SchemaError(f"entry ({r},{c}) must list {len(names)} coefficients")
            coeffs = ["0"] * basis.size
            for pos, val in zip(order, entry):
                if not isinstance(val, (str, int)):
                    raise SchemaError(f"entry ({r},{c}): coefficient {val!r} is not a rational string")
                coeffs[pos] = val
            out.append(coeffs)
        rows.append(out)
    return LatticeBasis.from_coeffs(basis, rows)


def lattice_to_json(A: LatticeBasis) -> dict:
    return {
        "symbols": [{"name": nm, "approx": ap} for nm, ap in zip(A.symbols.names, A.symbols.approx)],
        "n": A.n,
        "matrix": [[x.to_strings() for x in row] for row in A.matrix],
    }


def parse_lattice_file(path: str | Path) -> LatticeBasis:
    return lattice_from_json(load_json(path))


def parse_tau_file(path: str | Path) -> Tau:
    obj = load_json(path)
    if not isinstance(obj, dict):
        raise SchemaError("tau file must hold a JSON object")
    return Tau.from_json(obj)


def fixture_path(name: str) -> Path:
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("sgon") / "fixtures" / name))


def fixture_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files("sgon").joinpath("fixtures").iterdir()
                  if p.name.endswith(".json"))


def load_lattice_fixture(name: str) -> LatticeBasis:
    return parse_lattice_file(fixture_path(name))


def load_tau_fixture(name: str) -> Tau:
    return parse_tau_file(fixture_path(name))


def dumps(obj: Any) -> str:
    """Deterministic JSON rendering."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

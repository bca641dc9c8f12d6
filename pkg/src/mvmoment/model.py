"""Action descriptors: the finite data attached to a symplectic torus action.

A model lists orbit-type strata (stabilizer lattice, isotropy weights, one
momentum value), a period matrix over a basis of H_1, and a symbol table for
the irrational numbers appearing in the periods.

Contracts the data author owns (none of these can be checked here):

* declared symbols are linearly independent over Q;
* weight signs already reflect the orientation given by the symplectic form;
* momentum anchors of different strata are values of one common lift of the
  momentum map to the covering, so they are comparable with each other.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .exactalg import ExtScalar, is_primitive, rank
from .weyl import RootSystem, root_system_problems


class ModelError(ValueError):
    pass


class ModelParseError(ModelError):
    pass


class ModelValidationError(ModelError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"model is invalid: {lines}")


@dataclass(frozen=True)
class StratumDatum:
    label: str
    stabilizer_basis: tuple[tuple[int, ...], ...]
    weights: tuple[tuple[int, ...], ...]
    r_p: int
    momentum_anchor: tuple[Fraction, ...]

    @property
    def n_p(self) -> int:
        return len(self.stabilizer_basis)

    def is_fixed_point(self, n: int) -> bool:
        return self.n_p == n


@dataclass(frozen=True)
class ActionModel:
    torus_dim: int
    half_dim: int
    betti1: int
    symbols: tuple[str, ...]
    strata: tuple[StratumDatum, ...]
    periods: tuple[tuple[ExtScalar, ...], ...]
    complete_strata: bool
    root_system: RootSystem | None = None

    def stratum(self, label: str) -> StratumDatum:
        for s in self.strata:
            if s.label == label:
                return s
        raise KeyError(label)

    def has_periods(self) -> bool:
        return any(not x.is_zero() for row in self.periods for x in row)


@dataclass(frozen=True)
class Violation:
    stratum: str | None
    constraint: str
    message: str

    def __str__(self):
        where = f"[{self.stratum}] " if self.stratum is not None else ""
        return f"{where}{self.constraint}: {self.message}"


def stratum_violations(s: StratumDatum, n: int, half_dim: int) -> list[Violation]:
    out = []

    def bad(constraint, message):
        out.append(Violation(s.label, constraint, message))

    n_p = s.n_p
    if n_p > n:
        bad("stabilizer dimension", f"{n_p} stabilizer rows exceed torus dimension {n}")
    rows_ok = all(len(row) == n for row in s.stabilizer_basis)
    if not rows_ok:
        bad("stabilizer dimension", f"stabilizer rows must have length {n}")
    elif n_p <= n and not is_primitive(s.stabilizer_basis, n):
        if rank(s.stabilizer_basis, n) < n_p:
            bad("stabilizer primitivity", "stabilizer rows are linearly dependent")
        else:
            bad("stabilizer primitivity", "stabilizer rows do not span a direct summand of Z^n")
    m_p = n - n_p
    if s.r_p < 0 or 2 * s.r_p > m_p:
        bad("rank bound", f"need 0 <= 2*r_p <= m_p, got r_p={s.r_p}, m_p={m_p}")
    expected = half_dim - m_p + s.r_p
    if len(s.weights) != expected:
        bad("weight count", f"expected N - m_p + r_p = {expected} weights, got {len(s.weights)}")
    if any(len(w) != n_p for w in s.weights):
        bad("weight dimension", f"weights must have length n_p = {n_p}")
    if len(s.momentum_anchor) != n:
        bad("anchor dimension", f"momentum anchor must have length {n}")
    return out


def validate(m: ActionModel) -> list[Violation]:
    """All broken invariants of the model; an empty list means valid."""
    out: list[Violation] = []
    n = m.torus_dim
    for name, value in (("torus_dim", m.torus_dim), ("half_dim", m.half_dim), ("betti1", m.betti1)):
        if value < 0:
            out.append(Violation(None, "dimension", f"{name} must be nonnegative"))
    if not m.symbols or m.symbols[0] != "1":
        out.append(Violation(None, "symbol table", 'symbol 0 must be "1"'))
    if len(set(m.symbols)) != len(m.symbols):
        out.append(Violation(None, "symbol table", "duplicate symbol names"))
    labels = [s.label for s in m.strata]
    for lab in sorted({x for x in labels if labels.count(x) > 1}):
        out.append(Violation(lab, "duplicate label", "stratum label used more than once"))
    if n >= 0 and m.half_dim >= 0:
        for s in m.strata:
            out.extend(stratum_violations(s, n, m.half_dim))
    if len(m.periods) != m.betti1 or any(len(row) != n for row in m.periods):
        out.append(Violation(None, "period shape", f"periods must be betti1 x torus_dim = {m.betti1} x {n}"))
    for j, row in enumerate(m.periods):
        for i, x in enumerate(row):
            if x.terms and x.max_index() >= len(m.symbols):
                out.append(Violation(None, "undeclared symbol", f"period ({j},{i}) uses symbol {x.max_index()}"))
    if m.root_system is not None:
        for msg in root_system_problems(m.root_system):
            out.append(Violation(None, "root system", msg))
    return out


# ---------------------------------------------------------------------------
# JSON document format

_TOP = ("torus_dim", "half_dim", "betti1", "symbols", "strata", "periods", "complete_strata")
_STRATUM = ("label", "stabilizer_basis", "weights", "r_p", "momentum_anchor")


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise ModelParseError(f"expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ModelParseError(f"bad rational {x!r}") from None
    raise ModelParseError(f"expected a rational string, got {x!r}")


def format_rational(x) -> str:
    return str(Fraction(x))


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ModelParseError(f"{what} must be an integer")
    return x


def _int_rows(x: Any, what: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(x, list) or not all(isinstance(row, list) for row in x):
        raise ModelParseError(f"{what} must be a list of integer lists")
    return tuple(tuple(_int(v, what) for v in row) for row in x)


def _object(x: Any, keys: tuple[str, ...], optional: tuple[str, ...], what: str) -> dict:
    if not isinstance(x, dict):
        raise ModelParseError(f"{what} must be an object")
    unknown = set(x) - set(keys) - set(optional)
    if unknown:
        raise ModelParseError(f"unknown field(s) in {what}: {', '.join(sorted(unknown))}")
    missing = [k for k in keys if k not in x]
    if missing:
        raise ModelParseError(f"missing field(s) in {what}: {', '.join(missing)}")
    return x


def parse_ext_scalar(x: Any) -> ExtScalar:
    if not isinstance(x, list):
        raise ModelParseError("an extended scalar is a list of [coefficient, symbol_index] pairs")
    terms = []
    for pair in x:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ModelParseError("an extended scalar term is a [coefficient, symbol_index] pair")
        idx = _int(pair[1], "symbol index")
        if idx < 0:
            raise ModelParseError("symbol index must be nonnegative")
        terms.append((idx, parse_rational(pair[0])))
    return ExtScalar(terms)


def model_from_dict(doc: Any) -> ActionModel:
    d = _object(doc, _TOP, ("root_system",), "model")
    symbols = d["symbols"]
    if not isinstance(symbols, list) or not all(isinstance(s, str) for s in symbols):
        raise ModelParseError("symbols must be a list of strings")
    strata_doc = d["strata"]
    if not isinstance(strata_doc, list):
        raise ModelParseError("strata must be a list")
    strata = []
    for i, sd in enumerate(strata_doc):
        sd = _object(sd, _STRATUM, (), f"stratum {i}")
        if not isinstance(sd["label"], str):
            raise ModelParseError(f"stratum {i}: label must be a string")
        anchor = sd["momentum_anchor"]
        if not isinstance(anchor, list):
            raise ModelParseError(f"stratum {i}: momentum_anchor must be a list")
        strata.append(
            StratumDatum(
                label=sd["label"],
                stabilizer_basis=_int_rows(sd["stabilizer_basis"], "stabilizer_basis"),
                weights=_int_rows(sd["weights"], "weights"),
                r_p=_int(sd["r_p"], "r_p"),
                momentum_anchor=tuple(parse_rational(x) for x in anchor),
            )
        )
    periods = d["periods"]
    if not isinstance(periods, list) or not all(isinstance(row, list) for row in periods):
        raise ModelParseError("periods must be a list of rows")
    if not isinstance(d["complete_strata"], bool):
        raise ModelParseError("complete_strata must be a boolean")
    root_system = None
    if d.get("root_system") is not None:
        rs = _object(d["root_system"], ("simple_roots",), ("coroots",), "root_system")
        roots = _int_rows(rs["simple_roots"], "simple_roots")
        if "coroots" in rs:
            coroots = _int_rows(rs["coroots"], "coroots")
        else:
            coroots = tuple(tuple(int(i == j) for j in range(len(roots))) for i in range(len(roots)))
        root_system = RootSystem(roots, coroots)
    return ActionModel(
        torus_dim=_int(d["torus_dim"], "torus_dim"),
        half_dim=_int(d["half_dim"], "half_dim"),
        betti1=_int(d["betti1"], "betti1"),
        symbols=tuple(symbols),
        strata=tuple(strata),
        periods=tuple(tuple(parse_ext_scalar(x) for x in row) for row in periods),
        complete_strata=d["complete_strata"],
        root_system=root_system,
    )


def load(document: bytes | str, force: bool = False) -> ActionModel:
    """Parse and validate a model document; ``force`` skips the validation gate."""
    try:
        doc = json.loads(document)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelParseError(f"malformed document: {exc}") from None
    model = model_from_dict(doc)
    if not force:
        violations = validate(model)
        if violations:
            raise ModelValidationError(violations)
    return model


def load_file(path, force: bool = False) -> ActionModel:
    with open(path, "rb") as fh:
        return load(fh.read(), force=force)


def ext_to_json(x: ExtScalar) -> list:
    return [[format_rational(c), k] for k, c in x.terms]


def model_to_dict(m: ActionModel) -> dict:
    doc = {
        "torus_dim": m.torus_dim,
        "half_dim": m.half_dim,
        "betti1": m.betti1,
        "symbols": list(m.symbols),
        "strata": [
            {
                "label": s.label,
                "stabilizer_basis": [list(r) for r in s.stabilizer_basis],
                "weights": [list(w) for w in s.weights],
                "r_p": s.r_p,
                "momentum_anchor": [format_rational(x) for x in s.momentum_anchor],
            }
            for s in m.strata
        ],
        "periods": [[ext_to_json(x) for x in row] for row in m.periods],
        "complete_strata": m.complete_strata,
    }
    if m.root_system is not None:
        rs = m.root_system
        default = tuple(tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank))
        doc["root_system"] = {"simple_roots": [list(a) for a in rs.simple_roots]}
        if rs.coroots != default:
            doc["root_system"]["coroots"] = [list(a) for a in rs.coroots]
    return doc


def save(m: ActionModel) -> bytes:
    return (json.dumps(model_to_dict(m), indent=2) + "\n").encode()

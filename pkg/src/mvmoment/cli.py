"""Command-line front end.

Every subcommand writes exactly one JSON document to stdout (sorted keys,
rationals as "p/q" strings) and a short human summary to stderr unless
``--quiet`` is given.

Exit codes: 0 success, 1 usage or internal error, 2 the input failed
validation or a consistency check.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources

from .exactalg import ExtScalar, smith_normal_form
from .geometry import Cone, GeometryError, PolySet, Polytope, convex_hull
from .model import (
    ActionModel,
    ModelError,
    ModelParseError,
    ModelValidationError,
    ext_to_json,
    format_rational,
    load,
    model_from_dict,
    parse_rational,
    validate,
)
from .momentum import (
    IncompleteStrataError,
    InconsistentModelError,
    PreconditionError,
    Report,
    check_degree_bounds,
    check_effective,
    deck_vectors,
    embedded_weights,
    exact_subalgebra,
    generic_degree_and_kernel,
    half_dim_hamiltonian,
    momentum_image,
    rationality_degree,
    verify_local_global,
)
from .stability import (
    ClosureError,
    EdgeLengthAssignment,
    IncomparableModelsError,
    fans_equal,
    reassign_edge_lengths,
    stability_status,
    te_stable,
)
from .weyl import ChamberMissError, RootSystemError, cross_section_image, weyl_chamber


class UsageError(Exception):
    pass


class Failure(Exception):
    """Input rejected on mathematical grounds (exit 2); ``doc`` goes to stdout."""

    def __init__(self, message: str, doc: dict | None = None):
        super().__init__(message)
        self.doc = doc if doc is not None else {"error": message}


# ---------------------------------------------------------------------------
# file resolution and JSON rendering


def resolve(path: str) -> str:
    """An existing path as given, else a file of that name from the bundled corpus."""
    if os.path.exists(path):
        return path
    name = os.path.basename(path)
    corpus = resources.files("mvmoment") / "corpus"
    for candidate in (name, name + ".json", name + ".polytope.json"):
        entry = corpus / candidate
        if entry.is_file():
            return str(entry)
    raise UsageError(f"no such file: {path}")


def _read(path: str) -> bytes:
    with open(resolve(path), "rb") as fh:
        return fh.read()


def read_model(path: str) -> ActionModel:
    return load(_read(path))


def read_polytope(path: str) -> Polytope:
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"malformed polytope file: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"vertices"} or not isinstance(doc["vertices"], list):
        raise ModelParseError('a polytope file is {"vertices": [[...], ...]}')
    rows = doc["vertices"]
    if not rows or not all(isinstance(r, list) for r in rows):
        raise ModelParseError("vertices must be a nonempty list of coordinate lists")
    return convex_hull([tuple(parse_rational(x) for x in r) for r in rows])


def q(x) -> str:
    return format_rational(x)


def vec(v) -> list:
    return [q(x) for x in v]


def ext(x: ExtScalar) -> list:
    return ext_to_json(x)


def polytope_json(p: Polytope) -> dict:
    return {
        "ambient_dim": p.ambient_dim,
        "dim": p.dim,
        "vertices": [vec(v) for v in p.vertices],
        "facets": [{"normal": vec(h), "offset": q(c)} for h, c in p.facets],
        "equations": [{"normal": vec(h), "offset": q(c)} for h, c in p.equations],
    }


def polyset_json(s: PolySet) -> dict:
    return {
        "ambient_dim": s.ambient_dim,
        "frame": [vec(r) for r in s.frame],
        "polytope": polytope_json(s.polytope),
        "free_subspace": [vec(r) for r in s.subspace],
    }


def cone_json(c: Cone) -> dict:
    return {
        "ambient_dim": c.ambient_dim,
        "generators": [vec(g) for g in c.generators],
        "lineality": [vec(g) for g in c.lineality],
        "inequalities": [vec(h) for h in c.inequalities],
        "equations": [vec(h) for h in c.equations],
    }


def report_json(r: Report) -> dict:
    return {
        "ok": r.ok,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail, "stratum": c.stratum} for c in r.checks
        ],
    }


def _fmt_report(r: Report) -> str:
    lines = []
    for c in r.checks:
        where = f" [{c.stratum}]" if c.stratum else ""
        lines.append(f"  {'ok  ' if c.passed else 'FAIL'} {c.name}{where} {c.detail}".rstrip())
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands; each returns (document, summary, exit code)


def cmd_validate(args):
    try:
        doc = json.loads(_read(args.model))
        m = model_from_dict(doc)
    except (json.JSONDecodeError, ModelParseError) as exc:
        msg = f"cannot parse model: {exc}"
        return {"valid": False, "violations": [{"stratum": None, "constraint": "format", "message": msg}]}, msg, 2
    violations = validate(m)
    out = {
        "valid": not violations,
        "violations": [{"stratum": v.stratum, "constraint": v.constraint, "message": v.message} for v in violations],
    }
    summary = "model is valid" if not violations else "\n".join(str(v) for v in violations)
    return out, summary, 0 if not violations else 2


def cmd_effective(args):
    m = read_model(args.model)
    try:
        s = m.stratum(args.stratum)
    except KeyError:
        raise UsageError(f"no stratum labelled {args.stratum!r}") from None
    verdict = check_effective(s, m.torus_dim)
    weights = embedded_weights(s, m.torus_dim)
    divisors = smith_normal_form(weights, m.torus_dim).divisors() if weights else []
    out = {
        "stratum": s.label,
        "effective": verdict,
        "weights": [list(w) for w in weights],
        "elementary_divisors": list(divisors),
    }
    return out, f"{s.label}: weights {'do' if verdict else 'do not'} generate the lattice", 0


def cmd_exact(args):
    m = read_model(args.model)
    te = exact_subalgebra(m)
    degree, kernel = generic_degree_and_kernel(m)
    n = m.torus_dim
    rat = [rationality_degree(tuple(int(i == j) for j in range(n)), m) for i in range(n)]
    deck = deck_vectors(m, te)
    out = {
        "t_e": [list(b) for b in te.basis],
        "t_c": [list(b) for b in te.complement_basis],
        "rationality_degrees": rat,
        "generic_degree": degree,
        "deck_rank": degree,
        "period_kernel": [list(k) for k in kernel],
        "deck_vectors": [[ext(x) for x in row] for row in deck],
    }
    summary = f"dim t_e = {te.dim}, dim t_c = {len(te.complement_basis)}, generic degree {degree}"
    return out, summary, 0


def cmd_image(args):
    m = read_model(args.model)
    img = momentum_image(m)
    out = {
        "image": polyset_json(img.image),
        "t_e": [list(b) for b in img.exact.basis],
        "t_c": [list(b) for b in img.exact.complement_basis],
        "deck_vectors": [[ext(x) for x in row] for row in img.deck_vectors],
        "vertex_witnesses": [{"vertex": vec(v), "stratum": lab} for v, lab in img.vertex_witnesses.items()],
    }
    p = img.polytope
    summary = f"image: {len(p.vertices)} vertices, {len(p.facets)} facets, {len(img.image.subspace)} free directions"
    code = 0
    if args.check:
        local = verify_local_global(m, img)
        bounds = check_degree_bounds(m)
        out["local_global"] = report_json(local)
        out["degree_bounds"] = report_json(bounds)
        out["ok"] = local.ok and bounds.ok
        summary += "\n" + _fmt_report(local) + "\n" + _fmt_report(bounds)
        code = 0 if out["ok"] else 2
    return out, summary, code


def cmd_halfdim(args):
    m = read_model(args.model)
    try:
        v = half_dim_hamiltonian(m)
    except PreconditionError as exc:
        return {"applicable": False, "hamiltonian": None, "reason": str(exc)}, f"not applicable: {exc}", 0
    out = {"applicable": True, "hamiltonian": v.verdict, "certificate": list(v.certificate), "stratum": v.stratum}
    return out, f"Hamiltonian, certified by direction {list(v.certificate)} at {v.stratum}", 0


def cmd_weyl(args):
    m = read_model(args.model)
    if m.root_system is None:
        raise UsageError("model has no root_system")
    full = read_polytope(args.polytope)
    te = exact_subalgebra(m)
    rs = m.root_system
    if full.ambient_dim != rs.dim + te.dim:
        raise UsageError(
            f"polytope must live in dimension {rs.dim + te.dim} (chamber {rs.dim} + t_e {te.dim}), got {full.ambient_dim}"
        )
    chamber = weyl_chamber(rs)
    image = cross_section_image(full, chamber, len(te.complement_basis))
    out = {"chamber": cone_json(chamber), "image": polyset_json(image)}
    return out, f"cross-section with {len(image.polytope.vertices)} vertices", 0


def cmd_stability(args):
    m1, m2 = read_model(args.model1), read_model(args.model2)
    r = te_stable(m1, m2)
    status = stability_status(r)
    out = {"status": status, **report_json(r)}
    return out, f"t_e stability: {status}\n" + _fmt_report(r), 2 if status == "violation" else 0


def cmd_fan_compare(args):
    p1, p2 = read_polytope(args.p1), read_polytope(args.p2)
    same = fans_equal(p1, p2)
    return {"fans_equal": same}, "normal fans agree" if same else "normal fans differ", 0


def cmd_edge_reassign(args):
    p = read_polytope(args.polytope)
    try:
        lengths = tuple(Fraction(x) for x in args.lengths)
    except (ValueError, ZeroDivisionError):
        raise UsageError("lengths must be rationals like 3 or 1/2") from None
    try:
        new = reassign_edge_lengths(EdgeLengthAssignment(p, lengths))
    except ClosureError as exc:
        raise Failure(str(exc), {"error": "closure", "defect": vec(exc.defect)}) from None
    except ValueError as exc:
        if isinstance(exc, GeometryError):
            raise
        raise UsageError(str(exc)) from None
    return {"polytope": polytope_json(new)}, f"new polygon with {len(new.vertices)} vertices", 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="no summary on stderr")
    p = argparse.ArgumentParser(prog="mvmoment", description="Momentum images of symplectic torus actions.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "list violated model invariants").add_argument("model")
    sp = add("effective", cmd_effective, "do the weights at a fixed point generate the lattice")
    sp.add_argument("model")
    sp.add_argument("--stratum", required=True)
    add("exact", cmd_exact, "exact subalgebra, rationality and deck data").add_argument("model")
    sp = add("image", cmd_image, "momentum image")
    sp.add_argument("model")
    sp.add_argument("--check", action="store_true", help="also run local/global and degree checks")
    add("halfdim", cmd_halfdim, "Hamiltonian test for n-tori on 2n-manifolds").add_argument("model")
    sp = add("weyl", cmd_weyl, "clip an image polytope to the Weyl chamber")
    sp.add_argument("model")
    sp.add_argument("--polytope", required=True)
    sp = add("stability", cmd_stability, "compare exact subalgebras of two models")
    sp.add_argument("model1")
    sp.add_argument("model2")
    sp = add("fan-compare", cmd_fan_compare, "compare normal fans of two polytopes")
    sp.add_argument("p1")
    sp.add_argument("p2")
    sp = add("edge-reassign", cmd_edge_reassign, "rebuild a polygon with new edge lengths")
    sp.add_argument("polytope")
    sp.add_argument("--lengths", nargs="+", required=True)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    quiet = args.quiet

    def emit(doc, summary, code):
        stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        if summary and (not quiet or code != 0):
            stderr.write(summary.rstrip() + "\n")
        return code

    try:
        return emit(*args.func(args))
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except (PreconditionError, IncomparableModelsError, RootSystemError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except Failure as exc:
        return emit(exc.doc, f"error: {exc}", 2)
    except ModelValidationError as exc:
        doc = {
            "error": "invalid model",
            "violations": [
                {"stratum": v.stratum, "constraint": v.constraint, "message": v.message} for v in exc.violations
            ],
        }
        return emit(doc, f"error: {exc}", 2)
    except InconsistentModelError as exc:
        return emit({"error": "inconsistent model", "message": str(exc), "stratum": exc.stratum}, f"error: {exc}", 2)
    except (ModelError, IncompleteStrataError, ChamberMissError, ClosureError, GeometryError) as exc:
        return emit({"error": type(exc).__name__, "message": str(exc)}, f"error: {exc}", 2)
    except Exception as exc:  # noqa: BLE001 - last line of defence for a script-facing tool
        stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())

"""Command-line front end: JSON in, classification reports out.

Commands: classify, iso, evolution, aut, der, orbit-test.
Input format: {"msc": [[r,r,r,r],[r,r,r,r]], "tolerance": optional}, either a
single object or a list of them; --input takes a file path or inline JSON.
Exit codes: 0 success, 1 parse error, 2 trivial algebra, 3 undefined
automorphism table, 4 orbit-test failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import classify as _classify
from . import evolution as _evolution
from . import oracle as _oracle
from . import properties as _properties
from .core import DEFAULT_TOL, Tolerances, TrivialAlgebraError, as_msc
from .classify import CanonicalForm, subset_margin
from .evolution import EvolutionClass

__all__ = ["Report", "build_report", "main", "entry", "InputFormatError"]


class InputFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Report:
    """Full classification record for one input algebra."""

    input_echo: np.ndarray
    subset: int
    canonical: CanonicalForm
    flags: _properties.PropertyFlags
    division: _properties.DivisionData
    evolution: Optional[EvolutionClass]
    derivation_dim: int
    margins: dict


def build_report(A, tol: Tolerances = DEFAULT_TOL) -> Report:
    A = as_msc(A)
    subset = _classify.subset_of(A, tol)
    canonical = _classify.canonicalize(A, tol)
    commutative = _properties.is_commutative(A, tol)
    jordan = commutative and _properties.jordan_condition(A, tol)
    division = _properties.division_data(A)
    nat = _evolution.find_natural_basis(A, tol)
    evo = None
    if nat is not None:
        evo = _evolution.classify_evolution(_evolution.natural_form(A, nat, tol), tol)
    flags = _properties.PropertyFlags(
        commutative=commutative,
        jordan=jordan,
        division=_properties.is_division(A, tol),
        evolution=evo is not None,
    )
    return Report(
        input_echo=A,
        subset=subset,
        canonical=canonical,
        flags=flags,
        division=division,
        evolution=evo,
        derivation_dim=_evolution.derivation_dimension(A, tol),
        margins=subset_margin(A),
    )


# ---------------------------------------------------------------------------
# JSON writing with 17-significant-digit floats (exact round trip)


def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("non-finite value in output")
    return f"{x:.17g}"


def dumps17(obj, pretty: bool = False, _indent: int = 0) -> str:
    pad = "  " * (_indent + 1) if pretty else ""
    end = "\n" + "  " * _indent if pretty else ""
    sep = ",\n" + pad if pretty else ", "
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return dumps17(obj.tolist(), pretty, _indent)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = sep.join(dumps17(v, pretty, _indent + 1) for v in obj)
        return ("[\n" + pad if pretty else "[") + inner + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = sep.join(
            f"{json.dumps(str(k))}: {dumps17(v, pretty, _indent + 1)}"
            for k, v in obj.items())
        return ("{\n" + pad if pretty else "{") + inner + end + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _canonical_json(cf: CanonicalForm) -> dict:
    return {
        "label": cf.label,
        "params": list(cf.params),
        "witness": cf.witness,
        "representative": cf.representative,
    }


def report_json(r: Report) -> dict:
    return {
        "msc": r.input_echo,
        "subset": r.subset,
        "canonical": _canonical_json(r.canonical),
        "flags": dataclasses.asdict(r.flags),
        "division": {
            "delta_l": r.division.delta_l,
            "delta_m": r.division.delta_m,
            "delta_r": r.division.delta_r,
            "discriminant": r.division.discriminant,
        },
        "evolution": None if r.evolution is None else {
            "label": r.evolution.label,
            "params": list(r.evolution.params),
        },
        "derivation_dim": r.derivation_dim,
        "margins": r.margins,
    }


# ---------------------------------------------------------------------------
# input parsing


def _load_json(source: str):
    text = source
    stripped = source.lstrip()
    if not (stripped.startswith("{") or stripped.startswith("[")):
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as e:
            raise InputFormatError(f"cannot read input file {source!r}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"malformed JSON: {e}") from e


def _parse_one(obj, default_tol: float) -> tuple[np.ndarray, Tolerances]:
    if not isinstance(obj, dict):
        raise InputFormatError("each input must be an object with field 'msc'")
    if "msc" not in obj:
        raise InputFormatError("missing required field 'msc'")
    raw = obj["msc"]
    try:
        A = as_msc(raw)
    except ValueError as e:
        raise InputFormatError(f"field 'msc': {e}") from e
    tol_val = obj.get("tolerance", default_tol)
    if not isinstance(tol_val, (int, float)) or not np.isfinite(tol_val) or tol_val <= 0:
        raise InputFormatError("field 'tolerance': must be a positive number")
    return A, dataclasses.replace(DEFAULT_TOL, rel_zero=float(tol_val))


def _parse_input(source: str, default_tol: float):
    data = _load_json(source)
    batch = isinstance(data, list)
    items = data if batch else [data]
    return [_parse_one(x, default_tol) for x in items], batch


def _default_tolerance(args) -> float:
    if args.tolerance is not None:
        return args.tolerance
    env = os.environ.get("ALG2D_TOLERANCE")
    if env is not None:
        try:
            val = float(env)
        except ValueError:
            raise InputFormatError("ALG2D_TOLERANCE must be a number")
        if not val > 0:
            raise InputFormatError("ALG2D_TOLERANCE must be positive")
        return val
    return DEFAULT_TOL.rel_zero


def _emit(payload, batch: bool, args) -> None:
    out = payload if batch else payload[0] if isinstance(payload, list) else payload
    print(dumps17(out, pretty=args.pretty))


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    items, batch = _parse_input(args.input, _default_tolerance(args))
    reports = [report_json(build_report(A, tol)) for A, tol in items]
    _emit(reports, batch, args)
    return 0


def cmd_iso(args) -> int:
    default = _default_tolerance(args)
    items_a, _ = _parse_input(args.a, default)
    items_b, _ = _parse_input(args.b, default)
    a, tol = items_a[0]
    b, _ = items_b[0]
    ca = _classify.canonicalize(a, tol)
    cb = _classify.canonicalize(b, tol)
    verdict = _classify.isomorphic(a, b, tol)
    witness = None
    residual = None
    if verdict:
        w = _oracle.brute_iso_search(a, b, budget=args.budget, seed=args.seed, tol=tol)
        if w is not None:
            witness, residual = w.g, w.residual
    _emit({
        "isomorphic": verdict,
        "canonical_a": _canonical_json(ca),
        "canonical_b": _canonical_json(cb),
        "witness": witness,
        "witness_residual": residual,
    }, batch=False, args=args)
    return 0


def cmd_evolution(args) -> int:
    items, batch = _parse_input(args.input, _default_tolerance(args))
    out = []
    for A, tol in items:
        g = _evolution.find_natural_basis(A, tol)
        if g is None:
            out.append({"evolution": False, "label": None, "params": None,
                        "natural_basis": None})
        else:
            cls = _evolution.classify_evolution(
                _evolution.natural_form(A, g, tol), tol)
            out.append({"evolution": True, "label": cls.label,
                        "params": list(cls.params), "natural_basis": g})
    _emit(out, batch, args)
    return 0


def cmd_aut(args) -> int:
    items, batch = _parse_input(args.input, _default_tolerance(args))
    out = []
    for A, tol in items:
        g = _evolution.find_natural_basis(A, tol)
        if g is None:
            print("automorphism table undefined; use oracle search", file=sys.stderr)
            return 3
        cls = _evolution.classify_evolution(_evolution.natural_form(A, g, tol), tol)
        fam = _evolution.automorphism_family(cls, tol)
        out.append({
            "label": cls.label,
            "params": list(cls.params),
            "family": {
                "kind": fam.kind,
                "base": fam.base,
                "generators": list(fam.generators),
                "constraints": fam.constraints,
            },
        })
    _emit(out, batch, args)
    return 0


def cmd_der(args) -> int:
    items, batch = _parse_input(args.input, _default_tolerance(args))
    out = []
    for A, tol in items:
        fam = _evolution.derivations(A, tol)
        out.append({"dimension": fam.dimension, "basis": list(fam.generators)})
    _emit(out, batch, args)
    return 0


def cmd_orbit_test(args) -> int:
    items, _ = _parse_input(args.input, _default_tolerance(args))
    A, tol = items[0]
    ref = _classify.canonicalize(A, tol)
    sampler = _oracle.OrbitSampler(seed=args.seed, count=args.count)
    mismatches = []
    for idx, B in enumerate(_oracle.orbit_sample(A, sampler, tol)):
        cf = _classify.canonicalize(B, tol)
        ok = (cf.label == ref.label
              and all(abs(x - y) <= tol.param_match
                      for x, y in zip(cf.params, ref.params)))
        if not ok:
            mismatches.append({"sample": idx, "label": cf.label,
                               "params": list(cf.params)})
    _emit({
        "pass": not mismatches,
        "count": args.count,
        "label": ref.label,
        "params": list(ref.params),
        "mismatches": mismatches,
    }, batch=False, args=args)
    return 0 if not mismatches else 4


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="alg2d",
        description="Classify 2-dimensional real algebras given by 2x4 "
                    "structure-constant matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("--input", "-i", required=True,
                            help="input file path or inline JSON")
        sp.add_argument("--tolerance", type=float, default=None,
                        help="relative zero threshold (default 1e-9; "
                             "env ALG2D_TOLERANCE overrides)")
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--budget", type=int, default=200)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="compact JSON (default)")
        fmt.add_argument("--pretty", action="store_true", help="indented JSON")

    sp = sub.add_parser("classify", help="full classification report")
    common(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("iso", help="decide isomorphism of two algebras")
    sp.add_argument("a", help="first input (path or inline JSON)")
    sp.add_argument("b", help="second input (path or inline JSON)")
    common(sp, with_input=False)
    sp.set_defaults(fn=cmd_iso)

    sp = sub.add_parser("evolution", help="natural-basis detection and E-class")
    common(sp)
    sp.set_defaults(fn=cmd_evolution)

    sp = sub.add_parser("aut", help="automorphism group of an evolution algebra")
    common(sp)
    sp.set_defaults(fn=cmd_aut)

    sp = sub.add_parser("der", help="derivation algebra basis")
    common(sp)
    sp.set_defaults(fn=cmd_der)

    sp = sub.add_parser("orbit-test", help="canonical-form orbit invariance check")
    common(sp)
    sp.add_argument("--count", type=int, default=100)
    sp.set_defaults(fn=cmd_orbit_test)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except TrivialAlgebraError:
        print("error: trivial algebra", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())

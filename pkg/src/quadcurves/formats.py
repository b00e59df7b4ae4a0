"""JSON documents and CSV exports.

Rationals travel as ``"p/q"`` strings and polynomials as ``{"i,j": "p/q"}``
maps so every exact value survives a round trip.  Every document is
``{"format_version": 1, "kind": ..., "payload": ...}``.
"""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import BiPoly, UniPoly
from .darboux import AuditReport, DarbouxSystemSet, HypergeometricCurve, InvarianceCertificate
from .errors import ParseError
from .numeric import AmbiguityReport, DriftReport, SeedDrift, Trajectory
from .operators import FamilySpec, HermiteLike, Hypergeometric, Jacobi, Laguerre
from .systems import COEFF_NAMES, CofactorLine, CurveBundle, QuadraticSystem

FORMAT_VERSION = 1
KINDS = ("system", "curve", "certificate", "darboux-set", "audit", "drift")

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_MONOMIAL = re.compile(r"^(\d+),(\d+)$")


@dataclass(frozen=True)
class ArtifactDocument:
    kind: str
    payload: Any
    format_version: int = FORMAT_VERSION


# --- scalars and polynomials --------------------------------------------------

def encode_rational(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(text: Any, location: str = "") -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise ParseError(f"malformed rational {text!r}", location)
    num, _, den = text.strip().partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}", location)
    return Fraction(int(num), int(den) if den else 1)


def encode_bipoly(p: BiPoly) -> Dict[str, str]:
    return {f"{i},{j}": encode_rational(v) for (i, j), v in sorted(p.items())}


def decode_bipoly(data: Any, location: str = "") -> BiPoly:
    if not isinstance(data, dict):
        raise ParseError("polynomial must be an object", location)
    terms = {}
    for key, val in data.items():
        m = _MONOMIAL.match(key)
        if not m:
            raise ParseError(f"malformed exponent key {key!r}", location)
        terms[(int(m.group(1)), int(m.group(2)))] = parse_rational(val, f"{location}[{key}]")
    return BiPoly(terms)


def encode_unipoly(p: UniPoly) -> Dict[str, str]:
    return encode_bipoly(p.to_bipoly())


def decode_unipoly(data: Any, location: str = "") -> UniPoly:
    b = decode_bipoly(data, location)
    if b.degree_in("y") > 0:
        raise ParseError("univariate polynomial has a y term", location)
    return b.y_coeff(0)


# --- domain objects -----------------------------------------------------------

def _system_out(s: QuadraticSystem) -> Dict[str, Any]:
    return {
        "coefficients": {k: encode_rational(v) for k, v in s.coefficients().items()},
        "P": encode_bipoly(s.P),
        "Q": encode_bipoly(s.Q),
    }


def _system_in(d: Any, loc: str) -> QuadraticSystem:
    coeffs = _field(d, "coefficients", loc)
    if not isinstance(coeffs, dict):
        raise ParseError("coefficients must be an object", loc)
    unknown = set(coeffs) - set(COEFF_NAMES)
    if unknown:
        raise ParseError(f"unknown coefficient names {sorted(unknown)}", loc)
    values = {k: parse_rational(v, f"{loc}.coefficients.{k}") for k, v in coeffs.items()}
    sys = QuadraticSystem.from_coefficients(**values)
    if "Q" in d and decode_bipoly(d["Q"], f"{loc}.Q") != sys.Q:
        raise ParseError("Q disagrees with coefficients", loc)
    if "P" in d and decode_bipoly(d["P"], f"{loc}.P") != sys.P:
        raise ParseError("P disagrees with coefficients", loc)
    return sys


def _field(d: Any, key: str, loc: str):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"missing field {key!r}", loc)
    return d[key]


def _line_out(k: CofactorLine) -> Dict[str, str]:
    return {"beta": encode_rational(k.beta), "gamma": encode_rational(k.gamma)}


def _line_in(d: Any, loc: str) -> CofactorLine:
    return CofactorLine(parse_rational(_field(d, "beta", loc), f"{loc}.beta"),
                        parse_rational(_field(d, "gamma", loc), f"{loc}.gamma"))


def _family_out(f: FamilySpec) -> Dict[str, Any]:
    out: Dict[str, Any] = {"family": f.kind, "beta": encode_rational(f.beta),
                           "gamma": encode_rational(f.gamma)}
    if isinstance(f, Hypergeometric):
        out.update(a=encode_rational(f.a), b=encode_rational(f.b), c=encode_rational(f.c))
    elif isinstance(f, Jacobi):
        out.update(A=encode_rational(f.A), B=encode_rational(f.B), n=f.n)
    elif isinstance(f, Laguerre):
        out.update(A=encode_rational(f.A), n=f.n)
    else:
        out.update(n=f.n)
    return out


def _family_in(d: Any, loc: str) -> FamilySpec:
    kind = _field(d, "family", loc)
    r = lambda k: parse_rational(_field(d, k, loc), f"{loc}.{k}")  # noqa: E731
    common = dict(beta=r("beta"), gamma=r("gamma"))
    if kind == "hyp":
        return Hypergeometric(r("a"), r("b"), r("c"), **common)
    if kind == "jacobi":
        return Jacobi(r("A"), r("B"), int(_field(d, "n", loc)), **common)
    if kind == "laguerre":
        return Laguerre(r("A"), int(_field(d, "n", loc)), **common)
    if kind == "hermite":
        return HermiteLike(int(_field(d, "n", loc)), **common)
    raise ParseError(f"unknown family {kind!r}", loc)


def _curve_out(c) -> Dict[str, Any]:
    if isinstance(c, BiPoly):
        return {"type": "polynomial", "g": encode_bipoly(c)}
    return {"type": "hypergeometric", "a": encode_rational(c.a), "b": encode_rational(c.b),
            "c": encode_rational(c.c), "p2": encode_unipoly(c.p2), "shift": encode_unipoly(c.shift)}


def _curve_in(d: Any, loc: str):
    kind = _field(d, "type", loc)
    if kind == "polynomial":
        return decode_bipoly(_field(d, "g", loc), f"{loc}.g")
    if kind == "hypergeometric":
        return HypergeometricCurve(
            parse_rational(_field(d, "a", loc), f"{loc}.a"),
            parse_rational(_field(d, "b", loc), f"{loc}.b"),
            parse_rational(_field(d, "c", loc), f"{loc}.c"),
            decode_unipoly(_field(d, "p2", loc), f"{loc}.p2"),
            decode_unipoly(_field(d, "shift", loc), f"{loc}.shift"),
        )
    raise ParseError(f"unknown curve type {kind!r}", loc)


def _drift_out(r: DriftReport) -> Dict[str, Any]:
    return {
        "label": r.label, "h": r.h, "T": r.T, "tol": r.tol, "verdict": r.verdict,
        "seeds": [
            {"x0": s.x0, "y0": s.y0, "drift": s.drift, "status": s.status,
             "terminated": s.terminated, "samples": s.samples, "reason": s.reason}
            for s in r.seeds
        ],
    }


def _drift_in(d: Any, loc: str) -> DriftReport:
    seeds = tuple(
        SeedDrift(float(s["x0"]), float(s["y0"]), None if s["drift"] is None else float(s["drift"]),
                  s["status"], s["terminated"], int(s["samples"]), s.get("reason", ""))
        for s in _field(d, "seeds", loc)
    )
    return DriftReport(seeds, float(d["h"]), float(d["T"]), float(d["tol"]), d["verdict"], d.get("label", ""))


def _payload_out(kind: str, p: Any) -> Any:
    if kind == "system":
        return _system_out(p)
    if kind == "curve":
        return {"a0": encode_unipoly(p.a0), "g": encode_bipoly(p.g), "n": p.n,
                "system": _system_out(p.system), "cofactor": _line_out(p.cofactor)}
    if kind == "certificate":
        return {"P": encode_bipoly(p.P), "Q": encode_bipoly(p.Q), "curve": encode_bipoly(p.curve),
                "cofactor": None if p.cofactor is None else encode_bipoly(p.cofactor),
                "residual": encode_bipoly(p.residual), "status": p.status}
    if kind == "darboux-set":
        return {"system": _system_out(p.system), "curves": [_curve_out(c) for c in p.curves],
                "cofactors": [encode_bipoly(k) for k in p.cofactors],
                "exponents": None if p.exponents is None else [encode_rational(v) for v in p.exponents],
                "mode": p.mode, "notes": list(p.notes)}
    if kind == "audit":
        return [{
            "family": _family_out(r.family), "canonical": _system_out(r.canonical),
            "literal": _system_out(r.literal),
            "coefficient_diffs": {k: [encode_rational(c), encode_rational(l)]
                                  for k, (c, l) in r.coefficient_diffs.items()},
            "literal_invariance": r.literal_invariance,
            "literal_residual": encode_bipoly(r.literal_residual),
            "canonical_invariance": r.canonical_invariance, "notes": list(r.notes),
        } for r in p]
    if kind == "drift":
        if isinstance(p, AmbiguityReport):
            return {"parameters": [encode_rational(v) for v in p.parameters],
                    "variants": [{"name": n, "report": _drift_out(r)} for n, r in p.reports],
                    "passing": list(p.passing),
                    "exact_invariance": [{"name": n, "g1_g2": None if inv is None else list(inv)}
                                         for n, inv in p.exact_invariance]}
        return _drift_out(p)
    raise ParseError(f"unknown kind {kind!r}", "kind")


def _payload_in(kind: str, d: Any) -> Any:
    loc = "payload"
    if kind == "system":
        return _system_in(d, loc)
    if kind == "curve":
        return CurveBundle(
            a0=decode_unipoly(_field(d, "a0", loc), f"{loc}.a0"),
            g=decode_bipoly(_field(d, "g", loc), f"{loc}.g"),
            n=int(_field(d, "n", loc)),
            system=_system_in(_field(d, "system", loc), f"{loc}.system"),
            cofactor=_line_in(_field(d, "cofactor", loc), f"{loc}.cofactor"),
        )
    if kind == "certificate":
        cof = _field(d, "cofactor", loc)
        return InvarianceCertificate(
            P=decode_bipoly(_field(d, "P", loc), f"{loc}.P"),
            Q=decode_bipoly(_field(d, "Q", loc), f"{loc}.Q"),
            curve=decode_bipoly(_field(d, "curve", loc), f"{loc}.curve"),
            cofactor=None if cof is None else decode_bipoly(cof, f"{loc}.cofactor"),
            residual=decode_bipoly(_field(d, "residual", loc), f"{loc}.residual"),
            status=_field(d, "status", loc),
        )
    if kind == "darboux-set":
        exps = _field(d, "exponents", loc)
        return DarbouxSystemSet(
            system=_system_in(_field(d, "system", loc), f"{loc}.system"),
            curves=tuple(_curve_in(c, f"{loc}.curves[{i}]") for i, c in enumerate(_field(d, "curves", loc))),
            cofactors=tuple(decode_bipoly(k, f"{loc}.cofactors[{i}]")
                            for i, k in enumerate(_field(d, "cofactors", loc))),
            exponents=None if exps is None else tuple(
                parse_rational(v, f"{loc}.exponents[{i}]") for i, v in enumerate(exps)),
            mode=_field(d, "mode", loc),
            notes=tuple(d.get("notes", ())),
        )
    if kind == "audit":
        if not isinstance(d, list):
            raise ParseError("audit payload must be a list", loc)
        out = []
        for i, r in enumerate(d):
            rl = f"{loc}[{i}]"
            out.append(AuditReport(
                family=_family_in(_field(r, "family", rl), f"{rl}.family"),
                canonical=_system_in(_field(r, "canonical", rl), f"{rl}.canonical"),
                literal=_system_in(_field(r, "literal", rl), f"{rl}.literal"),
                coefficient_diffs={k: (parse_rational(v[0], f"{rl}.{k}"), parse_rational(v[1], f"{rl}.{k}"))
                                   for k, v in _field(r, "coefficient_diffs", rl).items()},
                literal_invariance=_field(r, "literal_invariance", rl),
                literal_residual=decode_bipoly(_field(r, "literal_residual", rl), f"{rl}.literal_residual"),
                canonical_invariance=_field(r, "canonical_invariance", rl),
                notes=tuple(r.get("notes", ())),
            ))
        return tuple(out)
    if kind == "drift":
        if isinstance(d, dict) and "variants" in d:
            return AmbiguityReport(
                parameters=tuple(parse_rational(v, f"{loc}.parameters") for v in d["parameters"]),
                reports=tuple((v["name"], _drift_in(v["report"], f"{loc}.variants")) for v in d["variants"]),
                passing=tuple(d["passing"]),
                exact_invariance=tuple((e["name"], None if e["g1_g2"] is None else tuple(e["g1_g2"]))
                                       for e in d.get("exact_invariance", ())),
            )
        return _drift_in(d, loc)
    raise ParseError(f"unknown kind {kind!r}", "kind")


# --- documents ----------------------------------------------------------------

def to_json_obj(doc: ArtifactDocument) -> Dict[str, Any]:
    if doc.kind not in KINDS:
        raise ParseError(f"unknown kind {doc.kind!r}", "kind")
    if doc.kind == "audit":
        payload = _payload_out("audit", list(doc.payload))
    else:
        payload = _payload_out(doc.kind, doc.payload)
    return {"format_version": doc.format_version, "kind": doc.kind, "payload": payload}


def from_json_obj(obj: Any) -> ArtifactDocument:
    if not isinstance(obj, dict):
        raise ParseError("document must be an object")
    version = _field(obj, "format_version", "document")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}", "format_version")
    kind = _field(obj, "kind", "document")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", "kind")
    try:
        payload = _payload_in(kind, _field(obj, "payload", "document"))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed {kind} payload: {exc}", "payload") from exc
    return ArtifactDocument(kind, payload, version)


def encode(doc: ArtifactDocument) -> str:
    return json.dumps(to_json_obj(doc), indent=2, sort_keys=True) + "\n"


def decode(text: str) -> ArtifactDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from exc
    return from_json_obj(obj)


def encode_many(docs: Sequence[ArtifactDocument]) -> str:
    return json.dumps([to_json_obj(d) for d in docs], indent=2, sort_keys=True) + "\n"


def decode_any(text: str) -> List[ArtifactDocument]:
    """A single document or a JSON array of documents."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from exc
    if isinstance(obj, list):
        return [from_json_obj(o) for o in obj]
    return [from_json_obj(obj)]


# --- CSV ----------------------------------------------------------------------

def _cell(v: Optional[float]) -> str:
    return "" if v is None else repr(float(v))


def trajectory_csv(traj: Trajectory, F: Optional[Iterable[float]] = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if F is None:
        w.writerow(["t", "x", "y"])
        for t, x, y in traj.samples:
            w.writerow([_cell(t), _cell(x), _cell(y)])
    else:
        w.writerow(["t", "x", "y", "F"])
        for (t, x, y), f in zip(traj.samples, F):
            w.writerow([_cell(t), _cell(x), _cell(y), _cell(f)])
    return buf.getvalue()


def levels_csv(rows: Iterable[Tuple[float, float, Optional[float]]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "f"])
    for x, y, f in rows:
        w.writerow([_cell(x), _cell(y), _cell(f)])
    return buf.getvalue()


def read_csv_rows(text: str) -> List[Dict[str, Optional[float]]]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append({k: (None if v == "" else float(v)) for k, v in rec.items()})
    return rows

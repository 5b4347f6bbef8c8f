"""Batch front door: parse a line-oriented job description, run one engine
command, and emit a text summary plus machine-readable JSON (schema 1).

Exit codes: 0 success, 1 usage or parse error, 2 hypothesis violation,
3 internal inconsistency (always a bug).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field

from .cartier import run_theorem, solve_one_minus_x
from .coeff import Field, parse_field
from .errors import (
    GradedModError,
    HypothesisViolated,
    InhomogeneousInput,
    InternalInconsistency,
    ParseError,
    UnknownCommand,
)
from .graded import (
    GradedModule,
    SubmodulePresentation,
    check_simple_grading,
    classify_length,
    is_saturated,
    minimal_generator_degrees,
)
from .krull import FiniteAlgebra, krull_check
from .poly import GradedRing, Polynomial, require_homogeneous
from .zeros import brute_force_zero, nullstellensatz

SCHEMA_VERSION = 1

COMMANDS = ("gb", "hilbert", "classify", "simple-grading", "cartier-tate",
            "projective-zero", "krull-check")


@dataclass
class JobDescription:
    command: str
    field: Field = None
    ring: GradedRing = None
    module: GradedModule = None
    ideal: list = None
    algebra: FiniteAlgebra = None
    a_gens: list = None
    options: dict = dc_field(default_factory=dict)


def parse_job(text: str) -> JobDescription:
    """Parse and fully validate a job description before any computation."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(f"expected `key: value`, got {line!r}", line=lineno)
        key, _, value = line.partition(":")
        entries.append((lineno, key.strip(), value.strip()))
    data = {}
    for lineno, key, value in entries:
        if key in data:
            raise ParseError(f"duplicate key {key!r}", line=lineno)
        data[(key)] = (lineno, value)

    def take(key, default=None):
        if key in data:
            return data.pop(key)[1]
        return default

    command = take("command")
    if command is None:
        raise ParseError("missing `command:` line")
    if command not in COMMANDS:
        raise UnknownCommand(f"unknown command {command!r}")

    job = JobDescription(command=command)

    if command == "krull-check":
        _parse_algebra_job(job, data, take)
    else:
        _parse_module_job(job, data, take)

    if data:
        lineno, _ = next(iter(data.values()))
        key = next(iter(data))
        raise ParseError(f"unexpected key {key!r} for command {command!r}",
                         line=lineno)
    return job


def _parse_field_and_ring(job, take):
    field_spec = take("field")
    if field_spec is None:
        raise ParseError("missing `field:` line")
    job.field = parse_field(field_spec)
    vars_spec = take("vars")
    if vars_spec is None:
        raise ParseError("missing `vars:` line")
    names = vars_spec.split()
    for i, name in enumerate(names):
        if name != f"X{i}":
            raise ParseError(f"variables must be X0..Xn in order, got {name!r}")
    order = take("order", "degrevlex")
    job.ring = GradedRing(job.field, len(names), order)


def _parse_poly_list(text, ring):
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            out.append(ring.from_string(chunk))
    return out


def _parse_module_job(job, data, take):
    _parse_field_and_ring(job, take)
    kind = take("module", "cyclic")
    if kind == "cyclic":
        ideal_spec = take("ideal", "")
        job.ideal = _parse_poly_list(ideal_spec, job.ring)
        if job.command in ("hilbert", "classify", "simple-grading",
                          "cartier-tate", "gb"):
            for f in job.ideal:
                require_homogeneous(f, "ideal")
        job.module = GradedModule.cyclic(job.ring, job.ideal)
    elif kind == "presented":
        degrees = [int(t) for t in take("gens", "0").split()]
        rel_spec = take("relations", "")
        free = GradedModule(job.ring, degrees, ()).free
        relations = []
        for row in rel_spec.split(";"):
            row = row.strip()
            if not row:
                continue
            if not (row.startswith("(") and row.endswith(")")):
                raise ParseError(f"relation row must be (c1, c2, ...): {row!r}")
            comps = [job.ring.from_string(c.strip())
                     for c in row[1:-1].split(",")]
            relations.append(free.element(comps))
        job.module = GradedModule(job.ring, degrees, relations)
    else:
        raise ParseError(f"unknown module kind {kind!r}")


def _parse_coord_rows(text, field, dim):
    rows = []
    for chunk in text.split("|"):
        vals = chunk.split()
        if len(vals) != dim:
            raise ParseError(f"expected {dim} coordinates, got {chunk!r}")
        rows.append(tuple(field.element(_parse_scalar(v)) for v in vals))
    return rows


def _parse_scalar(token):
    from fractions import Fraction
    if "/" in token:
        return Fraction(token)
    return int(token)


def _parse_algebra_job(job, data, take):
    kind = take("algebra")
    if kind is None:
        raise ParseError("krull-check needs an `algebra:` line")
    if kind == "quotient":
        _parse_field_and_ring(job, take)
        ideal_spec = take("ideal", "")
        ideal = _parse_poly_list(ideal_spec, job.ring)
        job.algebra = FiniteAlgebra.from_quotient(job.ring, ideal)
        a_spec = take("a-gens", "")
        coords_of = _quotient_coords_fn(job.algebra, job.algebra._quotient_gb,
                                        job.ring)
        job.a_gens = [coords_of(f) for f in _parse_poly_list(a_spec, job.ring)]
    elif kind == "structure-constants":
        field_spec = take("field")
        if field_spec is None:
            raise ParseError("missing `field:` line")
        job.field = parse_field(field_spec)
        dim = int(take("dim", "0"))
        if dim < 1:
            raise ParseError("algebra dimension must be >= 1")
        table_spec = take("table", "")
        rows = []
        for part in table_spec.split(";"):
            rows.append(_parse_coord_rows(part.strip(), job.field, dim))
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise ParseError(f"table must be {dim}x{dim} coordinate vectors")
        unit = _parse_coord_rows(take("unit", ""), job.field, dim)[0]
        job.algebra = FiniteAlgebra(
            job.field, tuple(f"b{i}" for i in range(dim)),
            tuple(tuple(r) for r in rows), unit)
        a_spec = take("a-gens", "")
        job.a_gens = []
        for part in a_spec.split(";"):
            part = part.strip()
            if part:
                job.a_gens.append(_parse_coord_rows(part, job.field, dim)[0])
    else:
        raise ParseError(f"unknown algebra kind {kind!r}")


def _quotient_coords_fn(algebra, gb, ring):
    index = {}
    deg = 0
    while len(index) < algebra.dim:
        for bm in gb.component_basis(deg):
            index[bm] = len(index)
        deg += 1

    def coords_of(f):
        nf = gb.normal_form(gb.module.from_polynomial(f))
        out = [ring.field.zero] * algebra.dim
        for p, m, c in nf.terms():
            out[index[(p, m)]] = c
        return tuple(out)

    return coords_of


# ---------------------------------------------------------------------------
# execution


def _fe(field, elt):
    return field.format_element(elt)


def run_job(job: JobDescription, seed: int = 0, probe: int = 5,
            max_ext: int = 3, method: str = "certificate"):
    """Execute a validated job; returns (json_document, text_summary)."""
    doc = {"schema": SCHEMA_VERSION, "command": job.command, "seed": seed}
    lines = []

    if job.command == "gb":
        gens = [repr(g) if len(g.comps) > 1 else repr(g.comps[0])
                for g in job.module.groebner.generators]
        doc["basis"] = gens
        lines.append(f"reduced Groebner basis ({len(gens)} generators):")
        lines.extend(f"  {g}" for g in gens)

    elif job.command == "hilbert":
        hd = job.module.hilbert
        upto = hd.stabilization_degree + probe
        doc["function_values"] = [hd.function(k) for k in range(upto)]
        doc["polynomial"] = _poly_in_k(hd.hilbert_polynomial)
        doc["stabilization_degree"] = hd.stabilization_degree
        lines.append(f"Hilbert function through degree {upto - 1}: "
                     f"{doc['function_values']}")
        lines.append(f"Hilbert polynomial: {doc['polynomial']}")
        lines.append(f"stabilization degree: {doc['stabilization_degree']}")

    elif job.command == "classify":
        length = classify_length(job.module)
        doc["length"] = length.kind
        if length.is_short:
            doc["zero_from"] = length.zero_from
        else:
            doc["nonzero_from"] = length.nonzero_from
        if job.module.is_cyclic:
            N = SubmodulePresentation(
                GradedModule.cyclic(job.ring, []),
                tuple(GradedModule.cyclic(job.ring, []).free.from_polynomial(f)
                      for f in job.ideal))
            doc["saturated_as_ideal"] = bool(is_saturated(N).saturated)
        lines.append(f"module is {doc['length']}")
        if "saturated_as_ideal" in doc:
            lines.append(f"ideal saturated: {doc['saturated_as_ideal']}")

    elif job.command == "simple-grading":
        report = check_simple_grading(job.module, probe)
        doc["first_simple_degree"] = report.first_simple_degree
        doc["verified_through"] = report.verified_through
        doc["minimal_generator_degrees"] = minimal_generator_degrees(job.module)
        lines.append(f"simple grading certified from degree "
                     f"{report.first_simple_degree} "
                     f"(verified through {report.verified_through})")
        lines.append(f"minimal generator degrees: "
                     f"{doc['minimal_generator_degrees']}")

    elif job.command == "cartier-tate":
        cert = run_theorem(job.module, probe)
        ring = job.ring
        doc["B"] = [repr(b) for b in cert.B]
        doc["x"] = repr(cert.x)
        doc["colimit_degree"] = cert.colimit_degree
        doc["quotient_dim"] = cert.quotient_dim
        doc["quotient_basis"] = [_basis_label(ring, bm) for bm in cert.quotient_basis]
        doc["witness"] = {
            "degree": cert.witness.degree,
            "element": repr(cert.witness.element.comps[0])
            if len(cert.witness.element.comps) == 1 else repr(cert.witness.element),
            "transport_image": [_fe(ring.field, c)
                                for c in cert.witness.transport_image],
        }
        doc["L_generators"] = [
            repr(g.comps[0]) if len(g.comps) == 1 else repr(g)
            for g in cert.L_generators]
        lines.append(f"B = {doc['B']}, x = {doc['x']}")
        lines.append(f"dim M/L = {cert.quotient_dim} "
                     f"(colimit degree {cert.colimit_degree})")
        lines.append(f"witness: degree {cert.witness.degree}, "
                     f"element {doc['witness']['element']}")

    elif job.command == "projective-zero":
        doc["method"] = method
        if method in ("certificate", "both"):
            result = nullstellensatz(job.ideal, job.ring, seed=seed)
            doc["status"] = result.status
            if result.status == "zero":
                doc["point"] = [_fe(result.point.field, c)
                                for c in result.point.coordinates]
                doc["point_field"] = repr(result.point.field)
                if hasattr(result.point.field, "modulus"):
                    doc["extension_modulus"] = list(result.point.field.modulus)
                doc["certificate"] = {
                    "B": [repr(b) for b in result.certificate.B],
                    "x": repr(result.certificate.x),
                    "quotient_dim": result.certificate.quotient_dim,
                }
            elif result.status == "algebra":
                doc["algebra_dim"] = result.algebra.dim
        if method in ("brute", "both"):
            pt = brute_force_zero(job.ideal, max_ext=max_ext, ring=job.ring)
            if pt is None:
                doc["brute_force"] = {"status": "not_found", "max_ext": max_ext}
            else:
                doc["brute_force"] = {
                    "status": "zero",
                    "point": [_fe(pt.field, c) for c in pt.coordinates],
                    "point_field": repr(pt.field),
                }
            if method == "brute":
                doc["status"] = doc["brute_force"]["status"]
        lines.append(f"status: {doc.get('status')}")
        if "point" in doc:
            lines.append(f"point: ({' : '.join(doc['point'])}) "
                         f"in {doc.get('point_field')}")

    elif job.command == "krull-check":
        report = krull_check(job.algebra, job.a_gens, seed=seed)
        doc["stabilized_at"] = report.stabilized_at
        doc["intersection_dim"] = report.intersection_dim
        doc["cases"] = [
            {"description": c.description, "n_dim": c.n_dim,
             "an_dim": c.an_dim, "holds": c.holds}
            for c in report.cases]
        doc["all_hold"] = report.all_hold
        lines.append(f"chain stabilized at step {report.stabilized_at}; "
                     f"dim N = {report.intersection_dim}")
        lines.append("Krull identity aN = N: "
                     + ("holds in every case" if report.all_hold
                        else "VIOLATED"))
        if not report.all_hold:
            raise InternalInconsistency(
                "Krull identity failed on an eligible submodule")

    else:  # pragma: no cover - parse_job already filtered
        raise UnknownCommand(job.command)

    return doc, "\n".join(lines)


def _basis_label(ring, bm):
    pos, m = bm
    label = repr(Polynomial(ring, {m: ring.field.one}))
    return label if pos == 0 else f"e{pos}*{label}"


def _poly_in_k(coeffs):
    parts = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        cs = str(c)
        if d == 0:
            parts.append(cs)
        elif d == 1:
            parts.append("k" if cs == "1" else f"{cs}*k")
        else:
            parts.append(f"k^{d}" if cs == "1" else f"{cs}*k^{d}")
    return " + ".join(parts) if parts else "0"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gradedmod",
        description="Run a graded-module engine job from a description file.")
    parser.add_argument("jobfile", help="path to the job description")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--probe", type=int, default=5)
    parser.add_argument("--max-ext", type=int, default=3)
    parser.add_argument("--method", choices=("certificate", "brute", "both"),
                        default="certificate")
    parser.add_argument("--json", dest="json_path", default=None,
                        help="also write the JSON document to this path")
    args = parser.parse_args(argv)

    try:
        with open(args.jobfile) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        job = parse_job(text)
        doc, summary = run_job(job, seed=args.seed, probe=args.probe,
                               max_ext=args.max_ext, method=args.method)
    except InternalInconsistency as exc:
        _emit_error(args, "internal_inconsistency", exc)
        return 3
    except HypothesisViolated as exc:
        _emit_error(args, "hypothesis_violated", exc)
        return 2
    except (ParseError, UnknownCommand, InhomogeneousInput, GradedModError,
            ValueError) as exc:
        _emit_error(args, type(exc).__name__, exc)
        return 1

    payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(payload)
    print(summary)
    print(payload, end="")
    return 0


def _emit_error(args, kind, exc):
    doc = {"schema": SCHEMA_VERSION, "error": {"kind": kind, "message": str(exc)}}
    payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(payload)
    print(payload, end="", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Parses JSON problem descriptions (1-based indices on the wire, 0-based
internally), runs the decision procedures and the floating-point probes,
and emits deterministic reports: JSON with sorted keys, rationals as
"p/q", probe tables as CSV.  Unbounded verdicts carry a certificate that
the `verify` subcommand re-validates from scratch.
"""

from __future__ import annotations

import json
import re
import sys
import time
from fractions import Fraction

import click
import numpy as np

from . import __version__
from .exact_numeric import rank, unit
from .newton_poly import (
    DomainSpec,
    ExponentSet,
    build_newton,
    face_closure_structure,
    interior_contains,
)
from .engine import (
    FaceTuple,
    LambdaTuple,
    VectorPolynomial,
    Verdict,
    build_face_chain,
    cap_cone_generators,
    classify_dyadic,
    decide_disjoint,
    decide_general,
    decide_graph,
    enumerate_lo_tuples,
)
from .parity import is_even
from . import oscillatory as osc

EXIT_BOUNDED = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2
EXIT_UNBOUNDED = 3

MODES = ("decide", "decide-graph", "decide-general", "faces", "decompose",
         "probe-divergence", "probe-sum", "probe-decay")


class InputError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_COEFF_KEY = re.compile(r"^(\d+):\((\d+(?:,\s*\d+)*)\)$")
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def _parse_rational(text: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise InputError("E_BAD_RATIONAL",
                         f"malformed rational {text!r} (want 'p/q')")
    f = Fraction(text.strip())
    return f


class ProblemInput:
    """Validated problem description (internal 0-based indices)."""

    def __init__(self, raw: dict):
        if not isinstance(raw, dict):
            raise InputError("E_MALFORMED", "top level must be an object")
        self.raw = raw
        try:
            self.n = int(raw["n"])
        except (KeyError, TypeError, ValueError):
            raise InputError("E_MALFORMED", "missing or bad field 'n'")
        if self.n < 1:
            raise InputError("E_MALFORMED", "n must be >= 1")
        s_raw = raw.get("S", [])
        if not isinstance(s_raw, list):
            raise InputError("E_MALFORMED", "'S' must be a list")
        s_int = []
        for j in s_raw:
            if not isinstance(j, int) or not (1 <= j <= self.n):
                raise InputError(
                    "E_S_RANGE", f"S entry {j!r} outside 1..{self.n}")
            s_int.append(j - 1)
        self.spec = DomainSpec.of(self.n, s_int)
        lam_raw = raw.get("lambda")
        if not isinstance(lam_raw, list) or not lam_raw:
            raise InputError("E_MALFORMED",
                             "'lambda' must be a nonempty list of lists")
        self.lambdas = []
        for nu, block in enumerate(lam_raw):
            if not isinstance(block, list) or not block:
                raise InputError(
                    "E_MALFORMED", f"lambda[{nu + 1}] must be nonempty")
            pts = []
            for m in block:
                if (not isinstance(m, list) or len(m) != self.n
                        or not all(isinstance(c, int) for c in m)):
                    raise InputError(
                        "E_MALFORMED",
                        f"exponent {m!r} must be {self.n} integers")
                if any(c < 0 for c in m):
                    raise InputError(
                        "E_NEG_EXPONENT", f"negative exponent in {m}")
                pts.append(tuple(m))
            self.lambdas.append(ExponentSet.of(pts, self.n))
        self.mode = raw.get("mode")
        if self.mode is not None and self.mode not in MODES:
            raise InputError("E_MALFORMED", f"unknown mode {self.mode!r}")
        self.coefficients = self._parse_coefficients(raw.get("coefficients"))

    def _parse_coefficients(self, raw):
        if raw is None:
            return None
        if not isinstance(raw, dict):
            raise InputError("E_MALFORMED", "'coefficients' must be a map")
        out = {}
        supports = [set(lam.points) for lam in self.lambdas]
        for key, val in raw.items():
            m_key = _COEFF_KEY.match(key.replace(" ", ""))
            if not m_key:
                raise InputError(
                    "E_MALFORMED",
                    f"coefficient key {key!r} is not 'nu:(m1,...,mn)'")
            nu = int(m_key.group(1)) - 1
            m = tuple(int(x) for x in m_key.group(2).split(","))
            if not (0 <= nu < len(self.lambdas)):
                raise InputError(
                    "E_S_RANGE", f"component index {nu + 1} out of range")
            if len(m) != self.n or m not in supports[nu]:
                raise InputError(
                    "E_MALFORMED",
                    f"coefficient exponent {m} not in lambda[{nu + 1}]")
            c = _parse_rational(val)
            if c == 0:
                raise InputError("E_ZERO_COEFF",
                                 f"zero coefficient at {key!r}")
            out[(nu, m)] = c
        for nu, supp in enumerate(supports):
            for m in supp:
                out.setdefault((nu, m), Fraction(1))
        return out

    def lambda_tuple(self) -> LambdaTuple:
        return LambdaTuple(self.lambdas, self.spec)

    def polynomial(self) -> VectorPolynomial:
        coef = self.coefficients
        if coef is None:
            # probes default to +1 coefficients
            coef = {(nu, m): Fraction(1)
                    for nu, lam in enumerate(self.lambdas)
                    for m in lam.points}
        return VectorPolynomial(coef, len(self.lambdas), self.spec)

    def echo(self) -> dict:
        return self.raw


def parse_input(text: bytes) -> ProblemInput:
    try:
        raw = json.loads(text.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError("E_MALFORMED", f"not valid UTF-8 JSON: {exc}")
    return ProblemInput(raw)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _vec_out(v) -> list:
    out = []
    for c in v:
        f = Fraction(c)
        out.append(int(f) if f.denominator == 1 else _frac_str(f))
    return out


def _face_out(nu: int, face) -> dict:
    return {
        "nu": nu + 1,
        "vertices": [list(v) for v in sorted(face.vertex_set)],
        "rays": [list(r) for r in sorted(face.ray_set)],
        "dim": face.dim,
        "is_empty": face.is_empty,
        "is_improper": face.is_improper,
    }


def _certificate(problem: ProblemInput, verdict: Verdict) -> dict:
    cert = {
        "kind": "unbounded",
        "n": problem.n,
        "S": sorted(j + 1 for j in problem.spec.S),
        "lambda": [[list(m) for m in lam.sorted_points()]
                   for lam in problem.lambdas],
        "witness_faces": [
            _face_out(nu, f)
            for nu, f in enumerate(verdict.face_tuple.faces)],
        "odd_subset": [list(m) for m in verdict.odd_subset],
        "union_rank": verdict.union_rank,
        "overlap_witness": (
            _vec_out(verdict.overlap_witness)
            if verdict.overlap_witness is not None else None),
    }
    if verdict.graph_axes is not None:
        cert["graph_axes"] = [j + 1 for j in verdict.graph_axes]
    if verdict.gl_matrix is not None:
        cert["gl_matrix"] = [[_frac_str(x) for x in row]
                             for row in verdict.gl_matrix]
        cert["coefficients"] = {
            f"{nu + 1}:({','.join(map(str, m))})": _frac_str(c)
            for (nu, m), c in sorted(
                problem.polynomial().coefficients.items())}
        cert["class_lambda"] = [
            [list(m) for m in sorted(s)]
            for s in _transformed_supports(problem, verdict.gl_matrix)]
    return cert


def _transformed_supports(problem: ProblemInput, matrix) -> list:
    p = problem.polynomial()
    d = p.d
    coef: dict = {}
    for (nu, m), c in p.coefficients.items():
        for i in range(d):
            w = Fraction(matrix[i][nu]) * c
            if w == 0:
                continue
            cur = coef.get((i, m), Fraction(0)) + w
            if cur == 0:
                coef.pop((i, m), None)
            else:
                coef[(i, m)] = cur
    supports = [sorted(m for (i, m) in coef if i == nu) for nu in range(d)]
    return [s for s in supports if s]


def emit_report(report: dict, fmt: str, csv_rows=None) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2,
                          default=str) + "\n"
    if fmt == "csv":
        if csv_rows is None:
            raise InputError("E_MALFORMED",
                             "csv format is only available for probe tables")
        lines = ["scale,value,bound"]
        for scale, value, bound in csv_rows:
            lines.append(f"{scale!r},{value!r},{bound!r}")
        return "\n".join(lines) + "\n"
    # text
    lines = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}{k}.", obj[k])
        elif isinstance(obj, list) and obj and isinstance(
                obj[0], (dict, list)):
            for i, item in enumerate(obj):
                walk(f"{prefix}{i}.", item)
        else:
            lines.append(f"{prefix[:-1]} = {obj}")
    walk("", report)
    return "\n".join(lines) + "\n"


def _report(problem: ProblemInput, body: dict, started: float) -> dict:
    return dict(body,
                input=problem.echo(),
                version=__version__,
                timing_seconds=round(time.time() - started, 6))


# ---------------------------------------------------------------------------
# command plumbing
# ---------------------------------------------------------------------------

def _common(fn):
    fn = click.option("--seed", type=int, default=0, show_default=True,
                      help="RNG seed for sampled probe points.")(fn)
    fn = click.option("--threads", type=int, default=1, show_default=True,
                      help="Worker threads for independent probe items.")(fn)
    fn = click.option("--format", "fmt",
                      type=click.Choice(["json", "text", "csv"]),
                      default="json", show_default=True)(fn)
    fn = click.option("--input", "input_path", required=True,
                      type=click.Path(exists=True, dir_okay=False))(fn)
    return fn


def _load(input_path: str) -> ProblemInput:
    with open(input_path, "rb") as fh:
        return parse_input(fh.read())


def _run(fn):
    """Uniform error → exit-code mapping for all subcommands."""
    try:
        code = fn()
    except InputError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except (ValueError, KeyError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except AssertionError as exc:
        click.echo(f"internal assertion failed: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    sys.exit(code)


def _verdict_body(verdict: Verdict, problem: ProblemInput) -> dict:
    body = {
        "verdict": verdict.kind,
        "tuples_examined": verdict.tuples_examined,
        "lo_tuples": verdict.lo_tuples,
    }
    if not verdict.bounded:
        body["certificate"] = _certificate(problem, verdict)
    if verdict.gl_classes is not None:
        body["gl_class_count"] = len(verdict.gl_classes)
        body["depth_cap_hit"] = verdict.depth_cap_hit
    return body


@click.group()
@click.version_option(__version__)
def main():
    """Exact boundedness decisions for multi-parameter Hilbert transforms
    along polynomial surfaces, plus floating-point corroboration probes."""


@main.command()
@_common
def decide(input_path, fmt, threads, seed):
    """Face/cone/evenness decision for mutually disjoint exponent sets."""
    def body():
        started = time.time()
        problem = _load(input_path)
        verdict = decide_disjoint(problem.lambda_tuple())
        click.echo(emit_report(
            _report(problem, _verdict_body(verdict, problem), started),
            fmt), nl=False)
        return EXIT_BOUNDED if verdict.bounded else EXIT_UNBOUNDED
    _run(body)


@main.command("decide-graph")
@_common
def decide_graph_cmd(input_path, fmt, threads, seed):
    """Graph-case decision: lambda's last block is Λ_{n+1}; the first n
    blocks, when present, must be the coordinate unit vectors."""
    def body():
        started = time.time()
        problem = _load(input_path)
        blocks = problem.lambdas
        n = problem.n
        if len(blocks) == n + 1:
            units = [frozenset({tuple(int(x) for x in unit(n, j))})
                     for j in range(n)]
            if [b.points for b in blocks[:n]] != units:
                raise InputError(
                    "E_MALFORMED",
                    "graph case needs lambda_1..lambda_n = unit vectors")
            last = blocks[-1]
        elif len(blocks) == 1:
            last = blocks[0]
        else:
            raise InputError(
                "E_MALFORMED",
                f"graph case wants 1 or {n + 1} lambda blocks")
        verdict = decide_graph(last, problem.spec)
        click.echo(emit_report(
            _report(problem, _verdict_body(verdict, problem), started),
            fmt), nl=False)
        return EXIT_BOUNDED if verdict.bounded else EXIT_UNBOUNDED
    _run(body)


@main.command("decide-general")
@_common
@click.option("--generic", is_flag=True,
              help="Treat coefficients as generic (support arithmetic only).")
def decide_general_cmd(input_path, fmt, threads, seed, generic):
    """General criterion over all GL(d) support classes (cascade closure)."""
    def body():
        started = time.time()
        problem = _load(input_path)
        if problem.coefficients is None and not generic:
            raise InputError(
                "E_MALFORMED",
                "'coefficients' required for decide-general "
                "(or pass --generic)")
        verdict = decide_general(problem.polynomial(), generic=generic)
        click.echo(emit_report(
            _report(problem, _verdict_body(verdict, problem), started),
            fmt), nl=False)
        return EXIT_BOUNDED if verdict.bounded else EXIT_UNBOUNDED
    _run(body)


@main.command()
@_common
def faces(input_path, fmt, threads, seed):
    """Dump the face lattice of each Newton polyhedron."""
    def body():
        started = time.time()
        problem = _load(input_path)
        lam = problem.lambda_tuple()
        out = []
        for nu, poly in enumerate(lam.polyhedra):
            out.append({
                "nu": nu + 1,
                "dim": poly.dim,
                "vertices": [list(v) for v in sorted(poly.vertices)],
                "rays": [list(r) for r in sorted(poly.rays)],
                "facet_normals": [
                    {"normal": _vec_out(q), "level": _frac_str(r)}
                    for q, r in poly.facets_a],
                "orthogonal_basis": [
                    {"normal": _vec_out(q), "level": _frac_str(s)}
                    for q, s in poly.basis_b],
                "faces": [dict(_face_out(nu, f),
                               S0=(sorted(j + 1 for j in
                                          face_closure_structure(f))
                                   if not f.is_empty else None))
                          for f in poly.faces()],
            })
        click.echo(emit_report(
            _report(problem, {"polyhedra": out}, started), fmt), nl=False)
        return EXIT_BOUNDED
    _run(body)


@main.command()
@_common
def decompose(input_path, fmt, threads, seed):
    """List the low-rank overlapping face tuples with their joint cone
    generators and descending face chains; classify an optional dyadic
    index over the closed cones."""
    def body():
        started = time.time()
        problem = _load(input_path)
        lam = problem.lambda_tuple()
        tuples_out = []
        for ft in enumerate_lo_tuples(lam):
            gens, lin = cap_cone_generators(ft.faces)
            chain = build_face_chain(ft, gens)
            tuples_out.append({
                "faces": [_face_out(nu, f)
                          for nu, f in enumerate(ft.faces)],
                "union_rank": ft.union_rank,
                "overlap_witness": _vec_out(ft.overlap_witness),
                "union_even": is_even(ft.union_lambda()),
                "cap_generators": [_vec_out(g) for g in gens],
                "cap_lineality": [_vec_out(l) for l in lin],
                "chain": [[_face_out(nu, f) for nu, f in enumerate(step)]
                          for step in chain],
            })
        body_out = {"lo_tuples": tuples_out}
        if "dyadic_index" in problem.raw:
            j = problem.raw["dyadic_index"]
            body_out["dyadic_index"] = j
            body_out["dyadic_tuples"] = [
                {"faces": [_face_out(nu, f)
                           for nu, f in enumerate(ft.faces)],
                 "union_rank": ft.union_rank}
                for ft in classify_dyadic(lam, j)]
        click.echo(emit_report(
            _report(problem, body_out, started), fmt), nl=False)
        return EXIT_BOUNDED
    _run(body)


# ---------------------------------------------------------------------------
# probes
# ---------------------------------------------------------------------------

def _xi_samples(problem: ProblemInput, seed: int, count: int) -> list:
    if "xi" in problem.raw:
        xs = problem.raw["xi"]
        if xs and not isinstance(xs[0], list):
            xs = [xs]
        return [[float(x) for x in row] for row in xs]
    rng = np.random.default_rng(seed)
    d = len(problem.lambdas)
    return [list(rng.uniform(-0.25, 0.25, size=d)) for _ in range(count)]


@main.command("probe-divergence")
@_common
def probe_divergence(input_path, fmt, threads, seed):
    """Log-divergence probe along the engine's odd witness tuple."""
    def body():
        started = time.time()
        problem = _load(input_path)
        p = problem.polynomial()
        verdict = decide_disjoint(problem.lambda_tuple())
        if verdict.bounded:
            raise InputError("E_MALFORMED",
                             "divergence probe needs an unbounded input")
        s0 = face_closure_structure(verdict.face_tuple.faces[0]) \
            if not verdict.face_tuple.faces[0].is_empty else frozenset()
        xi = _xi_samples(problem, seed, 1)[0]
        ks = problem.raw.get("shrink_levels", list(range(4, 15)))
        n = problem.n
        seq = [((2.0 ** -k,) * n, (1.0,) * n) for k in ks]
        res = osc.divergence_probe(p, verdict.face_tuple, s0, xi, seq)
        report = _report(problem, {
            "slope": res.slope, "intercept": res.intercept,
            "r_squared": res.r_squared,
            "inconclusive": res.inconclusive,
            "table": [{"scale": s, "value": v, "bound": b}
                      for s, v, b in res.rows]}, started)
        click.echo(emit_report(report, fmt, csv_rows=res.rows), nl=False)
        return EXIT_BOUNDED
    _run(body)


@main.command("probe-sum")
@_common
def probe_sum(input_path, fmt, threads, seed):
    """Dyadic multiplier-sum plateau probe."""
    def body():
        started = time.time()
        problem = _load(input_path)
        p = problem.polynomial()
        radius = int(problem.raw.get("radius", 15))
        xis = _xi_samples(problem, seed,
                          int(problem.raw.get("xi_count", 20)))
        res = osc.multiplier_sum_probe(p, xis, radius, threads=threads)
        report = _report(problem, {
            "max_sum": res.max_sum,
            "skipped_bound": res.skipped_bound,
            "partial_sums": [
                {str(r): s for r, s in sums.items()}
                for sums in res.partial_sums],
            "table": [{"scale": r, "value": v, "bound": b}
                      for r, v, b in res.rows]}, started)
        click.echo(emit_report(report, fmt, csv_rows=res.rows), nl=False)
        return EXIT_BOUNDED
    _run(body)


@main.command("probe-decay")
@_common
def probe_decay(input_path, fmt, threads, seed):
    """Van der Corput decay table along a cone ray."""
    def body():
        started = time.time()
        problem = _load(input_path)
        p = problem.polynomial()
        lam = problem.lambda_tuple()
        ft = FaceTuple(tuple(poly.improper_face()
                             for poly in lam.polyhedra), 0, None)
        ray = problem.raw.get("ray", [1] * problem.n)
        xi = _xi_samples(problem, seed, 1)[0]
        res = osc.decay_check(p, ft, ray, xi,
                              k_max=int(problem.raw.get("k_max", 12)))
        report = _report(problem, {
            "delta": res.delta, "constant": res.constant,
            "table": [{"scale": k, "value": v, "bound": b}
                      for k, v, b in res.rows]}, started)
        click.echo(emit_report(report, fmt, csv_rows=res.rows), nl=False)
        return EXIT_BOUNDED
    _run(body)


# ---------------------------------------------------------------------------
# certificate verification
# ---------------------------------------------------------------------------

def verify_certificate(cert: dict) -> list:
    """Re-validate an unbounded certificate from scratch; returns a list
    of failure strings (empty = certificate accepted)."""
    failures = []
    try:
        n = int(cert["n"])
        spec = DomainSpec.of(n, [j - 1 for j in cert["S"]])
        lambdas = [ExponentSet.of([tuple(m) for m in block], n)
                   for block in cert["lambda"]]
    except (KeyError, TypeError, ValueError) as exc:
        return [f"malformed certificate: {exc}"]

    graph_axes = [j - 1 for j in cert.get("graph_axes", [])] \
        if "graph_axes" in cert else None

    if "gl_matrix" in cert:
        matrix = [[Fraction(x) for x in row] for row in cert["gl_matrix"]]
        d = len(matrix)
        coef = {}
        for key, val in cert.get("coefficients", {}).items():
            mk = _COEFF_KEY.match(key.replace(" ", ""))
            if not mk:
                return [f"bad coefficient key {key!r}"]
            coef[(int(mk.group(1)) - 1,
                  tuple(int(x) for x in mk.group(2).split(",")))] = \
                Fraction(val)
        det_rows = [[Fraction(x) for x in row] for row in matrix]
        if rank(det_rows) != d:
            failures.append("gl_matrix is singular")
        transformed: dict = {}
        for (nu, m), c in coef.items():
            for i in range(d):
                w = matrix[i][nu] * c
                cur = transformed.get((i, m), Fraction(0)) + w
                if cur == 0:
                    transformed.pop((i, m), None)
                else:
                    transformed[(i, m)] = cur
        claimed = [frozenset(tuple(m) for m in block)
                   for block in cert.get("class_lambda", [])]
        got = [frozenset(m for (i, m) in transformed if i == nu)
               for nu in range(d)]
        got = [s for s in got if s]
        if sorted(map(sorted, claimed)) != sorted(map(sorted, got)):
            failures.append("gl_matrix does not produce class_lambda")
        lambdas = [ExponentSet.of(block, n) for block in claimed]

    lam = LambdaTuple(lambdas, spec)
    polys = lam.polyhedra

    faces = []
    for fdesc in cert["witness_faces"]:
        nu = fdesc["nu"] - 1
        if not (0 <= nu < len(polys)):
            return [f"face component {fdesc['nu']} out of range"]
        if fdesc["is_empty"]:
            faces.append(polys[nu].empty_face())
            continue
        f = polys[nu].face_by_key(
            frozenset(tuple(v) for v in fdesc["vertices"]),
            frozenset(tuple(r) for r in fdesc["rays"]))
        if f is None:
            failures.append(
                f"no face of N(lambda_{fdesc['nu']}) has the claimed "
                "vertex/ray sets")
            continue
        faces.append(f)
    if failures:
        return failures

    pts = []
    allowed = set()
    for f in faces:
        if not f.is_empty:
            pts.extend(sorted(f.vertex_set) + sorted(f.ray_set))
            allowed.update(f.lambda_points())
    if graph_axes is not None:
        axis_vecs = [tuple(int(x) for x in unit(n, j)) for j in graph_axes]
        pts.extend(axis_vecs)
        allowed.update(axis_vecs)

    r = rank(pts)
    if r != cert["union_rank"]:
        failures.append(
            f"union_rank mismatch: claimed {cert['union_rank']}, got {r}")
    if r > n - 1:
        failures.append("union rank is not low (rank <= n-1 fails)")

    odd = [tuple(m) for m in cert["odd_subset"]]
    if not odd:
        failures.append("empty odd subset")
    if not set(odd) <= allowed:
        failures.append("odd subset is not contained in the face points")
    sums = [sum(c) for c in zip(*odd)] if odd else []
    if not all(c % 2 == 1 for c in sums):
        failures.append("odd subset does not sum to an all-odd vector")

    witness = cert.get("overlap_witness")
    if graph_axes is None and witness is None:
        failures.append("missing overlap witness")
    if witness is not None:
        w = tuple(Fraction(str(x)) for x in witness)
        for fdesc, f in zip(cert["witness_faces"], faces):
            if not interior_contains(f, w):
                failures.append(
                    f"overlap witness outside the open cone of the "
                    f"component-{fdesc['nu']} face")
    return failures


@main.command()
@_common
def verify(input_path, fmt, threads, seed):
    """Re-validate an emitted certificate (accepts a full report or a bare
    certificate object)."""
    def body():
        started = time.time()
        with open(input_path, "rb") as fh:
            try:
                raw = json.loads(fh.read().decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise InputError("E_MALFORMED", f"not valid JSON: {exc}")
        cert = raw.get("certificate", raw)
        if not isinstance(cert, dict) or cert.get("kind") != "unbounded":
            raise InputError("E_MALFORMED",
                             "no unbounded certificate found in input")
        failures = verify_certificate(cert)
        report = {
            "valid": not failures,
            "failures": failures,
            "version": __version__,
            "timing_seconds": round(time.time() - started, 6),
        }
        click.echo(emit_report(report, fmt), nl=False)
        return EXIT_BOUNDED if not failures else EXIT_INPUT
    _run(body)


if __name__ == "__main__":
    main()

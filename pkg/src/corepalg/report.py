"""Report serialization, canonical JSON output and numeric comparison.

Complex numbers serialize as [re, im] pairs, matrices as nested lists of
pairs, structure-constant tensors as dense nested float arrays with an
explicit index legend.  The canonical JSON form is byte-stable: keys are
sorted and floats use the shortest round-trip representation, so identical
pipeline inputs reproduce identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

SCHEMA_VERSION = 1

#: Paths whose values are method bookkeeping or noise-level diagnostics,
#: skipped when comparing reports from the analytic and finite-difference
#: pipelines.  The Jacobi witness is the argmax location of the worst defect,
#: which wanders freely once the defects sit at rounding level; the defect
#: values themselves are always compared.
DEFAULT_IGNORED_PATHS = frozenset(
    {"basis.method", "basis.fdStep", "spec.flags.method", "jacobi.maxIndexWitness"}
)


def complex_pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[complex_pair(z) for z in row] for row in m]


def tensor_json(t) -> list:
    """Dense nested lists of a real tensor (any rank)."""
    arr = np.asarray(t)
    if arr.ndim == 0:
        return float(arr)
    return [tensor_json(sub) for sub in arr]


def dumps_canonical(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1, allow_nan=False) + "\n"


@dataclass(frozen=True)
class DiffWitness:
    path: str
    left: object
    right: object
    delta: float | None  # None for non-numeric mismatches


@dataclass(frozen=True)
class ComparisonResult:
    witnesses: tuple
    schema_errors: tuple

    @property
    def matches(self) -> bool:
        return not self.witnesses and not self.schema_errors


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _walk(a, b, path, tol, ignored, witnesses, schema_errors):
    if path in ignored:
        return
    if isinstance(a, dict) and isinstance(b, dict):
        if set(a) != set(b):
            schema_errors.append(
                f"{path or '<root>'}: key sets differ "
                f"({sorted(set(a) ^ set(b))})"
            )
            return
        for key in sorted(a):
            sub = f"{path}.{key}" if path else key
            _walk(a[key], b[key], sub, tol, ignored, witnesses, schema_errors)
        return
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            schema_errors.append(f"{path}: list lengths differ ({len(a)} vs {len(b)})")
            return
        for i, (x, y) in enumerate(zip(a, b)):
            _walk(x, y, f"{path}[{i}]", tol, ignored, witnesses, schema_errors)
        return
    if _is_number(a) and _is_number(b):
        delta = abs(float(a) - float(b))
        if delta > tol:
            witnesses.append(DiffWitness(path, a, b, delta))
        return
    if type(a) is not type(b):
        schema_errors.append(f"{path}: type mismatch ({type(a).__name__} vs {type(b).__name__})")
        return
    if a != b:
        witnesses.append(DiffWitness(path, a, b, None))


def compare_reports(
    a: dict, b: dict, tol: float = 1e-9, ignored=DEFAULT_IGNORED_PATHS
) -> ComparisonResult:
    """Fieldwise numeric diff of two reports; tensors compare entrywise.

    Structural differences (missing keys, mismatched dimensions or value
    types, differing schema versions) are reported separately from numeric
    witnesses that exceed ``tol``.
    """
    witnesses: list = []
    schema_errors: list = []
    if a.get("schemaVersion") != b.get("schemaVersion"):
        schema_errors.append(
            f"schemaVersion mismatch: {a.get('schemaVersion')} vs {b.get('schemaVersion')}"
        )
        return ComparisonResult((), tuple(schema_errors))
    _walk(a, b, "", tol, frozenset(ignored), witnesses, schema_errors)
    return ComparisonResult(tuple(witnesses), tuple(schema_errors))


def _fmt_check(name: str, entry: dict) -> str:
    status = "PASS" if entry["passed"] else "FAIL"
    return f"  [{status}] {name}: value {entry['value']:.3e} vs threshold {entry['threshold']:.1e}"


def render_text(report: dict, timings: dict | None = None) -> str:
    """Human-readable companion of the JSON report."""
    lines = []
    spec = report["spec"]
    group = spec["group"]
    lines.append(f"corepalg {report['toolVersion']} analysis report")
    lines.append(f"seed: {report['seed']}")
    lines.append("")
    lines.append(f"group: {group['name']} (d = {group['dim']}, n = {group['nParams']})")
    corep = report["corep"]
    if corep is None:
        lines.append("extension: none (plain Lie pipeline)")
    else:
        lines.append(
            f"extension: kind {corep['kind']}, type {corep['type']}, "
            f"block dimension m = {corep['blockDim']}, signature {corep['signature']:+d}"
        )
        if corep["intertwiner"] is not None:
            iw = corep["intertwiner"]
            lines.append(
                f"intertwiner: sign {iw['sign']}, residual {iw['residual']:.3e}, "
                f"null-space dimension {iw['nullspaceDim']}"
            )
    lines.append("")
    basis = report["basis"]
    span = basis["span"]
    lines.append(f"tangent basis ({basis['method']}):")
    lines.append(
        "  coset generator indices follow the labeling {0, n+1, ..., 2n}; "
        "index 0 is the phase direction"
    )
    lines.append(
        f"  real ranks: subgroup {span['realRankSubgroup']}, "
        f"coset {span['realRankCoset']}, union {span['realRankUnion']}"
    )
    lines.append(
        f"  complex rank of subgroup + phase family: {span['complexRankSubgroupPhase']}"
    )
    lines.append(f"  span pattern: {span['corollaryTag']}")
    if basis["fdAgreement"] is not None:
        lines.append(f"  analytic/finite-difference agreement: {basis['fdAgreement']:.3e}")
    lines.append("")
    constants = report["constants"]
    lines.append("structure constants:")
    lines.append(
        f"  closed: {constants['closed']} (worst residual {constants['worstResidual']:.3e}, "
        f"tolerance {constants['tol']:.1e})"
    )
    lines.append(f"  non-unique expansion: {constants['nonUnique']}")
    grading = report["grading"]
    if grading["centralX0"] is not None:
        lines.append(f"  phase generator central: {grading['centralX0']}")
    jac = report["jacobi"]
    lines.append(
        f"jacobi defects: lie {jac['lieDefect']:.3e}, rel1 {jac['defect1']:.3e}, "
        f"rel2 {jac['defect2']:.3e}, rel3 {jac['defect3']:.3e}"
        + (" (advisory: expansion not closed)" if jac["advisory"] else "")
    )
    lines.append("")
    topo = report["topology"]
    lines.append("topology:")
    if topo["metric"] is not None:
        lines.append(
            f"  metric axioms: max violation {topo['metric']['maxViolation']:.3e} over "
            f"{topo['metric']['trials']} triples; faithfulness warnings "
            f"{topo['metric']['faithfulnessFailures']}"
        )
        lines.append(
            "  note: four metric conditions are checked (symmetry, self-distance, "
            "positivity, triangle); the phase alpha0 never enters the coset distance d2"
        )
    conn = topo["connectivity"]
    if conn is not None:
        lines.append(
            f"  connectedness: {conn['verdict']} ({conn['reason']}), "
            f"evidence |D(a0) - E| = {conn['evidence']:.6g}"
        )
    lines.append("")
    lines.append("checks:")
    for name in sorted(report["checks"]):
        lines.append(_fmt_check(name, report["checks"][name]))
    if timings:
        lines.append("")
        lines.append("timings (s):")
        for stage, secs in timings.items():
            lines.append(f"  {stage}: {secs:.4f}")
    return "\n".join(lines) + "\n"

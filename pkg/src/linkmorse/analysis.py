"""Pipeline gluing enumeration, the sign formulas, and the numerical oracle.

One :class:`ConfigurationAnalysis` per enumerated cyclic configuration holds
the descriptor, coordinates, degeneracy flags, signed area, closed-form
Morse data (when the configuration is generic enough for the formulas), the
oracle verdict, and their agreement.  JSON encoding/decoding of enumeration
artifacts lives here too.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import LinkmorseError
from .geometry import (
    CircleFit,
    Configuration,
    Linkage,
    edge_orientations,
    is_convex_positive,
    measure_half_angles,
    signed_area,
    validate_configuration,
)
from .morse import MorseReport, SignReport, morse_index, sign_report
from .oracle import EIGEN_ZERO_TOL, OracleVerdict, criticality_residual, oracle_index
from .solver import (
    CyclicConfiguration,
    CyclicDescriptor,
    DegeneracyFlags,
    SolverOptions,
    enumerate_cyclic,
)

# Residual above which an allegedly cyclic configuration is not accepted as a
# critical point during verification.
CRITICALITY_TOL = 1e-8


@dataclass(frozen=True)
class ConfigurationAnalysis:
    """Everything computed about one enumerated configuration."""

    descriptor: CyclicDescriptor
    configuration: Configuration
    flags: DegeneracyFlags
    area: float
    convex: bool
    signs: SignReport | None
    morse: MorseReport | None
    morse_error: str | None
    oracle: OracleVerdict | None
    oracle_error: str | None

    @property
    def index(self) -> int | None:
        """Morse index: the closed-form value when available, otherwise the
        oracle count of negative eigenvalues (used for configurations whose
        subconfiguration sequence is degenerate)."""
        if self.morse is not None:
            return self.morse.index
        if self.oracle is not None and self.oracle.is_morse:
            return self.oracle.index
        return None

    @property
    def index_source(self) -> str | None:
        if self.morse is not None:
            return "formula"
        if self.oracle is not None and self.oracle.is_morse:
            return "oracle"
        return None

    @property
    def comparable(self) -> bool:
        """True when both the formulas and the oracle produced Morse data."""
        return (self.signs is not None and self.morse is not None
                and self.oracle is not None and self.oracle.is_morse)

    @property
    def agree(self) -> bool | None:
        if not self.comparable:
            return None
        return (self.morse.index == self.oracle.index
                and self.signs.h_sign == self.oracle.det_sign)


def analyze_configuration(linkage: Linkage, item: CyclicConfiguration,
                          eigen_tol: float = EIGEN_ZERO_TOL) -> ConfigurationAnalysis:
    """Run the sign formulas and the oracle on one enumerated configuration.

    Flagged (near-degenerate) configurations skip both: the closed-form
    results only hold generically and the oracle comparison would be
    meaningless on the degeneracy boundary.
    """
    desc, config, flags = item.descriptor, item.configuration, item.flags
    area = signed_area(config.points)
    convex = is_convex_positive(config.points)
    signs = morse = oracle = None
    morse_error = oracle_error = None
    if flags.any:
        morse_error = oracle_error = "flagged non-generic"
    else:
        try:
            signs = sign_report(desc.alphas, desc.eps)
            morse = morse_index(config, desc.circle)
        except LinkmorseError as err:
            morse_error = str(err)
        try:
            oracle = oracle_index(config, linkage, eigen_tol=eigen_tol)
        except LinkmorseError as err:
            oracle_error = str(err)
    return ConfigurationAnalysis(
        descriptor=desc, configuration=config, flags=flags, area=area, convex=convex,
        signs=signs, morse=morse, morse_error=morse_error,
        oracle=oracle, oracle_error=oracle_error,
    )


def analyze_linkage(linkage: Linkage, opts: SolverOptions | None = None,
                    eigen_tol: float = EIGEN_ZERO_TOL) -> list:
    """Enumerate all cyclic configurations and analyze each."""
    return [analyze_configuration(linkage, item, eigen_tol=eigen_tol)
            for item in enumerate_cyclic(linkage, opts)]


def index_summary(analyses: list) -> str:
    """Human-readable count per Morse index, e.g.
    '14 configurations: index 0 x2, index 1 x10, index 2 x2'."""
    counts: dict = {}
    flagged = 0
    unknown = 0
    for a in analyses:
        if a.flags.any:
            flagged += 1
        idx = a.index
        if idx is None:
            if not a.flags.any:
                unknown += 1
            continue
        counts[idx] = counts.get(idx, 0) + 1
    parts = [f"index {m} x{counts[m]}" for m in sorted(counts)]
    text = f"{len(analyses)} configurations"
    if parts:
        text += ": " + ", ".join(parts)
    if flagged:
        text += f" ({flagged} flagged)"
    if unknown:
        text += f" ({unknown} without index)"
    return text


# ---------------------------------------------------------------------------
# JSON artifacts


def record_dict(analysis: ConfigurationAnalysis) -> dict:
    """The wire record of one configuration."""
    desc = analysis.descriptor
    return {
        "eps": list(desc.eps.eps),
        "k": desc.winding,
        "r": float(desc.radius),
        "center": [float(v) for v in desc.center],
        "points": [[float(x), float(y)] for x, y in analysis.configuration.points],
        "area": float(analysis.area),
        "flags": analysis.flags.to_json_dict(),
    }


def enumeration_dict(linkage: Linkage, analyses: list,
                     opts: SolverOptions | None = None, seed: int | None = None) -> dict:
    """Envelope around the record array: linkage, seed, and tolerances are
    recorded so runs are reproducible from the artifact alone."""
    opts = opts or SolverOptions()
    return {
        "lengths": [float(v) for v in linkage.lengths],
        "seed": seed,
        "tolerances": {
            "root_rtol": opts.root_rtol,
            "degeneracy": opts.degeneracy_tol,
            "closure": opts.closure_tol,
        },
        "configurations": [record_dict(a) for a in analyses],
    }


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def load_enumeration(text: str):
    """Parse an enumeration artifact back to (linkage, records)."""
    data = json.loads(text)
    if not isinstance(data, dict) or "lengths" not in data or "configurations" not in data:
        raise LinkmorseError("enumeration JSON must carry 'lengths' and 'configurations'")
    linkage = Linkage(np.asarray(data["lengths"], dtype=float))
    records = data["configurations"]
    if not isinstance(records, list):
        raise LinkmorseError("'configurations' must be an array")
    return linkage, records


# ---------------------------------------------------------------------------
# Verification of an enumeration artifact


@dataclass(frozen=True)
class VerificationRow:
    """Per-record verification outcome."""

    residual: float | None
    inertia: tuple | None
    det_sign: int | None
    index: int | None
    formula_index: int | None
    agree: bool
    flagged: bool
    note: str | None

    def to_json_dict(self) -> dict:
        return {
            "residual": self.residual,
            "inertia": None if self.inertia is None else list(self.inertia),
            "det_sign": self.det_sign,
            "index": self.index,
            "formula_index": self.formula_index,
            "agree": self.agree,
            "flagged": self.flagged,
            "note": self.note,
        }


def _fail(note: str) -> VerificationRow:
    return VerificationRow(residual=None, inertia=None, det_sign=None, index=None,
                           formula_index=None, agree=False, flagged=False, note=note)


def verify_record(linkage: Linkage, record: dict,
                  eigen_tol: float = EIGEN_ZERO_TOL) -> VerificationRow:
    """Re-derive everything from the recorded coordinates and cross-check.

    The points must satisfy the linkage constraints, lie on the recorded
    circle (tamper detection for r and center), reproduce the recorded
    orientation string, and be critical; the closed-form sign data must then
    agree with the oracle.  Flagged records are reported but exempt from the
    agreement requirement.  Configurations whose subconfiguration sequence is
    degenerate (coincident vertices, diametral chords) still have their
    full-polygon determinant sign checked.
    """
    try:
        config = Configuration(np.asarray(record["points"], dtype=float))
        flags = record.get("flags", {})
        flagged = bool(flags.get("delta_zero")) or any(flags.get("central", [])) \
            or any(flags.get("near_flip", []))
        violations = validate_configuration(linkage, config.points, tol=1e-6)
        if violations:
            return _fail(f"constraint violations: {violations[0]}")
        center = np.asarray(record["center"], dtype=float).reshape(2)
        radius = float(record["r"])
        if not radius > 0.0:
            return _fail(f"recorded radius {radius} is not positive")
        dist = np.linalg.norm(config.points - center[None, :], axis=1)
        worst = float(np.max(np.abs(dist - radius)))
        if worst > 1e-6 * radius:
            return _fail(f"points deviate from the recorded circle by {worst:.3e}")
        fit = CircleFit(center=center, radius=radius)
        lam, residual = criticality_residual(config, linkage)
        if residual > CRITICALITY_TOL:
            return _fail(f"criticality residual {residual:.3e} exceeds {CRITICALITY_TOL:.1e}")
        if flagged:
            return VerificationRow(residual=residual, inertia=None, det_sign=None,
                                   index=None, formula_index=None, agree=True,
                                   flagged=True, note="flagged, excluded")
        verdict = oracle_index(config, linkage, eigen_tol=eigen_tol)
        if not verdict.is_morse:
            return VerificationRow(residual=residual, inertia=verdict.inertia,
                                   det_sign=verdict.det_sign, index=verdict.index,
                                   formula_index=None, agree=False, flagged=False,
                                   note="oracle found a zero eigenvalue")
        eps = edge_orientations(config.points, center)
        if list(eps.eps) != [int(v) for v in record["eps"]]:
            return _fail("recorded orientation string disagrees with the geometry")
        alphas = measure_half_angles(config.points, fit)
        signs = sign_report(alphas, eps)
        try:
            report = morse_index(config, fit)
        except LinkmorseError as err:
            # index formula undefined on a degenerate subconfiguration; the
            # determinant sign of the full polygon is still comparable
            agree = signs.h_sign == verdict.det_sign
            return VerificationRow(residual=residual, inertia=verdict.inertia,
                                   det_sign=verdict.det_sign, index=verdict.index,
                                   formula_index=None, agree=agree, flagged=False,
                                   note=f"index formula not applicable ({err})" if agree
                                   else "determinant sign disagrees")
        agree = report.index == verdict.index and signs.h_sign == verdict.det_sign
        return VerificationRow(residual=residual, inertia=verdict.inertia,
                               det_sign=verdict.det_sign, index=verdict.index,
                               formula_index=report.index, agree=agree, flagged=False,
                               note=None if agree else "formula and oracle disagree")
    except LinkmorseError as err:
        return _fail(str(err))


def verify_enumeration(linkage: Linkage, records: list,
                       eigen_tol: float = EIGEN_ZERO_TOL):
    """Verify every record; returns (rows, summary line, all_ok)."""
    rows = [verify_record(linkage, rec, eigen_tol=eigen_tol) for rec in records]
    flagged = sum(1 for r in rows if r.flagged)
    good = sum(1 for r in rows if r.agree and not r.flagged)
    ok = all(r.agree for r in rows)
    summary = f"{good}/{len(rows) - flagged} agree ({flagged} flagged)"
    return rows, summary, ok

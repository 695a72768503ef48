"""Thin-structure analysis of a computed graded algebra.

Decides the covering property, two-step centralizers, diamond locations
and types, chain structure and collapse.  All decisions are exact linear
algebra over F_p; there are no tolerances anywhere.

Component kinds:

* ``first-diamond``       the degree-1 component (always two-dimensional)
* ``genuine-infinite``    diamond with [wxx] = 0
* ``genuine-finite``      diamond with [wyx] = lambda [wxx], lambda != 0
* ``fake``                one-dimensional component at a diamond-pattern
                          degree with [wy] = 0 and [wxy] = 0
* ``chain``               ordinary one-dimensional component
* ``boundary-indeterminate``  a width-2 component whose type cannot be
                          decided (truncation frontier, or last nonzero
                          component: it formally satisfies the defining
                          relations of a diamond of any type)
* ``untypable``           the defining relations fail; always a finding
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .engine import GradedAlgebra, HomElement
from .linalg import left_nullspace, rank

__all__ = [
    "CHAIN",
    "GENUINE_FINITE",
    "GENUINE_INFINITE",
    "FAKE",
    "BOUNDARY",
    "UNTYPABLE",
    "FIRST_DIAMOND",
    "DiamondRecord",
    "ThinReport",
    "two_step_centralizer",
    "normalize_generators",
    "check_covering",
    "classify_component",
    "check_chain_theorem",
    "full_report",
    "REPORT_SCHEMA",
]

REPORT_SCHEMA = "thinlie.report/1"

CHAIN = "chain"
GENUINE_FINITE = "genuine-finite"
GENUINE_INFINITE = "genuine-infinite"
FAKE = "fake"
BOUNDARY = "boundary-indeterminate"
UNTYPABLE = "untypable"
FIRST_DIAMOND = "first-diamond"

DEFAULT_LINE_CAP = 97
_SAMPLE_SEED = 0x7D1A


@dataclass(frozen=True)
class DiamondRecord:
    degree: int
    dim: int
    kind: str
    lam: int | None = None
    witness: tuple[int, ...] | None = None
    note: str | None = None

    def is_diamond(self) -> bool:
        return self.kind in (
            FIRST_DIAMOND,
            GENUINE_FINITE,
            GENUINE_INFINITE,
            FAKE,
            BOUNDARY,
        )

    def to_jsonable(self) -> dict:
        out: dict = {"degree": self.degree, "dim": self.dim, "kind": self.kind}
        if self.kind == GENUINE_FINITE:
            out["type"] = self.lam
        elif self.kind == GENUINE_INFINITE:
            out["type"] = "infinite"
        elif self.kind == FAKE:
            out["type"] = 0
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.note:
            out["note"] = self.note
        return out


def _unit_generators(alg: GradedAlgebra) -> tuple[HomElement, HomElement]:
    return alg.basis_element(1, 0), alg.basis_element(1, 1)


def two_step_centralizer(alg: GradedAlgebra, k: int) -> np.ndarray:
    """Basis rows (coordinates in x, y) of C_{L_1}(L_k)."""
    if k + 1 > alg.max_degree:
        raise ValueError(f"centralizer at degree {k} needs degree {k + 1} computed")
    ax = alg.action_matrix(k, "x")
    ay = alg.action_matrix(k, "y")
    stacked = np.stack([ax.ravel(), ay.ravel()])
    return left_nullspace(stacked, alg.p)


def normalize_generators(alg: GradedAlgebra) -> tuple[HomElement, HomElement]:
    """Choose generators (x', y') with y' spanning C_{L_1}(L_2).

    x' is the first of the input basis vectors outside the line of y'.
    Deterministic; raises when the centralizer of L_2 is not a line.
    """
    c2 = two_step_centralizer(alg, 2)
    if c2.shape[0] != 1:
        raise ValueError(
            "not a (-1)-algebra normal form: centralizer of L_2 has dimension "
            f"{c2.shape[0]}"
        )
    y = c2[0] % alg.p
    lead = int(np.nonzero(y)[0][0])
    y = y * pow(int(y[lead]), -1, alg.p) % alg.p
    for i in range(2):
        cand = np.zeros(2, dtype=np.int64)
        cand[i] = 1
        if rank(np.vstack([y, cand]), alg.p) == 2:
            return HomElement(1, cand), HomElement(1, y)
    raise AssertionError("unreachable: a line cannot contain both basis vectors")


def _lines(dim: int, p: int, line_cap: int, sample_lines: int, seed_extra: int):
    """Representatives of the 1-dimensional subspaces of F_p^dim.

    For dim 2 and p above the cap, falls back to a deterministic sample;
    the second return value says whether the enumeration was exhaustive.
    """
    if dim == 1:
        return [np.array([1], dtype=np.int64)], True
    reps = [np.array([0, 1], dtype=np.int64)]
    if p <= line_cap:
        reps += [np.array([1, t], dtype=np.int64) for t in range(p)]
        return reps, True
    rng = random.Random(_SAMPLE_SEED + seed_extra)
    reps.append(np.array([1, 0], dtype=np.int64))
    reps += [
        np.array([1, rng.randrange(1, p)], dtype=np.int64)
        for _ in range(sample_lines)
    ]
    return reps, False


def check_covering(
    alg: GradedAlgebra,
    d: int,
    line_cap: int = DEFAULT_LINE_CAP,
    sample_lines: int = 24,
) -> tuple[bool, bool]:
    """Whether every line of L_d brackets onto all of L_{d+1}.

    Returns (holds, exhaustive).  Fails fast on the first bad line.
    """
    if d + 1 > alg.max_degree:
        raise ValueError(f"covering at degree {d} needs degree {d + 1} computed")
    n = alg.dim(d)
    if n > 2:
        raise ValueError("component too wide for line enumeration")
    if n == 0:
        return True, True
    target = alg.dim(d + 1)
    ax = alg.action_matrix(d, "x")
    ay = alg.action_matrix(d, "y")
    reps, exhaustive = _lines(n, alg.p, line_cap, sample_lines, d)
    for u in reps:
        span = np.vstack([u @ ax % alg.p, u @ ay % alg.p])
        if rank(span, alg.p) != target:
            return False, exhaustive
    return True, exhaustive


def _solve_ratio(a: np.ndarray, b: np.ndarray, p: int) -> int | None:
    """lambda with b = lambda * a, or None when no such scalar exists."""
    nz = np.nonzero(a)[0]
    lead = int(nz[0])
    lam = int(b[lead]) * pow(int(a[lead]), -1, p) % p
    if np.array_equal(lam * a % p, b % p):
        return lam
    return None


def classify_component(
    alg: GradedAlgebra,
    h: int,
    q: int | None = None,
    generators: tuple[HomElement, HomElement] | None = None,
) -> DiamondRecord:
    """Classify L_h from the bracket relations on w spanning L_{h-1}."""
    if h + 1 > alg.max_degree:
        raise ValueError(f"classification at degree {h} needs degree {h + 1} computed")
    if h < 2:
        raise ValueError("only degrees >= 2 are classified against a predecessor")
    dim_h = alg.dim(h)
    if dim_h == 0:
        raise ValueError(f"component of degree {h} is zero")
    if alg.dim(h - 1) != 1:
        return DiamondRecord(
            h, dim_h, UNTYPABLE, note="no one-dimensional predecessor"
        )
    gx, gy = generators if generators is not None else _unit_generators(alg)
    w = alg.basis_element(h - 1, 0)
    witness = tuple(int(c) for c in w.coeffs)
    br = alg.bracket
    wx, wy = br(w, gx), br(w, gy)
    if dim_h == 2:
        sym = (br(wx, gy).coeffs + br(wy, gx).coeffs) % alg.p
        wyy = br(wy, gy)
        if sym.any() or not wyy.is_zero():
            which = "[wxy]+[wyx] != 0" if sym.any() else "[wyy] != 0"
            return DiamondRecord(h, dim_h, UNTYPABLE, witness=witness, note=which)
        a = br(wx, gx).coeffs
        b = br(wy, gx).coeffs
        if not a.any() and not b.any():
            return DiamondRecord(
                h,
                2,
                BOUNDARY,
                witness=witness,
                note="both [wxx] and [wyx] vanish; any type fits",
            )
        if not a.any():
            return DiamondRecord(h, 2, GENUINE_INFINITE, witness=witness)
        lam = _solve_ratio(a, b, alg.p)
        if lam is None:
            return DiamondRecord(
                h, 2, UNTYPABLE, witness=witness, note="[wyx] not a multiple of [wxx]"
            )
        if lam == 0:
            return DiamondRecord(
                h,
                2,
                UNTYPABLE,
                witness=witness,
                note="type-zero relations on a two-dimensional component",
            )
        return DiamondRecord(h, 2, GENUINE_FINITE, lam=lam, witness=witness)
    # dim_h == 1
    wxy = br(wx, gy)
    equations_hold = wy.is_zero() and wxy.is_zero()
    if equations_hold and q is not None and (h - 1) % (q - 1) == 0:
        return DiamondRecord(h, 1, FAKE, witness=witness)
    note = None
    if equations_hold and q is None:
        note = "fake-diamond relations hold but q is unknown"
    return DiamondRecord(h, 1, CHAIN, witness=witness, note=note)


def check_chain_theorem(
    alg: GradedAlgebra,
    m: int,
    q: int,
    generators: tuple[HomElement, HomElement] | None = None,
) -> bool:
    """After a typed diamond at degree m: y centralizes the next q-3
    components and no diamond occurs before degree m + q - 1."""
    if m + q - 2 > alg.max_degree:
        raise ValueError(
            f"chain check at degree {m} needs degree {m + q - 2} computed"
        )
    _, gy = generators if generators is not None else _unit_generators(alg)
    for i in range(m + 1, m + q - 2):
        for j in range(alg.dim(i)):
            if not alg.bracket(alg.basis_element(i, j), gy).is_zero():
                return False
    for i in range(m + 1, m + q - 1):
        if alg.dim(i) > 1:
            return False
    return True


@dataclass
class ThinReport:
    p: int
    q: int | None
    max_degree: int
    dims: tuple[int, ...]
    collapse_degree: int | None
    records: list[DiamondRecord]
    centralizers: list[dict]
    covering_ok_upto: int
    covering_failures: list[int]
    covering_exhaustive: bool
    diamond_degrees: list[int]
    diamond_distances: list[int]
    second_diamond: int | None
    generators: dict
    findings: list[dict] = dc_field(default_factory=list)

    def has_findings(self) -> bool:
        return bool(self.findings)

    def to_jsonable(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "p": self.p,
            "q": self.q,
            "max_degree": self.max_degree,
            "dims": list(self.dims),
            "collapse_degree": self.collapse_degree,
            "records": [r.to_jsonable() for r in self.records],
            "centralizers": self.centralizers,
            "covering_ok_upto": self.covering_ok_upto,
            "covering_failures": self.covering_failures,
            "covering_exhaustive": self.covering_exhaustive,
            "diamond_degrees": self.diamond_degrees,
            "diamond_distances": self.diamond_distances,
            "second_diamond": self.second_diamond,
            "generators": self.generators,
            "findings": self.findings,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True, indent=indent)

    def to_text(self) -> str:
        lines = [
            f"graded algebra over F_{self.p}"
            + (f", q = {self.q}" if self.q else "")
            + f", degrees 1..{self.max_degree}",
            "dims: " + ",".join(str(d) for d in self.dims),
            "",
            f"{'degree':>6}  {'dim':>3}  {'kind':<22}  {'type':<8}  {'centralizer':<12}",
        ]
        cent_by_degree = {c["degree"]: c for c in self.centralizers}
        for rec in self.records:
            js = rec.to_jsonable()
            typ = js.get("type", "")
            typ = "oo" if typ == "infinite" else str(typ) if typ != "" else "-"
            cent = cent_by_degree.get(rec.degree)
            if cent is None:
                cdesc = "-"
            elif cent["kind"] == "line":
                cdesc = f"<{cent['line'][0]}x+{cent['line'][1]}y>"
            else:
                cdesc = cent["kind"]
            note = f"  ({rec.note})" if rec.note else ""
            lines.append(
                f"{rec.degree:>6}  {rec.dim:>3}  {rec.kind:<22}  {typ:<8}  {cdesc:<12}{note}"
            )
        lines.append("")
        lines.append(
            "collapse degree: "
            + (str(self.collapse_degree) if self.collapse_degree else "none within range")
        )
        lines.append(f"covering holds up to degree {self.covering_ok_upto}")
        if not self.covering_exhaustive:
            lines.append("covering check used sampled lines")
        if self.covering_failures:
            lines.append(
                "covering failures at: " + ",".join(map(str, self.covering_failures))
            )
        lines.append("diamond degrees: " + ",".join(map(str, self.diamond_degrees)))
        lines.append(
            "diamond distances: " + ",".join(map(str, self.diamond_distances))
        )
        if self.findings:
            lines.append("findings:")
            for f in self.findings:
                where = f" (degree {f['degree']})" if f.get("degree") else ""
                lines.append(f"  - {f['kind']}{where}: {f['detail']}")
        else:
            lines.append("findings: none")
        return "\n".join(lines) + "\n"


def full_report(
    alg: GradedAlgebra,
    q: int | None = None,
    line_cap: int = DEFAULT_LINE_CAP,
) -> ThinReport:
    """Run the whole analysis over the algebra's computed range."""
    p = alg.p
    top = alg.max_degree
    dims = alg.dims()
    if q is None:
        n = alg.meta.get("params", {}).get("n")
        q = p**n if n else None
    findings: list[dict] = []

    collapse = None
    for d in range(1, top + 1):
        if dims[d - 1] == 0:
            collapse = d
            break
    last_nonzero = collapse - 1 if collapse else top

    try:
        gx, gy = normalize_generators(alg)
        gen_info = {
            "x": gx.coeffs.tolist(),
            "y": gy.coeffs.tolist(),
            "normalized": True,
        }
    except ValueError as exc:
        gx, gy = _unit_generators(alg)
        gen_info = {
            "x": gx.coeffs.tolist(),
            "y": gy.coeffs.tolist(),
            "normalized": False,
        }
        findings.append({"kind": "normalization", "degree": 2, "detail": str(exc)})

    # Covering and width.
    covering_failures: list[int] = []
    covering_exhaustive = True
    covering_ok_upto = 0
    prefix_intact = True
    for d in range(1, top):
        if dims[d - 1] == 0:
            break
        if dims[d - 1] > 2:
            findings.append(
                {
                    "kind": "width",
                    "degree": d,
                    "detail": f"component of dimension {dims[d - 1]} exceeds width two",
                }
            )
            prefix_intact = False
            continue
        holds, exhaustive = check_covering(alg, d, line_cap=line_cap)
        covering_exhaustive = covering_exhaustive and exhaustive
        if holds and prefix_intact:
            covering_ok_upto = d
        elif not holds:
            covering_failures.append(d)
            prefix_intact = False
            findings.append(
                {
                    "kind": "covering",
                    "degree": d,
                    "detail": "some line of this component does not cover the next",
                }
            )
    if dims[top - 1] > 2:
        findings.append(
            {
                "kind": "width",
                "degree": top,
                "detail": f"component of dimension {dims[top - 1]} exceeds width two",
            }
        )

    # Records per degree.
    records = [DiamondRecord(1, dims[0], FIRST_DIAMOND)]
    for h in range(2, last_nonzero + 1):
        dim_h = dims[h - 1]
        if h == top:
            kind = BOUNDARY if dim_h == 2 else CHAIN
            records.append(
                DiamondRecord(h, dim_h, kind, note="truncation frontier")
            )
            continue
        if dim_h > 2:
            records.append(
                DiamondRecord(h, dim_h, UNTYPABLE, note="component wider than two")
            )
            continue
        if dim_h == 1 and dims[h - 2] != 1:
            # Ordinary chain component right after a diamond; no type
            # question arises there.
            records.append(DiamondRecord(h, 1, CHAIN))
            continue
        rec = classify_component(alg, h, q=q, generators=(gx, gy))
        records.append(rec)
    for rec in records:
        if rec.kind == UNTYPABLE:
            findings.append(
                {
                    "kind": "untypable",
                    "degree": rec.degree,
                    "detail": rec.note or "defining relations fail",
                }
            )

    # Two-step centralizers, compared against the expected line of y.
    rec_by_degree = {r.degree: r for r in records}
    centralizers: list[dict] = []
    for k in range(2, min(top, last_nonzero + 1)):
        if dims[k - 1] == 0:
            break
        cent = two_step_centralizer(alg, k)
        ndim = cent.shape[0]
        if ndim == 0:
            entry = {"degree": k, "kind": "zero"}
        elif ndim == 1:
            line = cent[0] % p
            lead = int(np.nonzero(line)[0][0])
            line = line * pow(int(line[lead]), -1, p) % p
            entry = {"degree": k, "kind": "line", "line": line.tolist()}
        else:
            entry = {"degree": k, "kind": "all"}
        centralizers.append(entry)
        if dims[k - 1] == 1 and k < last_nonzero:
            successor = rec_by_degree.get(k + 1)
            succ_genuine = successor is not None and successor.kind in (
                GENUINE_FINITE,
                GENUINE_INFINITE,
            )
            succ_unknown = successor is None or successor.kind in (
                BOUNDARY,
                UNTYPABLE,
            )
            if succ_unknown:
                continue
            y_line = (gy.coeffs % p).tolist()
            if succ_genuine and entry["kind"] != "zero":
                findings.append(
                    {
                        "kind": "centralizer",
                        "degree": k,
                        "detail": "component before a genuine diamond has a nontrivial centralizer",
                    }
                )
            elif not succ_genuine and not (
                entry["kind"] == "line" and entry["line"] == y_line
            ):
                findings.append(
                    {
                        "kind": "centralizer",
                        "degree": k,
                        "detail": "chain component is not centralized exactly by y",
                    }
                )

    diamond_degrees = [r.degree for r in records if r.is_diamond()]
    distances = [b - a for a, b in zip(diamond_degrees, diamond_degrees[1:])]
    second = next((r.degree for r in records[1:] if r.dim == 2), None)

    return ThinReport(
        p=p,
        q=q,
        max_degree=top,
        dims=dims,
        collapse_degree=collapse,
        records=records,
        centralizers=centralizers,
        covering_ok_upto=covering_ok_upto,
        covering_failures=covering_failures,
        covering_exhaustive=covering_exhaustive,
        diamond_degrees=diamond_degrees,
        diamond_distances=distances,
        second_diamond=second,
        generators=gen_info,
        findings=findings,
    )

"""Degree-by-degree construction of maximal graded Lie algebras over F_p.

The algebra lives on two degree-1 generators x, y.  Each degree-d
component is the span of the formal brackets [b, x], [b, y] over the
degree d-1 basis, cut down by every antisymmetry and Jacobi instance on
basis elements with degree sum d, together with the relators of degree d.
Relations of lower degree propagate automatically because the candidate
space is built on the already-reduced basis.

Each basis element of degree >= 2 records a definition [parent, letter];
general brackets are evaluated by recursing on the right argument:

    [u, [w, g]] = [[u, w], g] - [[u, g], w]

For freshly computed algebras the parent is a basis vector; quotient
algebras (see thin_core) carry dense parent vectors, which the recursion
handles the same way.
"""

from __future__ import annotations

import json
import itertools

import numpy as np

from .fields import PrimeField
from .linalg import rref, left_nullspace
from .presentations import Presentation, Word

__all__ = [
    "HomElement",
    "GradedAlgebra",
    "compute",
    "thin_core",
    "save_algebra",
    "load_algebra",
    "ALGEBRA_SCHEMA",
]

ALGEBRA_SCHEMA = "thinlie.algebra/1"

_X, _Y = 0, 1
_LETTER_INDEX = {"x": _X, "y": _Y}


def _letter_index(letter) -> int:
    if letter in (_X, _Y):
        return letter
    try:
        return _LETTER_INDEX[letter]
    except KeyError:
        raise ValueError(f"generator must be 'x' or 'y', got {letter!r}") from None


class HomElement:
    """A coefficient vector in the basis of one homogeneous component."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs) -> None:
        self.degree = degree
        self.coeffs = np.asarray(coeffs, dtype=np.int64)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomElement):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __add__(self, other: "HomElement") -> "HomElement":
        if self.degree != other.degree:
            raise ValueError("cannot add elements of different degrees")
        return HomElement(self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other: "HomElement") -> "HomElement":
        if self.degree != other.degree:
            raise ValueError("cannot subtract elements of different degrees")
        return HomElement(self.degree, self.coeffs - other.coeffs)

    def __rmul__(self, scalar: int) -> "HomElement":
        return HomElement(self.degree, self.coeffs * int(scalar))

    def __repr__(self) -> str:
        return f"HomElement(deg={self.degree}, {self.coeffs.tolist()})"


class GradedAlgebra:
    """Computed graded algebra: bases, definitions and action tables.

    Instances are immutable once compute()/thin_core() returns and can be
    shared read-only; the internal bracket cache only ever accumulates
    values derived from the fixed tables.
    """

    def __init__(self, field, max_degree, labels, defs, action, meta=None,
                 relator_log=None):
        self.field: PrimeField = field
        self.max_degree: int = max_degree
        # All lists are indexed by degree with a dummy entry at index 0.
        self._labels = labels
        self._defs = defs
        self._action = action
        self.meta = dict(meta or {})
        self.relator_log: dict[int, list[str]] = dict(relator_log or {})
        self._pairs: dict[int, dict] = {}

    # -- structure access ---------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    def dim(self, d: int) -> int:
        if not 1 <= d <= self.max_degree:
            raise ValueError(f"degree {d} outside computed range 1..{self.max_degree}")
        return len(self._labels[d])

    def dims(self) -> tuple[int, ...]:
        return tuple(len(self._labels[d]) for d in range(1, self.max_degree + 1))

    def labels(self, d: int) -> tuple[str, ...]:
        self.dim(d)
        return tuple(self._labels[d])

    def definition(self, d: int, i: int) -> tuple[np.ndarray, int]:
        """Parent vector (over degree d-1) and letter defining basis element i."""
        if d < 2:
            raise ValueError("degree-1 generators have no definition")
        return self._defs[d][i]

    def action_matrix(self, d: int, letter) -> np.ndarray:
        """Matrix of [. , letter] from degree d to degree d+1, rows = basis."""
        if not 1 <= d <= self.max_degree - 1:
            raise ValueError(
                f"action at degree {d} not available in range 1..{self.max_degree - 1}"
            )
        return self._action[d][_letter_index(letter)]

    def basis_element(self, d: int, i: int) -> HomElement:
        v = np.zeros(self.dim(d), dtype=np.int64)
        v[i] = 1
        return HomElement(d, v)

    def zero(self, d: int) -> HomElement:
        return HomElement(d, np.zeros(self.dim(d), dtype=np.int64))

    def element_from_coords(self, d: int, coords) -> HomElement:
        v = np.asarray(coords, dtype=np.int64) % self.p
        if v.shape != (self.dim(d),):
            raise ValueError(f"expected {self.dim(d)} coordinates for degree {d}")
        return HomElement(d, v)

    # -- bracket evaluation -------------------------------------------------

    def evaluate_word(self, w: Word | str) -> HomElement:
        """Fold a left-normed word through the action tables."""
        letters = w.letters if isinstance(w, Word) else tuple(w)
        if len(letters) > self.max_degree:
            raise ValueError(
                f"word degree {len(letters)} exceeds computed range {self.max_degree}"
            )
        g = _letter_index(letters[0])
        vec = np.zeros(self.dim(1), dtype=np.int64)
        vec[g] = 1
        deg = 1
        for letter in letters[1:]:
            vec = vec @ self._action[deg][_letter_index(letter)] % self.p
            deg += 1
        return HomElement(deg, vec)

    def bracket(self, u: HomElement, v: HomElement) -> HomElement:
        """Bilinear bracket [u, v]; degrees must sum within the range."""
        d = u.degree + v.degree
        if d > self.max_degree:
            raise ValueError(
                f"bracket degree {d} exceeds computed range {self.max_degree}"
            )
        out = np.zeros(self.dim(d), dtype=np.int64)
        for j in np.nonzero(v.coeffs)[0]:
            c = int(v.coeffs[j]) % self.p
            out += c * self._bracket_vec_basis(u.coeffs, u.degree, v.degree, int(j))
        return HomElement(d, out % self.p)

    def _pair(self, di: int, i: int, dj: int, j: int) -> np.ndarray:
        """[b_i, b_j] for basis elements, memoized by global indices."""
        s = di + dj
        cache = self._pairs.setdefault(s, {})
        key = (di, i, dj, j)
        val = cache.get(key)
        if val is not None:
            return val
        if dj == 1:
            val = self._action[di][j][i] % self.p
        else:
            parent, g = self._defs[dj][j]
            # [b_i, [w, g]] = [[b_i, w], g] - [[b_i, g], w]
            left = np.zeros(self._width(di + dj - 1), dtype=np.int64)
            for k in np.nonzero(parent)[0]:
                left += int(parent[k]) * self._pair(di, i, dj - 1, int(k))
            t1 = left % self.p @ self._action[di + dj - 1][g] % self.p
            u2 = self._action[di][g][i]
            t2 = np.zeros(self._width(s), dtype=np.int64)
            for m in np.nonzero(u2)[0]:
                cm = int(u2[m])
                for k in np.nonzero(parent)[0]:
                    t2 += cm * int(parent[k]) * self._pair(di + 1, int(m), dj - 1, int(k))
            val = (t1 - t2) % self.p
        val.setflags(write=False)
        cache[key] = val
        return val

    def _width(self, d: int) -> int:
        # During construction the top degree is the candidate space, whose
        # width is read off the (still virtual) action matrix.
        if d == 1:
            return len(self._labels[1])
        return self._action[d - 1][_X].shape[1]

    def _bracket_vec_basis(self, u: np.ndarray, du: int, dv: int, j: int) -> np.ndarray:
        out = np.zeros(self._width(du + dv), dtype=np.int64)
        for i in np.nonzero(u)[0]:
            out += int(u[i]) * self._pair(du, int(i), dv, j)
        return out % self.p

    # -- graded center ------------------------------------------------------

    def graded_center_component(self, d: int) -> list[HomElement]:
        """Basis of {z in L_d : [z, x] = [z, y] = 0}."""
        if d + 1 > self.max_degree:
            raise ValueError(
                f"insufficient computed range: centrality at degree {d} needs degree {d + 1}"
            )
        if self.dim(d) == 0:
            return []
        stacked = np.hstack([self._action[d][_X], self._action[d][_Y]])
        rows = left_nullspace(stacked, self.p)
        return [HomElement(d, row) for row in rows]

    # -- serialization ------------------------------------------------------

    def to_jsonable(self) -> dict:
        degrees = []
        for d in range(1, self.max_degree + 1):
            entry: dict = {"degree": d, "labels": list(self._labels[d])}
            if d >= 2:
                entry["parents"] = [pv.tolist() for pv, _ in self._defs[d]]
                entry["letters"] = ["xy"[g] for _, g in self._defs[d]]
            degrees.append(entry)
        action = [
            {
                "degree": d,
                "x": self._action[d][_X].tolist(),
                "y": self._action[d][_Y].tolist(),
            }
            for d in range(1, self.max_degree)
        ]
        return {
            "schema": ALGEBRA_SCHEMA,
            "p": self.p,
            "max_degree": self.max_degree,
            "meta": self.meta,
            "relator_log": {str(d): rels for d, rels in sorted(self.relator_log.items())},
            "degrees": degrees,
            "action": action,
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "GradedAlgebra":
        if data.get("schema") != ALGEBRA_SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        fld = PrimeField(data["p"])
        D = data["max_degree"]
        labels: list = [None] + [None] * D
        defs: list = [None] + [None] * D
        for entry in data["degrees"]:
            d = entry["degree"]
            labels[d] = list(entry["labels"])
            if d >= 2:
                defs[d] = [
                    (np.asarray(pv, dtype=np.int64), _LETTER_INDEX[g])
                    for pv, g in zip(entry["parents"], entry["letters"])
                ]
        action: list = [None] * D
        for entry in data["action"]:
            d = entry["degree"]
            nxt = len(labels[d + 1])
            ax = np.asarray(entry["x"], dtype=np.int64).reshape(len(labels[d]), nxt)
            ay = np.asarray(entry["y"], dtype=np.int64).reshape(len(labels[d]), nxt)
            action[d] = (ax, ay)
        log = {int(d): rels for d, rels in data.get("relator_log", {}).items()}
        return cls(fld, D, labels, defs, action, data.get("meta"), log)

    def structurally_equal(self, other: "GradedAlgebra") -> bool:
        if self.p != other.p or self.max_degree != other.max_degree:
            return False
        return self.to_jsonable() == other.to_jsonable()


def save_algebra(algebra: GradedAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra.to_jsonable(), fh, sort_keys=True)
        fh.write("\n")


def load_algebra(path) -> GradedAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return GradedAlgebra.from_jsonable(json.load(fh))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def compute(presentation: Presentation, max_degree: int) -> GradedAlgebra:
    """Maximal graded Lie algebra on x, y satisfying the presentation,
    truncated at max_degree."""
    if max_degree < 2:
        raise ValueError(f"max_degree must be >= 2, got {max_degree}")
    too_deep = [r for r in presentation.relators if r.degree > max_degree]
    if too_deep:
        raise ValueError(
            f"relator of degree {too_deep[0].degree} exceeds max_degree {max_degree}"
        )
    p = presentation.field.p
    by_degree = presentation.relators_by_degree()

    labels: list = [None, ["x", "y"]]
    defs: list = [None, None]
    action: list = [None]
    alg = GradedAlgebra(presentation.field, 1, labels, defs, action)
    alg.meta = {
        "p": p,
        "provenance": presentation.provenance,
        "params": dict(presentation.params),
    }
    alg.relator_log = {d: [str(r) for r in rels] for d, rels in sorted(by_degree.items())}

    for d in range(2, max_degree + 1):
        _extend_one_degree(alg, d, by_degree.get(d, []))
    alg.max_degree = max_degree
    return alg


def _extend_one_degree(alg: GradedAlgebra, d: int, relators) -> None:
    p = alg.p
    m = len(alg._labels[d - 1])
    if m == 0:
        # Past a collapse every component stays zero: generated in degree 1.
        alg._labels.append([])
        alg._defs.append([])
        alg._action.append(
            (np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64))
        )
        alg.max_degree = d
        return

    ncand = 2 * m
    # Candidates [b_i, x], [b_i, y] ordered parent-major, x before y.
    ex = np.zeros((m, ncand), dtype=np.int64)
    ey = np.zeros((m, ncand), dtype=np.int64)
    for i in range(m):
        ex[i, 2 * i] = 1
        ey[i, 2 * i + 1] = 1
    alg._labels.append([])  # placeholder so degree d exists during evaluation
    alg._defs.append([])
    alg._action.append((ex, ey))
    alg.max_degree = d

    rows = _consequence_rows(alg, d)
    for rel in relators:
        row = np.zeros(ncand, dtype=np.int64)
        for coeff, w in rel.terms:
            row += coeff * alg.evaluate_word(w).coeffs
        rows.append(row % p)

    if rows:
        mat = np.vstack(rows)
    else:
        mat = np.zeros((0, ncand), dtype=np.int64)
    red, pivots = rref(mat, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncand) if c not in pivot_set]

    quot = np.zeros((ncand, len(free)), dtype=np.int64)
    for col, f in enumerate(free):
        quot[f, col] = 1
    for row_i, c in enumerate(pivots):
        quot[c] = (-red[row_i, free]) % p

    parent_labels = alg._labels[d - 1]
    new_labels = [parent_labels[c // 2] + "xy"[c % 2] for c in free]
    new_defs = []
    for c in free:
        pv = np.zeros(m, dtype=np.int64)
        pv[c // 2] = 1
        new_defs.append((pv, c % 2))

    alg._labels[d] = new_labels
    alg._defs[d] = new_defs
    alg._action[d - 1] = (quot[0::2].copy(), quot[1::2].copy())
    # Values memoized against the candidate-space tables are stale now.
    alg._pairs.pop(d, None)


def _consequence_rows(alg: GradedAlgebra, d: int) -> list[np.ndarray]:
    """All degree-d antisymmetry and Jacobi instances on basis elements,
    expressed in candidate coordinates."""
    p = alg.p
    rows: list[np.ndarray] = []

    dims = {e: len(alg._labels[e]) for e in range(1, d)}

    # Antisymmetry: [a, b] + [b, a] over unordered basis pairs.
    for e1 in range(1, d // 2 + 1):
        e2 = d - e1
        if e1 == e2:
            pairs = itertools.combinations_with_replacement(range(dims[e1]), 2)
            pairs = [((e1, i), (e2, j)) for i, j in pairs]
        else:
            pairs = [
                ((e1, i), (e2, j))
                for i in range(dims[e1])
                for j in range(dims[e2])
            ]
        for (ea, ia), (eb, ib) in pairs:
            row = alg._pair(ea, ia, eb, ib) + alg._pair(eb, ib, ea, ia)
            rows.append(row % p)

    # Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] over basis multisets.
    for e1 in range(1, d - 1):
        for e2 in range(e1, d - e1):
            e3 = d - e1 - e2
            if e3 < e2:
                continue
            for ids in _degree_multisets(dims, e1, e2, e3):
                (ea, ia), (eb, ib), (ec, ic) = ids
                t1 = alg._bracket_vec_basis(alg._pair(ea, ia, eb, ib), ea + eb, ec, ic)
                t2 = alg._bracket_vec_basis(alg._pair(eb, ib, ec, ic), eb + ec, ea, ia)
                t3 = alg._bracket_vec_basis(alg._pair(ec, ic, ea, ia), ec + ea, eb, ib)
                rows.append((t1 + t2 + t3) % p)
    return rows


def _degree_multisets(dims, e1, e2, e3):
    n1, n2, n3 = dims[e1], dims[e2], dims[e3]
    if e1 == e2 == e3:
        for i, j, k in itertools.combinations_with_replacement(range(n1), 3):
            yield (e1, i), (e2, j), (e3, k)
    elif e1 == e2:
        for i, j in itertools.combinations_with_replacement(range(n1), 2):
            for k in range(n3):
                yield (e1, i), (e2, j), (e3, k)
    elif e2 == e3:
        for i in range(n1):
            for j, k in itertools.combinations_with_replacement(range(n2), 2):
                yield (e1, i), (e2, j), (e3, k)
    else:
        for i in range(n1):
            for j in range(n2):
                for k in range(n3):
                    yield (e1, i), (e2, j), (e3, k)


# ---------------------------------------------------------------------------
# Centerless core
# ---------------------------------------------------------------------------


def thin_core(algebra: GradedAlgebra, reliable_bound: int | None = None) -> GradedAlgebra:
    """Quotient by graded center components inside the reliable range,
    iterated to a fixpoint, then truncate to the reliable bound.

    The last nonzero component is never stripped: for a finite-dimensional
    algebra it legitimately coincides with the center.  Degrees above the
    reliable bound are truncation artifacts and are discarded.
    """
    D = algebra.max_degree
    rb = D - 2 if reliable_bound is None else reliable_bound
    if not 2 <= rb <= D - 1:
        raise ValueError(
            f"reliable_bound must satisfy 2 <= bound <= max_degree - 1, got {rb}"
        )
    work = algebra
    while True:
        top = _last_nonzero_degree(work)
        centers = {}
        for d in range(2, min(rb, top - 1) + 1):
            basis = work.graded_center_component(d)
            if basis:
                centers[d] = np.vstack([z.coeffs for z in basis])
        if not centers:
            break
        work = _quotient_by_central(work, centers)
    return _truncate(work, rb)


def _last_nonzero_degree(alg: GradedAlgebra) -> int:
    for d in range(alg.max_degree, 0, -1):
        if len(alg._labels[d]) > 0:
            return d
    return 0


def _quotient_by_central(alg: GradedAlgebra, centers: dict[int, np.ndarray]) -> GradedAlgebra:
    p = alg.p
    D = alg.max_degree
    keep: list = [None] * (D + 1)
    qmaps: list = [None] * (D + 1)
    for d in range(1, D + 1):
        n = len(alg._labels[d])
        if d in centers:
            red, pivots = rref(centers[d], p)
            pivot_set = set(pivots)
            kept = [c for c in range(n) if c not in pivot_set]
            qm = np.zeros((n, len(kept)), dtype=np.int64)
            for col, f in enumerate(kept):
                qm[f, col] = 1
            for row_i, c in enumerate(pivots):
                qm[c] = (-red[row_i, kept]) % p
        else:
            kept = list(range(n))
            qm = np.eye(n, dtype=np.int64)
        keep[d] = kept
        qmaps[d] = qm

    labels: list = [None] + [[alg._labels[d][k] for k in keep[d]] for d in range(1, D + 1)]
    defs: list = [None, None]
    for d in range(2, D + 1):
        new_defs = []
        for k in keep[d]:
            parent, g = alg._defs[d][k]
            new_defs.append(((parent @ qmaps[d - 1]) % p, g))
        defs.append(new_defs)
    action: list = [None]
    for d in range(1, D):
        ax = alg._action[d][_X][keep[d], :] @ qmaps[d + 1] % p
        ay = alg._action[d][_Y][keep[d], :] @ qmaps[d + 1] % p
        action.append((ax, ay))
    return GradedAlgebra(alg.field, D, labels, defs, action, alg.meta,
                         alg.relator_log)


def _truncate(alg: GradedAlgebra, new_top: int) -> GradedAlgebra:
    labels = alg._labels[: new_top + 1]
    defs = alg._defs[: new_top + 1]
    action = alg._action[:new_top]
    meta = dict(alg.meta, reliable_bound=new_top)
    log = {d: rels for d, rels in alg.relator_log.items() if d <= new_top}
    return GradedAlgebra(alg.field, new_top, labels, defs, action, meta, log)

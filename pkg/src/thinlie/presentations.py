"""Homogeneous two-generator presentations and the relator file format.

A relator is a linear combination of left-normed bracket words in the
generators x, y; all words in one relator must share the same degree.
The canonical families (the chain presentation with a type relator at the
end, and its central-extension variant) are built programmatically from
the parameters (p, n, s) or (p, n, a, lambda).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .fields import PrimeField

__all__ = [
    "Word",
    "Relator",
    "Presentation",
    "v_word",
    "make_relator",
    "build_theorem41",
    "build_minus1",
    "parse_relators",
    "RelatorSyntaxError",
]

LETTERS = ("x", "y")


@dataclass(frozen=True)
class Word:
    """A left-normed bracket word: [g1 g2 ... gd] with letters in {x, y}."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("empty word")
        for g in self.letters:
            if g not in LETTERS:
                raise ValueError(f"letter must be 'x' or 'y', got {g!r}")

    @property
    def degree(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(self.letters)

    def pretty(self) -> str:
        """Render with powers collapsed, e.g. ``y, x^3, y``."""
        parts = []
        i = 0
        while i < len(self.letters):
            j = i
            while j < len(self.letters) and self.letters[j] == self.letters[i]:
                j += 1
            run = j - i
            parts.append(self.letters[i] if run == 1 else f"{self.letters[i]}^{run}")
            i = j
        return ", ".join(parts)


def word(spec: str) -> Word:
    """Convenience constructor from a plain letter string like ``"yxxy"``."""
    return Word(tuple(spec))


@dataclass(frozen=True)
class Relator:
    """Homogeneous combination of words; terms are collected and sorted."""

    terms: tuple[tuple[int, Word], ...]
    degree: int

    def __str__(self) -> str:
        return " + ".join(f"{c}*[{w}]" for c, w in self.terms)


def make_relator(field: PrimeField, terms) -> Relator:
    """Build a relator from (coefficient, word) pairs, reducing mod p.

    Raises if the combination is inhomogeneous or collapses to zero.
    """
    collected: dict[tuple[str, ...], int] = {}
    degree = None
    for coeff, w in terms:
        if not isinstance(w, Word):
            w = word(w)
        if degree is None:
            degree = w.degree
        elif w.degree != degree:
            raise ValueError(
                f"inhomogeneous relator: degree {w.degree} word in a degree {degree} combination"
            )
        collected[w.letters] = (collected.get(w.letters, 0) + coeff) % field.p
    cleaned = tuple(
        (c, Word(ls)) for ls, c in sorted(collected.items()) if c != 0
    )
    if not cleaned:
        raise ValueError("relator is zero after collecting terms")
    return Relator(cleaned, degree)


def v_word(k: int, q: int) -> Word:
    """The canonical chain word of degree k(q-1).

    v_1 = [y x^(q-2)], v_2 = [y x^(2q-3)], and each later v_k appends
    x y x^(q-3) to its predecessor.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    if k == 1:
        letters = ("y",) + ("x",) * (q - 2)
    else:
        letters = ("y",) + ("x",) * (2 * q - 3)
        letters += (("x", "y") + ("x",) * (q - 3)) * (k - 2)
    return Word(letters)


@dataclass(frozen=True)
class Presentation:
    """A finite homogeneous presentation on the degree-1 generators x, y."""

    field: PrimeField
    relators: tuple[Relator, ...]
    provenance: str = "custom"
    params: dict = dc_field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int | None:
        n = self.params.get("n")
        return self.field.p ** n if n else None

    def max_relator_degree(self) -> int:
        return max((r.degree for r in self.relators), default=0)

    def relators_by_degree(self) -> dict[int, list[Relator]]:
        out: dict[int, list[Relator]] = {}
        for r in self.relators:
            out.setdefault(r.degree, []).append(r)
        return out

    def truncated(self, max_degree: int) -> "Presentation":
        """Drop relators of degree above max_degree (for prefix experiments)."""
        kept = tuple(r for r in self.relators if r.degree <= max_degree)
        return Presentation(self.field, kept, self.provenance, dict(self.params))

    def to_dsl(self) -> str:
        header = [f"p={self.p}"]
        for key in ("n", "s", "a", "lambda"):
            if key in self.params and self.params[key] is not None:
                header.append(f"{key}={self.params[key]}")
        lines = [" ".join(header)]
        for r in self.relators:
            parts = []
            for idx, (c, w) in enumerate(r.terms):
                coeff = "" if c == 1 else str(c)
                chunk = f"{coeff}[{w.pretty()}]"
                parts.append(chunk if idx == 0 else f"+ {chunk}")
            lines.append(" ".join(parts) + " = 0")
        return "\n".join(lines) + "\n"


def _chain_relators(field: PrimeField, n: int) -> list[Relator]:
    """Relations between the first and second diamond, shared by both builders.

    [y x^i y] = 0 for 0 < i < 2q-3 except i = 2q - p^t - 2, where the
    deeper relation [y x^i y x] = 0 is imposed instead; plus [y x y y] = 0
    in the smallest case q = p = 3.
    """
    p = field.p
    q = p**n
    exceptional = {2 * q - p**t - 2 for t in range(1, n + 1)}
    rels = []
    for i in range(1, 2 * q - 3):
        if i in exceptional:
            continue
        rels.append(make_relator(field, [(1, Word(("y",) + ("x",) * i + ("y",)))]))
    for t in range(1, n + 1):
        i = 2 * q - p**t - 2
        rels.append(
            make_relator(field, [(1, Word(("y",) + ("x",) * i + ("y", "x")))])
        )
    if q == 3:
        rels.append(make_relator(field, [(1, word("yxyy"))]))
    return rels


def _extend(w: Word, *letters: str) -> Word:
    return Word(w.letters + letters)


def build_theorem41(p: int, n: int, s: int) -> Presentation:
    """Presentation of the central extension with a type-1 diamond at
    degree (p^s + 1)(q - 1) + 1 and infinite-type diamonds before it.

    The v_2 relations are imposed one degree deeper than in the direct
    family ([v_2 x x x] and [v_2 x x y] rather than [v_2 x x]); the central
    quotient restores the expected pattern.
    """
    if n < 1 or s < 1:
        raise ValueError(f"need n >= 1 and s >= 1, got n={n}, s={s}")
    fld = PrimeField(p)
    q = p**n
    rels = _chain_relators(fld, n)
    v2 = v_word(2, q)
    rels.append(make_relator(fld, [(1, _extend(v2, "x", "x", "x"))]))
    rels.append(make_relator(fld, [(1, _extend(v2, "x", "x", "y"))]))
    for k in range(3, p**s + 1):
        if k % 2 == 0:
            rels.append(make_relator(fld, [(1, _extend(v_word(k, q), "x", "x"))]))
    vtop = v_word(p**s + 1, q)
    rels.append(
        make_relator(
            fld, [(1, _extend(vtop, "y", "x")), (-1, _extend(vtop, "x", "x"))]
        )
    )
    return Presentation(
        fld, tuple(rels), provenance="theorem41", params={"n": n, "s": s}
    )


def build_minus1(
    p: int, n: int, a: int, lam: int, include_odd_k: bool = False
) -> Presentation:
    """Chain presentation with [v_k x x] = 0 for 2 <= k < a and a type
    relator [v_a y x] = lambda [v_a x x].

    Odd-k relations are superfluous and omitted unless requested; passing
    include_odd_k=True imposes them anyway, which must not change the
    centerless core.
    """
    if a < 3:
        raise ValueError(f"need a >= 3, got {a}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    fld = PrimeField(p)
    if lam % p == 0:
        raise ValueError("lambda must be nonzero in F_p")
    q = p**n
    rels = _chain_relators(fld, n)
    for k in range(2, a):
        if k % 2 == 0 or include_odd_k:
            rels.append(make_relator(fld, [(1, _extend(v_word(k, q), "x", "x"))]))
    va = v_word(a, q)
    rels.append(
        make_relator(
            fld, [(1, _extend(va, "y", "x")), (-lam, _extend(va, "x", "x"))]
        )
    )
    return Presentation(
        fld,
        tuple(rels),
        provenance="minus1-family",
        params={"n": n, "a": a, "lambda": lam % p},
    )


# ---------------------------------------------------------------------------
# Relator file format
#
#   # comment
#   p=5 n=1 a=4 lambda=1
#   [y, x^2, y] = 0
#   [v(4), y, x] - [v(4), x, x] = 0
#
# Atoms are x, y, x^k, y^k and v(k); v(k) expands through v_word with
# q = p^n and is only meaningful as the first atom of a bracket.
# ---------------------------------------------------------------------------


class RelatorSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


_HEADER_KEYS = ("p", "n", "s", "a", "lambda")
_TOKEN = re.compile(
    r"""\s*(?:
        (?P<int>\d+)
      | (?P<atom>[xy](?:\^\d+)?)
      | (?P<vmac>v\(\d+\))
      | (?P<punct>[\[\],+\-=])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str, lineno: int):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = len(text) - len(stripped) + 1
            raise RelatorSyntaxError(f"unexpected {stripped[0]!r}", lineno, col)
        out.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup) + 1))
        pos = m.end()
    return out


def _atom_letters(tok_kind, tok_text, lineno, col, q):
    if tok_kind == "atom":
        letter = tok_text[0]
        if "^" in tok_text:
            k = int(tok_text.split("^")[1])
            if k < 1:
                raise RelatorSyntaxError("exponent must be positive", lineno, col)
        else:
            k = 1
        return (letter,) * k
    if tok_kind == "vmac":
        k = int(tok_text[2:-1])
        if q is None:
            raise RelatorSyntaxError(
                "v(k) requires q = p^n; set n in the header", lineno, col
            )
        if k < 1:
            raise RelatorSyntaxError("v(k) needs k >= 1", lineno, col)
        return v_word(k, q).letters
    raise RelatorSyntaxError(f"expected an atom, got {tok_text!r}", lineno, col)


def _parse_bracket(tokens, i, lineno, q):
    kind, text, col = tokens[i]
    if text != "[":
        raise RelatorSyntaxError(f"expected '[', got {text!r}", lineno, col)
    i += 1
    letters: tuple[str, ...] = ()
    expect_atom = True
    first = True
    while i < len(tokens):
        kind, text, col = tokens[i]
        if text == "]":
            if expect_atom:
                raise RelatorSyntaxError("empty word", lineno, col)
            return Word(letters), i + 1
        if text == ",":
            if expect_atom:
                raise RelatorSyntaxError("missing atom before ','", lineno, col)
            expect_atom = True
            i += 1
            continue
        if not expect_atom:
            raise RelatorSyntaxError(f"expected ',' or ']', got {text!r}", lineno, col)
        if kind == "vmac" and not first:
            raise RelatorSyntaxError(
                "v(k) is only allowed as the first atom of a word", lineno, col
            )
        letters += _atom_letters(kind, text, lineno, col, q)
        expect_atom = False
        first = False
        i += 1
    raise RelatorSyntaxError("unterminated '['", lineno, len(tokens))


def _parse_relator_line(text, lineno, fld, q):
    tokens = _tokenize(text, lineno)
    terms = []
    i = 0
    sign = 1
    while i < len(tokens):
        kind, tok, col = tokens[i]
        if tok == "=":
            if i + 1 >= len(tokens) or tokens[i + 1][1] != "0":
                raise RelatorSyntaxError("only '= 0' is allowed", lineno, col)
            if i + 2 != len(tokens):
                raise RelatorSyntaxError("trailing input after '= 0'", lineno, col)
            break
        if tok == "+":
            sign = 1
            i += 1
            continue
        if tok == "-":
            sign = -1
            i += 1
            continue
        coeff = 1
        if kind == "int":
            coeff = int(tok)
            i += 1
            if i == len(tokens):
                raise RelatorSyntaxError("coefficient without a word", lineno, col)
        w, i = _parse_bracket(tokens, i, lineno, q)
        terms.append((sign * coeff, w))
        sign = 1
    if not terms:
        raise RelatorSyntaxError("no terms in relator", lineno, 1)
    try:
        return make_relator(fld, terms)
    except ValueError as exc:
        raise RelatorSyntaxError(str(exc), lineno, 1) from exc


def parse_relators(text: str) -> Presentation:
    """Parse a relator file into a custom Presentation."""
    header: dict[str, int] = {}
    fld = None
    relators = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            seen_header = True
            for part in line.split():
                if "=" not in part:
                    raise RelatorSyntaxError(
                        f"header entries look like key=value, got {part!r}",
                        lineno,
                        raw.index(part) + 1,
                    )
                key, _, val = part.partition("=")
                if key not in _HEADER_KEYS:
                    raise RelatorSyntaxError(
                        f"unknown header key {key!r}", lineno, raw.index(part) + 1
                    )
                if not val.isdigit():
                    raise RelatorSyntaxError(
                        f"header value for {key!r} must be an integer",
                        lineno,
                        raw.index(part) + 1,
                    )
                header[key] = int(val)
            if "p" not in header:
                raise RelatorSyntaxError("header must set p", lineno, 1)
            try:
                fld = PrimeField(header["p"])
            except ValueError as exc:
                raise RelatorSyntaxError(str(exc), lineno, 1) from exc
            continue
        q = fld.p ** header["n"] if "n" in header else None
        relators.append(_parse_relator_line(line, lineno, fld, q))
    if fld is None:
        raise RelatorSyntaxError("empty input: need a header line setting p", 1, 1)
    params = {k: v for k, v in header.items() if k != "p"}
    return Presentation(fld, tuple(relators), provenance="custom", params=params)

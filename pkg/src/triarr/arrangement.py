"""Triangular arrangements stored in roots-of-unity (RUA) exponent form.

Conventions (fixed once, used everywhere):

* vertices P1 = (0:0:1), P2 = (1:0:0), P3 = (0:1:0);
* an A-line with exponent a is x = zeta^a y (through P1),
  a B-line is y = zeta^b z (through P2),
  a C-line is z = zeta^c x (through P3);
* side X is x = 0 (through P1, P3), Y is y = 0 (P1, P2), Z is z = 0 (P2, P3).

With these choices an A-, B- and C-line are concurrent exactly when the
exponent sum is 0 mod n, so every incidence question reduces to
arithmetic on residues.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (DuplicateExponent, EmptyArrangement, LineNotPresent, ModulusMismatch,
                     NotEmbeddable)
from .exactmath import HomForm3, PrimeField

INNER = ("A", "B", "C")
SIDES = ("X", "Y", "Z")

# which sides pass through each vertex, keyed by the family living there
SIDES_AT = {"A": ("X", "Y"), "B": ("Y", "Z"), "C": ("X", "Z")}
VERTEX_OF = {"A": "P1", "B": "P2", "C": "P3"}
VERTEX_COORDS = {"P1": (0, 0, 1), "P2": (1, 0, 0), "P3": (0, 1, 0)}


@dataclass(frozen=True, order=True)
class Line:
    family: str
    exponent: int | None = None

    def __post_init__(self):
        if self.family in INNER:
            if self.exponent is None:
                raise ValueError(f"{self.family}-line needs an exponent")
        elif self.family in SIDES:
            if self.exponent is not None:
                raise ValueError("side lines carry no exponent")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def is_side(self) -> bool:
        return self.family in SIDES

    def covector(self, F: PrimeField) -> tuple[int, int, int]:
        """Coefficients ``(a, b, c)`` of the defining form a x + b y + c z."""
        p = F.p
        if self.family == "X":
            return (1, 0, 0)
        if self.family == "Y":
            return (0, 1, 0)
        if self.family == "Z":
            return (0, 0, 1)
        w = F.root(self.exponent)
        if self.family == "A":
            return (1, (-w) % p, 0)
        if self.family == "B":
            return (0, 1, (-w) % p)
        return ((-w) % p, 0, 1)

    def __str__(self) -> str:
        return self.family if self.is_side else f"{self.family}{self.exponent}"

    @classmethod
    def parse(cls, text: str) -> "Line":
        text = text.strip()
        if text in SIDES:
            return cls(text)
        return cls(text[0], int(text[1:]))


@dataclass(frozen=True)
class TrSignature:
    a: int
    b: int
    c: int
    sides: frozenset = field(default_factory=lambda: frozenset(SIDES))

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise ValueError("a, b, c must be >= 1")

    @property
    def complete(self) -> bool:
        return self.sides == frozenset(SIDES)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class RUA:
    """Roots-of-unity arrangement.  Build validated instances with :func:`make_rua`."""

    n: int
    ea: tuple[int, ...]
    eb: tuple[int, ...]
    ec: tuple[int, ...]
    sides: frozenset = field(default_factory=lambda: frozenset(SIDES))

    def exps(self, family: str) -> tuple[int, ...]:
        return {"A": self.ea, "B": self.eb, "C": self.ec}[family]

    @property
    def lines(self) -> list[Line]:
        out = [Line(f, e) for f in INNER for e in self.exps(f)]
        out += [Line(s) for s in SIDES if s in self.sides]
        return out

    @property
    def line_count(self) -> int:
        return len(self.ea) + len(self.eb) + len(self.ec) + len(self.sides)

    def __contains__(self, line: Line) -> bool:
        if line.is_side:
            return line.family in self.sides
        return line.exponent in self.exps(line.family)

    def to_json(self) -> dict:
        return {"modulus": self.n, "ea": list(self.ea), "eb": list(self.eb),
                "ec": list(self.ec), "sides": sorted(self.sides)}

    @classmethod
    def from_json(cls, doc: dict) -> "RUA":
        return make_rua(doc["modulus"], doc.get("ea", []), doc.get("eb", []), doc.get("ec", []),
                        doc.get("sides", list(SIDES)))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self) -> str:
        return (f"RUA(n={self.n}, ea={list(self.ea)}, eb={list(self.eb)}, "
                f"ec={list(self.ec)}, sides={''.join(sorted(self.sides))})")


def _norm(n: int, values: Iterable[int], family: str) -> tuple[int, ...]:
    vals = [int(v) % n for v in values]
    if len(set(vals)) != len(vals):
        raise DuplicateExponent(f"repeated exponent in family {family}: {sorted(vals)}")
    return tuple(sorted(vals))


def concurrent(A: RUA) -> bool:
    """Whether every line of ``A`` passes through a single point."""
    fam = {f: len(A.exps(f)) for f in INNER}
    for f in INNER:
        others = [g for g in INNER if g != f]
        if not any(fam[g] for g in others) and A.sides <= set(SIDES_AT[f]):
            return True
    # one line from each family through an inner point, no sides
    if not A.sides and all(v == 1 for v in fam.values()):
        return (A.ea[0] + A.eb[0] + A.ec[0]) % A.n == 0
    # exactly two lines always meet
    return A.line_count <= 2


def make_rua(n: int, ea: Sequence[int], eb: Sequence[int], ec: Sequence[int],
             sides: Iterable[str] = SIDES) -> RUA:
    """Validated RUA with sorted exponent lists."""
    if n < 1:
        raise ValueError("modulus must be positive")
    sides = frozenset(sides)
    if not sides <= set(SIDES):
        raise ValueError(f"unknown sides {sorted(sides - set(SIDES))}")
    A = RUA(n, _norm(n, ea, "A"), _norm(n, eb, "B"), _norm(n, ec, "C"), sides)
    if A.line_count < 3:
        raise EmptyArrangement(f"only {A.line_count} lines")
    if concurrent(A):
        raise EmptyArrangement("all lines pass through one point")
    return A


def triangle() -> RUA:
    return make_rua(1, [], [], [], SIDES)


def full_monomial(N: int) -> RUA:
    """xyz(x^N - y^N)(y^N - z^N)(z^N - x^N) = 0."""
    if N < 1:
        raise ValueError("N must be positive")
    r = range(N)
    return make_rua(N, r, r, r, SIDES)


def delete_lines(A: RUA, lines: Iterable[Line]) -> RUA:
    lines = list(lines)
    for ln in lines:
        if ln not in A:
            raise LineNotPresent(str(ln))
    drop = {f: {ln.exponent for ln in lines if ln.family == f} for f in INNER}
    sides = A.sides - {ln.family for ln in lines if ln.is_side}
    return make_rua(A.n, [e for e in A.ea if e not in drop["A"]],
                    [e for e in A.eb if e not in drop["B"]],
                    [e for e in A.ec if e not in drop["C"]], sides)


def add_lines(A: RUA, lines: Iterable[Line]) -> RUA:
    lines = list(lines)
    new = {f: list(A.exps(f)) + [ln.exponent for ln in lines if ln.family == f] for f in INNER}
    sides = A.sides | {ln.family for ln in lines if ln.is_side}
    return make_rua(A.n, new["A"], new["B"], new["C"], sides)


def rescale(A: RUA, N: int) -> RUA:
    """The same arrangement written with an N-th root of unity (n | N)."""
    if N % A.n:
        raise NotEmbeddable(f"modulus {A.n} does not divide {N}")
    f = N // A.n
    return RUA(N, tuple(e * f for e in A.ea), tuple(e * f for e in A.eb),
               tuple(e * f for e in A.ec), A.sides)


def complement_in(A: RUA, N: int) -> RUA:
    """Inner lines of ``full_monomial(N)`` missing from ``A``.

    The result is an unvalidated line set (it may have fewer than three
    lines) and never carries sides.
    """
    B = rescale(A, N)
    comp = {f: tuple(e for e in range(N) if e not in set(B.exps(f))) for f in INNER}
    return RUA(N, comp["A"], comp["B"], comp["C"], frozenset())


def concrete_equation(A: RUA, F: PrimeField) -> HomForm3:
    """Product of all line forms of ``A`` over ``F``."""
    if F.n != A.n:
        raise ModulusMismatch(f"field has n={F.n}, arrangement has n={A.n}")
    f = HomForm3(0, [1], F.p)
    for ln in A.lines:
        f = f * HomForm3.linear(*ln.covector(F), F.p)
    return f


def tr_signature(A: RUA) -> TrSignature:
    return TrSignature(len(A.ea) + 1, len(A.eb) + 1, len(A.ec) + 1, A.sides)


def load(path) -> RUA:
    with open(path) as fh:
        return RUA.from_json(json.load(fh))

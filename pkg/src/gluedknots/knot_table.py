"""Small-knot identification.

A bundled table of PD codes (standard tabulation convention) provides
fingerprints; every fingerprint is computed by this package's own invariant
code at first use, never hand-entered.  Torus knots are recognized through
the closed-form Jones polynomial, which also cross-validates the table rows
that happen to be torus knots.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional

from .diagram import Diagram, diagram_from_pd, parse_pd_text, simplify
from .invariants import alexander, jones, jones_canonical_text, tricolorings
from .laurent import LaurentPoly

# name -> PD code (Rolfsen diagrams, counterclockwise-from-under convention)
TABLE_PD: dict[str, str] = {
    "3_1": "X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)",
    "4_1": "X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)",
    "5_1": "X(1,6,2,7),X(3,8,4,9),X(5,10,6,1),X(7,2,8,3),X(9,4,10,5)",
    "5_2": "X(1,4,2,5),X(3,8,4,9),X(5,10,6,1),X(9,6,10,7),X(7,2,8,3)",
    "6_1": "X(1,4,2,5),X(7,10,8,11),X(3,9,4,8),X(9,3,10,2),X(5,12,6,1),X(11,6,12,7)",
    "6_2": "X(1,4,2,5),X(5,10,6,11),X(3,9,4,8),X(9,3,10,2),X(7,12,8,1),X(11,6,12,7)",
    "6_3": "X(4,2,5,1),X(8,4,9,3),X(12,9,1,10),X(10,5,11,6),X(6,11,7,12),X(2,8,3,7)",
    "7_1": "X(1,8,2,9),X(3,10,4,11),X(5,12,6,13),X(7,14,8,1),X(9,2,10,3),X(11,4,12,5),X(13,6,14,7)",
    "8_19": "X(4,2,5,1),X(8,4,9,3),X(9,15,10,14),X(5,13,6,12),X(13,7,14,6),X(11,1,12,16),X(15,11,16,10),X(2,8,3,7)",
}

# torus-knot aliases for table rows, used for two-path validation
TORUS_ALIASES = {"3_1": (3, 2), "5_1": (5, 2), "7_1": (7, 2), "8_19": (4, 3)}


def torus_jones(p: int, q: int) -> LaurentPoly:
    """Closed form V(T(p,q)) = t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t^2)."""
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise ValueError("torus knot requires coprime p, q >= 2")
    num = LaurentPoly({0: 1, 2 * (p + 1): -1, 2 * (q + 1): -1, 2 * (p + q): 1})
    den = LaurentPoly({0: 1, 4: -1})
    quot = num.exact_div(den)
    return quot.shift((p - 1) * (q - 1))


@dataclass(frozen=True)
class KnotId:
    name: str
    chirality: int = 0  # +1 as tabulated, -1 mirror, 0 amphichiral/unknown

    def __str__(self) -> str:
        if self.chirality == 0:
            return self.name
        return f"{self.name}{'' if self.chirality > 0 else '!'}"


@dataclass(frozen=True)
class Fingerprint:
    jones_canonical: str
    tricolor: int
    det: int


def fingerprint(d: Diagram) -> tuple[Fingerprint, LaurentPoly]:
    v = jones(d)
    return Fingerprint(jones_canonical_text(v), tricolorings(d), abs(alexander(d).evaluate_int(-1))), v


def table_diagram(name: str) -> Diagram:
    return diagram_from_pd(parse_pd_text(TABLE_PD[name]))


@lru_cache(maxsize=1)
def _table() -> dict[Fingerprint, tuple[str, LaurentPoly]]:
    out: dict[Fingerprint, tuple[str, LaurentPoly]] = {}
    for name in TABLE_PD:
        d = table_diagram(name)
        fp, v = fingerprint(d)
        if fp in out:
            raise RuntimeError(f"fingerprint collision between {out[fp][0]} and {name}")
        out[fp] = (name, v)
    return out


_UNKNOT_FP_JONES = LaurentPoly.one()

# (p, q) pairs whose Jones is scanned when the table misses; covers every
# torus knot reachable at the degrees this package works with
_TORUS_SCAN = tuple(
    (p, q) for p in range(2, 8) for q in range(2, 8) if p > q and gcd(p, q) == 1
)


def identify(d: Diagram) -> KnotId:
    """Fingerprint lookup (Jones up to mirror, tricolor count, determinant).

    Unidentified diagrams give KnotId('unidentified'); collisions cannot
    occur inside the bundled table (checked at load).
    """
    s = simplify(d.copy())
    if s.crossing_count() == 0:
        if s.free_loops == 1:
            return KnotId("unknot")
        return KnotId("unidentified")
    fp, v = fingerprint(s)
    if v == _UNKNOT_FP_JONES and fp.tricolor == 3 and fp.det == 1:
        return KnotId("unknot")
    hit = _table().get(fp)
    if hit is not None:
        name, v_table = hit
        if v == v_table:
            chir = +1
        elif v == v_table.mirror():
            chir = -1
        else:
            chir = 0
        if v_table == v_table.mirror():
            chir = 0
        return KnotId(name, chir)
    for p, q in _TORUS_SCAN:
        vt = torus_jones(p, q)
        if v == vt:
            return KnotId(f"T({p},{q})", +1)
        if v == vt.mirror():
            return KnotId(f"T({p},{q})", -1)
    return KnotId("unidentified")


def validate_table() -> list[str]:
    """Two-path validation of the bundled rows; returns human-readable notes.

    Raises if a torus-named row disagrees with the closed-form Jones oracle.
    """
    notes = []
    for name, (p, q) in TORUS_ALIASES.items():
        d = table_diagram(name)
        v = jones(d)
        vt = torus_jones(p, q)
        if v != vt and v != vt.mirror():
            raise RuntimeError(f"table row {name} disagrees with torus closed form T({p},{q})")
        notes.append(f"{name}: matches T({p},{q}) closed form")
    return notes

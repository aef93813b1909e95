"""Classical invariants computed from combinatorial diagrams.

All polynomial arithmetic is exact over the integers (LaurentPoly).  The
bracket is a literal state sum; Conway uses a resolving tree over descending
diagrams; Alexander comes from the crossing relations of the arcs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import Diagram, simplify
from .errors import SingularPresentation, TooManyCrossings
from .laurent import LaurentPoly, substitute_half_var

BRACKET_CAP = 24
CONWAY_CAP = 20
ALEXANDER_CAP = 16

# delta = -A^2 - A^{-2}; A-exponent k is stored at half-step 2k
_DELTA = LaurentPoly({4: -1, -4: -1})


# ---------------------------------------------------------------------------
# Kauffman bracket / Jones
# ---------------------------------------------------------------------------

_PAIRS_A = ((0, 1), (2, 3))
_PAIRS_B = ((1, 2), (3, 0))


def kauffman_bracket(d: Diagram, forced: Optional[dict[int, str]] = None) -> LaurentPoly:
    """State sum over all A/B smoothings: sum A^(a-b) * delta^(loops-1).

    ``forced`` pins the smoothing of selected crossings; the sum then runs
    over the remaining crossings only (used by the expansion checks).
    """
    forced = forced or {}
    cids = sorted(d.crossings)
    free = [cid for cid in cids if cid not in forced]
    if len(free) > BRACKET_CAP:
        raise TooManyCrossings(f"{len(free)} crossings exceed the bracket cap {BRACKET_CAP}")
    if not cids:
        return _DELTA ** (d.free_loops - 1) if d.free_loops else LaurentPoly.one()
    index = {cid: i for i, cid in enumerate(cids)}
    size = 4 * len(cids)

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(parent: list[int], a: int, b: int) -> int:
        ra, rb = find(parent, a), find(parent, b)
        if ra == rb:
            return 0
        parent[rb] = ra
        return 1

    base_parent = list(range(size))
    base_merges = 0
    for e in d.edges.values():
        a = 4 * index[e.tail[0]] + e.tail[1]
        b = 4 * index[e.head[0]] + e.head[1]
        base_merges += union(base_parent, a, b)
    forced_exp = 0
    for cid, choice in forced.items():
        ci = 4 * index[cid]
        forced_exp += 1 if choice == "A" else -1
        for pa, pb in (_PAIRS_A if choice == "A" else _PAIRS_B):
            base_merges += union(base_parent, ci + pa, ci + pb)

    result: dict[int, LaurentPoly] = {}
    nf = len(free)
    free_bases = [4 * index[cid] for cid in free]
    for mask in range(1 << nf):
        parent = base_parent.copy()
        merges = base_merges
        n_a = 0
        for bit, ci in enumerate(free_bases):
            if (mask >> bit) & 1 == 0:
                n_a += 1
                pairs = _PAIRS_A
            else:
                pairs = _PAIRS_B
            for pa, pb in pairs:
                merges += union(parent, ci + pa, ci + pb)
        loops = (size - merges) + d.free_loops
        exp = forced_exp + 2 * n_a - nf  # A-exponent a - b
        bucket = result.get(loops)
        term = LaurentPoly({2 * exp: 1})
        result[loops] = bucket + term if bucket is not None else term
    total = LaurentPoly.zero()
    for loops, poly in result.items():
        total = total + poly * (_DELTA ** (loops - 1))
    return total


def writhe(d: Diagram) -> int:
    return d.writhe()


def jones(d: Diagram) -> LaurentPoly:
    """Writhe-normalized bracket at A = t^(-1/4); half-integer exponents for
    links, integers for knots."""
    s = simplify(d.copy())
    br = kauffman_bracket(s)
    w = s.writhe()
    factor = LaurentPoly({-6 * w: (-1) ** (w % 2)})  # (-A)^{-3w}
    poly_a = factor * br
    return poly_a.scale_exponents(-1, 4)


def jones_canonical_text(p: LaurentPoly) -> str:
    """Serialization of a Jones polynomial up to mirror (t <-> 1/t)."""
    a, b = p.to_text(), p.mirror().to_text()
    return min(a, b)


# ---------------------------------------------------------------------------
# Arc structure (shared by tricoloring and Alexander)
# ---------------------------------------------------------------------------

def _arcs(d: Diagram):
    """Split every component at its under-passages.

    Returns (n_arcs, crossing_info) where crossing_info maps a crossing id to
    (over_arc, under_in_arc, under_out_arc).
    """
    comps = d.components()
    arc_of_passage: dict[tuple[int, int], int] = {}  # (walk idx, position) -> arc id
    n_arcs = 0
    under_arcs: dict[int, tuple[int, int]] = {}  # crossing -> (in arc, out arc)
    over_arc: dict[int, int] = {}
    for wi, walk in enumerate(comps):
        unders = [k for k, (_, role) in enumerate(walk) if role == "U"]
        if not unders:
            arc = n_arcs
            n_arcs += 1
            for k in range(len(walk)):
                arc_of_passage[(wi, k)] = arc
            continue
        base = n_arcs
        n_arcs += len(unders)
        # arc j runs from under passage unders[j] (exit) to unders[j+1] (entry)
        for j, start in enumerate(unders):
            end = unders[(j + 1) % len(unders)]
            k = (start + 1) % len(walk)
            while True:
                arc_of_passage[(wi, k)] = base + j
                if k == end:
                    break
                k = (k + 1) % len(walk)
        for j, pos in enumerate(unders):
            cid = walk[pos][0]
            in_arc = base + (j - 1) % len(unders)
            out_arc = base + j
            under_arcs[cid] = (in_arc, out_arc)
    for wi, walk in enumerate(comps):
        for k, (cid, role) in enumerate(walk):
            if role == "O":
                over_arc[cid] = arc_of_passage[(wi, k)]
    info = {}
    for cid in d.crossings:
        info[cid] = (over_arc[cid], under_arcs[cid][0], under_arcs[cid][1])
    return n_arcs, info


def tricolorings(d: Diagram) -> int:
    """Number of GF(3) colorings of the arcs with 2*over = under_in + under_out
    at every crossing; constant colorings included, so the count is >= 3."""
    n_arcs, info = _arcs(d)
    n_arcs += d.free_loops
    rows = []
    for cid in sorted(d.crossings):
        o, i, j = info[cid]
        row = [0] * n_arcs
        row[o] = (row[o] + 2) % 3
        row[i] = (row[i] - 1) % 3
        row[j] = (row[j] - 1) % 3
        if any(row):
            rows.append(row)
    rank = _gf3_rank(rows, n_arcs)
    return 3 ** (n_arcs - rank)


def _gf3_rank(rows: list[list[int]], width: int) -> int:
    rank = 0
    rows = [r[:] for r in rows]
    for col in range(width):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] % 3:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 if rows[rank][col] % 3 == 1 else 2
        rows[rank] = [(x * inv) % 3 for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % 3:
                f = rows[r][col] % 3
                rows[r] = [(a - f * b) % 3 for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# Conway polynomial (resolving tree)
# ---------------------------------------------------------------------------

_Z = LaurentPoly({2: 1})  # the Conway variable


def conway(d: Diagram) -> LaurentPoly:
    """Alexander-Conway polynomial via the descending-diagram expansion.

    Along a fixed traversal, every crossing first met as an under-passage is
    switched in order; each switch contributes a smoothed side branch through
    nabla(L+) - nabla(L-) = z nabla(L0).  The fully switched diagram is
    descending: a knot gives 1, anything split gives 0.  Side branches lose a
    crossing, so the recursion terminates unconditionally.
    """
    work = simplify(d.copy())
    if work.crossing_count() > CONWAY_CAP:
        raise TooManyCrossings(
            f"{work.crossing_count()} crossings exceed the Conway cap {CONWAY_CAP}")
    return _conway_rec(work, {})


def _conway_rec(d: Diagram, memo: dict) -> LaurentPoly:
    _reduce(d)
    key = d.canonical_key()
    hit = memo.get(key)
    if hit is not None:
        return hit
    walks = d.components()
    ncomp = len(walks) + d.free_loops
    bads = []
    seen: set[int] = set()
    for walk in walks:
        for cid, role in walk:
            if cid in seen:
                continue
            seen.add(cid)
            if role == "U":
                bads.append(cid)
    val = LaurentPoly.one() if ncomp == 1 else LaurentPoly.zero()
    cur = d
    for k, cid in enumerate(bads):
        sign = cur.crossings[cid].sign
        side = cur.copy()
        side.smooth_oriented(cid)
        branch = _Z * _conway_rec(side, memo)
        val = val + branch if sign > 0 else val - branch
        if k + 1 < len(bads):
            if cur is d:
                cur = d.copy()
            cur.switch_crossing(cid)
    memo[key] = val
    return val


def _reduce(d: Diagram) -> None:
    from .diagram import _reduce_r1_r2

    _reduce_r1_r2(d)


# ---------------------------------------------------------------------------
# Alexander polynomial
# ---------------------------------------------------------------------------

_T = LaurentPoly({2: 1})
_TINV = LaurentPoly({-2: 1})


def alexander(d: Diagram) -> LaurentPoly:
    """Normalized Alexander polynomial of a knot diagram.

    Builds the crossing-relation matrix over the arcs, strikes one row and
    one column, takes the determinant, and normalizes to symmetric exponents
    with value +1 at t = 1.
    """
    work = simplify(d.copy())
    if len(work.components()) + work.free_loops != 1:
        raise SingularPresentation("Alexander path requires a single-component diagram")
    n = work.crossing_count()
    if n == 0:
        return LaurentPoly.one()
    if n > ALEXANDER_CAP:
        raise TooManyCrossings(f"{n} crossings exceed the Alexander cap {ALEXANDER_CAP}")
    n_arcs, info = _arcs(work)
    one = LaurentPoly.one()
    rows = []
    for cid in sorted(work.crossings):
        o, i, j = info[cid]
        row = [LaurentPoly.zero() for _ in range(n_arcs)]
        if work.crossings[cid].sign > 0:
            row[o] = row[o] + (one - _T)
            row[i] = row[i] + _T
            row[j] = row[j] - one
        else:
            row[o] = row[o] + (one - _TINV)
            row[i] = row[i] + _TINV
            row[j] = row[j] - one
        rows.append(row)
    last_err: Exception | None = None
    for strike_col in range(n_arcs):
        for strike_row in range(len(rows)):
            minor = [
                [rows[r][c] for c in range(n_arcs) if c != strike_col]
                for r in range(len(rows)) if r != strike_row
            ]
            det = _poly_det(minor)
            try:
                return _normalize_alexander(det)
            except SingularPresentation as err:
                last_err = err
                continue
    raise last_err or SingularPresentation("all minors were singular")


def _poly_det(m: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(m)
    if n == 0:
        return LaurentPoly.one()
    cols = tuple(range(n))
    memo: dict[tuple, LaurentPoly] = {}

    def rec(row: int, cols: tuple) -> LaurentPoly:
        if row == n:
            return LaurentPoly.one()
        key = cols
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = LaurentPoly.zero()
        for k, c in enumerate(cols):
            a = m[row][c]
            if a.is_zero():
                continue
            sub = rec(row + 1, cols[:k] + cols[k + 1:])
            term = a * sub
            total = total + term if k % 2 == 0 else total - term
        memo[key] = total
        return total

    return rec(0, cols)


def _normalize_alexander(det: LaurentPoly) -> LaurentPoly:
    if det.is_zero():
        raise SingularPresentation("singular Alexander minor")
    at_one = det.evaluate_int(1)
    if at_one not in (1, -1):
        raise SingularPresentation(f"minor evaluates to {at_one} at t=1")
    lo, hi = det.min_half_exp(), det.max_half_exp()
    if (lo + hi) % 4 != 0:
        raise SingularPresentation("exponent span cannot be symmetrized")
    centered = det.shift(-(lo + hi) // 2)
    if at_one == -1:
        centered = -centered
    if centered.mirror() != centered:
        raise SingularPresentation("normalized polynomial is not symmetric")
    return centered


def determinant(d: Diagram) -> int:
    """|Alexander at t = -1|."""
    return abs(alexander(d).evaluate_int(-1))


def conway_alexander_consistent(d: Diagram) -> bool:
    """Substituting z = t^(1/2) - t^(-1/2) into Conway reproduces Alexander."""
    nabla = conway(d)
    z_sub = LaurentPoly({1: 1, -1: -1})
    return substitute_half_var(nabla, z_sub) == alexander(d)

"""Preglued configurations: ellipse clusters whose contact graph is a tree.

Validation classifies every pair, smoothing reconnects the curves at every
contact in the orientation-compatible way (yielding one closed curve),
perturbation pulls contacts apart into rigid pure links with prescribed
crossing signs, and the sweep runs the translation construction that turns
any rigid pure link back into a preglued configuration.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    Degenerate,
    InternalInconsistency,
    MaxRetriesExceeded,
    MissingGluePoint,
    NonGenericDirection,
    NotATree,
    PerturbationTooLarge,
    UnexpectedIntersection,
)
from .geom3 import (
    DEFAULT_TOL,
    TWO_PI,
    Ellipse,
    PairClassification,
    Tolerances,
    classify_pair,
    first_touches,
    frame_for_direction,
    linking_number,
    pair_crossings,
    projected_area_ok,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class GlueRecord:
    point: np.ndarray
    theta_i: float  # parameter on the lower-indexed ellipse
    theta_j: float


@dataclass(frozen=True)
class PregluedConfig:
    ellipses: tuple[Ellipse, ...]
    glue_edges: tuple[Edge, ...]
    glue_points: dict[Edge, GlueRecord]
    pair_classes: dict[Edge, PairClassification] = field(default_factory=dict, repr=False)

    @property
    def m(self) -> int:
        return len(self.ellipses)

    @property
    def degree(self) -> int:
        return 2 * self.m

    def tree_degree(self, i: int) -> int:
        return sum(1 for a, b in self.glue_edges if i in (a, b))

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b in self.glue_edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)


def _is_tree(m: int, edges: list[Edge]) -> bool:
    if len(edges) != m - 1:
        return False
    if m == 1:
        return True
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[rb] = ra
    return len({find(i) for i in range(m)}) == 1


def validate(ellipses, glue_edges, tol: Tolerances = DEFAULT_TOL) -> PregluedConfig:
    """Check the tree property and the pairwise intersection pattern.

    Glued pairs must meet in exactly one (transversal) point; all other pairs
    must be disjoint.
    """
    ells = tuple(ellipses)
    m = len(ells)
    if m < 1:
        raise ValueError("need at least one ellipse")
    edges = []
    for a, b in glue_edges:
        if not (0 <= a < m and 0 <= b < m) or a == b:
            raise ValueError(f"bad glue edge ({a},{b})")
        edges.append((min(a, b), max(a, b)))
    edges = sorted(set(edges))
    if len(edges) != len(list(glue_edges)):
        raise NotATree("duplicate glue edges")
    if not _is_tree(m, edges):
        raise NotATree(f"{len(edges)} edges on {m} ellipses do not form a tree")
    glue_points: dict[Edge, GlueRecord] = {}
    classes: dict[Edge, PairClassification] = {}
    edge_set = set(edges)
    for i in range(m):
        for j in range(i + 1, m):
            cls = classify_pair(ells[i], ells[j], tol)
            classes[(i, j)] = cls
            if (i, j) in edge_set:
                if len(cls.glue_points) == 0:
                    raise MissingGluePoint(i, j)
                if len(cls.glue_points) != 1:
                    raise UnexpectedIntersection(i, j, len(cls.glue_points))
                gp = cls.glue_points[0]
                glue_points[(i, j)] = GlueRecord(gp.point, gp.theta1, gp.theta2)
            else:
                if cls.glue_points:
                    raise UnexpectedIntersection(i, j, len(cls.glue_points))
    return PregluedConfig(ells, tuple(edges), glue_points, classes)


@dataclass(frozen=True)
class GluingTreeSummary:
    m: int
    edges: tuple[Edge, ...]
    linking: dict[Edge, int]          # non-glued pairs only
    pierce: dict[Edge, tuple[int, int]]

    def to_text(self) -> str:
        lines = [f"ellipses {self.m}", "tree " + " ".join(f"{a}-{b}" for a, b in self.edges)]
        for pair in sorted(self.pierce):
            a, b = self.pierce[pair]
            lk = self.linking.get(pair)
            tag = "glued" if pair in self.edges else f"lk={lk}"
            lines.append(f"pair {pair[0]} {pair[1]}: pierce=({a},{b}) {tag}")
        return "\n".join(lines)


def summarize(cfg: PregluedConfig, tol: Tolerances = DEFAULT_TOL) -> GluingTreeSummary:
    linking = {}
    pierce = {}
    edge_set = set(cfg.glue_edges)
    for pair, cls in sorted(cfg.pair_classes.items()):
        pierce[pair] = (cls.pierce_1_by_2, cls.pierce_2_by_1)
        if pair not in edge_set:
            linking[pair] = linking_number(cfg.ellipses[pair[0]], cfg.ellipses[pair[1]], tol)
    return GluingTreeSummary(cfg.m, cfg.glue_edges, linking, pierce)


# ---------------------------------------------------------------------------
# Smoothing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Arc:
    ellipse: int
    s_start: float
    length: float  # along the traversal parameter, in (0, 2pi]

    def contains(self, s: float, tol: float = 1e-12) -> bool:
        return tol < (s - self.s_start) % TWO_PI < self.length - tol or (
            self.length >= TWO_PI - tol
        )


@dataclass(frozen=True)
class ClosedCurve:
    """Single closed curve of ellipse arcs; arc k ends where arc k+1 begins."""

    cfg: PregluedConfig
    arcs: tuple[Arc, ...]

    @property
    def m(self) -> int:
        return self.cfg.m


def smooth(cfg: PregluedConfig) -> ClosedCurve:
    """Orientation-compatible reconnection at every glue point.

    Walking forward along an ellipse, each glue event jumps to the partner
    ellipse and keeps walking forward.  The tree property forces a single
    closed component; anything else is an internal error.
    """
    m = cfg.m
    if m == 1:
        return ClosedCurve(cfg, (Arc(0, 0.0, TWO_PI),))
    events: list[list[tuple[float, Edge]]] = [[] for _ in range(m)]
    for edge, rec in cfg.glue_points.items():
        i, j = edge
        events[i].append((cfg.ellipses[i].s_of_theta(rec.theta_i), edge))
        events[j].append((cfg.ellipses[j].s_of_theta(rec.theta_j), edge))
    for lst in events:
        lst.sort()

    def next_event(i: int, s: float) -> tuple[float, Edge]:
        for se, edge in events[i]:
            if se > s + 1e-12:
                return se, edge
        return events[i][0]

    def event_s(i: int, edge: Edge) -> float:
        for se, e in events[i]:
            if e == edge:
                return se
        raise InternalInconsistency("missing glue event")

    start_i = 0
    start_s, start_edge = events[0][0]
    arcs: list[Arc] = []
    total_arcs = sum(max(1, len(events[i])) for i in range(m))
    # begin just after the first event on ellipse 0, on the partner ellipse
    cur_i = start_i
    cur_s = start_s
    cur_edge = start_edge
    for _ in range(total_arcs + 1):
        # jump through the glue point onto the partner ellipse
        a, b = cur_edge
        nxt_i = b if cur_i == a else a
        nxt_s = event_s(nxt_i, cur_edge)
        end_s, end_edge = next_event(nxt_i, nxt_s)
        length = (end_s - nxt_s) % TWO_PI
        if length == 0.0:
            length = TWO_PI
        arcs.append(Arc(nxt_i, nxt_s, length))
        cur_i, cur_s, cur_edge = nxt_i, end_s, end_edge
        if cur_i == start_i and cur_edge == start_edge and abs(cur_s - start_s) < 1e-12:
            break
    else:
        raise InternalInconsistency("smoothing did not close up")
    if len(arcs) != total_arcs:
        raise InternalInconsistency(
            f"smoothing produced {len(arcs)} arcs on one component, expected {total_arcs}")
    return ClosedCurve(cfg, tuple(arcs))


# ---------------------------------------------------------------------------
# Perturbation into rigid pure links
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignAssignment:
    signs: dict[Edge, int]

    def n_plus(self) -> int:
        return sum(1 for v in self.signs.values() if v > 0)

    def n_minus(self) -> int:
        return sum(1 for v in self.signs.values() if v < 0)

    @staticmethod
    def constant(cfg: PregluedConfig, sign: int) -> "SignAssignment":
        return SignAssignment({e: sign for e in cfg.glue_edges})

    @staticmethod
    def from_bits(cfg: PregluedConfig, mask: int) -> "SignAssignment":
        """Bit k of mask picks the sign of the k-th edge (0 -> +1, 1 -> -1)."""
        signs = {}
        for k, e in enumerate(cfg.glue_edges):
            signs[e] = -1 if (mask >> k) & 1 else 1
        return SignAssignment(signs)


@dataclass(frozen=True)
class RigidPureLink:
    ellipses: tuple[Ellipse, ...]
    source: PregluedConfig | None = None
    signs: SignAssignment | None = None
    heights: tuple[int, ...] | None = None

    @property
    def m(self) -> int:
        return len(self.ellipses)


def _heights_for_signs(cfg: PregluedConfig, signs: SignAssignment, direction) -> list[int]:
    """Integer height per ellipse so that each glue contact, once the ellipses
    are offset by height along the viewing direction, becomes a crossing of
    the requested sign."""
    ex, ey, d = frame_for_direction(direction)
    h = [0] * cfg.m
    seen = {0}
    queue = [0]
    adj: dict[int, list[int]] = {i: cfg.neighbors(i) for i in range(cfg.m)}
    while queue:
        i = queue.pop(0)
        for j in adj[i]:
            if j in seen:
                continue
            edge = (min(i, j), max(i, j))
            rec = cfg.glue_points[edge]
            th_i = rec.theta_i if i == edge[0] else rec.theta_j
            th_j = rec.theta_j if i == edge[0] else rec.theta_i
            t_i = cfg.ellipses[i].velocity(th_i)
            t_j = cfg.ellipses[j].velocity(th_j)
            det = float(np.cross(t_i, t_j) @ d)
            if det == 0.0:
                raise Degenerate("glue tangents project to parallel lines")
            want = signs.signs[edge]
            # i on top gives sign sgn((t_i x t_j) . d)
            i_on_top = (det > 0) == (want > 0)
            h[j] = h[i] - 1 if i_on_top else h[i] + 1
            seen.add(j)
            queue.append(j)
    return h


def _min_crossing_depth_gap(cfg: PregluedConfig, direction, tol: Tolerances) -> float:
    ex, ey, d = frame_for_direction(direction)
    gap = math.inf
    for (i, j), cls in cfg.pair_classes.items():
        ei, ej = cfg.ellipses[i], cfg.ellipses[j]
        if not (projected_area_ok(ei, ex, ey, tol) and projected_area_ok(ej, ex, ey, tol)):
            raise Degenerate("reference projection sees an ellipse edge-on")
        glue_thetas = []
        if (i, j) in cfg.glue_points:
            rec = cfg.glue_points[(i, j)]
            glue_thetas.append((rec.theta_i, rec.theta_j))
        for ev in pair_crossings(ei, ej, ex, ey, d, tol):
            if any(
                abs((ev.theta1 - a + math.pi) % TWO_PI - math.pi) < 1e-5
                and abs((ev.theta2 - b + math.pi) % TWO_PI - math.pi) < 1e-5
                for a, b in glue_thetas
            ):
                continue
            gap = min(gap, abs(ev.depth1 - ev.depth2))
    return gap


def perturb(cfg: PregluedConfig, signs: SignAssignment, direction,
            tol: Tolerances = DEFAULT_TOL, delta: float | None = None) -> RigidPureLink:
    """Pull every glue contact apart along the viewing direction.

    Each ellipse is translated by height*delta*direction; translations along
    the viewing direction leave the projected diagram unchanged except that
    every former glue point becomes a crossing of the requested sign.  A new
    intersection (or a flipped pre-existing crossing) triggers delta halving,
    up to 20 times.
    """
    if set(signs.signs) != set(cfg.glue_edges):
        raise ValueError("sign assignment does not match the glue edges")
    ex, ey, d = frame_for_direction(direction)
    h = _heights_for_signs(cfg, signs, d)
    scale = max(e.scale() for e in cfg.ellipses)
    if delta is None:
        delta = 1e-3 * scale
        gap = _min_crossing_depth_gap(cfg, d, tol)
        spread = max(abs(x - y) for x in h for y in h) or 1
        if math.isfinite(gap) and gap > 0:
            delta = min(delta, 0.25 * gap / spread)
    prior_link = {}
    edge_set = set(cfg.glue_edges)
    for (i, j), cls in cfg.pair_classes.items():
        if (i, j) not in edge_set:
            prior_link[(i, j)] = linking_number(cfg.ellipses[i], cfg.ellipses[j], tol)
    for _ in range(20):
        moved = tuple(
            e.translated(h[k] * delta * d) for k, e in enumerate(cfg.ellipses)
        )
        try:
            for i in range(cfg.m):
                for j in range(i + 1, cfg.m):
                    cls = classify_pair(moved[i], moved[j], tol)
                    if cls.glue_points:
                        raise PerturbationTooLarge(f"pair ({i},{j}) still meets")
                    if (i, j) in prior_link:
                        if linking_number(moved[i], moved[j], tol) != prior_link[(i, j)]:
                            raise PerturbationTooLarge(f"pair ({i},{j}) changed linking")
            return RigidPureLink(moved, cfg, signs, tuple(h))
        except (PerturbationTooLarge, Degenerate):
            delta *= 0.5
    raise PerturbationTooLarge("no displacement small enough after 20 halvings")


# ---------------------------------------------------------------------------
# Sweep: rigid pure link -> preglued configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    config: PregluedConfig
    recovery_signs: SignAssignment
    order: tuple[int, ...]  # ellipses in the order they joined the cluster


def sweep_to_preglued(link: RigidPureLink | list[Ellipse], v,
                      tol: Tolerances = DEFAULT_TOL) -> SweepResult:
    """Translate a growing cluster along v until it first touches the rest,
    one contact at a time, producing a preglued configuration.

    recovery_signs hold the crossing sign each contact would acquire if the
    cluster were pulled back infinitesimally, i.e. the sign assignment whose
    perturbation recovers the input link type.
    """
    ells = list(link.ellipses if isinstance(link, RigidPureLink) else link)
    n = len(ells)
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    if n == 1:
        cfg = validate(ells, [])
        return SweepResult(cfg, SignAssignment({}), (0,))
    cluster = [0]
    rest = set(range(1, n))
    raw_edges: list[tuple[int, int, int]] = []  # (i, j, sign)
    for _ in range(n - 1):
        candidates = []
        for mi in cluster:
            for sj in rest:
                for ev in first_touches(ells[mi], ells[sj], v, tol):
                    if ev.t > tol.band * 100:
                        candidates.append((ev.t, mi, sj, ev))
        if not candidates:
            raise NonGenericDirection("cluster never touches the remainder")
        candidates.sort(key=lambda c: c[0])
        t0, mi, sj, ev = candidates[0]
        if len(candidates) > 1 and candidates[1][0] - t0 < 1e-7:
            raise NonGenericDirection("two contacts at the same translation")
        if ev.double:
            raise NonGenericDirection("tangential first touch")
        for k in cluster:
            ells[k] = ells[k].translated(ev.t * v)
        t_m = ells[mi].velocity(ev.theta_moving)
        t_s = ells[sj].velocity(ev.theta_static)
        det = float(np.dot(np.cross(t_m, t_s), -v))
        if det == 0.0:
            raise NonGenericDirection("contact tangents degenerate against v")
        raw_edges.append((mi, sj, 1 if det > 0 else -1))
        cluster.append(sj)
        rest.discard(sj)
    cfg = validate(ells, [(min(a, b), max(a, b)) for a, b, _ in raw_edges], tol)
    signs = SignAssignment({(min(a, b), max(a, b)): s for a, b, s in raw_edges})
    return SweepResult(cfg, signs, tuple(cluster))


def sweep_with_retries(link, seed: int = 0, tries: int = 32,
                       tol: Tolerances = DEFAULT_TOL) -> SweepResult:
    rng = random.Random(seed)
    last = None
    for _ in range(tries):
        vec = np.array([rng.gauss(0, 1) for _ in range(3)])
        if np.linalg.norm(vec) < 1e-9:
            continue
        try:
            return sweep_to_preglued(link, vec, tol)
        except (NonGenericDirection, Degenerate, NotATree, MissingGluePoint,
                UnexpectedIntersection) as err:
            last = err
    raise MaxRetriesExceeded(f"sweep failed in {tries} directions: {last}")


# ---------------------------------------------------------------------------
# Random configurations
# ---------------------------------------------------------------------------

def _random_unit(rng: random.Random) -> np.ndarray:
    while True:
        w = np.array([rng.gauss(0, 1) for _ in range(3)])
        nw = float(np.linalg.norm(w))
        if nw > 1e-6:
            return w / nw


def _random_ellipse(rng: random.Random, center, radius_lo=0.6, radius_hi=1.4) -> Ellipse:
    u_dir = _random_unit(rng)
    while True:
        w = _random_unit(rng)
        vv = np.cross(u_dir, w)
        nv = float(np.linalg.norm(vv))
        if nv > 0.3:
            v_dir = vv / nv
            break
    ru = rng.uniform(radius_lo, radius_hi)
    rv = rng.uniform(radius_lo, radius_hi)
    orient = rng.choice((1, -1))
    return Ellipse(np.asarray(center, dtype=float), u_dir * ru, v_dir * rv, orient)


def _random_tree(rng: random.Random, m: int, path_only: bool) -> list[Edge]:
    if m == 1:
        return []
    if path_only or m == 2:
        return [(i, i + 1) for i in range(m - 1)]
    edges = []
    for j in range(1, m):
        i = rng.randrange(j)
        edges.append((i, j))
    return edges


def random_config(m: int, seed: int = 0, strategy: str = "cluster",
                  tol: Tolerances = DEFAULT_TOL, max_attempts: int = 200) -> PregluedConfig:
    """Rejection-sample a valid preglued configuration, deterministic per seed.

    "chain" places ellipses along a coarse helix on a path tree (terminates
    fast); "cluster" uses random placements on a random tree for broader
    coverage of contact patterns.
    """
    if m < 1:
        raise ValueError("m >= 1 required")
    rng = random.Random((seed, m, strategy).__repr__())
    for _attempt in range(max_attempts):
        try:
            edges = _random_tree(rng, m, path_only=(strategy == "chain"))
            parents = {}
            order = [0]
            adj: dict[int, list[int]] = {i: [] for i in range(m)}
            for a, b in edges:
                adj[a].append(b)
                adj[b].append(a)
            seen = {0}
            queue = [0]
            while queue:
                x = queue.pop(0)
                for y in adj[x]:
                    if y not in seen:
                        parents[y] = x
                        seen.add(y)
                        order.append(y)
                        queue.append(y)
            ells: dict[int, Ellipse] = {}
            if strategy == "chain":
                base = np.zeros(3)
            for rank, idx in enumerate(order):
                if rank == 0:
                    center = np.zeros(3)
                    ells[idx] = _random_ellipse(rng, center)
                    continue
                ells[idx] = _place_against(
                    rng, ells, parents[idx], idx, tol, helix=(strategy == "chain"), rank=rank
                )
            cfg = validate([ells[i] for i in range(m)], edges, tol)
            return cfg
        except (Degenerate, MissingGluePoint, UnexpectedIntersection, NotATree,
                NonGenericDirection, _PlacementFailed):
            continue
    raise MaxRetriesExceeded(f"no valid configuration for m={m} after {max_attempts} attempts")


class _PlacementFailed(Exception):
    pass


def _place_against(rng, ells: dict[int, Ellipse], parent: int, idx: int,
                   tol: Tolerances, helix: bool, rank: int) -> Ellipse:
    """Place a fresh ellipse away from the cluster, then pull it along a
    random direction until its first contact, which must be the parent."""
    target = ells[parent]
    for _ in range(40):
        offset_dir = _random_unit(rng)
        dist = rng.uniform(3.5, 6.0) * (1.0 + 0.3 * rank if helix else 1.0)
        center = target.center + offset_dir * dist
        cand = _random_ellipse(rng, center)
        # aim at a random point of the parent curve
        aim = target.point(rng.uniform(0, TWO_PI))
        w = aim - cand.center
        nw = float(np.linalg.norm(w))
        if nw < 1e-6:
            continue
        w = w / nw
        best = None
        ok = True
        for k, other in ells.items():
            try:
                for ev in first_touches(cand, other, w, tol):
                    if ev.t <= 1e-7:
                        continue
                    if best is None or ev.t < best[0]:
                        best = (ev.t, k, ev)
            except (Degenerate, NonGenericDirection):
                ok = False
                break
        if not ok or best is None:
            continue
        t, k, ev = best
        if k != parent or ev.double:
            continue
        moved = cand.translated(t * w)
        return moved
    raise _PlacementFailed


# ---------------------------------------------------------------------------
# Configuration file format
# ---------------------------------------------------------------------------

def config_to_text(cfg: PregluedConfig) -> str:
    lines = [e.to_text() for e in cfg.ellipses]
    lines += [f"glue {a} {b}" for a, b in cfg.glue_edges]
    return "\n".join(lines) + "\n"


def config_from_text(text: str, tol: Tolerances = DEFAULT_TOL) -> PregluedConfig:
    ells = []
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ellipse"):
            ells.append(Ellipse.from_text(line))
        elif line.startswith("glue"):
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"bad glue line: {raw!r}")
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"unrecognized line: {raw!r}")
    return validate(ells, edges, tol)

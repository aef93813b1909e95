"""Generic parallel projection of smoothed curves and rigid links to diagrams.

Every crossing of a projected configuration comes from a pair of distinct
ellipses (a single projected ellipse is convex), so the diagram is assembled
from pairwise conic-conic intersections.  Glue-point images are excluded from
the crossing set; all the usual genericity failures (edge-on ellipse,
tangential or near-glue crossings, depth ties, triple points) raise
NonGenericProjection so callers can retry with a fresh direction.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .config import ClosedCurve, PregluedConfig, RigidPureLink
from .diagram import Diagram
from .diagram import simplify as simplify  # re-exported
from .errors import Degenerate, InternalInconsistency, MaxRetriesExceeded, NonGenericProjection
from .geom3 import (
    DEFAULT_TOL,
    TWO_PI,
    Ellipse,
    Tolerances,
    crossing_sign,
    frame_for_direction,
    pair_crossings,
    projected_area_ok,
)


@dataclass(frozen=True)
class ProjectionSpec:
    direction: np.ndarray
    ex: np.ndarray
    ey: np.ndarray
    genericity_report: dict | None = None

    @staticmethod
    def from_direction(direction) -> "ProjectionSpec":
        ex, ey, d = frame_for_direction(direction)
        return ProjectionSpec(d, ex, ey)


DEFAULT_SPEC = ProjectionSpec.from_direction(np.array([0.2357022, 0.3571428, 0.904534]))


def _ellipses_of(obj) -> tuple[Ellipse, ...]:
    if isinstance(obj, ClosedCurve):
        return obj.cfg.ellipses
    if isinstance(obj, RigidPureLink):
        return obj.ellipses
    if isinstance(obj, PregluedConfig):
        raise TypeError("project a smoothed curve or a rigid link, not a raw configuration")
    return tuple(obj)


@dataclass
class _Event:
    pair: tuple[int, int]
    theta: dict[int, float]
    xy: np.ndarray
    over: int   # ellipse index of the over strand
    sign: int
    tangents: dict[int, np.ndarray]


def _collect_events(ells, glue_params, ex, ey, d, tol: Tolerances) -> list[_Event]:
    scale = 1.0 + max(e.scale() for e in ells)
    for e in ells:
        if not projected_area_ok(e, ex, ey, tol):
            raise NonGenericProjection("ellipse seen edge-on")
    events: list[_Event] = []
    glue_images = []
    for (i, j), (th_i, th_j) in glue_params.items():
        p = ells[i].point(th_i)
        glue_images.append(np.array([float(ex @ p), float(ey @ p)]))
    for i in range(len(ells)):
        for j in range(i + 1, len(ells)):
            try:
                raw = pair_crossings(ells[i], ells[j], ex, ey, d, tol)
            except Degenerate as err:
                raise NonGenericProjection(str(err)) from err
            keep = []
            glue = glue_params.get((i, j))
            matched = 0
            for ev in raw:
                if glue is not None:
                    da = abs((ev.theta1 - glue[0] + math.pi) % TWO_PI - math.pi)
                    db = abs((ev.theta2 - glue[1] + math.pi) % TWO_PI - math.pi)
                    if da < 1e-5 and db < 1e-5:
                        matched += 1
                        continue
                keep.append(ev)
            if glue is not None and matched != 1:
                raise NonGenericProjection(
                    f"glue image of pair ({i},{j}) matched {matched} intersections")
            expected_parity = 1 if glue is not None else 0
            if len(keep) % 2 != expected_parity:
                raise NonGenericProjection(
                    f"pair ({i},{j}) produced {len(keep)} crossings (+{matched} glue)")
            for ev in keep:
                gap = ev.depth1 - ev.depth2
                if abs(gap) < 1e-7 * scale:
                    raise NonGenericProjection("depth tie at a crossing")
                tu = {i: ev.tangent1, j: ev.tangent2}
                over = i if gap > 0 else j
                under = j if gap > 0 else i
                sign = crossing_sign(tu[over], tu[under])
                nt1 = float(np.linalg.norm(ev.tangent1))
                nt2 = float(np.linalg.norm(ev.tangent2))
                det = abs(ev.tangent1[0] * ev.tangent2[1] - ev.tangent1[1] * ev.tangent2[0])
                if det < 1e-6 * nt1 * nt2:
                    raise NonGenericProjection("near-tangential crossing")
                events.append(_Event((i, j), {i: ev.theta1, j: ev.theta2}, ev.xy, over, sign, tu))
    pts = [e.xy for e in events] + glue_images
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if float(np.linalg.norm(pts[a] - pts[b])) < 1e-6 * scale:
                raise NonGenericProjection("two diagram points collide (triple point?)")
    return events


def project(obj, spec: ProjectionSpec = DEFAULT_SPEC, tol: Tolerances = DEFAULT_TOL) -> Diagram:
    """Project a smoothed closed curve or a rigid pure link to a diagram."""
    ells = _ellipses_of(obj)
    ex, ey, d = spec.ex, spec.ey, spec.direction
    glue_params: dict[tuple[int, int], tuple[float, float]] = {}
    if isinstance(obj, ClosedCurve):
        for edge, rec in obj.cfg.glue_points.items():
            glue_params[edge] = (rec.theta_i, rec.theta_j)
    events = _collect_events(ells, glue_params, ex, ey, d, tol)

    diagram = Diagram()
    cross_ids = []
    for ev in events:
        cid = diagram.new_crossing(ev.sign, pair=ev.pair, xy=(float(ev.xy[0]), float(ev.xy[1])))
        diagram.crossings[cid].thetas = dict(ev.theta)
        diagram.crossings[cid].over_src = ev.over
        cross_ids.append(cid)

    # passages per component
    if isinstance(obj, ClosedCurve):
        comps = [_curve_passages(obj, events, cross_ids)]
    else:
        comps = _link_passages(ells, events, cross_ids)

    seen_ports = 0
    for passages in comps:
        if not passages:
            diagram.free_loops += 1
            continue
        n = len(passages)
        for k in range(n):
            cid_a, role_a = passages[k]
            cid_b, role_b = passages[(k + 1) % n]
            ca, cb = diagram.crossings[cid_a], diagram.crossings[cid_b]
            out_port = 2 if role_a == "U" else ca.over_out
            in_port = 0 if role_b == "U" else cb.over_in
            diagram.new_edge((cid_a, out_port), (cid_b, in_port))
            seen_ports += 2
    if seen_ports != 4 * len(events):
        raise InternalInconsistency("some crossing was not traversed twice")
    diagram.validate()
    return diagram


def _curve_passages(curve: ClosedCurve, events, cross_ids):
    order = []
    for arc_idx, arc in enumerate(curve.arcs):
        e = curve.cfg.ellipses[arc.ellipse]
        for ev, cid in zip(events, cross_ids):
            if arc.ellipse not in ev.theta:
                continue
            if arc.ellipse == ev.pair[0] and arc.ellipse == ev.pair[1]:
                raise InternalInconsistency("self-pair event")
            s = e.s_of_theta(ev.theta[arc.ellipse])
            rel = (s - arc.s_start) % TWO_PI
            if rel <= 0 or rel >= arc.length:
                continue
            role = "O" if ev.over == arc.ellipse else "U"
            order.append((arc_idx, rel, cid, role))
    order.sort(key=lambda t: (t[0], t[1]))
    return [(cid, role) for _, _, cid, role in order]


def _link_passages(ells, events, cross_ids):
    comps = []
    for i, e in enumerate(ells):
        order = []
        for ev, cid in zip(events, cross_ids):
            if i not in ev.theta:
                continue
            s = e.s_of_theta(ev.theta[i])
            role = "O" if ev.over == i else "U"
            order.append((s, cid, role))
        order.sort(key=lambda t: t[0])
        comps.append([(cid, role) for _, cid, role in order])
    return comps


_DIR_RNG_SALT = "projection-directions"


def directions_for_seed(seed: int):
    rng = random.Random((_DIR_RNG_SALT, seed).__repr__())
    yield DEFAULT_SPEC.direction
    while True:
        w = np.array([rng.gauss(0, 1) for _ in range(3)])
        n = float(np.linalg.norm(w))
        if n > 1e-6:
            yield w / n


def project_with_retries(obj, seed: int = 0, tries: int = 32,
                         tol: Tolerances = DEFAULT_TOL) -> tuple[Diagram, ProjectionSpec]:
    last = None
    gen = directions_for_seed(seed)
    for _ in range(tries):
        spec = ProjectionSpec.from_direction(next(gen))
        try:
            return project(obj, spec, tol), spec
        except (NonGenericProjection, Degenerate) as err:
            last = err
    raise MaxRetriesExceeded(f"no generic projection after {tries} tries: {last}")


# ---------------------------------------------------------------------------
# Diagram-level helpers re-exported under the projection API
# ---------------------------------------------------------------------------

def writhe(d: Diagram) -> int:
    return d.writhe()


def is_alternating(d: Diagram) -> bool:
    return d.is_alternating()


def is_reduced(d: Diagram) -> bool:
    return d.is_reduced()


def pair_contributions(d: Diagram) -> dict[tuple[int, int], int]:
    """Sum of crossing signs grouped by the source ellipse pair."""
    out: dict[tuple[int, int], int] = {}
    for c in d.crossings.values():
        if c.pair is None:
            continue
        out[c.pair] = out.get(c.pair, 0) + c.sign
    return out


def pair_crossing_counts(d: Diagram) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for c in d.crossings.values():
        if c.pair is None:
            continue
        out[c.pair] = out.get(c.pair, 0) + 1
    return out


# ---------------------------------------------------------------------------
# SVG emission (presentation only)
# ---------------------------------------------------------------------------

def render_svg(obj, spec: ProjectionSpec = DEFAULT_SPEC, tol: Tolerances = DEFAULT_TOL,
               samples_per_arc: int = 96, gap: float = 0.06) -> str:
    """Draw the projected diagram with over/under gaps as cubic splines."""
    ells = _ellipses_of(obj)
    ex, ey, d = spec.ex, spec.ey, spec.direction
    glue_params: dict[tuple[int, int], tuple[float, float]] = {}
    if isinstance(obj, ClosedCurve):
        for edge, rec in obj.cfg.glue_points.items():
            glue_params[edge] = (rec.theta_i, rec.theta_j)
    events = _collect_events(ells, glue_params, ex, ey, d, tol)
    scale = 1.0 + max(e.scale() for e in ells)

    # strand pieces: (ellipse, s ranges to draw) with gaps at under passages
    pieces: list[list[np.ndarray]] = []
    if isinstance(obj, ClosedCurve):
        strands = [(arc.ellipse, arc.s_start, arc.length) for arc in obj.arcs]
    else:
        strands = [(i, 0.0, TWO_PI) for i in range(len(ells))]
    for ell_idx, s0, length in strands:
        e = ells[ell_idx]
        cyclic = length >= TWO_PI - 1e-12
        cuts = []
        for ev in events:
            if ell_idx not in ev.theta or ev.over == ell_idx:
                continue
            s = e.s_of_theta(ev.theta[ell_idx])
            rel = (s - s0) % TWO_PI
            if 0 < rel < length:
                cuts.append(rel)
        cuts.sort()
        half = gap * scale / max(e.scale(), 1e-9)
        segments: list[tuple[float, float]] = []
        if not cuts:
            segments.append((0.0, length))
        elif cyclic:
            for k in range(len(cuts)):
                a = cuts[k] + half
                b = cuts[(k + 1) % len(cuts)] - half + (length if k + 1 == len(cuts) else 0.0)
                if b > a:
                    segments.append((a, b))
        else:
            bounds = [0.0] + cuts + [length]
            for k in range(len(bounds) - 1):
                a = bounds[k] + (half if k > 0 else 0.0)
                b = bounds[k + 1] - (half if k + 1 < len(bounds) - 1 else 0.0)
                if b > a:
                    segments.append((a, b))
        for a, b in segments:
            n = max(8, int(samples_per_arc * (b - a) / TWO_PI))
            ss = np.linspace(a, b, n)
            pts = []
            for s in ss:
                p = e.point_at_s((s0 + s) % TWO_PI)
                pts.append(np.array([float(ex @ p), float(ey @ p)]))
            pieces.append(pts)

    allpts = [p for piece in pieces for p in piece]
    xs = [p[0] for p in allpts]
    ys = [p[1] for p in allpts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pad = 0.08 * max(x1 - x0, y1 - y0, 1e-6)
    w = x1 - x0 + 2 * pad
    h = y1 - y0 + 2 * pad

    def fmt(p):
        return f"{(p[0] - x0 + pad) / w * 640:.2f},{(1 - (p[1] - y0 + pad) / h) * 640:.2f}"

    paths = []
    for pts in pieces:
        if len(pts) < 2:
            continue
        dcmd = [f"M {fmt(pts[0])}"]
        for k in range(1, len(pts)):
            p_prev = pts[k - 1]
            p_cur = pts[k]
            t_prev = (pts[k] - pts[k - 2]) / 2 if k >= 2 else (pts[k] - pts[k - 1])
            t_cur = (pts[k + 1] - pts[k - 1]) / 2 if k + 1 < len(pts) else (pts[k] - pts[k - 1])
            c1 = p_prev + t_prev / 3
            c2 = p_cur - t_cur / 3
            dcmd.append(f"C {fmt(c1)} {fmt(c2)} {fmt(p_cur)}")
        paths.append(
            f'<path d="{" ".join(dcmd)}" fill="none" stroke="black" stroke-width="2.2"/>'
        )
    body = "\n".join(paths)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" '
        'viewBox="0 0 640 640">\n' + body + "\n</svg>\n"
    )

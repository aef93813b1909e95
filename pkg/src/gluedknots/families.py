"""Coordinate generators for the named configuration families.

max_writhe:   stereographic images of Hopf fibers (round circles, pairwise
              linking +1) with consecutive circles pulled into contact.
low_crossing: the three mutually hooked ellipses that realize the figure-eight,
              then one small ring glued near a crossing per extra ellipse.
three_color:  same ring-gluing engine steered by the tricoloring count;
              coordinates for the standard sizes ship as frozen data.
connect_sum:  trefoil blocks chained by single unlinked contacts.
"""

from __future__ import annotations

import itertools
import math
import random
from importlib import resources

import numpy as np

from .config import PregluedConfig, config_from_text, smooth, validate
from .diagram import simplify
from .errors import MaxRetriesExceeded
from .geom3 import DEFAULT_TOL, TWO_PI, Ellipse, Tolerances, circle, first_touches
from .invariants import tricolorings
from .project import ProjectionSpec, directions_for_seed, project, project_with_retries

FAMILIES = ("max_writhe", "three_color", "low_crossing", "connect_sum_trefoils")


# ---------------------------------------------------------------------------
# shared construction helpers
# ---------------------------------------------------------------------------

def _nearest_aim(e_from: Ellipse, e_to: Ellipse, n: int = 160) -> np.ndarray:
    ts = np.linspace(0, TWO_PI, n, endpoint=False)
    p = np.array([e_from.point(t) for t in ts])
    q = np.array([e_to.point(t) for t in ts])
    d2 = ((p[:, None, :] - q[None, :, :]) ** 2).sum(-1)
    i, j = np.unravel_index(np.argmin(d2), d2.shape)
    return q[j] - p[i]


def pull_to_contact(ells: list[Ellipse], k: int, parent: int, rng: random.Random,
                    tries: int = 60, tol: Tolerances = DEFAULT_TOL) -> Ellipse:
    """Translate ellipse k until its first touch with the rest of the cluster,
    requiring that touch to be a single transversal contact with `parent`."""
    base_w = _nearest_aim(ells[k], ells[parent])
    for attempt in range(tries):
        w = base_w
        if attempt:
            jitter = np.array([rng.gauss(0, 1) for _ in range(3)])
            w = base_w + jitter * float(np.linalg.norm(base_w)) * 0.04 * attempt
        nw = float(np.linalg.norm(w))
        if nw < 1e-9:
            continue
        w = w / nw
        cands = []
        bad = False
        for j in range(len(ells)):
            if j == k:
                continue
            try:
                for ev in first_touches(ells[k], ells[j], w, tol):
                    if ev.t > 1e-7:
                        cands.append((ev.t, j, ev))
            except Exception:
                bad = True
                break
        if bad or not cands:
            continue
        cands.sort(key=lambda c: c[0])
        t0, j0, ev0 = cands[0]
        if j0 != parent or ev0.double:
            continue
        if len(cands) > 1 and cands[1][0] - t0 < 1e-6:
            continue
        return ells[k].translated(t0 * w)
    raise MaxRetriesExceeded(f"could not pull ellipse {k} onto {parent}")


# ---------------------------------------------------------------------------
# max-writhe family
# ---------------------------------------------------------------------------

_FIBER_SAMPLES = (0.0, 2.0943951023931953, 4.1887902047863905)


def hopf_fiber_circle(alpha: float, beta: float = 0.0, orientation: int = 1) -> Ellipse:
    """Stereographic image of the Hopf fiber through (cos a, sin a e^(i b))."""
    a1 = complex(math.cos(alpha), 0.0)
    a2 = math.sin(alpha) * complex(math.cos(beta), math.sin(beta))
    pts = []
    for theta in _FIBER_SAMPLES:
        w = complex(math.cos(theta), math.sin(theta))
        z1, z2 = w * a1, w * a2
        pts.append(np.array([z1.real, z1.imag, z2.real]) / (1.0 - z2.imag))
    p0, p1, p2 = pts
    a, b = p1 - p0, p2 - p0
    n = np.cross(a, b)
    c = p0 + np.cross(float(a @ a) * b - float(b @ b) * a, n) / (2.0 * float(n @ n))
    u = p0 - c
    w = np.cross(p1 - p0, p2 - p1)
    w = w / np.linalg.norm(w)
    return Ellipse(c, u, np.cross(w, u), orientation)


def gen_max_writhe(m: int, tol: Tolerances = DEFAULT_TOL) -> PregluedConfig:
    """m pairwise +1-linked round circles, consecutive ones glued; the
    diagram writhe is (m-1)^2 and the knot is the (m, m-1) torus knot."""
    if m < 1:
        raise ValueError("m >= 1 required")
    if m == 1:
        return validate([hopf_fiber_circle(0.6)], [], tol)
    alphas = [0.35 + 1.1 * (k / (m - 1)) for k in range(m)]
    ells = [hopf_fiber_circle(a) for a in alphas]
    rng = random.Random(99)
    edges = []
    for k in range(1, m):
        ells[k] = pull_to_contact(ells, k, k - 1, rng, tol=tol)
        edges.append((k - 1, k))
    return validate(ells, edges, tol)


# ---------------------------------------------------------------------------
# the hooked triple: figure-eight and trefoil witnesses
# ---------------------------------------------------------------------------

def _hooked_triple(orients: tuple[int, int, int], tol: Tolerances) -> PregluedConfig:
    """Three mutually hooked ellipses (each piercing the next disk twice),
    outer two pulled into contact with the middle one."""
    ells = [
        Ellipse(np.zeros(3), np.array([2.0, 0, 0]), np.array([0, 1.0, 0]), orients[0]),
        Ellipse(np.zeros(3), np.array([0, 2.0, 0]), np.array([0, 0, 1.0]), orients[1]),
        Ellipse(np.zeros(3), np.array([0, 0, 2.0]), np.array([1.0, 0, 0]), orients[2]),
    ]
    rng = random.Random(11)
    ells[0] = pull_to_contact(ells, 0, 1, rng, tol=tol)
    ells[2] = pull_to_contact(ells, 2, 1, rng, tol=tol)
    return validate(ells, [(0, 1), (1, 2)], tol)


def figure_eight_config(tol: Tolerances = DEFAULT_TOL) -> PregluedConfig:
    return _hooked_triple((1, 1, 1), tol)


def trefoil_config(tol: Tolerances = DEFAULT_TOL) -> PregluedConfig:
    return _hooked_triple((1, 1, -1), tol)


# ---------------------------------------------------------------------------
# ring-gluing growth step (shared by low_crossing and three_color)
# ---------------------------------------------------------------------------

def _ring_candidates(cfg: PregluedConfig, spec: ProjectionSpec, tol: Tolerances,
                     free_wraps: bool = True):
    """Candidate configurations with one extra small ring glued in.

    Rings wrap a strand (at a crossing or at sampled positions) and are
    pulled to a single contact with another ellipse.
    """
    ells = list(cfg.ellipses)
    edges = list(cfg.glue_edges)
    m = len(ells)
    try:
        d0 = project(smooth(cfg), spec, tol)
    except Exception:
        return

    def attempt(wrap: int, th_w: float, aim: np.ndarray, rho: float, orient: int):
        p_w = ells[wrap].point(th_w)
        gapvec = aim - p_w
        g = float(np.linalg.norm(gapvec))
        if g < 1e-9:
            return None
        t_w = ells[wrap].velocity(th_w)
        t_w = t_w / np.linalg.norm(t_w)
        ring = circle(p_w, t_w, rho, orient)
        w = gapvec / g
        cands = []
        for j in range(m):
            try:
                for ev in first_touches(ring, ells[j], w, tol):
                    if ev.t > 1e-7:
                        cands.append((ev.t, j, ev))
            except Exception:
                return None
        if not cands:
            return None
        cands.sort(key=lambda x: x[0])
        t0, j0, ev0 = cands[0]
        if ev0.double or j0 == wrap:
            return None
        try:
            return validate(ells + [ring.translated(t0 * w)],
                            edges + [(min(j0, m), max(j0, m))], tol)
        except Exception:
            return None

    for cid in sorted(d0.crossings):
        c = d0.crossings[cid]
        o = c.over_src
        u = [x for x in c.pair if x != o][0]
        for wrap, glue in ((u, o), (o, u)):
            th_w = c.thetas[wrap]
            aim = ells[glue].point(c.thetas[glue])
            gap = float(np.linalg.norm(aim - ells[wrap].point(th_w)))
            for rho_f in (1.2, 1.5, 1.8, 2.2, 2.6, 3.2, 4.0):
                for orient in (1, -1):
                    got = attempt(wrap, th_w, aim, rho_f * gap, orient)
                    if got is not None:
                        yield got
    if not free_wraps:
        return
    for wrap in range(m):
        for th_w in np.linspace(0, TWO_PI, 10, endpoint=False):
            p = ells[wrap].point(th_w)
            best = None
            for j in range(m):
                if j == wrap:
                    continue
                ts = np.linspace(0, TWO_PI, 90, endpoint=False)
                q = np.array([ells[j].point(t) for t in ts])
                dd = np.linalg.norm(q - p, axis=1)
                k2 = int(np.argmin(dd))
                if best is None or dd[k2] < best[0]:
                    best = (dd[k2], j, q[k2])
            if best is None:
                continue
            dist, j, aim = best
            for rho_f in (0.7, 1.1, 1.6):
                for orient in (1, -1):
                    got = attempt(wrap, float(th_w), aim, max(0.25, rho_f * dist), orient)
                    if got is not None:
                        yield got


def _grow(cfg: PregluedConfig, accept, tol: Tolerances,
          spec_seeds: int = 4) -> PregluedConfig:
    """First candidate of the ring step satisfying `accept`, searched over a
    deterministic list of projection specs."""
    specs = [ProjectionSpec.from_direction(d)
             for d, _ in zip(directions_for_seed(42), range(spec_seeds))]
    for spec in specs:
        for cand in _ring_candidates(cfg, spec, tol):
            if accept(cand):
                return cand
    raise MaxRetriesExceeded("ring-gluing step found no acceptable candidate")


# ---------------------------------------------------------------------------
# frozen coordinates
# ---------------------------------------------------------------------------

def _load_frozen(name: str, tol: Tolerances) -> PregluedConfig | None:
    try:
        text = resources.files("gluedknots").joinpath(f"data/{name}.cfg").read_text()
    except (FileNotFoundError, ModuleNotFoundError):
        return None
    return config_from_text(text, tol)


# ---------------------------------------------------------------------------
# low-crossing family
# ---------------------------------------------------------------------------

def _simplified(cfg: PregluedConfig, tol: Tolerances, seed: int = 3):
    d, _ = project_with_retries(smooth(cfg), seed=seed, tol=tol)
    return d, simplify(d.copy())


def gen_low_crossing(n: int, tol: Tolerances = DEFAULT_TOL) -> PregluedConfig:
    """Degree-2n configuration whose diagram simplifies to a reduced
    alternating diagram with exactly 2n-2 crossings (figure-eight at n=3)."""
    if n < 3:
        raise ValueError("n >= 3 required")
    frozen = _load_frozen(f"low_crossing_n{n}", tol)
    if frozen is not None:
        return frozen
    cfg = figure_eight_config(tol)
    for step in range(4, n + 1):
        def accept(cand: PregluedConfig, want=2 * step - 2) -> bool:
            try:
                _, s = _simplified(cand, tol)
            except Exception:
                return False
            return (s.crossing_count() == want and s.is_alternating()
                    and s.is_reduced())

        cfg = _grow(cfg, accept, tol)
    return cfg


# ---------------------------------------------------------------------------
# three-coloring family
# ---------------------------------------------------------------------------

def gen_three_color(k: int, tol: Tolerances = DEFAULT_TOL) -> PregluedConfig:
    """k+2 ellipses whose glued knot admits exactly 3^k tricolorings."""
    if k < 3:
        raise ValueError("k >= 3 required")
    frozen = _load_frozen(f"three_color_k{k}", tol)
    if frozen is not None:
        return frozen
    cfg = figure_eight_config(tol)
    for level in range(2, k + 1):
        def accept(cand: PregluedConfig, want=3 ** level) -> bool:
            try:
                d, _ = project_with_retries(smooth(cand), seed=3, tol=tol)
            except Exception:
                return False
            return tricolorings(d) == want

        cfg = _grow(cfg, accept, tol)
    return cfg


# ---------------------------------------------------------------------------
# connected sums of trefoils
# ---------------------------------------------------------------------------

def gen_connect_sum_trefoils(k: int, tol: Tolerances = DEFAULT_TOL) -> PregluedConfig:
    """k trefoil blocks chained by single unlinked contacts; 3^(k+1)
    tricolorings at degree 6k."""
    if k < 1:
        raise ValueError("k >= 1 required")
    base = trefoil_config(tol)
    ells: list[Ellipse] = []
    edges: list[tuple[int, int]] = []
    rng = random.Random(7)
    for b in range(k):
        shift = np.array([11.0 * b, 1.5 * b, 2.0 * b])
        block = [e.translated(shift) for e in base.ellipses]
        offset = 3 * b
        ells.extend(block)
        edges.extend((a + offset, c + offset) for a, c in base.glue_edges)
        if b:
            # translate the fresh block until it first touches the previous one
            target = offset - 1  # an ellipse of the previous block
            direction = ells[target].center - ells[offset + 1].center
            direction = direction / np.linalg.norm(direction)
            moved = None
            for attempt in range(60):
                w = direction
                if attempt:
                    jitter = np.array([rng.gauss(0, 1) for _ in range(3)])
                    w = direction + jitter * 0.05 * attempt
                    w = w / np.linalg.norm(w)
                cands = []
                bad = False
                for mi in range(offset, offset + 3):
                    for sj in range(offset):
                        try:
                            for ev in first_touches(ells[mi], ells[sj], w, tol):
                                if ev.t > 1e-7:
                                    cands.append((ev.t, mi, sj, ev))
                        except Exception:
                            bad = True
                            break
                    if bad:
                        break
                if bad or not cands:
                    continue
                cands.sort(key=lambda c: c[0])
                t0, mi, sj, ev = cands[0]
                if ev.double or (len(cands) > 1 and cands[1][0] - t0 < 1e-6):
                    continue
                moved = (t0 * w, mi, sj)
                break
            if moved is None:
                raise MaxRetriesExceeded(f"block {b} could not reach the chain")
            tvec, mi, sj = moved
            for idx in range(offset, offset + 3):
                ells[idx] = ells[idx].translated(tvec)
            edges.append((min(mi, sj), max(mi, sj)))
    return validate(ells, edges, tol)


def generate(family: str, param: int, tol: Tolerances = DEFAULT_TOL) -> PregluedConfig:
    if family == "max_writhe":
        return gen_max_writhe(param, tol)
    if family == "three_color":
        return gen_three_color(param, tol)
    if family == "low_crossing":
        return gen_low_crossing(param, tol)
    if family == "connect_sum_trefoils":
        return gen_connect_sum_trefoils(param, tol)
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")

"""Offline search for the 3^k tricoloring family coordinates.

Grows configurations one ellipse at a time: wrap a small ring around a
strand (at crossings or at sampled positions), pull it into single contact
with another ellipse, and keep candidates whose smoothed knot multiplies the
tricoloring count by exactly 3.  Results are frozen as text for the family
generator.
"""

import itertools
import json
import math
import random
import sys
import time

import numpy as np

sys.path.insert(0, "src")

from gluedknots.geom3 import Ellipse, circle, first_touches
from gluedknots.config import validate, smooth
from gluedknots.project import project_with_retries, project, ProjectionSpec, directions_for_seed
from gluedknots.invariants import tricolorings
from gluedknots.diagram import simplify

T0 = time.time()
BUDGET = float(sys.argv[1]) if len(sys.argv) > 1 else 480.0
OUT = sys.argv[2] if len(sys.argv) > 2 else "/tmp/threecolor_frozen.json"


def pull_to(ells, k, parent, rng, tries=12):
    ts = np.linspace(0, 2 * math.pi, 160, endpoint=False)
    P = np.array([ells[k].point(t) for t in ts])
    Q = np.array([ells[parent].point(t) for t in ts])
    d2 = ((P[:, None, :] - Q[None, :, :]) ** 2).sum(-1)
    i, j = np.unravel_index(np.argmin(d2), d2.shape)
    base_w = Q[j] - P[i]
    for attempt in range(tries):
        w = base_w + (attempt > 0) * np.array([rng.gauss(0, 1) for _ in range(3)]) * np.linalg.norm(base_w) * 0.04 * attempt
        nw = np.linalg.norm(w)
        if nw < 1e-9:
            continue
        w = w / nw
        cands = []
        bad = False
        for j2 in range(len(ells)):
            if j2 == k:
                continue
            try:
                for ev in first_touches(ells[k], ells[j2], w):
                    if ev.t > 1e-7:
                        cands.append((ev.t, j2, ev))
            except Exception:
                bad = True
                break
        if bad or not cands:
            continue
        cands.sort(key=lambda c: c[0])
        t0, j0, ev0 = cands[0]
        if j0 != parent or ev0.double or (len(cands) > 1 and cands[1][0] - t0 < 1e-6):
            continue
        return ells[k].translated(t0 * w)
    return None


def ring_at(ells, edges, wrap, th_w, aim_point, rho, orient):
    m = len(ells)
    P_w = ells[wrap].point(th_w)
    gapvec = aim_point - P_w
    g = float(np.linalg.norm(gapvec))
    if g < 1e-9:
        return None
    t_w = ells[wrap].velocity(th_w)
    t_w = t_w / np.linalg.norm(t_w)
    F = circle(P_w, t_w, rho, orient)
    w = gapvec / g
    cands = []
    for j2 in range(m):
        try:
            for ev in first_touches(F, ells[j2], w):
                if ev.t > 1e-7:
                    cands.append((ev.t, j2, ev))
        except Exception:
            return None
    if not cands:
        return None
    cands.sort(key=lambda x: x[0])
    t0, j0, ev0 = cands[0]
    if ev0.double or j0 == wrap:
        return None
    F2 = F.translated(t0 * w)
    try:
        return validate(list(ells) + [F2], list(edges) + [(min(j0, m), max(j0, m))])
    except Exception:
        return None


def candidates(cfg, spec, rng):
    ells = list(cfg.ellipses)
    edges = list(cfg.glue_edges)
    try:
        d0 = project(smooth(cfg), spec)
    except Exception:
        return
    # crossing-anchored wraps
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
                    cfg2 = ring_at(ells, edges, wrap, th_w, aim, rho_f * gap, orient)
                    if cfg2 is not None:
                        yield cfg2
    # free wraps at sampled strand positions, aimed at the nearest other strand
    for wrap in range(len(ells)):
        for th_w in np.linspace(0, 2 * math.pi, 10, endpoint=False):
            P = ells[wrap].point(th_w)
            best = None
            for j2 in range(len(ells)):
                if j2 == wrap:
                    continue
                ts = np.linspace(0, 2 * math.pi, 90, endpoint=False)
                Q = np.array([ells[j2].point(t) for t in ts])
                dd = np.linalg.norm(Q - P, axis=1)
                k2 = int(np.argmin(dd))
                if best is None or dd[k2] < best[0]:
                    best = (dd[k2], j2, Q[k2])
            if best is None:
                continue
            dist, j2, aim = best
            for rho_f in (0.7, 1.1, 1.6):
                for orient in (1, -1):
                    cfg2 = ring_at(ells, edges, wrap, th_w, aim, max(0.25, rho_f * dist), orient)
                    if cfg2 is not None:
                        yield cfg2


def tri_of(cfg):
    d, _ = project_with_retries(smooth(cfg), seed=3, tries=8)
    return tricolorings(d), d


def main():
    e1 = Ellipse(np.zeros(3), np.array([2.0, 0, 0]), np.array([0, 1.0, 0]), 1)
    e2 = Ellipse(np.zeros(3), np.array([0, 2.0, 0]), np.array([0, 0, 1.0]), 1)
    e3 = Ellipse(np.zeros(3), np.array([0, 0, 2.0]), np.array([1.0, 0, 0]), 1)
    rng = random.Random(11)
    ells = [e1, e2, e3]
    ells[0] = pull_to(ells, 0, 1, rng)
    ells[2] = pull_to(ells, 2, 1, rng)
    base = validate(ells, [(0, 1), (1, 2)])

    specs = [ProjectionSpec.from_direction(d) for d, _ in zip(directions_for_seed(42), range(4))]
    beam = {1: [base]}
    frozen = {}
    for klevel in range(2, 7):
        target = 3 ** klevel
        pool = []
        seen = set()
        stop = False
        for parent in beam[klevel - 1]:
            for spec in specs:
                for cfg2 in candidates(parent, spec, rng):
                    if time.time() - T0 > BUDGET:
                        stop = True
                        break
                    try:
                        tri, d2 = tri_of(cfg2)
                    except Exception:
                        continue
                    if tri != target:
                        continue
                    key = tuple(sorted(np.round(e.center, 4).tobytes() for e in cfg2.ellipses))
                    if key in seen:
                        continue
                    seen.add(key)
                    pool.append(cfg2)
                    print(f"k={klevel}: hit #{len(pool)} at {time.time()-T0:.0f}s m={cfg2.m}", flush=True)
                    if len(pool) >= 24:
                        stop = True
                        break
                if stop:
                    break
            if stop:
                break
        if not pool:
            print(f"k={klevel}: DEAD END at {time.time()-T0:.0f}s", flush=True)
            break
        beam[klevel] = pool[:12]
        frozen[klevel] = [
            {"ellipses": [e.to_text() for e in cfg.ellipses],
             "edges": [list(e) for e in cfg.glue_edges]}
            for cfg in pool[:6]
        ]
        with open(OUT, "w") as f:
            json.dump(frozen, f, indent=1)
        if time.time() - T0 > BUDGET:
            break
    print("levels saved:", sorted(frozen), flush=True)


if __name__ == "__main__":
    main()

"""3D geometry of oriented ellipses.

An ellipse is given by a center and two independent spanning vectors; the
curve is theta -> center + u*cos(theta) + v*sin(theta) traversed in the
direction of its orientation sign.  Everything downstream (pair
classification, linking numbers, first-touch sweeps, projections) reduces to
trigonometric polynomials of degree <= 2 on a circle parameter, which are
solved exactly-in-intent through a tan(theta/2) quartic with Newton polish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    Coplanar,
    Degenerate,
    NonGenericDirection,
    NotDisjoint,
    OffPlane,
    PreconditionViolated,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerances:
    """Global numeric policy; eps is the base geometric tolerance.

    Accepting predicates re-check against guard*eps: values landing between
    eps and guard*eps are treated as marginal and rejected as Degenerate
    instead of being silently classified.
    """

    eps: float = 1e-9
    guard: float = 10.0
    angle: float = 1e-6  # parameter separation below which roots count as double

    @property
    def band(self) -> float:
        return self.eps * self.guard


DEFAULT_TOL = Tolerances()


def _unit(w: np.ndarray) -> np.ndarray:
    n = float(np.linalg.norm(w))
    if n == 0.0:
        raise ValueError("zero vector")
    return w / n


@dataclass(frozen=True)
class Ellipse:
    """Oriented ellipse: theta -> center + u cos(theta) + v sin(theta).

    u and v need not be orthogonal, only independent.  orientation=-1 means
    the curve is traversed with theta decreasing.
    """

    center: np.ndarray
    u: np.ndarray
    v: np.ndarray
    orientation: int = 1
    _dual: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float).reshape(3)
        u = np.asarray(self.u, dtype=float).reshape(3)
        v = np.asarray(self.v, dtype=float).reshape(3)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        n = np.cross(u, v)
        nn = float(np.linalg.norm(n))
        if nn <= 1e-12 * (np.linalg.norm(u) * np.linalg.norm(v) + 1e-300):
            raise ValueError("u and v are not linearly independent")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        # dual basis rows: a = dual[0]@(p-c), b = dual[1]@(p-c), h = dual[2]@(p-c)
        basis = np.column_stack([u, v, n / nn])
        object.__setattr__(self, "_dual", np.linalg.inv(basis))

    # -- basic frames ---------------------------------------------------

    @property
    def normal(self) -> np.ndarray:
        """Unit normal of the plane, right-handed with respect to (u, v)."""
        return _unit(np.cross(self.u, self.v))

    def scale(self) -> float:
        return max(float(np.linalg.norm(self.u)), float(np.linalg.norm(self.v)))

    def point(self, theta: float) -> np.ndarray:
        return self.center + self.u * math.cos(theta) + self.v * math.sin(theta)

    def velocity(self, theta: float) -> np.ndarray:
        """Oriented tangent: direction of travel when passing point(theta)."""
        t = -self.u * math.sin(theta) + self.v * math.cos(theta)
        return self.orientation * t

    def s_of_theta(self, theta: float) -> float:
        """Traversal parameter (increases along the orientation), in [0, 2pi)."""
        return (self.orientation * theta) % TWO_PI

    def theta_of_s(self, s: float) -> float:
        return (self.orientation * s) % TWO_PI

    def point_at_s(self, s: float) -> np.ndarray:
        return self.point(self.theta_of_s(s))

    def plane_coords(self, p: np.ndarray) -> tuple[float, float, float]:
        """Return (a, b, h): p = center + a u + b v + h n with n the unit normal."""
        q = self._dual @ (np.asarray(p, dtype=float) - self.center)
        return float(q[0]), float(q[1]), float(q[2])

    def param_of_point(self, p: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> float:
        """Parameter of a point assumed to lie on the curve."""
        a, b, h = self.plane_coords(p)
        scale = 1.0 + self.scale()
        if abs(h) > tol.band * scale:
            raise OffPlane(f"point is {h:.3e} away from the ellipse plane")
        r2 = a * a + b * b
        if abs(r2 - 1.0) > tol.band * 10:
            raise ValueError(f"point is not on the curve (a^2+b^2 = {r2})")
        return math.atan2(b, a)

    # -- transforms ------------------------------------------------------

    def translated(self, w: np.ndarray) -> "Ellipse":
        return Ellipse(self.center + np.asarray(w, dtype=float), self.u, self.v, self.orientation)

    def transformed(self, rot: np.ndarray, shift: np.ndarray) -> "Ellipse":
        rot = np.asarray(rot, dtype=float)
        return Ellipse(rot @ self.center + shift, rot @ self.u, rot @ self.v, self.orientation)

    def reversed(self) -> "Ellipse":
        return Ellipse(self.center, self.u, self.v, -self.orientation)

    # -- text form --------------------------------------------------------

    def to_text(self) -> str:
        nums = [*self.center, *self.u, *self.v]
        body = " ".join(repr(float(x)) for x in nums)
        sign = "+1" if self.orientation == 1 else "-1"
        return f"ellipse {body} {sign}"

    @staticmethod
    def from_text(line: str) -> "Ellipse":
        parts = line.split()
        if len(parts) != 11 or parts[0] != "ellipse":
            raise ValueError(f"bad ellipse line: {line!r}")
        vals = [float(x) for x in parts[1:10]]
        orient = int(parts[10])
        return Ellipse(np.array(vals[0:3]), np.array(vals[3:6]), np.array(vals[6:9]), orient)


def circle(center, normal, radius: float, orientation: int = 1) -> Ellipse:
    """Round circle with the given unit-ish normal; u is an arbitrary in-plane axis."""
    n = _unit(np.asarray(normal, dtype=float))
    seed = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = _unit(np.cross(n, seed)) * radius
    v = np.cross(n, u)
    return Ellipse(np.asarray(center, dtype=float), u, v, orientation)


def random_rotation(rng) -> np.ndarray:
    """Haar-ish random rotation from a QR decomposition of a Gaussian matrix."""
    m = np.array([[rng.gauss(0, 1) for _ in range(3)] for _ in range(3)])
    q, r = np.linalg.qr(m)
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


# ---------------------------------------------------------------------------
# Trigonometric quadratic solver
# ---------------------------------------------------------------------------

_PHASES = (0.0, 0.7639320225002102, 1.8540496035324822, 2.9441671845647543)


@dataclass
class TrigRoot:
    theta: float
    double: bool = False


def _trig_eval(coeffs, theta: float) -> float:
    a0, a1, a2, a3, a4, a5 = coeffs
    c, s = math.cos(theta), math.sin(theta)
    return a0 + a1 * c + a2 * s + a3 * c * c + a4 * c * s + a5 * s * s


def _trig_deriv(coeffs, theta: float) -> float:
    _, a1, a2, a3, a4, a5 = coeffs
    c, s = math.cos(theta), math.sin(theta)
    return -a1 * s + a2 * c + 2.0 * (a5 - a3) * s * c + a4 * (c * c - s * s)


def _phase_shift(coeffs, t0: float):
    a0, a1, a2, a3, a4, a5 = coeffs
    c0, s0 = math.cos(t0), math.sin(t0)
    return (
        a0,
        a1 * c0 + a2 * s0,
        -a1 * s0 + a2 * c0,
        a3 * c0 * c0 + a5 * s0 * s0 + a4 * c0 * s0,
        2.0 * (a5 - a3) * c0 * s0 + a4 * (c0 * c0 - s0 * s0),
        a3 * s0 * s0 + a5 * c0 * c0 - a4 * c0 * s0,
    )


def solve_trig_quadratic(coeffs, tol: Tolerances = DEFAULT_TOL) -> list[TrigRoot]:
    """All real roots in [-pi, pi) of
    a0 + a1 cos t + a2 sin t + a3 cos^2 t + a4 cos t sin t + a5 sin^2 t = 0.

    Reduced to a quartic in tan(t/2) (after a phase shift that keeps the
    leading coefficient healthy), solved by the companion-matrix eigenvalues,
    then Newton-polished on the trigonometric form.  Roots closer than
    tol.angle are merged and flagged as double.
    """
    scale = sum(abs(c) for c in coeffs)
    if scale == 0.0:
        return []  # identically zero is a caller bug; treat as no transversal roots
    roots: list[float] = []
    for t0 in _PHASES:
        b0, b1, b2, b3, b4, b5 = _phase_shift(coeffs, t0)
        quartic = (
            b0 - b1 + b3,          # tau^4
            2.0 * b2 - 2.0 * b4,   # tau^3
            2.0 * b0 - 2.0 * b3 + 4.0 * b5,
            2.0 * b2 + 2.0 * b4,
            b0 + b1 + b3,          # tau^0
        )
        lead = abs(quartic[0])
        if lead < 1e-8 * scale:
            continue
        taus = np.roots(quartic)
        for tau in taus:
            if abs(tau.imag) > 1e-6 * (1.0 + abs(tau.real)):
                continue
            th = 2.0 * math.atan(float(tau.real)) + t0
            for _ in range(3):
                d = _trig_deriv(coeffs, th)
                if d == 0.0:
                    break
                th -= _trig_eval(coeffs, th) / d
            if abs(_trig_eval(coeffs, th)) <= 1e-9 * scale:
                roots.append((th + math.pi) % TWO_PI - math.pi)
        break
    else:
        raise Degenerate("trig quadratic defeated every phase shift")

    roots.sort()
    merged: list[TrigRoot] = []
    for th in roots:
        if merged and _angle_dist(th, merged[-1].theta) < tol.angle:
            merged[-1].double = True
        else:
            merged.append(TrigRoot(th))
    if len(merged) > 1 and _angle_dist(merged[0].theta, merged[-1].theta + TWO_PI) < tol.angle:
        merged[0].double = True
        merged.pop()
    return merged


def _angle_dist(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


# ---------------------------------------------------------------------------
# Plane sections and pair classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionPoint:
    point: np.ndarray
    theta: float
    tangential: bool


def plane_section(e: Ellipse, plane_point, plane_normal,
                  tol: Tolerances = DEFAULT_TOL) -> list[SectionPoint]:
    """Real intersections of the ellipse curve with a plane.

    Solves A cos t + B sin t + C = 0.  Raises Coplanar when the whole curve
    lies in the plane; a tangential (double-root) contact is flagged on the
    returned points.
    """
    n = np.asarray(plane_normal, dtype=float)
    nn = float(np.linalg.norm(n))
    if nn == 0.0:
        raise ValueError("zero plane normal")
    n = n / nn
    p0 = np.asarray(plane_point, dtype=float)
    a = float(n @ e.u)
    b = float(n @ e.v)
    c = float(n @ (e.center - p0))
    scale = 1.0 + e.scale() + abs(c)
    if abs(a) < tol.eps * scale and abs(b) < tol.eps * scale:
        if abs(c) < tol.band * scale:
            raise Coplanar("ellipse lies in the plane")
        return []
    r = math.hypot(a, b)
    phi = math.atan2(b, a)
    x = -c / r
    if abs(x) > 1.0 + tol.band:
        return []
    if abs(abs(x) - 1.0) < tol.eps:
        th = phi if x > 0 else phi + math.pi
        th = (th + math.pi) % TWO_PI - math.pi
        return [SectionPoint(e.point(th), th, True)]
    if abs(x) > 1.0:
        return []
    d = math.acos(max(-1.0, min(1.0, x)))
    out = []
    for th in (phi + d, phi - d):
        th = (th + math.pi) % TWO_PI - math.pi
        out.append(SectionPoint(e.point(th), th, False))
    return out


def interior_contains(e: Ellipse, q, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether q lies strictly inside the spanning disk of e (in e's plane)."""
    a, b, h = e.plane_coords(q)
    if abs(h) > tol.band * (1.0 + e.scale()):
        raise OffPlane(f"point is {h:.3e} away from the ellipse plane")
    return a * a + b * b < 1.0 - tol.eps


@dataclass(frozen=True)
class GluePoint:
    point: np.ndarray
    theta1: float
    theta2: float


@dataclass(frozen=True)
class PairClassification:
    """How two ellipse curves interact: shared points and disk piercings."""

    glue_points: tuple[GluePoint, ...]
    pierce_1_by_2: int  # points where curve 2 crosses the open disk of ellipse 1
    pierce_2_by_1: int
    linked: bool


def _coplanar_pair(e1: Ellipse, e2: Ellipse, tol: Tolerances) -> bool:
    n = e1.normal
    scale = 1.0 + e1.scale() + e2.scale() + float(np.linalg.norm(e2.center - e1.center))
    return (
        abs(float(n @ (e2.center - e1.center))) < tol.eps * scale
        and abs(float(n @ e2.u)) < tol.eps * scale
        and abs(float(n @ e2.v)) < tol.eps * scale
    )


def _side_events(host: Ellipse, other: Ellipse, tol: Tolerances):
    """Section points of `other` against the plane of `host`, classified
    against the host disk: returns (glue list [(theta_host, theta_other, pt)],
    pierce count, exterior count)."""
    pts = plane_section(other, host.center, host.normal, tol)
    glue, pierce, exterior = [], 0, 0
    for sp in pts:
        if sp.tangential:
            raise Degenerate("tangential plane contact between ellipse pair")
        a, b, _ = host.plane_coords(sp.point)
        r2 = a * a + b * b
        if abs(r2 - 1.0) < tol.eps * 100:
            glue.append((math.atan2(b, a), sp.theta, sp.point))
        elif abs(r2 - 1.0) < tol.band * 100:
            raise Degenerate(f"marginal curve contact (a^2+b^2-1 = {r2 - 1.0:.3e})")
        elif r2 < 1.0:
            pierce += 1
        else:
            exterior += 1
    return glue, pierce, exterior


def classify_pair(e1: Ellipse, e2: Ellipse, tol: Tolerances = DEFAULT_TOL) -> PairClassification:
    """Classify a non-coplanar ellipse pair.

    Computes both plane sections; each section point is a glue point (on the
    other curve), an interior piercing, or exterior.  `linked` is True exactly
    for disjoint pairs whose pierce pattern is {1, 1}.
    """
    if _coplanar_pair(e1, e2, tol) or _coplanar_pair(e2, e1, tol):
        raise Coplanar("ellipse pair is coplanar")
    glue_a, pierce_1_by_2, _ = _side_events(e1, e2, tol)
    glue_b, pierce_2_by_1, _ = _side_events(e2, e1, tol)
    if len(glue_a) != len(glue_b):
        raise Degenerate("asymmetric glue detection between ellipse pair")
    glue_pts = []
    used = [False] * len(glue_b)
    for th1, th2, pt in glue_a:
        hit = None
        for k, (oth2, oth1, opt) in enumerate(glue_b):
            if not used[k] and float(np.linalg.norm(pt - opt)) < tol.band * 100 * (1.0 + e1.scale()):
                hit = k
                break
        if hit is None:
            raise Degenerate("glue points seen from the two sides do not match")
        used[hit] = True
        glue_pts.append(GluePoint(pt, th1, th2))
    linked = not glue_pts and (pierce_1_by_2 % 2 == 1) and (pierce_2_by_1 % 2 == 1)
    return PairClassification(tuple(glue_pts), pierce_1_by_2, pierce_2_by_1, linked)


def interiors_disjoint(e1: Ellipse, e2: Ellipse, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether the open spanning disks are disjoint in space.

    Preconditions (checked): curves disjoint, neither curve pierces the
    other's disk.  Any common point of the two disks would lie on the line
    where the two planes meet, so it suffices to intersect that line with
    both disks and compare the open intervals.
    """
    cls = classify_pair(e1, e2, tol)
    if cls.glue_points or cls.pierce_1_by_2 or cls.pierce_2_by_1:
        raise PreconditionViolated("pair is not disjoint with pierce-free disks")
    n1, n2 = e1.normal, e2.normal
    d = np.cross(n1, n2)
    nd = float(np.linalg.norm(d))
    if nd < tol.eps:
        return True  # parallel planes: disks cannot meet (coplanar was excluded)
    d = d / nd
    # a point on the intersection line
    m = np.array([n1, n2, d])
    rhs = np.array([float(n1 @ e1.center), float(n2 @ e2.center), 0.0])
    p0 = np.linalg.solve(m, rhs)

    def disk_interval(e: Ellipse):
        # line p0 + t d meets disk: |coords|^2 < 1 with coords affine in t
        a0, b0, _ = e.plane_coords(p0)
        da = float(e._dual[0] @ d)
        db = float(e._dual[1] @ d)
        qa = da * da + db * db
        qb = 2.0 * (a0 * da + b0 * db)
        qc = a0 * a0 + b0 * b0 - 1.0
        if qa < tol.eps * tol.eps:
            return None
        disc = qb * qb - 4.0 * qa * qc
        if disc <= 0.0:
            return None
        rt = math.sqrt(disc)
        return ((-qb - rt) / (2 * qa), (-qb + rt) / (2 * qa))

    i1 = disk_interval(e1)
    i2 = disk_interval(e2)
    if i1 is None or i2 is None:
        return True
    lo = max(i1[0], i2[0])
    hi = min(i1[1], i2[1])
    return not (hi - lo > tol.eps)


# ---------------------------------------------------------------------------
# Projected crossings and linking numbers
# ---------------------------------------------------------------------------

def frame_for_direction(d) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right-handed orthonormal (ex, ey, d) with d the viewing direction."""
    d = _unit(np.asarray(d, dtype=float))
    seed = np.array([1.0, 0.0, 0.0]) if abs(d[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    ex = _unit(np.cross(seed, d))
    ey = np.cross(d, ex)
    return ex, ey, d


@dataclass(frozen=True)
class CrossingEvent:
    """One common point of the projected images of two ellipse curves."""

    theta1: float
    theta2: float
    xy: np.ndarray        # 2D image point
    depth1: float         # along the viewing direction; larger = nearer the viewer
    depth2: float
    tangent1: np.ndarray  # oriented 2D tangents of the two strands
    tangent2: np.ndarray


def _project2(e: Ellipse, ex, ey):
    c = np.array([float(ex @ e.center), float(ey @ e.center)])
    u = np.array([float(ex @ e.u), float(ey @ e.u)])
    v = np.array([float(ex @ e.v), float(ey @ e.v)])
    return c, u, v


def projected_area_ok(e: Ellipse, ex, ey, tol: Tolerances = DEFAULT_TOL) -> bool:
    """False when the ellipse is seen edge-on (projected image degenerates)."""
    _, u, v = _project2(e, ex, ey)
    det = abs(u[0] * v[1] - u[1] * v[0])
    return det > 1e-4 * e.scale() ** 2


def pair_crossings(e1: Ellipse, e2: Ellipse, ex, ey, d,
                   tol: Tolerances = DEFAULT_TOL) -> list[CrossingEvent]:
    """All common image points of the two projected curves.

    The second curve's parametrization is substituted into the implicit
    quadratic of the first projected conic; double roots raise Degenerate
    (the caller should re-randomize the projection).
    """
    c1, u1, v1 = _project2(e1, ex, ey)
    c2, u2, v2 = _project2(e2, ex, ey)
    m = np.array([[u1[0], v1[0]], [u1[1], v1[1]]])
    nmat = np.linalg.inv(m)
    w0 = nmat @ (c2 - c1)
    w1 = nmat @ u2
    w2 = nmat @ v2
    coeffs = (
        float(w0 @ w0) - 1.0,
        2.0 * float(w0 @ w1),
        2.0 * float(w0 @ w2),
        float(w1 @ w1),
        2.0 * float(w1 @ w2),
        float(w2 @ w2),
    )
    out = []
    for root in solve_trig_quadratic(coeffs, tol):
        if root.double:
            raise Degenerate("projected conics meet tangentially")
        th2 = root.theta
        ab = w0 + w1 * math.cos(th2) + w2 * math.sin(th2)
        th1 = math.atan2(float(ab[1]), float(ab[0]))
        p1 = e1.point(th1)
        p2 = e2.point(th2)
        xy = c2 + u2 * math.cos(th2) + v2 * math.sin(th2)
        t1 = e1.velocity(th1)
        t2 = e2.velocity(th2)
        out.append(
            CrossingEvent(
                theta1=th1,
                theta2=th2,
                xy=xy,
                depth1=float(np.asarray(d) @ p1),
                depth2=float(np.asarray(d) @ p2),
                tangent1=np.array([float(ex @ t1), float(ey @ t1)]),
                tangent2=np.array([float(ex @ t2), float(ey @ t2)]),
            )
        )
    return out


def crossing_sign(t_over, t_under) -> int:
    """Sign of a crossing from the oriented 2D tangents (right-handed frame)."""
    det = t_over[0] * t_under[1] - t_over[1] * t_under[0]
    if det == 0.0:
        raise Degenerate("parallel tangents at a crossing")
    return 1 if det > 0 else -1


_LINK_DIRECTIONS = (
    np.array([0.21321321, 0.5776214, 0.78796383]),
    np.array([-0.654321, 0.23456789, 0.71917025]),
    np.array([0.912, -0.3517, 0.2083]),
    np.array([0.1061, 0.8861, -0.4512]),
)


def linking_number(e1: Ellipse, e2: Ellipse, tol: Tolerances = DEFAULT_TOL) -> int:
    """Half the signed crossing count between the two curves in a generic
    projection; recomputed under a second direction as a consistency check."""
    cls = classify_pair(e1, e2, tol)
    if cls.glue_points:
        raise NotDisjoint("curves intersect; linking number undefined")
    values = []
    for d in _LINK_DIRECTIONS:
        try:
            ex, ey, dn = frame_for_direction(d)
            if not (projected_area_ok(e1, ex, ey, tol) and projected_area_ok(e2, ex, ey, tol)):
                continue
            total = 0
            for ev in pair_crossings(e1, e2, ex, ey, dn, tol):
                gap = ev.depth1 - ev.depth2
                if abs(gap) < tol.band * (1.0 + e1.scale() + e2.scale()):
                    raise Degenerate("depth tie at a crossing")
                if gap > 0:
                    total += crossing_sign(ev.tangent1, ev.tangent2)
                else:
                    total += crossing_sign(ev.tangent2, ev.tangent1)
            if total % 2:
                raise Degenerate("odd signed crossing sum between disjoint curves")
            values.append(total // 2)
            if len(values) == 2:
                break
        except Degenerate:
            continue
    if len(values) < 2:
        raise Degenerate("no generic projection direction found for linking number")
    if values[0] != values[1]:
        raise Degenerate("linking number disagreed between projections")
    return values[0]


# ---------------------------------------------------------------------------
# First touch of a translated ellipse family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TouchEvent:
    t: float
    theta_moving: float
    theta_static: float
    point: np.ndarray  # contact point in space (after translating by t*w)
    double: bool


def first_touches(moving: Ellipse, static: Ellipse, w,
                  tol: Tolerances = DEFAULT_TOL) -> list[TouchEvent]:
    """Contact parameters t where `moving` translated by t*w touches `static`.

    A contact point x satisfies x on static and x - t*w on moving; t enters
    linearly through the plane equation of the moving ellipse, leaving one
    trigonometric quadratic in the static parameter.
    """
    w = np.asarray(w, dtype=float)
    n = moving.normal
    nw = float(n @ w)
    if abs(nw) < 1e-6:
        raise NonGenericDirection("translation direction lies in the moving ellipse's plane")
    k0 = float(n @ (static.center - moving.center))
    kc = float(n @ static.u)
    ks = float(n @ static.v)
    q0 = static.center - moving.center - (k0 / nw) * w
    qc = static.u - (kc / nw) * w
    qs = static.v - (ks / nw) * w
    d0, d1 = moving._dual[0], moving._dual[1]
    a0, ac, as_ = float(d0 @ q0), float(d0 @ qc), float(d0 @ qs)
    b0, bc, bs = float(d1 @ q0), float(d1 @ qc), float(d1 @ qs)
    coeffs = (
        a0 * a0 + b0 * b0 - 1.0,
        2.0 * (a0 * ac + b0 * bc),
        2.0 * (a0 * as_ + b0 * bs),
        ac * ac + bc * bc,
        2.0 * (ac * as_ + bc * bs),
        as_ * as_ + bs * bs,
    )
    events = []
    for root in solve_trig_quadratic(coeffs, tol):
        th_s = root.theta
        x = static.point(th_s)
        t = (float(n @ (x - moving.center))) / nw
        pm = x - t * w
        a, b, _ = moving.plane_coords(pm)
        th_m = math.atan2(b, a)
        events.append(TouchEvent(t, th_m, th_s, x, root.double))
    events.sort(key=lambda ev: ev.t)
    return events

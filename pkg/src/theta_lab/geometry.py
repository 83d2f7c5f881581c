"""Planar geometry for Theta_k cones and the Theta_5 canonical configuration.

Angles follow one convention throughout: measured counter-clockwise from the
negative y-axis, so direction ``phi`` is the unit vector
``(sin(phi), -cos(phi))``.  Cone ``C_i`` of a vertex is the half-open sector
``(i*theta, (i+1)*theta]`` with ``theta = 2*pi/k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import DegenerateInputError, PreconditionError

TAU = 2.0 * math.pi
PI_5 = math.pi / 5.0
PI_10 = math.pi / 10.0

# relative tolerance for membership / incidence tests
REL_TOL = 1e-9
# ray snapping, in units of one cone width
RAY_SNAP = 1e-9


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, s: float) -> "Point":
        return Point(self.x * s, self.y * s)


def as_point(p: Sequence[float]) -> Point:
    """Coerce a pair to a :class:`Point`, rejecting NaN and infinities."""
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DegenerateInputError(f"non-finite coordinate in {p!r}")
    return Point(x, y)


def direction(phi: float) -> Point:
    return Point(math.sin(phi), -math.cos(phi))


def angle_from_down(v: Sequence[float], p: Sequence[float]) -> float:
    """Angle of the vector v->p, CCW from the negative y-axis, in [0, 2*pi)."""
    dx, dy = p[0] - v[0], p[1] - v[1]
    if dx == 0.0 and dy == 0.0:
        raise DegenerateInputError("angle of a zero vector")
    phi = math.atan2(dx, -dy)
    if phi < 0.0:
        phi += TAU
    return phi


def dist(p: Sequence[float], q: Sequence[float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def orient(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> float:
    """Twice the signed area of (a, b, c); positive when c is left of a->b."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def lerp(p: Sequence[float], q: Sequence[float], t: float) -> Point:
    return Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def line_intersection(p1, p2, q1, q2) -> Point:
    """Intersection of the lines p1p2 and q1q2."""
    d1x, d1y = p2[0] - p1[0], p2[1] - p1[1]
    d2x, d2y = q2[0] - q1[0], q2[1] - q1[1]
    den = d1x * d2y - d1y * d2x
    if den == 0.0:
        raise DegenerateInputError("parallel lines")
    t = ((q1[0] - p1[0]) * d2y - (q1[1] - p1[1]) * d2x) / den
    return Point(p1[0] + t * d1x, p1[1] + t * d1y)


def segments_cross(p1, p2, q1, q2) -> bool:
    """True if the closed segments p1p2 and q1q2 intersect."""
    scale = max(dist(p1, p2), dist(q1, q2), 1e-300)
    eps = REL_TOL * scale * scale
    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    return o1 * o2 <= eps * eps and o3 * o4 <= eps * eps and not (
        (o1 > eps and o2 > eps) or (o1 < -eps and o2 < -eps)
        or (o3 > eps and o4 > eps) or (o3 < -eps and o4 < -eps)
    )


def point_in_polygon(p, poly: Sequence[Sequence[float]], tol: float = REL_TOL) -> bool:
    """Closed membership test for a convex polygon (either orientation).

    ``tol`` is relative to the polygon's diameter.
    """
    n = len(poly)
    scale = max(dist(poly[i], poly[j]) for i in range(n) for j in range(i + 1, n))
    eps = tol * scale * scale
    sign = 0.0
    for i in range(n):
        o = orient(poly[i], poly[(i + 1) % n], p)
        if abs(o) <= eps:
            continue
        if sign == 0.0:
            sign = o
        elif (o > 0) != (sign > 0):
            return False
    return True


def point_in_triangle(p, tri, tol: float = REL_TOL) -> bool:
    return point_in_polygon(p, tri, tol)


def angle_at(vertex, p, q) -> float:
    """Unsigned angle p-vertex-q in [0, pi]."""
    ux, uy = p[0] - vertex[0], p[1] - vertex[1]
    vx, vy = q[0] - vertex[0], q[1] - vertex[1]
    return abs(math.atan2(ux * vy - uy * vx, ux * vx + uy * vy))


# --------------------------------------------------------------------------
# cones


def cone_index(v: Sequence[float], p: Sequence[float], k: int) -> int:
    """Index of the cone of ``v`` containing ``p``.

    A point on ray ``R_j`` belongs to cone ``j - 1`` (the ray is the
    counter-clockwise boundary of that cone).  Directions within
    ``RAY_SNAP`` cone-widths of a ray are treated as lying on it.
    """
    if k < 3:
        raise PreconditionError(f"need k >= 3, got {k}")
    if p[0] == v[0] and p[1] == v[1]:
        raise DegenerateInputError("cone_index of a point relative to itself")
    t = angle_from_down(v, p) / (TAU / k)
    j = round(t)
    if abs(t - j) <= RAY_SNAP:
        return (j - 1) % k
    return int(math.floor(t)) % k


def bisector(i: int, k: int) -> Point:
    return direction((i + 0.5) * TAU / k)


def cone_distance(v: Sequence[float], p: Sequence[float], i: int, k: int = 5) -> float:
    """Length of the projection of v->p onto the bisector of cone ``i``."""
    if cone_index(v, p, k) != i:
        raise PreconditionError(f"point {tuple(p)} is not in cone {i} of {tuple(v)}")
    u = bisector(i, k)
    return (p[0] - v[0]) * u.x + (p[1] - v[1]) * u.y


def max_dist_in_triangle(p: Sequence[float], tri: Sequence[Sequence[float]]) -> float:
    """Largest distance from ``p`` to a point of the closed triangle ``tri``.

    Distance to ``p`` is convex, so the maximum sits at a vertex.
    """
    q, r, s = tri
    scale = max(dist(q, r), dist(r, s), dist(s, q))
    if scale == 0.0 or abs(orient(q, r, s)) <= REL_TOL * scale * scale:
        raise DegenerateInputError("degenerate triangle")
    return max(dist(p, q), dist(p, r), dist(p, s))


# --------------------------------------------------------------------------
# Theta_5 canonical configuration

# directions (from b) of l', l'_m, m', r'_m, r' on the base of T_ba
_TBA_ANGLES = {
    "ell_p": TAU,
    "ell_m_p": TAU - PI_10,
    "m_p": TAU - PI_5,
    "r_m_p": TAU - 3 * PI_10,
    "r_p": TAU - 2 * PI_5,
}


@dataclass(frozen=True)
class CanonicalFrame:
    """Named construction points of a normalized pair (a, b).

    Requires b in C_2 of a and a in C_4 of b.  ``alpha`` is the clockwise
    angle of ab from the upward vertical at a.
    """

    a: Point
    b: Point
    alpha: float
    ell: Point
    r: Point
    m: Point
    ell_m: Point
    r_m: Point
    ell_p: Point
    r_p: Point
    m_p: Point
    ell_m_p: Point
    r_m_p: Point

    @property
    def t_ab(self) -> tuple[Point, Point, Point]:
        return (self.a, self.r, self.ell)

    @property
    def t_ba(self) -> tuple[Point, Point, Point]:
        return (self.b, self.ell_p, self.r_p)

    @property
    def ab(self) -> float:
        return dist(self.a, self.b)


def canonical_frame(a: Sequence[float], b: Sequence[float]) -> CanonicalFrame:
    """Build T_ab, T_ba and their named points for a normalized pair."""
    a, b = as_point(a), as_point(b)
    if a == b:
        raise DegenerateInputError("canonical_frame of coincident points")
    dx, dy = b.x - a.x, b.y - a.y
    alpha = math.atan2(dx, dy)
    # a small slack so pairs on the boundary of the WLOG region are accepted
    if not (-REL_TOL <= alpha < PI_5 + REL_TOL) or dy <= 0.0:
        raise PreconditionError(
            f"pair not normalized: b must lie in C_2 of a with a in C_4 of b (alpha={alpha})"
        )
    h = dy
    t5, t10 = math.tan(PI_5), math.tan(PI_10)
    ell = Point(a.x - h * t5, a.y + h)
    r = Point(a.x + h * t5, a.y + h)
    m = Point(a.x, a.y + h)
    ell_m = Point(a.x - h * t10, a.y + h)
    r_m = Point(a.x + h * t10, a.y + h)

    u4 = bisector(4, 5)
    hp = (a.x - b.x) * u4.x + (a.y - b.y) * u4.y
    base = {}
    for name, phi in _TBA_ANGLES.items():
        s = hp / math.cos(phi - (TAU - PI_5))
        d = direction(phi)
        base[name] = Point(b.x + s * d.x, b.y + s * d.y)
    return CanonicalFrame(a=a, b=b, alpha=alpha, ell=ell, r=r, m=m, ell_m=ell_m, r_m=r_m, **base)


@dataclass(frozen=True)
class Isometry:
    """Rotation about ``pivot`` by ``steps`` multiples of 2*pi/5, then an
    optional mirror in the vertical line through ``pivot``.

    ``swapped`` records that the canonical ``a`` is the image of the
    original second point, so paths computed in canonical space must be
    reversed when mapped back.
    """

    pivot: Point
    steps: int = 0
    reflect: bool = False
    swapped: bool = False

    def apply(self, p: Sequence[float]) -> Point:
        th = self.steps * 2 * PI_5
        c, s = math.cos(th), math.sin(th)
        x, y = p[0] - self.pivot.x, p[1] - self.pivot.y
        x, y = c * x - s * y, s * x + c * y
        if self.reflect:
            x = -x
        return Point(self.pivot.x + x, self.pivot.y + y)

    def invert(self, p: Sequence[float]) -> Point:
        x, y = p[0] - self.pivot.x, p[1] - self.pivot.y
        if self.reflect:
            x = -x
        th = -self.steps * 2 * PI_5
        c, s = math.cos(th), math.sin(th)
        x, y = c * x - s * y, s * x + c * y
        return Point(self.pivot.x + x, self.pivot.y + y)

    @property
    def is_identity(self) -> bool:
        return self.steps % 5 == 0 and not self.reflect and not self.swapped


def _orient_pair(a: Point, b: Point) -> tuple[int, bool, float]:
    # rotation steps and mirror flag that put b in C_2 of a and a in C_4 of b
    i = cone_index(a, b, 5)
    steps = (2 - i) % 5
    phi = angle_from_down(a, b) + steps * 2 * PI_5
    phi = math.fmod(phi, TAU)
    alpha = math.pi - phi
    reflect = alpha < 0.0
    return steps, reflect, abs(alpha)


def normalize_pair(a: Sequence[float], b: Sequence[float]) -> tuple[Isometry, CanonicalFrame]:
    """Map the pair into canonical position with 0 <= alpha <= pi/10.

    If the pair only fits the canonical position with its roles exchanged
    (alpha' <= pi/10 instead of alpha), the returned isometry has
    ``swapped=True`` and the frame's ``a`` is the image of ``b``.
    """
    a, b = as_point(a), as_point(b)
    if a == b:
        raise DegenerateInputError("normalize_pair of coincident points")
    steps, reflect, alpha = _orient_pair(a, b)
    swapped = False
    if alpha > PI_10 * (1 + REL_TOL):
        a, b = b, a
        swapped = True
        steps, reflect, alpha = _orient_pair(a, b)
    iso = Isometry(pivot=a, steps=steps, reflect=reflect, swapped=swapped)
    # pivot is a, so its image is exactly a
    frame = canonical_frame(a, iso.apply(b))
    return iso, frame


# --------------------------------------------------------------------------
# pentagon P_ab and the sliding transformation


@dataclass(frozen=True)
class Pentagon:
    p0: Point
    p1: Point
    p2: Point
    p3: Point
    p4: Point

    @property
    def vertices(self) -> tuple[Point, Point, Point, Point, Point]:
        return (self.p0, self.p1, self.p2, self.p3, self.p4)

    @property
    def side(self) -> float:
        return dist(self.p2, self.p3)

    def contains(self, p: Sequence[float], tol: float = REL_TOL) -> bool:
        return point_in_polygon(p, self.vertices, tol)


def _rotate(v: Sequence[float], phi: float) -> Point:
    c, s = math.cos(phi), math.sin(phi)
    return Point(c * v[0] - s * v[1], s * v[0] + c * v[1])


def pentagon_pab(frame: CanonicalFrame) -> Pentagon:
    """The regular pentagon with p2 = r', p3 = r'_m and p4 on b's side."""
    p2, p3 = frame.r_p, frame.r_m_p
    e = p3 - p2
    side_of_b = orient(p2, p3, frame.b)
    for sgn in (1.0, -1.0):
        p4 = p3 + _rotate(e, sgn * 2 * PI_5)
        if orient(p2, p3, p4) * side_of_b > 0:
            break
    p0 = p4 + _rotate(e, sgn * 4 * PI_5)
    p1 = p0 + _rotate(e, sgn * 6 * PI_5)
    return Pentagon(p0, p1, p2, p3, p4)


def apply_transform1(frame: CanonicalFrame) -> CanonicalFrame:
    """Slide a along the base of T_ba to l'_m, which makes alpha = pi/10.

    b and T_ba (hence P_ab) are unchanged.
    """
    if abs(frame.alpha - PI_10) <= REL_TOL:
        return frame
    return canonical_frame(frame.ell_m_p, frame.b)


def frame_at(alpha: float, ab: float = 1.0) -> CanonicalFrame:
    """Canonical frame with a at the origin, |ab| = ``ab`` and the given alpha."""
    return canonical_frame((0.0, 0.0), (ab * math.sin(alpha), ab * math.cos(alpha)))

"""Four great circles on the unit sphere.

Angles are measured in units of pi throughout.  The circles are indexed
0..3 internally (they carry the sides of a quadrilateral in order) and
exposed as 1..4 wherever a human reads them.

The quadrilateral face ``F`` of a configuration is the face whose sides,
read counterclockwise from outside the sphere, lie on C1, C2, C3, C4.
Its angles are ``a`` (C1-C2), ``b`` (C2-C3), ``c`` (C3-C4), ``d`` (C4-C1);
``e`` is the C1-C3 angle of the triangle sharing the C2 side of F and
``z`` the C2-C4 angle of the triangle sharing its C1 side.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import (
    SphquadError,
    DegenerateConfig,
    DirectionBlocked,
    InfeasibleAngles,
    InfeasibleParameter,
    ParallelCircles,
    QuadrupleBoundary,
)

NEWTON_TOL = 1e-11
FACE_TOL = 1e-8
TRIPLE_TOL = 1e-9
NORM_TOL = 1e-12

DIRECTIONS = ("top", "bottom", "left", "right")

# Sign keys of F and of the four triangles sharing a side with it, with the
# normals oriented so that F is the all-positive face.
F_KEY = (1, 1, 1, 1)
ADJACENT_KEYS = {
    "bottom": (1, -1, 1, 1),
    "top": (1, 1, 1, -1),
    "left": (-1, 1, 1, 1),
    "right": (1, 1, -1, 1),
}
# circles through the vertex of the contracted triangle
DIRECTION_TRIPLES = {
    "bottom": (0, 1, 2),
    "top": (2, 3, 0),
    "left": (3, 0, 1),
    "right": (1, 2, 3),
}


@dataclass(frozen=True)
class GreatCircle:
    normal: tuple

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        if n.shape != (3,):
            raise ValueError("normal must be a 3-vector")
        if abs(np.linalg.norm(n) - 1.0) > NORM_TOL:
            raise ValueError(f"normal {self.normal} is not a unit vector")
        object.__setattr__(self, "normal", tuple(float(x) for x in n))

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float)
        return cls(tuple(v / np.linalg.norm(v)))

    @property
    def vector(self):
        return np.array(self.normal)


@dataclass(frozen=True)
class FaceAngles:
    a: float
    b: float
    c: float
    d: float
    e: float
    z: float

    def abcd(self):
        return (self.a, self.b, self.c, self.d)

    def as_dict(self):
        return {k: getattr(self, k) for k in "abcdez"}


@dataclass(frozen=True)
class FourCircleConfig:
    circles: tuple

    def __post_init__(self):
        circles = tuple(c if isinstance(c, GreatCircle) else GreatCircle.from_vector(c) for c in self.circles)
        if len(circles) != 4:
            raise ValueError("a configuration has exactly four circles")
        object.__setattr__(self, "circles", circles)
        n = self.normals
        for i, j in itertools.combinations(range(4), 2):
            if abs(abs(n[i] @ n[j]) - 1.0) < NORM_TOL:
                raise ParallelCircles(f"circles C{i + 1} and C{j + 1} coincide")

    @classmethod
    def from_normals(cls, normals):
        return cls(tuple(GreatCircle.from_vector(v) for v in normals))

    @property
    def normals(self):
        return np.array([c.normal for c in self.circles])

    @property
    def generic(self):
        return not detect_triple(self)

    def to_json(self):
        return json.dumps({"normals": [list(c.normal) for c in self.circles]})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        normals = data["normals"]
        if len(normals) != 4 or any(len(v) != 3 for v in normals):
            raise ValueError("expected {'normals': [[x, y, z] x 4]}")
        return cls.from_normals(normals)

    def rotated(self, rot):
        rot = np.asarray(rot, dtype=float)
        return FourCircleConfig.from_normals(self.normals @ rot.T)

    def flipped(self, signs):
        return FourCircleConfig.from_normals(self.normals * np.asarray(signs, dtype=float)[:, None])


def _acos(x):
    return math.acos(max(-1.0, min(1.0, x)))


def angle_between(c1, c2, signs=None):
    """Angle between two great circles in units of pi.

    Without ``signs`` this is the acute (or right) angle in (0, 1/2].  With
    ``signs = (s1, s2)`` it is the interior angle of the sector
    ``{s1 n1.x > 0, s2 n2.x > 0}``, which lies in (0, 1).
    """
    n1 = c1.vector if isinstance(c1, GreatCircle) else np.asarray(c1, dtype=float)
    n2 = c2.vector if isinstance(c2, GreatCircle) else np.asarray(c2, dtype=float)
    dot = float(n1 @ n2)
    if abs(dot) >= 1.0 - NORM_TOL:
        raise ParallelCircles("circles are parallel")
    if signs is None:
        return _acos(abs(dot)) / math.pi
    return 1.0 - _acos(signs[0] * signs[1] * dot) / math.pi


def detect_triple(config, tol=TRIPLE_TOL):
    """Triples (1-based) of circles through a common pair of antipodal points."""
    n = config.normals
    return [
        tuple(i + 1 for i in trip)
        for trip in itertools.combinations(range(4), 3)
        if abs(np.linalg.det(n[list(trip)])) < tol
    ]


class Partition:
    """Cell structure cut on the sphere by four generic great circles.

    Vertices are the twelve pairwise intersection points; faces are keyed by
    their sign vectors (side of each circle).  Face boundaries are listed
    counterclockwise as seen from outside the sphere.
    """

    def __init__(self, normals):
        n = np.asarray(normals, dtype=float)
        self.normals = n / np.linalg.norm(n, axis=1)[:, None]
        if any(abs(np.linalg.det(self.normals[list(t)])) < TRIPLE_TOL for t in itertools.combinations(range(4), 3)):
            raise DegenerateConfig("three circles share a point")
        self.vertex_circles = []
        self.points = []
        self.vertex_signs = []
        for i, j in itertools.combinations(range(4), 2):
            p = _cross(self.normals[i], self.normals[j])
            p /= np.linalg.norm(p)
            for q in (p, -p):
                self.vertex_circles.append((i, j))
                self.points.append(q)
                self.vertex_signs.append(
                    tuple(0 if k in (i, j) else (1 if self.normals[k] @ q > 0 else -1) for k in range(4))
                )
        members = {}
        for v, (i, j) in enumerate(self.vertex_circles):
            for si, sj in itertools.product((1, -1), repeat=2):
                key = list(self.vertex_signs[v])
                key[i], key[j] = si, sj
                members.setdefault(tuple(key), []).append(v)
        self.faces = []
        self.face_verts = []
        for key in sorted(members, reverse=True):
            vs = members[key]
            centre = sum(self.points[v] for v in vs)
            centre /= np.linalg.norm(centre)
            e1 = self.points[vs[0]] - centre * (centre @ self.points[vs[0]])
            e1 /= np.linalg.norm(e1)
            e2 = _cross(centre, e1)
            vs = sorted(vs, key=lambda v: math.atan2(self.points[v] @ e2, self.points[v] @ e1))
            self.faces.append(key)
            self.face_verts.append(tuple(vs))
        if len(self.faces) != 14:
            raise DegenerateConfig("partition does not have 14 faces")
        self.face_index = {key: f for f, key in enumerate(self.faces)}
        self.dart_index = {}
        self.side_circle = []
        for f, vs in enumerate(self.face_verts):
            circ = []
            for i, u in enumerate(vs):
                v = vs[(i + 1) % len(vs)]
                self.dart_index[(u, v)] = (f, i)
                circ.append(self.common_circle(u, v))
            self.side_circle.append(tuple(circ))
        self.f_face = self._find_quad((0, 1, 2, 3))
        self.f_antipode = self.face_index[tuple(-s for s in self.faces[self.f_face])]

    def common_circle(self, u, v):
        c = set(self.vertex_circles[u]) & set(self.vertex_circles[v])
        if len(c) != 1:
            raise ValueError("vertices do not share exactly one circle")
        return c.pop()

    def _find_quad(self, order):
        for f, circ in enumerate(self.side_circle):
            if len(circ) == 4 and any(circ[r:] + circ[:r] == order for r in range(4)):
                return f
        raise DegenerateConfig(f"no quadrilateral face with side order {order}")

    def size(self, f):
        return len(self.face_verts[f])

    def across(self, f, i):
        """The face side glued to side ``i`` of face ``f``."""
        vs = self.face_verts[f]
        return self.dart_index[(vs[(i + 1) % len(vs)], vs[i])]

    def face_sign(self, f, circle):
        return self.faces[f][circle]

    def vertex_sign(self, v, circle):
        return self.vertex_signs[v][circle]

    def faces_where(self, **conds):
        """Faces with prescribed signs, e.g. ``faces_where(c0=1, c2=-1)``."""
        out = []
        for f, key in enumerate(self.faces):
            if all(key[int(k[1:])] == s for k, s in conds.items()):
                out.append(f)
        return out

    def antipode_vertex(self, v):
        return v ^ 1

    def f_class(self, f, i, j):
        """Whether the sector of face ``f`` between circles ``i``, ``j`` is congruent to F's."""
        key, ref = self.faces[f], self.faces[self.f_face]
        return key[i] * key[j] == ref[i] * ref[j]

    def isomorphism(self, perm, reverse):
        """Cell isomorphism sending circle ``c`` to ``perm[c]``.

        ``reverse`` selects an orientation-reversing map.  Returns the
        vertex map and face map as lists.
        """
        for eps in itertools.product((1, -1), repeat=4):
            fmap = []
            for key in self.faces:
                new = [0] * 4
                for c in range(4):
                    new[perm[c]] = eps[c] * key[c]
                fmap.append(self.face_index.get(tuple(new)))
            if None in fmap:
                continue
            vmap = []
            for v in range(12):
                i, j = self.vertex_circles[v]
                new = [0] * 4
                for c in range(4):
                    new[perm[c]] = eps[c] * self.vertex_signs[v][c]
                pair = tuple(sorted((perm[i], perm[j])))
                vmap.append(next(w for w in range(12) if self.vertex_circles[w] == pair and self.vertex_signs[w] == tuple(new)))
            ok = True
            for f, vs in enumerate(self.face_verts):
                img = [vmap[v] for v in vs]
                if reverse:
                    img = img[::-1]
                target = self.face_verts[fmap[f]]
                k = target.index(img[0])
                if list(target[k:] + target[:k]) != img:
                    ok = False
                    break
            if ok:
                return vmap, fmap
        raise ValueError("no isomorphism for this relabelling")


def _unit(v):
    return v / np.linalg.norm(v)


def _cross(u, v):
    # np.cross carries heavy overhead for single 3-vectors
    return np.array([u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]])


def _oriented_normals(config):
    """Normals flipped so that the face with ccw order C1..C4 is all-positive."""
    part = Partition(config.normals)
    key = part.faces[part.f_face]
    return config.normals * np.array(key, dtype=float)[:, None]


def face_angles(config, orientation="ccw"):
    """Angles of the quadrilateral face with sides on C1..C4.

    Of the two such faces (antipodal, opposite cyclic orders) ``ccw`` picks
    the one reading C1, C2, C3, C4 counterclockwise and ``cw`` the other;
    both have the same angles, so the choice only affects which face the
    caller then shades or measures.
    """
    if orientation not in ("ccw", "cw"):
        raise ValueError("orientation must be 'ccw' or 'cw'")
    n = _oriented_normals(config)
    if orientation == "cw":
        n = -n

    def ang(i, j):
        return 1.0 - _acos(float(n[i] @ n[j])) / math.pi

    return FaceAngles(ang(0, 1), ang(1, 2), ang(2, 3), ang(3, 0), ang(0, 2), ang(1, 3))


def quad_faces(config):
    """Sign keys (relative to the stored normals) of the two quadrilateral faces with sides on C1..C4."""
    part = Partition(config.normals)
    return {"ccw": part.faces[part.f_face], "cw": part.faces[part.f_antipode]}


def face_areas(config):
    """Areas of all 14 faces keyed by sign string relative to F (F is '++++')."""
    if detect_triple(config):
        raise DegenerateConfig("configuration has a triple intersection")
    n = _oriented_normals(config)
    part = Partition(n)
    areas = {}
    for f, key in enumerate(part.faces):
        total = 0.0
        for i, c in enumerate(part.side_circle[f]):
            c_next = part.side_circle[f][(i + 1) % part.size(f)]
            total += 1.0 - _acos(key[c] * key[c_next] * float(n[c] @ n[c_next])) / math.pi
        area = total - (part.size(f) - 2)
        if area < FACE_TOL:
            raise DegenerateConfig(f"face {_key_str(key)} has area {area:.3g}")
        areas[_key_str(key)] = area
    return areas


def _key_str(key):
    return "".join("+" if s > 0 else "-" for s in key)


def named_areas(areas):
    out = {"F": areas[_key_str(F_KEY)]}
    for name, key in ADJACENT_KEYS.items():
        out[name] = areas[_key_str(key)]
    return out


# --- realization ---------------------------------------------------------


def in_pyramid(a, b, c, d):
    s = a + b + c + d - 2
    return 0 < s < 2 * min(a, b, c, d) and max(a, b, c, d) < 1


def _candidates(a, b, c, d, e):
    """Normal quadruples with Gram entries -cos(pi x) for x in (a, e, b, c, d).

    n1, n2, n3 are fixed by (a, b, e); n4 is cut out by its products with
    n1 and n3 and comes in two mirror positions.  The sign of n2 decides
    which cos applies on its row.
    """
    cos = lambda x: math.cos(math.pi * x)
    g12, g23, g13, g34, g41 = -cos(a), -cos(b), -cos(e), -cos(c), -cos(d)
    s12 = math.sqrt(max(0.0, 1 - g12 * g12))
    if s12 < 1e-14:
        return []
    n1 = np.array([0.0, 0.0, 1.0])
    n2 = np.array([s12, 0.0, g12])
    x3 = (g23 - g13 * g12) / s12
    r3 = 1 - x3 * x3 - g13 * g13
    if r3 < -1e-13:
        return []
    n3 = np.array([x3, math.sqrt(max(0.0, r3)), g13])
    # n4 . n1 = g41, n4 . n3 = g34, |n4| = 1
    base = np.array([n1, n3])
    rhs = np.array([g41, g34])
    w = np.cross(n1, n3)
    if np.linalg.norm(w) < 1e-14:
        return []
    p0 = np.linalg.lstsq(base, rhs, rcond=None)[0]
    wn = _unit(w)
    r = 1 - p0 @ p0
    if r < -1e-13:
        return []
    h = math.sqrt(max(0.0, r))
    return [np.array([n1, n2, n3, p0 + s * h * wn]) for s in (1, -1)]


def _valid_normals(normals, a, b, c, d):
    """True if the all-positive face is a quadrilateral reading C1..C4 with angles a..d."""
    n = np.asarray(normals, dtype=float)
    if any(abs(np.linalg.det(n[list(t)])) < TRIPLE_TOL for t in itertools.combinations(range(4), 3)):
        return False
    # the all-positive region must have vertices exactly on C1C2, C2C3, C3C4, C4C1
    for i, j in itertools.combinations(range(4), 2):
        p = _cross(n[i], n[j])
        others = [k for k in range(4) if k not in (i, j)]
        dots = [float(n[k] @ p) for k in others]
        corner = all(x > 0 for x in dots) or all(x < 0 for x in dots)
        if corner != ((j - i) % 4 in (1, 3)):
            return False
    ang = [1.0 - _acos(float(normals[i] @ normals[(i + 1) % 4])) / math.pi for i in range(4)]
    return all(abs(x - y) < 1e-7 for x, y in zip(ang, (a, b, c, d)))


def _pick(a, b, c, d, e):
    for normals in _candidates(a, b, c, d, e):
        if _valid_normals(normals, a, b, c, d):
            return normals
    return None


@lru_cache(maxsize=512)
def feasible_interval(a, b, c, d):
    """Open interval of the fifth angle ``e`` over which F persists."""
    if not in_pyramid(a, b, c, d):
        raise InfeasibleAngles(f"({a}, {b}, {c}, {d}) is not inside the pyramid")
    # near the pyramid boundary the interval gets thin, so refine until something turns up
    for points in (401, 4001, 40001):
        grid = np.linspace(0.0, 1.0, points)[1:-1]
        good = [e for e in grid if _pick(a, b, c, d, e) is not None]
        if good:
            break
    else:
        raise InfeasibleAngles("no configuration realizes these angles")
    lo_in, hi_in = min(good), max(good)

    def edge(inside, outside):
        for _ in range(80):
            mid = 0.5 * (inside + outside)
            if _pick(a, b, c, d, mid) is not None:
                inside = mid
            else:
                outside = mid
        return inside

    lo = edge(lo_in, max(0.0, lo_in - grid[1] + grid[0]))
    hi = edge(hi_in, min(1.0, hi_in + grid[1] - grid[0]))
    return lo, hi


def _spherical(theta, phi):
    return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])


def _to_spherical(v):
    return math.acos(max(-1.0, min(1.0, v[2]))), math.atan2(v[1], v[0])


def _newton_polish(normals, a, b, c, d, e):
    """Damped Newton on the spherical coordinates of C3 and C4."""
    n1, n2 = normals[0], normals[1]
    x = np.array([*_to_spherical(normals[2]), *_to_spherical(normals[3])])
    target = -np.cos(np.pi * np.array([b, c, d, e]))

    def residual(x):
        n3, n4 = _spherical(x[0], x[1]), _spherical(x[2], x[3])
        return np.array([n2 @ n3, n3 @ n4, n4 @ n1, n1 @ n3]) - target

    r = residual(x)
    for _ in range(50):
        if np.max(np.abs(r)) < NEWTON_TOL:
            break
        jac = np.empty((4, 4))
        for k in range(4):
            dx = np.zeros(4)
            dx[k] = 1e-7
            jac[:, k] = (residual(x + dx) - residual(x - dx)) / 2e-7
        step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        lam = 1.0
        while lam > 1e-4:
            trial = x + lam * step
            rt = residual(trial)
            if np.max(np.abs(rt)) < np.max(np.abs(r)):
                x, r = trial, rt
                break
            lam *= 0.5
        else:
            break
    return np.array([n1, n2, _spherical(x[0], x[1]), _spherical(x[2], x[3])]), float(np.max(np.abs(r)))


def realize_config(a, b, c, d, t):
    """Configuration whose face F has angles (a, b, c, d) and fifth angle ``e = t``."""
    a, b, c, d, t = (float(x) for x in (a, b, c, d, t))
    lo, hi = feasible_interval(a, b, c, d)
    if not lo < t < hi:
        raise InfeasibleParameter(f"fifth angle {t} outside ({lo:.12g}, {hi:.12g})")
    normals = _pick(a, b, c, d, t)
    if normals is None:
        raise InfeasibleParameter(f"no configuration with fifth angle {t}")
    normals, res = _newton_polish(normals, a, b, c, d, t)
    if res > NEWTON_TOL:
        raise InfeasibleParameter(f"Newton residual {res:.3g} above tolerance")
    part = Partition(normals)
    if part.faces[part.f_face] != F_KEY:
        # mirror image: reflect through the xz-plane to restore orientation
        normals = normals * np.array([1.0, -1.0, 1.0])
    return FourCircleConfig.from_normals(normals)


def symmetric_parameter(a, b, c, d):
    """The fifth angle at which e equals z (exists when the family crosses e = z)."""
    lo, hi = feasible_interval(a, b, c, d)

    def gap(t):
        return face_angles(realize_config(a, b, c, d, t)).z - t

    eps = 1e-6 * (hi - lo)
    return brentq(gap, lo + eps, hi - eps, xtol=1e-15)


# --- continuation --------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    t: float
    angles: FaceAngles
    areas: dict


@dataclass(frozen=True)
class Trace:
    direction: str
    steps: tuple
    final: FourCircleConfig
    contracted: str
    triples: tuple = field(default=())

    def to_json(self):
        return json.dumps(
            [{"t": s.t, "angles": s.angles.as_dict(), "areas": s.areas} for s in self.steps]
        )


def _end_areas(a, b, c, d, e, z):
    return {
        "bottom": 1 - a - b + e,
        "top": 1 - c - d + e,
        "left": 1 - a - d + z,
        "right": 1 - b - c + z,
    }


def _limit_normals(a, b, c, d, t):
    normals = _pick(a, b, c, d, t)
    if normals is None:
        return None
    part = Partition(normals)
    if part.faces[part.f_face] != F_KEY:
        normals = normals * np.array([1.0, -1.0, 1.0])
    return normals


def continue_to_triple(a, b, c, d, direction, steps=40):
    """Deform the configuration at fixed (a, b, c, d) until a triangle next to F collapses.

    Top and bottom lie at the lower end of the fifth-angle interval, left
    and right at the upper end.  Raises DirectionBlocked when the requested
    triangle keeps a positive area up to the end of the family.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    a, b, c, d = (float(x) for x in (a, b, c, d))
    lo, hi = feasible_interval(a, b, c, d)
    mid = 0.5 * (lo + hi)
    end = lo if direction in ("top", "bottom") else hi
    record = []
    for k in range(steps + 1):
        t = end + (mid - end) * 2.0 ** (-k * 0.75)
        if not lo < t < hi:
            break
        try:
            cfg = realize_config(a, b, c, d, t)
            areas = face_areas(cfg)
        except SphquadError:
            break
        record.append(TraceStep(t, face_angles(cfg), areas))
        if min(areas.values()) < 1e-7:
            break
    last = record[-1]
    e, z = last.angles.e, last.angles.z
    # the limit values of the four linear forms decide which face collapses
    normals = _limit_normals(a, b, c, d, end + (mid - end) * 1e-12)
    final = None
    if normals is not None:
        try:
            final = FourCircleConfig.from_normals(normals)
            lim = face_angles(final)
            e, z = lim.e, lim.z
        except SphquadError:
            final = None
    ends = _end_areas(a, b, c, d, e, z)
    pair = ("top", "bottom") if direction in ("top", "bottom") else ("left", "right")
    gone = [p for p in pair if ends[p] < 1e-6]
    if set(gone) == set(pair):
        raise QuadrupleBoundary("opposite triangles collapse together: quadruple intersection")
    if direction not in gone:
        raise DirectionBlocked(
            f"{direction} triangle keeps area {ends[direction]:.6g} to the end of the family"
        )
    triples = tuple(detect_triple(final, tol=1e-6)) if final is not None else ()
    return Trace(direction, tuple(record), final, direction, triples)


# --- SVG -----------------------------------------------------------------


def _stereo(points, pole):
    """Stereographic projection from ``pole`` onto the plane through the origin."""
    pole = _unit(np.asarray(pole, dtype=float))
    helper = np.array([1.0, 0.0, 0.0]) if abs(pole[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = _unit(np.cross(pole, helper))
    v = np.cross(pole, u)
    out = []
    for p in points:
        denom = 1.0 - p @ pole
        if denom < 1e-6:
            out.append(None)
        else:
            out.append(((p @ u) / denom, (p @ v) / denom))
    return out


def config_svg(config, size=480, shade=True):
    """SVG 1.1 drawing of the configuration in stereographic projection.

    The projection pole sits in the middle of the face antipodal to F, so F
    appears near the centre.  Triangles and quadrilaterals are shaded in two
    tones; F gets a third.
    """
    n = _oriented_normals(config)
    part = Partition(n)
    pole = -_unit(sum(part.points[v] for v in part.face_verts[part.f_face]))
    scale = size / 8.0
    cx = cy = size / 2.0

    def xy(pt):
        return cx + scale * pt[0], cy - scale * pt[1]

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if shade:
        for f, vs in enumerate(part.face_verts):
            if f == part.f_antipode:
                continue
            pts = []
            for i, u in enumerate(vs):
                w = vs[(i + 1) % len(vs)]
                arc = _arc_points(part.points[u], part.points[w], 16)
                pts.extend(_stereo(arc[:-1], pole))
            if any(p is None for p in pts):
                continue
            colour = "#f4c27a" if f == part.f_face else ("#dde7f3" if len(vs) == 3 else "#f2f2f2")
            path = " ".join(f"{x:.2f},{y:.2f}" for x, y in (xy(p) for p in pts))
            parts.append(f'<polygon points="{path}" fill="{colour}" stroke="none"/>')
    styles = NET_STROKES
    for i in range(4):
        pts = [p for p in _stereo(_circle_points(n[i], 360), pole)]
        segs, cur = [], []
        for p in pts:
            if p is None or max(abs(p[0]), abs(p[1])) > 6:
                if len(cur) > 1:
                    segs.append(cur)
                cur = []
            else:
                cur.append(xy(p))
        if len(cur) > 1:
            segs.append(cur)
        for seg in segs:
            path = " ".join(f"{x:.2f},{y:.2f}" for x, y in seg)
            parts.append(f'<polyline points="{path}" fill="none" {styles[i]}/>')
    parts.append("</svg>")
    return "\n".join(parts)


NET_STROKES = (
    'stroke="#c0392b" stroke-width="2"',
    'stroke="#2471a3" stroke-width="2" stroke-dasharray="8,4"',
    'stroke="#1e8449" stroke-width="2" stroke-dasharray="2,3"',
    'stroke="#7d3c98" stroke-width="2" stroke-dasharray="10,3,2,3"',
)


def _circle_points(normal, count):
    normal = _unit(normal)
    helper = np.array([1.0, 0.0, 0.0]) if abs(normal[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = _unit(np.cross(normal, helper))
    v = np.cross(normal, u)
    ts = np.linspace(0, 2 * np.pi, count + 1)
    return [math.cos(t) * u + math.sin(t) * v for t in ts]


def _arc_points(p, q, count):
    omega = _acos(float(p @ q))
    if omega < 1e-12:
        return [p, q]
    return [(math.sin((1 - s) * omega) * p + math.sin(s * omega) * q) / math.sin(omega) for s in np.linspace(0, 1, count + 1)]


@lru_cache(maxsize=1)
def reference_partition():
    """A fixed generic partition used to develop nets combinatorially."""
    cfg = realize_config(0.6, 0.65, 0.7, 0.62, 0.45)
    return Partition(_oriented_normals(cfg))

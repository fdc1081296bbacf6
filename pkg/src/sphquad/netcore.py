"""Nets as edge-coloured combinatorial maps of a disk.

A net is stored as a set of darts (half-edges) with three pieces of data:
``next`` (the following dart around the same face), ``opp`` (the other
half of the same edge) and ``color`` (index 1..4 of the circle the edge
lies on).  The outer face is kept as an ordinary face cycle whose darts
carry ``outer=True``; rotation around a vertex is ``next . opp``.

Corners are recorded by their outgoing boundary dart.  Nets built from
partition faces follow a fixed labelling: the boundary side leaving
corner ``a_k`` lies on circle ``C_{k+2}`` (indices mod 4, in 1..4), so
``a0`` sits between C1 and C2 and carries the angle matched with ``a``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .geometry import NET_STROKES, reference_partition

SIDE_COLORS = (2, 3, 4, 1)


def side_color(k):
    """Circle (1..4) carrying the side from ``a_k`` to ``a_{k+1}``."""
    return SIDE_COLORS[k % 4]


@dataclass(frozen=True, eq=False)
class Net:
    next: tuple
    opp: tuple
    color: tuple
    outer: tuple
    corners: tuple
    pdart: tuple | None = None

    @property
    def size(self):
        return len(self.next)

    def sigma(self, d):
        return self.next[self.opp[d]]

    @cached_property
    def vertex_of(self):
        vid = [-1] * self.size
        count = 0
        for d in range(self.size):
            if vid[d] >= 0:
                continue
            x = d
            while vid[x] < 0:
                vid[x] = count
                x = self.sigma(x)
            count += 1
        return tuple(vid)

    @cached_property
    def vertex_darts(self):
        out = [[] for _ in range(max(self.vertex_of) + 1)]
        for d in range(self.size):
            v = self.vertex_of[d]
            if not out[v]:
                x = d
                while True:
                    out[v].append(x)
                    x = self.sigma(x)
                    if x == d:
                        break
        return tuple(tuple(v) for v in out)

    @cached_property
    def faces(self):
        """Interior face cycles as tuples of darts."""
        seen = [False] * self.size
        out = []
        for d in range(self.size):
            if seen[d] or self.outer[d]:
                continue
            cyc = []
            x = d
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.next[x]
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def face_of(self):
        fid = [-1] * self.size
        for f, cyc in enumerate(self.faces):
            for d in cyc:
                fid[d] = f
        return tuple(fid)

    def head(self, d):
        return self.vertex_of[self.opp[d]]

    def tail(self, d):
        return self.vertex_of[d]

    def is_boundary_dart(self, d):
        return not self.outer[d] and self.outer[self.opp[d]]

    def bnext(self, d):
        """Next boundary dart (counterclockwise) after boundary dart ``d``."""
        y = self.next[d]
        while not self.outer[self.opp[y]]:
            y = self.next[self.opp[y]]
        return y

    @cached_property
    def boundary(self):
        start = self.corners[0] if self.corners else next(d for d in range(self.size) if self.is_boundary_dart(d))
        cyc = [start]
        x = self.bnext(start)
        while x != start:
            cyc.append(x)
            x = self.bnext(x)
        return tuple(cyc)

    @cached_property
    def corner_vertices(self):
        return tuple(self.vertex_of[d] for d in self.corners)

    def degree(self, v):
        return len(self.vertex_darts[v])

    @cached_property
    def boundary_vertices(self):
        return frozenset(self.vertex_of[d] for d in self.boundary)

    def vertex_type(self, v):
        if v in self.corner_vertices:
            return "corner"
        if v in self.boundary_vertices:
            return "lateral"
        return "interior"

    @cached_property
    def sides(self):
        """Boundary darts of each side, from corner ``a_k`` to ``a_{k+1}``."""
        out = []
        cv = set(self.corner_vertices)
        for start in self.corners:
            path = [start]
            x = self.bnext(start)
            while self.vertex_of[x] not in cv:
                path.append(x)
                x = self.bnext(x)
            out.append(tuple(path))
        return tuple(out)

    def corner_orders(self):
        # an integer corner (both sides on one circle) has odd degree 2n + 1
        return tuple((self.degree(v) - 2 + self.degree(v) % 2) // 2 for v in self.corner_vertices)

    def side_orders(self):
        return tuple(len(s) for s in self.sides)

    def n_vertices(self):
        return len(self.vertex_darts)

    def n_edges(self):
        return self.size // 2

    def n_faces(self):
        return len(self.faces)

    def face_sizes(self):
        return tuple(len(f) for f in self.faces)

    # -- derived relabellings ----------------------------------------

    def mirrored(self):
        """Orientation-reversed copy; corners keep ``a0`` and swap ``a1``, ``a3``."""
        inv_sigma = [0] * self.size
        for d in range(self.size):
            inv_sigma[self.sigma(d)] = d
        nxt = tuple(inv_sigma[self.opp[d]] for d in range(self.size))
        outer = tuple(self.outer[self.opp[d]] for d in range(self.size))
        incoming = {self.head(d): d for d in self.boundary}
        corners = tuple(self.opp[incoming[self.corner_vertices[k]]] for k in (0, 3, 2, 1)[: len(self.corners)])
        if len(self.corners) != 4:
            corners = tuple(self.opp[incoming[v]] for v in reversed(self.corner_vertices))
        return Net(nxt, self.opp, self.color, outer, corners, None)

    def rotated(self, r):
        """Same net with corner labels shifted: new ``a_k`` is old ``a_{k+r}``."""
        n = len(self.corners)
        corners = tuple(self.corners[(k + r) % n] for k in range(n))
        return Net(self.next, self.opp, self.color, self.outer, corners, self.pdart)

    # -- serialisation ---------------------------------------------------

    def to_dict(self):
        return {
            "darts": self.size,
            "next": list(self.next),
            "opp": list(self.opp),
            "color": list(self.color),
            "outer": [bool(x) for x in self.outer],
            "vertex_type": [self.vertex_type(v) for v in range(self.n_vertices())],
            "corner_labels": {f"a{k}": d for k, d in enumerate(self.corners)},
            "pdart": None if self.pdart is None else [None if p is None else list(p) for p in self.pdart],
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        n = data["darts"]
        corners = tuple(data["corner_labels"][f"a{k}"] for k in range(len(data["corner_labels"])))
        pdart = data.get("pdart")
        if pdart is not None:
            pdart = tuple(None if p is None else tuple(p) for p in pdart)
        outer = data.get("outer")
        if outer is None:
            raise ValueError("net JSON needs an 'outer' flag per dart")
        net = cls(tuple(data["next"]), tuple(data["opp"]), tuple(data["color"]), tuple(bool(x) for x in outer), corners, pdart)
        if any(len(x) != n for x in (net.next, net.opp, net.color, net.outer)):
            raise ValueError("per-dart arrays must have length 'darts'")
        return net

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


# --- validation ------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    irreducible: bool = False
    primitive: bool = False
    generic_violations: list = field(default_factory=list)

    @property
    def valid(self):
        return not self.violations

    @property
    def generic(self):
        return self.valid and not self.generic_violations

    @property
    def status(self):
        if not self.valid:
            return "INVALID"
        return "VALID-GENERIC" if self.generic else "VALID"

    def to_dict(self):
        return {
            "status": self.status,
            "violations": self.violations,
            "generic_violations": self.generic_violations,
            "irreducible": self.irreducible,
            "primitive": self.primitive,
        }


def _structural(net, rep):
    n = net.size
    arrays = (net.next, net.opp, net.color, net.outer)
    if any(len(a) != n for a in arrays):
        rep.violations.append("per-dart arrays differ in length")
        return False
    if sorted(net.next) != list(range(n)):
        rep.violations.append("next is not a permutation")
        return False
    for d in range(n):
        o = net.opp[d]
        if not 0 <= o < n or o == d or net.opp[o] != d:
            rep.violations.append(f"opp is not a fixed-point-free involution at dart {d}")
            return False
        if net.color[d] != net.color[o]:
            rep.violations.append(f"edge {d}/{o} has two colours")
        if net.color[d] not in (1, 2, 3, 4):
            rep.violations.append(f"dart {d} has colour {net.color[d]} outside 1..4")
        if net.outer[d] and net.outer[o]:
            rep.violations.append(f"edge {d}/{o} lies outside the disk")
    outer = [d for d in range(n) if net.outer[d]]
    if not outer:
        rep.violations.append("no outer face")
        return False
    cyc = [outer[0]]
    x = net.next[outer[0]]
    while x != outer[0]:
        if not net.outer[x]:
            rep.violations.append("outer face cycle mixes interior darts")
            return False
        cyc.append(x)
        x = net.next[x]
    if len(cyc) != len(outer):
        rep.violations.append("boundary is not a single cycle")
        return False
    for d in range(n):
        if not net.outer[d] and net.outer[net.next[d]]:
            rep.violations.append("interior face cycle contains an outer dart")
            return False
    # connectivity
    seen = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (net.next[d], net.opp[d]):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    if len(seen) != n:
        rep.violations.append("net is not connected")
        return False
    return not rep.violations


def validate_net(net, expected_corners=4, integer_corners=False):
    """Check every net invariant and report what fails.

    With ``integer_corners`` a labelled corner may sit where the boundary
    stays on one circle (odd degree); triangles with an integer angle need this.
    """
    rep = ValidationReport()
    if not _structural(net, rep):
        return rep
    chi = net.n_vertices() - net.n_edges() + net.n_faces()
    if chi != 1:
        rep.violations.append(f"Euler characteristic {chi}, expected 1 for a disk")
    for f, cyc in enumerate(net.faces):
        if len(cyc) not in (3, 4):
            rep.violations.append(f"face {f} has {len(cyc)} sides")
        cols = [net.color[d] for d in cyc]
        if len(set(cols)) != len(cols):
            rep.violations.append(f"face {f} repeats a circle on its boundary")
        for d in cyc:
            o = net.opp[d]
            if not net.outer[o] and len(net.faces[net.face_of[o]]) == len(cyc):
                rep.violations.append(f"faces {f} and {net.face_of[o]} of equal size share an edge")
                break
    boundary_v = net.boundary_vertices
    color_change = set()
    for d in net.boundary:
        nxt = net.bnext(d)
        if net.color[nxt] != net.color[d]:
            color_change.add(net.head(d))
    labelled = set(net.corner_vertices) if integer_corners else set()
    turning = color_change | labelled
    for v, darts in enumerate(net.vertex_darts):
        deg = len(darts)
        if v not in boundary_v:
            if deg != 4:
                rep.violations.append(f"interior vertex {v} has degree {deg}")
                continue
            for i in range(4):
                if net.color[darts[i]] != net.color[darts[(i + 2) % 4]]:
                    rep.violations.append(f"arc does not continue straight through interior vertex {v}")
                    break
        elif v in color_change:
            if deg % 2:
                rep.violations.append(f"corner {v} has odd degree {deg}")
        elif integer_corners and v in labelled:
            if deg % 2 == 0:
                rep.violations.append(f"integer corner {v} has even degree {deg}")
        elif deg != 3:
            rep.violations.append(f"lateral vertex {v} has degree {deg}")
    if len(turning) != expected_corners:
        rep.violations.append(f"{len(turning)} corners found, expected {expected_corners}")
    elif len(net.corners) != expected_corners:
        rep.violations.append("corner labels do not match the number of corners")
    else:
        if set(net.corner_vertices) != turning:
            rep.violations.append("labelled corners are not the vertices where the boundary turns")
        elif not all(net.is_boundary_dart(d) for d in net.corners):
            rep.violations.append("corner labels must point at outgoing boundary darts")
        else:
            pos = {d: i for i, d in enumerate(net.boundary)}
            idx = [pos[d] for d in net.corners]
            if idx != sorted(idx):
                rep.violations.append("corner labels are not in counterclockwise order")
    if rep.violations:
        return rep
    side_cols = [net.color[s[0]] for s in net.sides]
    if len(set(side_cols)) != len(side_cols):
        rep.generic_violations.append("two sides lie on the same circle")
    for k, order in enumerate(net.side_orders()):
        if order % 3 == 0:
            rep.generic_violations.append(f"side {k} has order {order}, divisible by 3")
    arcs = decompose_arcs(net)
    diagonals = [a for a in arcs.arcs if a.kind == "diagonal"]
    for a in diagonals:
        i, j = a.end_corners
        if expected_corners == 4 and (i - j) % 4 == 2:
            rep.generic_violations.append(f"arc joins opposite corners a{i} and a{j}")
    rep.irreducible = not diagonals
    rep.primitive = rep.irreducible and not any(a.kind == "loop" for a in arcs.arcs)
    return rep


# --- arcs ----------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    color: int
    darts: tuple
    vertices: tuple
    kind: str
    end_corners: tuple = ()

    @property
    def order(self):
        return len(self.darts)


@dataclass(frozen=True)
class ArcDecomposition:
    arcs: tuple

    def of_kind(self, kind):
        return [a for a in self.arcs if a.kind == kind]

    def counts(self):
        out = {}
        for a in self.arcs:
            out[a.kind] = out.get(a.kind, 0) + 1
        return out


def _sides_at(net):
    """Map boundary vertex -> set of side indices it lies on."""
    out = {}
    for k, side in enumerate(net.sides):
        for d in side:
            out.setdefault(net.tail(d), set()).add(k)
            out.setdefault(net.head(d), set()).add(k)
    return out


def decompose_arcs(net):
    """Split the net into maximal monochromatic arcs and classify them."""
    nsides = len(net.corners)
    corner_index = {v: k for k, v in enumerate(net.corner_vertices)}
    sides_at = _sides_at(net)
    boundary_v = net.boundary_vertices
    used = set()
    arcs = []
    for k, side in enumerate(net.sides):
        arcs.append(
            Arc(net.color[side[0]], side, tuple(net.tail(d) for d in side) + (net.head(side[-1]),), "lateral", (k, (k + 1) % nsides))
        )
        for d in side:
            used.add(d)
            used.add(net.opp[d])

    def straight(d):
        # dart leaving head(d) that continues d across an interior vertex
        x = net.opp[d]
        return net.sigma(net.sigma(x))

    def classify(x, y):
        if x == y:
            return "loop", ()
        cx, cy = corner_index.get(x), corner_index.get(y)
        if cx is not None and cy is not None:
            return "diagonal", (cx, cy)
        sx, sy = sides_at[x], sides_at[y]
        if cx is not None or cy is not None:
            c = cx if cx is not None else cy
            other = sy if cx is not None else sx
            if other & sides_at[net.corner_vertices[c]]:
                return "one-sided", (c,)
            return "separator", (c,)
        if sx & sy:
            return "one-sided", ()
        (a,), (b,) = sx, sy
        if (a - b) % nsides in (1, nsides - 1):
            return "two-sided", ()
        return "other-interior", ()

    for v in sorted(boundary_v):
        for d in net.vertex_darts[v]:
            if d in used or net.outer[d]:
                continue
            path = [d]
            used.update((d, net.opp[d]))
            while net.head(path[-1]) not in boundary_v:
                nxt = straight(path[-1])
                path.append(nxt)
                used.update((nxt, net.opp[nxt]))
            verts = tuple(net.tail(e) for e in path) + (net.head(path[-1]),)
            kind, ends = classify(verts[0], verts[-1])
            arcs.append(Arc(net.color[d], tuple(path), verts, kind, ends))
    for d in range(net.size):
        if d in used:
            continue
        path = [d]
        used.update((d, net.opp[d]))
        nxt = straight(d)
        while nxt != d:
            path.append(nxt)
            used.update((nxt, net.opp[nxt]))
            nxt = straight(nxt)
        verts = tuple(net.tail(e) for e in path)
        arcs.append(Arc(net.color[d], tuple(path), verts, "loop", ()))
    return ArcDecomposition(tuple(arcs))


def corner_orders(net):
    return net.corner_orders()


def side_orders(net):
    return net.side_orders()


# --- canonical form and isomorphism --------------------------------------


def _encode(nxt, opp, color, outer, start, corners):
    order = {start: 0}
    queue = [start]
    colmap = {}
    code = []
    i = 0
    while i < len(queue):
        d = queue[i]
        i += 1
        for nb in (nxt[d], opp[d]):
            if nb not in order:
                order[nb] = len(order)
                queue.append(nb)
        c = color[d]
        if c not in colmap:
            colmap[c] = len(colmap) + 1
        code.append((order[nxt[d]], order[opp[d]], colmap[c], bool(outer[d])))
    if len(order) != len(nxt):
        return None
    return (tuple(code), tuple(order.get(c, -1) for c in corners))


def _variants(net, mode):
    nets = [net]
    if mode == "unlabeled":
        nets.append(net.mirrored())
    for m in nets:
        k = len(m.corners)
        shifts = range(k) if mode == "unlabeled" else (0,)
        for r in shifts:
            yield m.rotated(r)


def canonical_form(net, mode="labeled"):
    """Hashable encoding shared by exactly the isomorphic nets."""
    if mode not in ("labeled", "unlabeled"):
        raise ValueError("mode must be 'labeled' or 'unlabeled'")
    best = None
    for m in _variants(net, mode):
        code = _encode(m.next, m.opp, m.color, m.outer, m.corners[0], m.corners)
        if code is not None and (best is None or code < best):
            best = code
    return best


def _match(n1, n2, s1, s2, c1, c2):
    if n1.size != n2.size:
        return None
    phi = {s1: s2}
    colmap = {}
    stack = [s1]
    while stack:
        d = stack.pop()
        e = phi[d]
        if n1.outer[d] != n2.outer[e]:
            return None
        c = colmap.setdefault(n1.color[d], n2.color[e])
        if c != n2.color[e]:
            return None
        for f1, f2 in ((n1.next[d], n2.next[e]), (n1.opp[d], n2.opp[e])):
            if f1 in phi:
                if phi[f1] != f2:
                    return None
            else:
                phi[f1] = f2
                stack.append(f1)
    if len(phi) != n1.size or len(set(phi.values())) != n1.size:
        return None
    if tuple(phi[d] for d in c1) != tuple(c2):
        return None
    if len(set(colmap.values())) != len(colmap):
        return None
    return phi


def is_isomorphic(n1, n2, mode="labeled"):
    """Return ``(True, dart_map)`` when the nets are equivalent, else ``(False, None)``.

    Labeled mode keeps ``a_j -> a_j`` and orientation, allowing any
    consistent recolouring.  Unlabeled mode also allows the dihedral
    relabellings of the corners (rotations, and reflections, which map
    onto the mirrored dart set of ``n2``).
    """
    if len(n1.corners) != len(n2.corners):
        return False, None
    targets = [n2]
    if mode == "unlabeled":
        targets.append(n2.mirrored())
    elif mode != "labeled":
        raise ValueError("mode must be 'labeled' or 'unlabeled'")
    for t in targets:
        shifts = range(len(t.corners)) if mode == "unlabeled" else (0,)
        for r in shifts:
            tr = t.rotated(r)
            phi = _match(n1, tr, n1.corners[0], tr.corners[0], n1.corners, tr.corners)
            if phi is not None:
                return True, phi
    return False, None


# --- editable complex of partition faces ---------------------------------


class Complex:
    """Mutable gluing of copies of partition faces, frozen into a Net.

    Each face copy keeps the side numbering of the partition face it
    copies, so side ``i`` runs between the partition vertices ``i`` and
    ``i+1`` of that face and two sides may only be glued when they are
    glued in the partition itself.
    """

    def __init__(self, part=None):
        self.part = part or reference_partition()
        self.faces = []
        self.glue = {}

    def copy(self):
        cx = Complex(self.part)
        cx.faces = list(self.faces)
        cx.glue = dict(self.glue)
        return cx

    @classmethod
    def from_keys(cls, keys, part=None):
        cx = cls(part)
        cx.add_region([cx.part.face_index[tuple(k)] for k in keys])
        return cx

    def size(self, f):
        return self.part.size(self.faces[f])

    def add_face(self, pf):
        self.faces.append(pf)
        return len(self.faces) - 1

    def add_region(self, pfaces):
        """Copy a set of partition faces, glued to each other as in the partition."""
        region = {pf: self.add_face(pf) for pf in pfaces}
        for pf, f in region.items():
            for i in range(self.part.size(pf)):
                qf, j = self.part.across(pf, i)
                if qf in region and (f, i) not in self.glue:
                    self.glue_pair((f, i), (region[qf], j))
        return region

    def across(self, side):
        f, i = side
        return self.part.across(self.faces[f], i)

    def glue_pair(self, a, b):
        if a in self.glue or b in self.glue:
            raise ValueError(f"side {a} or {b} already glued")
        if self.across(a) != (self.faces[b[0]], b[1]):
            raise ValueError(f"sides {a} and {b} are not adjacent in the partition")
        self.glue[a] = b
        self.glue[b] = a

    def unglue(self, a):
        b = self.glue.pop(a, None)
        if b is not None:
            del self.glue[b]
        return b

    def glue_across(self, side, region):
        pf, j = self.across(side)
        self.glue_pair(side, (region[pf], j))

    def is_free(self, side):
        return side not in self.glue

    def color(self, side):
        f, i = side
        return self.part.side_circle[self.faces[f]][i]

    def pvert(self, side):
        f, i = side
        return self.part.face_verts[self.faces[f]][i]

    def sides_of(self, f):
        return [(f, i) for i in range(self.size(f))]

    def free_sides(self):
        return [(f, i) for f in range(len(self.faces)) for i in range(self.size(f)) if (f, i) not in self.glue]

    def bnext(self, side):
        f, i = side
        y = (f, (i + 1) % self.size(f))
        while y in self.glue:
            g, j = self.glue[y]
            y = (g, (j + 1) % self.size(g))
        return y

    def bprev_map(self):
        return {self.bnext(s): s for s in self.free_sides()}

    def boundary_cycle(self):
        free = self.free_sides()
        start = free[0]
        cyc = [start]
        x = self.bnext(start)
        while x != start:
            cyc.append(x)
            x = self.bnext(x)
        if len(cyc) != len(free):
            raise ValueError("boundary is not a single cycle")
        return cyc

    def corner_sides(self):
        """Outgoing boundary side at each corner, labelled by the side-colour convention."""
        cyc = self.boundary_cycle()
        n = len(cyc)
        found = {}
        for t in range(n):
            if self.color(cyc[t - 1]) != self.color(cyc[t]):
                c = self.color(cyc[t]) + 1
                k = SIDE_COLORS.index(c)
                if k in found:
                    raise ValueError("two corners with the same outgoing circle")
                found[k] = cyc[t]
        if sorted(found) != [0, 1, 2, 3]:
            raise ValueError(f"boundary has corners {sorted(found)} instead of a0..a3")
        pos = {s: t for t, s in enumerate(cyc)}
        seq = [pos[found[k]] for k in range(4)]
        rot = seq.index(min(seq))
        seq = seq[rot:] + seq[:rot]
        if seq != sorted(seq):
            raise ValueError("side colours do not run C2, C3, C4, C1 counterclockwise")
        return [found[k] for k in range(4)]

    def side_path(self, k, corners=None):
        corners = corners or self.corner_sides()
        start, stop = corners[k], corners[(k + 1) % 4]
        path = [start]
        x = self.bnext(start)
        while x != stop:
            path.append(x)
            x = self.bnext(x)
        return path

    def faces_at_start(self, side):
        """Number of faces around the start vertex of a free side."""
        count = 1
        f, i = side
        y = (f, (i - 1) % self.size(f))
        while y in self.glue:
            g, j = self.glue[y]
            count += 1
            y = (g, (j - 1) % self.size(g))
        return count

    def corner_order(self, k, corners=None):
        corners = corners or self.corner_sides()
        return (self.faces_at_start(corners[k]) - 1) // 2

    def vertex_classes(self):
        """Union-find labels: side -> id of its start vertex."""
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for (f, i), (g, j) in self.glue.items():
            union((f, i), (g, (j + 1) % self.size(g)))
        for f in range(len(self.faces)):
            for i in range(self.size(f)):
                find((f, i))
        return {s: find(s) for s in parent}

    def transformed(self, perm, reverse):
        """Image under the partition symmetry sending circle c to ``perm[c]``."""
        vmap, fmap = self.part.isomorphism(perm, reverse)
        cx = Complex(self.part)
        side_map = {}
        for f, pf in enumerate(self.faces):
            tf = fmap[pf]
            cx.faces.append(tf)
            target = self.part.face_verts[tf]
            vs = self.part.face_verts[pf]
            n = len(vs)
            for i in range(n):
                src = vs[(i + 1) % n] if reverse else vs[i]
                side_map[(f, i)] = (f, target.index(vmap[src]))
        for a, b in self.glue.items():
            cx.glue[side_map[a]] = side_map[b]
        return cx

    def freeze(self):
        index = {}
        for f in range(len(self.faces)):
            for i in range(self.size(f)):
                index[(f, i)] = len(index)
        free = self.free_sides()
        for s in free:
            index[("out", s)] = len(index)
        n = len(index)
        nxt = [0] * n
        opp = [0] * n
        color = [0] * n
        outer = [False] * n
        pdart = [None] * n
        for f in range(len(self.faces)):
            m = self.size(f)
            for i in range(m):
                d = index[(f, i)]
                nxt[d] = index[(f, (i + 1) % m)]
                color[d] = self.color((f, i)) + 1
                pdart[d] = (self.faces[f], i)
                if (f, i) in self.glue:
                    opp[d] = index[self.glue[(f, i)]]
                else:
                    o = index[("out", (f, i))]
                    opp[d], opp[o] = o, d
                    color[o] = color[d]
                    outer[o] = True
        prev = self.bprev_map()
        for s in free:
            o = index[("out", s)]
            nxt[o] = index[("out", prev[s])]
        try:
            corners = tuple(index[s] for s in self.corner_sides())
        except ValueError:
            corners = tuple(index[s] for s in self._turning_sides())
        return Net(tuple(nxt), tuple(opp), tuple(color), tuple(outer), corners, tuple(pdart))

    def _turning_sides(self):
        cyc = self.boundary_cycle()
        return [cyc[t] for t in range(len(cyc)) if self.color(cyc[t - 1]) != self.color(cyc[t])]

    @classmethod
    def from_net(cls, net, part=None):
        if net.pdart is None:
            raise ValueError("net carries no partition-face data")
        cx = cls(part)
        where = {}
        for f, cyc in enumerate(net.faces):
            pf = net.pdart[cyc[0]][0]
            cx.faces.append(pf)
            for d in cyc:
                where[d] = (f, net.pdart[d][1])
        for d, side in where.items():
            o = net.opp[d]
            if o in where:
                cx.glue[side] = where[o]
        return cx

    def restricted(self, keep):
        """Sub-complex on the faces in ``keep`` (renumbered in order)."""
        keep = sorted(keep)
        remap = {f: t for t, f in enumerate(keep)}
        cx = Complex(self.part)
        cx.faces = [self.faces[f] for f in keep]
        for (f, i), (g, j) in self.glue.items():
            if f in remap and g in remap:
                cx.glue[(remap[f], i)] = (remap[g], j)
        return cx


def complement_mask(net, part=None):
    """Which corner angles are complements of the matching angles of F.

    A corner of order k is surrounded by 2k+1 sectors whose angles
    alternate between a fixed angle of F and its complement; the first
    and last sector share the fractional part of the corner's angle.
    """
    part = part or reference_partition()
    ref = part.faces[part.f_face]
    mask = []
    for d in net.corners:
        pf, i = net.pdart[d]
        vs = part.face_verts[pf]
        ci, cj = part.vertex_circles[vs[i]]
        key = part.faces[pf]
        mask.append(int(key[ci] * key[cj] != ref[ci] * ref[cj]))
    return tuple(mask)


# --- SVG ------------------------------------------------------------------


def tutte_layout(net):
    """Boundary on a circle with corners at the diagonals, interior by barycentres."""
    nv = net.n_vertices()
    bverts = [net.tail(d) for d in net.boundary]
    pos = np.zeros((nv, 2))
    fixed = np.zeros(nv, dtype=bool)
    nb = len(bverts)
    corner_pos = {v: t for t, v in enumerate(bverts) if v in net.corner_vertices}
    ticks = sorted(corner_pos.values())
    angles = {}
    for k, t0 in enumerate(ticks):
        t1 = ticks[(k + 1) % len(ticks)] + (nb if k + 1 == len(ticks) else 0)
        a0 = np.pi * (0.75 - 0.5 * k)
        a1 = a0 - 0.5 * np.pi
        for t in range(t0, t1):
            frac = (t - t0) / (t1 - t0)
            angles[bverts[t % nb]] = a0 + (a1 - a0) * frac
    for v, a in angles.items():
        pos[v] = (np.cos(a), np.sin(a))
        fixed[v] = True
    free = [v for v in range(nv) if not fixed[v]]
    if free:
        idx = {v: t for t, v in enumerate(free)}
        lap = np.zeros((len(free), len(free)))
        rhs = np.zeros((len(free), 2))
        for v in free:
            for d in net.vertex_darts[v]:
                w = net.head(d)
                lap[idx[v], idx[v]] += 1
                if fixed[w]:
                    rhs[idx[v]] += pos[w]
                else:
                    lap[idx[v], idx[w]] -= 1
        sol = np.linalg.solve(lap, rhs)
        for v in free:
            pos[v] = sol[idx[v]]
    return pos


def net_svg(net, size=420, title=None):
    pos = tutte_layout(net)
    margin = 30
    scale = (size - 2 * margin) / 2.0

    def xy(v):
        return margin + scale * (pos[v][0] + 1), margin + scale * (1 - pos[v][1])

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        parts.append(f'<title>{title}</title>')
    for cyc in net.faces:
        pts = " ".join("{:.2f},{:.2f}".format(*xy(net.tail(d))) for d in cyc)
        fill = "#dde7f3" if len(cyc) == 3 else "#f6f1e4"
        parts.append(f'<polygon points="{pts}" fill="{fill}" stroke="none"/>')
    for d in range(net.size):
        if d > net.opp[d]:
            continue
        (x1, y1), (x2, y2) = xy(net.tail(d)), xy(net.head(d))
        style = NET_STROKES[net.color[d] - 1]
        parts.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" {style}/>')
    for k, v in enumerate(net.corner_vertices):
        x, y = xy(v)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="black"/>')
        parts.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="13" font-family="sans-serif">a{k}</text>')
    parts.append("</svg>")
    return "\n".join(parts)

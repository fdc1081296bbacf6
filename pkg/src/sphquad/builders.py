"""Constructive generation of nets: seeds, extensions, P_mu, digons, enumeration."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from functools import lru_cache

from .errors import (
    ForbiddenSide,
    LabelSyntaxError,
    LongSide,
    NoEligibleFace,
    NotOrderZero,
    SideTooLong,
    UnknownVariant,
)
from .netcore import (
    Complex,
    Net,
    canonical_form,
    decompose_arcs,
    is_isomorphic,
    side_color,
)

log = logging.getLogger(__name__)

FAMILIES = ("P", "X", "X'", "Z", "Z'", "R", "S", "U", "V", "V'", "W")

# Face sign keys (relative to the reference face F = ++++) of the seed nets.
SEED_KEYS = {
    "P0": ((1, 1, 1, 1),),
    "X'00": ((-1, -1, -1, 1), (1, -1, -1, -1), (1, -1, -1, 1)),
    "X'bar00": ((-1, -1, 1, -1), (-1, 1, -1, -1), (-1, 1, 1, -1)),
    "Z'00": (
        (-1, -1, -1, -1),
        (-1, -1, -1, 1),
        (-1, -1, 1, -1),
        (-1, -1, 1, 1),
        (-1, 1, -1, -1),
        (1, -1, -1, -1),
        (1, 1, -1, -1),
    ),
}

BASE_ALIASES = {
    "P0": "P0",
    "X'00": "X'00",
    "X′00": "X'00",
    "X'bar00": "X'bar00",
    "Xbar'00": "X'bar00",
    "X̄′00": "X'bar00",
    "Z'00": "Z'00",
    "Z′00": "Z'00",
}

# Circle permutations (0-based) of the two reflections and the half-turn.
MIRROR_0 = ((1, 0, 3, 2), True)  # fixes a0 and a2, swaps a1 and a3
MIRROR_2 = ((3, 2, 1, 0), True)  # swaps a0 and a2
ROT_180 = ((2, 3, 0, 1), False)


# --- labels ------------------------------------------------------------------


@dataclass(frozen=True)
class Digon:
    circle: int
    kind: str
    count: int = 1

    def text(self):
        suffix = f" x{self.count}" if self.count != 1 else ""
        return f"{self.kind}@side{self.circle}{suffix}"


@dataclass(frozen=True)
class NetLabel:
    family: str
    k: int = 0
    l: int = 0
    barred: bool = False
    mu: int = 0
    digons: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise LabelSyntaxError(f"unknown family {self.family!r}")

    @property
    def core(self):
        return replace(self, mu=0, digons=())

    def corner_sum(self):
        """Sum of corner orders of the primitive core."""
        if self.family == "P":
            return 0
        extra = {"X'": 1, "Z": 1, "Z'": 2}.get(self.family, 0)
        return self.k + self.l + extra

    def check_range(self):
        f, k, l = self.family, self.k, self.l
        ok = {
            "P": k == 0 and l == 0,
            "X": k >= 0 and l >= 0 and k + l >= 1,
            "X'": k >= 0 and l >= 0,
            "Z": k >= 0 and l >= 0 and k + l >= 1,
            "Z'": k >= 0 and l >= 0,
            "R": k >= l >= 1,
            "S": k >= l >= 1,
            "U": k >= 1 and l >= 1,
            "V": k >= 1 and l >= 1,
            "V'": k >= 2 and l >= 1,
            "W": k >= 2 and l >= 2,
        }[f]
        if not ok:
            raise LabelSyntaxError(f"parameters ({k},{l}) out of range for family {f}")
        if self.mu and f in ("R", "S"):
            raise NoEligibleFace(f"family {f} has no face at two opposite corners")
        if self.mu < 0:
            raise LabelSyntaxError("mu must be non-negative")

    def __str__(self):
        if self.family == "P":
            head = f"P{self.mu}"
        else:
            head = f"{self.family}{'bar' if self.barred else ''}[{self.k},{self.l}]"
            if self.mu:
                head += f" mu={self.mu}"
        return " + ".join([head] + [d.text() for d in self.digons])


_HEAD = re.compile(r"^(?P<fam>[PXZRSUVW])(?P<p1>['′]?)(?P<bar>bar|̄)?(?P<p2>['′]?)\s*(?:\[\s*(?P<k>\d+)\s*,\s*(?P<l>\d+)\s*\]|(?P<kl>\d{2}))?(?:\s+mu\s*=\s*(?P<mu>\d+))?$")
_DIGON = re.compile(r"^(?P<kind>D15|D24)\s*@\s*side\s*(?P<c>[1-4])(?:\s*x\s*(?P<n>\d+))?$")


def parse_label(text):
    """Parse labels such as ``X'[2,1] mu=1 + D15@side3 x2``, ``Zbar[0,1]`` or ``P0``."""
    parts = [p.strip() for p in text.strip().split("+")]
    if not parts or not parts[0]:
        raise LabelSyntaxError("empty label")
    head = parts[0]
    m = re.fullmatch(r"P(\d+)", head)
    if m:
        label = NetLabel("P", mu=int(m.group(1)))
    else:
        m = _HEAD.match(head)
        if not m:
            raise LabelSyntaxError(f"cannot parse {head!r}")
        fam = m.group("fam")
        if m.group("fam") == "P":
            raise LabelSyntaxError("write P_mu as P0, P1, ...")
        if m.group("p1") and m.group("p2"):
            raise LabelSyntaxError("prime given twice")
        if m.group("p1") or m.group("p2"):
            fam += "'"
        if m.group("kl"):
            k, l = int(m.group("kl")[0]), int(m.group("kl")[1])
        elif m.group("k") is not None:
            k, l = int(m.group("k")), int(m.group("l"))
        else:
            raise LabelSyntaxError(f"missing [k,l] in {head!r}")
        if fam not in FAMILIES:
            raise LabelSyntaxError(f"unknown family {fam!r}")
        label = NetLabel(fam, k, l, bool(m.group("bar")), int(m.group("mu") or 0))
    digons = []
    for p in parts[1:]:
        m = _DIGON.match(p)
        if not m:
            raise LabelSyntaxError(f"cannot parse digon {p!r}")
        digons.append(Digon(int(m.group("c")), m.group("kind"), int(m.group("n") or 1)))
    return replace(label, digons=tuple(digons))


def format_label(label):
    return str(label)


# --- low-level complex operations ----------------------------------------------


def _as_complex(net):
    if isinstance(net, Complex):
        return net.copy()
    return Complex.from_net(net)


def _lunes(cx, m_sides, cm, cl, q, n):
    """Glue ``n`` alternating lunes of circles ``cm``, ``cl`` across ``m_sides``."""
    part = cx.part
    f0 = cx.faces[m_sides[0][0]]
    sign = -part.face_sign(f0, cm)
    tau = part.vertex_sign(q, cl)
    free = list(m_sides)
    for _ in range(n):
        region = cx.add_region(part.faces_where(**{f"c{cm}": sign, f"c{cl}": tau}))
        for s in free:
            cx.glue_across(s, region)
        free = [s for f in region.values() for s in cx.sides_of(f) if cx.is_free(s) and cx.color(s) == cm]
        sign = -sign
    return free


def _extend(cx, p, side, n):
    if n == 0:
        return cx
    corners = cx.corner_sides()
    if cx.corner_order(p, corners):
        raise NotOrderZero(f"corner a{p} has positive order")
    if side == "out":
        lk, mk = p, (p - 1) % 4
        q = cx.pvert(corners[mk])
    elif side == "in":
        lk, mk = (p - 1) % 4, p
        q = cx.pvert(corners[(p + 1) % 4])
    else:
        raise ValueError("side must be 'in' or 'out'")
    path = cx.side_path(mk, corners)
    if len(path) > 2:
        raise SideTooLong(f"side {mk} adjacent to a{p} has order {len(path)}")
    _lunes(cx, path, cx.color(path[0]), cx.color(corners[lk]), q, n)
    return cx


def _side_by_circle(cx, circle, corners=None):
    corners = corners or cx.corner_sides()
    for k in range(4):
        if side_color(k) == circle:
            return k
    raise ValueError(f"no side on circle C{circle}")


def _attach_digon(cx, circle, count, strict=True):
    corners = cx.corner_sides()
    k = _side_by_circle(cx, circle, corners)
    path = cx.side_path(k, corners)
    m = len(path)
    if m >= 6:
        raise LongSide(f"side on C{circle} has order {m}")
    if m % 3 == 0:
        raise ForbiddenSide(f"side on C{circle} has order {m}, divisible by 3")
    part = cx.part
    c = circle - 1
    sign = -part.face_sign(cx.faces[path[0][0]], c)
    free = path
    for _ in range(count):
        region = cx.add_region(part.faces_where(**{f"c{c}": sign}))
        for s in free:
            cx.glue_across(s, region)
        free = [s for f in region.values() for s in cx.sides_of(f) if cx.is_free(s)]
        sign = -sign
    return "D15" if m % 2 else "D24"


def _eligible_face(net):
    cv = net.corner_vertices
    for f, cyc in enumerate(net.faces):
        if len(cyc) != 4:
            continue
        for t in range(4):
            a, b = net.tail(cyc[t]), net.tail(cyc[(t + 2) % 4])
            if a in cv and b in cv and (cv.index(a) - cv.index(b)) % 4 == 2:
                return f, net.pdart[cyc[t]][1]
    return None


def _insert_pmu(cx, mu):
    if mu == 0:
        return cx
    net = cx.freeze()
    found = _eligible_face(net)
    if found is None:
        raise NoEligibleFace("no quadrilateral face touches two opposite corners")
    g, i0 = found
    part = cx.part
    pf = cx.faces[g]
    u_sides = [(g, i0 % 4), (g, (i0 + 1) % 4)]
    w_idx = [(i0 + 2) % 4, (i0 + 3) % 4]
    old = [cx.unglue(s) for s in u_sides]
    rest = [f for f in range(len(part.faces)) if f != pf]
    prev = g
    for _ in range(mu):
        region = cx.add_region(rest)
        for i in (i0 % 4, (i0 + 1) % 4):
            cx.glue_across((prev, i), region)
        new = cx.add_face(pf)
        for i in w_idx:
            cx.glue_across((new, i), region)
        prev = new
    for i, partner in zip((i0 % 4, (i0 + 1) % 4), old):
        if partner is not None:
            cx.glue_pair((prev, i), partner)
    return cx


# --- public builders -----------------------------------------------------------


@lru_cache(maxsize=None)
def _seed_complex(which):
    return Complex.from_keys(SEED_KEYS[which])


def base_net(which="P0"):
    """One of the four seed nets: ``P0``, ``X'00``, ``X'bar00``, ``Z'00``."""
    key = BASE_ALIASES.get(which)
    if key is None:
        raise UnknownVariant(f"unknown seed {which!r}")
    return _seed_complex(key).freeze()


def extend_side(net, p, side, n):
    """Extend a side of the net beyond the order-0 corner ``a_p`` by ``T_n``.

    ``side='out'`` extends the side leaving ``a_p`` (the triangle sits on
    the side entering ``a_p``); ``side='in'`` extends the entering side.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return _extend(_as_complex(net), p, side, n).freeze()


def insert_pmu(net, mu):
    if mu < 1:
        raise ValueError("mu must be positive")
    return _insert_pmu(_as_complex(net), mu).freeze()


def attach_digon(net, circle, k=1):
    """Attach a chain of ``k`` hemispheres to the side lying on circle ``C_circle``."""
    if k < 1:
        raise ValueError("k must be positive")
    cx = _as_complex(net)
    _attach_digon(cx, circle, k)
    return cx.freeze()


def digon_kind(net, circle):
    k = next(k for k in range(4) if side_color(k) == circle)
    m = net.side_orders()[k]
    if m >= 6:
        raise LongSide(f"side on C{circle} has order {m}")
    if m % 3 == 0:
        raise ForbiddenSide(f"side on C{circle} has order {m}")
    return "D15" if m % 2 else "D24"


def mirror(net, axis=0):
    """Reflection fixing ``a0`` and ``a2`` (axis 0) or swapping them (axis 2)."""
    perm, rev = {0: MIRROR_0, 2: MIRROR_2}[axis]
    return _as_complex(net).transformed(perm, rev).freeze()


def rotate180(net):
    perm, rev = ROT_180
    return _as_complex(net).transformed(perm, rev).freeze()


_TRIANGLE_HOSTS = {
    0: ("P0", 0, "out"),
    1: ("P0", 2, "in"),
    2: ("X'00", 2, "in"),
    3: ("X'bar00", 0, "out"),
}


def triangle_net(kind, n, variant=0):
    """Net of ``T_n`` or ``E_n``.

    ``T_n`` is a stack of ``n`` lunes; the variant picks which lune comes
    first and whether the integer corner sits one or two edges from the
    base.  ``E_n`` is a triangular face of the partition whose side is
    extended at one corner, the variant picking which side.
    Corners are listed counterclockwise; the first is the corner of order ``n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if kind == "T":
        if variant not in _TRIANGLE_HOSTS:
            raise UnknownVariant(f"T_n has variants 0-3, got {variant}")
        seed, p, side = _TRIANGLE_HOSTS[variant]
        cx = _seed_complex(seed).copy()
        host = len(cx.faces)
        corners = cx.corner_sides()
        mk = (p - 1) % 4 if side == "out" else p
        q = cx.pvert(corners[mk] if side == "out" else corners[(p + 1) % 4])
        _extend(cx, p, side, n)
        sub = cx.restricted(range(host, len(cx.faces)))
        return _triangle_freeze(sub, q)
    if kind == "E":
        if variant not in (0, 1):
            raise UnknownVariant(f"E_n has variants 0-1, got {variant}")
        part = Complex().part
        tri = part.face_index[(1, -1, 1, 1)]
        cx = Complex(part)
        f = cx.add_face(tri)
        # variant 0: M is side 0 (q = vertex 0); variant 1: M is side 0 reversed (q = vertex 1)
        vs = part.face_verts[tri]
        q = vs[0] if variant == 0 else vs[1]
        cm = part.side_circle[tri][0]
        lk = 1 if variant == 0 else 2
        cl = part.side_circle[tri][lk]
        _lunes(cx, [(f, 0)], cm, cl, q, n)
        return _triangle_freeze(cx, q)
    raise UnknownVariant(f"unknown triangle kind {kind!r}")


def _triangle_freeze(cx, q):
    cyc = cx.boundary_cycle()
    turning = [s for t, s in enumerate(cyc) if cx.color(cyc[t - 1]) != cx.color(s)]
    qside = [s for s in cyc if cx.pvert(s) == q]
    picks = sorted(set(turning) | set(qside[:1]), key=cyc.index)
    if qside and qside[0] in picks:
        r = picks.index(qside[0])
        picks = picks[r:] + picks[:r]
    net = cx.freeze()
    # freeze numbers darts face by face in complex order
    darts = {}
    for f in range(len(cx.faces)):
        for i in range(cx.size(f)):
            darts[(f, i)] = len(darts)
    return Net(net.next, net.opp, net.color, net.outer, tuple(darts[s] for s in picks), net.pdart)


# --- families ---------------------------------------------------------------------


def _family_complex(fam, k, l):
    if fam == "P":
        return _seed_complex("P0").copy()
    if fam in ("X", "X'", "Z", "Z'"):
        seed = {"X": "P0", "X'": "X'00", "Z": "X'bar00", "Z'": "Z'00"}[fam]
        cx = _seed_complex(seed).copy()
        _extend(cx, 0, "out", k)
        return _extend(cx, 2, "in", l)
    if fam == "R":
        cx = _seed_complex("P0").copy()
        _extend(cx, 0, "out", k)
        return _extend(cx, 1, "in", l)
    if fam == "S":
        cx = _seed_complex("X'00").copy()
        _extend(cx, 0, "out", k - 1)
        return _extend(cx, 1, "in", l)
    if fam == "U":
        cx = _seed_complex("P0").copy()
        _extend(cx, 0, "out", k)
        return _extend(cx, 2, "out", l)
    if fam == "V":
        cx = _seed_complex("X'bar00").copy()
        _extend(cx, 0, "out", k)
        return _extend(cx, 2, "out", l - 1)
    if fam == "W":
        cx = _seed_complex("Z'00").copy()
        _extend(cx, 0, "out", k - 1)
        return _extend(cx, 2, "out", l - 1)
    if fam == "V'":
        perm, rev = ROT_180
        return _family_complex("V", l, k).transformed(perm, rev)
    raise ValueError(fam)


def _labeled_complex(label):
    fam, k, l = label.family, label.k, label.l
    if label.barred:
        if fam == "Z'":
            perm, rev = MIRROR_0
            cx = _family_complex(fam, l, k).transformed(perm, rev)
        elif fam in ("U", "V", "V'", "W"):
            perm, rev = MIRROR_2
            cx = _family_complex(fam, k, l).transformed(perm, rev)
        else:
            perm, rev = MIRROR_0
            cx = _family_complex(fam, k, l).transformed(perm, rev)
    else:
        cx = _family_complex(fam, k, l)
    cx = _insert_pmu(cx, label.mu)
    for d in label.digons:
        got = _attach_digon(cx, d.circle, d.count)
        if got != d.kind:
            raise LabelSyntaxError(f"side on C{d.circle} takes {got}, not {d.kind}")
    return cx


def build_net(label):
    """Construct the net named by a label (string or NetLabel)."""
    if isinstance(label, str):
        label = parse_label(label)
    label.check_range()
    return _labeled_complex(label).freeze()


def _labels_up_to(bound):
    out = [NetLabel("P")]
    ranges = {
        "X": (0, 0, 1),
        "X'": (0, 0, 0),
        "Z": (0, 0, 1),
        "Z'": (0, 0, 0),
        "R": (1, 1, 2),
        "S": (1, 1, 2),
        "U": (1, 1, 2),
        "V": (1, 2, 3),
        "V'": (2, 1, 3),
        "W": (2, 2, 4),
    }
    for fam in FAMILIES[1:]:
        kmin, lmin, smin = ranges[fam]
        for barred in (False, True):
            for k in range(kmin, bound + 1):
                for l in range(lmin, bound + 1):
                    lab = NetLabel(fam, k, l, barred)
                    if k + l < smin or lab.corner_sum() > bound:
                        continue
                    if fam in ("R", "S") and k < l:
                        continue
                    out.append(lab)
    return out


@lru_cache(maxsize=None)
def _enumerate(bound):
    seen = {}
    out = []
    for lab in _labels_up_to(bound):
        net = build_net(lab)
        key = canonical_form(net)
        if key in seen:
            log.debug("%s duplicates %s", lab, seen[key])
            continue
        seen[key] = lab
        out.append((lab, net))
    return tuple(out)


def enumerate_primitive(max_corner_order_sum):
    """All primitive nets with corner-order sum up to the bound, one label each."""
    if max_corner_order_sum < 0:
        raise ValueError("bound must be non-negative")
    return list(_enumerate(max_corner_order_sum))


@lru_cache(maxsize=None)
def _catalogue(bound, mode):
    table = {}
    for lab, net in _enumerate(bound):
        table.setdefault(canonical_form(net, mode), lab)
    return table


def classify_primitive(net, mode="labeled"):
    """Label of a primitive net, or None when it is not in the catalogue."""
    bound = sum(net.corner_orders())
    return _catalogue(bound, mode).get(canonical_form(net, mode))


# --- reductions ---------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    core: Net
    core_label: NetLabel | None
    mode: str
    digons: tuple

    @property
    def label(self):
        if self.core_label is None:
            return None
        return replace(self.core_label, digons=self.digons)


def _cut(net, arc):
    """Split off the digon between an adjacent-corner diagonal and its side."""
    i, j = arc.end_corners
    k = i if (j - i) % 4 == 1 else j
    side = net.sides[k]
    wall = set(arc.darts) | {net.opp[d] for d in arc.darts}
    seed = net.face_of[side[0]]
    piece = {seed}
    stack = [seed]
    while stack:
        f = stack.pop()
        for d in net.faces[f]:
            o = net.opp[d]
            if d in wall or net.outer[o]:
                continue
            g = net.face_of[o]
            if g not in piece:
                piece.add(g)
                stack.append(g)
    cx = Complex.from_net(net)
    core = cx.restricted(set(range(len(net.faces))) - piece).freeze()
    circle = net.color[side[0]]
    kind = "D15" if arc.order % 2 else "D24"
    return core, Digon(circle, kind, len(piece) // 7)


def _merge(digons):
    acc = {}
    for d in digons:
        kind, count = acc.get(d.circle, (d.kind, 0))
        acc[d.circle] = (kind, count + d.count)
    return tuple(Digon(c, kd, n) for c, (kd, n) in sorted(acc.items()))


def _reductions(net):
    diagonals = [a for a in decompose_arcs(net).arcs if a.kind == "diagonal" and (a.end_corners[0] - a.end_corners[1]) % 4 in (1, 3)]
    if not diagonals:
        return [(net, ())]
    out = []
    for arc in diagonals:
        core, dg = _cut(net, arc)
        for c2, more in _reductions(core):
            out.append((c2, more + (dg,)))
    return out


def classify_core(net):
    """Label an irreducible net, trying corner-preserving equivalence before dihedral."""
    for mode in ("labeled", "unlabeled"):
        lab = classify_primitive(net, mode)
        if lab is not None:
            return lab, mode
    total = sum(net.corner_orders())
    for mu in range(1, total // 4 + 1):
        for lab, prim in _enumerate(total - 4 * mu):
            if lab.family in ("R", "S") or sum(prim.corner_orders()) != total - 4 * mu:
                continue
            try:
                cand = insert_pmu(prim, mu)
            except NoEligibleFace:
                continue
            for mode in ("labeled", "unlabeled"):
                if is_isomorphic(net, cand, mode)[0]:
                    return replace(lab, mu=mu), mode
    return None, None


def reduction_witnesses(net):
    """Every way of writing the net as an irreducible core plus digon chains."""
    seen = {}
    for core, digons in _reductions(net):
        merged = _merge(digons)
        key = (canonical_form(core), merged)
        if key in seen:
            continue
        lab, mode = classify_core(core)
        seen[key] = Decomposition(core, lab, mode, merged)
    return list(seen.values())


def classify(net):
    """Primary label of a net: first decomposition, core labelled."""
    dec = reduction_witnesses(net)
    best = sorted(dec, key=lambda d: (d.core_label is None, d.mode != "labeled", str(d.label)))[0]
    return best.label

"""Chains of quadrilaterals joined through triple intersections at fixed angles."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .angles import (
    DIRECTION_PAIRS,
    DIRECTIONS,
    apply_mask,
    complement_mask_for,
    degeneration_directions,
    in_pyramid,
    net_feasible,
    pyramid_witness,
)
from .builders import NetLabel, build_net, digon_kind, parse_label
from .errors import (
    BoundaryTie,
    DirectionBlocked,
    ForbiddenSide,
    LongSide,
    TargetInfeasible,
    UncataloguedLabel,
)
from .geometry import ADJACENT_KEYS, DIRECTION_TRIPLES, reference_partition

ZERO = "modulus->0"
INF = "modulus->inf"
QUADRUPLE = "quadruple-boundary"
OPEN = "non-spherical-limit"


def triple_name(direction):
    return "".join(f"C{c + 1}" for c in DIRECTION_TRIPLES[direction])


def _pair_mask(direction):
    i, j = DIRECTION_PAIRS[direction]
    return tuple(int(k in (i, j)) for k in range(4))


def direction_between(mask1, mask2):
    diff = tuple(x ^ y for x, y in zip(mask1, mask2))
    for name in DIRECTIONS:
        if diff == _pair_mask(name):
            return name
    return None


def transition(fixed, direction):
    """Fixed angles after passing through the triple intersection in ``direction``."""
    abcd = tuple(fixed.abcd if hasattr(fixed, "abcd") else fixed)
    if direction not in DIRECTION_PAIRS:
        raise ValueError(f"unknown direction {direction!r}")
    if direction not in degeneration_directions(*abcd):
        raise DirectionBlocked(f"{direction} is not reachable from {abcd}")
    out = apply_mask(abcd, _pair_mask(direction))
    if not in_pyramid(*out):
        raise TargetInfeasible(f"{out} is outside the pyramid")
    return out


# --- degeneration of a net at a triple intersection -----------------------------------


def contraction_limit(net, direction, part=None):
    """What happens to a quadrilateral with this net when ``direction`` is reached.

    Every net edge lying on the contracted triangle (or its antipode) shrinks
    to a point.  Returns ``ZERO`` when the sides on C1 and C3 meet, ``INF``
    when the sides on C2 and C4 meet, and ``None`` when the limit is a
    non-degenerate quadrilateral.
    """
    part = part or reference_partition()
    out = set()
    for sign in (1, -1):
        key = tuple(sign * s for s in ADJACENT_KEYS[direction])
        tri = set(part.face_verts[part.face_index[key]])
        parent = list(range(net.n_vertices()))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in range(net.size):
            if net.pdart[d] is None:
                continue
            pf, i = net.pdart[d]
            vs = part.face_verts[pf]
            if {vs[i], vs[(i + 1) % len(vs)]} <= tri:
                parent[find(net.tail(d))] = find(net.head(d))
        classes = []
        for side in net.sides:
            classes.append({find(net.tail(e)) for e in side} | {find(net.head(side[-1]))})
        by_color = {net.color[s[0]]: c for s, c in zip(net.sides, classes)}
        if by_color[1] & by_color[3]:
            out.add(ZERO)
        if by_color[2] & by_color[4]:
            out.add(INF)
    if len(out) > 1:
        return OPEN
    return out.pop() if out else None


def end_kind_rule(direction):
    """Kind of degeneration by the circle left out of the triple."""
    left_out = ({0, 1, 2, 3} - set(DIRECTION_TRIPLES[direction])).pop() + 1
    return ZERO if left_out % 2 == 0 else INF


# --- catalogued diagrams -------------------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    name: str
    integer: tuple
    nodes: tuple
    edges: tuple
    uncertain: tuple = ()


def _lab(text):
    return parse_label(text)


@lru_cache(maxsize=None)
def _x_ladder(n, barred=False):
    b = "bar" if barred else ""
    seq = []
    for m in range(n):
        seq.append(f"X{b}[{m},{n - m}]")
        seq.append(f"X'{b}[{m},{n - m - 1}]")
    seq.append(f"X{b}[{n},0]")
    nodes = tuple(_lab(s) for s in seq)
    edges = tuple(zip(nodes, nodes[1:]))
    integer = (0, n, 0, 0) if barred else (0, 0, 0, n)
    return Diagram(f"X{b}{n}", integer, nodes, edges)


def _static(name, integer, edges, extra=(), uncertain=()):
    pairs = tuple((_lab(a), _lab(b)) for a, b in edges)
    nodes = []
    for a, b in pairs:
        for x in (a, b):
            if x not in nodes:
                nodes.append(x)
    nodes.extend(_lab(x) for x in extra)
    return Diagram(name, integer, tuple(nodes), pairs, tuple(_lab(x) for x in uncertain))


@lru_cache(maxsize=None)
def static_diagrams():
    return (
        _static("RS", (0, 0, 1, 1), [("R[1,1]", "S[1,1]")], extra=["P0 + D15@side4"], uncertain=["P0 + D15@side4"]),
        _static(
            "Z'00",
            (0, 1, 0, 1),
            [
                ("Z'[0,0]", "Z[1,0]"),
                ("Z'[0,0]", "Zbar[0,1]"),
                ("Z'[0,0]", "Z[0,1]"),
                ("Z'[0,0]", "Zbar[1,0]"),
                ("Z[1,0]", "U[1,1]"),
                ("Zbar[0,1]", "U[1,1]"),
                ("Z[0,1]", "Ubar[1,1]"),
                ("Zbar[1,0]", "Ubar[1,1]"),
            ],
        ),
        _static(
            "Z11",
            (0, 1, 0, 2),
            [
                ("Z[1,1]", "Z'[1,0]"),
                ("Z[1,1]", "Z'[0,1]"),
                ("Z'[1,0]", "V[2,1]"),
                ("Z'[1,0]", "V'[2,1]"),
                ("Z'[0,1]", "Vbar[2,1]"),
                ("Z'[0,1]", "V'bar[2,1]"),
                ("V[2,1]", "U[2,1]"),
                ("V'[2,1]", "U[2,1]"),
                ("Vbar[2,1]", "Ubar[2,1]"),
                ("V'bar[2,1]", "Ubar[2,1]"),
            ],
        ),
        _static(
            "Z'11",
            (0, 1, 0, 3),
            [
                ("Z'[1,1]", "Z[2,1]"),
                ("Z'[1,1]", "Z[1,2]"),
                ("Z[2,1]", "Z'[2,0]"),
                ("Z[1,2]", "Z'[0,2]"),
                ("Z'[2,0]", "V[3,1]"),
                ("Z'[2,0]", "V'[3,1]"),
                ("Z'[0,2]", "Vbar[3,1]"),
                ("Z'[0,2]", "V'bar[3,1]"),
                ("V[3,1]", "U[3,1]"),
                ("V'[3,1]", "U[3,1]"),
                ("Vbar[3,1]", "Ubar[3,1]"),
                ("V'bar[3,1]", "Ubar[3,1]"),
            ],
        ),
        _static(
            "W22",
            (0, 2, 0, 2),
            [("W[2,2]", "V[2,2]"), ("W[2,2]", "V'[2,2]"), ("V[2,2]", "U[2,2]"), ("V'[2,2]", "U[2,2]")],
        ),
    )


def diagrams_for(integer):
    integer = tuple(integer)
    out = [d for d in static_diagrams() if d.integer == integer]
    if integer[:3] == (0, 0, 0) and integer[3] >= 1:
        out.append(_x_ladder(integer[3]))
    if integer[0] == integer[2] == integer[3] == 0 and integer[1] >= 1:
        out.append(_x_ladder(integer[1], barred=True))
    return out


def _family_token(label):
    return label.family + ("bar" if label.barred else "")


def _in_scope(diagram, scope):
    if scope is None:
        return True
    tokens = set(scope)
    if diagram.name in tokens:
        return True
    return any(_family_token(n) in tokens or n.family in tokens and not n.barred for n in diagram.nodes)


def _diagram_of(label):
    core = label.core
    if core.family in ("X", "X'"):
        n = core.k + core.l + (1 if core.family == "X'" else 0)
        cands = [_x_ladder(n, core.barred)]
    else:
        cands = list(static_diagrams())
    for d in cands:
        if core in d.nodes:
            return d
    raise UncataloguedLabel(f"{label} is not in any implemented chain diagram")


# --- feasibility and neighbours -------------------------------------------------------


def _digon_blocked(target, label):
    if not label.digons:
        return False
    net = build_net(target.core)
    for dg in label.digons:
        try:
            digon_kind(net, dg.circle)
        except (LongSide, ForbiddenSide):
            return True
    return False


def label_feasible(label, angles):
    ok, _ = net_feasible(label, angles)
    return ok


def net_neighbors(label, angles):
    """Catalogued neighbours reachable through one triple intersection at these angles."""
    if isinstance(label, str):
        label = parse_label(label)
    diagram = _diagram_of(label)
    if not label_feasible(label, angles):
        return []
    core = label.core
    out = []
    for a, b in diagram.edges:
        if core not in (a, b):
            continue
        other = b if core == a else a
        target = NetLabel(other.family, other.k, other.l, other.barred, label.mu, label.digons)
        if not label_feasible(target, angles):
            continue
        if _digon_blocked(other, label):
            continue
        direction = direction_between(complement_mask_for(core), complement_mask_for(other))
        out.append((target, direction))
    return out


# --- chains -----------------------------------------------------------------------------


@dataclass(frozen=True)
class EndState:
    kind: str
    direction: str | None
    net: NetLabel

    def to_dict(self):
        return {"kind": self.kind, "direction": self.direction, "net": str(self.net)}


@dataclass
class Chain:
    nets: list
    transitions: list
    ends: tuple = ()
    diagram: str = ""
    certain: bool = True
    free: list = field(default_factory=list)

    @property
    def length(self):
        return len(self.nets) - 1

    def degenerate_ends(self):
        return [e.kind for e in self.ends if e.kind in (ZERO, INF)]

    def to_dict(self):
        return {
            "nets": [str(n) for n in self.nets],
            "length": self.length,
            "transitions": [{"direction": d, "triple": t} for d, t in self.transitions],
            "ends": [e.to_dict() for e in self.ends],
            "diagram": self.diagram,
            "certain": self.certain,
        }


def _free_directions(label, angles, used):
    fixed = apply_mask(angles.frac, complement_mask_for(label))
    a, b, c, d = fixed
    out = []
    if a + b == c + d:
        out.append((None, QUADRUPLE))
    else:
        out.append(("bottom" if a + b > c + d else "top", None))
    if a + d == b + c:
        out.append((None, QUADRUPLE))
    else:
        out.append(("left" if a + d > b + c else "right", None))
    return [(dname, tie) for dname, tie in out if dname is None or dname not in used]


@lru_cache(maxsize=None)
def _limit_of(label, direction):
    return contraction_limit(build_net(label), direction)


def _end_state(label, direction, tie):
    if tie is not None:
        return EndState(QUADRUPLE, None, label)
    return EndState(_limit_of(label, direction) or OPEN, direction, label)


def _order_path(nodes, adj):
    if len(nodes) == 1:
        return list(nodes)
    ends = [n for n in nodes if len(adj[n]) == 1]
    if len(ends) != 2:
        raise AssertionError(f"chain component is not a path: {sorted(map(str, nodes))}")
    path = [ends[0]]
    prev = None
    while len(path) < len(nodes):
        nxt = next(m for m, _ in adj[path[-1]] if m != prev)
        prev = path[-1]
        path.append(nxt)
    return path


def _orient(chain):
    (d0, e0), (d1, e1) = chain.free
    key0 = (d0 or "~", str(chain.nets[0]))
    key1 = (d1 or "~", str(chain.nets[-1]))
    if key1 < key0:
        chain.nets.reverse()
        chain.transitions.reverse()
        chain.free.reverse()
    chain.ends = tuple(e for _, e in chain.free)
    return chain


def build_chains(angles, scope=None):
    """Split the feasible catalogued nets with these angles into maximal chains."""
    chains = []
    for diagram in diagrams_for(angles.integer):
        if not _in_scope(diagram, scope):
            continue
        feasible = [n for n in diagram.nodes if label_feasible(n, angles)]
        adj = {n: [] for n in feasible}
        for a, b in diagram.edges:
            if a in adj and b in adj:
                dname = direction_between(complement_mask_for(a), complement_mask_for(b))
                adj[a].append((b, dname))
                adj[b].append((a, dname))
        seen = set()
        for start in feasible:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y, _ in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            path = _order_path(comp, adj)
            trans = []
            for x, y in zip(path, path[1:]):
                dname = next(dd for m, dd in adj[x] if m == y)
                trans.append((dname, triple_name(dname)))
            free = []
            if len(path) == 1:
                for dname, tie in _free_directions(path[0], angles, set()):
                    free.append((dname, _end_state(path[0], dname, tie)))
            else:
                for node in (path[0], path[-1]):
                    used = {dd for _, dd in adj[node]}
                    opts = _free_directions(node, angles, used)
                    dname, tie = opts[0]
                    free.append((dname, _end_state(node, dname, tie)))
            certain = not any(n in diagram.uncertain for n in path)
            chains.append(_orient(Chain(path, trans, (), diagram.name, certain, free)))
    return chains


def end_state(chain, end):
    if end not in ("low", "high"):
        raise ValueError("end must be 'low' or 'high'")
    return chain.ends[0 if end == "low" else 1]


def count_bounds(angles, scope=None, chains=None):
    """Lower bounds on counts of quadrilaterals: per modulus, and for small and large moduli."""
    chains = build_chains(angles, scope) if chains is None else chains
    lo = {"per_modulus": 0, "small_K": 0, "large_K": 0}
    hi = dict(lo)
    for ch in chains:
        kinds = [e.kind for e in ch.ends]
        per = int(ch.length % 2 == 0 and all(k in (ZERO, INF) for k in kinds))
        zeros, infs = kinds.count(ZERO), kinds.count(INF)
        small = 2 if (ch.length % 2 == 1 and zeros == 2) else int(zeros == 1)
        large = 2 if (ch.length % 2 == 1 and infs == 2) else int(infs == 1)
        for acc in ((hi,) if not ch.certain else (lo, hi)):
            acc["per_modulus"] += per
            acc["small_K"] += small
            acc["large_K"] += large
    return {k: (lo[k], hi[k]) for k in lo}


def explain(label, angles):
    """Pyramid inequalities of a label's fixed angles, evaluated."""
    fixed = apply_mask(angles.frac, complement_mask_for(label))
    return pyramid_witness(*fixed)


def safe_directions(fixed):
    try:
        return degeneration_directions(*fixed)
    except BoundaryTie:
        return frozenset()

"""Angle bookkeeping: the pyramid of fixed angles, complement tables, directions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AmbiguousOnBoundary, BoundaryTie, InfeasibleAngles, LabelSyntaxError, UnknownLabel

DIRECTIONS = ("bottom", "left", "right", "top")

# Pairs of fixed angles (indices into a, b, c, d) complemented by each move.
DIRECTION_PAIRS = {"top": (0, 1), "bottom": (2, 3), "left": (1, 2), "right": (0, 3)}


def _num(x):
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    return float(x)


def parse_number(text):
    text = text.strip()
    if "/" in text or text.lstrip("-").isdigit():
        return Fraction(text)
    try:
        return Fraction(text) if _is_short_decimal(text) else float(text)
    except ValueError as exc:
        raise LabelSyntaxError(f"cannot parse number {text!r}") from exc


def _is_short_decimal(text):
    # Decimals are read exactly so that strict inequalities are decided without rounding.
    try:
        Fraction(text)
    except ValueError:
        return False
    return "e" not in text.lower()


@dataclass(frozen=True)
class AngleVector:
    """Quadrilateral angles (in units of pi) split into integer and fractional parts."""

    integer: tuple
    frac: tuple

    def __post_init__(self):
        if len(self.integer) != 4 or len(self.frac) != 4:
            raise ValueError("need four angles")
        for n in self.integer:
            if n < 0 or int(n) != n:
                raise ValueError("integer parts must be non-negative integers")
        for x in self.frac:
            if not 0 < x < 1:
                raise InfeasibleAngles("angles of a generic quadrilateral are non-integer")

    @classmethod
    def from_angles(cls, values):
        vals = [_num(v) for v in values]
        ints = tuple(int(math.floor(v)) for v in vals)
        return cls(ints, tuple(v - n for v, n in zip(vals, ints)))

    @property
    def sigma(self):
        return sum(self.integer)

    @property
    def values(self):
        return tuple(n + x for n, x in zip(self.integer, self.frac))

    def exact(self):
        return all(isinstance(x, Fraction) for x in self.frac)


def parse_angles(text):
    """Read ``a0=0.3 a1=1.8 ...`` or ``alpha=3/10 ...`` (with ``n0=..`` for integer parts)."""
    items = dict(tok.split("=", 1) for tok in text.replace(",", " ").split())
    if all(f"a{i}" in items for i in range(4)):
        return AngleVector.from_angles([parse_number(items[f"a{i}"]) for i in range(4)])
    names = ("alpha", "beta", "gamma", "delta")
    if all(n in items for n in names):
        frac = tuple(parse_number(items[n]) for n in names)
        ints = tuple(int(items.get(f"n{i}", 0)) for i in range(4))
        return AngleVector(ints, frac)
    raise LabelSyntaxError("angles need a0..a3 or alpha..delta")


# --- pyramid ------------------------------------------------------------------------


@dataclass(frozen=True)
class Membership:
    status: str
    facet: str | None = None
    excess: object = None

    def __str__(self):
        return self.status if self.facet is None else f"{self.status}({self.facet})"


def pyramid_membership(a, b, c, d):
    """Locate (a, b, c, d) relative to the open pyramid 0 < a+b+c+d-2 < 2 min."""
    vals = [_num(x) for x in (a, b, c, d)]
    s = sum(vals) - 2
    m = 2 * min(vals)
    if s < 0 or s > m:
        return Membership("outside", "sum>0" if s < 0 else "sum<2min", s if s < 0 else s - m)
    if s == 0:
        return Membership("boundary", "sum>0", 0)
    if s == m:
        return Membership("boundary", "sum<2min", 0)
    return Membership("interior", None, min(s, m - s))


def in_pyramid(a, b, c, d):
    return pyramid_membership(a, b, c, d).status == "interior"


def pyramid_witness(a, b, c, d):
    """Inequalities of the pyramid with their evaluated slack (positive means satisfied)."""
    vals = [_num(x) for x in (a, b, c, d)]
    s = sum(vals) - 2
    out = [("a+b+c+d-2 > 0", s)]
    for name, v in zip("abcd", vals):
        out.append((f"a+b+c+d-2 < 2{name}", 2 * v - s))
    return out


# --- complement tables ------------------------------------------------------------

# mask over (alpha, beta, gamma, delta): 1 marks a fixed angle equal to the complement.
# Entries are "family parity-of-k parity-of-l", with "bar" marking the reflected family.
_EVEN_TABLE = {
    "0000": "P -- ; X ee; Xbar ee; R ee; Rbar ee; U ee; Ubar ee",
    "1100": "R oo; X'bar eo; Z eo; V ee; Vbar oo",
    "1010": "X oo; Xbar oo; U oo; Ubar oo",
    "1001": "Rbar oo; X' eo; Zbar eo; V' oo; V'bar ee",
    "0110": "X'bar oe; Z oe; Sbar ee; V oo; Vbar ee",
    "0101": "Z' ee; Z'bar ee; W oo; Wbar oo",
    "0011": "S ee; X' oe; Zbar oe; V' ee; V'bar oo",
    "1111": "S oo; Sbar oo; Z' oo; Z'bar oo; W ee; Wbar ee",
}
_ODD_TABLE = {
    "1000": "X oe; Xbar oe; R oe; Rbar oe; U oe; Ubar eo",
    "0100": "R eo; X'bar oo; Z oo; V oe; Vbar oe",
    "0010": "X eo; Xbar eo; U eo; Ubar oe",
    "0001": "Rbar eo; X' oo; Zbar oo; V' eo; V'bar eo",
    "0111": "S eo; Sbar eo; Z' eo; Z'bar oe; W oe; Wbar eo",
    "1011": "X' ee; Zbar ee; S oe; V' oe; V'bar oe",
    "1101": "Z' oe; Z'bar eo; W eo; Wbar oe",
    "1110": "X'bar ee; Z ee; Sbar oe; V eo; Vbar eo",
}


def _parse_tables():
    table = {}
    for parity, rows in ((0, _EVEN_TABLE), (1, _ODD_TABLE)):
        for mask, entries in rows.items():
            bits = tuple(int(ch) for ch in mask)
            if sum(bits) % 2 != parity:
                raise AssertionError(f"row {mask} has the wrong parity")
            for entry in entries.split(";"):
                name, par = entry.split()
                barred = name.endswith("bar")
                fam = name[:-3] if barred else name
                key = (fam, barred, par)
                if key in table:
                    raise AssertionError(f"{key} appears twice")
                table[key] = bits
    return table


COMPLEMENT_TABLE = _parse_tables()


def complement_mask_for(label):
    """Complement pattern of a label's fixed angles; P_mu and digons do not change it."""
    from .builders import NetLabel, parse_label

    if isinstance(label, str):
        label = parse_label(label)
    if not isinstance(label, NetLabel):
        raise UnknownLabel(f"not a label: {label!r}")
    if label.family == "P":
        par = "--"
    else:
        par = ("eo"[label.k % 2]) + ("eo"[label.l % 2])
    try:
        return COMPLEMENT_TABLE[(label.family, label.barred, par)]
    except KeyError:
        raise UnknownLabel(f"no complement pattern for {label}") from None


@dataclass(frozen=True)
class FixedAngleQuad:
    a: object
    b: object
    c: object
    d: object
    mask: tuple

    @property
    def abcd(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def tags(self):
        return tuple("complement" if m else "direct" for m in self.mask)

    def in_pyramid(self):
        return in_pyramid(*self.abcd)


def apply_mask(frac, mask):
    return tuple(1 - x if m else x for x, m in zip(frac, mask))


def fixed_angles_for_net(label, angles):
    mask = complement_mask_for(label)
    from .builders import parse_label

    lab = parse_label(label) if isinstance(label, str) else label
    if angles.sigma % 2 != sum(mask) % 2:
        raise UnknownLabel(f"integer parts of the angles do not fit {lab}")
    return FixedAngleQuad(*apply_mask(angles.frac, mask), mask)


def net_feasible(label, angles):
    """Whether a quadrilateral with this net and these angles can exist; with the pyramid slacks."""
    mask = complement_mask_for(label)
    fixed = apply_mask(angles.frac, mask)
    witness = pyramid_witness(*fixed)
    ok = sum(mask) % 2 == angles.sigma % 2 and all(v > 0 for _, v in witness)
    return ok, witness


# --- directions -------------------------------------------------------------------


def degeneration_directions(a, b, c, d):
    """Triple intersections the configuration can be deformed into, angles kept fixed."""
    a, b, c, d = (_num(x) for x in (a, b, c, d))
    if a + b == c + d or a + d == b + c:
        raise BoundaryTie("angle sums tie: the deformation ends at a quadruple intersection")
    out = {"bottom" if a + b > c + d else "top", "left" if a + d > b + c else "right"}
    return frozenset(out)


def ladder_or_box(a, b, c, d):
    """Ladder or box pattern of the chain lattice, plus the angle left unchanged by both moves."""
    a, b, c, d = (_num(x) for x in (a, b, c, d))
    if a + b == c + d or a + d == b + c or a + c == b + d:
        raise AmbiguousOnBoundary("tie between angle sums")
    dirs = degeneration_directions(a, b, c, d)
    moved = set()
    for dname in dirs:
        moved |= set(DIRECTION_PAIRS[dname])
    (fixed,) = {0, 1, 2, 3} - moved
    opposite = (fixed + 2) % 4
    vals = (a, b, c, d)
    other = [i for i in range(4) if i not in (fixed, opposite)]
    kind = "ladder" if vals[fixed] + vals[opposite] < sum(vals[i] for i in other) else "box"
    return kind, "abcd"[fixed]


# --- closure condition -----------------------------------------------------------


def lattice_distance(point, parity):
    """L1 distance to the integer points whose coordinate sum has the given parity."""
    pt = [_num(x) for x in point]
    best = None
    for cand in itertools.product(*[(math.floor(x) - 1, math.floor(x), math.floor(x) + 1, math.floor(x) + 2) for x in pt]):
        if sum(cand) % 2 != parity:
            continue
        dist = sum(abs(x - y) for x, y in zip(pt, cand))
        if best is None or dist < best:
            best = dist
    return best


def closure_distance(angles):
    return lattice_distance(angles.frac, (angles.sigma + 1) % 2)


def closure_condition(angles):
    return closure_distance(angles) > 1

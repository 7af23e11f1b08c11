"""Newton-Ramis polygons of differential operators.

Each monomial a_{ij} x^j d^i contributes the point (i, j - i); the polygon is
the convex hull of the leftward horizontal rays issued from these points.
Such a region is determined by its right boundary: a concave chain running
from the rightmost lowest point up to the rightmost highest point. That chain
(listed bottom to top) is the canonical form used for region equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroOperatorError
from .exactnum import rat_to_str
from .weyl import WeylOp

Point = tuple[int, int]
ZERO = Fraction(0)


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def right_chain(points) -> list[Point]:
    """Right boundary of the left-closed hull, bottom to top, no collinear vertices."""
    rightmost: dict[int, int] = {}
    for u, v in points:
        if v not in rightmost or u > rightmost[v]:
            rightmost[v] = u
    # Work in (v, u) coordinates: the chain is the upper concave envelope of v -> u.
    pts = sorted((v, u) for v, u in rightmost.items())
    chain: list[tuple[int, int]] = []
    for p in pts:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) >= 0:
            chain.pop()
        chain.append(p)
    return [(u, v) for v, u in chain]


@dataclass(frozen=True)
class NRPolygon:
    support: frozenset
    hull_vertices: tuple  # right chain, bottom to top
    vertical_side: tuple | None  # ((m, v_low), (m, v_high))
    finite_slopes: tuple  # sorted multiset of Fractions

    @classmethod
    def from_points(cls, points) -> "NRPolygon":
        support = frozenset((int(u), int(v)) for u, v in points)
        if not support:
            raise ZeroOperatorError("polygon of an empty support")
        chain = right_chain(support)
        m = max(u for u, _ in support)
        col = sorted(v for u, v in support if u == m)
        vertical = ((m, col[0]), (m, col[-1])) if col[0] < col[-1] else None
        slopes: list[Fraction] = []
        for (u1, v1), (u2, v2) in zip(chain, chain[1:]):
            if u1 != u2:
                slopes.append(Fraction(v2 - v1, u2 - u1))
        vmin = min(v for _, v in support)
        vmax = max(v for _, v in support)

        def row_count(v):
            return sum(1 for _, w in support if w == v)

        # Horizontal bounded edges on the extreme rows.
        if row_count(vmax) >= 2:
            slopes.append(ZERO)
        if vmin != vmax and row_count(vmin) >= 2:
            slopes.append(ZERO)
        return cls(support, tuple(chain), vertical, tuple(sorted(slopes)))

    def canonical(self) -> tuple:
        return (self.hull_vertices, self.vertical_side)

    def same_region(self, other: "NRPolygon") -> bool:
        return self.canonical() == other.canonical()

    def slope_set(self) -> set[Fraction]:
        return set(self.finite_slopes)

    def to_json(self) -> dict:
        return {
            "support": [list(p) for p in sorted(self.support)],
            "hull": [list(p) for p in self.hull_vertices],
            "vertical_side": [list(p) for p in self.vertical_side] if self.vertical_side else None,
            "finite_slopes": [rat_to_str(s) for s in self.finite_slopes],
        }

    @classmethod
    def from_json(cls, data) -> "NRPolygon":
        return cls.from_points(tuple(p) for p in data["support"])


def nr_polygon(phi: WeylOp) -> NRPolygon:
    if phi.is_zero():
        raise ZeroOperatorError("polygon of the zero operator")
    return NRPolygon.from_points((i, j - i) for i, j, _ in phi.items())


def katz_invariants(P: NRPolygon) -> tuple[Fraction, Fraction]:
    """(katz at 0, katz at infinity)."""
    s = list(P.finite_slopes) + [ZERO]
    return max(s), -min(s)


def is_regular_at_zero(P: NRPolygon) -> bool:
    return all(s <= 0 for s in P.finite_slopes)


def is_regular_at_infinity(P: NRPolygon) -> bool:
    return all(s >= 0 for s in P.finite_slopes)


def transform_slope(t: Fraction | None) -> Fraction | None:
    """Slope law under (u, v) -> (u + v, -v); ``None`` stands for a vertical side."""
    if t is None:
        return Fraction(-1)
    if t == -1:
        return None
    return -t / (1 + t)


def fourier_image(P: NRPolygon) -> NRPolygon:
    return NRPolygon.from_points((u + v, -v) for u, v in P.support)


def e_slope_condition(phi: WeylOp) -> bool:
    """All finite slopes in {-1, 0} and no vertical side.

    A vertical side means a_m is not a monomial, i.e. a singularity off
    0 and infinity, which rules the operator out.
    """
    P = nr_polygon(phi)
    return P.vertical_side is None and all(s in (0, -1) for s in P.finite_slopes)


def offending_slopes(phi: WeylOp) -> list[Fraction]:
    return [s for s in nr_polygon(phi).finite_slopes if s not in (0, -1)]


def singular_only_at_zero_and_infinity(phi: WeylOp) -> bool:
    """Leading coefficient a_m is a monomial."""
    return phi.leading_coefficient().is_monomial()


def to_ascii(P: NRPolygon) -> str:
    """Character grid: '#' support point, '*' chain vertex, '.' lattice."""
    us = [u for u, _ in P.support]
    vs = [v for _, v in P.support]
    umin, umax, vmin, vmax = min(us) - 1, max(us), min(vs), max(vs)
    verts = set(P.hull_vertices)
    rows = []
    for v in range(vmax, vmin - 1, -1):
        line = []
        for u in range(umin, umax + 1):
            if (u, v) in verts:
                line.append("*")
            elif (u, v) in P.support:
                line.append("#")
            else:
                line.append(".")
        rows.append(f"{v:>4} " + "".join(line))
    rows.append(f"     u = {umin} .. {umax}")
    return "\n".join(rows)


def to_svg(P: NRPolygon, cell: int = 40) -> str:
    us = [u for u, _ in P.support]
    vs = [v for _, v in P.support]
    umin, umax = min(us) - 2, max(us) + 1
    vmin, vmax = min(vs) - 1, max(vs) + 1
    w, h = (umax - umin) * cell, (vmax - vmin) * cell

    def xy(u, v):
        return (u - umin) * cell, (vmax - v) * cell

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">']
    for u in range(umin, umax + 1):
        x, _ = xy(u, 0)
        out.append(f'<line x1="{x}" y1="0" x2="{x}" y2="{h}" stroke="#ddd"/>')
    for v in range(vmin, vmax + 1):
        _, y = xy(0, v)
        out.append(f'<line x1="0" y1="{y}" x2="{w}" y2="{y}" stroke="#ddd"/>')
    chain = list(P.hull_vertices)
    # Close the region with the two horizontal rays running off to the left.
    left = umin
    poly = [(left, chain[0][1])] + chain + [(left, chain[-1][1])]
    pts = " ".join("{},{}".format(*xy(u, v)) for u, v in poly)
    out.append(f'<polygon points="{pts}" fill="#cde" stroke="#246" stroke-width="2"/>')
    for u, v in sorted(P.support):
        x, y = xy(u, v)
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="#123"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

"""Exact rational PL model of the punctured disk.

The disk is the rectangle [0, 2n+1] x [-1, 1] with punctures at (k, 0) for
k = 1..2n, colored 0 at odd k and N+1 at even k.  All coordinates are
Fractions, so every intersection, winding number and crossing count below
is exact.

Conventions used throughout:

* A positive generator twist about punctures k, k+1 is the counterclockwise
  PL half twist supported in the square of max-norm radius 25/32 around the
  midpoint (k + 1/2, 0).  It is realized as four concentric triangulated
  square annuli, each shifting its inner ring one eighth of a turn, with the
  inner square mapped by the point reflection through the center.

* Crossing counts of a motion: an event happens when the difference of two
  x-coordinates changes sign.  Its sign is (right-to-left: +1, left-to-right:
  -1) times (first point above the second: +1, below: -1).  A full
  counterclockwise loop of one point around another therefore counts +2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Point = Tuple[Fraction, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class DegeneracyError(Exception):
    """Non-generic geometry detected; the caller perturbs a curve and retries.

    curve_key identifies the fixture curve (torus, color) to translate.
    """

    def __init__(self, message: str, curve_key: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.curve_key = curve_key


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Signed area determinant of (a - o, b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def det2(u: Point, v: Point) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """p lies on the closed segment [a, b] (assumes collinear already checked)."""
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_params(p: Point, q: Point, a: Point, b: Point) -> List[Fraction]:
    """Parameters t in [0,1] along [p,q] where it meets the segment [a,b].

    Transversal meetings give one parameter; collinear overlap contributes the
    overlap's two end parameters.  Used for subdividing paths against the
    twist triangulation, where any consistent subdivision is acceptable.
    """
    r = (q[0] - p[0], q[1] - p[1])
    s = (b[0] - a[0], b[1] - a[1])
    denom = det2(r, s)
    w = (a[0] - p[0], a[1] - p[1])
    if denom != 0:
        t = det2(w, s) / denom
        u = det2(w, r) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            return [t]
        return []
    # Parallel.  Overlap only when collinear.
    if det2(w, r) != 0:
        return []
    rr = r[0] * r[0] + r[1] * r[1]
    if rr == 0:
        return []
    t0 = (w[0] * r[0] + w[1] * r[1]) / rr
    t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / rr
    lo, hi = min(t0, t1), max(t0, t1)
    lo, hi = max(lo, ZERO), min(hi, ONE)
    if lo > hi:
        return []
    return [lo, hi] if lo != hi else [lo]


def segments_cross(p: Point, q: Point, a: Point, b: Point) -> bool:
    """True when the closed segments [p,q] and [a,b] share at least one point."""
    d1 = cross(a, b, p)
    d2 = cross(a, b, q)
    d3 = cross(p, q, a)
    d4 = cross(p, q, b)
    if ((d1 > 0) != (d2 > 0) or d1 == 0 or d2 == 0) and \
       ((d3 > 0) != (d4 > 0) or d3 == 0 or d4 == 0):
        if d1 == 0 and d2 == 0:
            # Collinear: check interval overlap.
            return (max(min(p[0], q[0]), min(a[0], b[0])) <= min(max(p[0], q[0]), max(a[0], b[0]))
                    and max(min(p[1], q[1]), min(a[1], b[1])) <= min(max(p[1], q[1]), max(a[1], b[1])))
        if d1 == 0:
            return on_segment(p, a, b)
        if d2 == 0:
            return on_segment(q, a, b)
        if d3 == 0:
            return on_segment(a, p, q)
        if d4 == 0:
            return on_segment(b, p, q)
        return True
    return False


def point_in_convex(p: Point, poly: Sequence[Point]) -> bool:
    """p inside or on the boundary of a convex CCW or CW polygon."""
    sign = 0
    n = len(poly)
    for i in range(n):
        d = cross(poly[i], poly[(i + 1) % n], p)
        if d == 0:
            continue
        s = 1 if d > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    return point_in_convex(p, (a, b, c))


def triangle_hits_segment(a: Point, b: Point, c: Point, p: Point, q: Point) -> bool:
    """Closed triangle abc meets closed segment [p,q]."""
    if point_in_triangle(p, a, b, c) or point_in_triangle(q, a, b, c):
        return True
    return (segments_cross(a, b, p, q) or segments_cross(b, c, p, q)
            or segments_cross(c, a, p, q))


# -- paths ------------------------------------------------------------------


@dataclass
class PLPath:
    """Piecewise-linear path.  Closed paths treat the vertex list cyclically.

    Open paths may carry per-vertex time parameters (for simultaneous
    motions); closed paths never do.
    """

    vertices: List[Point]
    closed: bool = False
    params: Optional[List[Fraction]] = None

    def __post_init__(self):
        if self.closed and len(self.vertices) < 3:
            raise ValueError("closed path needs at least 3 vertices")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a == b:
                raise ValueError("consecutive vertices must be distinct")

    def segment_count(self) -> int:
        return len(self.vertices) if self.closed else len(self.vertices) - 1

    def segment(self, i: int) -> Tuple[Point, Point]:
        v = self.vertices
        if self.closed:
            return v[i % len(v)], v[(i + 1) % len(v)]
        return v[i], v[i + 1]

    def translated(self, dx: Fraction, dy: Fraction) -> "PLPath":
        return PLPath([(x + dx, y + dy) for x, y in self.vertices], self.closed,
                      None if self.params is None else list(self.params))


def winding_number(path: PLPath, p: Point) -> int:
    """Winding of a closed path about p, via upward-ray crossing counts."""
    if not path.closed:
        raise ValueError("winding number needs a closed path")
    x0, y0 = p
    total = 0
    n = len(path.vertices)
    for i in range(n):
        (x1, y1), (x2, y2) = path.segment(i)
        if x1 == x0 and x2 == x0:
            continue
        if (x1 <= x0 < x2) or (x2 <= x0 < x1):
            t = (x0 - x1) / (x2 - x1)
            ycross = y1 + t * (y2 - y1)
            if ycross == y0:
                raise DegeneracyError("winding query point on the path")
            if ycross > y0:
                total += -1 if x2 > x1 else 1
    return total


# -- the disk and its fixture ------------------------------------------------


@dataclass(frozen=True)
class DiskModel:
    """Rectangle [0, 2n+1] x [-1, 1] with 2n punctures on the axis."""

    n: int
    N: int

    def puncture(self, k: int) -> Point:
        """1-based puncture position."""
        return (Fraction(k), ZERO)

    def punctures(self) -> List[Point]:
        return [self.puncture(k) for k in range(1, 2 * self.n + 1)]

    def puncture_color(self, k: int) -> int:
        return 0 if k % 2 == 1 else self.N + 1

    def interval(self, j: int) -> Tuple[Point, Point]:
        """Spanning segment of torus j (1-based), oriented left to right."""
        return self.puncture(2 * j - 1), self.puncture(2 * j)


@dataclass
class FigureEightCurve:
    """Closed PL figure of eight for one torus and one color.

    The vertex list starts at the double point, runs the A half (a loop
    winding counterclockwise once around the odd puncture), revisits the
    double point at ``split_index``, then runs the B half (clockwise once
    around the even puncture).  ``base_index`` marks the basepoint vertex on
    the lower part of the B half.
    """

    torus: int
    color: int
    vertices: List[Point]
    split_index: int
    base_index: int

    def path(self) -> PLPath:
        return PLPath(list(self.vertices), closed=True)

    def segment_half(self, seg_index: int) -> str:
        """'A' for segments before the second double-point visit, else 'B'."""
        return "A" if seg_index < self.split_index else "B"

    def arc(self, half: str) -> PLPath:
        if half == "A":
            verts = self.vertices[: self.split_index + 1]
        else:
            verts = self.vertices[self.split_index :] + [self.vertices[0]]
        return PLPath(list(verts), closed=False)

    def basepoint(self) -> Point:
        return self.vertices[self.base_index]

    def double_point(self) -> Point:
        return self.vertices[0]

    def translated(self, dx: Fraction, dy: Fraction) -> "FigureEightCurve":
        return FigureEightCurve(
            self.torus,
            self.color,
            [(x + dx, y + dy) for x, y in self.vertices],
            self.split_index,
            self.base_index,
        )


@dataclass
class Fixture:
    """The identity-braid configuration: curves, basepoint paths and targets.

    curves[(j, c)] is the figure of eight of color c in torus j; tau[(j, c)]
    the vertical timed path from the bottom boundary to its basepoint;
    slot_x[(j, c)] the column of the corresponding interval slot; and
    barcode_x[(j, c)] the fixed column of the vertical barcode edge of color
    c at torus j (independent of curve perturbations).
    """

    disk: DiskModel
    curves: Dict[Tuple[int, int], FigureEightCurve]
    tau: Dict[Tuple[int, int], PLPath]
    slot_x: Dict[Tuple[int, int], Fraction]
    barcode_x: Dict[Tuple[int, int], Fraction]


def _torus_layout(N: int):
    """Local (unit-offset) coordinates of one torus worth of curves."""
    F = Fraction
    dm = F(1, 8 * N)
    tiny = F(1, 64 * (N + 1) ** 2)
    layout = []
    for c in range(1, N + 1):
        m = F(1, 2) + F(2 * c - N - 1, 1) * dm / 2
        nu = dm / 64
        delta = F(c + 1, 2048 * (N + 1))
        t_a = F(1, 4) + F(c, 8 * (N + 1))
        t_b = F(1, 4) + F(N + 1 - c, 8 * (N + 1)) + tiny
        u_a = F(1, 8) + F(c, 8 * (N + 1))
        u_b = F(1, 8) + F(N + 1 - c, 8 * (N + 1)) + tiny
        s_a = F(1, 16) + F(c, 16 * (N + 1))
        s_b = F(1, 16) + F(N + 1 - c, 16 * (N + 1)) + tiny
        w = F(3, 4) + F(c, 8 * (N + 1))
        x_a = m - (c + 1) * dm          # shared A diagonal foot column
        x_b = m + (N + 2 - c) * dm      # shared B diagonal foot column
        layout.append(dict(c=c, m=m, nu=nu, delta=delta, t_a=t_a, t_b=t_b,
                           u_a=u_a, u_b=u_b, s_a=s_a, s_b=s_b, w=w,
                           x_a=x_a, x_b=x_b))
    return layout


def build_fixture(n: int, N: int,
                  perturbations: Optional[Dict[Tuple[int, int], Tuple[Fraction, Fraction]]] = None
                  ) -> Fixture:
    """Construct the identity configuration for n tori and color depth N.

    Each figure of eight is a pair of pentagon "teardrops" pinched at a
    double point just below the axis between the two punctures, so that the
    A halves are nested counterclockwise loops about the odd puncture and the
    B halves nested clockwise loops about the even one.  ``perturbations``
    rigidly translates individual curves (with their basepoint paths) to
    restore generic position when a degeneracy was detected.
    """
    if n < 1 or N < 1:
        raise ValueError("fixture needs n >= 1 and N >= 1")
    perturbations = perturbations or {}
    disk = DiskModel(n, N)
    layout = _torus_layout(N)
    curves: Dict[Tuple[int, int], FigureEightCurve] = {}
    tau: Dict[Tuple[int, int], PLPath] = {}
    slot_x: Dict[Tuple[int, int], Fraction] = {}
    barcode_x: Dict[Tuple[int, int], Fraction] = {}

    for j in range(1, n + 1):
        off = Fraction(2 * j - 1)
        for row in layout:
            c = row["c"]
            m, nu, delta = row["m"], row["nu"], row["delta"]
            # A half: d -> nose top -> top-left -> bottom-left -> diagonal foot -> d
            a_half = [
                (off + m, -delta),
                (off + m - nu, row["t_a"]),
                (off - row["s_a"], row["t_a"]),
                (off - row["s_a"], -row["u_a"]),
                (off + row["x_a"], -row["u_a"]),
            ]
            # B half: d -> nose top -> top-right -> bottom-right -> basepoint -> foot -> d
            b_half = [
                (off + m, -delta),
                (off + m + nu, row["t_b"]),
                (off + 1 + row["s_b"], row["t_b"]),
                (off + 1 + row["s_b"], -row["u_b"]),
                (off + row["w"], -row["u_b"]),
                (off + row["x_b"], -row["u_b"]),
            ]
            vertices = a_half + b_half
            curve = FigureEightCurve(
                torus=j,
                color=c,
                vertices=vertices,
                split_index=len(a_half),
                base_index=len(a_half) + 4,
            )
            dx, dy = perturbations.get((j, c), (ZERO, ZERO))
            if dx or dy:
                curve = curve.translated(dx, dy)
            curves[(j, c)] = curve
            base = curve.basepoint()
            tau[(j, c)] = PLPath([(base[0], Fraction(-1)), base], closed=False,
                                 params=[ZERO, ONE])
            slot_x[(j, c)] = base[0]
            barcode_x[(j, c)] = off + row["w"]

    return Fixture(disk, curves, tau, slot_x, barcode_x)


# -- the half-twist homeomorphism --------------------------------------------

# Tilted octagonal rings: no ring direction is horizontal or vertical, so no
# triangulation edge (or image of one) is ever axis-aligned.  This keeps
# subdivision vertices off the puncture axis and off vertical reference
# columns robustly under perturbation.
_H = Fraction(1, 2)
_RING_DIRS = [(Fraction(1), _H), (_H, Fraction(1)), (-_H, Fraction(1)),
              (Fraction(-1), _H), (Fraction(-1), -_H), (-_H, Fraction(-1)),
              (_H, Fraction(-1)), (Fraction(1), -_H)]
_RING_RADII = [Fraction(17, 32), Fraction(19, 32), Fraction(21, 32),
               Fraction(23, 32), Fraction(25, 32)]
SUPPORT_RADIUS = _RING_RADII[-1]


def _affine_from_triangle(src: Sequence[Point], dst: Sequence[Point]):
    """Exact affine map sending the source triangle to the target triangle."""
    (x0, y0), (x1, y1), (x2, y2) = src
    (u0, v0), (u1, v1), (u2, v2) = dst
    d = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    a = ((u1 - u0) * (y2 - y0) - (u2 - u0) * (y1 - y0)) / d
    b = ((u2 - u0) * (x1 - x0) - (u1 - u0) * (x2 - x0)) / d
    c = ((v1 - v0) * (y2 - y0) - (v2 - v0) * (y1 - y0)) / d
    e = ((v2 - v0) * (x1 - x0) - (v1 - v0) * (x2 - x0)) / d
    return (a, b, u0 - a * x0 - b * y0, c, e, v0 - c * x0 - e * y0)


class HalfTwist:
    """Exact PL half twist exchanging punctures k and k+1 (sign = chirality)."""

    def __init__(self, k: int, sign: int, disk: DiskModel):
        if sign not in (1, -1):
            raise ValueError("twist sign must be +1 or -1")
        if k < 1 or k + 1 > 2 * disk.n:
            raise ValueError(f"generator index {k} out of range")
        self.k = k
        self.sign = sign
        cx = Fraction(2 * k + 1, 2)
        self.center: Point = (cx, ZERO)
        self.bbox = (cx - SUPPORT_RADIUS, -SUPPORT_RADIUS,
                     cx + SUPPORT_RADIUS, SUPPORT_RADIUS)
        self.pieces: List[Tuple[Tuple[Point, ...], Tuple[Fraction, ...]]] = []
        self._build()

    def _ring(self, radius: Fraction) -> List[Point]:
        cx, cy = self.center
        return [(cx + radius * dx, cy + radius * dy) for dx, dy in _RING_DIRS]

    def _build(self):
        cx, cy = self.center
        s = self.sign
        # Inner octagon: point reflection through the center (a half turn).
        inner_core = tuple(self._ring(_RING_RADII[0]))
        self.pieces.append((inner_core,
                            (Fraction(-1), ZERO, 2 * cx, ZERO, Fraction(-1), 2 * cy)))
        # Four annuli; ring level a rotates by (4 - a) eighth-turns.
        for a in range(4):
            inner = self._ring(_RING_RADII[a])
            outer = self._ring(_RING_RADII[a + 1])
            t_in = (4 - a) * s
            t_out = (3 - a) * s
            for i in range(8):
                if s > 0:
                    tris = [
                        ((inner[i], inner[(i + 1) % 8], outer[(i + 1) % 8]),
                         (inner[(i + t_in) % 8], inner[(i + 1 + t_in) % 8], outer[(i + 1 + t_out) % 8])),
                        ((inner[i], outer[(i + 1) % 8], outer[i]),
                         (inner[(i + t_in) % 8], outer[(i + 1 + t_out) % 8], outer[(i + t_out) % 8])),
                    ]
                else:
                    tris = [
                        ((inner[i], inner[i - 1], outer[i - 1]),
                         (inner[(i + t_in) % 8], inner[(i - 1 + t_in) % 8], outer[(i - 1 + t_out) % 8])),
                        ((inner[i], outer[i - 1], outer[i]),
                         (inner[(i + t_in) % 8], outer[(i - 1 + t_out) % 8], outer[(i + t_out) % 8])),
                    ]
                for src, dst in tris:
                    self.pieces.append((src, _affine_from_triangle(src, dst)))

    def _outside(self, p: Point) -> bool:
        x0, y0, x1, y1 = self.bbox
        return p[0] < x0 or p[0] > x1 or p[1] < y0 or p[1] > y1

    def map_point(self, p: Point) -> Point:
        if self._outside(p):
            return p
        for poly, (a, b, c, d, e, f) in self.pieces:
            if point_in_convex(p, poly):
                return (a * p[0] + b * p[1] + c, d * p[0] + e * p[1] + f)
        return p

    def _subdivide(self, p: Point, q: Point) -> List[Fraction]:
        """Sorted interior parameters where [p,q] crosses piece boundaries."""
        x0, y0, x1, y1 = self.bbox
        if (max(p[0], q[0]) < x0 or min(p[0], q[0]) > x1
                or max(p[1], q[1]) < y0 or min(p[1], q[1]) > y1):
            return []
        params = set()
        sx0, sx1 = min(p[0], q[0]), max(p[0], q[0])
        sy0, sy1 = min(p[1], q[1]), max(p[1], q[1])
        for poly, _ in self.pieces:
            bx0 = min(v[0] for v in poly)
            bx1 = max(v[0] for v in poly)
            by0 = min(v[1] for v in poly)
            by1 = max(v[1] for v in poly)
            if bx1 < sx0 or bx0 > sx1 or by1 < sy0 or by0 > sy1:
                continue
            m = len(poly)
            for i in range(m):
                for t in segment_params(p, q, poly[i], poly[(i + 1) % m]):
                    if 0 < t < 1:
                        params.add(t)
        return sorted(params)

    def apply_path(self, path: PLPath) -> PLPath:
        """Image of a path, subdivided so every output segment is affine.

        Time parameters, when present, are carried through subdivision
        exactly, preserving the original simultaneous parameterization.
        """
        verts = path.vertices
        params = path.params
        nseg = path.segment_count()
        out_pts: List[Point] = []
        out_params: List[Fraction] = [] if params is not None else None

        def push(ppt: Point, tval: Optional[Fraction]):
            if out_pts and out_pts[-1] == ppt:
                return
            out_pts.append(ppt)
            if out_params is not None:
                out_params.append(tval)

        index_map: List[int] = []
        for i in range(len(verts)):
            push(self.map_point(verts[i]), params[i] if params is not None else None)
            index_map.append(len(out_pts) - 1)
            if i < nseg:
                a, b = path.segment(i)
                for t in self._subdivide(a, b):
                    mid = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                    tv = None
                    if params is not None:
                        ta = params[i]
                        tb = params[(i + 1) % len(verts)]
                        tv = ta + t * (tb - ta)
                    push(self.map_point(mid), tv)
        if path.closed and len(out_pts) > 1 and out_pts[-1] == out_pts[0]:
            out_pts.pop()
            if out_params is not None:
                out_params.pop()
        new_path = PLPath(out_pts, path.closed, out_params)
        new_path._index_map = index_map  # type: ignore[attr-defined]
        return new_path

    def apply_curve(self, curve: FigureEightCurve) -> FigureEightCurve:
        path = self.apply_path(curve.path())
        index_map = path._index_map  # type: ignore[attr-defined]
        return FigureEightCurve(
            curve.torus,
            curve.color,
            path.vertices,
            index_map[curve.split_index],
            index_map[curve.base_index],
        )


def apply_generator(paths: Sequence[PLPath], k: int, sign: int, disk: DiskModel) -> List[PLPath]:
    """Apply one half twist to a batch of paths."""
    twist = HalfTwist(k, sign, disk)
    return [twist.apply_path(p) for p in paths]


# -- path simplification ------------------------------------------------------


class _SegmentGrid:
    """Uniform-grid index over obstacle segments for triangle queries."""

    def __init__(self, cell: Fraction = Fraction(1, 4)):
        self.cell = cell
        self.buckets: Dict[Tuple[int, int], List[Tuple[Point, Point]]] = {}

    def _cells(self, x0, y0, x1, y1):
        c = self.cell
        i0, i1 = int(x0 / c) - 1, int(x1 / c) + 1
        j0, j1 = int(y0 / c) - 1, int(y1 / c) + 1
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                yield (i, j)

    def add_path(self, path: PLPath):
        for i in range(path.segment_count()):
            a, b = path.segment(i)
            x0, x1 = min(a[0], b[0]), max(a[0], b[0])
            y0, y1 = min(a[1], b[1]), max(a[1], b[1])
            for key in self._cells(x0, y0, x1, y1):
                self.buckets.setdefault(key, []).append((a, b))

    def query(self, x0, y0, x1, y1):
        seen = set()
        for key in self._cells(x0, y0, x1, y1):
            for seg in self.buckets.get(key, ()):
                sid = id(seg)
                if sid not in seen:
                    seen.add(sid)
                    yield seg


def _removable(u: Point, v: Point, w: Point, points: Sequence[Point], grid: _SegmentGrid) -> bool:
    area = cross(u, v, w)
    if area == 0:
        # Collinear: the middle vertex is always removable when between its
        # neighbours; a spike retracts only through empty space.
        if not on_segment(v, u, w):
            for p in points:
                if cross(u, v, p) == 0 and (on_segment(p, u, v) or on_segment(p, v, w)):
                    return False
            x0 = min(u[0], v[0], w[0]); x1 = max(u[0], v[0], w[0])
            y0 = min(u[1], v[1], w[1]); y1 = max(u[1], v[1], w[1])
            for a, b in grid.query(x0, y0, x1, y1):
                if segments_cross(u, v, a, b) or segments_cross(v, w, a, b):
                    return False
        return True
    for p in points:
        if point_in_triangle(p, u, v, w):
            return False
    x0 = min(u[0], v[0], w[0]); x1 = max(u[0], v[0], w[0])
    y0 = min(u[1], v[1], w[1]); y1 = max(u[1], v[1], w[1])
    for a, b in grid.query(x0, y0, x1, y1):
        if triangle_hits_segment(u, v, w, a, b):
            return False
    return True


def simplify(path: PLPath,
             obstacle_points: Sequence[Point] = (),
             obstacle_paths: Sequence[PLPath] = (),
             protected: Iterable[int] = ()) -> Tuple[PLPath, List[int]]:
    """Remove vertices whose elision triangle is free of obstacles.

    The output is isotopic to the input through an isotopy whose swept
    triangles contain no obstacle point and cross no obstacle segment.
    Returns the new path plus the new indices of the protected vertices (in
    iteration order of ``protected``).
    """
    grid = _SegmentGrid()
    for p in obstacle_paths:
        grid.add_path(p)
    verts = list(path.vertices)
    prot = list(protected)
    prot_set = set(prot)
    params = list(path.params) if path.params is not None else None

    changed = True
    while changed and len(verts) > (3 if path.closed else 2):
        changed = False
        i = 0
        while i < len(verts):
            n = len(verts)
            if path.closed:
                if n <= 3:
                    break
                iu, iv, iw = (i - 1) % n, i, (i + 1) % n
            else:
                if i == 0 or i == n - 1:
                    i += 1
                    continue
                iu, iv, iw = i - 1, i, i + 1
            if iv in prot_set:
                i += 1
                continue
            u, v, w = verts[iu], verts[iv], verts[iw]
            if u == w:
                i += 1
                continue
            if _removable(u, v, w, obstacle_points, grid):
                del verts[iv]
                if params is not None:
                    del params[iv]
                prot = [p - 1 if p > iv else p for p in prot]
                prot_set = set(prot)
                changed = True
                if i > 0:
                    i -= 1
            else:
                i += 1
    return PLPath(verts, path.closed, params), prot


def simplify_curve(curve: FigureEightCurve,
                   obstacle_points: Sequence[Point],
                   obstacle_paths: Sequence[PLPath]) -> FigureEightCurve:
    """Simplify a figure of eight, preserving its double point, arc split and
    basepoint vertex."""
    path, prot = simplify(curve.path(), obstacle_points, obstacle_paths,
                          protected=(0, curve.split_index, curve.base_index))
    return FigureEightCurve(curve.torus, curve.color, path.vertices, prot[1], prot[2])


# -- crossing-count kernels ---------------------------------------------------


@dataclass
class ColumnEvents:
    """Signed column-crossing events of one trajectory against a fixed point.

    positions[i] is a pair (segment_index, parameter) locating the i-th event
    along the trajectory; signs[i] its contribution.  ``collision`` is set
    when the trajectory passes exactly through the reference point.
    """

    positions: List[Tuple[int, Fraction]]
    signs: List[int]
    collision: bool

    def count_before(self, segment_index: int, parameter: Fraction) -> int:
        total = 0
        key = (segment_index, parameter)
        for pos, s in zip(self.positions, self.signs):
            if pos < key:
                total += s
        return total

    def total(self) -> int:
        return sum(self.signs)


def column_events(vertices: Sequence[Point], q: Point) -> ColumnEvents:
    """Events of a vertex chain crossing the vertical line through q.

    Sign-change semantics: zero runs (vertices exactly on the column) are
    compressed; an event is recorded only when the side genuinely flips, at
    the start of the run.  Collisions (the chain passing through q itself)
    are flagged exactly.
    """
    n = len(vertices)
    fs = [v[0] - q[0] for v in vertices]
    positions: List[Tuple[int, Fraction]] = []
    signs: List[int] = []
    collision = False

    if fs[0] == 0 or fs[-1] == 0:
        raise DegeneracyError("trajectory endpoint on a reference column")

    i = 0
    while i < n - 1:
        f0, f1 = fs[i], fs[i + 1]
        if (f0 > 0 and f1 > 0) or (f0 < 0 and f1 < 0):
            i += 1
            continue
        if f1 == 0:
            # Entering a zero run at vertex i+1; find where it leaves.
            j = i + 1
            ys = []
            while j < n and fs[j] == 0:
                ys.append(vertices[j][1])
                j += 1
            if j == n:
                break
            if min(ys) <= q[1] <= max(ys):
                collision = True
            if (fs[i] > 0) != (fs[j] > 0):
                above = 1 if ys[0] > q[1] else -1
                direction = 1 if fs[i] > 0 else -1
                positions.append((i, ONE))
                signs.append(direction * above)
            i = j
            continue
        # Transversal crossing inside segment i.
        t = f0 / (f0 - f1)
        y = vertices[i][1] + t * (vertices[i + 1][1] - vertices[i][1])
        if y == q[1]:
            collision = True
        above = 1 if y > q[1] else -1
        direction = 1 if f0 > 0 else -1
        positions.append((i, t))
        signs.append(direction * above)
        i += 1
    return ColumnEvents(positions, signs, collision)


def _position_at(path: PLPath, t: Fraction) -> Point:
    params = path.params
    verts = path.vertices
    if t <= params[0]:
        return verts[0]
    if t >= params[-1]:
        return verts[-1]
    lo, hi = 0, len(params) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if params[mid] <= t:
            lo = mid
        else:
            hi = mid
    ta, tb = params[lo], params[hi]
    if ta == tb:
        return verts[hi]
    u = (t - ta) / (tb - ta)
    ax, ay = verts[lo]
    bx, by = verts[hi]
    return (ax + u * (bx - ax), ay + u * (by - ay))


def simultaneous_pair_events(pa: PLPath, pb: PLPath) -> Tuple[int, bool]:
    """Signed crossing count of two simultaneously-moving points.

    Both paths carry time parameters over [0, 1].  Returns (count, collision).
    Tangential touches count zero, matching homotopy invariance; exact
    collisions are impossible for homeomorphism images of disjoint motions
    but are reported for safety.
    """
    times = sorted(set(pa.params) | set(pb.params))
    count = 0
    collision = False
    # Walk with zero-run compression on f(t) = xa - xb.
    samples = []
    for t in times:
        a = _position_at(pa, t)
        b = _position_at(pb, t)
        samples.append((t, a, b))
    i = 0
    nsamp = len(samples)
    while i < nsamp - 1:
        t0, a0, b0 = samples[i]
        t1, a1, b1 = samples[i + 1]
        f0 = a0[0] - b0[0]
        f1 = a1[0] - b1[0]
        if f0 == 0:
            # Zero at a breakpoint (possibly a run): scan to the end of the run.
            j = i
            ys = []
            while j < nsamp and samples[j][1][0] - samples[j][2][0] == 0:
                ya = samples[j][1][1]
                yb = samples[j][2][1]
                ys.append(ya - yb)
                j += 1
            if min(ys) <= 0 <= max(ys):
                collision = True
            if i == 0 or j == nsamp:
                i = j
                continue
            fprev = samples[i - 1][1][0] - samples[i - 1][2][0]
            fnext = samples[j][1][0] - samples[j][2][0]
            if (fprev > 0) != (fnext > 0):
                above = 1 if ys[0] > 0 else -1
                direction = 1 if fprev > 0 else -1
                count += direction * above
            i = j
            continue
        if f1 == 0:
            i += 1
            continue
        if (f0 > 0) != (f1 > 0):
            t = f0 / (f0 - f1)
            ya = a0[1] + t * (a1[1] - a0[1])
            yb = b0[1] + t * (b1[1] - b0[1])
            if ya == yb:
                collision = True
            else:
                count += (1 if f0 > 0 else -1) * (1 if ya > yb else -1)
        i += 1
    return count, collision


def timed_path_events_vs_point(path: PLPath, q: Point) -> Tuple[int, bool]:
    """Signed crossings of one timed trajectory against a stationary point."""
    ev = column_events(path.vertices, q)
    return ev.total(), ev.collision


def signed_crossings(moving: Dict[int, PLPath], stationary: Dict[int, Point]
                     ) -> Dict[Tuple[int, int], int]:
    """Signed crossing counts for a simultaneous motion.

    ``moving`` maps point ids to timed paths (params over a common clock);
    ``stationary`` maps ids to fixed points.  Returns counts for every
    moving/moving and moving/stationary pair, keyed by ordered id pair.
    Raises DegeneracyError on an exact collision.
    """
    counts: Dict[Tuple[int, int], int] = {}
    ids = sorted(moving)
    for idx, a in enumerate(ids):
        for b in ids[idx + 1:]:
            c, collided = simultaneous_pair_events(moving[a], moving[b])
            if collided:
                raise DegeneracyError(f"moving points {a} and {b} collide")
            counts[(a, b)] = c
        for sid, q in sorted(stationary.items()):
            c, collided = timed_path_events_vs_point(moving[a], q)
            if collided:
                raise DegeneracyError(f"moving point {a} passes through stationary {sid}")
            counts[(a, sid)] = c
    return counts


def segment_intersections(arc: PLPath, seg_start: Point, seg_end: Point
                          ) -> List[Tuple[Point, Tuple[int, Fraction], int]]:
    """Transversal intersections of an arc with an oriented straight segment.

    Returns (point, (segment index, parameter along arc segment), sign) with
    sign the orientation determinant of (segment direction, arc direction).
    Degenerate contact (vertex on the segment, parallel overlap, crossing at
    a segment endpoint) raises DegeneracyError.
    """
    out = []
    d = (seg_end[0] - seg_start[0], seg_end[1] - seg_start[1])
    for i in range(arc.segment_count()):
        a, b = arc.segment(i)
        r = (b[0] - a[0], b[1] - a[1])
        denom = det2(d, r)
        w = (a[0] - seg_start[0], a[1] - seg_start[1])
        if denom == 0:
            if det2(w, d) == 0 and segments_cross(seg_start, seg_end, a, b):
                raise DegeneracyError("arc overlaps the target segment")
            continue
        t = det2(w, d) / denom          # parameter along the arc segment
        u = det2(w, r) / denom          # parameter along the target segment
        # Note both parameterizations run 0..1; derive them directly:
        # a + t*r = seg_start + u*d.
        if t < 0 or t > 1 or u < 0 or u > 1:
            continue
        if t == 0 or t == 1:
            raise DegeneracyError("arc vertex exactly on the target segment")
        if u == 0 or u == 1:
            raise DegeneracyError("arc crosses the target segment at its endpoint")
        point = (a[0] + t * r[0], a[1] + t * r[1])
        sign = 1 if det2(d, r) > 0 else -1
        out.append((point, (i, t), sign))
    return out

"""The intersection pairing engine.

Computes the pairing of the interval-ball cycle (or a barcode cycle) with
the braid image of the figure-of-eight torus cycle by direct enumeration:

1.  Apply the braid, letter by letter, as exact PL half twists to every
    figure of eight and every basepoint path, simplifying between letters.
2.  Collect candidate intersection points: transversal crossings of the
    A/B halves of the image curves with the spanning intervals (or with the
    vertical barcode edges).
3.  Enumerate selections: per torus a monotone A/B sector split (colors
    1..N1 on the A half, the rest on B) and one candidate per color, such
    that every target interval receives exactly N points whose colors read
    1..N from left to right, and every barcode edge exactly one point of
    its own color.
4.  Each selection contributes sign * monomial: the sign is the product of
    the candidates' intersection signs times the parity of the induced
    permutation of same-colored points; the monomial is the crossing-count
    character of the comparison loop, evaluated by exact event counting on
    an explicit motion (simultaneous basepoint stage, then one point at a
    time along its image curve in color order within each torus, then an
    order-preserving slide and vertical descent that is checked to produce
    no crossings at all).

The final invariant divides the pairing by the quantum integer [N+1] times
q^(m/2) and multiplies by the strand character of the braid; the division
must be exact, anything else signals an engine bug.

Per-crossing character rules (positive crossing): -q^-1 for equal colors,
q^(1/2) for colors differing by one, 1 otherwise; negative crossings invert.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .braid import PlatBraid, strand_character
from .geometry import (
    ColumnEvents,
    DegeneracyError,
    DiskModel,
    FigureEightCurve,
    Fixture,
    PLPath,
    Point,
    ZERO,
    ONE,
    build_fixture,
    column_events,
    HalfTwist,
    simplify as simplify_path,
    simplify_curve,
    simultaneous_pair_events,
)
from .laurent import LaurentPoly, divide_exact, quantum_integer


class EngineError(RuntimeError):
    """Internal consistency failure of the pairing engine."""


MAX_PERTURB_ATTEMPTS = 24


@dataclass(frozen=True)
class Target:
    """What the torus image is paired against.

    kind 'ball': the interval balls of every active torus.
    kind 'barcode': the full barcode (vertical edges), single-torus only.
    kind 'partial_barcode': interval balls everywhere except torus
    ``barcode_torus``, whose ball is replaced by its barcode edges.
    """

    kind: str
    barcode_torus: int = 0

    @staticmethod
    def ball() -> "Target":
        return Target("ball")

    @staticmethod
    def barcode() -> "Target":
        return Target("barcode")

    @staticmethod
    def partial_barcode(i: int) -> "Target":
        return Target("partial_barcode", i)


@dataclass(frozen=True)
class Candidate:
    torus: int
    color: int
    half: str
    position: Tuple[int, Fraction]       # (segment index, parameter) on the curve
    route: Tuple[str, int, Fraction]     # ("fwd"|"bwd", chain segment, parameter)
    point: Point
    slot: Tuple                           # ("interval", i) or ("edge", i, color)
    sign: int
    index: int


@dataclass
class Selection:
    splits: Dict[int, int]
    choice: Dict[Tuple[int, int], Candidate]


@dataclass
class BraidGeometry:
    """Braid image of the fixture: curves, timed basepoint paths, punctures."""

    fixture: Fixture
    braid: PlatBraid
    curves: Dict[Tuple[int, int], FigureEightCurve]
    taus: Dict[Tuple[int, int], PLPath]

    @property
    def disk(self) -> DiskModel:
        return self.fixture.disk


def apply_braid(fixture: Fixture, braid: PlatBraid, do_simplify: bool = True) -> BraidGeometry:
    """Image of the fixture under the braid homeomorphism.

    The word's letters read top to bottom; as a mapping class the word acts
    as the composition of its letters, so the last letter is applied to the
    disk first.  Basepoint paths keep their exact time parameterization so
    the simultaneous first stage of every comparison loop is the genuine
    image of the original motion.
    """
    disk = fixture.disk
    curves = {key: FigureEightCurve(c.torus, c.color, list(c.vertices), c.split_index, c.base_index)
              for key, c in fixture.curves.items()}
    taus = {key: PLPath(list(p.vertices), False, list(p.params)) for key, p in fixture.tau.items()}
    punctures = disk.punctures()
    keys = sorted(curves)

    for letter in reversed(braid.word.letters):
        twist = HalfTwist(abs(letter), 1 if letter > 0 else -1, disk)
        for key in keys:
            curves[key] = twist.apply_curve(curves[key])
        for key in keys:
            taus[key] = twist.apply_path(taus[key])
        if do_simplify:
            for key in keys:
                others = [curves[k].path() for k in keys if k != key]
                curves[key] = simplify_curve(curves[key], punctures, others)
            for key in keys:
                others = [taus[k] for k in keys if k != key]
                taus[key], _ = simplify_path(taus[key], punctures, others)
    return BraidGeometry(fixture, braid, curves, taus)


# -- geometry cache -----------------------------------------------------------

_GEO_CACHE: Dict[Tuple, BraidGeometry] = {}
_GEO_CACHE_LIMIT = 24


def _cached_geometry(braid: PlatBraid, perturbs: Dict, do_simplify: bool) -> BraidGeometry:
    pkey = tuple(sorted((k, (str(v[0]), str(v[1]))) for k, v in perturbs.items()))
    key = (braid.key(), pkey, do_simplify)
    geo = _GEO_CACHE.get(key)
    if geo is None:
        fixture = build_fixture(braid.n, braid.N, perturbs)
        geo = apply_braid(fixture, braid, do_simplify)
        if len(_GEO_CACHE) >= _GEO_CACHE_LIMIT:
            _GEO_CACHE.pop(next(iter(_GEO_CACHE)))
        _GEO_CACHE[key] = geo
    return geo


def clear_geometry_cache() -> None:
    _GEO_CACHE.clear()


# -- candidate extraction -----------------------------------------------------


def _cyclic_crossings_with_axis(curve: FigureEightCurve, lo: Fraction, hi: Fraction
                                ) -> List[Tuple[int, Fraction, Point, int]]:
    """Transversal crossings of the closed curve with y = 0 inside (lo, hi).

    Returns (segment index, parameter, point, sign) with sign +1 for upward
    crossings.  A vertex exactly on the axis inside [lo, hi] is degenerate.
    """
    verts = curve.vertices
    n = len(verts)
    out = []
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        ya, yb = a[1], b[1]
        if ya == 0:
            if lo <= a[0] <= hi:
                raise DegeneracyError("curve vertex on a target interval",
                                      (curve.torus, curve.color))
            continue
        if yb == 0:
            continue  # handled when the loop reaches that vertex
        if (ya > 0) == (yb > 0):
            continue
        t = ya / (ya - yb)
        x = a[0] + t * (b[0] - a[0])
        if x <= lo or x >= hi:
            if x == lo or x == hi:
                raise DegeneracyError("curve crosses an interval at its endpoint",
                                      (curve.torus, curve.color))
            continue
        out.append((i, t, (x, ZERO), 1 if yb > ya else -1))
    return out


def _cyclic_crossings_with_column(curve: FigureEightCurve, x0: Fraction
                                  ) -> List[Tuple[int, Fraction, Point, int]]:
    """Transversal crossings with the full-height vertical line x = x0.

    Sign +1 when the curve crosses right to left (edge oriented upward)."""
    verts = curve.vertices
    n = len(verts)
    out = []
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        fa, fb = a[0] - x0, b[0] - x0
        if fa == 0:
            raise DegeneracyError("curve vertex on a barcode edge",
                                  (curve.torus, curve.color))
        if fb == 0:
            continue
        if (fa > 0) == (fb > 0):
            continue
        t = fa / (fa - fb)
        y = a[1] + t * (b[1] - a[1])
        out.append((i, t, (x0, y), 1 if fa > 0 else -1))
    return out


def _target_slots(target: Target, disk: DiskModel, active_tori: Sequence[int]):
    """(interval slots, edge slots) for the given target and torus scope."""
    intervals = list(active_tori)
    edges: List[int] = []
    if target.kind == "ball":
        pass
    elif target.kind == "barcode":
        if list(active_tori) != [1]:
            raise EngineError("full barcode target is only defined for a single torus")
        intervals = []
        edges = [1]
    elif target.kind == "partial_barcode":
        i = target.barcode_torus
        if i not in active_tori:
            raise EngineError(f"barcode torus {i} outside the active scope")
        intervals = [j for j in active_tori if j != i]
        edges = [i]
    else:
        raise EngineError(f"unknown target kind {target.kind!r}")
    return intervals, edges


class PairingRun:
    """One evaluation of the pairing for a fixed geometry and target."""

    def __init__(self, geo: BraidGeometry, target: Target,
                 active_tori: Optional[Sequence[int]] = None):
        self.geo = geo
        self.target = target
        self.disk = geo.disk
        self.N = self.disk.N
        self.active_tori = list(active_tori if active_tori is not None
                                else range(1, self.disk.n + 1))
        self.keys = [(j, c) for j in self.active_tori for c in range(1, self.N + 1)]
        self.interval_tori, self.edge_tori = _target_slots(target, self.disk, self.active_tori)
        self.basepoints: Dict[Tuple[int, int], Point] = {
            key: geo.curves[key].basepoint() for key in self.keys}
        self.punctures = [(self.disk.puncture(k), self.disk.puncture_color(k))
                          for k in range(1, 2 * self.disk.n + 1)]
        self.candidates: Dict[Tuple[int, int], List[Candidate]] = {}
        self._event_cache: Dict[Tuple, ColumnEvents] = {}
        self._chains: Dict[Tuple, List[Point]] = {}
        self._collect_candidates()
        self._check_genericity()
        self._stage1_sign, self._stage1_half = self._stage1_character()

    # -- candidates ----------------------------------------------------------

    def _route(self, curve: FigureEightCurve, seg: int, t: Fraction) -> Tuple[str, int, Fraction]:
        """Motion route from the basepoint to a point of the curve.

        A-half targets are reached forward along the curve through the
        double point.  B-half targets must be reached within the B arc
        (never wrapping through the A loop), which may mean walking the
        curve backward; wrapping would drag the point through the region
        where the immersed-torus patches reroute adjacent colors, changing
        the homotopy class of the comparison loop.
        """
        base, split, L = curve.base_index, curve.split_index, len(curve.vertices)
        if seg < split or seg >= base:
            # A half, or B half at/after the basepoint vertex: forward.
            return ("fwd", (seg - base) % L, t)
        # B half strictly between the double point and the basepoint: backward.
        return ("bwd", base - 1 - seg, ONE - t)

    def _collect_candidates(self):
        for key in self.keys:
            curve = self.geo.curves[key]
            found: List[Candidate] = []
            for i in self.interval_tori:
                lo, hi = Fraction(2 * i - 1), Fraction(2 * i)
                for seg, t, point, sign in _cyclic_crossings_with_axis(curve, lo, hi):
                    found.append(Candidate(
                        torus=key[0], color=key[1],
                        half=curve.segment_half(seg),
                        position=(seg, t),
                        route=self._route(curve, seg, t),
                        point=point,
                        slot=("interval", i),
                        sign=sign,
                        index=0))
            for i in self.edge_tori:
                x0 = self.geo.fixture.barcode_x[(i, key[1])]
                for seg, t, point, sign in _cyclic_crossings_with_column(curve, x0):
                    found.append(Candidate(
                        torus=key[0], color=key[1],
                        half=curve.segment_half(seg),
                        position=(seg, t),
                        route=self._route(curve, seg, t),
                        point=point,
                        slot=("edge", i, key[1]),
                        sign=sign,
                        index=0))
            found.sort(key=lambda c: c.position)
            self.candidates[key] = [
                Candidate(c.torus, c.color, c.half, c.position, c.route,
                          c.point, c.slot, c.sign, idx)
                for idx, c in enumerate(found)]

    def _check_genericity(self):
        # All candidate points pairwise distinct.
        seen: Dict[Point, Tuple[int, int]] = {}
        for key in self.keys:
            for c in self.candidates[key]:
                if c.point in seen:
                    raise DegeneracyError("two candidates coincide", key)
                seen[c.point] = key
        # Reference columns pairwise distinct: punctures, basepoints, interval
        # candidates; barcode candidates share their edge's column by design.
        columns: Dict[Fraction, Tuple] = {}
        def add(x: Fraction, what: Tuple, curve_key):
            if x in columns and columns[x] != what:
                raise DegeneracyError(f"column collision between {columns[x]} and {what}",
                                      curve_key)
            columns[x] = what
        for p, _color in self.punctures:
            add(p[0], ("puncture", p[0]), None)
        for i in self.edge_tori:
            for c in range(1, self.N + 1):
                add(self.geo.fixture.barcode_x[(i, c)], ("edge", i, c), (i, c))
        for key in self.keys:
            add(self.basepoints[key][0], ("base", key), key)
        for key in self.keys:
            for cand in self.candidates[key]:
                if cand.slot[0] == "interval":
                    add(cand.point[0], ("cand", key, cand.index), key)
                else:
                    want = ("edge", cand.slot[1], cand.slot[2])
                    if columns.get(cand.point[0]) != want:
                        raise DegeneracyError("edge candidate off its column", key)

    # -- selections ------------------------------------------------------------

    def _torus_partials(self, j: int) -> List[Tuple[int, Tuple[Candidate, ...]]]:
        """Sector-consistent per-torus choices, pruned for intra-torus order."""
        per_half: Dict[int, Dict[str, List[Candidate]]] = {}
        for c in range(1, self.N + 1):
            groups = {"A": [], "B": []}
            for cand in self.candidates[(j, c)]:
                groups[cand.half].append(cand)
            per_half[c] = groups
        out: List[Tuple[int, Tuple[Candidate, ...]]] = []
        for n1 in range(self.N + 1):
            lists = [per_half[c]["A" if c <= n1 else "B"] for c in range(1, self.N + 1)]
            if any(not lst for lst in lists):
                continue
            for combo in itertools.product(*lists):
                ok = True
                for a in range(self.N):
                    for b in range(a + 1, self.N):
                        ca, cb = combo[a], combo[b]
                        if ca.slot == cb.slot and ca.slot[0] == "interval":
                            if ca.point[0] >= cb.point[0]:
                                ok = False
                                break
                        elif ca.slot[0] == "interval" and cb.slot[0] == "interval" \
                                and ca.slot == cb.slot:
                            pass
                    if not ok:
                        break
                if ok:
                    out.append((n1, combo))
        return out

    def enumerate_selections(self) -> List[Selection]:
        """All selections, in deterministic lexicographic order."""
        partials = {j: self._torus_partials(j) for j in self.active_tori}
        selections: List[Selection] = []
        occupancy: Dict[Tuple, Dict[int, Fraction]] = {}
        for i in self.interval_tori:
            occupancy[("interval", i)] = {}
        edge_used: Dict[Tuple, bool] = {}
        for i in self.edge_tori:
            for c in range(1, self.N + 1):
                edge_used[("edge", i, c)] = False

        tori = self.active_tori
        chosen: List[Tuple[int, Tuple[Candidate, ...]]] = []

        def compatible(combo: Tuple[Candidate, ...]) -> bool:
            for cand in combo:
                if cand.slot[0] == "edge":
                    if edge_used[cand.slot]:
                        return False
                else:
                    placed = occupancy[cand.slot]
                    if cand.color in placed:
                        return False
                    x = cand.point[0]
                    for c2, x2 in placed.items():
                        if (c2 < cand.color and x2 >= x) or (c2 > cand.color and x2 <= x):
                            return False
            # Pairwise within the combo already pruned per torus.
            return True

    # place/unplace helpers keep the DFS allocation-free.
        def place(combo, undo):
            for cand in combo:
                if cand.slot[0] == "edge":
                    edge_used[cand.slot] = True
                    undo.append(cand)
                else:
                    occupancy[cand.slot][cand.color] = cand.point[0]
                    undo.append(cand)

        def unplace(undo):
            for cand in undo:
                if cand.slot[0] == "edge":
                    edge_used[cand.slot] = False
                else:
                    del occupancy[cand.slot][cand.color]

        def dfs(idx: int):
            if idx == len(tori):
                splits = {}
                choice = {}
                for j, (n1, combo) in zip(tori, chosen):
                    splits[j] = n1
                    for cand in combo:
                        choice[(j, cand.color)] = cand
                selections.append(Selection(splits, choice))
                return
            j = tori[idx]
            for n1, combo in partials[j]:
                if not compatible(combo):
                    continue
                undo: List[Candidate] = []
                place(combo, undo)
                chosen.append((n1, combo))
                dfs(idx + 1)
                chosen.pop()
                unplace(undo)

        dfs(0)
        return selections

    # -- character machinery ---------------------------------------------------

    def _stage1_character(self) -> Tuple[int, int]:
        """Character of the simultaneous basepoint-path stage."""
        sign, half = 1, 0
        keys = self.keys
        for idx, a in enumerate(keys):
            pa = self.geo.taus[a]
            for b in keys[idx + 1:]:
                dc = abs(a[1] - b[1])
                if dc > 1:
                    continue
                cnt, collided = simultaneous_pair_events(pa, self.geo.taus[b])
                if collided:
                    raise DegeneracyError("basepoint paths collide", a)
                if dc == 0:
                    sign *= (-1) ** (cnt & 1)
                    half += -2 * cnt
                else:
                    half += cnt
            for p, color in self.punctures:
                if abs(a[1] - color) != 1:
                    continue
                try:
                    ev = column_events(pa.vertices, p)
                except DegeneracyError as exc:
                    raise DegeneracyError(str(exc), a) from None
                if ev.collision:
                    raise DegeneracyError("basepoint path through a puncture", a)
                half += ev.total()
        return sign, half

    def _chain(self, key: Tuple[int, int], direction: str) -> List[Point]:
        chain = self._chains.get((key, direction))
        if chain is None:
            curve = self.geo.curves[key]
            b = curve.base_index
            L = len(curve.vertices)
            if direction == "fwd":
                chain = [curve.vertices[(b + i) % L] for i in range(L + 1)]
            else:
                chain = [curve.vertices[i] for i in range(b, curve.split_index - 1, -1)]
            self._chains[(key, direction)] = chain
        return chain

    def _events(self, key: Tuple[int, int], direction: str, q: Point) -> ColumnEvents:
        ck = (key, direction, q)
        ev = self._event_cache.get(ck)
        if ev is None:
            try:
                ev = column_events(self._chain(key, direction), q)
            except DegeneracyError as exc:
                raise DegeneracyError(str(exc), key) from None
            if ev.collision:
                raise DegeneracyError("curve passes through a reference point", key)
            self._event_cache[ck] = ev
        return ev

    def _count_to(self, key: Tuple[int, int], cand: Candidate, q: Point) -> int:
        direction, seg, t = cand.route
        return self._events(key, direction, q).count_before(seg, t)

    def _puncture_half(self, key: Tuple[int, int], cand: Candidate) -> int:
        half = 0
        c = key[1]
        for p, color in self.punctures:
            if abs(c - color) == 1:
                half += self._count_to(key, cand, p)
        return half

    def _epsilon(self, sel: Selection) -> int:
        sign = 1
        for cand in sel.choice.values():
            sign *= cand.sign
        # Parity of the induced permutation of same-colored points.
        for c in range(1, self.N + 1):
            src = self.active_tori
            images = [sel.choice[(j, c)].slot[1] for j in src]
            perm = {j: i for j, i in zip(src, images)}
            seen = set()
            for j in src:
                if j in seen:
                    continue
                length = 0
                k = j
                while k not in seen:
                    seen.add(k)
                    k = perm[k]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        return sign

    def _stage3_check(self, sel: Selection) -> None:
        """The closing slide and descent must produce no crossing events.

        Both stages move every point linearly (slide within its interval or
        hold on its edge, then straight down), so it suffices to check that
        no ordered pair of x-coordinates changes side between the stage
        endpoints, including against the puncture columns.
        """
        start = {}
        mid = {}
        for key, cand in sel.choice.items():
            start[key] = cand.point[0]
            if cand.slot[0] == "interval":
                mid[key] = self.geo.fixture.slot_x[(cand.slot[1], key[1])]
            else:
                mid[key] = cand.point[0]
        columns = [p[0] for p, _ in self.punctures]
        keys = list(sel.choice)
        for idx, a in enumerate(keys):
            for b in keys[idx + 1:]:
                d0 = start[a] - start[b]
                d1 = mid[a] - mid[b]
                if d0 == 0 or d1 == 0 or (d0 > 0) != (d1 > 0):
                    raise EngineError("closing slide produced a crossing event")
            for x in columns:
                d0 = start[a] - x
                d1 = mid[a] - x
                if d0 == 0 or d1 == 0 or (d0 > 0) != (d1 > 0):
                    raise EngineError("closing slide crossed a puncture column")
        # Edge points then slide along the bottom boundary to their feet.
        for key, cand in sel.choice.items():
            if cand.slot[0] == "edge":
                foot = self.basepoints[key][0]
                for key2 in keys:
                    if key2 == key:
                        continue
                    other = mid[key2]
                    d0 = mid[key] - other
                    d1 = foot - other
                    if d0 == 0 or d1 == 0 or (d0 > 0) != (d1 > 0):
                        raise EngineError("boundary slide produced a crossing event")

    def contribution(self, sel: Selection) -> LaurentPoly:
        sign = self._stage1_sign
        half = self._stage1_half
        order = self.keys  # tori ascending, colors ascending within each
        for pos, key in enumerate(order):
            j, c = key
            cand = sel.choice[key]
            half += self._puncture_half(key, cand)
            for pos2, key2 in enumerate(order):
                if key2 == key:
                    continue
                j2, c2 = key2
                dc = abs(c - c2)
                if dc > 1:
                    continue
                parked = sel.choice[key2].point if pos2 < pos else self.basepoints[key2]
                cnt = self._count_to(key, cand, parked)
                if dc == 0:
                    sign *= (-1) ** (cnt & 1)
                    half += -2 * cnt
                else:
                    half += cnt
        if half % 2 != 0:
            raise EngineError("comparison loop character has a half-integer exponent")
        self._stage3_check(sel)
        return LaurentPoly.monomial(self._epsilon(sel) * sign, half)

    def run(self, workers: int = 1) -> LaurentPoly:
        selections = self.enumerate_selections()
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                contributions = list(pool.map(self.contribution, selections))
        else:
            contributions = [self.contribution(sel) for sel in selections]
        total = LaurentPoly.zero()
        for c in contributions:
            total = total + c
        return total


# -- public operations ---------------------------------------------------------


def _perturb_vector(attempt: int) -> Tuple[Fraction, Fraction]:
    scale = Fraction(1, 2 ** (64 + attempt))
    return (scale, 2 * scale)


def intersection_pairing(braid: PlatBraid, target: Target,
                         active_tori: Optional[Sequence[int]] = None,
                         do_simplify: bool = True,
                         workers: int = 1) -> LaurentPoly:
    """Sum of signed character monomials over all intersection selections.

    Retries with deterministic tiny rational translations of the offending
    fixture curve whenever non-generic geometry is detected; the value is
    independent of such retries.
    """
    perturbs: Dict[Tuple[int, int], Tuple[Fraction, Fraction]] = {}
    for attempt in range(MAX_PERTURB_ATTEMPTS):
        geo = _cached_geometry(braid, perturbs, do_simplify)
        try:
            run = PairingRun(geo, target, active_tori)
            return run.run(workers)
        except DegeneracyError as exc:
            key = exc.curve_key
            if key is None:
                key = min(k for k in geo.curves)
            dx, dy = _perturb_vector(attempt)
            old = perturbs.get(key, (ZERO, ZERO))
            perturbs[key] = (old[0] + dx, old[1] + dy)
    raise EngineError("geometry still degenerate after maximal perturbation attempts")


def intersection_pairing_ball(braid: PlatBraid, **kw) -> LaurentPoly:
    return intersection_pairing(braid, Target.ball(), **kw)


def plat_invariant(braid: PlatBraid, do_simplify: bool = True, workers: int = 1) -> LaurentPoly:
    """The normalized invariant of the plat closure.

    strand_character(braid) / ([N+1] q^(m/2)) times the pairing against the
    interval balls; the division is exact by construction and a failure is
    reported as an engine bug.
    """
    pairing = intersection_pairing(braid, Target.ball(),
                                   do_simplify=do_simplify, workers=workers)
    numerator = strand_character(braid) * pairing
    denom = quantum_integer(braid.N + 1) * LaurentPoly.q_power(braid.mobile_count)
    try:
        return divide_exact(numerator, denom)
    except ArithmeticError as exc:
        raise EngineError(f"normalization was not exact: {exc}") from exc


def plat_invariant_reduced(braid: PlatBraid, do_simplify: bool = True,
                           workers: int = 1) -> LaurentPoly:
    """Invariant computed without the quantum-integer division.

    Requires the rightmost strand to make no crossings (no letter may touch
    strand 2n); the rightmost torus and interval are dropped and the result
    equals plat_invariant on such braids.
    """
    top = braid.strand_count
    for k in braid.word.letters:
        if abs(k) >= top - 1:
            raise ValueError("rightmost strand makes crossings; reduced invariant undefined")
    n = braid.n
    active = list(range(1, n))
    m_reduced = braid.N * (n - 1)
    if not active:
        pairing = LaurentPoly.one()
    else:
        pairing = intersection_pairing(braid, Target.ball(), active_tori=active,
                                       do_simplify=do_simplify, workers=workers)
    return strand_character(braid) * LaurentPoly.q_power(-m_reduced) * pairing


# -- test-facing character helper -----------------------------------------------


def motion_character(moving: Dict[int, PLPath], stationary: Dict[int, Point],
                     colors: Dict[int, int]) -> LaurentPoly:
    """Character monomial of an explicit simultaneous motion.

    ``moving`` maps ids to timed paths over a common clock, ``stationary``
    to fixed points; ``colors`` gives every id's color.  Crossing counts of
    pairs whose colors differ by at least two never contribute.
    """
    from .geometry import signed_crossings

    relevant_stationary = stationary
    counts = signed_crossings(moving, relevant_stationary)
    sign, half = 1, 0
    for (a, b), cnt in counts.items():
        dc = abs(colors[a] - colors[b])
        if dc == 0:
            sign *= (-1) ** (cnt & 1)
            half += -2 * cnt
        elif dc == 1:
            half += cnt
    return LaurentPoly.monomial(sign, half)

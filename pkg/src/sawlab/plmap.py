"""Piecewise linear self-maps of [0, 1] over exact rationals.

The representation is the breakpoint-value table: strictly increasing
breakpoints from 0 to 1 and the map's value at each. Between breakpoints the
map is the straight line through the neighboring table entries, so slopes are
derived, never stored independently. The constructor merges collinear interior
breakpoints, which makes the representation canonical: two tables describe the
same function iff they normalize to the same tuple pair.

Everything here is exact Fraction arithmetic. Budgets guard the operations
whose output size can blow up (composition, long orbits); they raise
BudgetExceeded rather than grinding.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, DomainError, StructureError
from .rational import Rat, format_rat, parse_rat

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Ivl:
    """Closed rational interval [lo, hi], possibly degenerate."""

    lo: Rat
    hi: Rat

    def __post_init__(self):
        if self.lo > self.hi:
            raise StructureError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    def contains(self, x: Rat) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Ivl") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @property
    def length(self) -> Rat:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def interior_intersects(self, other: "Ivl") -> bool:
        """True iff the open interiors overlap. Degenerate intervals never do."""
        return max(self.lo, other.lo) < min(self.hi, other.hi)

    def hull(self, other: "Ivl") -> "Ivl":
        return Ivl(min(self.lo, other.lo), max(self.hi, other.hi))

    def midpoint(self) -> Rat:
        return (self.lo + self.hi) / 2

    def to_json(self) -> dict:
        return {"lo": format_rat(self.lo), "hi": format_rat(self.hi)}

    @staticmethod
    def from_json(obj: dict) -> "Ivl":
        return Ivl(parse_rat(obj["lo"]), parse_rat(obj["hi"]))


@dataclass(frozen=True)
class OrbitRecord:
    """Eventually periodic orbit: x_0 .. x_{preperiod+period}.

    The last listed point equals points[preperiod], closing the cycle; period
    is minimal. Every orbit of a rational point under a rational PL map closes,
    but possibly not within the step budget.
    """

    start: Rat
    points: tuple[Rat, ...]
    preperiod: int
    period: int

    @property
    def cycle(self) -> tuple[Rat, ...]:
        return self.points[self.preperiod : self.preperiod + self.period]

    def to_json(self) -> dict:
        return {
            "start": format_rat(self.start),
            "points": [format_rat(p) for p in self.points],
            "preperiod": self.preperiod,
            "period": self.period,
        }


def _merge_collinear(bps: list[Rat], vals: list[Rat]) -> tuple[tuple[Rat, ...], tuple[Rat, ...]]:
    out_b = [bps[0]]
    out_v = [vals[0]]
    for i in range(1, len(bps) - 1):
        left = (vals[i] - out_v[-1]) * (bps[i + 1] - bps[i])
        right = (vals[i + 1] - vals[i]) * (bps[i] - out_b[-1])
        if left == right:
            continue
        out_b.append(bps[i])
        out_v.append(vals[i])
    out_b.append(bps[-1])
    out_v.append(vals[-1])
    return tuple(out_b), tuple(out_v)


class PiecewiseLinearMap:
    """A continuous piecewise linear map of [0, 1] into itself."""

    __slots__ = ("breakpoints", "values", "slopes")

    def __init__(self, breakpoints, values):
        bps = [Fraction(b) for b in breakpoints]
        vals = [Fraction(v) for v in values]
        if len(bps) != len(vals):
            raise StructureError("breakpoints and values must have equal length")
        if len(bps) < 2:
            raise StructureError("need at least two breakpoints")
        if bps[0] != ZERO or bps[-1] != ONE:
            raise StructureError("domain must be exactly [0, 1]")
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise StructureError("breakpoints must be strictly increasing")
        for v in vals:
            if not (ZERO <= v <= ONE):
                raise StructureError(f"value {v} escapes [0, 1]")
        self.breakpoints, self.values = _merge_collinear(bps, vals)
        self.slopes = tuple(
            (v1 - v0) / (b1 - b0)
            for b0, b1, v0, v1 in zip(
                self.breakpoints, self.breakpoints[1:], self.values, self.values[1:]
            )
        )

    @property
    def piece_count(self) -> int:
        return len(self.slopes)

    def _piece_index(self, x: Rat) -> int:
        """Index of the piece whose closed interval contains x (rightmost match)."""
        i = bisect_right(self.breakpoints, x) - 1
        return min(i, self.piece_count - 1)

    def __call__(self, x) -> Rat:
        x = Fraction(x)
        if not (ZERO <= x <= ONE):
            raise DomainError(f"{x} outside [0, 1]")
        i = self._piece_index(x)
        return self.values[i] + self.slopes[i] * (x - self.breakpoints[i])

    def iterate(self, x, n: int) -> Rat:
        x = Fraction(x)
        for _ in range(n):
            x = self(x)
        return x

    def orbit(self, x, n: int) -> tuple[Rat, ...]:
        """x, f(x), ..., f^n(x): n+1 points."""
        x = Fraction(x)
        pts = [x]
        for _ in range(n):
            x = self(x)
            pts.append(x)
        return tuple(pts)

    def orbit_eventually_periodic(self, x, max_steps: int = 100_000) -> OrbitRecord:
        """Follow x until the orbit revisits a point; exact detection.

        Raises BudgetExceeded if no repeat appears within max_steps steps.
        """
        x = Fraction(x)
        seen: dict[Rat, int] = {x: 0}
        pts = [x]
        cur = x
        for t in range(1, max_steps + 1):
            cur = self(cur)
            pts.append(cur)
            if cur in seen:
                j = seen[cur]
                return OrbitRecord(start=x, points=tuple(pts), preperiod=j, period=t - j)
            seen[cur] = t
        raise BudgetExceeded("steps", max_steps)

    # --- structure queries ---

    def plateaus(self) -> tuple[Ivl, ...]:
        """Maximal closed intervals on which the map is constant."""
        out = []
        i = 0
        while i < self.piece_count:
            if self.slopes[i] == 0:
                j = i
                while j + 1 < self.piece_count and self.slopes[j + 1] == 0:
                    j += 1
                out.append(Ivl(self.breakpoints[i], self.breakpoints[j + 1]))
                i = j + 1
            else:
                i += 1
        return tuple(out)

    def laps(self) -> tuple[Ivl, ...]:
        """Maximal closed intervals of strict monotonicity.

        Flat pieces are not laps and break lap runs, as does a slope sign
        change. Consecutive pieces with same-sign slopes merge into one lap.
        """
        out = []
        start = None
        sign = 0
        for i, s in enumerate(self.slopes):
            sg = (s > 0) - (s < 0)
            if sg == 0:
                if start is not None:
                    out.append(Ivl(start, self.breakpoints[i]))
                    start = None
                sign = 0
            elif sg == sign:
                continue
            else:
                if start is not None:
                    out.append(Ivl(start, self.breakpoints[i]))
                start = self.breakpoints[i]
                sign = sg
        if start is not None:
            out.append(Ivl(start, self.breakpoints[-1]))
        return tuple(out)

    def lap_count(self) -> int:
        return len(self.laps())

    def left_slope(self, x) -> Rat:
        """Slope just left of x; at x = 0 duplicates the right slope."""
        x = Fraction(x)
        if not (ZERO <= x <= ONE):
            raise DomainError(f"{x} outside [0, 1]")
        if x == ZERO:
            return self.slopes[0]
        i = bisect_right(self.breakpoints, x) - 1
        if self.breakpoints[i] == x:
            return self.slopes[i - 1] if i > 0 else self.slopes[0]
        return self.slopes[min(i, self.piece_count - 1)]

    def right_slope(self, x) -> Rat:
        """Slope just right of x; at x = 1 duplicates the left slope."""
        x = Fraction(x)
        if not (ZERO <= x <= ONE):
            raise DomainError(f"{x} outside [0, 1]")
        if x == ONE:
            return self.slopes[-1]
        i = bisect_right(self.breakpoints, x) - 1
        return self.slopes[min(i, self.piece_count - 1)]

    def image_of_interval(self, ivl: Ivl) -> Ivl:
        """Exact image f([a, b]): extremes occur at endpoints or breakpoints."""
        if not (ZERO <= ivl.lo and ivl.hi <= ONE):
            raise DomainError(f"{ivl} outside [0, 1]")
        cand = [self(ivl.lo), self(ivl.hi)]
        i = bisect_right(self.breakpoints, ivl.lo)
        while i < len(self.breakpoints) and self.breakpoints[i] < ivl.hi:
            cand.append(self.values[i])
            i += 1
        return Ivl(min(cand), max(cand))

    def preimages_of_point(self, y) -> tuple[tuple[Rat, ...], tuple[Ivl, ...]]:
        """All solutions of f(x) = y: isolated points plus flat intervals."""
        y = Fraction(y)
        pts: list[Rat] = []
        flats: list[Ivl] = []
        for i, s in enumerate(self.slopes):
            b0, b1 = self.breakpoints[i], self.breakpoints[i + 1]
            v0 = self.values[i]
            if s == 0:
                if v0 == y:
                    flats.append(Ivl(b0, b1))
                continue
            x = b0 + (y - v0) / s
            if b0 <= x <= b1:
                pts.append(x)
        pts = sorted(set(pts))
        # drop points swallowed by a flat preimage interval
        out_pts = tuple(p for p in pts if not any(f.contains(p) for f in flats))
        return out_pts, tuple(flats)

    # --- composition ---

    def compose_with(self, inner: "PiecewiseLinearMap", piece_budget: int = 1_000_000) -> "PiecewiseLinearMap":
        """Exact self ∘ inner.

        Breakpoints of the composition: inner's breakpoints plus every point
        where inner crosses a breakpoint of self. Budgeted by resulting piece
        count.
        """
        outer_bps = self.breakpoints
        new_bps: set[Rat] = set(inner.breakpoints)
        for i, s in enumerate(inner.slopes):
            if s == 0:
                continue
            u, v = inner.breakpoints[i], inner.breakpoints[i + 1]
            fu = inner.values[i]
            lo_val, hi_val = (fu, inner.values[i + 1]) if s > 0 else (inner.values[i + 1], fu)
            for b in outer_bps:
                if lo_val < b < hi_val:
                    new_bps.add(u + (b - fu) / s)
        if len(new_bps) - 1 > piece_budget:
            raise BudgetExceeded("pieces", piece_budget, needed=len(new_bps) - 1)
        bps = sorted(new_bps)
        vals = [self(inner(b)) for b in bps]
        return PiecewiseLinearMap(bps, vals)

    def compose_self(self, n: int, piece_budget: int = 1_000_000) -> "PiecewiseLinearMap":
        """Exact n-th iterate f^n as a map, by repeated squaring."""
        if n < 1:
            raise StructureError("iterate count must be >= 1")
        result: PiecewiseLinearMap | None = None
        base = self
        k = n
        while True:
            if k & 1:
                result = base if result is None else result.compose_with(base, piece_budget)
            k >>= 1
            if k == 0:
                break
            base = base.compose_with(base, piece_budget)
        return result

    # --- serialization, equality ---

    def to_json(self) -> dict:
        return {
            "breakpoints": [format_rat(b) for b in self.breakpoints],
            "values": [format_rat(v) for v in self.values],
        }

    @staticmethod
    def from_json(obj: dict) -> "PiecewiseLinearMap":
        return PiecewiseLinearMap(
            [parse_rat(b) for b in obj["breakpoints"]],
            [parse_rat(v) for v in obj["values"]],
        )

    def __eq__(self, other):
        if not isinstance(other, PiecewiseLinearMap):
            return NotImplemented
        return self.breakpoints == other.breakpoints and self.values == other.values

    def __hash__(self):
        return hash((self.breakpoints, self.values))

    def __repr__(self):
        return f"PiecewiseLinearMap({self.piece_count} pieces)"

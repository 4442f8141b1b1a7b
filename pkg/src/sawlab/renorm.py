"""Renormalization windows, towers, and the odometer comparison.

An interval J is a period-p renormalization window when its first p images
have pairwise disjoint interiors and the p-th image returns into J. Towers
stack such windows along the doubling cascade: at level n the cycle of the
principal critical value splits into 2^n residue classes, each class hull is
a block, and the blocks must be disjoint, cycle correctly under the map, and
nest strictly down the levels. The level-n block structure is exactly the
depth-n approximation of the binary adding machine, which is what the
semiconjugacy check verifies, fiber sizes included.

Two independent routes certify a window on purpose: the iterated-image route
and the composed-power route. They share no code path beyond the map itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, ConstraintViolation
from .family import StuntedSawtoothMap
from .homoclinic import unstable_manifold
from .odometer import index_word, word_index, adding_machine_step
from .plmap import Ivl, PiecewiseLinearMap
from .rational import Rat, format_rat


@dataclass(frozen=True)
class RenormCheck:
    """Certificate or first violation for one window candidate."""

    ok: bool
    window: Ivl
    period: int
    images: tuple[Ivl, ...]
    violation: dict | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "window": self.window.to_json(),
            "period": self.period,
            "images": [iv.to_json() for iv in self.images],
            "violation": self.violation,
        }


def check_renormalization(f: PiecewiseLinearMap, J: Ivl, p: int) -> RenormCheck:
    """Iterated-image route: disjoint interiors along the cycle, then return."""
    if p < 1:
        raise ConstraintViolation("period must be positive")
    images = [J]
    for _ in range(p):
        images.append(f.image_of_interval(images[-1]))
    cycle = images[:p]
    for i in range(p):
        for k in range(i + 1, p):
            if cycle[i].interior_intersects(cycle[k]):
                return RenormCheck(
                    ok=False,
                    window=J,
                    period=p,
                    images=tuple(images),
                    violation={"kind": "overlap", "pair": [i, k]},
                )
    ret = images[p]
    if not J.contains_interval(ret):
        escape = ret.lo if ret.lo < J.lo else ret.hi
        return RenormCheck(
            ok=False,
            window=J,
            period=p,
            images=tuple(images),
            violation={"kind": "escape", "point": format_rat(escape)},
        )
    return RenormCheck(ok=True, window=J, period=p, images=tuple(images))


def verify_window(
    f: PiecewiseLinearMap, J: Ivl, p: int, piece_budget: int = 1_000_000
) -> bool:
    """Composed-power route: the same two conditions out of f^i as maps."""
    ranges = [J]
    for i in range(1, p + 1):
        g = f.compose_self(i, piece_budget)
        ranges.append(g.image_of_interval(J))
    for i in range(p):
        for k in range(i + 1, p):
            if ranges[i].interior_intersects(ranges[k]):
                return False
    return J.contains_interval(ranges[p])


@dataclass(frozen=True)
class GapFixedPointReport:
    """The fixed point in the gap of the level-1 cycle and its certified mate.

    p: smallest fixed point strictly between the two cycle points.
    q: the largest second-iterate fixed point at or above p whose unstable set
    under the second iterate covers the cycle hull. Candidates are tried in
    descending order; ones whose unstable set collapses (plateau-absorbed) are
    skipped.
    """

    ok: bool
    level: int
    cycle: tuple[Rat, ...]
    p: Rat | None
    q: Rat | None
    unstable: Ivl | None
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "level": self.level,
            "cycle": [format_rat(c) for c in self.cycle],
            "p": format_rat(self.p) if self.p is not None else None,
            "q": format_rat(self.q) if self.q is not None else None,
            "unstable": self.unstable.to_json() if self.unstable else None,
            "reason": self.reason,
        }


def gap_fixed_point(
    m: StuntedSawtoothMap, max_steps: int = 100_000, piece_budget: int = 1_000_000
) -> GapFixedPointReport:
    from .orbits import iterate_fixed_points

    f = m.map
    rec = f.orbit_eventually_periodic(m.w[0], max_steps)
    cycle = rec.cycle
    if rec.period != 2:
        return GapFixedPointReport(
            ok=False,
            level=1,
            cycle=cycle,
            p=None,
            q=None,
            unstable=None,
            reason=f"critical value cycle has period {rec.period}, not 2",
        )
    lo, hi = min(cycle), max(cycle)
    hull = Ivl(lo, hi)
    fixed = [x for x in iterate_fixed_points(f) if lo < x < hi]
    if not fixed:
        return GapFixedPointReport(
            ok=False,
            level=1,
            cycle=cycle,
            p=None,
            q=None,
            unstable=None,
            reason="no fixed point inside the cycle gap",
        )
    p = min(fixed)
    g = f.compose_self(2, piece_budget)
    candidates = sorted(
        (x for x in iterate_fixed_points(g) if p <= x <= hi), reverse=True
    )
    for q in candidates:
        w = unstable_manifold(g, q)
        if w.contains_interval(hull):
            return GapFixedPointReport(
                ok=True, level=1, cycle=cycle, p=p, q=q, unstable=w
            )
    return GapFixedPointReport(
        ok=False,
        level=1,
        cycle=cycle,
        p=p,
        q=None,
        unstable=None,
        reason="no second-iterate fixed point certifies the cycle hull",
    )


@dataclass(frozen=True)
class TowerLevel:
    n: int
    window: Ivl
    blocks: tuple[Ivl, ...]
    cert: RenormCheck

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "window": self.window.to_json(),
            "blocks": [b.to_json() for b in self.blocks],
            "cert": self.cert.to_json(),
        }


@dataclass(frozen=True)
class RenormTower:
    levels: tuple[TowerLevel, ...]
    cycle_period: int
    stop_reason: str | None

    @property
    def depth(self) -> int:
        return len(self.levels)

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "cycle_period": self.cycle_period,
            "stop_reason": self.stop_reason,
            "levels": [lv.to_json() for lv in self.levels],
        }


def _residue_blocks(cycle: tuple[Rat, ...], n: int) -> list[Ivl]:
    """Hulls of the residue classes mod 2^n along the temporal cycle order."""
    q = 1 << n
    blocks = []
    for r in range(q):
        pts = cycle[r::q]
        blocks.append(Ivl(min(pts), max(pts)))
    return blocks


def build_tower(
    m: StuntedSawtoothMap, max_depth: int = 6, max_steps: int = 1_000_000
) -> RenormTower:
    """Stack doubling levels out of the principal critical value cycle.

    Stops at the first level that fails: period not divisible, blocks
    overlapping, a block escaping its successor, window certification
    failing, or nesting going non-strict. The tower reports how deep it got
    and why it stopped.
    """
    f = m.map
    rec = f.orbit_eventually_periodic(m.w[0], max_steps)
    cycle = rec.cycle
    levels: list[TowerLevel] = []
    stop = None
    prev_window: Ivl | None = None
    for n in range(1, max_depth + 1):
        q = 1 << n
        if rec.period % q != 0:
            stop = f"cycle period {rec.period} not divisible by {q}"
            break
        blocks = _residue_blocks(cycle, n)
        overlap = None
        for i in range(q):
            for k in range(i + 1, q):
                if blocks[i].interior_intersects(blocks[k]):
                    overlap = (i, k)
                    break
            if overlap:
                break
        if overlap:
            stop = f"blocks {overlap[0]} and {overlap[1]} overlap at level {n}"
            break
        escape = None
        for r in range(q):
            img = f.image_of_interval(blocks[r])
            if not blocks[(r + 1) % q].contains_interval(img):
                escape = r
                break
        if escape is not None:
            stop = f"image of block {escape} escapes its successor at level {n}"
            break
        window = blocks[0]
        cert = check_renormalization(f, window, q)
        if not cert.ok:
            stop = f"window certification failed at level {n}: {cert.violation}"
            break
        if prev_window is not None:
            if not (
                prev_window.contains_interval(window)
                and window.length < prev_window.length
            ):
                stop = f"nesting not strict at level {n}"
                break
        levels.append(TowerLevel(n=n, window=window, blocks=tuple(blocks), cert=cert))
        prev_window = window
    return RenormTower(levels=tuple(levels), cycle_period=rec.period, stop_reason=stop)


@dataclass(frozen=True)
class SemiconjugacyReport:
    """Depth-n comparison of the block dynamics with the adding machine."""

    ok: bool
    n: int
    cycle_period: int
    permutation_ok: bool
    blocks: tuple[Ivl, ...]
    fiber_max_points: int
    fiber_max_length: Rat | None
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "n": self.n,
            "cycle_period": self.cycle_period,
            "permutation_ok": self.permutation_ok,
            "blocks": [b.to_json() for b in self.blocks],
            "fiber_max_points": self.fiber_max_points,
            "fiber_max_length": (
                format_rat(self.fiber_max_length)
                if self.fiber_max_length is not None
                else None
            ),
            "reason": self.reason,
        }


def semiconjugacy_check(
    m: StuntedSawtoothMap, n: int, max_steps: int = 1_000_000
) -> SemiconjugacyReport:
    """Does the level-n block dynamics factor onto the n-bit adding machine?

    Blocks are labeled by n-bit words through the temporal order of the
    cycle; the check is that the map advances each block to the one whose
    word is the odometer step of its own. Never throws on a mismatch: the
    report carries the reason.
    """
    if n < 1:
        raise ConstraintViolation("level must be positive")
    f = m.map
    rec = f.orbit_eventually_periodic(m.w[0], max_steps)
    cycle = rec.cycle
    q = 1 << n
    if rec.period % q != 0:
        return SemiconjugacyReport(
            ok=False,
            n=n,
            cycle_period=rec.period,
            permutation_ok=False,
            blocks=(),
            fiber_max_points=0,
            fiber_max_length=None,
            reason=f"cycle period {rec.period} not divisible by {q}",
        )
    blocks = _residue_blocks(cycle, n)
    for i in range(q):
        for k in range(i + 1, q):
            if blocks[i].interior_intersects(blocks[k]):
                return SemiconjugacyReport(
                    ok=False,
                    n=n,
                    cycle_period=rec.period,
                    permutation_ok=False,
                    blocks=tuple(blocks),
                    fiber_max_points=len(cycle) // q,
                    fiber_max_length=max(b.length for b in blocks),
                    reason=f"blocks {i} and {k} have overlapping interiors",
                )
    perm_ok = True
    for r in range(q):
        img = f.image_of_interval(blocks[r])
        target = blocks[word_index(adding_machine_step(index_word(r, n)))]
        if not target.contains_interval(img):
            perm_ok = False
            break
    return SemiconjugacyReport(
        ok=perm_ok,
        n=n,
        cycle_period=rec.period,
        permutation_ok=perm_ok,
        blocks=tuple(blocks),
        fiber_max_points=len(cycle) // q,
        fiber_max_length=max(b.length for b in blocks),
        reason=None if perm_ok else "block image misses its odometer successor",
    )

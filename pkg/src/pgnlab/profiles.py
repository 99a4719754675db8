"""Combined graphs q -> L_{N,j}(q): grid traces, events, and consistency checks.

A trace evaluates all N+1 successive-minimum functions on an arithmetic
q-grid, records local minima / meeting events of the lowest level, and can be
cross-checked against its dual trace: the Minkowski and Mahler defect bounds
hold at every q, and the tail-empirical psi-limits must satisfy the standard
parametric inequalities up to an explicit O(1/q) tolerance.
"""

from __future__ import annotations

import json
import xml.sax.saxutils
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from pgnlab.exact import RatInterval, log_bounds
from pgnlab.lattice import (
    DUAL,
    PRIMAL,
    LatticeError,
    MinimaPoint,
    ParamProblem,
    mahler_bound_integer,
    minkowski_bound_integer,
    successive_minima,
)
from pgnlab.realnum import GeneralPoint, VeronesePoint


class ProfileError(ValueError):
    pass


@dataclass
class ProfileTrace:
    """Piecewise record of the N+1 minima functions over a q-grid."""

    side: str
    N: int
    source_descriptor: dict
    grid: list[Fraction]
    points: dict[int, list[Optional[MinimaPoint]]]
    search_bound: Optional[int] = None
    incomplete: list[Fraction] = field(default_factory=list)

    def __post_init__(self):
        if any(b >= a for a, b in zip(self.grid[1:], self.grid)):
            raise ProfileError("grid must be strictly increasing")

    def level_points(self, level: int) -> list[tuple[Fraction, MinimaPoint]]:
        return [(q, p) for q, p in zip(self.grid, self.points[level]) if p is not None]

    def certified_level_points(self, level: int) -> list[tuple[Fraction, MinimaPoint]]:
        return [(q, p) for q, p in self.level_points(level) if p.certified]

    def complete_at(self, q: Fraction) -> bool:
        i = self.grid.index(q)
        return all(self.points[j][i] is not None for j in range(1, self.N + 2))

    # -- events ---------------------------------------------------------------

    def level1_extrema(self) -> tuple[list[tuple[Fraction, MinimaPoint]],
                                      list[tuple[Fraction, MinimaPoint]]]:
        """(local minima, local maxima) of L_{N,1} over certified grid points.

        A point counts only when it differs from both neighbours by more than
        twice the certification width, so interval slack cannot fake an event.
        """
        pts = self.certified_level_points(1)
        minima, maxima = [], []
        for (qa, a), (qb, b), (qc, c) in zip(pts, pts[1:], pts[2:]):
            w = 2 * max(a.L_value.width, b.L_value.width, c.L_value.width)
            if b.L_value.mid < a.L_value.mid - w and b.L_value.mid < c.L_value.mid - w:
                minima.append((qb, b))
            if b.L_value.mid > a.L_value.mid + w and b.L_value.mid > c.L_value.mid + w:
                maxima.append((qb, b))
        return minima, maxima

    def meetings(self) -> list[Fraction]:
        """Grid q where the level-1 and level-2 intervals certifiably touch."""
        out = []
        for i, q in enumerate(self.grid):
            p1, p2 = self.points[1][i], self.points[2][i]
            if p1 is None or p2 is None:
                continue
            if p1.L_value.hi >= p2.L_value.lo:
                out.append(q)
        return out


def trace(point: VeronesePoint | GeneralPoint, side: str, q_max,
          grid_step, search_bound: Optional[int] = None,
          precision: int = 128) -> ProfileTrace:
    """Trace all N+1 minima levels on the grid {0, step, 2*step, ..., <= q_max}."""
    q_max, grid_step = Fraction(q_max), Fraction(grid_step)
    if q_max <= 0 or grid_step <= 0:
        raise ProfileError("q_max and grid_step must be positive")
    grid = []
    q = Fraction(0)
    while q <= q_max:
        grid.append(q)
        q += grid_step
    N = point.N
    points: dict[int, list[Optional[MinimaPoint]]] = {j: [] for j in range(1, N + 2)}
    incomplete = []
    for q in grid:
        prob = ParamProblem(point, side, q)
        try:
            pts = successive_minima(prob, search_bound=search_bound,
                                    precision=precision)
        except LatticeError:
            for j in range(1, N + 2):
                points[j].append(None)
            incomplete.append(q)
            continue
        for j, p in enumerate(pts, start=1):
            points[j].append(p)
    desc = point.descriptor()
    return ProfileTrace(side=side, N=N, source_descriptor=desc, grid=grid,
                        points=points, search_bound=search_bound,
                        incomplete=incomplete)


# ---------------------------------------------------------------------------
# psi limits (tail-empirical, never certified)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PsiLimits:
    level: int
    lower: Fraction
    upper: Fraction
    status: str  # always "heuristic": finite-q truncation
    tail_from: Fraction


def psi_limits(tr: ProfileTrace, level: int, tail_fraction: Fraction = Fraction(1, 2),
               min_points: int = 10) -> PsiLimits:
    """Empirical min/max of psi = L/q over the tail of the grid."""
    pts = [(q, p) for q, p in tr.certified_level_points(level) if q > 0]
    if len(pts) < min_points:
        raise ProfileError(f"level {level}: only {len(pts)} certified points, "
                           f"need {min_points}")
    tail_from = tr.grid[-1] * (1 - Fraction(tail_fraction))
    tail = [(q, p) for q, p in pts if q >= tail_from] or pts[len(pts) // 2:]
    lower = min(p.L_value.lo / q for q, p in tail)
    upper = max(p.L_value.hi / q for q, p in tail)
    return PsiLimits(level=level, lower=lower, upper=upper,
                     status="heuristic", tail_from=tail_from)


# ---------------------------------------------------------------------------
# Consistency of a primal/dual trace pair
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    q: Optional[Fraction]
    passed: bool
    margin: float
    note: str = ""


@dataclass
class ConsistencyReport:
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> list[dict]:
        return [{"name": c.name, "q": None if c.q is None else str(c.q),
                 "passed": c.passed, "margin": c.margin, "note": c.note}
                for c in self.checks]


def _log_const(n_integer: int) -> Fraction:
    return log_bounds(Fraction(n_integer), 64).hi


def consistency_report(primal: ProfileTrace, dual: ProfileTrace,
                       tail_fraction: Fraction = Fraction(1, 2)) -> ConsistencyReport:
    """Duality and sum-rule checks between matching primal and dual traces."""
    if primal.side != PRIMAL or dual.side != DUAL:
        raise ProfileError("pass (primal, dual) traces in that order")
    if primal.N != dual.N:
        raise ProfileError("dimension mismatch")
    if primal.source_descriptor != dual.source_descriptor:
        raise ProfileError("traces describe different points")
    N = primal.N
    common = [q for q in primal.grid if q in set(dual.grid) and q > 0]
    if not common:
        raise ProfileError("no common positive grid points")
    c_log = _log_const(mahler_bound_integer(N))
    mink_log = _log_const(minkowski_bound_integer(N))
    schranke_log = mink_log + c_log

    checks: list[CheckResult] = []
    didx = {q: i for i, q in enumerate(dual.grid)}
    pidx = {q: i for i, q in enumerate(primal.grid)}
    for q in common:
        pi, di = pidx[q], didx[q]
        prim = [primal.points[j][pi] for j in range(1, N + 2)]
        dua = [dual.points[j][di] for j in range(1, N + 2)]
        if any(p is None or not p.certified for p in prim) or \
           any(p is None or not p.certified for p in dua):
            continue
        # (a) Mahler pairs
        for name, a, b in (("mahler", prim[0], dua[N]), ("mahler-mirror", dua[0], prim[N])):
            total = a.L_value + b.L_value
            dev = max(abs(total.lo), abs(total.hi))
            checks.append(CheckResult(name, q, dev <= c_log, float(c_log - dev)))
        # (b) sum rule: sum_{j<=N} L*_j = L_1 + O(1), and mirrored
        for name, firsts, other in (("sum-rule", dua[:N], prim[0]),
                                    ("sum-rule-mirror", prim[:N], dua[0])):
            total = RatInterval.point(0)
            for p in firsts:
                total = total + p.L_value
            diff = total - other.L_value
            dev = max(abs(diff.lo), abs(diff.hi))
            checks.append(CheckResult(name, q, dev <= schranke_log,
                                      float(schranke_log - dev)))
    if not checks:
        raise ProfileError("no fully certified common grid points")

    # tail-empirical limit inequalities, with O(1/q) tolerance at the tail start
    tail_start = max(primal.grid[-1], dual.grid[-1]) * (1 - Fraction(tail_fraction))
    tol = (mink_log + c_log) / max(tail_start, Fraction(1))
    try:
        plim = {j: psi_limits(primal, j, tail_fraction) for j in range(1, N + 2)}
        dlim = {j: psi_limits(dual, j, tail_fraction) for j in range(1, N + 2)}
    except ProfileError:
        plim = dlim = None
    if plim is not None:
        for label, lims in (("primal", plim), ("dual", dlim)):
            top = lims[N + 1]
            for j in range(1, N + 2):
                v = j * lims[j].lower + (N + 1 - j) * top.upper
                checks.append(CheckResult(f"interlace-{label}-low-j{j}", None,
                                          v >= -tol, float(v + tol)))
                v = j * lims[j].upper + (N + 1 - j) * top.lower
                checks.append(CheckResult(f"interlace-{label}-high-j{j}", None,
                                          v >= -tol, float(v + tol)))
        # last-to-first comparisons within each side
        v = Fraction(1, N) * dlim[1].lower + dlim[N + 1].upper
        checks.append(CheckResult("last-vs-first-dual", None, v >= -tol, float(v + tol)))
        v = Fraction(1, N) * plim[1].lower + plim[N + 1].upper
        checks.append(CheckResult("last-vs-first-primal", None, v >= -tol, float(v + tol)))
    return ConsistencyReport(checks)


# ---------------------------------------------------------------------------
# Serialization: CSV and SVG
# ---------------------------------------------------------------------------

CSV_COLUMNS = "q,level,L_lo,L_hi,witness,certified"


def trace_to_csv(tr: ProfileTrace) -> str:
    lines = [f"# pgnlab-trace side={tr.side} N={tr.N} "
             f"source={json.dumps(tr.source_descriptor, sort_keys=True)}",
             CSV_COLUMNS]
    for level in range(1, tr.N + 2):
        for q, p in zip(tr.grid, tr.points[level]):
            if p is None:
                continue
            wit = ";".join(str(c) for c in p.witness)
            lines.append(f"{q},{level},{p.L_value.lo},{p.L_value.hi},{wit},"
                         f"{'true' if p.certified else 'false'}")
    return "\n".join(lines) + "\n"


def trace_from_csv(text: str) -> ProfileTrace:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# pgnlab-trace"):
        raise ProfileError("missing trace header line")
    header = lines[0]
    side = header.split("side=")[1].split()[0]
    N = int(header.split("N=")[1].split()[0])
    source = json.loads(header.split("source=", 1)[1])
    if lines[1] != CSV_COLUMNS:
        raise ProfileError(f"expected columns {CSV_COLUMNS!r}")
    rows = []
    for ln in lines[2:]:
        q_s, level_s, lo_s, hi_s, wit_s, cert_s = ln.split(",")
        rows.append((Fraction(q_s), int(level_s),
                     RatInterval(Fraction(lo_s), Fraction(hi_s)),
                     tuple(int(c) for c in wit_s.split(";")),
                     cert_s == "true"))
    grid = sorted({r[0] for r in rows})
    gidx = {q: i for i, q in enumerate(grid)}
    points: dict[int, list[Optional[MinimaPoint]]] = {
        j: [None] * len(grid) for j in range(1, N + 2)}
    for q, level, box, wit, cert in rows:
        points[level][gidx[q]] = MinimaPoint(q=q, side=side, level=level,
                                             L_value=box, witness=wit,
                                             certified=cert)
    return ProfileTrace(side=side, N=N, source_descriptor=source, grid=grid,
                        points=points)


_LEVEL_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


def traces_to_svg(traces: list[ProfileTrace], width: int = 720, height: int = 480) -> str:
    """Combined-graph rendering: one polyline per (trace, level)."""
    if not traces:
        raise ProfileError("nothing to draw")
    xs, ys = [], []
    for tr in traces:
        for level in range(1, tr.N + 2):
            for q, p in tr.level_points(level):
                xs.append(float(q))
                ys.append(float(p.L_value.mid))
    if not xs:
        raise ProfileError("traces contain no points")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    pad = 40

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">',
             f'<rect width="{width}" height="{height}" fill="white"/>',
             f'<line x1="{pad}" y1="{sy(0) if y0 <= 0 <= y1 else height - pad:.1f}" '
             f'x2="{width - pad}" y2="{sy(0) if y0 <= 0 <= y1 else height - pad:.1f}" '
             f'stroke="#999" stroke-dasharray="4 3"/>']
    for t_i, tr in enumerate(traces):
        dash = "" if tr.side == PRIMAL else ' stroke-dasharray="7 3"'
        for level in range(1, tr.N + 2):
            pts = tr.level_points(level)
            if not pts:
                continue
            coords = " ".join(f"{sx(float(q)):.2f},{sy(float(p.L_value.mid)):.2f}"
                              for q, p in pts)
            color = _LEVEL_COLORS[(level - 1) % len(_LEVEL_COLORS)]
            parts.append(f'<polyline fill="none" stroke="{color}"{dash} '
                         f'stroke-width="1.5" points="{coords}"/>')
            label = f"{'L' if tr.side == PRIMAL else 'L*'}{level}"
            lx, ly = 10 + t_i * 60, 16 + level * 14
            parts.append(f'<text x="{lx}" y="{ly}" font-size="11" fill="{color}">'
                         f'{xml.sax.saxutils.escape(label)}</text>')
    parts.append(f'<text x="{width - pad}" y="{height - 12}" font-size="11" '
                 f'text-anchor="end" fill="#333">q</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

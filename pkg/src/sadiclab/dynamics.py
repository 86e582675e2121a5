"""Diagonal torus actions on SL_n(K_S)/SL_n(O): trajectories and surveys.

A trajectory samples the window systole of t.g.O^n along a ray schedule of
diagonal torus elements; the three-way classification (diverging-trend,
bounded-below, recurrent) is explicitly empirical -- finitely many steps
never prove divergence.  Surveys sweep the canonical sign-pattern rays,
compare against the theoretical dichotomy at exact rational points
(single-place orbits divergent, full-S orbits not), and flag any
disagreement as an anomaly instead of accepting it.
"""

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import (
    CyclicPositions,
    NeedTwoPlaces,
    ShapeMismatch,
    TooFewSteps,
)
from .lattice import (
    HeightWindow,
    PointCloud,
    SLattice,
    _EXACT,
    _is_zero_scalar,
)
from .numberfield import FieldElement
from .surd import QuadraticSurd


class TorusElement:
    """Per-place diagonal determinant-one matrices on a subset R of S."""

    def __init__(self, field, places, n, entries):
        self.field = field
        self.places = list(places)
        self.n = int(n)
        if len(entries) != len(self.places):
            raise ShapeMismatch("one diagonal per active place")
        rows = []
        for place, diag in zip(self.places, entries):
            diag = tuple(diag)
            if len(diag) != self.n:
                raise ShapeMismatch("diagonal length must equal n")
            if place.kind == "finite":
                if not all(isinstance(c, _EXACT) for c in diag):
                    raise TypeError("finite-place diagonal must be exact")
                det = _diag_product(diag)
                if not _exactly_one(det):
                    raise ValueError(f"det at {place.name} is {det!r}, not 1")
            else:
                if all(isinstance(c, _EXACT) for c in diag):
                    det = _diag_product(diag)
                    if not _exactly_one(det):
                        raise ValueError(f"det at {place.name} is {det!r}, not 1")
                else:
                    det = 1.0
                    for c in diag:
                        det *= float(c)
                    if abs(det - 1) > 1e-10:
                        raise ValueError(f"det at {place.name} is {det}, not 1")
            rows.append(diag)
        self.entries = tuple(rows)
        self.exact = all(isinstance(c, _EXACT) for diag in rows for c in diag)

    @classmethod
    def identity(cls, field, places, n):
        return cls(field, places, n, [[1] * n for _ in places])


def _diag_product(diag):
    acc = None
    for c in diag:
        acc = c if acc is None else acc * c
    return acc


def _exactly_one(x):
    if isinstance(x, FieldElement):
        return x == 1
    if isinstance(x, QuadraticSurd):
        return x == QuadraticSurd(1)
    return Fraction(x) == 1


class OrbitPoint:
    """Representative g of a coset, with provenance for prediction gating.

    provenance: 'identity', 'rational' (exact K-rational entries at every
    place, possibly different per place), or 'explicit'.
    """

    def __init__(self, field, places, n, g, provenance="explicit", unimodular=True):
        self.lattice = SLattice(field, places, n, g, unimodular=unimodular)
        self.field = field
        self.places = self.lattice.places
        self.n = self.lattice.n
        self.g = self.lattice.g
        self.provenance = provenance
        self.unimodular = unimodular
        self.exact = all(isinstance(c, _EXACT) for mat in self.g
                         for row in mat for c in row)

    @classmethod
    def identity(cls, field, places, n):
        eye = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(field, places, n, [eye for _ in places], provenance="identity")

    @classmethod
    def from_rational(cls, field, places, n, matrix):
        """Diagonal embedding of a single K-rational matrix."""
        mat = [[Fraction(c) for c in row] for row in matrix]
        return cls(field, places, n, [mat for _ in places], provenance="rational")

    def to_jsonable(self):
        mats = []
        for mat in self.g:
            mats.append([[str(c) if isinstance(c, (int, Fraction)) else repr(c)
                          for c in row] for row in mat])
        return {"n": self.n, "provenance": self.provenance,
                "places": [p.name for p in self.places], "matrices": mats}


def act(t, x):
    """Left translation t.x; inactive places keep their factors."""
    if t.field != x.field or t.n != x.n:
        raise ShapeMismatch("torus element and point disagree on field or n")
    active = {p.name: diag for p, diag in zip(t.places, t.entries)}
    unknown = set(active) - {p.name for p in x.places}
    if unknown:
        raise ShapeMismatch(f"active places {unknown} not in S")
    new_g = []
    for place, mat in zip(x.places, x.g):
        diag = active.get(place.name)
        if diag is None:
            new_g.append(mat)
            continue
        new_g.append(tuple(
            tuple(_scale_entry(diag[i], c, place) for c in row)
            for i, row in enumerate(mat)))
    provenance = x.provenance if (t.exact and x.exact) else "explicit"
    return OrbitPoint(x.field, x.places, x.n, new_g, provenance=provenance,
                      unimodular=x.unimodular)


def _scale_entry(factor, entry, place):
    if _is_zero_scalar(entry):
        return entry
    if isinstance(factor, _EXACT) and isinstance(entry, _EXACT):
        if isinstance(factor, FieldElement) or isinstance(entry, FieldElement):
            f = factor if isinstance(factor, FieldElement) else None
            if f is None:
                return entry * Fraction(factor) if not isinstance(entry, QuadraticSurd) \
                    else entry * factor
            return f * entry if isinstance(entry, FieldElement) else f * Fraction(entry)
        if isinstance(factor, QuadraticSurd) or isinstance(entry, QuadraticSurd):
            a = factor if isinstance(factor, QuadraticSurd) else QuadraticSurd(factor)
            b = entry if isinstance(entry, QuadraticSurd) else QuadraticSurd(entry)
            return a * b
        return Fraction(factor) * Fraction(entry)
    if place.kind == "complex":
        return complex(_to_float(factor)) * complex(_to_float(entry))
    return _to_float(factor) * _to_float(entry)


def _to_float(x):
    if isinstance(x, (QuadraticSurd, Fraction)):
        return float(x)
    if isinstance(x, FieldElement):
        raise TypeError("cannot coerce a field element without a place")
    return float(x)


# ---------------------------------------------------------------------------
# Ray schedules and trajectories


class RaySchedule:
    """Exponent directions per active place plus a list of parameter steps.

    direction[i] is the exponent vector for the diagonal entries at the
    i-th active place (sum zero, the determinant-one condition).  Each
    step is one parameter per active place: real at archimedean places,
    integer at finite places (their value group is discrete).
    """

    def __init__(self, places, direction, steps):
        self.places = list(places)
        self.direction = [tuple(c) for c in direction]
        if len(self.direction) != len(self.places):
            raise ShapeMismatch("one direction per active place")
        for c in self.direction:
            if abs(sum(c)) > 1e-12:
                raise ValueError(f"exponent vector {c} does not sum to zero")
        norm_steps = []
        for step in steps:
            if not isinstance(step, (tuple, list)):
                step = (step,) * len(self.places)
            if len(step) != len(self.places):
                raise ShapeMismatch("one parameter per active place in each step")
            row = []
            for place, par in zip(self.places, step):
                if place.kind == "finite":
                    if int(par) != par:
                        raise ValueError("finite-place ray parameters must be integers")
                    row.append(int(par))
                else:
                    row.append(float(par))
            norm_steps.append(tuple(row))
        self.steps = norm_steps

    def torus_element(self, field, n, step):
        entries = []
        for place, direc, par in zip(self.places, self.direction, step):
            if place.kind == "finite":
                entries.append([Fraction(place.p) ** (par * int(c)) for c in direc])
            else:
                entries.append([math.exp(par * c) for c in direc])
        return TorusElement(field, self.places, n, entries)


@dataclass
class StepRecord:
    index: int
    params: tuple
    min_content: float
    min_supnorm: float
    content_witness: str
    supnorm_witness: str


@dataclass
class TrajectoryReport:
    point: OrbitPoint
    ray: RaySchedule
    window: HeightWindow
    rows: list


def _ray_scales(ray, lat, step):
    """Per-place multipliers/shifts for one torus step along a ray."""
    active = {p.name: (d, par) for p, d, par in
              zip(ray.places, ray.direction, step)}
    arch_mults = []
    for place in lat.arch_places:
        if place.name in active:
            d, par = active[place.name]
            arch_mults.append(np.array([math.exp(par * c) for c in d]))
        else:
            arch_mults.append(None)
    fin_shifts = []
    for place in lat.finite_places:
        if place.name in active:
            d, par = active[place.name]
            f = place.residue_degree
            fin_shifts.append(np.array([f * par * int(c) for c in d], dtype=np.int64))
        else:
            fin_shifts.append(None)
    return arch_mults, fin_shifts


def trajectory(x, ray, window, cloud=None):
    """Window systole of t.g.O^n at every step of the ray; no verdict."""
    lat = x.lattice
    if cloud is None:
        cloud = PointCloud(lat, window)
    rows = []
    for i, step in enumerate(ray.steps):
        arch_mults, fin_shifts = _ray_scales(ray, lat, step)
        mc, ic, ms, isup = cloud.systole_under(arch_mults, fin_shifts)
        rows.append(StepRecord(
            index=i, params=step, min_content=mc, min_supnorm=ms,
            content_witness=cloud.format_point(ic),
            supnorm_witness=cloud.format_point(isup)))
    return TrajectoryReport(point=x, ray=ray, window=window, rows=rows)


@dataclass
class Thresholds:
    theta_low: float = 1e-3
    theta_high_rel: float = 0.1


def classify_ray(report, thresholds=None):
    """Empirical three-way verdict on a trajectory's content systole.

    recurrent: dips below theta_low, later re-exceeds theta_high;
    diverging-trend: ends below theta_low (decreasing trend);
    bounded-below: never drops to theta_high = rel * initial systole.
    Always a statement about the sampled window, never a proof.
    """
    th = thresholds or Thresholds()
    rows = report.rows
    if len(rows) < 10:
        raise TooFewSteps(f"{len(rows)} steps; need at least 10")
    sys = [r.min_content for r in rows]
    initial = sys[0]
    theta_high = th.theta_high_rel * initial
    dipped_at = next((i for i, v in enumerate(sys) if v < th.theta_low), None)
    if dipped_at is not None:
        if any(v > theta_high for v in sys[dipped_at + 1:]):
            return "recurrent"
    if sys[-1] < th.theta_low:
        return "diverging-trend"
    if min(sys) > theta_high:
        return "bounded-below"
    # ambiguous middle zone: trend decides, still an empirical label
    return "diverging-trend" if sys[-1] < 0.5 * initial else "bounded-below"


# ---------------------------------------------------------------------------
# Surveys


@dataclass
class RayResult:
    name: str
    signs: tuple
    classification: str
    report: TrajectoryReport


@dataclass
class SurveyReport:
    point: OrbitPoint
    active: list
    rays: list
    heat: list                      # rows for the CSV heat map
    prediction: str                 # '', 'all-diverging', 'non-divergent'
    anomalies: list = dc_field(default_factory=list)

    @property
    def consistent(self):
        return not self.anomalies

    def classifications(self):
        return {r.name: r.classification for r in self.rays}


def _n2_direction(n):
    if n < 2:
        raise ValueError("diagonal rays need n >= 2")
    d = [0] * n
    d[0], d[-1] = 1, -1
    return tuple(d)


def _sign_patterns(k):
    """All nonzero sign vectors in {-1,0,1}^k."""
    pats = []

    def rec(prefix):
        if len(prefix) == k:
            if any(prefix):
                pats.append(tuple(prefix))
            return
        for s in (-1, 0, 1):
            rec(prefix + [s])
    rec([])
    pats.sort(key=lambda t: (sum(1 for s in t if s), t), reverse=False)
    return pats


def _ray_name(places, signs):
    return ",".join(f"{p.name}{'+' if s > 0 else '-' if s < 0 else '0'}"
                    for p, s in zip(places, signs))


def default_ray_catalog(x, active, steps=20, s_max=10.0, stair_jump=12):
    """The canonical rays for a survey: per-place axes, matched diagonals
    for sign pairs, and alternating staircases that re-balance after each
    archimedean push (staircases only when two places are active)."""
    direction = _n2_direction(x.n)
    rays = []
    for signs in _sign_patterns(len(active)):
        moving = [i for i, s in enumerate(signs) if s]
        params = []
        kvals = list(range(steps))
        finite_moving = [i for i in moving if active[i].kind == "finite"]
        arch_moving = [i for i in moving if active[i].kind != "finite"]
        for j in range(steps):
            row = []
            for i, (place, s) in enumerate(zip(active, signs)):
                if s == 0:
                    row.append(0 if place.kind == "finite" else 0.0)
                elif place.kind == "finite":
                    row.append(s * kvals[j])
                elif finite_moving:
                    # match the archimedean speed to the finite one
                    p = active[finite_moving[0]].p
                    row.append(s * kvals[j] * math.log(p))
                else:
                    row.append(s * (s_max * j / (steps - 1)))
            params.append(tuple(row))
        rays.append((_ray_name(active, signs), signs,
                     RaySchedule(active, [direction] * len(active), params)))
    # alternating staircases for two-place sign pairs
    if len(active) == 2 and active[0].kind != active[1].kind:
        arch_i = 0 if active[0].kind != "finite" else 1
        fin_i = 1 - arch_i
        p = active[fin_i].p
        for sa in (1, -1):
            for sf in (1, -1):
                params = []
                for j in range(steps):
                    hi = stair_jump * ((j + 1) // 2)
                    lo = stair_jump * (j // 2)
                    row = [None, None]
                    row[arch_i] = sa * math.log(p) * hi
                    row[fin_i] = sf * lo
                    params.append(tuple(row))
                signs = [None, None]
                signs[arch_i], signs[fin_i] = sa, sf
                name = "stair:" + _ray_name(active, signs)
                rays.append((name, tuple(signs),
                             RaySchedule(active, [direction] * 2, params)))
    return rays


def divergence_survey(x, active, window, steps=20, s_max=10.0,
                      thresholds=None, heat_s=None, heat_k=None):
    """Systole sweep over the canonical rays plus a heat-map grid.

    At points with exact rational provenance the classical dichotomy is
    enforced: a single active place must show every ray diverging, and the
    full place set (when S has at least two places) must keep at least one
    ray bounded below.  Mismatches land in `anomalies`.
    """
    lat = x.lattice
    cloud = PointCloud(lat, window)
    rays = default_ray_catalog(x, active, steps=steps, s_max=s_max)
    results = []
    for name, signs, ray in rays:
        rep = trajectory(x, ray, window, cloud=cloud)
        results.append(RayResult(
            name=name, signs=signs,
            classification=classify_ray(rep, thresholds), report=rep))
    heat = _heat_map(x, active, cloud, heat_s, heat_k, s_max)
    prediction = ""
    anomalies = []
    rational = x.provenance in ("identity", "rational")
    if rational:
        if len(active) == 1:
            prediction = "all-diverging"
            for r in results:
                if r.classification != "diverging-trend":
                    anomalies.append(
                        f"ray {r.name} classified {r.classification}; "
                        "a single-place orbit at a rational point must diverge")
        elif len(active) == len(x.places) and len(x.places) > 1:
            prediction = "non-divergent"
            if not any(r.classification == "bounded-below" for r in results):
                anomalies.append(
                    "no bounded-below ray found; a full-S orbit is never divergent")
    return SurveyReport(point=x, active=list(active), rays=results, heat=heat,
                        prediction=prediction, anomalies=anomalies)


def _heat_map(x, active, cloud, heat_s, heat_k, s_max):
    lat = x.lattice
    arch_active = [p for p in active if p.kind != "finite"]
    fin_active = [p for p in active if p.kind == "finite"]
    svals = list(heat_s) if heat_s is not None else \
        [round(-s_max + i * (2 * s_max) / 20, 10) for i in range(21)]
    kvals = list(heat_k) if heat_k is not None else list(range(-12, 13))
    direction = _n2_direction(x.n)
    rows = []
    s_list = svals if arch_active else [0.0]
    k_list = kvals if fin_active else [0]
    for s in s_list:
        for k in k_list:
            step = []
            for place in active:
                step.append(k if place.kind == "finite" else s)
            ray = RaySchedule(active, [direction] * len(active), [tuple(step)])
            arch_mults, fin_shifts = _ray_scales(ray, lat, ray.steps[0])
            mc, ic, ms, isup = cloud.systole_under(arch_mults, fin_shifts)
            rows.append({
                "s": s if arch_active else "",
                "k": k if fin_active else "",
                "min_content": mc,
                "min_supnorm": ms,
                "witness": cloud.format_point(ic),
            })
    return rows


# ---------------------------------------------------------------------------
# Named constructions


def locally_divergent_example(field, places, n=2):
    """Unipotent at the first place, identity elsewhere: each single-place
    orbit diverges, the full-S orbit does not close up."""
    if len(places) < 2:
        raise NeedTwoPlaces("need at least two places in S")
    if n != 2:
        raise ValueError("shipped construction is for n = 2")
    upper = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]
    eye = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    g = [upper] + [eye] * (len(places) - 1)
    return OrbitPoint(field, places, n, g, provenance="rational")


def anisotropic_point(field, places):
    """The quadratic-form lattice with rows (1, sqrt2) and (1, -sqrt2).

    Deliberately not rescaled to determinant one: the integral rows keep
    |x^2 - 2 y^2| >= 1 as the exact floor, which is what the compact-orbit
    fixture asserts.  The content systole carries the fixed scale 2*sqrt2.
    """
    s2 = QuadraticSurd.sqrt(2)
    g = [[QuadraticSurd(1), s2], [QuadraticSurd(1), -s2]]
    return OrbitPoint(field, places, 2, [g for _ in places],
                      provenance="explicit", unimodular=False)


def expanding_element(root_positions, tau, place, n=None):
    """A diagonal element expanding every requested off-diagonal position.

    Positions (i, j), 1-based, must form an acyclic directed graph
    (opposite root spaces cannot be expanded by one element).  Entries are
    exact powers, so the guarantee |t_i/t_j|_v >= tau is checked exactly.
    """
    positions = [(int(i), int(j)) for i, j in root_positions]
    if not positions:
        raise ValueError("need at least one position")
    if n is None:
        n = max(max(i, j) for i, j in positions)
    for i, j in positions:
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"bad position {(i, j)}")
    # cycle detection on the directed graph
    adj = {i: set() for i in range(1, n + 1)}
    for i, j in positions:
        adj[i].add(j)
    state = {}

    def dfs(u):
        state[u] = 1
        for w in adj[u]:
            if state.get(w) == 1:
                raise CyclicPositions(f"positions contain a cycle through {u}->{w}")
            if state.get(w, 0) == 0:
                dfs(w)
        state[u] = 2

    for u in range(1, n + 1):
        if state.get(u, 0) == 0:
            dfs(u)
    # longest path to a sink, doubled and centered
    levels = {}

    def level(u):
        if u in levels:
            return levels[u]
        levels[u] = 1 + max((level(w) for w in adj[u]), default=-1) \
            if adj[u] else 0
        return levels[u]

    lv = [level(i) for i in range(1, n + 1)]
    exps = [2 * v - max(lv) for v in lv]
    if sum(exps) != 0:
        base = [n * (2 * v) - 2 * sum(lv) for v in lv]
        g = math.gcd(*[abs(e) for e in base if e] or [1])
        exps = [e // g for e in base]
    min_diff = min(exps[i - 1] - exps[j - 1] for i, j in positions)
    assert min_diff >= 1
    tau_frac = Fraction(tau)
    if tau_frac <= 1:
        raise ValueError("tau must exceed 1")
    if place.kind == "finite":
        p = place.p
        k = 1
        while Fraction(p) ** (k * min_diff) < tau_frac:
            k += 1
        entries = [Fraction(p) ** (-k * e) for e in exps]
        for i, j in positions:
            ratio = Fraction(p) ** (place.residue_degree * k * (exps[i - 1] - exps[j - 1]))
            assert ratio >= tau_frac
    else:
        c = tau_frac
        entries = [c ** e for e in exps]
        for i, j in positions:
            assert c ** (exps[i - 1] - exps[j - 1]) >= tau_frac
    return TorusElement(place.field, [place], n, [entries])

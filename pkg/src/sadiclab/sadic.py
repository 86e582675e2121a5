"""Geometry of K_S^n: normalized sup norms, content, pseudoballs, balancing.

A point of K_S^n carries one length-n local vector per place.  Local norms
follow the normalized conventions of the places module (Euclidean at real
places, squared-Euclidean at complex places, max of coordinate absolute
values at finite places), so the content -- the product of the local norms
-- is invariant under scaling by S-units.

`unit_balance` realizes the classical reduction step: given per-place
targets a_v whose product equals the content, it finds an S-unit xi making
every local norm of xi*x agree with a_v up to a factor kappa, where kappa
is computed here from the log-embedding of the unit lattice rather than
assumed.
"""

import itertools
import math
from fractions import Fraction

from mpmath import mp, mpf

from .errors import ZeroComponent
from .numberfield import DEFAULT_DPS, FieldElement

_EXACT_TYPES = (int, Fraction, FieldElement)


class SAdicVector:
    """One length-n local vector per place; immutable after construction.

    Archimedean coordinates may be exact (int/Fraction/FieldElement) or
    floating; finite-place coordinates must be exact so that valuations
    stay exact.
    """

    def __init__(self, places, components, n=None):
        self.places = list(places)
        comps = []
        for place, comp in zip(self.places, components):
            comp = tuple(comp)
            if place.kind == "finite":
                for c in comp:
                    if not isinstance(c, _EXACT_TYPES):
                        raise TypeError(
                            f"finite-place coordinate {c!r} must be exact")
            comps.append(comp)
        if len(comps) != len(self.places):
            raise ValueError("one component per place required")
        lengths = {len(c) for c in comps}
        if len(lengths) > 1:
            raise ValueError("components must share a common dimension")
        self.components = tuple(comps)
        self.n = n if n is not None else (lengths.pop() if lengths else 0)

    def component(self, i):
        return self.components[i]

    def scaled(self, xi):
        """The vector xi * x, scaling every local coordinate."""
        out = []
        for place, comp in zip(self.places, self.components):
            row = []
            for c in comp:
                if isinstance(c, FieldElement):
                    row.append(xi * c)
                elif isinstance(c, _EXACT_TYPES):
                    if xi.is_rational():
                        row.append(Fraction(c) * xi.coords[0])
                    else:
                        row.append(xi * xi.field.element([c]))
                else:
                    # floating archimedean coordinate: scale by |xi| numerically
                    row.append(c * place.evaluate(xi))
            out.append(tuple(row))
        return SAdicVector(self.places, out, self.n)

    def to_jsonable(self, digits=12):
        """Per-place coordinate arrays; finite scalars as valuation + digits."""
        out = []
        for place, comp in zip(self.places, self.components):
            if place.kind != "finite":
                out.append([str(c) for c in comp])
            else:
                row = []
                for c in comp:
                    row.append(_finite_scalar_json(c, place, digits))
                out.append(row)
        return {"n": self.n, "places": [p.name for p in self.places],
                "components": out}


def _finite_scalar_json(c, place, digits):
    if isinstance(c, FieldElement) and not c.is_rational():
        return {"coords": [str(x) for x in c.coords],
                "val": place.valuation(c)}
    frac = Fraction(c) if not isinstance(c, FieldElement) else c.coords[0]
    if frac == 0:
        return {"val": None, "unit_digits": []}
    p = place.p
    val = 0
    num, den = frac.numerator, frac.denominator
    while num % p == 0:
        num //= p
        val += 1
    while den % p == 0:
        den //= p
        val -= 1
    unit = num * pow(den, -1, p ** digits) % p ** digits
    out_digits = []
    for _ in range(digits):
        out_digits.append(unit % p)
        unit //= p
    return {"val": val, "unit_digits": out_digits}


def _local_norm(place, comp, dps):
    """Normalized norm of one local vector."""
    if place.kind == "finite":
        best = Fraction(0)
        for c in comp:
            elem = c if isinstance(c, FieldElement) else place.field.element([c])
            if elem.is_zero():
                continue
            a = place.abs_value(elem)
            if a > best:
                best = a
        return best
    with mp.workdps(dps + 10):
        if place.kind == "real":
            acc = mpf(0)
            for c in comp:
                v = _arch_scalar(place, c, dps)
                acc += v * v
            return +mp.sqrt(acc)
        acc = mpf(0)
        for c in comp:
            v = _arch_scalar(place, c, dps)
            acc += (v.real * v.real + v.imag * v.imag) if hasattr(v, "real") else v * v
        return +acc        # squared standard norm: the normalized complex convention


def _arch_scalar(place, c, dps):
    if isinstance(c, FieldElement):
        return place.evaluate(c, dps)
    if isinstance(c, Fraction):
        return mpf(c.numerator) / c.denominator
    if isinstance(c, int):
        return mpf(c)
    return c if not isinstance(c, float) else mpf(c)


def sup_norm(x, dps=None):
    """max over places of the normalized local norm."""
    dps = dps or DEFAULT_DPS
    best = mpf(0)
    for place, comp in zip(x.places, x.components):
        v = _local_norm(place, comp, dps)
        v = mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else v
        if v > best:
            best = v
    return best


def local_norms(x, dps=None):
    dps = dps or DEFAULT_DPS
    return [_local_norm(p, c, dps) for p, c in zip(x.places, x.components)]


def content(x, dps=None):
    """Product over S of the local norms; zero if any component vanishes."""
    dps = dps or DEFAULT_DPS
    acc = mpf(1)
    for place, comp in zip(x.places, x.components):
        v = _local_norm(place, comp, dps)
        if v == 0:
            return mpf(0)
        acc *= mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else v
    return acc


def pseudoball_contains(r, x, dps=None):
    """Membership in the content sublevel set: content(x) < r, strictly."""
    if r <= 0:
        raise ValueError("pseudoball radius must be positive")
    return content(x, dps) < r


class BalancingTarget:
    """Per-place positive targets a_v with product equal to the content."""

    def __init__(self, places, targets):
        self.places = list(places)
        self.targets = [float(t) for t in targets]
        if len(self.targets) != len(self.places):
            raise ValueError("one target per place required")
        if any(t <= 0 for t in self.targets):
            raise ValueError("targets must be positive")

    @classmethod
    def equal_split(cls, places, total_content):
        """Eq-split targets a_v = content^(1/m) at every place."""
        m = len(places)
        a = float(total_content) ** (1.0 / m)
        return cls(places, [a] * m)

    def validate_against(self, x, rel_tol=1e-8):
        c = float(content(x))
        prod = math.prod(self.targets)
        if c == 0 or abs(prod - c) > rel_tol * c:
            raise ValueError(
                f"product of targets {prod} does not match content {c}")


def _unit_log_vectors(units, places, dps):
    vecs = []
    with mp.workdps(dps + 10):
        for u in units.generators:
            row = []
            for place in places:
                a = place.abs_value(u, dps) if place.kind != "finite" else place.abs_value(u)
                if isinstance(a, Fraction):
                    row.append(math.log(a.numerator) - math.log(a.denominator))
                else:
                    row.append(float(mp.log(a)))
            vecs.append(row)
    return vecs


def balancing_constant(units, places=None, dps=None):
    """Rigorous upper bound for the balancing constant kappa.

    kappa = exp(mu) where mu bounds the sup-norm covering radius of the
    log-embedding of the unit generators: rounding each basis coordinate
    to the nearest integer moves at most half the sum of the basis
    sup-norms.  Not minimal, but certified.
    """
    dps = dps or DEFAULT_DPS
    places = list(places) if places is not None else units.places
    vecs = _unit_log_vectors(units, places, dps)
    m = len(places)
    rank_needed = m - 1
    if rank_needed == 0:
        return 1.0
    if _float_rank(vecs) < rank_needed:
        return math.inf
    halfsum = 0.5 * sum(max(abs(c) for c in v) for v in vecs)
    return math.exp(halfsum)


def _float_rank(rows, tol=1e-9):
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = None
        best = tol
        for r in range(rank, len(mat)):
            if abs(mat[r][col]) > best:
                best = abs(mat[r][col])
                piv = r
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [v / lead for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and abs(mat[r][col]) > 0:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def unit_balance(x, target, units, exponent_bound=20, dps=None):
    """S-unit xi minimizing the worst log-ratio of local norms to targets.

    Exhaustive search over generator exponents in [-B, B]; ties resolve to
    the lexicographically smallest exponent vector.  Returns (xi, ratio)
    with ratio = exp(max_v |log(norm_v(xi x)/a_v)|).
    """
    dps = dps or DEFAULT_DPS
    norms = local_norms(x, dps)
    if any(v == 0 for v in norms):
        raise ZeroComponent("every local component must be nonzero")
    target.validate_against(x)
    lognorm = [math.log(float(v)) for v in norms]
    y = [math.log(a) - b for a, b in zip(target.targets, lognorm)]
    vecs = _unit_log_vectors(units, x.places, dps)
    k = len(vecs)
    if k == 0:
        ratio = max(abs(v) for v in y) if y else 0.0
        return units.field.one(), math.exp(ratio)
    best_exps = None
    best_obj = None
    rng = range(-exponent_bound, exponent_bound + 1)
    for exps in itertools.product(rng, repeat=k):
        obj = 0.0
        for j in range(len(y)):
            s = -y[j]
            for i in range(k):
                s += exps[i] * vecs[i][j]
            a = abs(s)
            if a > obj:
                obj = a
        if best_obj is None or obj < best_obj - 1e-15:
            best_obj = obj
            best_exps = exps
    xi = units.power_product(best_exps)
    # recompute the achieved ratio from the actual scaled vector
    scaled = x.scaled(xi)
    snorms = local_norms(scaled, dps)
    with mp.workdps(dps):
        worst = mpf(0)
        for v, a in zip(snorms, target.targets):
            vv = mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else v
            r = abs(mp.log(vv / mpf(a)))
            if r > worst:
                worst = r
        ratio = +mp.e ** worst
    return xi, ratio

"""Exact arithmetic in a number field K = Q(theta) and its places.

Elements are coordinate vectors over the rationals in the power basis
1, theta, ..., theta^(d-1); all ring operations are exact.  Places carry
the normalized absolute values: the usual modulus at a real embedding,
the *square* of the modulus at a complex embedding, and p^(-f*ord) at a
finite place, so that the product over all places of |u|_v is 1 for units.

Finite places are only constructed over primes where the defining
polynomial stays squarefree mod p; that restriction keeps every finite
valuation computable as the exact p-adic valuation of a resultant against
a Hensel-lifted local factor.
"""

from fractions import Fraction
from math import gcd, isqrt

from mpmath import mp, mpf, mpc
from sympy import Poly, Symbol
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from . import polyarith as pa
from .errors import (
    GeneratorInvariantViolated,
    NotMonic,
    PrecisionExhausted,
    RamifiedOrBadPrime,
    Reducible,
    UnsupportedFieldWithoutConfig,
)

DEFAULT_DPS = 50
HENSEL_DEFAULT_N = 30
HENSEL_CAP_N = 480

_X = Symbol("x")


class NumberField:
    """K = Q(theta) for a monic irreducible integer polynomial."""

    def __init__(self, min_poly, integral_basis=None):
        coeffs = [int(c) for c in min_poly]
        pa.trim(coeffs)
        if len(coeffs) < 2:
            raise Reducible("constant polynomial does not define a field")
        if coeffs[-1] != 1:
            raise NotMonic(f"leading coefficient {coeffs[-1]} != 1")
        if any(Fraction(c) != c for c in min_poly):
            raise NotMonic("coefficients must be integers")
        self.min_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        poly = Poly(list(reversed(coeffs)), _X)
        if self.degree > 1 and not poly.is_irreducible:
            raise Reducible(f"{poly.as_expr()} factors over Q")
        self.discriminant = int(poly.discriminant()) if self.degree > 1 else 1
        # theta^k for k = d .. 2d-2, reduced to degree < d.
        self._red = self._reduction_rows()
        if integral_basis is None:
            self.integral_basis = tuple(
                FieldElement(self, [Fraction(int(i == j)) for j in range(self.degree)])
                for i in range(self.degree)
            )
        else:
            rows = [[Fraction(c) for c in row] for row in integral_basis]
            if len(rows) != self.degree or any(len(r) != self.degree for r in rows):
                raise ValueError("integral basis must be d vectors of length d")
            if _rank_fractions(rows) != self.degree:
                raise ValueError("integral basis matrix is singular")
            self.integral_basis = tuple(FieldElement(self, r) for r in rows)
        self._arch_places = None

    def _reduction_rows(self):
        d = self.degree
        rows = []
        # theta^d = -(c_0 + c_1 theta + ... + c_{d-1} theta^{d-1})
        cur = [Fraction(-c) for c in self.min_poly[:-1]]
        for _ in range(d - 1):
            rows.append(list(cur))
            nxt = [Fraction(0)] + cur[:-1]
            lead = cur[-1]
            if lead:
                for j in range(d):
                    nxt[j] += lead * Fraction(-self.min_poly[j])
            cur = nxt
        return rows

    # -- element constructors ------------------------------------------------

    def element(self, coords):
        c = [Fraction(x) for x in coords]
        if len(c) > self.degree:
            raise ValueError("too many coordinates")
        c += [Fraction(0)] * (self.degree - len(c))
        return FieldElement(self, c)

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def gen(self):
        if self.degree == 1:
            # theta is the root of the linear polynomial.
            return self.element([-self.min_poly[0]])
        return self.element([0, 1])

    def sqrt_disc(self):
        """The element 2*theta + c1 whose square is the discriminant (d = 2)."""
        if self.degree != 2:
            raise ValueError("sqrt_disc is only defined for quadratic fields")
        return self.element([self.min_poly[1], 2])

    def from_integral_coords(self, coords):
        acc = self.zero()
        for c, b in zip(coords, self.integral_basis):
            acc = acc + b * Fraction(c)
        return acc

    def __repr__(self):
        return f"NumberField({list(self.min_poly)})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)


class FieldElement:
    """Element of a NumberField as exact power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)
        if len(self.coords) != field.degree:
            raise ValueError("coordinate length mismatch")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.field.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if b:
                    conv[i + j] += a * b
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = self.field._red[k - d]
                for j in range(d):
                    out[j] += c * row[j]
        return FieldElement(self.field, out)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # Extended Euclid of the coordinate polynomial against min_poly.
        m = [Fraction(c) for c in self.field.min_poly]
        a = list(self.coords)
        pa.trim(a)
        r0, r1 = m, a
        t0, t1 = [], [Fraction(1)]
        while r1:
            q, r = pa.divmod_exact(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, pa.sub(t0, pa.mul(q, t1))
        if pa.degree(r0) != 0:
            raise ZeroDivisionError("element not invertible (reducible modulus?)")
        inv = pa.scale(t0, Fraction(1) / r0[0])
        inv = pa.poly_mod(inv, m)
        return self.field.element(inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.field.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.field.min_poly, self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def cleared(self):
        """(integer coefficient list, positive common denominator)."""
        den = 1
        for c in self.coords:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coords]
        pa.trim(ints)
        return ints, den

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coords]})"


def _rank_fractions(rows):
    mat = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Places


class Place:
    """Base class; concrete kinds are real, complex and finite."""

    kind = None

    def abs_value(self, elem, dps=None):
        raise NotImplementedError


class RealPlace(Place):
    kind = "real"

    def __init__(self, field, lo, hi, index):
        self.field = field
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self.index = index
        self.name = f"r{index}"
        self._roots = {}

    def refined(self, factor=2):
        lo, hi = pa.refine_real_root(
            list(map(Fraction, self.field.min_poly)), self.lo, self.hi,
            (self.hi - self.lo) / factor)
        return RealPlace(self.field, lo, hi, self.index)

    def root(self, dps=None):
        dps = dps or DEFAULT_DPS
        if dps in self._roots:
            return self._roots[dps]
        m = list(map(Fraction, self.field.min_poly))
        if self.field.degree == 1:
            val = mpf(-self.field.min_poly[0])
            self._roots[dps] = val
            return val
        lo, hi = pa.refine_real_root(m, self.lo, self.hi, Fraction(1, 2 ** 30))
        with mp.workdps(dps + 15):
            x = (mpf(lo.numerator) / lo.denominator + mpf(hi.numerator) / hi.denominator) / 2
            dm = pa.derivative(m)
            for _ in range(dps + 20):
                fx = _horner_mp(m, x)
                dfx = _horner_mp(dm, x)
                step = fx / dfx
                x = x - step
                if abs(step) < mpf(10) ** (-(dps + 10)):
                    break
            x = +x
        self._roots[dps] = x
        return x

    def root_float(self):
        return float(self.root(17))

    def evaluate(self, elem, dps=None):
        dps = dps or DEFAULT_DPS
        with mp.workdps(dps + 10):
            return +_horner_mp(list(elem.coords), self.root(dps))

    def abs_value(self, elem, dps=None):
        if elem.is_zero():
            return mpf(0)
        return abs(self.evaluate(elem, dps))

    def __repr__(self):
        return f"RealPlace({self.name}, ({self.lo}, {self.hi}])"


class ComplexPlace(Place):
    """One place per conjugate pair; the stored root has positive imaginary part.

    The normalized absolute value is the square of the modulus, which makes
    the product formula hold without counting the pair twice.
    """

    kind = "complex"

    def __init__(self, field, center_re, center_im, radius, index):
        self.field = field
        self.center = (Fraction(center_re), Fraction(center_im))
        self.radius = Fraction(radius)
        self.index = index
        self.name = f"c{index}"
        self._roots = {}

    def refined(self, factor=2):
        root = self.root(DEFAULT_DPS)
        re = Fraction(str(root.real))
        im = Fraction(str(root.imag))
        return ComplexPlace(self.field, re, im, self.radius / factor, self.index)

    def root(self, dps=None):
        dps = dps or DEFAULT_DPS
        if dps in self._roots:
            return self._roots[dps]
        m = list(map(Fraction, self.field.min_poly))
        dm = pa.derivative(m)
        with mp.workdps(dps + 15):
            x = mpc(mpf(self.center[0].numerator) / self.center[0].denominator,
                    mpf(self.center[1].numerator) / self.center[1].denominator)
            for _ in range(dps + 20):
                fx = _horner_mp(m, x)
                dfx = _horner_mp(dm, x)
                step = fx / dfx
                x = x - step
                if abs(step) < mpf(10) ** (-(dps + 10)):
                    break
            x = +x
        self._roots[dps] = x
        return x

    def root_float(self):
        return complex(self.root(17))

    def evaluate(self, elem, dps=None):
        dps = dps or DEFAULT_DPS
        with mp.workdps(dps + 10):
            return +_horner_mp(list(elem.coords), self.root(dps))

    def abs_value(self, elem, dps=None):
        if elem.is_zero():
            return mpf(0)
        dps = dps or DEFAULT_DPS
        with mp.workdps(dps + 10):
            v = self.evaluate(elem, dps)
            return +(v.real * v.real + v.imag * v.imag)

    def __repr__(self):
        return f"ComplexPlace({self.name}, center={self.center})"


class FinitePlace(Place):
    kind = "finite"

    def __init__(self, field, p, factor_mod_p, residue_degree, precision=HENSEL_DEFAULT_N,
                 lifted=None, index=0):
        self.field = field
        self.p = int(p)
        self.factor_mod_p = tuple(int(c) % p for c in factor_mod_p)
        self.residue_degree = residue_degree
        self.ramification_index = 1
        self.precision = precision
        self.index = index
        self.name = f"p{p}_{index}"
        self._lifted = tuple(lifted) if lifted is not None else None

    @property
    def lifted_factor(self):
        if self._lifted is None:
            self._lifted = tuple(_lift_place_factor(self.field, self.p,
                                                    self.factor_mod_p, self.precision))
        return self._lifted

    def refined(self, precision=None):
        n = precision or 2 * self.precision
        return FinitePlace(self.field, self.p, self.factor_mod_p,
                           self.residue_degree, n, index=self.index)

    def valuation(self, elem):
        """Exact valuation v_p(N_local(elem)); |elem|_v = p**(-valuation)."""
        if elem.is_zero():
            raise ZeroDivisionError("valuation of zero is infinite")
        ints, den = elem.cleared()
        den_val = 0
        while den % self.p == 0:
            den //= self.p
            den_val += 1
        place = self
        while True:
            res = pa.int_resultant(list(place.lifted_factor), ints)
            modulus = place.p ** place.precision
            res %= modulus
            if res != 0:
                val = 0
                while res % place.p == 0:
                    res //= place.p
                    val += 1
                if val < place.precision:
                    return val - self.residue_degree * den_val
            if 2 * place.precision > HENSEL_CAP_N:
                raise PrecisionExhausted(
                    f"resultant divisible by {place.p}^{place.precision} at the cap")
            place = place.refined()

    def abs_value(self, elem, dps=None):
        if elem.is_zero():
            return Fraction(0)
        val = self.valuation(elem)
        if val >= 0:
            return Fraction(1, self.p ** val)
        return Fraction(self.p ** (-val))

    def __repr__(self):
        return f"FinitePlace(p={self.p}, f={self.residue_degree}, N={self.precision})"


def _horner_mp(coeffs, x):
    acc = x * 0
    for c in reversed(coeffs):
        if isinstance(c, Fraction):
            acc = acc * x + mpf(c.numerator) / c.denominator
        else:
            acc = acc * x + c
    return acc


def _lift_place_factor(field, p, factor, precision):
    m = list(field.min_poly)
    lc, facs = gf_factor([int(c) % p for c in reversed(m)], p, ZZ)
    parts = [list(reversed([int(c) for c in f])) for f, mult in facs]
    lifted = pa.hensel_lift_factors(m, parts, p, precision)
    target = tuple(int(c) % p for c in factor)
    for orig, lift in zip(parts, lifted):
        if tuple(c % p for c in orig) == target:
            return lift
    raise ValueError("factor not found in the mod-p factorization")


# ---------------------------------------------------------------------------
# Module operations


def create_field(min_poly_coeffs, integral_basis=None):
    """Build the field, verifying monicity, integrality and irreducibility."""
    return NumberField(min_poly_coeffs, integral_basis)


def archimedean_places(field):
    """All real and complex places; complex conjugate pairs appear once."""
    if field._arch_places is not None:
        return list(field._arch_places)
    m = list(map(Fraction, field.min_poly))
    places = []
    if field.degree == 1:
        places.append(RealPlace(field, Fraction(-field.min_poly[0]) - 1,
                                Fraction(-field.min_poly[0]) + 1, 0))
    else:
        intervals = pa.isolate_real_roots(m)
        for i, (lo, hi) in enumerate(intervals):
            places.append(RealPlace(field, lo, hi, i))
        r1 = len(intervals)
        r2 = (field.degree - r1) // 2
        if r2 > 0:
            places.extend(_complex_places(field, r2))
    return list(places)


def _complex_places(field, r2):
    with mp.workdps(DEFAULT_DPS + 20):
        roots = mp.polyroots([mpf(c) for c in reversed(field.min_poly)],
                             maxsteps=200, extraprec=80)
        upper = [r for r in roots if mp.im(r) > 0]
        upper.sort(key=lambda r: (mp.re(r), mp.im(r)))
        if len(upper) != r2:
            raise ArithmeticError("complex root pairing failed")
        sep = None
        for i, a in enumerate(roots):
            for b in roots[i + 1:]:
                d = abs(a - b)
                if sep is None or d < sep:
                    sep = d
        radius = Fraction(str(sep / 3)) if sep else Fraction(1)
        out = []
        for i, r in enumerate(upper):
            out.append(ComplexPlace(field, Fraction(str(mp.re(r))),
                                    Fraction(str(mp.im(r))), radius, i))
    return out


def finite_places(field, p, precision=HENSEL_DEFAULT_N):
    """One place per irreducible factor of the defining polynomial mod p.

    Rejects primes where the reduction has a repeated factor: those are
    ramified or divide the index, and the resultant-based valuation would
    not be exact there.
    """
    p = int(p)
    if p < 2 or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    m_desc = [c % p for c in reversed(field.min_poly)]
    lc, facs = gf_factor(m_desc, p, ZZ)
    if any(mult > 1 for _, mult in facs):
        raise RamifiedOrBadPrime(
            f"x-minimal polynomial has a repeated factor mod {p}")
    parts = [list(reversed([int(c) for c in f])) for f, mult in facs]
    parts.sort(key=lambda f: (len(f), f))
    lifted = pa.hensel_lift_factors(list(field.min_poly), parts, p, precision)
    places = []
    for i, (fac, lift) in enumerate(zip(parts, lifted)):
        places.append(FinitePlace(field, p, fac, len(fac) - 1, precision,
                                  lifted=lift, index=i))
    assert sum(pl.residue_degree for pl in places) == field.degree
    return places


def local_abs(elem, place, dps=None):
    """Normalized |elem|_v: mpf at archimedean places, exact Fraction at finite."""
    return place.abs_value(elem, dps)


def field_norm(elem):
    """The rational norm of an element, via an exact resultant."""
    field = elem.field
    if elem.is_zero():
        return Fraction(0)
    ints, den = elem.cleared()
    res = pa.int_resultant(list(field.min_poly), ints)
    return Fraction(res, den ** field.degree)


# ---------------------------------------------------------------------------
# S-unit groups


class SUnitGroup:
    """Generators of the S-units for the supported field classes."""

    def __init__(self, field, places, generators, torsion_generator, rank):
        self.field = field
        self.places = list(places)
        self.generators = list(generators)
        self.torsion_generator = torsion_generator
        self.rank = rank
        for u in self.generators:
            _check_unit_invariant(u, self.places)

    def power_product(self, exponents):
        acc = self.field.one()
        for u, e in zip(self.generators, exponents):
            acc = acc * u ** e
        return acc

    def __repr__(self):
        return f"SUnitGroup(rank={self.rank}, generators={len(self.generators)})"


def _check_unit_invariant(u, places, tol=Fraction(1, 10 ** 12)):
    fin = Fraction(1)
    arch = mpf(1)
    with mp.workdps(DEFAULT_DPS):
        for v in places:
            if v.kind == "finite":
                fin *= v.abs_value(u)
            else:
                arch *= v.abs_value(u)
        total = arch * mpf(fin.numerator) / fin.denominator
        if abs(total - 1) > mpf(float(tol)):
            raise GeneratorInvariantViolated(
                f"product of |u|_v over S is {total}, not 1, for {u!r}")


def _torsion_generator(field, places):
    """Maximal-order root of unity (search over small coordinates)."""
    if field.degree == 1:
        return field.element([-1])
    best = field.element([-1])
    best_key = (2, best.coords)
    halves = (Fraction(1, 2), Fraction(1))
    rng = [Fraction(k) for k in range(-2, 3)]
    for q in halves:
        for a in rng:
            for b in rng:
                u = field.element([a * q, b * q])
                if u.is_zero() or field_norm(u) not in (1, -1):
                    continue
                order = _mult_order(u, cap=12)
                if order and (order, u.coords) > best_key:
                    best, best_key = u, (order, u.coords)
    return best


def _mult_order(u, cap):
    acc = u
    for k in range(1, cap + 1):
        if acc == 1:
            return k
        acc = acc * u
    return None


def _pell_fundamental_unit(field):
    """Fundamental unit of a real quadratic field.

    Solves x^2 - D y^2 = +-4 for the field discriminant D, taking candidate
    (x, y) pairs from the continued fraction of sqrt(D) (plus a small direct
    sweep, which covers the tiny discriminants where the convergent
    criterion is not conclusive).
    """
    D = field.discriminant
    sqrt_disc = field.sqrt_disc()

    def unit_from(x, y):
        return field.element([Fraction(x, 2), 0]) + sqrt_disc * Fraction(y, 2)

    for y in range(1, 200):
        for sign in (-4, 4):
            x2 = D * y * y + sign
            if x2 <= 0:
                continue
            x = isqrt(x2)
            if x * x == x2:
                return unit_from(x, y)
    # Continued fraction of sqrt(D): exact integer state (P + sqrt(D)) / Q.
    a0 = isqrt(D)
    P, Q, a = 0, 1, a0
    p_prev, p_cur = 1, a0
    q_prev, q_cur = 0, 1
    for _ in range(10 ** 5):
        P = a * Q - P
        Q = (D - P * P) // Q
        a = (a0 + P) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        t = p_cur * p_cur - D * q_cur * q_cur
        if t in (4, -4):
            return unit_from(p_cur, q_cur)
        if t in (1, -1):
            return unit_from(2 * p_cur, 2 * q_cur)
    raise UnsupportedFieldWithoutConfig("fundamental unit search exhausted")


def _finite_generators(field, finite):
    """Elements whose valuation vectors span the finite-place directions.

    Norm-equation search over small integral coordinates; greedy selection
    of a full-rank subset, smallest coordinates first.
    """
    if not finite:
        return []
    primes = sorted({v.p for v in finite})
    if field.degree == 1:
        return [field.element([p]) for p in sorted(v.p for v in finite)]
    candidates = []
    bound = 40
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a == 0 and b == 0:
                continue
            if a < 0 or (a == 0 and b < 0):
                continue            # sign class: first nonzero coordinate positive
            z = field.from_integral_coords([a, b])
            n = abs(field_norm(z))
            if n == 0 or n == 1:
                continue
            rem = n.numerator
            for p in primes:
                while rem % p == 0:
                    rem //= p
            if rem != 1:
                continue
            candidates.append((max(abs(a), abs(b)), (a, b), z))
    candidates.sort(key=lambda t: (t[0], t[1]))
    chosen, vecs = [], []
    for _, _, z in candidates:
        vec = [Fraction(v.valuation(z)) for v in finite]
        if _rank_fractions(vecs + [vec]) > len(chosen):
            chosen.append(z)
            vecs.append(vec)
            if len(chosen) == len(finite):
                break
    if len(chosen) < len(finite):
        raise UnsupportedFieldWithoutConfig(
            "norm-equation search did not reach every finite place; "
            "supply s_units in the configuration")
    return chosen


def s_unit_group(field, places, supplied=None):
    """S-unit generators for Q and quadratic fields; otherwise user-supplied.

    `places` must contain all archimedean places of the field.  Supplied
    generators (coordinate vectors) are verified against the product
    formula and trusted for the rank.
    """
    arch = [v for v in places if v.kind != "finite"]
    finite = [v for v in places if v.kind == "finite"]
    expected = archimedean_places(field)
    if len(arch) != len(expected):
        raise ValueError("S must contain all archimedean places")
    if supplied is not None:
        gens = [field.element(c) for c in supplied]
        group = SUnitGroup(field, places, gens, _torsion_generator(field, places),
                           rank=len(gens))
        return group
    r1 = sum(1 for v in expected if v.kind == "real")
    r2 = sum(1 for v in expected if v.kind == "complex")
    dirichlet = r1 + r2 - 1
    if field.degree == 1:
        gens = [field.element([v.p]) for v in sorted(finite, key=lambda v: v.p)]
        return SUnitGroup(field, places, gens, field.element([-1]),
                          rank=len(gens))
    if field.degree == 2:
        gens = []
        if field.discriminant > 0:
            gens.append(_pell_fundamental_unit(field))
        gens.extend(_finite_generators(field, finite))
        torsion = _torsion_generator(field, places)
        return SUnitGroup(field, places, gens, torsion,
                          rank=dirichlet + len(finite))
    raise UnsupportedFieldWithoutConfig(
        f"degree-{field.degree} fields need s_units in the configuration")

import random
from fractions import Fraction

import pytest
from sympy import Poly, Symbol

from sadiclab import polyarith as pa

x = Symbol("x")


def test_divmod_exact_roundtrip():
    random.seed(0)
    for _ in range(50):
        p = [Fraction(random.randint(-9, 9)) for _ in range(6)]
        q = [Fraction(random.randint(-9, 9)) for _ in range(3)]
        pa.trim(p), pa.trim(q)
        if not q:
            continue
        quot, rem = pa.divmod_exact(p, q)
        assert pa.add(pa.mul(quot, q), rem) == pa.trim(list(p))


def test_int_resultant_matches_sympy():
    # convention: int_resultant(p, q) = lc(p)^deg(q) * prod q(p-roots);
    # sympy's PRS agrees whenever deg p >= deg q
    random.seed(1)
    for _ in range(60):
        p = [random.randint(-6, 6) for _ in range(random.randint(2, 5))]
        q = [random.randint(-6, 6) for _ in range(random.randint(2, 5))]
        pa.trim(p), pa.trim(q)
        if not p or not q or pa.degree(p) < max(pa.degree(q), 1):
            continue
        want = Poly(list(reversed(p)), x).resultant(Poly(list(reversed(q)), x))
        assert pa.int_resultant(p, q) == int(want)


def test_int_resultant_product_of_roots():
    # independent oracle for the convention: p = 4(x-1), q arbitrary
    p = [-4, 4]
    q = [-5, 5, -1, 5]
    assert pa.int_resultant(p, q) == 4 ** 3 * pa.evaluate(q, 1)


def test_real_root_isolation_quadratics():
    # x^2 - 2: two roots separated by the isolating intervals
    intervals = pa.isolate_real_roots([Fraction(-2), Fraction(0), Fraction(1)])
    assert len(intervals) == 2
    for (lo, hi), sign in zip(intervals, (-1, 1)):
        lo2, hi2 = pa.refine_real_root(
            [Fraction(-2), Fraction(0), Fraction(1)], lo, hi, Fraction(1, 10 ** 12))
        mid = float((lo2 + hi2) / 2)
        assert abs(abs(mid) - 2 ** 0.5) < 1e-10
        assert (mid > 0) == (sign > 0)


def test_real_root_isolation_no_real_roots():
    assert pa.isolate_real_roots([Fraction(1), Fraction(0), Fraction(1)]) == []


def test_hensel_lift_gaussian_split():
    m = [1, 0, 1]                               # x^2 + 1
    lifted = pa.hensel_lift_factors(m, [[2, 1], [3, 1]], 5, 20)
    mod = 5 ** 20
    prod = pa._mul_mod(lifted[0], lifted[1], mod)
    assert prod == pa._mod_poly(m, mod)
    for fac, orig in zip(lifted, [[2, 1], [3, 1]]):
        assert [c % 5 for c in fac] == orig
        # the root of x + c satisfies c^2 = -1 mod 5^20
        c = fac[0]
        assert (c * c + 1) % mod == 0


def test_hensel_lift_three_factors():
    # x^3 - x = x (x-1) (x+1) splits mod 7
    m = [0, -1, 0, 1]
    facs = [[0, 1], [6, 1], [1, 1]]
    lifted = pa.hensel_lift_factors(m, facs, 7, 12)
    mod = 7 ** 12
    prod = [1]
    for f in lifted:
        prod = pa._mul_mod(prod, f, mod)
    assert prod == pa._mod_poly(m, mod)


def test_hensel_rejects_non_coprime():
    with pytest.raises(ValueError):
        pa.hensel_lift_factors([1, 2, 1], [[1, 1], [1, 1]], 2, 8)

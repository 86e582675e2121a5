"""Dense univariate polynomial arithmetic over exact coefficients.

Polynomials are lists of coefficients in *ascending* order, [c0, c1, ...],
with no trailing zeros (the zero polynomial is []).  Coefficients are
Fractions or ints; everything here is exact.  The mod-p^N routines work on
plain int lists reduced into [0, p^N).

Only what the number-field layer needs lives here: ring ops, division,
Sturm sequences for real root isolation, an integer resultant, and
multifactor Hensel lifting of a squarefree factorization mod p.
"""

from fractions import Fraction


def trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    if c == 0:
        return []
    return [a * c for a in p]


def divmod_exact(p, q):
    """Euclidean division over a field (Fraction coefficients)."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in p]
    d = degree(q)
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(0, len(r) - d)
    while len(r) - 1 >= d and r:
        k = len(r) - 1 - d
        c = r[-1] / lead
        quot[k] = c
        for i in range(d + 1):
            r[k + i] -= c * q[i]
        trim(r)
    return trim(quot), r


def poly_mod(p, q):
    return divmod_exact(p, q)[1]


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def content_primitive(p):
    """gcd of integer coefficients and the corresponding primitive part."""
    from math import gcd

    g = 0
    for c in p:
        g = gcd(g, abs(int(c)))
    if g == 0:
        return 0, list(p)
    return g, [int(c) // g for c in p]


def sturm_chain(p):
    chain = [list(p), derivative(p)]
    while chain[-1]:
        r = poly_mod(chain[-2], chain[-1])
        chain.append(neg(r))
    chain.pop()
    return chain


def _sign_changes(chain, x):
    signs = []
    for q in chain:
        v = evaluate(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p, lo, hi, chain=None):
    """Number of distinct real roots in (lo, hi]; endpoints exact."""
    if chain is None:
        chain = sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def cauchy_bound(p):
    """All roots have absolute value below this (exact Fraction)."""
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p):
    """Disjoint rational intervals (lo, hi], one per distinct real root."""
    chain = sturm_chain(p)
    bound = cauchy_bound(p)
    pending = [(-bound, bound)]
    done = []
    while pending:
        lo, hi = pending.pop()
        k = count_real_roots(p, lo, hi, chain)
        if k == 0:
            continue
        if k == 1:
            done.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        pending.append((lo, mid))
        pending.append((mid, hi))
    done.sort()
    return done


def refine_real_root(p, lo, hi, width):
    """Bisect an isolating interval until hi - lo < width."""
    flo = evaluate(p, lo)
    if flo == 0:
        # (lo, hi] convention: root cannot sit at lo, but guard anyway.
        return lo, lo
    neg_at_lo = flo < 0
    while hi - lo >= width:
        mid = (lo + hi) / 2
        fmid = evaluate(p, mid)
        if fmid == 0:
            return mid, mid
        if (fmid < 0) == neg_at_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# Integer resultants (Sylvester matrix + fraction-free Bareiss elimination)

def int_resultant(p, q):
    """Resultant of two integer polynomials, exact."""
    p = trim([int(c) for c in p])
    q = trim([int(c) for c in q])
    if not p or not q:
        return 0
    m, n = degree(p), degree(q)
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    size = m + n
    mat = [[0] * size for _ in range(size)]
    pr = list(reversed(p))
    qr = list(reversed(q))
    for i in range(n):
        mat[i][i:i + m + 1] = pr
    for i in range(m):
        mat[n + i][i:i + n + 1] = qr
    # Bareiss: exact integer determinant.
    sign = 1
    prev = 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            for r in range(k + 1, size):
                if mat[r][k] != 0:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[size - 1][size - 1]


# ---------------------------------------------------------------------------
# Arithmetic mod p^N and Hensel lifting

def _mod_poly(p, m):
    return trim([c % m for c in p])


def _mul_mod(p, q, m):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = (out[i + j] + a * b) % m
    return trim(out)


def _sub_mod(p, q, m):
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] = c
    for i, c in enumerate(q):
        out[i] = (out[i] - c) % m
    for i in range(len(p)):
        out[i] %= m
    return trim(out)


def _divmod_monic_mod(p, q, m):
    """Division by a monic divisor with coefficients mod m."""
    r = [c % m for c in p]
    d = degree(q)
    quot = [0] * max(0, len(r) - d)
    trim(r)
    while r and len(r) - 1 >= d:
        k = len(r) - 1 - d
        c = r[-1] % m
        quot[k] = c
        for i in range(d + 1):
            r[k + i] = (r[k + i] - c * q[i]) % m
        trim(r)
    return trim(quot), r


def gf_gcdex_poly(f, g, p):
    """Extended gcd over GF(p): returns (s, t, h) with s f + t g = h, h monic."""
    r0, r1 = _mod_poly(f, p), _mod_poly(g, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        inv = pow(r1[-1], -1, p)
        q, r = _divmod_monic_mod(r0, _mul_mod(r1, [inv], p), p)
        q = _mul_mod(q, [inv], p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub_mod(s0, _mul_mod(q, s1, p), p)
        t0, t1 = t1, _sub_mod(t0, _mul_mod(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return (_mul_mod(s0, [inv], p), _mul_mod(t0, [inv], p), _mul_mod(r0, [inv], p))


def _hensel_step(f, g, h, s, t, p, k):
    """Lift f = g*h with s*g + t*h = 1 from mod p^k to mod p^(2k).

    g and h monic, deg s < deg h, deg t < deg g; returns (g*, h*, s*, t*)
    satisfying the same relations mod p^(2k).
    """
    m2 = p ** (2 * k)
    e = _sub_mod(f, _mul_mod(g, h, m2), m2)
    q, r = _divmod_monic_mod(_mul_mod(s, e, m2), h, m2)
    g1 = _mod_poly(add(g, add(_mul_mod(t, e, m2), _mul_mod(q, g, m2))), m2)
    h1 = _mod_poly(add(h, r), m2)
    b = _sub_mod(add(_mul_mod(s, g1, m2), _mul_mod(t, h1, m2)), [1], m2)
    c, d = _divmod_monic_mod(_mul_mod(s, b, m2), h1, m2)
    s1 = _sub_mod(s, d, m2)
    t1 = _sub_mod(t, add(_mul_mod(t, b, m2), _mul_mod(c, g1, m2)), m2)
    return g1, h1, s1, t1


def _lift_pair(f, g, h, p, N):
    """Lift the coprime monic factorization f = g*h mod p up to mod p^N."""
    s, t, one = gf_gcdex_poly(g, h, p)
    if one != [1]:
        raise ValueError("factors not coprime mod p")
    # degree normalization: deg s < deg h, deg t < deg g
    q, s = _divmod_monic_mod(s, h, p)
    t = _mod_poly(add(t, _mul_mod(q, g, p)), p)
    k = 1
    while k < N:
        g, h, s, t = _hensel_step(f, g, h, s, t, p, k)
        k *= 2
    m = p ** N
    return _mod_poly(g, m), _mod_poly(h, m)


def hensel_lift_factors(f, factors, p, N):
    """Lift a squarefree monic factorization of f mod p to mod p^N.

    f: monic integer polynomial; factors: pairwise-coprime monic factors of
    f mod p (ascending coefficient lists).  Returns lifted factors, with
    product congruent to f mod p^N.
    """
    f = _mod_poly(f, p ** N)
    if len(factors) == 1:
        return [_mod_poly(f, p ** N)]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g = [1]
    for fac in left:
        g = _mul_mod(g, fac, p)
    h = [1]
    for fac in right:
        h = _mul_mod(h, fac, p)
    gl, hl = _lift_pair(f, g, h, p, N)
    return hensel_lift_factors(gl, left, p, N) + hensel_lift_factors(hl, right, p, N)

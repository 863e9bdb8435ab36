"""Exact arithmetic in F_q and in the truncated Witt ring W(F_q)/p^N.

q = p^f.  Both rings are written in the polynomial basis 1, t, ..., t^(f-1)
where t is a root of a fixed monic irreducible modulus of degree f.  An
element of F_q is a tuple of f integers in [0, p); an element of W(F_q)/p^N
is a tuple of f integers in [0, p^N).  Tuples hash and compare structurally,
so elements can be used as dict keys directly.  All operations are pure
functions taking the element(s) first and a Params last.

Ring axioms hold exactly at precision N.  A quantity that is 0 mod p^N has
unknown valuation; valuation_and_unit reports PRECISION_INF for it and
callers are expected to retry at higher precision.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

PRECISION_INF = math.inf


class PrecisionError(ArithmeticError):
    """A result was indistinguishable from 0 at the working precision."""


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# Dense polynomials over F_p, ascending coefficients, used only to pick and
# certify the modulus.

def _gf_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _gf_trim(out)


def _gf_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            for i in range(dm):
                a[k - dm + i] = (a[k - dm + i] - c * m[i]) % p
        a[k] = 0
    return _gf_trim(a[:dm])


def _gf_gcd(a, b, p):
    a, b = list(a), list(b)
    while _gf_trim(b):
        if len(b) - 1 == 0:
            return [1]
        # reduce a mod b after making b monic
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        r = _gf_mod(a, b, p)
        a, b = b, r
    return a


def _gf_pow_x(e, m, p):
    # x^e mod m
    result = [1]
    base = _gf_mod([0, 1], m, p)
    while e:
        if e & 1:
            result = _gf_mod(_gf_mul(result, base, p), m, p)
        base = _gf_mod(_gf_mul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible(m, p, f):
    if f == 1:
        return True
    xq = _gf_pow_x(p ** f, m, p)
    # x^(p^f) == x mod m
    if _gf_trim(list(xq)) != [0, 1]:
        return False
    for ell in _prime_divisors(f):
        xe = _gf_pow_x(p ** (f // ell), m, p)
        d = list(xe) + [0] * max(0, 2 - len(xe))
        d[1] = (d[1] - 1) % p
        g = _gf_trim(list(_gf_gcd(list(m), _gf_trim(d), p)))
        if len(g) != 1:
            return False
    return True


def _default_modulus(p, f):
    """Least monic irreducible lift, coefficients compared from x^(f-1) down."""
    for n in range(p ** f):
        lower = [(n // p ** i) % p for i in range(f)]
        m = lower + [1]
        if _is_irreducible(m, p, f):
            return tuple(m)
    raise ArithmeticError("no irreducible polynomial found")


@dataclass(frozen=True)
class Params:
    """Arithmetic context: p, f, precision N, and the monic modulus.

    The modulus is stored with integer coefficients in [0, p), so the same
    Params family can be re-created at any precision.
    """

    p: int
    f: int
    N: int
    modulus: tuple

    @property
    def q(self):
        return self.p ** self.f

    @property
    def pN(self):
        return self.p ** self.N

    @staticmethod
    def make(p, f, N=None, modulus=None):
        if not _is_prime(p) or p <= 5:
            raise ValueError("p must be a prime greater than 5")
        if f < 1:
            raise ValueError("f must be at least 1")
        if N is None:
            N = f * f + 4
        if N < 1:
            raise ValueError("N must be at least 1")
        if modulus is None:
            modulus = _default_modulus(p, f)
        else:
            modulus = tuple(int(c) % p for c in modulus[:-1]) + (1,)
            if len(modulus) != f + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree f")
            if not _is_irreducible(list(modulus), p, f):
                raise ValueError("modulus is not irreducible mod p")
        return Params(p, f, N, modulus)

    def with_precision(self, N):
        return Params(self.p, self.f, N, self.modulus)


def raise_precision(params, extra=None):
    """A fresh Params at strictly higher N, same field."""
    if extra is None:
        extra = max(params.f * params.f, 4)
    return params.with_precision(params.N + extra)


# ---------------------------------------------------------------------------
# F_q

def fq_zero(params):
    return (0,) * params.f


def fq_one(params):
    return (1,) + (0,) * (params.f - 1)


def fq_from_int(n, params):
    return (n % params.p,) + (0,) * (params.f - 1)


def fq_add(a, b, params):
    p = params.p
    return tuple((x + y) % p for x, y in zip(a, b))


def fq_sub(a, b, params):
    p = params.p
    return tuple((x - y) % p for x, y in zip(a, b))


def fq_neg(a, params):
    p = params.p
    return tuple((-x) % p for x in a)


def fq_mul(a, b, params):
    p, f, mod = params.p, params.f, params.modulus
    if f == 1:
        return ((a[0] * b[0]) % p,)
    c = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                c[i + j] += ai * bj
    for k in range(2 * f - 2, f - 1, -1):
        t = c[k] % p
        if t:
            base = k - f
            for i in range(f):
                c[base + i] -= t * mod[i]
        c[k] = 0
    return tuple(x % p for x in c[:f])


def fq_pow(a, e, params):
    e = int(e)
    if e < 0:
        a = fq_inv(a, params)
        e = -e
    result = fq_one(params)
    base = a
    while e:
        if e & 1:
            result = fq_mul(result, base, params)
        base = fq_mul(base, base, params)
        e >>= 1
    return result


def fq_inv(a, params):
    if not any(a):
        raise ZeroDivisionError("inverse of 0 in F_q")
    return fq_pow(a, params.q - 2, params)


@lru_cache(maxsize=None)
def _fq_elements_key(p, f, modulus):
    out = []
    for n in range(p ** f):
        out.append(tuple((n // p ** i) % p for i in range(f)))
    return out


def fq_elements(params):
    """All q elements; index of an element equals sum(c_i p^i)."""
    return _fq_elements_key(params.p, params.f, params.modulus)


def fq_code(a, params):
    p = params.p
    n = 0
    for i in reversed(range(params.f)):
        n = n * p + a[i]
    return n


# ---------------------------------------------------------------------------
# W(F_q)/p^N

def witt_zero(params):
    return (0,) * params.f


def witt_one(params):
    return (1,) + (0,) * (params.f - 1)


def witt_from_int(n, params):
    return (n % params.pN,) + (0,) * (params.f - 1)


def witt_add(x, y, params):
    m = params.pN
    return tuple((a + b) % m for a, b in zip(x, y))


def witt_sub(x, y, params):
    m = params.pN
    return tuple((a - b) % m for a, b in zip(x, y))


def witt_neg(x, params):
    m = params.pN
    return tuple((-a) % m for a in x)


def witt_scale(n, x, params):
    m = params.pN
    n = n % m
    return tuple((n * a) % m for a in x)


def witt_mul(x, y, params):
    m, f, mod = params.pN, params.f, params.modulus
    if f == 1:
        return ((x[0] * y[0]) % m,)
    c = [0] * (2 * f - 1)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                c[i + j] += xi * yj
    for k in range(2 * f - 2, f - 1, -1):
        t = c[k] % m
        if t:
            base = k - f
            for i in range(f):
                c[base + i] -= t * mod[i]
        c[k] = 0
    return tuple(v % m for v in c[:f])


def witt_pow(x, e, params):
    result = witt_one(params)
    base = x
    e = int(e)
    while e:
        if e & 1:
            result = witt_mul(result, base, params)
        base = witt_mul(base, base, params)
        e >>= 1
    return result


def witt_is_zero(x):
    return not any(x)


def witt_reduce(x, params):
    """Reduction W(F_q)/p^N -> F_q."""
    p = params.p
    return tuple(a % p for a in x)


def witt_lift(a, params):
    """The coefficientwise lift F_q -> W(F_q)/p^N (not multiplicative)."""
    return tuple(int(c) for c in a)


def teichmuller(a, params):
    """The multiplicative lift of a in F_q, fixed point of y -> y^q.

    Converges from the coefficientwise lift in at most N iterations because
    y -> y^q contracts p-adic distance on each fiber of the reduction.
    """
    y = witt_lift(a, params)
    q = params.q
    for _ in range(params.N + 1):
        z = witt_pow(y, q, params)
        if z == y:
            return y
        y = z
    raise ArithmeticError("Teichmuller iteration failed to stabilize")


def valuation_and_unit(x, params):
    """Write x = p^v * u with u a unit, returning (v, leading digit of u).

    The leading digit is u mod p as an F_q element and is nonzero whenever v
    is finite.  If x is 0 at precision N the true valuation is out of reach:
    returns (PRECISION_INF, None).
    """
    if witt_is_zero(x):
        return PRECISION_INF, None
    p = params.p
    v = params.N
    for c in x:
        if c:
            w = 0
            while c % p == 0:
                c //= p
                w += 1
            if w < v:
                v = w
    lead = tuple((c // p ** v) % p for c in x)
    return v, lead


def witt_unit_part(x, params):
    """x / p^v at precision N - v, with its own Params. Returns (u, v, params)."""
    v, _ = valuation_and_unit(x, params)
    if v is PRECISION_INF:
        raise PrecisionError("zero at working precision has no unit part")
    sub = params.with_precision(params.N - v)
    u = tuple((c // params.p ** v) % sub.pN for c in x)
    return u, v, sub


def witt_inv(x, params):
    """Inverse of a unit, by lifting the residue inverse with Newton steps."""
    v, lead = valuation_and_unit(x, params)
    if v is PRECISION_INF or v > 0:
        raise ZeroDivisionError("not a unit in W(F_q)/p^N")
    y = witt_lift(fq_inv(lead, params), params)
    # Newton: y -> y(2 - xy) doubles correct digits each step.
    steps = max(1, math.ceil(math.log2(params.N))) + 1
    two = witt_from_int(2, params)
    for _ in range(steps):
        y = witt_mul(y, witt_sub(two, witt_mul(x, y, params), params), params)
    if witt_mul(x, y, params) != witt_one(params):
        raise ArithmeticError("unit inversion failed")
    return y


def witt_divide_exact(x, y, params):
    """x / y where p^v(y) divides x. Returns (quotient, params at N - v(y)).

    The quotient is only defined at precision N - v(y); the returned Params
    reflects that.
    """
    u, v, sub = witt_unit_part(y, params)
    p = params.p
    xs = tuple((c % params.pN) for c in x)
    for c in xs:
        if c % p ** v:
            raise ArithmeticError("division is not exact")
    x_shift = tuple((c // p ** v) % sub.pN for c in xs)
    return witt_mul(x_shift, witt_inv(u, sub), sub), sub

"""Induction to GL2(F_q) of a diagonal character, over W(F_q)/p^N.

The module is realized as functions on the group that transform by the
character under left multiplication by the upper triangular subgroup, with
the action (h f)(g) = f(g h).  Basis labels are integers: label 0 is the
coset of the identity (the function phi supported on the Borel with
phi(1) = 1), label 1 + code(lam) is the coset of w n(lam) where w is the
antidiagonal involution and n(lam) the upper unipotent.  Vectors are dicts
from labels to Witt tuples with zero entries dropped.

A diagonal character is a pair (m1, m2) of exponents mod q-1:
diag(a, d) acts on the phi line by [a]^m1 [d]^m2.
"""

from dataclasses import dataclass

from wittcycle import _tables
from wittcycle.group_algebra import gl2_inv, s_operator
from wittcycle.padic import (
    PRECISION_INF,
    PrecisionError,
    raise_precision,
    valuation_and_unit,
    witt_add,
    witt_inv,
    witt_mul,
    witt_one,
)


class ExchangeError(ArithmeticError):
    """The exchange identity is not available (degenerate target character)."""


@dataclass(frozen=True)
class HChar:
    """A character of the diagonal torus, exponent pair mod q-1."""

    m1: int
    m2: int
    qm1: int

    def swap(self):
        return HChar(self.m2, self.m1, self.qm1)

    def times_alpha(self, n):
        m = self.qm1
        return HChar((self.m1 + n) % m, (self.m2 - n) % m, self.qm1)

    def times(self, other):
        m = self.qm1
        return HChar((self.m1 + other.m1) % m, (self.m2 + other.m2) % m, m)

    def twist_det(self, c):
        """Multiply by det^c; central twists move both exponents together."""
        m = self.qm1
        return HChar((self.m1 + c) % m, (self.m2 + c) % m, m)

    def a_exponent(self):
        """The r with self = (self swapped) times alpha^r."""
        return (self.m1 - self.m2) % self.qm1


def make_char(m1, m2, params):
    m = params.q - 1
    return HChar(m1 % m, m2 % m, m)


def exponent_shift(xi1, xi2):
    """The n in [1, q-1] with xi2 = xi1 alpha^n, if there is one."""
    if xi1.qm1 != xi2.qm1:
        raise ValueError("characters live on different tori")
    m = xi1.qm1
    n = (xi2.m1 - xi1.m1) % m
    if (xi2.m2 - xi1.m2) % m != (-n) % m:
        raise ValueError("characters are not related by a power of alpha")
    return n if n else m


@dataclass(frozen=True)
class PSModule:
    """The induced module determined by a diagonal character."""

    chi: HChar
    params: object

    def __post_init__(self):
        if self.chi.qm1 != self.params.q - 1:
            raise ValueError("character does not match the field size")

    @property
    def dim(self):
        return self.params.q + 1


def phi_vector(module):
    """The canonical generator: supported on the Borel, value 1 at 1."""
    return {0: witt_one(module.params)}


def ps_act(module, x, v):
    """Act on a vector by a group element (4-tuple) or group-algebra element."""
    params = module.params
    if isinstance(x, tuple):
        x = {x: witt_one(params)}
    T = _tables.tables_for(params)
    teich = _tables.teich_by_code(params)
    q, mul, add, neg, inv = T.q, T.mul, T.add, T.neg, T.inv
    m1, m2 = module.chi.m1, module.chi.m2
    one = witt_one(params)
    out = {}
    for h, hcoef in x.items():
        e, f2, g2, h2 = gl2_inv(h, params)
        trivial = hcoef == one
        for label, c in v.items():
            if label == 0:
                m00, m01, m10, m11 = e, f2, g2, h2
            else:
                lam = label - 1
                m00, m01 = g2, h2
                m10 = add[e * q + mul[lam * q + g2]]
                m11 = add[f2 * q + mul[lam * q + h2]]
            if m10 == 0:
                lbl = 0
                d1, d2 = m00, m11
            else:
                lbl = 1 + mul[m11 * q + inv[m10]]
                det = add[mul[m00 * q + m11] * q + neg[mul[m01 * q + m10]]]
                d1 = mul[neg[det] * q + inv[m10]]
                d2 = m10
            # chi(borel part)^(-1)
            scal = teich[mul[T.pow_code(d1, -m1) * q + T.pow_code(d2, -m2)]]
            w = witt_mul(c, scal, params)
            if not trivial:
                w = witt_mul(w, hcoef, params)
            prev = out.get(lbl)
            s = witt_add(prev, w, params) if prev else w
            if any(s):
                out[lbl] = s
            elif prev:
                del out[lbl]
    return out


def h_component_characters(module):
    """The q+1 eigencharacters of the torus action, with multiplicity.

    Labels 0 and 1 (the two Borel-fixed lines) carry chi and chi swapped;
    the unit-indexed combinations carry chi swapped times alpha^(-j).
    """
    chi = module.chi
    out = {}
    for xi in [chi, chi.swap()]:
        out[xi] = out.get(xi, 0) + 1
    for j in range(module.params.q - 1):
        xi = chi.swap().times_alpha(-j)
        out[xi] = out.get(xi, 0) + 1
    return out


def h_components(module):
    """Eigenvectors of the torus action, grouped by character.

    Returns a dict from HChar to a list of vectors.  Characters whose list
    has length one span their eigenspace; length two means the span is the
    full two dimensional eigenspace.
    """
    params = module.params
    T = _tables.tables_for(params)
    teich = _tables.teich_by_code(params)
    chi = module.chi
    q = params.q
    out = {}

    def push(xi, vec):
        out.setdefault(xi, []).append(vec)

    push(chi, {0: witt_one(params)})
    push(chi.swap(), {1: witt_one(params)})
    for j in range(q - 1):
        vec = {1 + lam: teich[T.pow_code(lam, j)] for lam in range(1, q)}
        push(chi.swap().times_alpha(-j), vec)
    return out


def eigen_check(module, vec, xi):
    """Whether vec is an H-eigenvector with character xi, by acting with
    the two one-parameter torus generators."""
    params = module.params
    T = _tables.tables_for(params)
    teich = _tables.teich_by_code(params)
    g = T.generator
    for h, expo in [((g, 0, 0, 1), xi.m1), ((1, 0, 0, g), xi.m2)]:
        got = ps_act(module, h, vec)
        scal = teich[T.pow_code(g, expo)]
        want = {}
        for lbl, c in vec.items():
            w = witt_mul(c, scal, params)
            if any(w):
                want[lbl] = w
        if got != want:
            return False
    return True


def exchange_constant(psi_s, i_psi, params, max_escalations=6):
    """The scalar c with S_{i_psi} S_0 phi = c S+_{q-1-i_psi} phi.

    Works in the module induced from psi_s.  The target character
    psi_s alpha^(-i_psi) must have multiplicity one there; the degenerate
    case raises ExchangeError.  Proportionality is verified exactly at the
    working precision over all q+1 coordinates (by cross multiplication),
    and the constant is read off a coordinate of largest unit content.
    Returns (c, i_plus, params_used).
    """
    q = params.q
    i_psi = int(i_psi)
    if not 0 < i_psi < q - 1:
        raise ValueError("need 0 < i_psi < q-1")
    module = PSModule(psi_s, params)
    target = psi_s.times_alpha(-i_psi)
    mult = h_component_characters(module).get(target, 0)
    if mult != 1:
        raise ExchangeError(
            "target character has multiplicity %d in the induced module" % mult
        )
    i_plus = q - 1 - i_psi
    work = params
    for _ in range(max_escalations):
        res = _exchange_once(psi_s, i_psi, i_plus, work)
        if res is not None:
            c, used = res
            return c, i_plus, used
        work = raise_precision(work)
    raise PrecisionError("exchange constant unresolved after escalation")


def _exchange_once(psi_s, i_psi, i_plus, params):
    module = PSModule(psi_s, params)
    phi = phi_vector(module)
    u = ps_act(module, s_operator(i_psi, "S", params), ps_act(module, s_operator(0, "S", params), phi))
    w = ps_act(module, s_operator(i_plus, "S_plus", params), phi)
    if not w:
        raise ArithmeticError("comparison vector vanished")
    # every nonzero coordinate of w is a unit times phi translate, so the
    # pivot has unit content and division keeps full precision
    pivot = None
    best = None
    for lbl, c in w.items():
        v, _ = valuation_and_unit(c, params)
        if v is PRECISION_INF:
            continue
        if best is None or v < best:
            best, pivot = v, lbl
        if v == 0:
            break
    if pivot is None:
        return None
    wp = w[pivot]
    up = u.get(pivot)
    if up is None:
        if u:
            raise ExchangeError("vectors are not proportional")
        return None  # u vanished at this precision
    for lbl in set(u) | set(w):
        lhs = witt_mul(u.get(lbl, (0,) * params.f), wp, params)
        rhs = witt_mul(up, w.get(lbl, (0,) * params.f), params)
        if lhs != rhs:
            raise ExchangeError("vectors are not proportional")
    if best == 0:
        c = witt_mul(up, witt_inv(wp, params), params)
    else:
        from wittcycle.padic import witt_divide_exact

        c, params = witt_divide_exact(up, wp, params)
    v, _ = valuation_and_unit(c, params)
    if v is PRECISION_INF:
        return None
    return c, params

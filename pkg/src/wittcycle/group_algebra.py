"""The group algebra of GL2(F_q) with coefficients in W(F_q)/p^N.

A group element is a 4-tuple of field codes (a, b, c, d) standing for the
matrix (a b; c d); a group-algebra element is a dict from group elements to
Witt tuples with zero coefficients dropped, so dict equality is equality in
the algebra.  Products of operator chains are always computed by pairwise
convolution, never by algebraic shortcut: the closed formulas live next to
the numeric route precisely so the two can be compared.

s_operator(i, "S") is the sum of [lambda]^i (lambda 1; 1 0) over units, and
s_operator(i, "S_plus") the sum of [lambda]^i (1 0; lambda 1); index 0 means
the augmented operators (antidiagonal + index q-1, resp. identity + index
q-1).
"""

from dataclasses import dataclass

from wittcycle import _tables
from wittcycle.jacobi import factorial_mod_p
from wittcycle.padic import (
    PRECISION_INF,
    PrecisionError,
    fq_neg,
    raise_precision,
    valuation_and_unit,
    witt_add,
    witt_is_zero,
    witt_mul,
    witt_scale,
    witt_sub,
    witt_zero,
)

GL2_ID = (1, 0, 0, 1)
GL2_W = (0, 1, 1, 0)  # the antidiagonal involution


def gl2_mul(g, h, params):
    T = _tables.tables_for(params)
    q, mul, add = T.q, T.mul, T.add
    a, b, c, d = g
    e, f, g2, h2 = h
    return (
        add[mul[a * q + e] * q + mul[b * q + g2]],
        add[mul[a * q + f] * q + mul[b * q + h2]],
        add[mul[c * q + e] * q + mul[d * q + g2]],
        add[mul[c * q + f] * q + mul[d * q + h2]],
    )


def gl2_inv(g, params):
    T = _tables.tables_for(params)
    q, mul, inv, neg, add = T.q, T.mul, T.inv, T.neg, T.add
    a, b, c, d = g
    det = add[mul[a * q + d] * q + neg[mul[b * q + c]]]
    if det == 0:
        raise ZeroDivisionError("matrix is singular")
    di = inv[det]
    return (
        mul[d * q + di],
        mul[neg[b] * q + di],
        mul[neg[c] * q + di],
        mul[a * q + di],
    )


def lower_unipotent(lam_code):
    return (1, 0, lam_code, 1)


def identity_elem(params):
    return {GL2_ID: (1,) + (0,) * (params.f - 1)}


def ga_add(x, y, params):
    out = dict(x)
    for g, c in y.items():
        prev = out.get(g)
        s = witt_add(prev, c, params) if prev else c
        if any(s):
            out[g] = s
        elif prev:
            del out[g]
    return out


def ga_scale(n, x, params):
    out = {}
    for g, c in x.items():
        s = witt_scale(n, c, params)
        if any(s):
            out[g] = s
    return out


def s_operator(i, variant, params):
    """One of the two generating families, as a group-algebra element."""
    if variant not in ("S", "S_plus"):
        raise ValueError("variant must be 'S' or 'S_plus'")
    q = params.q
    i = int(i)
    if not 0 <= i <= q - 1:
        raise ValueError("index must lie in [0, q-1]")
    if i == 0:
        base = s_operator(q - 1, variant, params)
        extra = {GL2_W: (1,) + (0,) * (params.f - 1)} if variant == "S" else identity_elem(params)
        return ga_add(base, extra, params)
    T = _tables.tables_for(params)
    teich = _tables.teich_by_code(params)
    out = {}
    for lam in range(1, q):
        coeff = teich[T.pow_code(lam, i)]
        key = (lam, 1, 1, 0) if variant == "S" else (1, 0, lam, 1)
        out[key] = coeff
    return out


def ga_multiply(x, y, params):
    """Convolution product, computed term by term."""
    T = _tables.tables_for(params)
    q, mul, add = T.q, T.mul, T.add
    out = {}
    for (a, b, c, d), cg in x.items():
        aq, bq, cq, dq = a * q, b * q, c * q, d * q
        for (e, f, g2, h2), ch in y.items():
            key = (
                add[mul[aq + e] * q + mul[bq + g2]],
                add[mul[aq + f] * q + mul[bq + h2]],
                add[mul[cq + e] * q + mul[dq + g2]],
                add[mul[cq + f] * q + mul[dq + h2]],
            )
            w = witt_mul(cg, ch, params)
            prev = out.get(key)
            out[key] = witt_add(prev, w, params) if prev else w
    return {k: v for k, v in out.items() if any(v)}


def ga_act_matrix(g, x, params):
    """Left translate of a group-algebra element by a single group element."""
    return ga_multiply({g: (1,) + (0,) * (params.f - 1)}, x, params)


@dataclass(frozen=True)
class ContractionResult:
    """Decomposition S+_{i_1} ... S+_{i_k} = alpha * (unipotent cell sum) + beta * Id.

    alpha is the common coefficient on every nontrivial lower unipotent,
    beta the excess at the identity.  params is the context actually used
    (precision may have been raised to resolve the valuations).
    """

    alpha: tuple
    beta: tuple
    v_alpha: int
    lead_alpha: tuple
    v_beta: int
    lead_beta: tuple
    params: object


def _digits(n, p, f):
    return tuple((n // p**i) % p for i in range(f))


def contraction_valuation(indices, params):
    """Digit-counting prediction for v(beta): sum of (p-1-digit) over p-1."""
    p, f = params.p, params.f
    total = 0
    for i in indices:
        total += sum(p - 1 - d for d in _digits(i, p, f))
    if total % (p - 1):
        raise ArithmeticError("digit total not divisible by p-1")
    return total // (p - 1)


def contraction_lead(indices, params):
    """Leading digit of beta as an integer mod p: signed product of digit factorials."""
    p, f = params.p, params.f
    v = contraction_valuation(indices, params)
    k = len(indices)
    out = 1
    for i in indices:
        for d in _digits(i, p, f):
            out = out * factorial_mod_p(d, p) % p
    if (v + (k - 2) * (f - 1)) % 2:
        out = (-out) % p
    return out


def check_contract_pre(indices, params):
    q = params.q
    k = len(indices)
    if k < 2:
        raise ValueError("need at least two indices")
    total = 0
    for t, i in enumerate(indices, start=1):
        if not 0 < i < q - 1:
            raise ValueError("indices must lie strictly between 0 and q-1")
        total += i
        if t < k and total % (q - 1) == 0:
            raise ValueError("a proper partial sum is divisible by q-1")
    if total % (q - 1):
        raise ValueError("the full sum must be divisible by q-1")


def contract_splus(indices, params, max_escalations=6):
    """Multiply out a chain of S+ operators and split off alpha and beta.

    The chain must have every proper partial index sum nonzero mod q-1 and
    total zero mod q-1; the product is then supported on the lower
    unipotent cell plus the identity.  Precision is raised and the product
    recomputed whenever a valuation comes back unresolved.
    """
    indices = tuple(int(i) for i in indices)
    check_contract_pre(indices, params)
    work = params
    for _ in range(max_escalations):
        res = _contract_once(indices, work)
        if res is not None:
            return res
        work = raise_precision(work)
    raise PrecisionError("contraction valuations unresolved after escalation")


def _contract_once(indices, params):
    prod = s_operator(indices[0], "S_plus", params)
    for i in indices[1:]:
        prod = ga_multiply(prod, s_operator(i, "S_plus", params), params)
    q = params.q
    alpha = None
    seen = 0
    for g, coeff in prod.items():
        if g == GL2_ID:
            continue
        if not (g[0] == 1 and g[1] == 0 and g[3] == 1 and g[2] != 0):
            raise ArithmeticError("product support left the unipotent cell")
        seen += 1
        if alpha is None:
            alpha = coeff
        elif coeff != alpha:
            raise ArithmeticError("unipotent coefficients disagree")
    if seen == 0:
        alpha = witt_zero(params)
    elif seen != q - 1:
        # some coefficients were dropped as 0 while others were not
        raise ArithmeticError("unipotent coefficients disagree")
    c_id = prod.get(GL2_ID, witt_zero(params))
    beta = witt_sub(c_id, alpha, params)
    v_b, lead_b = valuation_and_unit(beta, params)
    v_a, lead_a = valuation_and_unit(alpha, params)
    if v_b is PRECISION_INF or v_a is PRECISION_INF:
        return None
    if v_a != v_b - params.f:
        raise ArithmeticError(
            "valuation split violated: v(alpha)=%s v(beta)=%s f=%s"
            % (v_a, v_b, params.f)
        )
    if lead_a != fq_neg(lead_b, params):
        raise ArithmeticError("leading digits are not opposite")
    return ContractionResult(alpha, beta, v_a, lead_a, v_b, lead_b, params)

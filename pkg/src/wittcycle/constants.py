"""Diagram constants per cycle, assembled by two independent routes.

The stepwise route multiplies out exchange constants and a group-algebra
contraction numerically.  The closed route substitutes into the product
formulas (per-step valuations f - |sym diff|, the factorial leading term
of the contraction, the two cycle-product signs, and the normalized
operator-product monomial).  Both end in a unit of F_q; disagreement
anywhere aborts with a full audit dump, which is the point of having two
routes.
"""

from dataclasses import dataclass

from wittcycle.group_algebra import (
    contract_splus,
    contraction_lead,
    contraction_valuation,
    s_operator,
)
from wittcycle.jacobi import jacobi_sum
from wittcycle.padic import (
    fq_from_int,
    fq_inv,
    fq_mul,
    fq_one,
    fq_pow,
    valuation_and_unit,
    witt_mul,
    witt_reduce,
)
from wittcycle.principal_series import (
    PSModule,
    exchange_constant,
    phi_vector,
    ps_act,
)
from wittcycle.weights import (
    IRREDUCIBLE,
    REDUCIBLE,
    delta,
    formal_weight_of,
    fw_apply,
    normalize_kind,
)


@dataclass(frozen=True)
class UpMonomial:
    """The normalized-operator product over a cycle, as sign * p^a * units.

    The 1-unit ambiguity of the individual operators drops out of the
    full-cycle product, which is exactly this monomial.
    """

    sign: int
    p_power: int
    alpha_exp: int
    alpha_prime_exp: int


def up_product(cycle, rho):
    """The product monomial (-p)^{kD/2} times the unit factor.

    D is the symmetric difference size, constant along the orbit, so the
    result does not depend on the anchor.  The unit factor is
    [alpha]^{k|J0^c|/f} [alpha']^{k|J0|/f} in the split reducible case and
    [-alpha]^{k/2} in the irreducible case.
    """
    kind = normalize_kind(rho.kind)
    k, D = cycle.k, cycle.sym_diff_size
    f = rho.params.f
    if (k * D) % 2:
        raise ArithmeticError("odd k*D: not a valid cycle")
    p_power = k * D // 2
    if kind == IRREDUCIBLE:
        if k % 2:
            raise ArithmeticError("irreducible cycle length must be even")
        alpha_exp, alpha_prime_exp = k // 2, 0
        sign = -1 if (p_power + k // 2) % 2 else 1
    else:
        size = len(cycle.subsets[0])
        if (k * (f - size)) % f or (k * size) % f:
            raise ArithmeticError("non-integral unit exponent: not a valid cycle")
        alpha_exp = k * (f - size) // f
        alpha_prime_exp = k * size // f
        sign = -1 if p_power % 2 else 1
    return UpMonomial(sign, p_power, alpha_exp, alpha_prime_exp)


def gauge_factor(J1, J2, f):
    """Per-position gauge symbols for a pair of subsets."""
    out = []
    for j in range(f):
        pos = f - 1 - j
        if pos in J1 and pos not in J2:
            out.append("X_%d" % j)
        elif pos in J2 and pos not in J1:
            out.append("Y_%d" % j)
        else:
            out.append("1")
    return tuple(out)


def beta_by_bruteforce(cycle, params):
    """Contract the cycle's step-exponent chain and audit its valuation.

    The chain is traversed in reversed orientation (entry t is step
    k-1-t); the contraction does not depend on the order since the
    operators commute.  The valuation must come out to half of k times
    the symmetric difference size.
    """
    k = cycle.k
    indices = tuple(cycle.iplus[(k - 1 - t) % k] for t in range(1, k + 1))
    res = contract_splus(indices, params)
    want = k * cycle.sym_diff_size // 2
    if res.v_beta != want:
        raise ArithmeticError(
            "contraction valuation %s differs from k|sym diff|/2 = %d"
            % (res.v_beta, want)
        )
    return res


def step_lead_formula(J, rho):
    """Closed-form leading digit of a step constant, as an integer mod p.

    Reads the source weight and its shift: sign from the symmetric
    difference and the shifted values, then a ratio of linear factors over
    the boundary positions of the symmetric difference.
    """
    params = rho.params
    p, f = params.p, params.f
    dJ = delta(J, rho.kind, f)
    sym = J ^ dJ
    lam = formal_weight_of(J, rho)
    dl = formal_weight_of(dJ, rho)
    v = f - len(sym)
    expo = f - 1 + v + len(sym) + sum(p - 1 - fw_apply(dl, j, rho.r[j]) for j in sym)
    num = 1
    den = 1
    for j in range(f):
        prev_in = (j - 1) % f in sym
        if j in sym and not prev_in:
            num = num * (p - 1 - fw_apply(lam, j, rho.r[j])) % p
        elif j not in sym and prev_in:
            den = den * (p - fw_apply(lam, j, rho.r[j])) % p
    out = num * pow(den, -1, p) % p
    if expo % 2:
        out = (-out) % p
    return out


@dataclass(frozen=True)
class StepConstant:
    """One step's constant: its Jacobi-sum form and measured parts."""

    index: int
    i_psi: int
    jacobi_b: int
    valuation: int
    lead: tuple
    degenerate: bool


def _scaled(vec, w, params):
    out = {}
    for lbl, c in vec.items():
        s = witt_mul(c, w, params)
        if any(s):
            out[lbl] = s
    return out


def degenerate_step_check(chi, i_psi, c, params):
    """Mod-p surrogate for the exchange identity at a degenerate step.

    When the step target is the swapped character, the defining relation
    collapses, but the composition S_{i_psi} S_0 phi still equals
    (-1)^{e} c phi-part mod p with e the determinant exponent of the
    source character; comparing against c S_0 phi mod p pins the constant.
    """
    work = params.with_precision(1)
    module = PSModule(chi, work)
    phi = phi_vector(module)
    s0phi = ps_act(module, s_operator(0, "S", work), phi)
    u = ps_act(module, s_operator(i_psi, "S", work), s0phi)
    c1 = witt_reduce(c, params)
    if chi.m2 % 2:
        c1 = tuple((-a) % params.p for a in c1)
    want = _scaled(s0phi, c1, work)
    if u != want:
        raise ArithmeticError("degenerate-step surrogate identity failed mod p")


def ctilde_product(cycle, rho, params):
    """Per-step constants along the cycle and the product of their leads.

    Nondegenerate steps use the exchange constant and cross-check it
    against the Jacobi sum J(i_psi, q-1-lambda(r)); degenerate steps take
    the Jacobi route directly plus a mod-p operator check.  Every step's
    valuation must equal f - |sym diff| and its leading digit must match
    the closed formula.
    """
    q, f = params.q, params.f
    D = cycle.sym_diff_size
    per_step = []
    total = fq_one(params)
    for t in range(cycle.k):
        chi = cycle.chars[t]
        i_psi = q - 1 - cycle.iplus[t]
        lam_r = chi.a_exponent()
        b = q - 1 - lam_r
        if cycle.degenerate[t]:
            c = jacobi_sum(i_psi, b, "standard", params)
            used = params
            degenerate_step_check(chi, i_psi, c, params)
        else:
            c, _, used = exchange_constant(chi, i_psi, params)
            ref = jacobi_sum(i_psi, b, "standard", used)
            if c != ref:
                raise ArithmeticError(
                    "step %d: exchange constant differs from Jacobi sum" % t
                )
        v, lead = valuation_and_unit(c, used)
        if v != f - D:
            raise ArithmeticError(
                "step %d: valuation %s, expected f - |sym diff| = %d"
                % (t, v, f - D)
            )
        want_lead = fq_from_int(step_lead_formula(cycle.subsets[t], rho), params)
        if lead != want_lead:
            raise ArithmeticError(
                "step %d: leading digit %s differs from formula %s"
                % (t, lead, want_lead)
            )
        per_step.append(StepConstant(t, i_psi, b, v, lead, cycle.degenerate[t]))
        total = fq_mul(total, lead, params)
    return total, per_step


def ctilde_closed(cycle):
    """The cycle-product sign: 1 irreducible, (-1)^{k(f-1)+kf} reducible."""
    if normalize_kind(cycle.kind) == IRREDUCIBLE:
        return 1
    return -1 if cycle.k % 2 else 1


@dataclass(frozen=True)
class ConstantReport:
    cycle: object
    g_stepwise: tuple
    g_closed: tuple
    pieces: dict
    valuation_ledger: tuple


def _fq_sign(s, params):
    return fq_one(params) if s == 1 else fq_from_int(-1, params)


def _lead_to_int(lead, params):
    if any(lead[1:]):
        raise ArithmeticError("leading digit is not a prime-field scalar")
    return lead[0] % params.p


def breuil_constant(cycle, rho, mode, params, cache=None):
    """The cycle's diagram constant, by formulas, or by both routes.

    mode 'closed' assembles g purely from the closed formulas and leaves
    g_stepwise unset.  mode 'stepwise' additionally multiplies the
    constant out numerically and insists the two agree.  cache, if given,
    is a dict reused across calls to share the alpha-independent numeric
    pieces of a cycle (the contraction and the step constants).
    """
    if mode not in ("stepwise", "closed"):
        raise ValueError("mode must be stepwise or closed")
    kind = normalize_kind(rho.kind)
    p, f = params.p, params.f
    k, D = cycle.k, cycle.sym_diff_size
    up = up_product(cycle, rho)
    sign_kd = 1 if up.p_power % 2 == 0 else -1
    alpha_factor = fq_mul(
        fq_pow(rho.alpha, up.alpha_exp, params),
        fq_pow(rho.alpha_prime, up.alpha_prime_exp, params),
        params,
    )
    if kind == IRREDUCIBLE and (k // 2) % 2:
        alpha_factor = fq_mul(alpha_factor, fq_from_int(-1, params), params)

    indices = tuple(cycle.iplus[(k - 1 - t) % k] for t in range(1, k + 1))
    v_formula = contraction_valuation(indices, params)
    if v_formula != k * D // 2:
        raise ArithmeticError("digit-count valuation differs from k|sym diff|/2")
    lead_beta_closed = contraction_lead(indices, params)
    ct_closed = ctilde_closed(cycle)
    g_closed = fq_mul(
        fq_mul(_fq_sign(ct_closed, params), fq_from_int(lead_beta_closed, params), params),
        fq_mul(_fq_sign(sign_kd, params), alpha_factor, params),
        params,
    )

    epsilon = lead_beta_closed if sign_kd == 1 else (-lead_beta_closed) % p
    if kind == REDUCIBLE and k % 2:
        epsilon = (-epsilon) % p
    if epsilon not in (1, p - 1):
        raise ArithmeticError("epsilon sign is not +-1")
    epsilon_sign = 1 if epsilon == 1 else -1

    ledger = [
        ("beta_valuation", k * D // 2 if mode == "closed" else None),
        ("up_p_power", -(k * D) // 2),
    ]

    pieces = {
        "ctilde_product_lead": fq_from_int(ct_closed, params),
        "beta_valuation": v_formula,
        "beta_lead": fq_from_int(lead_beta_closed, params),
        "up_sign": up.sign,
        "alpha_factor": alpha_factor,
        "epsilon_sign": epsilon_sign,
    }

    if mode == "closed":
        ledger[0] = ("beta_valuation", v_formula)
        for t in range(k):
            ledger.append(("step_%d_valuation" % t, f - D))
            ledger.append(("step_%d_saturation" % t, -(f - D)))
        if sum(v for _, v in ledger):
            raise ArithmeticError("valuation ledger does not cancel")
        return ConstantReport(cycle, None, g_closed, pieces, tuple(ledger))

    key = (cycle.subsets, cycle.iplus)
    if cache is not None and key in cache:
        beta, ct_lead, per_step = cache[key]
    else:
        beta = beta_by_bruteforce(cycle, params)
        ct_lead, per_step = ctilde_product(cycle, rho, params)
        if cache is not None:
            cache[key] = (beta, ct_lead, per_step)

    g_stepwise = fq_mul(
        fq_mul(ct_lead, beta.lead_beta, params),
        fq_mul(_fq_sign(sign_kd, params), alpha_factor, params),
        params,
    )

    lead_beta_num = _lead_to_int(beta.lead_beta, params)
    ledger = [("beta_valuation", beta.v_beta), ("up_p_power", -(k * D) // 2)]
    for st in per_step:
        ledger.append(("step_%d_valuation" % st.index, st.valuation))
        ledger.append(("step_%d_saturation" % st.index, -(f - D)))
    pieces = dict(
        pieces,
        ctilde_product_lead=ct_lead,
        beta_valuation=beta.v_beta,
        beta_lead=beta.lead_beta,
    )

    problems = []
    if sum(v for _, v in ledger):
        problems.append("valuation ledger does not cancel")
    if lead_beta_num != lead_beta_closed:
        problems.append(
            "beta lead: numeric %d vs formula %d" % (lead_beta_num, lead_beta_closed)
        )
    if ct_lead != fq_from_int(ct_closed, params):
        problems.append("ctilde product: numeric %s vs sign %d" % (ct_lead, ct_closed))
    if g_stepwise != g_closed:
        problems.append("g mismatch: stepwise %s vs closed %s" % (g_stepwise, g_closed))
    if problems:
        lines = ["route disagreement for cycle %s:" % (cycle.subsets,)]
        lines += ["  " + msg for msg in problems]
        lines.append("  pieces: %s" % pieces)
        lines.append("  ledger: %s" % ledger)
        lines += [
            "  step %d: i_psi=%d b=%d v=%d lead=%s degenerate=%s"
            % (st.index, st.i_psi, st.jacobi_b, st.valuation, st.lead, st.degenerate)
            for st in per_step
        ]
        raise ArithmeticError("\n".join(lines))

    return ConstantReport(cycle, g_stepwise, g_closed, pieces, tuple(ledger))


def theorem_form(report, rho, params):
    """The unit the assembled g must equal when det at p is normalized.

    Irreducible with alpha = 1: epsilon * (-1)^{k/2}; split reducible with
    alpha' the inverse of alpha: epsilon * alpha^{(|J^c|-|J|)k/f}.
    """
    kind = normalize_kind(rho.kind)
    cycle = report.cycle
    k, f = cycle.k, params.f
    eps = _fq_sign(report.pieces["epsilon_sign"], params)
    if kind == IRREDUCIBLE:
        sign = _fq_sign(1 if (k // 2) % 2 == 0 else -1, params)
        return fq_mul(eps, sign, params)
    size = len(cycle.subsets[0])
    expo = (f - 2 * size) * k // f
    if expo >= 0:
        unit = fq_pow(rho.alpha, expo, params)
    else:
        unit = fq_pow(fq_inv(rho.alpha, params), -expo, params)
    return fq_mul(eps, unit, params)

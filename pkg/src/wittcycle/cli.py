"""Batch front end over the library's verification surfaces.

Each subcommand configures a field (and where needed a residual datum),
runs one surface or the aggregate selftest, and emits a report.  Text
output is for eyeballing; --json emits the stable schema

    {"command", "params": {p, f, N}, "rho", "items", "summary"}

serialized canonically (sorted keys, compact separators), so a report
file parses and re-serializes byte for byte.  Exit status: 0 all checks
pass, 1 some check failed, 2 the request itself was invalid.
"""

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from wittcycle._tables import tables_for
from wittcycle.constants import breuil_constant, theorem_form
from wittcycle.group_algebra import (
    GL2_W,
    check_contract_pre,
    contract_splus,
    contraction_lead,
    contraction_valuation,
    ga_add,
    ga_multiply,
    ga_scale,
    identity_elem,
    s_operator,
)
from wittcycle.jacobi import jacobi_sum, stickelberger_data
from wittcycle.padic import (
    PRECISION_INF,
    Params,
    fq_from_int,
    fq_mul,
    fq_neg,
    fq_one,
    teichmuller,
    valuation_and_unit,
    witt_mul,
    witt_one,
    witt_pow,
    witt_reduce,
)
from wittcycle.principal_series import (
    PSModule,
    eigen_check,
    h_component_characters,
    h_components,
    ps_act,
)
from wittcycle.weights import (
    DLType,
    IRREDUCIBLE,
    REDUCIBLE,
    char_of_subset,
    complement,
    cycle_from,
    cycles_of,
    delta,
    digits_value,
    formal_weight_of,
    iplus_of_step,
    jh_intersect,
    make_rho,
    normalize_kind,
    serre_weight_of,
    sigma_J_table,
    subsets_of,
    survey_orbits,
)


@dataclass
class RunConfig:
    """One CLI invocation: field, optional residual datum, command knobs."""

    command: str
    p: int
    f: int
    N: int = None
    kind: str = None
    r: tuple = None
    alpha: object = 1
    alpha_prime: object = None
    json_out: bool = False
    out: str = None
    seed: int = 0
    jobs: int = 1
    extra: dict = field(default_factory=dict)


@dataclass
class Report:
    command: str
    params: dict
    rho: dict
    items: list
    summary: dict
    elapsed: float
    precision: int

    def to_json_obj(self):
        # elapsed stays out of the schema so reports are reproducible
        return {
            "command": self.command,
            "params": self.params,
            "rho": self.rho,
            "items": self.items,
            "summary": self.summary,
        }


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _ser(x):
    if isinstance(x, (frozenset, set)):
        return sorted(x)
    if isinstance(x, (tuple, list)):
        return [_ser(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _ser(v) for k, v in x.items()}
    return x


def _check(name, expected, got):
    e, g = _ser(expected), _ser(got)
    return {"name": name, "pass": e == g, "expected": e, "got": g}


def _tally_check(name, failures, detail=None):
    got = failures if detail is None else {"failures": failures, "first": detail}
    return {"name": name, "pass": failures == 0, "expected": 0, "got": _ser(got)}


def _item(inputs, outputs, provenance, checks):
    return {
        "inputs": _ser(inputs),
        "outputs": _ser(outputs),
        "provenance": provenance,
        "checks": checks,
    }


def _wint(n, params):
    return (n % params.pN,) + (0,) * (params.f - 1)


def _build_rho(cfg, params):
    if cfg.kind is None:
        return None
    return make_rho(cfg.kind, cfg.r, cfg.alpha, params, alpha_prime=cfg.alpha_prime)


def _rho_json(rho):
    if rho is None:
        return None
    return {
        "kind": rho.kind,
        "r": list(rho.r),
        "alpha": list(rho.alpha),
        "alpha_prime": list(rho.alpha_prime) if rho.alpha_prime is not None else None,
    }


# ---------------------------------------------------------------- field-info


def _cmd_field_info(cfg, params):
    t = tables_for(params)
    gen = t.elems[t.generator]
    lift = teichmuller(gen, params)
    item = _item(
        {"p": params.p, "f": params.f},
        {
            "q": params.q,
            "N": params.N,
            "modulus": list(params.modulus),
            "generator": list(gen),
            "teichmuller_generator": list(lift),
        },
        "multiplicative lift of a field generator",
        [
            _check("teichmuller fixed point", lift, witt_pow(lift, params.q, params)),
            _check("generator order q-1", witt_one(params), witt_pow(lift, params.q - 1, params)),
            _check("reduction returns generator", gen, witt_reduce(lift, params)),
        ],
    )
    return None, [item]


# -------------------------------------------------------------------- jacobi


def _jacobi_checks(a, b, convention, value, params):
    q = params.q
    checks = [
        _check(
            "symmetric in (a, b)",
            value,
            jacobi_sum(b, a, convention, params),
        )
    ]
    if 0 < a < q - 1 and 0 < b < q - 1 and a + b != q - 1 and (a + b) % (q - 1):
        data = stickelberger_data(a, b, params)
        ref = jacobi_sum(a, b, "J0", params)
        v, lead = valuation_and_unit(ref, params)
        checks.append(_check("valuation equals digit-carry count", data.u, v))
        checks.append(
            _check("leading digit equals factorial unit", fq_from_int(data.unit, params), lead)
        )
    if 0 < a < q - 1 and a + b == q - 1 and convention == "standard":
        want = _wint(1 if (a + 1) % 2 == 0 else -1, params)
        checks.append(_check("complementary pair value", want, value))
    return checks


def _cmd_jacobi(cfg, params):
    a, b = cfg.extra["a"], cfg.extra["b"]
    convention = cfg.extra["convention"]
    value = jacobi_sum(a, b, convention, params)
    v, lead = valuation_and_unit(value, params)
    item = _item(
        {"a": a, "b": b, "convention": convention},
        {
            "value": list(value),
            "valuation": v if v != PRECISION_INF else None,
            "lead": list(lead) if lead is not None else None,
        },
        "teichmuller character sum",
        _jacobi_checks(a, b, convention, value, params),
    )
    return None, [item]


# --------------------------------------------------------- stickelberger-scan


def _scan_pairs(params):
    q = params.q
    out = []
    for a in range(1, q - 1):
        for b in range(1, q - 1):
            if a + b != q - 1 and (a + b) % (q - 1):
                out.append((a, b))
    return out


def _scan_chunk(args):
    params, pairs = args
    items = []
    for a, b in pairs:
        data = stickelberger_data(a, b, params)
        v, lead = valuation_and_unit(jacobi_sum(a, b, "J0", params), params)
        items.append(
            _item(
                {"a": a, "b": b},
                {"valuation": v, "lead": list(lead)},
                "digit-carry count and factorial unit",
                [
                    _check("valuation", data.u, v),
                    _check("lead", fq_from_int(data.unit, params), lead),
                ],
            )
        )
    return items


def _pmap(fn, tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def _cmd_stickelberger_scan(cfg, params):
    pairs = _scan_pairs(params)
    limit = cfg.extra.get("limit")
    if limit is not None and limit < len(pairs):
        rng = random.Random(cfg.seed)
        pairs = sorted(rng.sample(pairs, limit))
    jobs = max(1, cfg.jobs)
    chunk = max(1, (len(pairs) + jobs - 1) // jobs)
    tasks = [(params, pairs[i : i + chunk]) for i in range(0, len(pairs), chunk)]
    items = [it for part in _pmap(_scan_chunk, tasks, jobs) for it in part]
    return None, items


# ------------------------------------------------------------------ contract


def _cmd_contract(cfg, params):
    indices = cfg.extra["indices"]
    check_contract_pre(indices, params)
    res = contract_splus(indices, params)
    item = _item(
        {"indices": list(indices)},
        {
            "v_alpha": res.v_alpha,
            "v_beta": res.v_beta,
            "lead_alpha": list(res.lead_alpha),
            "lead_beta": list(res.lead_beta),
            "N_used": res.params.N,
        },
        "operator product decomposed against the augmented operator",
        [
            _check("v_alpha = v_beta - f", res.v_beta - params.f, res.v_alpha),
            _check("lead_alpha = -lead_beta", fq_neg(res.lead_beta, res.params), res.lead_alpha),
            _check("v_beta digit formula", contraction_valuation(indices, params), res.v_beta),
            _check(
                "lead_beta factorial formula",
                fq_from_int(contraction_lead(indices, params), res.params),
                res.lead_beta,
            ),
        ],
    )
    return None, [item]


# ------------------------------------------------------------------- weights


def _cmd_weights(cfg, params):
    rho = _build_rho(cfg, params)
    items = []
    chars = []
    for J in subsets_of(params.f):
        fw = formal_weight_of(J, rho)
        sw = serre_weight_of(fw, rho)
        chi = char_of_subset(J, rho)
        chars.append((chi.m1, chi.m2))
        checks = [
            _check("central exponent integral", True, isinstance(sw.e, int)),
        ]
        try:
            sigma_J_table(J, rho)
            checks.append(_check("component table agrees", True, True))
        except ArithmeticError as e:
            checks.append(_check("component table agrees", True, str(e)))
        items.append(
            _item(
                {"J": J},
                {
                    "formal": [list(t) for t in fw],
                    "s": list(sw.s),
                    "e": sw.e,
                    "char": [chi.m1, chi.m2],
                },
                "affine weight table",
                checks,
            )
        )
    items.append(
        _item(
            {"family": "all 2^f subsets"},
            {"count": len(chars)},
            "weight characters",
            [_check("characters pairwise distinct", len(chars), len(set(chars)))],
        )
    )
    return _rho_json(rho), items


# -------------------------------------------------------------------- cycles


def _cycle_outputs(cyc):
    return {
        "k": cyc.k,
        "subsets": [sorted(J) for J in cyc.subsets],
        "chars": [[x.m1, x.m2] for x in cyc.chars],
        "iplus": list(cyc.iplus),
        "degenerate": list(cyc.degenerate),
        "sym_diff_size": cyc.sym_diff_size,
    }


def _cmd_cycles(cfg, params):
    rho = _build_rho(cfg, params)
    cycles, excluded = survey_orbits(rho)
    items = []
    for cyc in cycles:
        digit_fail = 0
        for t in range(cyc.k):
            digits = iplus_of_step(cyc.subsets[t], rho)
            if digits_value(digits, params.p) != cyc.iplus[t]:
                digit_fail += 1
        items.append(
            _item(
                {"start": cyc.subsets[0]},
                _cycle_outputs(cyc),
                "delta orbit walk",
                [
                    _check("step exponents close up", 0, sum(cyc.iplus) % (params.q - 1)),
                    _tally_check("digit formula matches character shift", digit_fail),
                ],
            )
        )
    for exc in excluded:
        items.append(
            _item(
                {"start": sorted(exc["orbit"][0])},
                {"orbit": [sorted(J) for J in exc["orbit"]], "excluded": exc["reason"]},
                "delta orbit walk",
                [],
            )
        )
    return _rho_json(rho), items


# ------------------------------------------------------------------ constant


def _theorem_applicable(rho, params):
    kind = normalize_kind(rho.kind)
    if kind == IRREDUCIBLE:
        return rho.alpha == fq_one(params)
    return fq_mul(rho.alpha, rho.alpha_prime, params) == fq_one(params)


def _constant_item(cyc, rho, mode, params):
    cache = {}
    try:
        rep = breuil_constant(cyc, rho, mode, params, cache=cache)
    except ArithmeticError as e:
        return _item(
            {"start": cyc.subsets[0], "mode": mode},
            _cycle_outputs(cyc),
            "two-route assembly",
            [_check("routes agree", "agreement", str(e))],
        )
    outputs = dict(_cycle_outputs(cyc))
    outputs["g_closed"] = list(rep.g_closed)
    outputs["g_stepwise"] = list(rep.g_stepwise) if rep.g_stepwise else None
    outputs["ledger"] = [[name, v] for name, v in rep.valuation_ledger]
    outputs["pieces"] = {
        k: (list(v) if isinstance(v, tuple) else v) for k, v in rep.pieces.items()
    }
    if cache:
        _, _, steps = next(iter(cache.values()))
        outputs["steps"] = [
            {
                "index": st.index,
                "i_psi": st.i_psi,
                "jacobi_b": st.jacobi_b,
                "valuation": st.valuation,
                "lead": list(st.lead),
                "degenerate": st.degenerate,
            }
            for st in steps
        ]
    checks = [_check("valuation ledger cancels", 0, sum(v for _, v in rep.valuation_ledger))]
    if mode == "stepwise":
        checks.append(_check("routes agree", rep.g_closed, rep.g_stepwise))
    if _theorem_applicable(rho, params):
        checks.append(_check("theorem form", theorem_form(rep, rho, params), rep.g_closed))
    return _item(
        {"start": cyc.subsets[0], "mode": mode},
        outputs,
        "two-route assembly",
        checks,
    )


def _cmd_constant(cfg, params):
    rho = _build_rho(cfg, params)
    mode = cfg.extra["mode"]
    start = cfg.extra["cycle_start"]
    if start is None:
        cycles = cycles_of(rho)
    else:
        cycles = [cycle_from(rho, start)]
    items = [_constant_item(cyc, rho, mode, params) for cyc in cycles]
    return _rho_json(rho), items


# ---------------------------------------------------------------- jh-intersect


def _cmd_jh_intersect(cfg, params):
    rho = _build_rho(cfg, params)
    V = DLType(cfg.extra["w"], cfg.extra["w_prime"])
    subsets = jh_intersect(V, rho)
    constituents = []
    for J in subsets:
        sw = serre_weight_of(formal_weight_of(J, rho), rho)
        constituents.append({"J": sorted(J), "s": list(sw.s), "e": sw.e})
    n = len(subsets)
    item = _item(
        {"w": list(V.w), "w_prime": list(V.w_prime)},
        {"count": n, "constituents": constituents},
        "interval in the subset lattice",
        [_check("interval size is 0 or a power of two", True, n == 0 or (n & (n - 1)) == 0)],
    )
    return _rho_json(rho), [item]


# ------------------------------------------------------------------ selftest


def _relation_holds(i, j, variant, params):
    q = params.q
    lhs = ga_multiply(
        s_operator(i, variant, params), s_operator(j, "S_plus", params), params
    )
    m = (i + j) % (q - 1)
    if m:
        J = jacobi_sum(i, j, "standard", params)
        rhs = {}
        for g, c in s_operator(m, variant, params).items():
            w = witt_mul(J, c, params)
            if any(w):
                rhs[g] = w
    else:
        s0 = s_operator(0, variant, params)
        sign0 = 1 if (i + 1) % 2 == 0 else -1
        signq = q if i % 2 == 0 else -q
        tail = identity_elem(params) if variant == "S_plus" else {GL2_W: _wint(1, params)}
        rhs = ga_add(ga_scale(sign0, s0, params), ga_scale(signq, tail, params), params)
    return lhs == rhs


def _random_admissible(rng, k, params):
    q = params.q
    while True:
        idx = [rng.randrange(1, q - 1) for _ in range(k - 1)]
        last = (-sum(idx)) % (q - 1)
        if not 0 < last < q - 1:
            continue
        idx.append(last)
        try:
            check_contract_pre(tuple(idx), params)
        except ValueError:
            continue
        return tuple(idx)


def _selftest_jacobi(params):
    q = params.q
    fail = 0
    first = None
    for a in range(1, q - 1):
        want = _wint(1 if (a + 1) % 2 == 0 else -1, params)
        if jacobi_sum(a, q - 1 - a, "standard", params) != want:
            fail += 1
            first = first or {"a": a}
    return _item(
        {"pairs": q - 2},
        {},
        "complementary pairs",
        [_tally_check("J(a, q-1-a) = (-1)^(a+1)", fail, first)],
    )


def _selftest_stickelberger(cfg, params, full):
    pairs = _scan_pairs(params)
    cap = None if params.q <= 49 else (2000 if full else 200)
    if cap is not None and cap < len(pairs):
        rng = random.Random(cfg.seed + 1)
        pairs = sorted(rng.sample(pairs, cap))
    jobs = max(1, cfg.jobs)
    chunk = max(1, (len(pairs) + jobs - 1) // jobs)
    tasks = [(params, pairs[i : i + chunk]) for i in range(0, len(pairs), chunk)]
    fail = 0
    first = None
    for part in _pmap(_scan_chunk, tasks, jobs):
        for it in part:
            if not all(c["pass"] for c in it["checks"]):
                fail += 1
                first = first or it["inputs"]
    return _item(
        {"pairs": len(pairs), "exhaustive": cap is None or cap >= len(pairs)},
        {},
        "digit-carry count and factorial unit",
        [_tally_check("valuation and lead", fail, first)],
    )


def _selftest_relations(cfg, params, full):
    q = params.q
    rng = random.Random(cfg.seed + 2)
    if q == 7:
        pairs = [(i, j) for i in range(1, q - 1) for j in range(1, q - 1)]
    else:
        n = 300 if full else 50
        pairs = [(rng.randrange(1, q - 1), rng.randrange(1, q - 1)) for _ in range(n)]
    fail = 0
    first = None
    for i, j in pairs:
        if not (_relation_holds(i, j, "S_plus", params) and _relation_holds(i, j, "S", params)):
            fail += 1
            first = first or {"i": i, "j": j}
    comm_fail = 0
    for _ in range(20):
        i, j = rng.randrange(1, q - 1), rng.randrange(1, q - 1)
        x, y = s_operator(i, "S_plus", params), s_operator(j, "S_plus", params)
        if ga_multiply(x, y, params) != ga_multiply(y, x, params):
            comm_fail += 1
    return _item(
        {"pairs": len(pairs)},
        {},
        "operator product relations",
        [
            _tally_check("products reduce to jacobi multiples", fail, first),
            _tally_check("s-plus family commutes", comm_fail),
        ],
    )


def _selftest_contraction(cfg, params, full):
    rng = random.Random(cfg.seed + 3)
    n = 10 if full else 5
    fail = 0
    first = None
    tuples = [_random_admissible(rng, k, params) for k in (2, 3) for _ in range(n)]
    for t in tuples:
        res = contract_splus(t, params)
        ok = (
            res.v_alpha == res.v_beta - params.f
            and res.lead_alpha == fq_neg(res.lead_beta, res.params)
            and res.v_beta == contraction_valuation(t, params)
            and res.lead_beta == fq_from_int(contraction_lead(t, params), res.params)
        )
        if not ok:
            fail += 1
            first = first or {"indices": list(t)}
    return _item(
        {"tuples": len(tuples)},
        {},
        "operator contraction",
        [_tally_check("decomposition identities", fail, first)],
    )


def _selftest_combinatorics(params):
    f = params.f
    fail = 0
    for J in subsets_of(f):
        dr = delta(J, REDUCIBLE, f)
        di = delta(J, IRREDUCIBLE, f)
        if delta(complement(J, f), IRREDUCIBLE, f) != complement(di, f):
            fail += 1
        if len(J ^ di) % 2 == 0 or len(J ^ dr) % 2 == 1:
            fail += 1
        cur = J
        for _ in range(f):
            cur = delta(cur, IRREDUCIBLE, f)
        if cur != complement(J, f):
            fail += 1
    return _item(
        {"subsets": 2 ** f},
        {},
        "subset shift maps",
        [_tally_check("shift identities", fail)],
    )


def _selftest_ps(params):
    if params.q > 121:
        return None
    chi = char_of_subset(frozenset(), make_rho("irr", (2,) * params.f, 1, params))
    module = PSModule(chi, params)
    mults = sorted(h_component_characters(module).values())
    ok_mult = mults == [1] * (params.q - 3) + [2, 2]
    comps = h_components(module)
    eigen_fail = 0
    s0p = s_operator(0, "S_plus", params)
    kill_fail = 0
    for xi, vecs in list(comps.items())[:6]:
        for vec in vecs:
            if not eigen_check(module, vec, xi):
                eigen_fail += 1
        if len(vecs) == 1 and ps_act(module, s0p, vecs[0]) != {}:
            kill_fail += 1
    return _item(
        {"module": [chi.m1, chi.m2]},
        {"dimension": params.q + 1},
        "torus eigenvectors of the induced lattice",
        [
            _check("multiplicity profile", True, ok_mult),
            _tally_check("eigen checks", eigen_fail),
            _tally_check("augmented operator kills simple components", kill_fail),
        ],
    )


def _selftest_constants(cfg, params, full):
    items = []
    stepwise_ok = params.q <= 49 or full
    mode = "stepwise" if stepwise_ok else "closed"
    for kind in (IRREDUCIBLE, REDUCIBLE):
        kw = {"alpha_prime": 1} if kind == REDUCIBLE else {}
        rho = make_rho(kind, (2,) * params.f, 1, params, **kw)
        for cyc in cycles_of(rho):
            items.append(_constant_item(cyc, rho, mode, params))
    return items


def _cmd_selftest(cfg, params):
    full = cfg.extra["level"] == "full"
    _, items = _cmd_field_info(cfg, params)
    items.append(_selftest_jacobi(params))
    items.append(_selftest_stickelberger(cfg, params, full))
    items.append(_selftest_relations(cfg, params, full))
    items.append(_selftest_contraction(cfg, params, full))
    items.append(_selftest_combinatorics(params))
    ps = _selftest_ps(params)
    if ps is not None:
        items.append(ps)
    items.extend(_selftest_constants(cfg, params, full))
    return None, items


_HANDLERS = {
    "field-info": _cmd_field_info,
    "jacobi": _cmd_jacobi,
    "stickelberger-scan": _cmd_stickelberger_scan,
    "contract": _cmd_contract,
    "weights": _cmd_weights,
    "cycles": _cmd_cycles,
    "constant": _cmd_constant,
    "jh-intersect": _cmd_jh_intersect,
    "selftest": _cmd_selftest,
}


def run(config):
    t0 = time.monotonic()
    params = Params.make(config.p, config.f, N=config.N)
    try:
        rho_json, items = _HANDLERS[config.command](config, params)
    except ArithmeticError as e:
        rho_json = None
        items = [
            _item({}, {}, "aborted", [_check("internal invariant", "no error", str(e))])
        ]
    npass = sum(1 for it in items for c in it["checks"] if c["pass"])
    nfail = sum(1 for it in items for c in it["checks"] if not c["pass"])
    return Report(
        command=config.command,
        params={"p": params.p, "f": params.f, "N": params.N},
        rho=rho_json,
        items=items,
        summary={"pass": npass, "fail": nfail},
        elapsed=time.monotonic() - t0,
        precision=params.N,
    )


def _render_text(report):
    lines = ["command: %s" % report.command]
    lines.append(
        "params: p=%(p)d f=%(f)d N=%(N)d" % report.params
    )
    if report.rho is not None:
        lines.append("rho: %s" % json.dumps(report.rho, sort_keys=True))
    for it in report.items:
        lines.append("- inputs: %s" % json.dumps(it["inputs"], sort_keys=True))
        if it["outputs"]:
            lines.append("  outputs: %s" % json.dumps(it["outputs"], sort_keys=True))
        for c in it["checks"]:
            status = "pass" if c["pass"] else "FAIL"
            line = "  [%s] %s" % (status, c["name"])
            if not c["pass"]:
                line += " (expected %s, got %s)" % (
                    json.dumps(c["expected"], sort_keys=True),
                    json.dumps(c["got"], sort_keys=True),
                )
            lines.append(line)
    lines.append(
        "summary: %d passed, %d failed (%.2fs, N=%d)"
        % (report.summary["pass"], report.summary["fail"], report.elapsed, report.precision)
    )
    return "\n".join(lines) + "\n"


def _parse_int_list(text):
    return tuple(int(x) for x in text.split(",") if x.strip() != "")


def _parse_alpha(text):
    if text is None:
        return None
    vals = _parse_int_list(text)
    return vals[0] if len(vals) == 1 else vals


def _parse_subset(text):
    if text in ("empty", ""):
        return frozenset()
    return frozenset(int(x) for x in text.split(","))


def _parse_word(text, name):
    word = tuple(x.strip() for x in text.split(","))
    if any(x not in ("id", "s") for x in word):
        raise ValueError("%s entries must be 'id' or 's'" % name)
    return word


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wittcycle",
        description="exact-arithmetic checks for weight cycling over GL2 of a finite field",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=int, required=True, help="prime, at least 7")
        sp.add_argument("--f", type=int, required=True, help="residue degree")
        sp.add_argument("--N", type=int, default=None, help="precision override")
        sp.add_argument("--json", action="store_true", help="emit the JSON schema")
        sp.add_argument("--out", default=None, help="write the report to FILE")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled suites")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    def rho_args(sp):
        sp.add_argument(
            "--kind",
            required=True,
            choices=["irr", "red", "irreducible", "reducible", "reducible-split"],
        )
        sp.add_argument("--r", required=True, help="comma list (single value repeats)")
        sp.add_argument("--alpha", default="1", help="unit, int or comma digit list")
        sp.add_argument("--alpha-prime", default=None, dest="alpha_prime")

    sp = sub.add_parser("field-info", help="field, modulus, generator lift")
    common(sp)

    sp = sub.add_parser("jacobi", help="one Jacobi sum with its digit checks")
    common(sp)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--convention", choices=["standard", "J0"], default="standard")

    sp = sub.add_parser("stickelberger-scan", help="valuations and leads over all pairs")
    common(sp)
    sp.add_argument("--limit", type=int, default=None, help="sample this many pairs")

    sp = sub.add_parser("contract", help="decompose an operator chain")
    common(sp)
    sp.add_argument("--indices", required=True, help="comma list of exponents")

    sp = sub.add_parser("weights", help="weights, characters, component tables")
    common(sp)
    rho_args(sp)

    sp = sub.add_parser("cycles", help="delta orbits with step exponents")
    common(sp)
    rho_args(sp)

    sp = sub.add_parser("constant", help="diagram constant by both routes")
    common(sp)
    rho_args(sp)
    sp.add_argument(
        "--cycle-start",
        default=None,
        dest="cycle_start",
        help="'empty' or comma list; default runs every cycle",
    )
    sp.add_argument("--mode", choices=["stepwise", "closed"], default="stepwise")

    sp = sub.add_parser("jh-intersect", help="constituents cut out by a type")
    common(sp)
    rho_args(sp)
    sp.add_argument("--w", required=True, help="comma list of id/s")
    sp.add_argument("--w-prime", required=True, dest="w_prime")

    sp = sub.add_parser("selftest", help="aggregate verification battery")
    common(sp)
    sp.add_argument("--level", choices=["quick", "full"], default="quick")

    return parser


def config_from_args(ns):
    extra = {}
    if ns.command == "jacobi":
        extra = {"a": ns.a, "b": ns.b, "convention": ns.convention}
    elif ns.command == "stickelberger-scan":
        extra = {"limit": ns.limit}
    elif ns.command == "contract":
        extra = {"indices": _parse_int_list(ns.indices)}
    elif ns.command == "constant":
        start = None if ns.cycle_start in (None, "all") else _parse_subset(ns.cycle_start)
        extra = {"cycle_start": start, "mode": ns.mode}
    elif ns.command == "jh-intersect":
        extra = {"w": _parse_word(ns.w, "--w"), "w_prime": _parse_word(ns.w_prime, "--w-prime")}
    elif ns.command == "selftest":
        extra = {"level": ns.level}

    kind = getattr(ns, "kind", None)
    r = None
    if kind is not None:
        r = _parse_int_list(ns.r)
        if len(r) == 1 and ns.f > 1:
            r = r * ns.f
    return RunConfig(
        command=ns.command,
        p=ns.p,
        f=ns.f,
        N=ns.N,
        kind=kind,
        r=r,
        alpha=_parse_alpha(getattr(ns, "alpha", "1")),
        alpha_prime=_parse_alpha(getattr(ns, "alpha_prime", None)),
        json_out=ns.json,
        out=ns.out,
        seed=ns.seed,
        jobs=ns.jobs,
        extra=extra,
    )


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        config = config_from_args(ns)
        report = run(config)
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    text = canonical_json(report.to_json_obj()) if config.json_out else _render_text(report)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.summary["fail"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())

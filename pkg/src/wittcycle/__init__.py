"""Exact arithmetic for Jacobi sums, GL2(F_q) operator identities,
Serre-weight cycling, and diagram constants computed two independent ways."""

from wittcycle.padic import (
    PRECISION_INF,
    Params,
    PrecisionError,
    raise_precision,
    teichmuller,
    valuation_and_unit,
    witt_divide_exact,
)
from wittcycle.jacobi import StickelbergerData, jacobi_sum, stickelberger_data
from wittcycle.group_algebra import (
    ContractionResult,
    check_contract_pre,
    contract_splus,
    contraction_lead,
    contraction_valuation,
    ga_multiply,
    s_operator,
)
from wittcycle.principal_series import (
    ExchangeError,
    HChar,
    PSModule,
    eigen_check,
    exchange_constant,
    exponent_shift,
    h_component_characters,
    h_components,
    make_char,
    phi_vector,
    ps_act,
)
from wittcycle.weights import (
    IRREDUCIBLE,
    REDUCIBLE,
    CycleData,
    DLType,
    OrbitExcluded,
    RhoBar,
    SerreWeight,
    char_of_subset,
    complement,
    cycle_from,
    cycles_of,
    delta,
    digits_value,
    e_eval,
    formal_weight_of,
    iplus_of_step,
    jh_intersect,
    make_rho,
    rotate_cycle,
    serre_weight_of,
    sigma_J_table,
    subsets_of,
    survey_orbits,
    transition_weight,
    weight_char,
    weight_set,
)
from wittcycle.constants import (
    ConstantReport,
    StepConstant,
    UpMonomial,
    beta_by_bruteforce,
    breuil_constant,
    ctilde_closed,
    ctilde_product,
    degenerate_step_check,
    gauge_factor,
    step_lead_formula,
    theorem_form,
    up_product,
)

__all__ = [
    "PRECISION_INF",
    "Params",
    "PrecisionError",
    "raise_precision",
    "teichmuller",
    "valuation_and_unit",
    "witt_divide_exact",
    "StickelbergerData",
    "jacobi_sum",
    "stickelberger_data",
    "ContractionResult",
    "check_contract_pre",
    "contract_splus",
    "contraction_lead",
    "contraction_valuation",
    "ga_multiply",
    "s_operator",
    "ExchangeError",
    "HChar",
    "PSModule",
    "eigen_check",
    "exchange_constant",
    "exponent_shift",
    "h_component_characters",
    "h_components",
    "make_char",
    "phi_vector",
    "ps_act",
    "IRREDUCIBLE",
    "REDUCIBLE",
    "CycleData",
    "DLType",
    "OrbitExcluded",
    "RhoBar",
    "SerreWeight",
    "char_of_subset",
    "complement",
    "cycle_from",
    "cycles_of",
    "delta",
    "digits_value",
    "e_eval",
    "formal_weight_of",
    "iplus_of_step",
    "jh_intersect",
    "make_rho",
    "rotate_cycle",
    "serre_weight_of",
    "sigma_J_table",
    "subsets_of",
    "survey_orbits",
    "transition_weight",
    "weight_char",
    "weight_set",
    "ConstantReport",
    "StepConstant",
    "UpMonomial",
    "beta_by_bruteforce",
    "breuil_constant",
    "ctilde_closed",
    "ctilde_product",
    "degenerate_step_check",
    "gauge_factor",
    "step_lead_formula",
    "theorem_form",
    "up_product",
]

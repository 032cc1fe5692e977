"""Checks for geometric quantization on quaternion projective spaces."""
import json as _json

from ._hquant import (
    I_l,
    T_norm,
    T_norm_limit,
    a_l,
    a_l_quadrature,
    b_l,
    b_l_semianalytic,
    c_l,
    c_l_chain,
    c_l_quadrature,
    dim_Hl,
    harmonicity,
    in_tE_H,
    kernel_diag,
    lambda_l,
    qmul,
    random_tEH,
    ratio_limit,
    rho,
    stated_constants,
    suite_names,
    theta,
)
from . import _hquant


def run_suite(name, **kw):
    return _json.loads(_hquant.run_suite_json(name, **kw))


def run_criterion(k, **kw):
    return _json.loads(_hquant.run_criterion_json(k, **kw))


def constants_table(n, l0, l1):
    return _json.loads(_hquant.constants_table_json(n, l0, l1))

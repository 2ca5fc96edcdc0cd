# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Brute-force checks of expansion claims by explicit polynomial arithmetic.

Everything here is computed from determinants in ``x_1..x_M``; the only
engine path used is the rectangle reading of the coproduct, which is what
``verify_comult`` cross-checks against.
"""
from __future__ import annotations

from typing import Iterable, List, Optional, Tuple

import attrs
import groth_core as core
import groth_products as products
import groth_symfunc as symfunc
import groth_utils as utils


@attrs.frozen
class Witness:
    """First disagreement: a monomial exponent vector or a tensor key."""

    key: Tuple = attrs.field(converter=tuple)
    expected: int
    actual: int


@attrs.frozen
class OracleReport:
    ok: bool
    witness: Optional[Witness] = None

    def render(self) -> str:
        if self.ok:
            return "verified"
        w = self.witness
        return f"mismatch at {list(w.key)}: expected {w.expected}, got {w.actual}"


OK = OracleReport(True)


def compare_polynomials(expected: symfunc.XPolynomial, actual: symfunc.XPolynomial) -> OracleReport:
    """Exact equality; the witness is the highest differing monomial."""
    difference = expected - actual
    if difference.is_zero():
        return OK
    exps, _ = difference.monomials()[0]
    return OracleReport(
        False, Witness(exps, expected.terms.get(exps, 0), actual.terms.get(exps, 0))
    )


def _nvars_for(lam: core.Partition, mu: core.Partition, keys: Iterable[core.Partition]) -> int:
    longest = max((len(k) for k in keys), default=0)
    return max(len(lam) + len(mu), longest, 1)


def verify_mult(lam, mu, expansion: core.GExpansion) -> OracleReport:
    """Checks ``G_lambda G_mu = sum c_nu G_nu`` in enough variables."""
    lam = core.Partition.of(lam)
    mu = core.Partition.of(mu)
    nvars = _nvars_for(lam, mu, expansion.keys())
    lhs = symfunc.g_poly(lam, nvars) * symfunc.g_poly(mu, nvars)
    rhs = symfunc.combine_g(expansion.items(), nvars)
    report = compare_polynomials(lhs, rhs)
    if not report.ok:
        utils.log_warning(
            f"G[{lam.render()}] * G[{mu.render()}] in {nvars} variables: {report.render()}"
        )
    return report


def verify_schur_expansion(lam, nvars: int, expansion: core.SExpansion) -> OracleReport:
    """Checks ``G_lambda(x_1..x_M) = sum a_mu s_mu(x_1..x_M)``."""
    lam = core.Partition.of(lam)
    if nvars < len(lam):
        lhs = symfunc.XPolynomial.zero(nvars)
    else:
        lhs = symfunc.g_poly(lam, nvars)
    rhs = symfunc.combine_schur(expansion.items(), nvars)
    return compare_polynomials(lhs, rhs)


def verify_comult(nu, expansion: core.TensorGExpansion) -> OracleReport:
    """Compares a coproduct claim with the rectangle reading of a verified product."""
    nu = core.Partition.of(nu)
    if not nu.parts:
        expected = core.TensorGExpansion({(core.EMPTY, core.EMPTY): 1})
    else:
        rectangle = products.rectangle_of(nu)
        product = products.multiply_g(nu, rectangle)
        product_report = verify_mult(nu, rectangle, product)
        if not product_report.ok:
            return product_report
        expected = products.comultiply_via_rectangle(nu, product=product)

    difference = expected - expansion
    if not difference:
        return OK
    key, _ = difference.items()[0]
    return OracleReport(
        False, Witness([k.parts for k in key], expected.coeff(key), expansion.coeff(key))
    )


def verify_mult_table(
    pairs: Iterable[Tuple[object, object]], max_workers: Optional[int] = None
) -> List[OracleReport]:
    """Multiplies and verifies many pairs on the worker pool, in input order."""

    def _job(pair) -> OracleReport:
        lam, mu = pair
        return verify_mult(lam, mu, products.multiply_g(lam, mu))

    return utils.run_parallel(_job, pairs, max_workers)

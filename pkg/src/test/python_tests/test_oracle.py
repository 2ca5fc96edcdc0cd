# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""
Tests for the brute-force oracle.
"""
import groth_core as core
import groth_oracle as oracle
import groth_symfunc as symfunc
import groth_utils as utils
import pytest
from hamcrest import assert_that, contains_string, is_

from .groth_test_client import defaults


def test_compare_polynomials():
    """The witness is the highest monomial where the two sides differ."""
    x1, x2 = symfunc.XPolynomial.variable(1, 2), symfunc.XPolynomial.variable(2, 2)
    assert_that(oracle.compare_polynomials(x1 + x2, x2 + x1), is_(oracle.OK))
    report = oracle.compare_polynomials(x1 * x2 + x1, x1)
    assert_that(report.ok, is_(False))
    assert_that(report.witness, is_(oracle.Witness((1, 1), 1, 0)))


def test_verify_mult():
    """A correct product passes; dropping G_{2,1} is caught at x1^2 x2^2."""
    good = oracle.verify_mult((1,), (1,), core.GExpansion(defaults.MULT_1_1))
    assert_that(good.render(), is_("verified"))
    bad = oracle.verify_mult((1,), (1,), core.GExpansion({(2,): 1, (1, 1): 1}))
    assert_that(bad.witness, is_(oracle.Witness((2, 2), 1, 0)))
    assert_that(bad.render(), is_("mismatch at [2, 2]: expected 1, got 0"))


def test_verify_mult_logs_mismatch(capsys):
    """Failures are reported at the warning level."""
    utils.update_global_settings(showLog="onWarning")
    oracle.verify_mult((1,), (1,), core.GExpansion({(2,): 1}))
    assert_that(capsys.readouterr().err, contains_string("G[1] * G[1] in 2 variables: mismatch"))


@pytest.mark.parametrize("lam", [p for w in range(6) for p in core.partitions_of(w)])
def test_verify_mult_with_unit(lam):
    """G_lambda * 1 = G_lambda on both sides."""
    claim = core.GExpansion({lam: 1})
    assert_that(oracle.verify_mult(lam, (), claim).ok, is_(True))
    assert_that(oracle.verify_mult((), lam, claim).ok, is_(True))


def test_verify_mult_uses_longest_key():
    """Variables cover the longest claimed key."""
    report = oracle.verify_mult((2, 1), (3,), core.GExpansion(defaults.MULT_21_3))
    assert_that(report.ok, is_(True))
    wrong = dict(defaults.MULT_21_3)
    wrong[(1, 1, 1, 1)] = 1
    assert_that(oracle.verify_mult((2, 1), (3,), core.GExpansion(wrong)).ok, is_(False))


def test_verify_schur_expansion():
    """Checked in exactly the requested number of variables."""
    expansion = core.SExpansion(defaults.SCHUR_2_3)
    assert_that(oracle.verify_schur_expansion((2,), 3, expansion).ok, is_(True))
    assert_that(
        oracle.verify_schur_expansion((2,), 3, core.SExpansion({(2,): 1})).ok, is_(False)
    )
    # too few variables: G_{1,1}(x1) = 0
    assert_that(oracle.verify_schur_expansion((1, 1), 1, core.SExpansion()).ok, is_(True))


def test_verify_comult():
    """Coproduct claims are compared with the rectangle reading."""
    assert_that(oracle.verify_comult((1,), core.TensorGExpansion(defaults.COMULT_1)).ok, is_(True))
    flipped = dict(defaults.COMULT_1)
    flipped[((1,), (1,))] = 1
    report = oracle.verify_comult((1,), core.TensorGExpansion(flipped))
    assert_that(report.witness, is_(oracle.Witness([(1,), (1,)], -1, 1)))
    assert_that(report.render(), is_("mismatch at [(1,), (1,)]: expected -1, got 1"))
    unit = core.TensorGExpansion({((), ()): 1})
    assert_that(oracle.verify_comult((), unit).ok, is_(True))


def test_verify_mult_table():
    """Batch verification in input order."""
    reports = oracle.verify_mult_table([((1,), (1,)), ((2,), (1, 1)), ((), (1,))], max_workers=2)
    assert_that([r.ok for r in reports], is_([True, True, True]))

# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""
Tests for settings resolution and the shared helpers.
"""
import groth_cli
import groth_core as core
import groth_utils as utils
from hamcrest import assert_that, contains_string, has_entries, is_, not_

BUDGET_ENV = "GROTH_STRAIGHTEN_BUDGET"


def test_defaults(monkeypatch):
    for name in (BUDGET_ENV, "GROTH_EXPANSION_BUDGET", "GROTH_MAX_WORKERS", "GROTH_SHOW_LOG"):
        monkeypatch.delenv(name, raising=False)
    assert_that(
        utils.get_global_defaults(),
        is_(
            {
                "straightenBudget": 10_000_000,
                "expansionBudget": 5_000_000,
                "maxWorkers": 5,
                "showLog": "onError",
            }
        ),
    )


def test_environment_then_updates(monkeypatch):
    """Explicit settings win over the environment."""
    monkeypatch.setenv("GROTH_MAX_WORKERS", "3")
    monkeypatch.setenv("GROTH_SHOW_LOG", "always")
    assert_that(utils.get_global_defaults(), has_entries(maxWorkers=3, showLog="always"))
    utils.update_global_settings(maxWorkers=7, showLog=None)
    assert_that(utils.get_setting("maxWorkers"), is_(7))
    assert_that(utils.get_setting("showLog"), is_("always"))


def test_malformed_integer_falls_back(monkeypatch, capsys):
    """A bad integer is reported once and replaced by the default."""
    monkeypatch.setenv(BUDGET_ENV, "lots")
    monkeypatch.setenv("GROTH_SHOW_LOG", "onWarning")
    assert_that(utils.get_setting("straightenBudget"), is_(10_000_000))
    assert_that(utils.get_setting("straightenBudget"), is_(10_000_000))
    err = capsys.readouterr().err
    assert_that(err, contains_string("Ignoring non-integer GROTH_STRAIGHTEN_BUDGET='lots'"))
    assert_that(err.count("Ignoring"), is_(1))
    assert_that(core.straighten_groth((2,)), is_(core.GExpansion({(2,): 1})))


def test_malformed_integer_is_quiet_by_default(monkeypatch, capsys):
    monkeypatch.setenv(BUDGET_ENV, "lots")
    monkeypatch.delenv("GROTH_SHOW_LOG", raising=False)
    assert_that(utils.get_setting("straightenBudget"), is_(10_000_000))
    assert_that(capsys.readouterr().err, is_(""))


def test_explicit_setting_skips_environment(monkeypatch, capsys):
    monkeypatch.setenv(BUDGET_ENV, "lots")
    monkeypatch.setenv("GROTH_SHOW_LOG", "always")
    utils.update_global_settings(straightenBudget=42)
    assert_that(utils.get_setting("straightenBudget"), is_(42))
    assert_that(capsys.readouterr().err, not_(contains_string("Ignoring")))


def test_cli_survives_malformed_environment(monkeypatch, capsys):
    """Every command still runs with a malformed budget in the environment."""
    for name in (BUDGET_ENV, "GROTH_EXPANSION_BUDGET", "GROTH_MAX_WORKERS"):
        monkeypatch.setenv(name, "lots")
    assert_that(groth_cli.run(["straighten-g", "3,-1"]), is_(groth_cli.EXIT_OK))
    assert_that(groth_cli.run(["mult", "1", "1"]), is_(groth_cli.EXIT_OK))
    out = capsys.readouterr().out
    assert_that(out, contains_string("G[3]\n"))
    assert_that(out, contains_string("G[2] + G[1,1] - G[2,1]"))


def test_run_parallel_keeps_order():
    squares = utils.run_parallel(lambda x: x * x, range(6), max_workers=3)
    assert_that(squares, is_([0, 1, 4, 9, 16, 25]))
    assert_that(utils.run_parallel(abs, []), is_([]))

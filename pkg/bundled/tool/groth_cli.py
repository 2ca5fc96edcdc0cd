# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Command-line front end for the groth engine."""

from __future__ import annotations

import functools
import json
import os
import pathlib
import sys
from typing import Any, Callable, Dict, Optional, Sequence


# **********************************************************
# Update sys.path before importing any bundled libraries.
# **********************************************************
def update_sys_path(path_to_add: str, strategy: str) -> None:
    """Add given path to `sys.path`."""
    if path_to_add not in sys.path and os.path.isdir(path_to_add):
        if strategy == "useBundled":
            sys.path.insert(0, path_to_add)
        elif strategy == "fromEnvironment":
            sys.path.append(path_to_add)


update_sys_path(
    os.fspath(pathlib.Path(__file__).parent.parent / "libs"),
    os.getenv("GROTH_IMPORT_STRATEGY", "useBundled"),
)

# **********************************************************
# Imports needed for the engine go below this.
# **********************************************************
# pylint: disable=wrong-import-position,import-error
import attrs
import cattrs
import click
import groth_core as core
import groth_oracle as oracle
import groth_pieri as pieri
import groth_products as products
import groth_schurexp as schurexp
import groth_symfunc as symfunc
import groth_utils as utils
from groth_errors import GrothError, ParseError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INTERNAL = 3


@attrs.frozen
class OutputEnvelope:
    command: str
    inputs: Dict[str, Any]
    result: Any
    verified: Optional[oracle.OracleReport] = None


CONVERTER = cattrs.Converter()
CONVERTER.register_unstructure_hook(core.Partition, lambda p: list(p.parts))
CONVERTER.register_unstructure_hook(core.IntSeq, lambda s: list(s.parts))
CONVERTER.register_unstructure_hook(core.GExpansion, lambda e: e.to_list())
CONVERTER.register_unstructure_hook(core.SExpansion, lambda e: e.to_list())
CONVERTER.register_unstructure_hook(core.TensorGExpansion, lambda e: e.to_list())
CONVERTER.register_unstructure_hook(symfunc.XPolynomial, lambda p: p.to_dict())
CONVERTER.register_unstructure_hook(
    oracle.Witness,
    lambda w: {"key": _listify(w.key), "expected": w.expected, "actual": w.actual},
)


def _listify(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_listify(v) for v in value]
    return value


# **********************************************************
# Argument parsing.
# **********************************************************
def parse_int_seq(text: str) -> core.IntSeq:
    """``"3,-1"`` -> ``IntSeq((3, -1))``; an empty string is the empty sequence."""
    text = text.strip()
    if not text:
        return core.IntSeq()
    try:
        return core.IntSeq(int(piece) for piece in text.split(","))
    except ValueError as exc:
        raise ParseError(f"{text!r} is not a comma-separated integer sequence.") from exc


def parse_partition(text: str) -> core.Partition:
    """``"2,1"`` -> ``(2, 1)``; ``"0"`` and ``"empty"`` are the empty partition."""
    text = text.strip()
    if text in ("0", "empty"):
        return core.EMPTY
    try:
        return core.Partition.of(int(piece) for piece in text.split(","))
    except ValueError as exc:
        raise ParseError(f"{text!r} is not a partition: {exc}") from exc


class _ParsedParam(click.ParamType):
    parser: Callable[[str], Any]

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return type(self).parser(value)
        except ParseError as exc:
            self.fail(str(exc), param, ctx)


class IntSeqParam(_ParsedParam):
    name = "sequence"
    parser = staticmethod(parse_int_seq)


class PartitionParam(_ParsedParam):
    name = "partition"
    parser = staticmethod(parse_partition)


SEQUENCE = IntSeqParam()
PARTITION = PartitionParam()

# Sequences may start with a negative entry such as -1,2.
SEQUENCE_CONTEXT = {"ignore_unknown_options": True}


def common_options(func: Callable) -> Callable:
    """``--format`` and ``--seed`` shared by every subcommand."""

    @click.option(
        "--format",
        "fmt",
        type=click.Choice(["text", "json"]),
        default="text",
        show_default=True,
        help="Output format.",
    )
    @click.option(
        "--seed",
        type=int,
        default=None,
        help="Accepted for compatibility; every computation is deterministic.",
    )
    @functools.wraps(func)
    def wrapper(*args, seed=None, **kwargs):  # pylint: disable=unused-argument
        return func(*args, **kwargs)

    return wrapper


verify_option = click.option(
    "--verify", is_flag=True, help="Check the result against the polynomial oracle."
)
trace_option = click.option(
    "--trace", is_flag=True, help="Print intermediate states to stderr."
)


# **********************************************************
# Output.
# **********************************************************
def _emit(
    fmt: str,
    command: str,
    inputs: Dict[str, Any],
    result: Any,
    text: str,
    report: Optional[oracle.OracleReport] = None,
) -> int:
    envelope = OutputEnvelope(
        command=command,
        inputs={k: CONVERTER.unstructure(v) for k, v in inputs.items()},
        result=CONVERTER.unstructure(result),
        verified=report,
    )
    if fmt == "json":
        click.echo(json.dumps(CONVERTER.unstructure(envelope), ensure_ascii=False))
    else:
        click.echo(text)
    if report is None:
        return EXIT_OK
    if report.ok:
        utils.log_to_output(f"{command}: verified")
        return EXIT_OK
    utils.log_always(f"{command}: verification failed, {report.render()}")
    return EXIT_VERIFY_FAILED


# **********************************************************
# Commands.
# **********************************************************
@click.group(name="groth")
@click.option(
    "--show-log",
    type=click.Choice(utils.SHOW_LOG_LEVELS),
    default=None,
    help="Which diagnostics reach stderr.",
)
def cli(show_log: Optional[str]) -> None:
    """Exact stable Grothendieck polynomial computations."""
    utils.update_global_settings(showLog=show_log)


@cli.command("straighten-g", context_settings=SEQUENCE_CONTEXT)
@click.argument("seq", type=SEQUENCE)
@common_options
def straighten_g(seq: core.IntSeq, fmt: str) -> int:
    """Expand G_I for an integer sequence I in the partition basis."""
    result = core.straighten_groth(seq)
    return _emit(fmt, "straighten-g", {"seq": seq}, result, result.render())


@cli.command("straighten-s", context_settings=SEQUENCE_CONTEXT)
@click.argument("seq", type=SEQUENCE)
@common_options
def straighten_s(seq: core.IntSeq, fmt: str) -> int:
    """Rewrite s_I as plus or minus s_nu, or 0."""
    straight = core.straighten_schur(seq)
    result = core.SExpansion() if straight is None else core.SExpansion({straight[1]: straight[0]})
    return _emit(fmt, "straighten-s", {"seq": seq}, result, result.render())


@cli.command("mult")
@click.argument("lam", metavar="LAMBDA", type=PARTITION)
@click.argument("mu", metavar="MU", type=PARTITION)
@verify_option
@common_options
def mult(lam: core.Partition, mu: core.Partition, verify: bool, fmt: str) -> int:
    """Structure constants of G_lambda * G_mu."""
    result = products.multiply_g(lam, mu)
    report = oracle.verify_mult(lam, mu, result) if verify else None
    return _emit(fmt, "mult", {"lambda": lam, "mu": mu}, result, result.render(), report)


@cli.command("pieri")
@click.argument("lam", metavar="LAMBDA", type=PARTITION)
@click.argument("n", type=click.IntRange(min=1))
@trace_option
@verify_option
@common_options
def pieri_cmd(lam: core.Partition, n: int, trace: bool, verify: bool, fmt: str) -> int:
    """G_lambda * G_n through canceling segments."""
    result = pieri.pieri_expand(lam, n, trace=trace)
    report = oracle.verify_mult(lam, (n,), result) if verify else None
    return _emit(fmt, "pieri", {"lambda": lam, "n": n}, result, result.render(), report)


@cli.command("comult")
@click.argument("nu", metavar="NU", type=PARTITION)
@click.option(
    "--method",
    type=click.Choice(["kernel", "rectangle"]),
    default="kernel",
    show_default=True,
    help="Coproduct kernel, or the product with the enclosing rectangle.",
)
@verify_option
@common_options
def comult(nu: core.Partition, method: str, verify: bool, fmt: str) -> int:
    """Coproduct of G_nu as a sum of G_lambda ⊗ G_mu."""
    if method == "kernel":
        result = products.comultiply_g(nu)
    else:
        result = products.comultiply_via_rectangle(nu)
    report = oracle.verify_comult(nu, result) if verify else None
    return _emit(
        fmt, "comult", {"nu": nu, "method": method}, result, result.render(), report
    )


@cli.command("schur-expand")
@click.argument("lam", metavar="LAMBDA", type=PARTITION)
@click.option("--vars", "nvars", type=click.IntRange(min=1), required=True)
@trace_option
@verify_option
@common_options
def schur_expand(lam: core.Partition, nvars: int, trace: bool, verify: bool, fmt: str) -> int:
    """Alternating Schur expansion of G_lambda(x_1..x_M)."""
    result = schurexp.g_to_schur(lam, nvars, trace=trace)
    report = oracle.verify_schur_expansion(lam, nvars, result) if verify else None
    return _emit(
        fmt, "schur-expand", {"lambda": lam, "vars": nvars}, result, result.render(), report
    )


@cli.command("gpoly")
@click.argument("lam", metavar="LAMBDA", type=PARTITION)
@click.option("--vars", "nvars", type=click.IntRange(min=1), required=True)
@common_options
def gpoly(lam: core.Partition, nvars: int, fmt: str) -> int:
    """G_lambda(x_1..x_M) as an explicit polynomial."""
    result = symfunc.g_poly(lam, nvars)
    return _emit(fmt, "gpoly", {"lambda": lam, "vars": nvars}, result, result.render())


# *****************************************************
# Entry point.
# *****************************************************
def run(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one invocation and returns its exit code."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        code = cli.main(args=args, prog_name="groth", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except (GrothError, RecursionError) as exc:
        utils.log_error(f"{type(exc).__name__}: {exc}")
        utils.log_exception()
        return EXIT_INTERNAL
    return code if isinstance(code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run())

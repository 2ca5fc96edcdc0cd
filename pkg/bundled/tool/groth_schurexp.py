# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Schur expansion of ``G_lambda(x_1..x_M)`` by rewriting d-exponents.

Inside the S-operation ``G_lambda(x)`` equals ``t^lambda * prod_i (1 - t_i)^(i-1)``.
Each rewrite at ``k`` removes one factor ``(1 - t_k)``; when ``lambda_{k-1} >
lambda_k`` it also spawns ``-t^(lambda + e_k)`` with the reduced exponents.
"""
from __future__ import annotations

from typing import Dict, List, Mapping, Tuple

import attrs
import groth_core as core
import groth_utils as utils
from groth_errors import DimensionError, HypothesisViolation

StateKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _clean(terms: Mapping[StateKey, int]) -> Dict[StateKey, int]:
    return {
        (tuple(lam), tuple(d_exps)): int(c) for (lam, d_exps), c in terms.items() if c != 0
    }


@attrs.frozen
class RewriteState:
    """Merged signed terms ``(lam, dI) -> coefficient`` over ``M`` variables."""

    nvars: int
    terms: Dict[StateKey, int] = attrs.field(converter=_clean, factory=dict)

    def items(self) -> List[Tuple[StateKey, int]]:
        """Lowest weight first, then descending lexicographic on ``lam``."""
        return sorted(
            self.terms.items(),
            key=lambda kv: (sum(kv[0][0]), tuple(-x for x in kv[0][0]), kv[0][1]),
        )

    def is_terminal(self) -> bool:
        return all(not any(d_exps) for _, d_exps in self.terms)


def hat_lambda(lam, nvars: int) -> core.Partition:
    """Largest partition reachable by adding at most ``j - 1`` boxes to row ``j``."""
    lam = core.Partition.of(lam)
    if nvars < len(lam):
        raise DimensionError(f"hat_lambda{lam.parts} needs at least {len(lam)} rows, got {nvars}.")
    rows: List[int] = []
    for j, part in enumerate(lam.padded(nvars), start=1):
        grown = part + j - 1
        rows.append(grown if j == 1 else min(grown, rows[-1]))
    return core.Partition.of(rows)


def k_sequence(nvars: int) -> List[int]:
    """``k_M k_{M-1} ... k_2`` with ``k_j = (j, j+1, ..., M)``."""
    order: List[int] = []
    for j in range(nvars, 1, -1):
        order.extend(range(j, nvars + 1))
    return order


def initial_state(lam, nvars: int) -> RewriteState:
    lam = core.Partition.of(lam)
    if nvars < len(lam):
        raise DimensionError(f"G[{lam.render()}] needs at least {len(lam)} variables, got {nvars}.")
    return RewriteState(nvars, {(lam.padded(nvars), tuple(range(nvars))): 1})


def rewrite_step(state: RewriteState, k: int) -> RewriteState:
    """Removes one ``(1 - t_k)`` from every term whose d-exponents step up at ``k``."""
    if not 2 <= k <= state.nvars:
        raise ValueError(f"Rewrite index {k} is outside 2..{state.nvars}.")
    following: Dict[StateKey, int] = {}

    def _add(key: StateKey, coeff: int) -> None:
        following[key] = following.get(key, 0) + coeff

    for (lam, d_exps), coeff in state.terms.items():
        gap = d_exps[k - 1] - d_exps[k - 2]
        if gap == 0:
            _add((lam, d_exps), coeff)
            continue
        if gap != 1:
            raise HypothesisViolation(
                f"d-exponents {d_exps} jump by {gap} at k={k}; only 0 or 1 can be rewritten."
            )
        lowered = d_exps[: k - 1] + (d_exps[k - 1] - 1,) + d_exps[k:]
        _add((lam, lowered), coeff)
        if lam[k - 2] > lam[k - 1]:
            raised = lam[: k - 1] + (lam[k - 1] + 1,) + lam[k:]
            _add((raised, lowered), -coeff)
    return RewriteState(state.nvars, following)


def g_to_schur(lam, nvars: int, *, trace: bool = False) -> core.SExpansion:
    """Alternating Schur expansion of ``G_lambda`` in ``nvars`` variables."""
    lam = core.Partition.of(lam)
    if nvars < 0:
        raise ValueError(f"g_to_schur needs nvars >= 0, got {nvars}.")
    if nvars < len(lam):
        return core.SExpansion()
    state = initial_state(lam, nvars)
    if trace:
        utils.log_always(f"start {format_state(state)}")
    for k in k_sequence(nvars):
        state = rewrite_step(state, k)
        if trace:
            utils.log_always(f"k={k} ⇝ {format_state(state)}")
    if not state.is_terminal():
        raise HypothesisViolation(f"Rewriting G[{lam.render()}] left d-factors behind.")
    return core.SExpansion({parts: c for (parts, _), c in state.terms.items()})


def _monomial(lam: Tuple[int, ...], d_exps: Tuple[int, ...]) -> str:
    pieces = [f"t{i}^{e}" for i, e in enumerate(lam, start=1) if e]
    pieces.extend(f"d{i}" if e == 1 else f"d{i}^{e}" for i, e in enumerate(d_exps, start=1) if e)
    return " ".join(pieces) or "1"


def format_state(state: RewriteState) -> str:
    """Signed sum such as ``+t1^2 d2 d3 - t1^2 t2^1 d3``."""
    pieces = []
    for (lam, d_exps), coeff in state.items():
        sign = "+" if coeff > 0 else "-"
        magnitude = "" if abs(coeff) == 1 else f"{abs(coeff)}*"
        pieces.append(f"{sign}{magnitude}{_monomial(lam, d_exps)}")
    return " ".join(pieces) if pieces else "0"

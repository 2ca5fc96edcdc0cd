# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Multiplication and comultiplication structure constants."""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

import groth_core as core
import groth_residue as residue
import groth_utils as utils
from groth_errors import DecompositionError
from groth_residue import KernelTerm, TruncationBound, first, second


def mult_kernel(seq_i: core.SeqLike, seq_j: core.SeqLike) -> KernelTerm:
    """``t^{I,J} K_{p,q}`` with ``p = len(I)`` and ``q = len(J)``."""
    parts_i = core.as_tuple(seq_i)
    parts_j = core.as_tuple(seq_j)
    p, q = len(parts_i), len(parts_j)
    mono = {first(i): e for i, e in enumerate(parts_i, start=1)}
    mono.update({first(p + j): e for j, e in enumerate(parts_j, start=1)})
    dnum = {first(i): q for i in range(1, p + 1)}
    dden = [(first(i), first(p + j)) for i in range(1, p + 1) for j in range(1, q + 1)]
    return KernelTerm(1, mono, dnum, dden)


def multiply_g(
    lam, mu, *, budget: Optional[int] = None, max_weight: Optional[int] = None
) -> core.GExpansion:
    """``G_lambda * G_mu`` in the partition basis.

    Keys satisfy ``nu_1 <= lambda_1 + mu_1`` and ``l(nu) <= l(lambda) + l(mu)``,
    which is what lets multi-row kernels be expanded with a finite bound.
    ``max_weight`` keeps only keys up to that weight, pruning the expansion to match.
    """
    lam = core.Partition.of(lam)
    mu = core.Partition.of(mu)
    if not lam.parts:
        return core.GExpansion({mu: 1})
    if not mu.parts:
        return core.GExpansion({lam: 1})
    max_row = lam.part(1) + mu.part(1)
    max_length = len(lam) + len(mu)
    box_weight = max_row * max_length
    if max_weight is not None:
        box_weight = min(box_weight, max_weight)
    bound = TruncationBound(max_row=max_row, max_weight=box_weight)
    utils.log_to_output(f"Multiplying G[{lam.render()}] by G[{mu.render()}].")
    expanded = residue.expand_kernel(mult_kernel(lam, mu), bound=bound, budget=budget)
    product = residue.g_operation(expanded)
    return core.GExpansion(
        {
            nu: c
            for nu, c in product.terms.items()
            if nu.part(1) <= max_row and len(nu) <= max_length and nu.weight <= box_weight
        }
    )


def multiply_table(
    pairs: Iterable[Tuple[object, object]], max_workers: Optional[int] = None
) -> List[core.GExpansion]:
    """:func:`multiply_g` over many pairs on the worker pool, in input order."""
    return utils.run_parallel(lambda pair: multiply_g(*pair), pairs, max_workers)


def comult_kernel(seq: core.SeqLike) -> KernelTerm:
    """``t^I prod_i (1 - s_i)^n / prod_{i,j} (1 - s_i / t_j)`` with ``n = len(I)``."""
    parts = core.as_tuple(seq)
    n = len(parts)
    if n < 1:
        raise ValueError("comult_kernel needs a sequence of length at least 1.")
    mono = {second(j): e for j, e in enumerate(parts, start=1)}
    dnum = {first(i): n for i in range(1, n + 1)}
    dden = [(first(i), second(j)) for i in range(1, n + 1) for j in range(1, n + 1)]
    return KernelTerm(1, mono, dnum, dden)


def comultiply_g(nu, *, budget: Optional[int] = None) -> core.TensorGExpansion:
    """``Delta(G_nu)`` through the comultiplication kernel."""
    nu = core.Partition.of(nu)
    if not nu.parts:
        return core.TensorGExpansion({(core.EMPTY, core.EMPTY): 1})
    bound = TruncationBound(max_row=nu.part(1), max_weight=2 * nu.weight)
    expanded = residue.expand_kernel(comult_kernel(nu), bound=bound, budget=budget)
    coproduct = residue.g_operation_tensor(expanded)
    return core.TensorGExpansion(
        {
            key: c
            for key, c in coproduct.terms.items()
            if core.contains(nu, key[0]) and core.contains(nu, key[1])
        }
    )


def decompose_skew(tau, nu) -> Tuple[core.Partition, core.Partition]:
    """Reads ``tau / R`` as ``lambda * mu`` for the rectangle ``R = (nu_1)^l(nu)``."""
    tau = core.Partition.of(tau)
    nu = core.Partition.of(nu)
    width, height = nu.part(1), len(nu)
    if len(tau) < height or any(tau.part(i) < width for i in range(1, height + 1)):
        raise DecompositionError(
            f"G[{tau.render()}] does not contain the rectangle ({width})^{height}."
        )
    below = tau.parts[height:]
    if below and below[0] > width:
        raise DecompositionError(
            f"Row {height + 1} of G[{tau.render()}] is longer than {width}."
        )
    lam = core.Partition.of(p - width for p in tau.parts[:height])
    return lam, core.Partition.of(below)


def comultiply_via_rectangle(
    nu, *, product: Optional[core.GExpansion] = None, budget: Optional[int] = None
) -> core.TensorGExpansion:
    """``Delta(G_nu)`` read off ``G_nu * G_R`` for the minimal rectangle ``R``.

    ``product`` may be supplied when the caller already holds ``G_nu * G_R``.
    Otherwise only keys of weight up to ``|R| + 2|nu|`` are computed, since
    both tensor factors lie inside ``nu``.
    """
    nu = core.Partition.of(nu)
    if not nu.parts:
        return core.TensorGExpansion({(core.EMPTY, core.EMPTY): 1})
    rectangle = rectangle_of(nu)
    if product is None:
        product = multiply_g(
            rectangle, nu, budget=budget, max_weight=rectangle.weight + 2 * nu.weight
        )
    collected: Dict[Tuple[core.Partition, core.Partition], int] = {}
    for tau, coeff in product.items():
        key = decompose_skew(tau, nu)
        collected[key] = collected.get(key, 0) + coeff
    return core.TensorGExpansion(collected)


def rectangle_of(nu) -> core.Partition:
    nu = core.Partition.of(nu)
    return core.Partition((nu.part(1),) * len(nu)) if nu.parts else core.EMPTY


def coassociativity_sides(nu) -> Tuple[core.TensorGExpansion, core.TensorGExpansion]:
    """``((Delta ⊗ id) Delta(G_nu), (id ⊗ Delta) Delta(G_nu))`` as triple tensors."""
    cache: Dict[core.Partition, core.TensorGExpansion] = {}

    def _delta(lam: core.Partition) -> core.TensorGExpansion:
        if lam not in cache:
            cache[lam] = comultiply_g(lam)
        return cache[lam]

    left: Dict[Tuple[core.Partition, ...], int] = {}
    right: Dict[Tuple[core.Partition, ...], int] = {}
    for (lam, mu), coeff in comultiply_g(nu).items():
        for (a, b), inner in _delta(lam).items():
            key = (a, b, mu)
            left[key] = left.get(key, 0) + coeff * inner
        for (a, b), inner in _delta(mu).items():
            key = (lam, a, b)
            right[key] = right.get(key, 0) + coeff * inner
    return core.TensorGExpansion(left), core.TensorGExpansion(right)

# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Explicit symmetric polynomials in ``x_1..x_M``.

This is the ground-truth layer: complete homogeneous polynomials, the
``h^{(i)}_r`` family, Jacobi-Trudi Schur polynomials and the ``g_lambda``
determinant that realises ``G_lambda(x_1..x_M)``.
"""
from __future__ import annotations

import functools
import heapq
import itertools
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import attrs
import groth_core as core
import groth_utils as utils
from groth_errors import DimensionError, NotInSpan, NotSymmetric, ZeroPolynomial

Exponents = Tuple[int, ...]


def _clean_terms(terms: Optional[Mapping[Exponents, int]]) -> Dict[Exponents, int]:
    return {tuple(k): int(c) for k, c in (terms or {}).items() if c != 0}


@attrs.frozen
class XPolynomial:
    """Sparse integer polynomial; ``terms`` maps exponent vectors to coefficients."""

    nvars: int
    terms: Dict[Exponents, int] = attrs.field(converter=_clean_terms, factory=dict)

    def __attrs_post_init__(self):
        for exps in self.terms:
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise ValueError(f"Bad exponent vector {exps} for {self.nvars} variables.")

    @classmethod
    def zero(cls, nvars: int) -> "XPolynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, value: int, nvars: int) -> "XPolynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "XPolynomial":
        """The polynomial ``x_index`` (1-based)."""
        exps = [0] * nvars
        exps[index - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("The zero polynomial has no degree.")
        return max(sum(e) for e in self.terms)

    def monomials(self) -> List[Tuple[Exponents, int]]:
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def _check(self, other: "XPolynomial") -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"Variable count mismatch: {self.nvars} vs {other.nvars}.")

    def __add__(self, other: "XPolynomial") -> "XPolynomial":
        self._check(other)
        merged = dict(self.terms)
        for exps, coeff in other.terms.items():
            merged[exps] = merged.get(exps, 0) + coeff
        return XPolynomial(self.nvars, merged)

    def __neg__(self) -> "XPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "XPolynomial") -> "XPolynomial":
        return self + other.scale(-1)

    def scale(self, factor: int) -> "XPolynomial":
        return XPolynomial(self.nvars, {e: factor * c for e, c in self.terms.items()})

    def __mul__(self, other: "XPolynomial") -> "XPolynomial":
        self._check(other)
        product: Dict[Exponents, int] = {}
        for exps1, coeff1 in self.terms.items():
            for exps2, coeff2 in other.terms.items():
                key = tuple(a + b for a, b in zip(exps1, exps2))
                product[key] = product.get(key, 0) + coeff1 * coeff2
        return XPolynomial(self.nvars, product)

    def exact_quotient(self, divisor: "XPolynomial") -> "XPolynomial":
        """``self / divisor`` when the division leaves no remainder.

        Leading terms are cancelled in lexicographic order; a leftover term
        raises :class:`ValueError`.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Division by the zero polynomial.")
        if len(divisor.terms) == 1 and divisor.terms.get((0,) * self.nvars) == 1:
            return self
        lead, lead_coeff = max(divisor.terms.items())
        remainder = dict(self.terms)
        # max-heap of live exponents; stale entries are skipped
        heap = [tuple(-e for e in exps) for exps in remainder]
        heapq.heapify(heap)
        quotient: Dict[Exponents, int] = {}
        while heap:
            exps = tuple(-e for e in heapq.heappop(heap))
            coeff = remainder.get(exps)
            if coeff is None:
                continue
            shift = tuple(a - b for a, b in zip(exps, lead))
            if any(s < 0 for s in shift) or coeff % lead_coeff:
                raise ValueError(f"{divisor.render()} does not divide the polynomial exactly.")
            factor = coeff // lead_coeff
            quotient[shift] = factor
            for dexps, dcoeff in divisor.terms.items():
                key = tuple(a + b for a, b in zip(dexps, shift))
                value = remainder.get(key, 0) - factor * dcoeff
                if value:
                    if key not in remainder:
                        heapq.heappush(heap, tuple(-e for e in key))
                    remainder[key] = value
                else:
                    remainder.pop(key, None)
        return XPolynomial(self.nvars, quotient)

    def __pow__(self, power: int) -> "XPolynomial":
        result = XPolynomial.constant(1, self.nvars)
        for _ in range(power):
            result = result * self
        return result

    def permute(self, perm: Sequence[int]) -> "XPolynomial":
        """Renames ``x_{i+1}`` to ``x_{perm[i]+1}`` (0-based permutation)."""
        moved = {}
        for exps, coeff in self.terms.items():
            image = [0] * self.nvars
            for i, e in enumerate(exps):
                image[perm[i]] = e
            moved[tuple(image)] = coeff
        return XPolynomial(self.nvars, moved)

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.monomials():
            factors = [
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps, start=1) if e
            ]
            label = "*".join(factors) if factors else "1"
            if factors and abs(coeff) != 1:
                label = f"{abs(coeff)}*{label}"
            elif not factors:
                label = str(abs(coeff))
            pieces.append((coeff, label))
        out = []
        for pos, (coeff, label) in enumerate(pieces):
            if pos == 0:
                out.append(label if coeff > 0 else f"-{label}")
            else:
                out.append(f"{'+' if coeff > 0 else '-'} {label}")
        return " ".join(out)

    def to_dict(self) -> dict:
        return {
            "vars": self.nvars,
            "terms": [{"exps": list(e), "coeff": c} for e, c in self.monomials()],
        }


# **********************************************************
# Generators.
# **********************************************************
@functools.lru_cache(maxsize=None)
def h_poly(r: int, nvars: int) -> XPolynomial:
    """Complete homogeneous symmetric polynomial ``h_r(x_1..x_M)``."""
    if nvars < 1:
        raise DimensionError(f"Need at least one variable, got {nvars}.")
    if r < 0:
        return XPolynomial.zero(nvars)
    terms = {}
    for combo in itertools.combinations_with_replacement(range(nvars), r):
        exps = [0] * nvars
        for idx in combo:
            exps[idx] += 1
        terms[tuple(exps)] = 1
    return XPolynomial(nvars, terms)


@functools.lru_cache(maxsize=None)
def h_i_poly(i: int, r: int, nvars: int) -> XPolynomial:
    """Coefficient of ``u^r`` in ``(1-u)^i / prod_j (1 - x_j u)``."""
    if i < 0:
        raise ValueError(f"h_i_poly needs i >= 0, got {i}.")
    result = XPolynomial.zero(nvars)
    for j in range(i + 1):
        if r - j < 0:
            break
        result = result + h_poly(r - j, nvars).scale((-1) ** j * comb(i, j))
    return result


def h_i_series(i: int, order: int, nvars: int) -> List[XPolynomial]:
    """Series coefficients ``u^0..u^order`` of ``(1-u)^i / prod_j (1 - x_j u)``.

    Computed by dividing the numerator by the expanded denominator one
    coefficient at a time; independent of :func:`h_i_poly`.
    """
    numerator = [
        XPolynomial.constant((-1) ** k * comb(i, k), nvars) if k <= i else XPolynomial.zero(nvars)
        for k in range(order + 1)
    ]
    # prod_j (1 - x_j u) = sum_k (-1)^k e_k u^k
    denominator = []
    for k in range(order + 1):
        terms = {}
        for combo in itertools.combinations(range(nvars), k):
            exps = [0] * nvars
            for idx in combo:
                exps[idx] = 1
            terms[tuple(exps)] = (-1) ** k
        denominator.append(XPolynomial(nvars, terms))
    quotient: List[XPolynomial] = []
    for k in range(order + 1):
        acc = numerator[k]
        for j in range(1, k + 1):
            acc = acc - denominator[j] * quotient[k - j]
        quotient.append(acc)
    return quotient


def determinant(matrix: Sequence[Sequence[XPolynomial]], nvars: int) -> XPolynomial:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Every division is exact, so entries stay integer polynomials; a zero
    pivot is replaced by a later row with a nonzero entry in that column.
    """
    size = len(matrix)
    if size == 0:
        return XPolynomial.constant(1, nvars)
    rows = [list(row) for row in matrix]
    sign = 1
    previous = XPolynomial.constant(1, nvars)
    for k in range(size - 1):
        if rows[k][k].is_zero():
            swap = next((i for i in range(k + 1, size) if not rows[i][k].is_zero()), None)
            if swap is None:
                return XPolynomial.zero(nvars)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                numerator = rows[i][j] * pivot - rows[i][k] * rows[k][j]
                rows[i][j] = numerator.exact_quotient(previous)
        previous = pivot
    return rows[-1][-1].scale(sign)


@functools.lru_cache(maxsize=None)
def _schur_poly(parts: Tuple[int, ...], nvars: int) -> XPolynomial:
    size = len(parts)
    if size > nvars:
        return XPolynomial.zero(nvars)
    matrix = [[h_poly(parts[i] + j - i, nvars) for j in range(size)] for i in range(size)]
    return determinant(matrix, nvars)


def schur_poly(lam, nvars: int) -> XPolynomial:
    """Jacobi-Trudi ``det(h_{lambda_i + j - i})``; zero when ``l(lambda) > M``."""
    return _schur_poly(core.Partition.of(lam).parts, nvars)


@functools.lru_cache(maxsize=None)
def _g_poly(parts: Tuple[int, ...], nvars: int) -> XPolynomial:
    padded = parts + (0,) * (nvars - len(parts))
    matrix = [
        [h_i_poly(i, padded[i] + j, nvars) for j in range(nvars)] for i in range(nvars)
    ]
    det = determinant(matrix, nvars)
    return det if (nvars * (nvars - 1) // 2) % 2 == 0 else -det


def g_poly(lam, nvars: int) -> XPolynomial:
    """``G_lambda(x_1..x_M)`` as ``(-1)^{M(M-1)/2} det(h^{(i-1)}_{lambda_i + j - 1})``."""
    lam = core.Partition.of(lam)
    if nvars < len(lam):
        raise DimensionError(f"g_poly{lam.parts} needs at least {len(lam)} variables, got {nvars}.")
    if nvars < 1:
        raise DimensionError("g_poly needs at least one variable.")
    return _g_poly(lam.parts, nvars)


# **********************************************************
# Basis eliminations.
# **********************************************************
def lowest_degree_component(poly: XPolynomial) -> XPolynomial:
    if poly.is_zero():
        raise ZeroPolynomial("The zero polynomial has no lowest-degree component.")
    low = min(sum(e) for e in poly.terms)
    return XPolynomial(poly.nvars, {e: c for e, c in poly.terms.items() if sum(e) == low})


def _elimination_budget(budget: Optional[int]) -> int:
    return budget if budget is not None else utils.get_setting("straightenBudget")


def expand_in_schur_basis(poly: XPolynomial, *, budget: Optional[int] = None) -> core.SExpansion:
    """Schur expansion by repeated leading-monomial elimination."""
    limit = _elimination_budget(budget)
    residual = poly
    found: Dict[core.Partition, int] = {}
    steps = 0
    while not residual.is_zero():
        steps += 1
        if steps > limit:
            raise NotSymmetric(f"Schur elimination did not finish within {limit} steps.")
        exps, coeff = max(residual.terms.items(), key=lambda kv: kv[0])
        if any(exps[i] < exps[i + 1] for i in range(len(exps) - 1)):
            raise NotSymmetric(f"Leading exponent {exps} is not a partition.")
        lam = core.Partition.of(exps)
        found[lam] = found.get(lam, 0) + coeff
        residual = residual - schur_poly(lam, poly.nvars).scale(coeff)
    return core.SExpansion(found)


def expand_in_g_basis(poly: XPolynomial, *, budget: Optional[int] = None) -> core.GExpansion:
    """G expansion by peeling off the lowest-degree component."""
    limit = _elimination_budget(budget)
    residual = poly
    found: Dict[core.Partition, int] = {}
    last_degree = -1
    steps = 0
    while not residual.is_zero():
        steps += 1
        if steps > limit:
            raise NotInSpan(f"G elimination did not finish within {limit} steps.")
        low = lowest_degree_component(residual)
        degree = sum(next(iter(low.terms)))
        if degree <= last_degree:
            raise NotInSpan(f"Elimination stalled at degree {degree}.")
        last_degree = degree
        for lam, coeff in expand_in_schur_basis(low, budget=budget).items():
            if len(lam) > poly.nvars:
                raise NotInSpan(f"Key {lam.parts} is longer than {poly.nvars} variables.")
            found[lam] = found.get(lam, 0) + coeff
            residual = residual - g_poly(lam, poly.nvars).scale(coeff)
    return core.GExpansion(found)


def combine_g(expansion: Iterable[Tuple[core.Partition, int]], nvars: int) -> XPolynomial:
    """``sum c * g_poly(nu, M)`` over an expansion."""
    total = XPolynomial.zero(nvars)
    for lam, coeff in expansion:
        total = total + g_poly(lam, nvars).scale(coeff)
    return total


def combine_schur(expansion: Iterable[Tuple[core.Partition, int]], nvars: int) -> XPolynomial:
    """``sum a * schur_poly(mu, M)`` over an expansion."""
    total = XPolynomial.zero(nvars)
    for lam, coeff in expansion:
        total = total + schur_poly(lam, nvars).scale(coeff)
    return total

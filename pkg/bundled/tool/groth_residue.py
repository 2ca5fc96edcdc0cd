# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Kernel terms and the G-, S- and H-operations.

A :class:`KernelTerm` is ``coeff * t^mono * prod (1 - t_v)^dnum[v]`` divided
by ``prod (1 - t_u / t_v)`` over its denominator pairs. Variables live in two
ordered alphabets; every first-alphabet variable precedes every
second-alphabet variable. Laurent expansion is always taken with
``t_u / t_v`` small for ``u < v``.
"""
from __future__ import annotations

import enum
import itertools
import random
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import attrs
import groth_core as core
import groth_symfunc as symfunc
import groth_utils as utils
from groth_errors import ExpansionBudgetExceeded, NegativeDPower, TruncationRequired


class Alphabet(enum.IntEnum):
    FIRST = 0
    SECOND = 1


@attrs.frozen(order=True)
class TVar:
    alphabet: Alphabet = attrs.field(converter=Alphabet)
    index: int = attrs.field(validator=attrs.validators.ge(1))


def first(index: int) -> TVar:
    """Variable ``index`` of the first alphabet (``t`` alone, ``s`` in tensors)."""
    return TVar(Alphabet.FIRST, index)


def second(index: int) -> TVar:
    """Variable ``index`` of the second alphabet (``t`` in tensors)."""
    return TVar(Alphabet.SECOND, index)


VarLike = Union[TVar, int]
Powers = Tuple[Tuple[TVar, int], ...]
Pairs = Tuple[Tuple[TVar, TVar], ...]


def _as_var(var: VarLike) -> TVar:
    return var if isinstance(var, TVar) else first(var)


def _freeze_powers(powers: Union[Mapping, Iterable, None]) -> Powers:
    merged: Dict[TVar, int] = {}
    items = powers.items() if isinstance(powers, Mapping) else (powers or ())
    for var, exp in items:
        var = _as_var(var)
        merged[var] = merged.get(var, 0) + int(exp)
    return tuple(sorted((v, e) for v, e in merged.items() if e != 0))


def _freeze_pairs(pairs: Optional[Iterable]) -> Pairs:
    return tuple(sorted((_as_var(u), _as_var(v)) for u, v in (pairs or ())))


def _check_dnum(_instance, _attribute, dnum: Powers) -> None:
    for var, exp in dnum:
        if exp < 0:
            raise NegativeDPower(f"Negative power {exp} of (1 - {var}).")


def _check_pairs(_instance, _attribute, dden: Pairs) -> None:
    for u, v in dden:
        if not u < v:
            raise ValueError(f"Denominator pair ({u}, {v}) is not ordered.")


@attrs.frozen
class KernelTerm:
    """One symbolic summand of a residue kernel."""

    coeff: int = attrs.field(converter=int)
    mono: Powers = attrs.field(converter=_freeze_powers, factory=tuple)
    dnum: Powers = attrs.field(converter=_freeze_powers, factory=tuple, validator=_check_dnum)
    dden: Pairs = attrs.field(converter=_freeze_pairs, factory=tuple, validator=_check_pairs)

    def __attrs_post_init__(self):
        if self.coeff == 0:
            raise ValueError("KernelTerm coefficient must be nonzero.")
        with_dnum = {var for var, _ in self.dnum}
        for _, v in self.dden:
            if v in with_dnum:
                raise ValueError(f"Expansion variable {v} carries a (1 - t) power.")

    def exponent(self, var: VarLike) -> int:
        return dict(self.mono).get(_as_var(var), 0)

    def dpower(self, var: VarLike) -> int:
        return dict(self.dnum).get(_as_var(var), 0)

    def variables(self) -> List[TVar]:
        found = {v for v, _ in self.mono} | {v for v, _ in self.dnum}
        for u, v in self.dden:
            found.update((u, v))
        return sorted(found)

    def shape(self) -> Tuple[Powers, Powers]:
        """Merge key of a denominator-free term."""
        return (self.mono, self.dnum)

    def with_coeff(self, coeff: int) -> "KernelTerm":
        return attrs.evolve(self, coeff=coeff)


def _merge_terms(terms: Optional[Iterable[KernelTerm]]) -> Tuple[KernelTerm, ...]:
    merged: Dict[Tuple[Powers, Powers], int] = {}
    for term in terms or ():
        if term.dden:
            raise ValueError("DPolynomial terms cannot carry denominator pairs.")
        merged[term.shape()] = merged.get(term.shape(), 0) + term.coeff
    return tuple(
        KernelTerm(c, mono, dnum) for (mono, dnum), c in sorted(merged.items()) if c != 0
    )


@attrs.frozen
class DPolynomial:
    """Signed sum of denominator-free kernel terms, merged and sorted."""

    terms: Tuple[KernelTerm, ...] = attrs.field(converter=_merge_terms, factory=tuple)

    @classmethod
    def monomial(
        cls,
        exps: Sequence[int],
        *,
        coeff: int = 1,
        dnum: Union[Mapping, Iterable, None] = None,
        alphabet: Alphabet = Alphabet.FIRST,
    ) -> "DPolynomial":
        """``coeff * t^exps * prod d^dnum`` on one alphabet (exps is 1-based by position)."""
        mono = {TVar(alphabet, i): e for i, e in enumerate(exps, start=1)}
        return cls([KernelTerm(coeff, mono, dnum)])

    @classmethod
    def one(cls) -> "DPolynomial":
        return cls([KernelTerm(1)])

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "DPolynomial") -> "DPolynomial":
        return DPolynomial(self.terms + other.terms)

    def scale(self, factor: int) -> "DPolynomial":
        if factor == 0:
            return DPolynomial()
        return DPolynomial(t.with_coeff(factor * t.coeff) for t in self.terms)

    def __sub__(self, other: "DPolynomial") -> "DPolynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "DPolynomial") -> "DPolynomial":
        products = []
        for a in self.terms:
            for b in other.terms:
                products.append(
                    KernelTerm(
                        a.coeff * b.coeff,
                        list(a.mono) + list(b.mono),
                        list(a.dnum) + list(b.dnum),
                    )
                )
        return DPolynomial(products)


# **********************************************************
# Debug rendering.
# **********************************************************
def _var_name(var: TVar, two_alphabets: bool) -> str:
    if not two_alphabets:
        return f"t{var.index}"
    return f"{'s' if var.alphabet == Alphabet.FIRST else 't'}{var.index}"


def format_term(term: KernelTerm) -> str:
    """Text dump such as ``3·t1^2 t2^1 d1^1 / d(1,3) d(2,3)``."""
    two = any(v.alphabet == Alphabet.SECOND for v in term.variables())
    mono = " ".join(f"{_var_name(v, two)}^{e}" for v, e in term.mono)
    if two:
        dnum = " ".join(f"d{_var_name(v, two)}^{e}" for v, e in term.dnum)
        dden = " ".join(f"d({_var_name(u, two)},{_var_name(v, two)})" for u, v in term.dden)
    else:
        dnum = " ".join(f"d{v.index}^{e}" for v, e in term.dnum)
        dden = " ".join(f"d({u.index},{v.index})" for u, v in term.dden)
    numerator = " ".join(part for part in (mono, dnum) if part) or "1"
    text = f"{term.coeff}·{numerator}"
    return f"{text} / {dden}" if dden else text


# **********************************************************
# Single-term rewrites.
# **********************************************************
def substitute_one(term: KernelTerm, var: VarLike) -> KernelTerm:
    """Sets ``t_var = 1``: drops its power and turns each pair ``(u, var)`` into ``d_u^-1``."""
    var = _as_var(var)
    if term.exponent(var) > 0:
        raise ValueError(f"{var} still carries a positive power.")
    dnum = dict(term.dnum)
    kept = []
    for u, v in term.dden:
        if v == var:
            dnum[u] = dnum.get(u, 0) - 1
            if dnum[u] < 0:
                raise NegativeDPower(f"Substituting {var} = 1 leaves (1 - {u})^{dnum[u]}.")
        else:
            kept.append((u, v))
    mono = {v: e for v, e in term.mono if v != var}
    return KernelTerm(term.coeff, mono, dnum, kept)


def g_straighten_term(term: KernelTerm, i: int) -> Optional[KernelTerm]:
    """``f t_i^a t_{i+1}^b d_i  ~G  -f t_i^(b-1) t_{i+1}^(a+1) d_i``.

    ``None`` when ``b = a + 1`` (the term is G-equivalent to zero).
    """
    left, right = first(i), first(i + 1)
    if term.dden or term.dpower(left) != 1 or term.dpower(right) != 0:
        raise ValueError(f"Term needs exactly one d_{i} and no d_{i + 1}: {format_term(term)}")
    a, b = term.exponent(left), term.exponent(right)
    if b == a + 1:
        return None
    mono = dict(term.mono)
    mono[left], mono[right] = b - 1, a + 1
    return KernelTerm(-term.coeff, mono, term.dnum)


def s_straighten_term(term: KernelTerm, i: int) -> Optional[KernelTerm]:
    """Schur law inside the S-operation for a factor symmetric in ``t_i, t_{i+1}``."""
    left, right = first(i), first(i + 1)
    if term.dden or term.dpower(left) != term.dpower(right):
        raise ValueError(f"d-powers on t{i}, t{i + 1} must agree: {format_term(term)}")
    a, b = term.exponent(left), term.exponent(right)
    if b == a + 1:
        return None
    mono = dict(term.mono)
    mono[left], mono[right] = b - 1, a + 1
    return KernelTerm(-term.coeff, mono, term.dnum)


# **********************************************************
# Kernel expansion.
# **********************************************************
@attrs.frozen
class TruncationBound:
    """Drop expansion branches whose keys must exceed these limits.

    ``max_row`` bounds the first part of keys read from the source side
    (variables appearing first in a denominator pair); ``max_weight`` bounds
    the total weight.
    """

    max_row: int
    max_weight: Optional[int] = None


_State = Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[Tuple[int, int], ...]]


class _Expander:
    """Slot-indexed working copy of one kernel term."""

    def __init__(self, term: KernelTerm, bound: Optional[TruncationBound], rng):
        self.variables = term.variables()
        slot = {var: pos for pos, var in enumerate(self.variables)}
        self.alphabet = [var.alphabet for var in self.variables]
        self.index = [var.index for var in self.variables]
        mono = [0] * len(self.variables)
        dnum = [0] * len(self.variables)
        for var, exp in term.mono:
            mono[slot[var]] = exp
        for var, exp in term.dnum:
            dnum[slot[var]] = exp
        dden = tuple(sorted((slot[u], slot[v]) for u, v in term.dden))
        self.start: _State = (tuple(mono), tuple(dnum), dden)
        self.sources = sorted({u for u, _ in dden})
        self.bound = bound
        self.rng = rng

    def _trailing(self, v: int, mono, dnum, dden) -> bool:
        for w in range(v + 1, len(self.variables)):
            if self.alphabet[w] != self.alphabet[v]:
                continue
            if mono[w] or dnum[w] or any(w in pair for pair in dden):
                return False
        return True

    def exceeds(self, mono) -> bool:
        if self.bound is None:
            return False
        if self.bound.max_weight is not None and sum(mono) > self.bound.max_weight:
            return True
        row = max((mono[s] - self.index[s] + 1 for s in self.sources), default=0)
        return row > self.bound.max_row

    @staticmethod
    def _shift(mono, u: int, v: int, k: int) -> Tuple[int, ...]:
        moved = list(mono)
        moved[u] += k
        moved[v] -= k
        return tuple(moved)

    @staticmethod
    def _drop(dden, pair) -> Tuple[Tuple[int, int], ...]:
        pos = dden.index(pair)
        return dden[:pos] + dden[pos + 1 :]

    def _substitute(self, mono, dnum, dden, v: int) -> _State:
        mono = list(mono)
        dnum = list(dnum)
        mono[v] = 0
        kept = []
        for u, w in dden:
            if w == v:
                dnum[u] -= 1
                if dnum[u] < 0:
                    raise NegativeDPower(
                        f"Substituting {self.variables[v]} = 1 leaves a negative power "
                        f"of (1 - {self.variables[u]})."
                    )
            else:
                kept.append((u, w))
        return (tuple(mono), tuple(dnum), tuple(kept))

    def step(self, state: _State) -> List[_State]:
        mono, dnum, dden = state
        v = max(w for _, w in dden)
        candidates = sorted({u for u, w in dden if w == v})
        u = self.rng.choice(candidates) if self.rng is not None else candidates[0]
        power = mono[v]
        if power > 0:
            reduced = self._drop(dden, (u, v))
            children = [(self._shift(mono, u, v, k), dnum, reduced) for k in range(power)]
            children.append((self._shift(mono, u, v, power), dnum, dden))
            return children
        if self._trailing(v, mono, dnum, dden):
            return [self._substitute(mono, dnum, dden, v)]
        if self.bound is None:
            raise TruncationRequired(
                f"{self.variables[v]} has power {power} but later variables are still live; "
                "pass a TruncationBound."
            )
        # 1 / (1 - x) = 1 + x / (1 - x)
        return [
            (mono, dnum, self._drop(dden, (u, v))),
            (self._shift(mono, u, v, 1), dnum, dden),
        ]

    def to_term(self, coeff: int, mono, dnum) -> KernelTerm:
        return KernelTerm(
            coeff,
            {self.variables[i]: e for i, e in enumerate(mono) if e},
            {self.variables[i]: e for i, e in enumerate(dnum) if e},
        )


def expand_kernel(
    term: KernelTerm,
    *,
    bound: Optional[TruncationBound] = None,
    budget: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> DPolynomial:
    """Expands every denominator pair of ``term`` into a DPolynomial.

    The greatest expansion variable ``v`` is handled first, pairing it with
    the least ``u`` (or a random admissible ``u`` when ``rng`` is given).
    A positive power ``E`` of ``t_v`` is split off as
    ``sum_{k<E} (t_u/t_v)^k + (t_u/t_v)^E / (1 - t_u/t_v)``; a non-positive
    power is removed by ``t_v = 1`` when nothing later in the alphabet is
    live. Otherwise the tail is infinite and ``bound`` must be given.
    """
    if not term.dden:
        return DPolynomial([term])
    limit = budget if budget is not None else utils.get_setting("expansionBudget")
    expander = _Expander(term, bound, rng)
    pending: Dict[_State, int] = {expander.start: term.coeff}
    finished: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
    steps = 0
    while pending:
        following: Dict[_State, int] = {}
        for state, coeff in pending.items():
            steps += 1
            if steps > limit:
                raise ExpansionBudgetExceeded(
                    f"Expanding {format_term(term)} exceeded {limit} steps."
                )
            mono, dnum, dden = state
            if not dden:
                finished[(mono, dnum)] = finished.get((mono, dnum), 0) + coeff
                continue
            for child in expander.step(state):
                if expander.exceeds(child[0]):
                    continue
                following[child] = following.get(child, 0) + coeff
        pending = {s: c for s, c in following.items() if c != 0}
    utils.log_to_output(f"Expanded {format_term(term)} in {steps} steps.")
    return DPolynomial(
        expander.to_term(c, mono, dnum) for (mono, dnum), c in finished.items() if c != 0
    )


# **********************************************************
# Operations on DPolynomials.
# **********************************************************
def _binomial_monomials(term: KernelTerm) -> Iterable[Tuple[int, Dict[TVar, int]]]:
    """Expands ``prod (1 - t_v)^a`` into signed monomials times ``t^mono``."""
    base = dict(term.mono)
    factors = [
        [(var, k, (-1) ** k * comb(power, k)) for k in range(power + 1)]
        for var, power in term.dnum
    ]
    for choice in itertools.product(*factors):
        coeff = term.coeff
        mono = dict(base)
        for var, k, weight in choice:
            coeff *= weight
            if k:
                mono[var] = mono.get(var, 0) + k
        yield coeff, mono


def _vector(mono: Mapping[TVar, int], alphabet: Alphabet) -> Tuple[int, ...]:
    size = max((v.index for v, e in mono.items() if v.alphabet == alphabet and e), default=0)
    return tuple(mono.get(TVar(alphabet, i), 0) for i in range(1, size + 1))


def _single_alphabet_vectors(poly: DPolynomial) -> Dict[Tuple[int, ...], int]:
    vectors: Dict[Tuple[int, ...], int] = {}
    for term in poly:
        if any(v.alphabet != Alphabet.FIRST for v in term.variables()):
            raise ValueError(f"Expected first-alphabet variables only: {format_term(term)}")
        for coeff, mono in _binomial_monomials(term):
            key = _vector(mono, Alphabet.FIRST)
            vectors[key] = vectors.get(key, 0) + coeff
    return {k: c for k, c in vectors.items() if c != 0}


def g_operation(poly: DPolynomial) -> core.GExpansion:
    """Linear extension of ``t^I -> G_I``."""
    result: Dict[Tuple[int, ...], int] = {}
    for vector, coeff in _single_alphabet_vectors(poly).items():
        for key, delta in core.straighten_groth_items(vector).items():
            result[key] = result.get(key, 0) + coeff * delta
    return core.GExpansion(result)


def g_operation_tensor(poly: DPolynomial) -> core.TensorGExpansion:
    """Linear extension of ``t^I s^J -> G_I ⊗ G_J`` (second alphabet on the left)."""
    vectors: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
    for term in poly:
        for coeff, mono in _binomial_monomials(term):
            key = (_vector(mono, Alphabet.SECOND), _vector(mono, Alphabet.FIRST))
            vectors[key] = vectors.get(key, 0) + coeff
    result: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
    for (left, right), coeff in vectors.items():
        if coeff == 0:
            continue
        right_terms = core.straighten_groth_items(right)
        for lkey, lcoeff in core.straighten_groth_items(left).items():
            for rkey, rcoeff in right_terms.items():
                pair = (lkey, rkey)
                result[pair] = result.get(pair, 0) + coeff * lcoeff * rcoeff
    return core.TensorGExpansion(result)


def s_operation(poly: DPolynomial) -> core.SExpansion:
    """Linear extension of ``t^I -> s_I``."""
    result: Dict[core.Partition, int] = {}
    for vector, coeff in _single_alphabet_vectors(poly).items():
        straight = core.straighten_schur(vector)
        if straight is None:
            continue
        sign, lam = straight
        result[lam] = result.get(lam, 0) + sign * coeff
    return core.SExpansion(result)


def h_operation(poly: DPolynomial, nvars: int) -> symfunc.XPolynomial:
    """Linear extension of ``t^I -> prod_i h_{I_i}(x_1..x_M)``."""
    total = symfunc.XPolynomial.zero(nvars)
    for vector, coeff in _single_alphabet_vectors(poly).items():
        product = symfunc.XPolynomial.constant(coeff, nvars)
        for part in vector:
            product = product * symfunc.h_poly(part, nvars)
            if product.is_zero():
                break
        total = total + product
    return total


def vandermonde_factor(n: int) -> DPolynomial:
    """``prod_{i<j} (1 - t_i / t_j)`` as a Laurent DPolynomial."""
    if n < 1:
        raise ValueError(f"vandermonde_factor needs n >= 1, got {n}.")
    result = DPolynomial.one()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            factor = DPolynomial(
                [KernelTerm(1), KernelTerm(-1, {first(i): 1, first(j): -1})]
            )
            result = result * factor
    return result

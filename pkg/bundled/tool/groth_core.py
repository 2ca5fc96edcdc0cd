# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Integer sequences, partitions, basis expansions and straightening.

Fake indices are normalised to the partition basis:

* Schur: ``s_I`` is ``±s_nu`` or zero, found by sorting ``I_i - i``.
* Grothendieck: ``G_I`` is an integer combination of ``G_lambda``, found by
  rewriting at the leftmost ascent with

  - ``G_{..,a,b,..} = G_{..,a+1,b,..} + G_{..,b,a+1,..} - G_{..,b-1,a+1,..}``
  - ``G_{..,a,a+1,..} = G_{..,a+1,a+1,..}``
  - ``G_{I,L} = G_I`` for a non-positive tail ``L``.
"""
from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import attrs
import groth_utils as utils
from groth_errors import RecursionBudgetExceeded


def _int_tuple(values: Iterable[int]) -> Tuple[int, ...]:
    return tuple(int(v) for v in values)


# **********************************************************
# Integer sequences and partitions.
# **********************************************************
@attrs.frozen
class IntSeq:
    """Finite integer sequence; entries may be negative."""

    parts: Tuple[int, ...] = attrs.field(converter=_int_tuple, factory=tuple)

    def length(self) -> int:
        """1-based position of the last nonzero entry."""
        for pos in range(len(self.parts), 0, -1):
            if self.parts[pos - 1] != 0:
                return pos
        return 0

    def weight(self) -> int:
        return sum(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]


def _check_partition(_instance, _attribute, parts: Tuple[int, ...]) -> None:
    if any(p <= 0 for p in parts):
        raise ValueError(f"Partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"Partition parts must be weakly decreasing: {parts}")


@attrs.frozen
class Partition:
    """Weakly decreasing positive parts; trailing zeros are never stored."""

    parts: Tuple[int, ...] = attrs.field(
        converter=_int_tuple, validator=_check_partition, factory=tuple
    )

    @classmethod
    def of(cls, values: Union["Partition", Iterable[int]]) -> "Partition":
        """Builds a partition, dropping trailing zeros."""
        if isinstance(values, Partition):
            return values
        parts = list(_int_tuple(values))
        while parts and parts[-1] == 0:
            parts.pop()
        return cls(parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """1-based part, zero past the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def padded(self, size: int) -> Tuple[int, ...]:
        return self.parts + (0,) * (size - len(self.parts))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Ascending weight, then descending lexicographic."""
        return (self.weight, tuple(-p for p in self.parts))

    def render(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]


EMPTY = Partition()

SeqLike = Union[IntSeq, Partition, Sequence[int]]


def as_tuple(seq: SeqLike) -> Tuple[int, ...]:
    """Plain tuple view of any sequence-like index."""
    if isinstance(seq, (IntSeq, Partition)):
        return seq.parts
    return _int_tuple(seq)


def contains(lam: Union[Partition, Sequence[int]], mu: Union[Partition, Sequence[int]]) -> bool:
    """True iff ``mu`` fits inside ``lam``."""
    lam = Partition.of(lam)
    mu = Partition.of(mu)
    if len(mu) > len(lam):
        return False
    return all(m <= lam.parts[i] for i, m in enumerate(mu.parts))


def strip_trailing(seq: SeqLike) -> Tuple[int, ...]:
    """Removes the maximal non-positive suffix."""
    parts = list(as_tuple(seq))
    while parts and parts[-1] <= 0:
        parts.pop()
    return tuple(parts)


def first_row_bound(seq: SeqLike) -> int:
    """Lower bound on the first part of every key of ``straighten_groth(seq)``.

    ``max_j (I_j - j + 1)`` never drops under any of the three rewrite rules
    and equals ``lambda_1`` on a partition.
    """
    best = 0
    for j, value in enumerate(as_tuple(seq), start=1):
        best = max(best, value - j + 1)
    return best


def partitions_of(
    n: int, max_length: Optional[int] = None, max_part: Optional[int] = None
) -> Iterator[Partition]:
    """Partitions of ``n`` in descending lexicographic order."""
    if n < 0:
        return
    if max_length is None:
        max_length = n
    if max_part is None:
        max_part = n

    def _walk(remaining: int, cap: int, slots: int, prefix: List[int]):
        if remaining == 0:
            yield Partition(prefix)
            return
        if slots == 0:
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            yield from _walk(remaining - part, part, slots - 1, prefix)
            prefix.pop()

    yield from _walk(n, max_part, max_length, [])


def partitions_in_box(rows: int, cols: int) -> List[Partition]:
    """Every partition with at most ``rows`` parts, each at most ``cols``."""
    found = []
    for n in range(rows * cols + 1):
        found.extend(partitions_of(n, max_length=rows, max_part=cols))
    return found


# **********************************************************
# Basis expansions.
# **********************************************************
def _partition_terms(terms: Union[Mapping, Iterable, None]) -> Dict[Partition, int]:
    cleaned: Dict[Partition, int] = {}
    items = terms.items() if isinstance(terms, Mapping) else (terms or ())
    for key, coeff in items:
        key = Partition.of(key)
        cleaned[key] = cleaned.get(key, 0) + int(coeff)
    return {k: c for k, c in cleaned.items() if c != 0}


def _tensor_terms(terms: Union[Mapping, Iterable, None]) -> Dict[Tuple[Partition, ...], int]:
    cleaned: Dict[Tuple[Partition, ...], int] = {}
    items = terms.items() if isinstance(terms, Mapping) else (terms or ())
    for key, coeff in items:
        key = tuple(Partition.of(k) for k in key)
        cleaned[key] = cleaned.get(key, 0) + int(coeff)
    return {k: c for k, c in cleaned.items() if c != 0}


def _signed_join(pieces: List[Tuple[int, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for pos, (coeff, label) in enumerate(pieces):
        magnitude = abs(coeff)
        body = label if magnitude == 1 else f"{magnitude}*{label}"
        if pos == 0:
            out.append(body if coeff > 0 else f"-{body}")
        else:
            out.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(out)


def _value_hash(self) -> int:
    return hash((type(self).__name__, frozenset(self.terms.items())))


class _LinearCombination:
    """Shared behaviour of the expansion classes; ``terms`` is a dict."""

    terms: dict
    SYMBOL = "G"

    @staticmethod
    def _key(key):
        return Partition.of(key)

    @staticmethod
    def _sort_key(key):
        return key.sort_key()

    def items(self) -> List[Tuple[object, int]]:
        """Terms in canonical order."""
        return sorted(self.terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def keys(self) -> List[object]:
        return [k for k, _ in self.items()]

    def coeff(self, key) -> int:
        return self.terms.get(self._key(key), 0)

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other):
        merged = dict(self.terms)
        for key, coeff in other.terms.items():
            merged[key] = merged.get(key, 0) + coeff
        return type(self)(merged)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor: int):
        return type(self)({k: factor * c for k, c in self.terms.items()})

    def _label(self, key) -> str:
        return f"{self.SYMBOL}[{key.render()}]"

    def render(self) -> str:
        """Signed text sum such as ``G[2] + G[1,1] - G[2,1]``."""
        return _signed_join([(c, self._label(k)) for k, c in self.items()])

    def __str__(self) -> str:
        return self.render()

    def to_list(self) -> List[dict]:
        return [{"partition": list(k.parts), "coeff": c} for k, c in self.items()]


@attrs.frozen
class GExpansion(_LinearCombination):
    """Integer combination of stable Grothendieck basis elements."""

    terms: Dict[Partition, int] = attrs.field(converter=_partition_terms, factory=dict)
    SYMBOL = "G"
    __hash__ = _value_hash


@attrs.frozen
class SExpansion(_LinearCombination):
    """Integer combination of Schur basis elements."""

    terms: Dict[Partition, int] = attrs.field(converter=_partition_terms, factory=dict)
    SYMBOL = "s"
    __hash__ = _value_hash


@attrs.frozen
class TensorGExpansion(_LinearCombination):
    """Combination of ``G_lambda ⊗ G_mu`` (or longer tensor words)."""

    terms: Dict[Tuple[Partition, ...], int] = attrs.field(
        converter=_tensor_terms, factory=dict
    )
    __hash__ = _value_hash

    @staticmethod
    def _key(key):
        return tuple(Partition.of(k) for k in key)

    @staticmethod
    def _sort_key(key):
        return (sum(k.weight for k in key), tuple(k.sort_key() for k in key))

    def _label(self, key) -> str:
        return "⊗".join(f"G[{k.render()}]" for k in key)

    def swapped(self) -> "TensorGExpansion":
        """Reverses every tensor word."""
        return TensorGExpansion({tuple(reversed(k)): c for k, c in self.terms.items()})

    def to_list(self) -> List[dict]:
        rows = []
        for key, coeff in self.items():
            if len(key) == 2:
                rows.append(
                    {"left": list(key[0].parts), "right": list(key[1].parts), "coeff": coeff}
                )
            else:
                rows.append({"factors": [list(k.parts) for k in key], "coeff": coeff})
        return rows


# **********************************************************
# Schur straightening.
# **********************************************************
def _permutation_sign(order: Sequence[int]) -> int:
    inversions = sum(
        1 for i in range(len(order)) for j in range(i + 1, len(order)) if order[i] > order[j]
    )
    return -1 if inversions % 2 else 1


def straighten_schur(seq: SeqLike) -> Optional[Tuple[int, Partition]]:
    """Returns ``(sign, nu)`` with ``s_I = sign * s_nu``, or ``None`` if ``s_I = 0``."""
    parts = as_tuple(seq)
    shifted = [value - i for i, value in enumerate(parts, start=1)]
    if len(set(shifted)) < len(shifted):
        return None
    order = sorted(range(len(shifted)), key=lambda k: -shifted[k])
    result = [shifted[k] + pos for pos, k in enumerate(order, start=1)]
    if any(value < 0 for value in result):
        return None
    return _permutation_sign(order), Partition.of(result)


# **********************************************************
# Grothendieck straightening.
# **********************************************************
_STRAIGHTEN_MEMO: Dict[Tuple[int, ...], Dict[Tuple[int, ...], int]] = {}


def clear_straighten_cache() -> None:
    with utils.MEMO_LOCK:
        _STRAIGHTEN_MEMO.clear()


def straighten_cache_size() -> int:
    with utils.MEMO_LOCK:
        return len(_STRAIGHTEN_MEMO)


def _rewrite(seq: Tuple[int, ...]) -> Optional[List[Tuple[int, Tuple[int, ...]]]]:
    """One rewrite at the leftmost ascent; ``None`` when ``seq`` is a partition."""
    for i in range(len(seq) - 1):
        a, b = seq[i], seq[i + 1]
        if a >= b:
            continue
        head, tail = seq[:i], seq[i + 2 :]
        if b == a + 1:
            return [(1, strip_trailing(head + (b, b) + tail))]
        return [
            (1, strip_trailing(head + (a + 1, b) + tail)),
            (1, strip_trailing(head + (b, a + 1) + tail)),
            (-1, strip_trailing(head + (b - 1, a + 1) + tail)),
        ]
    return None


def straighten_groth_items(
    seq: SeqLike, *, budget: Optional[int] = None
) -> Mapping[Tuple[int, ...], int]:
    """Raw ``{partition tuple: coefficient}`` form of :func:`straighten_groth`.

    The returned mapping is shared with the memo and must not be mutated.
    """
    root = strip_trailing(seq)
    cached = _STRAIGHTEN_MEMO.get(root)
    if cached is not None:
        return cached

    limit = budget if budget is not None else utils.get_setting("straightenBudget")
    steps = 0
    stack = [root]
    while stack:
        current = stack[-1]
        if current in _STRAIGHTEN_MEMO:
            stack.pop()
            continue
        children = _rewrite(current)
        if children is None:
            with utils.MEMO_LOCK:
                _STRAIGHTEN_MEMO[current] = {current: 1}
            stack.pop()
            continue
        pending = [child for _, child in children if child not in _STRAIGHTEN_MEMO]
        if pending:
            steps += 1
            if steps > limit:
                raise RecursionBudgetExceeded(
                    f"Straightening {root} exceeded {limit} rewrite steps."
                )
            stack.extend(pending)
            continue
        combined: Dict[Tuple[int, ...], int] = {}
        for sign, child in children:
            for key, coeff in _STRAIGHTEN_MEMO[child].items():
                combined[key] = combined.get(key, 0) + sign * coeff
        with utils.MEMO_LOCK:
            _STRAIGHTEN_MEMO[current] = {k: c for k, c in combined.items() if c != 0}
        stack.pop()
    return _STRAIGHTEN_MEMO[root]


def straighten_groth(seq: SeqLike, *, budget: Optional[int] = None) -> GExpansion:
    """Expands ``G_I`` in the partition basis."""
    return GExpansion(straighten_groth_items(seq, budget=budget))

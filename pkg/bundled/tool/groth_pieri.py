# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Alternating-sign Pieri rule for ``G_lambda * G_n``.

The product kernel with a single column expands into one summand per lattice
point ``I`` of the simplex ``{I >= 0, |I| <= n}``:

    t^(lambda + I, n - |I|) * prod_{i in dset} (1 - t_i)

Canceling segments are then removed facet by facet, for ``r = p`` down to
``1``, until every surviving summand is good, i.e. its binomial expansion
only ever produces partition exponents.
"""
from __future__ import annotations

import enum
import itertools
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import attrs
import groth_core as core
import groth_residue as residue
import groth_utils as utils
from groth_errors import SegmentIntegrityError

Point = Tuple[int, ...]


def _frozen_ints(values: Iterable[int]) -> FrozenSet[int]:
    return frozenset(int(v) for v in values)


@attrs.frozen
class PieriTerm:
    """One summand attached to a lattice point of the simplex."""

    point: Point = attrs.field(converter=tuple)
    mono: Tuple[int, ...] = attrs.field(converter=tuple)
    dset: FrozenSet[int] = attrs.field(converter=_frozen_ints)

    def to_kernel_term(self) -> residue.KernelTerm:
        return residue.KernelTerm(
            1,
            {i: e for i, e in enumerate(self.mono, start=1)},
            {i: 1 for i in self.dset},
        )

    def render(self) -> str:
        """Compact text such as ``t1^3 t2^2 t3^1 d1 d2``."""
        pieces = [f"t{i}^{e}" for i, e in enumerate(self.mono, start=1) if e]
        pieces.extend(f"d{i}" for i in sorted(self.dset))
        return " ".join(pieces) or "1"


class SegmentKind(enum.Enum):
    A = "A"
    B = "B"


# **********************************************************
# Fresh summands.
# **********************************************************
def simplex_points(p: int, n: int) -> List[Point]:
    """Lattice points ``I >= 0`` with ``|I| <= n`` in lexicographic order."""
    if p < 0 or n < 0:
        raise ValueError(f"simplex_points needs p, n >= 0, got p={p}, n={n}.")
    return [point for point in itertools.product(range(n + 1), repeat=p) if sum(point) <= n]


def _fresh_dset(point: Point, n: int) -> FrozenSet[int]:
    p = len(point)
    if sum(point) < n:
        return frozenset(range(1, p + 1))
    r = max(i for i, value in enumerate(point, start=1) if value)
    return frozenset(range(1, r))


def pieri_terms(lam, n: int) -> List[PieriTerm]:
    """One fresh summand per lattice point of the simplex."""
    lam = core.Partition.of(lam)
    if not lam.parts:
        raise ValueError("pieri_terms needs a nonempty partition.")
    if n < 1:
        raise ValueError(f"pieri_terms needs n >= 1, got {n}.")
    terms = []
    for point in simplex_points(len(lam), n):
        mono = tuple(part + extra for part, extra in zip(lam.parts, point)) + (n - sum(point),)
        terms.append(PieriTerm(point, mono, _fresh_dset(point, n)))
    return terms


def is_good(term: PieriTerm, j: int) -> bool:
    """``(j, j+1)``-goodness: exponents weakly drop, strictly when ``d_{j+1}`` is present."""
    left, right = term.mono[j - 1], term.mono[j]
    if j + 1 in term.dset:
        return left > right
    return left >= right


def is_good_term(term: PieriTerm) -> bool:
    return all(is_good(term, j) for j in range(1, len(term.point) + 1))


def pieri_dpolynomial(terms: Iterable[PieriTerm]) -> residue.DPolynomial:
    return residue.DPolynomial(term.to_kernel_term() for term in terms)


# **********************************************************
# Canceling segments.
# **********************************************************
def segment_kind(term: PieriTerm, r: int, n: int) -> SegmentKind:
    """Type A on the last facet, or when the start sits on ``|I| = n`` with nothing past ``r+1``."""
    p = len(term.point)
    if r == p:
        return SegmentKind.A
    if sum(term.point) == n and not any(term.point[r + 1 :]):
        return SegmentKind.A
    return SegmentKind.B


def _step(point: Point, r: int, j: int) -> Point:
    moved = list(point)
    moved[r - 1] += j
    if r < len(point):
        moved[r] -= j
    return tuple(moved)


def segment_members(term: PieriTerm, r: int, kind: SegmentKind) -> List[Point]:
    """Lattice points a segment started at ``term`` removes.

    Type A removes the ``delta`` points before the endpoint; type B also
    takes the endpoint, which is then replaced by the survivor.
    """
    delta = term.mono[r] - term.mono[r - 1]
    last = delta if kind is SegmentKind.B else delta - 1
    return [_step(term.point, r, j) for j in range(last + 1)]


def check_segment(members: List[PieriTerm], survivor: Optional[PieriTerm]) -> None:
    """Confirms the members and the survivor have the same G-image."""
    lhs = residue.g_operation(pieri_dpolynomial(members))
    rhs = residue.g_operation(pieri_dpolynomial([survivor] if survivor else []))
    if lhs != rhs:
        points = [m.point for m in members]
        raise SegmentIntegrityError(
            f"Segment through {points} gives {lhs.render()}, expected {rhs.render()}."
        )


def _collect(
    grid: Dict[Point, PieriTerm], points: List[Point], r: int, kind: SegmentKind
) -> List[PieriTerm]:
    members = []
    for point in points:
        member = grid.get(point)
        if member is None:
            raise SegmentIntegrityError(
                f"Segment at r={r} needs {point}, which is missing or already consumed."
            )
        members.append(member)
    dsets = {m.dset for m in members}
    if len(dsets) != 1:
        raise SegmentIntegrityError(f"Segment at r={r} mixes d-factors: {sorted(map(sorted, dsets))}.")
    dset = members[0].dset
    if r not in dset or ((r + 1 in dset) != (kind is SegmentKind.B)):
        raise SegmentIntegrityError(
            f"Type {kind.value} segment at r={r} cannot carry d-factors {sorted(dset)}."
        )
    return members


def cancel_segments(
    terms: List[PieriTerm], lam, n: int, *, trace: bool = False, check: bool = False
) -> List[PieriTerm]:
    """Reduces fresh summands to good ones with the same G-image.

    ``check`` re-derives every segment through the G-operation and raises
    :class:`SegmentIntegrityError` on a mismatch.
    """
    lam = core.Partition.of(lam)
    p = len(lam)
    grid: Dict[Point, PieriTerm] = {term.point: term for term in terms}
    if trace:
        utils.log_always(f"Pieri summands for G[{lam.render()}] * G[{n}]:")
        utils.log_always(render_grid(grid.values(), lam, n))

    for r in range(p, 0, -1):
        facet = sorted(point for point in grid if point[r - 1] == 0)
        for start in facet:
            term = grid.get(start)
            if term is None or is_good(term, r):
                continue
            kind = segment_kind(term, r, n)
            members = _collect(grid, segment_members(term, r, kind), r, kind)
            survivor = None
            if kind is SegmentKind.B:
                endpoint = members[-1]
                survivor = attrs.evolve(endpoint, dset=endpoint.dset - {r + 1})
            if check:
                check_segment(members, survivor)
            for member in members:
                del grid[member.point]
            if survivor is not None:
                grid[survivor.point] = survivor
            utils.log_to_output(
                f"r={r}: type {kind.value} segment from {start} removed {len(members)} summand(s)."
            )
        if trace:
            utils.log_always(f"After the pass at r={r}:")
            utils.log_always(render_grid(grid.values(), lam, n))

    return [grid[point] for point in sorted(grid)]


def pieri_expand(lam, n: int, *, trace: bool = False, check: bool = False) -> core.GExpansion:
    """``G_lambda * G_n`` with alternating signs in the weight."""
    lam = core.Partition.of(lam)
    if n < 1:
        raise ValueError(f"pieri_expand needs n >= 1, got {n}.")
    if not lam.parts:
        return core.GExpansion({(n,): 1})
    good = cancel_segments(pieri_terms(lam, n), lam, n, trace=trace, check=check)
    return residue.g_operation(pieri_dpolynomial(good))


# **********************************************************
# Trace rendering.
# **********************************************************
def render_grid(terms: Iterable[PieriTerm], lam, n: int) -> str:
    """Simplex picture for two-row ``lambda``, one line per point otherwise."""
    lam = core.Partition.of(lam)
    by_point = {term.point: term for term in terms}
    if len(lam) != 2:
        lines = [f"{point}: {by_point[point].render()}" for point in sorted(by_point)]
        return "\n".join(lines) if lines else "(no summands)"

    width = max([len(t.render()) for t in by_point.values()] + [len(f"X1={n}")])
    label = len(f"X2={n}")
    lines = []
    for row in range(n, -1, -1):
        cells = [
            by_point[(col, row)].render() if (col, row) in by_point else "" for col in range(n + 1)
        ]
        while cells and not cells[-1]:
            cells.pop()
        row_text = " | ".join(cell.ljust(width) for cell in cells).rstrip()
        lines.append(f"{f'X2={row}'.ljust(label)} | {row_text}".rstrip())
    footer = [f"X1={col}".ljust(width) for col in range(n + 1)]
    lines.append(" " * label + " | " + " | ".join(footer).rstrip())
    return "\n".join(lines)

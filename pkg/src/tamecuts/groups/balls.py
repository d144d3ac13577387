"""Word-metric balls by breadth-first search over the Cayley graph.

Balls are grown level by level from the identity using the family's standard
symmetric generating set, deduplicating on canonical forms, so recorded
lengths are exact word lengths.  Growth state is memoized per group so that
repeated queries (and queries at increasing radii) reuse earlier levels; a
``Ball`` is a cheap immutable view onto a prefix of that shared state.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator

from ..errors import BudgetExceededError, ElementNotFoundError, InputError
from .elements import Element, coset_key, generators, identity, multiply, subgroup_membership
from .spec import GroupSpec

DEFAULT_BUDGET = 5_000_000


class _BallGrower:
    """Append-only BFS state for one group; safe to snapshot while growing."""

    def __init__(self, group: GroupSpec):
        self.group = group
        self.gens = tuple(elem for _, elem in generators(group))
        e = identity(group)
        self.elements: list[Element] = [e]
        self.length_of: dict[Element, int] = {e: 0}
        self.level_end: list[int] = [1]  # level_end[r] = #elements of length <= r
        self.lock = threading.Lock()

    @property
    def radius(self) -> int:
        return len(self.level_end) - 1

    def grow_to(self, n: int, budget: int = DEFAULT_BUDGET) -> None:
        with self.lock:
            while self.radius < n:
                self._grow_level(budget)

    def _grow_level(self, budget: int) -> None:
        start = self.level_end[-2] if len(self.level_end) >= 2 else 0
        frontier = self.elements[start:self.level_end[-1]]
        fresh: list[Element] = []
        base = len(self.elements)
        try:
            for x in frontier:
                for g in self.gens:
                    y = multiply(x, g)
                    if y not in self.length_of:
                        if base + len(fresh) >= budget:  # fail before memory does
                            raise BudgetExceededError(
                                f"ball budget {budget} exceeded at radius "
                                f"{self.radius + 1} of {self.group.label()}",
                                radius_reached=self.radius)
                        self.length_of[y] = self.radius + 1
                        fresh.append(y)
        except BudgetExceededError:
            for y in fresh:
                del self.length_of[y]
            raise
        self.elements.extend(fresh)
        self.level_end.append(len(self.elements))

    def seed_from_cache(self, lengths: list[int], elements: list[Element]) -> None:
        """Replace level-0-only state with cached BFS output (discovery order)."""
        if self.radius != 0 or len(elements) < 1:
            return
        counts = [0] * (lengths[-1] + 1)
        for ln in lengths:
            counts[ln] += 1
        level_end, total = [], 0
        for c in counts:
            total += c
            level_end.append(total)
        self.elements = list(elements)
        self.length_of = {x: ln for x, ln in zip(elements, lengths)}
        self.level_end = level_end


_growers: dict[GroupSpec, _BallGrower] = {}
_growers_lock = threading.Lock()


def _get_grower(group: GroupSpec) -> _BallGrower:
    with _growers_lock:
        grower = _growers.get(group)
        if grower is None:
            grower = _BallGrower(group)
            _growers[group] = grower
        return grower


@dataclass(frozen=True, eq=False)
class Ball:
    """The set {x : word length <= radius}, with exact per-element lengths."""

    group: GroupSpec
    radius: int
    _grower: _BallGrower = field(repr=False)

    def __len__(self) -> int:
        return self._grower.level_end[self.radius]

    def __contains__(self, x: Element) -> bool:
        ln = self._grower.length_of.get(x)
        return ln is not None and ln <= self.radius

    def __iter__(self) -> Iterator[Element]:
        return islice(iter(self._grower.elements), len(self))

    def length(self, x: Element) -> int:
        ln = self._grower.length_of.get(x)
        if ln is None or ln > self.radius:
            raise ElementNotFoundError(
                f"element not in ball of radius {self.radius}",
                radius_searched=self.radius)
        return ln

    def boundary(self) -> tuple[Element, ...]:
        """Elements of word length exactly ``radius``."""
        start = self._grower.level_end[self.radius - 1] if self.radius else 0
        return tuple(self._grower.elements[start:self._grower.level_end[self.radius]])

    def level_sizes(self) -> tuple[int, ...]:
        """Cumulative ball sizes |B_0|, |B_1|, ..., |B_radius|."""
        return tuple(self._grower.level_end[: self.radius + 1])

    def items(self) -> Iterator[tuple[Element, int]]:
        for x in self:
            yield x, self._grower.length_of[x]


def ball(group: GroupSpec, n: int, cache=None, budget: int = DEFAULT_BUDGET) -> Ball:
    """Ball of radius ``n``; reads/writes the optional persistent cache."""
    if n < 0:
        raise InputError("radius must be nonnegative")
    grower = _get_grower(group)
    if cache is not None and grower.radius < n:
        loaded = cache.load_best(group, n)
        if loaded is not None:
            lengths, elements = loaded
            with grower.lock:
                grower.seed_from_cache(lengths, elements)
    grower.grow_to(n, budget)
    out = Ball(group, n, grower)
    if cache is not None:
        cache.store(group, n, out)
    return out


def word_length(x: Element, group: GroupSpec | None = None, cache=None,
                budget: int = DEFAULT_BUDGET) -> int:
    """Exact word length of ``x``, searching outward as needed."""
    group = group or x.group
    if group != x.group:
        raise InputError("element does not belong to the given group")
    grower = _get_grower(group)
    ln = grower.length_of.get(x)
    if ln is not None:
        return ln
    while True:
        try:
            grower.grow_to(grower.radius + 1, budget)
        except BudgetExceededError as exc:
            raise ElementNotFoundError(
                f"element not found within ball budget {budget} "
                f"(radius searched {exc.radius_reached})",
                radius_searched=exc.radius_reached) from exc
        ln = grower.length_of.get(x)
        if ln is not None:
            return ln


@dataclass(frozen=True)
class CosetSection:
    """Minimal-length coset representatives for the designated subgroup H.

    One representative per coset of H meeting the ball of radius ``radius``;
    each has the minimum word length over its entire coset, ties broken by
    BFS discovery order.
    """

    group: GroupSpec
    radius: int
    representatives: tuple[Element, ...]
    subgroup: str = "kernel"

    def __len__(self) -> int:
        return len(self.representatives)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.representatives)


def coset_section(group: GroupSpec, n: int, cache=None,
                  budget: int = DEFAULT_BUDGET) -> CosetSection:
    bn = ball(group, n, cache=cache, budget=budget)
    seen: set = set()
    reps: list[Element] = []
    for x in bn:
        key = coset_key(x)
        if key not in seen:
            seen.add(key)
            reps.append(x)
    return CosetSection(group, n, tuple(reps))


def subgroup_ball(bn: Ball) -> list[Element]:
    """Members of the ball lying in the designated subgroup H."""
    return [x for x in bn if subgroup_membership(x)]

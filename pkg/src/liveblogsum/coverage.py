"""Exact solver for weighted maximum coverage under a knapsack word budget.

The 0/1 program: pick items (sentences) so that the total weight of
covered concepts is maximal while the summed item lengths stay within
the budget. Solved by depth-first branch and bound: a greedy warm start
provides the incumbent, and each node is bounded by the covered weight
plus a fractional-knapsack relaxation of the remaining concepts' weight
ordered by weight-per-word density. Among equal-objective optima the
lexicographically smallest id set wins, which makes solutions unique
and runs reproducible.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

_EPS = 1e-9


@dataclass(frozen=True)
class CoverageInstance:
    """One max-coverage problem: concept weights, item lengths, incidence, budget."""

    n_items: int
    n_concepts: int
    weights: dict[str, float]
    lengths: tuple[int, ...]
    incidence: tuple[frozenset[str], ...]
    budget: int

    @classmethod
    def make(cls, weights: dict[str, float], lengths, incidence, budget: int) -> "CoverageInstance":
        lengths = tuple(int(x) for x in lengths)
        incidence = tuple(frozenset(c) for c in incidence)
        if len(lengths) != len(incidence):
            raise ValueError("lengths and incidence must cover the same items")
        if any(l < 1 for l in lengths):
            raise ValueError("item lengths must be >= 1")
        if budget < 0:
            raise ValueError("budget must be non-negative")
        for concepts in incidence:
            missing = concepts - weights.keys()
            if missing:
                raise ValueError(f"incidence references unweighted concepts: {sorted(missing)[:3]}")
        if any(w <= 0 for w in weights.values()):
            raise ValueError("concept weights must be positive")
        return cls(n_items=len(lengths), n_concepts=len(weights),
                   weights=dict(weights), lengths=lengths, incidence=incidence,
                   budget=int(budget))

    def to_json(self) -> str:
        payload = {
            "budget": self.budget,
            "lengths": list(self.lengths),
            "weights": {k: self.weights[k] for k in sorted(self.weights)},
            "incidence": [sorted(c) for c in self.incidence],
        }
        return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CoverageInstance":
        payload = json.loads(text)
        return cls.make(weights=payload["weights"], lengths=payload["lengths"],
                        incidence=payload["incidence"], budget=payload["budget"])


@dataclass(frozen=True)
class Solution:
    selected: frozenset[int]
    objective: float
    proven_optimal: bool
    nodes_explored: int


@dataclass
class SolveLimits:
    max_nodes: int = 10_000_000
    time_seconds: float = 60.0


class _Masks:
    """Bitmask view of an instance: concept j is bit j."""

    def __init__(self, instance: CoverageInstance):
        concept_ids = {c: i for i, c in enumerate(sorted(instance.weights))}
        self.weight_by_bit = [0.0] * len(concept_ids)
        for concept, weight in instance.weights.items():
            self.weight_by_bit[concept_ids[concept]] = float(weight)
        self.item_masks = []
        for concepts in instance.incidence:
            mask = 0
            for concept in concepts:
                mask |= 1 << concept_ids[concept]
            self.item_masks.append(mask)
        self.lengths = instance.lengths
        self.budget = instance.budget

    def weight_of(self, mask: int) -> float:
        total = 0.0
        while mask:
            low = mask & -mask
            total += self.weight_by_bit[low.bit_length() - 1]
            mask ^= low
        return total


def greedy(instance: CoverageInstance) -> Solution:
    """Warm start: repeatedly take the feasible item with the best
    marginal-weight-per-word ratio (ties: lower id). Only provably
    optimal when every item fits, i.e. nothing was left out."""
    m = _Masks(instance)
    covered = 0
    used = 0
    selected: list[int] = []
    remaining = set(range(instance.n_items))
    while True:
        best_id = -1
        best_density = -1.0
        for i in sorted(remaining):
            if used + m.lengths[i] > m.budget:
                continue
            marginal = m.weight_of(m.item_masks[i] & ~covered)
            density = marginal / m.lengths[i]
            if density > best_density + _EPS:
                best_density = density
                best_id = i
        if best_id < 0:
            break
        selected.append(best_id)
        covered |= m.item_masks[best_id]
        used += m.lengths[best_id]
        remaining.discard(best_id)
    return Solution(selected=frozenset(selected), objective=m.weight_of(covered),
                    proven_optimal=not remaining, nodes_explored=0)


def solve(instance: CoverageInstance, limits: SolveLimits | None = None) -> Solution:
    """Exact branch and bound; returns the lexicographically smallest optimum.

    Hitting a node or time limit is not an error: the best incumbent is
    returned with proven_optimal=False.
    """
    limits = limits or SolveLimits()
    m = _Masks(instance)
    n = instance.n_items

    # branch order: greedy density on the full concept set, descending
    initial_value = [m.weight_of(m.item_masks[i]) for i in range(n)]
    order = sorted(range(n), key=lambda i: (-initial_value[i] / m.lengths[i], i))
    suffix_union = [0] * (n + 1)
    for pos in range(n - 1, -1, -1):
        suffix_union[pos] = suffix_union[pos + 1] | m.item_masks[order[pos]]

    warm = greedy(instance)
    best_obj = warm.objective
    best_ids = tuple(sorted(warm.selected))

    nodes = 0
    truncated = False
    deadline = time.monotonic() + limits.time_seconds

    def bound(pos: int, covered: int, capacity: int) -> float:
        reachable = m.weight_of(suffix_union[pos] & ~covered)
        if reachable <= 0.0 or capacity <= 0:
            return 0.0
        marginals = []
        for p in range(pos, n):
            item = order[p]
            length = m.lengths[item]
            if length > capacity:
                # item can never fit on its own; its concepts may still
                # arrive via other items, covered by `reachable` cap
                continue
            value = m.weight_of(m.item_masks[item] & ~covered)
            if value > 0.0:
                marginals.append((value / length, value, length))
        marginals.sort(key=lambda t: -t[0])
        relax = 0.0
        room = capacity
        for density, value, length in marginals:
            if length <= room:
                relax += value
                room -= length
            else:
                relax += density * room
                break
        return min(relax, reachable)

    def consider(selection: tuple[int, ...], objective: float) -> None:
        nonlocal best_obj, best_ids
        if objective > best_obj + _EPS:
            best_obj = objective
            best_ids = tuple(sorted(selection))
        elif abs(objective - best_obj) <= _EPS:
            ids = tuple(sorted(selection))
            if ids < best_ids:
                best_ids = ids

    def dfs(pos: int, covered: int, used: int, selection: tuple[int, ...], objective: float) -> None:
        nonlocal nodes, truncated
        if truncated:
            return
        nodes += 1
        if nodes >= limits.max_nodes or (nodes % 256 == 0 and time.monotonic() > deadline):
            truncated = True
            return
        if pos == n:
            return
        addable = bound(pos, covered, instance.budget - used)
        if addable <= _EPS:
            # nothing left to gain, but smaller ids can still shrink the
            # tuple: the lex-min zero-weight extension adds remaining ids
            # ascending while they stay below max(selection) and fit
            if selection:
                cap = instance.budget - used
                fill = list(selection)
                cur_max = max(selection)
                for item in sorted(order[pos:]):
                    if item >= cur_max:
                        break
                    if m.lengths[item] <= cap:
                        fill.append(item)
                        cap -= m.lengths[item]
                consider(tuple(fill), objective)
            return
        if objective + addable < best_obj - _EPS:
            return
        item = order[pos]
        if used + m.lengths[item] <= instance.budget:
            new_covered = covered | m.item_masks[item]
            new_selection = selection + (item,)
            new_objective = m.weight_of(new_covered)
            consider(new_selection, new_objective)
            dfs(pos + 1, new_covered, used + m.lengths[item], new_selection, new_objective)
        dfs(pos + 1, covered, used, selection, objective)

    consider((), 0.0)
    dfs(0, 0, 0, (), 0.0)
    return Solution(selected=frozenset(best_ids), objective=best_obj,
                    proven_optimal=not truncated, nodes_explored=nodes)


def verify(instance: CoverageInstance, solution: Solution) -> bool:
    """Recompute feasibility and objective from the raw incidence data."""
    if any(i < 0 or i >= instance.n_items for i in solution.selected):
        return False
    total_length = sum(instance.lengths[i] for i in solution.selected)
    if total_length > instance.budget:
        return False
    covered: set[str] = set()
    for i in solution.selected:
        covered |= instance.incidence[i]
    objective = sum(instance.weights[c] for c in covered)
    return abs(objective - solution.objective) <= 1e-9 * max(1.0, abs(objective))

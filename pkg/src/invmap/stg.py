"""State transition graph analysis: cycle decomposition and period detection."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .anf import check_cap
from .mapping import VectorialMapping, compile_step, successor_table

# Period queries walk a materialized successor list up to this width and
# fall back to the compiled single-state stepper above it.
TABLE_WALK_MAX_BITS = 20


@dataclass(frozen=True)
class CycleReport:
    n: int
    cycles: tuple[tuple[int, int], ...]  # (length, smallest state on the cycle)
    tail_states: int

    @property
    def tails_present(self) -> bool:
        return self.tail_states > 0

    @property
    def total_states_covered(self) -> int:
        return sum(length for length, _ in self.cycles) + self.tail_states

    def length_counts(self) -> dict[int, int]:
        return dict(sorted(Counter(length for length, _ in self.cycles).items()))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "cycles": [{"length": l, "representative": r} for l, r in self.cycles],
            "length_counts": {str(k): v for k, v in self.length_counts().items()},
            "tail_states": self.tail_states,
            "tails_present": self.tails_present,
        }


def cycle_structure(m: VectorialMapping, cap: int | None = None) -> CycleReport:
    """Exact decomposition of the functional graph into cycles and tails.

    Cycles are listed by (length, representative), sorted, with the
    representative being the smallest state on the cycle.
    """
    check_cap(m.n, cap)
    nxt = successor_table(m, cap).tolist()
    size = len(nxt)
    run_of = [0] * size
    cycles = []
    on_cycle = 0
    for start in range(size):
        if run_of[start]:
            continue
        run = start + 1
        path = []
        x = start
        while not run_of[x]:
            run_of[x] = run
            path.append(x)
            x = nxt[x]
        if run_of[x] == run:
            cyc = path[path.index(x):]
            cycles.append((len(cyc), min(cyc)))
            on_cycle += len(cyc)
    cycles.sort()
    return CycleReport(m.n, tuple(cycles), size - on_cycle)


def fixed_points(m: VectorialMapping, cap: int | None = None) -> list[int]:
    table = successor_table(m, cap)
    return [s for s, t in enumerate(table.tolist()) if s == t]


def brent(step: Callable[[int], int], x0: int) -> tuple[int, int]:
    """Brent's cycle detection; returns (tail length, cycle length)."""
    power = lam = 1
    tortoise = x0
    hare = step(x0)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1

    tortoise = hare = x0
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
    return mu, lam


def stepper(m: VectorialMapping) -> Callable[[int], int]:
    if m.n <= TABLE_WALK_MAX_BITS:
        return successor_table(m).tolist().__getitem__
    return compile_step(m)


def period_from(m: VectorialMapping, seed: int) -> tuple[int, int]:
    """(tail length, cycle length) of the orbit starting at ``seed``."""
    if not 0 <= seed < (1 << m.n):
        raise ValueError(f"seed {seed} is not an {m.n}-bit state")
    return brent(stepper(m), seed)

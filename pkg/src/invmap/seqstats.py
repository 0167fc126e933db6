"""Output sequences of a binary machine and Golomb's randomness postulates.

All statistics treat the input as one full period of a cyclic sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .mapping import VectorialMapping, compile_step
from .stg import period_from


def output_sequence(m: VectorialMapping, seed: int, bit: int = 0, length: int = 1) -> list[int]:
    """Bit ``bit`` of the states ``seed, m(seed), m(m(seed)), ...``."""
    if not 0 <= bit < m.n:
        raise ValueError(f"bit {bit} out of range for n={m.n}")
    step = compile_step(m)
    out = []
    s = seed
    for _ in range(length):
        out.append((s >> bit) & 1)
        s = step(s)
    return out


def period_sequence(m: VectorialMapping, seed: int, bit: int = 0) -> list[int]:
    """One period of the output, starting where the orbit of ``seed`` enters its cycle."""
    tail, period = period_from(m, seed)
    step = compile_step(m)
    s = seed
    for _ in range(tail):
        s = step(s)
    return output_sequence(m, s, bit, period)


def _check(bits: Sequence[int]) -> list[int]:
    bits = [int(b) & 1 for b in bits]
    if not bits:
        raise ValueError("sequence must be non-empty")
    return bits


def golomb_balance(bits: Sequence[int]) -> tuple[int, int, bool]:
    bits = _check(bits)
    ones = sum(bits)
    zeros = len(bits) - ones
    return ones, zeros, abs(ones - zeros) <= 1


def cyclic_runs(bits: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal constant blocks of the cyclic sequence as (value, length)."""
    bits = _check(bits)
    p = len(bits)
    starts = [t for t in range(p) if bits[t] != bits[t - 1]]
    if not starts:
        return [(bits[0], p)]
    runs = []
    for k, t in enumerate(starts):
        nxt = starts[(k + 1) % len(starts)]
        runs.append((bits[t], (nxt - t) % p or p))
    return runs


def run_histogram(bits: Sequence[int]) -> dict[int, tuple[int, int]]:
    """Run length -> (number of 0-runs, number of 1-runs)."""
    hist: dict[int, list[int]] = {}
    for value, length in cyclic_runs(bits):
        hist.setdefault(length, [0, 0])[value] += 1
    return {k: (v[0], v[1]) for k, v in sorted(hist.items())}


def golomb_runs(bits: Sequence[int]) -> tuple[dict[int, tuple[int, int]], bool]:
    """Run histogram and whether it follows the run postulate.

    With R runs in total, length ``l`` must occur floor or ceil of R / 2**l
    times for every ``l`` whose expected count is at least 1, and the 0-runs
    and 1-runs of that length must split evenly (up to one when the count is
    odd).
    """
    hist = run_histogram(bits)
    total = sum(z + o for z, o in hist.values())
    ok = True
    length = 1
    while total >= (1 << length):
        zeros, ones = hist.get(length, (0, 0))
        count = zeros + ones
        lo = total >> length
        hi = lo + (1 if total % (1 << length) else 0)
        if not lo <= count <= hi:
            ok = False
            break
        if count > 1 and abs(zeros - ones) > count % 2:
            ok = False
            break
        length += 1
    return hist, ok


def autocorrelation(bits: Sequence[int]) -> tuple[list[int], bool]:
    """Out-of-phase values ``sum_t (-1)^(s_t ^ s_{t+tau})`` for tau = 1..p-1."""
    bits = _check(bits)
    p = len(bits)
    profile = []
    for tau in range(1, p):
        agree = sum(1 for t in range(p) if bits[t] == bits[(t + tau) % p])
        profile.append(2 * agree - p)
    return profile, len(set(profile)) <= 1


@dataclass(frozen=True)
class SequenceReport:
    period: int
    ones_count: int
    zeros_count: int
    balance_ok: bool
    run_histogram: dict[int, tuple[int, int]]
    run_ok: bool
    autocorrelation: tuple[int, ...]
    two_level: bool

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "ones": self.ones_count,
            "zeros": self.zeros_count,
            "balance_ok": self.balance_ok,
            "runs": {str(k): {"zero_runs": z, "one_runs": o}
                     for k, (z, o) in self.run_histogram.items()},
            "run_ok": self.run_ok,
            "autocorrelation": list(self.autocorrelation),
            "two_level": self.two_level,
        }


def sequence_report(bits: Sequence[int]) -> SequenceReport:
    bits = _check(bits)
    ones, zeros, balance_ok = golomb_balance(bits)
    hist, run_ok = golomb_runs(bits)
    profile, two_level = autocorrelation(bits)
    return SequenceReport(len(bits), ones, zeros, balance_ok, hist, run_ok,
                          tuple(profile), two_level)


def canonical_rotation(bits: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest rotation, used to compare cyclic sequences."""
    bits = tuple(bits)
    return min(bits[k:] + bits[:k] for k in range(len(bits)))

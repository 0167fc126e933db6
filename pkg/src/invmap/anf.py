"""Boolean functions in Algebraic Normal Form.

A monomial is stored as an integer bitmask: bit ``j`` set means variable
``x_j`` occurs in the product. The empty mask ``0`` is the constant 1.
A function is the XOR of a set of monomials, so duplicates cancel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

# Truth-table style operations refuse wider functions unless a cap is passed.
MAX_EXHAUSTIVE_BITS = 24


class AnfSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class ExhaustiveCapError(ValueError):
    pass


def check_cap(n: int, cap: int | None = None) -> None:
    limit = MAX_EXHAUSTIVE_BITS if cap is None else cap
    if n > limit:
        raise ExhaustiveCapError(
            f"n={n} exceeds the exhaustive cap of {limit} bits")


def mask_vars(mask: int) -> tuple[int, ...]:
    """Variable indices set in a monomial mask, ascending."""
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def vars_mask(indices: Iterable[int]) -> int:
    mask = 0
    for j in indices:
        mask |= 1 << j
    return mask


def monomial_key(mask: int) -> tuple[int, tuple[int, ...]]:
    vs = mask_vars(mask)
    return (len(vs), vs)


def format_monomial(mask: int) -> str:
    if mask == 0:
        return "1"
    return "*".join(f"x{j}" for j in mask_vars(mask))


class OpCost(NamedTuple):
    xor: int
    and_: int

    @property
    def total(self) -> int:
        return self.xor + self.and_


@dataclass(frozen=True)
class AnfFunction:
    """XOR of monomials over variables ``x_0 .. x_{n-1}``.

    Build instances through :meth:`from_monomials` (or :func:`parse_anf`);
    it performs the GF(2) cancellation that keeps the form canonical.
    """

    n: int
    monomials: frozenset[int]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("variable count must be non-negative")
        limit = 1 << self.n
        for m in self.monomials:
            if m < 0 or m >= limit:
                raise ValueError(
                    f"monomial {format_monomial(m)} uses a variable >= n={self.n}")

    @classmethod
    def from_monomials(cls, n: int, monomials: Iterable[int]) -> AnfFunction:
        acc: set[int] = set()
        for m in monomials:
            acc ^= {m}
        return cls(n, frozenset(acc))

    @classmethod
    def zero(cls, n: int) -> AnfFunction:
        return cls(n, frozenset())

    @classmethod
    def one(cls, n: int) -> AnfFunction:
        return cls(n, frozenset({0}))

    @classmethod
    def var(cls, n: int, j: int) -> AnfFunction:
        return cls(n, frozenset({1 << j}))

    def sorted_monomials(self) -> list[int]:
        return sorted(self.monomials, key=monomial_key)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        return " ^ ".join(format_monomial(m) for m in self.sorted_monomials())

    def __xor__(self, other: AnfFunction) -> AnfFunction:
        if not isinstance(other, AnfFunction):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("variable counts differ")
        return AnfFunction(self.n, self.monomials ^ other.monomials)

    def __call__(self, s: int) -> int:
        return eval_anf(self, s)

    def rename(self, perm: list[int] | tuple[int, ...]) -> AnfFunction:
        """Substitute ``x_j -> x_{perm[j]}`` in every monomial."""
        out = []
        for m in self.monomials:
            out.append(vars_mask(perm[j] for j in mask_vars(m)))
        return AnfFunction.from_monomials(self.n, out)

    def with_n(self, n: int) -> AnfFunction:
        return AnfFunction(n, self.monomials)

    @property
    def support_mask(self) -> int:
        acc = 0
        for m in self.monomials:
            acc |= m
        return acc

    @property
    def free_mask(self) -> int:
        """Bitmask of free variables: singleton terms not shared with other terms."""
        seen_once = 0
        seen_twice = 0
        singles = 0
        for m in self.monomials:
            seen_twice |= seen_once & m
            seen_once |= m
            if m and m & (m - 1) == 0:
                singles |= m
        return singles & ~seen_twice


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(\d+)|([\^+*])|(⊕))")


def parse_anf(text: str, n: int) -> AnfFunction:
    """Parse ``x1 ^ x1*x2``-style text into a canonical function.

    ``+`` and ``⊕`` are accepted for XOR. Constants are ``0`` and ``1``.
    """
    tokens: list[tuple[str, object, int]] = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        mt = _TOKEN.match(text, pos)
        if mt is None:
            at = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise AnfSyntaxError(f"unexpected character {text[at]!r}", at)
        start = mt.start(0) + (len(mt.group(0)) - len(mt.group(0).lstrip()))
        if mt.group(1):
            idx = int(mt.group(2))
            if idx >= n:
                raise AnfSyntaxError(f"variable x{idx} out of range for n={n}", start)
            tokens.append(("var", idx, start))
        elif mt.group(3) is not None:
            tokens.append(("const", mt.group(3), start))
        elif mt.group(4) == "*":
            tokens.append(("and", None, start))
        else:
            tokens.append(("xor", None, start))
        pos = mt.end(0)

    if not tokens:
        raise AnfSyntaxError("empty expression", 0)

    monomials = []
    i = 0
    while True:
        if i >= len(tokens):
            raise AnfSyntaxError("expected a term", len(text))
        kind, val, at = tokens[i]
        if kind == "const":
            if val not in ("0", "1"):
                raise AnfSyntaxError(f"constant must be 0 or 1, got {val}", at)
            if val == "1":
                monomials.append(0)
            i += 1
        elif kind == "var":
            mask = 1 << val
            i += 1
            while i < len(tokens) and tokens[i][0] == "and":
                if i + 1 >= len(tokens) or tokens[i + 1][0] != "var":
                    where = tokens[i + 1][2] if i + 1 < len(tokens) else len(text)
                    raise AnfSyntaxError("expected a variable after '*'", where)
                mask |= 1 << tokens[i + 1][1]
                i += 2
            monomials.append(mask)
        else:
            raise AnfSyntaxError("expected a term", at)
        if i == len(tokens):
            break
        if tokens[i][0] != "xor":
            raise AnfSyntaxError("expected '^'", tokens[i][2])
        i += 1
    return AnfFunction.from_monomials(n, monomials)


def eval_anf(f: AnfFunction, s: int) -> int:
    bit = 0
    for m in f.monomials:
        if s & m == m:
            bit ^= 1
    return bit


def eval_on_states(f: AnfFunction, states: np.ndarray) -> np.ndarray:
    """Vectorized evaluation; returns a uint8 array of output bits."""
    out = np.zeros(states.shape, dtype=np.uint8)
    for m in f.monomials:
        if m == 0:
            out ^= 1
        else:
            out ^= ((states & m) == m).astype(np.uint8)
    return out


def _all_states(n: int) -> np.ndarray:
    dtype = np.uint32 if n <= 32 else np.uint64
    return np.arange(1 << n, dtype=dtype)


def truth_table(f: AnfFunction, cap: int | None = None) -> np.ndarray:
    check_cap(f.n, cap)
    return eval_on_states(f, _all_states(f.n))


def mobius(tt: np.ndarray) -> np.ndarray:
    """Binary Möbius transform (its own inverse over GF(2))."""
    a = np.array(tt, dtype=np.uint8).copy()
    size = a.size
    step = 1
    while step < size:
        v = a.reshape(-1, 2 * step)
        v[:, step:] ^= v[:, :step]
        step *= 2
    return a


def anf_from_truth_table(tt) -> AnfFunction:
    tt = np.asarray(tt, dtype=np.uint8)
    size = tt.size
    if size == 0 or size & (size - 1):
        raise ValueError(f"truth table length {size} is not a power of two")
    n = size.bit_length() - 1
    coeffs = mobius(tt & 1)
    return AnfFunction(n, frozenset(int(i) for i in np.flatnonzero(coeffs)))


def dep_set(f: AnfFunction) -> set[int]:
    return set(mask_vars(f.support_mask))


def free_vars(f: AnfFunction) -> set[int]:
    return set(mask_vars(f.free_mask))


def anf_size(f: AnfFunction) -> int:
    return sum(m.bit_count() for m in f.monomials)


def op_cost(f: AnfFunction) -> OpCost:
    """Two-input gate count of the flat ANF.

    XORs join the terms (the constant 1 is a term); each degree-d monomial
    needs d-1 ANDs.
    """
    xors = max(0, len(f.monomials) - 1)
    ands = sum(max(0, m.bit_count() - 1) for m in f.monomials)
    return OpCost(xors, ands)

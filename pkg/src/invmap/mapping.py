"""Vectorial Boolean mappings {0,1}^n -> {0,1}^n.

Bit ``i`` of a state integer carries variable ``x_i`` (least significant
first), so output ``f_i`` produces bit ``i`` of the successor state.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .anf import (AnfFunction, AnfSyntaxError, _all_states, check_cap,
                  eval_anf, eval_on_states, free_vars, parse_anf)


class MappingFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class NotATFunctionError(ValueError):
    pass


@dataclass(frozen=True)
class VectorialMapping:
    n: int
    outputs: tuple[AnfFunction, ...]

    def __post_init__(self):
        if len(self.outputs) != self.n:
            raise ValueError(f"expected {self.n} outputs, got {len(self.outputs)}")
        for i, f in enumerate(self.outputs):
            if f.n != self.n:
                raise ValueError(f"output f{i} has {f.n} variables, expected {self.n}")

    @classmethod
    def from_strings(cls, exprs: Sequence[str]) -> VectorialMapping:
        n = len(exprs)
        return cls(n, tuple(parse_anf(e, n) for e in exprs))

    def __getitem__(self, i: int) -> AnfFunction:
        return self.outputs[i]

    def __call__(self, s: int) -> int:
        return apply(self, s)

    def __str__(self) -> str:
        return format_mapping(self)


def identity_mapping(n: int) -> VectorialMapping:
    return VectorialMapping(n, tuple(AnfFunction.var(n, i) for i in range(n)))


def shift_mapping(n: int) -> VectorialMapping:
    """The rotation ``f_i = x_{(i+1) mod n}``."""
    return VectorialMapping(n, tuple(AnfFunction.var(n, (i + 1) % n) for i in range(n)))


def apply(m: VectorialMapping, s: int) -> int:
    out = 0
    for i, f in enumerate(m.outputs):
        out |= eval_anf(f, s) << i
    return out


def successor_table(m: VectorialMapping, cap: int | None = None) -> np.ndarray:
    """``table[s] = apply(m, s)`` for every state, computed in bulk."""
    check_cap(m.n, cap)
    states = _all_states(m.n)
    table = np.zeros_like(states)
    for i, f in enumerate(m.outputs):
        table |= eval_on_states(f, states).astype(states.dtype) << states.dtype.type(i)
    return table


def compile_step(m: VectorialMapping) -> Callable[[int], int]:
    """Build a fast single-state successor function for long iterations."""
    parts = []
    for i, f in enumerate(m.outputs):
        terms = []
        for mono in f.sorted_monomials():
            if mono == 0:
                terms.append("1")
            elif mono & (mono - 1) == 0:
                j = mono.bit_length() - 1
                terms.append(f"(s >> {j} & 1)")
            else:
                terms.append(f"(s & {mono} == {mono})")
        if terms:
            parts.append(f"(({' ^ '.join(terms)}) << {i})")
    body = " | ".join(parts) if parts else "0"
    return eval(f"lambda s: {body}")  # generated from integer masks only


def permute_bits(s: int, perm: Sequence[int]) -> int:
    """Move bit ``j`` of ``s`` to position ``perm[j]``."""
    out = 0
    for j, pj in enumerate(perm):
        out |= ((s >> j) & 1) << pj
    return out


def validate_perm(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError(f"{list(perm)} is not a permutation of 0..{n - 1}")
    return perm


def inverse_perm(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for j, pj in enumerate(perm):
        inv[pj] = j
    return tuple(inv)


def relabel(m: VectorialMapping, perm: Sequence[int]) -> VectorialMapping:
    """Rename variables ``x_j -> x_{perm[j]}`` inside every output.

    Output positions stay put, so the state graph generally changes
    (a T-function can turn into a full-period machine this way).
    """
    perm = validate_perm(perm, m.n)
    return VectorialMapping(m.n, tuple(f.rename(perm) for f in m.outputs))


def conjugate(m: VectorialMapping, perm: Sequence[int]) -> VectorialMapping:
    """Transport ``m`` along the bit permutation ``perm``.

    Output ``perm[i]`` of the result is output ``i`` of ``m`` with its
    variables renamed, which makes the two state graphs isomorphic:
    ``apply(conjugate(m, p), permute_bits(s, p)) == permute_bits(apply(m, s), p)``.
    """
    perm = validate_perm(perm, m.n)
    outs: list[AnfFunction | None] = [None] * m.n
    for i, f in enumerate(m.outputs):
        outs[perm[i]] = f.rename(perm)
    return VectorialMapping(m.n, tuple(outs))


def permute_outputs(m: VectorialMapping, order: Sequence[int]) -> VectorialMapping:
    """Reorder output positions only: output ``k`` becomes ``m.outputs[order[k]]``."""
    order = validate_perm(order, m.n)
    return VectorialMapping(m.n, tuple(m.outputs[k] for k in order))


def is_t_function(m: VectorialMapping) -> bool:
    return all(f.support_mask >> (i + 1) == 0 for i, f in enumerate(m.outputs))


def t_function_invertible(m: VectorialMapping) -> bool:
    if not is_t_function(m):
        raise NotATFunctionError("mapping is not a T-function")
    for i, f in enumerate(m.outputs):
        if not f.free_mask >> i & 1:
            return False
    return True


def nlfsr_to_mapping(feedback: AnfFunction, n: int) -> VectorialMapping:
    """State mapping of a Fibonacci NLFSR: stages shift down, stage n-1 takes the feedback."""
    if feedback.n != n:
        raise ValueError(f"feedback has {feedback.n} variables, width is {n}")
    outs = [AnfFunction.var(n, i + 1) for i in range(n - 1)]
    outs.append(feedback)
    return VectorialMapping(n, tuple(outs))


def nlfsr_feedback_invertible(feedback: AnfFunction) -> bool:
    return 0 in free_vars(feedback)


def format_mapping(m: VectorialMapping, omit_shift: bool = False) -> str:
    """Serialize to the text format read by :func:`parse_mapping`.

    With ``omit_shift`` the outputs equal to ``x_{(i+1) mod n}`` are left out,
    since the reader fills them in by default.
    """
    lines = [f"n = {m.n}"]
    for i, f in enumerate(m.outputs):
        if omit_shift and f.monomials == {1 << ((i + 1) % m.n)}:
            continue
        lines.append(f"f{i} = {f}")
    return "\n".join(lines) + "\n"


def parse_mapping(text: str) -> VectorialMapping:
    n = None
    exprs: dict[int, AnfFunction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise MappingFormatError(f"expected '<name> = <value>', got {line!r}", lineno)
        lhs, rhs = (p.strip() for p in line.split("=", 1))
        if n is None:
            if lhs != "n":
                raise MappingFormatError("first line must be 'n = <width>'", lineno)
            try:
                n = int(rhs)
            except ValueError:
                raise MappingFormatError(f"bad width {rhs!r}", lineno) from None
            if n < 1:
                raise MappingFormatError("width must be positive", lineno)
            continue
        if not (lhs.startswith("f") and lhs[1:].isdigit()):
            raise MappingFormatError(f"expected f<i>, got {lhs!r}", lineno)
        i = int(lhs[1:])
        if i >= n:
            raise MappingFormatError(f"output index {i} out of range for n={n}", lineno)
        if i in exprs:
            raise MappingFormatError(f"output f{i} defined twice", lineno)
        try:
            exprs[i] = parse_anf(rhs, n)
        except AnfSyntaxError as e:
            raise MappingFormatError(str(e), lineno) from None
    if n is None:
        raise MappingFormatError("missing 'n = <width>' line")
    outs = tuple(exprs.get(i, AnfFunction.var(n, (i + 1) % n)) for i in range(n))
    return VectorialMapping(n, outs)


def load_mapping(path: str | Path) -> VectorialMapping:
    return parse_mapping(Path(path).read_text())



"""Univariate polynomials modulo 2^n and the parity test for permutation polynomials."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .anf import anf_from_truth_table, check_cap
from .mapping import VectorialMapping


@dataclass(frozen=True)
class IntPolynomial:
    """``a_0 + a_1 x + ... + a_d x^d`` with arithmetic mod ``2**n``."""

    coeffs: tuple[int, ...]
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus exponent must be positive")
        if not self.coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        mod = 1 << self.n
        object.__setattr__(self, "coeffs", tuple(int(a) % mod for a in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if k == 0:
                terms.append(str(a))
            else:
                power = "x" if k == 1 else f"x^{k}"
                terms.append(power if a == 1 else f"{a}*{power}")
        return (" + ".join(terms) or "0") + f" (mod 2^{self.n})"


def parse_coeffs(text: str, n: int) -> IntPolynomial:
    try:
        coeffs = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"coefficients must be comma-separated integers: {text!r}") from None
    if any(a < 0 for a in coeffs):
        raise ValueError("coefficients must be non-negative")
    return IntPolynomial(coeffs, n)


def eval_poly(p: IntPolynomial, x: int) -> int:
    mask = (1 << p.n) - 1
    acc = 0
    for a in reversed(p.coeffs):
        acc = (acc * x + a) & mask
    return acc


def eval_poly_all(p: IntPolynomial) -> np.ndarray:
    """Values at every residue, vectorized Horner.

    uint64 overflow is harmless: 2**n divides 2**64.
    """
    mask = np.uint64((1 << p.n) - 1)
    x = np.arange(1 << p.n, dtype=np.uint64)
    acc = np.zeros_like(x)
    for a in reversed(p.coeffs):
        acc = (acc * x + np.uint64(a)) & mask
    return acc


def is_rivest_permutation(p: IntPolynomial) -> bool:
    """a_1 odd, even-index coefficient sum (from a_2) even, odd-index sum (from a_3) even."""
    if p.n <= 2:
        raise ValueError("the parity criterion only holds for n > 2; use the brute-force oracle")
    a = p.coeffs
    a1 = a[1] if len(a) > 1 else 0
    even_sum = sum(a[2::2])
    odd_sum = sum(a[3::2])
    return a1 % 2 == 1 and even_sum % 2 == 0 and odd_sum % 2 == 0


def poly_to_mapping(p: IntPolynomial, cap: int | None = None) -> VectorialMapping:
    check_cap(p.n, cap)
    values = eval_poly_all(p)
    outs = []
    for i in range(p.n):
        outs.append(anf_from_truth_table(((values >> np.uint64(i)) & np.uint64(1)).astype(np.uint8)))
    return VectorialMapping(p.n, tuple(outs))

"""Sufficient invertibility check via free variables, plus exhaustive oracles.

The checker looks for an order of the outputs ``f_{i_0}, f_{i_1}, ...`` and
distinct pivot variables ``x_{j_0}, x_{j_1}, ...`` such that each
``f_{i_k} = x_{j_k} ^ g`` where ``g`` only reads earlier pivots. Such an
order makes the mapping triangular, so every output state has exactly one
preimage, recoverable one pivot at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .anf import anf_from_truth_table, check_cap, mask_vars
from .mapping import VectorialMapping, successor_table

NO_BASE = "no output of the form x_j or x_j ^ 1"
UNMARKABLE = "some outputs have no usable free variable"


class InvalidCertificateError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


@dataclass(frozen=True)
class InvertibilityCertificate:
    """Pairs ``(output index, pivot variable)`` in triangular order."""

    order: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {"order": [{"output": i, "pivot": j} for i, j in self.order]}


@dataclass(frozen=True)
class CheckOutcome:
    accepted: bool
    certificate: InvertibilityCertificate | None = None
    reason: str | None = None
    unmarked: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict:
        d = {"verdict": "accepted" if self.accepted else "rejected"}
        if self.accepted:
            d["certificate"] = self.certificate.to_dict()["order"]
        else:
            d["reason"] = self.reason
            d["unmarked"] = list(self.unmarked)
        return d


def check_theorem1(m: VectorialMapping) -> CheckOutcome:
    """Run the marking procedure and return a certificate on success.

    Rejection only means the sufficient condition failed; the mapping may
    still be a bijection.
    """
    n = m.n
    support = [f.support_mask for f in m.outputs]
    free = [f.free_mask for f in m.outputs]
    pivots = 0  # the set of chosen pivot variables, as a bitmask
    marked = [False] * n
    order: list[tuple[int, int]] = []

    # Base outputs: x_j or x_j ^ 1.
    for i, f in enumerate(m.outputs):
        sup = support[i]
        if sup and sup & (sup - 1) == 0 and f.monomials <= {0, sup}:
            if pivots & sup:
                continue
            pivots |= sup
            marked[i] = True
            order.append((i, sup.bit_length() - 1))
    if not order:
        return CheckOutcome(False, reason=NO_BASE, unmarked=tuple(range(n)))

    # An unmarked output is usable when exactly one of its variables is not a
    # pivot yet and that variable is free; it becomes the next pivot.
    progress = True
    while progress:
        progress = False
        for i in range(n):
            if marked[i]:
                continue
            rest = support[i] & ~pivots
            if rest and rest & (rest - 1) == 0 and free[i] & rest:
                pivots |= rest
                marked[i] = True
                order.append((i, rest.bit_length() - 1))
                progress = True
                break

    if len(order) < n:
        return CheckOutcome(False, reason=UNMARKABLE,
                            unmarked=tuple(i for i in range(n) if not marked[i]))
    return CheckOutcome(True, certificate=InvertibilityCertificate(tuple(order)))


def validate_certificate(m: VectorialMapping, cert: InvertibilityCertificate) -> None:
    n = m.n
    if len(cert.order) != n:
        raise InvalidCertificateError(f"certificate has {len(cert.order)} entries, expected {n}")
    outs = sorted(i for i, _ in cert.order)
    pivs = sorted(j for _, j in cert.order)
    if outs != list(range(n)):
        raise InvalidCertificateError("output indices are not a permutation")
    if pivs != list(range(n)):
        raise InvalidCertificateError("pivot variables are not distinct")
    seen = 0
    for i, j in cert.order:
        f = m.outputs[i]
        if not f.free_mask >> j & 1:
            raise InvalidCertificateError(f"x{j} is not free in f{i}")
        if f.support_mask & ~(1 << j) & ~seen:
            raise InvalidCertificateError(
                f"f{i} reads variables not yet recovered before pivot x{j}")
        seen |= 1 << j


def invert_state(m: VectorialMapping, cert: InvertibilityCertificate, y: int,
                 validate: bool = True) -> int:
    """Preimage of ``y`` by triangular back-substitution along ``cert``."""
    if validate:
        validate_certificate(m, cert)
    x = 0
    for i, j in cert.order:
        pivot = 1 << j
        bit = (y >> i) & 1
        for mono in m.outputs[i].monomials:
            if mono != pivot and x & mono == mono:
                bit ^= 1
        x |= bit << j
    return x


@dataclass(frozen=True)
class BijectionReport:
    bijective: bool
    collision: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.bijective

    def to_dict(self) -> dict:
        d = {"bijective": self.bijective}
        if self.collision is not None:
            d["collision"] = list(self.collision)
        return d


def brute_force_invertible(m: VectorialMapping, cap: int | None = None) -> BijectionReport:
    """Exhaustive bijectivity test; on failure report two colliding states."""
    table = successor_table(m, cap)
    size = table.size
    counts = np.bincount(table, minlength=size)
    if counts.max(initial=0) <= 1:
        return BijectionReport(True)
    target = int(np.flatnonzero(counts > 1)[0])
    a, b = (int(s) for s in np.flatnonzero(table == target)[:2])
    return BijectionReport(False, (a, b))


def inverse_table(m: VectorialMapping, cap: int | None = None) -> np.ndarray:
    table = successor_table(m, cap)
    inv = np.empty_like(table)
    inv[table] = np.arange(table.size, dtype=table.dtype)
    return inv


def inverse_mapping(m: VectorialMapping, cap: int | None = None) -> VectorialMapping:
    """Materialize the inverse as ANFs, one truth table per output bit."""
    check_cap(m.n, cap)
    report = brute_force_invertible(m, cap)
    if not report:
        raise NotInvertibleError(f"states {report.collision} collide")
    inv = inverse_table(m, cap)
    outs = []
    for i in range(m.n):
        outs.append(anf_from_truth_table(((inv >> i) & 1).astype(np.uint8)))
    return VectorialMapping(m.n, tuple(outs))


def pivot_summary(m: VectorialMapping, cert: InvertibilityCertificate) -> list[str]:
    """Human readable lines ``f<i>: pivot x<j>, g reads {...}``."""
    lines = []
    for i, j in cert.order:
        reads = [v for v in mask_vars(m.outputs[i].support_mask) if v != j]
        g = ", ".join(f"x{v}" for v in reads) or "constant"
        lines.append(f"f{i}: pivot x{j}, g reads {g}")
    return lines

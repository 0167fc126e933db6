"""Seeded random search for cheap, checker-accepted, full-period mappings.

Candidates are random perturbations of a backbone (the rotation
``f_i = x_{(i+1) mod n}`` by default). The free-variable checker filters
them and only accepted candidates get the expensive period test from
state 1. Candidate ``k`` draws from its own RNG stream seeded by
``(rng_seed, k)``, so chunks can run in worker processes and still merge
into exactly the sequential result.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .anf import AnfFunction, op_cost
from .invcheck import check_theorem1
from .mapping import (VectorialMapping, format_mapping, parse_mapping,
                      shift_mapping)
from .stg import period_from

log = logging.getLogger(__name__)

DEFAULT_SEED = 20160719


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    n: int
    op_budget: int = 4
    max_modified: int = 3
    rng_seed: int = DEFAULT_SEED
    candidate_limit: int = 10_000
    period_target: int | None = None
    backbone: str = "shift"
    max_degree: int = 2
    allow_constants: bool = False
    require_nonlinear: bool = False
    replay: tuple[str, ...] = ()
    workers: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("n must be positive")
        if self.op_budget < 0:
            raise ConfigError("op_budget must be >= 0")
        if self.max_modified < 0:
            raise ConfigError("max_modified must be >= 0")
        if self.candidate_limit < 1:
            raise ConfigError("candidate_limit must be >= 1")
        if not 1 <= self.max_degree <= self.n:
            raise ConfigError("max_degree must be in 1..n")
        if not 0 <= self.rng_seed < 2**64:
            raise ConfigError("rng_seed must be a 64-bit unsigned integer")
        if self.period_target is not None and not 1 <= self.period_target <= 2**self.n:
            raise ConfigError("period_target must be in 1..2^n")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        object.__setattr__(self, "replay", tuple(self.replay))
        self.backbone_mapping()  # validates

    @property
    def target(self) -> int:
        return (1 << self.n) - 1 if self.period_target is None else self.period_target

    def backbone_mapping(self) -> VectorialMapping:
        if self.backbone == "shift":
            return shift_mapping(self.n)
        try:
            m = parse_mapping(self.backbone)
        except ValueError as e:
            raise ConfigError(f"bad backbone: {e}") from None
        if m.n != self.n:
            raise ConfigError(f"backbone width {m.n} != n={self.n}")
        return m

    @classmethod
    def from_dict(cls, d: dict) -> SearchConfig:
        known = set(cls.__dataclass_fields__)
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**d)
        except TypeError as e:
            raise ConfigError(str(e)) from None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["replay"] = list(self.replay)
        return d


def total_cost(m: VectorialMapping, backbone: VectorialMapping) -> int:
    """Gate count of the outputs that differ from the backbone."""
    return sum(op_cost(f).total for f, b in zip(m.outputs, backbone.outputs) if f != b)


def is_legal_candidate(cfg: SearchConfig, m: VectorialMapping) -> bool:
    """Whether ``generate_candidate`` could produce ``m`` under ``cfg``."""
    backbone = cfg.backbone_mapping()
    if m.n != cfg.n:
        return False
    changed = [i for i in range(m.n) if m.outputs[i] != backbone.outputs[i]]
    if len(changed) > cfg.max_modified or total_cost(m, backbone) > cfg.op_budget:
        return False
    for i in changed:
        delta = m.outputs[i] ^ backbone.outputs[i]
        for mono in delta.monomials:
            if mono == 0 and not cfg.allow_constants:
                return False
            if mono.bit_count() > cfg.max_degree:
                return False
    return True


def candidate_rng(cfg: SearchConfig, index: int) -> np.random.Generator:
    return np.random.default_rng([cfg.rng_seed, index])


def generate_candidate(cfg: SearchConfig, rng: np.random.Generator,
                       backbone: VectorialMapping | None = None) -> VectorialMapping:
    """XOR random monomials into at most ``max_modified`` backbone outputs.

    The result stays within the gate budget but is not necessarily
    invertible.
    """
    if backbone is None:
        backbone = cfg.backbone_mapping()
    if cfg.op_budget == 0 or cfg.max_modified == 0:
        return backbone
    n = cfg.n
    outs = list(backbone.outputs)
    costs = [0] * n
    modified: list[int] = []
    goal = int(rng.integers(1, cfg.op_budget + 1))
    low_degree = 0 if cfg.allow_constants else 1
    spent = 0
    for _ in range(4 * cfg.op_budget + 8):
        if spent >= goal:
            break
        if len(modified) < cfg.max_modified:
            i = int(rng.integers(n))
        else:
            i = modified[int(rng.integers(len(modified)))]
        degree = int(rng.integers(low_degree, cfg.max_degree + 1))
        chosen = rng.choice(n, size=degree, replace=False) if degree else ()
        mono = 0
        for j in chosen:
            mono |= 1 << int(j)
        new = outs[i] ^ AnfFunction(n, frozenset({mono}))
        new_cost = 0 if new == backbone.outputs[i] else op_cost(new).total
        if spent - costs[i] + new_cost > cfg.op_budget:
            continue
        spent += new_cost - costs[i]
        outs[i], costs[i] = new, new_cost
        if i not in modified:
            modified.append(i)
    return VectorialMapping(n, tuple(outs))


@dataclass(frozen=True)
class Find:
    index: int
    mapping: VectorialMapping
    total_cost: int
    verified_period: int

    def to_dict(self) -> dict:
        return {
            "candidate_index": self.index,
            "total_cost": self.total_cost,
            "verified_period": self.verified_period,
            "mapping": format_mapping(self.mapping, omit_shift=True),
        }


@dataclass(frozen=True)
class SearchResult:
    config: SearchConfig
    found: tuple[Find, ...]
    candidates_tried: int
    accepted_by_checker: int
    period_tests: int
    duplicates: int = 0
    linear_skipped: int = 0

    @property
    def rng_seed(self) -> int:
        return self.config.rng_seed

    def to_dict(self) -> dict:
        return {
            "rng_seed": self.rng_seed,
            "config": {k: v for k, v in self.config.to_dict().items() if k != "workers"},
            "candidates_tried": self.candidates_tried,
            "accepted_by_checker": self.accepted_by_checker,
            "period_tests": self.period_tests,
            "duplicates": self.duplicates,
            "linear_skipped": self.linear_skipped,
            "found": [f.to_dict() for f in self.found],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass
class _Chunk:
    linear_skipped: int = 0
    accepted: int = 0
    period_tests: int = 0
    finds: list = field(default_factory=list)


def is_nonlinear(m: VectorialMapping) -> bool:
    return any(mono.bit_count() > 1 for f in m.outputs for mono in f.monomials)


def evaluate(cfg: SearchConfig, m: VectorialMapping, backbone: VectorialMapping,
             chunk: _Chunk, index: int) -> None:
    if cfg.require_nonlinear and not is_nonlinear(m):
        chunk.linear_skipped += 1
        return
    if not check_theorem1(m).accepted:
        return
    chunk.accepted += 1
    chunk.period_tests += 1
    tail, period = period_from(m, 1 % (1 << cfg.n))
    if tail == 0 and period == cfg.target:
        chunk.finds.append(Find(index, m, total_cost(m, backbone), period))


def _candidates(cfg: SearchConfig) -> int:
    return len(cfg.replay) if cfg.replay else cfg.candidate_limit


def _run_range(cfg: SearchConfig, start: int, stop: int) -> _Chunk:
    backbone = cfg.backbone_mapping()
    chunk = _Chunk()
    for k in range(start, stop):
        if cfg.replay:
            m = parse_mapping(cfg.replay[k])
            if m.n != cfg.n:
                raise ConfigError(f"replay mapping {k} has width {m.n}, expected {cfg.n}")
        else:
            m = generate_candidate(cfg, candidate_rng(cfg, k), backbone)
        evaluate(cfg, m, backbone, chunk, k)
    return chunk


def run_search(cfg: SearchConfig) -> SearchResult:
    total = _candidates(cfg)
    if cfg.workers == 1 or total < 2 * cfg.workers:
        chunks = [_run_range(cfg, 0, total)]
    else:
        bounds = np.linspace(0, total, 4 * cfg.workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_run_range, cfg, int(a), int(b))
                       for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
            chunks = [f.result() for f in futures]

    finds = sorted((f for c in chunks for f in c.finds), key=lambda f: f.index)
    seen = set()
    unique = []
    for f in finds:
        if f.mapping in seen:
            continue
        seen.add(f.mapping)
        unique.append(f)
    result = SearchResult(
        config=cfg,
        found=tuple(unique),
        candidates_tried=total,
        accepted_by_checker=sum(c.accepted for c in chunks),
        period_tests=sum(c.period_tests for c in chunks),
        duplicates=len(finds) - len(unique),
        linear_skipped=sum(c.linear_skipped for c in chunks),
    )
    log.info("search n=%d seed=%d: %d candidates, %d accepted, %d finds",
             cfg.n, cfg.rng_seed, total, result.accepted_by_checker, len(unique))
    return result


def load_config(path) -> SearchConfig:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError(f"config is not valid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return SearchConfig.from_dict(data)

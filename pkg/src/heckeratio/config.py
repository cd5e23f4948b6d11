"""Run configurations shared by the CLI and the experiment scripts."""
from __future__ import annotations

import dataclasses
from dataclasses import asdict, dataclass

from .lseries import DEFAULT_BITS, DEFAULT_TAIL


@dataclass(frozen=True)
class RunConfig:
    bits: int = DEFAULT_BITS
    tail: float = DEFAULT_TAIL
    workers: int = 1
    X: int | None = None  # None: chosen from the tail bound

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CounterexampleConfig:
    field: str = "Q(i)"
    k: int = 8
    d: str = "4+i"
    m: int = 7
    q_bound: int = 10 ** 4
    tolerance: float = 5e-8
    route: str = "dirichlet"
    run: RunConfig = dataclasses.field(default_factory=RunConfig)

    # fallback: quadrupled precision and X, q-bound 10^6, tolerance inside the soundness bound
    def fallback(self, x_cap: int = 10 ** 7) -> "CounterexampleConfig":
        from .lseries import choose_X

        chi = self.character()
        X = self.run.X or choose_X(chi.weight, self.m, self.run.tail, lattice=chi.base.lattice_constants())
        run = RunConfig(4 * self.run.bits, self.run.tail, self.run.workers, min(4 * X, x_cap))
        q = 10 ** 6
        return CounterexampleConfig(self.field, self.k, self.d, self.m, q, 1 / (4 * q * q), self.route, run)

    def character(self):
        from .qi import HeckeCharacterSpec

        return HeckeCharacterSpec(self.field, self.k)

    def to_json(self) -> dict:
        return asdict(self)


def run_counterexample(cfg: CounterexampleConfig):
    from .verify import counterexample_pipeline

    return counterexample_pipeline(cfg.character(), cfg.d, cfg.m, cfg.q_bound, cfg.tolerance, cfg.run.tail,
                                   cfg.run.bits, cfg.run.workers, cfg.run.X, cfg.route)

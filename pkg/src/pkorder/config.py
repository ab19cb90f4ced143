"""Budgets, seeds and work counters.

The active :class:`Budget` lives in a context variable so that concurrent
callers (threads, tasks) can each run with their own limits::

    with budget(gb_steps=500):
        strong_basis(...)
"""

from __future__ import annotations

import contextlib
import contextvars
import os
import random
from dataclasses import dataclass, field, replace

from .errors import LimitExceeded


def _env_seed() -> int:
    raw = os.environ.get("PKORDER_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


@dataclass
class Counters:
    gb_reductions: int = 0
    factorizations: int = 0
    rho_iterations: int = 0

    def as_dict(self) -> dict:
        return {
            "factorizations": self.factorizations,
            "gb_reductions": self.gb_reductions,
            "rho_iterations": self.rho_iterations,
        }


@dataclass
class Budget:
    max_bits: int = 128
    max_degree: int = 24
    gb_steps: int = 100_000
    seed: int = field(default_factory=_env_seed)
    counters: Counters = field(default_factory=Counters)

    def rng(self, salt: int = 0) -> random.Random:
        return random.Random((self.seed << 20) ^ salt)


_current: contextvars.ContextVar[Budget | None] = contextvars.ContextVar(
    "pkorder_budget", default=None
)


def current() -> Budget:
    b = _current.get()
    if b is None:
        b = Budget()
        _current.set(b)
    return b


@contextlib.contextmanager
def budget(**overrides):
    """Run a block under a fresh budget (fresh counters)."""
    base = current()
    new = replace(base, counters=Counters(), **overrides)
    token = _current.set(new)
    try:
        yield new
    finally:
        _current.reset(token)


class StepMeter:
    """Counts reduction steps for one Groebner computation."""

    __slots__ = ("limit", "used", "_counters")

    def __init__(self):
        b = current()
        self.limit = b.gb_steps
        self.used = 0
        self._counters = b.counters

    def tick(self, n: int = 1) -> None:
        self.used += n
        self._counters.gb_reductions += n
        if self.used > self.limit:
            raise LimitExceeded(f"Groebner step budget of {self.limit} exhausted")

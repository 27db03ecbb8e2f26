"""Adversarial, random and semi-adversarial channels.

The adversary picks its e0 positions and replacements first; the random
part then overwrites e - e0 of the remaining positions with uniform
symbols it never shows the adversary.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .codes import Word
from .errors import BudgetExceedsLength, InvalidParameters

I64 = np.int64


def make_rng(seed, *keys) -> np.random.Generator:
    """Counter-based stream for (seed, key...); independent across keys."""
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF] + [int(k) for k in keys])
    return np.random.Generator(np.random.Philox(ss))


# --- adversaries --------------------------------------------------------------


def _differing_tuple(F, current, rng):
    s = len(current)
    while True:
        t = F.random(rng, s)
        if not np.array_equal(t, current):
            return t


def _positions(n, e0, rng):
    return np.sort(rng.choice(n, size=e0, replace=False)).astype(I64)


def random_replace(c: Word, e0, rng, params=None):
    pos = _positions(c.n, e0, rng)
    return pos, {int(i): _differing_tuple(c.field, c.symbols[i], rng) for i in pos}


def burst(c: Word, e0, rng, params=None):
    n = c.n
    start = (params or {}).get("start")
    if start is None:
        start = int(rng.integers(0, n - e0 + 1))
    start = int(start)
    if not 0 <= start <= n - e0:
        raise InvalidParameters(f"burst start {start} leaves no room for {e0} positions")
    pos = np.arange(start, start + e0, dtype=I64)
    return pos, {int(i): _differing_tuple(c.field, c.symbols[i], rng) for i in pos}


def single_component(c: Word, e0, rng, params=None):
    F = c.field
    pos = _positions(c.n, e0, rng)
    writes = {}
    for i in pos:
        t = c.symbols[i].copy()
        h = int(rng.integers(0, c.s))
        t[h] = F.add(t[h], F.random_nonzero(rng))
        writes[int(i)] = t
    return pos, writes


def zero_out(c: Word, e0, rng, params=None):
    pos = _positions(c.n, e0, rng)
    return pos, {int(i): np.zeros(c.s, dtype=I64) for i in pos}


def position_targeted(c: Word, e0, rng, params=None):
    pos = np.arange(e0, dtype=I64)
    return pos, {int(i): _differing_tuple(c.field, c.symbols[i], rng) for i in pos}


ADVERSARIES = {
    "randomReplace": random_replace,
    "burst": burst,
    "singleComponent": single_component,
    "zeroOut": zero_out,
    "positionTargeted": position_targeted,
}


# --- channel ------------------------------------------------------------------


@dataclass(frozen=True)
class ChannelSpec:
    e0: int
    e: int
    adversary: str = "randomReplace"
    params: dict = dc_field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.adversary not in ADVERSARIES:
            raise InvalidParameters(f"unknown adversary {self.adversary!r}; "
                                    f"choose from {sorted(ADVERSARIES)}")
        if self.e0 < 0 or self.e < self.e0:
            raise InvalidParameters(f"need 0 <= e0 <= e, got e0={self.e0}, e={self.e}")

    def to_dict(self):
        return {"e0": self.e0, "e": self.e, "adversary": self.adversary,
                "params": dict(self.params), "seed": self.seed}


@dataclass(frozen=True)
class ErrorPattern:
    n: int
    set_i: tuple
    set_j: tuple
    adversarial_writes: dict
    random_positions: tuple
    random_values: dict = dc_field(default_factory=dict)

    @property
    def adversarial_positions(self):
        return tuple(sorted(self.adversarial_writes))

    def check(self):
        I, J = set(self.set_i), set(self.set_j)
        assert J <= I <= set(range(self.n))
        assert set(self.adversarial_writes) == set(range(self.n)) - I
        assert set(self.random_positions) == I - J

    def effective_counts(self, c: Word, y: Word):
        """(adversarial, random) positions where y actually differs from c."""
        diff = np.any(c.symbols != y.symbols, axis=1)
        adv = int(sum(diff[i] for i in self.adversarial_writes))
        rnd = int(sum(diff[i] for i in self.random_positions))
        return adv, rnd

    def to_dict(self, F=None):
        fmt = (lambda t: [int(x) for x in t]) if F is None else (
            lambda t: [F.element_str(x) for x in t])
        return {
            "n": self.n,
            "adversarial": {str(i): fmt(t) for i, t in sorted(self.adversarial_writes.items())},
            "random": {str(i): fmt(t) for i, t in sorted(self.random_values.items())},
        }

    @classmethod
    def from_dict(cls, d, F=None):
        parse = (lambda t: np.array([int(x) for x in t], I64)) if F is None else (
            lambda t: np.array([F.parse_element(str(x)) for x in t], I64))
        n = int(d["n"])
        adv = {int(i): parse(t) for i, t in d.get("adversarial", {}).items()}
        rnd = {int(i): parse(t) for i, t in d.get("random", {}).items()}
        I = tuple(i for i in range(n) if i not in adv)
        J = tuple(i for i in I if i not in rnd)
        return cls(n, I, J, adv, tuple(sorted(rnd)), rnd)


def apply_semi_adversarial(c: Word, spec: ChannelSpec, rng=None):
    """Corrupt c; returns (y, pattern).  rng defaults to the stream of spec.seed."""
    n = c.n
    if spec.e > n:
        raise BudgetExceedsLength(f"e={spec.e} exceeds n={n}")
    if rng is None:
        rng = make_rng(spec.seed)
    F = c.field
    pos, writes = ADVERSARIES[spec.adversary](c, spec.e0, rng, spec.params)
    attacked = set(int(i) for i in pos)
    if len(attacked) != spec.e0 or set(writes) != attacked:
        raise AssertionError("adversary broke its budget")
    I = np.array([i for i in range(n) if i not in attacked], dtype=I64)
    chosen = np.sort(rng.choice(I, size=spec.e - spec.e0, replace=False)) if len(I) else I[:0]
    values = F.random(rng, (len(chosen), c.s))
    a = c.symbols.copy()
    for i, t in writes.items():
        a[i] = t
    a[chosen] = values
    rset = set(int(i) for i in chosen)
    pattern = ErrorPattern(
        n=n,
        set_i=tuple(int(i) for i in I),
        set_j=tuple(int(i) for i in I if int(i) not in rset),
        adversarial_writes={i: np.asarray(t, I64) for i, t in writes.items()},
        random_positions=tuple(sorted(rset)),
        random_values={int(i): values[t] for t, i in enumerate(chosen)},
    )
    return Word(F, a), pattern


def apply_adversarial(c: Word, e, adversary="randomReplace", seed=0, params=None, rng=None):
    return apply_semi_adversarial(c, ChannelSpec(e, e, adversary, params or {}, seed), rng)


def apply_random(c: Word, e, seed=0, rng=None):
    return apply_semi_adversarial(c, ChannelSpec(0, e, "randomReplace", {}, seed), rng)


def apply_pattern(c: Word, pattern: ErrorPattern) -> Word:
    """Replay a logged pattern on a codeword."""
    a = c.symbols.copy()
    for i, t in pattern.adversarial_writes.items():
        a[i] = t
    for i, t in pattern.random_values.items():
        a[i] = t
    return Word(c.field, a)

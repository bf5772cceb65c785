"""Deterministic sampling and the two-seed stability policy.

Random choices model "general" objects (hyperplanes, element combinations).
A Sampler is a value: a 64-bit seed plus a coefficient height H.  Streams
are SplitMix64, so identical samplers replay identical draws on any
platform.  Genericity is never assumed from one draw: a quantity is
accepted only when two independent seeds agree exactly; on disagreement
the height doubles and both rerun, at most three times, after which the
computation reports itself inconclusive rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, TypeVar

from .errors import DegenerateSampleError, SamplingInconclusiveError

_MASK = (1 << 64) - 1

DEFAULT_HEIGHT = 101
MAX_ESCALATIONS = 3

T = TypeVar("T")


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit hash; the published per-entry seed derivation."""
    h = 0xCBF29CE484222325
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & _MASK
    return h


def derive_seed(global_seed: int, name: str) -> int:
    """Per-entry seed: FNV-1a over the 8-byte little-endian global seed
    followed by the entry name in UTF-8."""
    return fnv1a64((global_seed & _MASK).to_bytes(8, "little") + name.encode("utf-8"))


class _Stream:
    """SplitMix64 stream of draws; mutable, private to one computation."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def nonzero_int(self, height: int) -> int:
        """Uniform draw from [-height, height] minus {0}."""
        span = 2 * height
        while True:
            # Rejection sampling keeps the distribution exactly uniform.
            v = self.next_u64()
            limit = (1 << 64) - ((1 << 64) % span)
            if v < limit:
                r = v % span
                return r - height if r < height else r - height + 1


@dataclass(frozen=True)
class Sampler:
    """Seeded sampling configuration; identical values give identical draws."""

    seed: int
    height: int = DEFAULT_HEIGHT

    def stream(self) -> _Stream:
        return _Stream(self.seed)

    def split(self, tag: str) -> "Sampler":
        return Sampler(seed=fnv1a64(self.seed.to_bytes(8, "little") + tag.encode("utf-8")),
                       height=self.height)

    def with_height(self, height: int) -> "Sampler":
        return Sampler(seed=self.seed, height=height)


@dataclass(frozen=True)
class Certificate:
    """Record of a successful two-seed agreement."""

    seed_a: int
    seed_b: int
    height: int
    escalations: int


def stable_value(
    compute: Callable[[Sampler], T],
    sampler: Sampler,
    key: Callable[[T], object] | None = None,
    label: str = "generic computation",
) -> tuple[T, Certificate]:
    """Run compute under two independent seeds and demand exact agreement.

    Disagreement (or a degenerate draw) doubles the height and reruns both
    seeds, up to MAX_ESCALATIONS times; persistent disagreement raises
    SamplingInconclusiveError.  ``key`` projects values before comparison
    when full equality is too strict (e.g. witnesses may differ).
    """
    a_seed = fnv1a64(sampler.seed.to_bytes(8, "little") + b"two-seed/A")
    b_seed = fnv1a64(sampler.seed.to_bytes(8, "little") + b"two-seed/B")
    project = key if key is not None else (lambda v: v)
    for escalation in range(MAX_ESCALATIONS + 1):
        height = sampler.height << escalation
        try:
            va = compute(Sampler(seed=a_seed + escalation, height=height))
            vb = compute(Sampler(seed=b_seed + escalation, height=height))
        except DegenerateSampleError:
            continue
        if project(va) == project(vb):
            cert = Certificate(
                seed_a=a_seed + escalation,
                seed_b=b_seed + escalation,
                height=height,
                escalations=escalation,
            )
            return va, cert
    raise SamplingInconclusiveError(
        f"{label}: two-seed agreement failed after {MAX_ESCALATIONS} escalations"
    )

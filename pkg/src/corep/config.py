"""Run configuration: truncation windows and randomized-suite sizes."""
from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class WindowConfig:
    """Default truncation degree N for each infinite-dimensional family."""

    Hefuv: int = 3
    Anq: int = 2
    Hinf: int = 2
    B: int = 1
    fallback: int = 2

    def for_family(self, family: str) -> int:
        return self.families().get(family, self.fallback)

    def families(self) -> dict:
        d = asdict(self)
        d.pop("fallback")
        return d


@dataclass(frozen=True)
class PropertyConfig:
    """Sample counts for the seeded property suites."""

    seed: int = 1
    confluence_triples: int = 500
    bialgebra_pairs: int = 200
    antipode_samples: int = 200
    scalar_samples: int = 1000


WINDOWS = WindowConfig()
PROPERTIES = PropertyConfig()

"""Shared defaults for the verification suites and scripts."""
from __future__ import annotations

import string
from dataclasses import dataclass


@dataclass(frozen=True)
class SuiteDefaults:
    """Desk-scale bounds used when the CLI flags are left at their defaults."""

    generators: int = 3
    max_degree: int = 5
    dims_max: int = 6
    invariance_slots: int = 4
    relabel_seeds: tuple[int, ...] = (1, 2, 3, 4, 5)
    iteration_cap: int = 64


DEFAULTS = SuiteDefaults()


def generator_names(count: int) -> tuple[str, ...]:
    """The first ``count`` lowercase letters, so string order is basis order."""
    if not 1 <= count <= len(string.ascii_lowercase):
        raise ValueError(
            f"generator count must be between 1 and {len(string.ascii_lowercase)},"
            f" got {count}")
    return tuple(string.ascii_lowercase[:count])

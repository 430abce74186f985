"""The 21 benchmark problems and their reference sets."""

from __future__ import annotations

from functools import lru_cache

from . import classic, idmp, mmf, mmmop
from .base import OutOfBoundsError, ProblemSpec, evaluate
from .reference import (
    REFSET_ENV,
    MissingReferenceError,
    ReferenceSet,
    generate_reference,
    load_reference,
    write_reference,
)

__all__ = [
    "MissingReferenceError",
    "OutOfBoundsError",
    "ProblemSpec",
    "REFSET_ENV",
    "ReferenceSet",
    "evaluate",
    "generate_reference",
    "get_problem",
    "list_problems",
    "load_reference",
    "write_reference",
]


@lru_cache(maxsize=None)
def _registry() -> tuple[ProblemSpec, ...]:
    return tuple(mmf.build() + classic.build() + mmmop.build() + idmp.build())


def list_problems() -> list[ProblemSpec]:
    """All problems, in table order."""
    return list(_registry())


def _key(name: str) -> str:
    return "".join(ch for ch in name.lower() if ch.isalnum())


_ALIASES = {"sympart1": "sympartsimple", "sympart2": "sympartrotated", "omni": "omnitest"}


def get_problem(name: str) -> ProblemSpec:
    """Look a problem up by name; case, dashes and spaces are ignored."""
    key = _key(name)
    key = _ALIASES.get(key, key)
    for spec in _registry():
        if _key(spec.name) == key:
            return spec
    known = ", ".join(p.name for p in _registry())
    raise KeyError(f"unknown problem {name!r}; known problems: {known}")

"""Runtime switches for cross-checking and size caps.

Cross-checks are off by default. The test suite switches them on. They are
held in a context variable so concurrent callers do not interfere.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

DEFAULT_CANON_CAP = 8
DEFAULT_EXPANSION_CAP = 10
# delta() only runs its Leibniz cross-check up to this dimension
DELTA_ORACLE_MAX_N = 8


@dataclass(frozen=True)
class Checks:
    mutation: bool = False
    delta: bool = False


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


_checks: ContextVar[Checks] = ContextVar(
    "mutinv_checks",
    default=Checks(
        mutation=_env_flag("MUTINV_CHECK_MUTATION"),
        delta=_env_flag("MUTINV_CHECK_DELTA"),
    ),
)


def current_checks() -> Checks:
    return _checks.get()


@contextmanager
def checking(**flags: bool):
    """Temporarily enable or disable cross-checks, e.g. ``checking(delta=False)``."""
    token = _checks.set(replace(_checks.get(), **flags))
    try:
        yield
    finally:
        _checks.reset(token)


def canon_cap() -> int:
    raw = os.environ.get("MUTINV_CANON_CAP")
    if raw is None:
        return DEFAULT_CANON_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError("MUTINV_CANON_CAP must be positive")
    return cap

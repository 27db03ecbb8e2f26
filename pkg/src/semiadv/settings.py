"""Runtime switches and algorithm thresholds.

``SEMIADV_NUMBA=0`` disables the numba kernels (pure numpy fallback).
``SEMIADV_FAST=0`` disables the fast algorithms (schoolbook products,
naive interpolation, iterative module reduction).
``SEMIADV_THREADS`` sets the default worker count for experiments.
"""

import contextlib
import os
from dataclasses import dataclass


def _flag(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() not in ("0", "false", "no", "off", "")


@dataclass
class Settings:
    fast: bool = True
    karatsuba_threshold: int = 32
    ntt_threshold: int = 256
    horner_threshold: int = 16
    tree_leaf: int = 16
    newton_threshold: int = 64
    reduction_leaf: int = 48
    ntt_two_adicity: int = 12
    threads: int = 1


settings = Settings(
    fast=_flag("SEMIADV_FAST", True),
    threads=max(1, int(os.environ.get("SEMIADV_THREADS", "1") or 1)),
)


@contextlib.contextmanager
def configured(**kw):
    """Temporarily override entries of the global settings."""
    old = {k: getattr(settings, k) for k in kw}
    for k, v in kw.items():
        if not hasattr(settings, k):
            raise AttributeError(k)
        setattr(settings, k, v)
    try:
        yield settings
    finally:
        for k, v in old.items():
            setattr(settings, k, v)


def naive_algorithms():
    """Context manager selecting the quadratic reference algorithms."""
    return configured(fast=False)

"""Deliberate formula corruption, for checking that verification catches it."""

from __future__ import annotations

from contextlib import contextmanager

from . import qexact
from .api import clear_caches


@contextmanager
def flipped_pochhammer_sign():
    """Make every q -> -q Pochhammer use +q instead."""
    clear_caches()
    qexact._FLIP_ALTERNATING = True
    try:
        yield
    finally:
        qexact._FLIP_ALTERNATING = False
        clear_caches()

"""Growable ambient dimension.

Padding a vector with zeros on the right is an order-embedding of Q^n into
Q^(n+k): the new coordinates are less significant than every old one.  A
fresh coordinate therefore provides values infinitesimally close (in the
lex sense) to any old value, which is how genuinely new values are placed.
"""

from __future__ import annotations

import threading
from typing import Iterable

from ..group import ExpVec


def pad(x, k: int):
    """Zero-pad an ExpVec or Series by k coordinates."""
    if k == 0:
        return x
    return x.pad(k)


def place_above(u: ExpVec, n_new: int) -> ExpVec:
    """A value just above u: pad(u) + e_{n_new}.  Nothing old lies strictly between."""
    k = n_new - len(u)
    if k < 1:
        raise ValueError("place_above needs at least one fresh coordinate")
    return u.pad(k) + ExpVec.unit(n_new, n_new)


def place_below(u: ExpVec, n_new: int) -> ExpVec:
    k = n_new - len(u)
    if k < 1:
        raise ValueError("place_below needs at least one fresh coordinate")
    return u.pad(k) - ExpVec.unit(n_new, n_new)


def place_between(u: ExpVec, v: ExpVec, n_new: int) -> ExpVec:
    """A fresh value strictly between old values u < v."""
    if not u < v:
        raise ValueError(f"place_between needs u < v, got {u} and {v}")
    return place_above(u, n_new)


class Ambient:
    """Workspace-scoped ambient dimension.

    ``extend`` is the only mutating operation of the whole package; it is
    serialized by a lock so that concurrent runs in one workspace observe a
    consistent dimension.
    """

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError("ambient dimension must be at least 1")
        self._n = n
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return self._n

    def extend(self, k: int = 1) -> int:
        if k < 1:
            raise ValueError("extend_ambient needs k >= 1")
        with self._lock:
            self._n += k
            return self._n

    def embed(self, x):
        """Pad an ExpVec or Series from an older (smaller) dimension."""
        old = len(x) if isinstance(x, ExpVec) else x.dim
        return pad(x, self._n - old)

    def embed_all(self, xs: Iterable) -> list:
        return [self.embed(x) for x in xs]


def extend_ambient(ambient: Ambient, k: int = 1) -> int:
    return ambient.extend(k)


__all__ = ["Ambient", "extend_ambient", "pad", "place_above", "place_below", "place_between"]

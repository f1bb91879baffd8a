"""Semantics registry for defined atoms.

A defined atom is known to the symbolic layer only by its symbol, arguments and
declared hierarchy class; what it *means* over the naturals lives here.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Hashable, Optional, Sequence

from .formula import HierarchyClass


class RegistryError(KeyError):
    pass


@dataclass(frozen=True)
class AtomSpec:
    """Executable meaning of a defined atom.

    ``holds(*args)`` returns True/False, or None when it cannot decide.
    ``candidates(position, args)`` optionally returns the complete ascending
    list of values the argument at ``position`` can take for the atom to
    hold, given the other arguments (``args[position]`` is None). Returning
    None means no finite candidate set is known.
    """

    symbol: str
    arity: int
    declared_class: HierarchyClass
    holds: Callable[..., Optional[bool]] = field(compare=False)
    candidates: Optional[Callable[[int, Sequence], Optional[list]]] = field(default=None, compare=False)
    key: Hashable = None


class Registry:
    def __init__(self):
        self._atoms: dict = {}
        self._lock = threading.Lock()

    def register(self, spec: AtomSpec) -> AtomSpec:
        """Register ``spec``; re-registering the same key is a no-op, anything else collides."""
        with self._lock:
            old = self._atoms.get(spec.symbol)
            if old is not None:
                if old.key is not None and old.key == spec.key:
                    return old
                raise RegistryError(f"atom symbol {spec.symbol!r} already registered")
            self._atoms[spec.symbol] = spec
            return spec

    def get(self, symbol: str) -> AtomSpec:
        try:
            return self._atoms[symbol]
        except KeyError:
            raise RegistryError(f"unregistered atom {symbol!r}") from None

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._atoms

    def symbols(self) -> list:
        return sorted(self._atoms)

    def copy(self) -> Registry:
        new = Registry()
        new._atoms = dict(self._atoms)
        return new


REGISTRY = Registry()

"""On-demand infinite words.

Every infinite word the package studies (IET and rotation codings, fixed
points of substitutions, periodic words) is a :class:`SymbolSequence`: a
deterministic generator whose prefix is memoized, so asking for a longer
prefix only computes the new symbols.  Letters are single characters and
finite words are plain ``str``.
"""

from __future__ import annotations

import threading


class SymbolSequence:
    """Memoized one-sided infinite word.

    Subclasses implement :meth:`_extend`, which must append at least one
    symbol to ``self._buf`` per call.  Extension is serialized by a lock so
    concurrent readers observe identical symbols.
    """

    name = "sequence"

    def __init__(self) -> None:
        self._buf: list[str] = []
        self._text = ""
        self._lock = threading.Lock()

    def _extend(self, n: int) -> None:
        raise NotImplementedError

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be nonnegative")
        if len(self._text) < n:
            with self._lock:
                if len(self._buf) < n:
                    self._extend(n)
                    self._text = "".join(self._buf)
        return self._text[:n]

    def __getitem__(self, i: int) -> str:
        if i < 0:
            raise IndexError("infinite words have no negative indices")
        return self.prefix(i + 1)[i]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}: {self.prefix(20)}...>"


class PeriodicSequence(SymbolSequence):
    """The word ``period`` repeated forever, e.g. ``(0100100001)^omega``."""

    def __init__(self, period: str, name: str | None = None):
        if not period:
            raise ValueError("period must be nonempty")
        super().__init__()
        self.period = period
        self.name = name or f"({period})^w"

    def _extend(self, n: int) -> None:
        p = len(self.period)
        have = len(self._buf)
        reps = (n - have) // p + 2
        tail = (self.period * reps)[have % p :]
        self._buf.extend(tail[: n - have])


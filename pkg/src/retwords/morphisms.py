"""Substitutions and their fixed points.

>>> chacon = Morphism({"1": "12", "2": "312", "3": "3312"})
>>> chacon.apply("12")
'12312'
>>> fixed_point_prefix(chacon, "1", 12)
'123123312123'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .words import SymbolSequence

__all__ = ["Morphism", "FixedPointSequence", "fixed_point_prefix"]


@dataclass(frozen=True)
class Morphism:
    """Non-erasing substitution on single-character letters."""

    images: Mapping[str, str]
    alphabet: frozenset[str] = field(init=False)

    def __post_init__(self):
        images = dict(self.images)
        for a, img in images.items():
            if len(a) != 1:
                raise ValueError(f"letters are single characters, got {a!r}")
            if not img:
                raise ValueError(f"image of {a!r} is empty")
        alphabet = frozenset(images)
        stray = {c for img in images.values() for c in img} - alphabet
        if stray:
            raise ValueError(f"images use letters {sorted(stray)} outside the alphabet")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "alphabet", alphabet)

    def __hash__(self):
        return hash(tuple(sorted(self.images.items())))

    def apply(self, w: str) -> str:
        try:
            return "".join(self.images[c] for c in w)
        except KeyError as exc:
            raise ValueError(f"letter {exc.args[0]!r} not in the alphabet") from None

    __call__ = apply

    def is_prolongable(self, a: str) -> bool:
        img = self.images.get(a, "")
        return len(img) >= 2 and img[0] == a

    @property
    def prolongable_letters(self) -> list[str]:
        return sorted(a for a in self.images if self.is_prolongable(a))

    def to_json(self) -> dict:
        return {"kind": "morphism", "images": dict(sorted(self.images.items()))}


class FixedPointSequence(SymbolSequence):
    """The fixed point of ``m`` beginning with ``seed``.

    Uses ``x = m(x)``: the letters of ``x`` are read one at a time and their
    images appended, which never gets ahead of itself because
    ``|m(seed)| >= 2`` and no image is empty.
    """

    def __init__(self, m: Morphism, seed: str):
        if not m.is_prolongable(seed):
            raise ValueError(f"{seed!r} is not prolongable: m({seed}) = {m.images.get(seed)!r}")
        super().__init__()
        self.morphism = m
        self.seed = seed
        self.name = f"fixed point from {seed}"
        self._buf.extend(m.images[seed])
        self._read = 1

    def _extend(self, n: int) -> None:
        buf, images = self._buf, self.morphism.images
        while len(buf) < n:
            buf.extend(images[buf[self._read]])
            self._read += 1


def fixed_point_prefix(m: Morphism, seed: str, length: int) -> str:
    return FixedPointSequence(m, seed).prefix(length)

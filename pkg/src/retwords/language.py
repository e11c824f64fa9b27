"""Factors and complexity.

For a regular IET the factors of length ``n`` are read off the ordered
point set ``X^(n) = X^(1) u T^-1 X^(1) u ... u T^-(n-1) X^(1)``: every gap
between consecutive points is the interval of starting points of exactly
one factor, so ``p(n) = n(k-1) + 1``.  For arbitrary sequences factors are
collected by scanning a prefix, which can confirm but never certify the
count.  Rotation codings additionally admit an exact membership test:
``w`` is a factor iff the arc set ``I(w) = ∩_j R^-j I_{w_j}`` is nonempty.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass
from typing import Iterable

from .dynamics import ONE, ZERO, IETransform, Interval, RotationCoding
from .errors import RegularityViolation
from .scalar import Scalar
from .words import SymbolSequence

__all__ = [
    "PartitionLevel",
    "FactorSet",
    "ArcSet",
    "FactorTest",
    "partition_level",
    "factors",
    "factors_scan",
    "complexity",
    "complexity_table",
    "complexity_csv",
    "rotation_factor_test",
    "DEFAULT_PREFIX",
]

DEFAULT_PREFIX = 100_000


@dataclass(frozen=True)
class PartitionLevel:
    n: int
    points: tuple[Scalar, ...]
    cells: tuple[tuple[Interval, str], ...]

    @property
    def words(self) -> list[str]:
        return [w for _, w in self.cells]

    def cell_of(self, w: str) -> Interval | None:
        for iv, word in self.cells:
            if word == w:
                return iv
        return None


def _code(T: IETransform, x: Scalar, n: int) -> str:
    out = []
    for _ in range(n):
        out.append(T.letter(x))
        x = T.forward(x)
    return "".join(out)


def partition_level(T: IETransform, n: int) -> PartitionLevel:
    """Exact ordered set ``X^(n)`` with each gap labelled by its factor.

    ``T^-1`` is applied to the left-closed endpoints ``a_1..a_k``; the
    right boundary 1 has no preimage in ``[0, 1)`` and is kept as is.
    Raises :class:`RegularityViolation` when fewer than ``n(k-1)+2``
    distinct points appear, which means an endpoint connection of length
    below ``n``.
    """
    if n < 1:
        raise ValueError("partition level needs n >= 1")
    pts = set(T.endpoints)
    front = list(T.endpoints[:-1])
    for _ in range(n - 1):
        front = [T.inverse(x) for x in front]
        pts.update(front)
    expected = n * (T.k - 1) + 2
    if len(pts) != expected:
        raise RegularityViolation(
            f"X^({n}) has {len(pts)} points, a regular IET has {expected}"
        )
    points = tuple(sorted(pts))
    cells = []
    for lo, hi in zip(points, points[1:]):
        iv = Interval(lo, hi)
        cells.append((iv, _code(T, iv.midpoint, n)))
    if len({w for _, w in cells}) != len(cells):
        raise RegularityViolation(f"two cells of X^({n}) carry the same factor")
    return PartitionLevel(n, points, tuple(cells))


@dataclass(frozen=True)
class FactorSet:
    n: int
    words: frozenset[str]
    source: str  # "geometric" or "scan"
    prefix_len: int | None = None

    def __len__(self) -> int:
        return len(self.words)

    def sorted(self) -> list[str]:
        return sorted(self.words)


def factors(T: IETransform, n: int) -> FactorSet:
    """Factors of length ``n`` of any coding of the regular IET ``T``."""
    if n == 0:
        return FactorSet(0, frozenset({""}), "geometric")
    level = partition_level(T, n)
    return FactorSet(n, frozenset(level.words), "geometric")


def factors_scan(seq: SymbolSequence, n: int, prefix_len: int = DEFAULT_PREFIX) -> FactorSet:
    """Distinct length-``n`` blocks of the first ``prefix_len`` symbols."""
    if prefix_len < n:
        raise ValueError("prefix_len must be at least n")
    if n == 0:
        return FactorSet(0, frozenset({""}), "scan", prefix_len)
    text = seq.prefix(prefix_len)
    words = {text[i : i + n] for i in range(prefix_len - n + 1)}
    return FactorSet(n, frozenset(words), "scan", prefix_len)


def complexity(fs: FactorSet) -> int:
    return len(fs.words)


def complexity_table(
    source: IETransform | SymbolSequence,
    ns: Iterable[int],
    prefix_len: int = DEFAULT_PREFIX,
    k: int | None = None,
) -> list[dict]:
    """Rows ``{n, p, expected, match}``.

    IETs are counted geometrically and compared with ``n(k-1)+1``.  A
    sequence is scanned; ``k`` (if given) supplies the expected count and
    a warning is issued when the scan falls short of it.
    """
    rows = []
    for n in ns:
        if isinstance(source, IETransform):
            p = complexity(factors(source, n))
            kk = source.k
        else:
            p = complexity(factors_scan(source, n, prefix_len))
            kk = k
        expected = n * (kk - 1) + 1 if kk is not None else None
        if expected is not None and not isinstance(source, IETransform) and p < expected:
            warnings.warn(f"scan of {prefix_len} symbols found {p} < {expected} factors of length {n}")
        rows.append({"n": n, "p": p, "expected": expected, "match": None if expected is None else p == expected})
    return rows


def complexity_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["n", "p(n)", "expected", "match"])
    for r in rows:
        exp = "" if r["expected"] is None else r["expected"]
        match = "" if r["match"] is None else str(r["match"]).lower()
        out.writerow([r["n"], r["p"], exp, match])
    return buf.getvalue()


# -- rotation codings -------------------------------------------------------------


@dataclass(frozen=True)
class ArcSet:
    """Finite union of arcs of the circle ``[0, 1)``.

    Stored as sorted disjoint non-adjacent half-open pieces of ``[0, 1)``;
    a piece ending at 1 and one starting at 0 form a single arc.
    """

    pieces: tuple[Interval, ...]

    @classmethod
    def arc(cls, start: Scalar, length: Scalar) -> ArcSet:
        if length >= ONE:
            return cls((Interval(ZERO, ONE),))
        s = start.mod1()
        e = s + length
        if e <= ONE:
            return cls((Interval(s, e),))
        return cls._normal([Interval(ZERO, e - 1), Interval(s, ONE)])

    @classmethod
    def _normal(cls, parts: list[Interval]) -> ArcSet:
        parts = sorted(parts, key=lambda iv: iv.left)
        merged: list[Interval] = []
        for iv in parts:
            if merged and iv.left <= merged[-1].right:
                if iv.right > merged[-1].right:
                    merged[-1] = Interval(merged[-1].left, iv.right)
            else:
                merged.append(iv)
        return cls(tuple(merged))

    def rotate(self, t: Scalar) -> ArcSet:
        parts: list[Interval] = []
        for iv in self.pieces:
            parts.extend(ArcSet.arc(iv.left + t, iv.length).pieces)
        return ArcSet._normal(parts)

    def intersect(self, other: ArcSet) -> ArcSet:
        out = []
        for a in self.pieces:
            for b in other.pieces:
                c = a.intersect(b)
                if c is not None:
                    out.append(c)
        return ArcSet._normal(out)

    def __bool__(self) -> bool:
        return bool(self.pieces)

    def measure(self) -> Scalar:
        return sum((iv.length for iv in self.pieces), ZERO)

    def components(self) -> list[tuple[Scalar, Scalar]]:
        """Connected arcs ``(start, end)``; ``end < start`` marks a wrap."""
        ps = [(iv.left, iv.right) for iv in self.pieces]
        if len(ps) >= 2 and ps[0][0] == ZERO and ps[-1][1] == ONE:
            (_, e), (s, _) = ps[0], ps[-1]
            return ps[1:-1] + [(s, e)]
        return ps


@dataclass(frozen=True)
class FactorTest:
    word: str
    is_factor: bool
    witness: ArcSet

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "factor": self.is_factor,
            "arcs": [[str(a), str(b)] for a, b in self.witness.components()],
        }


def rotation_factor_test(rc: RotationCoding, w: str) -> FactorTest:
    """Decide whether ``w`` is a factor of the coding of ``rc``.

    The answer does not depend on the start point because the orbit of an
    irrational rotation is dense; rational angles are rejected.
    """
    if not rc.is_irrational:
        raise ValueError("the arc criterion needs an irrational angle; scan instead")
    bad = set(w) - set(rc.letters)
    if bad:
        raise ValueError(f"letters {sorted(bad)} not in alphabet {rc.letters!r}")
    acc = ArcSet((Interval(ZERO, ONE),))
    for j, ch in enumerate(w):
        c = int(ch)
        cell = ArcSet.arc(rc.points[c], rc.arc_length(c))
        acc = acc.intersect(cell.rotate(-j * rc.angle))
        if not acc:
            break
    return FactorTest(w, bool(acc), acc)

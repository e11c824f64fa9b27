"""Interval exchange transformations and codings of rotations.

An IET of ``k`` intervals is given by positive lengths ``lambda_1..lambda_k``
summing to 1 and a permutation ``sigma`` in one-line notation.  The unit
interval is cut into ``X_i = [a_i, a_{i+1})`` and the images are laid out
left to right in the order ``X_sigma(1), ..., X_sigma(k)``: interval ``i``
lands at position ``sigma^-1(i)``, so it is translated by

    t_i = sum(lambda_sigma(m) for m < sigma^-1(i)) - sum(lambda_m for m < i).

With this convention ``[2, 1]`` is the two-interval swap (rotation by
``lambda_2``) and ``[k, 1, 2, ..., k-1]`` is the rotation by ``lambda_k``.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

from .errors import NotReducible
from .scalar import Scalar, ScalarLike, as_scalar
from .words import SymbolSequence

__all__ = [
    "Interval",
    "IETransform",
    "RotationCoding",
    "ReducedRotation",
    "KeaneReport",
    "Verdict",
    "OrbitCoding",
    "build_iet",
    "apply",
    "keane_check",
    "verify_connection",
    "code_orbit",
    "coding",
    "to_iet",
    "DEFAULT_HORIZON",
]

DEFAULT_HORIZON = 1000
_DEFAULT_LETTERS = "123456789abcdefghijklmnopqrstuvwxyz"
ZERO = Scalar(0)
ONE = Scalar(1)


@dataclass(frozen=True)
class Interval:
    """Half-open interval ``[left, right)``."""

    left: Scalar
    right: Scalar

    def __contains__(self, x: Scalar) -> bool:
        return self.left <= x < self.right

    def closure_contains(self, x: Scalar) -> bool:
        return self.left <= x <= self.right

    def interior_contains(self, x: Scalar) -> bool:
        return self.left < x < self.right

    @property
    def length(self) -> Scalar:
        return self.right - self.left

    @property
    def midpoint(self) -> Scalar:
        return (self.left + self.right) / 2

    def shifted(self, t: Scalar) -> Interval:
        return Interval(self.left + t, self.right + t)

    def intersect(self, other: Interval) -> Interval | None:
        lo = max(self.left, other.left)
        hi = min(self.right, other.right)
        return Interval(lo, hi) if lo < hi else None

    def to_json(self) -> list[str]:
        return [str(self.left), str(self.right)]

    def __str__(self) -> str:
        return f"[{self.left}, {self.right})"


@dataclass(frozen=True)
class IETransform:
    """Interval exchange ``T(x) = x + t_i`` for ``x`` in ``X_i``.

    Build instances with :func:`build_iet`, which validates the input.
    ``letters[i-1]`` is the symbol coding ``X_i``.
    """

    lengths: tuple[Scalar, ...]
    permutation: tuple[int, ...]
    letters: str
    endpoints: tuple[Scalar, ...] = field(init=False, repr=False, compare=False)
    translations: tuple[Scalar, ...] = field(init=False, repr=False, compare=False)
    image_endpoints: tuple[Scalar, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = len(self.lengths)
        ends = [ZERO]
        for lam in self.lengths:
            ends.append(ends[-1] + lam)
        img = [ZERO]
        for j in range(k):
            img.append(img[-1] + self.lengths[self.permutation[j] - 1])
        position = {label: j for j, label in enumerate(self.permutation)}
        trans = tuple(img[position[i + 1]] - ends[i] for i in range(k))
        object.__setattr__(self, "endpoints", tuple(ends))
        object.__setattr__(self, "translations", trans)
        object.__setattr__(self, "image_endpoints", tuple(img))

    @property
    def k(self) -> int:
        return len(self.lengths)

    @property
    def radicand(self) -> int:
        return max((lam.d for lam in self.lengths), default=0)

    @property
    def interior_endpoints(self) -> tuple[Scalar, ...]:
        return self.endpoints[1:-1]

    @property
    def is_irreducible(self) -> bool:
        return _first_invariant_prefix(self.permutation) is None

    def index(self, x: Scalar) -> int:
        """1-based index ``i`` with ``x`` in ``X_i``."""
        if not (ZERO <= x < ONE):
            raise ValueError(f"point {x} outside [0, 1)")
        return bisect_right(self.endpoints, x, 0, self.k)

    def letter(self, x: Scalar) -> str:
        return self.letters[self.index(x) - 1]

    def interval(self, i: int) -> Interval:
        return Interval(self.endpoints[i - 1], self.endpoints[i])

    def forward(self, x: Scalar) -> Scalar:
        return x + self.translations[self.index(x) - 1]

    def inverse(self, x: Scalar) -> Scalar:
        if not (ZERO <= x < ONE):
            raise ValueError(f"point {x} outside [0, 1)")
        j = bisect_right(self.image_endpoints, x, 0, self.k)
        return x - self.translations[self.permutation[j - 1] - 1]

    def __call__(self, x: Scalar) -> Scalar:
        return self.forward(x)

    def to_json(self) -> dict:
        return {
            "kind": "iet",
            "lengths": [str(x) for x in self.lengths],
            "permutation": list(self.permutation),
            "letters": self.letters,
        }


def _first_invariant_prefix(perm: Sequence[int]) -> int | None:
    # smallest l < k with sigma({1..l}) == {1..l}
    top = 0
    for ell, v in enumerate(perm[:-1], start=1):
        top = max(top, v)
        if top == ell:
            return ell
    return None


def build_iet(
    lengths: Sequence[ScalarLike],
    permutation: Sequence[int],
    letters: str | None = None,
) -> IETransform:
    """Validate the data and construct the interval exchange."""
    lams = tuple(as_scalar(x) for x in lengths)
    perm = tuple(int(v) for v in permutation)
    k = len(lams)
    if k < 1:
        raise ValueError("an IET needs at least one interval")
    if sorted(perm) != list(range(1, k + 1)):
        raise ValueError(f"permutation {list(perm)} is not a bijection of 1..{k}")
    for i, lam in enumerate(lams, start=1):
        if lam <= 0:
            raise ValueError(f"length lambda_{i} = {lam} is not positive")
    total = sum(lams, ZERO)
    if total != ONE:
        raise ValueError(f"lengths sum to {total}, not 1")
    if letters is None:
        if k > len(_DEFAULT_LETTERS):
            raise ValueError("too many intervals for the default alphabet")
        letters = _DEFAULT_LETTERS[:k]
    if len(letters) != k or len(set(letters)) != k:
        raise ValueError(f"letters {letters!r} must be {k} distinct symbols")
    return IETransform(lams, perm, letters)


def apply(T: IETransform, x: Scalar, direction: str = "forward") -> Scalar:
    if direction == "forward":
        return T.forward(x)
    if direction == "inverse":
        return T.inverse(x)
    raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")


# -- rotations ------------------------------------------------------------


@dataclass(frozen=True)
class RotationCoding:
    """Coding of ``x -> x + angle (mod 1)`` by the arcs ``[beta_j, beta_{j+1})``.

    The last arc ``[beta_{p-1}, beta_0 + 1)`` wraps through 0 when
    ``beta_0 > 0``.  Letters are ``"0", "1", ...``.
    """

    angle: Scalar
    points: tuple[Scalar, ...]
    start: Scalar = ZERO

    def __post_init__(self):
        if not (ZERO < self.angle < ONE):
            raise ValueError(f"angle {self.angle} must lie in (0, 1)")
        pts = self.points
        if len(pts) < 2:
            raise ValueError("a rotation coding needs at least 2 partition points")
        if any(not (ZERO <= b < ONE) for b in pts):
            raise ValueError("partition points must lie in [0, 1)")
        if any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
            raise ValueError("partition points must be strictly increasing")
        if len(pts) > 10:
            raise ValueError("at most 10 arcs are supported")
        if not (ZERO <= self.start < ONE):
            raise ValueError("start point must lie in [0, 1)")

    @property
    def p(self) -> int:
        return len(self.points)

    @property
    def letters(self) -> str:
        return "0123456789"[: self.p]

    @property
    def is_irrational(self) -> bool:
        return not self.angle.is_rational

    def arc_length(self, j: int) -> Scalar:
        if j == self.p - 1:
            return self.points[0] + 1 - self.points[-1]
        return self.points[j + 1] - self.points[j]

    def letter(self, y: Scalar) -> str:
        j = bisect_right(self.points, y) - 1
        return self.letters[j]  # j == -1 wraps to the last arc

    def step(self, y: Scalar) -> Scalar:
        return (y + self.angle).mod1()

    def to_json(self) -> dict:
        return {
            "kind": "rotation",
            "angle": str(self.angle),
            "points": [str(b) for b in self.points],
            "start": str(self.start),
        }


# -- orbit codings -----------------------------------------------------------


Source = Union[IETransform, RotationCoding]


class OrbitCoding(SymbolSequence):
    """The coding ``U(x)_n`` of the forward orbit of ``x``."""

    def __init__(self, source: Source, x: Scalar):
        super().__init__()
        if not (ZERO <= x < ONE):
            raise ValueError(f"start point {x} outside [0, 1)")
        self.source = source
        self.start = x
        self._point = x
        kind = "iet" if isinstance(source, IETransform) else "rotation"
        self.name = f"{kind} coding from {x}"

    def _extend(self, n: int) -> None:
        src, y, buf = self.source, self._point, self._buf
        if isinstance(src, IETransform):
            ends, trans, letters, k = src.endpoints, src.translations, src.letters, src.k
            for _ in range(n - len(buf)):
                i = bisect_right(ends, y, 0, k) - 1
                buf.append(letters[i])
                y = y + trans[i]
        else:
            for _ in range(n - len(buf)):
                buf.append(src.letter(y))
                y = src.step(y)
        self._point = y


@lru_cache(maxsize=64)
def coding(source: Source, x: Scalar = ZERO) -> OrbitCoding:
    """Shared memoized coding sequence of ``source`` from ``x``."""
    return OrbitCoding(source, x)


def code_orbit(source: Source, x: ScalarLike, n: int) -> str:
    """First ``n`` symbols of the orbit coding of ``x``."""
    return coding(source, as_scalar(x)).prefix(n)


# -- regularity ---------------------------------------------------------------


class Verdict(str, enum.Enum):
    PASS = "pass-at-horizon"
    FAIL = "fail"


@dataclass(frozen=True)
class KeaneReport:
    """Outcome of a finite-horizon Keane check.

    ``witness`` is ``(n, i, j)`` with ``T^n(a_i) == a_j``, indices as in
    ``a_1 = 0 < a_2 < ... < a_{k+1} = 1``.
    """

    verdict: Verdict
    horizon: int
    witness: tuple[int, int, int] | None = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "horizon": self.horizon,
            "witness": list(self.witness) if self.witness else None,
            "reason": self.reason,
        }


def verify_connection(T: IETransform, n: int, i: int, j: int) -> bool:
    """Re-check ``T^n(a_i) == a_j`` by direct iteration."""
    y = T.endpoints[i - 1]
    for _ in range(n):
        y = T.forward(y)
    return y == T.endpoints[j - 1]


def keane_check(T: IETransform, horizon: int = DEFAULT_HORIZON) -> KeaneReport:
    """Search for ``T^n(a_i) == a_j`` with ``1 <= n <= horizon``, ``i, j`` interior.

    A reducible permutation fails immediately: if ``sigma`` fixes
    ``{1..l}`` then ``T(a_sigma(l+1)) == a_{l+1}``.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if T.k < 2:
        return KeaneReport(Verdict.FAIL, horizon, None, "a single interval is never regular")
    ell = _first_invariant_prefix(T.permutation)
    if ell is not None:
        i = T.permutation[ell]
        return KeaneReport(Verdict.FAIL, horizon, (1, i, ell + 1), f"reducible: sigma fixes {{1..{ell}}}")
    targets = {a: j for j, a in enumerate(T.endpoints[1:-1], start=2)}
    for i in range(2, T.k + 1):
        y = T.endpoints[i - 1]
        for n in range(1, horizon + 1):
            y = T.forward(y)
            j = targets.get(y)
            if j is not None:
                return KeaneReport(Verdict.FAIL, horizon, (n, i, j), "endpoint connection")
    return KeaneReport(Verdict.PASS, horizon)


# -- rotation to IET -------------------------------------------------------------


@dataclass(frozen=True)
class ReducedRotation:
    """A rotation coding rewritten as an IET.

    Coordinates are shifted by ``-shift`` so the arc of length ``angle``
    becomes the last interval; ``iet.letters`` keeps the rotation's letters,
    so ``code_orbit(iet, start, n) == code_orbit(rotation, rotation.start, n)``.
    """

    iet: IETransform
    start: Scalar
    shift: Scalar


def to_iet(rc: RotationCoding) -> ReducedRotation:
    p = rc.p
    for K in range(p):
        if rc.arc_length(K) == rc.angle:
            break
    else:
        raise NotReducible(f"no arc has length equal to the angle {rc.angle}")
    shift = rc.points[(K + 1) % p]
    order = [(K + 1 + i) % p for i in range(p)]
    lengths = [rc.arc_length(j) for j in order]
    letters = "".join(rc.letters[j] for j in order)
    perm = [p] + list(range(1, p))
    iet = build_iet(lengths, perm, letters)
    return ReducedRotation(iet, (rc.start - shift).mod1(), shift)

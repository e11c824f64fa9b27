"""Named presets and JSON source descriptions.

A source is one of

``{"kind": "iet", "lengths": [...], "permutation": [...], "letters": "...", "start": "0"}``
``{"kind": "rotation", "angle": "...", "points": [...], "start": "0"}``
``{"kind": "morphism", "images": {"1": "12", ...}, "seed": "1"}``
``{"kind": "periodic", "period": "0100100001"}``

Scalars are written as text, e.g. ``"5/4 - 1/2 sqrt(5)"``.  An
optional ``"d"`` key pins the quadratic field; every scalar must then be
rational or live in ``Q(sqrt(d))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Union

from .dynamics import IETransform, RotationCoding, build_iet, coding, to_iet
from .errors import ConfigError, NotReducible
from .morphisms import FixedPointSequence, Morphism
from .scalar import Scalar, as_scalar
from .words import PeriodicSequence, SymbolSequence

__all__ = ["Source", "PRESETS", "preset", "parse_source", "GOLDEN", "GOLDEN_SMALL"]

# (sqrt(5) - 1)/2 and its complement (3 - sqrt(5))/2
GOLDEN = Scalar.parse("-1/2 + 1/2 sqrt(5)")
GOLDEN_SMALL = Scalar.parse("3/2 - 1/2 sqrt(5)")
_ROOT2 = Scalar(0, 1, 2)

Obj = Union[IETransform, RotationCoding, Morphism, str]


@dataclass(frozen=True)
class Source:
    kind: str
    obj: Obj
    start: Scalar = Scalar(0)
    seed: str | None = None
    name: str = "inline"

    def sequence(self) -> SymbolSequence:
        return _sequence(self.kind, self.obj, self.start, self.seed)

    def geometric(self) -> tuple[IETransform, Scalar]:
        """IET and start point for the induction route.

        Rotation codings qualify when some arc has the rotation's length.
        """
        if self.kind == "iet":
            return self.obj, self.start
        if self.kind == "rotation":
            red = to_iet(self.obj)
            return red.iet, red.start
        raise NotReducible(f"a {self.kind} source has no interval exchange")

    @property
    def has_geometry(self) -> bool:
        try:
            self.geometric()
        except NotReducible:
            return False
        return True

    def with_start(self, x: Scalar) -> Source:
        if self.kind == "rotation":
            rc = RotationCoding(self.obj.angle, self.obj.points, x)
            return Source(self.kind, rc, x, self.seed, self.name)
        if self.kind == "iet":
            return Source(self.kind, self.obj, x, self.seed, self.name)
        raise ConfigError(f"a {self.kind} source has no start point")

    def to_json(self) -> dict:
        if self.kind == "iet":
            out = self.obj.to_json()
            out["start"] = str(self.start)
        elif self.kind == "rotation":
            out = self.obj.to_json()
        elif self.kind == "morphism":
            out = self.obj.to_json()
            out["seed"] = self.seed
        else:
            out = {"kind": "periodic", "period": self.obj}
        out["name"] = self.name
        return out


@lru_cache(maxsize=32)
def _sequence(kind: str, obj: Obj, start: Scalar, seed: str | None) -> SymbolSequence:
    if kind in ("iet", "rotation"):
        return coding(obj, start)
    if kind == "morphism":
        return FixedPointSequence(obj, seed)
    return PeriodicSequence(obj)


def _iet(name, lengths, perm, letters=None, start=0) -> Source:
    return Source("iet", build_iet(lengths, perm, letters), as_scalar(start), name=name)


def _presets() -> dict[str, Source]:
    a, s = GOLDEN, GOLDEN_SMALL
    fib_rot = RotationCoding(s, (Scalar(0), 1 - s), s)
    rot3 = RotationCoding(a, (Scalar(0), a, Scalar("4/5")))
    return {
        # rotation by (3 - sqrt 5)/2 as the swap IET; from x0 = alpha its
        # coding is the Fibonacci word 0100101001001...
        "fibonacci": _iet("fibonacci", [1 - s, s], [2, 1], "01", s),
        "fibonacci-rotation": Source("rotation", fib_rot, s, name="fibonacci-rotation"),
        "fibonacci-morphism": Source("morphism", Morphism({"0": "01", "1": "0"}), seed="0", name="fibonacci-morphism"),
        # rotation by (sqrt 5 - 1)/2 cut at 1/4 and 1 - alpha
        "golden3": _iet("golden3", [Scalar("1/4"), Scalar("3/4") - a, a], [3, 1, 2]),
        "sqrt2-4": _iet(
            "sqrt2-4",
            [_ROOT2 - 1, Scalar("1/5"), Scalar("3/2") - _ROOT2, Scalar("3/10")],
            [4, 3, 2, 1],
        ),
        "rotation3": Source("rotation", rot3, name="rotation3"),
        "chacon": Source(
            "morphism", Morphism({"1": "12", "2": "312", "3": "3312"}), seed="1", name="chacon"
        ),
        "u1": Source("periodic", "0100100001", name="u1"),
    }


PRESETS = _presets()


def preset(name: str) -> Source:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def _scalar(value: Any, d: int | None, what: str) -> Scalar:
    try:
        x = as_scalar(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{what}: {exc}") from None
    if d is not None and not x.is_rational and x.d != d:
        raise ConfigError(f"{what} = {x} is not in Q(sqrt({d}))")
    return x


def parse_source(doc: dict) -> Source:
    """Build a :class:`Source` from a decoded JSON object."""
    if not isinstance(doc, dict):
        raise ConfigError("source must be a JSON object")
    if "preset" in doc:
        src = preset(doc["preset"])
        if "start" in doc:
            src = src.with_start(_scalar(doc["start"], None, "start"))
        return src
    kind = doc.get("kind")
    d = doc.get("d")
    name = doc.get("name", "inline")
    try:
        if kind == "iet":
            lengths = [_scalar(x, d, "length") for x in doc["lengths"]]
            T = build_iet(lengths, doc["permutation"], doc.get("letters"))
            return Source("iet", T, _scalar(doc.get("start", 0), d, "start"), name=name)
        if kind == "rotation":
            angle = _scalar(doc["angle"], d, "angle")
            points = tuple(_scalar(x, d, "point") for x in doc["points"])
            start = _scalar(doc.get("start", 0), d, "start")
            return Source("rotation", RotationCoding(angle, points, start), start, name=name)
        if kind == "morphism":
            m = Morphism({str(k): str(v) for k, v in doc["images"].items()})
            seed = str(doc.get("seed") or (m.prolongable_letters or [""])[0])
            if not m.is_prolongable(seed):
                raise ConfigError(f"seed {seed!r} is not prolongable")
            return Source("morphism", m, seed=seed, name=name)
        if kind == "periodic":
            period = str(doc["period"])
            if not period:
                raise ConfigError("period must be nonempty")
            return Source("periodic", period, name=name)
    except KeyError as exc:
        raise ConfigError(f"{kind} source is missing {exc.args[0]!r}") from None
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown source kind {kind!r}")

"""Return words, by scanning and by first-return induction.

The return words over a factor ``w`` are the blocks ``U[i_k : i_{k+1}]``
between consecutive occurrences of ``w``.  Two independent routes compute
them:

* scanning a prefix of the word (:func:`return_words_scan`), which only
  ever sees what occurs in the prefix;
* inducing the IET on the factor interval ``I_w`` (:func:`induced_partition`):
  the first-return map cuts ``I_w`` into subintervals with constant return
  time ``r_i``, and coding any point of the ``i``-th one for ``r_i`` steps
  gives the ``i``-th return word.  A regular ``k``-IET always yields exactly
  ``k`` subintervals.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field

from .dynamics import ONE, ZERO, DEFAULT_HORIZON, IETransform, Interval, coding, keane_check
from .errors import HorizonExceeded, NoOccurrence, RegularityViolation
from .language import DEFAULT_PREFIX, factors_scan, partition_level
from .scalar import Scalar
from .words import SymbolSequence

__all__ = [
    "ReturnReport",
    "InducedPartition",
    "AuditRow",
    "occurrences",
    "return_words_scan",
    "factor_interval",
    "induced_partition",
    "return_words_geometric",
    "tower",
    "verify_property_Rk",
    "audit_scan",
    "audit_csv",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 1_000_000
SCHEMA = "v1"
_SHOWN_POSITIONS = 20


@dataclass(frozen=True)
class ReturnReport:
    target: str
    returns: tuple[str, ...]
    lengths: tuple[int, ...]
    positions: tuple[int, ...]
    method: str
    complete: bool
    budget_used: int

    @property
    def count(self) -> int:
        return len(self.returns)

    def same_returns(self, other: ReturnReport) -> bool:
        return set(self.returns) == set(other.returns) and Counter(self.lengths) == Counter(other.lengths)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "target": self.target,
            "method": self.method,
            "returns": list(self.returns),
            "lengths": list(self.lengths),
            "positions": list(self.positions),
            "complete": self.complete,
            "budget_used": self.budget_used,
        }


# -- scanning ---------------------------------------------------------------------


def occurrences(seq: SymbolSequence, w: str, prefix_len: int) -> list[int]:
    """Start positions (0-based, overlaps included) of ``w`` in the prefix."""
    if not w:
        raise ValueError("occurrences of the empty word are not defined")
    if len(w) > prefix_len:
        raise ValueError("word longer than the scanned prefix")
    text = seq.prefix(prefix_len)
    out = []
    i = text.find(w)
    while i != -1:
        out.append(i)
        i = text.find(w, i + 1)
    return out


def return_words_scan(
    seq: SymbolSequence,
    w: str,
    budget: int = DEFAULT_PREFIX,
    expected: int | None = None,
) -> ReturnReport:
    """Distinct return words over ``w`` visible in the first ``budget`` symbols.

    ``complete`` is only asserted when ``expected`` is given and exactly
    that many distinct returns were found; ``budget_used`` is the prefix
    length that was needed to see the last new one.
    """
    pos = occurrences(seq, w, budget)
    if not pos:
        raise NoOccurrence(f"{w!r} does not occur in the first {budget} symbols")
    text = seq.prefix(budget)
    found: dict[str, None] = {}
    used = pos[0] + len(w)
    for i0, i1 in zip(pos, pos[1:]):
        r = text[i0:i1]
        if r not in found:
            found[r] = None
            used = i1 + len(w)
    returns = tuple(found)
    return ReturnReport(
        target=w,
        returns=returns,
        lengths=tuple(len(r) for r in returns),
        positions=tuple(pos[:_SHOWN_POSITIONS]),
        method="scan",
        complete=expected is not None and len(returns) == expected,
        budget_used=used,
    )


# -- geometry ---------------------------------------------------------------------


def factor_interval(T: IETransform, w: str) -> Interval | None:
    """``I_w``: the points whose coding starts with ``w``, or ``None``."""
    if not w:
        raise ValueError("the empty word has no factor interval")
    bad = set(w) - set(T.letters)
    if bad:
        raise ValueError(f"letters {sorted(bad)} not in alphabet {T.letters!r}")
    i = T.letters.index(w[0]) + 1
    current = T.interval(i)  # T^j(I_w) restricted to X_{w_j}
    offset = ZERO
    for ch in w[1:]:
        t = T.translations[i - 1]
        offset = offset + t
        i = T.letters.index(ch) + 1
        current = current.shifted(t).intersect(T.interval(i))
        if current is None:
            return None
    return current.shifted(-offset)


@dataclass(frozen=True)
class InducedPartition:
    """First-return partition of ``base`` into ``pieces``.

    ``sources[i]`` is ``(m, k_i)`` when the left endpoint of piece ``i`` is
    the first landing in the closure of ``base`` of the backward orbit of
    the endpoint ``a_m``, reached after ``k_i`` inverse steps, else ``None``.
    """

    base: Interval
    pieces: tuple[Interval, ...]
    return_times: tuple[int, ...]
    sources: tuple[tuple[int, int] | None, ...]
    steps: int = field(default=0, compare=False)

    def decomposition(self, T: IETransform, i: int, cap: int = DEFAULT_CAP) -> tuple[int, int] | None:
        """``(k_i, k'_i)`` with ``k'_i`` the forward hitting time of ``base`` from ``a_m``.

        When defined, ``return_times[i] == k_i + k'_i`` and the complete
        return word has length ``|w| + k_i + k'_i``.
        """
        src = self.sources[i]
        if src is None:
            return None
        m, k_i = src
        return k_i, _hit_time(T, T.endpoints[m - 1], self.base, cap)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "base": self.base.to_json(),
            "pieces": [
                {"interval": p.to_json(), "return_time": r, "source": list(s) if s else None}
                for p, r, s in zip(self.pieces, self.return_times, self.sources)
            ],
        }


def _hit_time(T: IETransform, y: Scalar, base: Interval, cap: int) -> int:
    # first t >= 1 with T^t(y) in base
    for t in range(1, cap + 1):
        y = T.forward(y)
        if y in base:
            return t
    raise HorizonExceeded(f"no return to {base} within {cap} steps")


def induced_partition(T: IETransform, base: Interval, cap: int = DEFAULT_CAP) -> InducedPartition:
    """Cut ``base`` into the continuity pieces of the first-return map.

    Each endpoint ``a_m`` (``m = 1..k``) is pulled back by ``T^-1`` until it
    lands strictly inside ``base``; that landing point is a cut.  A landing
    on the boundary of ``base`` does not stop the search, because the
    boundary point is itself on that orbit and its own first backward
    return is the cut it induces.  A regular IET gives exactly ``k-1``
    distinct cuts.
    """
    if not (ZERO <= base.left < base.right <= ONE):
        raise ValueError(f"{base} is not a subinterval of [0, 1)")
    cuts: dict[Scalar, None] = {}
    first_landing: dict[Scalar, tuple[int, int]] = {}
    steps = 0
    for m in range(1, T.k + 1):
        y = T.endpoints[m - 1]
        t = 0
        landed = False
        while True:
            if base.closure_contains(y):
                if not landed:
                    first_landing.setdefault(y, (m, t))
                    landed = True
                if base.interior_contains(y):
                    cuts[y] = None
                    break
            if t >= cap:
                raise HorizonExceeded(f"endpoint a_{m} did not land in {base} within {cap} steps")
            y = T.inverse(y)
            t += 1
        steps += t
    if len(cuts) != T.k - 1:
        raise RegularityViolation(f"{len(cuts)} interior landing points in {base}, expected {T.k - 1}")
    bounds = [base.left, *sorted(cuts), base.right]
    pieces = tuple(Interval(lo, hi) for lo, hi in zip(bounds, bounds[1:]))
    times = []
    for p in pieces:
        r = _hit_time(T, p.midpoint, base, cap)
        steps += r
        times.append(r)
    sources = tuple(first_landing.get(p.left) for p in pieces)
    return InducedPartition(base, pieces, tuple(times), sources, steps)


def _code(T: IETransform, x: Scalar, n: int) -> str:
    out = []
    for _ in range(n):
        out.append(T.letter(x))
        x = T.forward(x)
    return "".join(out)


def return_words_geometric(
    T: IETransform,
    w: str,
    start: Scalar = ZERO,
    cap: int = DEFAULT_CAP,
) -> ReturnReport:
    """Return words over ``w`` from the induced partition of ``I_w``.

    ``positions`` lists the first visits of the orbit of ``start`` to
    ``I_w``, i.e. the first occurrences of ``w`` in the coding of ``start``.
    """
    base = factor_interval(T, w)
    if base is None:
        raise NoOccurrence(f"{w!r} is not a factor")
    part = induced_partition(T, base, cap)
    found: dict[str, int] = {}
    for p, r in zip(part.pieces, part.return_times):
        found.setdefault(_code(T, p.midpoint, r), r)
    positions = []
    y = start
    steps = part.steps
    for n in range(cap):
        if y in base:
            positions.append(n)
            if len(positions) == _SHOWN_POSITIONS:
                break
        y = T.forward(y)
    steps += n
    return ReturnReport(
        target=w,
        returns=tuple(found),
        lengths=tuple(found.values()),
        positions=tuple(positions),
        method="geometric",
        complete=True,
        budget_used=steps,
    )


def tower(T: IETransform, part: InducedPartition) -> list[tuple[int, int, Interval]]:
    """Levels ``(i, t, T^t(p_i))`` for ``0 <= t < r_i``.

    Each level is checked to lie inside one ``X_j`` so that ``T`` acts on
    it as a translation.  For a first-return partition the levels are
    pairwise disjoint and tile ``[0, 1)`` (Kac).
    """
    out = []
    for i, (p, r) in enumerate(zip(part.pieces, part.return_times)):
        cur = p
        for t in range(r):
            out.append((i, t, cur))
            j = T.index(cur.left)
            if cur.right > T.endpoints[j]:
                raise RegularityViolation(f"level {cur} straddles the endpoint {T.endpoints[j]}")
            cur = cur.shifted(T.translations[j - 1])
    return out


# -- audits -----------------------------------------------------------------------


@dataclass(frozen=True)
class AuditRow:
    length: int
    word: str
    count_scan: int
    count_geom: int | None
    agree: bool | None

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "word": self.word,
            "count_scan": self.count_scan,
            "count_geom": self.count_geom,
            "agree": self.agree,
        }


def verify_property_Rk(
    T: IETransform,
    max_len: int,
    start: Scalar = ZERO,
    budget: int = DEFAULT_PREFIX,
    horizon: int = DEFAULT_HORIZON,
    cap: int = DEFAULT_CAP,
    reports: dict | None = None,
) -> list[AuditRow]:
    """Count return words over every factor of length ``1..max_len`` both ways.

    Keane's condition is checked first at ``horizon`` and again, if the
    longest return time seen requires it, at ``max_len + max return time``.
    ``reports``, if given, receives ``w -> (geometric, scan)`` reports.
    """
    report = keane_check(T, horizon)
    if not report.passed:
        raise RegularityViolation(f"Keane check failed: witness {report.witness}")
    seq = coding(T, start)
    rows = []
    longest = 0
    for n in range(1, max_len + 1):
        for w in sorted(partition_level(T, n).words):
            geo = return_words_geometric(T, w, start, cap)
            scan = return_words_scan(seq, w, budget, expected=T.k)
            longest = max(longest, *geo.lengths)
            rows.append(AuditRow(n, w, scan.count, geo.count, geo.same_returns(scan)))
            if reports is not None:
                reports[w] = (geo, scan)
    needed = max_len + longest
    if needed > horizon:
        report = keane_check(T, needed)
        if not report.passed:
            raise RegularityViolation(f"Keane check failed at horizon {needed}: witness {report.witness}")
    return rows


def audit_scan(
    seq: SymbolSequence,
    max_len: int,
    prefix_len: int = DEFAULT_PREFIX,
    expected: int | None = None,
) -> list[AuditRow]:
    """Scan-only audit: return-word counts over every scanned factor.

    ``agree`` records whether the count equals ``expected`` (``None`` when
    no expectation is given).
    """
    rows = []
    for n in range(1, max_len + 1):
        for w in factors_scan(seq, n, prefix_len).sorted():
            rep = return_words_scan(seq, w, prefix_len, expected)
            agree = None if expected is None else rep.count == expected
            rows.append(AuditRow(n, w, rep.count, None, agree))
    return rows


def audit_csv(rows: list[AuditRow]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["length", "w", "count_scan", "count_geom", "agree"])
    for r in rows:
        geom = "" if r.count_geom is None else r.count_geom
        agree = "" if r.agree is None else str(r.agree).lower()
        out.writerow([r.length, r.word, r.count_scan, geom, agree])
    return buf.getvalue()

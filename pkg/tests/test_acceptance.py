"""Acceptance criteria.

Run with ``pytest tests/test_acceptance.py``; the terminal summary ends
with one PASS/FAIL line per criterion.
"""

import math
import random
import time
from collections import Counter
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from retwords.dynamics import code_orbit, keane_check, to_iet
from retwords.language import complexity, factors, factors_scan, partition_level
from retwords.morphisms import FixedPointSequence, Morphism, fixed_point_prefix
from retwords.returns import (
    factor_interval,
    induced_partition,
    return_words_scan,
    tower,
    verify_property_Rk,
)
from retwords.scalar import Scalar
from retwords.sources import PRESETS
from retwords.words import PeriodicSequence

CHACON = Morphism({"1": "12", "2": "312", "3": "3312"})
CHACON_DISPLAY = "1231233121231233123312123121231233121231231233"

AUDITS = {"golden3": 10, "sqrt2-4": 8, "fibonacci": 12}


def criterion(number, title):
    return pytest.mark.criterion(number, title)


@pytest.fixture(scope="module")
def audits():
    """Both-route audits of the three IET presets, timed together."""
    out = {}
    t0 = time.perf_counter()
    for name, max_len in AUDITS.items():
        src = PRESETS[name]
        reports = {}
        rows = verify_property_Rk(src.obj, max_len, src.start, budget=100_000, horizon=1000, reports=reports)
        out[name] = (rows, reports)
    return out, time.perf_counter() - t0


@criterion(1, "Chacon returns over 23 from a 10^4 prefix, under 1 s")
def test_chacon_counterexample():
    t0 = time.perf_counter()
    seq = FixedPointSequence(CHACON, "1")
    rep = return_words_scan(seq, "23", 10_000)
    elapsed = time.perf_counter() - t0
    assert set(rep.returns) == {"231", "2331", "23121", "233121"}
    assert elapsed < 1.0


@criterion(2, "Chacon fixed-point prefix equals the displayed 46 letters")
def test_chacon_prefix():
    assert fixed_point_prefix(CHACON, "1", 46) == CHACON_DISPLAY


@criterion(3, "returns over 01 in (0100100001)^omega")
def test_periodic_example():
    rep = return_words_scan(PeriodicSequence("0100100001"), "01", 1000)
    assert set(rep.returns) == {"010", "01000", "01"}
    assert rep.count == 3


@criterion(4, "complexity n(k-1)+1 for 1 <= n <= 20, k = 2, 3, 4")
@pytest.mark.parametrize("name, k", [("fibonacci", 2), ("golden3", 3), ("sqrt2-4", 4)])
def test_complexity_formula(name, k):
    T = PRESETS[name].obj
    assert T.k == k
    assert keane_check(T, 1000).passed
    if k == 4:
        assert T.permutation == (4, 3, 2, 1)
        assert T.radicand == 2
    assert [complexity(factors(T, n)) for n in range(1, 21)] == [n * (k - 1) + 1 for n in range(1, 21)]


@criterion(5, "property R_k: golden3 |w|<=10, k=4 |w|<=8, k=2 |w|<=12, under 60 s")
def test_property_rk(audits):
    results, elapsed = audits
    for name, max_len in AUDITS.items():
        rows, reports = results[name]
        k = PRESETS[name].obj.k
        assert {r.length for r in rows} == set(range(1, max_len + 1))
        assert len(rows) == sum(n * (k - 1) + 1 for n in range(1, max_len + 1))
        for r in rows:
            assert r.count_geom == k, r.word
            geo, scan = reports[r.word]
            assert set(geo.returns) == set(scan.returns), r.word
    assert elapsed < 60


@criterion(6, "return-word lengths equal the exact first-return times")
def test_length_law(audits):
    results, _ = audits
    for name in AUDITS:
        T = PRESETS[name].obj
        _, reports = results[name]
        for w, (geo, scan) in reports.items():
            assert Counter(geo.lengths) == Counter(scan.lengths), w
            part = induced_partition(T, factor_interval(T, w))
            assert Counter(part.return_times) == Counter(geo.lengths), w
            # next occurrence of w in the coding of each piece's midpoint
            for p, r in zip(part.pieces, part.return_times):
                text = code_orbit(T, p.midpoint, 4 * r + len(w))
                assert text.startswith(w) and text.find(w, 1) == r, (w, r)


@criterion(7, "rotation coding with an alpha arc reduces to a cyclic IET with R_3")
def test_rotation_reduction():
    rc = PRESETS["rotation3"].obj
    assert rc.arc_length(0) == (Scalar(0, 1, 5) - 1) / 2
    red = to_iet(rc)
    T = red.iet
    k = T.k
    assert T.permutation == (k,) + tuple(range(1, k))
    assert code_orbit(T, red.start, 10_000) == code_orbit(rc, rc.start, 10_000)
    rows = verify_property_Rk(T, 10, red.start)
    assert rows and all(r.count_geom == 3 and r.agree for r in rows)


@criterion(8, "scanned factors equal geometric factors; Fibonacci morphism equals its rotation coding")
def test_oracle_equivalence():
    for name in ["fibonacci", "golden3", "sqrt2-4", "rotation3", "fibonacci-rotation"]:
        src = PRESETS[name]
        T, start = src.geometric()
        seq = src.sequence()
        for n in range(1, 16):
            assert factors_scan(seq, n, 100_000).words == factors(T, n).words, (name, n)
    morph = PRESETS["fibonacci-morphism"].sequence().prefix(1000)
    assert morph == PRESETS["fibonacci-rotation"].sequence().prefix(1000)


def _decimal(x: Scalar) -> Decimal:
    a = Decimal(x.a.numerator) / x.a.denominator
    if x.is_rational:
        return a
    return a + Decimal(x.b.numerator) / x.b.denominator * Decimal(x.d).sqrt()


@criterion(9, "property suite: scalar invariants, round trips, X^(n) increments, Kac tiling")
def test_property_suite():
    getcontext().prec = 50
    rng = random.Random(7)
    for _ in range(10_000):
        a = Fraction(rng.randint(-10**5, 10**5), rng.randint(1, 10**3))
        b = Fraction(rng.randint(-10**5, 10**5), rng.randint(1, 10**3))
        x = Scalar(a, b, rng.choice([2, 3, 5, 7]))
        dec = _decimal(x)
        assert x.sign() == (dec > 0) - (dec < 0)
        assert x.floor() == math.floor(dec)
        f = x.mod1()
        assert 0 <= f < 1 and x - f == x.floor()

    for name in ["fibonacci", "golden3", "sqrt2-4"]:
        T = PRESETS[name].obj
        d = T.radicand
        for j in range(200):
            x = (Scalar(Fraction(rng.randint(0, 10**6), 10**6)) + Scalar(0, rng.randint(-5, 5), d)).mod1()
            assert T.inverse(T.forward(x)) == x and T.forward(T.inverse(x)) == x
        counts = [len(partition_level(T, n).points) for n in range(1, 21)]
        assert all(b - a == T.k - 1 for a, b in zip(counts, counts[1:]))
        for ch in T.letters:
            levels = sorted((iv for _, _, iv in tower(T, induced_partition(T, factor_interval(T, ch)))), key=lambda iv: iv.left)
            assert levels[0].left == 0 and levels[-1].right == 1
            assert all(p.right == q.left for p, q in zip(levels, levels[1:]))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

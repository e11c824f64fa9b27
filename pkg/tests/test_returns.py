from collections import Counter

import pytest

from retwords.dynamics import Interval, build_iet
from retwords.errors import HorizonExceeded, NoOccurrence, RegularityViolation
from retwords.language import factors, partition_level
from retwords.returns import (
    audit_csv,
    audit_scan,
    factor_interval,
    induced_partition,
    occurrences,
    return_words_geometric,
    return_words_scan,
    tower,
    verify_property_Rk,
)
from retwords.scalar import Scalar
from retwords.sources import PRESETS
from retwords.words import PeriodicSequence

U1 = PeriodicSequence("0100100001")
ZEROS = PeriodicSequence("0")


def fine_return_times(T, w: str, depth: int) -> list[tuple[Interval, int]]:
    """Return time of each cell of X^(depth) inside I_w, read off its word."""
    out = []
    for iv, code in partition_level(T, depth).cells:
        if code.startswith(w):
            r = next((j for j in range(1, depth - len(w) + 1) if code[j:].startswith(w)), None)
            out.append((iv, r))
    return out


class TestScan:
    def test_occurrences(self):
        assert occurrences(U1, "01", 12) == [0, 3, 8, 10]
        assert occurrences(ZEROS, "0", 6) == [0, 1, 2, 3, 4, 5]
        assert occurrences(U1, "11", 100) == []
        with pytest.raises(ValueError):
            occurrences(U1, "", 10)

    def test_worked_example(self):
        rep = return_words_scan(U1, "01", 1000)
        assert set(rep.returns) == {"010", "01000", "01"}
        assert rep.lengths == tuple(len(r) for r in rep.returns)

    def test_chacon(self):
        rep = return_words_scan(PRESETS["chacon"].sequence(), "23", 10_000)
        assert set(rep.returns) == {"231", "2331", "23121", "233121"}

    def test_constant(self):
        assert return_words_scan(ZEROS, "0", 100).returns == ("0",)

    def test_no_occurrence(self):
        with pytest.raises(NoOccurrence) as info:
            return_words_scan(U1, "11", 1000)
        assert info.value.code == "no-occurrence"

    def test_completeness_flag(self):
        seq = PRESETS["golden3"].sequence()
        assert return_words_scan(seq, "1", 10_000, expected=3).complete
        assert not return_words_scan(seq, "1", 10_000).complete
        # more returns than expected is never complete
        assert not return_words_scan(PRESETS["chacon"].sequence(), "23", 10_000, expected=3).complete

    def test_return_words_start_with_target(self):
        seq = PRESETS["sqrt2-4"].sequence()
        for w in ["1", "22", "1413"]:
            rep = return_words_scan(seq, w, 20_000)
            for r in rep.returns:
                # w occurs in r + w exactly at both ends
                assert occurrences(PeriodicSequence(r + w), w, len(r) + len(w)) == [0, len(r)]

    def test_json(self):
        doc = return_words_scan(U1, "01", 100).to_json()
        assert doc["schema"] == "v1"
        assert doc["method"] == "scan"
        assert doc["positions"][:4] == [0, 3, 8, 10]


class TestFactorInterval:
    @pytest.mark.parametrize("name", ["fibonacci", "golden3", "sqrt2-4"])
    def test_single_letters(self, name):
        T = PRESETS[name].obj
        for i, ch in enumerate(T.letters, start=1):
            assert factor_interval(T, ch) == T.interval(i)

    def test_length_two_cells(self):
        T = PRESETS["golden3"].obj
        for iv, w in partition_level(T, 2).cells:
            assert factor_interval(T, w) == iv

    def test_deep_cells(self):
        T = PRESETS["sqrt2-4"].obj
        for iv, w in partition_level(T, 7).cells:
            assert factor_interval(T, w) == iv

    def test_non_factor(self):
        T = PRESETS["fibonacci"].obj
        assert factor_interval(T, "11") is None
        with pytest.raises(ValueError):
            factor_interval(T, "2")


class TestInducedPartition:
    def test_fibonacci_zero(self):
        T = PRESETS["fibonacci"].obj
        part = induced_partition(T, factor_interval(T, "0"))
        assert sorted(part.return_times) == [1, 2]
        assert set(return_words_geometric(T, "0").returns) == {"0", "01"}

    @pytest.mark.parametrize("name, max_len", [("golden3", 8), ("sqrt2-4", 6), ("fibonacci", 10)])
    def test_k_pieces(self, name, max_len):
        T = PRESETS[name].obj
        for n in range(1, max_len + 1):
            for w in factors(T, n).words:
                base = factor_interval(T, w)
                part = induced_partition(T, base)
                assert len(part.pieces) == T.k
                assert part.pieces[0].left == base.left and part.pieces[-1].right == base.right
                for a, b in zip(part.pieces, part.pieces[1:]):
                    assert a.right == b.left

    @pytest.mark.parametrize("name", ["golden3", "sqrt2-4"])
    def test_return_times_against_fine_cells(self, name):
        T = PRESETS[name].obj
        for w in sorted(factors(T, 3).words):
            part = induced_partition(T, factor_interval(T, w))
            depth = len(w) + max(part.return_times) + 1
            for cell, r in fine_return_times(T, w, depth):
                owner = next(i for i, p in enumerate(part.pieces) if p.left <= cell.left and cell.right <= p.right)
                assert part.return_times[owner] == r

    def test_images_of_pieces_reassemble_base(self):
        # the first-return map is again an exchange of the k pieces
        T = PRESETS["golden3"].obj
        for w in sorted(factors(T, 4).words):
            part = induced_partition(T, factor_interval(T, w))
            images = []
            for i, r in enumerate(part.return_times):
                levels = [iv for j, t, iv in tower(T, part) if j == i]
                top = levels[-1]
                j = T.index(top.left)
                images.append(top.shifted(T.translations[j - 1]))
            images.sort(key=lambda iv: iv.left)
            assert images[0].left == part.base.left and images[-1].right == part.base.right
            for a, b in zip(images, images[1:]):
                assert a.right == b.left

    def test_decomposition(self):
        T = PRESETS["golden3"].obj
        checked = 0
        for n in range(1, 6):
            for w in factors(T, n).words:
                part = induced_partition(T, factor_interval(T, w))
                for i, r in enumerate(part.return_times):
                    dec = part.decomposition(T, i)
                    if dec is not None:
                        ki, kpi = dec
                        assert ki + kpi == r
                        checked += 1
        assert checked >= 40

    def test_cap(self):
        T = PRESETS["golden3"].obj
        with pytest.raises(HorizonExceeded) as info:
            induced_partition(T, partition_level(T, 12).cells[0][0], cap=3)
        assert info.value.code == "horizon-exceeded"

    def test_json(self):
        T = PRESETS["fibonacci"].obj
        doc = induced_partition(T, factor_interval(T, "0")).to_json()
        assert doc["schema"] == "v1"
        assert sorted(p["return_time"] for p in doc["pieces"]) == [1, 2]


class TestGeometricReturns:
    @pytest.mark.parametrize("name, max_len", [("golden3", 8), ("sqrt2-4", 6), ("fibonacci", 10)])
    def test_matches_scan(self, name, max_len):
        src = PRESETS[name]
        T, seq = src.obj, src.sequence()
        for n in range(1, max_len + 1):
            for w in factors(T, n).words:
                geo = return_words_geometric(T, w, src.start)
                scan = return_words_scan(seq, w, 100_000, expected=T.k)
                assert geo.count == T.k
                assert set(geo.returns) == set(scan.returns)
                assert Counter(geo.lengths) == Counter(scan.lengths)
                assert scan.complete

    def test_lengths_are_return_times(self):
        T = PRESETS["sqrt2-4"].obj
        for ch in T.letters:
            part = induced_partition(T, factor_interval(T, ch))
            geo = return_words_geometric(T, ch)
            assert sorted(geo.lengths) == sorted(part.return_times)
            assert all(r.startswith(ch) for r in geo.returns)

    def test_positions_are_occurrences(self):
        src = PRESETS["golden3"]
        geo = return_words_geometric(src.obj, "31", src.start)
        assert list(geo.positions) == occurrences(src.sequence(), "31", 10_000)[: len(geo.positions)]

    def test_not_a_factor(self):
        with pytest.raises(NoOccurrence):
            return_words_geometric(PRESETS["fibonacci"].obj, "11")


class TestTower:
    @pytest.mark.parametrize("name", ["fibonacci", "golden3", "sqrt2-4"])
    def test_kac_tiling(self, name):
        T = PRESETS[name].obj
        for n in range(1, 5):
            for w in factors(T, n).words:
                levels = sorted((iv for _, _, iv in tower(T, induced_partition(T, factor_interval(T, w)))), key=lambda iv: iv.left)
                assert levels[0].left == 0 and levels[-1].right == 1
                for a, b in zip(levels, levels[1:]):
                    assert a.right == b.left

    def test_total_measure(self):
        T = PRESETS["golden3"].obj
        part = induced_partition(T, factor_interval(T, "3"))
        total = sum((p.length * r for p, r in zip(part.pieces, part.return_times)), Scalar(0))
        assert total == 1


class TestAudit:
    def test_golden3(self):
        rows = verify_property_Rk(PRESETS["golden3"].obj, 6)
        assert rows and all(r.count_geom == 3 and r.count_scan == 3 and r.agree for r in rows)
        assert len(rows) == sum(2 * n + 1 for n in range(1, 7))

    def test_irregular_rejected(self):
        half = Scalar("1/2")
        with pytest.raises(RegularityViolation):
            verify_property_Rk(build_iet([half, half], [2, 1]), 2)

    def test_chacon_is_not_r3(self):
        rows = audit_scan(PRESETS["chacon"].sequence(), 2, 10_000, expected=3)
        row = next(r for r in rows if r.word == "23")
        assert row.count_scan == 4 and row.agree is False

    def test_csv(self):
        rows = audit_scan(U1, 1, 100)
        assert audit_csv(rows) == "length,w,count_scan,count_geom,agree\n1,0,2,,\n1,1,3,,\n"

"""Situation tree: bitstring histories, prefixes, levels, path files."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from imprand import (
    DomainError,
    Situation,
    SpecFormatError,
    read_path_file,
    situations_at_level,
    write_path_file,
)

bit_lists = st.lists(st.integers(min_value=0, max_value=1), max_size=12)


class TestConstruction:
    def test_root_is_empty(self):
        root = Situation(())
        assert root.depth == 0
        assert root.bits == ()
        assert str(root) == "(root)"

    def test_from_string(self):
        s = Situation.from_string("0110")
        assert s.bits == (0, 1, 1, 0)
        assert s.to_string() == "0110"
        assert Situation.from_string("") == Situation(())

    def test_rejects_non_bits(self):
        with pytest.raises(DomainError):
            Situation((0, 2))
        with pytest.raises(SpecFormatError):
            Situation.from_string("01a")

    def test_zeros(self):
        assert Situation.zeros(3) == Situation((0, 0, 0))
        assert Situation.zeros(0) == Situation(())

    def test_hashable_and_ordered_by_value(self):
        assert Situation((0, 1)) == Situation((0, 1))
        assert len({Situation((0,)), Situation((0,)), Situation((1,))}) == 2


class TestNavigation:
    def test_child(self):
        s = Situation((0, 1))
        assert s.child(0) == Situation((0, 1, 0))
        assert s.child(1) == Situation((0, 1, 1))

    def test_child_rejects_non_bit(self):
        with pytest.raises(DomainError):
            Situation(()).child(2)

    def test_prefix(self):
        s = Situation((0, 1, 1))
        assert s.prefix(0) == Situation(())
        assert s.prefix(2) == Situation((0, 1))
        assert s.prefix(3) == s

    def test_prefix_rejects_overlong(self):
        with pytest.raises(DomainError):
            Situation((0,)).prefix(2)

    def test_iter_prefixes(self):
        s = Situation((1, 0))
        assert list(s.iter_prefixes()) == [Situation(()), Situation((1,)), Situation((1, 0))]

    @given(bit_lists)
    def test_prefixes_are_consistent(self, bits):
        s = Situation(tuple(bits))
        for k, p in enumerate(s.iter_prefixes()):
            assert p == s.prefix(k)
            assert p.depth == k


class TestLevels:
    def test_level_zero_is_root(self):
        assert list(situations_at_level(0)) == [Situation(())]

    def test_level_counts(self):
        for n in range(6):
            assert sum(1 for _ in situations_at_level(n)) == 2**n

    def test_level_order_is_lexicographic(self):
        strings = [s.to_string() for s in situations_at_level(2)]
        assert strings == ["00", "01", "10", "11"]


class TestPathFiles:
    def test_round_trip(self, tmp_path):
        target = tmp_path / "p.path"
        prefix = Situation(tuple(k % 2 for k in range(150)))
        write_path_file(target, prefix)
        assert read_path_file(target) == prefix

    def test_line_width(self, tmp_path):
        target = tmp_path / "p.path"
        write_path_file(target, Situation((1,) * 130))
        lines = target.read_text().splitlines()
        assert [len(line) for line in lines] == [64, 64, 2]

    def test_reads_ignore_whitespace_layout(self, tmp_path):
        target = tmp_path / "p.path"
        target.write_text("01\n10\n\n1\n")
        assert read_path_file(target) == Situation((0, 1, 1, 0, 1))

    def test_rejects_other_characters(self, tmp_path):
        target = tmp_path / "p.path"
        target.write_text("01x0\n")
        with pytest.raises(SpecFormatError):
            read_path_file(target)

    def test_empty_file_is_root(self, tmp_path):
        target = tmp_path / "p.path"
        target.write_text("")
        assert read_path_file(target) == Situation(())

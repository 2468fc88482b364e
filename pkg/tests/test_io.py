import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from circsym.angles import wrap
from circsym.io import AngleFileError, read_angles, write_angles

SAMPLE = np.array([0.1, -2.7, 3.0, 1.25, -0.4])


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


class TestPlainFormat:
    def test_radians_default(self, tmp_path):
        path = _write(tmp_path / "a.txt", "0.1\n-2.7\n3.0\n")
        assert_allclose(read_angles(path), [0.1, -2.7, 3.0], rtol=0, atol=0)

    def test_blank_lines_and_comments_skipped(self, tmp_path):
        path = _write(tmp_path / "a.txt", "# a note\n\n0.5\n\n# another\n1.5\n")
        assert_allclose(read_angles(path), [0.5, 1.5])

    def test_values_wrapped(self, tmp_path):
        path = _write(tmp_path / "a.txt", "7.0\n-7.0\n")
        assert_allclose(read_angles(path), wrap(np.array([7.0, -7.0])))

    def test_degrees_flag(self, tmp_path):
        path = _write(tmp_path / "a.txt", "90\n-45\n")
        assert_allclose(read_angles(path, unit="degrees"),
                        [math.pi / 2, -math.pi / 4], rtol=1e-15)

    def test_header_unit_beats_flag(self, tmp_path):
        path = _write(tmp_path / "a.txt", "# unit: degrees\n180\n")
        got = read_angles(path, unit="radians")
        assert got[0] == pytest.approx(wrap(math.pi), abs=1e-12)

    def test_empty_file_rejected(self, tmp_path):
        path = _write(tmp_path / "a.txt", "# unit: radians\n\n")
        with pytest.raises(AngleFileError, match="no data"):
            read_angles(path)

    def test_junk_line_reports_line_number(self, tmp_path):
        path = _write(tmp_path / "a.txt", "0.5\nnot-a-number\n")
        with pytest.raises(AngleFileError, match=r"a\.txt:2"):
            read_angles(path)

    def test_multi_column_needs_format(self, tmp_path):
        path = _write(tmp_path / "a.txt", "0.5,1\n0.7,2\n")
        with pytest.raises(AngleFileError, match="explicit format"):
            read_angles(path)


class TestCsvFormat:
    def test_column_selection(self, tmp_path):
        path = _write(tmp_path / "a.csv", "id,angle\n", )
        path = _write(tmp_path / "a.csv", "1,0.25\n2,0.75\n")
        got = read_angles(path, fmt="csv", column=1)
        assert_allclose(got, [0.25, 0.75], rtol=0, atol=0)

    def test_header_format_directive(self, tmp_path):
        path = _write(tmp_path / "a.csv", "# format: csv\n0.25,9\n0.75,9\n")
        assert_allclose(read_angles(path), [0.25, 0.75])

    def test_out_of_range_column(self, tmp_path):
        path = _write(tmp_path / "a.csv", "0.25,9\n")
        with pytest.raises(AngleFileError, match=r"a\.csv:1"):
            read_angles(path, fmt="csv", column=5)


class TestGroupedFormat:
    def test_expansion_matches_plain(self, tmp_path):
        grouped = _write(tmp_path / "g.txt", "# format: grouped\n0.5, 3\n-1.0, 2\n")
        plain = _write(tmp_path / "p.txt", "0.5\n0.5\n0.5\n-1.0\n-1.0\n")
        assert_allclose(read_angles(grouped), read_angles(plain), rtol=0, atol=0)

    def test_whitespace_separated(self, tmp_path):
        path = _write(tmp_path / "g.txt", "0.5 3\n", )
        assert read_angles(path, fmt="grouped").size == 3

    def test_zero_count_rejected(self, tmp_path):
        path = _write(tmp_path / "g.txt", "0.5, 0\n")
        with pytest.raises(AngleFileError, match="positive"):
            read_angles(path, fmt="grouped")

    def test_fractional_count_rejected(self, tmp_path):
        path = _write(tmp_path / "g.txt", "0.5, 2.5\n")
        with pytest.raises(AngleFileError, match=r"g\.txt:1"):
            read_angles(path, fmt="grouped")


class TestZeroAndSense:
    def test_clockwise_from_north(self, tmp_path):
        # compass convention: 0 at north (90deg math), angles grow clockwise
        path = _write(tmp_path / "a.txt", "# unit: degrees\n0\n90\n")
        got = read_angles(path, zero="90deg", sense="cw")
        assert_allclose(got, [math.pi / 2, 0.0], atol=1e-12)

    def test_header_sense_beats_flag(self, tmp_path):
        path = _write(tmp_path / "a.txt", "# sense: cw\n0.5\n")
        assert read_angles(path, sense="ccw")[0] == pytest.approx(-0.5)

    def test_numeric_zero_uses_file_unit(self, tmp_path):
        path = _write(tmp_path / "a.txt", "# unit: degrees\n10\n")
        got = read_angles(path, zero=30.0)
        assert got[0] == pytest.approx(np.deg2rad(40.0), abs=1e-12)

    def test_bad_sense(self, tmp_path):
        path = _write(tmp_path / "a.txt", "0.5\n")
        with pytest.raises(AngleFileError, match="sense"):
            read_angles(path, sense="widdershins")

    def test_bad_unit(self, tmp_path):
        path = _write(tmp_path / "a.txt", "0.5\n")
        with pytest.raises(AngleFileError, match="unit"):
            read_angles(path, unit="gradians")


class TestWriteAngles:
    def test_radian_round_trip_exact(self, tmp_path):
        path = tmp_path / "out.txt"
        write_angles(path, SAMPLE)
        assert_allclose(read_angles(path), SAMPLE, rtol=0, atol=0)

    def test_degree_round_trip(self, tmp_path):
        path = tmp_path / "out.txt"
        write_angles(path, SAMPLE, unit="degrees")
        assert path.read_text(encoding="utf-8").startswith("# unit: degrees")
        assert_allclose(read_angles(path), SAMPLE, atol=1e-12)

    def test_degree_agreement_with_radian_file(self, tmp_path):
        deg, rad = tmp_path / "d.txt", tmp_path / "r.txt"
        write_angles(deg, SAMPLE, unit="degrees")
        write_angles(rad, SAMPLE, unit="radians")
        assert_allclose(read_angles(deg), read_angles(rad), atol=1e-12)

"""Deterministic serialization: exact floats, CSV round-trips, manifests."""

import hashlib
import json
import math
from datetime import datetime
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from khessian import PiRational, Verdict, explicit_ma
from khessian.io import (
    PROFILE_HEADER,
    CsvFormatError,
    format_float,
    output_dir,
    profile_from_csv,
    profile_to_csv,
    read_json,
    sha256_file,
    write_csv,
    write_json,
    write_manifest,
)


class TestFormatFloat:
    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_round_trips_binary64(self, x):
        assert float(format_float(x)) == x

    def test_known_forms(self):
        assert format_float(0.1) == "0.10000000000000001"
        assert format_float(1.0) == "1"
        assert format_float(-2.5) == "-2.5"


class TestWriteJson:
    def test_values_serialize_exactly(self, tmp_path):
        path = write_json(
            tmp_path / "doc.json",
            {
                "x": 0.1,
                "frac": Fraction(3, 4),
                "verdict": Verdict.IDENTITY_SATISFIED,
                "arr": np.array([1.5, 2.5]),
                "n": 6,
                "flag": True,
                "nothing": None,
                "pi_like": PiRational(Fraction(9, 2), 2),
            },
        )
        doc = read_json(path)
        assert doc["x"] == "0.10000000000000001"
        assert float(doc["x"]) == 0.1
        assert doc["frac"] == "3/4"
        assert doc["verdict"] == "identity-satisfied"
        assert doc["arr"] == ["1.5", "2.5"]
        assert doc["n"] == 6
        assert doc["flag"] is True
        assert doc["nothing"] is None
        assert float(doc["pi_like"]) == pytest.approx(4.5 * math.pi**2, rel=1e-15)

    def test_sorted_keys_and_trailing_newline(self, tmp_path):
        path = write_json(tmp_path / "doc.json", {"zeta": 1, "alpha": 2})
        text = path.read_text()
        assert text.index('"alpha"') < text.index('"zeta"')
        assert text.endswith("\n") and not text.endswith("\n\n")
        json.loads(text)  # well-formed

    def test_byte_identical_reruns(self, tmp_path):
        obj = {"a": [0.1, 0.2, np.float64(1e-300)], "b": {"c": Fraction(1, 3)}}
        p1 = write_json(tmp_path / "one.json", obj)
        p2 = write_json(tmp_path / "two.json", obj)
        assert p1.read_bytes() == p2.read_bytes()

    def test_rejects_unserializable(self, tmp_path):
        with pytest.raises(TypeError):
            write_json(tmp_path / "bad.json", {"obj": object()})


class TestCsv:
    def test_profile_round_trip_bit_exact(self, tmp_path):
        profile, _ = explicit_ma(3, 0.7)
        path = profile_to_csv(tmp_path / "profile.csv", profile)
        back = profile_from_csv(path)
        assert np.array_equal(back.grid, profile.grid)
        assert np.array_equal(back.u, profile.u)
        assert np.array_equal(back.us, profile.us)

    def test_header_and_format(self, tmp_path):
        path = write_csv(tmp_path / "t.csv", ("a", "b"), [[0.1, 1.0], [2.0, 3.0]])
        lines = path.read_text().splitlines()
        assert lines[0] == "a,b"
        assert lines[1] == "0.10000000000000001,2"

    def test_write_rejects_mismatches(self, tmp_path):
        with pytest.raises(ValueError, match="one header entry per column"):
            write_csv(tmp_path / "t.csv", ("a",), [[1.0], [2.0]])
        with pytest.raises(ValueError, match="equal length"):
            write_csv(tmp_path / "t.csv", ("a", "b"), [[1.0], [2.0, 3.0]])


def _write(tmp_path, text):
    path = tmp_path / "in.csv"
    path.write_text(text)
    return path


class TestCsvErrors:
    """Every malformed input is refused with a 1-based line number."""

    def test_empty_file(self, tmp_path):
        with pytest.raises(CsvFormatError, match="line 1: empty file"):
            profile_from_csv(_write(tmp_path, ""))

    def test_wrong_header(self, tmp_path):
        with pytest.raises(CsvFormatError, match="line 1: expected header"):
            profile_from_csv(_write(tmp_path, "s,u\n0.5,-1\n1,0\n"))

    def test_field_count(self, tmp_path):
        text = "s,u,u_s\n0.5,-1,1\n0.7,-0.5,1,9\n1,0,1\n"
        with pytest.raises(CsvFormatError, match="line 3: expected 3 fields, got 4"):
            profile_from_csv(_write(tmp_path, text))

    def test_non_numeric_field_names_column(self, tmp_path):
        text = "s,u,u_s\n0.5,-1,oops\n1,0,1\n"
        with pytest.raises(
            CsvFormatError, match="line 2: field 'u_s' is not a number: 'oops'"
        ):
            profile_from_csv(_write(tmp_path, text))

    def test_non_finite(self, tmp_path):
        text = "s,u,u_s\n0.5,-inf,1\n1,0,1\n"
        with pytest.raises(CsvFormatError, match="line 2: non-finite"):
            profile_from_csv(_write(tmp_path, text))

    def test_blank_interior_line(self, tmp_path):
        text = "s,u,u_s\n0.5,-1,1\n\n1,0,1\n"
        with pytest.raises(CsvFormatError, match="line 3: blank line"):
            profile_from_csv(_write(tmp_path, text))

    def test_too_few_rows(self, tmp_path):
        with pytest.raises(CsvFormatError, match="at least 2 data rows"):
            profile_from_csv(_write(tmp_path, "s,u,u_s\n1,0,1\n"))

    def test_decreasing_grid_cites_data_block(self, tmp_path):
        text = "s,u,u_s\n0.7,-1,1\n0.5,-0.5,1\n1,0,1\n"
        with pytest.raises(CsvFormatError, match="lines 2-4: .*increasing"):
            profile_from_csv(_write(tmp_path, text))

    def test_boundary_violation(self, tmp_path):
        text = "s,u,u_s\n0.5,-1,1\n1,0.25,1\n"
        with pytest.raises(CsvFormatError, match="boundary condition violated"):
            profile_from_csv(_write(tmp_path, text))

    def test_is_a_value_error(self):
        assert issubclass(CsvFormatError, ValueError)


class TestDigestsAndManifests:
    def test_sha256_matches_hashlib(self, tmp_path):
        path = tmp_path / "blob.bin"
        path.write_bytes(b"0123456789abcdef" * 100)
        assert sha256_file(path) == hashlib.sha256(path.read_bytes()).hexdigest()

    def test_manifest_records_digests(self, tmp_path):
        f1 = write_csv(tmp_path / "one.csv", ("x",), [[1.0, 2.0]])
        f2 = write_json(tmp_path / "two.json", {"v": 0.5})
        manifest_path = write_manifest(
            tmp_path,
            command="demo",
            parameters={"n": 6, "tol": 1e-6},
            tolerances={"tol": 1e-6},
            output_files=[f1, f2],
        )
        assert manifest_path.name == "demo.manifest.json"
        doc = read_json(manifest_path)
        assert doc["command"] == "demo"
        assert doc["outputs"]["one.csv"] == sha256_file(f1)
        assert doc["outputs"]["two.json"] == sha256_file(f2)
        assert doc["parameters"]["n"] == 6
        assert float(doc["tolerances"]["tol"]) == 1e-6
        # ISO-8601 timestamp
        datetime.fromisoformat(doc["timestamp"])
        assert doc["version"]


class TestOutputDir:
    def test_override_wins(self, tmp_path, monkeypatch):
        monkeypatch.setenv("KHESSIAN_OUT_DIR", str(tmp_path / "env"))
        target = tmp_path / "explicit" / "nested"
        assert output_dir(target) == target
        assert target.is_dir()

    def test_environment_used_when_no_override(self, tmp_path, monkeypatch):
        env_dir = tmp_path / "envdir"
        monkeypatch.setenv("KHESSIAN_OUT_DIR", str(env_dir))
        assert output_dir() == env_dir
        assert env_dir.is_dir()

    def test_defaults_to_cwd(self, tmp_path, monkeypatch):
        monkeypatch.delenv("KHESSIAN_OUT_DIR", raising=False)
        monkeypatch.chdir(tmp_path)
        assert output_dir().resolve() == tmp_path.resolve()

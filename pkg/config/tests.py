import os
import tempfile
from pathlib import Path
from unittest import mock

from django.test import SimpleTestCase, override_settings

from core.exceptions import UsageError
from .models import INITIAL_SETTINGS, SystemSetting, ValueType


class ResolutionOrderTests(SimpleTestCase):
    def test_registry_default(self):
        with override_settings(CRYSRED={}):
            self.assertEqual(SystemSetting.get("PRECISION_RETRY_FACTOR"), 8)
            self.assertEqual(SystemSetting.get("OUTPUT_FORMAT"), "json")

    def test_unknown_key_uses_default(self):
        self.assertIsNone(SystemSetting.get("NO_SUCH_KEY"))
        self.assertEqual(SystemSetting.get("NO_SUCH_KEY", default=3), 3)

    @override_settings(CRYSRED={"PARALLELISM": 3})
    def test_settings_over_registry(self):
        self.assertEqual(SystemSetting.get("PARALLELISM"), 3)

    @override_settings(CRYSRED={"PRECISION": 0})
    def test_environment_over_settings(self):
        with mock.patch.dict(os.environ, {"CRYSRED_PRECISION": "24"}):
            self.assertEqual(SystemSetting.get("PRECISION"), 24)
        with mock.patch.dict(os.environ, {"CRYSRED_PRECISION": ""}):
            self.assertEqual(SystemSetting.get("PRECISION"), 0)

    def test_overrides_win_and_unwind(self):
        with mock.patch.dict(os.environ, {"CRYSRED_PRECISION": "24"}):
            with SystemSetting.overrides({"PRECISION": 30, "PARALLELISM": None}):
                self.assertEqual(SystemSetting.get("PRECISION"), 30)
                with SystemSetting.overrides({"PRECISION": 31}):
                    self.assertEqual(SystemSetting.get("PRECISION"), 31)
                self.assertEqual(SystemSetting.get("PRECISION"), 30)
            self.assertEqual(SystemSetting.get("PRECISION"), 24)

    def test_bad_integer(self):
        with SystemSetting.overrides({"PRECISION": "lots"}):
            with self.assertRaises(UsageError):
                SystemSetting.get("PRECISION")


class ParseTests(SimpleTestCase):
    def test_types(self):
        self.assertEqual(SystemSetting._parse("12", ValueType.INT), 12)
        self.assertEqual(SystemSetting._parse("table", ValueType.STRING), "table")
        with self.assertRaises(UsageError):
            SystemSetting._parse("0.5", ValueType.INT)

    def test_registry_uses_declared_types_only(self):
        self.assertEqual(set(ValueType.values), {"INT", "STRING"})
        self.assertEqual(str(ValueType.INT.label), "Tam Sayı")
        for entry in INITIAL_SETTINGS:
            self.assertIn(entry["value_type"], ValueType.values)
            SystemSetting._parse(entry["value"], entry["value_type"])


class ReadFileTests(SimpleTestCase):
    def write(self, directory, text):
        path = Path(directory) / "run.env"
        path.write_text(text)
        return path

    def test_prefix_is_optional(self):
        with tempfile.TemporaryDirectory() as directory:
            path = self.write(directory, "# run\nCRYSRED_PRECISION=40\nparallelism=2\n")
            self.assertEqual(SystemSetting.read_file(path), {"PRECISION": "40", "PARALLELISM": "2"})

    def test_unknown_key(self):
        with tempfile.TemporaryDirectory() as directory:
            path = self.write(directory, "PRECISON=40\n")
            with self.assertRaises(UsageError):
                SystemSetting.read_file(path)

    def test_missing_file(self):
        with self.assertRaises(UsageError):
            SystemSetting.read_file("/nonexistent/run.env")

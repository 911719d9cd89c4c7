import json
import sys
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from core.exceptions import UsageError
from manage import main
from .management.commands.hecke import parse_term
from .services import RunConfig, parse_digits


def run(command, *args, **options):
    out = StringIO()
    call_command(command, *args, stdout=out, **options)
    return out.getvalue().splitlines()


def run_json(command, *args, **options):
    return [json.loads(line) for line in run(command, *args, **options)]


def exit_code(command, *args, **options):
    try:
        run(command, *args, **options)
    except CommandError as exc:
        return exc.returncode
    return 0


class ParsingTests(SimpleTestCase):
    def test_digits(self):
        self.assertEqual(parse_digits("4,3"), [4, 3])
        self.assertEqual(parse_digits(" 1, 0 ,2"), [1, 0, 2])
        with self.assertRaises(UsageError):
            parse_digits("4;3")
        with self.assertRaises(UsageError):
            parse_digits(",")

    def test_term(self):
        self.assertEqual(parse_term("0::1,0"), {"m": 0, "low": 0, "c_digits": [], "poly": [1, 0]})
        self.assertEqual(
            parse_term("2:-1:1,2:0,1/2"), {"m": 2, "low": -1, "c_digits": [1, 2], "poly": [0, [1, 2]]}
        )
        with self.assertRaises(UsageError):
            parse_term("0:1")
        with self.assertRaises(UsageError):
            parse_term("0::x")

    def test_flags_win_over_file(self):
        config = RunConfig.from_options("classify", {"precision": 12, "format": None})
        config = RunConfig(**{**config.__dict__, "file_values": {"PRECISION": "40", "PARALLELISM": "2"}})
        self.assertEqual(config.settings(), {"PRECISION": 12, "PARALLELISM": "2"})


class ClassifyCommandTests(SimpleTestCase):
    def test_reducible(self):
        [body] = run_json("classify", p=3, k=9, e=2, unit="4,3", shift=1)
        self.assertEqual(body["variant"], "reducible")
        self.assertEqual(body["trace"], 2)
        self.assertIsNone(body["t"])

    def test_irreducible(self):
        [body] = run_json("classify", "--p", "3", "--k", "9", "--e", "2", "--unit", "1", "--shift", "1")
        self.assertEqual((body["variant"], body["t"]), ("irreducible", 2))

    def test_output_is_deterministic(self):
        args = ("--p", "3", "--k", "9", "--e", "2", "--unit", "4,3", "--shift", "1")
        self.assertEqual(run("classify", *args), run("classify", *args))

    def test_valuation_one_is_a_domain_error(self):
        self.assertEqual(exit_code("classify", p=3, k=9, e=1, unit="1", shift=1), 2)

    def test_usage_errors(self):
        self.assertEqual(exit_code("classify", p=3, e=2, unit="1", shift=1), 1)
        self.assertEqual(exit_code("classify", p=3, k=9, e=2, unit="1,x", shift=1), 1)
        self.assertEqual(exit_code("classify", p=3, k=9, e=2, shift=1), 1)
        self.assertEqual(exit_code("classify", "--p", "3", "--bogus"), 1)

    def test_table(self):
        lines = run("classify", p=3, k=9, e=2, unit="4,3", shift=1, format="table")
        self.assertEqual(lines[0].split(), ["variant", "reducible"])
        self.assertEqual(lines[1].split(), ["trace", "2"])

    def test_config_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "run.env"
            path.write_text("CRYSRED_PRECISION=40\nOUTPUT_FORMAT=json\n")
            [body] = run_json("classify", p=3, k=9, e=2, unit="4,3", shift=1, config=str(path))
            self.assertEqual(body["precision"], 40)
            [body] = run_json("classify", p=3, k=9, e=2, unit="4,3", shift=1, config=str(path), precision=12)
            self.assertEqual(body["precision"], 12)

    def test_config_file_errors(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "run.env"
            path.write_text("PRECISON=40\n")
            self.assertEqual(exit_code("classify", p=3, k=9, e=2, unit="1", shift=1, config=str(path)), 1)
            self.assertEqual(
                exit_code("classify", p=3, k=9, e=2, unit="1", shift=1, config=str(Path(directory) / "missing")), 1
            )


class SweepCommandTests(SimpleTestCase):
    def test_grid(self):
        [body] = run_json("sweep", p=5, k=11, e=2, unit=["1", "2", "3", "4"], shift=[1])
        self.assertEqual(
            [row["status"] for row in body["rows"]], ["irreducible", "reducible", "reducible", "irreducible"]
        )
        self.assertEqual(body["summary"], {"irreducible": 2, "reducible": 2, "error": 0})

    def test_empty_grid(self):
        [body] = run_json("sweep", p=5, k=11)
        self.assertEqual(body["rows"], [])

    def test_bad_points_are_rows(self):
        # shift 0 ile a = 1 birimdir
        [body] = run_json("sweep", p=5, k=11, e=2, unit=["1"], shift=[0, 1])
        self.assertEqual([row["status"] for row in body["rows"]], ["error", "irreducible"])
        self.assertEqual(body["rows"][0]["error"]["error"], "DomainError")

    def test_table_footer(self):
        lines = run("sweep", p=5, k=11, e=2, unit=["1", "2", "3", "4"], shift=[1], format="table")
        self.assertEqual(len(lines), 6)
        self.assertEqual(lines[-1], "irreducible=2 reducible=2 error=0")

    def test_parallel_sweep_keeps_order(self):
        serial = run_json("sweep", p=5, k=11, e=2, unit=["1", "2", "3", "4"], shift=[1])
        parallel = run_json("sweep", p=5, k=11, e=2, unit=["1", "2", "3", "4"], shift=[1], parallelism=2)
        self.assertEqual(serial, parallel)


class VerifyCommandTests(SimpleTestCase):
    def test_suite(self):
        reports = run_json("verify", suite="section2", p=3, r=7)
        self.assertEqual(len(reports), 6)
        self.assertTrue(all(report["pass"] for report in reports))
        self.assertIn("ms", reports[0])

    def test_statement(self):
        [report] = run_json(
            "verify", "--statement", "check_theta_relation", "--p", "3", "--r", "7", "--e", "2", "--unit", "4,3", "--shift", "1"
        )
        self.assertTrue(report["pass"])
        self.assertEqual(report["details"]["matched_branch"], 2)

    def test_no_timing(self):
        [report] = run_json("verify", statement="check_r_bound", p=3, r=7, no_timing=True)
        self.assertNotIn("ms", report)

    def test_unknown_statement(self):
        self.assertEqual(exit_code("verify", statement="nosuch", p=3, r=7), 1)
        self.assertEqual(exit_code("verify", p=3, r=7), 1)

    def test_failing_check_exits_4(self):
        out = StringIO()
        with self.assertRaises(CommandError) as caught:
            call_command(
                "verify", statement="check_Xg", p=3, r=7, e=2, unit="1", shift=1, drop_block=1, stdout=out
            )
        self.assertEqual(caught.exception.returncode, 4)
        [report] = [json.loads(line) for line in out.getvalue().splitlines()]
        self.assertFalse(report["pass"])
        self.assertIsNotNone(report["witness"])

    def test_hypothesis_error(self):
        self.assertEqual(exit_code("verify", statement="check_r_bound", p=5, r=7), 2)

    def test_table(self):
        lines = run("verify", suite="section2", p=3, r=7, format="table", no_timing=True)
        self.assertEqual(lines[-1], "6/6 passed")


class HeckeCommandTests(SimpleTestCase):
    def test_T_on_lowest_weight_vector(self):
        [body] = run_json("hecke", p=3, r=1, term=["0::1,0"])
        self.assertEqual(len(body["terms"]), 3)
        self.assertTrue(all(term["m"] == 1 and term["poly"] == [1, 0] for term in body["terms"]))

    def test_T_squared(self):
        [body] = run_json("hecke", p=3, r=1, term=["0::1,0"], power=2)
        self.assertEqual(len(body["terms"]), 9)
        self.assertEqual({term["m"] for term in body["terms"]}, {2})

    def test_empty_element(self):
        [body] = run_json("hecke", p=5, r=3)
        self.assertEqual(body["terms"], [])

    def test_T_minus_a(self):
        y_r = ["0::0,0,0,0,0,0,0,1"]
        [image] = run_json("hecke", p=3, r=7, op="T-a", e=2, unit="1", shift=1, term=y_r)
        [T_image] = run_json("hecke", p=3, r=7, over="ramified", e=2, term=y_r)
        self.assertEqual(image["ring"], T_image["ring"])
        cosets = {(term["m"], term["low"], tuple(term["c_digits"])) for term in image["terms"]}
        T_cosets = {(term["m"], term["low"], tuple(term["c_digits"])) for term in T_image["terms"]}
        # T birim coset'e hiç dönmez; orada yalnızca −a·[1, y^r] durur
        self.assertEqual(cosets, T_cosets | {(0, 0, ())})

    def test_T_minus_a_needs_a(self):
        self.assertEqual(exit_code("hecke", p=3, r=7, op="T-a", term=["0::0,0,0,0,0,0,0,1"]), 1)

    def test_bad_terms(self):
        self.assertEqual(exit_code("hecke", p=3, r=1, term=["0::1"]), 1)
        self.assertEqual(exit_code("hecke", p=3, r=1, term=["1:5:1,0"]), 1)


class ManagePyExitCodeTests(SimpleTestCase):
    def exit_status(self, *argv):
        stderr = StringIO()
        with mock.patch.object(sys, "argv", ["manage.py", *argv]):
            with redirect_stdout(StringIO()), redirect_stderr(stderr):
                with self.assertRaises(SystemExit) as caught:
                    main()
        return caught.exception.code, stderr.getvalue()

    def test_entry_point(self):
        self.assertEqual(main.__doc__, "Run administrative tasks.")

    def test_bad_flag_value_exits_1(self):
        code, stderr = self.exit_status("classify", "--p", "x")
        self.assertEqual(code, 1)
        self.assertIn("invalid int value", stderr)

    def test_unknown_flag_exits_1(self):
        code, _ = self.exit_status("sweep", "--p", "5", "--k", "11", "--bogus")
        self.assertEqual(code, 1)

    def test_domain_error_keeps_exit_2(self):
        code, stderr = self.exit_status("classify", "--p", "3", "--k", "9", "--e", "1", "--unit", "1", "--shift", "1")
        self.assertEqual(code, 2)
        self.assertIn("DomainError", stderr)

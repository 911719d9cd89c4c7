from django.test import SimpleTestCase
from rest_framework.test import APIClient

from classifier.models import ASpec, Variant
from classifier.services import ClassifierService
from core.exceptions import DomainError, HypothesisError, UsageError
from hecke.models import Branch
from .models import CheckReport, Statement
from .services import VerifierService

PI = ASpec(3, 2, (1,), 1)
TUNED = ASpec(3, 2, (4, 3), 1)  # (4 + 3π)π = 9 + 4π
ACCEPTANCE_UNITS = {(3, 7): ((1,), (2,), (4, 3)), (3, 9): ((1,), (2,), (1, 1)), (5, 21): ((1,), (2,), (1, 0, 2))}
NEAR = ASpec(3, 2, (4, 1), 1)  # (4 + π)π, v(a² − 21) = 3/2


def section2_parameters():
    for p in (3, 5, 7):
        for r in range(p + 1, 4 * p + 2):
            if (r - 1) % (p - 1) == 0:
                yield p, r


class CheckReportTests(SimpleTestCase):
    def test_pass_iff_no_witness(self):
        with self.assertRaises(DomainError):
            CheckReport("check_r_bound", {}, True, {"r": 1})
        with self.assertRaises(DomainError):
            CheckReport("check_r_bound", {}, False, None)

    def test_json_shape(self):
        report = VerifierService.check_r_bound(3, 7)
        body = report.to_json()
        self.assertEqual(set(body) - {"details"}, {"statement", "params", "pass", "witness", "ms"})
        self.assertEqual(body["params"], {"p": 3, "r": 7})
        self.assertNotIn("ms", report.to_json(timing=False))


class SectionTwoTests(SimpleTestCase):
    def test_binomial_examples(self):
        report = VerifierService.check_binomial(3, 7)
        self.assertTrue(report.passed)
        self.assertEqual(report.params["n_max"], 200)
        self.assertEqual(report.details["t"], 1)
        self.assertTrue(VerifierService.check_binomial(5, 21).passed)

    def test_binomial_range_covers_r(self):
        self.assertEqual(VerifierService.check_binomial(3, 251).params["n_max"], 251)

    def test_factorial_bound(self):
        for p in (3, 5, 7, 11):
            self.assertTrue(VerifierService.check_factorial_bound(p, 500).passed)

    def test_r_bound(self):
        self.assertTrue(VerifierService.check_r_bound(3, 7).passed)
        report = VerifierService.check_r_bound(3, 19)
        self.assertTrue(report.passed)
        self.assertEqual(report.details["t"], 2)
        with self.assertRaises(HypothesisError):
            VerifierService.check_r_bound(5, 7)

    def test_all_statements_on_the_grid(self):
        checks = (
            VerifierService.check_binomial,
            VerifierService.check_r_bound,
            VerifierService.check_first_congruence,
            VerifierService.check_power_sums,
            VerifierService.check_sum_lx,
        )
        for p, r in section2_parameters():
            for check in checks:
                report = check(p, r)
                self.assertTrue(report.passed, (p, r, report.witness))

    def test_power_sum_case_count(self):
        # kaydırılmamış iki toplam, artı λ başına kaydırılmış iki toplam
        self.assertEqual(VerifierService.check_power_sums(5, 21).details["cases"], 2 + 2 * 5)

    def test_rejects_bad_weights(self):
        with self.assertRaises(HypothesisError):
            VerifierService.check_first_congruence(5, 8)
        with self.assertRaises(DomainError):
            VerifierService.check_sum_lx(2, 7)


class HeckeStatementTests(SimpleTestCase):
    def test_psi_values(self):
        self.assertTrue(VerifierService.check_psi_values(3, 7).passed)
        self.assertTrue(VerifierService.check_psi_values(5, 21).passed)
        with self.assertRaises(HypothesisError):
            VerifierService.check_psi_values(5, 5)

    def test_T_powers(self):
        for p in (3, 5, 7):
            self.assertTrue(VerifierService.check_T_powers(p).passed)

    def test_Tma_generator(self):
        report = VerifierService.check_Tma_generator(3, 7, PI)
        self.assertTrue(report.passed, report.witness)
        self.assertEqual(report.details["modulus"], 6)
        self.assertEqual(report.details["g_samples"], 3)

    def test_Tma_generator_without_the_down_term(self):
        report = VerifierService.check_Tma_generator(3, 7, PI, drop_block=2)
        self.assertFalse(report.passed)
        self.assertTrue(report.details["dropped_block_visible"])
        self.assertEqual(report.witness["coset"]["m"], -1)
        self.assertEqual(report.witness["g"], {"m": 0, "low": 0, "c_digits": []})

    def test_Xg(self):
        for a, modulus in ((PI, 4), (TUNED, 5)):
            report = VerifierService.check_Xg(3, 7, a)
            self.assertTrue(report.passed, report.witness)
            self.assertEqual(report.details["modulus"], modulus)

    def test_Xg_mutation(self):
        report = VerifierService.check_Xg(3, 7, PI, drop_block=1)
        self.assertFalse(report.passed)
        self.assertTrue(report.details["dropped_block_visible"])

    def test_TmaX(self):
        for a, modulus in ((PI, 5), (TUNED, 6)):
            report = VerifierService.check_TmaX(3, 7, a)
            self.assertTrue(report.passed, report.witness)
            self.assertEqual(report.details["modulus"], modulus)
            self.assertEqual(report.details["sharpness"]["modulus"], modulus + 1)

    def test_TmaX_mutation(self):
        report = VerifierService.check_TmaX(3, 7, PI, drop_block=2)
        self.assertFalse(report.passed)
        self.assertEqual(report.witness["coset"]["m"], 1)
        self.assertNotIn("sharpness", report.details)

    def test_invisible_block_is_reported(self):
        # a = π için a(r−1)p'nin valuation'ı 5/2 = t₁
        report = VerifierService.check_TmaX(3, 7, PI, drop_block=1)
        self.assertTrue(report.passed)
        self.assertFalse(report.details["dropped_block_visible"])

    def test_block_index_out_of_range(self):
        with self.assertRaises(UsageError):
            VerifierService.check_Xg(3, 7, PI, drop_block=3)

    def test_acceptance_parameters(self):
        for (p, r), units in ACCEPTANCE_UNITS.items():
            for unit in units:
                a = ASpec(p, 2, unit, 1)
                for check in (VerifierService.check_Tma_generator, VerifierService.check_Xg, VerifierService.check_TmaX):
                    report = check(p, r, a)
                    self.assertTrue(report.passed, (check.__name__, p, r, unit, report.witness))


class ThetaRelationTests(SimpleTestCase):
    def test_T_branch(self):
        for a in (PI, NEAR):
            report = VerifierService.check_theta_relation(3, 7, a)
            self.assertTrue(report.passed, report.witness)
            self.assertEqual(report.details["predicted_branch"], 1)
            self.assertEqual(report.details["matched_branch"], 1)

    def test_quadratic_branch(self):
        report = VerifierService.check_theta_relation(3, 7, TUNED)
        self.assertTrue(report.passed, report.witness)
        self.assertEqual(report.details["matched_branch"], 2)
        self.assertEqual(report.details["tau_bar"], 2)

    def test_quadratic_branch_with_zero_trace(self):
        # p = 5 ile O_2 üzerinde a = 11π: a² − 105 = 500
        report = VerifierService.check_theta_relation(5, 21, ASpec(5, 2, (1, 0, 2), 1))
        self.assertTrue(report.passed, report.witness)
        self.assertEqual((report.details["matched_branch"], report.details["tau_bar"]), (2, 0))

    def test_mutations_fail(self):
        report = VerifierService.check_theta_relation(3, 7, PI, drop_block=0)
        self.assertFalse(report.passed)
        self.assertEqual(report.witness["branch"], 1)
        for block in (0, 1, 2):
            report = VerifierService.check_theta_relation(3, 7, TUNED, drop_block=block)
            self.assertFalse(report.passed, block)
            self.assertTrue(report.details["dropped_block_visible"])

    def test_branch_matches_classifier(self):
        for p, r, a in ((3, 7, PI), (3, 7, TUNED), (3, 7, NEAR), (3, 9, ASpec(3, 2, (2,), 1))):
            report = VerifierService.check_explicit_description(p, r, a)
            self.assertTrue(report.passed, report.witness)

    def test_acceptance_branches_agree_with_classifier(self):
        for (p, r), units in ACCEPTANCE_UNITS.items():
            for unit in units:
                a = ASpec(p, 2, unit, 1)
                with self.subTest(p=p, r=r, unit=unit):
                    report = VerifierService.check_theta_relation(p, r, a)
                    self.assertTrue(report.passed, report.witness)
                    self.assertEqual(report.details["matched_branch"], report.details["predicted_branch"])
                    result = ClassifierService.classify(p, r + 2, a)
                    if result.variant == Variant.REDUCIBLE:
                        self.assertEqual(report.details["matched_branch"], Branch.QUADRATIC)
                        self.assertEqual(report.details["tau_bar"], result.trace)
                    else:
                        self.assertEqual(report.details["matched_branch"], Branch.T)

    def test_explicit_description_reads_trace(self):
        report = VerifierService.check_explicit_description(3, 7, TUNED)
        self.assertEqual(report.details["read_off"], {"variant": "reducible", "trace": 2})
        self.assertEqual(report.details["classifier"]["trace"], 2)

    def test_explicit_description_mutation(self):
        report = VerifierService.check_explicit_description(3, 7, TUNED, drop_block=1)
        self.assertFalse(report.passed)
        self.assertEqual(report.witness["stage"], "theta_relation")

    def test_double_precision_agrees(self):
        for a in (PI, TUNED):
            low = VerifierService.check_theta_relation(3, 7, a)
            high = VerifierService.check_theta_relation(3, 7, a, precision=2 * low.params["precision"])
            self.assertEqual(low.details["matched_branch"], high.details["matched_branch"])
            self.assertEqual(low.details["tau_bar"], high.details["tau_bar"])


class DispatchTests(SimpleTestCase):
    def test_unknown_statement(self):
        with self.assertRaises(UsageError):
            VerifierService.run_statement("nosuch", {"p": 3, "r": 7})

    def test_missing_weight(self):
        with self.assertRaises(UsageError):
            VerifierService.run_statement("check_binomial", {"p": 3})

    def test_default_a(self):
        report = VerifierService.run_statement("check_Xg", {"p": 3, "r": 7})
        self.assertTrue(report.passed)
        self.assertEqual(report.params["a"], PI.to_json())

    def test_section2_suite(self):
        reports = VerifierService.run_suite("section2", {"p": 3, "r": 7})
        self.assertEqual(
            [report.statement for report in reports],
            [
                Statement.BINOMIAL,
                Statement.FACTORIAL_BOUND,
                Statement.R_BOUND,
                Statement.FIRST_CONGRUENCE,
                Statement.POWER_SUMS,
                Statement.SUM_LX,
            ],
        )
        self.assertTrue(all(report.passed for report in reports))

    def test_member_errors_become_reports(self):
        reports = VerifierService.run_suite("section4", {"p": 5, "r": 5})
        by_statement = {report.statement: report for report in reports}
        self.assertTrue(by_statement["check_T_powers"].passed)
        self.assertEqual(by_statement["check_TmaX"].witness["error"], "HypothesisError")
        self.assertEqual(len(reports), 7)

    def test_unknown_suite(self):
        with self.assertRaises(UsageError):
            VerifierService.run_suite("section9", {"p": 3, "r": 7})


class VerifyApiTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_statement(self):
        response = self.client.post(
            "/api/verify/",
            {"statement": "check_theta_relation", "p": 3, "r": 7, "e": 2, "unit": [4, 3], "shift": 1},
            format="json",
        )
        self.assertEqual(response.status_code, 200)
        body = response.json()
        self.assertEqual(len(body), 1)
        self.assertTrue(body[0]["pass"])
        self.assertEqual(body[0]["details"]["matched_branch"], 2)

    def test_suite(self):
        response = self.client.post("/api/verify/", {"suite": "section2", "p": 5, "r": 9}, format="json")
        self.assertEqual(response.status_code, 200)
        self.assertEqual(len(response.json()), 6)

    def test_unknown_statement(self):
        response = self.client.post("/api/verify/", {"statement": "nosuch", "p": 3, "r": 7}, format="json")
        self.assertEqual(response.status_code, 400)

    def test_statement_or_suite(self):
        response = self.client.post(
            "/api/verify/", {"statement": "check_r_bound", "suite": "all", "p": 3, "r": 7}, format="json"
        )
        self.assertEqual(response.status_code, 400)

    def test_hypothesis_error(self):
        response = self.client.post("/api/verify/", {"statement": "check_r_bound", "p": 5, "r": 7}, format="json")
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.json()["error"], "HypothesisError")

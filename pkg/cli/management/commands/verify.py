import logging

from django.core.management.base import CommandError

from cli.base import CrysredCommand
from cli.services import RenderService, parse_digits, serializer_errors
from core.exceptions import UsageError
from verifier.models import Statement, Suite
from verifier.serializers import CheckReportSerializer, VerifyRequestSerializer
from verifier.services import VerifierService

logger = logging.getLogger(__name__)


class Command(CrysredCommand):
    help = (
        "Run verifier checks: manage.py verify --suite all --p 3 --r 7 "
        "or --statement check_Xg --p 3 --r 7 --e 2 --unit 1 --shift 1"
    )

    def add_command_arguments(self, parser):
        parser.add_argument("--r", type=int, help="Weight r (r ≡ 1 mod p − 1, r > p).")
        parser.add_argument("--statement", help=f"One of: {', '.join(Statement.values)}.")
        parser.add_argument("--suite", help=f"One of: {', '.join(Suite.values)}.")
        parser.add_argument("--n-max", type=int, dest="n_max", help="Range bound for check_binomial / check_factorial_bound.")
        parser.add_argument("--drop-block", type=int, dest="drop_block", help="Remove one right-hand block (must fail).")
        parser.add_argument("--no-timing", action="store_true", dest="no_timing", help="Leave ms out of the reports.")
        self.add_a_arguments(parser)

    def run(self, config):
        config.require("p")
        data = {
            "p": config.p,
            "e": config.e,
            "shift": config.shift,
            "precision": config.resolved_precision(),
            "drop_block": config.drop_block,
            "parallelism": config.parallelism,
        }
        for key in ("r", "statement", "suite"):
            if getattr(config, key) is not None:
                data[key] = getattr(config, key)
        if config.n_max is not None:
            data["n_max"] = config.n_max
        if config.units:
            data["unit"] = parse_digits(config.units[0])

        serializer = VerifyRequestSerializer(data=data)
        if not serializer.is_valid():
            raise UsageError(serializer_errors(serializer.errors))

        validated = serializer.validated_data
        if validated.get("statement"):
            reports = [VerifierService.run_statement(validated["statement"], validated["params"])]
        else:
            reports = VerifierService.run_suite(validated["suite"], validated["params"], validated.get("parallelism"))

        bodies = CheckReportSerializer(reports, many=True, context={"timing": config.timing}).data
        if self.output_format == "table":
            self.emit_lines(RenderService.report_table(bodies))
        else:
            self.emit_lines(RenderService.json_line(body) for body in bodies)

        failed = [report.statement for report in reports if not report.passed]
        if failed:
            logger.info("verify: %s of %s checks failed", len(failed), len(reports))
            raise CommandError(
                f"{len(failed)} of {len(reports)} checks failed: {', '.join(map(str, failed))}", returncode=4
            )

from __future__ import annotations

import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from config.models import SystemSetting
from core.exceptions import CrysredError, PrecisionError, UsageError
from .services import FORMATS, RenderService, RunConfig

logger = logging.getLogger(__name__)


class CrysredCommand(BaseCommand):
    """
    classify / sweep / verify / hecke için ortak flag'ler ve hata çevirisi.

    CrysredError, CommandError(returncode=exit_code) olur: 1 kullanım,
    2 tanım kümesi, 3 hassasiyet, 4 iç kontrol. Alt sınıflar run(config)'i
    yazar ve çıktıyı emit() / emit_lines() ile verir.
    """

    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        # argparse 2 ile çıkardı; 2 tanım kümesi hatalarına ayrılmış
        def usage_error(message):
            if parser.called_from_command_line:
                parser.print_usage(sys.stderr)
                parser.exit(UsageError.exit_code, f"{parser.prog}: error: {message}\n")
            raise CommandError(f"Error: {message}", returncode=UsageError.exit_code)

        parser.error = usage_error
        return parser

    def add_arguments(self, parser):
        parser.add_argument("--p", type=int, help="Odd prime p.")
        parser.add_argument("--precision", type=int, help="Working π-adic precision P (π-digits).")
        parser.add_argument("--format", choices=FORMATS, help="json (default) or table.")
        parser.add_argument("--parallelism", type=int, help="Worker processes for sweeps and suites.")
        parser.add_argument("--config", help="key=value run-config file; flags override it.")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    @staticmethod
    def add_a_arguments(parser, many: bool = False):
        parser.add_argument("--e", type=int, default=1, help="Ramification index: π^e = p.")
        if many:
            parser.add_argument(
                "--unit", action="append", help="Unit digits d0,d1,... (repeat for each grid point)."
            )
            parser.add_argument("--shift", type=int, action="append", help="Power of π (repeatable).")
        else:
            parser.add_argument("--unit", help="Unit digits d0,d1,...: a = (d0 + d1·π + ...)·π^shift.")
            parser.add_argument("--shift", type=int, default=0, help="Power of π.")

    def handle(self, *args, **options):
        try:
            config = RunConfig.from_options(self.command_name, options)
            with SystemSetting.overrides(config.settings()):
                self.output_format = config.resolved_format()
                self.run(config)
        except CrysredError as exc:
            message = f"{type(exc).__name__}: {exc}"
            if isinstance(exc, PrecisionError) and exc.suggested_precision:
                message += f" (retry with --precision {exc.suggested_precision})"
            logger.debug("%s failed: %s", self.command_name, message)
            raise CommandError(message, returncode=exc.exit_code) from exc

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    def run(self, config: RunConfig) -> None:
        raise NotImplementedError

    # ------------------------------------------------------------------
    # Çıktı
    # ------------------------------------------------------------------

    def emit(self, payload, table=None) -> None:
        """Tek sonuç: bir JSON nesnesi veya table(payload) satırları."""
        if self.output_format == "table" and table is not None:
            self.emit_lines(table(payload))
        else:
            self.stdout.write(RenderService.json_line(payload))

    def emit_lines(self, lines) -> None:
        for line in lines:
            self.stdout.write(line)

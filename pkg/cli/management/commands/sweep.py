from classifier.serializers import SweepRequestSerializer, SweepTableSerializer
from classifier.services import ClassifierService
from cli.base import CrysredCommand
from cli.services import RenderService, parse_digits, serializer_errors
from core.exceptions import UsageError


class Command(CrysredCommand):
    """
    Grid = her --unit × her --shift, shift'ler en dışta. Nokta başına hatalar
    tablonun satırlarıdır; grid parse edildiyse komut 0 ile çıkar.
    """

    help = "Classify a grid: manage.py sweep --p 5 --k 11 --e 2 --unit 1 --unit 2 --unit 3 --unit 4 --shift 1"

    def add_command_arguments(self, parser):
        parser.add_argument("--k", type=int, help="Weight k ≥ 2.")
        self.add_a_arguments(parser, many=True)

    def run(self, config):
        config.require("p", "k")
        units = [parse_digits(unit) for unit in config.units]
        precision = config.resolved_precision()

        grid = []
        for shift in config.shifts:
            serializer = SweepRequestSerializer(
                data={"p": config.p, "k": config.k, "e": config.e, "units": units, "shift": shift, "precision": precision}
            )
            if not serializer.is_valid():
                raise UsageError(serializer_errors(serializer.errors))
            grid.extend(serializer.validated_data["grid"])

        table = ClassifierService.sweep(config.p, config.k, grid, precision, config.parallelism)
        self.emit(SweepTableSerializer(table).data, RenderService.sweep_table)

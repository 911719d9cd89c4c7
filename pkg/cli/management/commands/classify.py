from classifier.serializers import ClassificationResultSerializer, ClassifyRequestSerializer
from classifier.services import ClassifierService
from cli.base import CrysredCommand
from cli.services import RenderService, parse_digits, serializer_errors
from core.exceptions import UsageError


class Command(CrysredCommand):
    help = "Reduction of V_{k,a}: manage.py classify --p 3 --k 9 --e 2 --unit 4,3 --shift 1"

    def add_command_arguments(self, parser):
        parser.add_argument("--k", type=int, help="Weight k ≥ 2.")
        self.add_a_arguments(parser)

    def run(self, config):
        config.require("p", "k")
        if not config.units:
            raise UsageError("classify: missing --unit")

        serializer = ClassifyRequestSerializer(
            data={
                "p": config.p,
                "k": config.k,
                "e": config.e,
                "unit": parse_digits(config.units[0]),
                "shift": config.shift,
                "precision": config.resolved_precision(),
            }
        )
        if not serializer.is_valid():
            raise UsageError(serializer_errors(serializer.errors))

        data = serializer.validated_data
        result = ClassifierService.classify(data["p"], data["k"], data["a"], data.get("precision"))
        self.emit(ClassificationResultSerializer(result).data, RenderService.classification_table)

from rest_framework import serializers

from classifier.models import ASpec
from cli.base import CrysredCommand
from cli.services import RenderService, parse_digits, serializer_errors
from core.exceptions import UsageError
from hecke.models import HeckeContext
from hecke.services import HeckeService
from induction.models import InductionElement
from induction.serializers import InductionElementSerializer, InductionTermSerializer, element_from_terms
from polymod.models import CoefficientRing, RingKind

OPERATORS = ("T", "T-a")
RINGS = {"fp": RingKind.PRIME_FIELD, "zmod": RingKind.INTEGER_MOD, "ramified": RingKind.RAMIFIED}


def parse_term(raw: str) -> dict:
    """
    "m:c:poly" veya "m:low:c:poly".

    c, en anlamlı basamak önce Teichmüller basamak listesidir (yoksa "").
    poly x^r, x^{r−1}y, …, y^r katsayılarını listeler; her biri bir tamsayı ya da
    O_e üzerinde "/" ile birleştirilmiş π-basamaklarıdır ("1/2" = 1 + 2π).
    """
    parts = raw.split(":")
    if len(parts) not in (3, 4):
        raise UsageError(f"term {raw!r}: expected m:c:poly or m:low:c:poly")
    if len(parts) == 3:
        parts.insert(1, "0")
    m, low, digits, poly = parts
    try:
        coefficients = []
        for token in poly.replace(" ", "").split(","):
            pieces = [int(d) for d in token.split("/")]
            coefficients.append(pieces if len(pieces) > 1 else pieces[0])
        return {
            "m": int(m),
            "low": int(low),
            "c_digits": parse_digits(digits, "c") if digits else [],
            "poly": coefficients,
        }
    except ValueError as exc:
        raise UsageError(f"term {raw!r}: {exc}") from exc


class Command(CrysredCommand):
    """
    Kullanıcının verdiği E = Σ [g, v] için T^n(E) veya (T − a)^n(E) döker.
    Terimsiz eleman sıfırdır, görüntüsü de sıfırdır.
    """

    help = "Apply T or T − a: manage.py hecke --p 3 --r 1 --term 0::1,0 --power 2"

    def add_command_arguments(self, parser):
        parser.add_argument("--r", type=int, help="Degree r of Sym^r.")
        parser.add_argument("--over", choices=tuple(RINGS), default="fp", help="Coefficients: F_p, Z/p^M or O_e.")
        parser.add_argument("--op", choices=OPERATORS, default="T", help="T or T-a (T-a needs --unit).")
        parser.add_argument("--power", type=int, default=1, help="Apply the operator this many times.")
        parser.add_argument("--term", action="append", default=[], help="m:c:poly term (repeatable).")
        self.add_a_arguments(parser)

    def handle(self, *args, **options):
        self.hecke_options = {key: options.get(key) for key in ("over", "op", "power", "term")}
        return super().handle(*args, **options)

    def run(self, config):
        config.require("p", "r")
        over = self.hecke_options.get("over") or "fp"
        op = self.hecke_options.get("op") or "T"
        power = self.hecke_options.get("power")
        power = 1 if power is None else power
        if over not in RINGS or op not in OPERATORS:
            raise UsageError(f"hecke: --over must be one of {', '.join(RINGS)}, --op one of {', '.join(OPERATORS)}")
        if power < 0:
            raise UsageError(f"hecke: --power must be ≥ 0, got {power}")

        ctx = self.build_context(config, over, op)
        E = self.build_element(ctx, self.hecke_options.get("term") or [])
        for _ in range(power):
            E = HeckeService.apply_T(E) if op == "T" else HeckeService.apply_T_minus_a(ctx, E)
        self.emit(InductionElementSerializer(E).data, RenderService.element_table)

    @staticmethod
    def build_context(config, over: str, op: str) -> HeckeContext:
        p, r = config.p, config.r
        precision = config.resolved_precision()
        if op == "T-a":
            if not config.units:
                raise UsageError("hecke: --op T-a needs --unit")
            a = ASpec.parse(p, config.e, config.units[0], config.shift)
            P = precision or HeckeService.default_precision(p, r, config.e)
            return HeckeContext.for_element(r, a.element(P))
        if RINGS[over] == RingKind.PRIME_FIELD:
            ring = CoefficientRing.prime_field(p)
        elif RINGS[over] == RingKind.INTEGER_MOD:
            ring = CoefficientRing.integer_mod(p, precision or HeckeService.default_precision(p, r, 1))
        else:
            ring = CoefficientRing.ramified(p, config.e, precision or HeckeService.default_precision(p, r, config.e))
        return HeckeContext(ring, r)

    @staticmethod
    def build_element(ctx: HeckeContext, raw_terms: list[str]) -> InductionElement:
        terms = []
        for raw in raw_terms:
            serializer = InductionTermSerializer(data=parse_term(raw), context={"p": ctx.p})
            if not serializer.is_valid():
                raise UsageError(f"term {raw!r}: {serializer_errors(serializer.errors)}")
            terms.append(serializer.validated_data)
        try:
            return element_from_terms(ctx.ring, ctx.r, terms)
        except serializers.ValidationError as exc:
            raise UsageError(serializer_errors(exc.detail)) from exc

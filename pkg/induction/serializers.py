from rest_framework import serializers

from padic.models import RamifiedElement
from polymod.models import CoefficientRing, HomogPoly
from .models import CosetRep, InductionBuilder, InductionElement


class CoefficientRingSerializer(serializers.Serializer):
    kind = serializers.CharField()
    p = serializers.IntegerField()
    e = serializers.IntegerField()
    P = serializers.IntegerField()


class InductionTermSerializer(serializers.Serializer):
    """
    Tek bir [g, v] terimi.

    c_digits en anlamlı basamak önce yazılır (p[λ] + [μ] → [λ, μ]) ve low … m−1
    konumlarını kapsar (eksik baştaki basamaklar 0). poly x^r, x^{r−1}y, …, y^r
    katsayılarını listeler; e > 1 iken her katsayı bir basamak listesidir.
    """

    m = serializers.IntegerField()
    low = serializers.IntegerField(default=0, max_value=0)
    c_digits = serializers.ListField(child=serializers.IntegerField(min_value=0), default=list)
    poly = serializers.ListField(child=serializers.JSONField(), min_length=1)

    def validate(self, attrs):
        p = self.context.get("p")
        if p is not None and any(d >= p for d in attrs["c_digits"]):
            raise serializers.ValidationError({"c_digits": f"Teichmüller digits must lie in 0..{p - 1}."})
        if len(attrs["c_digits"]) > max(0, attrs["m"] - attrs["low"]):
            raise serializers.ValidationError({"c_digits": "More digits than positions low … m−1."})
        return attrs


class InductionElementSerializer(serializers.Serializer):
    """Yalnızca çıktı. Terimler InductionTermSerializer ve element_from_terms ile girer."""

    ring = CoefficientRingSerializer(read_only=True)
    degree = serializers.IntegerField(read_only=True)
    terms = InductionTermSerializer(many=True, read_only=True)

    def to_representation(self, instance):
        if isinstance(instance, InductionElement):
            instance = instance.to_json()
        return super().to_representation(instance)


def element_from_terms(ring: CoefficientRing, degree: int, terms: list[dict]) -> InductionElement:
    """Doğrulanmış terim dict'leri → `ring` üzerinde InductionElement."""
    builder = InductionBuilder(ring, degree)
    for term in terms:
        digits = list(reversed(term["c_digits"]))
        rep = CosetRep.build(term["m"], term["low"], digits)
        values = term["poly"]
        if len(values) != degree + 1:
            raise serializers.ValidationError({"poly": f"expected {degree + 1} coefficients, got {len(values)}"})
        coeffs = []
        for value in values:
            if isinstance(value, list):
                coeffs.append(ring.coerce(RamifiedElement.from_coefficients(ring.p, ring.e, ring.precision, value)))
            else:
                coeffs.append(ring.coerce(int(value)))
        builder.add(rep, HomogPoly(ring, tuple(coeffs)))
    return builder.build()

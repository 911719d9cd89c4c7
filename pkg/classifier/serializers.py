from rest_framework import serializers

from core.exceptions import UsageError
from .models import ASpec


class ASpecFieldsMixin(serializers.Serializer):
    """
    π^e = p olmak üzere a = (unit[0] + unit[1]·π + …)·π^shift.

    unit bir tamsayı listesidir; CLI bunu "4,3" string'i olarak geçirir.
    """

    p = serializers.IntegerField(min_value=3)
    e = serializers.IntegerField(min_value=1, default=1)
    shift = serializers.IntegerField(min_value=0, default=0)
    precision = serializers.IntegerField(min_value=1, required=False, allow_null=True)

    def build_spec(self, unit, attrs) -> ASpec:
        try:
            return ASpec.parse(attrs["p"], attrs["e"], unit, attrs["shift"], attrs.get("precision"))
        except UsageError as exc:
            raise serializers.ValidationError({"unit": str(exc)}) from exc


class ClassifyRequestSerializer(ASpecFieldsMixin):
    """POST /api/classify/ ve `manage.py classify`."""

    k = serializers.IntegerField(min_value=2)
    unit = serializers.ListField(child=serializers.IntegerField(), min_length=1)

    def validate(self, attrs):
        attrs["a"] = self.build_spec(attrs["unit"], attrs)
        return attrs


class SweepRequestSerializer(ASpecFieldsMixin):
    """
    POST /api/sweep/: units'in her girdisi bir grid noktası; hepsi aynı e ve shift'i paylaşır.
    Boş units listesi boş bir taramadır.
    """

    k = serializers.IntegerField(min_value=2)
    units = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(), min_length=1),
        allow_empty=True,
    )
    parallelism = serializers.IntegerField(min_value=1, required=False, allow_null=True)

    def validate(self, attrs):
        attrs["grid"] = [self.build_spec(unit, attrs) for unit in attrs["units"]]
        return attrs


class ClassificationResultSerializer(serializers.BaseSerializer):
    """ClassificationResult'ın salt okunur gösterimi."""

    def to_representation(self, instance):
        return instance.to_json()


class SweepTableSerializer(serializers.BaseSerializer):
    def to_representation(self, instance):
        return instance.to_json()

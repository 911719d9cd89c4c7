from rest_framework import serializers

from classifier.serializers import ASpecFieldsMixin
from .models import Statement, Suite


class VerifyRequestSerializer(ASpecFieldsMixin):
    """
    POST /api/verify/ ve `manage.py verify`.

    statement ve suite'ten tam olarak biri. unit isteğe bağlıdır: a gerektirip
    a almayan kontroller O_2 üzerinde a = π kullanır.
    """

    statement = serializers.ChoiceField(choices=Statement.choices, required=False)
    suite = serializers.ChoiceField(choices=Suite.choices, required=False)
    r = serializers.IntegerField(min_value=2, required=False)
    unit = serializers.ListField(child=serializers.IntegerField(), min_length=1, required=False)
    n_max = serializers.IntegerField(min_value=1, required=False)
    drop_block = serializers.IntegerField(min_value=0, required=False, allow_null=True)
    parallelism = serializers.IntegerField(min_value=1, required=False, allow_null=True)

    def validate(self, attrs):
        if bool(attrs.get("statement")) == bool(attrs.get("suite")):
            raise serializers.ValidationError("give exactly one of statement or suite")
        attrs["a"] = self.build_spec(attrs["unit"], attrs) if attrs.get("unit") else None
        attrs["params"] = {
            "p": attrs["p"],
            "r": attrs.get("r"),
            "a": attrs["a"],
            "n_max": attrs.get("n_max"),
            "drop_block": attrs.get("drop_block"),
            "precision": attrs.get("precision"),
        }
        return attrs


class CheckReportSerializer(serializers.BaseSerializer):
    """Salt okunur çıktı; ms'i düşürmek için context'e timing=False verin."""

    def to_representation(self, instance):
        return instance.to_json(timing=self.context.get("timing", True))

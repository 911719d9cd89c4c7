from rest_framework import permissions, status
from rest_framework.response import Response
from rest_framework.views import APIView

from .serializers import (
    ClassificationResultSerializer,
    ClassifyRequestSerializer,
    SweepRequestSerializer,
    SweepTableSerializer,
)
from .services import ClassifierService


class ClassifyView(APIView):
    """
    POST /api/classify/
    {p, k, e, unit, shift, precision?} → ClassificationResult.

    DomainError / PrecisionError istemciye proje exception handler'ı üzerinden
    ulaşır (hata sınıfı adıyla 422).
    """

    permission_classes = [permissions.AllowAny]

    def post(self, request):
        serializer = ClassifyRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

        data = serializer.validated_data
        result = ClassifierService.classify(data["p"], data["k"], data["a"], data.get("precision"))
        return Response(ClassificationResultSerializer(result).data)


class SweepView(APIView):
    """
    POST /api/sweep/
    Nokta başına hatalar tablonun satırlarıdır; asla hata cevabı olmaz.
    """

    permission_classes = [permissions.AllowAny]

    def post(self, request):
        serializer = SweepRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

        data = serializer.validated_data
        table = ClassifierService.sweep(
            data["p"], data["k"], data["grid"], data.get("precision"), data.get("parallelism")
        )
        return Response(SweepTableSerializer(table).data)

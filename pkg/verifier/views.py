from rest_framework import permissions, status
from rest_framework.response import Response
from rest_framework.views import APIView

from .serializers import CheckReportSerializer, VerifyRequestSerializer
from .services import VerifierService


class VerifyView(APIView):
    """
    POST /api/verify/
    {statement | suite, p, r?, e?, unit?, shift?, precision?, drop_block?}
    → suite sırasıyla CheckReport listesi.

    Başarısız kontrol "pass": false ile 200 döner; yalnızca tek bir statement
    çalışırken fırlatılan hatalar 4xx/5xx'e eşlenir.
    """

    permission_classes = [permissions.AllowAny]

    def post(self, request):
        serializer = VerifyRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

        data = serializer.validated_data
        if data.get("statement"):
            reports = [VerifierService.run_statement(data["statement"], data["params"])]
        else:
            reports = VerifierService.run_suite(data["suite"], data["params"], data.get("parallelism"))
        return Response(CheckReportSerializer(reports, many=True).data)

"""
URL configuration for the crysred project.

Yalnızca durumsuz JSON endpoint'leri:
    POST /api/classify/   classifier.views.ClassifyView
    POST /api/sweep/      classifier.views.SweepView
    POST /api/verify/     verifier.views.VerifyView
"""

from django.urls import include, path

urlpatterns = [
    path("api/", include("classifier.urls", namespace="classifier")),
    path("api/", include("verifier.urls", namespace="verifier")),
]

from django.urls import path

from .views import ClassifyView, SweepView

app_name = "classifier"

urlpatterns = [
    path("classify/", ClassifyView.as_view(), name="classify"),
    path("sweep/", SweepView.as_view(), name="sweep"),
]

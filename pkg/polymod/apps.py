from django.apps import AppConfig


class PolymodConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "polymod"
    verbose_name = "Polynomial modules"

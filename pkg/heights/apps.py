from django.apps import AppConfig


class HeightsConfig(AppConfig):
    """
    Configuration for the heights app.
    """

    name = "heights"
    verbose_name = "Green functions and canonical heights"

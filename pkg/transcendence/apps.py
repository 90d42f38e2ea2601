"""
Configuration for the transcendence app.
"""

from django.apps import AppConfig


class TranscendenceConfig(AppConfig):
    """
    Configuration for the transcendence app.

    Attributes:
        name (str): The name of the app.
        verbose_name (str): Human readable name used in reports.
    """

    name = "transcendence"
    verbose_name = "Transcendence and height-algebraicity decisions"

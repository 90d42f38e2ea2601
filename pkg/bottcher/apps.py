"""
Configuration for the bottcher app.
"""

from django.apps import AppConfig


class BottcherConfig(AppConfig):
    """
    Configuration for the bottcher app.

    Attributes:
        name (str): The name of the app.
        verbose_name (str): Human readable name used in reports.
    """

    name = "bottcher"
    verbose_name = "Böttcher coordinates"

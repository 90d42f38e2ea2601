"""
Configuration for the plane app.
"""

from django.apps import AppConfig


class PlaneConfig(AppConfig):
    """
    Configuration for the plane app.

    Attributes:
        name (str): The name of the app.
        verbose_name (str): Human readable name used in reports.
    """

    name = "plane"
    verbose_name = "Plane polynomial endomorphisms"

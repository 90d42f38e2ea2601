"""
Configuration for the pairs app.

This app contains dynamical pairs and the invariant-curve certificates that
relate them.
"""

from django.apps import AppConfig


class PairsConfig(AppConfig):
    name = "pairs"
    verbose_name = "Dynamical pairs and invariant curves"

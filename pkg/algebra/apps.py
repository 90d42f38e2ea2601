"""
Configuration for the algebra app.

This app holds the exact base arithmetic every other app computes with:
rationals and quadratic fields, quotient rings, polynomials, places with
their normalized absolute values, truncated Laurent series and certified
interval evaluation.
"""

from django.apps import AppConfig


class AlgebraConfig(AppConfig):
    """
    Configuration for the algebra app.

    Attributes:
        name (str): The name of the app.
        verbose_name (str): Human readable name used in reports.
    """

    name = "algebra"
    verbose_name = "Exact base arithmetic"

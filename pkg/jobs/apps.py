"""
Configuration for the jobs app.

This app turns JSON job configurations into reports. It owns the
`dynamics` management command, which is the only entry point of the project.
"""

from django.apps import AppConfig


class JobsConfig(AppConfig):
    """
    Configuration for the jobs app.

    Attributes:
        name (str): The name of the app.
        verbose_name (str): Human readable name used in reports.
    """

    name = "jobs"
    verbose_name = "Batch jobs and the dynamics command"

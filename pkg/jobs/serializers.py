"""
Serializers for job reports.
"""

from rest_framework import serializers


class ItemReportSerializer(serializers.Serializer):
    key = serializers.CharField()
    status = serializers.CharField()
    result = serializers.JSONField(allow_null=True)
    error = serializers.DictField(allow_null=True)
    warnings = serializers.ListField(child=serializers.CharField())


class ReportSerializer(serializers.Serializer):
    """
    {"command", "config", "items", "warnings", "exit_code", "version"} and,
    outside comparison mode, "timing".
    """

    command = serializers.CharField()
    config = serializers.DictField()
    items = ItemReportSerializer(many=True)
    warnings = serializers.ListField(child=serializers.CharField())
    exit_code = serializers.IntegerField()
    timing = serializers.DictField(required=False)
    version = serializers.CharField()

    def to_representation(self, report):
        data = super().to_representation(report)
        if report.timing is None:
            data.pop("timing")
        return data

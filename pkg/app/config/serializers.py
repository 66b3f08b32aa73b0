"""
Serializers for validation reports.
"""

from rest_framework import serializers


class CriterionSerializer(serializers.Serializer):
    """Serializer for one validation criterion."""
    label = serializers.CharField()
    status = serializers.CharField()
    error = serializers.CharField(allow_null=True)
    path = serializers.ListField(child=serializers.IntegerField())


class ValidationReportSerializer(serializers.Serializer):
    """Serializer for a validation report."""
    configuration = serializers.CharField()
    ok = serializers.BooleanField()
    criteria = CriterionSerializer(many=True)

"""
Serializers for command line results.

Terms are rendered in concrete syntax; serializers that print terms
expect the environment as `env` in their context.
"""

from rest_framework import serializers

from frontend.printer import print_term


class RepairResultSerializer(serializers.Serializer):
    """Serializer for one repaired definition."""
    name = serializers.CharField()
    new_name = serializers.CharField()
    type = serializers.SerializerMethodField()
    body = serializers.SerializerMethodField()

    def get_type(self, result):
        return print_term(result.type, env=self.context.get('env'))

    def get_body(self, result):
        return print_term(result.body, env=self.context.get('env'))


class LiftStatsSerializer(serializers.Serializer):
    hits = serializers.IntegerField()
    misses = serializers.IntegerField()
    guard_hits = serializers.IntegerField()


class RepairRunSerializer(serializers.Serializer):
    """Serializer for a repair command and the files it wrote."""
    file = serializers.CharField()
    configuration = serializers.CharField()
    repaired = RepairResultSerializer(many=True)
    output = serializers.CharField()
    scripts = serializers.CharField(allow_null=True)
    stats = LiftStatsSerializer()


class CheckSerializer(serializers.Serializer):
    """Serializer for a checked file."""
    file = serializers.CharField()
    declarations = serializers.IntegerField()
    configurations = serializers.ListField(child=serializers.CharField())
    scripts = serializers.DictField(child=serializers.CharField())

"""
Serializers for constructor mappings.
"""

from rest_framework import serializers


class ConstructorMappingSerializer(serializers.Serializer):
    """Serializer for a ranked constructor mapping."""
    index = serializers.SerializerMethodField()
    permutation = serializers.ListField(child=serializers.IntegerField())
    names = serializers.SerializerMethodField()
    same_names = serializers.SerializerMethodField()
    distance = serializers.SerializerMethodField()

    def get_index(self, mapping):
        return self.context.get('ranks', {}).get(mapping.permutation)

    def get_names(self, mapping):
        return [f'{a} -> {b}' for a, b in mapping.names]

    def get_same_names(self, mapping):
        return mapping.score[0]

    def get_distance(self, mapping):
        return mapping.score[1]

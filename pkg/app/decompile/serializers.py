"""
Serializers for decompiled scripts.
"""

from rest_framework import serializers


class ScriptSerializer(serializers.Serializer):
    """Serializer for the script suggested for one definition."""
    name = serializers.CharField()
    goal = serializers.CharField()
    script = serializers.CharField()
    tactics = serializers.IntegerField()
    replays = serializers.BooleanField()

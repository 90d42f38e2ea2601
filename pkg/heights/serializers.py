"""
Serializers for Green values, canonical heights and orbit verdicts.
"""

from rest_framework import serializers

from algebra.serializers import CertifiedRealField, PlaceField


class GreenValueSerializer(serializers.Serializer):
    place = PlaceField()
    status = serializers.CharField()
    exact = serializers.SerializerMethodField()
    certified = CertifiedRealField()
    shift = serializers.IntegerField(allow_null=True)
    steps = serializers.IntegerField()
    obstruction = serializers.CharField(allow_blank=True)

    def get_exact(self, value):
        return str(value.exact) if value.exact is not None else None


class HeightValueSerializer(serializers.Serializer):
    """
    {"finite": {"2": "4"}, "arch": {"mid", "rad"}, "normalized": true,
    "undecided_places": [], "rendered": "4*log(2)"}
    """

    finite = serializers.SerializerMethodField()
    arch = CertifiedRealField()
    normalized = serializers.BooleanField()
    undecided_places = serializers.ListField(child=PlaceField())
    rendered = serializers.SerializerMethodField()

    def get_finite(self, height):
        return {str(p): str(c) for p, c in sorted(height.finite.items())}

    def get_rendered(self, height):
        return height.render()


class PreperiodicitySerializer(serializers.Serializer):
    status = serializers.CharField()
    tail = serializers.IntegerField(allow_null=True)
    period = serializers.IntegerField(allow_null=True)
    witness = PlaceField(allow_null=True)


class TdMembershipSerializer(serializers.Serializer):
    status = serializers.CharField()
    witness = PlaceField(allow_null=True)
    greens = GreenValueSerializer(many=True)


class LiminfRowSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    ratio = CertifiedRealField()
    skipped = serializers.BooleanField()

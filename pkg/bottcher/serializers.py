"""
Serializers for Böttcher series, escape radii, values and type verdicts.
"""

from rest_framework import serializers

from algebra.serializers import CertifiedRealField, LaurentTailSerializer, PlaceField


class BottcherSeriesSerializer(serializers.Serializer):
    """
    The series in the {"top_exp", "coeffs", "valid_order", "ring"} layout,
    plus the chosen b_1 and its minimal polynomial when it was adjoined.
    """

    system = serializers.SerializerMethodField()
    b1 = serializers.SerializerMethodField()
    modulus = serializers.SerializerMethodField()
    series = serializers.SerializerMethodField()
    verified = serializers.SerializerMethodField()

    def get_system(self, result):
        return result.system.serialize()

    def get_b1(self, result):
        return str(result.b1)

    def get_modulus(self, result):
        return result.root.modulus.render("t") if result.root.is_adjoined else None

    def get_series(self, result):
        return LaurentTailSerializer(result.series, context={"ring": result.ring}).data

    def get_verified(self, result):
        return result.verify()


class EscapeRadiusSerializer(serializers.Serializer):
    place = PlaceField()
    log_bound = serializers.SerializerMethodField()
    bound = CertifiedRealField()

    def get_log_bound(self, escape):
        return str(escape.log_bound) if escape.log_bound is not None else None


class BottcherValueSerializer(serializers.Serializer):
    place = PlaceField()
    shift = serializers.IntegerField()
    value = serializers.SerializerMethodField()
    log_modulus = CertifiedRealField()
    exact = serializers.SerializerMethodField()

    def get_value(self, result):
        return result.value.as_dict() if result.value is not None else None

    def get_exact(self, result):
        return str(result.exact) if result.exact is not None else None


class PolynomialTypeSerializer(serializers.Serializer):
    kind = serializers.CharField()
    model = serializers.CharField()
    sign = serializers.IntegerField()
    center = serializers.SerializerMethodField()
    scaling = serializers.SerializerMethodField()
    identity_verified = serializers.BooleanField()

    def get_center(self, result):
        return str(result.center) if result.center is not None else None

    def get_scaling(self, result):
        return str(result.scaling) if result.scaling is not None else None

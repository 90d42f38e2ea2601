"""
Serializers for transcendence verdicts, height-algebraicity verdicts and
height relations.

Verdicts render as {"status": ..., "blocks": [{"indices": [...],
"vector": [...], "sum": "0"}], ...}.
"""

from rest_framework import serializers

from algebra.serializers import CertifiedRealField, PlaceField
from heights.serializers import TdMembershipSerializer


class BlockReportSerializer(serializers.Serializer):
    indices = serializers.ListField(child=serializers.IntegerField())
    vector = serializers.ListField(child=serializers.IntegerField())
    sum = serializers.SerializerMethodField()

    def get_sum(self, report):
        return str(report.sum)


class BottcherProductSerializer(serializers.Serializer):
    place = PlaceField()
    modulus = CertifiedRealField()
    shift = serializers.IntegerField()
    power = serializers.SerializerMethodField()
    root_of_unity_order = serializers.SerializerMethodField()

    def get_power(self, product):
        return product.power.as_dict() if product.power is not None else None

    def get_root_of_unity_order(self, product):
        return product.root_of_unity_order()


class TranscendenceVerdictSerializer(serializers.Serializer):
    status = serializers.CharField()
    blocks = BlockReportSerializer(many=True)
    product = BottcherProductSerializer(allow_null=True)
    bound_limited = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    criterion = serializers.CharField()


class HeightAlgebraicitySerializer(serializers.Serializer):
    status = serializers.CharField()
    memberships = TdMembershipSerializer(many=True)
    blocks = BlockReportSerializer(many=True)
    prime_exponents = serializers.SerializerMethodField()
    t_part = CertifiedRealField(allow_null=True)
    blockers = serializers.ListField()

    def get_prime_exponents(self, verdict):
        return {str(p): str(e) for p, e in verdict.prime_exponents.items()}


class LinearRelationsSerializer(serializers.Serializer):
    status = serializers.CharField()
    relations = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    memberships = TdMembershipSerializer(many=True)
    complete = serializers.BooleanField()
    blockers = serializers.ListField()


class RootOfUnitySerializer(serializers.Serializer):
    is_root = serializers.BooleanField()
    order = serializers.IntegerField(allow_null=True)

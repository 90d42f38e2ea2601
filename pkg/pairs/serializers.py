"""
Serializers for equivalence verdicts, semiconjugacies, orbit structures and
geometric data.
"""

from rest_framework import serializers

from algebra.serializers import CertifiedRealField, PlaceField

from .equivalence import ratio


class CertificateSerializer(serializers.Serializer):
    """
    {"curve": [[i, j, "c"], ...], "cofactor": [...], "bidegree": [dx, dy],
    "ratio": "1/2", "orbit_checked": 160, "primes": [...]}
    """

    curve = serializers.SerializerMethodField()
    cofactor = serializers.SerializerMethodField()
    rendered = serializers.SerializerMethodField()
    bidegree = serializers.ListField(child=serializers.IntegerField())
    ratio = serializers.SerializerMethodField()
    orbit_checked = serializers.IntegerField()
    primes = serializers.ListField(child=serializers.IntegerField())

    def get_curve(self, certificate):
        return certificate.curve.serialize()

    def get_cofactor(self, certificate):
        return certificate.cofactor.serialize()

    def get_rendered(self, certificate):
        return certificate.curve.render()

    def get_ratio(self, certificate):
        return str(ratio(certificate))


class EquivalenceResultSerializer(serializers.Serializer):
    status = serializers.CharField()
    certificate = CertificateSerializer(allow_null=True)
    reason = serializers.CharField(allow_blank=True)
    place = PlaceField(allow_null=True)
    height_ratio = CertifiedRealField(allow_null=True)
    bidegree_bound = serializers.IntegerField()
    orbit_len = serializers.IntegerField()
    via_conjugation = serializers.BooleanField()


class SemiconjugacySerializer(serializers.Serializer):
    """
    {"k": 1, "pi": ["1", "1"], "rendered": "z + (1)"}
    """

    k = serializers.IntegerField()
    pi = serializers.SerializerMethodField()
    rendered = serializers.SerializerMethodField()

    def get_pi(self, result):
        return [str(c) for c in result.pi.coeffs]

    def get_rendered(self, result):
        return result.pi.render("z")


class OrbitStructureSerializer(serializers.Serializer):
    tail = serializers.IntegerField()
    period = serializers.IntegerField()
    multidegree_bound = serializers.IntegerField()
    generators = serializers.SerializerMethodField()

    def get_generators(self, structure):
        return [[g.serialize() for g in polys] for polys in structure.generators]


class GeometricDataSerializer(serializers.Serializer):
    blocks = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    vectors = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    bound_limited = serializers.SerializerMethodField()
    results = serializers.SerializerMethodField()

    def get_bound_limited(self, data):
        return [list(key) for key in data.bound_limited]

    def get_results(self, data):
        return [
            {"pair": [s, t], **EquivalenceResultSerializer(result).data}
            for (s, t), result in sorted(data.results.items())
        ]

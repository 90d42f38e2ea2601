"""
Serializers for boundary dynamics, germs, curve censuses and homogeneity.

Boundary points render as {"chart": "t" | "s", "value": "...", "modulus":
"t^2 + 1" | null, "degree": 2}; a value over K[t]/(m) is written as a
polynomial in the root t of m.
"""

from rest_framework import serializers


def _enclosure(box):
    (re_lo, re_hi), (im_lo, im_hi) = box
    return {"re": [str(re_lo), str(re_hi)], "im": [str(im_lo), str(im_hi)]}


def _polynomial(poly):
    return poly.serialize() if poly is not None else None


class BoundaryPointSerializer(serializers.Serializer):
    chart = serializers.SerializerMethodField()
    value = serializers.SerializerMethodField()
    modulus = serializers.SerializerMethodField()
    degree = serializers.IntegerField()

    def get_chart(self, point):
        return "s" if point.is_infinity else "t"

    def get_value(self, point):
        return str(point.coordinate)

    def get_modulus(self, point):
        return point.modulus.render("t") if point.modulus is not None else None


class BoundaryPeriodicPointSerializer(serializers.Serializer):
    point = BoundaryPointSerializer()
    period = serializers.IntegerField()
    multiplier = serializers.SerializerMethodField()
    superattracting = serializers.BooleanField()
    enclosures = serializers.SerializerMethodField()

    def get_multiplier(self, record):
        return str(record.multiplier)

    def get_enclosures(self, record):
        return [_enclosure(box) for box in record.enclosures]


class FixedPointCountSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    count = serializers.IntegerField()
    expected = serializers.IntegerField()
    ratio = serializers.SerializerMethodField()

    def get_ratio(self, row):
        return str(row.ratio)


class NSVerdictSerializer(serializers.Serializer):
    status = serializers.CharField()
    n_max = serializers.IntegerField()
    witness = BoundaryPointSerializer(allow_null=True)
    period = serializers.IntegerField(allow_null=True)
    cycle = BoundaryPointSerializer(many=True)


class NPVerdictSerializer(serializers.Serializer):
    status = serializers.CharField()
    exceptional = BoundaryPointSerializer(many=True)
    size = serializers.IntegerField()


class GermSeriesSerializer(serializers.Serializer):
    base = BoundaryPeriodicPointSerializer()
    order = serializers.IntegerField()
    coefficients = serializers.SerializerMethodField()
    linear = serializers.SerializerMethodField()

    def get_coefficients(self, germ):
        return [str(c) for c in germ.coefficients]

    def get_linear(self, germ):
        return germ.is_linear()


class AlgebraicityVerdictSerializer(serializers.Serializer):
    status = serializers.CharField()
    curve = serializers.SerializerMethodField()
    cofactor = serializers.SerializerMethodField()
    period = serializers.IntegerField()
    e_max = serializers.IntegerField()
    jet_order = serializers.IntegerField()
    branch_order = serializers.IntegerField()
    transcendental = serializers.BooleanField()

    def get_curve(self, verdict):
        return _polynomial(verdict.curve)

    def get_cofactor(self, verdict):
        return _polynomial(verdict.cofactor)


class FoundCurveSerializer(serializers.Serializer):
    curve = serializers.SerializerMethodField()
    rendered = serializers.SerializerMethodField()
    period = serializers.IntegerField()
    base = BoundaryPeriodicPointSerializer()

    def get_curve(self, found):
        return found.curve.serialize()

    def get_rendered(self, found):
        return found.curve.render()


class PeriodicCurveReportSerializer(serializers.Serializer):
    curves = FoundCurveSerializer(many=True)
    unmatched = BoundaryPeriodicPointSerializer(many=True)
    excluded = BoundaryPeriodicPointSerializer(many=True)
    transcendental = serializers.BooleanField()
    n_max = serializers.IntegerField()
    e_max = serializers.IntegerField()
    jet_order = serializers.IntegerField()
    limitation = serializers.CharField()


class HomogeneityVerdictSerializer(serializers.Serializer):
    status = serializers.CharField()
    origin = serializers.SerializerMethodField()
    translated = serializers.SerializerMethodField()
    candidates = serializers.SerializerMethodField()

    def get_origin(self, verdict):
        return [str(c) for c in verdict.origin] if verdict.origin is not None else None

    def get_translated(self, verdict):
        g = verdict.translated
        return {"f1": g.f1.serialize(), "f2": g.f2.serialize()} if g is not None else None

    def get_candidates(self, verdict):
        return [[str(c) for c in origin] for origin in verdict.candidates]

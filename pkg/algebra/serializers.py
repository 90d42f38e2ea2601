"""
Serializers for exact scalars, places, series and certified enclosures.

Exact scalars always render as strings ("p/q", "a+b*sqrt(D)"); certified
reals render as {"mid": ..., "rad": ...}.
"""

from rest_framework import serializers

from .exceptions import DynamicsError
from .fields import QQ_FIELD, FieldElement, FieldSpec
from .places import Place


class ExactScalarField(serializers.Field):
    """
    A FieldElement (or quotient-ring element) rendered as its exact string.

    The field to parse into is taken from the serializer context key "field".
    """

    def to_representation(self, value):
        return str(value)

    def to_internal_value(self, data):
        field = self.context.get("field", QQ_FIELD)
        try:
            return FieldElement.parse(str(data), field)
        except DynamicsError as exc:
            raise serializers.ValidationError(exc.message) from exc


class FieldSpecField(serializers.Field):
    def to_representation(self, value):
        return str(value)

    def to_internal_value(self, data):
        try:
            return FieldSpec.parse(str(data))
        except DynamicsError as exc:
            raise serializers.ValidationError(exc.message) from exc


class PlaceField(serializers.Field):
    def to_representation(self, value):
        return str(value)

    def to_internal_value(self, data):
        field = self.context.get("field", QQ_FIELD)
        try:
            return Place.parse(str(data), field)
        except DynamicsError as exc:
            raise serializers.ValidationError(exc.message) from exc


class CertifiedRealField(serializers.Field):
    """
    Read-only rendering of a CertifiedReal (or None).
    """

    def __init__(self, **kwargs):
        kwargs.setdefault("read_only", True)
        super().__init__(**kwargs)

    def to_representation(self, value):
        return value.as_dict() if value is not None else None


class LaurentTailSerializer(serializers.Serializer):
    """
    {"top_exp", "coeffs", "valid_order", "valid_to", "ring"} for a LaurentTail.
    """

    top_exp = serializers.IntegerField(source="top")
    coeffs = serializers.SerializerMethodField()
    valid_order = serializers.SerializerMethodField()
    valid_to = serializers.SerializerMethodField()
    ring = serializers.SerializerMethodField()

    def get_coeffs(self, series):
        bottom = series.valid_to if not series.is_exact else min(series.low, series.top)
        return [str(c) for c in series.coefficients_down_to(bottom)]

    def get_valid_order(self, series):
        if series.is_exact:
            return None
        return series.top - series.valid_to + 1

    def get_valid_to(self, series):
        return series.valid_to

    def get_ring(self, series):
        ring = self.context.get("ring")
        if ring is not None:
            return str(ring)
        zero = series.zero
        return str(getattr(zero, "ring", None) or zero.field)


class ProductFormulaSerializer(serializers.Serializer):
    """
    Finite and archimedean parts of sum_v n_v log|x|_v.
    """

    finite = serializers.SerializerMethodField()
    arch = CertifiedRealField()

    def get_finite(self, terms):
        return {str(p): str(c) for p, c in sorted(terms["finite"].items())}

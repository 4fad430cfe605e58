from django.conf import settings
from rest_framework import serializers
from sympy import isprime, totient

from traces.models import GroupRingElement

from .exceptions import ConfigError
from .models import SUITES, SuiteConfig

INT_WIDTH_LIMIT = 2 ** 62


def working_width(l, precision, gamma_exponent, level):
    """Largest intermediate integer of a product before reduction"""
    return l ** (2 * precision) * l ** gamma_exponent * int(totient(l ** level))


class SuiteConfigSerializer(serializers.Serializer):
    """Validates one verify run; defaults come from settings.WORKBENCH"""

    l = serializers.IntegerField(required=False, min_value=3)
    precision = serializers.IntegerField(required=False, min_value=3)
    gamma_exponent = serializers.IntegerField(required=False, min_value=1)
    level = serializers.IntegerField(required=False, min_value=1, allow_null=True, default=None)
    group = serializers.CharField(required=False, default='heisenberg')
    presentation = serializers.CharField(required=False, allow_null=True, default=None)
    seed = serializers.IntegerField(required=False, min_value=0)
    suites = serializers.ListField(
        child=serializers.ChoiceField(choices=SUITES + ('all',)),
        required=False,
        default=list,
    )
    format = serializers.ChoiceField(choices=('text', 'json'), default='json')
    timings = serializers.BooleanField(default=False)
    workers = serializers.IntegerField(required=False, min_value=1)
    units = serializers.IntegerField(required=False, min_value=0)
    betas = serializers.IntegerField(required=False, min_value=0)

    def validate_l(self, value):
        if not isprime(value) or value == 2:
            raise serializers.ValidationError('l must be an odd prime')
        return value

    def validate(self, attrs):
        defaults = settings.WORKBENCH
        attrs.setdefault('l', defaults['PRIME'])
        attrs.setdefault('precision', defaults['PRECISION'])
        attrs.setdefault('gamma_exponent', defaults['GAMMA_EXPONENT'])
        attrs.setdefault('seed', defaults['SEED'])
        attrs.setdefault('workers', defaults['WORKERS'])
        attrs.setdefault('units', defaults['SAMPLES']['units'])
        attrs.setdefault('betas', defaults['SAMPLES']['beta'])

        l = attrs['l']
        # the group may raise the level further; the runner checks again
        level = attrs['level'] or attrs['gamma_exponent']
        if working_width(l, attrs['precision'], attrs['gamma_exponent'], level) >= INT_WIDTH_LIMIT:
            raise serializers.ValidationError({'precision': 'l^(2N)·l^M·φ(l^m) does not fit 64-bit arithmetic'})

        suites = attrs['suites']
        if 'all' in suites:
            suites = list(SUITES)
        attrs['suites'] = tuple(s for s in SUITES if s in suites)
        return attrs

    def create(self, validated_data):
        return SuiteConfig(**validated_data)

    @classmethod
    def build(cls, data):
        """SuiteConfig from raw options, ConfigError on rejection"""
        serializer = cls(data=data)
        if not serializer.is_valid():
            raise ConfigError('invalid suite configuration', **serializer.errors)
        return serializer.save()


class UnitSerializer(serializers.Serializer):
    """{"prec": N, "gamma_order": L, "coeffs": {"<g>": [c_0, ..., c_(L-1)]}}"""

    prec = serializers.IntegerField(min_value=1)
    gamma_order = serializers.IntegerField(min_value=1)
    coeffs = serializers.DictField(child=serializers.ListField(child=serializers.IntegerField()))

    def validate(self, attrs):
        model = self.context['model']
        if attrs['gamma_order'] != model.gamma_order:
            raise serializers.ValidationError({'gamma_order': f'expected {model.gamma_order}'})
        for label, row in attrs['coeffs'].items():
            if not label.isdigit() or int(label) >= model.order:
                raise serializers.ValidationError({'coeffs': f'unknown element index {label}'})
            if len(row) != model.gamma_order:
                raise serializers.ValidationError({'coeffs': f'row of {label} has length {len(row)}'})
        return attrs

    def create(self, validated_data):
        return GroupRingElement.from_dict(self.context['model'], validated_data)


class CheckRecordSerializer(serializers.Serializer):
    suite = serializers.CharField()
    key = serializers.CharField()
    group = serializers.CharField()
    status = serializers.ChoiceField(choices=('pass', 'fail', 'indeterminate'))
    precision_used = serializers.IntegerField(allow_null=True)
    details = serializers.JSONField()
    error = serializers.JSONField(allow_null=True)
    seconds = serializers.FloatField(required=False)

    def to_representation(self, instance):
        data = super().to_representation(instance)
        if not self.context.get('timings'):
            data.pop('seconds', None)
        if data.get('error') is None:
            data.pop('error', None)
        return data

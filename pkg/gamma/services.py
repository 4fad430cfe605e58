import logging

from django.conf import settings

from .models import GammaAlgebra

logger = logging.getLogger(__name__)


class GammaService:

    @staticmethod
    def algebra(l=None, gamma_exponent=None, level=None, prec=None):
        config = settings.WORKBENCH
        gamma_exponent = config['GAMMA_EXPONENT'] if gamma_exponent is None else gamma_exponent
        return GammaAlgebra(
            l=config['PRIME'] if l is None else l,
            gamma_exponent=gamma_exponent,
            level=gamma_exponent if level is None else level,
            prec=config['PRECISION'] if prec is None else prec,
        )

    @staticmethod
    def psi(x):
        return x.psi()

    @staticmethod
    def plog(x, max_power=None):
        if max_power is None:
            max_power = settings.WORKBENCH['PLOG_MAX_POWER']
        return x.plog(max_power)

    @staticmethod
    def twist_sharp(sigma, x):
        """Apply ρ_σ^♯ where ρ_σ is the character γ ↦ ζ_{l^M}^{σγ} of Γ̄"""
        return x.twist_sharp(sigma)

    @staticmethod
    def log_one_plus(x):
        return x.log_one_plus()


psi = GammaService.psi
plog = GammaService.plog
twist_sharp = GammaService.twist_sharp
log_one_plus = GammaService.log_one_plus

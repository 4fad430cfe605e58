from django.apps import AppConfig


class CongruencesConfig(AppConfig):
    name = 'congruences'
    verbose_name = 'Ideals, Tate cohomology and congruence checks'

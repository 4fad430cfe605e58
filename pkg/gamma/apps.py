from django.apps import AppConfig


class GammaConfig(AppConfig):
    name = 'gamma'
    verbose_name = 'Γ-side group algebra'

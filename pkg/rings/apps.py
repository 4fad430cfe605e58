from django.apps import AppConfig


class RingsConfig(AppConfig):
    name = 'rings'
    verbose_name = 'Truncated l-adic and cyclotomic rings'

from django.apps import AppConfig


class RestrictionConfig(AppConfig):
    name = 'restriction'

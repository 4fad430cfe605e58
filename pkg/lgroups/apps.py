from django.apps import AppConfig


class LgroupsConfig(AppConfig):
    name = 'lgroups'
    verbose_name = 'Finite l-groups'

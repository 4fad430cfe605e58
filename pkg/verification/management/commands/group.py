from django.core.management.base import BaseCommand

from lgroups.services import GroupService
from verification.commands import add_group_arguments, dump, gamma_exponent, load_group
from verification.rendering import group_text


class Command(BaseCommand):
    help = 'Describe a catalog group or presentation file and list its abelian index-l markings'

    def add_arguments(self, parser):
        parser.add_argument('action', choices=('describe',))
        add_group_arguments(parser)
        parser.add_argument('--format', choices=('text', 'json'), default='text')

    def handle(self, *args, **options):
        group, _ = load_group(options)
        markings = GroupService.find_abelian_index_l(group, gamma_exponent(options))
        description = GroupService.describe(group, markings)
        if options['format'] == 'json':
            self.stdout.write(dump(description))
        else:
            self.stdout.write(group_text(description), ending='')

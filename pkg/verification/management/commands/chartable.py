from django.core.management.base import BaseCommand

from characters.services import CharacterService
from verification.commands import add_group_arguments, load_marking
from verification.rendering import character_table_text


class Command(BaseCommand):
    help = 'Print the character table of G, or of G′ with --gprime'

    def add_arguments(self, parser):
        add_group_arguments(parser)
        parser.add_argument('--gprime', action='store_true')
        parser.add_argument('--level', type=int)

    def handle(self, *args, **options):
        _, marking = load_marking(options)
        level = CharacterService.table_level(marking, options.get('level') or 1)
        table, sub_table = CharacterService.tables(marking, level)
        if options['gprime']:
            title = f'{marking.group.name} G′'
            table = sub_table
        else:
            title = marking.group.name
        self.stdout.write(character_table_text(table, title), ending='')

import sys

from django.core.management.base import BaseCommand, CommandError

from characters.services import CharacterService
from restriction.services import check_hd_square
from traces.models import ModeledGroup
from verification.commands import add_group_arguments, add_unit_arguments, describe_error, dump, load_marking, load_unit
from verification.models import PASS
from workbench.exceptions import WorkbenchError


class Command(BaseCommand):
    help = 'Check that restriction commutes with the logarithm for one unit'

    def add_arguments(self, parser):
        parser.add_argument('action', choices=('check',))
        add_group_arguments(parser, positional=False)
        add_unit_arguments(parser)
        parser.add_argument('--level', choices=('hom', 'trace', 'both'), default='both')

    def handle(self, *args, **options):
        _, marking = load_marking(options)
        level = CharacterService.table_level(marking)
        model = ModeledGroup.from_marking(marking, level)
        u = load_unit(model, options)
        try:
            report = check_hd_square(u, marking, ModeledGroup.subgroup_of(marking, level), sigmas=(1,))
        except WorkbenchError as exc:
            raise CommandError(describe_error(exc)) from exc
        if options['level'] != 'both':
            report = report[options['level']]
        self.stdout.write(dump(report))
        if report['status'] != PASS:
            sys.exit(1)

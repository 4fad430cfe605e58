from django.core.management.base import BaseCommand, CommandError

from characters.services import CharacterService
from traces.models import ModeledGroup
from traces.services import all_sigmas, big_l, det_hom, hom_axioms
from verification.commands import add_group_arguments, add_unit_arguments, describe_error, dump, load_marking, load_unit
from workbench.exceptions import WorkbenchError


class Command(BaseCommand):
    help = 'Evaluate Det u with L(Det u), or check the Hom axioms of Det u'

    def add_arguments(self, parser):
        parser.add_argument('action', choices=('eval', 'axioms'))
        add_group_arguments(parser, positional=False)
        add_unit_arguments(parser)
        parser.add_argument('--all-sigmas', action='store_true', help='carry every Galois twist, not only σ = 1')

    def handle(self, *args, **options):
        _, marking = load_marking(options)
        model = ModeledGroup.from_marking(marking, CharacterService.table_level(marking))
        u = load_unit(model, options)
        sigmas = all_sigmas(model) if options['all_sigmas'] else (1,)
        try:
            f, axioms = hom_axioms(det_hom(u, sigmas=sigmas))
            if options['action'] == 'axioms':
                data = axioms
            else:
                data = {'det': f.to_dict(), 'big_l': big_l(f).to_dict()}
        except WorkbenchError as exc:
            raise CommandError(describe_error(exc)) from exc
        self.stdout.write(dump(data))

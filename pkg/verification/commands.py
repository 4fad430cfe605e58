"""Option handling shared by the management commands"""
from pathlib import Path

import numpy as np
import orjson
from django.conf import settings
from django.core.management.base import CommandError

from lgroups.services import GroupService
from rings.models import floor_log
from workbench.exceptions import WorkbenchError

from .serializers import UnitSerializer

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY


def add_group_arguments(parser, positional=True):
    help_text = 'catalog name such as heisenberg or abelian(9,3), or a presentation file'
    if positional:
        parser.add_argument('name', nargs='?', default='heisenberg', help=help_text)
    else:
        parser.add_argument('--group', dest='name', default='heisenberg', help=help_text)
    parser.add_argument('--l', type=int, dest='l', help='the prime l')
    parser.add_argument('--presentation', help='presentation file used instead of a catalog name')
    parser.add_argument('--gamma-exponent', type=int, dest='gamma_exponent', help='M with Γ̄ = Z/l^M')
    parser.add_argument('--gamma-order', type=int, dest='gamma_order', help='l^M, alternative to --gamma-exponent')


def add_unit_arguments(parser):
    parser.add_argument('--unit', help='unit JSON file; a seeded random unit when absent')
    parser.add_argument('--prec', type=int, dest='precision', help='absolute precision N')
    parser.add_argument('--seed', type=int)


def gamma_exponent(options):
    l = options.get('l') or settings.WORKBENCH['PRIME']
    if options.get('gamma_order'):
        order = options['gamma_order']
        exponent = floor_log(order, l)
        if l ** exponent != order:
            raise CommandError(f'--gamma-order must be a power of {l}')
        return exponent
    return options.get('gamma_exponent') or settings.WORKBENCH['GAMMA_EXPONENT']


def load_group(options):
    """(group, preferred marking); a presentation file gives its first abelian index-l marking or None"""
    l = options.get('l') or settings.WORKBENCH['PRIME']
    exponent = gamma_exponent(options)
    try:
        presentation = options.get('presentation')
        if not presentation and Path(options['name']).is_file():
            presentation = options['name']
        if presentation:
            path = Path(presentation)
            group = GroupService.build_group(path.read_text(), name=path.stem)
            markings = GroupService.find_abelian_index_l(group, exponent)
            return group, (markings[0] if markings else None)
        return GroupService.catalog_group(options['name'], l, exponent)
    except WorkbenchError as exc:
        raise CommandError(describe_error(exc)) from exc


def load_marking(options):
    group, marking = load_group(options)
    if marking is None:
        raise CommandError(f'{group.name} has no abelian subgroup of index {group.l}')
    return group, marking


def load_unit(model, options):
    precision = options.get('precision') or settings.WORKBENCH['PRECISION']
    if not options.get('unit'):
        seed = settings.WORKBENCH['SEED'] if options.get('seed') is None else options['seed']
        return model.random_unit(np.random.default_rng(seed), precision)
    serializer = UnitSerializer(data=orjson.loads(Path(options['unit']).read_bytes()), context={'model': model})
    if not serializer.is_valid():
        raise CommandError(f'invalid unit file: {dict(serializer.errors)}')
    return serializer.save()


def describe_error(exc):
    data = exc.as_dict()
    context = ', '.join(f'{k}={v}' for k, v in data.items() if k not in ('error', 'message'))
    return f"{data['error']}: {data['message']}" + (f' ({context})' if context else '')


def dump(data):
    return orjson.dumps(data, option=JSON_OPTIONS).decode()

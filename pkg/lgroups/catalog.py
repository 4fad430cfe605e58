"""
Named test groups, each with a preferred index-l marking.

Entries return presentation text plus the data to mark them: the generator
words spanning G′, the word for a, and pi on the generators as a function
of l^M.
"""
import re
from dataclasses import dataclass

from .exceptions import UnknownName

NAME = re.compile(r'^(?P<name>[a-z_0-9]+)(?:\((?P<args>[^)]*)\))?$')


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    presentation: str
    gprime: tuple
    a: str
    pi: dict


def heisenberg(l):
    return CatalogEntry(
        name='heisenberg',
        presentation=f'gen x order {l}\ngen y order {l}\ngen z order {l}\nrel [x,y] = z\ncentral z',
        gprime=('y', 'z'),
        a='x',
        pi={'x': lambda gamma: gamma // l},
    )


def modular_l3(l):
    return CatalogEntry(
        name='modular_l3',
        presentation=f'gen x order {l * l}\ngen y order {l}\nrel y^-1*x*y = x^{1 + l}',
        gprime=('x',),
        a='y',
        pi={'x': lambda gamma: gamma // l},
    )


def heisenberg_by_cyclic(l):
    """Heisenberg group times Z/l; G′ is the Heisenberg factor, so it is not abelian"""
    return CatalogEntry(
        name='heisenberg_by_cyclic',
        presentation=(
            f'gen w order {l}\ngen x order {l}\ngen y order {l}\ngen z order {l}\n'
            'rel [x,y] = z\ncentral z w'
        ),
        gprime=('x', 'y', 'z'),
        a='w',
        pi={'w': lambda gamma: gamma // l},
    )


def abelian(l, *orders):
    if not orders:
        raise UnknownName('abelian needs at least one cyclic factor')
    names = [f'g{i + 1}' for i in range(len(orders))]
    lines = [f'gen {name} order {order}' for name, order in zip(names, orders)]
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            lines.append(f'rel [{names[i]},{names[j]}] = 1')
    first = orders[0]
    return CatalogEntry(
        name='abelian(' + ','.join(str(o) for o in orders) + ')',
        presentation='\n'.join(lines),
        gprime=(f'{names[0]}^{l}',) + tuple(names[1:]),
        a=names[0],
        pi={names[0]: lambda gamma: gamma // min(first, gamma)},
    )


def elem_abelian(l, k):
    entry = abelian(l, *([l] * k))
    return CatalogEntry(
        name=f'elem_abelian({k})',
        presentation=entry.presentation,
        gprime=entry.gprime,
        a=entry.a,
        pi=entry.pi,
    )


CATALOG = {
    'heisenberg': heisenberg,
    'modular_l3': modular_l3,
    'heisenberg_by_cyclic': heisenberg_by_cyclic,
    'abelian': abelian,
    'elem_abelian': elem_abelian,
}

EXCLUDED = {
    'dihedral': 'the dihedral analog needs l = 2 and is excluded for odd l',
    'dihedral_analog': 'the dihedral analog needs l = 2 and is excluded for odd l',
}


def lookup(name, l):
    match = NAME.match(name.strip().lower())
    if not match:
        raise UnknownName('unparseable catalog name', name=name)
    key = match['name']
    if key in EXCLUDED:
        raise UnknownName(EXCLUDED[key], name=name)
    if key not in CATALOG:
        raise UnknownName('no such catalog group', name=name, known=', '.join(sorted(CATALOG)))
    args = [int(a) for a in (match['args'] or '').split(',') if a.strip()]
    return CATALOG[key](l, *args)

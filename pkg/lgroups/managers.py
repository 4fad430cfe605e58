import logging
import re

import numpy as np
import sympy

from .exceptions import InconsistentPresentation, SizeCap
from .models import LGroup, Presentation
from .words import commutator, parse_word, power

logger = logging.getLogger(__name__)

SENTINEL = -1

GEN_LINE = re.compile(r'^gen\s+(?P<name>\w+)\s+order\s+(?P<order>\d+)$')
SHORT_GEN_LINE = re.compile(r'^(?P<name>\w+)\s*:\s*order\s+(?P<order>\d+)$')
REL_LINE = re.compile(r'^rel\s+(?P<lhs>[^=]+?)(?:\s*=\s*(?P<rhs>.+))?$')
CENTRAL_LINE = re.compile(r'^central\s+(?P<names>[\w\s,]+)$')


class CosetTable:
    """
    Coset enumeration for the trivial subgroup, so cosets are group elements.

    neighbors[c][d] is the coset d·c for letter d. Coincidences are merged
    with a union-find on labels.
    """

    def __init__(self, nletters, relators, max_cosets):
        self.nletters = nletters
        self.relators = relators
        self.max_cosets = max_cosets
        self.labels = []
        self.neighbors = []
        self.start = self.add_coset()

    def find(self, c):
        labels = self.labels
        root = c
        while labels[root] != root:
            root = labels[root]
        while labels[c] != root:
            labels[c], c = root, labels[c]
        return root

    def add_coset(self):
        c = len(self.labels)
        self.labels.append(c)
        self.neighbors.append([SENTINEL] * self.nletters)
        return c

    def unify(self, c1, c2):
        pending = [(c1, c2)]
        while pending:
            c1, c2 = pending.pop()
            c1 = self.find(c1)
            c2 = self.find(c2)
            if c1 == c2:
                continue
            c1, c2 = min(c1, c2), max(c1, c2)
            self.labels[c2] = c1
            for d in range(self.nletters):
                n1 = self.neighbors[c1][d]
                n2 = self.neighbors[c2][d]
                if n1 == SENTINEL:
                    self.neighbors[c1][d] = n2
                elif n2 != SENTINEL:
                    pending.append((n1, n2))

    def follow_step(self, c, d):
        c = self.find(c)
        row = self.neighbors[c]
        if row[d] == SENTINEL:
            row[d] = self.add_coset()
        return self.find(row[d])

    def follow_path(self, c, word):
        c = self.find(c)
        for d in reversed(word):
            c = self.follow_step(c, d)
        return c

    def enumerate(self):
        to_visit = 0
        while to_visit < len(self.labels):
            c = self.find(to_visit)
            if c == to_visit:
                for relator in self.relators:
                    self.unify(self.follow_path(c, relator), c)
            to_visit += 1
            if len(self.labels) > self.max_cosets:
                raise InconsistentPresentation(
                    'coset enumeration did not close', cosets=len(self.labels)
                )
        return self.compress()

    def compress(self):
        """Live cosets renumbered 0..n-1 with the start coset first; returns the letter permutations"""
        live = [c for c in range(len(self.labels)) if self.find(c) == c]
        lookup = {c: i for i, c in enumerate(live)}
        perms = np.empty((self.nletters, len(live)), dtype=np.int64)
        for i, c in enumerate(live):
            for d in range(self.nletters):
                perms[d, i] = lookup[self.find(self.neighbors[c][d])]
        return perms


class PresentationManager:
    """Parses presentation text and builds the multiplication table"""

    def parse(self, text):
        names, orders, relations, central = [], [], [], []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            match = GEN_LINE.match(line) or SHORT_GEN_LINE.match(line)
            if match:
                names.append(match['name'])
                orders.append(int(match['order']))
                continue
            match = REL_LINE.match(line)
            if match:
                relations.append((match['lhs'], match['rhs'] or '1'))
                continue
            match = CENTRAL_LINE.match(line)
            if match:
                central.extend(n for n in re.split(r'[\s,]+', match['names']) if n)
                continue
            raise InconsistentPresentation('unrecognised presentation line', line=number, text=line)

        if not names:
            raise InconsistentPresentation('presentation declares no generators')
        if len(set(names)) != len(names):
            raise InconsistentPresentation('duplicate generator name')

        relators = []
        for i, order in enumerate(orders):
            relators.append(power([2 * i], order))
        for lhs, rhs in relations:
            relators.append(parse_word(lhs, names) + power(parse_word(rhs, names), -1))
        for name in central:
            if name not in names:
                raise InconsistentPresentation('unknown central generator', name=name)
            z = [2 * names.index(name)]
            for i in range(len(names)):
                if names[i] != name:
                    relators.append(commutator(z, [2 * i]))
        return Presentation(
            names=tuple(names),
            orders=tuple(orders),
            relators=tuple(tuple(r) for r in relators if r),
            central=tuple(central),
            source=text,
        )

    def prime_of(self, presentation):
        primes = set()
        for order in presentation.orders:
            factors = sympy.factorint(order)
            if order < 2 or len(factors) != 1:
                raise InconsistentPresentation('generator order is not a prime power', order=order)
            primes.update(factors)
        if len(primes) != 1:
            raise InconsistentPresentation('generator orders involve several primes', primes=sorted(primes))
        l = primes.pop()
        if l == 2:
            raise InconsistentPresentation('only odd primes are supported')
        return l

    def create_group(self, text, size_cap_exponent, name=''):
        presentation = self.parse(text)
        l = self.prime_of(presentation)
        declared = presentation.declared_order
        if declared > l ** size_cap_exponent:
            raise SizeCap('declared order exceeds the cap', order=declared, cap=f'{l}^{size_cap_exponent}')

        k = len(presentation.names)
        inverse_relators = [(2 * i, 2 * i + 1) for i in range(k)] + [(2 * i + 1, 2 * i) for i in range(k)]
        table = CosetTable(
            nletters=2 * k,
            relators=list(presentation.relators) + inverse_relators,
            max_cosets=64 * declared,
        )
        perms = table.enumerate()
        order = perms.shape[1]
        logger.debug('Enumerated %d cosets for %s', order, name or 'presentation')
        if not set(sympy.factorint(order)) <= {l}:
            raise InconsistentPresentation('relations force an order that is not a power of l', l=l, computed=order)
        if order > l ** size_cap_exponent:
            raise SizeCap('order exceeds the cap', order=order, cap=f'{l}^{size_cap_exponent}')
        if order != declared:
            logger.info('Relations cut %s from %d to %d elements', name or 'presentation', declared, order)
        return self._normal_form_group(l, presentation, perms, name)

    def _normal_form_group(self, l, presentation, perms, name):
        order = perms.shape[1]
        k = len(presentation.names)

        # sigma[c] is left multiplication by element c; the start coset is the identity
        sigma = np.full((order, order), -1, dtype=np.int64)
        sigma[0] = np.arange(order)
        frontier = [0]
        while frontier:
            fresh = []
            for c in frontier:
                for d in range(2 * k):
                    target = perms[d, c]
                    if sigma[target, 0] < 0:
                        sigma[target] = perms[d][sigma[c]]
                        fresh.append(target)
            frontier = fresh
        raw = sigma

        generators = [int(perms[2 * i, 0]) for i in range(k)]
        elements = np.zeros(1, dtype=np.int64)
        for g, gen_order, gen_name in zip(generators, presentation.orders, presentation.names):
            powers = [0]
            for _ in range(gen_order - 1):
                powers.append(int(raw[powers[-1], g]))
            if len(set(powers)) != gen_order or int(raw[powers[-1], g]) != 0:
                raise InconsistentPresentation(
                    'relations change the order of a generator', generator=gen_name, declared=gen_order,
                )
            elements = raw[elements[:, None], np.array(powers)[None, :]].ravel()

        # first occurrence of each element in lexicographic exponent order
        exponents = np.indices(presentation.orders).reshape(k, -1).T
        _, first = np.unique(elements, return_index=True)
        first = np.sort(first)
        members = [int(e) for e in elements[first]]
        labels = [self.label(presentation.names, exponents[i]) for i in first]
        seen = set(members)
        cursor = 0
        while len(members) < order and cursor < len(members):
            for g, gen_name in zip(generators, presentation.names):
                product = int(raw[members[cursor], g])
                if product not in seen:
                    seen.add(product)
                    members.append(product)
                    labels.append(f'{labels[cursor]}*{gen_name}')
            cursor += 1
        if len(members) != order:
            raise InconsistentPresentation('generators do not reach every coset', computed=order)

        elements = np.array(members, dtype=np.int64)
        position = np.empty(order, dtype=np.int64)
        position[elements] = np.arange(order)
        table = position[raw[np.ix_(elements, elements)]]
        return LGroup(
            l=l,
            table=table,
            generators=tuple(int(position[g]) for g in generators),
            generator_names=presentation.names,
            labels=tuple(labels),
            name=name,
            declared_order=presentation.declared_order,
        )

    @staticmethod
    def label(names, exponents):
        parts = []
        for name, e in zip(names, exponents):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f'{name}^{e}')
        return '*'.join(parts) or '1'

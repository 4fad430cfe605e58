import logging
from itertools import product

import numpy as np
from django.conf import settings

from . import catalog
from .exceptions import InconsistentPresentation, NotInSubgroup
from .managers import PresentationManager
from .models import LGroup, QuotientMap, SubgroupMarking, greedy_generators

logger = logging.getLogger(__name__)


def workbench_setting(key):
    return settings.WORKBENCH[key]


class GroupService:
    """Construction and element-level maps of finite l-groups"""

    @staticmethod
    def build_group(presentation, size_cap_exponent=None, name=''):
        if size_cap_exponent is None:
            size_cap_exponent = workbench_setting('GROUP_SIZE_CAP_EXPONENT')
        group = PresentationManager().create_group(presentation, size_cap_exponent, name=name)
        logger.info('Built %s of order %d', group.name or 'group', group.order)
        return group

    @staticmethod
    def catalog_group(name, l, gamma_exponent=None, size_cap_exponent=None):
        """Named group together with its preferred marking"""
        if gamma_exponent is None:
            gamma_exponent = workbench_setting('GAMMA_EXPONENT')
        entry = catalog.lookup(name, l)
        group = GroupService.build_group(entry.presentation, size_cap_exponent, name=f'{entry.name}[{l}]')
        if group.l != l:
            raise InconsistentPresentation('catalog orders are not powers of l', name=name, l=l, prime=group.l)
        gamma_order = l ** gamma_exponent
        generator_values = np.zeros(len(group.generators), dtype=np.int64)
        for i, generator_name in enumerate(group.generator_names):
            if generator_name in entry.pi:
                generator_values[i] = entry.pi[generator_name](gamma_order)
        pi = GroupService.extend_homomorphism(group, generator_values, gamma_order)
        gprime = group.closure([group.element(word) for word in entry.gprime])
        marking = GroupService.make_marking(group, gprime, group.element(entry.a), pi, gamma_exponent)
        return group, marking

    @staticmethod
    def make_marking(group, gprime, a, pi, gamma_exponent):
        gprime = np.sort(np.asarray(gprime, dtype=np.int64))
        l = group.l
        if len(gprime) * l != group.order or not group.is_subgroup(gprime):
            raise InconsistentPresentation('G′ is not a subgroup of index l', size=len(gprime))
        if not group.is_normal(gprime):
            raise InconsistentPresentation('G′ is not normal')
        if a in set(gprime.tolist()):
            raise InconsistentPresentation('a must lie outside G′', a=group.label(a))
        gamma_order = l ** gamma_exponent
        pi = np.asarray(pi, dtype=np.int64) % gamma_order
        if not np.array_equal(pi[group.table], (pi[:, None] + pi[None, :]) % gamma_order):
            raise InconsistentPresentation('pi is not a homomorphism')
        return SubgroupMarking(group=group, gprime=gprime, a=int(a), pi=pi, gamma_exponent=gamma_exponent)

    @staticmethod
    def spanning_tree(group, generators=None):
        """
        Breadth-first words for every element: counts[g, s] is the exponent sum
        of generator s in the tree word for g.
        """
        if generators is None:
            generators = group.generators or greedy_generators(group)
        counts = np.zeros((group.order, len(generators)), dtype=np.int64)
        seen = np.zeros(group.order, dtype=bool)
        seen[0] = True
        frontier = [0]
        while frontier:
            fresh = []
            for g in frontier:
                for s, generator in enumerate(generators):
                    h = int(group.table[g, generator])
                    if not seen[h]:
                        seen[h] = True
                        counts[h] = counts[g]
                        counts[h, s] += 1
                        fresh.append(h)
            frontier = fresh
        return tuple(generators), counts

    @staticmethod
    def extend_homomorphism(group, generator_values, modulus):
        generators, counts = GroupService.spanning_tree(group, group.generators)
        values = (counts @ np.asarray(generator_values, dtype=np.int64)) % modulus
        for s, generator in enumerate(generators):
            if not np.array_equal(values[group.table[:, generator]], (values + generator_values[s]) % modulus):
                raise InconsistentPresentation('generator values do not define a homomorphism')
        return values

    @staticmethod
    def homomorphisms(group, modulus):
        """
        Every homomorphism G → Z/modulus, as rows of values on the elements.
        All candidate generator images are tested at once.
        """
        generators, counts = GroupService.spanning_tree(group, greedy_generators(group))
        choices = np.array(list(product(range(modulus), repeat=len(generators))), dtype=np.int64)
        if len(generators) == 0:
            choices = np.zeros((1, 0), dtype=np.int64)
        values = (counts @ choices.T) % modulus
        consistent = np.ones(choices.shape[0], dtype=bool)
        for s, generator in enumerate(generators):
            shifted = values[group.table[:, generator]]
            consistent &= ((shifted - values - choices[:, s][None, :]) % modulus == 0).all(axis=0)
        return values[:, consistent].T

    @staticmethod
    def index_l_subgroups(group):
        """All maximal subgroups, each as a sorted element array"""
        kernels = {}
        for hom in GroupService.homomorphisms(group, group.l):
            if not hom.any():
                continue
            kernel = np.flatnonzero(hom == 0)
            kernels.setdefault(kernel.tobytes(), kernel)
        return [kernels[key] for key in sorted(kernels)]

    @staticmethod
    def find_abelian_index_l(group, gamma_exponent=None):
        if gamma_exponent is None:
            gamma_exponent = workbench_setting('GAMMA_EXPONENT')
        l = group.l
        markings = []
        for hom in GroupService.homomorphisms(group, l):
            if not hom.any():
                continue
            a = int(np.flatnonzero(hom == 1)[0])
            # one normalized hom per kernel: the one sending the smallest element outside G′ to 1
            outside = np.flatnonzero(hom)
            if int(outside[0]) != a:
                continue
            kernel = np.flatnonzero(hom == 0)
            block = group.table[np.ix_(kernel, kernel)]
            if not np.array_equal(block, block.T):
                continue
            pi = hom * l ** (gamma_exponent - 1)
            markings.append(GroupService.make_marking(group, kernel, a, pi, gamma_exponent))
        markings.sort(key=lambda m: m.gprime.tobytes())
        return markings

    @staticmethod
    def m_index(g, marking):
        group = marking.group
        r = 0
        while not marking.contains(g):
            g = group.power(g, group.l)
            r += 1
        return r

    @staticmethod
    def hat_a_power(gprime_element, marking):
        """g′ · g′^a ⋯ g′^(a^(l-1)) with g^a = a⁻¹ga"""
        marking.require(gprime_element)
        group = marking.group
        result = 0
        for t in marking.transversal:
            result = group.mul(result, group.conj(gprime_element, t))
        return result

    @staticmethod
    def transfer(g, marking):
        """Verlagerung into G′ for the transversal {a^i}"""
        group = marking.group
        transversal = marking.transversal
        result = 0
        for t in transversal:
            tg = group.mul(t, g)
            representative = transversal[int(marking.coset_index[tg])]
            factor = group.mul(tg, group.inv(representative))
            if not marking.contains(factor):
                raise NotInSubgroup('transfer factor left G′', factor=group.label(factor))
            result = group.mul(result, factor)
        return result

    @staticmethod
    def quotient(group, normal, name=''):
        """Materialize G/N with its projection; cosets are ordered by smallest element"""
        normal = np.sort(np.asarray(normal, dtype=np.int64))
        if not group.is_normal(normal):
            raise NotInSubgroup('quotient by a non-normal subgroup')
        projection = np.full(group.order, -1, dtype=np.int64)
        representatives = []
        for g in range(group.order):
            if projection[g] >= 0:
                continue
            projection[group.table[g, normal]] = len(representatives)
            representatives.append(g)
        representatives = np.array(representatives, dtype=np.int64)
        table = projection[group.table[np.ix_(representatives, representatives)]]
        generators = tuple(sorted({int(projection[g]) for g in group.generators} - {0}))
        target = LGroup(
            l=group.l,
            table=table,
            generators=generators,
            generator_names=tuple(group.labels[representatives[g]] for g in generators),
            labels=tuple(group.labels[g] for g in representatives),
            name=name or f'{group.name}/N',
        )
        return QuotientMap(source=group, target=target, projection=projection, kernel=normal)

    @staticmethod
    def abelianization(group):
        return GroupService.quotient(group, group.derived_subgroup, name=f'{group.name}^ab')

    @staticmethod
    def describe(group, markings=()):
        classes = group.classes
        return {
            'name': group.name,
            'order': group.order,
            'exponent': group.exponent,
            'abelian': group.is_abelian(),
            'classes': len(classes),
            'class_sizes': sorted(int(s) for s in classes.sizes),
            'derived_order': len(group.derived_subgroup),
            'centre_order': len(group.centre),
            'markings': [m.describe() for m in markings],
        }


build_group = GroupService.build_group
catalog_group = GroupService.catalog_group
find_abelian_index_l = GroupService.find_abelian_index_l
index_l_subgroups = GroupService.index_l_subgroups
m_index = GroupService.m_index
hat_a_power = GroupService.hat_a_power
transfer = GroupService.transfer
quotient = GroupService.quotient
homomorphisms = GroupService.homomorphisms

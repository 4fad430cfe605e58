import logging
from functools import lru_cache

import numpy as np

from lgroups.services import GroupService
from rings.models import CycloRing

from .exceptions import ClosedFormMismatch, IncompleteTable
from .models import INDUCED, LINEAR, CharacterTable, WTypeCharacter

logger = logging.getLogger(__name__)


def exponent_level(group):
    level = 0
    exponent = group.exponent
    while exponent > 1:
        exponent //= group.l
        level += 1
    return max(level, 1)


def power_map(group, k):
    """Array g ↦ g^k"""
    result = np.zeros(group.order, dtype=np.int64)
    base = group.elements.copy()
    while k:
        if k & 1:
            result = group.table[result, base]
        base = group.table[base, base]
        k >>= 1
    return result


class CharacterService:

    @staticmethod
    def build_table(group, level, marking=None):
        """
        Linear characters are homomorphisms to Z/l^level; the others are
        induced from A-orbits of non-fixed linear characters of an abelian
        index-l subgroup.
        """
        l = group.l
        ring = CycloRing(l, level)
        modulus = ring.order
        reps = np.array(group.classes.reps)

        homs = GroupService.homomorphisms(group, modulus)
        values = [ring.exponent_vectors(hom[reps]) for hom in homs]
        kinds = [LINEAR] * len(homs)
        hom_list = [hom for hom in homs]
        sources = [None] * len(homs)

        if not group.is_abelian():
            if marking is None or not marking.is_abelian():
                candidates = GroupService.find_abelian_index_l(group, 1)
                if not candidates:
                    raise IncompleteTable('no abelian subgroup of index l', group=group.name)
                marking = candidates[0]
            sub = marking.gprime_group
            sub_homs = GroupService.homomorphisms(sub.group, modulus)
            a, a_inverse = marking.a, group.inv(marking.a)
            conjugated = sub.position[group.table[group.table[a, sub.embedding], a_inverse]]
            seen = set()
            for source in sub_homs:
                key = source.tobytes()
                if key in seen:
                    continue
                orbit = [source]
                image = source[conjugated]
                while image.tobytes() != key:
                    orbit.append(image)
                    image = image[conjugated]
                seen.update(member.tobytes() for member in orbit)
                if len(orbit) == 1:
                    continue
                induced = CharacterService._induce_exponents(group, marking, ring, source)
                values.append(induced[reps])
                kinds.append(INDUCED)
                hom_list.append(None)
                sources.append(source)

        values = np.stack(values).astype(np.int64)
        degrees = values[:, 0, 0]
        if int((degrees ** 2).sum()) != group.order:
            raise IncompleteTable(
                'sum of squared degrees differs from the group order',
                group=group.name, total=int((degrees ** 2).sum()),
            )
        logger.debug('Character table of %s: %d irreducibles', group.name, len(values))
        return CharacterTable(
            group=group,
            marking=marking,
            level=level,
            values=values,
            kinds=tuple(kinds),
            homs=tuple(hom_list),
            sources=tuple(sources),
        )

    @staticmethod
    def _induce_exponents(group, marking, ring, source):
        """Per-element values of the character induced from the linear character ζ^source of G′"""
        position = marking.gprime_group.position
        total = np.zeros((group.order, ring.degree), dtype=np.int64)
        for t in marking.transversal:
            conjugates = group.conjugation[t]
            inside = marking.mask[conjugates]
            local = position[conjugates[inside]]
            total[inside] += ring.exponent_vectors(source[local])
        return total

    @staticmethod
    def table_level(marking, minimum=1):
        return max(exponent_level(marking.group), marking.gamma_exponent, minimum)

    @staticmethod
    def character_table(group, marking=None, level=None):
        if level is None:
            level = max(exponent_level(group), marking.gamma_exponent if marking else 1)
        return cached_table(group, marking, level)

    @staticmethod
    def tables(marking, level=None):
        """(table of G, table of G′) at a common cyclotomic level"""
        if level is None:
            level = CharacterService.table_level(marking)
        big = cached_table(marking.group, marking, level)
        small = cached_table(marking.gprime_group.group, None, level)
        return big, small

    @staticmethod
    def induce(chi_prime, marking, table=None):
        """ind χ′(g) = Σ_t χ̇′(g^t) with χ̇′ vanishing off G′"""
        if table is None:
            table, _ = CharacterService.tables(marking, chi_prime.table.level)
        group = marking.group
        position = marking.gprime_group.position
        sub_values = chi_prime.element_values()
        total = np.zeros((group.order, table.ring.degree), dtype=np.int64)
        for t in marking.transversal:
            conjugates = group.conjugation[t]
            inside = marking.mask[conjugates]
            total[inside] += sub_values[position[conjugates[inside]]]
        return table.decompose(table.class_function(total))

    @staticmethod
    def restrict(chi, marking, sub_table=None):
        if sub_table is None:
            _, sub_table = CharacterService.tables(marking, chi.table.level)
        element_values = chi.element_values()[marking.gprime_group.embedding]
        return sub_table.decompose(sub_table.class_function(element_values))

    @staticmethod
    def adams(chi, k):
        """ψ_k χ(g) = χ(g^k)"""
        table = chi.table
        group = table.group
        powers = power_map(group, k)
        reps = np.array(table.classes.reps)
        class_values = chi.values[table.classes.class_of[powers[reps]]]
        return table.decompose(class_values)

    @staticmethod
    def inner_product(first, second):
        totals = first.table.inner_products(second.values)
        return int(first.coords @ totals[:, 0]) // first.table.group.order

    @staticmethod
    def defect_char(chi_prime, marking, table=None):
        """
        ψ_l(ind χ′) - ind(ψ_l χ′), cross-checked against the closed form
        Σ_{t : g^t ∉ G′} χ′((g^t)^l).
        """
        l = marking.l
        if table is None:
            table, _ = CharacterService.tables(marking, chi_prime.table.level)
        induced = CharacterService.induce(chi_prime, marking, table)
        defect = CharacterService.adams(induced, l) - CharacterService.induce(
            CharacterService.adams(chi_prime, l), marking, table
        )
        closed = CharacterService.defect_closed_form(chi_prime, marking, table)
        if not np.array_equal(defect.values, closed):
            raise ClosedFormMismatch('defect character differs from its closed form')
        return defect

    @staticmethod
    def defect_closed_form(chi_prime, marking, table):
        group = marking.group
        position = marking.gprime_group.position
        sub_values = chi_prime.element_values()
        lth_powers = power_map(group, marking.l)
        total = np.zeros((group.order, table.ring.degree), dtype=np.int64)
        for t in marking.transversal:
            conjugates = group.conjugation[t]
            outside = ~marking.mask[conjugates]
            total[outside] += sub_values[position[lth_powers[conjugates[outside]]]]
        return table.class_function(total)

    @staticmethod
    def linear_character(table, hom_values):
        """Irreducible ζ^hom for a homomorphism G → Z/l^level"""
        class_values = table.ring.exponent_vectors(np.asarray(hom_values)[np.array(table.classes.reps)])
        return table.irreducible(table.index_of(class_values))

    @staticmethod
    def wtype_chars(marking, level=None):
        """ρ_σ ∘ π for every character ρ_σ of Γ̄, split into a G-part and the twist σ"""
        table, sub_table = CharacterService.tables(marking, level)
        scale = marking.l ** (table.level - marking.gamma_exponent)
        characters = []
        for sigma in range(marking.gamma_order):
            hom = (sigma * marking.pi * scale) % table.ring.order
            character = CharacterService.linear_character(table, hom)
            restricted = CharacterService.linear_character(
                sub_table, hom[marking.gprime_group.embedding]
            )
            characters.append(WTypeCharacter(sigma=sigma, character=character, restricted=restricted))
        return characters


@lru_cache(maxsize=64)
def cached_table(group, marking, level):
    return CharacterService.build_table(group, level, marking)


character_table = CharacterService.character_table
induce = CharacterService.induce
adams = CharacterService.adams
defect_char = CharacterService.defect_char
wtype_chars = CharacterService.wtype_chars
restrict = CharacterService.restrict
inner_product = CharacterService.inner_product

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .exceptions import NotInSubgroup
from .words import parse_word


@dataclass(frozen=True)
class Presentation:
    """Parsed presentation text, before enumeration"""
    names: tuple
    orders: tuple
    relators: tuple
    central: tuple = ()
    source: str = ''

    @property
    def declared_order(self):
        return int(np.prod(self.orders, dtype=object))


@dataclass(frozen=True, eq=False)
class LGroup:
    """
    A finite l-group stored as its full multiplication table.

    Elements are the indices 0..n-1 with 0 the identity and
    table[a, b] = a·b. Groups built from a presentation are labelled in
    normal form g_1^e_1 ⋯ g_k^e_k, first occurrence in lexicographic order;
    elements no normal form reaches get a generator word. declared_order is
    the product of the generator orders, which relations may cut down.
    """
    l: int
    table: np.ndarray
    generators: tuple
    generator_names: tuple
    labels: tuple
    name: str = ''
    declared_order: int = None

    @property
    def order(self):
        return self.table.shape[0]

    @property
    def identity(self):
        return 0

    def __len__(self):
        return self.order

    def __repr__(self):
        return f'LGroup({self.name or "?"}, order={self.order})'

    @cached_property
    def elements(self):
        return np.arange(self.order)

    @cached_property
    def inverse(self):
        return np.argmax(self.table == 0, axis=1)

    def mul(self, *elements):
        result = 0
        for g in elements:
            result = int(self.table[result, g])
        return result

    def inv(self, g):
        return int(self.inverse[g])

    def power(self, g, exponent):
        if exponent < 0:
            g, exponent = self.inv(g), -exponent
        result = 0
        while exponent:
            if exponent & 1:
                result = int(self.table[result, g])
            g = int(self.table[g, g])
            exponent >>= 1
        return result

    def conj(self, g, x):
        """g^x = x⁻¹gx"""
        return int(self.conjugation[x, g])

    def commutator(self, u, v):
        """[u, v] = u⁻¹v⁻¹uv"""
        return self.mul(self.inv(u), self.inv(v), u, v)

    @cached_property
    def conjugation(self):
        """conjugation[x, g] = x⁻¹gx"""
        left = self.table[self.inverse[:, None], self.elements[None, :]]
        return self.table[left, self.elements[:, None]]

    @cached_property
    def element_orders(self):
        orders = np.zeros(self.order, dtype=np.int64)
        current = self.elements.copy()
        k = 1
        while not orders.all():
            orders[(current == 0) & (orders == 0)] = k
            current = self.table[current, self.elements]
            k += 1
        return orders

    @cached_property
    def exponent(self):
        return int(self.element_orders.max())

    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def element(self, text):
        """Element named by a word over the generator names, e.g. 'x*y^2'"""
        result = 0
        for letter in parse_word(text, self.generator_names):
            g = self.generators[letter >> 1]
            result = int(self.table[result, self.inv(g) if letter & 1 else g])
        return result

    def label(self, g):
        return self.labels[g]

    def closure(self, generators):
        """Sorted element array of the subgroup generated"""
        members = np.zeros(self.order, dtype=bool)
        members[0] = True
        frontier = [0]
        generators = [int(g) for g in generators]
        while frontier:
            fresh = []
            for g in frontier:
                for s in generators:
                    h = int(self.table[g, s])
                    if not members[h]:
                        members[h] = True
                        fresh.append(h)
            frontier = fresh
        return np.flatnonzero(members)

    def commutator_subgroup(self, left, right):
        """[H, K] for element arrays H and K"""
        left = np.asarray(left)
        right = np.asarray(right)
        first = self.table[self.inverse[left][:, None], self.inverse[right][None, :]]
        second = self.table[left[:, None], right[None, :]]
        commutators = np.unique(self.table[first, second])
        return self.closure(commutators)

    @cached_property
    def derived_subgroup(self):
        return self.commutator_subgroup(self.elements, self.elements)

    @cached_property
    def centre(self):
        return np.flatnonzero((self.conjugation == self.elements[None, :]).all(axis=0))

    @cached_property
    def classes(self):
        return ConjClassSet.from_conjugation(self.conjugation)

    def is_subgroup(self, members):
        members = np.asarray(members)
        mask = np.zeros(self.order, dtype=bool)
        mask[members] = True
        return bool(mask[0] and mask[self.table[np.ix_(members, members)]].all())

    def is_normal(self, members):
        mask = np.zeros(self.order, dtype=bool)
        mask[np.asarray(members)] = True
        return bool(mask[self.conjugation[:, mask]].all())

    def check_associativity(self):
        for a in range(self.order):
            left = self.table[self.table[a, :], :]
            right = self.table[a, self.table]
            if not np.array_equal(left, right):
                return False
        return True


@dataclass(frozen=True, eq=False)
class ConjClassSet:
    classes: tuple
    class_of: np.ndarray

    @classmethod
    def from_conjugation(cls, conjugation):
        order = conjugation.shape[0]
        class_of = np.full(order, -1, dtype=np.int64)
        classes = []
        for g in range(order):
            if class_of[g] >= 0:
                continue
            members = np.unique(conjugation[:, g])
            class_of[members] = len(classes)
            classes.append(tuple(int(m) for m in members))
        return cls(tuple(classes), class_of)

    @property
    def reps(self):
        return tuple(c[0] for c in self.classes)

    @cached_property
    def sizes(self):
        return np.array([len(c) for c in self.classes], dtype=np.int64)

    def __len__(self):
        return len(self.classes)

    def centralizer_order(self, index):
        return int(self.class_of.shape[0] // self.sizes[index])


@dataclass(frozen=True, eq=False)
class SubgroupMarking:
    """
    Index-l subgroup G′ of G with a transversal {1, a, ..., a^(l-1)} and a
    homomorphism pi: G → Z/l^M. The modeled group is G × Z/l^M, on which
    π(g, γ) = pi(g) + γ.
    """
    group: LGroup
    gprime: np.ndarray
    a: int
    pi: np.ndarray
    gamma_exponent: int

    @property
    def l(self):
        return self.group.l

    @property
    def gamma_order(self):
        return self.l ** self.gamma_exponent

    @cached_property
    def mask(self):
        mask = np.zeros(self.group.order, dtype=bool)
        mask[self.gprime] = True
        return mask

    def contains(self, g):
        return bool(self.mask[g])

    def require(self, g):
        if not self.mask[g]:
            raise NotInSubgroup('element is not in G′', element=self.group.label(g))

    @cached_property
    def transversal(self):
        return tuple(self.group.power(self.a, i) for i in range(self.l))

    @cached_property
    def coset_index(self):
        """coset_index[g] = i with g ∈ a^i G′"""
        index = np.full(self.group.order, -1, dtype=np.int64)
        for i, t in enumerate(self.transversal):
            index[self.group.table[t, self.gprime]] = i
        return index

    @cached_property
    def gprime_group(self):
        """G′ as a group in its own right, with the embedding into G"""
        return subgroup_as_group(self.group, self.gprime, name=f'{self.group.name}′')

    def is_abelian(self):
        sub = self.gprime
        block = self.group.table[np.ix_(sub, sub)]
        return bool(np.array_equal(block, block.T))

    @cached_property
    def pi_index(self):
        """[pi(G) : pi(G′)], 1 or l"""
        image = np.unique(self.pi % self.gamma_order)
        sub_image = np.unique(self.pi[self.gprime] % self.gamma_order)
        return len(image) // len(sub_image)

    def describe(self):
        group = self.group
        return {
            'gprime': [group.label(g) for g in self.gprime],
            'a': group.label(self.a),
            'abelian': self.is_abelian(),
            'pi': {group.generator_names[i]: int(self.pi[g]) for i, g in enumerate(group.generators)},
            'gamma_order': self.gamma_order,
            'pi_index': self.pi_index,
        }


@dataclass(frozen=True, eq=False)
class EmbeddedGroup:
    """A subgroup materialized as an LGroup; embedding[i] is its image in the ambient group"""
    group: LGroup
    embedding: np.ndarray

    @cached_property
    def position(self):
        """Inverse of the embedding, -1 off the subgroup"""
        position = np.full(int(self.embedding.max()) + 1, -1, dtype=np.int64)
        position[self.embedding] = np.arange(len(self.embedding))
        return position

    def local(self, g):
        index = int(self.position[g]) if g < len(self.position) else -1
        if index < 0:
            raise NotInSubgroup('element outside the subgroup', element=g)
        return index


def subgroup_as_group(group, members, name=''):
    members = np.asarray(members)
    if members[0] != 0:
        members = np.sort(members)
    position = np.full(group.order, -1, dtype=np.int64)
    position[members] = np.arange(len(members))
    table = position[group.table[np.ix_(members, members)]]
    sub = LGroup(
        l=group.l,
        table=table,
        generators=(),
        generator_names=(),
        labels=tuple(group.labels[g] for g in members),
        name=name,
    )
    generators = greedy_generators(sub)
    sub = LGroup(
        l=group.l,
        table=table,
        generators=generators,
        generator_names=tuple(f's{i}' for i in range(len(generators))),
        labels=sub.labels,
        name=name,
    )
    return EmbeddedGroup(sub, members)


def greedy_generators(group):
    """A small generating set: scan elements, keep those outside the span so far"""
    generators = []
    span = np.zeros(group.order, dtype=bool)
    span[0] = True
    for g in range(1, group.order):
        if span[g]:
            continue
        generators.append(g)
        span[group.closure(generators)] = True
        if span.all():
            break
    return tuple(generators)


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """Materialized quotient G → G/N"""
    source: LGroup
    target: LGroup
    projection: np.ndarray
    kernel: np.ndarray = field(default=None)

    def __call__(self, g):
        return int(self.projection[g])

    @cached_property
    def section(self):
        """Smallest preimage of each target element"""
        section = np.full(self.target.order, -1, dtype=np.int64)
        for g in range(self.source.order - 1, -1, -1):
            section[self.projection[g]] = g
        return section

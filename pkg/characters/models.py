from dataclasses import dataclass
from functools import cached_property

import numpy as np

from rings.models import CycloRing, CycloScalar

from .exceptions import NotVirtual

LINEAR = 'linear'
INDUCED = 'induced'


@dataclass(frozen=True, eq=False)
class MonomialRep:
    """
    Monomial matrices of an irreducible: for element g, column j has its
    only non-zero entry ζ^exponents[g, j] in row rows[g, j].
    """
    rows: np.ndarray
    exponents: np.ndarray
    level: int

    @property
    def degree(self):
        return self.rows.shape[1]

    def trace_exponents(self, g):
        """Exponents of the diagonal entries of the matrix of g"""
        columns = np.flatnonzero(self.rows[g] == np.arange(self.degree))
        return self.exponents[g, columns]


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """
    Irreducible characters of a finite l-group, values exact in Z[ζ] for ζ
    of order l^level. values[k, c] is the power-basis vector of χ_k at class c.
    """
    group: object
    marking: object
    level: int
    values: np.ndarray
    kinds: tuple
    homs: tuple
    sources: tuple

    @property
    def ring(self):
        return CycloRing(self.group.l, self.level)

    def __len__(self):
        return self.values.shape[0]

    @cached_property
    def degrees(self):
        return self.values[:, 0, 0].copy()

    @property
    def classes(self):
        return self.group.classes

    @cached_property
    def lookup(self):
        return {self.values[k].tobytes(): k for k in range(len(self))}

    def index_of(self, class_values):
        key = np.ascontiguousarray(class_values, dtype=self.values.dtype).tobytes()
        if key not in self.lookup:
            raise NotVirtual('class function is not an irreducible character')
        return self.lookup[key]

    @cached_property
    def linear_indices(self):
        return tuple(k for k, kind in enumerate(self.kinds) if kind == LINEAR)

    @cached_property
    def induced_indices(self):
        return tuple(k for k, kind in enumerate(self.kinds) if kind == INDUCED)

    def element_values(self, k):
        """(n, φ) values of χ_k on every element"""
        return self.values[k][self.classes.class_of]

    def irreducible(self, k):
        coords = np.zeros(len(self), dtype=np.int64)
        coords[k] = 1
        return VirtualCharacter(self, coords)

    def irreducibles(self):
        return [self.irreducible(k) for k in range(len(self))]

    def zero(self):
        return VirtualCharacter(self, np.zeros(len(self), dtype=np.int64))

    def trivial(self):
        return self.irreducible(0)

    def class_function(self, element_values):
        """Restrict per-element values to class representatives"""
        return np.asarray(element_values)[np.array(self.classes.reps)]

    def inner_products(self, class_values):
        """|G|·⟨f, χ_k⟩ for every k, as cyclotomic vectors"""
        ring = self.ring
        conjugates = ring.conjugate(self.values)
        products = ring.multiply(np.asarray(class_values)[None, :, :], conjugates)
        return (products * self.classes.sizes[None, :, None]).sum(axis=1)

    def decompose(self, class_values):
        totals = self.inner_products(class_values)
        order = self.group.order
        if np.any(totals[:, 1:]) or np.any(totals[:, 0] % order):
            raise NotVirtual('class function has non-integral coordinates', group=self.group.name)
        return VirtualCharacter(self, totals[:, 0] // order)

    @cached_property
    def galois_permutations(self):
        """galois_permutations[u] maps k to the index of σ_u(χ_k), for units u mod l^level"""
        order = self.ring.order
        permutations = {}
        for u in range(1, order):
            if u % self.group.l:
                conjugated = self.ring.galois(self.values, u)
                permutations[u] = np.array([self.index_of(conjugated[k]) for k in range(len(self))])
        return permutations

    def monomial(self, k):
        """Monomial representation realizing χ_k"""
        group = self.group
        if self.kinds[k] == LINEAR:
            return MonomialRep(
                rows=np.zeros((group.order, 1), dtype=np.int64),
                exponents=np.asarray(self.homs[k], dtype=np.int64).reshape(-1, 1),
                level=self.level,
            )
        marking = self.marking
        source = self.sources[k]
        position = marking.gprime_group.position
        transversal = np.array(marking.transversal)
        inverse = group.inverse
        l = group.l
        rows = np.empty((group.order, l), dtype=np.int64)
        exponents = np.empty((group.order, l), dtype=np.int64)
        for j, t in enumerate(transversal):
            products = group.table[:, t]
            i = marking.coset_index[products]
            inside = group.table[inverse[transversal[i]], products]
            rows[:, j] = i
            exponents[:, j] = source[position[inside]]
        return MonomialRep(rows=rows, exponents=exponents, level=self.level)


@dataclass(frozen=True, eq=False)
class VirtualCharacter:
    table: CharacterTable
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'coords', np.asarray(self.coords, dtype=np.int64))

    @cached_property
    def values(self):
        """(classes, φ) values"""
        return np.tensordot(self.coords, self.table.values, axes=1)

    def value_at(self, g):
        return CycloScalar(self.table.ring, self.values[self.table.classes.class_of[g]])

    def element_values(self):
        return self.values[self.table.classes.class_of]

    @property
    def degree(self):
        return int(self.values[0, 0])

    def _check(self, other):
        if other.table is not self.table:
            raise ValueError('characters from different tables')

    def __add__(self, other):
        self._check(other)
        return VirtualCharacter(self.table, self.coords + other.coords)

    def __sub__(self, other):
        self._check(other)
        return VirtualCharacter(self.table, self.coords - other.coords)

    def __neg__(self):
        return VirtualCharacter(self.table, -self.coords)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return VirtualCharacter(self.table, self.coords * int(other))
        self._check(other)
        product = self.table.ring.multiply(self.values, other.values)
        return self.table.decompose(product)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return other.table is self.table and np.array_equal(self.coords, other.coords)

    __hash__ = None

    def is_zero(self):
        return not self.coords.any()

    def support(self):
        return [(int(k), int(self.coords[k])) for k in np.flatnonzero(self.coords)]

    def is_irreducible(self):
        support = self.support()
        return len(support) == 1 and support[0][1] == 1

    def galois(self, u):
        permutation = self.table.galois_permutations[u % self.table.ring.order]
        coords = np.zeros_like(self.coords)
        coords[permutation] = self.coords
        return VirtualCharacter(self.table, coords)

    def __repr__(self):
        terms = ' + '.join(f'{c}·χ{k}' for k, c in self.support()) or '0'
        return f'VirtualCharacter({terms})'


@dataclass(frozen=True, eq=False)
class WTypeCharacter:
    """
    The character γ ↦ ζ_{l^M}^{σγ} of Γ̄ pulled back along π, split as its
    part on G (the linear character σ·pi) and the Γ̄ twist σ.
    """
    sigma: int
    character: VirtualCharacter
    restricted: VirtualCharacter

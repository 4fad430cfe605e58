"""
Group rings of G × Γ̄, their trace quotients and the Hom-side model.

A GroupRingElement over Z/l^N stores an (n, l^M) array: entry [g, γ] is the
coefficient of (g, γ). TraceElement does the same per conjugacy class.
HomElement stores one Γ-algebra value per irreducible χ of G, meaning the
value at χ ⊗ 1; the value at χ ⊗ σ is derived through the W-twist unless it
was computed directly and stored in `twisted`.
"""
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from characters.services import cached_table, power_map
from gamma.exceptions import NoConvergence
from gamma.models import GammaAlgebra
from rings.exceptions import PrecisionExhausted
from rings.models import CycloRing, TruncatedAlgebraElement

from .exceptions import NotAUnit

HOM = 'HOM'
HOM_STAR = 'Hom*'

VERIFIED = 'verified'
FAILED = 'failed'
UNKNOWN = 'unknown'

FLAG_NAMES = ('galois_stable', 'twist_compatible', 'integral')


def unknown_flags():
    return {name: UNKNOWN for name in FLAG_NAMES}


@dataclass(frozen=True, eq=False)
class ModeledGroup:
    """
    G × Z/l^M with π(g, γ) = pi[g] + γ, together with the cyclotomic level
    at which characters of G are evaluated.
    """
    group: object
    pi: np.ndarray
    gamma_exponent: int
    level: int
    marking: object = None

    @classmethod
    def from_marking(cls, marking, level):
        return cls(marking.group, np.asarray(marking.pi), marking.gamma_exponent, level, marking)

    @classmethod
    def subgroup_of(cls, marking, level):
        sub = marking.gprime_group
        return cls(sub.group, np.asarray(marking.pi)[sub.embedding], marking.gamma_exponent, level)

    @classmethod
    def quotient_of(cls, model, quotient_map):
        return cls(
            quotient_map.target,
            model.pi[quotient_map.section],
            model.gamma_exponent,
            model.level,
        )

    @property
    def l(self):
        return self.group.l

    @property
    def order(self):
        return self.group.order

    @property
    def gamma_order(self):
        return self.l ** self.gamma_exponent

    @property
    def shape(self):
        return (self.order, self.gamma_order)

    @property
    def ring(self):
        return CycloRing(self.l, self.level)

    @property
    def table(self):
        return cached_table(self.group, self.marking, self.level)

    @property
    def twist_scale(self):
        """ρ_σ(γ) = ζ^(σ·γ·twist_scale) with ζ of order l^level"""
        return self.l ** (self.level - self.gamma_exponent)

    def algebra(self, prec):
        return GammaAlgebra(self.l, self.gamma_exponent, self.level, prec)

    @cached_property
    def lth_powers(self):
        return power_map(self.group, self.l)

    @cached_property
    def twist_permutations(self):
        """twist_permutations[σ][k] is the index of χ_k · λ_σ⁻¹, λ_σ = ζ^(σ·pi)"""
        table = self.table
        ring = self.ring
        reps = np.array(table.classes.reps)
        permutations = {}
        for sigma in range(self.gamma_order):
            exponents = -(sigma * self.pi[reps] * self.twist_scale)
            inverse = ring.exponent_vectors(exponents)
            products = ring.multiply(table.values, inverse[None, :, :])
            permutations[sigma] = np.array([table.index_of(products[k]) for k in range(len(table))])
        return permutations

    def element(self, coeffs, prec):
        return GroupRingElement(self, coeffs, prec)

    def zero(self, prec):
        return self.element(np.zeros(self.shape, dtype=np.int64), prec)

    def one(self, prec):
        return self.group_like(0, prec=prec)

    def group_like(self, g, gamma=0, scalar=1, prec=None):
        coeffs = np.zeros(self.shape, dtype=np.int64)
        coeffs[g, gamma % self.gamma_order] = scalar
        return self.element(coeffs, prec)

    def with_gamma_coefficient(self, g, row, prec):
        """β·g for β = Σ row[γ]·γ in Z/l^N[Γ̄]"""
        coeffs = np.zeros(self.shape, dtype=np.int64)
        coeffs[g] = row
        return self.element(coeffs, prec)

    def random_unit(self, rng, prec, density=0.5):
        """Coefficients uniform in Z/l^prec on a support of the given density"""
        coeffs = rng.integers(0, self.l ** prec, size=self.shape, dtype=np.int64)
        coeffs[rng.random(self.shape) >= density] = 0
        if int(coeffs.sum()) % self.l == 0:
            coeffs[0, 0] += 1
        return self.element(coeffs, prec)

    def describe(self):
        return {
            'group': self.group.name,
            'order': self.order,
            'gamma_order': self.gamma_order,
            'level': self.level,
        }


@dataclass(frozen=True, eq=False)
class GroupRingElement(TruncatedAlgebraElement):
    model: ModeledGroup
    coeffs: np.ndarray
    prec: int

    non_unit_error = NotAUnit
    convergence_error = NoConvergence

    def __post_init__(self):
        if self.prec is None or self.prec < 1:
            raise PrecisionExhausted('precision below 1', prec=self.prec)
        coeffs = np.asarray(self.coeffs)
        if coeffs.shape != self.model.shape:
            raise ValueError(f'expected shape {self.model.shape}, got {coeffs.shape}')
        object.__setattr__(self, 'coeffs', (coeffs % self.modulus).astype(np.int64))

    @property
    def l(self):
        return self.model.l

    def one(self):
        return self.model.one(self.prec)

    def _build(self, coeffs, prec):
        return GroupRingElement(self.model, coeffs, prec)

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            if other.model is not self.model:
                raise ValueError('elements of different group rings')
            return other
        return self.model.group_like(0, scalar=int(other), prec=self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        return self._build(self.coeffs + other.coeffs, min(self.prec, other.prec))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self._build(self.coeffs - other.coeffs, min(self.prec, other.prec))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._build(-self.coeffs, self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(other)
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        modulus = self.l ** prec
        table = self.model.group.table
        out = np.zeros_like(self.coeffs)
        # (g, s)·(h, δ) = (gh, s + δ)
        for g, s in zip(*np.nonzero(self.coeffs)):
            out[table[g]] += int(self.coeffs[g, s]) * np.roll(other.coeffs, s, axis=1)
            out %= modulus
        return self._build(out, prec)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, (GroupRingElement, int)):
            return NotImplemented
        other = self._coerce(other)
        common = min(self.prec, other.prec)
        return not np.any((self.coeffs - other.coeffs) % self.l ** common)

    __hash__ = None

    def coefficient(self, g, gamma=0):
        return int(self.coeffs[g, gamma % self.model.gamma_order])

    def support(self):
        return sorted({int(g) for g in np.nonzero(self.coeffs)[0]})

    def psi(self):
        """Linear map (g, γ) ↦ (g^l, lγ); a ring endomorphism when G is abelian"""
        order = self.model.gamma_order
        out = np.zeros_like(self.coeffs)
        gammas = (self.l * np.arange(order)) % order
        np.add.at(out, (self.model.lth_powers[:, None], gammas[None, :]), self.coeffs)
        return self._build(out, self.prec)

    def conjugate_by(self, x):
        """Image under (g, γ) ↦ (x⁻¹gx, γ)"""
        out = np.zeros_like(self.coeffs)
        out[self.model.group.conjugation[x]] = self.coeffs
        return self._build(out, self.prec)

    def to_dict(self):
        return {
            'prec': self.prec,
            'gamma_order': self.model.gamma_order,
            'coeffs': {str(g): [int(c) for c in row] for g, row in enumerate(self.coeffs) if row.any()},
        }

    @classmethod
    def from_dict(cls, model, data):
        if int(data['gamma_order']) != model.gamma_order:
            raise ValueError('Γ̄ order of the data differs from the model')
        coeffs = np.zeros(model.shape, dtype=np.int64)
        for key, row in data['coeffs'].items():
            coeffs[int(key)] = row
        return cls(model, coeffs, int(data['prec']))

    def __repr__(self):
        labels = self.model.group.labels
        terms = []
        for g, gamma in zip(*np.nonzero(self.coeffs)):
            suffix = f'·γ^{gamma}' if gamma else ''
            terms.append(f'{self.coeffs[g, gamma]}·{labels[g]}{suffix}')
        return (' + '.join(terms) or '0') + f' + O({self.l}^{self.prec})'


@dataclass(frozen=True, eq=False)
class TraceElement:
    """Element of T(Z/l^N[G × Γ̄]) in the basis of class sums τ(c, γ)"""
    model: ModeledGroup
    coeffs: np.ndarray
    prec: int

    def __post_init__(self):
        if self.prec < 1:
            raise PrecisionExhausted('precision below 1', prec=self.prec)
        expected = (len(self.model.group.classes), self.model.gamma_order)
        coeffs = np.asarray(self.coeffs)
        if coeffs.shape != expected:
            raise ValueError(f'expected shape {expected}, got {coeffs.shape}')
        object.__setattr__(self, 'coeffs', (coeffs % self.l ** self.prec).astype(np.int64))

    @property
    def l(self):
        return self.model.l

    @classmethod
    def basis(cls, model, c, gamma=0, prec=1):
        coeffs = np.zeros((len(model.group.classes), model.gamma_order), dtype=np.int64)
        coeffs[c, gamma % model.gamma_order] = 1
        return cls(model, coeffs, prec)

    def _check(self, other):
        if other.model is not self.model:
            raise ValueError('trace elements of different groups')

    def __add__(self, other):
        self._check(other)
        return TraceElement(self.model, self.coeffs + other.coeffs, min(self.prec, other.prec))

    def __sub__(self, other):
        self._check(other)
        return TraceElement(self.model, self.coeffs - other.coeffs, min(self.prec, other.prec))

    def __neg__(self):
        return TraceElement(self.model, -self.coeffs, self.prec)

    def scale(self, n):
        return TraceElement(self.model, self.coeffs * (int(n) % self.l ** self.prec), self.prec)

    def with_precision(self, prec):
        return TraceElement(self.model, self.coeffs, min(prec, self.prec))

    def is_zero(self):
        return not self.coeffs.any()

    def __eq__(self, other):
        if not isinstance(other, TraceElement):
            return NotImplemented
        self._check(other)
        common = min(self.prec, other.prec)
        return not np.any((self.coeffs - other.coeffs) % self.l ** common)

    __hash__ = None

    def to_dict(self):
        classes = self.model.group.classes
        labels = self.model.group.labels
        return {
            'prec': self.prec,
            'coeffs': {labels[classes.reps[c]]: [int(x) for x in row] for c, row in enumerate(self.coeffs) if row.any()},
        }


@dataclass(frozen=True, eq=False)
class HomElement:
    """
    Value map on irreducible characters. HOM elements are evaluated
    multiplicatively on virtual characters, Hom* elements additively.
    """
    model: ModeledGroup
    kind: str
    values: tuple
    twisted: dict = None
    flags: dict = field(default_factory=unknown_flags)

    @property
    def l(self):
        return self.model.l

    @property
    def table(self):
        return self.model.table

    @property
    def prec(self):
        precisions = [v.prec for v in self.values]
        for values in (self.twisted or {}).values():
            precisions.extend(v.prec for v in values)
        return min(precisions)

    @classmethod
    def constant(cls, model, prec, kind=HOM):
        algebra = model.algebra(prec)
        value = algebra.one() if kind == HOM else algebra.zero()
        return cls(model, kind, tuple(value for _ in range(len(model.table))))

    def value(self, k, sigma=0):
        """f(χ_k ⊗ σ)"""
        sigma %= self.model.gamma_order
        if sigma == 0:
            return self.values[k]
        if self.twisted and sigma in self.twisted:
            return self.twisted[sigma][k]
        source = self.model.twist_permutations[sigma][k]
        return self.values[source].twist_sharp(sigma)

    def evaluate(self, virtual, sigma=0):
        """f on Σ n_k χ_k ⊗ σ"""
        if virtual.table is not self.table:
            raise ValueError('virtual character from another table')
        algebra = self.values[0].algebra
        prec = self.prec
        if self.kind == HOM:
            result = algebra.one(prec)
            for k, n in virtual.support():
                result = result * self.value(k, sigma) ** n
        else:
            result = algebra.zero(prec)
            for k, n in virtual.support():
                result = result + self.value(k, sigma).scale(n)
        return result

    def with_flags(self, flags):
        return replace(self, flags=dict(flags))

    def _combine(self, other, operation):
        if other.model is not self.model or other.kind != self.kind:
            raise ValueError('incompatible Hom elements')
        values = tuple(operation(a, b) for a, b in zip(self.values, other.values))
        twisted = None
        if self.twisted and other.twisted:
            common = set(self.twisted) & set(other.twisted)
            twisted = {
                sigma: tuple(operation(a, b) for a, b in zip(self.twisted[sigma], other.twisted[sigma]))
                for sigma in sorted(common)
            }
        return HomElement(self.model, self.kind, values, twisted)

    def __mul__(self, other):
        if self.kind != HOM:
            raise TypeError('only HOM elements multiply')
        return self._combine(other, lambda a, b: a * b)

    def __add__(self, other):
        if self.kind != HOM_STAR:
            raise TypeError('only Hom* elements add')
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        if self.kind != HOM_STAR:
            raise TypeError('only Hom* elements subtract')
        return self._combine(other, lambda a, b: a - b)

    def __eq__(self, other):
        if not isinstance(other, HomElement):
            return NotImplemented
        return (
            other.model is self.model
            and other.kind == self.kind
            and all(a == b for a, b in zip(self.values, other.values))
        )

    __hash__ = None

    def mismatches(self, other):
        """Indices k with f(χ_k) ≠ g(χ_k) at the common precision"""
        return [k for k, (a, b) in enumerate(zip(self.values, other.values)) if not a == b]

    def to_dict(self):
        return {
            'kind': self.kind,
            'group': self.model.group.name,
            'prec': self.prec,
            'flags': dict(self.flags),
            'values': [value.to_dict() for value in self.values],
        }

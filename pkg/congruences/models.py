"""
Exact linear algebra over Z/l^N for ideal membership, and integer lattices
with an action of a cyclic group of order l.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from rings.exceptions import PrecisionExhausted
from rings.models import IntMatrix


def valuations(values, l, prec):
    """l-adic valuation of each entry, prec for entries ≡ 0"""
    result = np.zeros(len(values), dtype=np.int64)
    for e in range(1, prec + 1):
        result += (values % l ** e == 0)
    return result


@dataclass(frozen=True, eq=False)
class Echelon:
    """
    Howell-type echelon form of a row span over Z/l^N. Row i has its pivot
    l^valuations[i] in column pivots[i]; transform[i] writes it in terms of
    the original generators.
    """
    rows: np.ndarray
    pivots: tuple
    valuations: tuple
    transform: np.ndarray

    @classmethod
    def build(cls, generators, l, prec):
        modulus = l ** prec
        count, width = generators.shape
        active = generators % modulus
        active_transform = np.eye(count, dtype=np.int64)
        rows, transforms, pivots, pivot_valuations = [], [], [], []
        for column in range(width):
            if not len(active):
                break
            column_valuations = valuations(active[:, column], l, prec)
            best = int(np.argmin(column_valuations))
            v = int(column_valuations[best])
            if v >= prec:
                continue
            inverse = pow(int(active[best, column]) // l ** v, -1, modulus)
            pivot = active[best] * inverse % modulus
            pivot_transform = active_transform[best] * inverse % modulus

            others = np.delete(active, best, axis=0)
            others_transform = np.delete(active_transform, best, axis=0)
            factors = others[:, column] // l ** v
            others = (others - factors[:, None] * pivot) % modulus
            others_transform = (others_transform - factors[:, None] * pivot_transform) % modulus

            # the multiple killing the pivot stays in the span
            saturation = pivot * l ** (prec - v) % modulus
            if saturation.any():
                others = np.vstack([others, saturation])
                others_transform = np.vstack([others_transform, pivot_transform * l ** (prec - v) % modulus])

            keep = others.any(axis=1)
            active, active_transform = others[keep], others_transform[keep]
            rows.append(pivot)
            transforms.append(pivot_transform)
            pivots.append(column)
            pivot_valuations.append(v)

        return cls(
            rows=np.array(rows, dtype=np.int64).reshape(len(rows), width),
            pivots=tuple(pivots),
            valuations=tuple(pivot_valuations),
            transform=np.array(transforms, dtype=np.int64).reshape(len(rows), count),
        )


@dataclass(frozen=True, eq=False)
class Membership:
    member: bool
    coefficients: np.ndarray = None
    witness: dict = None

    def __bool__(self):
        return self.member

    def certificate(self, labels):
        if not self.member:
            return {'witness': self.witness}
        return {
            'coefficients': [
                [labels[i], int(c)] for i, c in enumerate(self.coefficients) if c
            ],
        }


@dataclass(frozen=True, eq=False)
class IdealSpan:
    """
    Z/l^prec-span of generator vectors living in the group ring of `model`
    (flattened (g, γ) coefficient arrays).
    """
    kind: str
    model: object
    generators: np.ndarray
    labels: tuple
    prec: int
    sources: tuple = None

    @property
    def l(self):
        return self.model.l

    @property
    def modulus(self):
        return self.l ** self.prec

    def __len__(self):
        return self.generators.shape[0]

    @cached_property
    def echelon(self):
        return Echelon.build(self.generators, self.l, self.prec)

    def rank(self):
        """Number of pivots; the span is isomorphic to ⊕ Z/l^(prec - v)"""
        return len(self.echelon.pivots)

    def is_zero(self):
        return self.rank() == 0

    def vector(self, x):
        coeffs = x.coeffs if hasattr(x, 'coeffs') else np.asarray(x)
        if coeffs.size != self.generators.shape[1]:
            raise ValueError('element lives in a different group ring')
        if hasattr(x, 'prec') and x.prec < self.prec:
            raise PrecisionExhausted('element known to lower precision than the span', prec=x.prec)
        return coeffs.reshape(-1).astype(np.int64) % self.modulus

    def membership(self, x):
        l, prec, modulus = self.l, self.prec, self.modulus
        residual = self.vector(x).copy()
        echelon = self.echelon
        quotients = np.zeros(len(echelon.pivots), dtype=np.int64)
        for i, (column, v) in enumerate(zip(echelon.pivots, echelon.valuations)):
            entry = int(residual[column])
            if entry == 0:
                continue
            if entry % l ** v:
                return Membership(False, witness={'column': column, 'residual': entry, 'pivot_valuation': v})
            quotients[i] = entry // l ** v
            residual = (residual - quotients[i] * echelon.rows[i]) % modulus
        if residual.any():
            column = int(np.flatnonzero(residual)[0])
            return Membership(False, witness={'column': column, 'residual': int(residual[column]), 'pivot_valuation': None})
        coefficients = quotients @ echelon.transform % modulus if len(quotients) else np.zeros(len(self), dtype=np.int64)
        if np.any((coefficients @ self.generators - self.vector(x)) % modulus):
            raise ArithmeticError('membership certificate does not reproduce the element')
        return Membership(True, coefficients=coefficients)

    def contains(self, x):
        return self.membership(x).member

    def certificate(self, x):
        result = self.membership(x)
        return result, result.certificate(self.labels)


@dataclass(frozen=True, eq=False)
class AModule:
    """
    Z-lattice of rank `rank` with the generator a of a cyclic group of
    order l acting on row vectors by x ↦ x·action.
    """
    l: int
    action: IntMatrix

    def __post_init__(self):
        power = IntMatrix.identity(self.rank)
        for _ in range(self.l):
            power = power @ self.action
        if power != IntMatrix.identity(self.rank):
            raise ValueError('the action does not have order dividing l')

    @property
    def rank(self):
        return self.action.shape[0]

    @classmethod
    def permutation(cls, l, images):
        """Permutation lattice with basis e_s ↦ e_images[s]"""
        size = len(images)
        rows = [[int(images[s] == t) for t in range(size)] for s in range(size)]
        return cls(l, IntMatrix.from_rows(rows, size))

    @classmethod
    def trivial(cls, l, rank):
        return cls(l, IntMatrix.identity(rank))

    @cached_property
    def norm(self):
        power = IntMatrix.identity(self.rank)
        entries = [[0] * self.rank for _ in range(self.rank)]
        for _ in range(self.l):
            for i in range(self.rank):
                for j in range(self.rank):
                    entries[i][j] += power[i, j]
            power = power @ self.action
        return IntMatrix.from_rows(entries, self.rank)

    @cached_property
    def augmentation(self):
        """a - 1"""
        return IntMatrix.from_rows(
            [[self.action[i, j] - int(i == j) for j in range(self.rank)] for i in range(self.rank)],
            self.rank,
        )


@dataclass(frozen=True)
class TateGroup:
    """Finite-type abelian group ⊕ Z/d_i ⊕ Z^free_rank"""
    degree: int
    invariants: tuple
    free_rank: int = 0

    def is_zero(self):
        return not self.invariants and not self.free_rank

    @property
    def order(self):
        if self.free_rank:
            return None
        return int(np.prod(self.invariants, dtype=object)) if self.invariants else 1

    def to_dict(self):
        return {'degree': self.degree, 'invariants': list(self.invariants), 'free_rank': self.free_rank}


@dataclass(frozen=True)
class BetaTerm:
    """β·g′(c - 1) with β = Σ row[γ]·γ"""
    gprime: int
    commutator: int
    row: tuple


@dataclass(frozen=True)
class BetaPrime:
    terms: tuple

    def element(self, marking, submodel, prec):
        """Σ β·(g′c - g′) in the group ring of G′ × Γ̄"""
        group = marking.group
        sub = marking.gprime_group
        coeffs = np.zeros(submodel.shape, dtype=np.int64)
        for term in self.terms:
            row = np.asarray(term.row, dtype=np.int64)
            coeffs[sub.local(group.mul(term.gprime, term.commutator))] += row
            coeffs[sub.local(term.gprime)] -= row
        return submodel.element(coeffs, prec)

    def to_dict(self, group):
        return [
            {'g': group.label(t.gprime), 'c': group.label(t.commutator), 'beta': list(t.row)}
            for t in self.terms
        ]

"""
The finite-level Γ-side algebra (Z/l^N)[ζ][Γ̄] with Γ̄ = Z/l^M.

An element is an (l^M, φ) integer array: row γ holds the cyclotomic
coefficient of the group-like element γ.
"""
from dataclasses import dataclass

import numpy as np

from rings.exceptions import PrecisionExhausted
from rings.models import CycloRing, CycloScalar, TruncatedAlgebraElement
from rings.services import teichmuller

from .exceptions import NoConvergence, OutOfModel

WIDTH_LIMIT = 2 ** 62


@dataclass(frozen=True)
class GammaAlgebra:
    l: int
    gamma_exponent: int
    level: int
    prec: int

    @property
    def ring(self):
        return CycloRing(self.l, self.level)

    @property
    def gamma_order(self):
        return self.l ** self.gamma_exponent

    @property
    def degree(self):
        return self.ring.degree

    @property
    def shape(self):
        return (self.gamma_order, self.degree)

    def product_dtype(self, prec):
        bound = self.l ** (2 * prec) * self.gamma_order * self.degree
        return np.int64 if bound < WIDTH_LIMIT else object

    def element(self, coeffs, prec=None):
        return GammaElt(self, coeffs, self.prec if prec is None else prec)

    def zero(self, prec=None):
        return self.element(np.zeros(self.shape, dtype=np.int64), prec)

    def one(self, prec=None):
        return self.group_like(0, prec=prec)

    def group_like(self, gamma, scalar=1, prec=None):
        """scalar · γ for an integer or cyclotomic scalar"""
        coeffs = np.zeros(self.shape, dtype=np.int64)
        if isinstance(scalar, CycloScalar):
            coeffs[gamma % self.gamma_order] = scalar.coeffs
        else:
            coeffs[gamma % self.gamma_order] = self.ring.one() * int(scalar)
        return self.element(coeffs, prec)

    def random_element(self, rng, prec=None, unit=False):
        prec = self.prec if prec is None else prec
        coeffs = rng.integers(0, self.l ** prec, size=self.shape, dtype=np.int64)
        if unit and coeffs.sum() % self.l == 0:
            coeffs[0, 0] += 1
        return self.element(coeffs, prec)


@dataclass(frozen=True, eq=False)
class GammaElt(TruncatedAlgebraElement):
    algebra: GammaAlgebra
    coeffs: np.ndarray
    prec: int

    non_unit_error = OutOfModel
    convergence_error = NoConvergence

    def __post_init__(self):
        if self.prec < 1:
            raise PrecisionExhausted('precision below 1', prec=self.prec)
        coeffs = np.asarray(self.coeffs)
        if coeffs.shape != self.algebra.shape:
            raise ValueError(f'expected shape {self.algebra.shape}, got {coeffs.shape}')
        object.__setattr__(self, 'coeffs', (coeffs % self.modulus).astype(np.int64))

    @property
    def l(self):
        return self.algebra.l

    def one(self):
        return self.algebra.one(self.prec)

    def _build(self, coeffs, prec):
        return GammaElt(self.algebra, coeffs, prec)

    def _coerce(self, other):
        if isinstance(other, GammaElt):
            if other.algebra != self.algebra:
                raise ValueError('elements of different Γ-algebras')
            return other
        if isinstance(other, CycloScalar):
            return self.algebra.group_like(0, other, prec=self.prec if other.prec is None else other.prec)
        return self.algebra.group_like(0, int(other), prec=self.prec)

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
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        return self._build(self._convolve(self.coeffs, other.coeffs, prec), prec)

    __rmul__ = __mul__

    def _convolve(self, a, b, prec):
        """
        Group-algebra product. Rows are packed with stride 2φ-1 so a single
        1-d convolution multiplies both the Γ̄ part and the ζ part.
        """
        order, degree = self.algebra.shape
        stride = 2 * degree - 1
        dtype = self.algebra.product_dtype(prec)
        packed = []
        for coeffs in (a, b):
            padded = np.zeros((order, stride), dtype=dtype)
            padded[:, :degree] = coeffs
            packed.append(padded.ravel())
        product = np.convolve(packed[0], packed[1])
        product = np.concatenate([product, np.zeros(1, dtype=product.dtype)]).reshape(2 * order, stride)
        folded = product[:order] + product[order:]
        return self.algebra.ring.reduce(folded, self.l ** prec)

    def __eq__(self, other):
        if not isinstance(other, (GammaElt, CycloScalar, int)):
            return NotImplemented
        other = self._coerce(other)
        common = min(self.prec, other.prec)
        return not np.any((self.coeffs - other.coeffs) % self.l ** common)

    __hash__ = None

    def coefficient(self, gamma):
        return CycloScalar(self.algebra.ring, self.coeffs[gamma % self.algebra.gamma_order], self.prec)

    def is_rational(self):
        return self.algebra.ring.is_rational(self.coeffs)

    def psi(self):
        """Ring endomorphism γ ↦ γ^l, fixing the cyclotomic coefficients"""
        order = self.algebra.gamma_order
        out = np.zeros_like(self.coeffs)
        np.add.at(out, (self.l * np.arange(order)) % order, self.coeffs)
        return self._build(out, self.prec)

    def galois(self, u):
        return self._build(self.algebra.ring.galois(self.coeffs, u), self.prec)

    def twist_sharp(self, sigma):
        """ρ_σ^♯: γ ↦ ρ_σ(γ)γ with ρ_σ(γ) = ζ_{l^M}^{σγ}"""
        algebra = self.algebra
        if algebra.level < algebra.gamma_exponent:
            raise OutOfModel(
                'twisting needs the cyclotomic level to reach the order of Γ̄',
                level=algebra.level, gamma_exponent=algebra.gamma_exponent,
            )
        scale = self.l ** (algebra.level - algebra.gamma_exponent)
        shifts = (sigma * np.arange(algebra.gamma_order) * scale) % algebra.ring.order
        return self._build(algebra.ring.rotate_rows(self.coeffs, shifts), self.prec)

    def normalized_power(self, max_power):
        """
        (y^(l^s), s) where y is x over the Teichmüller lift of its residue and
        s is the least exponent with y^(l^s) ≡ 1 mod l.
        """
        residue = self.augmentation() % self.l
        if residue == 0:
            raise NoConvergence('no l-power of a non-unit is ≡ 1 mod l')
        omega = teichmuller(residue, self.l, self.prec)
        y = self.scale(pow(omega, -1, self.modulus))
        s = 0
        while not y.is_one_mod_l():
            if s >= max_power:
                raise NoConvergence('no l-power within bound is ≡ 1 mod l', bound=max_power)
            y = y ** self.l
            s += 1
        return y, s

    def plog(self, max_power):
        """(1/l^s) log(x^(l^s)), the torsion part of the residue removed first"""
        y, s = self.normalized_power(max_power)
        return y.log_one_plus().exact_div_l(s)

    def to_dict(self):
        return {
            'prec': self.prec,
            'gamma_order': self.algebra.gamma_order,
            'level': self.algebra.level,
            'coeffs': {str(g): [int(c) for c in row] for g, row in enumerate(self.coeffs) if row.any()},
        }

    def __repr__(self):
        terms = []
        for gamma, row in enumerate(self.coeffs):
            if row.any():
                terms.append(f'{CycloScalar(self.algebra.ring, row)!r}·γ^{gamma}')
        return (' + '.join(terms) or '0') + f' + O({self.l}^{self.prec})'

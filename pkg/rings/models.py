"""
Scalar rings used throughout the workbench.

PadicScalar is an element of Z/l^N carrying its own absolute precision N.
CycloRing fixes a level m and does vectorised arithmetic on coefficient
vectors against the power basis 1, ζ, ..., ζ^(φ-1) of Z[ζ], ζ of order l^m.
CycloScalar wraps one such vector. A precision of None means exact integer
arithmetic, which is what character values use.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from .exceptions import BadUnit, NotDivisible, PrecisionExhausted


def min_precision(*precisions):
    """Smallest known precision; None stands for exact"""
    known = [p for p in precisions if p is not None]
    return min(known) if known else None


def l_valuation(value, l):
    """Valuation of a non-zero integer; None for zero"""
    value = int(value)
    if value == 0:
        return None
    count = 0
    while value % l == 0:
        value //= l
        count += 1
    return count


def array_valuation(coeffs, l, prec):
    """Minimal valuation of the entries, capped at prec (prec if all vanish)"""
    nonzero = [int(c) for c in np.ravel(coeffs) if int(c) != 0]
    if not nonzero:
        return prec
    lowest = min(l_valuation(c, l) for c in nonzero)
    return lowest if prec is None else min(lowest, prec)


def divide_coefficients(coeffs, l, r, prec):
    """
    Divide an integer coefficient array by l^r.
    Returns (quotient, new_prec); raises when a coefficient is not divisible
    or when the precision would fall below 1.
    """
    if r == 0:
        return coeffs, prec
    known = r if prec is None else min(r, prec)
    if np.any(coeffs % l ** known):
        raise NotDivisible('coefficients are not divisible by l^r', r=r)
    if prec is not None and prec - r < 1:
        raise PrecisionExhausted(
            'division by l^r exhausts the precision', r=r, prec=prec
        )
    divisor = l ** r
    quotient = coeffs // divisor
    new_prec = None if prec is None else prec - r
    if new_prec is not None:
        quotient = quotient % (l ** new_prec)
    return quotient, new_prec


@dataclass(frozen=True, eq=False)
class PadicScalar:
    """Residue mod l^prec"""
    l: int
    value: int
    prec: int

    def __post_init__(self):
        if self.prec < 1:
            raise PrecisionExhausted('precision below 1', prec=self.prec)
        object.__setattr__(self, 'value', int(self.value) % self.l ** self.prec)

    @property
    def modulus(self):
        return self.l ** self.prec

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.l != self.l:
                raise ValueError('scalars over different primes')
            return other
        return PadicScalar(self.l, int(other), self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.l, self.value + other.value, min(self.prec, other.prec))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.l, self.value - other.value, min(self.prec, other.prec))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.l, self.value * other.value, min(self.prec, other.prec))

    __rmul__ = __mul__

    def __neg__(self):
        return PadicScalar(self.l, -self.value, self.prec)

    def __pow__(self, exponent):
        return PadicScalar(self.l, pow(self.value, exponent, self.modulus), self.prec)

    def __eq__(self, other):
        if not isinstance(other, (PadicScalar, int)):
            return NotImplemented
        other = self._coerce(other)
        common = min(self.prec, other.prec)
        return (self.value - other.value) % self.l ** common == 0

    __hash__ = None

    def valuation(self):
        v = l_valuation(self.value, self.l)
        return self.prec if v is None else v

    def is_unit(self):
        return self.value % self.l != 0

    def inverse(self):
        if not self.is_unit():
            raise BadUnit('scalar is not a unit', value=self.value)
        return PadicScalar(self.l, pow(self.value, -1, self.modulus), self.prec)

    def exact_div_l(self, r):
        quotient, prec = divide_coefficients(np.array([self.value], dtype=object), self.l, r, self.prec)
        return PadicScalar(self.l, int(quotient[0]), prec)

    def with_precision(self, prec):
        return PadicScalar(self.l, self.value, min(prec, self.prec))

    def __repr__(self):
        return f'{self.value} + O({self.l}^{self.prec})'


@dataclass(frozen=True)
class CycloRing:
    """
    Z[ζ] with ζ of order l^level, in the power basis of length φ(l^level).
    All methods act on the last axis of integer arrays.
    """
    l: int
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError('cyclotomic level must be at least 1')

    @property
    def order(self):
        return self.l ** self.level

    @property
    def block(self):
        return self.l ** (self.level - 1)

    @property
    def degree(self):
        return self.order - self.block

    def reduce(self, coeffs, modulus=None):
        """
        Canonical form of an exponent vector of any length: fold exponents
        mod l^level, then use Φ(X) = Σ_{i<l} X^(i·l^(level-1)) = 0 on the top block.
        """
        coeffs = np.asarray(coeffs)
        lead = coeffs.shape[:-1]
        folded = np.zeros(lead + (self.order,), dtype=coeffs.dtype)
        length = coeffs.shape[-1]
        for start in range(0, length, self.order):
            chunk = coeffs[..., start:start + self.order]
            folded[..., :chunk.shape[-1]] += chunk
        out = folded[..., :self.degree].copy()
        top = folded[..., self.degree:]
        for i in range(self.l - 1):
            out[..., i * self.block:(i + 1) * self.block] -= top
        if modulus is not None:
            out %= modulus
        return out

    def multiply(self, a, b, modulus=None):
        a = np.asarray(a)
        b = np.asarray(b)
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        dtype = np.result_type(a, b)
        out = np.zeros(shape + (2 * self.degree - 1,), dtype=dtype)
        for i in range(self.degree):
            out[..., i:i + self.degree] += a[..., i:i + 1] * b
        return self.reduce(out, modulus)

    def root(self, k, dtype=np.int64):
        vector = np.zeros(self.order, dtype=dtype)
        vector[k % self.order] = 1
        return self.reduce(vector)

    def one(self, dtype=np.int64):
        return self.root(0, dtype)

    def _permute_exponents(self, coeffs, exponents):
        coeffs = np.asarray(coeffs)
        out = np.zeros(coeffs.shape[:-1] + (self.order,), dtype=coeffs.dtype)
        out[..., exponents] = coeffs
        return self.reduce(out)

    def galois(self, coeffs, u):
        """σ_u: ζ ↦ ζ^u"""
        if u % self.l == 0:
            raise BadUnit('Galois exponent must be prime to l', u=u)
        exponents = (np.arange(self.degree) * u) % self.order
        return self._permute_exponents(coeffs, exponents)

    def conjugate(self, coeffs):
        return self.galois(coeffs, -1)

    def rotate(self, coeffs, k):
        """Multiply by ζ^k"""
        exponents = (np.arange(self.degree) + k) % self.order
        return self._permute_exponents(coeffs, exponents)

    def rotate_rows(self, coeffs, shifts):
        """Multiply row i of a 2-d array by ζ^shifts[i]"""
        coeffs = np.asarray(coeffs)
        shifts = np.asarray(shifts, dtype=np.int64)
        exponents = (np.arange(self.degree)[None, :] + shifts[:, None]) % self.order
        out = np.zeros((coeffs.shape[0], self.order), dtype=coeffs.dtype)
        np.put_along_axis(out, exponents, coeffs, axis=1)
        return self.reduce(out)

    def embed(self, coeffs, from_level):
        """Image of Z[ζ_{l^from_level}] inside this ring"""
        if from_level > self.level:
            raise ValueError('cannot embed a larger cyclotomic level')
        source = CycloRing(self.l, from_level)
        scale = self.l ** (self.level - from_level)
        exponents = np.arange(source.degree) * scale
        return self._permute_exponents(coeffs, exponents)

    def exponent_vectors(self, exponents, dtype=np.int64):
        """Rows ζ^e for an integer array of exponents"""
        exponents = np.asarray(exponents, dtype=np.int64)
        out = np.zeros(exponents.shape + (self.order,), dtype=dtype)
        np.put_along_axis(out, (exponents % self.order)[..., None], 1, axis=-1)
        return self.reduce(out)

    def is_rational(self, coeffs):
        return not np.any(np.asarray(coeffs)[..., 1:])


@dataclass(frozen=True, eq=False)
class CycloScalar:
    """Element of (Z/l^prec)[ζ]; prec None means exact"""
    ring: CycloRing
    coeffs: np.ndarray
    prec: int = None

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=np.int64)
        if coeffs.shape != (self.ring.degree,):
            coeffs = self.ring.reduce(coeffs)
        if self.prec is not None:
            if self.prec < 1:
                raise PrecisionExhausted('precision below 1', prec=self.prec)
            coeffs = coeffs % self.modulus
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def l(self):
        return self.ring.l

    @property
    def modulus(self):
        return None if self.prec is None else self.l ** self.prec

    @classmethod
    def from_int(cls, ring, value, prec=None):
        return cls(ring, ring.one() * int(value), prec)

    @classmethod
    def zeta(cls, ring, k=1, prec=None):
        return cls(ring, ring.root(k), prec)

    def _coerce(self, other):
        if isinstance(other, CycloScalar):
            if other.ring != self.ring:
                raise ValueError('scalars from different cyclotomic rings')
            return other
        return CycloScalar.from_int(self.ring, other, self.prec)

    def _build(self, coeffs, prec):
        return CycloScalar(self.ring, coeffs, prec)

    def __add__(self, other):
        other = self._coerce(other)
        return self._build(self.coeffs + other.coeffs, min_precision(self.prec, other.prec))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self._build(self.coeffs - other.coeffs, min_precision(self.prec, other.prec))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._build(-self.coeffs, self.prec)

    def __mul__(self, other):
        other = self._coerce(other)
        prec = min_precision(self.prec, other.prec)
        modulus = None if prec is None else self.l ** prec
        return self._build(self.ring.multiply(self.coeffs, other.coeffs, modulus), prec)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = CycloScalar.from_int(self.ring, 1, self.prec)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, (CycloScalar, int)):
            return NotImplemented
        other = self._coerce(other)
        prec = min_precision(self.prec, other.prec)
        difference = self.coeffs - other.coeffs
        if prec is not None:
            difference = difference % self.l ** prec
        return not np.any(difference)

    __hash__ = None

    def galois(self, u):
        return self._build(self.ring.galois(self.coeffs, u), self.prec)

    def valuation(self):
        return array_valuation(self.coeffs, self.l, self.prec)

    def exact_div_l(self, r):
        coeffs, prec = divide_coefficients(self.coeffs, self.l, r, self.prec)
        return self._build(coeffs, prec)

    def padic_coefficients(self):
        if self.prec is None:
            raise ValueError('exact scalars have no p-adic coefficients')
        return tuple(PadicScalar(self.l, int(c), self.prec) for c in self.coeffs)

    def __repr__(self):
        terms = [f'{int(c)}ζ^{i}' for i, c in enumerate(self.coeffs) if c]
        body = ' + '.join(terms) if terms else '0'
        suffix = '' if self.prec is None else f' + O({self.l}^{self.prec})'
        return f'({body}){suffix}'


@dataclass(frozen=True)
class IntMatrix:
    """Exact integer matrix"""
    entries: tuple
    shape: tuple

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise ValueError('ragged matrix')
        return cls(rows, (len(rows), ncols))

    @classmethod
    def identity(cls, size):
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], size)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls.from_rows([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_domain_matrix(cls, matrix):
        nrows, ncols = matrix.shape
        return cls.from_rows([[int(x) for x in row] for row in matrix.to_list()], ncols)

    def to_domain_matrix(self):
        return DomainMatrix([[ZZ(x) for x in row] for row in self.entries], self.shape, ZZ)

    @cached_property
    def array(self):
        return np.array(self.entries, dtype=object).reshape(self.shape)

    def __getitem__(self, index):
        row, column = index
        return self.entries[row][column]

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise ValueError('shape mismatch')
        product = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.shape[1]))
             for j in range(other.shape[1])]
            for i in range(self.shape[0])
        ]
        return IntMatrix.from_rows(product, other.shape[1])

    def transpose(self):
        return IntMatrix.from_rows(
            [[self.entries[i][j] for i in range(self.shape[0])] for j in range(self.shape[1])],
            self.shape[0],
        )

    def determinant(self):
        if self.shape[0] != self.shape[1]:
            raise ValueError('determinant of a non-square matrix')
        if self.shape[0] == 0:
            return 1
        return int(self.to_domain_matrix().det())

    def inverse_unimodular(self):
        if self.shape[0] == 0:
            return self
        inverse = sympy.Matrix(self.entries).inv()
        if any(not x.is_integer for x in inverse):
            raise ValueError('matrix is not unimodular')
        return IntMatrix.from_rows(inverse.tolist(), self.shape[0])

    def diagonal(self):
        return tuple(self.entries[i][i] for i in range(min(self.shape)))

    def is_diagonal(self):
        return all(
            self.entries[i][j] == 0
            for i in range(self.shape[0])
            for j in range(self.shape[1])
            if i != j
        )

    def columns(self, indices):
        return IntMatrix.from_rows(
            [[row[j] for j in indices] for row in self.entries], len(indices)
        )

    def rows_slice(self, start, stop=None):
        rows = self.entries[start:stop]
        return IntMatrix.from_rows(rows, self.shape[1])


def floor_log(k, l):
    """floor(log_l k) for k ≥ 1"""
    count = 0
    while k >= l:
        k //= l
        count += 1
    return count


def split_l_part(k, l):
    """k = l^v · k′ with k′ prime to l; returns (v, k′)"""
    v = 0
    while k % l == 0:
        k //= l
        v += 1
    return v, k


class TruncatedAlgebraElement:
    """
    Unit arithmetic shared by the truncated algebras: an integer coefficient
    array `coeffs` reduced mod l^prec whose identity is `one()`.
    Subclasses name the errors raised for non-units and stalled iterations.
    """
    non_unit_error = BadUnit
    convergence_error = PrecisionExhausted
    newton_limit = 64

    @property
    def modulus(self):
        return self.l ** self.prec

    def one(self):
        raise NotImplementedError

    def _build(self, coeffs, prec):
        raise NotImplementedError

    def scale(self, n):
        """Multiply by an integer scalar"""
        n = int(n) % self.modulus
        return self._build(self.coeffs.astype(object) * n % self.modulus, self.prec)

    def is_zero(self):
        return not np.any(self.coeffs)

    def augmentation(self):
        """Image under every group-like and ζ going to 1, mod l^prec"""
        return int(self.coeffs.astype(object).sum()) % self.modulus

    def is_unit(self):
        return self.augmentation() % self.l != 0

    def is_one_mod_l(self):
        return not np.any((self.coeffs - self.one().coeffs) % self.l)

    def valuation(self):
        return array_valuation(self.coeffs, self.l, self.prec)

    def with_precision(self, prec):
        return self._build(self.coeffs, min(prec, self.prec))

    def exact_div_l(self, r):
        coeffs, prec = divide_coefficients(self.coeffs.astype(object), self.l, r, self.prec)
        return self._build(coeffs, prec)

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self):
        """Newton lifting y ← y(2 - xy) from the inverse of the residue"""
        if not self.is_unit():
            raise self.non_unit_error('inverse of a non-unit', augmentation=self.augmentation())
        one = self.one()
        y = one.scale(pow(self.augmentation(), -1, self.modulus))
        for _ in range(self.newton_limit):
            error = one - self * y
            if error.is_zero():
                return y
            y = y * (one + error)
        raise self.convergence_error('Newton inversion did not converge', prec=self.prec)

    def log_one_plus(self):
        """
        log(z) for z ≡ 1 mod l via Σ (-1)^(k+1) l^(k - v(k)) w^k / k′ with
        z = 1 + l·w and k = l^v(k) k′; no precision is lost.
        """
        if not self.is_one_mod_l():
            raise self.convergence_error('log series needs z ≡ 1 mod l')
        l, prec = self.l, self.prec
        one = self.one()
        w = self._build((self.coeffs - one.coeffs) // l, prec)
        total = self._build(np.zeros_like(self.coeffs), prec)
        power = one
        k = 1
        while k - floor_log(k, l) < prec:
            power = power * w
            v, unit = split_l_part(k, l)
            if k - v < prec:
                total = total + power.scale((-1) ** (k + 1) * l ** (k - v) * pow(unit, -1, self.modulus))
            k += 1
        return total

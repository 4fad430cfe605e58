import logging

from sympy.polys.matrices.normalforms import smith_normal_decomp

from .exceptions import BadUnit
from .models import IntMatrix

logger = logging.getLogger(__name__)


class RingService:
    """Operations on scalar rings shared by the other apps"""

    @staticmethod
    def exact_div_l(x, r):
        """Divide x by l^r, losing r digits of precision"""
        return x.exact_div_l(r)

    @staticmethod
    def galois_act(u, x):
        return x.galois(u)

    @staticmethod
    def teichmuller(value, l, prec):
        """Teichmüller lift of value mod l to Z/l^prec"""
        if value % l == 0:
            raise BadUnit('Teichmüller lift of a non-unit', value=value)
        return pow(int(value), l ** (prec - 1), l ** prec)

    @staticmethod
    def smith_normal_form(matrix):
        """
        Returns (U, D, V) with U·M·V = D, U and V unimodular and D diagonal
        with non-negative entries d_1 | d_2 | ... .
        """
        nrows, ncols = matrix.shape
        if nrows == 0 or ncols == 0:
            return IntMatrix.identity(nrows), matrix, IntMatrix.identity(ncols)

        smith, left, right = smith_normal_decomp(matrix.to_domain_matrix())
        left_rows = [[int(x) for x in row] for row in left.to_list()]
        smith_rows = [[int(x) for x in row] for row in smith.to_list()]
        for i in range(min(nrows, ncols)):
            if smith_rows[i][i] < 0:
                smith_rows[i][i] = -smith_rows[i][i]
                left_rows[i] = [-x for x in left_rows[i]]

        U = IntMatrix.from_rows(left_rows, nrows)
        D = IntMatrix.from_rows(smith_rows, ncols)
        V = IntMatrix.from_rows(right.to_list(), ncols)
        if U @ matrix @ V != D:
            logger.error('Smith normal form check failed for a %dx%d matrix', nrows, ncols)
            raise ArithmeticError('Smith normal form does not reproduce the matrix')
        return U, D, V

    @staticmethod
    def laplace_determinant(matrix):
        """
        Determinant of a square matrix over any commutative ring whose
        elements support +, - and *. Cofactor expansion along rows with the
        minors memoized by their column set, so the cost is 2^n products.
        """
        size = len(matrix)
        if size == 0:
            raise ValueError('empty determinant')
        memo = {}

        def minor(row, columns):
            if row == size - 1:
                return matrix[row][columns[0]]
            if columns in memo:
                return memo[columns]
            total = None
            for position, column in enumerate(columns):
                rest = columns[:position] + columns[position + 1:]
                term = matrix[row][column] * minor(row + 1, rest)
                if position % 2:
                    term = -term
                total = term if total is None else total + term
            memo[columns] = total
            return total

        return minor(0, tuple(range(size)))


exact_div_l = RingService.exact_div_l
galois_act = RingService.galois_act
smith_normal_form = RingService.smith_normal_form
laplace_determinant = RingService.laplace_determinant
teichmuller = RingService.teichmuller

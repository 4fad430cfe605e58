import logging

import numpy as np
from django.conf import settings

from characters.services import adams, induce
from lgroups.services import GroupService
from rings.exceptions import NotDivisible
from rings.models import divide_coefficients, l_valuation
from rings.services import laplace_determinant

from .exceptions import FrobeniusMismatch, NotAUnit, NotInImage
from .models import (
    FAILED, HOM, HOM_STAR, UNKNOWN, VERIFIED,
    GroupRingElement, HomElement, ModeledGroup, TraceElement,
)

logger = logging.getLogger(__name__)


def all_sigmas(model):
    return tuple(range(1, model.gamma_order))


class TraceService:

    @staticmethod
    def tau(x):
        """Sum coefficients over conjugacy classes"""
        model = x.model
        classes = model.group.classes
        out = np.zeros((len(classes), model.gamma_order), dtype=np.int64)
        np.add.at(out, classes.class_of, x.coeffs)
        return TraceElement(model, out, x.prec)

    @staticmethod
    def tr_hom(t, sigmas=()):
        """Tr(Σ t[c, γ] τ(c, γ))(χ ⊗ σ) = Σ t[c, γ] χ(c) ρ_σ(γ) [pi(c) + γ]"""
        model = t.model
        table = model.table
        algebra = model.algebra(t.prec)
        return HomElement(
            model,
            HOM_STAR,
            TraceService._trace_values(t, table, algebra, 0),
            {sigma: TraceService._trace_values(t, table, algebra, sigma) for sigma in sigmas} or None,
        )

    @staticmethod
    def _trace_values(t, table, algebra, sigma):
        model = t.model
        ring = model.ring
        L = model.gamma_order
        reps = np.array(table.classes.reps)
        modulus = model.l ** t.prec
        values = []
        for k in range(len(table)):
            out = np.zeros(algebra.shape, dtype=np.int64)
            for gamma in range(L):
                column = t.coeffs[:, gamma]
                if not column.any():
                    continue
                chi = table.values[k]
                if sigma:
                    chi = ring.rotate(chi, sigma * gamma * model.twist_scale)
                np.add.at(out, (model.pi[reps] + gamma) % L, column[:, None] * chi)
            values.append(algebra.element(out % modulus))
        return tuple(values)

    @staticmethod
    def tr_inverse(f):
        """
        Recover t with Tr t = f from column orthogonality:
        t[c, γ] = (1/|C(c)|) Σ_k conj χ_k(c) f(χ_k) at [pi(c) + γ].
        """
        if f.kind != HOM_STAR:
            raise ValueError('Tr⁻¹ applies to Hom* elements')
        model = f.model
        table = model.table
        ring = model.ring
        classes = table.classes
        l, L = model.l, model.gamma_order
        prec = f.prec
        modulus = l ** prec
        conjugates = ring.conjugate(table.values)
        shifts = np.arange(L)
        rows = []
        losses = []
        for c, rep in enumerate(classes.reps):
            total = np.zeros((L, ring.degree), dtype=np.int64)
            for k, value in enumerate(f.values):
                total = (total + ring.multiply(conjugates[k, c], value.coeffs, modulus)) % modulus
            if np.any(total[:, 1:]):
                raise NotInImage('Hom* value is not rational on a class', cls=table.group.labels[rep])
            loss = l_valuation(classes.centralizer_order(c), l)
            try:
                row, _ = divide_coefficients(total[(model.pi[rep] + shifts) % L, 0].astype(object), l, loss, prec)
            except NotDivisible as exc:
                raise NotInImage('Hom* value is not the trace of an integral element', cls=table.group.labels[rep]) from exc
            rows.append(row)
            losses.append(loss)
        return TraceElement(model, np.array(rows, dtype=object).astype(np.int64), prec - max(losses))

    @staticmethod
    def representation_block(model, k, coeffs, prec, sigma=0):
        """
        d × d matrix of Γ-algebra elements Σ c[g, γ] ρ_k(g) ρ_σ(γ) [pi(g) + γ]
        for the monomial representation ρ_k of the model's table.
        """
        rep = model.table.monomial(k)
        ring = model.ring
        L = model.gamma_order
        degree = rep.degree
        elements, gammas = np.nonzero(coeffs)
        weights = coeffs[elements, gammas]
        accumulator = np.zeros((degree, degree, L, ring.order), dtype=np.int64)
        positions = (model.pi[elements] + gammas) % L
        for j in range(degree):
            exponents = (rep.exponents[elements, j] + sigma * gammas * model.twist_scale) % ring.order
            np.add.at(accumulator, (rep.rows[elements, j], j, positions, exponents), weights)
        reduced = ring.reduce(accumulator, model.l ** prec)
        algebra = model.algebra(prec)
        return [[algebra.element(reduced[i, j]) for j in range(degree)] for i in range(degree)]

    @staticmethod
    def matrix_determinant(model, k, entries, prec, sigma=0):
        """Det of a square matrix over the group ring, evaluated at χ_k ⊗ σ through block matrices"""
        size = len(entries)
        blocks = [
            [TraceService.representation_block(model, k, entries[i][j].coeffs, prec, sigma) for j in range(size)]
            for i in range(size)
        ]
        degree = len(blocks[0][0])
        full = [
            [blocks[i // degree][j // degree][i % degree][j % degree] for j in range(size * degree)]
            for i in range(size * degree)
        ]
        return laplace_determinant(full)

    @staticmethod
    def det_hom(u, sigmas=None):
        """Det u(χ ⊗ σ) = det Σ u[g, γ] ρ_χ(g) ρ_σ(γ) [pi(g) + γ]"""
        if not u.is_unit():
            raise NotAUnit('Det needs a unit', augmentation=u.augmentation())
        return TraceService._determinant_hom(u.model, [[u]], u.prec, sigmas)

    @staticmethod
    def _determinant_hom(model, entries, prec, sigmas):
        if sigmas is None:
            sigmas = all_sigmas(model)
        count = len(model.table)

        def slice_values(sigma):
            return tuple(TraceService.matrix_determinant(model, k, entries, prec, sigma) for k in range(count))

        return HomElement(
            model,
            HOM,
            slice_values(0),
            {sigma: slice_values(sigma) for sigma in sigmas} or None,
        )

    @staticmethod
    def hom_axioms(f):
        """
        Galois stability, W-twist compatibility and, for HOM elements, the
        congruence f(χ)^l ≡ Ψ f(ψ_l χ) mod l. Returns the flagged element and a report.
        """
        table = f.table
        l = f.l
        failures = []

        galois = VERIFIED
        for u, permutation in table.galois_permutations.items():
            for k in range(len(table)):
                if not f.values[permutation[k]] == f.values[k].galois(u):
                    galois = FAILED
                    failures.append({'axiom': 'galois_stable', 'u': u, 'character': k})

        twist = UNKNOWN
        if f.twisted:
            twist = VERIFIED
            permutations = f.model.twist_permutations
            for sigma, values in sorted(f.twisted.items()):
                for k, value in enumerate(values):
                    if not value == f.values[permutations[sigma][k]].twist_sharp(sigma):
                        twist = FAILED
                        failures.append({'axiom': 'twist_compatible', 'sigma': sigma, 'character': k})

        integral = UNKNOWN
        if f.kind == HOM:
            integral = VERIFIED
            for k in range(len(table)):
                lhs = f.values[k] ** l
                rhs = f.evaluate(adams(table.irreducible(k), l)).psi()
                if np.any((lhs.coeffs - rhs.coeffs) % l):
                    integral = FAILED
                    failures.append({'axiom': 'integral', 'character': k})

        flags = {'galois_stable': galois, 'twist_compatible': twist, 'integral': integral}
        if failures:
            logger.warning('Hom axioms failed on %s: %d failures', f.model.group.name, len(failures))
        return f.with_flags(flags), {**flags, 'failures': failures}

    @staticmethod
    def big_l(f):
        """(L f)(χ) = (1/l) log(f(χ)^l / Ψ f(ψ_l χ))"""
        if f.kind != HOM:
            raise ValueError('L applies to HOM elements')
        table = f.table
        l = f.l
        adams_images = [adams(chi, l) for chi in table.irreducibles()]

        def slice_values(sigma):
            values = []
            for k, image in enumerate(adams_images):
                ratio = f.value(k, sigma) ** l * f.evaluate(image, l * sigma).psi().inverse()
                values.append(ratio.log_one_plus().exact_div_l(1))
            return tuple(values)

        twisted = None
        if f.twisted:
            twisted = {sigma: slice_values(sigma) for sigma in sorted(f.twisted)}
        return HomElement(f.model, HOM_STAR, slice_values(0), twisted)

    @staticmethod
    def big_l_split(f, max_power=None):
        """
        L f through plog on each factor: with A, B the normalized l^s-th
        powers of f(χ) and f(ψ_l χ), (L f)(χ) = (l·log A - Ψ log B) / l^(s+1).
        """
        if max_power is None:
            max_power = settings.WORKBENCH['PLOG_MAX_POWER']
        table = f.table
        l = f.l
        values = []
        for k, chi in enumerate(table.irreducibles()):
            a, s_a = f.values[k].normalized_power(max_power)
            b, s_b = f.evaluate(adams(chi, l)).normalized_power(max_power)
            s = max(s_a, s_b)
            a = a ** (l ** (s - s_a))
            b = b ** (l ** (s - s_b))
            numerator = a.log_one_plus().scale(l) - b.log_one_plus().psi()
            values.append(numerator.exact_div_l(s + 1))
        return HomElement(f.model, HOM_STAR, tuple(values))

    @staticmethod
    def integral_log_unit(y):
        """(1/l) log(y^l / Ψ(y)) in a commutative group ring"""
        if not y.model.group.is_abelian():
            raise ValueError('the integral logarithm is computed over abelian groups only')
        if not y.is_unit():
            raise NotAUnit('integral logarithm of a non-unit', augmentation=y.augmentation())
        ratio = y ** y.l * y.psi().inverse()
        return ratio.log_one_plus().exact_div_l(1)

    @staticmethod
    def ll(u, sigmas=()):
        """Trace-level logarithm Tr⁻¹(L(Det u))"""
        return TraceService.tr_inverse(TraceService.big_l(TraceService.det_hom(u, sigmas)))

    @staticmethod
    def quotient_model(model, quotient_map):
        return ModeledGroup.quotient_of(model, quotient_map)

    @staticmethod
    def deflate(obj, quotient_map, target=None):
        """Push a group-ring, trace or Hom element along G → G/N"""
        if target is None:
            target = ModeledGroup.quotient_of(obj.model, quotient_map)
        projection = quotient_map.projection
        if isinstance(obj, GroupRingElement):
            out = np.zeros(target.shape, dtype=np.int64)
            np.add.at(out, projection, obj.coeffs)
            return target.element(out, obj.prec)
        if isinstance(obj, TraceElement):
            source_classes = obj.model.group.classes
            target_classes = target.group.classes
            out = np.zeros((len(target_classes), target.gamma_order), dtype=np.int64)
            image = target_classes.class_of[projection[np.array(source_classes.reps)]]
            np.add.at(out, image, obj.coeffs)
            return TraceElement(target, out, obj.prec)
        if isinstance(obj, HomElement):
            inflations = TraceService.inflations(obj.model, target, quotient_map)
            values = tuple(obj.evaluate(virtual) for virtual in inflations)
            twisted = None
            if obj.twisted:
                twisted = {
                    sigma: tuple(obj.evaluate(virtual, sigma) for virtual in inflations)
                    for sigma in sorted(obj.twisted)
                }
            return HomElement(target, obj.kind, values, twisted)
        raise TypeError(f'cannot deflate {type(obj).__name__}')

    @staticmethod
    def inflations(model, target, quotient_map):
        """Each irreducible of G/N as a virtual character of G"""
        table = model.table
        target_table = target.table
        reps = np.array(table.classes.reps)
        image = target_table.classes.class_of[quotient_map.projection[reps]]
        return [table.decompose(target_table.values[k][image]) for k in range(len(target_table))]

    @staticmethod
    def restriction_matrix(u, marking, submodel):
        """
        Matrix of right multiplication by u on Z/l^N[G × Γ̄] as a free left
        module over the G′ part, in the basis t_i = a^i:
        M[i, j] = Σ_{t_i g ∈ G′ t_j} u[g, ·] (t_i g t_j⁻¹).
        """
        group = marking.group
        transversal = np.array(marking.transversal)
        position = marking.gprime_group.position
        size = len(transversal)
        entries = [[np.zeros(submodel.shape, dtype=np.int64) for _ in range(size)] for _ in range(size)]
        for i, t in enumerate(transversal):
            products = group.table[t]
            cosets = marking.coset_index[products]
            local = position[group.table[products, group.inverse[transversal[cosets]]]]
            for j in range(size):
                inside = cosets == j
                np.add.at(entries[i][j], local[inside], u.coeffs[inside])
        return [[submodel.element(entry, u.prec) for entry in row] for row in entries]

    @staticmethod
    def restricted_determinant(u, marking, submodel=None, sigmas=None):
        """Det′ of the restriction matrix: the HOM element of G′ attached to res u"""
        if not u.is_unit():
            raise NotAUnit('restriction of scalars needs a unit', augmentation=u.augmentation())
        if submodel is None:
            submodel = ModeledGroup.subgroup_of(marking, u.model.level)
        entries = TraceService.restriction_matrix(u, marking, submodel)
        return TraceService._determinant_hom(submodel, entries, u.prec, sigmas)

    @staticmethod
    def restrict_scalars(u, marking, submodel=None, check=True):
        """Det′(res u), checked against Det u(ind χ′) on every irreducible χ′"""
        restricted = TraceService.restricted_determinant(u, marking, submodel, sigmas=())
        if check:
            det = TraceService.det_hom(u, sigmas=())
            for k, chi_prime in enumerate(restricted.table.irreducibles()):
                induced = induce(chi_prime, marking, u.model.table)
                if not restricted.values[k] == det.evaluate(induced):
                    raise FrobeniusMismatch('Det′(res u) differs from Det u on an induced character', character=k)
        return restricted

    @staticmethod
    def restricted_norm(u, marking, submodel=None):
        """det of the restriction matrix computed inside the commutative ring Z/l^N[G′ × Γ̄]"""
        if not marking.is_abelian():
            raise ValueError('the norm determinant needs an abelian G′')
        if submodel is None:
            submodel = ModeledGroup.subgroup_of(marking, u.model.level)
        return laplace_determinant(TraceService.restriction_matrix(u, marking, submodel))

    @staticmethod
    def tr_a(x, marking):
        """Σ_i x^(a^i) on the group ring of G′"""
        group = marking.group
        sub = marking.gprime_group
        total = None
        for t in marking.transversal:
            images = sub.position[group.conjugation[t][sub.embedding]]
            out = np.zeros_like(x.coeffs)
            out[images] = x.coeffs
            term = x.model.element(out, x.prec)
            total = term if total is None else total + term
        return total

    @staticmethod
    def ver(x, marking, quotient_map, submodel):
        """
        Ring map Z/l^N[G/N × Γ̄] → Z/l^N[G′ × Γ̄] induced by the transfer,
        (ḡ, γ) ↦ (ver ḡ, lγ); the transfer must factor through G/N.
        """
        L = submodel.gamma_order
        images = np.array([
            marking.gprime_group.local(GroupService.transfer(int(g), marking))
            for g in quotient_map.section
        ])
        out = np.zeros(submodel.shape, dtype=np.int64)
        gammas = (marking.l * np.arange(L)) % L
        np.add.at(out, (images[:, None], gammas[None, :]), x.coeffs)
        return submodel.element(out, x.prec)


tau = TraceService.tau
tr_hom = TraceService.tr_hom
tr_inverse = TraceService.tr_inverse
det_hom = TraceService.det_hom
hom_axioms = TraceService.hom_axioms
big_l = TraceService.big_l
big_l_split = TraceService.big_l_split
integral_log_unit = TraceService.integral_log_unit
ll = TraceService.ll
deflate = TraceService.deflate
restriction_matrix = TraceService.restriction_matrix
restricted_determinant = TraceService.restricted_determinant
restrict_scalars = TraceService.restrict_scalars
restricted_norm = TraceService.restricted_norm
tr_a = TraceService.tr_a
ver = TraceService.ver

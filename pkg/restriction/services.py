import logging

import numpy as np

from characters.services import adams, defect_char, induce, power_map
from rings.exceptions import NotDivisible
from traces.models import HOM_STAR, HomElement, ModeledGroup, TraceElement
from traces.services import TraceService

from .exceptions import NoTruncation

logger = logging.getLogger(__name__)


def power_level(group):
    """Smallest r with g^(l^r) = 1 for all g"""
    r = 0
    exponent = group.exponent
    while exponent > 1:
        exponent //= group.l
        r += 1
    return r


class RestrictionService:

    @staticmethod
    def submodel(f, marking):
        return ModeledGroup.subgroup_of(marking, f.model.level)

    @staticmethod
    def res_natural(f, marking, submodel=None):
        """(res f)(χ′ ⊗ σ) = f(ind χ′ ⊗ σ)"""
        if submodel is None:
            submodel = RestrictionService.submodel(f, marking)
        inductions = [induce(chi, marking, f.table) for chi in submodel.table.irreducibles()]
        values = tuple(f.evaluate(virtual) for virtual in inductions)
        twisted = None
        if f.twisted:
            twisted = {
                sigma: tuple(f.evaluate(virtual, sigma) for virtual in inductions)
                for sigma in sorted(f.twisted)
            }
        return HomElement(submodel, f.kind, values, twisted)

    @staticmethod
    def r_zero(marking):
        """Least r with G^(l^r) ⊂ G′"""
        group = marking.group
        lth_powers = power_map(group, group.l)
        powers = group.elements
        r = 0
        while not marking.mask[powers].all():
            powers = lth_powers[powers]
            r += 1
        return r

    @staticmethod
    def truncation(chi_prime, marking, table=None):
        """
        Defect character χ of χ′ and the number of series terms: the first r
        with ψ_l^(r-1) χ = 0, minus one.
        """
        l = marking.l
        chi = defect_char(chi_prime, marking, table)
        bound = power_level(marking.group) + 1
        powers = [chi]
        while not powers[-1].is_zero():
            if len(powers) > bound:
                raise NoTruncation('ψ_l-powers of the defect character do not vanish', bound=bound)
            powers.append(adams(powers[-1], l))
        return chi, powers[:-1]

    @staticmethod
    def res_hom(f, marking, submodel=None, sigmas=None):
        """
        Res f (χ′) = f(ind χ′) + Σ_{r≥1} Ψ^r f(ψ_l^(r-1) χ) / l^r, χ the defect
        character of χ′, summed until the ψ_l-powers of χ vanish. Returns the
        Hom* element of G′ and per-character truncation records.
        """
        if f.kind != HOM_STAR:
            raise ValueError('Res applies to Hom* elements')
        if submodel is None:
            submodel = RestrictionService.submodel(f, marking)
        l = marking.l
        table = f.table
        r_zero = RestrictionService.r_zero(marking)
        if sigmas is None:
            sigmas = tuple(sorted(f.twisted)) if f.twisted else ()

        records = []
        series = []
        for k, chi_prime in enumerate(submodel.table.irreducibles()):
            induced = induce(chi_prime, marking, table)
            _, terms = RestrictionService.truncation(chi_prime, marking, table)
            series.append((induced, terms))
            records.append({'character': k, 'terms': len(terms), 'r0': r_zero})

        def slice_values(sigma):
            values = []
            for k, (induced, terms) in enumerate(series):
                total = f.evaluate(induced, sigma)
                for r, term in enumerate(terms, start=1):
                    value = f.evaluate(term, sigma * l ** r)
                    for _ in range(r):
                        value = value.psi()
                    try:
                        total = total + value.exact_div_l(r)
                    except NotDivisible as exc:
                        raise NotDivisible(
                            'Ψ^r f(ψ_l^(r-1) χ) is not divisible by l^r', r=r, character=k, sigma=sigma,
                        ) from exc
                values.append(total)
            return tuple(values)

        twisted = {sigma: slice_values(sigma) for sigma in sigmas} or None
        return HomElement(submodel, HOM_STAR, slice_values(0), twisted), records

    @staticmethod
    def res_trace(t, marking, submodel=None):
        """
        β τ(g) ↦ Σ_i β τ′(g^(a^i)) for g ∈ G′ and Ψ(β) τ′(g^l) otherwise,
        read on G × Γ̄ with β the Γ̄-row of the class of g.
        """
        model = t.model
        if submodel is None:
            submodel = ModeledGroup.subgroup_of(marking, model.level)
        group = marking.group
        sub = marking.gprime_group
        l, L = marking.l, model.gamma_order
        sub_classes = submodel.group.classes
        out = np.zeros((len(sub_classes), L), dtype=np.int64)
        lth_gammas = (l * np.arange(L)) % L
        for c, rep in enumerate(group.classes.reps):
            row = t.coeffs[c]
            if not row.any():
                continue
            if marking.contains(rep):
                for a_power in marking.transversal:
                    conjugate = group.conj(rep, a_power)
                    out[sub_classes.class_of[sub.local(conjugate)]] += row
            else:
                target = sub_classes.class_of[sub.local(group.power(rep, l))]
                np.add.at(out[target], lth_gammas, row)
        return TraceElement(submodel, out, t.prec)

    @staticmethod
    def trace_restriction_report(t, marking, submodel=None, sigmas=()):
        """Compare Tr′(res_trace t) with res_hom(Tr t) on every χ′ ⊗ σ"""
        if submodel is None:
            submodel = ModeledGroup.subgroup_of(marking, t.model.level)
        left = TraceService.tr_hom(RestrictionService.res_trace(t, marking, submodel), sigmas)
        right, records = RestrictionService.res_hom(TraceService.tr_hom(t, sigmas), marking, submodel, sigmas)
        mismatches = left.mismatches(right)
        for sigma in sigmas:
            for k in range(len(left.values)):
                if not left.value(k, sigma) == right.value(k, sigma):
                    mismatches.append((k, sigma))
        return {
            'status': 'pass' if not mismatches else 'fail',
            'mismatches': mismatches,
            'truncation': records,
            'precision_used': min(left.prec, right.prec),
        }

    @staticmethod
    def closed_form_trace(g, marking, submodel, prec):
        """Σ_i τ′(g^(a^i)) if g ∈ G′, else τ′(g^l), for any element g of its class"""
        group = marking.group
        sub = marking.gprime_group
        class_of = submodel.group.classes.class_of
        coeffs = np.zeros((len(submodel.group.classes), submodel.gamma_order), dtype=np.int64)
        if marking.contains(g):
            for a_power in marking.transversal:
                coeffs[class_of[sub.local(group.conj(g, a_power))], 0] += 1
        else:
            coeffs[class_of[sub.local(group.power(g, marking.l))], 0] += 1
        return TraceElement(submodel, coeffs, prec)

    @staticmethod
    def check_hd_square(u, marking, submodel=None, sigmas=()):
        """
        Hom level: L′(res Det u) against Res(L(Det u)).
        Trace level: Ll′(res u) against res_trace(Ll u).
        """
        model = u.model
        if submodel is None:
            submodel = ModeledGroup.subgroup_of(marking, model.level)
        report = {'hom': {}, 'trace': {}}

        det = TraceService.det_hom(u, sigmas)
        restricted = RestrictionService.res_natural(det, marking, submodel)
        left = TraceService.big_l(restricted)
        right, records = RestrictionService.res_hom(TraceService.big_l(det), marking, submodel, sigmas)
        mismatches = left.mismatches(right)
        report['hom'] = {
            'status': 'pass' if not mismatches else 'fail',
            'mismatches': mismatches,
            'precision_used': min(left.prec, right.prec),
            'truncation': records,
        }

        trace_left = TraceService.tr_inverse(left)
        trace_right = RestrictionService.res_trace(TraceService.tr_inverse(TraceService.big_l(det)), marking, submodel)
        equal = trace_left == trace_right
        report['trace'] = {
            'status': 'pass' if equal else 'fail',
            'precision_used': min(trace_left.prec, trace_right.prec),
        }
        if not equal:
            logger.warning('Trace-level restriction square failed on %s', model.group.name)
        report['status'] = 'pass' if report['hom']['status'] == report['trace']['status'] == 'pass' else 'fail'
        return report


res_natural = RestrictionService.res_natural
res_hom = RestrictionService.res_hom
res_trace = RestrictionService.res_trace
check_hd_square = RestrictionService.check_hd_square
truncation = RestrictionService.truncation
trace_restriction_report = RestrictionService.trace_restriction_report

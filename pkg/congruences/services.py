import logging
from functools import lru_cache

import numpy as np

from characters.services import CharacterService
from lgroups.services import GroupService
from rings.services import smith_normal_form
from traces.models import ModeledGroup
from traces.services import TraceService

from .exceptions import NotInIdeal, UnknownSpan
from .models import AModule, BetaPrime, BetaTerm, IdealSpan, TateGroup

logger = logging.getLogger(__name__)

SPAN_KINDS = ('aug_a', 'aug_b′', 'trace_T′', 'l_trace', 'trace_b′')


class IdealService:

    @staticmethod
    @lru_cache(maxsize=32)
    def models(marking, level=None):
        """(G model, G′ model) shared by every check run on one marking"""
        if level is None:
            level = CharacterService.table_level(marking)
        return ModeledGroup.from_marking(marking, level), ModeledGroup.subgroup_of(marking, level)

    @staticmethod
    def include(x, marking, model):
        """Z/l^N[G′ × Γ̄] → Z/l^N[G × Γ̄]"""
        out = np.zeros(model.shape, dtype=np.int64)
        out[marking.gprime_group.embedding] = x.coeffs
        return model.element(out, x.prec)

    @staticmethod
    def _augmentation_generators(model, members, commutators, labels):
        """(g, γ)(c - 1) for g in members, c ∈ [G, G] \\ {1}"""
        rows, names = [], []
        for g, label in zip(members, labels):
            for c, c_image in commutators:
                for gamma in range(model.gamma_order):
                    vector = np.zeros(model.shape, dtype=np.int64)
                    vector[c_image(g), gamma] += 1
                    vector[g, gamma] -= 1
                    rows.append(vector.reshape(-1))
                    names.append(f'{label}·γ^{gamma}·({c} - 1)')
        return rows, names

    @staticmethod
    def _trace_generators(marking, submodel, prec, scale=1, commutators=False):
        group = marking.group
        sub = marking.gprime_group
        rows, names, sources = [], [], []
        derived = [int(c) for c in group.derived_subgroup if c]
        for h in marking.gprime:
            h = int(h)
            targets = [(h, None)]
            if commutators:
                targets = [(group.mul(h, c), c) for c in derived]
            for target, c in targets:
                for gamma in range(submodel.gamma_order):
                    x = submodel.group_like(sub.local(target), gamma=gamma, scalar=scale, prec=prec)
                    label = f'tr_A({group.label(h)}·γ^{gamma})'
                    if c is not None:
                        x = x - submodel.group_like(sub.local(h), gamma=gamma, scalar=scale, prec=prec)
                        label = f'tr_A({group.label(h)}·γ^{gamma}·({group.label(c)} - 1))'
                    elif scale != 1:
                        label = f'{scale}·{label}'
                    rows.append(TraceService.tr_a(x, marking).coeffs.reshape(-1))
                    names.append(label)
                    sources.append((h, c, gamma))
        return rows, names, sources

    @staticmethod
    @lru_cache(maxsize=64)
    def ideal_span(kind, marking, prec, level=None):
        """
        aug_a:    ker(R[G × Γ̄] → R[G^ab × Γ̄])
        aug_b′:   ker(R[G′ × Γ̄] → R[G′/[G, G] × Γ̄])
        trace_T′: tr_A(R[G′ × Γ̄])
        l_trace:  l·tr_A(R[G′ × Γ̄])
        trace_b′: tr_A(aug_b′)
        """
        if kind not in SPAN_KINDS:
            raise UnknownSpan('unknown ideal', kind=kind, known=', '.join(SPAN_KINDS))
        model, submodel = IdealService.models(marking, level)
        group = marking.group
        derived = [int(c) for c in group.derived_subgroup if c]

        if kind == 'aug_a':
            commutators = [(group.label(c), lambda g, c=c: group.mul(g, c)) for c in derived]
            sources = None
            rows, labels = IdealService._augmentation_generators(
                model, range(group.order), commutators, group.labels,
            )
            ambient = model
        elif kind == 'aug_b′':
            sub = marking.gprime_group
            commutators = [
                (group.label(c), lambda g, c=c: sub.local(group.mul(int(sub.embedding[g]), c)))
                for c in derived
            ]
            sources = None
            rows, labels = IdealService._augmentation_generators(
                submodel, range(submodel.order), commutators, sub.group.labels,
            )
            ambient = submodel
        else:
            rows, labels, sources = IdealService._trace_generators(
                marking, submodel, prec,
                scale=marking.l if kind == 'l_trace' else 1,
                commutators=kind == 'trace_b′',
            )
            ambient = submodel

        width = int(np.prod(ambient.shape))
        if rows:
            matrix = np.array(rows, dtype=np.int64) % ambient.l ** prec
            matrix, first = np.unique(matrix, axis=0, return_index=True)
            keep = matrix.any(axis=1)
            matrix = matrix[keep]
            labels = tuple(labels[i] for i in first[keep])
            if sources is not None:
                sources = tuple(sources[i] for i in first[keep])
        else:
            matrix = np.zeros((0, width), dtype=np.int64)
            labels = ()
            sources = () if sources is not None else None
        span = IdealSpan(kind, ambient, matrix, labels, prec, sources)
        logger.debug('Span %s on %s: %d generators', kind, group.name, len(span))
        return span

    @staticmethod
    def membership(x, span):
        """(Membership, certificate dict)"""
        return span.certificate(x)

    @staticmethod
    def require(x, span):
        result, certificate = span.certificate(x)
        if not result:
            raise NotInIdeal('element outside the span', kind=span.kind, **certificate['witness'])
        return certificate

    @staticmethod
    def _subquotient(kernel_map, image_map):
        """
        ker(x ↦ x·kernel_map) / (row span of image_map); every row of image_map
        must lie in the kernel.
        """
        U, D, _ = smith_normal_form(kernel_map)
        kernel_rows = [i for i in range(D.shape[0]) if not any(D.entries[i])]
        if not kernel_rows:
            return (), 0
        coordinates = (image_map @ U.inverse_unimodular()).columns(kernel_rows)
        _, D2, _ = smith_normal_form(coordinates)
        diagonal = [d for d in D2.diagonal() if d]
        return tuple(d for d in diagonal if d != 1), len(kernel_rows) - len(diagonal)

    @staticmethod
    def tate_cohomology(module, degree):
        """
        Ĥ^degree(A, M) for A cyclic of order l; period 2, so every degree
        reduces to Ĥ⁰ = ker(a - 1)/N·M or Ĥ⁻¹ = ker N/(a - 1)·M.
        """
        degree = int(degree)
        if degree % 2 == 0:
            invariants, free_rank = IdealService._subquotient(module.augmentation, module.norm)
        else:
            invariants, free_rank = IdealService._subquotient(module.norm, module.augmentation)
        return TateGroup(degree, invariants, free_rank)

    @staticmethod
    def random_beta(marking, rng, prec, terms=3, density=0.5):
        """β′ = Σ β·g′(c - 1) with random g′ ∈ G′, c ∈ [G, G] \\ {1} and β ∈ Z/l^prec[Γ̄]"""
        derived = [int(c) for c in marking.group.derived_subgroup if c]
        if not derived:
            return BetaPrime(())
        chosen = []
        for _ in range(terms):
            row = rng.integers(0, marking.l ** prec, size=marking.gamma_order, dtype=np.int64)
            row[rng.random(marking.gamma_order) >= density] = 0
            chosen.append(BetaTerm(
                gprime=int(rng.choice(marking.gprime)),
                commutator=int(rng.choice(derived)),
                row=tuple(int(x) for x in row),
            ))
        return BetaPrime(tuple(chosen))

    @staticmethod
    def beta_from_certificate(result, span, marking):
        """Read β′ off a trace_b′ membership certificate: y - 1 = tr_A(β′)"""
        rows = {}
        for coefficient, (h, c, gamma) in zip(result.coefficients, span.sources):
            if not coefficient:
                continue
            row = rows.setdefault((h, c), [0] * marking.gamma_order)
            row[gamma] = (row[gamma] + int(coefficient)) % span.modulus
        return BetaPrime(tuple(BetaTerm(h, c, tuple(row)) for (h, c), row in sorted(rows.items())))

    @staticmethod
    def abelianized_gprime_module(marking):
        """Z[G′/[G, G]] with a acting by conjugation"""
        group = marking.group
        sub = marking.gprime_group
        derived = [sub.local(int(c)) for c in group.derived_subgroup]
        quotient = GroupService.quotient(sub.group, derived, name=f'{sub.group.name}/[G,G]')
        images = []
        for s in range(quotient.target.order):
            g = int(sub.embedding[quotient.section[s]])
            images.append(quotient(sub.local(group.conj(g, marking.a))))
        return AModule.permutation(marking.l, images)


models = IdealService.models
ideal_span = IdealService.ideal_span
membership = IdealService.membership
tate_cohomology = IdealService.tate_cohomology
include = IdealService.include
random_beta = IdealService.random_beta

#!/usr/bin/env python3
"""
Factorizations JU -> V -> U of the radical embedding

Every construction builds V as a quotient (M_1 + ... + M_k) / H where each
M_i is a cyclic module with a fixed generator g_i (or the radical of one),
and H is generated by tuples of algebra elements (l_1, ..., l_k) standing
for sum_i l_i g_i. The maps are prescribed on generators,

    phi(alpha_1 x) = a tuple,        psi(g_i) = mu_i x,

and a candidate is returned only after psi . phi = (JU -> U), phi not
split mono and psi not split epi have all been checked.

Constructions, in the order tried:
    prop-irrembeding   an extra arrow alpha leaves s(p): V = Lambda e / L with
                       Lambda(alpha - sum k_i v_i) replaced by J(alpha - ...)
    thm-1to2a-i/-ii    V = (U' + JU') / H, H = Lambda(p, kp) + Lambda(D, D)
    thm-1to2a-Z2       V = (U' + JU' + JU') / H, for F_2
    conj4mult-bi/-bii  V = (U_q + JU_q + Lambda e_x) / H with q = beta' p
    monomial-bi/-bii   V = (U_q1 + JU_q1 + U_q2) / H
    glued-socles       length two: Lambda e + sum Lambda e_s(gamma) modulo
                       J (alpha_1, -gamma, ...)
    almost-split       V the middle term of the almost split sequence
"""
import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from src.algebra import linalg
from src.algebra.engine import Element, FDAlgebra
from src.algebra.field import Scalar
from src.algebra.linalg import Vector
from src.irreducibility.criteria import MastContext
from src.irreducibility.reports import FactorizationWitness
from src.modules.constructions import (
    DirectSum,
    cyclic_quotient,
    quotient_by,
    submodule_generated,
    submodule_to_representation,
)
from src.modules.homs import factor_through, hom_from_generators
from src.modules.layers import radical, radical_inclusion
from src.modules.representation import Projective, Representation, SubmoduleBasis
from src.quiver.combinatorics import detours, minimal_non_routes
from src.quiver.quiver import Path, compose
from src.uniserial.variety import MastVariety, UniserialModule
from src.utils.errors import UniserialLabError, WitnessConstructionError
from src.utils.logger import get_logger


logger = get_logger('irreducibility')

Tuple_ = Tuple[Optional[Element], ...]


@dataclass
class Part:
    """A summand of the ambient sum: module, generator, and whether only its radical is used"""
    module: Representation
    generator: Vector
    radical_only: bool = False

    @property
    def vertex(self) -> str:
        return self.module.support(self.generator)[0]

    def radical_part(self) -> 'Part':
        return Part(self.module, self.generator, True)


@dataclass
class Plan:
    tag: str
    parts: List[Part]
    relations: List[Tuple_]
    phi_image: Tuple_
    psi_images: List[Optional[Element]]
    scalars: Dict[str, Scalar] = field(default_factory=dict)
    notes: Dict[str, str] = field(default_factory=dict)


class GluedModule:
    """(M_1 + ... + M_k, cut down to the chosen parts) / H"""

    def __init__(self, parts: Sequence[Part], relations: Sequence[Tuple_]):
        self.parts = list(parts)
        self.sum = DirectSum([part.module for part in parts])
        S = self.sum
        gens = []
        for i, part in enumerate(self.parts):
            for elem in self._part_generators(part):
                gens.append(S.include(i, part.module.act(elem, part.generator)))
        self.ambient: SubmoduleBasis = submodule_generated(S, gens)
        self.W, _ = submodule_to_representation(self.ambient)
        H = submodule_generated(self.W, [self._in_w(self._sum_vector(t)) for t in relations])
        self.module, self.projection = quotient_by(self.W, H)

    @staticmethod
    def _part_generators(part: Part) -> List[Element]:
        algebra = part.module.algebra
        if not part.radical_only:
            return [algebra.vertex(part.vertex)]
        return [algebra.arrow(a.id) for a in sorted(algebra.quiver.arrows_from(part.vertex), key=lambda a: a.id)]

    def _sum_vector(self, elements: Tuple_) -> Vector:
        S = self.sum
        out = S.zero_vector()
        for i, (part, x) in enumerate(zip(self.parts, elements)):
            if x is not None:
                out = linalg.vec_add(out, S.include(i, part.module.act(x, part.generator)))
        return out

    def _in_w(self, vector: Sequence[Scalar]) -> Vector:
        local = {}
        for v in self.sum.algebra.vertices:
            coords = self.ambient.spaces[v].coordinates(self.sum.component(vector, v))
            if coords is None:
                raise WitnessConstructionError("a tuple leaves the chosen parts")
            local[v] = coords
        return self.W.join(local)

    def vector(self, elements: Tuple_) -> Vector:
        return self.projection.apply(self._in_w(self._sum_vector(elements)))

    def generators(self) -> Iterator[Tuple[int, Element]]:
        for i, part in enumerate(self.parts):
            for elem in self._part_generators(part):
                yield i, elem


def realize(U: UniserialModule, plan: Plan) -> Optional[FactorizationWitness]:
    """Build V, phi and psi from a plan; None when a prescribed map is not well defined"""
    glued = GluedModule(plan.parts, plan.relations)
    V = glued.module
    JU, iota = radical_inclusion(U.rep)

    alpha_1 = U.mast.traversal[0]
    rad = radical(U.rep)
    image = U.rep.apply_arrow(alpha_1, U.top)
    generator = JU.join({v: rad.spaces[v].coordinates(U.rep.component(image, v)) for v in U.algebra.vertices})
    phi = hom_from_generators(JU, [generator], V, [glued.vector(plan.phi_image)])
    if phi is None:
        return None

    sources, targets = [], []
    k = len(plan.parts)
    for i, elem in glued.generators():
        sources.append(glued.vector(tuple(elem if j == i else None for j in range(k))))
        mu = plan.psi_images[i]
        targets.append(U.rep.zero_vector() if mu is None else U.rep.act(elem * mu, U.top))
    psi = hom_from_generators(V, sources, U.rep, targets)
    if psi is None:
        return None
    return FactorizationWitness(V, phi, psi, iota, plan.tag, dict(plan.scalars), dict(plan.notes))


# Building blocks

def _cyclic(algebra: FDAlgebra, vertex: str, generators: Sequence[Element]) -> Part:
    Q, P, pi = cyclic_quotient(algebra, vertex, [g for g in generators if not g.is_zero()])
    return Part(Q, pi.apply(P.generator()))


def _in_ideal(algebra: FDAlgebra, vertex: str, generators: Sequence[Element], x: Element) -> bool:
    P = Projective(algebra, vertex)
    return submodule_generated(P, [P.vector_of(g) for g in generators]).contains(P.vector_of(x))


def _annihilator(U: UniserialModule) -> Tuple[List[Tuple[str, Element]], List[Tuple[str, Element]]]:
    """Generators of K with U = Lambda e / K: detour elements and minimal non-routes, keyed by name"""
    algebra, p, point = U.algebra, U.mast, U.point
    detour_elements = []
    for d in point.detours:
        x = algebra.path_element(d.path)
        for i, v in enumerate(d.v_family):
            x = x - algebra.path_element(v) * point.value(d, i)
        detour_elements.append((d.key, x))
    nonroutes = []
    for q in minimal_non_routes(algebra.quiver, p, algebra.nilpotency):
        x = algebra.path_element(q)
        if not x.is_zero():
            nonroutes.append((str(q), x))
    return detour_elements, nonroutes


def _radical_multiples(algebra: FDAlgebra, x: Element, vertex: str) -> List[Element]:
    """Generators of J*x for x ending at vertex"""
    return [algebra.arrow(a.id) * x for a in algebra.quiver.arrows_from(vertex)]


def _first_arrow(U: UniserialModule) -> Element:
    return U.algebra.arrow(U.mast.traversal[0])


def _two_copy_plans(U: UniserialModule, tag: str, delta: Element, others: Sequence[Element],
                    name: str) -> Iterator[Plan]:
    """(U' + JU') / H with the scalar pair (s, l), or the F_2 triple sum"""
    algebra = U.algebra
    field_ = algebra.field
    e = U.mast.source
    base = _cyclic(algebra, e, others)
    p = algebra.path_element(U.mast)
    a1 = _first_arrow(U)
    one = algebra.vertex(e)
    k = field_.non_special_scalar()
    if k is not None:
        l = field_.one / (field_.one - k)
        s = -k * l
        yield Plan(tag, [base, base.radical_part()], [(p, p * k), (delta, delta)], (a1, a1),
                   [one * s, one * l], {'k': k, 's': s, 'l': l}, {'Delta': name})
    else:
        yield Plan('thm-1to2a-Z2', [base, base.radical_part(), base.radical_part()],
                   [(None, p, p), (delta, delta, delta)], (a1, a1, a1), [one, one, one],
                   notes={'Delta': name, 'variant': tag})


# Constructions

def _irrembeding_plans(U: UniserialModule) -> Iterator[Plan]:
    algebra, p = U.algebra, U.mast
    first = p.traversal[0]
    extra = sorted(a.id for a in algebra.quiver.arrows_from(p.source) if a.id != first)
    if not extra:
        return
    detour_elements, nonroutes = _annihilator(U)
    named = detour_elements + nonroutes
    for alpha in extra:
        target = algebra.quiver.arrow(alpha).target
        key = f"{alpha}@{algebra.quiver.stationary(p.source)}"
        chosen = next((x for name, x in named if name in (key, alpha)), None)
        if chosen is None:
            continue
        others = [x for name, x in named if name not in (key, alpha)]
        others += _radical_multiples(algebra, chosen, target)
        V = _cyclic(algebra, p.source, others)
        a1 = _first_arrow(U)
        yield Plan('prop-irrembeding', [V], [], (a1,), [algebra.vertex(p.source)], notes={'arrow': alpha})


def _detour_essential_plans(U: UniserialModule) -> Iterator[Plan]:
    algebra, p = U.algebra, U.mast
    detour_elements, nonroutes = _annihilator(U)
    for idx, (name, delta) in enumerate(detour_elements):
        if delta.is_zero():
            continue
        d_target = next(d.path.target for d in U.point.detours if d.key == name)
        others = [x for j, (_, x) in enumerate(detour_elements) if j != idx] + [x for _, x in nonroutes]
        others += _radical_multiples(algebra, delta, d_target)
        if _in_ideal(algebra, p.source, others, delta):
            continue
        yield from _two_copy_plans(U, 'thm-1to2a-i', delta, others, name)


def _nonroute_plans(U: UniserialModule) -> Iterator[Plan]:
    algebra, p = U.algebra, U.mast
    detour_elements, nonroutes = _annihilator(U)
    pe = algebra.path_element(p)
    jp_gens = _radical_multiples(algebra, pe, p.target)
    jp, _ = algebra.jp_spaces(p)
    for idx, (name, q) in enumerate(nonroutes):
        if jp.contains(q.vector):
            continue
        others = jp_gens + [x for j, (_, x) in enumerate(nonroutes) if j != idx] + [x for _, x in detour_elements]
        if _in_ideal(algebra, p.source, others, q):
            continue
        yield from _two_copy_plans(U, 'thm-1to2a-ii', q, others, name)


def _extended_mast_module(ctx: MastContext, bp: str) -> Optional[Part]:
    """
    A uniserial with mast q = beta' p: Lambda e / L_q where L_q is generated by

        Jq,   beta'_i p for the other arrows leaving n,
        delta u - l(delta, u) q  over the detours (delta, u) on q ending at t(q)

    with l(delta, u) the coefficient of beta' p in delta u modulo J^2 p.
    """
    algebra = ctx.algebra
    quiver = algebra.quiver
    q = compose(quiver.arrow_path(bp), ctx.mast)
    qe = algebra.path_element(q)
    if qe.is_zero():
        return None
    gens = _radical_multiples(algebra, qe, q.target)
    leaving = sorted(a.id for a in quiver.arrows_from(ctx.last_vertex))
    gens += [ctx.arrow(b) * ctx.p for b in leaving if b != bp]
    _, j2p = algebra.jp_spaces(ctx.mast)
    reduced = [j2p.reduce((ctx.arrow(b) * ctx.p).vector) for b in leaving]
    position = leaving.index(bp)
    for d in detours(quiver, q):
        if quiver.arrow(d.arrow).target != q.target:
            continue
        du = algebra.path_element(d.path)
        target = j2p.reduce(du.vector)
        rows = [[vec[e] for vec in reduced] for e in range(algebra.dim)]
        coeffs = linalg.solve(algebra.field, rows, target, len(reduced))
        if coeffs is None:
            continue
        gens.append(du - qe * coeffs[position])
    return _cyclic(algebra, ctx.mast.source, gens)


def _arrows_nonzero_on_p(ctx: MastContext) -> List[str]:
    return [b for b in sorted(ctx.classes.B_prime) if not (ctx.arrow(b) * ctx.p).is_zero()]


def _conj4mult_plans(U: UniserialModule, which: str) -> Iterator[Plan]:
    ctx = MastContext(U)
    algebra = ctx.algebra
    a1 = _first_arrow(U)
    one = algebra.vertex(ctx.mast.source)
    for bp in _arrows_nonzero_on_p(ctx):
        Uq = _extended_mast_module(ctx, bp)
        if Uq is None:
            continue
        qe = ctx.arrow(bp) * ctx.p
        if which == 'bi':
            for g in ctx.classes.C:
                x = algebra.quiver.arrow(g).source
                P = Projective(algebra, x)
                A = ctx.tail(ctx.target_index(g)) * ctx.arrow(g)
                yield Plan('conj4mult-bi', [Uq, Uq.radical_part(), Part(P, P.generator())],
                           [(qe, qe, None), (None, ctx.p, A)], (a1, a1, None), [one, None, None],
                           notes={"beta'": bp, 'gamma': g})
        else:
            for d in ctx.classes.D:
                i, j = ctx.source_index(d), ctx.target_index(d)
                P = Projective(algebra, ctx.frame.vertex(i))
                A = ctx.tail(j) * ctx.arrow(d)
                yield Plan('conj4mult-bii', [Uq, Uq.radical_part(), Part(P, P.generator())],
                           [(qe, qe, None), (None, ctx.p, A), (None, None, ctx.tail(i))],
                           (a1, a1, None), [one, None, None], notes={"beta'": bp, 'delta': d})


def _zero_point_module(algebra: FDAlgebra, q: Path) -> Optional[Part]:
    """Phi_q(0) with its top element"""
    try:
        variety = MastVariety(algebra, q)
        built = variety.build(variety.constant_point(0))
    except UniserialLabError:
        return None
    return Part(built.rep, built.top)


def _monomial_plans(U: UniserialModule, which: str) -> Iterator[Plan]:
    ctx = MastContext(U)
    algebra = ctx.algebra
    quiver = algebra.quiver
    a1 = _first_arrow(U)
    one = algebra.vertex(ctx.mast.source)
    for bp in _arrows_nonzero_on_p(ctx):
        q1 = compose(quiver.arrow_path(bp), ctx.mast)
        U1 = _zero_point_module(algebra, q1)
        if U1 is None:
            continue
        q1e = algebra.path_element(q1)
        pieces = []
        if which == 'bi':
            for g in ctx.classes.C:
                piece = compose(ctx.frame.segment(ctx.target_index(g), ctx.n), quiver.arrow_path(g))
                pieces.append(('gamma', g, piece))
        else:
            for d in ctx.classes.D:
                piece = compose(ctx.frame.segment(ctx.target_index(d), ctx.n), quiver.arrow_path(d))
                pieces.append(('delta', d, piece))
        for label, arrow, piece in pieces:
            U2 = _zero_point_module(algebra, compose(quiver.arrow_path(bp), piece))
            if U2 is None:
                continue
            yield Plan(f"monomial-{which}", [U1, U1.radical_part(), U2],
                       [(q1e, q1e, None), (None, ctx.p, algebra.path_element(piece))],
                       (a1, a1, None), [one, None, None], notes={"beta'": bp, label: arrow})


def _glued_socle_plans(U: UniserialModule) -> Iterator[Plan]:
    p = U.mast
    if p.length != 1:
        return
    ctx = MastContext(U)
    algebra = ctx.algebra
    gammas = sorted(g for g in ctx.classes.C if algebra.quiver.arrow(g).target == p.target)
    a1 = _first_arrow(U)
    minus = algebra.field(-1)
    for size in range(len(gammas), 0, -1):
        for chosen in itertools.combinations(gammas, size):
            parts = [Part(Projective(algebra, p.source), Projective(algebra, p.source).generator())]
            omega: List[Optional[Element]] = [a1]
            for g in chosen:
                P = Projective(algebra, algebra.quiver.arrow(g).source)
                parts.append(Part(P, P.generator()))
                omega.append(ctx.arrow(g) * minus)
            relations = [tuple(b * w for w in omega) for b in _radical_multiples(algebra, algebra.vertex(p.target), p.target)]
            yield Plan('glued-socles', parts, relations, tuple(omega),
                       [algebra.vertex(p.source)] + [None] * len(chosen), notes={'gammas': ",".join(chosen)})


def almost_split_witness(U: UniserialModule) -> Optional[FactorizationWitness]:
    """JU -> E -> U through the middle term E of the almost split sequence ending in U"""
    from src.ar.sequences import almost_split_sequence

    try:
        sequence = almost_split_sequence(U.rep)
    except UniserialLabError as exc:
        logger.debug(f"no almost split sequence for {U.mast}: {exc}")
        return None
    JU, iota = radical_inclusion(U.rep)
    phi = factor_through(sequence.g, iota)
    if phi is None:
        return None
    return FactorizationWitness(sequence.E, phi, sequence.g, iota, 'almost-split')


FAMILIES: List[Tuple[str, Callable[[UniserialModule], Iterator[Plan]]]] = [
    ('prop-irrembeding', _irrembeding_plans),
    ('thm-1to2a-i', _detour_essential_plans),
    ('thm-1to2a-ii', _nonroute_plans),
    ('conj4mult-bi', lambda U: _conj4mult_plans(U, 'bi')),
    ('conj4mult-bii', lambda U: _conj4mult_plans(U, 'bii')),
    ('monomial-bi', lambda U: _monomial_plans(U, 'bi')),
    ('monomial-bii', lambda U: _monomial_plans(U, 'bii')),
    ('glued-socles', _glued_socle_plans),
]


def _hinted(clause: Optional[str]) -> List[str]:
    if not clause:
        return []
    if clause.startswith('obstruction'):
        return ['prop-irrembeding']
    if clause.startswith('1to2a-ii') or clause.startswith('2a-B') or clause.startswith('a-i-'):
        return ['thm-1to2a-ii']
    if clause.startswith('1to2a-i') or clause.startswith('2a-D') or clause.startswith('a-ii-'):
        return ['thm-1to2a-i']
    if 'b-ii' in clause:
        return ['conj4mult-bii', 'monomial-bii']
    if 'b-i' in clause:
        return ['conj4mult-bi', 'monomial-bi']
    return []


def build_witness(U: UniserialModule, clause: Optional[str] = None,
                  allow_almost_split: bool = True) -> FactorizationWitness:
    """
    A verified factorization of JU -> U through some V

    Args:
        U: Non-simple uniserial module
        clause: Failing clause id; the matching constructions are tried first
        allow_almost_split: Fall back to the almost split sequence

    Raises:
        WitnessConstructionError: no construction produced a verified witness
    """
    if U.mast.is_stationary:
        raise WitnessConstructionError("U is simple: JU = 0 embeds split")
    hint = _hinted(clause)
    order = [f for f in FAMILIES if f[0] in hint] + [f for f in FAMILIES if f[0] not in hint]
    attempts = 0
    for name, plans in order:
        try:
            for plan in plans(U):
                attempts += 1
                try:
                    witness = realize(U, plan)
                except WitnessConstructionError as exc:
                    logger.debug(f"{plan.tag} on {U.mast}: {exc}")
                    continue
                if witness is not None and witness.verify():
                    logger.info(f"✅ {plan.tag} witness for {U.mast}: V of dimension {witness.V.dim}")
                    return witness
        except UniserialLabError as exc:
            logger.debug(f"{name} not applicable to {U.mast}: {exc}")
    if allow_almost_split:
        attempts += 1
        witness = almost_split_witness(U)
        if witness is not None and witness.verify():
            logger.info(f"✅ almost-split witness for {U.mast}")
            return witness
    raise WitnessConstructionError(f"no verified factorization for {U.mast} among {attempts} candidates")

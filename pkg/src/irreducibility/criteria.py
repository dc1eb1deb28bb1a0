#!/usr/bin/env python3
"""
Criteria for the radical embedding JU -> U of a uniserial module U

U has mast p = alpha_{n-1} ... alpha_1 through the vertices 1..n (relabelled
along the walk) and top element x. The checks here are pure membership
questions in the algebra; the factorizations proving "not irreducible" live
in witness.py.

Verdicts by criterion:
    obstruction      an extra arrow leaving s(p) (any algebra)
    1to2a            essential detours or non-routes outside Jp (p not
                     starting with an oriented cycle)
    2a               the (2)(a) conditions (triangular)
    monomial         decisive for monomial triangular algebras
    multiserial      decisive when dim J alpha_{n-1} / J^2 alpha_{n-1} <= 1
    2a + 2b          sufficient; "fails" is only conjecturally decisive
"""
import itertools
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.algebra import linalg
from src.algebra.engine import Element, FDAlgebra
from src.algebra.field import Scalar
from src.algebra.linalg import Subspace
from src.irreducibility.reports import (
    CONJECTURE,
    FAILS,
    HOLDS,
    MONOMIAL,
    MULTISERIAL,
    NECESSARY,
    OBSTRUCTION,
    UNKNOWN,
    CriterionReport,
    PipelineReport,
)
from src.modules.constructions import cyclic_quotient, quotient_by
from src.modules.decompose import indecomposables_isomorphic
from src.modules.layers import is_uniserial, radical_inclusion, socle
from src.modules.representation import Representation
from src.quiver.combinatorics import Detour, classify_arrows, detours, minimal_non_routes, non_routes_up_to
from src.quiver.quiver import Path
from src.uniserial.variety import UniserialModule
from src.utils.errors import (
    ModuleError,
    NotMonomialError,
    UnsupportedConfigurationError,
    WitnessConstructionError,
)
from src.utils.logger import get_logger


logger = get_logger('irreducibility')


class MastContext:
    """The mast of U with its frame, arrow classes and the path elements along it"""

    def __init__(self, U: UniserialModule):
        self.U = U
        self.algebra: FDAlgebra = U.algebra
        self.field = self.algebra.field
        self.mast: Path = U.mast
        self.classes = classify_arrows(self.algebra.quiver, self.mast)
        self.frame = self.classes.frame
        self.n = self.frame.n
        self.p = self.algebra.path_element(self.mast)

    @property
    def last_vertex(self) -> str:
        return self.mast.target

    def arrow(self, arrow_id: str) -> Element:
        return self.algebra.arrow(arrow_id)

    def source_index(self, arrow_id: str) -> Optional[int]:
        return self.frame.on_mast(self.algebra.quiver.arrow(arrow_id).source)

    def target_index(self, arrow_id: str) -> Optional[int]:
        return self.frame.on_mast(self.algebra.quiver.arrow(arrow_id).target)

    def initial(self, i: int) -> Element:
        """alpha_{i-1} ... alpha_1"""
        return self.algebra.path_element(self.frame.segment(1, i))

    def tail(self, i: int) -> Element:
        """alpha_{n-1} ... alpha_i"""
        return self.algebra.path_element(self.frame.segment(i, self.n))


def scalar_multiple(x: Element, y: Element) -> Optional[Scalar]:
    """c with x = c*y for nonzero y, or None"""
    field = x.algebra.field
    if x.is_zero():
        return field.zero
    support = y.support()
    if not support:
        return None
    pivot = support[0]
    c = x.coeffs[pivot] / y.coeffs[pivot]
    return c if y * c == x else None


def _require_triangular(algebra: FDAlgebra) -> None:
    if not algebra.is_triangular():
        raise UnsupportedConfigurationError("this criterion is stated for triangular algebras only")


def _simple_report(criterion: str, theorem: str) -> CriterionReport:
    return CriterionReport(criterion, FAILS, theorem, ['simple'],
                           details={'reason': 'JU = 0, so the embedding is split'})


# Shape of irreducible maps between uniserials

def irreducible_shape_filter(U: Representation, W: Representation) -> str:
    """
    Which kind of irreducible map U -> W could exist

    Returns:
        "radical-embedding" when U is JW, "socle-projection" when W is
        U/soc U, otherwise "impossible"

    Raises:
        ModuleError: U or W is not uniserial
    """
    if not is_uniserial(U) or not is_uniserial(W):
        raise ModuleError("both modules must be uniserial")
    if U.dim == 0 or W.dim == 0:
        return 'impossible'
    JW, _ = radical_inclusion(W)
    if JW.dim > 0 and indecomposables_isomorphic(U, JW):
        return 'radical-embedding'
    quotient, _ = quotient_by(U, socle(U))
    if quotient.dim > 0 and indecomposables_isomorphic(W, quotient):
        return 'socle-projection'
    return 'impossible'


# Obstruction and the necessary conditions

def obstruction_extra_arrow(U: UniserialModule) -> Optional[str]:
    """An arrow leaving s(p) other than the first arrow of p, if any"""
    p = U.mast
    if p.is_stationary:
        return None
    first = p.traversal[0]
    others = sorted(a.id for a in U.algebra.quiver.arrows_from(p.source) if a.id != first)
    return others[0] if others else None


def check_obstruction(U: UniserialModule) -> CriterionReport:
    arrow = obstruction_extra_arrow(U)
    if arrow is None:
        return CriterionReport('obstruction', HOLDS, OBSTRUCTION)
    return CriterionReport('obstruction', FAILS, OBSTRUCTION, [f"obstruction:{arrow}"],
                           details={'arrow': arrow})


def essential_detours(algebra: FDAlgebra, p: Path) -> List[Detour]:
    """
    Detours (alpha, u) with alpha*u outside span(non-routes) + span(v_i(alpha, u))

    The spans are plain K-spans inside Lambda, not ideals.
    """
    found = detours(algebra.quiver, p)
    if not found:
        return []
    nonroutes = Subspace(algebra.field, algebra.dim, [
        algebra.path_element(q).vector for q in non_routes_up_to(algebra.quiver, p, algebra.nilpotency)
    ])
    essential = []
    for d in found:
        span = nonroutes.extend(algebra.path_element(v).vector for v in d.v_family)
        if not span.contains(algebra.path_element(d.path).vector):
            essential.append(d)
    return essential


def jp_quotient(algebra: FDAlgebra, p: Path) -> Representation:
    """Lambda e / Jp for e = s(p)"""
    pe = algebra.path_element(p)
    generators = [algebra.arrow(a.id) * pe for a in algebra.quiver.arrows_from(p.target)]
    return cyclic_quotient(algebra, p.source, generators)[0]


def check_1to2a(U: UniserialModule) -> CriterionReport:
    """
    Necessary conditions: all detours inessential and all non-routes in Jp

    Raises:
        UnsupportedConfigurationError: p starts with an oriented cycle
    """
    p, algebra = U.mast, U.algebra
    if p.is_stationary:
        return _simple_report('1to2a', NECESSARY)
    if p.source in p.vertices[1:]:
        raise UnsupportedConfigurationError(f"mast {p} starts with an oriented cycle")
    clauses = [f"1to2a-i:{d.key}" for d in essential_detours(algebra, p)]
    jp, _ = algebra.jp_spaces(p)
    for q in minimal_non_routes(algebra.quiver, p, algebra.nilpotency):
        x = algebra.path_element(q)
        if not jp.contains(x.vector):
            clauses.append(f"1to2a-ii:{q}")
    details: Dict[str, object] = {}
    if not clauses:
        details['U_is_Lambda_e_mod_Jp'] = indecomposables_isomorphic(U.rep, jp_quotient(algebra, p))
    return CriterionReport('1to2a', FAILS if clauses else HOLDS, NECESSARY, clauses, details=details)


# Conditions (2)(a) and (2)(b)

def check_2a(U: UniserialModule) -> CriterionReport:
    """
    beta*alpha_{s(beta)-1}...alpha_1 in Jp for beta in B, and
    delta*alpha_{s(delta)-1}...alpha_1 in K alpha_{t(delta)-1}...alpha_1 for delta in D

    The scalars of the second family are the f_delta of U and are reported.
    """
    _require_triangular(U.algebra)
    ctx = MastContext(U)
    if U.mast.is_stationary:
        return CriterionReport('2a', HOLDS, NECESSARY, details={'fdelta': {}})
    jp, _ = ctx.algebra.jp_spaces(ctx.mast)
    clauses = []
    for b in ctx.classes.B:
        x = ctx.arrow(b) * ctx.initial(ctx.source_index(b))
        if not jp.contains(x.vector):
            clauses.append(f"2a-B:{b}")
    fdelta: Dict[str, Scalar] = {}
    for d in ctx.classes.D:
        x = ctx.arrow(d) * ctx.initial(ctx.source_index(d))
        c = scalar_multiple(x, ctx.initial(ctx.target_index(d)))
        if c is None:
            clauses.append(f"2a-D:{d}")
        else:
            fdelta[d] = c
    return CriterionReport('2a', FAILS if clauses else HOLDS, NECESSARY, clauses,
                           details={'fdelta': {d: ctx.field.format(c) for d, c in fdelta.items()}})


def fdelta_scalars(U: UniserialModule) -> Optional[Dict[str, Scalar]]:
    """The f_delta of U, or None when (2)(a) fails for some delta"""
    ctx = MastContext(U)
    out = {}
    for d in ctx.classes.D:
        x = ctx.arrow(d) * ctx.initial(ctx.source_index(d))
        c = scalar_multiple(x, ctx.initial(ctx.target_index(d)))
        if c is None:
            return None
        out[d] = c
    return out


class _BSearch:
    """
    The linear pieces of (2)(b')

    For fixed (w_gamma) the admissible r in e_x J e_n form a subspace (with
    (2)(a) in force the delta condition reads r*(alpha...delta - f_delta
    alpha...alpha_{s(delta)}) = 0), so (2)(b') holds at x exactly when that
    subspace maps onto e_x Jp / e_x J^2 p.
    """

    def __init__(self, ctx: MastContext, fdelta: Mapping[str, Scalar]):
        self.ctx = ctx
        algebra = ctx.algebra
        self.algebra = algebra
        self.field = ctx.field
        self.gammas = list(ctx.classes.C)
        self.deltas = list(ctx.classes.D)
        self.cond_gamma = {g: ctx.tail(ctx.target_index(g)) * ctx.arrow(g) for g in self.gammas}
        self.cond_delta = {
            d: ctx.tail(ctx.target_index(d)) * ctx.arrow(d) - ctx.tail(ctx.source_index(d)) * fdelta[d]
            for d in self.deltas
        }
        self.w_basis: Dict[str, List[Element]] = {}
        for g in self.gammas:
            source = algebra.quiver.arrow(g).source
            span = Subspace(self.field, algebra.dim,
                            [y.vector for y in algebra.right_multiples(ctx.p, 1, source=source)])
            self.w_basis[g] = [algebra.from_vector(row) for row in span.rows]

        n_vertex = ctx.last_vertex
        self.spaces: Dict[str, Tuple[Subspace, Subspace, List[Element]]] = {}
        for x in algebra.vertices:
            jp_x, j2p_x = algebra.jp_spaces(ctx.mast, x)
            if jp_x.dim == j2p_x.dim:
                continue
            r_basis = [algebra.path_element(algebra.basis[i]) for i in algebra.indices_between(n_vertex, x)
                       if algebra.basis[i].length >= 1]
            self.spaces[x] = (jp_x, j2p_x, r_basis)

    def zero_w(self) -> Dict[str, Element]:
        return {g: self.algebra.zero() for g in self.gammas}

    def w_size(self, gammas: Optional[Sequence[str]] = None) -> int:
        return sum(len(self.w_basis[g]) for g in (self.gammas if gammas is None else gammas))

    def w_candidates(self, gammas: Sequence[str]):
        coords = [(g, b) for g in gammas for b in self.w_basis[g]]
        values = [()] if not coords else itertools.product(self.field.elements(), repeat=len(coords))
        for combo in values:
            w = self.zero_w()
            for (g, b), c in zip(coords, combo):
                if c:
                    w[g] = w[g] + b * c
            yield w

    def solve_at(self, x: str, w: Mapping[str, Element], gammas: Sequence[str],
                 deltas: Sequence[str]) -> Optional[List[Element]]:
        """Representatives r with {rp + J^2 p} a basis of e_x Jp / e_x J^2 p, or None"""
        jp_x, j2p_x, r_basis = self.spaces[x]
        field, algebra = self.field, self.algebra
        m = len(r_basis)
        conditions = [self.cond_gamma[g] - w[g] for g in gammas] + [self.cond_delta[d] for d in deltas]
        rows = []
        for cond in conditions:
            products = [r * cond for r in r_basis]
            for e in range(algebra.dim):
                row = [pr.coeffs[e] for pr in products]
                if any(row):
                    rows.append(row)
        if rows:
            solutions = linalg.nullspace(field, rows, m)
        else:
            solutions = [linalg.unit_vector(field, m, i) for i in range(m)]
        current, reps = j2p_x, []
        for coeffs in solutions:
            r = algebra.zero()
            for c, b in zip(coeffs, r_basis):
                if c:
                    r = r + b * c
            rp = (r * self.ctx.p).vector
            if not current.contains(rp):
                reps.append(r)
                current = current.extend([rp])
        return reps if jp_x.is_subspace_of(current) else None

    def solve(self, w: Mapping[str, Element], gammas: Optional[Sequence[str]] = None,
              deltas: Optional[Sequence[str]] = None) -> Dict[str, Optional[List[Element]]]:
        gammas = self.gammas if gammas is None else gammas
        deltas = self.deltas if deltas is None else deltas
        return {x: self.solve_at(x, w, gammas, deltas) for x in self.spaces}

    def fit_w(self, reps: Sequence[Element]) -> Optional[Dict[str, Element]]:
        """(w_gamma) with r*alpha...gamma = r*w_gamma for the given r, or None"""
        algebra, field = self.algebra, self.field
        w = self.zero_w()
        for g in self.gammas:
            basis = self.w_basis[g]
            rows, goal = [], []
            for r in reps:
                lhs = (r * self.cond_gamma[g]).vector
                images = [(r * b).vector for b in basis]
                for e in range(algebra.dim):
                    rows.append([img[e] for img in images])
                    goal.append(lhs[e])
            if not basis:
                if any(goal):
                    return None
                continue
            coeffs = linalg.solve(field, rows, goal, len(basis))
            if coeffs is None:
                return None
            for c, b in zip(coeffs, basis):
                if c:
                    w[g] = w[g] + b * c
        return w


def _all_solved(results: Mapping[str, Optional[List[Element]]]) -> bool:
    return all(r is not None for r in results.values())


def search_2b(U: UniserialModule, w_search_cap: int = 4096,
              rounds: int = 8) -> Tuple[str, Optional[Dict[str, Element]], List[Element], List[str], str]:
    """
    Search for (R, (w_gamma)) satisfying (2)(b')

    Returns:
        (verdict, w, representatives R, failing clauses, search mode)
    """
    ctx = MastContext(U)
    algebra = ctx.algebra
    jp, _ = algebra.jp_spaces(ctx.mast)
    if jp.dim == 0:
        return HOLDS, {}, [], [], 'vacuous'
    fdelta = fdelta_scalars(U)
    if fdelta is None:
        return UNKNOWN, None, [], [], 'needs-2a'
    search = _BSearch(ctx, fdelta)
    field = ctx.field
    total = search.w_size()

    def flatten(results):
        return [r for x in sorted(results) for r in results[x]]

    exhaustive = total == 0 or (field.is_finite and field.order ** total <= w_search_cap)
    if exhaustive:
        for w in search.w_candidates(search.gammas):
            results = search.solve(w)
            if _all_solved(results):
                return HOLDS, w, flatten(results), [], 'exhaustive'
        return FAILS, None, [], _diagnose_2b(search, w_search_cap), 'exhaustive'

    # w-free conditions are necessary whatever (w_gamma) is
    fixed = [g for g in search.gammas if not search.w_basis[g]]
    if not _all_solved(search.solve(search.zero_w(), fixed, search.deltas)):
        return FAILS, None, [], _diagnose_2b(search, w_search_cap), 'necessary-part'

    w = search.zero_w()
    for _ in range(rounds):
        results = search.solve(w)
        if _all_solved(results):
            return HOLDS, w, flatten(results), [], 'alternating'
        reps = []
        for x, found in sorted(results.items()):
            reps.extend(found if found is not None else algebra.jp_mod_j2p_basis(ctx.mast, x))
        fitted = search.fit_w(reps)
        if fitted is None or fitted == w:
            break
        w = fitted
    logger.info(f"(2)(b) search on {ctx.mast} inconclusive after {rounds} rounds")
    return UNKNOWN, None, [], [], 'alternating'


def _diagnose_2b(search: _BSearch, w_search_cap: int) -> List[str]:
    clauses = []
    for d in search.deltas:
        if not _all_solved(search.solve({}, [], [d])):
            clauses.append(f"2b-ii-δ={d}")
    field = search.field
    for g in search.gammas:
        size = search.w_size([g])
        if size and not (field.is_finite and field.order ** size <= w_search_cap):
            continue
        if not any(_all_solved(search.solve(w, [g], [])) for w in search.w_candidates([g])):
            clauses.append(f"2b-i-γ={g}")
    return clauses or ['2b-joint']


def check_2b(U: UniserialModule, w_search_cap: int = 4096, rounds: int = 8) -> CriterionReport:
    _require_triangular(U.algebra)
    if U.mast.is_stationary:
        return _simple_report('2b', CONJECTURE)
    verdict, w, reps, clauses, mode = search_2b(U, w_search_cap, rounds)
    algebra = U.algebra
    details: Dict[str, object] = {'search': mode}
    if w is not None:
        details['w'] = {g: algebra.format_element(x) for g, x in sorted(w.items())}
        details['representatives'] = [algebra.format_element(r) for r in reps]
    return CriterionReport('2b', verdict, CONJECTURE, clauses, details=details)


# Decisive criteria

def check_monomial(U: UniserialModule) -> CriterionReport:
    """
    Monomial triangular algebras: JU -> U is irreducible iff

        beta alpha_{s(beta)-1}...alpha_1 = 0                  (beta in B)
        delta alpha_{s(delta)-1}...alpha_1 = 0                (delta in D)
        beta' alpha_{n-1}...alpha_{t(gamma)} gamma = 0        (gamma in C)
        beta' alpha_{n-1}...alpha_{t(delta)} delta = 0        (delta in D)

    for every beta' in B' with beta' p != 0.

    Raises:
        NotMonomialError: some relation has more than one term
    """
    algebra = U.algebra
    if not algebra.is_monomial():
        raise NotMonomialError("the monomial criterion needs monomial relations")
    _require_triangular(algebra)
    if U.mast.is_stationary:
        return _simple_report('monomial', MONOMIAL)
    ctx = MastContext(U)
    clauses = []
    for b in ctx.classes.B:
        if not (ctx.arrow(b) * ctx.initial(ctx.source_index(b))).is_zero():
            clauses.append(f"a-i-β={b}")
    for d in ctx.classes.D:
        if not (ctx.arrow(d) * ctx.initial(ctx.source_index(d))).is_zero():
            clauses.append(f"a-ii-δ={d}")
    for bp in ctx.classes.B_prime:
        beta = ctx.arrow(bp)
        if (beta * ctx.p).is_zero():
            continue
        for g in ctx.classes.C:
            if not (beta * ctx.tail(ctx.target_index(g)) * ctx.arrow(g)).is_zero():
                clauses.append(f"b-i-β'={bp},γ={g}")
        for d in ctx.classes.D:
            if not (beta * ctx.tail(ctx.target_index(d)) * ctx.arrow(d)).is_zero():
                clauses.append(f"b-ii-β'={bp},δ={d}")
    return CriterionReport('monomial', FAILS if clauses else HOLDS, MONOMIAL, clauses)


def multiserial_hypothesis(U: UniserialModule) -> int:
    """dim J alpha_{n-1} / J^2 alpha_{n-1}"""
    algebra, p = U.algebra, U.mast
    last = algebra.quiver.arrow_path(p.arrows[0])
    return len(algebra.jp_mod_j2p_basis(last))


def check_multiserial(U: UniserialModule) -> CriterionReport:
    """
    Decisive when dim J alpha_{n-1} / J^2 alpha_{n-1} <= 1: irreducible iff
    (2)(a) holds and either Jp = 0 or some arrow beta' has {beta' p} a basis
    of Jp/J^2p with

        (i)  beta' alpha_{n-1}...alpha_{t(gamma)} gamma in beta' p J
        (ii) beta' alpha_{n-1}...alpha_{t(delta)} delta in K beta' alpha_{n-1}...alpha_{s(delta)}

    Otherwise the report defers (verdict unknown) to check_2b.
    """
    algebra = U.algebra
    _require_triangular(algebra)
    if U.mast.is_stationary:
        return _simple_report('multiserial', MULTISERIAL)
    dim = multiserial_hypothesis(U)
    if dim > 1:
        return CriterionReport('multiserial', UNKNOWN, MULTISERIAL, details={
            'deferred_to': '2b',
            'reason': f"dim J alpha_(n-1) / J^2 alpha_(n-1) = {dim} > 1",
        })
    first = check_2a(U)
    if first.fails:
        return CriterionReport('multiserial', FAILS, MULTISERIAL, list(first.failing_clauses))

    ctx = MastContext(U)
    jp, j2p = algebra.jp_spaces(ctx.mast)
    if jp.dim == 0:
        return CriterionReport('multiserial', HOLDS, MULTISERIAL, details={'Jp': 0})

    candidates = []
    for bp in ctx.classes.B_prime:
        if not j2p.contains((ctx.arrow(bp) * ctx.p).vector):
            candidates.append(bp)
    first_failure: List[str] = []
    for bp in candidates:
        beta = ctx.arrow(bp)
        q = beta * ctx.p
        clauses = []
        for g in ctx.classes.C:
            source = algebra.quiver.arrow(g).source
            x = beta * ctx.tail(ctx.target_index(g)) * ctx.arrow(g)
            span = Subspace(ctx.field, algebra.dim, [y.vector for y in algebra.right_multiples(q, 1, source=source)])
            if not span.contains(x.vector):
                clauses.append(f"b-i-β'={bp},γ={g}")
        for d in ctx.classes.D:
            x = beta * ctx.tail(ctx.target_index(d)) * ctx.arrow(d)
            if scalar_multiple(x, beta * ctx.tail(ctx.source_index(d))) is None:
                clauses.append(f"b-ii-β'={bp},δ={d}")
        if not clauses:
            return CriterionReport('multiserial', HOLDS, MULTISERIAL, details={"beta'": bp})
        if not first_failure:
            first_failure = clauses
    return CriterionReport('multiserial', FAILS, MULTISERIAL, first_failure or ["b-no-β'"])


# Pipeline

def check(U: UniserialModule, want_witness: bool = True, w_search_cap: int = 4096,
          rounds: int = 8) -> PipelineReport:
    """
    Run the criteria in order of decisiveness and combine them into a claim

    obstruction -> 1to2a -> (2)(a) -> monomial | multiserial | (2)(b)
    """
    from src.irreducibility.witness import build_witness

    report = PipelineReport(mast=str(U.mast))
    algebra = U.algebra

    def decide(r: CriterionReport, claim: Optional[bool], conjectural: bool = False) -> None:
        report.irreducible = claim
        report.decided_by = r.criterion
        report.conjectural = conjectural

    if U.mast.is_stationary:
        r = _simple_report('shape', NECESSARY)
        report.reports.append(r)
        decide(r, False)
        report.notes.append('U is simple: the zero map 0 -> U is split, no factorization to exhibit')
        return report

    r = check_obstruction(U)
    report.reports.append(r)
    if r.fails:
        decide(r, False)

    p = U.mast
    if report.irreducible is None and p.source not in p.vertices[1:]:
        r = check_1to2a(U)
        report.reports.append(r)
        if r.fails:
            decide(r, False)

    simple_mast = not p.has_repeated_vertex()
    if report.irreducible is None and algebra.is_triangular() and simple_mast:
        r = check_2a(U)
        report.reports.append(r)
        if r.fails:
            decide(r, False)
        elif algebra.is_monomial():
            r = check_monomial(U)
            report.reports.append(r)
            decide(r, r.holds)
        else:
            r = check_multiserial(U)
            report.reports.append(r)
            if r.verdict != UNKNOWN:
                decide(r, r.holds)
            else:
                r = check_2b(U, w_search_cap, rounds)
                report.reports.append(r)
                if r.holds:
                    decide(r, True)
                elif r.fails:
                    decide(r, False, conjectural=True)
    elif report.irreducible is None:
        report.notes.append('no decisive criterion applies (oriented cycles or a mast repeating a vertex)')

    if report.irreducible is False and want_witness:
        failing = next((c for r in report.reports if r.fails for c in r.failing_clauses), None)
        try:
            report.witness = build_witness(U, failing)
        except WitnessConstructionError as exc:
            report.notes.append(f"no witness: {exc}")
    logger.debug(f"pipeline on {p}: irreducible={report.irreducible} via {report.decided_by}")
    return report


def check_socle_projection(U: UniserialModule, **kwargs) -> PipelineReport:
    """
    Irreducibility of U -> U/soc U, read off the radical embedding of D(U) over the opposite algebra
    """
    from src.ar.presentation import dual
    from src.uniserial.variety import uniserial_from_representation

    return check(uniserial_from_representation(dual(U.rep)), **kwargs)

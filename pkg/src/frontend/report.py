#!/usr/bin/env python3
"""
Deterministic JSON serialization of every result type

Scalars become exact strings ("3/7", "2 mod 5"), matrices lists of rows,
module maps one matrix per vertex. Keys are sorted so identical input gives
byte-identical output.
"""
import json
from dataclasses import is_dataclass
from typing import Dict, List, Optional

from sympy.polys.matrices import DomainMatrix

from src.algebra import linalg
from src.algebra.engine import Element, FDAlgebra
from src.algebra.field import Field
from src.algebra.multiserial import is_left_multiserial
from src.ar.bounds import BoundsReport
from src.ar.census import Census
from src.ar.sequences import SESClass
from src.irreducibility.reports import CriterionReport, FactorizationWitness, PipelineReport
from src.irreducibility.sufficient import Splitting
from src.modules.representation import ModuleMap, Representation, SubmoduleBasis
from src.quiver.quiver import Path
from src.uniserial.variety import UniserialModule, UniserialPoint


PATH_ORDER = 'right-to-left'


class ReportFormatter:
    """Turn library objects into plain JSON-ready structures over one field"""

    def __init__(self, field: Optional[Field] = None):
        """
        Args:
            field: Field used to format bare scalars; objects that know
                their own field (modules, maps, algebras) ignore it
        """
        self.field = field

    # Building blocks

    def scalar(self, x, field: Optional[Field] = None) -> str:
        field = field or self.field
        if field is None:
            return str(x)
        return field.format(x)

    def matrix(self, m: DomainMatrix, field: Field) -> List[List[str]]:
        return [[field.format(c) for c in row] for row in linalg.to_rows(m)]

    def representation(self, M: Representation) -> Dict[str, object]:
        vertices = M.algebra.vertices
        return {
            'name': M.name,
            'dimension_vector': dict(zip(vertices, M.dimension_vector)),
            'dim': M.dim,
            'arrows': {a: self.matrix(m, M.field) for a, m in sorted(M.maps.items()) if m.shape[0] and m.shape[1]},
        }

    def module_map(self, f: ModuleMap) -> Dict[str, object]:
        return {
            'source': list(f.source.dimension_vector),
            'target': list(f.target.dimension_vector),
            'vertices': {v: self.matrix(m, f.source.field) for v, m in sorted(f.maps.items())
                         if m.shape[0] and m.shape[1]},
        }

    def element(self, x: Element) -> str:
        return x.algebra.format_element(x)

    # Result types

    def witness(self, w: FactorizationWitness) -> Dict[str, object]:
        w.verify()
        return {
            'tag': w.tag,
            'V': self.representation(w.V),
            'phi': self.module_map(w.phi),
            'psi': self.module_map(w.psi),
            'scalars': {k: self.scalar(c, w.V.field) for k, c in sorted(w.scalars.items())},
            'notes': dict(w.notes),
            'checks': dict(w.checks),
            'verified': w.verified,
        }

    def criterion(self, r: CriterionReport) -> Dict[str, object]:
        return {
            'criterion': r.criterion,
            'verdict': r.verdict,
            'theorem': r.theorem,
            'failing_clauses': list(r.failing_clauses),
            'details': self.convert(r.details),
            'witness': self.witness(r.witness) if r.witness else None,
        }

    def pipeline(self, report: PipelineReport) -> Dict[str, object]:
        return {
            'mast': report.mast,
            'irreducible': report.irreducible,
            'conjectural': report.conjectural,
            'decided_by': report.decided_by,
            'verdict': _verdict(report.irreducible),
            'criteria': [self.criterion(r) for r in report.reports],
            'witness': self.witness(report.witness) if report.witness else None,
            'notes': list(report.notes),
        }

    def point(self, k: UniserialPoint) -> Dict[str, object]:
        return {'mast': str(k.mast), 'scalars': k.as_dict(self.field.format if self.field else str)}

    def uniserial(self, U: UniserialModule) -> Dict[str, object]:
        return {
            'mast': str(U.mast),
            'point': k_as_dict(U.point, U.rep.field),
            'module': self.representation(U.rep),
            'top': [U.rep.field.format(c) for c in U.top],
        }

    def sequence(self, s: SESClass) -> Dict[str, object]:
        return {
            'provenance': s.provenance,
            'A': self.representation(s.A),
            'E': self.representation(s.E),
            'C': self.representation(s.C),
            'f': self.module_map(s.f),
            'g': self.module_map(s.g),
            'coordinates': [s.C.field.format(c) for c in s.coordinates],
            'verified': s.verified,
            'verification': s.verification.get('verification'),
        }

    def splitting(self, s: Splitting) -> Dict[str, object]:
        return {'kind': s.kind, 'mode': s.mode, 'chi': self.module_map(s.chi)}

    def algebra(self, algebra: FDAlgebra) -> Dict[str, object]:
        return algebra_summary(algebra)

    def convert(self, obj):
        """Dispatch on type; plain containers are converted recursively"""
        if obj is None or isinstance(obj, (bool, int, float, str)):
            return obj
        for kind, method in (
            (PipelineReport, self.pipeline),
            (CriterionReport, self.criterion),
            (FactorizationWitness, self.witness),
            (UniserialModule, self.uniserial),
            (UniserialPoint, self.point),
            (SESClass, self.sequence),
            (Splitting, self.splitting),
            (ModuleMap, self.module_map),
            (Representation, self.representation),
            (FDAlgebra, self.algebra),
            (Element, self.element),
        ):
            if isinstance(obj, kind):
                return method(obj)
        if isinstance(obj, BoundsReport):
            return obj.as_dict()
        if isinstance(obj, Census):
            return obj.as_dict()
        if isinstance(obj, SubmoduleBasis):
            return {'dimension_vector': list(obj.dimension_vector), 'dim': obj.dim}
        if isinstance(obj, Path):
            return str(obj)
        if isinstance(obj, dict):
            return {str(k): self.convert(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [self.convert(v) for v in obj]
        if is_dataclass(obj):
            return {k: self.convert(v) for k, v in vars(obj).items()}
        return self.scalar(obj)


def k_as_dict(point: UniserialPoint, field: Field) -> Dict[str, str]:
    return point.as_dict(field.format)


def _verdict(irreducible: Optional[bool]) -> str:
    if irreducible is None:
        return 'unknown'
    return 'irreducible' if irreducible else 'not-irreducible'


def algebra_summary(algebra: FDAlgebra) -> Dict[str, object]:
    """dim, basis, nilpotency, radical series and multiseriality of an algebra"""
    return {
        'name': algebra.name,
        'field': algebra.field.name,
        'dim': algebra.dim,
        'basis': [str(p) for p in algebra.basis],
        'nilpotency': algebra.nilpotency,
        'radical_series': algebra.radical_series_dims(),
        'monomial': algebra.is_monomial(),
        'triangular': algebra.is_triangular(),
        'multiserial_m': is_left_multiserial(algebra),
        'relations': [str(r) for r in algebra.relations],
    }


def emit_report(obj, field: Optional[Field] = None, **extra) -> str:
    """
    JSON text for any report object, with sorted keys and the path order echoed

    Args:
        obj: Any result type, or a dict/list of them
        field: Field for bare scalars
        **extra: Additional top-level keys (command, file, flags)
    """
    payload = {'path_order': PATH_ORDER, 'result': ReportFormatter(field).convert(obj)}
    payload.update({k: ReportFormatter(field).convert(v) for k, v in extra.items()})
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)

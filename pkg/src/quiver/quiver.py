#!/usr/bin/env python3
"""
Finite quivers and paths

Paths compose right to left: the path "b*a" traverses a first, then b.
Arrow tuples are stored in that written order, so the first-traversed
arrow is the last entry.
"""
from dataclasses import dataclass
from typing import Dict, Generator, Iterable, List, Sequence, Tuple

import networkx as nx

from src.utils.errors import CompositionError, QuiverError, UnknownArrowError, UnknownVertexError


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """
    A path in a quiver

    vertices lists the visited vertices in traversal order (length+1
    entries); arrows lists the arrows right to left.
    """
    vertices: Tuple[str, ...]
    arrows: Tuple[str, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.arrows) + 1:
            raise QuiverError("a path visits exactly one more vertex than it has arrows")

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_stationary(self) -> bool:
        return not self.arrows

    @property
    def traversal(self) -> Tuple[str, ...]:
        """Arrows in the order they are walked"""
        return tuple(reversed(self.arrows))

    def right_subpath(self, k: int) -> 'Path':
        """The right subpath of length k (the first k arrows walked)"""
        if not 0 <= k <= self.length:
            raise QuiverError(f"no right subpath of length {k} in {self}")
        arrows = self.arrows[self.length - k:] if k else ()
        return Path(self.vertices[:k + 1], arrows)

    def left_subpath(self, k: int) -> 'Path':
        """The left subpath of length k (the last k arrows walked)"""
        if not 0 <= k <= self.length:
            raise QuiverError(f"no left subpath of length {k} in {self}")
        return Path(self.vertices[self.length - k:], self.arrows[:k])

    def segment(self, start: int, end: int) -> 'Path':
        """Subpath from the vertex at traversal position start to position end"""
        if not 0 <= start <= end <= self.length:
            raise QuiverError(f"bad segment [{start}, {end}] of {self}")
        walked = self.traversal[start:end]
        return Path(self.vertices[start:end + 1], tuple(reversed(walked)))

    def reversed(self) -> 'Path':
        """The same arrows read in the opposite quiver"""
        return Path(tuple(reversed(self.vertices)), tuple(reversed(self.arrows)))

    def has_repeated_vertex(self) -> bool:
        return len(set(self.vertices)) != len(self.vertices)

    def __str__(self) -> str:
        if self.is_stationary:
            return f"e_{self.source}"
        return "*".join(self.arrows)

    def __repr__(self) -> str:
        return f"Path({self})"


def stationary(vertex: str) -> Path:
    return Path((vertex,), ())


def compose(q: Path, p: Path) -> Path:
    """q after p (written q*p): walk p, then q"""
    if p.target != q.source:
        raise CompositionError(f"cannot compose {q} after {p}: t({p})={p.target} but s({q})={q.source}")
    return Path(p.vertices + q.vertices[1:], q.arrows + p.arrows)


def sort_key(path: Path) -> Tuple:
    return (path.length, path.arrows, path.vertices)


class Quiver:
    """Finite quiver; parallel arrows and loops are allowed"""

    def __init__(self, vertices: Iterable[str], arrows: Iterable[Tuple[str, str, str]]):
        """
        Args:
            vertices: Vertex ids
            arrows: (id, source, target) triples
        """
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex ids must be unique")
        known = set(self.vertices)

        self.arrows: Dict[str, Arrow] = {}
        for arrow_id, source, target in arrows:
            arrow_id, source, target = str(arrow_id), str(source), str(target)
            if arrow_id in self.arrows:
                raise QuiverError(f"duplicate arrow id {arrow_id}")
            if arrow_id in known:
                raise QuiverError(f"arrow id {arrow_id} clashes with a vertex id")
            for v in (source, target):
                if v not in known:
                    raise UnknownVertexError(f"arrow {arrow_id} uses undeclared vertex {v}")
            self.arrows[arrow_id] = Arrow(arrow_id, source, target)

        self._out: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        self._in: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows.values():
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and list(self.arrows.values()) == list(other.arrows.values()))

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self.arrows.values())))

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self.arrows[arrow_id]
        except KeyError:
            raise UnknownArrowError(f"unknown arrow {arrow_id}") from None

    def check_vertex(self, vertex: str) -> str:
        if vertex not in self._out:
            raise UnknownVertexError(f"unknown vertex {vertex}")
        return vertex

    def arrows_from(self, vertex: str) -> List[Arrow]:
        return list(self._out[self.check_vertex(vertex)])

    def arrows_to(self, vertex: str) -> List[Arrow]:
        return list(self._in[self.check_vertex(vertex)])

    def arrow_path(self, arrow_id: str) -> Path:
        a = self.arrow(arrow_id)
        return Path((a.source, a.target), (a.id,))

    def stationary(self, vertex: str) -> Path:
        return stationary(self.check_vertex(vertex))

    def path(self, *arrow_ids: str) -> Path:
        """Path from arrow ids written right to left, e.g. path('a2', 'a1')"""
        if not arrow_ids:
            raise QuiverError("use stationary(v) for paths of length 0")
        result = self.arrow_path(arrow_ids[-1])
        for arrow_id in reversed(arrow_ids[:-1]):
            result = compose(self.arrow_path(arrow_id), result)
        return result

    def parse_path(self, text: str) -> Path:
        """Parse "a2*a1" or "e_v" into a Path"""
        text = text.strip()
        if text.startswith('e_') and text[2:] in self._out:
            return self.stationary(text[2:])
        return self.path(*[t.strip() for t in text.split('*')])

    def extend(self, path: Path) -> List[Path]:
        """All paths a*path for arrows a leaving t(path)"""
        return [compose(self.arrow_path(a.id), path) for a in self._out[path.target]]

    def paths_from(self, vertex: str, max_length: int) -> Generator[Path, None, None]:
        """All paths starting at vertex with length <= max_length, shortest first"""
        layer = [self.stationary(vertex)]
        for _ in range(max_length + 1):
            yield from layer
            layer = [q for p in layer for q in self.extend(p)]

    def paths_of_length(self, length: int) -> List[Path]:
        layer = [self.stationary(v) for v in self.vertices]
        for _ in range(length):
            layer = [q for p in layer for q in self.extend(p)]
        return layer

    def paths_up_to(self, max_length: int) -> List[Path]:
        out = []
        for v in self.vertices:
            out.extend(self.paths_from(v, max_length))
        return out

    def paths_between(self, source: str, target: str, max_length: int) -> List[Path]:
        return [p for p in self.paths_from(source, max_length) if p.target == target]

    def opposite(self) -> 'Quiver':
        """Same vertices and arrow ids, every arrow reversed"""
        return Quiver(self.vertices, [(a.id, a.target, a.source) for a in self.arrows.values()])

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for a in self.arrows.values():
            graph.add_edge(a.source, a.target, key=a.id)
        return graph


def has_oriented_cycle(quiver: Quiver) -> bool:
    """Triangularity test: True iff the quiver has an oriented cycle (loops included)"""
    return not nx.is_directed_acyclic_graph(quiver.to_networkx())


def right_subpaths(p: Path) -> List[Path]:
    """e_{s(p)}, then the right subpaths of length 1, ..., len(p)"""
    return [p.right_subpath(k) for k in range(p.length + 1)]


def is_right_subpath(u: Path, p: Path) -> bool:
    return u.length <= p.length and p.right_subpath(u.length) == u

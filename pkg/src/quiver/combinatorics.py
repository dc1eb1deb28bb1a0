#!/usr/bin/env python3
"""
Combinatorics of a path p inside a quiver

Detours, routes and non-routes, and the classification of arrows touching a
mast p = alpha_{n-1} ... alpha_1 through vertices 1..n.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.quiver.quiver import Path, Quiver, compose, has_oriented_cycle, right_subpaths
from src.utils.errors import UnsupportedConfigurationError


@dataclass(frozen=True)
class Detour:
    """
    A pair (alpha, u): u a right subpath of the mast, alpha*u a path that is
    not a right subpath, and v_family the right subpaths longer than u that
    end where alpha ends.
    """
    arrow: str
    subpath: Path
    v_family: Tuple[Path, ...]
    path: Path

    @property
    def indices(self) -> range:
        return range(len(self.v_family))

    @property
    def key(self) -> str:
        return f"{self.arrow}@{self.subpath}"

    def __str__(self) -> str:
        return f"({self.arrow}, {self.subpath})"


def detours(quiver: Quiver, p: Path) -> List[Detour]:
    """All detours on p, in order of (length of u, arrow id)"""
    subs = right_subpaths(p)
    sub_set = set(subs)
    found = []
    for u in subs:
        for arrow in sorted(quiver.arrows_from(u.target), key=lambda a: a.id):
            au = compose(quiver.arrow_path(arrow.id), u)
            if au in sub_set:
                continue
            family = tuple(v for v in subs if v.length >= u.length + 1 and v.target == arrow.target)
            if family:
                found.append(Detour(arrow.id, u, family, au))
    return found


def is_route(quiver: Quiver, q: Path, p: Path) -> bool:
    """q (starting at s(p)) visits an in-order subsequence of p's vertices and nothing else"""
    if q.source != p.source:
        return False
    sequence = p.vertices
    position = 0
    for vertex in q.vertices:
        while position < len(sequence) and sequence[position] != vertex:
            position += 1
        if position == len(sequence):
            return False
        # a vertex may repeat in q only if it repeats in the sequence
        position += 1
    return True


def non_routes_up_to(quiver: Quiver, p: Path, max_length: int) -> List[Path]:
    return [q for q in quiver.paths_from(p.source, max_length) if not is_route(quiver, q, p)]


def minimal_non_routes(quiver: Quiver, p: Path, max_length: int) -> List[Path]:
    """
    Non-routes whose every proper right subpath is a route

    Every non-route is a left multiple of one of these, so they generate the
    span of all non-routes as a left ideal.
    """
    found = []
    layer = [quiver.stationary(p.source)]
    for _ in range(max_length):
        next_layer = []
        for route in layer:
            for q in quiver.extend(route):
                if is_route(quiver, q, p):
                    next_layer.append(q)
                else:
                    found.append(q)
        layer = next_layer
        if not layer:
            break
    return found


@dataclass
class MastFrame:
    """The mast p with its vertices relabelled 1..n along the walk"""
    mast: Path
    position: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.position = {v: i + 1 for i, v in enumerate(self.mast.vertices)}

    @property
    def n(self) -> int:
        return self.mast.length + 1

    def vertex(self, i: int) -> str:
        return self.mast.vertices[i - 1]

    def alpha(self, i: int) -> str:
        """Arrow alpha_i from vertex i to vertex i+1"""
        return self.mast.traversal[i - 1]

    def alphas(self) -> List[str]:
        return list(self.mast.traversal)

    def segment(self, i: int, j: int) -> Path:
        """alpha_{j-1} ... alpha_i: the piece of the mast from vertex i to vertex j"""
        return self.mast.segment(i - 1, j - 1)

    def on_mast(self, vertex: str) -> Optional[int]:
        return self.position.get(vertex)


@dataclass
class ArrowClassification:
    frame: MastFrame
    B: List[str]
    B_prime: List[str]
    C: List[str]
    C_prime: List[str]
    D: List[str]

    def as_dict(self) -> Dict[str, List[str]]:
        return {"B": self.B, "B'": self.B_prime, "C": self.C, "C'": self.C_prime, "D": self.D}


def mast_frame(p: Path) -> MastFrame:
    if p.has_repeated_vertex():
        raise UnsupportedConfigurationError(f"mast {p} repeats a vertex; only simple masts are supported here")
    return MastFrame(p)


def classify_arrows(quiver: Quiver, p: Path) -> ArrowClassification:
    """
    Sort the arrows touching p into B, B', C, C', D

    An arrow meeting several conditions (only possible with oriented cycles)
    goes to the first of B', C', B, C, D.
    """
    frame = mast_frame(p)
    n = frame.n
    alphas = set(frame.alphas())
    result = ArrowClassification(frame, [], [], [], [], [])
    for arrow in quiver.arrows.values():
        if arrow.id in alphas:
            continue
        s = frame.on_mast(arrow.source)
        t = frame.on_mast(arrow.target)
        if s == n:
            result.B_prime.append(arrow.id)
        elif t == 1:
            result.C_prime.append(arrow.id)
        elif s is not None and t is None:
            result.B.append(arrow.id)
        elif s is None and t is not None:
            result.C.append(arrow.id)
        elif s is not None and t is not None:
            result.D.append(arrow.id)
    return result


def is_triangular(quiver: Quiver) -> bool:
    return not has_oriented_cycle(quiver)

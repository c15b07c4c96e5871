"""The shipped algebras: linear A_2, A_3, 1->2->3 with a1.a2 = 0, one vertex,
and the one-point extensions used throughout the verification suites."""

from __future__ import annotations

from importlib import resources
from typing import Dict, List, Optional, Tuple

from .exactlin import FieldSpec
from .formats import parse_quiver
from .presentation import AlgebraPresentation, ExtensionContext, build_algebra, one_point_extension

BASES = ("a2", "a3", "a3_rel", "one_vertex")

# (base, P0 multiplicities, name of the shipped extended algebra)
EXTENSIONS: Tuple[Tuple[str, Dict[str, int], str], ...] = (
    ("a2", {"1": 1}, "a2_p1"),
    ("a2", {"2": 1}, "a2_p2"),
    ("a3_rel", {"1": 1}, "a3_rel_p1"),
)

NAMES = BASES + tuple(e[2] for e in EXTENSIONS)


def with_field(alg: AlgebraPresentation, field: FieldSpec) -> AlgebraPresentation:
    if alg.field == field:
        return alg
    return build_algebra(field, alg.quiver, alg.relations, alg.max_path_length, alg.name)


def load(name: str, field: Optional[FieldSpec] = None) -> AlgebraPresentation:
    if name not in NAMES:
        raise KeyError(f"unknown corpus algebra {name!r}; known: {', '.join(NAMES)}")
    text = resources.files("opext").joinpath("data", f"{name}.quiver").read_text(encoding="utf-8")
    alg = parse_quiver(text, name=name)
    return alg if field is None else with_field(alg, field)


def extension(index: int, field: Optional[FieldSpec] = None) -> ExtensionContext:
    base, p0, _ = EXTENSIONS[index]
    return one_point_extension(load(base, field), p0)


def extensions(field: Optional[FieldSpec] = None) -> List[ExtensionContext]:
    return [extension(i, field) for i in range(len(EXTENSIONS))]


def all_algebras(field: Optional[FieldSpec] = None) -> List[AlgebraPresentation]:
    """Every shipped algebra except the trivial one-vertex example."""
    return [load(n, field) for n in NAMES if n != "one_vertex"]

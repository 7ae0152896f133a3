"""Small algebras used as worked examples and as the property-test universe."""
from __future__ import annotations

from functools import lru_cache

from .endo import end_algebra, end_algebra_of_summands
from .quiver_algebra import FDAlgebra, QuiverPresentation, build_algebra, parse_presentation
from .repmod import Representation, basic_summands, coregular, direct_sum, regular, simple


def linear_text(n: int, zero_length: int = 0, name: str = "x") -> str:
    """Linear ``A_n`` (vertices 1..n, arrows i -> i+1), all paths of ``zero_length`` set to zero."""
    lines = ["field Q"]
    lines += [f"vertex {i}" for i in range(1, n + 1)]
    lines += [f"arrow {name}{i} {i} {i + 1}" for i in range(1, n)]
    if zero_length:
        for start in range(1, n - zero_length + 1):
            word = "*".join(f"{name}{j}" for j in reversed(range(start, start + zero_length)))
            lines.append(f"relation 1 {word}")
    return "\n".join(lines) + "\n"


SQUARE_TEXT = """field Q
vertex 1
vertex 2
vertex 3
vertex 4
arrow b 1 2
arrow a 2 4
arrow d 1 3
arrow c 3 4
relation 1 a*b - 1 c*d
"""

# the five-vertex quiver with one commutative square displayed for the first shifted algebra
SQUARE_WITH_TAIL_TEXT = """field Q
vertex 1
vertex 2
vertex 3
vertex 4
vertex 5
arrow u 1 2
arrow v 1 4
arrow w 2 5
arrow x 4 5
arrow y 5 3
relation 1 w*u - 1 x*v
"""

DUAL_NUMBERS_TEXT = """field Q
vertex 1
arrow x 1 1
relation 1 x*x
"""

CYCLIC_NAKAYAMA_TEXT = """field Q
vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 2 3
arrow c 3 1
relation 1 b*a
relation 1 c*b
relation 1 a*c
"""

POINT_TEXT = """field Q
vertex 1
"""


def linear_except_through(n_vertices: int, keep: int) -> QuiverPresentation:
    """Linear quiver on ``1..n_vertices`` with all length-2 paths zero except the one through ``keep``."""
    lines = ["field Q"]
    lines += [f"vertex {i}" for i in range(1, n_vertices + 1)]
    lines += [f"arrow x{i} {i} {i + 1}" for i in range(1, n_vertices)]
    for mid in range(2, n_vertices):
        if mid != keep:
            lines.append(f"relation 1 x{mid}*x{mid - 1}")
    return parse_presentation("\n".join(lines) + "\n")


@lru_cache(maxsize=None)
def linear_a(n: int, zero_length: int = 0) -> FDAlgebra:
    return build_algebra(parse_presentation(linear_text(n, zero_length)))


@lru_cache(maxsize=None)
def example_gamma_a5() -> FDAlgebra:
    """Linear ``A_5`` modulo paths of length 3."""
    return linear_a(5, 3)


@lru_cache(maxsize=None)
def square() -> FDAlgebra:
    return build_algebra(parse_presentation(SQUARE_TEXT))


@lru_cache(maxsize=None)
def dual_numbers() -> FDAlgebra:
    return build_algebra(parse_presentation(DUAL_NUMBERS_TEXT))


@lru_cache(maxsize=None)
def cyclic_nakayama() -> FDAlgebra:
    return build_algebra(parse_presentation(CYCLIC_NAKAYAMA_TEXT))


@lru_cache(maxsize=None)
def point() -> FDAlgebra:
    return build_algebra(parse_presentation(POINT_TEXT))


def generator_cogenerator(a: FDAlgebra) -> Representation:
    """The basic module with additive closure add(A ⊕ DA)."""
    parts = basic_summands([regular(a), coregular(a)])
    return parts[0] if len(parts) == 1 else direct_sum(parts)[0]


@lru_cache(maxsize=None)
def mt_gamma(a_key: tuple) -> FDAlgebra:
    """``End_A(A ⊕ DA)^op`` for ``A = linear_a(*a_key)``."""
    a = linear_a(*a_key)
    return end_algebra(generator_cogenerator(a), name=f"Gamma{a_key}")


def rad_square_gamma(n: int) -> FDAlgebra:
    """Gamma for linear ``A_n`` modulo the radical squared."""
    return mt_gamma((n, 2))


@lru_cache(maxsize=None)
def auslander_a3() -> FDAlgebra:
    """Auslander algebra of linear ``A_3``: endomorphisms of all six indecomposables."""
    a = linear_a(3)
    # projectives, injectives and simples exhaust the indecomposables of linear A_3
    mods = basic_summands([regular(a), coregular(a)] + [simple(a, v) for v in range(3)])
    return end_algebra_of_summands(mods, name="Auslander A3")


def fixture_universe() -> dict:
    """Name -> algebra for the property-test universe."""
    return {
        "A5/rad3": example_gamma_a5(),
        "square": square(),
        "A2": linear_a(2),
        "A3": linear_a(3),
        "Auslander A3": auslander_a3(),
        "rad2 Gamma n=3": rad_square_gamma(3),
        "dual numbers": dual_numbers(),
        "cyclic Nakayama": cyclic_nakayama(),
    }


def gamma_module_universe(ctx, kmax: int = None) -> list:
    """Indecomposable summands of the regular and coregular modules, the shifted and
    coshifted modules up to ``kmax`` (default: the dominant dimension, at most 3), and all simples."""
    from .homological import AtLeast
    g = ctx.gamma
    d = ctx.d
    if kmax is None:
        kmax = 3 if isinstance(d, AtLeast) or d == float("inf") else min(d, 3)
    mods = [regular(g), coregular(g)] + [simple(g, v) for v in range(g.n_vertices)]
    for k in range(1, kmax + 1):
        mods += ctx.shifted_summands(k) + ctx.coshifted_summands(k)
    return basic_summands(mods)


def module_universe(a: FDAlgebra, extra=()) -> list:
    """Indecomposable summands of the regular and coregular modules, the simples and ``extra``."""
    mods = [regular(a), coregular(a)] + [simple(a, v) for v in range(a.n_vertices)] + list(extra)
    return basic_summands(mods)


def mt_triples() -> dict:
    """Name -> (A, E) with E basic and add E = add(A ⊕ DA)."""
    out = {}
    for key in ((2, 0), (3, 0), (3, 2), (4, 2), (4, 3)):
        a = linear_a(*key)
        out[f"A{key[0]}" + (f"/rad{key[1]}" if key[1] else "")] = (a, generator_cogenerator(a))
    return out

"""Built-in quiver presentations used by the command-line suites and tests."""

from __future__ import annotations

from .fp import DEFAULT_PRIME

# Two vertices with arrows a: 1 -> 2 and b, c: 2 -> 1, modulo a*b and c*a*c;
# an 11-dimensional algebra of infinite global dimension.
TWO_VERTEX_EXAMPLE = """\
quiver two_vertex {
  field: F_32003;
  vertices: v1, v2;
  arrows: a: v1 -> v2, b: v2 -> v1, c: v2 -> v1;
  relations: a*b, c*a*c;
}
"""

# The subalgebra generated by the vertices, a and b; global dimension two.
TWO_VERTEX_SUBALGEBRA = """\
quiver two_vertex_sub {
  field: F_32003;
  vertices: v1, v2;
  arrows: a: v1 -> v2, b: v2 -> v1;
  relations: a*b;
}
"""


def square_zero_source(n: int, p: int = DEFAULT_PRIME) -> str:
    """One vertex with n loops and all length-two products as relations.

    The result is the (n+1)-dimensional algebra k<x_1..x_n>/(x_1..x_n)^2,
    i.e. the trivial extension of the field by an n-dimensional bimodule.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    lines = [f"quiver square_zero_{n} {{", f"  field: F_{p};", "  vertices: v;"]
    if n:
        arrows = ", ".join(f"x{i}: v -> v" for i in range(1, n + 1))
        lines.append(f"  arrows: {arrows};")
        rels = ", ".join(f"x{i}*x{j}" for i in range(1, n + 1) for j in range(1, n + 1))
        lines.append(f"  relations: {rels};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def with_prime(source: str, p: int) -> str:
    """Rewrite the field line of a presentation source to use the prime p."""
    return source.replace(f"F_{DEFAULT_PRIME}", f"F_{p}")

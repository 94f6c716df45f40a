import numpy as np
import pytest

from trivext.presets import TWO_VERTEX_EXAMPLE, square_zero_source
from trivext.quiver import (
    ParseError,
    QuiverError,
    build_algebra,
    enumerate_path_basis,
    parse_presentation,
    path_name,
)

from .oracles import monomial_path_basis

LOOP_SRC = """\
quiver loop {
  field: F_32003;
  vertices: v;
  arrows: x: v -> v;
  relations: x*x;
}
"""


def test_parse_example(example_pres):
    assert len(example_pres.vertices) == 2
    assert len(example_pres.arrows) == 3
    assert len(example_pres.relations) == 2
    assert [a.name for a in example_pres.arrows] == ["a", "b", "c"]
    a, b, c = example_pres.arrows
    assert (a.source, a.target) == (0, 1)
    assert (b.source, b.target) == (1, 0)
    assert (c.source, c.target) == (1, 0)


def test_parse_loop():
    pres = parse_presentation(LOOP_SRC)
    assert pres.vertices == ("v",)
    assert pres.relations[0][0].arrows == (0, 0)


def test_parse_comments_and_coefficients():
    src = """\
    quiver q {  # a comment
      field: F_7;
      vertices: u, v;
      arrows: a: u -> v, b: v -> u, c: v -> u;
      relations: 2*a*b - a*c;  # parallel paths v -> v
    }
    """
    pres = parse_presentation(src)
    assert pres.field_prime == 7
    rel = pres.relations[0]
    assert [t.coeff for t in rel] == [2, -1]


def test_parse_non_composable_relation():
    src = """\
    quiver q {
      field: F_5;
      vertices: u, v;
      arrows: a: u -> v;
      relations: a*a;
    }
    """
    with pytest.raises(ParseError, match="non-composable"):
        parse_presentation(src)


def test_parse_errors_carry_location():
    with pytest.raises(ParseError, match=r"^2:3"):
        parse_presentation("quiver q {\n  vertices: v;\n}")
    with pytest.raises(ParseError, match="undefined vertex"):
        parse_presentation("quiver q { field: F_5; vertices: v; arrows: a: v -> w; }")
    with pytest.raises(ParseError, match="undefined arrow"):
        parse_presentation(
            "quiver q { field: F_5; vertices: v; arrows: a: v -> v; relations: a*z; }")
    with pytest.raises(ParseError, match="length >= 2"):
        parse_presentation(
            "quiver q { field: F_5; vertices: v; arrows: a: v -> v; relations: a; }")
    with pytest.raises(ParseError, match="not prime"):
        parse_presentation("quiver q { field: F_6; vertices: v; }")
    with pytest.raises(ParseError, match="parallel"):
        parse_presentation(
            "quiver q { field: F_5; vertices: u, v; "
            "arrows: a: u -> v, b: v -> u; relations: a*b + b*a; }")


def test_example_basis_matches_brute_force(example_pres, example_basis):
    arrows = {"a": ("v1", "v2"), "b": ("v2", "v1"), "c": ("v2", "v1")}
    expected = monomial_path_basis(arrows, ["v1", "v2"],
                                   [("a", "b"), ("c", "a", "c")], max_len=8)
    ours = set()
    for w in example_basis.paths:
        if not w[1]:
            ours.add(("e", example_pres.vertices[w[0]]))
        else:
            ours.add(tuple(example_pres.arrows[i].name for i in w[1]))
    assert ours == set(expected)
    assert example_basis.dim == 11


def test_example_basis_names(example_basis):
    assert set(example_basis.names()) == {
        "e_v1", "e_v2", "a", "b", "c",
        "a*c", "b*a", "c*a", "a*c*a", "b*a*c", "b*a*c*a",
    }


def test_loop_basis():
    basis = enumerate_path_basis(parse_presentation(LOOP_SRC))
    assert basis.dim == 2
    assert basis.names() == ("e_v", "x")


@pytest.mark.parametrize("n", [0, 1, 2, 3, 5])
def test_square_zero_dimensions(n):
    basis = enumerate_path_basis(parse_presentation(square_zero_source(n)))
    assert basis.dim == n + 1


def test_non_admissible_detected():
    src = "quiver q { field: F_5; vertices: v; arrows: x: v -> v; }"
    with pytest.raises(QuiverError, match="non-admissible"):
        enumerate_path_basis(parse_presentation(src, path_length_bound=8))


def test_inhomogeneous_relation_rejected():
    src = """\
    quiver q {
      field: F_5;
      vertices: v;
      arrows: x: v -> v, y: v -> v;
      relations: x*x - x*y*x;
    }
    """
    with pytest.raises(QuiverError, match="same length"):
        enumerate_path_basis(parse_presentation(src))


def test_build_example_algebra(example_alg):
    assert example_alg.dim == 11
    assert len(example_alg.idempotents) == 2
    assert example_alg.radical.dim == 9


def test_build_loop_algebra_is_dual_numbers():
    alg = build_algebra(parse_presentation(LOOP_SRC))
    e, x = alg.basis_vec(0), alg.basis_vec(1)
    assert (alg.multiply(x, x) == 0).all()
    assert alg.multiply(e, x).tolist() == x.tolist()
    assert alg.multiply(x, e).tolist() == x.tolist()


def test_build_square_zero_2():
    alg = build_algebra(parse_presentation(square_zero_source(2)))
    assert alg.dim == 3
    for i in (1, 2):
        for j in (1, 2):
            assert (alg.multiply(alg.basis_vec(i), alg.basis_vec(j)) == 0).all()


def test_grading_consistency(example_pres, example_basis, example_alg):
    lengths = [len(w[1]) for w in example_basis.paths]
    for i in range(example_alg.dim):
        for j in range(example_alg.dim):
            prod = example_alg.mult[i, j]
            for k in np.nonzero(prod)[0]:
                assert lengths[k] == lengths[i] + lengths[j]


def test_subword_closure(example_pres, example_basis):
    words = {w[1] for w in example_basis.paths if w[1]}
    for w in words:
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                assert w[i:j] in words, (w, w[i:j])


def test_nonmonomial_commutation_relation():
    # two parallel length-2 paths identified up to a scalar
    src = """\
    quiver q {
      field: F_7;
      vertices: u, v, w;
      arrows: a: u -> v, b: v -> w, c: u -> v, d: v -> w;
      relations: b*a - 2*d*c, b*c, d*a;
    }
    """
    basis = enumerate_path_basis(parse_presentation(src))
    # paths: 3 trivial + 4 arrows + one surviving length-2 class
    assert basis.dim == 8
    alg = build_algebra(parse_presentation(src), basis)
    b_vec, a_vec = alg.basis_vec(4), alg.basis_vec(3)
    d_vec, c_vec = alg.basis_vec(6), alg.basis_vec(5)
    ba = alg.multiply(b_vec, a_vec)
    dc = alg.multiply(d_vec, c_vec)
    assert ((ba - 2 * dc) % 7 == 0).all()
    assert ba.any()

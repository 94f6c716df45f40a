import numpy as np
import pytest

from trivext.algebra import Algebra, AlgebraError, LeftModule, RightModule, corner, simple_modules
from trivext.bimodule import (
    Bimodule,
    associate_tensor,
    bimodule_check,
    flat_tensor,
    induced_map,
    left_unit_collapse,
    middle_relation_columns,
    right_projective_test,
    right_unit_collapse,
    tensor_map,
    tensor_over,
    tensor_with_module,
)
from trivext.fp import Mat

P = 32003


@pytest.fixture(scope="module")
def field_alg():
    return Algebra.field(P)


def corner_bimodules(alg, field_alg, e_idx, f_idx):
    """X = A*f as an (A, k)-bimodule and Y = e*A as a (k, A)-bimodule."""
    data = corner(alg, e_idx, f_idx)
    x = Bimodule.over_field(alg, field_alg, data.left)
    y = Bimodule.field_over(field_alg, alg, data.right)
    return x, y, data


def test_regular_bimodule_ok(sub_alg):
    assert bimodule_check(Bimodule.regular(sub_alg)) is None


def test_field_regular_bimodule(field_alg):
    assert bimodule_check(Bimodule.regular(field_alg)) is None


def test_bimodule_violation_detected(sub_alg):
    # using the left regular action on both sides is not a bimodule
    left = sub_alg.mult.transpose(0, 2, 1)
    with pytest.raises(AlgebraError):
        Bimodule(sub_alg, sub_alg, left, left)


def test_tensor_corner_identification(sub_alg, field_alg):
    # e2*A' (x)_A' A'*e1 has the dimension of the corner e2*A'*e1
    x, y, data = corner_bimodules(sub_alg, field_alg, 1, 0)
    t = tensor_over(y, x)   # (k, A) (x)_A (A, k)
    assert t.dim == data.corner.dim == 1


def test_tensor_unit_isomorphism(sub_alg):
    reg = Bimodule.regular(sub_alg)
    t, collapse = right_unit_collapse(reg)
    assert collapse.is_invertible() and collapse.rows == sub_alg.dim
    t2, collapse2 = left_unit_collapse(reg)
    assert collapse2.is_invertible()


def test_tensor_over_field_has_product_dim(sub_alg, field_alg):
    x, y, _ = corner_bimodules(sub_alg, field_alg, 1, 0)
    t = tensor_over(x, y)   # (A, k) (x)_k (k, A): no relations
    assert t.dim == x.dim * y.dim == 6


def test_tensor_dimension_formula(b2_alg):
    x = Bimodule.regular(b2_alg)
    rel = middle_relation_columns(
        b2_alg.p,
        [x.right_mat(j) for j in range(b2_alg.dim)],
        [x.left_mat(j) for j in range(b2_alg.dim)],
        x.dim, x.dim)
    t = tensor_over(x, x)
    assert t.dim == x.dim * x.dim - rel.rank()


def test_tensor_functoriality(field_alg):
    # over the base field bimodule maps are plain matrices
    rng = np.random.default_rng(2)

    def vec_space(d):
        eye = np.eye(d, dtype=np.int64).reshape(1, d, d)
        return Bimodule(field_alg, field_alg, eye, eye, validate=False)

    x, y = vec_space(2), vec_space(3)
    t = tensor_over(x, y)
    f1 = Mat(P, rng.integers(0, P, (2, 2)))
    f2 = Mat(P, rng.integers(0, P, (2, 2)))
    g1 = Mat(P, rng.integers(0, P, (3, 3)))
    g2 = Mat(P, rng.integers(0, P, (3, 3)))
    lhs = tensor_map(t, t, f1, g1) @ tensor_map(t, t, f2, g2)
    rhs = tensor_map(t, t, f1 @ f2, g1 @ g2)
    assert lhs == rhs


def test_associate_field_middle(sub_alg, field_alg):
    x, y, data = corner_bimodules(sub_alg, field_alg, 1, 0)
    k_reg = Bimodule.regular(field_alg)
    assoc = associate_tensor(y, x, k_reg)   # (e2A' (x) A'e1) (x) k vs e2A' (x) (A'e1 (x) k)
    assert assoc.left_product.dim == assoc.right_product.dim == 1
    assert assoc.iso.is_invertible()


def test_associate_regular_triple(sub_alg):
    reg = Bimodule.regular(sub_alg)
    assoc = associate_tensor(reg, reg, reg)
    assert assoc.left_product.dim == sub_alg.dim
    assert (assoc.inverse @ assoc.iso) == Mat.identity(sub_alg.p, sub_alg.dim)


def test_associate_naturality_on_maps(field_alg):
    # naturality square for a sampled pair of maps over the field
    rng = np.random.default_rng(7)

    def vec_space(d):
        eye = np.eye(d, dtype=np.int64).reshape(1, d, d)
        return Bimodule(field_alg, field_alg, eye, eye, validate=False)

    x, y, z = vec_space(2), vec_space(2), vec_space(2)
    assoc = associate_tensor(x, y, z)
    f = Mat(P, rng.integers(0, P, (2, 2)))
    g = Mat(P, rng.integers(0, P, (2, 2)))
    h = Mat(P, rng.integers(0, P, (2, 2)))
    lhs_map = tensor_map(assoc.left_product, assoc.left_product,
                         tensor_map(assoc.inner_left, assoc.inner_left, f, g), h)
    rhs_map = tensor_map(assoc.right_product, assoc.right_product,
                         f, tensor_map(assoc.inner_right, assoc.inner_right, g, h))
    assert assoc.iso @ lhs_map == rhs_map @ assoc.iso


def test_tensor_with_module_unit(b1_alg):
    reg = Bimodule.regular(b1_alg)
    s = simple_modules(b1_alg)[0]
    t = tensor_with_module(reg, s)
    assert t.dim == 1   # B1 (x)_B1 S = S


def test_induced_map_functorial(b1_alg):
    reg = Bimodule.regular(b1_alg)
    s = simple_modules(b1_alg)[0]
    m = b1_alg.regular_left_module()
    ts = tensor_with_module(reg, s)
    tm = tensor_with_module(reg, m)
    from trivext.algebra import hom_space
    f = hom_space(m, s).mats[0]
    ind = induced_map(tm, ts, f)
    assert ind.shape == (ts.dim, tm.dim)
    ident = induced_map(tm, tm, Mat.identity(b1_alg.p, m.dim))
    assert ident == Mat.identity(b1_alg.p, tm.dim)


def test_right_projective_test(sub_alg, b1_alg):
    data = corner(sub_alg, 1, 0)
    ok, cert = right_projective_test(data.right)
    assert ok
    action = np.zeros((2, 1, 1), dtype=np.int64)
    action[0, 0, 0] = 1
    s_right = RightModule(b1_alg, action)
    ok, cert = right_projective_test(s_right)
    assert not ok
    assert cert.kernel().rows == 1
    ok, _ = right_projective_test(RightModule.zero(b1_alg))
    assert ok


def test_flat_tensor_matches_iterated(sub_alg, field_alg):
    x, y, _ = corner_bimodules(sub_alg, field_alg, 1, 0)
    # flat quotient of y (x) x over the middle algebra A'
    mid = sub_alg.dim
    junction = [(y.right_mat(j), x.left_mat(j)) for j in range(mid)]
    proj, sect = flat_tensor(P, [y.dim, x.dim], [junction])
    assert proj.rows == tensor_over(y, x).dim
    assert (proj @ sect) == Mat.identity(P, proj.rows)

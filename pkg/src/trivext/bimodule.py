"""Bimodules with commuting actions and exact tensor products over algebras.

Tensor products are computed as explicit quotients of the k-tensor space by
the middle-linearity relations, and every product carries its projection
and a section so that later identifications become stored invertible
matrices instead of implicit equalities.  The k-tensor of factors is
indexed row-major: basis vector (i, j) of X (x) Y sits at position
i * dim(Y) + j.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .algebra import Algebra, AlgebraError, LeftModule, RightModule, _ModuleBase
from .fp import Mat, Subspace, hstack, kron, quotient_basis
from .homology import projective_cover


class Bimodule:
    """A space with commuting left and right algebra actions.

    ``left_action[i]`` is the matrix of the i-th left-algebra basis element,
    ``right_action[j]`` the matrix of ``m -> m . b_j``.
    """

    __slots__ = ("left_algebra", "right_algebra", "dim", "left_action", "right_action")

    def __init__(self, left_algebra: Algebra, right_algebra: Algebra,
                 left_action, right_action, validate: bool = True):
        if left_algebra.p != right_algebra.p:
            raise AlgebraError("bimodule algebras live over different primes")
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        left_action = np.array(left_action, dtype=np.int64) % left_algebra.p
        right_action = np.array(right_action, dtype=np.int64) % left_algebra.p
        if left_action.ndim != 3 or right_action.ndim != 3:
            raise AlgebraError("actions must be stacks of square matrices")
        if left_action.shape[1:] != right_action.shape[1:]:
            raise AlgebraError("left and right actions act on different spaces")
        left_action.setflags(write=False)
        right_action.setflags(write=False)
        self.left_action = left_action
        self.right_action = right_action
        self.dim = left_action.shape[1]
        if validate:
            violation = bimodule_check(self)
            if violation is not None:
                raise AlgebraError(f"bimodule axiom fails at {violation}")

    @property
    def p(self) -> int:
        return self.left_algebra.p

    @classmethod
    def regular(cls, alg: Algebra) -> "Bimodule":
        """The algebra as a bimodule over itself."""
        return cls(alg, alg, alg.mult.transpose(0, 2, 1), alg.mult.transpose(1, 2, 0),
                   validate=False)

    @classmethod
    def from_modules(cls, left: LeftModule, right: RightModule) -> "Bimodule":
        """Pair a left and a right structure on the same underlying space."""
        return cls(left.algebra, right.algebra, left.action, right.action)

    @classmethod
    def over_field(cls, alg_left: Algebra, field_alg: Algebra, left: LeftModule) -> "Bimodule":
        """A left module viewed as an (A, k)-bimodule with scalar right action."""
        eye = np.eye(left.dim, dtype=np.int64).reshape(1, left.dim, left.dim)
        return cls(alg_left, field_alg, left.action, eye, validate=False)

    @classmethod
    def field_over(cls, field_alg: Algebra, alg_right: Algebra, right: RightModule) -> "Bimodule":
        """A right module viewed as a (k, A)-bimodule with scalar left action."""
        eye = np.eye(right.dim, dtype=np.int64).reshape(1, right.dim, right.dim)
        return cls(field_alg, alg_right, eye, right.action, validate=False)

    def as_left_module(self) -> LeftModule:
        return LeftModule(self.left_algebra, self.left_action, validate=False)

    def as_right_module(self) -> RightModule:
        return RightModule(self.right_algebra, self.right_action, validate=False)

    def left_mat(self, i: int) -> Mat:
        return Mat(self.p, self.left_action[i])

    def right_mat(self, j: int) -> Mat:
        return Mat(self.p, self.right_action[j])

    def left_act(self, elem) -> Mat:
        return self.as_left_module().act_matrix(elem)

    def right_act(self, elem) -> Mat:
        return self.as_right_module().act_matrix(elem)

    def __repr__(self):
        return (f"Bimodule(dim={self.dim}, left_dim={self.left_algebra.dim}, "
                f"right_dim={self.right_algebra.dim})")


def bimodule_check(x: Bimodule):
    """None if all axioms hold, else ('left'|'right'|'commute', i, j)."""
    left = x.as_left_module().check()
    if left is not None:
        return ("left",) + left
    right = x.as_right_module().check()
    if right is not None:
        return ("right",) + right
    p = x.p
    for i in range(x.left_algebra.dim):
        for j in range(x.right_algebra.dim):
            lhs = (x.left_action[i] @ x.right_action[j]) % p
            rhs = (x.right_action[j] @ x.left_action[i]) % p
            if (lhs != rhs).any():
                return ("commute", i, j)
    return None


# -- tensor machinery ---------------------------------------------------------


def middle_relation_columns(p: int, right_acts: list[Mat], left_acts: list[Mat],
                            dx: int, dy: int) -> Mat:
    """Columns spanning span{x.b (x) y - x (x) b.y} inside the k-tensor."""
    blocks = []
    eye_x, eye_y = Mat.identity(p, dx), Mat.identity(p, dy)
    for ra, la in zip(right_acts, left_acts):
        blocks.append(kron(ra, eye_y) - kron(eye_x, la))
    return hstack(blocks) if blocks else Mat.zeros(p, dx * dy, 0)


def _quotient_by_columns(p: int, total: int, cols: Mat) -> tuple[Mat, Mat]:
    return quotient_basis(total, cols.column_space())


@dataclass(frozen=True)
class TensorModule:
    """X (x)_B M for a bimodule X over (A, B) and a left B-module M."""

    module: LeftModule          # over the left algebra of X
    project: Mat                # (dim quotient) x (dim X * dim M)
    section: Mat
    x_dim: int
    m_dim: int

    @property
    def dim(self) -> int:
        return self.module.dim


def tensor_with_module(x: Bimodule, m: LeftModule) -> TensorModule:
    if m.algebra is not x.right_algebra and \
            m.algebra.mult.tobytes() != x.right_algebra.mult.tobytes():
        raise AlgebraError("module is not over the right-hand algebra of the bimodule")
    p = x.p
    mid = x.right_algebra.dim
    rel = middle_relation_columns(
        p, [x.right_mat(j) for j in range(mid)],
        [m.action_mat(j) for j in range(mid)], x.dim, m.dim)
    proj, sect = _quotient_by_columns(p, x.dim * m.dim, rel)
    alg = x.left_algebra
    eye_m = Mat.identity(p, m.dim)
    action = np.zeros((alg.dim, proj.rows, proj.rows), dtype=np.int64)
    for i in range(alg.dim):
        outer = kron(x.left_mat(i), eye_m)
        induced = proj @ outer @ sect
        action[i] = induced.a
    mod = LeftModule(alg, action, validate=False)
    out = TensorModule(mod, proj, sect, x.dim, m.dim)
    for g in alg.generators:
        outer = kron(x.left_act(g), eye_m)
        if proj @ outer != mod.act_matrix(g) @ proj:
            raise AlgebraError("relation space is not stable under the outer action")
    return out


def induced_map(src: TensorModule, tgt: TensorModule, f: Mat) -> Mat:
    """Id (x) f on tensor quotients, for f a map between the module factors."""
    p = f.p
    if src.x_dim != tgt.x_dim:
        raise AlgebraError("tensor factors do not match")
    return tgt.project @ kron(Mat.identity(p, src.x_dim), f) @ src.section


@dataclass(frozen=True)
class TensorProduct:
    """X (x)_B Y for bimodules X over (A, B) and Y over (B, C)."""

    space: Bimodule             # over (A, C)
    project: Mat
    section: Mat
    x_dim: int
    y_dim: int

    @property
    def dim(self) -> int:
        return self.space.dim


def tensor_over(x: Bimodule, y: Bimodule) -> TensorProduct:
    if x.right_algebra.mult.tobytes() != y.left_algebra.mult.tobytes():
        raise AlgebraError("middle algebras do not match")
    p = x.p
    mid = x.right_algebra.dim
    rel = middle_relation_columns(
        p, [x.right_mat(j) for j in range(mid)],
        [y.left_mat(j) for j in range(mid)], x.dim, y.dim)
    proj, sect = _quotient_by_columns(p, x.dim * y.dim, rel)
    q = proj.rows
    la, ra = x.left_algebra, y.right_algebra
    eye_x, eye_y = Mat.identity(p, x.dim), Mat.identity(p, y.dim)
    left = np.zeros((la.dim, q, q), dtype=np.int64)
    right = np.zeros((ra.dim, q, q), dtype=np.int64)
    for i in range(la.dim):
        left[i] = (proj @ kron(x.left_mat(i), eye_y) @ sect).a
    for j in range(ra.dim):
        right[j] = (proj @ kron(eye_x, y.right_mat(j)) @ sect).a
    space = Bimodule(la, ra, left, right, validate=False)
    out = TensorProduct(space, proj, sect, x.dim, y.dim)
    for g in la.generators:
        if proj @ kron(x.left_act(g), eye_y) != space.left_act(g) @ proj:
            raise AlgebraError("relations not stable under the left action")
    for g in ra.generators:
        if proj @ kron(eye_x, y.right_act(g)) != space.right_act(g) @ proj:
            raise AlgebraError("relations not stable under the right action")
    return out


def tensor_map(src: TensorProduct, tgt: TensorProduct, f: Mat, g: Mat) -> Mat:
    """f (x) g on tensor quotients for bimodule maps of the factors."""
    return tgt.project @ kron(f, g) @ src.section


def flat_tensor(p: int, dims: list[int],
                junctions: list[list[tuple[Mat, Mat]]]) -> tuple[Mat, Mat]:
    """Quotient of a multi-factor k-tensor by all middle-linearity relations.

    ``junctions[i]`` lists, per middle basis element, the pair (right action
    on factor i, left action on factor i+1).
    """
    total = prod(dims)
    blocks = []
    for i, pairs in enumerate(junctions):
        if not pairs:
            continue
        before = prod(dims[:i])
        after = prod(dims[i + 2:])
        local = middle_relation_columns(
            p, [ra for ra, _ in pairs], [la for _, la in pairs], dims[i], dims[i + 1])
        lifted = kron(Mat.identity(p, before), kron(local, Mat.identity(p, after)))
        blocks.append(lifted)
    cols = hstack(blocks) if blocks else Mat.zeros(p, total, 0)
    return _quotient_by_columns(p, total, cols)


def chase_iso(proj_a: Mat, sect_a: Mat, proj_b: Mat, flat_project: Mat) -> Mat:
    """The canonical map between two quotient presentations of one tensor.

    Both projections must kill exactly the flat relation space; this is
    checked by rank counts, after which proj_b @ sect_a is the unique map
    with iso @ proj_a = proj_b, and it is invertible.
    """
    flat_dim = flat_project.rows
    if proj_a.rows != flat_dim or proj_b.rows != flat_dim:
        raise AlgebraError(
            f"parenthesized tensor dims {proj_a.rows}, {proj_b.rows} "
            f"differ from the flat quotient dim {flat_dim}")
    iso = proj_b @ sect_a
    if iso @ proj_a != proj_b:
        raise AlgebraError("tensor identification does not commute with projections")
    if not iso.is_invertible():
        raise AlgebraError("tensor identification is not invertible")
    return iso


def _junction(x_right: Bimodule, y_left: Bimodule) -> list[tuple[Mat, Mat]]:
    mid = x_right.right_algebra.dim
    return [(x_right.right_mat(j), y_left.left_mat(j)) for j in range(mid)]


@dataclass(frozen=True)
class Associativity:
    left_product: TensorProduct     # (X (x) Y) (x) Z
    right_product: TensorProduct    # X (x) (Y (x) Z)
    inner_left: TensorProduct       # X (x) Y
    inner_right: TensorProduct      # Y (x) Z
    iso: Mat
    inverse: Mat


def associate_tensor(x: Bimodule, y: Bimodule, z: Bimodule) -> Associativity:
    """Explicit invertible map (X (x) Y) (x) Z -> X (x) (Y (x) Z)."""
    p = x.p
    t_xy = tensor_over(x, y)
    t_xy_z = tensor_over(t_xy.space, z)
    t_yz = tensor_over(y, z)
    t_x_yz = tensor_over(x, t_yz.space)
    eye_z = Mat.identity(p, z.dim)
    eye_x = Mat.identity(p, x.dim)
    proj_a = t_xy_z.project @ kron(t_xy.project, eye_z)
    sect_a = kron(t_xy.section, eye_z) @ t_xy_z.section
    proj_b = t_x_yz.project @ kron(eye_x, t_yz.project)
    sect_b = kron(eye_x, t_yz.section) @ t_x_yz.section
    flat_proj, _ = flat_tensor(p, [x.dim, y.dim, z.dim],
                               [_junction(x, y), _junction(y, z)])
    iso = chase_iso(proj_a, sect_a, proj_b, flat_proj)
    inv = chase_iso(proj_b, sect_b, proj_a, flat_proj)
    if (iso @ inv != Mat.identity(p, iso.rows)) or (inv @ iso != Mat.identity(p, iso.rows)):
        raise AlgebraError("associativity chase produced non-inverse maps")
    return Associativity(t_xy_z, t_x_yz, t_xy, t_yz, iso, inv)


def right_unit_collapse(x: Bimodule) -> tuple[TensorModule, Mat]:
    """X (x)_A A together with the collapse isomorphism onto X."""
    reg = x.right_algebra.regular_left_module()
    t = tensor_with_module(x, reg)
    p = x.p
    da = x.right_algebra.dim
    raw = np.zeros((x.dim, x.dim * da), dtype=np.int64)
    for i in range(da):
        raw[:, i::da] = x.right_action[i]  # column (j, i) holds x_j . a_i
    collapse = Mat(p, raw) @ t.section
    if Mat(p, raw) != collapse @ t.project:
        raise AlgebraError("unit collapse does not factor through the quotient")
    if not collapse.is_invertible():
        raise AlgebraError("unit collapse is not invertible")
    return t, collapse


def left_unit_collapse(x: Bimodule) -> tuple[TensorProduct, Mat]:
    """A (x)_A X together with the collapse isomorphism onto X."""
    reg = Bimodule.regular(x.left_algebra)
    t = tensor_over(reg, x)
    p = x.p
    da = x.left_algebra.dim
    raw = np.zeros((x.dim, da * x.dim), dtype=np.int64)
    for i in range(da):
        raw[:, i * x.dim:(i + 1) * x.dim] = x.left_action[i]
    collapse = Mat(p, raw) @ t.section
    if Mat(p, raw) != collapse @ t.project:
        raise AlgebraError("unit collapse does not factor through the quotient")
    if not collapse.is_invertible():
        raise AlgebraError("unit collapse is not invertible")
    return t, collapse


def right_projective_test(m: RightModule) -> tuple[bool, Mat]:
    """Projectivity via the minimal cover: projective iff the cover splits
    with zero kernel.  The certificate is the cover map."""
    cover = projective_cover(m)
    return cover.map.kernel().rows == 0, cover.map

"""Structure-constant algebras and one-sided modules over F_p.

An algebra is given by its multiplication tensor together with a chosen
complete set of orthogonal idempotents and a radical basis; the constructor
validates these data rather than discovering them.  Modules are families of
action matrices acting on column vectors, and composition of maps reads
right to left (``f @ g`` applies ``g`` first).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fp import Mat, Subspace, check_prime, hstack, kron, quotient_basis, vstack


class AlgebraError(ValueError):
    """Raised when supplied algebra or module data violates an axiom."""


def _residues(p, data):
    return np.array(data, dtype=np.int64) % p


class Algebra:
    """Finite-dimensional associative unital algebra over F_p.

    ``mult[i, j, k]`` is the coefficient of basis element ``k`` in the
    product ``basis_i * basis_j``.  ``generators`` is an optional generating
    set (defaults to the full basis) used to shrink intertwiner systems;
    correctness never depends on it being minimal.
    """

    __slots__ = ("p", "dim", "mult", "unit", "idempotents", "radical",
                 "generators", "names")

    def __init__(self, p, mult, unit, idempotents, radical, generators=None,
                 names=None, validate=True):
        self.p = check_prime(p)
        mult = _residues(p, mult)
        if mult.ndim != 3 or len(set(mult.shape)) != 1:
            raise AlgebraError(f"multiplication tensor has shape {mult.shape}")
        self.dim = mult.shape[0]
        mult.setflags(write=False)
        self.mult = mult
        self.unit = _residues(p, unit).reshape(self.dim)
        self.unit.setflags(write=False)
        self.idempotents = tuple(_residues(p, e).reshape(self.dim) for e in idempotents)
        self.radical = radical if isinstance(radical, Subspace) else \
            Subspace.from_rows(p, self.dim, radical)
        if generators is None:
            generators = [self.basis_vec(i) for i in range(self.dim)]
        self.generators = tuple(_residues(p, g).reshape(self.dim) for g in generators)
        self.names = tuple(names) if names is not None else None
        if validate:
            self._validate()

    @classmethod
    def field(cls, p: int) -> "Algebra":
        """The base field viewed as a one-dimensional algebra."""
        return cls(p, [[[1]]], [1], [[1]], Subspace.zero(p, 1))

    def basis_vec(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def multiply(self, u, v) -> np.ndarray:
        u = _residues(self.p, u)
        v = _residues(self.p, v)
        partial = np.tensordot(u, self.mult, axes=(0, 0)) % self.p
        return np.tensordot(v, partial, axes=(0, 0)) % self.p

    def left_mult_matrix(self, u) -> Mat:
        """Matrix of v -> u*v on column vectors."""
        u = _residues(self.p, u)
        m = np.tensordot(u, self.mult, axes=(0, 0)) % self.p  # (j, k)
        return Mat(self.p, m.T)

    def right_mult_matrix(self, u) -> Mat:
        """Matrix of v -> v*u on column vectors."""
        u = _residues(self.p, u)
        m = np.tensordot(self.mult, u, axes=(1, 0)) % self.p  # (i, k)
        return Mat(self.p, m.T)

    def regular_left_module(self) -> "LeftModule":
        return LeftModule(self, self.mult.transpose(0, 2, 1), validate=False)

    def regular_right_module(self) -> "RightModule":
        return RightModule(self, self.mult.transpose(1, 2, 0), validate=False)

    def opposite(self) -> "Algebra":
        return Algebra(self.p, self.mult.transpose(1, 0, 2), self.unit,
                       self.idempotents, self.radical,
                       generators=self.generators, names=self.names,
                       validate=False)

    def is_semisimple(self) -> bool:
        return self.radical.dim == 0

    # -- validation -------------------------------------------------------

    def _validate(self) -> None:
        p, d, mult = self.p, self.dim, self.mult
        for i in range(d):
            lhs = np.einsum("jm,mkl->jkl", mult[i], mult) % p
            rhs = np.einsum("jkm,ml->jkl", mult, mult[i]) % p
            if (lhs != rhs).any():
                j, k = np.argwhere((lhs != rhs).any(axis=2))[0]
                raise AlgebraError(f"associativity fails at basis triple ({i}, {j}, {k})")
        ident = Mat.identity(p, d)
        if self.left_mult_matrix(self.unit) != ident or self.right_mult_matrix(self.unit) != ident:
            raise AlgebraError("unit is not a two-sided identity")
        total = np.zeros(d, dtype=np.int64)
        for a, e in enumerate(self.idempotents):
            total = (total + e) % p
            for b, f in enumerate(self.idempotents):
                prod = self.multiply(e, f)
                expect = e if a == b else np.zeros(d, dtype=np.int64)
                if (prod != expect).any():
                    raise AlgebraError(f"idempotents {a}, {b} not orthogonal idempotents")
        if (total != self.unit).any():
            raise AlgebraError("idempotents do not sum to the unit")
        self._validate_radical()

    def _validate_radical(self) -> None:
        rad = self.radical
        if rad.ambient != self.dim:
            raise AlgebraError("radical basis lives in the wrong space")
        if rad.dim:
            rows = []
            for i in range(self.dim):
                li = self.left_mult_matrix(self.basis_vec(i))
                ri = self.right_mult_matrix(self.basis_vec(i))
                rows.append((li @ rad.basis.T).T)
                rows.append((ri @ rad.basis.T).T)
            if not rad.contains_space(vstack(rows).row_space()):
                raise AlgebraError("radical basis is not a two-sided ideal")
            power = rad
            for _ in range(self.dim + 1):
                if power.dim == 0:
                    break
                prods = [self.multiply(u, v) for u in power.basis.a for v in rad.basis.a]
                power = Subspace.from_rows(self.p, self.dim, np.array(prods).reshape(-1, self.dim))
            else:
                raise AlgebraError("radical is not nilpotent")
        if rad.dim + len(self.idempotents) != self.dim:
            raise AlgebraError(
                "algebra is not basic: idempotent images do not span the semisimple quotient")
        span = Subspace.from_rows(self.p, self.dim,
                                  np.array(list(self.idempotents) + list(rad.basis.a)))
        if span.dim != self.dim:
            raise AlgebraError("idempotents and radical together do not span the algebra")

    def __repr__(self):
        return f"Algebra(p={self.p}, dim={self.dim})"


class _ModuleBase:
    __slots__ = ("algebra", "dim", "action")

    def __init__(self, algebra: Algebra, action, validate=True):
        self.algebra = algebra
        action = _residues(algebra.p, action)
        if action.ndim == 1 and action.size == 0:
            action = action.reshape(algebra.dim, 0, 0)
        if action.shape[0] != algebra.dim or action.shape[1] != action.shape[2]:
            raise AlgebraError(f"action tensor has shape {action.shape}")
        action.setflags(write=False)
        self.action = action
        self.dim = action.shape[1]
        if validate:
            violation = self.check()
            if violation is not None:
                raise AlgebraError(f"module axiom fails at {violation}")

    @property
    def p(self) -> int:
        return self.algebra.p

    def act_matrix(self, elem) -> Mat:
        """Action matrix of an algebra element given by coordinates."""
        elem = _residues(self.p, elem)
        return Mat(self.p, np.tensordot(elem, self.action, axes=(0, 0)) % self.p)

    def action_mat(self, i: int) -> Mat:
        return Mat(self.p, self.action[i])

    def generator_actions(self) -> list[Mat]:
        return [self.act_matrix(g) for g in self.algebra.generators]

    def is_zero(self) -> bool:
        return self.dim == 0

    def _structure_coeff(self, i, j):
        raise NotImplementedError

    def check(self):
        """None if the axioms hold, else the first violating basis pair."""
        p = self.p
        if (self.act_matrix(self.algebra.unit) != Mat.identity(p, self.dim)):
            return ("unit",)
        for i in range(self.algebra.dim):
            for j in range(self.algebra.dim):
                lhs = (self.action[i] @ self.action[j]) % p
                rhs = np.tensordot(self._structure_coeff(i, j), self.action, axes=(0, 0)) % p
                if (lhs != rhs).any():
                    return (i, j)
        return None

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, algebra_dim={self.algebra.dim})"


class LeftModule(_ModuleBase):
    """Left module: action[i] @ action[j] = sum_k mult[i,j,k] action[k]."""

    def _structure_coeff(self, i, j):
        return self.algebra.mult[i, j]

    @classmethod
    def zero(cls, algebra: Algebra) -> "LeftModule":
        return cls(algebra, np.zeros((algebra.dim, 0, 0), dtype=np.int64), validate=False)


class RightModule(_ModuleBase):
    """Right module: action matrices compose contravariantly."""

    def _structure_coeff(self, i, j):
        return self.algebra.mult[j, i]

    @classmethod
    def zero(cls, algebra: Algebra) -> "RightModule":
        return cls(algebra, np.zeros((algebra.dim, 0, 0), dtype=np.int64), validate=False)

    def to_left_over_opposite(self) -> LeftModule:
        return LeftModule(self.algebra.opposite(), self.action, validate=False)


def check_module(m: _ModuleBase):
    """Exhaustive axiom check; None when fine, first violating pair otherwise."""
    return m.check()


@dataclass(frozen=True)
class ModuleMap:
    """A linear map between modules that commutes with every action."""

    source: _ModuleBase
    target: _ModuleBase
    matrix: Mat

    def check(self) -> None:
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise AlgebraError("module map has the wrong shape")
        for g in self.source.algebra.generators:
            if self.target.act_matrix(g) @ self.matrix != self.matrix @ self.source.act_matrix(g):
                raise AlgebraError("map does not commute with the action")

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)


def is_module_map(src: _ModuleBase, tgt: _ModuleBase, matrix: Mat) -> bool:
    return all(
        tgt.act_matrix(g) @ matrix == matrix @ src.act_matrix(g)
        for g in src.algebra.generators
    )


def direct_sum(mods: list[_ModuleBase]):
    """Direct sum plus inclusion and projection matrices per summand."""
    if not mods:
        raise ValueError("direct_sum of an empty list is ambiguous")
    alg = mods[0].algebra
    cls = type(mods[0])
    d = sum(m.dim for m in mods)
    action = np.zeros((alg.dim, d, d), dtype=np.int64)
    offsets = np.cumsum([0] + [m.dim for m in mods])
    for i in range(alg.dim):
        for m, off in zip(mods, offsets):
            action[i, off:off + m.dim, off:off + m.dim] = m.action[i]
    total = cls(alg, action, validate=False)
    incls, projs = [], []
    for m, off in zip(mods, offsets):
        inc = np.zeros((d, m.dim), dtype=np.int64)
        inc[off:off + m.dim] = np.eye(m.dim, dtype=np.int64)
        incls.append(Mat(alg.p, inc))
        projs.append(Mat(alg.p, inc.T))
    return total, incls, projs


def submodule(m: _ModuleBase, sub: Subspace):
    """The submodule on an invariant subspace, with its inclusion matrix."""
    if sub.ambient != m.dim:
        raise AlgebraError("subspace does not live in the module")
    inc = sub.basis.T
    action = np.zeros((m.algebra.dim, sub.dim, sub.dim), dtype=np.int64)
    for i in range(m.algebra.dim):
        sol = inc.solve_matrix(m.action_mat(i) @ inc)
        if sol is None:
            raise AlgebraError(f"subspace is not invariant under basis element {i}")
        action[i] = sol.a
    return type(m)(m.algebra, action, validate=False), inc


def quotient_module(m: _ModuleBase, sub: Subspace):
    """The quotient module by an invariant subspace, with projection/section."""
    proj, sect = quotient_basis(m.dim, sub)
    action = np.zeros((m.algebra.dim, proj.rows, proj.rows), dtype=np.int64)
    for i in range(m.algebra.dim):
        ai = m.action_mat(i)
        ind = proj @ ai @ sect
        if proj @ ai != ind @ proj:
            raise AlgebraError(f"subspace is not invariant under basis element {i}")
        action[i] = ind.a
    return type(m)(m.algebra, action, validate=False), proj, sect


def intertwiner_basis(p: int, pairs: list[tuple[Mat, Mat]], dim_src: int, dim_tgt: int) -> list[Mat]:
    """Canonical basis of {F : F @ S = T @ F for every supplied pair (S, T)}.

    Matrices are vectorised row-major, so vec(A @ F @ B) = kron(A, B.T) vec(F).
    """
    if dim_src == 0 or dim_tgt == 0:
        return []
    n = dim_src * dim_tgt
    blocks = []
    for s_act, t_act in pairs:
        blocks.append(kron(Mat.identity(p, dim_tgt), s_act.T) - kron(t_act, Mat.identity(p, dim_src)))
    ker = vstack(blocks).kernel() if blocks else Mat.identity(p, n)
    return [Mat(p, row.reshape(dim_tgt, dim_src)) for row in ker.a]


class HomSpace:
    """A canonical basis of Hom(M, N) with coordinate bookkeeping."""

    __slots__ = ("p", "dim_src", "dim_tgt", "mats")

    def __init__(self, p, dim_src, dim_tgt, mats):
        self.p = p
        self.dim_src = dim_src
        self.dim_tgt = dim_tgt
        self.mats = tuple(mats)

    @property
    def dim(self) -> int:
        return len(self.mats)

    def subspace(self) -> Subspace:
        n = self.dim_src * self.dim_tgt
        rows = np.array([m.a.reshape(-1) for m in self.mats], dtype=np.int64).reshape(-1, n)
        return Subspace.from_rows(self.p, n, rows)

    def element(self, coeffs) -> Mat:
        out = np.zeros((self.dim_tgt, self.dim_src), dtype=np.int64)
        for c, m in zip(coeffs, self.mats):
            out = (out + (int(c) % self.p) * m.a) % self.p
        return Mat(self.p, out)

    def coords_of(self, mat: Mat) -> np.ndarray | None:
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64) if mat.is_zero() else None
        cols = Mat(self.p, np.array([m.a.reshape(-1) for m in self.mats]).T)
        return cols.solve(mat.a.reshape(-1))


def hom_space(m: _ModuleBase, n: _ModuleBase) -> HomSpace:
    """All module maps M -> N, solved from the generator intertwining equations."""
    if m.algebra is not n.algebra and m.algebra.mult.tobytes() != n.algebra.mult.tobytes():
        raise AlgebraError("modules live over different algebras")
    if type(m) is not type(n):
        raise AlgebraError("cannot mix left and right modules in hom_space")
    if m.dim == 0 or n.dim == 0:
        return HomSpace(m.p, m.dim, n.dim, [])
    pairs = list(zip(m.generator_actions(), n.generator_actions()))
    return HomSpace(m.p, m.dim, n.dim, intertwiner_basis(m.p, pairs, m.dim, n.dim))


@dataclass(frozen=True)
class TopRadical:
    radical_space: Subspace
    radical: _ModuleBase
    radical_inclusion: Mat
    top: _ModuleBase
    projection: Mat
    section: Mat
    multiplicities: tuple[int, ...]


def top_and_radical(m: _ModuleBase) -> TopRadical:
    """rad(A)*M as a submodule and the semisimple quotient M/rad(A)M."""
    alg = m.algebra
    rad = alg.radical
    if rad.dim and m.dim:
        cols = hstack([m.act_matrix(r) for r in rad.basis.a])
        rad_space = cols.column_space()
    else:
        rad_space = Subspace.zero(m.p, m.dim)
    rad_mod, inc = submodule(m, rad_space)
    top, proj, sect = quotient_module(m, rad_space)
    mults = tuple(int((proj @ m.act_matrix(e) @ sect).rank()) for e in alg.idempotents)
    return TopRadical(rad_space, rad_mod, inc, top, proj, sect, mults)


def linear_dual(m: _ModuleBase):
    """Dual space with transposed action; swaps left and right modules."""
    action = m.action.transpose(0, 2, 1)
    if isinstance(m, LeftModule):
        return RightModule(m.algebra, action, validate=False)
    return LeftModule(m.algebra, action, validate=False)


@dataclass(frozen=True)
class CornerData:
    corner: Subspace
    left: LeftModule
    left_inclusion: Mat
    right: RightModule
    right_inclusion: Mat


def corner(alg: Algebra, e_idx: int, f_idx: int) -> CornerData:
    """The space e*A*f plus the projectives A*f (left) and e*A (right)."""
    e = alg.idempotents[e_idx]
    f = alg.idempotents[f_idx]
    both = alg.left_mult_matrix(e) @ alg.right_mult_matrix(f)
    corner_space = both.column_space()
    left_space = alg.right_mult_matrix(f).column_space()
    left_mod, left_inc = submodule(alg.regular_left_module(), left_space)
    right_space = alg.left_mult_matrix(e).column_space()
    right_mod, right_inc = submodule(alg.regular_right_module(), right_space)
    return CornerData(corner_space, left_mod, left_inc, right_mod, right_inc)


def projective_left(alg: Algebra, v: int) -> tuple[LeftModule, Mat]:
    """The indecomposable projective A*e_v with its inclusion into A."""
    space = alg.right_mult_matrix(alg.idempotents[v]).column_space()
    return submodule(alg.regular_left_module(), space)


def invariant_closure(m: _ModuleBase, vectors) -> Subspace:
    """The smallest action-invariant subspace containing the given vectors."""
    space = Subspace.from_rows(m.p, m.dim, np.asarray(vectors, dtype=np.int64).reshape(-1, m.dim))
    while True:
        rows = [space.basis]
        for i in range(m.algebra.dim):
            rows.append((m.action_mat(i) @ space.basis.T).T)
        grown = vstack(rows).row_space()
        if grown.dim == space.dim:
            return grown
        space = grown


def simple_modules(alg: Algebra) -> list[LeftModule]:
    """The simple left modules, one per idempotent, as tops of projectives."""
    out = []
    for v in range(len(alg.idempotents)):
        proj, _ = projective_left(alg, v)
        top = top_and_radical(proj).top
        if top.dim != 1:
            raise AlgebraError(f"projective at idempotent {v} has a top of dim {top.dim}")
        out.append(top)
    return out

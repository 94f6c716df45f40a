"""Trivial extension algebras T = A + X and their pair modules.

A left T-module is kept in pair form (M, sigma): an A-module M together
with an A-map sigma : X (x)_A M -> M satisfying sigma o (Id (x) sigma) = 0.
Pairs are the canonical representation; plain modules over the total
algebra are converted on ingestion.  Every pair carries the stored tensor
quotients it needs, so the identifications the constructions rely on are
explicit matrices rather than implicit equalities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, AlgebraError, LeftModule, direct_sum, hom_space, is_module_map
from .bimodule import Bimodule, TensorModule, induced_map, tensor_with_module
from .fp import Mat, Subspace, hstack, kron, vstack


class TrivialExtension:
    """The algebra A + X with X squaring to zero.

    Basis order: the base algebra first, then the bimodule; idempotents are
    the images of the base idempotents and the radical is rad(A) + X.
    """

    def __init__(self, base: Algebra, bimodule: Bimodule, validate: bool = True):
        if bimodule.left_algebra is not base or bimodule.right_algebra is not base:
            if bimodule.left_algebra.mult.tobytes() != base.mult.tobytes() or \
                    bimodule.right_algebra.mult.tobytes() != base.mult.tobytes():
                raise AlgebraError("trivial extension needs an (A, A)-bimodule")
        self.base = base
        self.bimodule = bimodule
        p = base.p
        da, dx = base.dim, bimodule.dim
        dt = da + dx
        mult = np.zeros((dt, dt, dt), dtype=np.int64)
        mult[:da, :da, :da] = base.mult
        for i in range(da):
            for j in range(dx):
                mult[i, da + j, da:] = bimodule.left_action[i][:, j]
        for i in range(dx):
            for j in range(da):
                mult[da + i, j, da:] = bimodule.right_action[j][:, i]
        unit = np.concatenate([base.unit, np.zeros(dx, dtype=np.int64)])
        idems = [np.concatenate([e, np.zeros(dx, dtype=np.int64)])
                 for e in base.idempotents]
        rad_rows = np.zeros((base.radical.dim + dx, dt), dtype=np.int64)
        rad_rows[:base.radical.dim, :da] = base.radical.basis.a
        rad_rows[base.radical.dim:, da:] = np.eye(dx, dtype=np.int64)
        gens = [np.concatenate([g, np.zeros(dx, dtype=np.int64)])
                for g in base.generators]
        gens += [np.eye(dt, dtype=np.int64)[da + j] for j in range(dx)]
        self.total = Algebra(p, mult, unit, idems, Subspace.from_rows(p, dt, rad_rows),
                             generators=gens, validate=validate)
        eye = np.eye(dt, dtype=np.int64)
        self.a_embed = Mat(p, eye[:, :da])
        self.x_embed = Mat(p, eye[:, da:])

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def dim(self) -> int:
        return self.total.dim

    def pair(self, module: LeftModule, sigma: Mat, xm: TensorModule | None = None,
             validate: bool = True) -> "PairModule":
        return PairModule(self, module, sigma, xm=xm, validate=validate)

    def zero_pair(self, module: LeftModule) -> "PairModule":
        xm = tensor_with_module(self.bimodule, module)
        return PairModule(self, module, Mat.zeros(self.p, module.dim, xm.dim),
                          xm=xm, validate=False)

    def induce(self, module: LeftModule, xm: TensorModule | None = None) -> "PairModule":
        """T (x)_A L in pair form: (L + X(x)L, shift-down sigma)."""
        xl = xm or tensor_with_module(self.bimodule, module)
        total, incls, _ = direct_sum([module, xl.module])
        i_l, i_xl = incls
        txm = tensor_with_module(self.bimodule, total)
        xxl = tensor_with_module(self.bimodule, xl.module)
        j1 = induced_map(xl, txm, i_l)
        j2 = induced_map(xxl, txm, i_xl)
        if txm.dim != xl.dim + xxl.dim:
            raise AlgebraError("tensor of a direct sum failed to split")
        blocks = hstack([j1, j2])
        sigma = hstack([i_xl, Mat.zeros(self.p, total.dim, xxl.dim)]) @ blocks.inverse()
        return PairModule(self, total, sigma, xm=txm)

    def regular_pair(self) -> "PairModule":
        return module_to_pair(self, self.total.regular_left_module())

    def __repr__(self):
        return f"TrivialExtension(base_dim={self.base.dim}, bimodule_dim={self.bimodule.dim})"


class PairModule:
    """A left module over a trivial extension in pair form (M, sigma)."""

    __slots__ = ("ext", "module", "sigma", "xm", "_xxm", "_tensor_sigma")

    def __init__(self, ext: TrivialExtension, module: LeftModule, sigma: Mat,
                 xm: TensorModule | None = None, validate: bool = True):
        self.ext = ext
        self.module = module
        self.xm = xm or tensor_with_module(ext.bimodule, module)
        self.sigma = sigma
        self._xxm = None
        self._tensor_sigma = None
        if sigma.shape != (module.dim, self.xm.dim):
            raise AlgebraError(
                f"sigma has shape {sigma.shape}, expected {(module.dim, self.xm.dim)}")
        if validate:
            if not is_module_map(self.xm.module, module, sigma):
                raise AlgebraError("sigma is not a module map")
            if not (sigma @ self.tensor_sigma).is_zero():
                raise AlgebraError("sigma fails sigma o (Id (x) sigma) = 0")

    @property
    def p(self) -> int:
        return self.ext.p

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def xxm(self) -> TensorModule:
        """X (x)_A (X (x)_A M), the domain of Id (x) sigma."""
        if self._xxm is None:
            self._xxm = tensor_with_module(self.ext.bimodule, self.xm.module)
        return self._xxm

    @property
    def tensor_sigma(self) -> Mat:
        if self._tensor_sigma is None:
            self._tensor_sigma = induced_map(self.xxm, self.xm, self.sigma)
        return self._tensor_sigma

    def to_module(self) -> LeftModule:
        """The same data as a module over the total algebra."""
        ext = self.ext
        da, dx = ext.base.dim, ext.bimodule.dim
        dm = self.module.dim
        action = np.zeros((da + dx, dm, dm), dtype=np.int64)
        action[:da] = self.module.action
        eye_m = Mat.identity(self.p, dm)
        for j in range(dx):
            unit_col = Mat.zeros(self.p, dx, 1).a.copy()
            unit_col[j, 0] = 1
            insert = kron(Mat(self.p, unit_col), eye_m)
            action[da + j] = (self.sigma @ self.xm.project @ insert).a
        return LeftModule(ext.total, action, validate=False)

    def __repr__(self):
        return f"PairModule(dim={self.dim}, x_quotient_dim={self.xm.dim})"


def module_to_pair(ext: TrivialExtension, mod: LeftModule) -> PairModule:
    """Inverse of PairModule.to_module; extracts (M, sigma) from a T-module."""
    da, dx = ext.base.dim, ext.bimodule.dim
    if mod.algebra.mult.tobytes() != ext.total.mult.tobytes():
        raise AlgebraError("module does not live over this trivial extension")
    restricted = LeftModule(ext.base, mod.action[:da], validate=False)
    xm = tensor_with_module(ext.bimodule, restricted)
    if dx and mod.dim:
        raw = hstack([Mat(ext.p, mod.action[da + j]) for j in range(dx)])
    else:
        raw = Mat.zeros(ext.p, mod.dim, dx * mod.dim)
    sigma = raw @ xm.section
    if sigma @ xm.project != raw:
        raise AlgebraError("bimodule action does not descend to the tensor quotient")
    return PairModule(ext, restricted, sigma, xm=xm)


def restriction(obj) -> LeftModule:
    """Underlying module over the base algebra."""
    if isinstance(obj, PairModule):
        return obj.module
    raise AlgebraError("restriction expects a pair module")


def sign_twist(p: PairModule) -> PairModule:
    """(M, sigma) -> (M, -sigma); an involution fixing maps."""
    return PairModule(p.ext, p.module, -p.sigma, xm=p.xm, validate=False)


def bimodule_tensor(p: PairModule) -> PairModule:
    """(M, sigma) -> (X (x) M, Id (x) sigma), the tensor endofunctor."""
    return PairModule(p.ext, p.xm.module, p.tensor_sigma, xm=p.xxm)


def bimodule_tensor_map(p: PairModule, q: PairModule, f: Mat) -> Mat:
    """Id (x) f between the tensor images of two pairs."""
    return induced_map(p.xm, q.xm, f)


def is_pair_map(p: PairModule, q: PairModule, f: Mat) -> bool:
    """f : M -> N is a map of pairs when it intertwines the sigmas."""
    if not is_module_map(p.module, q.module, f):
        return False
    return f @ p.sigma == q.sigma @ bimodule_tensor_map(p, q, f)


def pair_hom(p: PairModule, q: PairModule):
    """Hom space over the total algebra, in pair coordinates."""
    return hom_space(p.to_module(), q.to_module())


@dataclass(frozen=True)
class InductionSequence:
    """0 -> (X(x)M, -Id(x)sigma) -> T(x)M -> (M, sigma) -> 0."""

    left: PairModule
    middle: PairModule
    right: PairModule
    inject: Mat
    project: Mat


def induction_sequence(p: PairModule) -> InductionSequence:
    """The functorial exact sequence resolving a pair by its induced module.

    Exactness is asserted by rank counts; a failure would indicate an
    implementation bug, never bad input.
    """
    ext = p.ext
    left = sign_twist(bimodule_tensor(p))
    middle = ext.induce(p.module, xm=p.xm)
    dm, dxm = p.module.dim, p.xm.dim
    inject = vstack([-p.sigma, Mat.identity(p.p, dxm)])
    project = hstack([Mat.identity(p.p, dm), p.sigma])
    if not (project @ inject).is_zero():
        raise AlgebraError("induction sequence does not compose to zero")
    if inject.rank() != dxm or project.rank() != dm:
        raise AlgebraError("induction sequence maps have wrong ranks")
    if inject.rank() + project.rank() != middle.dim:
        raise AlgebraError("induction sequence is not exact in the middle")
    if not is_pair_map(left, middle, inject) or not is_pair_map(middle, p, project):
        raise AlgebraError("induction sequence maps are not pair maps")
    return InductionSequence(left, middle, p, inject, project)


def induced_middle_map(p: PairModule, q: PairModule, f: Mat) -> Mat:
    """The map T(x)M -> T(x)N a pair map f induces on induced modules."""
    zero_tl = Mat.zeros(p.p, q.module.dim, p.xm.dim)
    zero_bl = Mat.zeros(p.p, q.xm.dim, p.module.dim)
    return vstack([
        hstack([f, zero_tl]),
        hstack([zero_bl, bimodule_tensor_map(p, q, f)]),
    ])


def check_naturality(seq_p: InductionSequence, seq_q: InductionSequence, f: Mat) -> bool:
    """Both squares of the ladder between two induction sequences commute."""
    p, q = seq_p.right, seq_q.right
    left_map = bimodule_tensor_map(p, q, f)
    mid_map = induced_middle_map(p, q, f)
    if mid_map @ seq_p.inject != seq_q.inject @ left_map:
        return False
    if f @ seq_p.project != seq_q.project @ mid_map:
        return False
    return (is_pair_map(seq_p.left, seq_q.left, left_map)
            and is_pair_map(seq_p.middle, seq_q.middle, mid_map))


def sign_twist_regular_iso(ext: TrivialExtension) -> Mat:
    """diag(Id_A, -Id_X): the isomorphism S(T) = T of modules over T."""
    da, dx = ext.base.dim, ext.bimodule.dim
    diag = np.ones(da + dx, dtype=np.int64)
    diag[da:] = -1 % ext.p
    witness = Mat(ext.p, np.diag(diag))
    reg = ext.regular_pair()
    twisted = sign_twist(reg)
    if not is_pair_map(twisted, reg, witness):
        raise AlgebraError("sign-twist witness is not a pair map")
    if not witness.is_invertible():
        raise AlgebraError("sign-twist witness is not invertible")
    return witness

"""Quiver-with-relations DSL and compilation to a structure-constant algebra.

Paths compose from right to left: ``p*q`` means "first q, then p", so a
word ``(g1, ..., gL)`` applies ``gL`` first, has the source of ``gL`` and
the target of ``g1``, and is composable when source(g_i) = target(g_{i+1}).

The quotient by the relation ideal is computed stratum by stratum: all
composable words of each length are enumerated, the relation consequences
``u*r*v`` of that length are row-reduced per (source, target) stratum, and
the surviving words form the basis.  Enumeration stops at the first fully
dead length; reaching the path-length bound with survivors aborts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra
from .fp import Mat, Subspace, check_prime


class QuiverError(ValueError):
    """Semantic error in a presentation (bad reference, bad relation, ...)."""


class ParseError(QuiverError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Term:
    """One summand of a relation: coeff * (arrow word, right-to-left)."""

    coeff: int
    arrows: tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    name: str
    field_prime: int
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[Term, ...], ...]
    path_length_bound: int = 32


# A path is (source_vertex, arrow_index_word); trivial paths have empty words.
Path = tuple[int, tuple[int, ...]]


def path_source(pres: Presentation, w: Path) -> int:
    return w[0]


def path_target(pres: Presentation, w: Path) -> int:
    return pres.arrows[w[1][0]].target if w[1] else w[0]


def path_name(pres: Presentation, w: Path) -> str:
    if not w[1]:
        return f"e_{pres.vertices[w[0]]}"
    return "*".join(pres.arrows[i].name for i in w[1])


# -- tokenizer / parser ----------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<arrow>->)|(?P<punct>[{}:;,*+\-])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok("punct" if kind == "arrow" else kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, message: str):
        t = self.peek()
        raise ParseError(message, t.line, t.col)

    def expect(self, value: str) -> _Tok:
        t = self.peek()
        if t.value != value:
            self.fail(f"expected {value!r}, found {t.value!r}")
        return self.next()

    def expect_kind(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            self.fail(f"expected {kind}, found {t.value!r}")
        return self.next()

    def keyword(self, word: str) -> _Tok:
        t = self.peek()
        if t.kind != "ident" or t.value != word:
            self.fail(f"expected keyword {word!r}, found {t.value!r}")
        return self.next()


def parse_presentation(text: str, path_length_bound: int = 32) -> Presentation:
    """Parse the DSL and resolve references; see the package README for the grammar."""
    ps = _Parser(text)
    ps.keyword("quiver")
    name = ps.expect_kind("ident").value
    ps.expect("{")

    ps.keyword("field")
    ps.expect(":")
    ftok = ps.expect_kind("ident")
    m = re.fullmatch(r"F_(\d+)", ftok.value)
    if not m:
        raise ParseError(f"expected a field of the form F_<prime>, found {ftok.value!r}",
                         ftok.line, ftok.col)
    try:
        prime = check_prime(int(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc), ftok.line, ftok.col) from None
    ps.expect(";")

    ps.keyword("vertices")
    ps.expect(":")
    vertices = [ps.expect_kind("ident").value]
    while ps.peek().value == ",":
        ps.next()
        vertices.append(ps.expect_kind("ident").value)
    ps.expect(";")
    if len(set(vertices)) != len(vertices):
        ps.fail("duplicate vertex name")
    v_index = {v: i for i, v in enumerate(vertices)}

    arrows: list[Arrow] = []
    if ps.peek().value == "arrows":
        ps.next()
        ps.expect(":")
        while True:
            atok = ps.expect_kind("ident")
            ps.expect(":")
            stok = ps.expect_kind("ident")
            ps.expect("->")
            ttok = ps.expect_kind("ident")
            for vtok in (stok, ttok):
                if vtok.value not in v_index:
                    raise ParseError(f"undefined vertex {vtok.value!r}", vtok.line, vtok.col)
            if any(a.name == atok.value for a in arrows):
                raise ParseError(f"duplicate arrow name {atok.value!r}", atok.line, atok.col)
            arrows.append(Arrow(atok.value, v_index[stok.value], v_index[ttok.value]))
            if ps.peek().value != ",":
                break
            ps.next()
        ps.expect(";")
    a_index = {a.name: i for i, a in enumerate(arrows)}

    relations: list[tuple[Term, ...]] = []
    if ps.peek().value == "relations":
        ps.next()
        ps.expect(":")
        while True:
            relations.append(_parse_relation(ps, a_index, arrows))
            if ps.peek().value != ",":
                break
            ps.next()
        ps.expect(";")

    ps.expect("}")
    if ps.peek().kind != "eof":
        ps.fail("trailing input after presentation")
    return Presentation(name, prime, tuple(vertices), tuple(arrows),
                        tuple(relations), path_length_bound)


def _parse_relation(ps: _Parser, a_index: dict[str, int], arrows: list[Arrow]) -> tuple[Term, ...]:
    terms = [_parse_term(ps, a_index, arrows, 1)]
    while ps.peek().value in ("+", "-"):
        sign = 1 if ps.next().value == "+" else -1
        terms.append(_parse_term(ps, a_index, arrows, sign))
    src = {(arrows[t.arrows[-1]].source, arrows[t.arrows[0]].target) for t in terms}
    if len(src) != 1:
        ps.fail("terms of a relation must be parallel paths")
    return tuple(terms)


def _parse_term(ps: _Parser, a_index: dict[str, int], arrows: list[Arrow], sign: int) -> Term:
    coeff = sign
    if ps.peek().kind == "int":
        coeff = sign * int(ps.next().value)
        ps.expect("*")
    first = ps.expect_kind("ident")
    word_toks = [first]
    while ps.peek().value == "*":
        ps.next()
        word_toks.append(ps.expect_kind("ident"))
    word = []
    for t in word_toks:
        if t.value not in a_index:
            raise ParseError(f"undefined arrow {t.value!r}", t.line, t.col)
        word.append(a_index[t.value])
    for left, right, tok in zip(word, word[1:], word_toks[1:]):
        if arrows[left].source != arrows[right].target:
            raise ParseError(
                f"non-composable relation term at {tok.value!r} "
                f"(source of the left factor must match target of the right)",
                tok.line, tok.col)
    if len(word) < 2:
        t = word_toks[0]
        raise ParseError("relation terms must have length >= 2", t.line, t.col)
    return Term(coeff, tuple(word))


# -- path basis enumeration --------------------------------------------------


@dataclass(frozen=True)
class PathBasis:
    """Normal-form paths spanning the quotient of the path algebra."""

    presentation: Presentation
    paths: tuple[Path, ...]
    dead_length: int
    # word -> (global basis indices, coefficients): its class in the quotient
    reduction: dict[Path, tuple[np.ndarray, np.ndarray]] = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.paths)

    def names(self) -> tuple[str, ...]:
        return tuple(path_name(self.presentation, w) for w in self.paths)


def enumerate_path_basis(pres: Presentation, max_level_words: int = 200_000) -> PathBasis:
    """Basis of the path algebra modulo the relation ideal.

    Requires relations whose terms all share the same length (monomial
    relations and combinations of equal-length parallel paths); the grading
    of the quotient depends on it.
    """
    for rel in pres.relations:
        if len({len(t.arrows) for t in rel}) != 1:
            raise QuiverError(
                "relation terms must all have the same length: "
                + " vs ".join(str(len(t.arrows)) for t in rel))

    arrows = pres.arrows
    trivial = [(v, ()) for v in range(len(pres.vertices))]
    levels: list[list[Path]] = [trivial, [(a.source, (i,)) for i, a in enumerate(arrows)]]

    basis: list[Path] = []
    reduction: dict[Path, tuple[np.ndarray, np.ndarray]] = {}

    def register_alive(word: Path):
        reduction[word] = (np.array([len(basis)], dtype=np.int64),
                           np.array([1], dtype=np.int64))
        basis.append(word)

    for w in levels[0]:
        register_alive(w)
    for w in sorted(levels[1], key=lambda w: w[1]):
        register_alive(w)

    if not levels[1]:
        return PathBasis(pres, tuple(basis), 1, reduction)

    dead_length = None
    length = 2
    while True:
        words = _extend(pres, levels[length - 1])
        if len(words) > max_level_words:
            raise QuiverError(
                f"more than {max_level_words} paths of length {length}; "
                "presentation is beyond desk scale")
        if not words:
            dead_length = length
            break
        levels.append(words)
        alive = _reduce_level(pres, levels, length, reduction, basis)
        if alive == 0:
            dead_length = length
            break
        if length == pres.path_length_bound:
            raise QuiverError(
                f"ideal may be non-admissible: paths of length {length} survive")
        length += 1

    return PathBasis(pres, tuple(basis), dead_length, reduction)


def _extend(pres: Presentation, prev: list[Path]) -> list[Path]:
    out = []
    for w in prev:
        tgt = path_target(pres, w)
        for i, a in enumerate(pres.arrows):
            if a.source == tgt:
                out.append((w[0], (i,) + w[1]))
    return sorted(out, key=lambda w: w[1])


def _reduce_level(pres, levels, length, reduction, basis) -> int:
    """Row-reduce relation consequences of one length; returns survivor count."""
    p = pres.field_prime
    strata: dict[tuple[int, int], list[Path]] = {}
    for w in levels[length]:
        strata.setdefault((path_source(pres, w), path_target(pres, w)), []).append(w)

    rows_by_stratum: dict[tuple[int, int], list[dict[Path, int]]] = {k: [] for k in strata}
    for rel in pres.relations:
        rel_len = len(rel[0].arrows)
        rel_src = pres.arrows[rel[0].arrows[-1]].source
        rel_tgt = pres.arrows[rel[0].arrows[0]].target
        for left_len in range(0, length - rel_len + 1):
            right_len = length - rel_len - left_len
            lefts = [u for u in levels[left_len] if path_source(pres, u) == rel_tgt]
            rights = [v for v in levels[right_len] if path_target(pres, v) == rel_src]
            for u in lefts:
                for v in rights:
                    row = {}
                    for t in rel:
                        w = (v[0], u[1] + t.arrows + v[1])
                        row[w] = (row.get(w, 0) + t.coeff) % p
                    key = (v[0], path_target(pres, u))
                    rows_by_stratum[key].append(row)

    alive_words: list[Path] = []
    for key in sorted(strata):
        words = strata[key]
        index = {w: i for i, w in enumerate(words)}
        rows = rows_by_stratum[key]
        if rows:
            mat = np.zeros((len(rows), len(words)), dtype=np.int64)
            for r, row in enumerate(rows):
                for w, c in row.items():
                    mat[r, index[w]] = c
            red, pivots = Mat(p, mat).rref()
            pivot_set = set(pivots)
        else:
            red, pivots, pivot_set = None, (), set()
        alive_local = [i for i in range(len(words)) if i not in pivot_set]
        alive_words.extend(words[i] for i in alive_local)
        # record reductions now; global indices are assigned below once the
        # whole level's survivors are appended in lexicographic word order
        strata[key] = (words, alive_local, red, pivots)

    alive_words.sort(key=lambda w: w[1])
    global_index = {}
    for w in alive_words:
        global_index[w] = len(basis)
        reduction[w] = (np.array([len(basis)], dtype=np.int64),
                        np.array([1], dtype=np.int64))
        basis.append(w)

    for key, (words, alive_local, red, pivots) in strata.items():
        gidx = np.array([global_index[words[i]] for i in alive_local], dtype=np.int64)
        for r, pc in enumerate(pivots):
            coeffs = np.array([(-red.a[r, i]) % pres.field_prime for i in alive_local],
                              dtype=np.int64)
            reduction[words[pc]] = (gidx, coeffs)

    return len(alive_words)


def build_algebra(pres: Presentation, basis: PathBasis | None = None) -> Algebra:
    """Realise the presentation as a structure-constant algebra.

    The basis is the path basis; multiplication is concatenation reduced
    modulo the relations; the idempotents are the trivial paths and the
    radical is spanned by the positive-length basis paths.
    """
    if basis is None:
        basis = enumerate_path_basis(pres)
    p = pres.field_prime
    n = basis.dim
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i, u in enumerate(basis.paths):
        for j, v in enumerate(basis.paths):
            if path_source(pres, u) != path_target(pres, v):
                continue
            w = (v[0], u[1] + v[1])
            if len(w[1]) >= basis.dead_length:
                continue
            gidx, coeffs = basis.reduction[w]
            mult[i, j, gidx] = coeffs

    n_vert = len(pres.vertices)
    unit = np.zeros(n, dtype=np.int64)
    unit[:n_vert] = 1
    idempotents = [np.eye(n, dtype=np.int64)[v] for v in range(n_vert)]
    radical_rows = np.eye(n, dtype=np.int64)[n_vert:]
    generators = [np.eye(n, dtype=np.int64)[i] for i in range(n_vert + len(pres.arrows))]
    return Algebra(p, mult, unit, idempotents,
                   Subspace.from_rows(p, n, radical_rows),
                   generators=generators, names=basis.names())


def hom_from_arrow_images(basis: PathBasis, source: Algebra, target: Algebra,
                          vertex_images: list[np.ndarray],
                          arrow_images: list[np.ndarray]) -> Mat:
    """The algebra map determined on a path basis by images of vertices/arrows.

    Each basis path goes to the product of the images of its arrows
    (right-to-left), trivial paths to the vertex images.  Raises unless the
    result is bijective, multiplicative on all basis pairs, and unital.
    """
    pres = basis.presentation
    p = source.p
    cols = []
    for w in basis.paths:
        if not w[1]:
            img = np.asarray(vertex_images[w[0]], dtype=np.int64) % p
        else:
            img = np.asarray(arrow_images[w[1][-1]], dtype=np.int64) % p
            for a in reversed(w[1][:-1]):
                img = target.multiply(arrow_images[a], img)
        cols.append(img)
    phi = Mat(p, np.array(cols).T)
    if not phi.is_invertible():
        raise QuiverError("arrow images do not define a bijection")
    if (phi.apply(source.unit) != target.unit).any():
        raise QuiverError("arrow images do not preserve the unit")
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = phi.apply(source.mult[i, j])
            rhs = target.multiply(phi.a[:, i], phi.a[:, j])
            if (lhs != rhs).any():
                raise QuiverError(f"multiplicativity fails on basis pair ({i}, {j})")
    return phi

"""Independent brute-force oracles used to freeze expected test values.

Everything here is pure Python (no numpy) so the oracles share no code
path with the library they check.
"""

from __future__ import annotations

from itertools import product


def rref_py(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Plain-Python Gauss-Jordan over F_p; returns (reduced rows, pivot cols)."""
    a = [[x % p for x in row] for row in rows]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    row = 0
    pivots = []
    for col in range(n):
        if row >= m:
            break
        piv = next((r for r in range(row, m) if a[r][col] % p != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [(x * inv) % p for x in a[row]]
        for r in range(m):
            if r != row and a[r][col]:
                c = a[r][col]
                a[r] = [(x - c * y) % p for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    return a, pivots


def rank_py(rows: list[list[int]], p: int) -> int:
    return len(rref_py(rows, p)[1])


def kernel_py(rows: list[list[int]], p: int) -> list[list[int]]:
    """Canonical kernel basis via free variables, then re-reduced."""
    red, pivots = rref_py(rows, p)
    n = len(rows[0]) if rows else 0
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for c in free:
        v = [0] * n
        v[c] = 1
        for j, pc in enumerate(pivots):
            v[pc] = (-red[j][c]) % p
        vecs.append(v)
    return rref_py(vecs, p)[0][: len(vecs)]


def mat_vec_py(rows, vec, p):
    return [sum(r * v for r, v in zip(row, vec)) % p for row in rows]


def solve_py(rows, b, p):
    """Brute-force solve for small systems by enumerating F_p^n (tiny p only)."""
    n = len(rows[0]) if rows else 0
    for cand in product(range(p), repeat=n):
        if mat_vec_py(rows, list(cand), p) == [x % p for x in b]:
            return list(cand)
    return None


def monomial_path_basis(arrows: dict[str, tuple[str, str]],
                        vertices: list[str],
                        dead_words: list[tuple[str, ...]],
                        max_len: int) -> list[tuple]:
    """Brute-force basis of a monomial quiver algebra.

    Enumerates all composable arrow words up to ``max_len`` and keeps those
    containing no dead word as a contiguous subword.  Words are tuples of
    arrow names in display order (leftmost arrow applied last); trivial
    paths are ('e', vertex).
    """
    def source(w):
        return arrows[w[-1]][0]

    def target(w):
        return arrows[w[0]][1]

    def is_dead(w):
        return any(
            w[i:i + len(d)] == d for d in dead_words for i in range(len(w) - len(d) + 1)
        )

    basis = [("e", v) for v in vertices]
    level = [(a,) for a in arrows]
    while level and len(level[0]) <= max_len:
        basis.extend(w for w in level if not is_dead(w))
        nxt = []
        for w in level:
            for a, (s, t) in arrows.items():
                if s == target(w):
                    nxt.append((a,) + w)
        level = nxt
    return basis

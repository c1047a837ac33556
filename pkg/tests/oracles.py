"""Independent reference computations built on sympy.

Nothing here imports the package's linear algebra or complexes, so the
tests compare two separate implementations.
"""

from itertools import combinations

import sympy


def ce_homology_trivial(n, brackets):
    """Betti numbers of Λ^• g with trivial coefficients.

    ``brackets`` maps (i, j) with i < j to {k: value}.  Uses the textbook
    boundary ``X_1∧..∧X_p -> sum_{a<b} (-1)^{a+b} [X_a, X_b]∧X_1..^a..^b..X_p``.
    """
    bases = [list(combinations(range(n), p)) for p in range(n + 1)]
    index = [{t: i for i, t in enumerate(b)} for b in bases]

    def boundary(p):
        M = sympy.zeros(len(bases[p - 1]), len(bases[p]))
        for col, t in enumerate(bases[p]):
            for a, b in combinations(range(p), 2):
                rest = [t[k] for k in range(p) if k not in (a, b)]
                for k, v in brackets.get((t[a], t[b]), {}).items():
                    if k in rest:
                        continue
                    word = [k] + rest
                    # sort with sign
                    sign = 1
                    w = list(word)
                    for i in range(len(w)):
                        for j in range(len(w) - 1 - i):
                            if w[j] > w[j + 1]:
                                w[j], w[j + 1] = w[j + 1], w[j]
                                sign = -sign
                    M[index[p - 1][tuple(w)], col] += sympy.Rational(v) * sign * (-1) ** (a + b)
        return M

    ranks = {p: boundary(p).rank() if bases[p] and bases[p - 1] else 0 for p in range(1, n + 1)}
    ranks[0] = 0
    ranks[n + 1] = 0
    return [len(bases[p]) - ranks[p] - ranks[p + 1] for p in range(n + 1)]


def sl2_brackets():
    # [X1,X2]=X3, [X3,X1]=2X1, [X3,X2]=-2X2 in 0-based form, stored with i<j
    return {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}}


def cd_commutators():
    """Expand [A^i, A^j] for the two-parameter (c, d) family of Weil coactions."""
    c, d = sympy.symbols("c d")
    z = 0
    A1 = sympy.Matrix([[z, c, z, z], [z, z, z, z], [d, z, z, z], [z, z, z, z]])
    A2 = sympy.Matrix([[z, z, c, z], [d, z, z, z], [z, z, z, z], [z, z, z, z]])
    A3 = sympy.Matrix([[z, z, z, c], [z, z, z, z], [z, z, z, z], [d / 2, z, z, z]])
    mats = [A1, A2, A3]
    out = {}
    for i, j in combinations(range(3), 2):
        out[i, j] = (mats[i] * mats[j] - mats[j] * mats[i]).applyfunc(sympy.expand)
    return (c, d), out


def reference_weil_cd():
    """Reference basis solutions as plain nested lists: c-part and d-part."""
    c_part = [
        [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
        [[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
        [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    ]
    d_part = [
        [[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]],
        [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
        [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], ["1/2", 0, 0, 0]],
    ]
    return c_part, d_part


def reference_weil_action():
    B1 = [[0, 0, 0, 0], [0, 0, 0, -2], [0, 0, 0, 0], [0, 0, 1, 0]]
    B2 = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 2], [0, -1, 0, 0]]
    B3 = [[0, 0, 0, 0], [0, 2, 0, 0], [0, 0, -2, 0], [0, 0, 0, 0]]
    return [B1, B2, B3]


def sympy_rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0

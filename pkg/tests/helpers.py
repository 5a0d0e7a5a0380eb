import itertools

import numpy as np

from ginvph import GroupAction, SimplicialComplex


def octahedron():
    """Boundary of the octahedron; vertex v is antipodal to v + 3."""
    cells = [(a, b, c) for a in (0, 3) for b in (1, 4) for c in (2, 5)]
    cx = SimplicialComplex.from_cells(6, cells)
    anti = GroupAction(((0, 1, 2, 3, 4, 5), (3, 4, 5, 0, 1, 2)))
    return cx, anti


def brute_bottleneck(A, B):
    """Bottleneck distance of two small finite diagrams by trying every matching."""
    A, B = list(A), list(B)
    diag = lambda p: (p[1] - p[0]) / 2
    best = np.inf
    # pad each side with diagonal slots so every partial matching is a permutation
    left = A + [None] * len(B)
    right = B + [None] * len(A)
    for perm in itertools.permutations(range(len(right))):
        cost = 0.0
        for i, j in enumerate(perm):
            a, b = left[i], right[j]
            if a is None and b is None:
                continue
            if a is None:
                c = diag(b)
            elif b is None:
                c = diag(a)
            else:
                c = max(abs(a[0] - b[0]), abs(a[1] - b[1]))
            cost = max(cost, c)
        best = min(best, cost)
    return 0.0 if not left else best

"""Independent oracles shared by the tests."""
import itertools

import numpy as np


def h2(p: float) -> float:
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def direct_mi(px, W) -> float:
    """I(X;Y) by direct summation over p(x) W(y|x) log W(y|x)/p(y)."""
    py = px @ W
    total = 0.0
    for x in range(W.shape[0]):
        for y in range(W.shape[1]):
            if px[x] > 0 and W[x, y] > 0:
                total += px[x] * W[x, y] * np.log2(W[x, y] / py[y])
    return total


def vertices(A, b, tol=1e-9):
    """Vertices of {x >= 0 : A x <= b} by brute-force basis enumeration."""
    A = np.asarray(A, float)
    b = np.asarray(b, float)
    dim = A.shape[1]
    G = np.vstack([A, -np.eye(dim)])
    h = np.concatenate([b, np.zeros(dim)])
    out = []
    for rows in itertools.combinations(range(len(h)), dim):
        M = G[list(rows)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, h[list(rows)])
        if np.all(G @ x <= h + tol):
            out.append(x)
    return np.array(out).reshape(-1, dim)


def closed_by_definition(messages, S) -> bool:
    """Every present message whose transmitter set is a strict subset of the
    transmitter set of a member is itself a member."""
    for m in S:
        for l in messages:
            if set(l.tx) < set(m.tx) and l not in S:
                return False
    return True

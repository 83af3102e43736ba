"""Pure numpy implementations of the box-enumeration kernels.

Must agree exactly (values and order) with ``_kernels.pyx``.  Boxes are
walked in lexicographic order with the last coordinate fastest, and only the
half of the box whose first nonzero coordinate is positive is reported.
"""
from __future__ import annotations

import itertools

import numpy as np

CHUNK = 1 << 16


def _blocks(bounds):
    ranges = [np.arange(-int(b), int(b) + 1, dtype=np.int64) for b in bounds]
    dim = len(ranges)
    split, size = dim, 1
    while split > 0 and size * len(ranges[split - 1]) <= CHUNK:
        split -= 1
        size *= len(ranges[split])
    if split < dim:
        grids = np.meshgrid(*ranges[split:], indexing="ij")
        tail = np.stack([g.ravel() for g in grids], axis=1)
    else:
        tail = np.zeros((1, 0), dtype=np.int64)
    for head in itertools.product(*ranges[:split]):
        block = np.empty((tail.shape[0], dim), dtype=np.int64)
        block[:, :split] = head
        block[:, split:] = tail
        yield block


def _positive_half(Y):
    if not Y.shape[1]:
        return np.zeros(Y.shape[0], dtype=bool)
    nz = Y != 0
    first = nz.argmax(axis=1)
    lead = Y[np.arange(Y.shape[0]), first]
    return lead > 0


def _row_support(Y, F, row_of, n):
    dots = Y @ F.T
    nz = dots != 0
    sup = np.zeros((Y.shape[0], n), dtype=bool)
    for j, r in enumerate(row_of):
        sup[:, r] |= nz[:, j]
    return sup


def box_enumerate(basis, bounds, max_sup):
    basis = np.asarray(basis, dtype=np.int64)
    ell, c = basis.shape
    coeffs, vecs = [], []
    for C in _blocks(bounds):
        C = C[_positive_half(C)]
        V = C @ basis
        sup = np.abs(V).max(axis=1) if c else np.zeros(len(C), dtype=np.int64)
        keep = (sup > 0) & (sup <= max_sup)
        coeffs.append(C[keep])
        vecs.append(V[keep])
    if not coeffs:
        return np.zeros((0, ell), np.int64), np.zeros((0, c), np.int64)
    return np.concatenate(coeffs), np.concatenate(vecs)


def sparse_scan(F, row_of, A, ybound, k, radius):
    F = np.asarray(F, dtype=np.int64)
    A = np.asarray(A, dtype=np.float64)
    row_of = np.asarray(row_of, dtype=np.int64)
    n = A.shape[0]
    limit = radius * (1 + 1e-9) + 1e-300
    out = []
    for Y in _blocks([ybound] * n):
        Y = Y[_positive_half(Y)]
        sup = _row_support(Y, F, row_of, n)
        Y = Y[sup.sum(axis=1) <= k]
        if not len(Y):
            continue
        X = Y.astype(np.float64) @ A.T
        out.append(Y[np.abs(X).max(axis=1) <= limit])
    if not out:
        return np.zeros((0, n), np.int64)
    return np.concatenate(out)


def support_gram(F, row_of, n, ybound):
    F = np.asarray(F, dtype=np.int64)
    row_of = np.asarray(row_of, dtype=np.int64)
    G = np.zeros((1 << n, n, n), dtype=np.int64)
    weights = (1 << np.arange(n, dtype=np.int64))
    for Y in _blocks([ybound] * n):
        Y = Y[_positive_half(Y)]
        masks = _row_support(Y, F, row_of, n).astype(np.int64) @ weights
        for m in np.unique(masks):
            Ym = Y[masks == m]
            G[m] += Ym.T @ Ym
    return G

"""The compiled and numpy kernels must agree bit for bit."""
import itertools
import random

import numpy as np
import pytest

from sgon import kernels
from sgon.errors import BoxTooLarge

BACKENDS = ["python"] + (["cython"] if kernels.has_compiled() else [])


@pytest.fixture(params=BACKENDS)
def impl(request):
    return kernels.backend(request.param)


def half_box(n, Y):
    for y in itertools.product(range(-Y, Y + 1), repeat=n):
        nz = [v for v in y if v]
        if nz and nz[0] > 0:
            yield y


def test_box_enumerate_reference(impl):
    basis = [[1, 2, 0], [0, 3, -1]]
    coeffs, vecs = kernels.box_enumerate(basis, [2, 2], 4, impl=impl)
    expect = []
    for c in half_box(2, 2):
        v = [c[0] * basis[0][j] + c[1] * basis[1][j] for j in range(3)]
        if 0 < max(map(abs, v)) <= 4:
            expect.append((c, v))
    assert [tuple(c) for c in coeffs] == [c for c, _ in expect]
    assert vecs.tolist() == [v for _, v in expect]


def test_sparse_scan_reference(impl):
    F = [[1, 0], [0, 1], [1, 0]]
    row_of = [0, 0, 1]
    A = [[1.0, 1.7320508075688772], [0.0, 1.0]]
    ys = kernels.sparse_scan(F, row_of, A, 3, 1, 2.0, impl=impl)
    # row 0 is nonzero for every y != 0, row 1 vanishes iff y0 = 0;
    # A (0, t) = (t sqrt3, t) fits the radius only for t = 1
    assert ys.tolist() == [[0, 1]]
    everything = [list(y) for y in half_box(2, 3)
                  if max(abs(y[0] + A[0][1] * y[1]), abs(y[1])) <= 2.0]
    assert kernels.sparse_scan(F, row_of, A, 3, 2, 2.0, impl=impl).tolist() == everything


def test_support_gram_reference(impl):
    F = [[1, 0], [0, 1], [1, 0]]
    row_of = [0, 0, 1]
    G = kernels.support_gram(F, row_of, 2, 2, impl=impl)
    expect = np.zeros((4, 2, 2), dtype=np.int64)
    for y in half_box(2, 2):
        dots = [F[j][0] * y[0] + F[j][1] * y[1] for j in range(3)]
        mask = 0
        for j, d in enumerate(dots):
            if d:
                mask |= 1 << row_of[j]
        expect[mask] += np.outer(y, y)
    assert (G == expect).all()


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_backends_agree_on_random_inputs():
    py, cy = kernels.backend("python"), kernels.backend("cython")
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(2, 4)
        d = rng.randint(n, 2 * n)
        F = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(d)]
        row_of = sorted(rng.randrange(n) for _ in range(d))
        A = [[rng.uniform(-3, 3) for _ in range(n)] for _ in range(n)]
        Y, k = rng.randint(1, 4), rng.randint(1, n)
        a = kernels.sparse_scan(F, row_of, A, Y, k, 5.0, impl=py)
        b = kernels.sparse_scan(F, row_of, A, Y, k, 5.0, impl=cy)
        assert np.array_equal(a, b)
        assert np.array_equal(kernels.support_gram(F, row_of, n, Y, impl=py),
                              kernels.support_gram(F, row_of, n, Y, impl=cy))
        basis = [[rng.randint(-5, 5) for _ in range(n + 1)] for _ in range(n)]
        bounds = [rng.randint(0, 3) for _ in range(n)]
        ca, va = kernels.box_enumerate(basis, bounds, 6, impl=py)
        cb, vb = kernels.box_enumerate(basis, bounds, 6, impl=cy)
        assert np.array_equal(ca, cb) and np.array_equal(va, vb)


def test_budget_and_overflow_guards():
    with pytest.raises(BoxTooLarge):
        kernels.box_enumerate([[1, 0], [0, 1]], [10**4, 10**4], 5, budget=1000)
    with pytest.raises(BoxTooLarge):
        kernels.sparse_scan([[2**61, 1]], [0], [[1.0, 0.0], [0.0, 1.0]], 4, 1, 1.0)


def test_empty_basis(impl):
    coeffs, vecs = kernels.box_enumerate(np.zeros((0, 3), dtype=np.int64), [], 3, impl=impl)
    assert coeffs.shape[0] == 0 and vecs.shape[0] == 0


def test_backend_selection():
    assert kernels.BACKEND in ("python", "cython")
    with pytest.raises(ValueError):
        kernels.backend("fortran")

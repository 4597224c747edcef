"""Batch arithmetic over a whole field, for enumeration-heavy scans.

An array of shape (m, n) holds m elements of F_{p^n} as coefficient rows.
Row ``i`` of ``VecField.elements(a, b)`` is element number ``a + i`` in the
lexicographic enumeration order, and ``encode`` inverts that numbering.
"""

from functools import lru_cache

import numpy as np

from excmaps.algebra.fields import _reduce


class VecField:
    def __init__(self, F):
        self.F = F
        self.p = F.p
        self.n = F.n
        self.size = F.q
        self.weights = np.array([F.p ** (F.n - 1 - i) for i in range(F.n)], dtype=np.int64)
        n = F.n
        red = np.zeros((2 * n - 1, n), dtype=np.int64)
        for j in range(2 * n - 1):
            unit = [0] * (2 * n - 1)
            unit[j] = 1
            red[j] = _reduce(unit, F)
        # table[i * n + k] = t^(i + k) reduced
        self.table = np.stack([red[i + k] for i in range(n) for k in range(n)])

    def elements(self, start, stop):
        idx = np.arange(start, stop, dtype=np.int64)
        return (idx[:, None] // self.weights[None, :]) % self.p

    def encode(self, A):
        return A @ self.weights

    def const(self, a):
        return np.array(a.coeffs, dtype=np.int64)

    def mul(self, A, B):
        if self.n == 1:
            return (A * B) % self.p
        A = np.atleast_2d(A)
        B = np.atleast_2d(B)
        m = max(A.shape[0], B.shape[0])
        outer = (A[:, :, None] * B[:, None, :]).reshape(m, self.n * self.n)
        return (outer @ self.table) % self.p

    def add(self, A, B):
        return (A + B) % self.p

    def power(self, A, e):
        result = np.zeros_like(A)
        result[:, 0] = 1
        base = A
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inverse(self, A):
        """Elementwise inverse with 0 -> 0."""
        return self.power(A, self.size - 2)

    def horner(self, coeffs, X):
        """Evaluate a polynomial, coefficient rows constant term first, at each row of X."""
        val = np.broadcast_to(coeffs[-1], X.shape).copy()
        for c in coeffs[-2::-1]:
            val = self.add(self.mul(val, X), c[None, :])
        return val


@lru_cache(maxsize=64)
def vec_field(F):
    return VecField(F)


def _chunks(total, first=256, largest=1 << 16):
    start, size = 0, first
    while start < total:
        stop = min(total, start + size)
        yield start, stop
        start = stop
        size = min(size * 2, largest)


def first_root_index(coeffs_fp, F):
    """Index of the least element of F that is a root of a polynomial over F_p.

    ``coeffs_fp`` are prime-field integers, constant term first. Returns None
    when there is no root.
    """
    V = vec_field(F)
    rows = np.zeros((len(coeffs_fp), F.n), dtype=np.int64)
    rows[:, 0] = np.array(coeffs_fp, dtype=np.int64) % F.p
    for start, stop in _chunks(F.q):
        vals = V.horner(rows, V.elements(start, stop))
        hits = np.flatnonzero(~vals.any(axis=1))
        if hits.size:
            return start + int(hits[0])
    return None


class MapKernel:
    """Batch evaluation of a rational function defined over F (already embedded).

    Images are returned as enumeration codes, with ``F.q`` standing for the
    point at infinity.
    """

    def __init__(self, num_coeffs, den_coeffs, F):
        self.V = vec_field(F)
        self.num = np.array([c.coeffs for c in num_coeffs], dtype=np.int64)
        self.den = np.array([c.coeffs for c in den_coeffs], dtype=np.int64)
        self.is_poly = len(den_coeffs) == 1

    def codes(self, X):
        V = self.V
        num = V.horner(self.num, X)
        if self.is_poly:
            return V.encode(num)
        den = V.horner(self.den, X)
        pole = ~den.any(axis=1)
        vals = V.mul(num, V.inverse(den))
        out = V.encode(vals)
        out[pole] = V.size
        return out


def first_collision(kernel, total, infinity_image=None):
    """Scan points 0..total-1 in order, then infinity if its image is given.

    Returns None if the images are pairwise distinct, else ``(a, b)`` where
    ``b`` is the earliest point whose image already occurred and ``a`` is the
    earliest point with that image. Point number ``total`` denotes infinity.
    """
    first_pos = np.full(kernel.V.size + 1, -1, dtype=np.int64)
    for start, stop in _chunks(total):
        codes = kernel.codes(kernel.V.elements(start, stop))
        uniq, idx = np.unique(codes, return_index=True)
        repeated = np.ones(codes.size, dtype=bool)
        repeated[idx] = False
        repeated |= first_pos[codes] >= 0
        bad = np.flatnonzero(repeated)
        if bad.size:
            j = int(bad[0])
            a = int(first_pos[codes[j]])
            if a < 0:
                a = start + int(np.flatnonzero(codes == codes[j])[0])
            return a, start + j
        first_pos[uniq] = start + idx
    if infinity_image is not None and first_pos[infinity_image] >= 0:
        return int(first_pos[infinity_image]), total
    return None

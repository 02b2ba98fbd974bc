"""Value arrays for the dynamic programming tables.

Every table row holds a block of cells indexed by small integer counters
(solution size, and so on) plus the isolation weight.  Two layouts exist:

* :class:`ExactBackend` keeps the weight as an explicit axis and stores exact
  field elements (``F_p`` or, without a prime, Python integers/fractions).
* :class:`EvalBackend` works in characteristic 2 and replaces the weight axis by
  the value of the weight polynomial at a random point of ``GF(2^64)``.  A
  nonzero evaluation certifies a nonzero weight polynomial, so one-sided error
  is kept; a nonzero polynomial evaluates to zero with probability at most
  ``deg / 2^64``.
"""

from __future__ import annotations

import random
import sys

import numpy as np

GF_BITS = 64
_GF_LOW = 0x1B  # x^64 + x^4 + x^3 + x + 1
_MASK = (1 << GF_BITS) - 1
_WIDE_TABLES_FROM = 1 << 16  # cells; below this the 16-bit tables cost more to build than they save


def gf_mul(a: int, b: int) -> int:
    """Product in ``GF(2^64)``."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> GF_BITS:
            a = (a & _MASK) ^ _GF_LOW
    return acc


def gf_pow(a: int, e: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = gf_mul(out, a)
        a = gf_mul(a, a)
        e >>= 1
    return out


def _shift_axes(vals: np.ndarray, offsets: tuple[int, ...], first_axis: int = 1) -> np.ndarray:
    out = np.zeros_like(vals)
    src = [slice(None)] * vals.ndim
    dst = [slice(None)] * vals.ndim
    for ax, off in enumerate(offsets, start=first_axis):
        size = vals.shape[ax]
        if abs(off) >= size:
            return out
        if off >= 0:
            src[ax], dst[ax] = slice(0, size - off), slice(off, size)
        else:
            src[ax], dst[ax] = slice(-off, size), slice(0, size + off)
    out[tuple(dst)] = vals[tuple(src)]
    return out


def _accumulate(op: np.ufunc, dst: np.ndarray, dst_rows, block: np.ndarray, unique: bool = False) -> None:
    """``dst[dst_rows[i]] op= block[i]`` for all ``i``, repeated targets included unless ``unique``."""
    idx = np.asarray(dst_rows, dtype=np.int64)
    if unique:
        dst[idx] = op(dst[idx], block)
        return
    order = np.argsort(idx, kind="stable")
    idx = idx[order]
    starts = np.flatnonzero(np.r_[True, idx[1:] != idx[:-1]])
    if len(starts) == len(idx):
        rows = block[order]
    else:
        rows = op.reduceat(block[order], starts, axis=0)
    targets = idx[starts]
    dst[targets] = op(dst[targets], rows)


class ExactBackend:
    """Cells ``counters x [0, wmax]`` holding exact field elements."""

    def __init__(self, counters: tuple[int, ...], wmax: int, p: int | None = None):
        self.counters = tuple(counters)
        self.wmax = wmax
        self.p = p
        self.cell_shape = self.counters + (wmax + 1,)
        self.dtype = np.int64 if p else object

    def zeros(self, rows: int) -> np.ndarray:
        z = np.zeros((rows,) + self.cell_shape, dtype=self.dtype)
        if self.dtype is object:
            z[...] = 0
        return z

    def unit(self, at: tuple[int, ...] | None = None) -> np.ndarray:
        z = self.zeros(1)
        z[(0,) + (at or (0,) * len(self.counters)) + (0,)] = 1
        return z

    def shift(self, vals: np.ndarray, offsets: tuple[int, ...], weight: int = 0) -> np.ndarray:
        return _shift_axes(vals, tuple(offsets) + (weight,))

    def scatter(self, dst: np.ndarray, dst_rows, src: np.ndarray, src_rows=None, coeff=1, unique: bool = False) -> None:
        """Add ``coeff * src[src_rows]`` into ``dst[dst_rows]``; without ``src_rows`` the rows of ``src`` line up.

        ``unique`` promises that ``dst_rows`` has no repeats, which skips the grouping.
        """
        if len(dst_rows) == 0:
            return
        block = src if src_rows is None else src[np.asarray(src_rows, dtype=np.int64)]
        if coeff != 1:
            block = block * (coeff % self.p if self.p else coeff)
        _accumulate(np.add, dst, dst_rows, block, unique)
        if self.p:
            np.remainder(dst, self.p, out=dst)

    def nonzero_rows(self, vals: np.ndarray) -> np.ndarray:
        if len(vals) == 0:
            return np.zeros(0, dtype=bool)
        return (vals != 0).reshape(len(vals), -1).any(axis=1)

    def total(self, vals: np.ndarray) -> np.ndarray:
        out = vals.sum(axis=0) if len(vals) else self.zeros(1)[0]
        return out % self.p if self.p else out

    def cell(self, row: np.ndarray, counters: tuple[int, ...], weight: int):
        if not 0 <= weight <= self.wmax:
            return 0
        if any(not 0 <= c < s for c, s in zip(counters, self.counters)):
            return 0
        return row[tuple(counters) + (weight,)]


class EvalBackend:
    """Cells ``counters`` holding ``GF(2^64)`` elements; the weight is evaluated at ``y``."""

    p = 2

    def __init__(self, counters: tuple[int, ...], y: int | None = None, rng: random.Random | None = None):
        self.counters = tuple(counters)
        self.cell_shape = self.counters
        if y is None:
            y = (rng or random.Random()).randrange(1, 1 << GF_BITS)
        self.y = y
        self._cache: dict[int, np.ndarray] = {}
        self._wide: dict[int, np.ndarray] = {}

    def zeros(self, rows: int) -> np.ndarray:
        return np.zeros((rows,) + self.cell_shape, dtype=np.uint64)

    def unit(self, at: tuple[int, ...] | None = None) -> np.ndarray:
        z = self.zeros(1)
        z[(0,) + (at or (0,) * len(self.counters))] = 1
        return z

    def _images(self, weight: int) -> list[int]:
        c = gf_pow(self.y, weight)
        images = []
        for _ in range(GF_BITS):
            images.append(c)
            c = gf_mul(c, 2)
        return images

    def _tables(self, weight: int, bits: int = 8) -> np.ndarray:
        """Lookup tables of ``x -> y^weight * x`` on each ``bits``-wide slice of ``x``."""
        cache = self._cache if bits == 8 else self._wide
        if weight in cache:
            return cache[weight]
        images = self._images(weight)
        tables = np.zeros((GF_BITS // bits, 1 << bits), dtype=np.uint64)
        for j in range(GF_BITS // bits):
            for t in range(bits):
                lo = 1 << t
                tables[j, lo:2 * lo] = tables[j, :lo] ^ np.uint64(images[bits * j + t])
        if bits != 8:
            # wide tables are large; keep only a few
            while len(cache) >= 8:
                cache.pop(next(iter(cache)))
        cache[weight] = tables
        return tables

    def multiply(self, vals: np.ndarray, weight: int) -> np.ndarray:
        if weight == 0:
            return vals.copy()
        if vals.ndim > 1 and len(vals):
            # only the bounding box of the nonzero cells needs work
            live = vals.any(axis=0)
            if not live.any():
                return np.zeros_like(vals)
            box = []
            for ax in range(live.ndim):
                hit = np.flatnonzero(live.any(axis=tuple(a for a in range(live.ndim) if a != ax)))
                box.append(slice(int(hit[0]), int(hit[-1]) + 1))
            box = (slice(None),) + tuple(box)
            if any(b.stop - b.start < n for b, n in zip(box[1:], vals.shape[1:])):
                out = np.zeros_like(vals)
                out[box] = self._multiply(vals[box], weight)
                return out
        return self._multiply(vals, weight)

    def _multiply(self, vals: np.ndarray, weight: int) -> np.ndarray:
        bits = 16 if vals.size >= _WIDE_TABLES_FROM else 8
        tables = self._tables(weight, bits)
        flat = np.ascontiguousarray(vals).reshape(-1)
        raw = flat.view(np.uint8 if bits == 8 else np.uint16).reshape(-1, len(tables))
        if sys.byteorder == "big":
            raw = raw[:, ::-1]
        out = tables[0][raw[:, 0]]
        for j in range(1, len(tables)):
            out ^= tables[j][raw[:, j]]
        return out.reshape(vals.shape)

    def shift(self, vals: np.ndarray, offsets: tuple[int, ...], weight: int = 0) -> np.ndarray:
        return _shift_axes(self.multiply(vals, weight), tuple(offsets))

    def scatter(self, dst: np.ndarray, dst_rows, src: np.ndarray, src_rows=None, coeff=1, unique: bool = False) -> None:
        if len(dst_rows) == 0 or coeff % 2 == 0:
            return
        block = src if src_rows is None else src[np.asarray(src_rows, dtype=np.int64)]
        _accumulate(np.bitwise_xor, dst, dst_rows, block, unique)

    def nonzero_rows(self, vals: np.ndarray) -> np.ndarray:
        if len(vals) == 0:
            return np.zeros(0, dtype=bool)
        return (vals != 0).reshape(len(vals), -1).any(axis=1)

    def total(self, vals: np.ndarray) -> np.ndarray:
        if len(vals) == 0:
            return self.zeros(1)[0]
        return np.bitwise_xor.reduce(vals, axis=0)

"""Boolean-array kernels over n-dimensional boxes.

A box with shape (h_0, ..., h_{n-1}) is stored as a flat numpy bool array
of length prod(h_i) in C order, one cell per vector strictly below the
shape.  The five operations the engines need are

  or_shift          dst |= (src translated by a nonnegative vector), clipped
  project_sorted    reps[sorted(x)] |= src[x], optionally zeroing the last
                    digit before sorting (cubic boxes only)
  unproject_sorted  dst[x] |= reps[sorted(x)]  (cubic boxes only)
  or_reduce_axis    dst[x with x_i = 0] |= src[x]
  up_close          in-place closure upward: arr[x] |= arr[y] for y <= x

Two interchangeable flavors are provided: numba-compiled loops and pure
numpy.  Pick one with get_kernels(); the ZEROGEN_BACKEND environment
variable ("numba" or "numpy") overrides the default, which is numba
whenever it imports.
"""

import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]

        def wrap(f):
            return f
        return wrap


_CHUNK = 1 << 20


def box_strides(shape):
    """C-order strides, in cells, as an int64 array."""
    n = len(shape)
    s = np.ones(n, dtype=np.int64)
    for j in range(n - 2, -1, -1):
        s[j] = s[j + 1] * shape[j + 1]
    return s


def box_size(shape):
    total = 1
    for h in shape:
        total *= int(h)
    return total


def encode(x, strides):
    return int(np.dot(np.asarray(x, dtype=np.int64), strides))


def decode_many(flat, shape):
    """Digit rows (m, n) for an array of flat indices."""
    return np.stack(np.unravel_index(flat, shape), axis=1)


# ---------------------------------------------------------------------------
# numba flavor


@njit(cache=True)
def _nb_or_shift(dst, src, shape, strides, shift):
    nd = shape.size
    run = shape[nd - 1] - shift[nd - 1]
    if run <= 0:
        return
    nrows = 1
    for j in range(nd - 1):
        d = shape[j] - shift[j]
        if d <= 0:
            return
        nrows *= d
    off = 0
    for j in range(nd):
        off += shift[j] * strides[j]
    for r in range(nrows):
        rem = r
        base = 0
        for j in range(nd - 2, -1, -1):
            dim = shape[j] - shift[j]
            base += (rem % dim) * strides[j]
            rem //= dim
        for t in range(run):
            if src[base + t]:
                dst[base + off + t] = True


@njit(cache=True)
def _nb_project_sorted(dst, src, shape, strides, drop_last):
    nd = shape.size
    dig = np.empty(nd, np.int64)
    for idx in range(src.size):
        if not src[idx]:
            continue
        rem = idx
        for j in range(nd - 1, -1, -1):
            dig[j] = rem % shape[j]
            rem //= shape[j]
        if drop_last:
            dig[nd - 1] = 0
        for a in range(1, nd):
            v = dig[a]
            b = a - 1
            while b >= 0 and dig[b] > v:
                dig[b + 1] = dig[b]
                b -= 1
            dig[b + 1] = v
        enc = 0
        for j in range(nd):
            enc += dig[j] * strides[j]
        dst[enc] = True


@njit(cache=True)
def _nb_unproject_sorted(dst, reps, shape, strides):
    nd = shape.size
    dig = np.empty(nd, np.int64)
    for idx in range(dst.size):
        rem = idx
        for j in range(nd - 1, -1, -1):
            dig[j] = rem % shape[j]
            rem //= shape[j]
        for a in range(1, nd):
            v = dig[a]
            b = a - 1
            while b >= 0 and dig[b] > v:
                dig[b + 1] = dig[b]
                b -= 1
            dig[b + 1] = v
        enc = 0
        for j in range(nd):
            enc += dig[j] * strides[j]
        if reps[enc]:
            dst[idx] = True


@njit(cache=True)
def _nb_or_reduce_axis(dst, src, shape, strides, axis):
    sa = strides[axis]
    ha = shape[axis]
    for idx in range(src.size):
        if src[idx]:
            d = (idx // sa) % ha
            dst[idx - d * sa] = True


@njit(cache=True)
def _nb_up_close(arr, shape, strides):
    nd = shape.size
    for j in range(nd):
        sj = strides[j]
        hj = shape[j]
        for idx in range(arr.size):
            if (idx // sj) % hj > 0 and arr[idx - sj]:
                arr[idx] = True


# ---------------------------------------------------------------------------
# numpy flavor


def _np_or_shift(dst, src, shape, strides, shift):
    dsl = []
    ssl = []
    for dim, s in zip(shape, shift):
        if s >= dim:
            return
        dsl.append(slice(int(s), None))
        ssl.append(slice(None, int(dim - s)))
    dst.reshape(tuple(shape))[tuple(dsl)] |= src.reshape(tuple(shape))[tuple(ssl)]


def _np_project_sorted(dst, src, shape, strides, drop_last):
    shape_t = tuple(int(h) for h in shape)
    cells = np.flatnonzero(src)
    for start in range(0, cells.size, _CHUNK):
        chunk = cells[start:start + _CHUNK]
        dig = np.stack(np.unravel_index(chunk, shape_t), axis=1)
        if drop_last:
            dig[:, -1] = 0
        dig.sort(axis=1)
        dst[np.ravel_multi_index(tuple(dig.T), shape_t)] = True


def _np_unproject_sorted(dst, reps, shape, strides):
    shape_t = tuple(int(h) for h in shape)
    total = dst.size
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        flat = np.arange(start, stop, dtype=np.int64)
        dig = np.stack(np.unravel_index(flat, shape_t), axis=1)
        dig.sort(axis=1)
        dst[start:stop] |= reps[np.ravel_multi_index(tuple(dig.T), shape_t)]


def _np_or_reduce_axis(dst, src, shape, strides, axis):
    shape_t = tuple(int(h) for h in shape)
    red = src.reshape(shape_t).any(axis=axis)
    sl = [slice(None)] * len(shape_t)
    sl[axis] = 0
    dst.reshape(shape_t)[tuple(sl)] |= red


def _np_up_close(arr, shape, strides):
    v = arr.reshape(tuple(int(h) for h in shape))
    for j in range(v.ndim):
        np.logical_or.accumulate(v, axis=j, out=v)


# ---------------------------------------------------------------------------


class Kernels:
    """A namespace binding one flavor of the five kernels.

    All methods take flat bool arrays plus the box shape; shapes and
    strides are passed as int64 arrays so the numba flavor compiles a
    single signature per arity.
    """

    def __init__(self, name, or_shift, project_sorted, unproject_sorted,
                 or_reduce_axis, up_close):
        self.name = name
        self._or_shift = or_shift
        self._project = project_sorted
        self._unproject = unproject_sorted
        self._reduce = or_reduce_axis
        self._up_close = up_close

    @staticmethod
    def _prep(shape):
        sh = np.asarray(shape, dtype=np.int64)
        return sh, box_strides(sh)

    def or_shift(self, dst, src, shape, shift):
        sh, st = self._prep(shape)
        self._or_shift(dst, src, sh, st, np.asarray(shift, dtype=np.int64))

    def project_sorted(self, dst, src, shape, drop_last=False):
        sh, st = self._prep(shape)
        if not all(h == shape[0] for h in shape):
            raise ValueError("sorted projection needs a cubic box")
        self._project(dst, src, sh, st, drop_last)

    def unproject_sorted(self, dst, reps, shape):
        sh, st = self._prep(shape)
        if not all(h == shape[0] for h in shape):
            raise ValueError("sorted projection needs a cubic box")
        self._unproject(dst, reps, sh, st)

    def or_reduce_axis(self, dst, src, shape, axis):
        sh, st = self._prep(shape)
        self._reduce(dst, src, sh, st, axis)

    def up_close(self, arr, shape):
        sh, st = self._prep(shape)
        self._up_close(arr, sh, st)


_NUMPY_KERNELS = Kernels("numpy", _np_or_shift, _np_project_sorted,
                         _np_unproject_sorted, _np_or_reduce_axis, _np_up_close)

_NUMBA_KERNELS = Kernels("numba", _nb_or_shift, _nb_project_sorted,
                         _nb_unproject_sorted, _nb_or_reduce_axis, _nb_up_close)


def available_backends():
    return ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


def get_kernels(name=None):
    """Resolve a kernel flavor; None consults ZEROGEN_BACKEND, then defaults."""
    if name is None:
        name = os.environ.get("ZEROGEN_BACKEND", "").strip().lower() or None
    if name is None:
        name = "numba" if HAVE_NUMBA else "numpy"
    if name == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        return _NUMBA_KERNELS
    if name == "numpy":
        return _NUMPY_KERNELS
    raise ValueError("unknown backend %r (use 'numba' or 'numpy')" % name)

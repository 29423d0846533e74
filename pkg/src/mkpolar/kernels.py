"""Polarization kernels and their LLR update rules.

A kernel of size p is a nonsingular binary p x p matrix T. A kernel block
maps an input bit row-vector u to the output x = u * T over GF(2). During
successive-cancellation decoding the block is consumed one input bit at a
time: with the first i input bits known and LLRs attached to the p outputs,
the LLR of input bit i is obtained by exact marginalization over the
remaining p - 1 - i input bits,

    l_i = ln sum_{u_i = 0} exp(m(x)) - ln sum_{u_i = 1} exp(m(x)),

where m(x) = sum_m (1 - 2 x_m) L_m / 2 is the log-likelihood metric of the
output word x. Replacing log-sum-exp by max gives the min-sum (max-log)
variant. For the size-2 kernel these reduce to the classic f and g updates.

LLR convention: L = ln(P(bit = 0) / P(bit = 1)); a negative LLR argues for
bit 1. All update outputs are saturated to +-LLR_MAX.
"""

import numpy as np

from .errors import (
    IndexOutOfRange,
    LengthMismatch,
    NotSquare,
    SingularKernel,
    UnsupportedKernelSize,
)

# Saturation rail for every LLR produced by an update rule.
LLR_MAX = 40.0

_T2 = np.array([[1, 0], [1, 1]], dtype=np.uint8)
_T3 = np.array([[1, 1, 1], [1, 0, 1], [0, 1, 1]], dtype=np.uint8)


def _gf2_rank(matrix):
    a = matrix.astype(np.uint8).copy()
    n_rows, n_cols = a.shape
    rank = 0
    for c in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if a[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        mask = a[:, c].astype(bool)
        mask[rank] = False
        a[mask] ^= a[rank]
        rank += 1
    return rank


class KernelMatrix:
    """A validated polarization kernel.

    Parameters
    ----------
    rows : array_like
        Square binary matrix with entries in {0, 1}, nonsingular over
        GF(2), size at least 2. Stored row-major; ``rows[j]`` is the
        codeword contributed by input bit j.

    Attributes
    ----------
    p : int
        Kernel size.
    rows : ndarray
        The kernel matrix as read-only uint8.
    columns : ndarray
        Cached transpose, ``columns[i]`` selects output position i.
    """

    def __init__(self, rows):
        rows = np.asarray(rows)
        if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
            raise NotSquare(f"kernel must be square, got shape {rows.shape}")
        p = rows.shape[0]
        if p < 2:
            raise UnsupportedKernelSize("kernel size must be at least 2")
        if not np.isin(rows, (0, 1)).all():
            raise SingularKernel("kernel entries must be 0 or 1")
        rows = rows.astype(np.uint8)
        if _gf2_rank(rows) != p:
            raise SingularKernel(f"kernel of size {p} is singular over GF(2)")
        self.p = p
        self.rows = rows
        self.rows.flags.writeable = False
        self.columns = np.ascontiguousarray(rows.T)
        self.columns.flags.writeable = False
        self._build_tables()

    def _build_tables(self):
        # Enumerate all 2^p kernel inputs, input bit 0 as the most
        # significant bit of the enumeration index. With that ordering the
        # inputs matching a known prefix form one contiguous index block,
        # so marginalization masks become slices.
        p = self.p
        idx = np.arange(1 << p, dtype=np.uint32)
        shifts = np.arange(p - 1, -1, -1, dtype=np.uint32)
        inputs = ((idx[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        outputs = inputs @ self.rows % 2
        # Metric table already carries the 1/2 factor: metric = L @ table.T
        self._metric_t = np.ascontiguousarray(
            (1.0 - 2.0 * outputs.astype(np.float64)).T / 2.0
        )
        self._prefix_weights = (1 << shifts).astype(np.int64)
        self._inputs = inputs

    @property
    def key(self):
        """Hashable identity of the kernel contents."""
        return (self.p, self.rows.tobytes())

    def __repr__(self):
        return f"KernelMatrix(p={self.p})"


def validate_kernel(rows) -> KernelMatrix:
    """Validate a binary matrix and wrap it as a KernelMatrix.

    Raises NotSquare for non-square input and SingularKernel when the
    matrix has no GF(2) inverse.
    """
    return KernelMatrix(rows)


_BUILTIN = {}


def builtin_kernel(p: int) -> KernelMatrix:
    """Return the built-in kernel of size p (2 or 3).

    Raises UnsupportedKernelSize for any other size.
    """
    if p not in (2, 3):
        raise UnsupportedKernelSize(f"no built-in kernel of size {p}")
    if p not in _BUILTIN:
        _BUILTIN[p] = KernelMatrix(_T2 if p == 2 else _T3)
    return _BUILTIN[p]


def ps_map(u, kernel: KernelMatrix):
    """Encode one kernel block: return u * T over GF(2).

    Parameters
    ----------
    u : array_like
        Input bits, length kernel.p.
    kernel : KernelMatrix

    Returns
    -------
    ndarray of uint8, length kernel.p.
    """
    u = np.asarray(u, dtype=np.uint8)
    if u.shape != (kernel.p,):
        raise LengthMismatch(
            f"expected {kernel.p} input bits, got shape {u.shape}"
        )
    return u @ kernel.rows % 2


def _logsumexp_rows(m):
    mx = m.max(axis=1)
    return mx + np.log(np.exp(m - mx[:, None]).sum(axis=1))


def llr_kernel_batch(kernel: KernelMatrix, i: int, llr_rows, ps_rows, mode="exact"):
    """Vectorized kernel LLR update for many blocks at once.

    ``llr_rows`` has shape (n, p): per block, the LLRs attached to the p
    kernel outputs. ``ps_rows`` has shape (n, i): per block, the already
    known input bits 0 .. i-1. Returns the length-n vector of LLRs for
    input bit i, saturated to +-LLR_MAX. Rows are independent; this is
    exactly the scalar update applied per row.
    """
    if mode not in ("exact", "minsum"):
        raise ValueError(f"unknown mode {mode!r}")
    p = kernel.p
    metrics = llr_rows @ kernel._metric_t
    width = 1 << (p - i)
    if i:
        starts = ps_rows.astype(np.int64) @ kernel._prefix_weights[:i]
        cols = starts[:, None] + np.arange(width, dtype=np.int64)
        metrics = np.take_along_axis(metrics, cols, axis=1)
    half = width >> 1
    m0 = metrics[:, :half]
    m1 = metrics[:, half:width]
    if mode == "exact":
        out = _logsumexp_rows(m0) - _logsumexp_rows(m1)
    else:
        out = m0.max(axis=1) - m1.max(axis=1)
    return np.clip(out, -LLR_MAX, LLR_MAX)


def _check_update_args(kernel, i, llrs, ps_bits):
    if not 0 <= i < kernel.p:
        raise IndexOutOfRange(f"bit index {i} outside [0, {kernel.p})")
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.shape != (kernel.p,):
        raise LengthMismatch(
            f"expected {kernel.p} output LLRs, got shape {llrs.shape}"
        )
    ps_bits = np.asarray(ps_bits, dtype=np.uint8).reshape(-1)
    if ps_bits.shape != (i,):
        raise LengthMismatch(
            f"expected {i} known input bits, got {ps_bits.shape[0]}"
        )
    return llrs, ps_bits


def llr_kernel_exact(kernel: KernelMatrix, i: int, llrs, ps_bits=()):
    """LLR of kernel input bit i by exact marginalization.

    Parameters
    ----------
    kernel : KernelMatrix
    i : int
        Input bit index, 0 <= i < p.
    llrs : array_like
        LLRs of the p kernel outputs.
    ps_bits : array_like
        Values of input bits 0 .. i-1 (length i).

    Returns
    -------
    float, saturated to +-LLR_MAX. Remaining input bits i+1 .. p-1 are
    marginalized over all completions.
    """
    llrs, ps_bits = _check_update_args(kernel, i, llrs, ps_bits)
    return float(llr_kernel_batch(kernel, i, llrs[None, :], ps_bits[None, :], "exact")[0])


def llr_kernel_minsum(kernel: KernelMatrix, i: int, llrs, ps_bits=()):
    """Min-sum (max-log) variant of llr_kernel_exact.

    Ties between the two hypotheses return exactly 0.0.
    """
    llrs, ps_bits = _check_update_args(kernel, i, llrs, ps_bits)
    return float(llr_kernel_batch(kernel, i, llrs[None, :], ps_bits[None, :], "minsum")[0])

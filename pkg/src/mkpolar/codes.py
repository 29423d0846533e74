"""Multi-kernel polar code definitions.

A code of length N = p_1 * ... * p_s is built from a kernel sequence
(T_{p_1}, ..., T_{p_s}); its generator is the Kronecker product
G_N = T_{p_1} x ... x T_{p_s}. Bit index i is identified with its
mixed-radix digits (b_1, ..., b_s), b_1 most significant:

    i = b_s + sum_{j<s} b_j * (p_{j+1} * ... * p_s).

Kernel order is significant: <2,3> and <3,2> are different codes.
"""

from functools import cached_property
from math import prod

import numpy as np

from .errors import (
    CodeFileError,
    FrozenViolation,
    IndexOutOfRange,
    InvalidK,
    LengthMismatch,
    TooLarge,
)
from .kernels import KernelMatrix, builtin_kernel

# Size bound for explicitly materialized generator matrices.
NAIVE_GENERATOR_LIMIT = 4096


def _as_kernels(kernels):
    out = []
    for k in kernels:
        out.append(k if isinstance(k, KernelMatrix) else builtin_kernel(int(k)))
    if not out:
        raise ValueError("kernel sequence must be non-empty")
    return tuple(out)


def mixed_radix_digits(i: int, bases) -> tuple:
    """Digits (b_1, ..., b_s) of index i, most significant first."""
    bases = tuple(int(p) for p in bases)
    n = prod(bases)
    if not 0 <= i < n:
        raise IndexOutOfRange(f"index {i} outside [0, {n})")
    digits = []
    for p in reversed(bases):
        i, d = divmod(i, p)
        digits.append(d)
    return tuple(reversed(digits))


def digits_to_index(digits, bases) -> int:
    """Inverse of mixed_radix_digits."""
    bases = tuple(int(p) for p in bases)
    if len(digits) != len(bases):
        raise LengthMismatch(f"expected {len(bases)} digits, got {len(digits)}")
    i = 0
    for d, p in zip(digits, bases):
        if not 0 <= d < p:
            raise IndexOutOfRange(f"digit {d} outside [0, {p})")
        i = i * p + d
    return i


def start_stage(i: int, bases) -> int:
    """First stage whose LLR vector must be refreshed for bit i.

    Equals the position (1-based) of the rightmost nonzero digit of i;
    by convention 1 for i = 0, where every stage is refreshed.
    """
    digits = mixed_radix_digits(i, bases)
    for z in range(len(digits), 0, -1):
        if digits[z - 1] != 0:
            return z
    return 1


def trailing_max_run(i: int, bases) -> int:
    """Number of trailing digits of i that sit at their maximum p_j - 1.

    This is how many partial-sum matrices complete, and therefore
    propagate, after bit i is decided.
    """
    digits = mixed_radix_digits(i, bases)
    bases = tuple(int(p) for p in bases)
    run = 0
    for d, p in zip(reversed(digits), reversed(bases)):
        if d != p - 1:
            break
        run += 1
    return run


class CodeSpec:
    """A multi-kernel polar code: kernel sequence plus frozen set.

    Parameters
    ----------
    kernels : sequence
        Kernel sizes (2 or 3 resolve to the built-in kernels) or
        KernelMatrix instances, outermost first.
    frozen : iterable of int
        Indices of frozen input bits, each in [0, N). The information
        set is the ascending complement.

    Attributes
    ----------
    N : int
        Code length, product of the kernel sizes.
    K : int
        Information length, N - |frozen|.
    frozen : tuple
        Sorted frozen indices.
    info : tuple
        Sorted information indices.
    """

    def __init__(self, kernels, frozen=()):
        self.kernels = _as_kernels(kernels)
        self.bases = tuple(k.p for k in self.kernels)
        self.N = prod(self.bases)
        frozen = [int(f) for f in frozen]
        for f in frozen:
            if not 0 <= f < self.N:
                raise IndexOutOfRange(f"frozen index {f} outside [0, {self.N})")
        if len(set(frozen)) != len(frozen):
            raise ValueError("frozen set contains duplicates")
        self.frozen = tuple(sorted(frozen))
        self.K = self.N - len(self.frozen)
        mask = np.zeros(self.N, dtype=bool)
        mask[list(self.frozen)] = True
        mask.flags.writeable = False
        self.frozen_mask = mask
        self.info = tuple(int(i) for i in np.flatnonzero(~mask))

    @property
    def s(self) -> int:
        return len(self.bases)

    @cached_property
    def digit_table(self):
        """(N, s) array, row i holds the mixed-radix digits of i."""
        table = np.empty((self.N, self.s), dtype=np.int64)
        rem = np.arange(self.N, dtype=np.int64)
        for j in range(self.s - 1, -1, -1):
            rem, table[:, j] = np.divmod(rem, self.bases[j])
        return table

    @cached_property
    def start_stages(self):
        """start_stage(i) for every i, as an int array."""
        nonzero = self.digit_table != 0
        out = np.ones(self.N, dtype=np.int64)
        for j in range(self.s):
            out[nonzero[:, j]] = j + 1
        return out

    @cached_property
    def permutation(self):
        """Slot of each codeword position in the stage-0 LLR vector."""
        return channel_permutation(self.bases)

    def __repr__(self):
        return f"CodeSpec(bases={self.bases}, N={self.N}, K={self.K})"


def channel_permutation(kernels):
    """Digit-reversal ingestion order for channel LLRs.

    Codeword position j with digits (c_1, ..., c_s) maps to slot
    pi(j) = sum_k c_k * (p_1 * ... * p_{k-1}). This is exactly the
    ordering under which every stage's kernel blocks read contiguous
    groups of the previous stage vector.
    """
    bases = tuple(k.p if isinstance(k, KernelMatrix) else int(k) for k in kernels)
    n = prod(bases)
    perm = np.zeros(n, dtype=np.int64)
    rem = np.arange(n, dtype=np.int64)
    in_weight = n
    out_weight = 1
    for p in bases:
        in_weight //= p
        digit, rem = np.divmod(rem, in_weight)
        perm += digit * out_weight
        out_weight *= p
    return perm


def encode(code: CodeSpec, u):
    """Encode the length-N input vector u: return x = u * G_N over GF(2).

    The Kronecker structure is applied one kernel at a time; the full
    generator matrix is never materialized. Frozen positions of u must
    be zero (FrozenViolation otherwise). Output is in natural order.
    """
    u = np.asarray(u)
    if u.shape != (code.N,):
        raise LengthMismatch(f"expected {code.N} input bits, got shape {u.shape}")
    if not np.isin(u, (0, 1)).all():
        raise ValueError("input bits must be 0 or 1")
    u = u.astype(np.uint8)
    if u[code.frozen_mask].any():
        bad = int(np.flatnonzero(u & code.frozen_mask)[0])
        raise FrozenViolation(f"nonzero bit on frozen position {bad}")
    t = u.reshape(code.bases)
    for axis, kern in enumerate(code.kernels):
        t = np.tensordot(t, kern.rows, axes=([axis], [0]))
        t = np.moveaxis(t, -1, axis) % 2
    return np.ascontiguousarray(t.reshape(-1), dtype=np.uint8)


def naive_generator(kernels):
    """Materialize G_N as an explicit Kronecker product (N <= 4096)."""
    kerns = _as_kernels(kernels)
    n = prod(k.p for k in kerns)
    if n > NAIVE_GENERATOR_LIMIT:
        raise TooLarge(f"N = {n} exceeds the {NAIVE_GENERATOR_LIMIT} limit")
    g = np.array([[1]], dtype=np.uint8)
    for k in kerns:
        g = np.kron(g, k.rows) % 2
    return g


def construct_frozen_mc(kernels, k: int, design_snr_db: float, frames: int, seed: int):
    """Pick the frozen set by genie-aided Monte-Carlo at a design SNR.

    The all-zero codeword is sent over AWGN `frames` times; a genie-aided
    SC pass counts, per bit position, how often the decision LLR argues
    for the wrong bit while all previous decisions are forced correct.
    The N - k positions with the highest error counts are frozen, ties
    broken toward the lower index. Frame f uses its own generator seeded
    with seed + f, so the result does not depend on how frames are
    distributed over workers.
    """
    from .decoder import genie_error_counts
    from .simulation import awgn_llrs

    code = CodeSpec(kernels)
    n = code.N
    if not 0 <= k <= n:
        raise InvalidK(f"K = {k} outside [0, {n}]")
    if frames < 1:
        raise ValueError("frames must be at least 1")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    if k == n:
        return ()
    if k == 0:
        return tuple(range(n))
    rate = k / n
    errors = np.zeros(n, dtype=np.int64)
    zero_word = np.zeros(n, dtype=np.uint8)
    for f in range(frames):
        rng = np.random.default_rng(seed + f)
        llrs = awgn_llrs(zero_word, design_snr_db, rate, rng)
        errors += genie_error_counts(code, llrs)
    order = np.argsort(-errors, kind="stable")
    return tuple(sorted(int(i) for i in order[: n - k]))


def format_code_file(code: CodeSpec) -> str:
    """Serialize a code to the four-line text format."""
    lines = [
        "kernels: " + ",".join(str(p) for p in code.bases),
        f"N: {code.N}",
        f"K: {code.K}",
        "frozen: " + ",".join(str(f) for f in code.frozen),
    ]
    return "\n".join(lines) + "\n"


def parse_code_file(text: str) -> CodeSpec:
    """Parse the four-line code format, rejecting inconsistent content.

    Expected layout (frozen ascending, comma-separated, may be empty):

        kernels: 2,2,3
        N: 12
        K: 6
        frozen: 0,1,2,3,4,6
    """
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 4:
        raise CodeFileError(f"expected 4 lines, got {len(lines)}")
    keys = ("kernels", "N", "K", "frozen")
    values = {}
    for line, key in zip(lines, keys):
        head, sep, tail = line.partition(":")
        if not sep or head.strip() != key:
            raise CodeFileError(f"expected line starting with '{key}:', got {line!r}")
        values[key] = tail.strip()
    try:
        sizes = tuple(int(tok) for tok in values["kernels"].split(","))
        n = int(values["N"])
        k = int(values["K"])
        frozen = tuple(
            int(tok) for tok in values["frozen"].split(",") if tok.strip() != ""
        )
    except ValueError as exc:
        raise CodeFileError(f"malformed field: {exc}") from None
    for p in sizes:
        if p not in (2, 3):
            raise CodeFileError(f"unsupported kernel size {p} in code file")
    if prod(sizes) != n:
        raise CodeFileError(f"N = {n} does not match kernel product {prod(sizes)}")
    if sorted(set(frozen)) != list(frozen):
        raise CodeFileError("frozen set must be strictly ascending")
    if any(not 0 <= f < n for f in frozen):
        raise CodeFileError("frozen index outside [0, N)")
    if k != n - len(frozen):
        raise CodeFileError(f"K = {k} does not match N - |frozen| = {n - len(frozen)}")
    return CodeSpec(sizes, frozen)


def save_code(code: CodeSpec, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_code_file(code))


def load_code(path) -> CodeSpec:
    with open(path, "r", encoding="ascii") as fh:
        return parse_code_file(fh.read())

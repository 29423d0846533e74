"""Successive-cancellation decoding on the stage-indexed memory.

Per bit i with digits (b_1, ..., b_s), three phases run:

1. llr_phase refreshes only stages z .. s, where z = start_stage(i) is
   the rightmost nonzero digit position. Stage j recomputes its whole
   vector in place: entry k is the kernel update of input bit b_j given
   the contiguous group k*p_j .. (k+1)*p_j - 1 of the previous stage and
   the known sub-block bits in columns 0 .. b_j - 1 of its partial-sum
   matrix. Stages below z still hold valid values from earlier bits.
2. estimate_bit reads the single stage-s LLR: frozen bits decide 0,
   otherwise a negative LLR decides 1 (tie decides 0).
3. ps_phase stores the decision in the stage-s matrix at column b_s,
   then, for as long as the current digit sits at its maximum (exactly
   trailing_max_run(i) times), pushes each completed matrix through its
   kernel: row k of stage j maps to rows k*p_j .. k*p_j + p_j - 1 of
   stage j-1, landing in column b_{j-1}. The phase is skipped entirely
   for the last bit, which is why the stage-1 matrix never needs its
   final column.
"""

from dataclasses import dataclass

import numpy as np

from .codes import CodeSpec
from .errors import LengthMismatch, NonFiniteInput
from .kernels import llr_kernel_batch
from .memory import DecoderMemory, allocate


@dataclass
class DecodeStats:
    """Counter snapshot taken after a decode.

    llr_updates[j-1] counts vector refreshes of stage j;
    ps_propagations[j-1] counts pushes of the completed stage-j matrix
    into stage j-1. ps_reads / ps_writes tally column accesses of each
    partial-sum matrix (stage 1 keeps a slot for the absent last column).
    """

    llr_updates: np.ndarray
    ps_propagations: np.ndarray
    ps_reads: list
    ps_writes: list


@dataclass
class DecodeResult:
    """Decisions, per-bit decision LLRs and access statistics."""

    u_hat: np.ndarray
    final_llrs: np.ndarray
    stats: DecodeStats


def ingest_channel_llrs(mem: DecoderMemory, code: CodeSpec, channel_llrs):
    """Load channel LLRs into stage 0 in digit-reversed order."""
    mem.llr[0][code.permutation] = channel_llrs


def _update_stage(mem, code, j, b, mode):
    kern = code.kernels[j - 1]
    target = mem.llr[j]
    groups = mem.llr[j - 1].reshape(target.size, kern.p)
    ps_args = mem.ps[j - 1][:, :b]
    target[:] = llr_kernel_batch(kern, b, groups, ps_args, mode)
    mem.llr_updates[j - 1] += 1
    if b:
        mem.ps_reads[j - 1][:b] += 1


def llr_phase(mem: DecoderMemory, code: CodeSpec, i: int, mode: str = "exact"):
    """Refresh stages start_stage(i) .. s for bit i."""
    digits = code.digit_table[i]
    for j in range(int(code.start_stages[i]), code.s + 1):
        _update_stage(mem, code, j, int(digits[j - 1]), mode)


def estimate_bit(mem: DecoderMemory, code: CodeSpec, i: int) -> int:
    """Hard-decide bit i from the stage-s LLR and record it."""
    if code.frozen_mask[i]:
        bit = 0
    else:
        bit = 1 if mem.llr[-1][0] < 0 else 0
    mem.decisions[i] = bit
    return bit


def ps_phase(mem: DecoderMemory, code: CodeSpec, i: int, bit: int):
    """Store the decision for bit i and propagate completed matrices."""
    digits = code.digit_table[i]
    s = code.s
    col = int(digits[s - 1])
    mem.ps[s - 1][0, col] = bit
    mem.ps_writes[s - 1][col] += 1
    j = s
    while j >= 2 and digits[j - 1] == code.bases[j - 1] - 1:
        kern = code.kernels[j - 1]
        block = mem.ps[j - 1] @ kern.rows % 2
        col = int(digits[j - 2])
        mem.ps[j - 2][:, col] = block.reshape(-1)
        mem.ps_writes[j - 2][col] += 1
        mem.ps_propagations[j - 1] += 1
        j -= 1


def decode(code: CodeSpec, channel_llrs, mode: str = "exact") -> DecodeResult:
    """SC-decode one frame of channel LLRs (natural codeword order).

    Parameters
    ----------
    code : CodeSpec
    channel_llrs : array_like
        N finite LLRs, positive favoring bit 0. Saturate before calling.
    mode : str
        "exact" marginalizes with log-sum-exp, "minsum" with max.

    Returns
    -------
    DecodeResult with the N hard decisions, the decision LLR observed
    for every bit, and the update counters.
    """
    llrs = np.asarray(channel_llrs, dtype=np.float64)
    if llrs.shape != (code.N,):
        raise LengthMismatch(f"expected {code.N} LLRs, got shape {llrs.shape}")
    if not np.isfinite(llrs).all():
        raise NonFiniteInput("channel LLRs must be finite")
    mem = allocate(code)
    ingest_channel_llrs(mem, code, llrs)
    final_llrs = np.empty(code.N, dtype=np.float64)
    last = code.N - 1
    for i in range(code.N):
        llr_phase(mem, code, i, mode)
        final_llrs[i] = mem.llr[-1][0]
        bit = estimate_bit(mem, code, i)
        if i != last:
            ps_phase(mem, code, i, bit)
    stats = DecodeStats(
        llr_updates=mem.llr_updates.copy(),
        ps_propagations=mem.ps_propagations.copy(),
        ps_reads=[c.copy() for c in mem.ps_reads],
        ps_writes=[c.copy() for c in mem.ps_writes],
    )
    return DecodeResult(u_hat=mem.decisions.copy(), final_llrs=final_llrs, stats=stats)


def genie_error_counts(code: CodeSpec, channel_llrs):
    """Per-bit error indicators of a genie-aided all-zero SC pass.

    Every decision is forced to the true value 0 after recording whether
    the decision LLR argued for 1. Used by Monte-Carlo construction.
    """
    mem = allocate(code)
    ingest_channel_llrs(mem, code, np.asarray(channel_llrs, dtype=np.float64))
    errors = np.zeros(code.N, dtype=np.int64)
    last = code.N - 1
    for i in range(code.N):
        llr_phase(mem, code, i, "exact")
        if mem.llr[-1][0] < 0:
            errors[i] = 1
        mem.decisions[i] = 0
        if i != last:
            ps_phase(mem, code, i, 0)
    return errors

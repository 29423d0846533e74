"""AWGN Monte-Carlo harness and brute-force reference decoders.

BPSK mapping is symbol = 1 - 2*bit; with Eb/N0 given in dB and code rate
R = K/N the noise variance is sigma^2 = 1 / (2 * R * 10^(Eb/N0 / 10)) and
the channel LLR of an observation y is 2*y / sigma^2, saturated to
+-LLR_MAX. Frame f of SNR point n draws from a generator seeded with
(seed, n, f), so results are reproducible and independent of how frames
are scheduled across workers.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .codes import CodeSpec, encode, naive_generator
from .decoder import decode
from .errors import (
    IndexOutOfRange,
    InvalidRate,
    LengthMismatch,
    NonFiniteInput,
    TooLarge,
)
from .kernels import LLR_MAX

# Size bounds for the exhaustive reference decoders.
ML_ORACLE_MAX_K = 16
SC_ORACLE_MAX_N = 16


def awgn_llrs(codeword_bits, ebn0_db: float, rate: float, rng, noiseless: bool = False):
    """Transmit a codeword over BPSK/AWGN and return channel LLRs.

    With ``noiseless`` the channel is bypassed and each bit maps straight
    to +-LLR_MAX with the sign of its BPSK symbol.
    """
    bits = np.asarray(codeword_bits, dtype=np.uint8)
    if not 0.0 < rate <= 1.0:
        raise InvalidRate(f"rate {rate} outside (0, 1]")
    symbols = 1.0 - 2.0 * bits
    if noiseless:
        return symbols * LLR_MAX
    sigma2 = 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))
    y = symbols + rng.normal(0.0, np.sqrt(sigma2), size=bits.size)
    return np.clip(2.0 * y / sigma2, -LLR_MAX, LLR_MAX)


@dataclass
class SimConfig:
    """Monte-Carlo run description.

    Each SNR point stops at target_frame_errors frame errors or at
    max_frames, whichever comes first.
    """

    code: CodeSpec
    snr_points_db: tuple
    max_frames: int = 10000
    target_frame_errors: int = 100
    seed: int = 0
    mode: str = "exact"
    noiseless: bool = False

    def __post_init__(self):
        self.snr_points_db = tuple(float(x) for x in self.snr_points_db)
        if not self.snr_points_db:
            raise ValueError("at least one SNR point is required")
        if self.max_frames < 1:
            raise ValueError("max_frames must be at least 1")
        if self.target_frame_errors < 1:
            raise ValueError("target_frame_errors must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.mode not in ("exact", "minsum"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class SnrPointResult:
    ebn0_db: float
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float
    ber: float
    elapsed_s: float


CSV_HEADER = "ebn0_db,frames,frame_errors,bit_errors,fer,ber"


@dataclass
class SimResult:
    points: list = field(default_factory=list)

    def to_csv(self) -> str:
        """Delimited summary, one row per SNR point (elapsed excluded)."""
        lines = [CSV_HEADER]
        for p in self.points:
            lines.append(
                f"{p.ebn0_db},{p.frames},{p.frame_errors},{p.bit_errors},{p.fer},{p.ber}"
            )
        return "\n".join(lines) + "\n"


def simulate(config: SimConfig) -> SimResult:
    """Run the Monte-Carlo sweep described by `config`."""
    code = config.code
    info = np.asarray(code.info, dtype=np.int64)
    k = code.K
    rate = k / code.N if k else 1.0
    result = SimResult()
    for point_index, ebn0_db in enumerate(config.snr_points_db):
        start = time.perf_counter()
        frames = frame_errors = bit_errors = 0
        while frames < config.max_frames and frame_errors < config.target_frame_errors:
            rng = np.random.default_rng([config.seed, point_index, frames])
            u = np.zeros(code.N, dtype=np.uint8)
            if k:
                u[info] = rng.integers(0, 2, size=k, dtype=np.uint8)
            x = encode(code, u)
            llrs = awgn_llrs(x, ebn0_db, rate, rng, noiseless=config.noiseless)
            res = decode(code, llrs, config.mode)
            frames += 1
            wrong = int(np.count_nonzero(res.u_hat[info] != u[info])) if k else 0
            if wrong:
                frame_errors += 1
                bit_errors += wrong
        result.points.append(
            SnrPointResult(
                ebn0_db=ebn0_db,
                frames=frames,
                frame_errors=frame_errors,
                bit_errors=bit_errors,
                fer=frame_errors / frames,
                ber=bit_errors / (frames * k) if k else 0.0,
                elapsed_s=time.perf_counter() - start,
            )
        )
    return result


def _checked_llrs(code, channel_llrs):
    llrs = np.asarray(channel_llrs, dtype=np.float64)
    if llrs.shape != (code.N,):
        raise LengthMismatch(f"expected {code.N} LLRs, got shape {llrs.shape}")
    if not np.isfinite(llrs).all():
        raise NonFiniteInput("channel LLRs must be finite")
    return llrs


def ml_oracle_decode(code: CodeSpec, channel_llrs):
    """Exact maximum-likelihood decoding by enumerating all 2^K messages.

    Returns the full input vector u maximizing the codeword correlation
    sum_j (1 - 2 x_j) L_j; ties go to the lexicographically smallest
    message. Guarded to K <= 16.
    """
    if code.K > ML_ORACLE_MAX_K:
        raise TooLarge(f"K = {code.K} exceeds the {ML_ORACLE_MAX_K} limit")
    llrs = _checked_llrs(code, channel_llrs)
    k = code.K
    messages = np.arange(1 << k, dtype=np.int64)
    shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
    bits = ((messages[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
    u_all = np.zeros((1 << k, code.N), dtype=np.uint8)
    if k:
        u_all[:, np.asarray(code.info, dtype=np.int64)] = bits
    x_all = u_all @ naive_generator(code.kernels) % 2
    scores = (1.0 - 2.0 * x_all.astype(np.float64)) @ llrs
    # argmax takes the first maximum; message enumeration is MSB-first,
    # so that is the lexicographically smallest tied message.
    return u_all[int(np.argmax(scores))].copy()


_METRIC_TABLES = {}


def _metric_table(code: CodeSpec):
    key = tuple(k.key for k in code.kernels)
    table = _METRIC_TABLES.get(key)
    if table is None:
        n = code.N
        idx = np.arange(1 << n, dtype=np.int64)
        shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
        u_all = ((idx[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        x_all = u_all @ naive_generator(code.kernels) % 2
        table = (1 - 2 * x_all.astype(np.int8)).astype(np.int8)
        _METRIC_TABLES[key] = table
    return table


def exact_sc_oracle_llr(code: CodeSpec, channel_llrs, i: int, prefix) -> float:
    """Whole-code SC decision LLR by exhaustive marginalization (N <= 16).

    Computes ln sum exp over all length-N inputs extending ``prefix`` with
    u_i = 0 versus u_i = 1, with the metric sum_j (1 - 2 x_j) L_j / 2.
    Later bits are marginalized over all completions regardless of the
    frozen set, matching the decoder's per-kernel semantics.
    """
    n = code.N
    if n > SC_ORACLE_MAX_N:
        raise TooLarge(f"N = {n} exceeds the {SC_ORACLE_MAX_N} limit")
    llrs = _checked_llrs(code, channel_llrs)
    if not 0 <= i < n:
        raise IndexOutOfRange(f"bit index {i} outside [0, {n})")
    prefix = np.asarray(prefix, dtype=np.uint8).reshape(-1)
    if prefix.shape != (i,):
        raise LengthMismatch(f"expected prefix of length {i}, got {prefix.shape[0]}")
    metrics = _metric_table(code) @ llrs / 2.0
    value = 0
    for bit in prefix:
        value = (value << 1) | int(bit)
    block = 1 << (n - i)
    seg = metrics[value * block : (value + 1) * block]
    half = block >> 1

    def lse(v):
        mx = v.max()
        return mx + np.log(np.exp(v - mx).sum())

    return float(lse(seg[:half]) - lse(seg[half:]))

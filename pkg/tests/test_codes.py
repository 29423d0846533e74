"""Mixed-radix indexing, encoding, permutation, construction, code files."""

import numpy as np
import pytest

from mkpolar import (
    CodeFileError,
    CodeSpec,
    FrozenViolation,
    IndexOutOfRange,
    InvalidK,
    LengthMismatch,
    TooLarge,
    channel_permutation,
    construct_frozen_mc,
    digits_to_index,
    encode,
    format_code_file,
    load_code,
    mixed_radix_digits,
    naive_generator,
    parse_code_file,
    save_code,
    start_stage,
    trailing_max_run,
)
from reference_sc import all_kernel_sequences

BASES_223 = (2, 2, 3)

# Digits of every index of the <2,2,3> code, most significant first.
DIGIT_TABLE_223 = [
    (0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 0), (0, 1, 1), (0, 1, 2),
    (1, 0, 0), (1, 0, 1), (1, 0, 2), (1, 1, 0), (1, 1, 1), (1, 1, 2),
]


def test_mixed_radix_examples():
    assert mixed_radix_digits(7, BASES_223) == (1, 0, 1)
    assert mixed_radix_digits(11, BASES_223) == (1, 1, 2)
    assert mixed_radix_digits(0, BASES_223) == (0, 0, 0)


def test_mixed_radix_full_table():
    for i, digits in enumerate(DIGIT_TABLE_223):
        assert mixed_radix_digits(i, BASES_223) == digits
        assert digits_to_index(digits, BASES_223) == i


def test_mixed_radix_round_trip_random_bases():
    rng = np.random.default_rng(1)
    for _ in range(50):
        bases = tuple(rng.choice([2, 3, 5], size=rng.integers(1, 7)))
        n = int(np.prod(bases))
        for i in (0, 1, n - 1, int(rng.integers(0, n))):
            assert digits_to_index(mixed_radix_digits(i, bases), bases) == i


def test_mixed_radix_validation():
    with pytest.raises(IndexOutOfRange):
        mixed_radix_digits(12, BASES_223)
    with pytest.raises(IndexOutOfRange):
        mixed_radix_digits(-1, BASES_223)
    with pytest.raises(LengthMismatch):
        digits_to_index((0, 0), BASES_223)
    with pytest.raises(IndexOutOfRange):
        digits_to_index((0, 0, 3), BASES_223)


def test_start_stage_examples():
    assert start_stage(6, BASES_223) == 1
    assert start_stage(0, BASES_223) == 1
    assert start_stage(5, BASES_223) == 3
    assert start_stage(3, BASES_223) == 2


def test_trailing_max_run_examples():
    assert trailing_max_run(5, BASES_223) == 2
    assert trailing_max_run(0, BASES_223) == 0
    assert trailing_max_run(11, BASES_223) == 3


def test_consecutive_indices_share_digit_prefix():
    # Digits left of the start stage never change between i-1 and i,
    # which is what makes skipping those stage updates sound.
    for bases in [(2, 2, 3), (3, 2, 2), (2, 3, 2, 3), (2,) * 6, (3, 3, 3)]:
        n = int(np.prod(bases))
        for i in range(1, n):
            z = start_stage(i, bases)
            prev = mixed_radix_digits(i - 1, bases)
            cur = mixed_radix_digits(i, bases)
            assert prev[: z - 1] == cur[: z - 1]


def test_code_spec_basics():
    code = CodeSpec(BASES_223, (0, 1, 2, 3, 4, 6))
    assert code.N == 12 and code.K == 6 and code.s == 3
    assert code.frozen == (0, 1, 2, 3, 4, 6)
    assert code.info == (5, 7, 8, 9, 10, 11)
    assert code.frozen_mask[0] and not code.frozen_mask[5]


def test_code_spec_validation():
    with pytest.raises(IndexOutOfRange):
        CodeSpec(BASES_223, (12,))
    with pytest.raises(ValueError):
        CodeSpec(BASES_223, (3, 3))
    with pytest.raises(ValueError):
        CodeSpec(())


def test_encode_unit_vector_rows():
    code = CodeSpec(BASES_223)
    e0 = np.zeros(12, dtype=np.uint8)
    e0[0] = 1
    assert np.array_equal(encode(code, e0), [1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0])
    e10 = np.zeros(12, dtype=np.uint8)
    e10[10] = 1
    assert np.array_equal(encode(code, e10), [1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1])


def test_encode_zero_message():
    code = CodeSpec(BASES_223, (0, 1, 2, 3, 4, 6))
    assert not encode(code, np.zeros(12, dtype=np.uint8)).any()


def test_encode_matches_naive_generator_everywhere():
    rng = np.random.default_rng(2)
    for bases in all_kernel_sequences(72):
        code = CodeSpec(bases)
        g = naive_generator(bases)
        n = code.N
        u = rng.integers(0, 2, (1000, n), dtype=np.uint8)
        want = u @ g % 2
        for r in range(0, 1000, 97):
            assert np.array_equal(encode(code, u[r]), want[r])
        # identity rows pin every generator entry
        eye = np.eye(n, dtype=np.uint8)
        for r in range(n):
            assert np.array_equal(encode(code, eye[r]), g[r])


def test_encode_validation():
    code = CodeSpec(BASES_223, (0,))
    with pytest.raises(LengthMismatch):
        encode(code, np.zeros(11, dtype=np.uint8))
    with pytest.raises(ValueError):
        encode(code, np.full(12, 2, dtype=np.uint8))
    bad = np.zeros(12, dtype=np.uint8)
    bad[0] = 1
    with pytest.raises(FrozenViolation):
        encode(code, bad)


def test_naive_generator_limit():
    g = naive_generator((2,) * 12)
    assert g.shape == (4096, 4096)
    with pytest.raises(TooLarge):
        naive_generator((2,) * 13)


def test_channel_permutation_examples():
    assert np.array_equal(channel_permutation((2, 2)), [0, 2, 1, 3])
    assert channel_permutation(BASES_223)[1] == 4


def test_channel_permutation_definition():
    for bases in [(2, 2, 3), (3, 2), (2, 3, 2), (3, 3, 2, 2)]:
        perm = channel_permutation(bases)
        n = int(np.prod(bases))
        assert sorted(perm) == list(range(n))
        weights = []
        w = 1
        for p in bases:
            weights.append(w)
            w *= p
        for j in range(n):
            digits = mixed_radix_digits(j, bases)
            assert perm[j] == sum(d * wt for d, wt in zip(digits, weights))


def test_construct_is_deterministic():
    a = construct_frozen_mc(BASES_223, 6, 1.0, 100, 9)
    b = construct_frozen_mc(BASES_223, 6, 1.0, 100, 9)
    assert a == b
    assert len(a) == 6
    assert all(0 <= f < 12 for f in a)


def test_construct_edge_rates():
    assert construct_frozen_mc(BASES_223, 12, 1.0, 10, 0) == ()
    assert construct_frozen_mc(BASES_223, 0, 1.0, 10, 0) == tuple(range(12))


def test_construct_tie_break_prefers_low_index():
    # At a very high design SNR no bit ever errs, so every count ties at
    # zero and the lowest indices must be frozen.
    frozen = construct_frozen_mc((2, 3), 3, 40.0, 5, 1)
    assert frozen == (0, 1, 2)


def test_construct_validation():
    with pytest.raises(InvalidK):
        construct_frozen_mc(BASES_223, 13, 1.0, 10, 0)
    with pytest.raises(InvalidK):
        construct_frozen_mc(BASES_223, -1, 1.0, 10, 0)
    with pytest.raises(ValueError):
        construct_frozen_mc(BASES_223, 6, 1.0, 0, 0)


def test_code_file_round_trip(tmp_path):
    code = CodeSpec(BASES_223, (0, 1, 2, 3, 4, 6))
    text = format_code_file(code)
    assert text == "kernels: 2,2,3\nN: 12\nK: 6\nfrozen: 0,1,2,3,4,6\n"
    parsed = parse_code_file(text)
    assert parsed.bases == code.bases and parsed.frozen == code.frozen
    path = tmp_path / "code.txt"
    save_code(code, path)
    loaded = load_code(path)
    assert loaded.frozen == code.frozen and loaded.K == 6


def test_code_file_empty_frozen():
    code = CodeSpec((2, 3))
    parsed = parse_code_file(format_code_file(code))
    assert parsed.frozen == () and parsed.K == 6


@pytest.mark.parametrize(
    "text",
    [
        "kernels: 2,2,3\nN: 13\nK: 6\nfrozen: 0,1,2,3,4,6\n",
        "kernels: 2,2,3\nN: 12\nK: 7\nfrozen: 0,1,2,3,4,6\n",
        "kernels: 2,2,3\nN: 12\nK: 6\nfrozen: 0,1,2,3,6,4\n",
        "kernels: 2,2,3\nN: 12\nK: 6\nfrozen: 0,0,1,2,3,4\n",
        "kernels: 2,2,3\nN: 12\nK: 6\nfrozen: 0,1,2,3,4,12\n",
        "kernels: 2,5\nN: 10\nK: 5\nfrozen: 0,1,2,3,4\n",
        "kernels: 2,2,3\nN: 12\nK: 6\n",
        "N: 12\nkernels: 2,2,3\nK: 6\nfrozen: 0,1,2,3,4,6\n",
        "kernels: 2,2,x\nN: 12\nK: 6\nfrozen: 0,1,2,3,4,6\n",
    ],
)
def test_code_file_rejects_inconsistent(text):
    with pytest.raises(CodeFileError):
        parse_code_file(text)

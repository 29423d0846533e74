"""Stage-indexed memory layout and exact element accounting."""

import numpy as np
import pytest

from mkpolar import (
    CodeSpec,
    DecoderMemory,
    allocate,
    llr_element_count,
    memory_report,
    naive_counts,
    ps_element_count,
    validate_kernel,
)

# (kernel sizes, llr elements, ps elements) for the reference configurations.
COUNT_TABLE = [
    ((2, 2, 3), 22, 15),
    ((2, 2, 2, 3, 3), 139, 102),
    ((2, 2, 2, 2, 3, 3), 283, 210),
    ((2, 2, 2, 2, 2, 2, 2, 3), 766, 573),
    ((2, 2, 3, 3, 3, 3, 3), 1822, 1335),
]


def test_allocate_shapes_223():
    mem = allocate(CodeSpec((2, 2, 3)))
    assert [v.size for v in mem.llr] == [12, 6, 3, 1]
    assert [m.shape for m in mem.ps] == [(6, 1), (3, 2), (1, 3)]
    assert mem.decisions.shape == (12,)
    assert mem.llr[0].dtype == np.float64
    assert mem.ps[0].dtype == np.uint8


def test_allocate_shapes_32():
    mem = allocate(CodeSpec((3, 2)))
    assert [v.size for v in mem.llr] == [6, 2, 1]
    assert [m.shape for m in mem.ps] == [(2, 2), (1, 2)]


def test_allocate_shapes_single_kernel():
    mem = allocate(CodeSpec((2,)))
    assert [v.size for v in mem.llr] == [2, 1]
    assert [m.shape for m in mem.ps] == [(1, 1)]


def test_stage_one_matrix_is_one_column_short():
    for bases in [(2, 2), (3, 2), (3, 3, 3), (2, 3, 2)]:
        mem = allocate(CodeSpec(bases))
        assert mem.ps[0].shape[1] == bases[0] - 1
        for j in range(1, len(bases)):
            assert mem.ps[j].shape[1] == bases[j]


@pytest.mark.parametrize("sizes,llr,ps", COUNT_TABLE)
def test_reference_counts(sizes, llr, ps):
    assert llr_element_count(sizes) == llr
    assert ps_element_count(sizes) == ps


def test_naive_counts():
    assert naive_counts((2, 2, 3)) == (48, 36)
    assert naive_counts((2, 2, 3, 3, 3, 3, 3)) == (7776, 6804)


def test_counts_match_allocation_random_sequences():
    # The closed-form counters, the per-stage sums, and the actually
    # allocated array sizes must agree for arbitrary kernel sequences.
    rng = np.random.default_rng(3)
    k5 = validate_kernel(np.eye(5, dtype=np.uint8))
    for _ in range(60):
        sizes = tuple(int(p) for p in rng.choice([2, 3, 5], size=rng.integers(1, 8)))
        kernels = [k5 if p == 5 else p for p in sizes]
        code = CodeSpec(kernels)
        mem = allocate(code)
        n = code.N
        rest = [int(np.prod(sizes[j + 1 :])) for j in range(len(sizes))]
        llr_sum = n + sum(rest)
        ps_sum = rest[0] * (sizes[0] - 1) + sum(
            r * p for r, p in zip(rest[1:], sizes[1:])
        )
        assert llr_element_count(kernels) == llr_sum == mem.llr_element_total()
        assert ps_element_count(kernels) == ps_sum == mem.ps_element_total()
        # shrinking LLR chain stays within [N + 1, 2N)
        assert n + 1 <= llr_sum < 2 * n


def test_memory_report_fields():
    r = memory_report((2, 2, 3), q_bits=6)
    assert r.N == 12 and r.s == 3
    assert r.llr_elements == 22 and r.ps_elements == 15
    assert r.llr_elements_naive == 48 and r.ps_elements_naive == 36
    assert r.total_bits == 6 * 22 + 15 + 12 == 159


def test_memory_report_q_scaling():
    r4 = memory_report((2, 2, 3), q_bits=4)
    assert r4.total_bits == 4 * 22 + 15 + 12
    with pytest.raises(ValueError):
        memory_report((2, 2, 3), q_bits=0)


def test_memory_report_rejects_empty():
    with pytest.raises(ValueError):
        memory_report(())


def test_counters_start_at_zero():
    mem = DecoderMemory(CodeSpec((2, 3, 2)))
    assert not mem.llr_updates.any()
    assert not mem.ps_propagations.any()
    assert all(not c.any() for c in mem.ps_reads)
    assert all(not c.any() for c in mem.ps_writes)
    # stage-1 counters carry a slot for the column that is never stored
    assert mem.ps_reads[0].size == 2
    assert mem.ps[0].shape[1] == 1

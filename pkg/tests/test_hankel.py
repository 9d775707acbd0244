import math

import numpy as np
import pytest

import radial_mult.hankel as hankel_mod
from radial_mult import (
    DiscreteMeasure,
    Finite,
    FromMeasure,
    Geometric,
    Indicator,
    NotInClassC,
    ParityTail,
    TruncatedGeometric,
    UnsupportedTail,
    c_norm,
    cprime_norm,
    double,
    evaluate,
    hankel_h,
    hankel_hhat,
    hankel_k,
    rank_one_decompose,
    trace_norm,
)

SQRT5 = math.sqrt(5.0)


def brute_hankel(phi, m, offset, step):
    # independent oracle: direct nested-loop construction
    return np.array(
        [[phi(i + j + offset) - phi(i + j + offset + step) for j in range(m)] for i in range(m)]
    )


def test_hankel_h_examples():
    assert np.array_equal(hankel_h(Indicator(0), 2), np.array([[1, 0], [0, 0]]))
    assert np.array_equal(hankel_h(Indicator(1), 2), np.array([[-1, 1], [1, 0]]))
    s = 0.3 + 0.4j
    h = hankel_h(Geometric(s), 6)
    expected = np.array([[(1 - s) * s ** (i + j) for j in range(6)] for i in range(6)])
    assert np.abs(h - expected).max() < 1e-15


def test_hankel_k_examples():
    s = 0.5
    assert np.abs(hankel_k(Geometric(s), 8) - s * hankel_h(Geometric(s), 8)).max() < 1e-15
    assert np.array_equal(hankel_k(Indicator(1), 2), np.array([[1, 0], [0, 0]]))
    assert not hankel_k(Indicator(0), 5).any()


def test_hankel_matches_brute_force():
    sym = FromMeasure(0.25, DiscreteMeasure(((0.5, 1.0), (-0.4 + 0.1j, 0.5j))))
    phi = lambda n: evaluate(sym, n)
    assert np.abs(hankel_h(sym, 7) - brute_hankel(phi, 7, 0, 1)).max() < 1e-15
    assert np.abs(hankel_k(sym, 7) - brute_hankel(phi, 7, 1, 1)).max() < 1e-15
    assert np.abs(hankel_hhat(sym, 7) - brute_hankel(phi, 7, 0, 2)).max() < 1e-15


def test_trace_norm_examples():
    assert abs(trace_norm(np.array([[1.0, 0.0], [0.0, 0.0]])) - 1.0) < 1e-14
    assert abs(trace_norm(np.array([[-1.0, 1.0], [1.0, 0.0]])) - SQRT5) < 1e-14
    rng = np.random.default_rng(3)
    u = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    assert abs(
        trace_norm(np.outer(u, v.conj())) - np.linalg.norm(u) * np.linalg.norm(v)
    ) < 1e-12


def test_c_norm_geometric_closed_form():
    report = c_norm(Geometric(0.5))
    assert abs(report.trace_norm_h - 2.0 / 3.0) < 1e-10
    assert abs(report.trace_norm_k - 1.0 / 3.0) < 1e-10
    assert abs(report.total - 1.0) < 1e-10
    assert report.converged
    assert abs(c_norm(Geometric(-0.5)).total - 3.0) < 1e-10


def test_c_norm_indicator_exact():
    assert abs(c_norm(Indicator(0)).total - 1.0) < 1e-12
    assert abs(c_norm(Indicator(1)).total - (1.0 + SQRT5)) < 1e-12


def test_c_norm_report_invariants():
    for sym in (Geometric(0.5), Indicator(2), Finite((1.0, -2.0), 0.5)):
        rep = c_norm(sym)
        assert abs(rep.total - (rep.trace_norm_h + rep.trace_norm_k + rep.tail_abs)) < 1e-13
        for sv in (rep.singular_values_h, rep.singular_values_k):
            assert (sv >= 0).all()
            assert (np.diff(sv) <= 1e-12).all()
        assert abs(rep.singular_values_h.sum() - rep.trace_norm_h) < 1e-12


def test_c_norm_divergence(monkeypatch):
    monkeypatch.setattr(hankel_mod, "M_CAP", 128)
    growing = Finite(tuple(float(2**k) for k in range(600)), 0.0)
    with pytest.raises(NotInClassC):
        c_norm(growing)


def test_c_norm_unsupported_tail():
    with pytest.raises(UnsupportedTail):
        c_norm(ParityTail((), 1.0, 0.0))


def test_cprime_norm_examples():
    rep = cprime_norm(double(Geometric(0.5)))
    assert abs(rep.total - 1.0) < 1e-10
    assert rep.c1 == 0 and rep.c2 == 0

    rep = cprime_norm(Finite((), 1.0))
    assert abs(rep.total - 1.0) < 1e-12
    assert rep.c1 == 1.0 and rep.c2 == 0.0
    assert rep.trace_norm_hhat < 1e-12

    # rank-one closed form: entries (1 - s^2) s^(i+j)
    s = 0.5
    rep = cprime_norm(Geometric(s))
    assert abs(rep.total - abs(1 - s * s) / (1 - s * s)) < 1e-10


def test_cprime_parity_constants():
    rep = cprime_norm(ParityTail((), 1.0, 0.0))
    assert rep.c1 == 0.5 and rep.c2 == 0.5
    assert abs(rep.total - 1.0) < 1e-12


def test_parity_block_identity():
    # even/even block of the doubled two-step matrix is h, odd/odd is k
    for sym in (Geometric(0.5), Indicator(2), TruncatedGeometric(0.7, 4)):
        base = c_norm(sym, 1e-11)
        doubled = cprime_norm(double(sym), 1e-11)
        assert abs(
            doubled.trace_norm_hhat - (base.trace_norm_h + base.trace_norm_k)
        ) < 1e-9


def test_rank_one_decompose_examples():
    dec = rank_one_decompose(hankel_h(Geometric(0.5), 64))
    assert len(dec.terms) == 1
    assert abs(dec.nuclear_sum - 2.0 / 3.0) < 1e-10

    dec = rank_one_decompose(hankel_h(Indicator(1), 8))
    assert len(dec.terms) == 2
    assert abs(dec.nuclear_sum - SQRT5) < 1e-12

    dec = rank_one_decompose(np.zeros((4, 4)))
    assert dec.terms == [] and dec.nuclear_sum == 0.0


def test_rank_one_reconstruction_property():
    rng = np.random.default_rng(7)
    for _ in range(5):
        a = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
        dec = rank_one_decompose(a, tol=1e-14)
        assert np.abs(dec.reconstruct(9) - a).max() <= 1e-12
        assert abs(dec.nuclear_sum - trace_norm(a)) <= 1e-11
        for x, y in dec.terms:
            assert abs(np.linalg.norm(x) - np.linalg.norm(y)) < 1e-12


def test_trace_norm_monotone_in_truncation():
    for sym in (
        Geometric(0.6),
        Indicator(3),
        FromMeasure(0.0, DiscreteMeasure(((0.7, 1.0), (-0.5, 0.5j)))),
    ):
        previous = 0.0
        for m in (8, 16, 32, 64):
            current = trace_norm(hankel_h(sym, m))
            assert current >= previous - 1e-12
            previous = current


def test_eval_bounded_by_norm():
    for sym in (Geometric(0.5), Geometric(-0.5), Indicator(2), Finite((3.0, 1.0), 0.2)):
        rep = c_norm(sym)
        peak = max(abs(evaluate(sym, n)) for n in range(rep.truncation))
        assert peak <= rep.total + 1e-10


def test_difference_sum_bounded_by_norms():
    for sym in (Geometric(0.5), Indicator(2), TruncatedGeometric(0.8, 5)):
        rep = c_norm(sym)
        total = sum(
            abs(evaluate(sym, n) - evaluate(sym, n + 1)) for n in range(rep.truncation)
        )
        assert total <= rep.trace_norm_h + rep.trace_norm_k + 1e-10


def test_singular_values_csv_format():
    rep = c_norm(Indicator(1))
    text = hankel_mod.singular_values_csv(rep.singular_values_h)
    lines = text.strip().split("\n")
    assert lines[0] == "index,sigma"
    assert lines[1].startswith("0,")
    assert len(lines) == 1 + len(rep.singular_values_h)

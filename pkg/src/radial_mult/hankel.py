"""Truncated Hankel matrices of symbol differences and their trace norms.

Membership of a symbol in the summable-difference class is decided
numerically: the trace norms of nested truncations are grown until they
stabilise (or are declared divergent at the cap).  The same truncations
feed the rank-one decompositions used to assemble multiplier maps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NotInClassC, NotInClassCPrime, NumericalFailure
from .symbols import RadialSymbol, evaluate, parity_tails, tail_constant

M_START = 32
M_CAP = 4096
DIVERGENCE_RATIO = 1.5

# Singular values below this relative level are double-precision noise.
RANK_CUTOFF = 1e-14


@dataclass
class HankelReport:
    """Trace norms of the first-difference Hankel truncations and their total."""

    truncation: int
    trace_norm_h: float
    trace_norm_k: float
    tail_abs: float
    total: float
    converged: bool
    singular_values_h: np.ndarray
    singular_values_k: np.ndarray

    def to_obj(self) -> dict:
        return {
            "truncation": self.truncation,
            "trace_norm_h": self.trace_norm_h,
            "trace_norm_k": self.trace_norm_k,
            "tail_abs": self.tail_abs,
            "total": self.total,
            "converged": self.converged,
        }


@dataclass
class CPrimeReport:
    """Trace norm of the two-step-difference Hankel truncation with parity constants."""

    truncation: int
    trace_norm_hhat: float
    c1: complex
    c2: complex
    total: float
    converged: bool
    singular_values_hhat: np.ndarray

    def to_obj(self) -> dict:
        return {
            "truncation": self.truncation,
            "trace_norm_hhat": self.trace_norm_hhat,
            "c1": [self.c1.real, self.c1.imag],
            "c2": [self.c2.real, self.c2.imag],
            "total": self.total,
            "converged": self.converged,
        }


@dataclass
class RankOneDecomposition:
    """Terms (x_i, y_i) with A[p, q] = sum_i x_i[p] * conj(y_i[q])."""

    terms: list[tuple[np.ndarray, np.ndarray]]
    nuclear_sum: float

    def reconstruct(self, dim: int) -> np.ndarray:
        out = np.zeros((dim, dim), dtype=complex)
        for x, y in self.terms:
            out += np.outer(x, y.conj())
        return out


def _difference_row(sym: RadialSymbol, length: int, offset: int, step: int) -> np.ndarray:
    values = np.array([evaluate(sym, offset + m) for m in range(length + step)])
    return values[:length] - values[step : length + step]


def _hankel_from_sequence(seq: np.ndarray, m: int) -> np.ndarray:
    return scipy.linalg.hankel(seq[:m], seq[m - 1 : 2 * m - 1])


def hankel_h(sym: RadialSymbol, m: int) -> np.ndarray:
    """Matrix with entry (i, j) = phi(i+j) - phi(i+j+1), size m x m."""
    if m < 1:
        raise ValueError("truncation must be at least 1")
    return _hankel_from_sequence(_difference_row(sym, 2 * m - 1, 0, 1), m)


def hankel_k(sym: RadialSymbol, m: int) -> np.ndarray:
    """Matrix with entry (i, j) = phi(i+j+1) - phi(i+j+2), size m x m."""
    if m < 1:
        raise ValueError("truncation must be at least 1")
    return _hankel_from_sequence(_difference_row(sym, 2 * m - 1, 1, 1), m)


def hankel_hhat(sym: RadialSymbol, m: int) -> np.ndarray:
    """Matrix with entry (i, j) = phi(i+j) - phi(i+j+2), size m x m."""
    if m < 1:
        raise ValueError("truncation must be at least 1")
    return _hankel_from_sequence(_difference_row(sym, 2 * m - 1, 0, 2), m)


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values of a matrix, descending."""
    try:
        return np.linalg.svd(np.asarray(a, dtype=complex), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc


def trace_norm(a: np.ndarray) -> float:
    """Sum of singular values."""
    return float(singular_values(a).sum())


def _adaptive_trace_norms(builders, tol, error_cls):
    """Grow truncations by doubling until every trace norm stabilises.

    ``builders`` maps names to ``f(m) -> matrix``.  Returns
    (m, {name: singular values}, converged).  Raises ``error_cls`` when the
    norms are still growing by more than DIVERGENCE_RATIO at the cap.
    """
    m = M_START
    prev: dict[str, float] | None = None
    while True:
        spectra = {name: singular_values(build(m)) for name, build in builders.items()}
        norms = {name: float(sv.sum()) for name, sv in spectra.items()}
        if prev is not None and all(
            abs(norms[name] - prev[name]) < tol for name in norms
        ):
            return m, spectra, True
        if m >= M_CAP:
            if prev is not None and any(
                norms[name] > DIVERGENCE_RATIO * max(prev[name], tol)
                for name in norms
            ):
                raise error_cls(
                    f"trace norms still growing at truncation {m}: {norms}"
                )
            return m, spectra, False
        prev = norms
        m *= 2


def c_norm(sym: RadialSymbol, tol: float = 1e-10) -> HankelReport:
    """Symbol norm: trace norms of both difference Hankel matrices plus |tail|.

    The truncation doubles from M_START until successive trace norms of
    both matrices change by less than ``tol``; hitting M_CAP without
    stabilising yields converged=False, and still-growing norms raise
    NotInClassC.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    tail_abs = abs(tail_constant(sym))
    m, spectra, converged = _adaptive_trace_norms(
        {"h": lambda mm: hankel_h(sym, mm), "k": lambda mm: hankel_k(sym, mm)},
        tol,
        NotInClassC,
    )
    tn_h = float(spectra["h"].sum())
    tn_k = float(spectra["k"].sum())
    return HankelReport(
        truncation=m,
        trace_norm_h=tn_h,
        trace_norm_k=tn_k,
        tail_abs=tail_abs,
        total=tn_h + tn_k + tail_abs,
        converged=converged,
        singular_values_h=spectra["h"],
        singular_values_k=spectra["k"],
    )


def cprime_norm(sym: RadialSymbol, tol: float = 1e-10) -> CPrimeReport:
    """Two-step-difference norm: |c1| + |c2| + trace norm of the hhat truncation.

    The parity constants come from the even/odd tail limits:
    c1 = (even + odd)/2 and c2 = (even - odd)/2.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    even, odd = parity_tails(sym)
    c1 = (even + odd) / 2
    c2 = (even - odd) / 2
    m, spectra, converged = _adaptive_trace_norms(
        {"hhat": lambda mm: hankel_hhat(sym, mm)}, tol, NotInClassCPrime
    )
    tn = float(spectra["hhat"].sum())
    return CPrimeReport(
        truncation=m,
        trace_norm_hhat=tn,
        c1=c1,
        c2=c2,
        total=abs(c1) + abs(c2) + tn,
        converged=converged,
        singular_values_hhat=spectra["hhat"],
    )


def rank_one_decompose(a: np.ndarray, tol: float = RANK_CUTOFF) -> RankOneDecomposition:
    """Split a matrix into rank-one terms via SVD.

    Each retained singular triple (sigma, u, v) becomes the pair
    x = sqrt(sigma) u, y = sqrt(sigma) v, so that the two vectors carry
    equal norms and sum_i ||x_i|| ||y_i|| equals the retained trace norm.
    Singular values below ``tol`` times the largest are dropped.
    """
    a = np.asarray(a, dtype=complex)
    try:
        u, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc
    terms: list[tuple[np.ndarray, np.ndarray]] = []
    kept = 0.0
    if s.size and s[0] > 0.0:
        cutoff = tol * s[0]
        for i, sigma in enumerate(s):
            if sigma < cutoff:
                break
            root = np.sqrt(sigma)
            terms.append((root * u[:, i], root * vh[i].conj()))
            kept += float(sigma)
    return RankOneDecomposition(terms=terms, nuclear_sum=kept)


def singular_values_csv(sv: np.ndarray) -> str:
    """CSV dump of a singular-value list (columns: index, sigma)."""
    lines = ["index,sigma"]
    lines += [f"{i},{float(x)!r}" for i, x in enumerate(sv)]
    return "\n".join(lines) + "\n"

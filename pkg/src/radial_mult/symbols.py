"""Radial symbols: complex-valued functions on the non-negative integers.

A symbol is given either by a closed-form family (geometric, indicator,
truncated geometric) or by finite data plus explicit tail behaviour.  The
module evaluates symbols, extracts their tail constants, sums the
alternating difference series ``psi1``/``psi2``, and implements the
index-doubling construction that interleaves a symbol with zeros.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergent, TooLarge, UnsupportedTail

# Margin keeping measure atoms away from the unit circle, where the
# weight |1-s|/(1-|s|) blows up.
ATOM_BOUNDARY_MARGIN = 1e-6

# Series truncation policy for psi1/psi2: stop once the absolute terms in a
# sliding window of this length sum below the tolerance; give up at the cap.
PSI_WINDOW = 64
PSI_TERM_CAP = 10**6

# Stored-value horizons for double(): entries are kept until the symbol is
# within this distance of its tail, and never fewer than covers n <= 64.
DOUBLE_DECAY_EPS = 1e-17
DOUBLE_MIN_HALF_HORIZON = 66
DOUBLE_HORIZON_CAP = 100_000


def _as_complex(z) -> complex:
    return complex(z)


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely many atoms (location s strictly inside the unit disk, weight w)."""

    atoms: tuple[tuple[complex, complex], ...]

    def __post_init__(self):
        atoms = tuple((_as_complex(s), _as_complex(w)) for s, w in self.atoms)
        for s, _ in atoms:
            if abs(s) >= 1.0 - ATOM_BOUNDARY_MARGIN:
                raise ValueError(
                    f"atom location {s} too close to the unit circle "
                    f"(|s| must be < 1 - {ATOM_BOUNDARY_MARGIN})"
                )
        object.__setattr__(self, "atoms", atoms)

    def __len__(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True)
class Geometric:
    """phi(n) = s**n for a fixed complex s with |s| < 1."""

    s: complex

    def __post_init__(self):
        object.__setattr__(self, "s", _as_complex(self.s))
        if abs(self.s) >= 1.0:
            raise ValueError(f"geometric ratio must satisfy |s| < 1, got {self.s}")


@dataclass(frozen=True)
class Indicator:
    """phi(n) = 1 if n == n0 else 0."""

    n0: int

    def __post_init__(self):
        if self.n0 < 0:
            raise ValueError("indicator index must be non-negative")


@dataclass(frozen=True)
class TruncatedGeometric:
    """phi(n) = r**n for n <= n0, and 0 beyond."""

    r: float
    n0: int

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise ValueError("ratio must lie in (0, 1)")
        if self.n0 < 0:
            raise ValueError("cutoff must be non-negative")


@dataclass(frozen=True)
class Finite:
    """Explicit leading values followed by a constant tail.

    The tail is mandatory: it is never estimated from the data.
    """

    values: tuple[complex, ...]
    tail: complex

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_as_complex(v) for v in self.values))
        object.__setattr__(self, "tail", _as_complex(self.tail))


@dataclass(frozen=True)
class FromMeasure:
    """phi(n) = c + sum_j w_j * s_j**n over the atoms of a discrete measure."""

    c: complex
    measure: DiscreteMeasure

    def __post_init__(self):
        object.__setattr__(self, "c", _as_complex(self.c))


@dataclass(frozen=True)
class ParityTail:
    """Explicit leading values, then separate constant tails on even/odd indices.

    This is the natural output of double() applied to a symbol with a
    non-zero tail: the doubled symbol is 2-periodic at infinity and has no
    single tail constant.
    """

    values: tuple[complex, ...]
    tail_even: complex
    tail_odd: complex

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_as_complex(v) for v in self.values))
        object.__setattr__(self, "tail_even", _as_complex(self.tail_even))
        object.__setattr__(self, "tail_odd", _as_complex(self.tail_odd))


RadialSymbol = (
    Geometric | Indicator | TruncatedGeometric | Finite | FromMeasure | ParityTail
)


def evaluate(sym: RadialSymbol, n: int) -> complex:
    """Return phi(n) for the represented family."""
    if n < 0:
        raise ValueError("symbols are defined on non-negative integers")
    if isinstance(sym, Geometric):
        return sym.s**n
    if isinstance(sym, Indicator):
        return 1.0 + 0.0j if n == sym.n0 else 0.0 + 0.0j
    if isinstance(sym, TruncatedGeometric):
        return complex(sym.r**n) if n <= sym.n0 else 0.0 + 0.0j
    if isinstance(sym, Finite):
        return sym.values[n] if n < len(sym.values) else sym.tail
    if isinstance(sym, FromMeasure):
        acc = sym.c
        for s, w in sym.measure.atoms:
            acc += w * s**n
        return acc
    if isinstance(sym, ParityTail):
        if n < len(sym.values):
            return sym.values[n]
        return sym.tail_even if n % 2 == 0 else sym.tail_odd
    raise TypeError(f"not a radial symbol: {sym!r}")


def parity_tails(sym: RadialSymbol) -> tuple[complex, complex]:
    """Limits of phi along even and odd indices."""
    if isinstance(sym, (Geometric, Indicator, TruncatedGeometric)):
        return 0.0 + 0.0j, 0.0 + 0.0j
    if isinstance(sym, Finite):
        return sym.tail, sym.tail
    if isinstance(sym, FromMeasure):
        return sym.c, sym.c
    if isinstance(sym, ParityTail):
        return sym.tail_even, sym.tail_odd
    raise TypeError(f"not a radial symbol: {sym!r}")


def tail_constant(sym: RadialSymbol) -> complex:
    """The limit of phi(n); raises UnsupportedTail if even/odd limits differ."""
    even, odd = parity_tails(sym)
    if even != odd:
        raise UnsupportedTail(
            "symbol is 2-periodic at infinity; use parity_tails() for its "
            f"even/odd limits ({even}, {odd})"
        )
    return even


def psi1(sym: RadialSymbol, n: int, tol: float = 1e-10) -> complex:
    """Sum of the alternating difference series starting at index n.

    psi1(n) = sum_{i>=0} (phi(n+2i) - phi(n+2i+1)), summed until the
    absolute terms over PSI_WINDOW consecutive indices drop below ``tol``.
    The geometric family uses its closed form s**n / (1 + s).
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if n < 0:
        raise ValueError("index must be non-negative")
    if isinstance(sym, Geometric):
        return sym.s**n / (1.0 + sym.s)
    total = 0.0 + 0.0j
    window: deque[float] = deque()
    window_sum = 0.0
    for i in range(PSI_TERM_CAP):
        term = evaluate(sym, n + 2 * i) - evaluate(sym, n + 2 * i + 1)
        total += term
        mag = abs(term)
        window.append(mag)
        window_sum += mag
        if len(window) > PSI_WINDOW:
            window_sum -= window.popleft()
        if len(window) == PSI_WINDOW and window_sum < tol:
            return total
    raise NonConvergent(
        f"difference series did not settle below {tol} within {PSI_TERM_CAP} terms"
    )


def psi2(sym: RadialSymbol, n: int, tol: float = 1e-10) -> complex:
    """psi2(n) = psi1(n+1)."""
    return psi1(sym, n + 1, tol)


def _decay_half_horizon(sym: RadialSymbol) -> int:
    """Smallest index beyond which |phi(n) - even tail| <= DOUBLE_DECAY_EPS."""
    if isinstance(sym, Geometric):
        radius = abs(sym.s)
        scale = 1.0
    elif isinstance(sym, FromMeasure):
        if not sym.measure.atoms:
            return 1
        radius = max(abs(s) for s, _ in sym.measure.atoms)
        scale = max(sum(abs(w) for _, w in sym.measure.atoms), 1.0)
    else:
        raise TypeError(f"no decay estimate for {type(sym).__name__}")
    if radius == 0.0:
        return 1
    horizon = int(np.ceil(np.log(DOUBLE_DECAY_EPS / scale) / np.log(radius))) + 1
    return max(horizon, 1)


def _interleave(values) -> tuple[complex, ...]:
    out = []
    for v in values:
        out.append(_as_complex(v))
        out.append(0.0 + 0.0j)
    return tuple(out)


def double(sym: RadialSymbol, horizon: int | None = None) -> RadialSymbol:
    """The symbol with phi~(2n) = phi(n) and phi~(2n+1) = 0.

    Families with finite support double exactly.  Decaying families are
    stored as explicit values out to ``horizon`` original indices (default:
    until the symbol is within DOUBLE_DECAY_EPS of its tail, at least 66).
    A non-zero tail c makes the doubled symbol 2-periodic at infinity, so
    the result is a ParityTail carrying the even/odd limits (c, 0); the
    associated two-step-difference constants are then c1 = c2 = c/2.
    """
    if isinstance(sym, Indicator):
        return Indicator(2 * sym.n0)
    if isinstance(sym, TruncatedGeometric):
        vals = _interleave(evaluate(sym, k) for k in range(sym.n0 + 1))
        return Finite(vals, 0.0 + 0.0j)
    if isinstance(sym, Finite):
        vals = _interleave(sym.values)
        if sym.tail == 0:
            return Finite(vals, 0.0 + 0.0j)
        return ParityTail(vals, sym.tail, 0.0 + 0.0j)
    if isinstance(sym, ParityTail):
        if sym.tail_even != sym.tail_odd:
            raise UnsupportedTail(
                "cannot double a symbol whose even/odd tails differ "
                "(the result would be 4-periodic at infinity)"
            )
        vals = _interleave(sym.values)
        if sym.tail_even == 0:
            return Finite(vals, 0.0 + 0.0j)
        return ParityTail(vals, sym.tail_even, 0.0 + 0.0j)
    if isinstance(sym, (Geometric, FromMeasure)):
        half = horizon if horizon is not None else max(
            _decay_half_horizon(sym), DOUBLE_MIN_HALF_HORIZON
        )
        if half > DOUBLE_HORIZON_CAP:
            raise TooLarge(
                f"doubling would require {half} stored values "
                f"(cap {DOUBLE_HORIZON_CAP}); pass an explicit horizon"
            )
        vals = _interleave(evaluate(sym, k) for k in range(half))
        c = tail_constant(sym)
        if c == 0:
            return Finite(vals, 0.0 + 0.0j)
        return ParityTail(vals, c, 0.0 + 0.0j)
    raise TypeError(f"not a radial symbol: {sym!r}")


# ---------------------------------------------------------------------------
# JSON serialization.  Complex numbers are [re, im] pairs; {"re":..,"im":..}
# objects and bare numbers are accepted on input.
# ---------------------------------------------------------------------------


def _cplx_out(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _cplx_in(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, dict) and set(obj) <= {"re", "im"}:
        return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
    raise ValueError(f"cannot parse complex number from {obj!r}")


def measure_to_obj(measure: DiscreteMeasure) -> list:
    return [{"s": _cplx_out(s), "w": _cplx_out(w)} for s, w in measure.atoms]


def measure_from_obj(obj) -> DiscreteMeasure:
    atoms = tuple((_cplx_in(entry["s"]), _cplx_in(entry["w"])) for entry in obj)
    return DiscreteMeasure(atoms)


def symbol_to_obj(sym: RadialSymbol) -> dict:
    if isinstance(sym, Geometric):
        return {"family": "geometric", "s": _cplx_out(sym.s)}
    if isinstance(sym, Indicator):
        return {"family": "indicator", "n0": sym.n0}
    if isinstance(sym, TruncatedGeometric):
        return {"family": "truncated_geometric", "r": float(sym.r), "n0": sym.n0}
    if isinstance(sym, Finite):
        return {
            "family": "finite",
            "values": [_cplx_out(v) for v in sym.values],
            "tail": _cplx_out(sym.tail),
        }
    if isinstance(sym, FromMeasure):
        return {
            "family": "from_measure",
            "c": _cplx_out(sym.c),
            "measure": measure_to_obj(sym.measure),
        }
    if isinstance(sym, ParityTail):
        return {
            "family": "parity_tail",
            "values": [_cplx_out(v) for v in sym.values],
            "tail_even": _cplx_out(sym.tail_even),
            "tail_odd": _cplx_out(sym.tail_odd),
        }
    raise TypeError(f"not a radial symbol: {sym!r}")


def symbol_from_obj(obj: dict) -> RadialSymbol:
    family = str(obj["family"]).replace("-", "_").lower()
    if family == "geometric":
        return Geometric(_cplx_in(obj["s"]))
    if family == "indicator":
        return Indicator(int(obj["n0"]))
    if family == "truncated_geometric":
        return TruncatedGeometric(float(obj["r"]), int(obj["n0"]))
    if family == "finite":
        return Finite(tuple(_cplx_in(v) for v in obj["values"]), _cplx_in(obj["tail"]))
    if family == "from_measure":
        return FromMeasure(_cplx_in(obj.get("c", 0.0)), measure_from_obj(obj["measure"]))
    if family == "parity_tail":
        return ParityTail(
            tuple(_cplx_in(v) for v in obj["values"]),
            _cplx_in(obj["tail_even"]),
            _cplx_in(obj["tail_odd"]),
        )
    raise ValueError(f"unknown symbol family {obj.get('family')!r}")


def symbol_to_json(sym: RadialSymbol) -> str:
    return json.dumps(symbol_to_obj(sym), sort_keys=True)


def symbol_from_json(text: str) -> RadialSymbol:
    return symbol_from_obj(json.loads(text))

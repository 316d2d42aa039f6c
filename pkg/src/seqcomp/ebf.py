"""Extended Boolean functions Z_q^m -> Z_q and their associated sequences.

Only the shape used by the constructions is supported::

    f(x) = alpha * sum_{k=1}^{w-1} x_{pi(k)} x_{pi(k+1)}
           + sum_{l=1}^{q-1} sum_{k=1}^{m} c[l][k] * x_k**l + c0   (mod q)

Variables are 1-based, and ``x_1`` is the least significant base-q digit of
the sequence index: for q=3, m=2 the sequence of ``x_1`` is
``(0,1,2,0,1,2,0,1,2)`` and that of ``x_2`` is ``(0,0,0,1,1,1,2,2,2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .core import ResidueSequence, _check_q
from .errors import PreconditionError


def qary_digits(x: int, m: int, q: int) -> tuple[int, ...]:
    """Little-endian base-q digits ``(x_1, ..., x_m)`` of ``0 <= x < q**m``."""
    if not 0 <= x < q**m:
        raise ValueError(f"{x} is outside [0, {q}**{m})")
    digits = []
    for _ in range(m):
        x, r = divmod(x, q)
        digits.append(r)
    return tuple(digits)


def digit_matrix(m: int, q: int) -> np.ndarray:
    """Row i holds ``qary_digits(i, m, q)``; shape ``(q**m, m)``."""
    idx = np.arange(q**m)
    return np.stack([(idx // q**k) % q for k in range(m)], axis=1)


def _normalize_coeffs(coeffs, q: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Pad the c[l][k] table to exactly q-1 rows of m entries."""
    rows = [tuple(int(c) for c in row) for row in (coeffs or ())]
    if len(rows) > q - 1:
        raise PreconditionError(f"at most q-1={q - 1} coefficient rows allowed, got {len(rows)}")
    for l, row in enumerate(rows, start=1):
        if len(row) != m:
            raise PreconditionError(f"coefficient row c_{l} needs {m} entries, got {len(row)}")
        if any(not 0 <= c < q for c in row):
            raise PreconditionError(f"coefficient row c_{l}={row} has entries outside Z_{q}")
    rows += [(0,) * m] * (q - 1 - len(rows))
    return tuple(rows)


@dataclass(frozen=True)
class EbfSpec:
    """Quadratic-chain EBF.

    ``pi`` is a 1-based permutation of ``{1, ..., w}`` with ``w = len(pi) <= m``;
    ``coeffs[l-1][k-1]`` is the coefficient of ``x_k**l``.
    """

    q: int
    m: int
    alpha: int
    pi: tuple[int, ...]
    coeffs: tuple[tuple[int, ...], ...] = field(default=())
    c0: int = 0

    def __post_init__(self):
        q = _check_q(self.q)
        if self.m < 1:
            raise PreconditionError(f"m must be >= 1, got {self.m}")
        if not 0 < self.alpha < q or math.gcd(self.alpha, q) != 1:
            raise PreconditionError(f"alpha not coprime with q (alpha={self.alpha}, q={q})")
        pi = tuple(int(p) for p in self.pi)
        if len(pi) > self.m:
            raise PreconditionError(f"pi has width {len(pi)} > m={self.m}")
        if sorted(pi) != list(range(1, len(pi) + 1)):
            raise PreconditionError(f"pi={pi} is not a permutation of 1..{len(pi)}")
        if not 0 <= self.c0 < q:
            raise PreconditionError(f"c0={self.c0} outside Z_{q}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "coeffs", _normalize_coeffs(self.coeffs, q, self.m))

    @property
    def width(self) -> int:
        return len(self.pi)

    def with_constant(self, c0: int) -> "EbfSpec":
        return replace(self, c0=c0 % self.q)


def _evaluate_digits(f: EbfSpec, x: np.ndarray) -> np.ndarray:
    """Evaluate on a ``(..., m)`` digit array."""
    q = f.q
    x = np.asarray(x, dtype=np.int64)
    val = np.full(x.shape[:-1], f.c0, dtype=np.int64)
    chain = np.zeros_like(val)
    for k in range(f.width - 1):
        chain += x[..., f.pi[k] - 1] * x[..., f.pi[k + 1] - 1]
    val += f.alpha * (chain % q)
    power = np.ones_like(x)
    for row in f.coeffs:
        power = (power * x) % q
        val += (power * np.array(row, dtype=np.int64)).sum(axis=-1) % q
    return val % q


def evaluate(f: EbfSpec, x) -> int:
    """Value of f at the digit vector ``(x_1, ..., x_m)``."""
    x = tuple(x)
    if len(x) != f.m or any(not 0 <= d < f.q for d in x):
        raise ValueError(f"{x} is not a digit vector for q={f.q}, m={f.m}")
    return int(_evaluate_digits(f, np.array(x)))


def associated_sequence(f: EbfSpec) -> ResidueSequence:
    """``(f(0), f(1), ..., f(q**m - 1))`` with each index read as its digits."""
    vals = _evaluate_digits(f, digit_matrix(f.m, f.q))
    return ResidueSequence(f.q, tuple(vals.tolist()))

"""Residue sequences, sequence sets, and exact root-of-unity sums.

A q-ary symbol ``a`` stands for the complex number ``xi**a`` with
``xi = exp(2j*pi/q)``.  Correlation values are sums of such powers, which we
keep as integer count vectors (:class:`CyclotomicSum`) and test for zero
exactly by reduction modulo the q-th cyclotomic polynomial.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import AlphabetMismatchError, DimensionMismatchError

# Implementation cap on the modulus; count vectors have length q.
MAX_Q = 2**16


def debug_enabled() -> bool:
    """Debug mode turns on redundant self-checks (``SEQCOMP_DEBUG=1``)."""
    return os.environ.get("SEQCOMP_DEBUG", "0") not in ("", "0", "false", "no")


def _check_q(q: int) -> int:
    if not isinstance(q, (int, np.integer)) or isinstance(q, bool):
        raise TypeError(f"modulus must be an integer, got {q!r}")
    q = int(q)
    if q < 2:
        raise ValueError(f"modulus q must be >= 2, got {q}")
    if q > MAX_Q:
        raise ValueError(f"modulus q={q} exceeds MAX_Q={MAX_Q}")
    return q


@dataclass(frozen=True)
class Alphabet:
    """The additive group Z_q."""

    q: int

    def __post_init__(self):
        object.__setattr__(self, "q", _check_q(self.q))

    def reduce(self, x):
        return np.mod(x, self.q)


@dataclass(frozen=True)
class ResidueSequence:
    """A length-L vector over Z_q, stored as canonical residues 0..q-1."""

    q: int
    elems: tuple[int, ...]

    def __post_init__(self):
        q = _check_q(self.q)
        elems = tuple(int(e) for e in self.elems)
        if len(elems) < 1:
            raise ValueError("a residue sequence needs at least one element")
        bad = [e for e in elems if not 0 <= e < q]
        if bad:
            raise ValueError(f"elements {bad[:5]} are outside Z_{q}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "elems", elems)

    @classmethod
    def from_iterable(cls, q: int, values: Iterable[int]) -> "ResidueSequence":
        """Build a sequence, reducing every value modulo q first."""
        return cls(q, tuple(int(v) % q for v in values))

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __getitem__(self, i):
        return self.elems[i]

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.elems, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    def shift(self, d: int) -> "ResidueSequence":
        """Return ``self (+) d``: every entry plus d over Z_q."""
        return ResidueSequence(self.q, tuple((e + d) % self.q for e in self.elems))

    def reversed(self) -> "ResidueSequence":
        return ResidueSequence(self.q, self.elems[::-1])

    def negated(self) -> "ResidueSequence":
        return ResidueSequence(self.q, tuple((-e) % self.q for e in self.elems))


def _as_sequence(q: int, row) -> ResidueSequence:
    if isinstance(row, ResidueSequence):
        if row.q != q:
            raise AlphabetMismatchError(f"row over Z_{row.q} in a set over Z_{q}")
        return row
    return ResidueSequence(q, tuple(row))


@dataclass(frozen=True)
class SequenceSet:
    """An N x L matrix of residues; row n is the sequence a_n."""

    q: int
    rows: tuple[ResidueSequence, ...]

    def __post_init__(self):
        q = _check_q(self.q)
        rows = tuple(_as_sequence(q, r) for r in self.rows)
        if not rows:
            raise ValueError("a sequence set needs at least one row")
        lengths = {len(r) for r in rows}
        if len(lengths) != 1:
            raise DimensionMismatchError(f"rows have differing lengths {sorted(lengths)}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_array(cls, q: int, arr) -> "SequenceSet":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"expected a 2-D array, got shape {arr.shape}")
        return cls(q, tuple(ResidueSequence(q, tuple(r)) for r in np.mod(arr, q).tolist()))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def length(self) -> int:
        return len(self.rows[0])

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array([r.elems for r in self.rows], dtype=np.int64)
        arr.flags.writeable = False
        return arr

    def tolist(self) -> list[list[int]]:
        return [list(r.elems) for r in self.rows]


@dataclass(frozen=True)
class SetFamily:
    """An ordered family of M sequence sets sharing N, L and q."""

    sets: tuple[SequenceSet, ...]

    def __post_init__(self):
        sets = tuple(self.sets)
        if not sets:
            raise ValueError("a set family needs at least one member")
        qs = {s.q for s in sets}
        if len(qs) != 1:
            raise AlphabetMismatchError(f"member sets use moduli {sorted(qs)}")
        shapes = {(s.n, s.length) for s in sets}
        if len(shapes) != 1:
            raise DimensionMismatchError(f"member sets have shapes {sorted(shapes)}")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def from_array(cls, q: int, arr) -> "SetFamily":
        arr = np.asarray(arr)
        if arr.ndim != 3:
            raise DimensionMismatchError(f"expected an M x N x L array, got shape {arr.shape}")
        return cls(tuple(SequenceSet.from_array(q, a) for a in arr))

    @property
    def q(self) -> int:
        return self.sets[0].q

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def n(self) -> int:
        return self.sets[0].n

    @property
    def length(self) -> int:
        return self.sets[0].length

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.length)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.stack([s.array for s in self.sets])
        arr.flags.writeable = False
        return arr

    def tolist(self) -> list[list[list[int]]]:
        return [s.tolist() for s in self.sets]


# ---------------------------------------------------------------------------
# Cyclotomic sums


@dataclass(frozen=True)
class CyclotomicSum:
    """``sum(counts[k] * xi**k)`` for the primitive q-th root of unity xi."""

    q: int
    counts: tuple[int, ...]

    def __post_init__(self):
        q = _check_q(self.q)
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != q:
            raise ValueError(f"expected {q} counts, got {len(counts)}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def zero(cls, q: int) -> "CyclotomicSum":
        return cls(q, (0,) * q)

    @classmethod
    def from_exponents(cls, q: int, exponents: Iterable[int]) -> "CyclotomicSum":
        counts = np.bincount(np.mod(np.fromiter(exponents, dtype=np.int64), q), minlength=q)
        return cls(q, tuple(counts.tolist()))

    def __add__(self, other: "CyclotomicSum") -> "CyclotomicSum":
        return cyc_add(self, other)

    def conjugate(self) -> "CyclotomicSum":
        return cyc_conjugate(self)

    def is_zero(self) -> bool:
        return cyc_is_zero(self)

    def __complex__(self) -> complex:
        re, im = cyc_to_complex(self)
        return complex(re, im)


def cyc_add(x: CyclotomicSum, y: CyclotomicSum) -> CyclotomicSum:
    if x.q != y.q:
        raise AlphabetMismatchError(f"cannot add sums over q={x.q} and q={y.q}")
    return CyclotomicSum(x.q, tuple(a + b for a, b in zip(x.counts, y.counts)))


def cyc_conjugate(x: CyclotomicSum) -> CyclotomicSum:
    q = x.q
    return CyclotomicSum(q, tuple(x.counts[(q - k) % q] for k in range(q)))


def _poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Integer long division by a monic polynomial.

    Coefficients are listed lowest degree first.
    """
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    dd = len(den) - 1
    if len(rem) <= dd:
        return [0], rem + [0] * (dd - len(rem))
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j, d in enumerate(den):
                rem[i - dd + j] -= c * d
    return quot, rem[:dd]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """The n-th cyclotomic polynomial, coefficients lowest degree first.

    Obtained by dividing ``x**n - 1`` by every ``Phi_d`` with ``d | n, d < n``.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            if any(rem):
                raise ArithmeticError(f"Phi_{d} does not divide the running quotient for n={n}")
    return tuple(poly)


def cyc_is_zero(x: CyclotomicSum) -> bool:
    """Exact test of ``sum(counts[k] * xi**k) == 0``.

    Phi_q is the minimal polynomial of xi, so the sum vanishes iff the
    count polynomial is divisible by it.
    """
    _, rem = _poly_divmod(x.counts, cyclotomic_polynomial(x.q))
    return not any(rem)


def cyc_to_complex(x: CyclotomicSum) -> tuple[float, float]:
    """Floating evaluation, used only as an independent oracle."""
    k = np.arange(x.q)
    c = np.array(x.counts, dtype=float)
    ang = 2 * np.pi * k / x.q
    return float(c @ np.cos(ang)), float(c @ np.sin(ang))


@lru_cache(maxsize=None)
def reduction_matrix(q: int) -> np.ndarray:
    """Row k holds the coefficients of ``x**k mod Phi_q``.

    ``counts @ reduction_matrix(q)`` is the canonical remainder of a batch of
    count vectors, which is zero exactly when the sum vanishes.
    """
    phi = cyclotomic_polynomial(q)
    deg = len(phi) - 1
    rows = []
    for k in range(q):
        mono = [0] * k + [1]
        _, rem = _poly_divmod(mono, phi)
        rows.append(rem + [0] * (deg - len(rem)))
    mat = np.array(rows, dtype=np.int64)
    mat.flags.writeable = False
    return mat


@lru_cache(maxsize=None)
def _unit_circle(q: int) -> np.ndarray:
    ang = 2 * np.pi * np.arange(q) / q
    return np.stack([np.cos(ang), np.sin(ang)], axis=1)


def counts_are_zero_exact(counts: np.ndarray, q: int) -> np.ndarray:
    """Vectorised exact zero test over the last axis of ``counts``."""
    counts = np.asarray(counts, dtype=np.int64)
    return ~np.any(counts @ reduction_matrix(q), axis=-1)


def counts_are_zero_float(counts: np.ndarray, q: int, tol: float = 1e-9) -> np.ndarray:
    """Vectorised floating zero test: ``|value| < tol``."""
    xy = np.asarray(counts, dtype=float) @ _unit_circle(q)
    return np.hypot(xy[..., 0], xy[..., 1]) < tol


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)

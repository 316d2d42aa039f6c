"""Aperiodic correlation of q-ary sequences and the set/family classifiers.

Every correlation value is a :class:`~seqcomp.core.CyclotomicSum`, i.e. an
integer histogram of the exponents ``a_i - b_{i+tau} mod q``.  Batched paths
produce the same histograms as ``(..., q)`` integer arrays.

Zero tests go through :func:`zero_mask`, which dispatches on an *engine*:

``exact``
    reduction modulo the cyclotomic polynomial (the default);
``float``
    ``|value| < 1e-9`` after evaluating on the unit circle;
``both``
    run both and raise :class:`EngineDisagreementError` on any mismatch.

The default comes from the ``SEQCOMP_ENGINE`` environment variable.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field

import numpy as np

from .core import (
    CyclotomicSum,
    ResidueSequence,
    SequenceSet,
    SetFamily,
    counts_are_zero_exact,
    counts_are_zero_float,
    cyc_conjugate,
    debug_enabled,
)
from .errors import AlphabetMismatchError, DimensionMismatchError, EngineDisagreementError

ENGINES = ("exact", "float", "both")
FLOAT_TOL = 1e-9


def default_engine() -> str:
    engine = os.environ.get("SEQCOMP_ENGINE", "exact")
    if engine not in ENGINES:
        raise ValueError(f"SEQCOMP_ENGINE must be one of {ENGINES}, got {engine!r}")
    return engine


@dataclass
class EngineAudit:
    """Tally of zero tests run under the ``both`` engine."""

    compared: int = 0
    disagreements: int = 0
    examples: list = field(default_factory=list)


_audit: ContextVar[EngineAudit | None] = ContextVar("seqcomp_engine_audit", default=None)


@contextmanager
def engine_audit():
    """Collect agreement statistics instead of raising on disagreement."""
    audit = EngineAudit()
    token = _audit.set(audit)
    try:
        yield audit
    finally:
        _audit.reset(token)


def zero_mask(counts, q: int, engine: str | None = None) -> np.ndarray:
    """Elementwise "this correlation value is zero" over the last axis."""
    engine = engine or default_engine()
    if engine == "exact":
        return counts_are_zero_exact(counts, q)
    if engine == "float":
        return counts_are_zero_float(counts, q, FLOAT_TOL)
    if engine != "both":
        raise ValueError(f"unknown engine {engine!r}")
    exact = counts_are_zero_exact(counts, q)
    approx = counts_are_zero_float(counts, q, FLOAT_TOL)
    differ = exact != approx
    n_differ = int(np.count_nonzero(differ))
    audit = _audit.get()
    if audit is not None:
        audit.compared += int(exact.size)
        audit.disagreements += n_differ
        if n_differ and len(audit.examples) < 10:
            bad = np.asarray(counts)[differ]
            audit.examples.extend(bad[: 10 - len(audit.examples)].tolist())
    elif n_differ:
        raise EngineDisagreementError(
            f"{n_differ} correlation values classified differently by the exact and float engines"
        )
    return exact


# ---------------------------------------------------------------------------
# Scalar correlation


def _check_pair(a: ResidueSequence, b: ResidueSequence):
    if a.q != b.q:
        raise AlphabetMismatchError(f"sequences over Z_{a.q} and Z_{b.q}")
    if len(a) != len(b):
        raise DimensionMismatchError(f"sequences of length {len(a)} and {len(b)}")


def _shift_counts(x: np.ndarray, y: np.ndarray, tau: int, q: int) -> np.ndarray:
    """Histogram of ``x_i - y_{i+tau}`` over valid i, summed over leading rows."""
    L = x.shape[-1]
    if tau >= L or tau <= -L:
        return np.zeros(q, dtype=np.int64)
    if tau >= 0:
        d = x[..., : L - tau] - y[..., tau:]
    else:
        d = x[..., -tau:] - y[..., : L + tau]
    return np.bincount(np.mod(d, q).ravel(), minlength=q).astype(np.int64)


def accf(a: ResidueSequence, b: ResidueSequence, tau: int) -> CyclotomicSum:
    """Aperiodic cross-correlation ``R_{a,b}(tau)`` of two equal-length sequences.

    For ``tau >= 0`` this is ``sum_i xi**(a_i - b_{i+tau})``; negative shifts
    slide the other way, and shifts with ``|tau| >= L`` give zero.
    """
    _check_pair(a, b)
    return CyclotomicSum(a.q, tuple(_shift_counts(a.array, b.array, tau, a.q).tolist()))


def _check_sets(A: SequenceSet, B: SequenceSet):
    if A.q != B.q:
        raise AlphabetMismatchError(f"sets over Z_{A.q} and Z_{B.q}")
    if (A.n, A.length) != (B.n, B.length):
        raise DimensionMismatchError(
            f"sets of shape {A.n}x{A.length} and {B.n}x{B.length}"
        )


def set_accf(A: SequenceSet, B: SequenceSet, tau: int) -> CyclotomicSum:
    """Row-wise sum ``sum_n R_{a_n, b_n}(tau)``."""
    _check_sets(A, B)
    return CyclotomicSum(A.q, tuple(_shift_counts(A.array, B.array, tau, A.q).tolist()))


@dataclass(frozen=True)
class CorrelationProfile:
    """All shifts ``-(L-1) <= tau <= L-1`` of one correlation function."""

    q: int
    values: dict

    @property
    def max_shift(self) -> int:
        return max(self.values)

    def __getitem__(self, tau: int) -> CyclotomicSum:
        return self.values.get(tau, CyclotomicSum.zero(self.q))

    def swapped(self) -> "CorrelationProfile":
        """Profile of the swapped pair, obtained by conjugate symmetry."""
        return CorrelationProfile(self.q, {-t: cyc_conjugate(v) for t, v in self.values.items()})

    def nonzero_shifts(self, engine: str | None = None) -> list[int]:
        taus = sorted(self.values)
        counts = np.array([self.values[t].counts for t in taus])
        mask = zero_mask(counts, self.q, engine)
        return [t for t, z in zip(taus, mask) if not z]


def _profile_counts_direct(x: np.ndarray, y: np.ndarray, q: int) -> np.ndarray:
    L = x.shape[-1]
    return np.stack([_shift_counts(x, y, t, q) for t in range(-(L - 1), L)])


def correlation_profile(a: ResidueSequence, b: ResidueSequence) -> CorrelationProfile:
    _check_pair(a, b)
    counts = _profile_counts_direct(a.array, b.array, a.q)
    L = len(a)
    return CorrelationProfile(
        a.q, {t: CyclotomicSum(a.q, tuple(c)) for t, c in zip(range(-(L - 1), L), counts.tolist())}
    )


def set_correlation_profile(A: SequenceSet, B: SequenceSet) -> CorrelationProfile:
    _check_sets(A, B)
    counts = profile_counts(A.array, B.array, A.q)
    L = A.length
    return CorrelationProfile(
        A.q, {t: CyclotomicSum(A.q, tuple(c)) for t, c in zip(range(-(L - 1), L), counts.tolist())}
    )


# ---------------------------------------------------------------------------
# Batched counting


def _one_hot(x: np.ndarray, q: int) -> np.ndarray:
    return (x[..., None] == np.arange(q)).astype(np.float64)


def profile_counts(x: np.ndarray, y: np.ndarray, q: int) -> np.ndarray:
    """Set correlation histograms for every shift at once.

    ``x`` and ``y`` have shape ``(..., N, L)``; the result has shape
    ``(..., 2L-1, q)`` with shift ``tau`` at index ``tau + L - 1``.  Each
    exponent class is a cross-correlation of 0/1 indicator rows, done by FFT
    and rounded back to integers; the rounding residue is checked so a
    precision failure cannot pass silently.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    L = x.shape[-1]
    nfft = 1 << (2 * L - 1).bit_length()
    fx = np.fft.rfft(np.moveaxis(_one_hot(x, q), -1, -2), n=nfft)  # (..., N, q, W)
    fy = np.fft.rfft(np.moveaxis(_one_hot(y, q), -1, -2), n=nfft)
    cfx = np.conj(fx)
    spectra = []
    for k in range(q):
        # exponent a - b == k  <=>  b == a - k
        spectra.append(np.sum(cfx * np.roll(fy, k, axis=-2), axis=(-3, -2)))
    corr = np.fft.irfft(np.stack(spectra, axis=-2), n=nfft)  # (..., q, nfft)
    lags = np.concatenate([np.arange(nfft - (L - 1), nfft), np.arange(L)])
    corr = corr[..., lags]
    out = np.rint(corr)
    if out.size and np.max(np.abs(corr - out)) > 0.25:
        raise ArithmeticError("FFT correlation lost integer precision")
    return np.moveaxis(out.astype(np.int64), -2, -1)


def pair_counts(X: np.ndarray, tau: int, q: int) -> np.ndarray:
    """``R_{A_i, A_j}(tau)`` histograms for every ordered pair of sets.

    ``X`` has shape ``(M, N, L)``; the result has shape ``(M, M, q)``.  The
    co-occurrence table of symbol pairs is a single matrix product of one-hot
    encodings, exact in float64 since every entry is at most ``N * L``.
    """
    M, N, L = X.shape
    if abs(tau) >= L:
        return np.zeros((M, M, q), dtype=np.int64)
    if tau >= 0:
        left, right = X[:, :, : L - tau], X[:, :, tau:]
    else:
        left, right = X[:, :, -tau:], X[:, :, : L + tau]
    P = N * left.shape[-1]
    U = _one_hot(left.reshape(M, P), q)  # (M, P, q)
    V = _one_hot(right.reshape(M, P), q)
    G = U.transpose(0, 2, 1).reshape(M * q, P) @ V.transpose(1, 0, 2).reshape(P, M * q)
    G = np.rint(G).astype(np.int64).reshape(M, q, M, q).transpose(0, 2, 1, 3)  # [i, j, a, b]
    a = np.arange(q)
    out = np.empty((M, M, q), dtype=np.int64)
    for k in range(q):
        out[:, :, k] = G[:, :, a, (a - k) % q].sum(axis=-1)
    return out


# ---------------------------------------------------------------------------
# Set classifiers


def _auto_zero_flags(A: SequenceSet, engine: str | None) -> np.ndarray:
    """Zero verdicts of ``R_A(tau)`` for ``tau = 1..L-1``."""
    L = A.length
    if L == 1:
        return np.ones(0, dtype=bool)
    counts = profile_counts(A.array, A.array, A.q)[L:]
    return zero_mask(counts, A.q, engine)


def is_css(A: SequenceSet, engine: str | None = None) -> bool:
    """True iff the summed autocorrelation vanishes at every nonzero shift."""
    return bool(np.all(_auto_zero_flags(A, engine)))


def is_escss(A: SequenceSet, engine: str | None = None) -> bool:
    """True iff the summed autocorrelation vanishes at every even nonzero shift."""
    flags = _auto_zero_flags(A, engine)
    # flags[t - 1] belongs to shift t
    return bool(np.all(flags[1::2]))


def even_shift_orthogonal(A: SequenceSet, B: SequenceSet, engine: str | None = None) -> bool:
    """True iff ``R_{A,B}(tau)`` is zero for every even tau, zero included."""
    _check_sets(A, B)
    L = A.length
    counts = profile_counts(A.array, B.array, A.q)
    taus = np.arange(-(L - 1), L)
    return bool(np.all(zero_mask(counts[taus % 2 == 0], A.q, engine)))


# ---------------------------------------------------------------------------
# Family classifiers


@dataclass(frozen=True)
class Violation:
    """First shift at which a claimed zero correlation fails."""

    i: int
    j: int
    tau: int
    value: CyclotomicSum

    def as_dict(self) -> dict:
        return {"i": self.i, "j": self.j, "tau": self.tau, "counts": list(self.value.counts)}


def _shift_zero_matrix(X: np.ndarray, tau: int, q: int, engine: str | None) -> np.ndarray:
    """(M, M) zero verdicts at shift ``tau``; the diagonal is ignored at tau 0."""
    counts = pair_counts(X, tau, q)
    zeros = zero_mask(counts, q, engine)
    if tau == 0:
        np.fill_diagonal(zeros, True)
    elif debug_enabled():
        mirrored = pair_counts(X, -tau, q)
        expected = counts.transpose(1, 0, 2)[..., (-np.arange(q)) % q]
        if not np.array_equal(mirrored, expected):
            raise ArithmeticError(f"conjugate symmetry broken at tau={tau}")
    return zeros


def first_violation(F: SetFamily, z: int, engine: str | None = None) -> Violation | None:
    """Earliest (tau, i, j) with a nonzero correlation inside ``|tau| <= z-1``.

    Negative shifts need no separate scan: ``R_{A_j,A_i}(-tau)`` is the
    conjugate of ``R_{A_i,A_j}(tau)``.
    """
    X, q = F.array, F.q
    for tau in range(0, min(z, F.length)):
        zeros = _shift_zero_matrix(X, tau, q, engine)
        if not zeros.all():
            i, j = map(int, np.argwhere(~zeros)[0])
            counts = pair_counts(X, tau, q)[i, j]
            return Violation(i, j, tau, CyclotomicSum(q, tuple(counts.tolist())))
    return None


def zcz_width(F: SetFamily, engine: str | None = None) -> int:
    """Largest Z such that the family is an (M, N, L, Z)-ZCCS.

    Returns L for a mutually orthogonal family and 0 when even the zero-shift
    cross-correlations fail.
    """
    X, q, L = F.array, F.q, F.length
    for tau in range(L):
        if not _shift_zero_matrix(X, tau, q, engine).all():
            return tau
    return L


def is_zccs(F: SetFamily, z: int, engine: str | None = None) -> bool:
    if z < 1 or z > F.length:
        return False
    return first_violation(F, z, engine) is None


def is_mocss(F: SetFamily, engine: str | None = None) -> bool:
    return zcz_width(F, engine) == F.length


def is_ccc(F: SetFamily, engine: str | None = None) -> bool:
    return F.m == F.n and is_mocss(F, engine)


@dataclass(frozen=True)
class ClassificationReport:
    is_css: bool
    is_escss: bool
    zcz_width: int
    is_mocss: bool
    is_ccc: bool
    feng_optimal: bool
    m: int
    n: int
    length: int
    q: int

    @property
    def role(self) -> str:
        """Most specific name the family earns."""
        if self.m == 1:
            if self.is_css:
                return "css"
            return "escss" if self.is_escss else "raw"
        if self.is_ccc:
            return "ccc"
        if self.is_mocss:
            return "mocss"
        if self.zcz_width >= 1:
            return "zccs"
        return "raw"

    def as_dict(self) -> dict:
        return {
            "role": self.role,
            "q": self.q,
            "M": self.m,
            "N": self.n,
            "L": self.length,
            "is_css": self.is_css,
            "is_escss": self.is_escss,
            "zcz_width": self.zcz_width,
            "is_mocss": self.is_mocss,
            "is_ccc": self.is_ccc,
            "feng_optimal": self.feng_optimal,
        }


def classify(F: SetFamily, engine: str | None = None) -> ClassificationReport:
    """Run every check and return the aggregate verdict.

    ``is_css`` / ``is_escss`` hold when every member set has the property.
    """
    X, q = F.array, F.q
    M, N, L = X.shape
    if L > 1:
        auto = profile_counts(X, X, q)[:, L:]  # (M, L-1, q) for tau = 1..L-1
        flags = zero_mask(auto, q, engine)
        css = bool(flags.all())
        escss = bool(flags[:, 1::2].all())
    else:
        css = escss = True
    z = zcz_width(F, engine)
    mocss = z == L
    return ClassificationReport(
        is_css=css,
        is_escss=escss,
        zcz_width=z,
        is_mocss=mocss,
        is_ccc=mocss and M == N,
        feng_optimal=z >= 1 and M == N * (L // z),
        m=M,
        n=N,
        length=L,
        q=q,
    )

"""Constructions of complementary sets, ZCCSs, MOCSSs and CCCs.

Every builder is deterministic.  Builders accept ``verify`` in
``{"always", "debug", "never"}``; ``"debug"`` verifies only when
``SEQCOMP_DEBUG=1``.  Inputs that must be complete complementary codes are
checked on entry unless a :class:`CccCertificate` is passed instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import ResidueSequence, SequenceSet, SetFamily, debug_enabled
from .correlation import (
    ClassificationReport,
    classify,
    even_shift_orthogonal,
    is_css,
    is_escss,
    zcz_width,
)
from .ebf import EbfSpec, _evaluate_digits, digit_matrix, qary_digits
from .errors import (
    AlphabetMismatchError,
    DimensionMismatchError,
    PreconditionError,
    UnsupportedParameterError,
    VerificationRefusedError,
)

VERIFY_POLICIES = ("always", "debug", "never")


def _should_verify(verify: str) -> bool:
    if verify not in VERIFY_POLICIES:
        raise ValueError(f"verify must be one of {VERIFY_POLICIES}, got {verify!r}")
    return verify == "always" or (verify == "debug" and debug_enabled())


# ---------------------------------------------------------------------------
# Sequence combinators


def interleave(a: ResidueSequence, b: ResidueSequence) -> ResidueSequence:
    """``(a_0, b_0, a_1, b_1, ..., a_{L-1}, b_{L-1})``."""
    if a.q != b.q:
        raise AlphabetMismatchError(f"cannot interleave Z_{a.q} with Z_{b.q}")
    if len(a) != len(b):
        raise DimensionMismatchError(f"cannot interleave lengths {len(a)} and {len(b)}")
    out = np.empty(2 * len(a), dtype=np.int64)
    out[0::2] = a.array
    out[1::2] = b.array
    return ResidueSequence(a.q, tuple(out.tolist()))


def concat(a: ResidueSequence, b) -> ResidueSequence:
    """``a | b``.  ``b`` may be an empty plain sequence."""
    if isinstance(b, ResidueSequence):
        if a.q != b.q:
            raise AlphabetMismatchError(f"cannot concatenate Z_{a.q} with Z_{b.q}")
        tail = b.elems
    else:
        tail = tuple(int(v) for v in b)
    return ResidueSequence(a.q, a.elems + tail)


def phi(d: ResidueSequence, a: ResidueSequence, b: ResidueSequence) -> ResidueSequence:
    """``(a + d_0) | (b + d_1) | (a + d_2) | ...``, one block per entry of d.

    Blocks alternate strictly, so an odd-length ``d`` ends on an ``a`` block.
    """
    if not d.q == a.q == b.q:
        raise AlphabetMismatchError(f"phi over mixed moduli {d.q}, {a.q}, {b.q}")
    if len(a) != len(b):
        raise DimensionMismatchError(f"phi needs equal-length blocks, got {len(a)} and {len(b)}")
    blocks = [(a.array if i % 2 == 0 else b.array) + di for i, di in enumerate(d.elems)]
    return ResidueSequence(d.q, tuple((np.concatenate(blocks) % d.q).tolist()))


def negate_set(B: SequenceSet) -> SequenceSet:
    """Additive inverse of every entry over Z_q."""
    return SequenceSet(B.q, tuple(r.negated() for r in B.rows))


def phase_negate_set(B: SequenceSet) -> SequenceSet:
    """Multiply every symbol by -1 in the complex domain: ``b + q/2``.

    Only defined for even q.  For q = 2 this is the bitwise complement.
    """
    if B.q % 2:
        raise PreconditionError(f"phase negation needs an even modulus, got q={B.q}")
    return SequenceSet(B.q, tuple(r.shift(B.q // 2) for r in B.rows))


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class CccCertificate:
    """A family together with the report that proved it a CCC."""

    family: SetFamily
    report: ClassificationReport = field(repr=False)


def certify_ccc(F: SetFamily, engine: str | None = None) -> CccCertificate:
    report = classify(F, engine)
    if not report.is_ccc:
        raise VerificationRefusedError(
            f"input is not a complete complementary code "
            f"(M={report.m}, N={report.n}, L={report.length}, Z={report.zcz_width})"
        )
    return CccCertificate(F, report)


def _require_ccc(C, what: str) -> SetFamily:
    if isinstance(C, CccCertificate):
        return C.family
    try:
        return certify_ccc(C).family
    except VerificationRefusedError as exc:
        raise VerificationRefusedError(f"{what}: {exc}") from None


# ---------------------------------------------------------------------------
# Complementary sets from extended Boolean functions


def _index_digits(q: int, m: int) -> np.ndarray:
    return digit_matrix(m, q)


def build_css_theorem1(
    q: int,
    m: int,
    alpha: int,
    pi: Sequence[int],
    coeffs=(),
    c0: int = 0,
    verify: str = "debug",
) -> SequenceSet:
    """q-ary complementary set of q sequences of length ``q**m``.

    Row n is the associated sequence of ``f(x) + n * x_{pi(1)}`` where f is
    the quadratic-chain EBF with ``pi`` a permutation of ``1..m``.
    """
    if len(pi) != m:
        raise PreconditionError(f"pi must permute 1..{m}, got {tuple(pi)}")
    f = EbfSpec(q, m, alpha, tuple(pi), coeffs, c0)
    x = _index_digits(q, m)
    base = _evaluate_digits(f, x)
    lead = x[:, f.pi[0] - 1]
    rows = np.mod(base[None, :] + np.arange(q)[:, None] * lead[None, :], q)
    A = SequenceSet.from_array(q, rows)
    if _should_verify(verify) and not is_css(A):
        raise VerificationRefusedError("Theorem 1 output failed the complementarity check")
    return A


def build_ternary_css(
    m: int,
    alpha: int,
    pi: Sequence[int],
    square=None,
    linear=None,
    d0: int = 0,
    verify: str = "debug",
) -> SequenceSet:
    """Ternary set ``{f, f + x_{pi(1)}, f + 2 x_{pi(1)}}``.

    ``square[k]`` multiplies ``x_k**2`` and ``linear[k]`` multiplies ``x_k``;
    this is the q = 3 case of :func:`build_css_theorem1`.
    """
    square = tuple(square) if square is not None else (0,) * m
    linear = tuple(linear) if linear is not None else (0,) * m
    return build_css_theorem1(3, m, alpha, pi, (linear, square), d0, verify=verify)


@dataclass(frozen=True)
class Theorem2Params:
    q: int
    m: int
    v: int
    alpha: int
    beta: int
    pi: tuple[int, ...]
    coeffs: tuple[tuple[int, ...], ...] = ()
    c0: int = 0

    def __post_init__(self):
        q, m, v = self.q, self.m, self.v
        if q < 2:
            raise PreconditionError(f"q must be >= 2, got {q}")
        if m < 2:
            raise PreconditionError(f"m must be >= 2, got {m}")
        if v == m:
            raise UnsupportedParameterError(
                "v = m leaves x_{pi(1)} undefined (pi would permute an empty set)"
            )
        if not 0 <= v < m:
            raise PreconditionError(f"v must satisfy 0 <= v <= m-1, got v={v}, m={m}")
        if not 0 < self.alpha < q or math.gcd(self.alpha, q) != 1:
            raise PreconditionError(f"alpha not coprime with q (alpha={self.alpha}, q={q})")
        if not 0 < self.beta < q or math.gcd(self.beta, q) != 1:
            raise PreconditionError(f"beta not coprime with q (beta={self.beta}, q={q})")
        pi = tuple(int(p) for p in self.pi)
        if sorted(pi) != list(range(1, m - v + 1)):
            raise PreconditionError(f"pi={pi} is not a permutation of 1..{m - v}")
        object.__setattr__(self, "pi", pi)

    @property
    def ebf(self) -> EbfSpec:
        return EbfSpec(self.q, self.m, self.alpha, self.pi, self.coeffs, self.c0)

    @property
    def zcz(self) -> int:
        return self.q ** (self.m - self.v)


def build_zccs_theorem2(p: Theorem2Params, verify: str = "debug") -> SetFamily:
    """Optimal ``(q**(v+1), q, q**m, q**(m-v))`` Z-complementary code set.

    Set p (digits ``p_1 .. p_{v+1}``) has rows
    ``f + n x_{pi(1)} + beta (p_1 x_{pi(m-v)} + sum_k p_{k+1} x_{m-v+k})``.
    """
    q, m, v = p.q, p.m, p.v
    f = p.ebf
    x = _index_digits(q, m)
    base = _evaluate_digits(f, x)
    lead = x[:, p.pi[0] - 1]
    tail = x[:, p.pi[m - v - 1] - 1]
    free = x[:, m - v :]  # x_{m-v+1} .. x_m
    n = np.arange(q)[:, None]
    sets = []
    for idx in range(q ** (v + 1)):
        digits = qary_digits(idx, v + 1, q)
        shift = digits[0] * tail + (free @ np.array(digits[1:], dtype=np.int64) if v else 0)
        rows = np.mod(base[None, :] + n * lead[None, :] + p.beta * shift[None, :], q)
        sets.append(SequenceSet.from_array(q, rows))
    F = SetFamily(tuple(sets))
    if _should_verify(verify):
        z = zcz_width(F)
        if z < p.zcz:
            raise VerificationRefusedError(
                f"Theorem 2 output has ZCZ width {z}, expected at least {p.zcz}"
            )
    return F


# ---------------------------------------------------------------------------
# Interleaving, Lemma 4 concatenation, products


def interleave_escss_theorem3(C, verify: str = "debug") -> list[SequenceSet]:
    """Interleave row pairs of every set of an even-order CCC.

    Set m becomes the ``M/2 x 2L`` matrix whose row k is
    ``interleave(s_{2k}^m, s_{2k+1}^m)``; distinct outputs are orthogonal at
    every even shift.
    """
    F = C.family if isinstance(C, CccCertificate) else C
    if F.m % 2:
        raise PreconditionError(f"the seed CCC must have even order, got M={F.m}")
    F = _require_ccc(C, "Theorem 3 seed")
    out = []
    for S in F.sets:
        rows = tuple(interleave(S.rows[2 * k], S.rows[2 * k + 1]) for k in range(F.n // 2))
        out.append(SequenceSet(F.q, rows))
    if _should_verify(verify):
        for i, A in enumerate(out):
            if not is_escss(A):
                raise VerificationRefusedError(f"interleaved set {i} is not even-shift complementary")
            for j in range(i + 1, len(out)):
                if not even_shift_orthogonal(A, out[j]):
                    raise VerificationRefusedError(f"interleaved sets {i}, {j} are not even-shift orthogonal")
    return out


def _check_lemma4_pair(P: SequenceSet, Q: SequenceSet):
    if P.q != Q.q:
        raise AlphabetMismatchError(f"P over Z_{P.q}, Q over Z_{Q.q}")
    if (P.n, P.length) != (Q.n, Q.length):
        raise DimensionMismatchError(f"P is {P.n}x{P.length}, Q is {Q.n}x{Q.length}")
    if not is_escss(P):
        raise VerificationRefusedError("P is not an even-shift complementary set")
    if not is_escss(Q):
        raise VerificationRefusedError("Q is not an even-shift complementary set")
    if not even_shift_orthogonal(P, Q):
        raise VerificationRefusedError("P and Q are not orthogonal at every even shift")


def mocss_lemma4(
    P: SequenceSet,
    Q: SequenceSet,
    C,
    verify: str = "debug",
    check_inputs: bool = True,
) -> SetFamily:
    """``(M, MN, L1*L2)`` MOCSS from two even-shift orthogonal ESCSSs and a CCC.

    Output set k stacks N blocks; row j of block t is
    ``phi(p_t, c_j^{2k}, c_j^{2k+1})`` for ``k < M/2`` and
    ``phi(q_t, c_j^{2k-M}, c_j^{2k-M+1})`` otherwise.
    """
    F = C.family if isinstance(C, CccCertificate) else C
    if F.m % 2:
        raise PreconditionError(f"the CCC must have even order, got M={F.m}")
    if F.q != P.q:
        raise AlphabetMismatchError(f"CCC over Z_{F.q}, P over Z_{P.q}")
    if check_inputs:
        _check_lemma4_pair(P, Q)
        F = _require_ccc(C, "Lemma 4 code")
    M = F.m
    sets = []
    for k in range(M):
        D, base = (P, 2 * k) if k < M // 2 else (Q, 2 * k - M)
        rows = []
        for d in D.rows:
            for j in range(F.n):
                rows.append(phi(d, F.sets[base].rows[j], F.sets[base + 1].rows[j]))
        sets.append(SequenceSet(F.q, tuple(rows)))
    out = SetFamily(tuple(sets))
    if _should_verify(verify) and zcz_width(out) != out.length:
        raise VerificationRefusedError("Lemma 4 output is not mutually orthogonal")
    return out


def ccc_theorem4(A, B, verify: str = "debug") -> SetFamily:
    """``(M1*M2/2, 2*L1*L2)`` CCC from an ``(M1, L1)`` and an ``(M2, L2)`` CCC."""
    FA = A.family if isinstance(A, CccCertificate) else A
    FB = B.family if isinstance(B, CccCertificate) else B
    if FA.q != FB.q:
        raise AlphabetMismatchError(f"A over Z_{FA.q}, B over Z_{FB.q}")
    if FA.m % 2 or FB.m % 2:
        raise PreconditionError(f"both CCC orders must be even, got M1={FA.m}, M2={FB.m}")
    cert_b = B if isinstance(B, CccCertificate) else certify_ccc(FB)
    escss = interleave_escss_theorem3(A, verify=verify)
    sets = []
    for k in range(FA.m // 2):
        part = mocss_lemma4(escss[2 * k], escss[2 * k + 1], cert_b, verify="never", check_inputs=False)
        sets.extend(part.sets)
    out = SetFamily(tuple(sets))
    if _should_verify(verify) and not (out.m == out.n and zcz_width(out) == out.length):
        raise VerificationRefusedError("Theorem 4 output is not a complete complementary code")
    return out


NEGATIONS = ("additive", "phase")


def mocss_theorem5(A, B, negation: str = "phase", verify: str = "debug") -> SetFamily:
    """``(M, 2M, L1+L2)`` MOCSS: set m is ``[A^m | B^m ; A^m | -B^m]``.

    ``negation`` picks how ``-B^m`` is read: ``"additive"`` negates residues
    over Z_q, ``"phase"`` negates the complex symbols (adds q/2, even q only).
    Over Z_2 the additive inverse is the identity, so the bottom half repeats
    the top half and the result is not mutually orthogonal; the phase reading
    is the one that verifies (see ``scripts/theorem5_negation.py``).
    """
    if negation not in NEGATIONS:
        raise ValueError(f"negation must be one of {NEGATIONS}, got {negation!r}")
    FA = A.family if isinstance(A, CccCertificate) else A
    FB = B.family if isinstance(B, CccCertificate) else B
    if FA.q != FB.q:
        raise AlphabetMismatchError(f"A over Z_{FA.q}, B over Z_{FB.q}")
    if FA.m != FB.m:
        raise DimensionMismatchError(f"A has {FA.m} sets, B has {FB.m}")
    FA = _require_ccc(A, "Theorem 5 input A")
    FB = _require_ccc(B, "Theorem 5 input B")
    neg = negate_set if negation == "additive" else phase_negate_set
    sets = []
    for SA, SB in zip(FA.sets, FB.sets):
        top = [concat(a, b) for a, b in zip(SA.rows, SB.rows)]
        bottom = [concat(a, b) for a, b in zip(SA.rows, neg(SB).rows)]
        sets.append(SequenceSet(FA.q, tuple(top + bottom)))
    out = SetFamily(tuple(sets))
    if _should_verify(verify) and zcz_width(out) != out.length:
        raise VerificationRefusedError(
            f"Theorem 5 output ({negation} negation) is not mutually orthogonal"
        )
    return out
